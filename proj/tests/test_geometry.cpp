#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "udnsim/geometry.hpp"

using namespace udnsim;

namespace {

PointSet manual_set(std::vector<Vec2> pts, double side = 1.0) {
  PointSet s;
  s.window.side_km = side;
  s.points = std::move(pts);
  return s;
}

// Naive reference: full sort by (squared distance, index).
std::vector<Neighbor> naive_k_nearest(Vec2 q, const PointSet& t, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < t.size(); ++i) {
    all.emplace_back(toroidal_dist2(q, t.points[i], t.window.side_km), i);
  }
  std::sort(all.begin(), all.end());
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({all[i].second, std::sqrt(all[i].first)});
  }
  return out;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

// CDF of the distance to the k-th nearest point of a PPP with intensity lam.
double kth_distance_cdf(double r, double lam, int k) {
  const double mu = M_PI * lam * r * r;
  double term = std::exp(-mu);
  double tail = term;
  for (int i = 1; i < k; ++i) {
    term *= mu / i;
    tail += term;
  }
  return 1.0 - tail;
}

}  // namespace

TEST_CASE("zero density yields an empty set") {
  RngStream rng(1, 0, StreamPurpose::Cells);
  const PointSet s = sample_hppp(0.0, PointKind::SmallCell, Window{1.0}, rng);
  CHECK(s.empty());
}

TEST_CASE("negative density is rejected") {
  RngStream rng(1, 0, StreamPurpose::Cells);
  CHECK_THROWS(sample_hppp(-1.0, PointKind::SmallCell, Window{1.0}, rng));
}

TEST_CASE("count distribution has Poisson mean and variance at 5000/km^2") {
  const int n = 600;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(77, static_cast<std::uint64_t>(i), StreamPurpose::Cells);
    const auto pts = sample_hppp(5000.0, PointKind::SmallCell, Window{1.0}, rng);
    const double c = static_cast<double>(pts.size());
    s += c;
    ss += c * c;
    for (const Vec2& p : pts.points) REQUIRE(pts.window.contains(p));
  }
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  // mean 5000 +- ~3 sigma of the estimator, variance/mean near 1
  CHECK(std::abs(mean - 5000.0) < 3.0 * std::sqrt(5000.0 / n));
  CHECK(var / mean == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("fixed seed reproduces the point list") {
  RngStream a(123, 9, StreamPurpose::Users);
  RngStream b(123, 9, StreamPurpose::Users);
  const auto pa = sample_hppp(100.0, PointKind::HtcUser, Window{1.0}, a);
  const auto pb = sample_hppp(100.0, PointKind::HtcUser, Window{1.0}, b);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa.points[i].x == pb.points[i].x);
    CHECK(pa.points[i].y == pb.points[i].y);
  }
}

TEST_CASE("thinning keeps everything at 1, nothing at 0, eta on average") {
  RngStream rng(5, 0, StreamPurpose::MtcPoints);
  const auto all = sample_hppp(1e6, PointKind::MtcDevice, Window{1.0}, rng);

  RngStream t1(5, 0, StreamPurpose::MtcThin);
  const auto keep_all = thin(all, 1.0, t1);
  CHECK(keep_all.size() == all.size());

  RngStream t0(5, 0, StreamPurpose::MtcThin);
  CHECK(thin(all, 0.0, t0).empty());

  RngStream te(5, 0, StreamPurpose::MtcThin);
  const auto eta = thin(all, 0.1, te);
  CHECK(eta.density == doctest::Approx(1e5));
  CHECK(std::abs(static_cast<double>(eta.size()) - 0.1 * all.size()) <
        4.0 * std::sqrt(0.1 * 0.9 * all.size()));

  RngStream tb(5, 0, StreamPurpose::MtcThin);
  CHECK_THROWS(thin(all, 1.5, tb));
}

TEST_CASE("equidistant targets come back in index order") {
  const auto set = manual_set({{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}});
  const auto got = k_nearest({0.5, 0.5}, set, 4);
  REQUIRE(got.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(got[i].index == i);
    CHECK(got[i].distance_km == doctest::Approx(std::sqrt(0.125)));
  }
}

TEST_CASE("singleton set and insufficient points") {
  const auto set = manual_set({{0.1, 0.2}});
  const auto got = k_nearest({0.9, 0.9}, set, 1);
  CHECK(got[0].index == 0);
  CHECK_THROWS_WITH_AS(k_nearest({0.9, 0.9}, set, 2) /* k > |targets| */,
                       "k_nearest: insufficient points", std::invalid_argument);
}

TEST_CASE("distances wrap around the window edges") {
  const auto set = manual_set({{0.05, 0.5}, {0.6, 0.5}});
  const auto got = k_nearest({0.95, 0.5}, set, 2);
  CHECK(got[0].index == 0);
  CHECK(got[0].distance_km == doctest::Approx(0.1));
  CHECK(got[1].index == 1);
  CHECK(got[1].distance_km == doctest::Approx(0.35));
}

TEST_CASE("k_nearest matches the exhaustive oracle on random sets") {
  RngStream rng(99, 0, StreamPurpose::Generic);
  PointSet set;
  set.window.side_km = 1.0;
  for (int i = 0; i < 1000; ++i) {
    set.points.push_back({rng.uniform(), rng.uniform()});
  }
  for (int rep = 0; rep < 50; ++rep) {
    const Vec2 q{rng.uniform(), rng.uniform()};
    const auto got = k_nearest(q, set, 5);
    const auto want = naive_k_nearest(q, set, 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(got[i].index == want[i].index);
      CHECK(got[i].distance_km == want[i].distance_km);
    }
  }
}

TEST_CASE("spatial grid equals the exhaustive scan exactly") {
  RngStream rng(7, 3, StreamPurpose::Generic);
  for (const std::size_t n : {1ul, 2ul, 9ul, 60ul, 1500ul}) {
    PointSet set;
    set.window.side_km = 2.0;
    const bool clustered = n % 2 == 0;  // exercise ring expansion
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = clustered ? 0.1 : 2.0;
      set.points.push_back({rng.uniform() * scale, rng.uniform() * scale});
    }
    const SpatialGrid grid(set);
    for (int rep = 0; rep < 30; ++rep) {
      const Vec2 q{rng.uniform() * 2.0, rng.uniform() * 2.0};
      for (const std::size_t k : {std::size_t{1}, std::min<std::size_t>(3, n),
                                  std::min<std::size_t>(17, n), n}) {
        const auto got = grid.k_nearest(q, k);
        const auto want = naive_k_nearest(q, set, k);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < k; ++i) {
          CHECK(got[i].index == want[i].index);
          CHECK(got[i].distance_km == want[i].distance_km);
        }
      }
      CHECK(grid.nearest(q).index == naive_k_nearest(q, set, 1)[0].index);
    }
    CHECK_THROWS(grid.k_nearest({0.0, 0.0}, n + 1));
  }
}

TEST_CASE("nearest-neighbor distance follows 1 - exp(-pi lam r^2)") {
  const double lam = 200.0;
  std::vector<double> samples;
  samples.reserve(10000);
  const Vec2 probe{0.37, 0.61};
  for (int i = 0; i < 10000; ++i) {
    RngStream rng(1234, static_cast<std::uint64_t>(i), StreamPurpose::Cells);
    const auto pts = sample_hppp(lam, PointKind::SmallCell, Window{1.0}, rng);
    if (pts.empty()) continue;
    samples.push_back(k_nearest(probe, pts, 1)[0].distance_km);
  }
  const double d = ks_statistic(samples, [&](double r) {
    return 1.0 - std::exp(-M_PI * lam * r * r);
  });
  CHECK(d < 0.02);
}

TEST_CASE("k-th nearest distance follows the Poisson-shell law, k = 1..5") {
  const double lam = 200.0;
  std::vector<std::vector<double>> samples(5);
  const Vec2 probe{0.7, 0.3};
  for (int i = 0; i < 10000; ++i) {
    RngStream rng(4321, static_cast<std::uint64_t>(i), StreamPurpose::Cells);
    const auto pts = sample_hppp(lam, PointKind::SmallCell, Window{1.0}, rng);
    if (pts.size() < 5) continue;
    const auto near = k_nearest(probe, pts, 5);
    for (int k = 0; k < 5; ++k) samples[k].push_back(near[k].distance_km);
  }
  for (int k = 1; k <= 5; ++k) {
    const double d = ks_statistic(samples[k - 1], [&](double r) {
      return kth_distance_cdf(r, lam, k);
    });
    CHECK(d < 0.02);
  }
}

TEST_CASE("count distribution passes a chi-square test against Poisson") {
  const double mean = 100.0;
  const int draws = 500;
  std::vector<int> counts;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(2025, static_cast<std::uint64_t>(i), StreamPurpose::Cells);
    counts.push_back(static_cast<int>(
        sample_hppp(mean, PointKind::SmallCell, Window{1.0}, rng).size()));
  }
  // Fold the tails into the edge bins so every expected count is >= 5.
  std::vector<double> pmf(300, 0.0);
  pmf[0] = std::exp(-mean);
  for (int n = 1; n < 300; ++n) pmf[n] = pmf[n - 1] * mean / n;
  int lo = 0, hi = 299;
  while (pmf[lo] * draws < 5.0) ++lo;
  while (pmf[hi] * draws < 5.0) --hi;
  const int nbins = hi - lo + 1;
  const auto bin_of = [&](int c) { return std::clamp(c, lo, hi) - lo; };
  std::vector<double> expected(nbins, 0.0);
  std::vector<double> observed(nbins, 0.0);
  for (int n = 0; n < 300; ++n) expected[bin_of(n)] += pmf[n] * draws;
  for (const int c : counts) observed[bin_of(c)] += 1.0;
  double chi2 = 0.0;
  for (int b = 0; b < nbins; ++b) {
    if (expected[b] > 0.0) {
      chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
    }
  }
  // Wilson-Hilferty critical value at significance 0.01.
  const double df = nbins - 1;
  const double crit =
      df * std::pow(1.0 - 2.0 / (9.0 * df) + 2.3263479 * std::sqrt(2.0 / (9.0 * df)), 3.0);
  CHECK(chi2 < crit);
}
