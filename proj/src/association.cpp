#include "udnsim/association.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace udnsim {

std::vector<TierAssociation> associate_htc(const PointSet& users,
                                           const PointSet& cells, int M) {
  if (M < 1) throw std::invalid_argument("associate_htc: M must be >= 1");
  if (cells.size() < static_cast<std::size_t>(M)) {
    throw std::invalid_argument("associate_htc: fewer cells than MultiCell size");
  }
  std::vector<TierAssociation> out;
  out.reserve(users.size());
  const SpatialGrid grid(cells);
  for (std::size_t u = 0; u < users.size(); ++u) {
    TierAssociation assoc;
    assoc.user = u;
    const auto nearest = grid.k_nearest(users.points[u], static_cast<std::size_t>(M));
    assoc.tiers.reserve(nearest.size());
    for (const Neighbor& nb : nearest) {
      assoc.tiers.push_back({nb.index, nb.distance_km, LinkStatus::Connected});
    }
    out.push_back(std::move(assoc));
  }
  return out;
}

std::vector<CellActivation> resolve_conflicts(
    std::vector<TierAssociation>& associations) {
  // Lowest tier linked to each cell wins.
  std::size_t max_cell = 0;
  for (const TierAssociation& a : associations) {
    for (const TierLink& l : a.tiers) max_cell = std::max(max_cell, l.cell);
  }
  std::vector<int> min_tier(associations.empty() ? 0 : max_cell + 1, 0);
  for (const TierAssociation& a : associations) {
    for (std::size_t k = 0; k < a.tiers.size(); ++k) {
      const int tier = static_cast<int>(k) + 1;
      int& slot = min_tier[a.tiers[k].cell];
      if (slot == 0 || tier < slot) slot = tier;
    }
  }

  std::vector<std::vector<std::size_t>> served(min_tier.size());
  for (TierAssociation& a : associations) {
    for (std::size_t k = 0; k < a.tiers.size(); ++k) {
      TierLink& link = a.tiers[k];
      const int tier = static_cast<int>(k) + 1;
      if (tier == min_tier[link.cell]) {
        link.status = LinkStatus::Connected;
        served[link.cell].push_back(a.user);
      } else {
        link.status = LinkStatus::Disconnected;
      }
    }
  }

  std::vector<CellActivation> active;
  for (std::size_t c = 0; c < min_tier.size(); ++c) {
    if (min_tier[c] == 0) continue;
    active.push_back({c, min_tier[c], std::move(served[c])});
  }
  return active;
}

std::vector<RbAllocation> associate_mtc(const PointSet& active_devices,
                                        const std::vector<CellActivation>& active_cells,
                                        const PointSet& cells, int n_rb,
                                        RngStream& rng) {
  if (n_rb < 1) throw std::invalid_argument("associate_mtc: N_RB must be >= 1");
  if (active_cells.empty()) {
    throw std::runtime_error("associate_mtc: no serving infrastructure");
  }

  std::vector<Vec2> positions(active_cells.size());
  for (std::size_t i = 0; i < active_cells.size(); ++i) {
    positions[i] = cells.points[active_cells[i].cell];
  }
  const SpatialGrid grid(positions, cells.window.side_km);

  std::vector<std::vector<std::size_t>> associated(active_cells.size());
  for (std::size_t d = 0; d < active_devices.size(); ++d) {
    associated[grid.nearest(active_devices.points[d]).index].push_back(d);
  }

  std::vector<RbAllocation> out;
  std::vector<int> rb_pool(static_cast<std::size_t>(n_rb));
  for (std::size_t c = 0; c < active_cells.size(); ++c) {
    std::vector<std::size_t>& devs = associated[c];
    if (devs.empty()) continue;
    RbAllocation alloc;
    alloc.cell = active_cells[c].cell;
    rng.shuffle(devs);  // uniform supported subset and order
    const std::size_t supported = std::min(devs.size(), static_cast<std::size_t>(n_rb));
    std::iota(rb_pool.begin(), rb_pool.end(), 0);
    rng.shuffle(rb_pool);  // uniform distinct RB indices
    alloc.assignments.reserve(supported);
    for (std::size_t i = 0; i < supported; ++i) {
      alloc.assignments.push_back({rb_pool[i], devs[i]});
    }
    alloc.rejected.assign(devs.begin() + supported, devs.end());
    out.push_back(std::move(alloc));
  }
  return out;
}

std::vector<std::size_t> tier_activation_counts(
    const std::vector<CellActivation>& activations, int M) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(M), 0);
  for (const CellActivation& a : activations) {
    if (a.serving_tier >= 1 && a.serving_tier <= M) {
      ++counts[static_cast<std::size_t>(a.serving_tier) - 1];
    }
  }
  return counts;
}

}  // namespace udnsim
