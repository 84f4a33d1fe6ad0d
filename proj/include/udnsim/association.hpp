// HTC multi-tier association with conflict resolution, plus MTC
// nearest-active-cell association and resource-block allocation.
#pragma once

#include <cstddef>
#include <vector>

#include "udnsim/geometry.hpp"
#include "udnsim/rng.hpp"

namespace udnsim {

enum class LinkStatus { Connected, Disconnected };

struct TierLink {
  std::size_t cell = 0;
  double distance_km = 0.0;
  LinkStatus status = LinkStatus::Connected;
};

struct TierAssociation {
  std::size_t user = 0;
  std::vector<TierLink> tiers;  // tiers[k-1] is the k-th nearest cell
};

struct CellActivation {
  std::size_t cell = 0;
  int serving_tier = 0;                  // 1-based; idle cells are omitted
  std::vector<std::size_t> served_users; // users connected at serving_tier
};

// Connects every user to its M nearest cells (all links Connected).
// Throws when fewer than M cells exist.
std::vector<TierAssociation> associate_htc(const PointSet& users,
                                           const PointSet& cells, int M);

// Applies the conflict rule: a cell linked at several distinct tiers keeps
// only its lowest tier; links at higher tiers become Disconnected. Users are
// not re-associated. Returns the active cells sorted by cell index.
std::vector<CellActivation> resolve_conflicts(
    std::vector<TierAssociation>& associations);

struct RbAssignment {
  int rb = 0;
  std::size_t device = 0;
};

struct RbAllocation {
  std::size_t cell = 0;
  std::vector<RbAssignment> assignments;  // one RB per supported device
  std::vector<std::size_t> rejected;      // associated but unsupported
};

// Associates each active device to the nearest active cell and hands out
// resource blocks: when a cell attracts more devices than n_rb, a uniformly
// random subset of size n_rb is supported; supported devices get distinct
// uniformly random RB indices. Throws when no cell is active.
std::vector<RbAllocation> associate_mtc(const PointSet& active_devices,
                                        const std::vector<CellActivation>& active_cells,
                                        const PointSet& cells, int n_rb,
                                        RngStream& rng);

// counts[k-1] = number of cells whose serving tier is k.
std::vector<std::size_t> tier_activation_counts(
    const std::vector<CellActivation>& activations, int M);

}  // namespace udnsim
