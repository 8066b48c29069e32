#pragma once

#include "vecdual/front.hpp"
#include "vecdual/grid.hpp"

namespace vecdual {

// Execution policy for the grid/pool kernels. Parallel uses OpenMP when
// available and falls back to serial otherwise; results are identical
// (index-addressed writes, order-independent reductions).
enum class ExecPolicy { Serial, Parallel };

// Classify every lattice point against a front.
std::vector<Label> classify_grid(const FrontSet& f, const ProbeGrid& grid,
                                 ExecPolicy policy);

// True iff every lattice point receives exactly one region flag.
bool partition_scan(const FrontSet& f, const ProbeGrid& grid, ExecPolicy policy);
bool partition_scan(const LowerClosedSet& s, const ProbeGrid& grid,
                    ExecPolicy policy);

// Strict-domination pruning kernel: keep[i] says point i is not strictly
// dominated by any other point (Sup direction: dominated means p in q-int K).
std::vector<std::uint8_t> sup_undominated_mask(const std::vector<Vec>& pts,
                                               const PolyhedralCone& K,
                                               ExecPolicy policy);

double directed_hausdorff(const std::vector<Vec>& from,
                          const std::vector<Vec>& to, ExecPolicy policy);

// Number of OpenMP threads the Parallel policy would use (1 if compiled
// without OpenMP).
int parallel_width();

}  // namespace vecdual
