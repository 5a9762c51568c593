#pragma once

#include <string>
#include <vector>

#include "clmodel/balance.hpp"
#include "clmodel/hierarchy.hpp"
#include "clmodel/machine.hpp"

namespace clmodel {

// A compact stencil sweep over a cubic grid, described by the cache footprint
// it needs for operand reuse.
struct StencilSpec {
  std::string name;
  int dimensions = 3;          // 2 or 3
  long long grid_points_per_dim = 0;
  int element_bytes = 8;
  int flops_per_update = 0;
  Rat l1_cycles_per_cl_update;  // from instruction analysis of the loop body
  // Rows of the inner dimension that must stay resident for full in-plane
  // reuse; planes that must stay resident for plane-to-plane reuse (3D).
  int rows_needed = 0;
  int planes_needed = 0;
};

void validate(const StencilSpec& stencil);

StencilSpec load_stencil(const std::string& json_text, const std::string& origin = "stencil document");
StencilSpec load_stencil_file(const std::string& path);

// How many operand streams must come from memory, set by which reuse
// condition the outer cache capacity satisfies.
struct StreamRegime {
  enum class Kind { worst, middle, best };
  Kind kind = Kind::worst;
  int memory_load_streams = 0;  // {6, 4, 2} in 3D, {4, 2} in 2D
  int rfo_streams = 1;
  std::string threshold;  // human-readable statement of the deciding condition

  std::string label() const;
};

// Applies the capacity conditions against cache_bytes * cache_fraction.
// Boundaries are assigned to the fitting case; the default fraction 1.0 uses
// the full nominal capacity.
StreamRegime classify_regime(const StencilSpec& stencil, std::uint64_t cache_bytes,
                             double cache_fraction = 1.0);

// Balance prediction for a stencil regime, using the machine's measured
// stream-triad bandwidth as the sustainable memory rate. Word rates and
// balances are carried at the precision they are conventionally quoted at
// (two decimals for the GWord/s rate, three for B_M and the efficiency), and
// the prediction applies the quoted efficiency.
BalanceReport regime_balance_prediction(const StencilSpec& stencil, const MachineDescription& machine,
                                        const StreamRegime& regime, double applicable_peak_gflops);

struct StencilPrediction {
  Rat l1_cycles;
  std::vector<TransferContribution> transfers;
  Rat total_cycles;
  long long total_cycles_rounded = 0;
  double mflops = 0.0;
};

// Full-hierarchy prediction from an explicit per-crossing traffic list
// (cachelines per cacheline update, innermost crossing first; one entry per
// bus including the memory bus). Traffic is an input rather than derived:
// which crossings carry the write-allocate line depends on
// microarchitectural detail the capacity conditions cannot see.
StencilPrediction hierarchy_prediction(const StencilSpec& stencil, const MachineDescription& machine,
                                       const std::vector<long long>& traffic_cachelines);

// Named traffic presets for `hierarchy_prediction`.
std::vector<long long> traffic_preset(const std::string& name);

}  // namespace clmodel
