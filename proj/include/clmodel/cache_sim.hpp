#pragma once

#include <cstdint>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

#include "clmodel/hierarchy.hpp"
#include "clmodel/kernel.hpp"
#include "clmodel/layer_condition.hpp"
#include "clmodel/machine.hpp"

namespace clmodel {

// Cacheline-granular simulator of an inclusive, write-allocate, write-back
// hierarchy with fully associative LRU levels, counting transfers per
// crossing. It is the independent oracle for the analytic traffic accounting:
// no timing, only line movement.
//
// Every access refreshes recency at every level, so each level holds exactly
// the capacity_lines most recently touched distinct lines of the full
// reference stream. Inclusion then holds by construction (capacities grow
// outward), and capacity thresholds stay sharp. A write misses like a read
// (write allocate), then dirties the L1 copy; evicting a dirty line moves it
// one level outward and re-dirties it there.
class SimHierarchy {
 public:
  // capacities in cachelines, L1 outward, strictly increasing.
  explicit SimHierarchy(std::vector<std::uint64_t> capacity_lines);

  static SimHierarchy from_machine(const MachineDescription& machine);

  void access(std::uint64_t line, bool write);

  int num_levels() const { return static_cast<int>(levels_.size()); }
  // Crossing c < num_levels()-1 sits between cache level c+1 and c+2
  // (1-based); the last crossing is memory <-> outermost cache.
  struct Counters {
    std::uint64_t inward = 0;   // lines moved toward the core
    std::uint64_t outward = 0;  // dirty lines written back outward
  };
  const std::vector<Counters>& counters() const { return counters_; }
  std::uint64_t accesses() const { return accesses_; }

  std::string crossing_label(int crossing) const;

  bool line_present(int level_index /*1-based*/, std::uint64_t line) const;
  // Inclusion invariant: every line of level k is present in all outer levels.
  bool inclusion_holds() const;

 private:
  struct LevelState {
    std::uint64_t capacity = 0;
    std::list<std::uint64_t> lru;  // front = most recent
    struct Entry {
      std::list<std::uint64_t>::iterator pos;
      bool dirty = false;
    };
    std::unordered_map<std::uint64_t, Entry> lines;
  };

  std::vector<LevelState> levels_;
  std::vector<Counters> counters_;
  std::uint64_t accesses_ = 0;

  void insert_line(int level, std::uint64_t line, bool dirty);
};

struct CrossingTraffic {
  std::string crossing;
  std::uint64_t inward = 0;
  std::uint64_t outward = 0;
  Rat inward_per_update;
  Rat outward_per_update;
  Rat total_per_update;  // inward + outward
};

struct SimReport {
  std::vector<CrossingTraffic> crossings;  // innermost first, memory last
  std::uint64_t window_updates = 0;
  std::uint64_t total_accesses = 0;
  std::string window_note;

  const CrossingTraffic& memory_crossing() const { return crossings.back(); }
};

struct SimOptions {
  int passes = 3;        // streaming kernels replay this many full passes
  int sweeps = 1;        // stencil sweeps over the grid
  std::uint64_t max_working_set_bytes = 16ull << 20;
};

// Replays the kernel's address streams with a working set sized to exceed
// every level inner to `target` and fit `target` itself, then reports
// steady-state transfers per cacheline-per-stream update. The first pass is
// cold-start and excluded from the measurement window.
SimReport simulate_kernel(const KernelDescription& kernel, const MachineDescription& machine,
                          Level target, const SimOptions& options = {});

// Replays the stencil's sweep (inner dimension innermost) at cacheline
// granularity over a grid of stencil.grid_points_per_dim points per side and
// reports transfers per inner-loop cacheline update. With one sweep, the
// first two interior planes are excluded as startup transient; with more,
// only the final sweep is measured.
SimReport simulate_stencil(const StencilSpec& stencil, const MachineDescription& machine,
                           const SimOptions& options = {});

}  // namespace clmodel
