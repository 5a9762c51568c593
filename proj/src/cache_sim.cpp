#include "clmodel/cache_sim.hpp"

#include <algorithm>
#include <sstream>

#include "clmodel/errors.hpp"

namespace clmodel {

SimHierarchy::SimHierarchy(std::vector<std::uint64_t> capacity_lines) {
  if (capacity_lines.empty()) throw ValidationError("simulator needs at least one cache level");
  for (std::size_t i = 0; i < capacity_lines.size(); ++i) {
    if (capacity_lines[i] == 0) {
      throw SizingError("simulated cache level " + std::to_string(i + 1) + " holds no cachelines");
    }
    if (i > 0 && capacity_lines[i] <= capacity_lines[i - 1]) {
      throw ValidationError("simulated cache capacities must strictly increase outward");
    }
  }
  levels_.resize(capacity_lines.size());
  for (std::size_t i = 0; i < capacity_lines.size(); ++i) {
    levels_[i].capacity = capacity_lines[i];
    levels_[i].lines.reserve(capacity_lines[i] + 2);
  }
  counters_.resize(capacity_lines.size());
}

SimHierarchy SimHierarchy::from_machine(const MachineDescription& machine) {
  std::vector<std::uint64_t> caps;
  for (const CacheLevel& lvl : machine.cache_levels) {
    caps.push_back(lvl.size_bytes / machine.cacheline_bytes);
  }
  return SimHierarchy(std::move(caps));
}

std::string SimHierarchy::crossing_label(int crossing) const {
  if (crossing + 1 < num_levels()) {
    return "L" + std::to_string(crossing + 2) + "->L" + std::to_string(crossing + 1);
  }
  return "MEM->L" + std::to_string(num_levels());
}

bool SimHierarchy::line_present(int level_index, std::uint64_t line) const {
  return levels_.at(level_index - 1).lines.count(line) > 0;
}

bool SimHierarchy::inclusion_holds() const {
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
    for (const auto& [line, entry] : levels_[i].lines) {
      if (!levels_[i + 1].lines.count(line)) return false;
    }
  }
  return true;
}

void SimHierarchy::insert_line(int level, std::uint64_t line, bool dirty) {
  LevelState& st = levels_[level];
  st.lru.push_front(line);
  st.lines[line] = {st.lru.begin(), dirty};
  if (st.lru.size() > st.capacity) {
    std::uint64_t victim = st.lru.back();
    st.lru.pop_back();
    auto it = st.lines.find(victim);
    bool was_dirty = it->second.dirty;
    st.lines.erase(it);
    if (was_dirty) {
      // Write-back: one line outward across this level's outer crossing.
      counters_[level].outward++;
      if (level + 1 < num_levels()) {
        auto outer = levels_[level + 1].lines.find(victim);
        if (outer == levels_[level + 1].lines.end()) {
          throw ModelError("inclusion violated: dirty victim missing from outer level");
        }
        outer->second.dirty = true;
      }
    }
  }
}

void SimHierarchy::access(std::uint64_t line, bool write) {
  ++accesses_;
  const int n = num_levels();
  int hit = 0;  // innermost level holding the line; n = only in memory
  for (; hit < n; ++hit) {
    LevelState& st = levels_[hit];
    auto it = st.lines.find(line);
    if (it != st.lines.end()) {
      // Refresh recency here and at every outer level (inclusion keeps the
      // line present outward).
      st.lru.splice(st.lru.begin(), st.lru, it->second.pos);
      for (int i = hit + 1; i < n; ++i) {
        LevelState& outer = levels_[i];
        auto oit = outer.lines.find(line);
        if (oit == outer.lines.end()) {
          throw ModelError("inclusion violated: line present inner but missing at level " +
                           std::to_string(i + 1));
        }
        outer.lru.splice(outer.lru.begin(), outer.lru, oit->second.pos);
      }
      break;
    }
  }
  // One inward transfer per crossing between the hit level and L1. A write
  // miss allocates exactly like a read miss.
  for (int c = 0; c < hit; ++c) counters_[c].inward++;
  for (int i = hit - 1; i >= 0; --i) insert_line(i, line, false);
  if (write) levels_[0].lines.at(line).dirty = true;
}

namespace {

struct Window {
  std::vector<SimHierarchy::Counters> base;
};

SimReport make_report(const SimHierarchy& sim, const Window& window, std::uint64_t updates,
                      std::string note) {
  SimReport report;
  report.window_updates = updates;
  report.total_accesses = sim.accesses();
  report.window_note = std::move(note);
  if (updates == 0) throw SizingError("measurement window is empty");
  for (int c = 0; c < sim.num_levels(); ++c) {
    CrossingTraffic t;
    t.crossing = sim.crossing_label(c);
    t.inward = sim.counters()[c].inward - window.base[c].inward;
    t.outward = sim.counters()[c].outward - window.base[c].outward;
    t.inward_per_update = Rat(static_cast<long long>(t.inward), static_cast<long long>(updates));
    t.outward_per_update = Rat(static_cast<long long>(t.outward), static_cast<long long>(updates));
    t.total_per_update = t.inward_per_update + t.outward_per_update;
    report.crossings.push_back(std::move(t));
  }
  return report;
}

}  // namespace

SimReport simulate_kernel(const KernelDescription& kernel, const MachineDescription& machine,
                          Level target, const SimOptions& options) {
  validate(kernel);
  if (!target.is_memory() && !machine.has_cache_level(target.cache_index)) {
    throw TopologyError("machine \"" + machine.name + "\" has no " + target.name() + " cache");
  }
  const int line_bytes = machine.cacheline_bytes;
  std::vector<std::uint64_t> caps;
  for (const CacheLevel& lvl : machine.cache_levels) caps.push_back(lvl.size_bytes / line_bytes);

  const int streams = kernel.load_streams + kernel.store_streams;

  // Working set: larger than every level inside the target, within the
  // target itself (or past everything for the memory regime).
  std::uint64_t ws_lines = 0;
  if (!target.is_memory() && target.cache_index == 1) {
    ws_lines = caps[0] / 2;
  } else if (!target.is_memory()) {
    std::uint64_t inner = caps[target.cache_index - 2];
    std::uint64_t outer = caps[target.cache_index - 1];
    ws_lines = std::min(outer * 3 / 4, inner * 2);
    if (ws_lines <= inner) ws_lines = (inner + outer) / 2;
    if (ws_lines <= inner || ws_lines > outer) {
      throw SizingError("cannot size a working set between L" + std::to_string(target.cache_index - 1) +
                        " (" + std::to_string(inner) + " lines) and " + target.name() + " (" +
                        std::to_string(outer) + " lines) on machine \"" + machine.name + "\"");
    }
  } else {
    std::uint64_t outer = caps.back();
    ws_lines = outer * 2;
    std::uint64_t limit = options.max_working_set_bytes / line_bytes;
    if (ws_lines > limit) ws_lines = limit;
    if (ws_lines <= outer) {
      throw SizingError("working-set limit of " + std::to_string(options.max_working_set_bytes) +
                        " bytes cannot exceed the outermost cache of machine \"" + machine.name + "\"");
    }
  }
  const std::uint64_t per_stream = ws_lines / streams;
  if (per_stream == 0) {
    throw SizingError(target.name() + " on machine \"" + machine.name +
                      "\" is too small for one cacheline per stream");
  }

  SimHierarchy sim = SimHierarchy::from_machine(machine);
  const int passes = std::max(2, options.passes);
  Window window;
  window.base.resize(sim.num_levels());

  for (int pass = 0; pass < passes; ++pass) {
    if (pass == 1) window.base = sim.counters();  // discard the cold first pass
    for (std::uint64_t u = 0; u < per_stream; ++u) {
      for (int s = 0; s < kernel.load_streams; ++s) {
        sim.access(static_cast<std::uint64_t>(s) * per_stream + u, false);
      }
      for (int s = 0; s < kernel.store_streams; ++s) {
        sim.access(static_cast<std::uint64_t>(kernel.load_streams + s) * per_stream + u, true);
      }
    }
  }

  std::ostringstream note;
  note << "passes 2-" << passes << " of " << passes << ", " << per_stream << " updates/pass, working set "
       << ws_lines * line_bytes / 1024 << " kB";
  return make_report(sim, window, static_cast<std::uint64_t>(passes - 1) * per_stream, note.str());
}

SimReport simulate_stencil(const StencilSpec& stencil, const MachineDescription& machine,
                           const SimOptions& options) {
  validate(stencil);
  if (stencil.dimensions != 3) throw DomainError("stencil simulation supports 3D grids only");
  const long long n = stencil.grid_points_per_dim;
  if (n < 3) throw DomainError("stencil grid needs at least 3 points per dimension");
  if (machine.cacheline_bytes % stencil.element_bytes != 0) {
    throw ValidationError("stencil element_bytes must divide the cacheline size");
  }
  const long long epl = machine.cacheline_bytes / stencil.element_bytes;  // elements per line
  const long long cells = n * n * n;
  const long long tn_offset = cells + epl;  // element offset of the destination array

  SimHierarchy sim = SimHierarchy::from_machine(machine);
  const int sweeps = std::max(1, options.sweeps);
  // Startup transient: with a single sweep, skip the first two interior
  // planes; with repeated sweeps, measure only the last one.
  const int last_sweep = sweeps - 1;
  const long long start_plane = sweeps == 1 ? (n - 2 > 2 ? 3 : 1) : 1;

  Window window;
  window.base.resize(sim.num_levels());
  std::uint64_t updates = 0;
  bool measuring = false;
  // The per-update unit is one destination cacheline. When the row length is
  // not a multiple of the line, adjacent rows share lines, so consecutive
  // write chunks landing in the same line count as one update.
  std::uint64_t last_tn_line = ~0ull;

  auto touch_range = [&](long long elem_base, long long first, long long last, bool write) {
    for (long long L = (elem_base + first) / epl; L <= (elem_base + last) / epl; ++L) {
      sim.access(static_cast<std::uint64_t>(L), write);
    }
  };

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (long long i = 1; i <= n - 2; ++i) {
      if (sweep == last_sweep && i == start_plane) {
        window.base = sim.counters();
        measuring = true;
        updates = 0;
      }
      for (long long j = 1; j <= n - 2; ++j) {
        const long long row = (i * n + j) * n;  // element base of the center row
        long long k = 1;
        while (k <= n - 2) {
          const long long line = (tn_offset + row + k) / epl;
          const long long k_end = std::min(n - 2, (line + 1) * epl - 1 - tn_offset - row);
          if (measuring && static_cast<std::uint64_t>(line) != last_tn_line) ++updates;
          last_tn_line = static_cast<std::uint64_t>(line);
          touch_range(row, k - 1, k_end + 1, false);      // center row incl. k-1/k+1 overlap
          touch_range(row - n * n, k, k_end, false);      // plane i-1
          touch_range(row + n * n, k, k_end, false);      // plane i+1
          touch_range(row - n, k, k_end, false);          // row j-1
          touch_range(row + n, k, k_end, false);          // row j+1
          touch_range(tn_offset + row, k, k_end, true);   // destination write
          k = k_end + 1;
        }
      }
    }
  }

  std::ostringstream note;
  if (sweeps == 1) {
    note << "single sweep, planes " << start_plane << "-" << n - 2 << " measured";
  } else {
    note << "sweep " << sweeps << " of " << sweeps << " measured";
  }
  note << ", n=" << n;
  return make_report(sim, window, updates, note.str());
}

}  // namespace clmodel
