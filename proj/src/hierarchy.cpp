#include "clmodel/hierarchy.hpp"

#include <algorithm>
#include <cctype>

#include "clmodel/errors.hpp"

namespace clmodel {

std::string Level::name() const {
  if (is_memory()) return "MEM";
  return "L" + std::to_string(cache_index);
}

std::string Level::display_name() const { return is_memory() ? "Memory" : name(); }

Level parse_level(const std::string& token) {
  std::string u = token;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "MEM" || u == "MEMORY") return Level::memory();
  if (u.size() == 2 && u[0] == 'L' && u[1] >= '1' && u[1] <= '9') {
    return Level::cache(u[1] - '0');
  }
  throw ParseError("unknown hierarchy level \"" + token + "\" (expected L1..L9 or MEM)");
}

long long crossing_cachelines(const KernelDescription& kernel, int store_crossing_cachelines) {
  return kernel.load_streams + static_cast<long long>(kernel.store_streams) * store_crossing_cachelines;
}

Rat transfer_cycles(const Rat& cachelines, const Rat& bus_bytes_per_cycle, int cacheline_bytes) {
  if (!(cachelines > Rat(0))) throw DomainError("transfer_cycles: cacheline count must be > 0");
  if (!(bus_bytes_per_cycle > Rat(0))) throw DomainError("transfer_cycles: bus rate must be > 0");
  return cachelines * Rat(cacheline_bytes) / bus_bytes_per_cycle;
}

std::vector<Level> available_levels(const MachineDescription& machine) {
  std::vector<Level> levels;
  for (const CacheLevel& lvl : machine.cache_levels) levels.push_back(Level::cache(lvl.level_index));
  levels.push_back(Level::memory());
  return levels;
}

LevelPrediction predict_level(const KernelDescription& kernel, const MachineDescription& machine,
                              Level level) {
  if (!level.is_memory() && !machine.has_cache_level(level.cache_index)) {
    throw TopologyError("machine \"" + machine.name + "\" has no " + level.name() + " cache (outermost is L" +
                        std::to_string(machine.outermost_cache_level()) + ")");
  }

  LevelPrediction p;
  p.level = level;
  p.l1_execution_cycles = l1_cycles_per_cl(kernel, machine);

  int outer_cache = level.is_memory() ? machine.outermost_cache_level() : level.cache_index;
  // One contribution per bus between the working-set level and L1, innermost
  // crossing first. The crossing between Lj and Lj-1 is charged the inner
  // level's store traffic factor (its write policy owns the allocate/evict).
  for (int j = 2; j <= outer_cache; ++j) {
    const CacheLevel& inner = machine.cache_level(j - 1);
    long long cls = crossing_cachelines(kernel, inner.store_crossing_cachelines);
    TransferContribution t;
    t.crossing = "L" + std::to_string(j) + "->L" + std::to_string(j - 1);
    t.cachelines = cls;
    t.cycles = transfer_cycles(Rat(cls), machine.cache_level(j).bus_bytes_per_cycle_to_inner,
                               machine.cacheline_bytes);
    p.transfers.push_back(std::move(t));
  }
  if (level.is_memory()) {
    const CacheLevel& outer = machine.cache_level(outer_cache);
    long long cls = crossing_cachelines(kernel, outer.store_crossing_cachelines);
    TransferContribution t;
    t.crossing = "MEM->L" + std::to_string(outer_cache);
    t.cachelines = cls;
    t.cycles = Rat(cls) * memory_cycles_per_cacheline(machine);
    p.transfers.push_back(std::move(t));
  }

  p.total_cycles = p.l1_execution_cycles;
  for (const TransferContribution& t : p.transfers) p.total_cycles += t.cycles;
  p.total_cycles_rounded = p.total_cycles.round_nearest();

  long long streams = kernel.load_streams + kernel.store_streams;
  if (p.transfers.empty()) {
    // In-L1 working set: the only traffic is the L1<->core stream itself.
    p.real_traffic_cachelines = streams;
    p.effective_traffic_cachelines = streams;
  } else {
    p.real_traffic_cachelines = p.transfers.back().cachelines;
    p.effective_traffic_cachelines = streams;
  }
  return p;
}

PredictionTable prediction_table(const MachineDescription& machine,
                                 const std::vector<KernelDescription>& kernels) {
  PredictionTable table;
  table.machine_name = machine.name;
  table.levels = available_levels(machine);
  for (const KernelDescription& k : kernels) {
    PredictionTable::Row row;
    row.kernel = k;
    for (Level lvl : table.levels) row.cells.push_back(predict_level(k, machine, lvl));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::pair<double, double> cycles_to_bandwidths(const Rat& cycles, long long real_cls,
                                               long long effective_cls,
                                               const MachineDescription& machine) {
  if (!(cycles > Rat(0))) throw DomainError("cycles_to_bandwidths: cycles must be > 0");
  // bytes per cycle * GHz = GB/s (GB = 1e9 B).
  Rat real = Rat(real_cls * machine.cacheline_bytes) / cycles * machine.clock_ghz;
  Rat eff = Rat(effective_cls * machine.cacheline_bytes) / cycles * machine.clock_ghz;
  return {real.to_double(), eff.to_double()};
}

}  // namespace clmodel
