#pragma once

#include <string>
#include <utility>
#include <vector>

#include "clmodel/kernel.hpp"
#include "clmodel/machine.hpp"

namespace clmodel {

// A memory hierarchy level: a cache index (1 = L1) or main memory.
struct Level {
  int cache_index = 0;  // 0 means main memory

  static Level cache(int index) { return Level{index}; }
  static Level memory() { return Level{0}; }
  bool is_memory() const { return cache_index == 0; }

  std::string name() const;          // "L1", "L2", ..., "MEM"
  std::string display_name() const;  // like name() but "Memory" for MEM

  friend bool operator==(const Level&, const Level&) = default;
};

// Accepts "L1".."L9", "MEM", "MEMORY" (case-insensitive).
Level parse_level(const std::string& token);

// One inter-level bus crossed by a prediction.
struct TransferContribution {
  std::string crossing;    // "L2->L1", "MEM->L3"
  long long cachelines;    // lines moved per cacheline-per-stream update
  Rat cycles;
};

// Cycles per cacheline-per-stream update for a kernel whose working set sits
// in `level`: non-overlapping L1 execution plus one transfer term per bus
// between that level and L1.
struct LevelPrediction {
  Level level;
  Rat l1_execution_cycles;
  std::vector<TransferContribution> transfers;  // ordered innermost crossing first
  Rat total_cycles;
  long long total_cycles_rounded = 0;
  // Lines crossing the outermost exercised bus, with and without the
  // write-allocate/eviction traffic the application never sees.
  long long real_traffic_cachelines = 0;
  long long effective_traffic_cachelines = 0;
};

// Cachelines crossing any single bus per cacheline-per-stream update under a
// strictly inclusive hierarchy: one line per load stream, store_crossing
// (allocate + evict = 2) per store stream. Identical at every crossing.
long long crossing_cachelines(const KernelDescription& kernel, int store_crossing_cachelines = 2);

Rat transfer_cycles(const Rat& cachelines, const Rat& bus_bytes_per_cycle, int cacheline_bytes);

LevelPrediction predict_level(const KernelDescription& kernel, const MachineDescription& machine,
                              Level level);

// All levels a prediction can target on this machine, L1 outward then memory.
std::vector<Level> available_levels(const MachineDescription& machine);

struct PredictionTable {
  std::string machine_name;
  std::vector<Level> levels;
  struct Row {
    KernelDescription kernel;
    std::vector<LevelPrediction> cells;  // one per level, same order
  };
  std::vector<Row> rows;
};

PredictionTable prediction_table(const MachineDescription& machine,
                                 const std::vector<KernelDescription>& kernels);

// (real GB/s, effective GB/s) sustained when `cycles` pass per update moving
// real_cls / effective_cls cachelines. GB = 1e9 bytes.
std::pair<double, double> cycles_to_bandwidths(const Rat& cycles, long long real_cls,
                                               long long effective_cls,
                                               const MachineDescription& machine);

}  // namespace clmodel
