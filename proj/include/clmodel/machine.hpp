#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clmodel/rational.hpp"

namespace clmodel {

// The only store-miss policy in scope: allocate the line on a store miss and
// write the dirty line back on eviction. Every store miss therefore moves two
// cachelines across a crossing (allocate + evict).
enum class WritePolicy { write_allocate_write_back };

struct MemorySystem {
  Rat clock_mhz;         // effective memory bus clock
  Rat bytes_per_clock;   // bus width x channels
  Rat peak_bandwidth_gbs;  // clock_mhz * bytes_per_clock / 1000 (GB = 1e9 B)

  friend bool operator==(const MemorySystem&, const MemorySystem&) = default;
};

struct CacheLevel {
  int level_index = 0;  // 1 = L1, counting outward
  std::uint64_t size_bytes = 0;
  // Bytes per cycle on the bus toward the next-inner level; unset for L1.
  Rat bus_bytes_per_cycle_to_inner;
  WritePolicy write_policy = WritePolicy::write_allocate_write_back;
  bool inclusive = true;
  // Cachelines moved across this level's inner bus per store-miss update.
  int store_crossing_cachelines = 2;

  friend bool operator==(const CacheLevel&, const CacheLevel&) = default;
};

// Everything the model needs to know about a processor: core clock, L1 port
// widths, per-level cache geometry and bus widths, and the memory subsystem.
// Immutable after load; safe to share across threads.
struct MachineDescription {
  std::string name;
  Rat clock_ghz;
  int cacheline_bytes = 64;
  Rat l1_load_bytes_per_cycle;
  Rat l1_store_bytes_per_cycle;
  bool l1_concurrent_load_store = true;
  std::vector<CacheLevel> cache_levels;  // ordered L1 outward
  MemorySystem memory;
  double peak_flops_per_cycle = 0.0;  // balanced mult/add mix
  std::optional<double> measured_stream_triad_gbs;

  int outermost_cache_level() const { return cache_levels.back().level_index; }
  bool has_cache_level(int index) const {
    return index >= 1 && index <= static_cast<int>(cache_levels.size());
  }
  const CacheLevel& cache_level(int index) const { return cache_levels.at(index - 1); }
  double peak_gflops() const { return peak_flops_per_cycle * clock_ghz.to_double(); }

  friend bool operator==(const MachineDescription&, const MachineDescription&) = default;
};

// Parses and validates a machine document (JSON; see README for the schema).
// Unknown keys are a hard error. `origin` labels diagnostics (e.g. filename).
MachineDescription load_machine(const std::string& json_text, const std::string& origin = "machine document");
MachineDescription load_machine_file(const std::string& path);

// Serializes back to the document schema; load(save(m)) == m field-wise.
std::string save_machine(const MachineDescription& machine);

// Throws ValidationError naming the violated invariant.
void validate(const MachineDescription& machine);

// CPU cycles to move one cacheline across the memory bus, converted from the
// memory clock domain: cacheline_bytes / peak_bandwidth * core clock.
// Fractional, never rounded.
Rat memory_cycles_per_cacheline(const MachineDescription& machine);

}  // namespace clmodel
