#pragma once

#include <random>

#include "clmodel/kernel.hpp"
#include "clmodel/machine.hpp"

namespace testgen {

// Random but always-valid machine: 1-3 cache levels with strictly growing
// sizes, power-of-two line size, decimal clock.
inline clmodel::MachineDescription random_machine(std::mt19937& rng) {
  using clmodel::Rat;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  clmodel::MachineDescription m;
  m.name = "rand" + std::to_string(pick(0, 999999));
  m.clock_ghz = Rat(pick(100, 400), 100);  // 1.00 .. 4.00 GHz
  m.cacheline_bytes = 64;
  int widths[] = {8, 16, 32};
  m.l1_load_bytes_per_cycle = Rat(widths[pick(0, 2)]);
  m.l1_store_bytes_per_cycle = Rat(widths[pick(0, 2)]);
  m.l1_concurrent_load_store = pick(0, 1) == 1;

  int levels = pick(1, 3);
  std::uint64_t size = 1024ull << pick(3, 6);  // 8 kB .. 64 kB L1
  for (int i = 1; i <= levels; ++i) {
    clmodel::CacheLevel lvl;
    lvl.level_index = i;
    lvl.size_bytes = size;
    if (i >= 2) lvl.bus_bytes_per_cycle_to_inner = Rat(1 << pick(3, 6));  // 8..64 B/cy
    m.cache_levels.push_back(lvl);
    size *= 1ull << pick(2, 5);
  }
  m.memory.clock_mhz = Rat(pick(200, 1600));
  m.memory.bytes_per_clock = Rat(pick(4, 32));
  m.memory.peak_bandwidth_gbs = m.memory.clock_mhz * m.memory.bytes_per_clock / Rat(1000);
  m.peak_flops_per_cycle = pick(1, 8);
  if (pick(0, 1)) m.measured_stream_triad_gbs = pick(1, 30);
  return m;
}

inline clmodel::KernelDescription random_kernel(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  clmodel::KernelDescription k;
  k.name = "k" + std::to_string(pick(0, 999999));
  k.load_streams = pick(0, 4);
  k.store_streams = pick(0, 2);
  if (k.load_streams + k.store_streams == 0) k.load_streams = 1;
  k.adds_per_iteration = pick(0, 4);
  k.mults_per_iteration = pick(0, 4);
  k.element_bytes = 8;
  return k;
}

}  // namespace testgen
