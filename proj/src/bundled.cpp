#include "clmodel/bundled.hpp"

#include <filesystem>

#include "clmodel/errors.hpp"

namespace clmodel::bundled {

// Intel Core 2 Q9550. Single-thread view: one 6 MB L2 half, 256-bit L2 bus,
// DDR2-800 on two channels (16 B per memory clock).
std::string core2_json() {
  return R"({
  "name": "core2",
  "clock_ghz": 2.83,
  "cacheline_bytes": 64,
  "l1": {
    "load_bytes_per_cycle": 16,
    "store_bytes_per_cycle": 16,
    "concurrent_load_store": true
  },
  "caches": [
    {"level": 1, "size_bytes": 32768, "inclusive": true, "write_allocate": true},
    {"level": 2, "size_bytes": 6291456, "bus_bytes_per_cycle": 32, "inclusive": true, "write_allocate": true}
  ],
  "memory": {"clock_mhz": 800, "bytes_per_clock": 16},
  "peak_flops_per_cycle": 4,
  "stream_triad_gbs": 6.8
}
)";
}

// Intel Core i7 920 (Nehalem). 256 kB per-core L2, 8 MB inclusive L3,
// 256-bit buses, DDR3-1066 on three channels (24 B per memory clock). The
// effective memory clock is 1066.67 MHz, which makes the derived peak the
// nominal 25.6 GB/s.
std::string nehalem_json() {
  return R"({
  "name": "nehalem",
  "clock_ghz": 2.67,
  "cacheline_bytes": 64,
  "l1": {
    "load_bytes_per_cycle": 16,
    "store_bytes_per_cycle": 16,
    "concurrent_load_store": true
  },
  "caches": [
    {"level": 1, "size_bytes": 32768, "inclusive": true, "write_allocate": true},
    {"level": 2, "size_bytes": 262144, "bus_bytes_per_cycle": 32, "inclusive": true, "write_allocate": true},
    {"level": 3, "size_bytes": 8388608, "bus_bytes_per_cycle": 32, "inclusive": true, "write_allocate": true}
  ],
  "memory": {"clock_mhz": 1066.67, "bytes_per_clock": 24},
  "peak_flops_per_cycle": 4,
  "stream_triad_gbs": 13.9
}
)";
}

// 3D Jacobi eight-point smoother: 8 flops per update (6 adds, 2 mults), 24
// cycles per cacheline update from instruction analysis. Full in-plane reuse
// needs 6 rows of the inner dimension resident; plane reuse needs 4 planes.
std::string jacobi3d_json() {
  return R"({
  "name": "jacobi3d",
  "dimensions": 3,
  "element_bytes": 8,
  "flops_per_update": 8,
  "l1_cycles_per_cl_update": 24,
  "rows_needed": 6,
  "planes_needed": 4
}
)";
}

// Measured cycles per cacheline-per-stream update for the two bundled
// machines (single-thread streaming benchmarks, working set sized per level).
std::string measured_cycles_csv() {
  return R"(# Measured cycles per cacheline-per-stream update, single thread.
# Working sets sized to fit the named level but none inner to it.
machine,kernel,level,cycles_per_cl,notes
core2,load,L1,4.17
core2,store,L1,4.26
core2,copy,L1,4.31
core2,triad,L1,8.04
core2,load,L2,7.21
core2,store,L2,8.49
core2,copy,L2,13.34
core2,triad,L2,22.72
core2,load,MEM,29.60
core2,store,MEM,72.04
core2,copy,MEM,88.61
core2,triad,MEM,108.15
nehalem,load,L1,4.12
nehalem,store,L1,4.20
nehalem,copy,L1,4.26
nehalem,triad,L1,8.34
nehalem,load,L2,7.18
nehalem,store,L2,6.61,faster than predicted
nehalem,copy,L2,10.94
nehalem,triad,L2,17.45
nehalem,load,L3,8.39
nehalem,store,L3,9.88,faster than predicted
nehalem,copy,L3,15.4
nehalem,triad,L3,24.91
nehalem,load,MEM,14.02
nehalem,store,MEM,18.27
nehalem,copy,MEM,29.25
nehalem,triad,MEM,42.72
)";
}

MachineDescription core2() { return load_machine(core2_json(), "bundled core2"); }
MachineDescription nehalem() { return load_machine(nehalem_json(), "bundled nehalem"); }
StencilSpec jacobi3d() { return load_stencil(jacobi3d_json(), "bundled jacobi3d"); }

std::vector<MeasurementRecord> measurements() {
  return load_measurements(measured_cycles_csv(), machine_names(),
                           {"load", "store", "copy", "triad"}, "bundled measurements");
}

std::vector<std::string> machine_names() { return {"core2", "nehalem"}; }

namespace {

std::string find_in_data_dir(const std::string& name, const std::string& data_dir,
                             const std::string& extension) {
  if (data_dir.empty()) return {};
  std::filesystem::path p = std::filesystem::path(data_dir) / (name + extension);
  std::error_code ec;
  if (std::filesystem::exists(p, ec)) return p.string();
  return {};
}

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos || s.find('\\') != std::string::npos ||
         (s.size() > 5 && s.substr(s.size() - 5) == ".json");
}

}  // namespace

MachineDescription resolve_machine(const std::string& name_or_path, const std::string& data_dir) {
  if (std::string p = find_in_data_dir(name_or_path, data_dir, ".json"); !p.empty()) {
    return load_machine_file(p);
  }
  if (!looks_like_path(name_or_path)) {
    if (name_or_path == "core2") return core2();
    if (name_or_path == "nehalem") return nehalem();
  }
  return load_machine_file(name_or_path);
}

StencilSpec resolve_stencil(const std::string& name_or_path, const std::string& data_dir) {
  if (std::string p = find_in_data_dir(name_or_path, data_dir, ".json"); !p.empty()) {
    return load_stencil_file(p);
  }
  if (!looks_like_path(name_or_path) && name_or_path == "jacobi3d") return jacobi3d();
  return load_stencil_file(name_or_path);
}

}  // namespace clmodel::bundled
