#include "clmodel/machine.hpp"

#include <fstream>
#include <sstream>

#include "clmodel/errors.hpp"
#include "json_util.hpp"

namespace clmodel {

using detail::json;

namespace {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void validate(const MachineDescription& m) {
  const std::string who = "machine \"" + m.name + "\"";
  if (m.name.empty()) throw ValidationError("machine name must be non-empty");
  if (!(m.clock_ghz > Rat(0))) throw ValidationError(who + ": clock_ghz must be > 0");
  if (!is_power_of_two(m.cacheline_bytes)) {
    throw ValidationError(who + ": cacheline_bytes must be a positive power of two, got " +
                          std::to_string(m.cacheline_bytes));
  }
  if (!(m.l1_load_bytes_per_cycle > Rat(0)) || !(m.l1_store_bytes_per_cycle > Rat(0))) {
    throw ValidationError(who + ": L1 load/store bytes per cycle must be > 0");
  }
  if (m.cache_levels.empty()) throw ValidationError(who + ": cache_levels must be non-empty");
  for (std::size_t i = 0; i < m.cache_levels.size(); ++i) {
    const CacheLevel& lvl = m.cache_levels[i];
    const std::string lname = "L" + std::to_string(lvl.level_index);
    if (lvl.level_index != static_cast<int>(i) + 1) {
      throw ValidationError(who + ": cache levels must be numbered consecutively from 1, got " +
                            lname + " at position " + std::to_string(i + 1));
    }
    if (lvl.size_bytes == 0) throw ValidationError(who + ": " + lname + " size_bytes must be > 0");
    if (i > 0 && lvl.size_bytes <= m.cache_levels[i - 1].size_bytes) {
      throw ValidationError(who + ": cache level sizes must strictly increase outward (" + lname +
                            " " + std::to_string(lvl.size_bytes) + " <= L" + std::to_string(i) +
                            " " + std::to_string(m.cache_levels[i - 1].size_bytes) + ")");
    }
    if (lvl.level_index >= 2 && !(lvl.bus_bytes_per_cycle_to_inner > Rat(0))) {
      throw ValidationError(who + ": " + lname + " bus_bytes_per_cycle must be > 0");
    }
    if (lvl.store_crossing_cachelines < 1 || lvl.store_crossing_cachelines > 2) {
      throw ValidationError(who + ": " + lname + " store_crossing_cachelines must be 1 or 2");
    }
    if (lvl.write_policy == WritePolicy::write_allocate_write_back &&
        lvl.store_crossing_cachelines != 2) {
      throw ValidationError(who + ": " + lname +
                            " write-allocate write-back implies 2 cachelines per store miss");
    }
  }
  if (!(m.memory.clock_mhz > Rat(0)) || !(m.memory.bytes_per_clock > Rat(0))) {
    throw ValidationError(who + ": memory clock_mhz and bytes_per_clock must be > 0");
  }
  // peak_bandwidth_gbs = clock_mhz * bytes_per_clock / 1000, kept exact.
  Rat expect = m.memory.clock_mhz * m.memory.bytes_per_clock / Rat(1000);
  if (m.memory.peak_bandwidth_gbs != expect) {
    throw ValidationError(who + ": memory peak_bandwidth_gbs inconsistent with clock * width");
  }
  if (m.peak_flops_per_cycle <= 0.0) {
    throw ValidationError(who + ": peak_flops_per_cycle must be > 0");
  }
  if (m.measured_stream_triad_gbs && *m.measured_stream_triad_gbs <= 0.0) {
    throw ValidationError(who + ": stream_triad_gbs must be > 0 when present");
  }
}

MachineDescription load_machine(const std::string& json_text, const std::string& origin) {
  json doc = detail::parse_document(json_text, origin);
  if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
  detail::reject_unknown_keys(doc,
                              {"name", "clock_ghz", "cacheline_bytes", "l1", "caches", "memory",
                               "peak_flops_per_cycle", "stream_triad_gbs"},
                              origin, "top level");

  MachineDescription m;
  m.name = detail::to_string(detail::require_field(doc, "name", origin, "top level"), origin, "name");
  m.clock_ghz = detail::to_rat(detail::require_field(doc, "clock_ghz", origin, "top level"), origin,
                               "clock_ghz");
  m.cacheline_bytes = static_cast<int>(detail::to_int(
      detail::require_field(doc, "cacheline_bytes", origin, "top level"), origin, "cacheline_bytes"));

  const json& l1 = detail::require_field(doc, "l1", origin, "top level");
  if (!l1.is_object()) throw ParseError(origin + ": \"l1\" must be an object");
  detail::reject_unknown_keys(l1, {"load_bytes_per_cycle", "store_bytes_per_cycle", "concurrent_load_store"},
                              origin, "\"l1\"");
  m.l1_load_bytes_per_cycle = detail::to_rat(
      detail::require_field(l1, "load_bytes_per_cycle", origin, "\"l1\""), origin, "load_bytes_per_cycle");
  m.l1_store_bytes_per_cycle = detail::to_rat(
      detail::require_field(l1, "store_bytes_per_cycle", origin, "\"l1\""), origin, "store_bytes_per_cycle");
  m.l1_concurrent_load_store = detail::to_bool(
      detail::require_field(l1, "concurrent_load_store", origin, "\"l1\""), origin, "concurrent_load_store");

  const json& caches = detail::require_field(doc, "caches", origin, "top level");
  if (!caches.is_array()) throw ParseError(origin + ": \"caches\" must be an array");
  for (const json& c : caches) {
    if (!c.is_object()) throw ParseError(origin + ": cache entries must be objects");
    detail::reject_unknown_keys(c, {"level", "size_bytes", "bus_bytes_per_cycle", "inclusive", "write_allocate"},
                                origin, "cache entry");
    CacheLevel lvl;
    lvl.level_index =
        static_cast<int>(detail::to_int(detail::require_field(c, "level", origin, "cache entry"), origin, "level"));
    lvl.size_bytes = static_cast<std::uint64_t>(
        detail::to_int(detail::require_field(c, "size_bytes", origin, "cache entry"), origin, "size_bytes"));
    if (c.contains("bus_bytes_per_cycle")) {
      lvl.bus_bytes_per_cycle_to_inner = detail::to_rat(c.at("bus_bytes_per_cycle"), origin, "bus_bytes_per_cycle");
    } else if (lvl.level_index >= 2) {
      throw ParseError(origin + ": cache level " + std::to_string(lvl.level_index) +
                       " requires \"bus_bytes_per_cycle\"");
    }
    lvl.inclusive =
        detail::to_bool(detail::require_field(c, "inclusive", origin, "cache entry"), origin, "inclusive");
    bool write_allocate =
        detail::to_bool(detail::require_field(c, "write_allocate", origin, "cache entry"), origin, "write_allocate");
    if (!write_allocate) {
      throw ValidationError(origin + ": cache level " + std::to_string(lvl.level_index) +
                            ": only write-allocate write-back caches are supported");
    }
    lvl.write_policy = WritePolicy::write_allocate_write_back;
    lvl.store_crossing_cachelines = 2;
    m.cache_levels.push_back(lvl);
  }

  const json& mem = detail::require_field(doc, "memory", origin, "top level");
  if (!mem.is_object()) throw ParseError(origin + ": \"memory\" must be an object");
  detail::reject_unknown_keys(mem, {"clock_mhz", "bytes_per_clock"}, origin, "\"memory\"");
  m.memory.clock_mhz =
      detail::to_rat(detail::require_field(mem, "clock_mhz", origin, "\"memory\""), origin, "clock_mhz");
  m.memory.bytes_per_clock = detail::to_rat(detail::require_field(mem, "bytes_per_clock", origin, "\"memory\""),
                                            origin, "bytes_per_clock");
  m.memory.peak_bandwidth_gbs = m.memory.clock_mhz * m.memory.bytes_per_clock / Rat(1000);

  m.peak_flops_per_cycle = detail::to_double(
      detail::require_field(doc, "peak_flops_per_cycle", origin, "top level"), origin, "peak_flops_per_cycle");
  if (doc.contains("stream_triad_gbs")) {
    m.measured_stream_triad_gbs = detail::to_double(doc.at("stream_triad_gbs"), origin, "stream_triad_gbs");
  }

  validate(m);
  return m;
}

MachineDescription load_machine_file(const std::string& path) {
  return load_machine(read_file(path), path);
}

std::string save_machine(const MachineDescription& m) {
  json doc;
  doc["name"] = m.name;
  doc["clock_ghz"] = detail::rat_to_json(m.clock_ghz);
  doc["cacheline_bytes"] = m.cacheline_bytes;
  doc["l1"] = {{"load_bytes_per_cycle", detail::rat_to_json(m.l1_load_bytes_per_cycle)},
               {"store_bytes_per_cycle", detail::rat_to_json(m.l1_store_bytes_per_cycle)},
               {"concurrent_load_store", m.l1_concurrent_load_store}};
  doc["caches"] = json::array();
  for (const CacheLevel& lvl : m.cache_levels) {
    json c = {{"level", lvl.level_index},
              {"size_bytes", lvl.size_bytes},
              {"inclusive", lvl.inclusive},
              {"write_allocate", true}};
    if (lvl.level_index >= 2) c["bus_bytes_per_cycle"] = detail::rat_to_json(lvl.bus_bytes_per_cycle_to_inner);
    doc["caches"].push_back(c);
  }
  doc["memory"] = {{"clock_mhz", detail::rat_to_json(m.memory.clock_mhz)},
                   {"bytes_per_clock", detail::rat_to_json(m.memory.bytes_per_clock)}};
  doc["peak_flops_per_cycle"] = m.peak_flops_per_cycle;
  if (m.measured_stream_triad_gbs) doc["stream_triad_gbs"] = *m.measured_stream_triad_gbs;
  return doc.dump(2) + "\n";
}

Rat memory_cycles_per_cacheline(const MachineDescription& m) {
  // bytes / (GB/s) gives nanoseconds; * GHz converts to core cycles.
  return Rat(m.cacheline_bytes) / m.memory.peak_bandwidth_gbs * m.clock_ghz;
}

}  // namespace clmodel
