#include "clmodel/layer_condition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "clmodel/errors.hpp"
#include "json_util.hpp"

namespace clmodel {

using detail::json;

void validate(const StencilSpec& s) {
  const std::string who = "stencil \"" + s.name + "\"";
  if (s.dimensions != 2 && s.dimensions != 3) throw ValidationError(who + ": dimensions must be 2 or 3");
  if (s.grid_points_per_dim < 3) throw ValidationError(who + ": grid_points_per_dim must be >= 3");
  if (s.element_bytes <= 0) throw ValidationError(who + ": element_bytes must be > 0");
  if (s.flops_per_update <= 0) throw ValidationError(who + ": flops_per_update must be > 0");
  if (!(s.l1_cycles_per_cl_update > Rat(0))) {
    throw ValidationError(who + ": l1_cycles_per_cl_update must be > 0");
  }
  if (s.dimensions == 3) {
    if (!(s.rows_needed > s.planes_needed && s.planes_needed >= 2)) {
      throw ValidationError(who + ": 3D reuse footprint requires rows_needed > planes_needed >= 2");
    }
  } else {
    if (s.rows_needed < 2) throw ValidationError(who + ": 2D reuse footprint requires rows_needed >= 2");
  }
}

StencilSpec load_stencil(const std::string& json_text, const std::string& origin) {
  json doc = detail::parse_document(json_text, origin);
  if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
  detail::reject_unknown_keys(doc,
                              {"name", "dimensions", "grid_points_per_dim", "element_bytes", "flops_per_update",
                               "l1_cycles_per_cl_update", "rows_needed", "planes_needed"},
                              origin, "top level");
  StencilSpec s;
  s.name = detail::to_string(detail::require_field(doc, "name", origin, "top level"), origin, "name");
  s.dimensions = static_cast<int>(
      detail::to_int(detail::require_field(doc, "dimensions", origin, "top level"), origin, "dimensions"));
  if (doc.contains("grid_points_per_dim")) {
    s.grid_points_per_dim = detail::to_int(doc.at("grid_points_per_dim"), origin, "grid_points_per_dim");
  } else {
    s.grid_points_per_dim = 3;  // placeholder; callers set the real n
  }
  s.element_bytes = static_cast<int>(
      detail::to_int(detail::require_field(doc, "element_bytes", origin, "top level"), origin, "element_bytes"));
  s.flops_per_update = static_cast<int>(detail::to_int(
      detail::require_field(doc, "flops_per_update", origin, "top level"), origin, "flops_per_update"));
  s.l1_cycles_per_cl_update = detail::to_rat(
      detail::require_field(doc, "l1_cycles_per_cl_update", origin, "top level"), origin, "l1_cycles_per_cl_update");
  s.rows_needed = static_cast<int>(
      detail::to_int(detail::require_field(doc, "rows_needed", origin, "top level"), origin, "rows_needed"));
  s.planes_needed = s.dimensions == 3
                        ? static_cast<int>(detail::to_int(
                              detail::require_field(doc, "planes_needed", origin, "top level"), origin, "planes_needed"))
                        : (doc.contains("planes_needed")
                               ? static_cast<int>(detail::to_int(doc.at("planes_needed"), origin, "planes_needed"))
                               : 0);
  validate(s);
  return s;
}

StencilSpec load_stencil_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_stencil(ss.str(), path);
}

std::string StreamRegime::label() const {
  switch (kind) {
    case Kind::worst:
      return "worst";
    case Kind::middle:
      return "middle";
    case Kind::best:
      return "best";
  }
  return "?";
}

StreamRegime classify_regime(const StencilSpec& s, std::uint64_t cache_bytes, double cache_fraction) {
  if (cache_bytes == 0) throw DomainError("classify_regime: cache_bytes must be > 0");
  if (cache_fraction <= 0.0) throw DomainError("classify_regime: cache_fraction must be > 0");
  const double capacity = static_cast<double>(cache_bytes) * cache_fraction;
  const double n = static_cast<double>(s.grid_points_per_dim);
  const double elem = s.element_bytes;

  StreamRegime r;
  auto describe = [&](const std::string& what, double need, bool fits) {
    std::ostringstream os;
    os << what << " = " << static_cast<long long>(need) << " B " << (fits ? "<=" : ">") << " "
       << static_cast<std::uint64_t>(capacity) << " B cache";
    return os.str();
  };

  if (s.dimensions == 3) {
    double rows_bytes = s.rows_needed * n * elem;
    double planes_bytes = s.planes_needed * n * n * elem;
    if (rows_bytes > capacity) {
      r.kind = StreamRegime::Kind::worst;
      r.memory_load_streams = 6;
      r.threshold = describe(std::to_string(s.rows_needed) + " rows", rows_bytes, false);
    } else if (planes_bytes > capacity) {
      r.kind = StreamRegime::Kind::middle;
      r.memory_load_streams = 4;
      r.threshold = describe(std::to_string(s.planes_needed) + " planes", planes_bytes, false);
    } else {
      r.kind = StreamRegime::Kind::best;
      r.memory_load_streams = 2;
      r.threshold = describe(std::to_string(s.planes_needed) + " planes", planes_bytes, true);
    }
  } else {
    double rows_bytes = s.rows_needed * n * elem;
    if (rows_bytes > capacity) {
      r.kind = StreamRegime::Kind::worst;
      r.memory_load_streams = 4;
      r.threshold = describe(std::to_string(s.rows_needed) + " rows", rows_bytes, false);
    } else {
      r.kind = StreamRegime::Kind::best;
      r.memory_load_streams = 2;
      r.threshold = describe(std::to_string(s.rows_needed) + " rows", rows_bytes, true);
    }
  }
  r.rfo_streams = 1;
  return r;
}

namespace {

double round_decimals(double v, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

}  // namespace

BalanceReport regime_balance_prediction(const StencilSpec& stencil, const MachineDescription& machine,
                                        const StreamRegime& regime, double applicable_peak_gflops) {
  if (!machine.measured_stream_triad_gbs) {
    throw ConfigError("machine \"" + machine.name +
                      "\" has no stream_triad_gbs; regime balance predictions need the measured "
                      "triad bandwidth");
  }
  if (applicable_peak_gflops <= 0.0) throw DomainError("regime balance: peak must be > 0");
  double gwords = round_decimals(*machine.measured_stream_triad_gbs / 8.0, 2);
  double bm = round_decimals(machine_balance(gwords, applicable_peak_gflops), 3);
  double ba = stream_algorithmic_balance(regime.memory_load_streams, regime.rfo_streams,
                                         stencil.flops_per_update);
  BalanceReport r;
  r.machine_balance_wf = bm;
  r.algorithmic_balance_wf = ba;
  r.lightspeed = round_decimals(std::min(1.0, bm / ba), 3);
  r.applicable_peak_gflops = applicable_peak_gflops;
  r.predicted_gflops = r.lightspeed * applicable_peak_gflops;
  return r;
}

StencilPrediction hierarchy_prediction(const StencilSpec& stencil, const MachineDescription& machine,
                                       const std::vector<long long>& traffic_cachelines) {
  const std::size_t crossings = machine.cache_levels.size();  // inter-cache buses + memory bus
  if (traffic_cachelines.size() != crossings) {
    throw ValidationError("traffic list has " + std::to_string(traffic_cachelines.size()) +
                          " entries but machine \"" + machine.name + "\" has " + std::to_string(crossings) +
                          " crossings");
  }
  for (long long cls : traffic_cachelines) {
    if (cls < 0) throw ValidationError("traffic cacheline counts must be >= 0");
  }

  StencilPrediction p;
  p.l1_cycles = stencil.l1_cycles_per_cl_update;
  p.total_cycles = p.l1_cycles;
  for (std::size_t i = 0; i < crossings; ++i) {
    bool is_memory = i + 1 == crossings;
    TransferContribution t;
    t.cachelines = traffic_cachelines[i];
    if (is_memory) {
      t.crossing = "MEM->L" + std::to_string(machine.outermost_cache_level());
      t.cycles = Rat(t.cachelines) * memory_cycles_per_cacheline(machine);
    } else {
      int outer_level = static_cast<int>(i) + 2;
      t.crossing = "L" + std::to_string(outer_level) + "->L" + std::to_string(outer_level - 1);
      t.cycles = t.cachelines == 0 ? Rat(0)
                                   : transfer_cycles(Rat(t.cachelines),
                                                     machine.cache_level(outer_level).bus_bytes_per_cycle_to_inner,
                                                     machine.cacheline_bytes);
    }
    p.total_cycles += t.cycles;
    p.transfers.push_back(std::move(t));
  }
  p.total_cycles_rounded = p.total_cycles.round_nearest();

  int updates_per_cl = machine.cacheline_bytes / stencil.element_bytes;
  // flops per cacheline / cycles * GHz = GFlops/s; *1000 = MFlops/s.
  p.mflops = static_cast<double>(stencil.flops_per_update) * updates_per_cl / p.total_cycles.to_double() *
             machine.clock_ghz.to_double() * 1000.0;
  return p;
}

std::vector<long long> traffic_preset(const std::string& name) {
  // Measured traffic for the 3D Jacobi on the bundled three-level machine:
  // the write-allocate line is charged on the outer crossings but not
  // L2->L1, and plane reuse holds at L3.
  if (name == "jacobi-nehalem") return {4, 5, 3};
  throw ConfigError("unknown traffic preset \"" + name + "\" (available: jacobi-nehalem)");
}

}  // namespace clmodel
