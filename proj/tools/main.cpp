#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clmodel/balance.hpp"
#include "clmodel/bundled.hpp"
#include "clmodel/cache_sim.hpp"
#include "clmodel/errors.hpp"
#include "clmodel/hierarchy.hpp"
#include "clmodel/kernel.hpp"
#include "clmodel/layer_condition.hpp"
#include "clmodel/machine.hpp"
#include "clmodel/measurements.hpp"
#include "clmodel/refcheck.hpp"
#include "clmodel/render.hpp"

namespace {

using namespace clmodel;

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<KernelDescription> resolve_kernels(const std::string& list) {
  std::vector<KernelDescription> kernels;
  for (const std::string& name : split_list(list)) {
    if (auto k = builtin::by_name(name)) {
      kernels.push_back(*k);
    } else {
      kernels.push_back(load_kernel_file(name));
    }
  }
  if (kernels.empty()) throw ConfigError("no kernels given");
  return kernels;
}

std::vector<long long> parse_traffic(const std::string& arg) {
  if (arg.find(',') == std::string::npos && !isdigit(static_cast<unsigned char>(arg[0]))) {
    return traffic_preset(arg);
  }
  std::vector<long long> traffic;
  for (const std::string& tok : split_list(arg)) {
    try {
      traffic.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad traffic entry \"" + tok + "\" (expected a preset name or a comma list)");
    }
  }
  return traffic;
}

OutputFormat parse_format(const std::string& f) {
  return f == "csv" ? OutputFormat::csv : OutputFormat::text;
}

struct Args {
  std::string data_dir;
  std::string machine;
  std::string kernels = "load,store,copy,triad";
  std::string kernel = "triad";
  std::string level;
  std::string format = "text";
  std::string stencil;
  std::string traffic;
  std::string measurements;
  long long n = 0;
  double peak_gflops = 0.0;
  double bandwidth_gbs = 0.0;
  double bandwidth_gws = 0.0;
  double cache_fraction = 1.0;
  int streams = 0;
  int rfo_streams = 1;
  int flops = 0;
  bool no_rfo = false;
  bool paper_check = false;
  int passes = 3;
  int sweeps = 1;
  double max_ws_mb = 16.0;
};

int run_predict(const Args& a) {
  MachineDescription m = bundled::resolve_machine(a.machine, a.data_dir);
  std::vector<KernelDescription> kernels = resolve_kernels(a.kernels);
  if (!a.level.empty()) {
    Level lvl = parse_level(a.level);
    for (const KernelDescription& k : kernels) {
      std::cout << render_prediction_detail(k, m, predict_level(k, m, lvl));
    }
    return 0;
  }
  std::cout << render_prediction_table(prediction_table(m, kernels), m, parse_format(a.format));
  return 0;
}

int run_balance(const Args& a) {
  double gws = a.bandwidth_gws;
  if (gws == 0.0 && a.bandwidth_gbs != 0.0) gws = a.bandwidth_gbs / 8.0;
  if (gws == 0.0) throw ConfigError("balance needs --bandwidth-gws or --bandwidth-gbs");
  if (a.peak_gflops == 0.0) throw ConfigError("balance needs --peak-gflops");
  double bm = machine_balance(gws, a.peak_gflops);
  double ba;
  if (a.streams > 0) {
    ba = stream_algorithmic_balance(a.streams, a.rfo_streams, a.flops);
  } else {
    KernelDescription k = builtin::by_name(a.kernel) ? *builtin::by_name(a.kernel) : load_kernel_file(a.kernel);
    ba = algorithmic_balance(k, !a.no_rfo);
  }
  std::cout << render_balance_report(balance_prediction(bm, ba, a.peak_gflops));
  return 0;
}

int run_layer_condition(const Args& a) {
  MachineDescription m = bundled::resolve_machine(a.machine, a.data_dir);
  StencilSpec stencil = bundled::resolve_stencil(a.stencil, a.data_dir);
  stencil.grid_points_per_dim = a.n;
  validate(stencil);

  std::uint64_t outer_cache = m.cache_levels.back().size_bytes;
  StreamRegime regime = classify_regime(stencil, outer_cache, a.cache_fraction);
  std::cout << "stencil " << stencil.name << ", n=" << a.n << " on " << m.name << "\n"
            << "regime: " << regime.label() << " (" << regime.memory_load_streams << " memory streams + "
            << regime.rfo_streams << " RFO): " << regime.threshold << "\n\n";

  double peak = a.peak_gflops > 0.0 ? a.peak_gflops : m.peak_gflops();
  std::cout << "balance prediction (peak " << peak << " GFlops/s):\n"
            << render_balance_report(regime_balance_prediction(stencil, m, regime, peak)) << "\n";

  std::vector<long long> traffic;
  if (!a.traffic.empty()) {
    traffic = parse_traffic(a.traffic);
  } else if (m.cache_levels.size() == 3) {
    traffic = traffic_preset("jacobi-nehalem");
  }
  if (!traffic.empty()) {
    std::cout << "hierarchy prediction (traffic";
    for (long long t : traffic) std::cout << " " << t;
    std::cout << " CLs per crossing):\n" << render_stencil_prediction(hierarchy_prediction(stencil, m, traffic));
  } else {
    std::cout << "hierarchy prediction skipped: pass --traffic with one cacheline count per crossing ("
              << m.cache_levels.size() << " needed for " << m.name << ")\n";
  }

  if (a.paper_check) {
    std::cout << "\nreference comparison:\n";
    for (const CheckResult& r : run_reference_checks()) {
      if (r.name == "stencil-regime-balance" || r.name == "jacobi-hierarchy-prediction") {
        std::cout << format_check(r);
      }
    }
  }
  return 0;
}

int run_simulate(const Args& a) {
  MachineDescription m = bundled::resolve_machine(a.machine, a.data_dir);
  SimOptions opts;
  opts.passes = a.passes;
  opts.sweeps = a.sweeps;
  opts.max_working_set_bytes = static_cast<std::uint64_t>(a.max_ws_mb * (1 << 20));
  SimReport report;
  if (!a.stencil.empty()) {
    StencilSpec stencil = bundled::resolve_stencil(a.stencil, a.data_dir);
    stencil.grid_points_per_dim = a.n;
    validate(stencil);
    report = simulate_stencil(stencil, m, opts);
  } else {
    if (a.level.empty()) throw ConfigError("simulate needs --level (or --stencil with --n)");
    KernelDescription k = builtin::by_name(a.kernel) ? *builtin::by_name(a.kernel) : load_kernel_file(a.kernel);
    report = simulate_kernel(k, m, parse_level(a.level), opts);
  }
  std::cout << render_sim_report(report, parse_format(a.format));
  return 0;
}

int run_compare(const Args& a) {
  MachineDescription m = bundled::resolve_machine(a.machine, a.data_dir);
  std::vector<KernelDescription> kernels = resolve_kernels(a.kernels);
  std::vector<std::string> kernel_names;
  for (const auto& k : kernels) kernel_names.push_back(k.name);
  std::vector<std::string> machines = bundled::machine_names();
  if (std::find(machines.begin(), machines.end(), m.name) == machines.end()) machines.push_back(m.name);

  std::string csv_path = a.measurements;
  if (csv_path.empty() && !a.data_dir.empty()) {
    std::string candidate = a.data_dir + "/measured_cycles.csv";
    if (std::ifstream(candidate).good()) csv_path = candidate;
  }
  std::vector<MeasurementRecord> records =
      csv_path.empty() ? bundled::measurements()
                       : load_measurements_file(csv_path, machines, kernel_names);
  std::cout << render_comparison(compare(records, m, kernels), m, kernel_names, parse_format(a.format));
  return 0;
}

int run_paper_check() {
  bool all_pass = true;
  for (const CheckResult& r : run_reference_checks()) {
    std::cout << format_check(r);
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "all reference checks passed\n" : "some reference checks FAILED\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycles-per-cacheline performance model for streaming loop kernels"};
  app.require_subcommand(1);
  Args a;
  if (const char* env = std::getenv("CLMODEL_DATA_DIR")) a.data_dir = env;

  CLI::App* predict = app.add_subcommand("predict", "predict cycles per cacheline update across hierarchy levels");
  predict->add_option("--machine", a.machine, "machine name (core2, nehalem) or JSON file")->required();
  predict->add_option("--kernels", a.kernels, "comma-separated kernel names or JSON files");
  predict->add_option("--level", a.level, "detail view for one level (L1..L9, MEM)");
  predict->add_option("--format", a.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  CLI::App* balance = app.add_subcommand("balance", "classic balance-metric prediction");
  balance->add_option("--bandwidth-gbs", a.bandwidth_gbs, "sustainable bandwidth in GB/s");
  balance->add_option("--bandwidth-gws", a.bandwidth_gws, "sustainable bandwidth in GWords/s (8 B words)");
  balance->add_option("--peak-gflops", a.peak_gflops, "applicable peak flop rate")->required();
  balance->add_option("--kernel", a.kernel, "kernel name or JSON file");
  balance->add_flag("--no-rfo", a.no_rfo, "do not charge read-for-ownership on stores");
  balance->add_option("--streams", a.streams, "explicit memory stream count (overrides --kernel)");
  balance->add_option("--rfo-streams", a.rfo_streams, "RFO streams added to --streams");
  balance->add_option("--flops", a.flops, "flops per iteration for --streams");

  CLI::App* layer = app.add_subcommand("layer-condition", "stencil stream-regime analysis and prediction");
  layer->add_option("--machine", a.machine)->required();
  layer->add_option("--stencil", a.stencil, "stencil name (jacobi3d) or JSON file")->required();
  layer->add_option("--n", a.n, "grid points per dimension")->required();
  layer->add_option("--peak-gflops", a.peak_gflops, "peak for the stencil's instruction mix");
  layer->add_option("--traffic", a.traffic, "per-crossing cachelines: preset name or comma list");
  layer->add_option("--cache-fraction", a.cache_fraction, "usable fraction of the outer cache");
  layer->add_flag("--paper-check", a.paper_check, "also print the reference comparison");

  CLI::App* simulate = app.add_subcommand("simulate", "count cacheline transfers with the cache simulator");
  simulate->add_option("--machine", a.machine)->required();
  simulate->add_option("--kernel", a.kernel, "kernel name or JSON file");
  simulate->add_option("--level", a.level, "working-set level for the kernel replay");
  simulate->add_option("--stencil", a.stencil, "simulate a stencil sweep instead");
  simulate->add_option("--n", a.n, "grid points per dimension (stencil)");
  simulate->add_option("--passes", a.passes, "streaming passes (first is warm-up)");
  simulate->add_option("--sweeps", a.sweeps, "stencil sweeps (last is measured)");
  simulate->add_option("--max-ws-mb", a.max_ws_mb, "working-set cap for the memory regime");
  simulate->add_option("--format", a.format)->check(CLI::IsMember({"text", "csv"}));

  CLI::App* cmp = app.add_subcommand("compare", "measured cycles vs predictions with derived bandwidths");
  cmp->add_option("--machine", a.machine)->required();
  cmp->add_option("--measurements", a.measurements, "CSV file (default: bundled dataset)");
  cmp->add_option("--kernels", a.kernels, "kernel registry / display order");
  cmp->add_option("--format", a.format)->check(CLI::IsMember({"text", "csv"}));

  CLI::App* check = app.add_subcommand("paper-check", "validate the model against the published reference figures");
  (void)check;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help();
    return 2;
  }

  try {
    if (predict->parsed()) return run_predict(a);
    if (balance->parsed()) return run_balance(a);
    if (layer->parsed()) return run_layer_condition(a);
    if (simulate->parsed()) return run_simulate(a);
    if (cmp->parsed()) return run_compare(a);
    if (check->parsed()) return run_paper_check();
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
