#include "clmodel/refcheck.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "clmodel/balance.hpp"
#include "clmodel/bundled.hpp"
#include "clmodel/hierarchy.hpp"
#include "clmodel/layer_condition.hpp"
#include "clmodel/measurements.hpp"

namespace clmodel {

namespace {

const char* const kKernelOrder[4] = {"load", "store", "copy", "triad"};

// Published prediction grid for the bundled machines, cycles per
// cacheline-per-stream update, rounded to whole cycles. The two *-marked
// memory cells were rounded inconsistently in the source (72 printed for a
// fractional 72.6, 26 for 25.35); grid cells are checked exactly except the
// memory column, which gets +-1.
struct GridRef {
  const char* machine;
  const char* level;
  int cycles[4];  // load, store, copy, triad
};
const GridRef kGridRef[] = {
    {"core2", "L1", {4, 4, 4, 8}},    {"core2", "L2", {6, 8, 10, 16}},
    {"core2", "MEM", {20, 36, 52, 72}},
    {"nehalem", "L1", {4, 4, 4, 8}},  {"nehalem", "L2", {6, 8, 10, 16}},
    {"nehalem", "L3", {8, 12, 16, 24}}, {"nehalem", "MEM", {15, 26, 36, 51}},
};

// Published derived metrics for the bundled measured cycles: prediction/
// measurement ratio in percent, real bandwidth, effective bandwidth
// (negative = not printed; effective equals real there). `slip` documents
// cells whose printed value is inconsistent with the table's own data, so a
// correct recomputation cannot land within the 0.3 tolerance.
struct DerivedRef {
  const char* machine;
  const char* kernel;
  const char* level;
  double ratio;
  double gbs;
  double eff;
  const char* slip = nullptr;
};
const DerivedRef kDerivedRef[] = {
    {"core2", "load", "L1", 96.0, 43.5, -1},
    {"core2", "store", "L1", 93.8, 42.5, -1},
    {"core2", "copy", "L1", 92.7, 84.1, -1},
    {"core2", "triad", "L1", 99.5, 67.7, -1},
    {"core2", "load", "L2", 83.1, 25.1, -1},
    {"core2", "store", "L2", 94.1, 42.7, 21.3},
    {"core2", "copy", "L2", 74.9, 40.7, 27.2},
    {"core2", "triad", "L2", 70.4, 31.9, 23.9},
    {"core2", "load", "MEM", 67.6, 6.1, -1},
    // 49.9 is printed with a decimal-comma typo ("49,9") in the source.
    {"core2", "store", "MEM", 49.9, 5.0, 2.5},
    {"core2", "copy", "MEM", 58.7, 6.1, 4.1},
    {"core2", "triad", "MEM", 66.6, 6.7, 5.0,
     "printed ratio uses the table's rounded-down 72-cycle prediction; the exact 72.6 rounds to 73"},
    {"nehalem", "load", "L1", 97.1, 41.3, -1},
    {"nehalem", "store", "L1", 95.3, 40.5, -1},
    {"nehalem", "copy", "L1", 94.1, 79.8, -1,
     "printed 79.8 GB/s is inconsistent with the printed 4.26 cycles: 128 B / 4.26 cy * 2.67 GHz = 80.2"},
    {"nehalem", "triad", "L1", 96.0, 61.2, -1},
    {"nehalem", "load", "L2", 83.5, 23.7, -1},
    {"nehalem", "store", "L2", 120.9, 51.5, 25.7},
    {"nehalem", "copy", "L2", 91.4, 46.7, 31.1},
    {"nehalem", "triad", "L2", 91.7, 39.0, 29.3},
    {"nehalem", "load", "L3", 95.3, 20.3, -1},
    {"nehalem", "store", "L3", 121.4, 34.4, 17.2},
    {"nehalem", "copy", "L3", 103.9, 33.2, 22.1},
    {"nehalem", "triad", "L3", 96.3, 27.3, 20.5},
    {"nehalem", "load", "MEM", 106.8, 12.1, -1},
    {"nehalem", "store", "MEM", 142.2, 18.6, 9.3,
     "printed ratio implies a 26-cycle prediction; the exact 25.35 rounds to 25"},
    {"nehalem", "copy", "MEM", 123.0, 17.4, 11.6},
    {"nehalem", "triad", "MEM", 119.4, 15.9, 11.9},
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

MachineDescription machine_by_name(const std::string& name) {
  return name == "core2" ? bundled::core2() : bundled::nehalem();
}

CheckResult check_prediction_grid() {
  CheckResult res{"prediction-grid", true, {}};
  for (const char* mname : {"core2", "nehalem"}) {
    MachineDescription m = machine_by_name(mname);
    PredictionTable table = prediction_table(m, builtin::all());
    for (const GridRef& ref : kGridRef) {
      if (std::string(ref.machine) != mname) continue;
      Level lvl = parse_level(ref.level);
      std::size_t col = 0;
      for (; col < table.levels.size(); ++col) {
        if (table.levels[col] == lvl) break;
      }
      for (int k = 0; k < 4; ++k) {
        long long got = table.rows[k].cells[col].total_cycles_rounded;
        long long want = ref.cycles[k];
        long long slack = lvl.is_memory() ? 1 : 0;
        if (std::llabs(got - want) > slack) {
          res.pass = false;
          res.notes.push_back(std::string(mname) + " " + kKernelOrder[k] + " @" + ref.level + ": got " +
                              std::to_string(got) + ", reference " + std::to_string(want));
        }
      }
    }
  }
  if (res.pass) res.notes.push_back("28/28 cells within tolerance (exact off-memory, +-1 cycle at MEM)");
  return res;
}

CheckResult check_balance_example() {
  CheckResult res{"in-cache-balance-example", true, {}};
  MachineDescription m = bundled::core2();
  // L2 bus rate at core clock, in GWords/s (8-byte words).
  double bw_gbs = (m.cache_level(2).bus_bytes_per_cycle_to_inner * m.clock_ghz).to_double();
  double bw_gws = bw_gbs / 8.0;
  double peak = m.peak_gflops();
  double bm = machine_balance(bw_gws, peak);
  KernelDescription triad = builtin::triad_kernel();
  double ba_plain = algorithmic_balance(triad, false);
  double ba_rfo = algorithmic_balance(triad, true);

  auto expect = [&](const char* what, double got, double want, double tol) {
    if (std::fabs(got - want) > tol) {
      res.pass = false;
      res.notes.push_back(std::string(what) + ": got " + num(got) + ", reference " + num(want));
    }
  };
  expect("B_M", bm, 1.0, 1e-9);
  expect("B_A", ba_plain, 1.5, 1e-9);
  expect("B_A with RFO", ba_rfo, 2.0, 1e-9);
  // The reference quotes the no-RFO efficiency truncated to two decimals
  // (2/3 -> 0.66); its 7.47 GFlops/s follows from the quoted value.
  double quoted_eff = std::floor(bm / ba_plain * 100.0) / 100.0;
  expect("prediction (no RFO)", quoted_eff * peak, 7.47, 0.01);
  expect("prediction (with RFO)", balance_prediction(bm, ba_rfo, peak).predicted_gflops, 5.66, 0.01);
  if (res.pass) {
    res.notes.push_back("B_M 1.0, B_A 1.5/2.0, predictions " + num(quoted_eff * peak) + " / " +
                        num(balance_prediction(bm, ba_rfo, peak).predicted_gflops) + " GFlops/s");
  }
  return res;
}

CheckResult check_regime_table() {
  CheckResult res{"stencil-regime-balance", true, {}};
  MachineDescription m = bundled::nehalem();
  StencilSpec jacobi = bundled::jacobi3d();
  std::uint64_t l3 = m.cache_levels.back().size_bytes;
  const double peak = 6.65;  // peak for the stencil's add/mult mix

  struct Row {
    long long n;
    StreamRegime::Kind kind;
    double ba, lightspeed, predicted_mfs;
  };
  const Row rows[] = {
      {200000, StreamRegime::Kind::worst, 0.875, 0.299, 1988.0},
      {1000, StreamRegime::Kind::middle, 0.625, 0.419, 2786.0},
      {100, StreamRegime::Kind::best, 0.375, 0.699, 4648.0},
  };
  for (const Row& row : rows) {
    jacobi.grid_points_per_dim = row.n;
    StreamRegime regime = classify_regime(jacobi, l3);
    if (regime.kind != row.kind) {
      res.pass = false;
      res.notes.push_back("n=" + std::to_string(row.n) + ": classified " + regime.label());
      continue;
    }
    BalanceReport rep = regime_balance_prediction(jacobi, m, regime, peak);
    auto r3 = [](double v) { return std::round(v * 1000.0) / 1000.0; };
    if (r3(rep.algorithmic_balance_wf) != row.ba || r3(rep.lightspeed) != row.lightspeed) {
      res.pass = false;
      res.notes.push_back(regime.label() + ": B_A " + num(rep.algorithmic_balance_wf) + " l " +
                          num(rep.lightspeed) + ", reference " + num(row.ba) + " / " + num(row.lightspeed));
    }
    if (std::fabs(rep.predicted_gflops * 1000.0 - row.predicted_mfs) > 2.0) {
      res.pass = false;
      res.notes.push_back(regime.label() + ": predicted " + num(rep.predicted_gflops * 1000.0) +
                          " MFlops/s, reference " + num(row.predicted_mfs));
    }
  }
  if (res.pass) res.notes.push_back("B_A/lightspeed exact to 3 decimals, predictions within 2 MFlops/s");
  return res;
}

CheckResult check_triad_l2_decomposition() {
  CheckResult res{"triad-l2-decomposition", true, {}};
  LevelPrediction p = predict_level(builtin::triad_kernel(), bundled::core2(), Level::cache(2));
  bool ok = p.l1_execution_cycles == Rat(8) && p.transfers.size() == 1 &&
            p.transfers[0].cachelines == 4 && p.transfers[0].cycles == Rat(8) && p.total_cycles == Rat(16);
  res.pass = ok;
  res.notes.push_back("triad @L2 on core2: " + p.l1_execution_cycles.str() + " + " +
                      (p.transfers.empty() ? std::string("?") : p.transfers[0].cycles.str()) + " = " +
                      p.total_cycles.str() + " cycles (want 8 + 8 = 16, exact)");
  return res;
}

CheckResult check_jacobi_hierarchy() {
  CheckResult res{"jacobi-hierarchy-prediction", true, {}};
  MachineDescription m = bundled::nehalem();
  StencilSpec jacobi = bundled::jacobi3d();
  jacobi.grid_points_per_dim = 1000;  // plane reuse at L3, matching the preset traffic
  StencilPrediction p = hierarchy_prediction(jacobi, m, traffic_preset("jacobi-nehalem"));

  const long long want_terms[3] = {8, 10, 20};
  bool ok = p.l1_cycles == Rat(24) && p.transfers.size() == 3;
  for (int i = 0; ok && i < 3; ++i) ok = p.transfers[i].cycles.round_nearest() == want_terms[i];
  ok = ok && p.total_cycles_rounded == 62;
  if (!ok) {
    res.pass = false;
    std::string got = p.l1_cycles.str();
    for (const auto& t : p.transfers) got += " + " + std::to_string(t.cycles.round_nearest());
    res.notes.push_back("decomposition " + got + " = " + std::to_string(p.total_cycles_rounded) +
                        ", want 24 + 8 + 10 + 20 = 62");
  }
  if (std::fabs(p.mflops - 2745.0) > 15.0) {
    res.pass = false;
    res.notes.push_back("performance " + num(p.mflops) + " MFlops/s, want 2745 +- 15");
  }
  if (res.pass) {
    res.notes.push_back("24 + 8 + 10 + 20 = 62 cycles, " + num(p.mflops) + " MFlops/s (reference 2745)");
  }
  return res;
}

CheckResult check_derived_metrics() {
  CheckResult res{"measured-dataset-derived-metrics", true, {}};
  std::vector<MeasurementRecord> records = bundled::measurements();
  int cells = 0, good = 0;
  for (const char* mname : {"core2", "nehalem"}) {
    MachineDescription m = machine_by_name(mname);
    std::vector<ComparisonRow> rows = compare(records, m, builtin::all());
    for (const DerivedRef& ref : kDerivedRef) {
      if (std::string(ref.machine) != mname) continue;
      Level lvl = parse_level(ref.level);
      const ComparisonRow* row = nullptr;
      for (const ComparisonRow& r : rows) {
        if (r.measurement.kernel == ref.kernel && r.measurement.level == lvl) row = &r;
      }
      if (!row) {
        res.pass = false;
        res.notes.push_back(std::string(mname) + " " + ref.kernel + " @" + ref.level + ": no comparison row");
        continue;
      }
      auto cell = [&](const char* what, double got, double want) {
        ++cells;
        if (std::fabs(got - want) <= 0.3) {
          ++good;
        } else {
          res.pass = false;
          std::string note = std::string(mname) + " " + ref.kernel + " @" + ref.level + " " + what +
                             ": got " + num(got) + ", printed " + num(want) + " (delta " +
                             num(got - want) + ")";
          if (ref.slip) note += "\n          " + std::string(ref.slip);
          res.notes.push_back(note);
        }
      };
      cell("ratio%", row->ratio_percent.to_double(), ref.ratio);
      cell("GB/s", row->real_gbs, ref.gbs);
      if (ref.eff >= 0.0) cell("eff GB/s", row->effective_gbs, ref.eff);
    }
  }
  res.notes.insert(res.notes.begin(),
                   std::to_string(good) + "/" + std::to_string(cells) + " cells within +-0.3 of the printed value");
  return res;
}

}  // namespace

std::vector<CheckResult> run_reference_checks() {
  return {
      check_prediction_grid(),     check_balance_example(), check_regime_table(),
      check_triad_l2_decomposition(), check_jacobi_hierarchy(), check_derived_metrics(),
  };
}

std::string format_check(const CheckResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "\n";
  for (const std::string& note : r.notes) os << "      " << note << "\n";
  return os.str();
}

}  // namespace clmodel
