#include "clmodel/render.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace clmodel {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Shortest decimal that round-trips the exact double.
std::string full(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}
std::string full(const Rat& r) { return full(r.to_double()); }
std::string one_dec(double v) { return fmt("%.1f", v); }

std::string csv_crossing(const std::string& crossing) {
  std::string out;
  for (std::size_t i = 0; i < crossing.size(); ++i) {
    if (crossing[i] == '-' && i + 1 < crossing.size() && crossing[i + 1] == '>') {
      out += "_to_";
      ++i;
    } else {
      out += crossing[i];
    }
  }
  return out;
}

// Right-aligns cells under left-aligned first column.
std::string layout_grid(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        os << row[c] << std::string(width[c] - row[c].size(), ' ');
      } else {
        os << "  " << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_prediction_table(const PredictionTable& table, const MachineDescription& machine,
                                    OutputFormat format) {
  if (format == OutputFormat::text) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"kernel"};
    for (Level lvl : table.levels) head.push_back(lvl.display_name());
    cells.push_back(std::move(head));
    for (const auto& row : table.rows) {
      std::vector<std::string> r{row.kernel.name};
      for (const auto& cell : row.cells) r.push_back(std::to_string(cell.total_cycles_rounded));
      cells.push_back(std::move(r));
    }
    std::ostringstream os;
    os << "machine: " << table.machine_name << "  (cycles per cacheline-per-stream update)\n\n"
       << layout_grid(cells);
    return os.str();
  }

  // CSV: full precision, one row per (kernel, level). Transfer columns follow
  // the outermost level's crossing list; inner levels leave unused ones empty.
  std::ostringstream os;
  const auto& crossings = table.rows.empty() ? std::vector<TransferContribution>{}
                                             : table.rows.front().cells.back().transfers;
  os << "kernel,level,l1_cycles";
  for (const auto& t : crossings) os << ",transfer_" << csv_crossing(t.crossing);
  os << ",total,total_rounded,real_gbs,eff_gbs\n";
  for (const auto& row : table.rows) {
    for (const auto& cell : row.cells) {
      os << row.kernel.name << "," << cell.level.name() << "," << full(cell.l1_execution_cycles);
      for (std::size_t c = 0; c < crossings.size(); ++c) {
        os << ",";
        if (c < cell.transfers.size()) os << full(cell.transfers[c].cycles);
      }
      os << "," << full(cell.total_cycles) << "," << cell.total_cycles_rounded;
      auto [real, eff] = cycles_to_bandwidths(cell.total_cycles, cell.real_traffic_cachelines,
                                              cell.effective_traffic_cachelines, machine);
      os << "," << full(real) << "," << full(eff) << "\n";
    }
  }
  return os.str();
}

std::string render_prediction_detail(const KernelDescription& kernel,
                                     const MachineDescription& machine,
                                     const LevelPrediction& prediction) {
  std::ostringstream os;
  os << kernel.name << " @ " << prediction.level.display_name() << " on " << machine.name << "\n";
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"  L1 execution", full(prediction.l1_execution_cycles) + " cy", ""});
  for (const auto& t : prediction.transfers) {
    cells.push_back({"  " + t.crossing, full(t.cycles) + " cy",
                     std::to_string(t.cachelines) + (t.cachelines == 1 ? " CL" : " CLs")});
  }
  cells.push_back({"  total", full(prediction.total_cycles) + " cy",
                   "rounds to " + std::to_string(prediction.total_cycles_rounded)});
  os << layout_grid(cells);
  auto [real, eff] = cycles_to_bandwidths(prediction.total_cycles, prediction.real_traffic_cachelines,
                                          prediction.effective_traffic_cachelines, machine);
  os << "  predicted bandwidth: " << one_dec(real) << " GB/s real";
  if (prediction.effective_traffic_cachelines != prediction.real_traffic_cachelines) {
    os << ", " << one_dec(eff) << " GB/s effective";
  }
  os << "\n";
  return os.str();
}

std::string render_comparison(const std::vector<ComparisonRow>& rows,
                              const MachineDescription& machine,
                              const std::vector<std::string>& kernel_order,
                              OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::ostringstream os;
    os << "machine,kernel,level,measured_cycles,predicted_cycles,predicted_rounded,ratio_percent,"
          "real_gbs,eff_gbs\n";
    for (const ComparisonRow& r : rows) {
      os << r.measurement.machine << "," << r.measurement.kernel << "," << r.measurement.level.name() << ","
         << full(r.measurement.measured_cycles_per_cl) << "," << full(r.prediction.total_cycles) << ","
         << r.prediction.total_cycles_rounded << "," << full(r.ratio_percent) << "," << full(r.real_gbs)
         << ",";
      if (r.effective_distinct) os << full(r.effective_gbs);
      os << "\n";
    }
    return os.str();
  }

  // Text: fixed Table-style shape with L1/L2/L3/MEM columns; levels the
  // machine lacks (and cells without measurements) read n/a.
  std::vector<Level> shown{Level::cache(1), Level::cache(2), Level::cache(3), Level::memory()};
  for (int extra = 4; extra <= machine.outermost_cache_level(); ++extra) {
    shown.insert(shown.end() - 1, Level::cache(extra));
  }
  auto find_row = [&](const std::string& kernel, Level lvl) -> const ComparisonRow* {
    for (const ComparisonRow& r : rows) {
      if (r.measurement.kernel == kernel && r.measurement.level == lvl) return &r;
    }
    return nullptr;
  };

  std::vector<std::vector<std::string>> cells;
  cells.push_back({"level", "kernel", "measured", "predicted", "ratio%", "GB/s", "eff GB/s"});
  for (Level lvl : shown) {
    bool have_level = lvl.is_memory() || machine.has_cache_level(lvl.cache_index);
    for (const std::string& kname : kernel_order) {
      const ComparisonRow* r = have_level ? find_row(kname, lvl) : nullptr;
      if (!r) {
        cells.push_back({lvl.name(), kname, "n/a", "n/a", "n/a", "n/a", "n/a"});
        continue;
      }
      cells.push_back({lvl.name(), kname, fmt("%.2f", r->measurement.measured_cycles_per_cl.to_double()),
                       std::to_string(r->prediction.total_cycles_rounded),
                       one_dec(r->ratio_percent.to_double()), one_dec(r->real_gbs),
                       r->effective_distinct ? one_dec(r->effective_gbs) : "-"});
    }
  }
  std::ostringstream os;
  os << "machine: " << machine.name << "  (measured vs predicted cycles per CL update)\n\n"
     << layout_grid(cells);
  return os.str();
}

std::string render_sim_report(const SimReport& report, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::ostringstream os;
    os << "crossing,inward_cls_per_update,outward_cls_per_update\n";
    for (const CrossingTraffic& t : report.crossings) {
      os << csv_crossing(t.crossing) << "," << full(t.inward_per_update) << ","
         << full(t.outward_per_update) << "\n";
    }
    return os.str();
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"crossing", "inward/update", "outward/update", "total"});
  for (const CrossingTraffic& t : report.crossings) {
    cells.push_back({t.crossing, fmt("%.4g", t.inward_per_update.to_double()),
                     fmt("%.4g", t.outward_per_update.to_double()),
                     fmt("%.4g", t.total_per_update.to_double())});
  }
  std::ostringstream os;
  os << layout_grid(cells) << "\nwindow: " << report.window_updates << " updates (" << report.window_note
     << "), " << report.total_accesses << " accesses total\n";
  return os.str();
}

std::string render_balance_report(const BalanceReport& r) {
  std::ostringstream os;
  os << "machine balance    B_M = " << fmt("%.4g", r.machine_balance_wf) << " W/F\n"
     << "algorithmic balance B_A = " << fmt("%.4g", r.algorithmic_balance_wf) << " W/F\n"
     << "lightspeed          l  = " << fmt("%.4g", r.lightspeed) << "\n"
     << "applicable peak        = " << fmt("%.4g", r.applicable_peak_gflops) << " GFlops/s\n"
     << "predicted              = " << fmt("%.4g", r.predicted_gflops) << " GFlops/s ("
     << fmt("%.0f", r.predicted_gflops * 1000.0) << " MFlops/s)\n";
  return os.str();
}

std::string render_stencil_prediction(const StencilPrediction& p) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"  L1 execution", full(p.l1_cycles) + " cy", ""});
  for (const auto& t : p.transfers) {
    cells.push_back({"  " + t.crossing, fmt("%.4g", t.cycles.to_double()) + " cy",
                     std::to_string(t.cachelines) + (t.cachelines == 1 ? " CL" : " CLs")});
  }
  cells.push_back({"  total", fmt("%.4g", p.total_cycles.to_double()) + " cy",
                   "rounds to " + std::to_string(p.total_cycles_rounded)});
  std::ostringstream os;
  os << layout_grid(cells);
  os << "  predicted performance: " << fmt("%.0f", p.mflops) << " MFlops/s\n";
  return os.str();
}

}  // namespace clmodel
