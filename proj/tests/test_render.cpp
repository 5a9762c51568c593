#include <doctest.h>

#include <cmath>
#include <sstream>

#include "clmodel/bundled.hpp"
#include "clmodel/render.hpp"

using namespace clmodel;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("prediction CSV parses back to the exact pre-rounding values") {
  MachineDescription m = bundled::nehalem();
  PredictionTable table = prediction_table(m, builtin::all());
  auto rows = parse_csv(render_prediction_table(table, m, OutputFormat::csv));
  REQUIRE(rows.size() == 1 + 4 * 4);  // header + kernels x levels
  CHECK(rows[0][0] == "kernel");
  CHECK(rows[0][3] == "transfer_L2_to_L1");

  int checked = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    for (const auto& row : table.rows) {
      for (const auto& cell : row.cells) {
        if (row.kernel.name == r[0] && cell.level.name() == r[1]) {
          ++checked;
          // Full-precision CSV total equals the rational total bit-for-bit,
          // and rounding it recovers the text-grid value.
          CHECK(std::stod(r[6]) == cell.total_cycles.to_double());
          CHECK(std::stoll(r[7]) == cell.total_cycles_rounded);
          CHECK(std::llround(std::stod(r[6])) == cell.total_cycles_rounded);
        }
      }
    }
  }
  CHECK(checked == 16);
}

TEST_CASE("text grid carries the rounded cycles") {
  MachineDescription m = bundled::core2();
  std::string text = render_prediction_table(prediction_table(m, builtin::all()), m, OutputFormat::text);
  CHECK(text.find("machine: core2") != std::string::npos);
  CHECK(text.find("Memory") != std::string::npos);
  CHECK(text.find("triad") != std::string::npos);
}

TEST_CASE("comparison table marks missing levels as n/a") {
  MachineDescription core2 = bundled::core2();
  auto rows = compare(bundled::measurements(), core2, builtin::all());
  std::string text = render_comparison(rows, core2, {"load", "store", "copy", "triad"}, OutputFormat::text);
  CHECK(text.find("n/a") != std::string::npos);  // core2 has no L3
  CHECK(text.find("L3") != std::string::npos);

  std::string csv = render_comparison(rows, core2, {"load", "store", "copy", "triad"}, OutputFormat::csv);
  auto parsed = parse_csv(csv);
  CHECK(parsed.size() == 1 + rows.size());
  // Effective bandwidth column is empty for pure loads.
  for (std::size_t i = 1; i < parsed.size(); ++i) {
    if (parsed[i][1] == "load") CHECK(parsed[i][8].empty());
  }
}

TEST_CASE("sim report and balance report render") {
  SimReport rep = simulate_kernel(builtin::copy_kernel(), bundled::core2(), Level::cache(2));
  std::string text = render_sim_report(rep, OutputFormat::text);
  CHECK(text.find("L2->L1") != std::string::npos);
  std::string csv = render_sim_report(rep, OutputFormat::csv);
  CHECK(csv.find("crossing,inward_cls_per_update,outward_cls_per_update") == 0);

  BalanceReport br = balance_prediction(1.0, 2.0, 11.32);
  CHECK(render_balance_report(br).find("5.66") != std::string::npos);
}

}  // TEST_SUITE
