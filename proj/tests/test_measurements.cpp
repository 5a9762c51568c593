#include <doctest.h>

#include "clmodel/bundled.hpp"
#include "clmodel/errors.hpp"
#include "clmodel/measurements.hpp"

using namespace clmodel;

namespace {

const std::vector<std::string> kMachines = {"core2", "nehalem"};
const std::vector<std::string> kKernels = {"load", "store", "copy", "triad"};

std::string with_header(const std::string& rows) {
  return "machine,kernel,level,cycles_per_cl,notes\n" + rows;
}

}  // namespace

TEST_SUITE("measurements") {

TEST_CASE("the bundled dataset loads completely") {
  std::vector<MeasurementRecord> records = bundled::measurements();
  CHECK(records.size() == 28);  // 12 core2 + 16 nehalem
  bool found = false;
  for (const MeasurementRecord& r : records) {
    if (r.machine == "core2" && r.kernel == "triad" && r.level == Level::cache(2)) {
      found = true;
      CHECK(r.measured_cycles_per_cl == Rat(2272, 100));
    }
    if (r.machine == "nehalem" && r.kernel == "store" && r.level == Level::cache(2)) {
      CHECK(r.measured_cycles_per_cl == Rat(661, 100));
      CHECK(!r.notes.empty());
    }
  }
  CHECK(found);
}

TEST_CASE("schema violations carry the row number") {
  CHECK_THROWS_WITH_AS(load_measurements(with_header("vax,load,L1,4.0\n"), kMachines, kKernels),
                       doctest::Contains("row 2"), ParseError);
  CHECK_THROWS_WITH_AS(load_measurements(with_header("core2,dgemm,L1,4.0\n"), kMachines, kKernels),
                       doctest::Contains("unknown kernel"), ParseError);
  CHECK_THROWS_AS(load_measurements(with_header("core2,load,L4,4.0\n"), kMachines, kKernels), ParseError);
  CHECK_THROWS_AS(load_measurements(with_header("core2,load,L1,-4.0\n"), kMachines, kKernels),
                  ValidationError);
  CHECK_THROWS_AS(load_measurements(with_header("core2,load,L1,fast\n"), kMachines, kKernels), ParseError);
  CHECK_THROWS_AS(load_measurements(with_header("core2,load,L1\n"), kMachines, kKernels), ParseError);
  CHECK_THROWS_AS(load_measurements("kernel,level\n", kMachines, kKernels), ParseError);
  CHECK_THROWS_AS(load_measurements("# only comments\n", kMachines, kKernels), ParseError);
}

TEST_CASE("comments and notes are handled") {
  auto records = load_measurements("# c\nmachine,kernel,level,cycles_per_cl\n# mid\ncore2,load,MEM,29.60\n",
                                   kMachines, kKernels);
  REQUIRE(records.size() == 1);
  CHECK(records[0].level == Level::memory());
  CHECK(records[0].notes.empty());
}

TEST_CASE("comparison rows reproduce the reference ratios") {
  std::vector<MeasurementRecord> records = bundled::measurements();
  std::vector<ComparisonRow> rows = compare(records, bundled::core2(), builtin::all());
  CHECK(rows.size() == 12);
  for (const ComparisonRow& r : rows) {
    if (r.measurement.kernel == "load" && r.measurement.level == Level::cache(1)) {
      CHECK(r.prediction.total_cycles_rounded == 4);
      CHECK(r.ratio_percent.to_double() == doctest::Approx(96.0).epsilon(0.003));
      CHECK(r.real_gbs == doctest::Approx(43.5).epsilon(0.005));
      CHECK(!r.effective_distinct);
    }
  }
  std::vector<ComparisonRow> nrows = compare(records, bundled::nehalem(), builtin::all());
  CHECK(nrows.size() == 16);
  for (const ComparisonRow& r : nrows) {
    if (r.measurement.kernel == "store" && r.measurement.level == Level::cache(2)) {
      // Measured beats the prediction here; the ratio goes past 100 %.
      CHECK(r.ratio_percent.to_double() == doctest::Approx(120.9).epsilon(0.002));
      CHECK(r.ratio_percent > Rat(100));
    }
  }
}

TEST_CASE("a measurement equal to the prediction is exactly 100 %") {
  auto records = load_measurements(with_header("core2,triad,L2,16\n"), kMachines, kKernels);
  auto rows = compare(records, bundled::core2(), builtin::all());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ratio_percent == Rat(100));
}

TEST_CASE("ratio times measurement equals prediction, exactly in rationals") {
  std::vector<MeasurementRecord> records = bundled::measurements();
  for (const MachineDescription& m : {bundled::core2(), bundled::nehalem()}) {
    for (const ComparisonRow& r : compare(records, m, builtin::all())) {
      CHECK(r.ratio_percent * r.measurement.measured_cycles_per_cl ==
            Rat(r.prediction.total_cycles_rounded) * Rat(100));
      // Stores move more real than effective bandwidth; pure loads match.
      if (r.measurement.kernel == "load" || r.measurement.level == Level::cache(1)) {
        CHECK(r.real_gbs == doctest::Approx(r.effective_gbs));
      } else {
        CHECK(r.real_gbs > r.effective_gbs);
        CHECK(r.effective_distinct);
      }
    }
  }
}

TEST_CASE("a measurement at a level the machine lacks propagates the topology error") {
  auto records = load_measurements(with_header("core2,load,L3,9.0\n"), kMachines, kKernels);
  CHECK_THROWS_AS(compare(records, bundled::core2(), builtin::all()), TopologyError);
}

}  // TEST_SUITE
