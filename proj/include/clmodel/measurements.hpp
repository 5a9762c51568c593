#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clmodel/hierarchy.hpp"
#include "clmodel/kernel.hpp"
#include "clmodel/machine.hpp"

namespace clmodel {

// One measured data point: cycles per cacheline-per-stream update for a
// (machine, kernel, level) triple.
struct MeasurementRecord {
  std::string machine;
  std::string kernel;
  Level level;
  Rat measured_cycles_per_cl;
  std::string notes;
};

// CSV schema: header `machine,kernel,level,cycles_per_cl[,notes]`,
// `#` comment lines allowed. Machine and kernel names are validated against
// the given registries; level must be one of L1/L2/L3/MEM. Errors carry the
// row number.
std::vector<MeasurementRecord> load_measurements(const std::string& csv_text,
                                                 const std::vector<std::string>& known_machines,
                                                 const std::vector<std::string>& known_kernels,
                                                 const std::string& origin = "measurement document");
std::vector<MeasurementRecord> load_measurements_file(const std::string& path,
                                                      const std::vector<std::string>& known_machines,
                                                      const std::vector<std::string>& known_kernels);

// A measurement joined with its model prediction and the derived comparison
// metrics. The ratio uses the prediction rounded to whole cycles, matching
// how prediction tables are read; bandwidths use the measured cycles with the
// prediction's traffic counts.
struct ComparisonRow {
  MeasurementRecord measurement;
  LevelPrediction prediction;
  Rat ratio_percent;        // rounded predicted cycles / measured * 100
  double real_gbs = 0.0;
  double effective_gbs = 0.0;
  // Effective bandwidth is only reported when it differs from real
  // (i.e. the kernel stores and the level is past L1).
  bool effective_distinct = false;
};

// Rows for every record naming this machine, in input order. Records for
// other machines are ignored; a record whose level the machine lacks
// propagates the topology error.
std::vector<ComparisonRow> compare(const std::vector<MeasurementRecord>& records,
                                   const MachineDescription& machine,
                                   const std::vector<KernelDescription>& kernels);

}  // namespace clmodel
