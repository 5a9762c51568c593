#include "clmodel/measurements.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "clmodel/errors.hpp"

namespace clmodel {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
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
  for (std::string& f : fields) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.pop_back();
  }
  return fields;
}

bool known(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

Level parse_measurement_level(const std::string& token, const std::string& where) {
  std::string u = token;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "L1") return Level::cache(1);
  if (u == "L2") return Level::cache(2);
  if (u == "L3") return Level::cache(3);
  if (u == "MEM") return Level::memory();
  throw ParseError(where + ": level must be one of L1/L2/L3/MEM, got \"" + token + "\"");
}

}  // namespace

std::vector<MeasurementRecord> load_measurements(const std::string& csv_text,
                                                 const std::vector<std::string>& known_machines,
                                                 const std::vector<std::string>& known_kernels,
                                                 const std::string& origin) {
  std::vector<MeasurementRecord> records;
  std::istringstream in(csv_text);
  std::string line;
  int row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    const std::string where = origin + ": row " + std::to_string(row);
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) trimmed.pop_back();
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields = split_csv_row(trimmed);
    if (!header_seen) {
      if (fields.size() < 4 || fields[0] != "machine" || fields[1] != "kernel" || fields[2] != "level" ||
          fields[3] != "cycles_per_cl" || (fields.size() == 5 && fields[4] != "notes") || fields.size() > 5) {
        throw ParseError(where + ": expected header \"machine,kernel,level,cycles_per_cl[,notes]\"");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 4 || fields.size() > 5) {
      throw ParseError(where + ": expected 4 or 5 fields, got " + std::to_string(fields.size()));
    }
    MeasurementRecord rec;
    rec.machine = fields[0];
    rec.kernel = fields[1];
    if (!known(known_machines, rec.machine)) throw ParseError(where + ": unknown machine \"" + rec.machine + "\"");
    if (!known(known_kernels, rec.kernel)) throw ParseError(where + ": unknown kernel \"" + rec.kernel + "\"");
    rec.level = parse_measurement_level(fields[2], where);
    try {
      rec.measured_cycles_per_cl = Rat::from_decimal(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(where + ": cycles_per_cl is not a number: \"" + fields[3] + "\"");
    }
    if (!(rec.measured_cycles_per_cl > Rat(0))) {
      throw ValidationError(where + ": measured cycles per cacheline must be > 0");
    }
    if (fields.size() == 5) rec.notes = fields[4];
    records.push_back(std::move(rec));
  }
  if (!header_seen) throw ParseError(origin + ": no header row found");
  return records;
}

std::vector<MeasurementRecord> load_measurements_file(const std::string& path,
                                                      const std::vector<std::string>& known_machines,
                                                      const std::vector<std::string>& known_kernels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_measurements(ss.str(), known_machines, known_kernels, path);
}

std::vector<ComparisonRow> compare(const std::vector<MeasurementRecord>& records,
                                   const MachineDescription& machine,
                                   const std::vector<KernelDescription>& kernels) {
  std::vector<ComparisonRow> rows;
  for (const MeasurementRecord& rec : records) {
    if (rec.machine != machine.name) continue;
    auto it = std::find_if(kernels.begin(), kernels.end(),
                           [&](const KernelDescription& k) { return k.name == rec.kernel; });
    if (it == kernels.end()) {
      throw ValidationError("no kernel definition for measurement \"" + rec.kernel + "\"");
    }
    ComparisonRow row;
    row.measurement = rec;
    row.prediction = predict_level(*it, machine, rec.level);
    row.ratio_percent = Rat(row.prediction.total_cycles_rounded) * Rat(100) / rec.measured_cycles_per_cl;
    auto [real, eff] = cycles_to_bandwidths(rec.measured_cycles_per_cl, row.prediction.real_traffic_cachelines,
                                            row.prediction.effective_traffic_cachelines, machine);
    row.real_gbs = real;
    row.effective_gbs = eff;
    row.effective_distinct =
        row.prediction.effective_traffic_cachelines != row.prediction.real_traffic_cachelines;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace clmodel
