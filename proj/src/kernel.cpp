#include "clmodel/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "clmodel/errors.hpp"
#include "json_util.hpp"

namespace clmodel {

using detail::json;

namespace builtin {

KernelDescription load_kernel() {
  KernelDescription k;
  k.name = "load";
  k.load_streams = 1;
  return k;
}

KernelDescription store_kernel() {
  KernelDescription k;
  k.name = "store";
  k.store_streams = 1;
  return k;
}

KernelDescription copy_kernel() {
  KernelDescription k;
  k.name = "copy";
  k.load_streams = 1;
  k.store_streams = 1;
  return k;
}

KernelDescription triad_kernel() {
  KernelDescription k;
  k.name = "triad";
  k.load_streams = 2;
  k.store_streams = 1;
  k.adds_per_iteration = 1;
  k.mults_per_iteration = 1;
  return k;
}

std::vector<KernelDescription> all() {
  return {load_kernel(), store_kernel(), copy_kernel(), triad_kernel()};
}

std::optional<KernelDescription> by_name(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "load") return load_kernel();
  if (lower == "store") return store_kernel();
  if (lower == "copy") return copy_kernel();
  if (lower == "triad") return triad_kernel();
  return std::nullopt;
}

}  // namespace builtin

void validate(const KernelDescription& k) {
  const std::string who = "kernel \"" + k.name + "\"";
  if (k.load_streams < 0 || k.store_streams < 0) throw ValidationError(who + ": stream counts must be >= 0");
  if (k.load_streams + k.store_streams < 1) {
    throw ValidationError(who + ": needs at least one load or store stream");
  }
  if (k.adds_per_iteration < 0 || k.mults_per_iteration < 0) {
    throw ValidationError(who + ": flop counts must be >= 0");
  }
  if (k.element_bytes <= 0) throw ValidationError(who + ": element_bytes must be > 0");
  if (k.l1_cycles_override && !(*k.l1_cycles_override > Rat(0))) {
    throw ValidationError(who + ": l1_cycles_override must be > 0");
  }
}

KernelDescription load_kernel(const std::string& json_text, const std::string& origin) {
  json doc = detail::parse_document(json_text, origin);
  if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
  detail::reject_unknown_keys(
      doc, {"name", "load_streams", "store_streams", "adds", "mults", "element_bytes", "l1_cycles_override"},
      origin, "top level");
  KernelDescription k;
  k.name = detail::to_string(detail::require_field(doc, "name", origin, "top level"), origin, "name");
  k.load_streams = static_cast<int>(
      detail::to_int(detail::require_field(doc, "load_streams", origin, "top level"), origin, "load_streams"));
  k.store_streams = static_cast<int>(
      detail::to_int(detail::require_field(doc, "store_streams", origin, "top level"), origin, "store_streams"));
  k.adds_per_iteration =
      static_cast<int>(detail::to_int(detail::require_field(doc, "adds", origin, "top level"), origin, "adds"));
  k.mults_per_iteration =
      static_cast<int>(detail::to_int(detail::require_field(doc, "mults", origin, "top level"), origin, "mults"));
  k.element_bytes = static_cast<int>(
      detail::to_int(detail::require_field(doc, "element_bytes", origin, "top level"), origin, "element_bytes"));
  if (doc.contains("l1_cycles_override")) {
    k.l1_cycles_override = detail::to_rat(doc.at("l1_cycles_override"), origin, "l1_cycles_override");
  }
  validate(k);
  return k;
}

KernelDescription load_kernel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_kernel(ss.str(), path);
}

int iterations_per_cacheline(const KernelDescription& kernel, const MachineDescription& machine) {
  if (machine.cacheline_bytes % kernel.element_bytes != 0) {
    throw ValidationError("kernel \"" + kernel.name + "\": element_bytes " +
                          std::to_string(kernel.element_bytes) + " does not divide cacheline size " +
                          std::to_string(machine.cacheline_bytes));
  }
  return machine.cacheline_bytes / kernel.element_bytes;
}

Rat l1_cycles_per_cl(const KernelDescription& kernel, const MachineDescription& machine) {
  if (kernel.l1_cycles_override) return *kernel.l1_cycles_override;
  Rat line(machine.cacheline_bytes);
  Rat load_cycles = Rat(kernel.load_streams) * line / machine.l1_load_bytes_per_cycle;
  Rat store_cycles = Rat(kernel.store_streams) * line / machine.l1_store_bytes_per_cycle;
  if (machine.l1_concurrent_load_store) {
    return std::max(load_cycles, store_cycles);
  }
  return load_cycles + store_cycles;
}

}  // namespace clmodel
