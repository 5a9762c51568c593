#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clmodel/machine.hpp"
#include "clmodel/rational.hpp"

namespace clmodel {

// A streaming loop kernel reduced to what the model needs: how many distinct
// data streams it reads and writes per iteration, its flop mix, and the
// element size.
struct KernelDescription {
  std::string name;
  int load_streams = 0;
  int store_streams = 0;
  int adds_per_iteration = 0;
  int mults_per_iteration = 0;
  int element_bytes = 8;
  // Explicit L1 cycles per cacheline-per-stream update for kernels whose
  // instruction cost is known from external analysis instead of the port
  // formula (e.g. compact stencil bodies).
  std::optional<Rat> l1_cycles_override;

  int flops_per_iteration() const { return adds_per_iteration + mults_per_iteration; }

  friend bool operator==(const KernelDescription&, const KernelDescription&) = default;
};

namespace builtin {

// The four canonical streaming kernels.
KernelDescription load_kernel();   // 1 load stream
KernelDescription store_kernel();  // 1 store stream
KernelDescription copy_kernel();   // 1 load + 1 store
KernelDescription triad_kernel();  // a = b + s*c: 2 loads + 1 store, 1 add + 1 mult

std::vector<KernelDescription> all();
// nullopt when the name is not a builtin.
std::optional<KernelDescription> by_name(const std::string& name);

}  // namespace builtin

void validate(const KernelDescription& kernel);

KernelDescription load_kernel(const std::string& json_text, const std::string& origin = "kernel document");
KernelDescription load_kernel_file(const std::string& path);

// Loop iterations covered by one cacheline: cacheline_bytes / element_bytes.
int iterations_per_cacheline(const KernelDescription& kernel, const MachineDescription& machine);

// Cycles to execute one cacheline per stream with all operands resident in
// L1, limited by the L1 load/store ports. Loads and stores retire in the same
// cycle when the machine allows it; all non-memory instructions are assumed
// to overlap.
Rat l1_cycles_per_cl(const KernelDescription& kernel, const MachineDescription& machine);

}  // namespace clmodel
