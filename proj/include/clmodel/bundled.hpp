#pragma once

#include <string>
#include <vector>

#include "clmodel/kernel.hpp"
#include "clmodel/layer_condition.hpp"
#include "clmodel/machine.hpp"
#include "clmodel/measurements.hpp"

namespace clmodel::bundled {

// Example machine documents for two Intel processors (a Core 2 Q9550 and a
// Core i7 920), plus the 3D Jacobi stencil and the matching measured-cycles
// dataset. These back `paper-check` and serve as ready-to-use inputs. The
// same documents are shipped under data/ for direct CLI use.
std::string core2_json();
std::string nehalem_json();
std::string jacobi3d_json();
std::string measured_cycles_csv();

MachineDescription core2();
MachineDescription nehalem();
StencilSpec jacobi3d();
std::vector<MeasurementRecord> measurements();

std::vector<std::string> machine_names();

// Resolves a --machine argument: a bundled name ("core2"), a file under the
// data dir override, or a path. `data_dir` may be empty.
MachineDescription resolve_machine(const std::string& name_or_path, const std::string& data_dir);
StencilSpec resolve_stencil(const std::string& name_or_path, const std::string& data_dir);

}  // namespace clmodel::bundled
