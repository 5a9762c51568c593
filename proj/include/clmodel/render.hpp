#pragma once

#include <string>
#include <vector>

#include "clmodel/cache_sim.hpp"
#include "clmodel/hierarchy.hpp"
#include "clmodel/layer_condition.hpp"
#include "clmodel/measurements.hpp"

namespace clmodel {

enum class OutputFormat { text, csv };

// Grid view: one row per kernel, one column per level, cycles rounded to
// whole numbers. CSV keeps full precision.
std::string render_prediction_table(const PredictionTable& table, const MachineDescription& machine,
                                    OutputFormat format);

// Single-level detail: per-crossing decomposition plus bandwidths.
std::string render_prediction_detail(const KernelDescription& kernel,
                                     const MachineDescription& machine,
                                     const LevelPrediction& prediction);

// Comparison view, one decimal; levels the machine lacks or cells without a
// measurement show "n/a".
std::string render_comparison(const std::vector<ComparisonRow>& rows,
                              const MachineDescription& machine,
                              const std::vector<std::string>& kernel_order,
                              OutputFormat format);

std::string render_sim_report(const SimReport& report, OutputFormat format);

std::string render_balance_report(const BalanceReport& report);

std::string render_stencil_prediction(const StencilPrediction& prediction);

}  // namespace clmodel
