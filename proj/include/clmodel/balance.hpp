#pragma once

#include "clmodel/kernel.hpp"

namespace clmodel {

// Classic balance-metric prediction: how much of a peak flop rate a
// bandwidth-limited kernel can sustain. A "word" is one 8-byte double.
struct BalanceReport {
  double machine_balance_wf = 0.0;      // B_M, words per flop the machine can feed
  double algorithmic_balance_wf = 0.0;  // B_A, words per flop the kernel needs
  double lightspeed = 0.0;              // min(1, B_M / B_A)
  double applicable_peak_gflops = 0.0;
  double predicted_gflops = 0.0;
};

// B_M = sustainable word rate / peak flop rate.
double machine_balance(double bandwidth_gwords_per_s, double peak_gflops);

// B_A = words touched per flop. With include_rfo, every store stream is
// charged a second word for the read-for-ownership on the store miss.
double algorithmic_balance(const KernelDescription& kernel, bool include_rfo);

// B_A from explicit stream counts (stencil regimes).
double stream_algorithmic_balance(int memory_streams, int rfo_streams, int flops);

// lightspeed = min(1, bm/ba); prediction = lightspeed * peak. Exact
// arithmetic; the efficiency is clamped at 1 since values above peak are
// meaningless.
BalanceReport balance_prediction(double bm, double ba, double peak_gflops);

}  // namespace clmodel
