#include "clmodel/balance.hpp"

#include <algorithm>

#include "clmodel/errors.hpp"

namespace clmodel {

double machine_balance(double bandwidth_gwords_per_s, double peak_gflops) {
  if (bandwidth_gwords_per_s <= 0.0) throw DomainError("machine_balance: bandwidth must be > 0");
  if (peak_gflops <= 0.0) throw DomainError("machine_balance: peak flop rate must be > 0");
  return bandwidth_gwords_per_s / peak_gflops;
}

double algorithmic_balance(const KernelDescription& kernel, bool include_rfo) {
  int flops = kernel.flops_per_iteration();
  if (flops <= 0) {
    throw DomainError("kernel \"" + kernel.name +
                      "\" performs no flops; balance is undefined, use a pure bandwidth "
                      "prediction (predict/simulate) instead");
  }
  int words = kernel.load_streams + kernel.store_streams + (include_rfo ? kernel.store_streams : 0);
  return static_cast<double>(words) / flops;
}

double stream_algorithmic_balance(int memory_streams, int rfo_streams, int flops) {
  if (memory_streams + rfo_streams < 1) throw DomainError("stream balance: needs at least one stream");
  if (flops < 1) throw DomainError("stream balance: flops must be >= 1");
  return static_cast<double>(memory_streams + rfo_streams) / flops;
}

BalanceReport balance_prediction(double bm, double ba, double peak_gflops) {
  if (bm <= 0.0) throw DomainError("balance prediction: machine balance must be > 0");
  if (ba <= 0.0) throw DomainError("balance prediction: algorithmic balance must be > 0");
  if (peak_gflops <= 0.0) throw DomainError("balance prediction: peak must be > 0");
  BalanceReport r;
  r.machine_balance_wf = bm;
  r.algorithmic_balance_wf = ba;
  r.lightspeed = std::min(1.0, bm / ba);
  r.applicable_peak_gflops = peak_gflops;
  r.predicted_gflops = r.lightspeed * peak_gflops;
  return r;
}

}  // namespace clmodel
