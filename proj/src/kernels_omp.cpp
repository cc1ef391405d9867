#include <exception>
#include <mutex>

#include <omp.h>

#include "paprsim/experiment.hpp"
#include "paprsim/rng.hpp"

namespace paprsim {

namespace {

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

// Exceptions must not leave an OpenMP region; keep the first one and rethrow
// after the join.
class ErrorSlot {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!err_) err_ = std::current_exception();
  }
  void rethrow() const {
    if (err_) std::rethrow_exception(err_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr err_;
};

}  // namespace

PaprBatch run_papr_parallel(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                            std::uint64_t master_seed, int workers) {
  PaprBatch b;
  b.n_trials = n_trials;
  b.per_trial = chain.papr_values_per_trial();
  b.values.assign(n_trials * b.per_trial, 0.0);
  const auto stream = papr_stream(mod);
  const auto n = static_cast<long long>(n_trials);
  ErrorSlot err;

#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_workers(workers))
  for (long long t = 0; t < n; ++t) {
    try {
      const auto i = static_cast<std::size_t>(t);
      chain.papr_trial(derive_seed(master_seed, stream, i), mod,
                       std::span<double>(b.values.data() + i * b.per_trial, b.per_trial));
    } catch (...) {
      err.capture();
    }
  }
  err.rethrow();
  return b;
}

BerBatch run_ber_parallel(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                          std::uint64_t master_seed, int workers) {
  BerBatch b;
  b.n_trials = n_trials;
  b.bits_per_trial = 2 * chain.config().U;
  b.errors.assign(chain.ber_counters(), 0);
  const auto stream = ber_stream(mod);
  const auto n = static_cast<long long>(n_trials);
  ErrorSlot err;
  std::mutex merge;

#pragma omp parallel num_threads(resolve_workers(workers))
  {
    // Integer counts, so merge order does not affect the result.
    std::vector<std::uint64_t> local(b.errors.size(), 0);
#pragma omp for schedule(dynamic, 8)
    for (long long t = 0; t < n; ++t) {
      try {
        chain.ber_trial(derive_seed(master_seed, stream, static_cast<std::size_t>(t)), mod, local);
      } catch (...) {
        err.capture();
      }
    }
    std::lock_guard<std::mutex> lock(merge);
    for (std::size_t i = 0; i < local.size(); ++i) b.errors[i] += local[i];
  }
  err.rethrow();
  return b;
}

}  // namespace paprsim
