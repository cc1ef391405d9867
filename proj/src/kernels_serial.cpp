#include "paprsim/experiment.hpp"
#include "paprsim/rng.hpp"

namespace paprsim {

PaprBatch run_papr_serial(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                          std::uint64_t master_seed) {
  PaprBatch b;
  b.n_trials = n_trials;
  b.per_trial = chain.papr_values_per_trial();
  b.values.assign(n_trials * b.per_trial, 0.0);
  const auto stream = papr_stream(mod);
  for (std::size_t t = 0; t < n_trials; ++t) {
    chain.papr_trial(derive_seed(master_seed, stream, t), mod,
                     std::span<double>(b.values.data() + t * b.per_trial, b.per_trial));
  }
  return b;
}

BerBatch run_ber_serial(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                        std::uint64_t master_seed) {
  BerBatch b;
  b.n_trials = n_trials;
  b.errors.assign(chain.ber_counters(), 0);
  const auto stream = ber_stream(mod);
  for (std::size_t t = 0; t < n_trials; ++t)
    b.bits_per_trial = chain.ber_trial(derive_seed(master_seed, stream, t), mod, b.errors);
  return b;
}

}  // namespace paprsim
