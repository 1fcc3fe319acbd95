#pragma once

#include "walshsum/step_function.hpp"
#include "walshsum/weights.hpp"

#include <cstdint>
#include <vector>

namespace walshsum {

/// S_M f = sum_{i<M} f^(i) w_i; M <= 2^N.
StepFunction partial_sum(const StepFunction& f, std::uint64_t m);

/// (f * g)(x) = integral of f(x + t) g(t) dt, via the transform.
StepFunction convolve(const StepFunction& f, const StepFunction& g);

/// t_n f through its coefficients f^(i) Q_{n-i} / Q_n.
StepFunction norlund_mean_spectral(const WeightSequence& q, std::uint64_t n, const StepFunction& f);

/// t_n f = (1/Q_n) sum_{k=1}^{n} q_{n-k} S_k f, evaluated both as that
/// weighted sum and as f * F_n. Throws InvariantError if they disagree.
StepFunction norlund_mean(const WeightSequence& q, std::uint64_t n, const StepFunction& f);

/// Weighted partial-sum route alone (no cross-check).
StepFunction norlund_mean_direct(const WeightSequence& q, std::uint64_t n, const StepFunction& f);

/// x -> max over the index set of |t_n f(x)|.
StepFunction maximal_mean(const WeightSequence& q, const std::vector<std::uint64_t>& indices, const StepFunction& f);

}  // namespace walshsum

namespace walshsum {

/// max over n in [n_lo, n_hi] of |sigma_n f| (Fejer means) for exact f,
/// using scaled integer arithmetic; the sweep is incremental in n.
/// Also returns the running maxima at each checkpoint in `checkpoints`
/// (ascending, each within [n_lo, n_hi]).
std::vector<StepFunction> fejer_maximal_range(const StepFunction& f, std::uint64_t n_lo, std::uint64_t n_hi,
                                              const std::vector<std::uint64_t>& checkpoints);

}  // namespace walshsum
