#pragma once

// Straightforward reference implementations. They follow the definitions
// term by term (mostly O(4^N) or worse), run on one thread and work on
// exact values only; tests and benchmarks compare the fast paths to them.

#include "walshsum/step_function.hpp"
#include "walshsum/weights.hpp"

#include <cstdint>
#include <vector>

namespace walshsum::serial {

/// Same butterfly as hadamard_inplace, without threads.
template <class T>
void hadamard_butterfly(std::vector<T>& a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        T y = a[j + h];
        a[j + h] = a[j] - y;
        a[j] += y;
      }
}

/// f^(i) = integral of f w_i, summed cell by cell.
std::vector<Rational> coefficients(const StepFunction& f);
/// sum_i c_i w_i, evaluated cell by cell.
StepFunction synthesize(const std::vector<Rational>& c, int resolution);

/// 2^{-N} sum_j f[i ^ j] g[j]
StepFunction convolve(const StepFunction& f, const StepFunction& g);

StepFunction dirichlet(std::uint64_t n, int resolution);
StepFunction fejer(std::uint64_t n, int resolution);
StepFunction norlund_kernel(const WeightSequence& q, std::uint64_t n, int resolution);

StepFunction partial_sum(const StepFunction& f, std::uint64_t m);
StepFunction norlund_mean(const WeightSequence& q, std::uint64_t n, const StepFunction& f);
/// max_n |S_{2^n} f| from explicit partial sums.
StepFunction dyadic_maximal(const StepFunction& f);

/// max_{1 <= n <= 2^N} n |K_n| with every K_n built from scratch.
std::vector<std::int64_t> kernel_sup(int resolution);
/// Cell-by-cell kernel sweep without threads (the benchmark baseline).
std::vector<std::int64_t> kernel_sup_sweep(int resolution);

std::vector<Rational> fejer_l1_norms(std::uint64_t n_max, int resolution);

}  // namespace walshsum::serial
