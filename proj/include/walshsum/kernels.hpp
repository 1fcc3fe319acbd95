#pragma once

#include "walshsum/dyadic.hpp"
#include "walshsum/step_function.hpp"
#include "walshsum/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace walshsum {

/// D_n = w_0 + ... + w_{n-1}; needs n <= 2^N.
StepFunction dirichlet(BinaryIndex n, int resolution);

/// K_n = (D_1 + ... + D_n) / n; needs 1 <= n <= 2^N.
StepFunction fejer(std::uint64_t n, int resolution);

/// Coefficients of F_n: Q_{n-i}/Q_n for i < n, zero beyond.
Spectrum norlund_spectrum(const WeightSequence& q, std::uint64_t n, int resolution);

/// F_n = (1/Q_n) sum_{k=1}^{n} q_{n-k} D_k
StepFunction norlund_kernel(const WeightSequence& q, std::uint64_t n, int resolution);

/// (1/2) (2^{-n} D_{2^n}(x) + sum_{j=0}^{n} 2^{j-n} D_{2^n}(x + e_j)); n <= N.
StepFunction schipp_rhs(int n, int resolution);

struct KernelDecomposition {
  StepFunction whole;
  StepFunction part1;
  StepFunction part2;
  StepFunction part2a;
  StepFunction part2b;
  BinaryIndex index;
  std::string weights;
};

/// Splits F_n along the binary digits of n. Because the parts carry the
/// factor w_n, they live at resolution max(N, |n| + 1).
KernelDecomposition gn1_decompose(const WeightSequence& q, BinaryIndex n, int resolution);

struct KernelSup {
  /// x -> max_{1 <= n <= 2^N} n |K_n(x)|
  StepFunction sup;
  /// Integral of sup^p.
  Scalar integral;
};

/// Incremental O(4^N) sweep; 1/2 < p <= 1.
KernelSup kernel_sup(int resolution, const Rational& p);

/// Cell values of max_{1 <= n <= 2^N} n |K_n| (integers).
std::vector<std::int64_t> kernel_sup_values(int resolution);

/// Integral of f^p for a non-negative integer-valued f; exact when every
/// power is rational.
Scalar integral_of_power(const std::vector<std::int64_t>& values, int resolution, const Rational& p);

/// Cell values of n K_n for n = 1..2^N, row n-1, computed incrementally.
/// Memory 4^N words; intended for N <= 10.
std::vector<std::vector<std::int64_t>> fejer_rows(int resolution);

/// ||K_n||_1 for n = 1..n_max, exact, at the smallest resolution that
/// holds K_{n_max}.
std::vector<Rational> fejer_l1_norms(std::uint64_t n_max);

/// Smallest c with n |K_n(x)| <= c sum_{s=0}^{|n|} 2^s K_{2^s}(x) for all
/// 1 <= n <= n_max and all cells at the given resolution. Infinite (no
/// admissible c) is reported as nullopt.
std::optional<Rational> fest_constant(std::uint64_t n_max, int resolution);

}  // namespace walshsum
