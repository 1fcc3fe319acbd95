#pragma once

#include "walshsum/dyadic.hpp"
#include "walshsum/step_function.hpp"

#include <cstdint>
#include <span>
#include <utility>

namespace walshsum {

/// Loops shorter than this stay serial; thread start-up dominates below it.
inline constexpr std::int64_t kParallelThreshold = 1 << 11;

/// Unnormalized Sylvester-order Hadamard butterfly, parallel over the
/// independent pairs of each stage.
template <class T>
void hadamard_inplace(std::span<T> a) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  auto butterfly = [&a](std::int64_t lo, std::int64_t h) {
    for (std::int64_t j = lo; j < lo + h; ++j) {
      T y = a[j + h];
      a[j + h] = a[j] - y;
      a[j] += y;
    }
  };
#pragma omp parallel if (n / 2 >= kParallelThreshold)
  for (std::int64_t h = 1; h < n; h <<= 1) {
    const std::int64_t blocks = n / (2 * h);
    if (blocks >= h) {
      // many short blocks: split the blocks
#pragma omp for schedule(static)
      for (std::int64_t b = 0; b < blocks; ++b) butterfly(b * 2 * h, h);
    } else {
      // few long blocks: split each block
      for (std::int64_t b = 0; b < blocks; ++b) {
#pragma omp for schedule(static)
        for (std::int64_t j = b * 2 * h; j < b * 2 * h + h; ++j) {
          T y = a[j + h];
          a[j + h] = a[j] - y;
          a[j] += y;
        }
      }
    }
  }
}

/// Reorders cells so that Sylvester order becomes Walsh-Paley order.
template <class T>
void bit_reverse_permute(std::span<T> a, int resolution) {
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    std::uint64_t r = reverse_bits(i, resolution);
    if (i < r) std::swap(a[i], a[r]);
  }
}

/// Cell values of sum_k c_k w_k for integer coefficients.
std::vector<std::int64_t> synthesize_integer(std::vector<std::int64_t> coefficients, int resolution);

/// (f^(0), ..., f^(2^N - 1)) by the fast transform, O(N 2^N) operations.
Spectrum walsh_coefficients(const StepFunction& f);

/// Inverse of walsh_coefficients.
StepFunction from_coefficients(const Spectrum& c);
/// DomainError unless the length is a power of two.
StepFunction from_coefficients(std::span<const Scalar> c);

}  // namespace walshsum
