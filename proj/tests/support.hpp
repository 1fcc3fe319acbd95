#pragma once

#include "walshsum/errors.hpp"
#include "walshsum/step_function.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace walshsum::testing {

// Cell values a/b with |a| <= 20, 1 <= b <= 6.
inline StepFunction random_function(int resolution, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Scalar> v(std::size_t{1} << resolution);
  for (auto& x : v) {
    const long long a = static_cast<long long>(gen() % 41) - 20;
    const long long b = static_cast<long long>(gen() % 6) + 1;
    x = Scalar::ratio(a, b);
  }
  return StepFunction(resolution, std::span<const Scalar>(v));
}

inline StepFunction quarters(Scalar a, Scalar b, Scalar c, Scalar d) {
  std::vector<Scalar> v{a, b, c, d};
  return StepFunction(2, std::span<const Scalar>(v));
}

inline StepFunction cells(std::vector<Scalar> v) {
  int n = 0;
  while ((std::size_t{1} << n) < v.size()) ++n;
  return StepFunction(n, std::span<const Scalar>(v));
}

inline Scalar q(long long a, long long b = 1) { return Scalar::ratio(a, b); }

}  // namespace walshsum::testing
