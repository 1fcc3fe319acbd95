#include "walshsum/transform.hpp"

#include "walshsum/errors.hpp"

#include <bit>

namespace walshsum {

std::vector<std::int64_t> synthesize_integer(std::vector<std::int64_t> coefficients, int resolution) {
  check_resolution(resolution);
  if (coefficients.size() != (std::size_t{1} << resolution)) throw DomainError("coefficient count mismatch");
  hadamard_inplace(std::span<std::int64_t>(coefficients));
  bit_reverse_permute(std::span<std::int64_t>(coefficients), resolution);
  return coefficients;
}

Spectrum walsh_coefficients(const StepFunction& f) {
  const int n = f.resolution();
  ValueArray out = f.values().visit([n](const auto& v) {
    auto a = v;
    using V = std::decay_t<decltype(a[0])>;
    bit_reverse_permute(std::span<V>(a), n);
    hadamard_inplace(std::span<V>(a));
    if constexpr (std::is_same_v<V, Rational>) {
      const Rational scale = pow2(-n);
      for (auto& x : a) x *= scale;
    } else {
      const Real scale = to_real(pow2(-n));
      for (auto& x : a) x *= scale;
    }
    return ValueArray(std::move(a));
  });
  return Spectrum(n, std::move(out));
}

StepFunction from_coefficients(const Spectrum& c) {
  const int n = c.resolution();
  ValueArray out = c.coefficients().visit([n](const auto& v) {
    auto a = v;
    using V = std::decay_t<decltype(a[0])>;
    hadamard_inplace(std::span<V>(a));
    bit_reverse_permute(std::span<V>(a), n);
    return ValueArray(std::move(a));
  });
  return StepFunction(n, std::move(out));
}

StepFunction from_coefficients(std::span<const Scalar> c) {
  if (c.empty() || !std::has_single_bit(c.size()))
    throw DomainError("coefficient count " + std::to_string(c.size()) + " is not a power of two");
  const int n = std::countr_zero(c.size());
  return from_coefficients(Spectrum(n, ValueArray::from_scalars(c)));
}

}  // namespace walshsum
