#pragma once

#include "walshsum/scalar.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace walshsum {

enum class Family { fejer, cesaro, power, logarithmic, custom };

std::string_view to_string(Family family);

/// Terms q_k and prefix sums Q_n are cached exactly up to this index for
/// exact families; beyond it they come from closed forms at working
/// precision.
inline constexpr std::uint64_t kExactHorizon = std::uint64_t{1} << 14;

/// Non-negative weights {q_k} with q_0 > 0 and their prefix sums
/// Q_n = q_0 + ... + q_{n-1}. Copies share one append-only cache.
class WeightSequence {
 public:
  /// q_k = 1
  static WeightSequence fejer();
  /// q_k = A_k^{alpha-1}, alpha in (0, 1); exact for rational alpha.
  static WeightSequence cesaro(const Scalar& alpha);
  /// q_k = k^{alpha-1} (q_0 = 1), alpha in [0, 1); alpha = 0 is logarithmic.
  static WeightSequence power(const Scalar& alpha);
  /// q_k = 1/k (q_0 = 1)
  static WeightSequence logarithmic();
  /// Finite list, zero beyond its end.
  static WeightSequence custom(std::vector<Scalar> terms, bool declared_non_increasing,
                               std::uint64_t spot_check_horizon = 256, std::string name = "custom");
  /// Arbitrary evaluator; every value must be exact when `exact` is set.
  static WeightSequence custom(std::function<Scalar(std::uint64_t)> term, bool exact, bool declared_non_increasing,
                               std::uint64_t spot_check_horizon = 256, std::string name = "custom");

  Family family() const;
  const std::optional<Scalar>& alpha() const;
  /// e.g. "fejer", "cesaro(1/2)", "power(3/10)"
  std::string id() const;
  bool declared_non_increasing() const;
  /// True when every q_k and Q_n up to kExactHorizon is an exact rational.
  bool is_exact() const;

  Scalar q(std::uint64_t k) const;
  /// Q_n; exact for exact families when n <= kExactHorizon (always for
  /// fejer and finite custom lists).
  Scalar prefix_sum(std::uint64_t n) const;
  /// Q_n as a real, via closed forms where the cache does not reach.
  Real prefix_sum_real(std::uint64_t n) const;

  /// q_0, ..., q_{n-1}
  std::vector<Scalar> terms(std::uint64_t n) const;
  /// Q_0, ..., Q_n
  std::vector<Scalar> prefix_sums(std::uint64_t n) const;

  struct State;

 private:
  explicit WeightSequence(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

/// tag in {fejer, cesaro, power, logarithmic}; alpha required for cesaro
/// and power.
WeightSequence make_family(std::string_view tag, const std::optional<Scalar>& alpha);

/// Two-column text file "index value" (exact "a/b" literals or decimals),
/// '#' starts a comment. Indices must cover 0..m-1 exactly once.
WeightSequence load_weights_file(const std::filesystem::path& path, bool declared_non_increasing,
                                 std::uint64_t spot_check_horizon = 256);

}  // namespace walshsum
