#pragma once

#include "walshsum/dyadic.hpp"
#include "walshsum/scalar.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace walshsum {

/// Homogeneous array of scalars: all exact or all real.
class ValueArray {
 public:
  using Exact = std::vector<Rational>;
  using Reals = std::vector<Real>;

  ValueArray() = default;
  explicit ValueArray(std::size_t n) : data_(Exact(n)) {}
  ValueArray(Exact values) : data_(std::move(values)) {}
  ValueArray(Reals values) : data_(std::move(values)) {}

  /// Exact if every scalar is exact, otherwise everything is promoted.
  static ValueArray from_scalars(std::span<const Scalar> values);

  std::size_t size() const {
    return std::visit([](const auto& v) { return v.size(); }, data_);
  }
  Backend backend() const { return data_.index() == 0 ? Backend::exact : Backend::real; }
  bool is_exact() const { return data_.index() == 0; }

  Scalar operator[](std::size_t i) const;

  const Exact& exact() const;
  Exact& exact();
  Reals to_reals() const;
  ValueArray promoted() const { return ValueArray(to_reals()); }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), data_);
  }
  template <class F>
  decltype(auto) visit(F&& f) {
    return std::visit(std::forward<F>(f), data_);
  }

  bool operator==(const ValueArray& other) const;

 private:
  std::variant<Exact, Reals> data_;
};

/// Elementwise combination; exact only when both inputs are exact.
template <class Op>
ValueArray zip_values(const ValueArray& a, const ValueArray& b, Op op) {
  auto run = [&](const auto& x, const auto& y) {
    using V = std::decay_t<decltype(x[0])>;
    std::vector<V> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i], y[i]);
    return ValueArray(std::move(out));
  };
  if (a.is_exact() && b.is_exact()) return run(a.exact(), b.exact());
  return run(a.to_reals(), b.to_reals());
}

template <class Op>
ValueArray map_values(const ValueArray& a, Op op) {
  return a.visit([&](const auto& x) {
    using V = std::decay_t<decltype(x[0])>;
    std::vector<V> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i]);
    return ValueArray(std::move(out));
  });
}

/// Piecewise-constant function on [0, 1): values[i] is the value on
/// [i/2^N, (i+1)/2^N). Operands of different resolutions are refined to
/// the finer one before combining.
class StepFunction {
 public:
  explicit StepFunction(int resolution = 0);
  StepFunction(int resolution, ValueArray values);
  StepFunction(int resolution, std::span<const Scalar> values);

  static StepFunction constant(int resolution, const Scalar& c);
  static StepFunction indicator(const DyadicInterval& region, int resolution);
  /// w_k sampled on cells; requires k < 2^N.
  static StepFunction walsh(std::uint64_t k, int resolution);

  int resolution() const { return resolution_; }
  std::size_t size() const { return values_.size(); }
  Backend backend() const { return values_.backend(); }
  bool is_exact() const { return values_.is_exact(); }
  const ValueArray& values() const { return values_; }

  Scalar operator[](std::size_t cell) const { return values_[cell]; }
  Scalar at(const DyadicPoint& x) const { return values_[x.cell(resolution_)]; }

  StepFunction refined(int resolution) const;
  StepFunction promoted() const { return StepFunction(resolution_, values_.promoted()); }

  /// x -> f(x (+) y)
  StepFunction translated(const DyadicPoint& y) const;

  StepFunction abs() const;
  StepFunction operator-() const;
  bool is_zero() const;
  Scalar sup_abs() const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  /// Pointwise product.
  friend StepFunction operator*(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(const Scalar& c, const StepFunction& f);
  friend StepFunction operator/(const StepFunction& f, const Scalar& c);

  /// Equality as functions (refines to a common resolution).
  friend bool operator==(const StepFunction& a, const StepFunction& b);

 private:
  int resolution_;
  ValueArray values_;
};

/// Pointwise maximum.
StepFunction pointwise_max(const StepFunction& a, const StepFunction& b);

/// Walsh-Paley coefficients c_0, ..., c_{2^N - 1} of a resolution-N function.
class Spectrum {
 public:
  explicit Spectrum(int resolution = 0);
  Spectrum(int resolution, ValueArray coefficients);

  int resolution() const { return resolution_; }
  std::size_t size() const { return coefficients_.size(); }
  const ValueArray& coefficients() const { return coefficients_; }
  Backend backend() const { return coefficients_.backend(); }
  Scalar operator[](std::size_t k) const { return coefficients_[k]; }

  /// Same polynomial, viewed at a finer resolution (zero padding in index).
  Spectrum padded(int resolution) const;

  bool operator==(const Spectrum& other) const {
    return resolution_ == other.resolution_ && coefficients_ == other.coefficients_;
  }

 private:
  int resolution_;
  ValueArray coefficients_;
};

/// Integral over [0, 1).
Scalar integrate(const StepFunction& f);
/// Integral over a dyadic interval or its complement; the function is
/// refined to the interval's level when that is finer.
Scalar integrate(const StepFunction& f, const DyadicInterval& region);

void check_resolution(int resolution);

}  // namespace walshsum
