#include "walshsum/step_function.hpp"

#include "walshsum/errors.hpp"

#include <algorithm>
#include <string>

namespace walshsum {

void check_resolution(int resolution) {
  if (resolution < 0 || resolution > kMaxResolution)
    throw DomainError("resolution " + std::to_string(resolution) + " outside [0, " +
                      std::to_string(kMaxResolution) + "]");
}

ValueArray ValueArray::from_scalars(std::span<const Scalar> values) {
  bool exact = std::all_of(values.begin(), values.end(), [](const Scalar& s) { return s.is_exact(); });
  if (exact) {
    Exact out;
    out.reserve(values.size());
    for (const auto& s : values) out.push_back(s.exact());
    return ValueArray(std::move(out));
  }
  Reals out;
  out.reserve(values.size());
  for (const auto& s : values) out.push_back(s.real());
  return ValueArray(std::move(out));
}

Scalar ValueArray::operator[](std::size_t i) const {
  return visit([i](const auto& v) { return Scalar(v.at(i)); });
}

const ValueArray::Exact& ValueArray::exact() const {
  if (auto* e = std::get_if<Exact>(&data_)) return *e;
  throw DomainError("values are not exact");
}

ValueArray::Exact& ValueArray::exact() {
  if (auto* e = std::get_if<Exact>(&data_)) return *e;
  throw DomainError("values are not exact");
}

ValueArray::Reals ValueArray::to_reals() const {
  if (auto* r = std::get_if<Reals>(&data_)) return *r;
  const auto& e = std::get<Exact>(data_);
  Reals out;
  out.reserve(e.size());
  for (const auto& v : e) out.push_back(to_real(v));
  return out;
}

bool ValueArray::operator==(const ValueArray& other) const {
  if (size() != other.size()) return false;
  if (is_exact() && other.is_exact()) return exact() == other.exact();
  return to_reals() == other.to_reals();
}

StepFunction::StepFunction(int resolution) : resolution_(resolution) {
  check_resolution(resolution);
  values_ = ValueArray(std::size_t{1} << resolution);
}

StepFunction::StepFunction(int resolution, ValueArray values) : resolution_(resolution), values_(std::move(values)) {
  check_resolution(resolution);
  if (values_.size() != (std::size_t{1} << resolution))
    throw DomainError("a resolution-" + std::to_string(resolution) + " step function needs " +
                      std::to_string(std::size_t{1} << resolution) + " values");
}

StepFunction::StepFunction(int resolution, std::span<const Scalar> values)
    : StepFunction(resolution, ValueArray::from_scalars(values)) {}

StepFunction StepFunction::constant(int resolution, const Scalar& c) {
  check_resolution(resolution);
  std::vector<Scalar> v(std::size_t{1} << resolution, c);
  return StepFunction(resolution, std::span<const Scalar>(v));
}

StepFunction StepFunction::indicator(const DyadicInterval& region, int resolution) {
  check_resolution(resolution);
  std::size_t n = std::size_t{1} << resolution;
  ValueArray::Exact v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = region.contains_cell(i, resolution) ? 1 : 0;
  return StepFunction(resolution, ValueArray(std::move(v)));
}

StepFunction StepFunction::walsh(std::uint64_t k, int resolution) {
  check_resolution(resolution);
  if (resolution < 64 && (k >> resolution) != 0)
    throw DomainError("w_" + std::to_string(k) + " is not constant on resolution-" + std::to_string(resolution) +
                      " cells");
  std::size_t n = std::size_t{1} << resolution;
  ValueArray::Exact v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = walsh_sign(k, i, resolution);
  return StepFunction(resolution, ValueArray(std::move(v)));
}

StepFunction StepFunction::refined(int resolution) const {
  if (resolution < resolution_) throw DomainError("cannot refine to a coarser resolution");
  if (resolution == resolution_) return *this;
  check_resolution(resolution);
  const std::size_t rep = std::size_t{1} << (resolution - resolution_);
  return StepFunction(resolution, values_.visit([&](const auto& v) {
    std::decay_t<decltype(v)> out;
    out.reserve(v.size() * rep);
    for (const auto& x : v)
      for (std::size_t r = 0; r < rep; ++r) out.push_back(x);
    return ValueArray(std::move(out));
  }));
}

StepFunction StepFunction::translated(const DyadicPoint& y) const {
  const std::uint64_t shift = y.cell(resolution_);
  return StepFunction(resolution_, values_.visit([&](const auto& v) {
    std::decay_t<decltype(v)> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i ^ shift];
    return ValueArray(std::move(out));
  }));
}

StepFunction StepFunction::abs() const {
  return StepFunction(resolution_, map_values(values_, [](const auto& x) { return x.sign() < 0 ? -x : x; }));
}

StepFunction StepFunction::operator-() const {
  return StepFunction(resolution_, map_values(values_, [](const auto& x) { return -x; }));
}

bool StepFunction::is_zero() const {
  return values_.visit([](const auto& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& x) { return x.sign() == 0; });
  });
}

Scalar StepFunction::sup_abs() const {
  return values_.visit([](const auto& v) {
    using V = std::decay_t<decltype(v[0])>;
    V best = 0;
    for (const auto& x : v) {
      V a = x.sign() < 0 ? V(-x) : x;
      if (best < a) best = a;
    }
    return Scalar(best);
  });
}

namespace {

template <class Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
  int n = std::max(a.resolution(), b.resolution());
  return StepFunction(n, zip_values(a.refined(n).values(), b.refined(n).values(), op));
}

}  // namespace

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}

StepFunction operator*(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}

StepFunction operator*(const Scalar& c, const StepFunction& f) {
  if (c.is_exact() && f.is_exact()) {
    const Rational& k = c.exact();
    return StepFunction(f.resolution(), map_values(f.values(), [&](const auto& x) { return decltype(x + x)(k * x); }));
  }
  Real k = c.real();
  return StepFunction(f.resolution(), map_values(f.values().promoted(), [&](const auto& x) { return decltype(x + x)(k * Real(x)); }));
}

StepFunction operator/(const StepFunction& f, const Scalar& c) {
  if (c.is_zero()) throw DomainError("division of a step function by zero");
  return (Scalar(1) / c) * f;
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  int n = std::max(a.resolution(), b.resolution());
  return a.refined(n).values() == b.refined(n).values();
}

StepFunction pointwise_max(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x < y ? y : x; });
}

Spectrum::Spectrum(int resolution) : resolution_(resolution) {
  check_resolution(resolution);
  coefficients_ = ValueArray(std::size_t{1} << resolution);
}

Spectrum::Spectrum(int resolution, ValueArray coefficients)
    : resolution_(resolution), coefficients_(std::move(coefficients)) {
  check_resolution(resolution);
  if (coefficients_.size() != (std::size_t{1} << resolution))
    throw DomainError("spectrum size does not match resolution");
}

Spectrum Spectrum::padded(int resolution) const {
  if (resolution < resolution_) throw DomainError("cannot pad to a coarser resolution");
  check_resolution(resolution);
  return Spectrum(resolution, coefficients_.visit([&](const auto& v) {
    std::decay_t<decltype(v)> out(std::size_t{1} << resolution);
    std::copy(v.begin(), v.end(), out.begin());
    return ValueArray(std::move(out));
  }));
}

Scalar integrate(const StepFunction& f) { return integrate(f, DyadicInterval::whole()); }

Scalar integrate(const StepFunction& f, const DyadicInterval& region) {
  const StepFunction g = region.level() > f.resolution() ? f.refined(region.level()) : f;
  const int n = g.resolution();
  const std::uint64_t first = region.first_cell(n), count = region.cell_count(n);
  return g.values().visit([&](const auto& v) {
    using V = std::decay_t<decltype(v[0])>;
    V inside = 0, total = 0;
    for (std::uint64_t i = first; i < first + count; ++i) inside += v[i];
    if (region.is_complement())
      for (const auto& x : v) total += x;
    V sum = region.is_complement() ? V(total - inside) : inside;
    if constexpr (std::is_same_v<V, Rational>) {
      return Scalar(Rational(sum * pow2(-n)));
    } else {
      return Scalar(Real(sum / to_real(pow2(n))));
    }
  });
}

}  // namespace walshsum
