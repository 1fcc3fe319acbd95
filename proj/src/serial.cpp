#include "walshsum/serial.hpp"

#include "walshsum/errors.hpp"

namespace walshsum::serial {

std::vector<Rational> coefficients(const StepFunction& f) {
  const int n = f.resolution();
  const auto& v = f.values().exact();
  std::vector<Rational> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational sum = 0;
    for (std::size_t cell = 0; cell < v.size(); ++cell)
      sum += walsh_sign(i, cell, n) > 0 ? v[cell] : Rational(-v[cell]);
    c[i] = sum * pow2(-n);
  }
  return c;
}

StepFunction synthesize(const std::vector<Rational>& c, int resolution) {
  ValueArray::Exact v(std::size_t{1} << resolution);
  if (c.size() > v.size()) throw DomainError("too many coefficients");
  for (std::size_t cell = 0; cell < v.size(); ++cell)
    for (std::size_t i = 0; i < c.size(); ++i)
      v[cell] += walsh_sign(i, cell, resolution) > 0 ? c[i] : Rational(-c[i]);
  return StepFunction(resolution, ValueArray(std::move(v)));
}

StepFunction convolve(const StepFunction& f, const StepFunction& g) {
  const int n = std::max(f.resolution(), g.resolution());
  const StepFunction fr = f.refined(n), gr = g.refined(n);
  const auto& a = fr.values().exact();
  const auto& b = gr.values().exact();
  ValueArray::Exact out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < a.size(); ++j) sum += a[i ^ j] * b[j];
    out[i] = sum * pow2(-n);
  }
  return StepFunction(n, ValueArray(std::move(out)));
}

StepFunction dirichlet(std::uint64_t n, int resolution) {
  const std::size_t cells = std::size_t{1} << resolution;
  ValueArray::Exact v(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    // w_k at the cell's left endpoint
    const DyadicPoint x = DyadicPoint::cell_start(cell, resolution);
    long long sum = 0;
    for (std::uint64_t k = 0; k < n; ++k) sum += walsh_eval(k, x);
    v[cell] = sum;
  }
  return StepFunction(resolution, ValueArray(std::move(v)));
}

StepFunction fejer(std::uint64_t n, int resolution) {
  StepFunction sum = StepFunction::constant(resolution, 0);
  for (std::uint64_t k = 1; k <= n; ++k) sum = sum + dirichlet(k, resolution);
  return sum / Scalar(static_cast<long long>(n));
}

StepFunction norlund_kernel(const WeightSequence& q, std::uint64_t n, int resolution) {
  StepFunction sum = StepFunction::constant(resolution, 0);
  Scalar total;
  for (std::uint64_t k = 0; k < n; ++k) total += q.q(k);
  for (std::uint64_t k = 1; k <= n; ++k) sum = sum + q.q(n - k) * dirichlet(k, resolution);
  return sum / total;
}

StepFunction partial_sum(const StepFunction& f, std::uint64_t m) {
  auto c = coefficients(f);
  for (std::size_t i = m; i < c.size(); ++i) c[i] = 0;
  return synthesize(c, f.resolution());
}

StepFunction norlund_mean(const WeightSequence& q, std::uint64_t n, const StepFunction& f) {
  StepFunction sum = StepFunction::constant(f.resolution(), 0);
  Scalar total;
  for (std::uint64_t k = 0; k < n; ++k) total += q.q(k);
  for (std::uint64_t k = 1; k <= n; ++k) sum = sum + q.q(n - k) * partial_sum(f, k);
  return sum / total;
}

StepFunction dyadic_maximal(const StepFunction& f) {
  StepFunction out = partial_sum(f, 1).abs();
  for (int level = 1; level <= f.resolution(); ++level)
    out = pointwise_max(out, partial_sum(f, std::uint64_t{1} << level).abs());
  return out;
}

std::vector<std::int64_t> kernel_sup(int resolution) {
  const std::size_t cells = std::size_t{1} << resolution;
  std::vector<std::int64_t> best(cells, 0);
  for (std::uint64_t n = 1; n <= cells; ++n) {
    const StepFunction k = Scalar(static_cast<long long>(n)) * fejer(n, resolution);
    for (std::size_t i = 0; i < cells; ++i) {
      const Rational& v = k.values().exact()[i];
      best[i] = std::max(best[i], mp::abs(mp::numerator(v)).convert_to<std::int64_t>());
    }
  }
  return best;
}

std::vector<std::int64_t> kernel_sup_sweep(int resolution) {
  const std::uint64_t cells = std::uint64_t{1} << resolution;
  std::vector<std::int64_t> best(cells, 0);
  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    std::int64_t d = 0, s = 0;
    for (std::uint64_t k = 0; k < cells; ++k) {
      d += walsh_sign(k, cell, resolution);
      s += d;
      best[cell] = std::max(best[cell], s < 0 ? -s : s);
    }
  }
  return best;
}

std::vector<Rational> fejer_l1_norms(std::uint64_t n_max, int resolution) {
  std::vector<Rational> out;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const StepFunction k = fejer(n, resolution);
    Rational sum = 0;
    for (const auto& x : k.values().exact()) sum += mp::abs(x);
    out.push_back(sum * pow2(-resolution));
  }
  return out;
}

}  // namespace walshsum::serial
