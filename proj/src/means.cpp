#include "walshsum/means.hpp"

#include "walshsum/errors.hpp"
#include "walshsum/kernels.hpp"
#include "walshsum/transform.hpp"

#include <bit>

namespace walshsum {

namespace {

void require_degree(std::uint64_t n, int resolution) {
  if (n > (std::uint64_t{1} << resolution))
    throw DomainError("index " + std::to_string(n) + " exceeds the degree representable at resolution " +
                      std::to_string(resolution));
}

// Relative agreement at the working precision, leaving ten digits of slack.
bool close(const ValueArray& a, const ValueArray& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  const auto x = a.to_reals(), y = b.to_reals();
  const Real tol = mp::pow(Real(10), -static_cast<int>(working_digits()) + 10);
  Real scale(1);
  for (const auto& v : x) {
    Real m = mp::abs(v);
    if (m > scale) scale = m;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (mp::abs(x[i] - y[i]) > tol * scale) return false;
  return true;
}

template <class V>
std::vector<V> weighted_partial_sums(const std::vector<V>& coef, const std::vector<V>& weight, std::uint64_t n,
                                     int resolution) {
  const std::size_t cells = std::size_t{1} << resolution;
  std::vector<std::uint64_t> rev(cells);
  for (std::size_t i = 0; i < cells; ++i) rev[i] = reverse_bits(i, resolution);
  std::vector<V> s(cells, V(0)), acc(cells, V(0));
  for (std::uint64_t k = 1; k <= n; ++k) {
    const V& c = coef[k - 1];
    const V& w = weight[k];
    const bool live = c != 0;
    for (std::size_t i = 0; i < cells; ++i) {
      if (live) {
        if (std::popcount((k - 1) & rev[i]) & 1)
          s[i] -= c;
        else
          s[i] += c;
      }
      if (w != 0) acc[i] += w * s[i];
    }
  }
  return acc;
}

}  // namespace

StepFunction partial_sum(const StepFunction& f, std::uint64_t m) {
  require_degree(m, f.resolution());
  Spectrum c = walsh_coefficients(f);
  ValueArray v = c.coefficients();
  v.visit([m](auto& a) {
    for (std::size_t i = m; i < a.size(); ++i) a[i] = 0;
  });
  return from_coefficients(Spectrum(f.resolution(), std::move(v)));
}

StepFunction convolve(const StepFunction& f, const StepFunction& g) {
  const int n = std::max(f.resolution(), g.resolution());
  const Spectrum a = walsh_coefficients(f.refined(n));
  const Spectrum b = walsh_coefficients(g.refined(n));
  ValueArray prod = zip_values(a.coefficients(), b.coefficients(), [](const auto& x, const auto& y) {
    return std::decay_t<decltype(x)>(x * y);
  });
  return from_coefficients(Spectrum(n, std::move(prod)));
}

StepFunction norlund_mean_spectral(const WeightSequence& q, std::uint64_t n, const StepFunction& f) {
  require_degree(n, f.resolution());
  const Spectrum kernel = norlund_spectrum(q, n, f.resolution());
  const Spectrum coef = walsh_coefficients(f);
  ValueArray prod = zip_values(coef.coefficients(), kernel.coefficients(), [](const auto& x, const auto& y) {
    return std::decay_t<decltype(x)>(x * y);
  });
  return from_coefficients(Spectrum(f.resolution(), std::move(prod)));
}

StepFunction norlund_mean_direct(const WeightSequence& q, std::uint64_t n, const StepFunction& f) {
  if (n == 0) throw DomainError("t_0 is undefined");
  const int res = f.resolution();
  require_degree(n, res);
  const Spectrum coef = walsh_coefficients(f);
  const auto prefix = q.prefix_sums(n);
  // weight[k] = q_{n-k} / Q_n for k = 1..n
  std::vector<Scalar> weight(n + 1);
  for (std::uint64_t k = 1; k <= n; ++k) weight[k] = q.q(n - k) / prefix[n];
  const ValueArray w = ValueArray::from_scalars(weight);
  if (coef.coefficients().is_exact() && w.is_exact())
    return StepFunction(res, ValueArray(weighted_partial_sums(coef.coefficients().exact(), w.exact(), n, res)));
  return StepFunction(res, ValueArray(weighted_partial_sums(coef.coefficients().to_reals(), w.to_reals(), n, res)));
}

StepFunction norlund_mean(const WeightSequence& q, std::uint64_t n, const StepFunction& f) {
  StepFunction direct = norlund_mean_direct(q, n, f);
  StepFunction via_kernel = convolve(f, norlund_kernel(q, n, f.resolution()));
  if (!close(direct.values(), via_kernel.values()))
    throw InvariantError("Norlund mean t_" + std::to_string(n) + " (" + q.id() +
                         "): partial-sum and convolution forms disagree");
  return direct;
}

StepFunction maximal_mean(const WeightSequence& q, const std::vector<std::uint64_t>& indices, const StepFunction& f) {
  if (indices.empty()) throw DomainError("maximal_mean needs a non-empty index set");
  for (auto n : indices) require_degree(n, f.resolution());
  q.prefix_sums(*std::max_element(indices.begin(), indices.end()));  // warm the shared cache serially
  const auto count = static_cast<std::int64_t>(indices.size());
  std::vector<StepFunction> parts(indices.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i)
    parts[static_cast<std::size_t>(i)] = norlund_mean_spectral(q, indices[static_cast<std::size_t>(i)], f).abs();
  StepFunction out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = pointwise_max(out, parts[i]);
  return out;
}

}  // namespace walshsum

namespace walshsum {

std::vector<StepFunction> fejer_maximal_range(const StepFunction& f, std::uint64_t n_lo, std::uint64_t n_hi,
                                              const std::vector<std::uint64_t>& checkpoints) {
  if (n_lo == 0 || n_lo > n_hi) throw DomainError("fejer_maximal_range needs 1 <= n_lo <= n_hi");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      (!checkpoints.empty() && (checkpoints.front() < n_lo || checkpoints.back() > n_hi)))
    throw DomainError("checkpoints must be ascending within [n_lo, n_hi]");
  const int res = f.resolution();
  const auto& v = f.values().exact();
  const std::size_t cells = v.size();

  // f = u / scale with integer u
  Integer scale = 1;
  for (const auto& x : v) scale = mp::lcm(scale, Integer(mp::denominator(x)));
  std::vector<std::int64_t> u(cells);
  Integer total = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    Integer w = mp::numerator(v[i]) * (scale / mp::denominator(v[i]));
    total += mp::abs(w);
    if (mp::abs(w) > (Integer(1) << 62)) throw DomainError("fejer_maximal_range: values too large");
    u[i] = w.convert_to<std::int64_t>();
  }
  // |U_n| <= n * 2^N * sum |u|
  if (total * n_hi * cells >= (Integer(1) << 62))
    throw DomainError("fejer_maximal_range: range too large for the integer path");
  // 2^N f^(i) * scale, integer
  std::vector<std::int64_t> coef = u;
  bit_reverse_permute(std::span<std::int64_t>(coef), res);
  hadamard_inplace(std::span<std::int64_t>(coef));

  std::vector<std::uint64_t> rev(cells);
  for (std::size_t i = 0; i < cells; ++i) rev[i] = reverse_bits(i, res);

  // sigma_n f = U_n / (n 2^N scale), U_n = sum_{k<=n} 2^N scale S_k f
  std::vector<std::int64_t> best_num(cells, 0);
  std::vector<std::uint64_t> best_den(cells, 1);
  std::vector<StepFunction> out;
  const Rational unit = Rational(1) / Rational(scale) * pow2(-res);
  auto snapshot = [&] {
    ValueArray::Exact vals(cells);
    for (std::size_t i = 0; i < cells; ++i)
      vals[i] = Rational(best_num[i]) / Rational(static_cast<long long>(best_den[i])) * unit;
    out.emplace_back(res, ValueArray(std::move(vals)));
  };
  const auto count = static_cast<std::int64_t>(cells);
  std::vector<std::int64_t> s(cells, 0), acc(cells, 0);
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= n_hi; ++n) {
    const std::uint64_t i = n - 1;
    const std::int64_t c = i < cells ? coef[i] : 0;
#pragma omp parallel for schedule(static) if (count >= kParallelThreshold)
    for (std::int64_t x = 0; x < count; ++x) {
      const auto cx = static_cast<std::size_t>(x);
      if (c != 0) s[cx] += (std::popcount(i & rev[cx]) & 1) ? -c : c;
      acc[cx] += s[cx];
      if (n >= n_lo) {
        const std::int64_t a = acc[cx] < 0 ? -acc[cx] : acc[cx];
        if (static_cast<__int128>(a) * best_den[cx] > static_cast<__int128>(best_num[cx]) * n) {
          best_num[cx] = a;
          best_den[cx] = n;
        }
      }
    }
    while (next < checkpoints.size() && checkpoints[next] == n) {
      snapshot();
      ++next;
    }
  }
  if (checkpoints.empty()) snapshot();
  return out;
}

}  // namespace walshsum
