#include "walshsum/kernels.hpp"

#include "walshsum/errors.hpp"
#include "walshsum/transform.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace walshsum {

namespace {

void require_degree(std::uint64_t n, int resolution, const char* what) {
  check_resolution(resolution);
  if (n > (std::uint64_t{1} << resolution))
    throw DomainError(std::string(what) + "_" + std::to_string(n) + " is not exact at resolution " +
                      std::to_string(resolution));
}

StepFunction from_integers(const std::vector<std::int64_t>& cells, int resolution, std::int64_t divisor = 1) {
  ValueArray::Exact v(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) v[i] = Rational(cells[i], divisor);
  return StepFunction(resolution, ValueArray(std::move(v)));
}

inline int parity_sign(std::uint64_t x) { return (std::popcount(x) & 1) ? -1 : 1; }

// Synthesizes sum_i c_i w_i from a Scalar coefficient list of length 2^m.
StepFunction synthesize(std::vector<Scalar> coefficients, int m) {
  return from_coefficients(Spectrum(m, ValueArray::from_scalars(coefficients)));
}

// sum_{k=1}^{M-1} c[k] D_k with M = 2^m; coefficient of w_i is
// c[i+1] + ... + c[M-1].
StepFunction dirichlet_sum(const std::vector<Scalar>& c, int m) {
  const std::size_t size = std::size_t{1} << m;
  std::vector<Scalar> coef(size);
  Scalar tail;
  for (std::size_t i = size; i-- > 0;) {
    if (i + 1 < size) tail += c[i + 1];
    coef[i] = tail;
  }
  return synthesize(std::move(coef), m);
}

// sum_k b[k] k K_k for k = 1..size-1; coefficient of w_i is
// sum_{k>i} b[k] (k - i).
StepFunction fejer_sum(const std::vector<Scalar>& b, int m) {
  const std::size_t size = std::size_t{1} << m;
  std::vector<Scalar> coef(size);
  Scalar weighted, plain;
  for (std::size_t i = size; i-- > 0;) {
    if (i + 1 < size) {
      weighted += b[i + 1] * Scalar(static_cast<long long>(i + 1));
      plain += b[i + 1];
    }
    coef[i] = weighted - Scalar(static_cast<long long>(i)) * plain;
  }
  return synthesize(std::move(coef), m);
}

}  // namespace

StepFunction dirichlet(BinaryIndex n, int resolution) {
  require_degree(n.value(), resolution, "D");
  std::vector<std::int64_t> c(std::size_t{1} << resolution, 0);
  std::fill_n(c.begin(), n.value(), 1);
  return from_integers(synthesize_integer(std::move(c), resolution), resolution);
}

StepFunction fejer(std::uint64_t n, int resolution) {
  if (n == 0) throw DomainError("K_0 is undefined");
  require_degree(n, resolution, "K");
  std::vector<std::int64_t> c(std::size_t{1} << resolution, 0);
  for (std::uint64_t i = 0; i < n; ++i) c[i] = static_cast<std::int64_t>(n - i);
  return from_integers(synthesize_integer(std::move(c), resolution), resolution, static_cast<std::int64_t>(n));
}

Spectrum norlund_spectrum(const WeightSequence& q, std::uint64_t n, int resolution) {
  if (n == 0) throw DomainError("F_0 is undefined");
  require_degree(n, resolution, "F");
  const auto prefix = q.prefix_sums(n);
  if (prefix[n].is_zero()) throw DomainError("Q_n = 0");
  std::vector<Scalar> c(std::size_t{1} << resolution);
  for (std::uint64_t i = 0; i < n; ++i) c[i] = prefix[n - i] / prefix[n];
  return Spectrum(resolution, ValueArray::from_scalars(c));
}

StepFunction norlund_kernel(const WeightSequence& q, std::uint64_t n, int resolution) {
  return from_coefficients(norlund_spectrum(q, n, resolution));
}

StepFunction schipp_rhs(int n, int resolution) {
  check_resolution(resolution);
  if (n < 0 || n > resolution) throw DomainError("schipp_rhs needs 0 <= n <= N");
  const StepFunction d = dirichlet(std::uint64_t{1} << n, resolution);
  StepFunction sum = Scalar(pow2(-n)) * d;
  for (int j = 0; j <= n; ++j) sum = sum + Scalar(pow2(j - n)) * d.translated(DyadicPoint::basis(j));
  return Scalar(Rational(1, 2)) * sum;
}

KernelDecomposition gn1_decompose(const WeightSequence& q, BinaryIndex n, int resolution) {
  if (n.value() == 0) throw DomainError("gn1_decompose needs n >= 1");
  require_degree(n.value(), resolution, "F");
  const int res = std::max(resolution, n.order() + 1);
  const auto exps = n.exponents();
  const auto tails = n.tails();
  const Scalar qn = q.prefix_sum(n.value());
  const StepFunction wn = StepFunction::walsh(n.value(), res);

  KernelDecomposition out{norlund_kernel(q, n.value(), res),
                          StepFunction::constant(res, 0),
                          StepFunction::constant(res, 0),
                          StepFunction::constant(res, 0),
                          StepFunction::constant(res, 0),
                          n,
                          q.id()};

  for (std::size_t j = 1; j <= exps.size(); ++j) {
    const int m = exps[j - 1];
    const std::uint64_t big = std::uint64_t{1} << m;
    const std::uint64_t before = tails[j - 1], after = tails[j];

    // Q_{n^(j-1)} w_{2^{n_j}} D_{2^{n_j}}
    out.part1 = out.part1 + (q.prefix_sum(before) / qn) *
                                (wn * StepFunction::walsh(big, res) * dirichlet(big, m).refined(res));

    if (m == 0) continue;  // the inner sums over 1 <= k < 1 are empty
    const StepFunction sign = wn * StepFunction::walsh(before, res) * StepFunction::walsh(big - 1, res);
    const Scalar factor = Scalar(-1) / qn;

    std::vector<Scalar> c(big), b(big);
    for (std::uint64_t k = 1; k < big; ++k) c[k] = q.q(k + after);
    for (std::uint64_t k = 1; k + 1 < big; ++k) b[k] = c[k] - c[k + 1];
    out.part2 = out.part2 + factor * (sign * dirichlet_sum(c, m).refined(res));
    out.part2a = out.part2a + factor * (sign * fejer_sum(b, m).refined(res));
    // q_{n^(j-1)-1} (2^{n_j} - 1) K_{2^{n_j}-1}
    const StepFunction boundary = Scalar(static_cast<long long>(big - 1)) * fejer(big - 1, m);
    out.part2b = out.part2b + (factor * q.q(before - 1)) * (sign * boundary.refined(res));
  }
  return out;
}

Scalar integral_of_power(const std::vector<std::int64_t>& values, int resolution, const Rational& p) {
  std::map<std::int64_t, std::uint64_t> counts;
  for (auto v : values) {
    if (v < 0) throw DomainError("integral_of_power needs non-negative values");
    ++counts[v];
  }
  Scalar sum;
  if (p == 1) {
    Integer total = 0;
    for (auto [v, c] : counts) total += Integer(v) * c;
    sum = Scalar(Rational(total));
  } else {
    for (auto [v, c] : counts)
      if (v != 0) sum += Scalar(static_cast<long long>(c)) * pow(Scalar(static_cast<long long>(v)), p);
  }
  return sum * Scalar(pow2(-resolution));
}

KernelSup kernel_sup(int resolution, const Rational& p) {
  if (!(p > Rational(1, 2) && p <= 1)) throw DomainError("kernel_sup needs 1/2 < p <= 1");
  auto best = kernel_sup_values(resolution);
  Scalar integral = integral_of_power(best, resolution, p);
  return {from_integers(best, resolution), std::move(integral)};
}

std::vector<std::int64_t> kernel_sup_values(int resolution) {
  check_resolution(resolution);
  const std::int64_t cells = std::int64_t{1} << resolution;
  const std::uint64_t n_max = std::uint64_t{1} << resolution;
  std::vector<std::int64_t> best(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic, 16) if (cells >= 64)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const std::uint64_t rev = reverse_bits(static_cast<std::uint64_t>(cell), resolution);
    std::int64_t d = 0, s = 0, top = 0;
    for (std::uint64_t k = 0; k < n_max; ++k) {
      d += parity_sign(k & rev);
      s += d;
      top = std::max(top, s < 0 ? -s : s);
    }
    best[static_cast<std::size_t>(cell)] = top;
  }
  return best;
}

std::vector<std::vector<std::int64_t>> fejer_rows(int resolution) {
  check_resolution(resolution);
  const std::int64_t cells = std::int64_t{1} << resolution;
  const std::uint64_t n_max = std::uint64_t{1} << resolution;
  std::vector<std::vector<std::int64_t>> rows(n_max, std::vector<std::int64_t>(static_cast<std::size_t>(cells)));
#pragma omp parallel for schedule(static) if (cells >= 64)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const std::uint64_t rev = reverse_bits(static_cast<std::uint64_t>(cell), resolution);
    std::int64_t d = 0, s = 0;
    for (std::uint64_t k = 0; k < n_max; ++k) {
      d += parity_sign(k & rev);
      s += d;
      rows[k][static_cast<std::size_t>(cell)] = s;
    }
  }
  return rows;
}

std::vector<Rational> fejer_l1_norms(std::uint64_t n_max) {
  if (n_max == 0) return {};
  const int resolution = n_max == 1 ? 0 : std::bit_width(n_max - 1);
  check_resolution(resolution);
  const std::int64_t cells = std::int64_t{1} << resolution;
  std::vector<std::int64_t> totals(n_max, 0);
#pragma omp parallel if (cells >= 64)
  {
    std::vector<std::int64_t> local(n_max, 0);
#pragma omp for schedule(static)
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      const std::uint64_t rev = reverse_bits(static_cast<std::uint64_t>(cell), resolution);
      std::int64_t d = 0, s = 0;
      for (std::uint64_t k = 0; k < n_max; ++k) {
        d += parity_sign(k & rev);
        s += d;
        local[k] += s < 0 ? -s : s;
      }
    }
#pragma omp critical
    for (std::uint64_t k = 0; k < n_max; ++k) totals[k] += local[k];
  }
  std::vector<Rational> norms;
  norms.reserve(n_max);
  for (std::uint64_t k = 0; k < n_max; ++k)
    norms.push_back(Rational(totals[k]) * pow2(-resolution) / Rational(static_cast<long long>(k + 1)));
  return norms;
}

std::optional<Rational> fest_constant(std::uint64_t n_max, int resolution) {
  require_degree(n_max, resolution, "K");
  const std::int64_t cells = std::int64_t{1} << resolution;
  bool unbounded = false;
  // best = num / den, compared by cross multiplication
  std::int64_t best_num = 0, best_den = 1;
#pragma omp parallel if (cells >= 64)
  {
    std::int64_t num = 0, den = 1;
    bool inf = false;
#pragma omp for schedule(static)
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      const std::uint64_t rev = reverse_bits(static_cast<std::uint64_t>(cell), resolution);
      std::int64_t d = 0, s = 0, dyadic_sum = 0;
      for (std::uint64_t k = 0; k < n_max; ++k) {
        d += parity_sign(k & rev);
        s += d;
        const std::uint64_t n = k + 1;
        if (std::has_single_bit(n)) dyadic_sum += s;  // 2^s K_{2^s} >= 0
        const std::int64_t a = s < 0 ? -s : s;
        if (dyadic_sum == 0) {
          if (a != 0) inf = true;
          continue;
        }
        if (static_cast<__int128>(a) * den > static_cast<__int128>(num) * dyadic_sum) {
          num = a;
          den = dyadic_sum;
        }
      }
    }
#pragma omp critical
    {
      unbounded = unbounded || inf;
      if (static_cast<__int128>(num) * best_den > static_cast<__int128>(best_num) * den) {
        best_num = num;
        best_den = den;
      }
    }
  }
  if (unbounded) return std::nullopt;
  return Rational(best_num, best_den);
}

}  // namespace walshsum
