#include "walshsum/norms.hpp"

#include "walshsum/errors.hpp"

#include <algorithm>
#include <random>

namespace walshsum {

std::string NormValue::label() const {
  switch (kind) {
    case NormKind::lp: return "L" + p.str();
    case NormKind::weak_l1: return "weak-L1";
    case NormKind::hardy: return "H" + p.str();
    case NormKind::linf: return "Linf";
  }
  return "?";
}

Scalar lp_integral(const StepFunction& f, const Rational& p) {
  if (p.sign() <= 0) throw DomainError("L_p needs p > 0");
  const Scalar cell(pow2(-f.resolution()));
  if (f.is_exact()) {
    ValueArray::Exact v = f.values().exact();
    for (auto& x : v)
      if (x.sign() < 0) x = -x;
    std::sort(v.begin(), v.end());
    Scalar sum;
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      if (v[i].sign() != 0) sum += Scalar(static_cast<long long>(j - i)) * pow(Scalar(v[i]), p);
      i = j;
    }
    return sum * cell;
  }
  const auto v = f.values().to_reals();
  const Real pr = to_real(p);
  Real sum(0);
  for (const auto& x : v)
    if (x.sign() != 0) sum += mp::pow(Real(mp::abs(x)), pr);
  return Scalar(sum) * cell;
}

NormValue lp_quasinorm(const StepFunction& f, const Exponent& p) {
  if (p.infinite) return {NormKind::linf, p, f.sup_abs()};
  Scalar integral = lp_integral(f, p.value);
  return {NormKind::lp, p, p.value == 1 ? integral : pow(integral, Rational(1) / p.value)};
}

NormValue weak_l1_norm(const StepFunction& f) {
  const StepFunction g = f.abs();
  const std::size_t n = g.size();
  Scalar best;
  g.values().visit([&](const auto& v) {
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    // measure{|f| >= sorted[i]} = (n - i) cells for the first i of each run
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && sorted[i] == sorted[i - 1]) continue;
      best = max(best, Scalar(sorted[i]) * Scalar(static_cast<long long>(n - i)));
    }
  });
  return {NormKind::weak_l1, Exponent{Rational(1), false}, best * Scalar(pow2(-f.resolution()))};
}

StepFunction dyadic_maximal(const StepFunction& f) {
  const int res = f.resolution();
  return StepFunction(res, f.values().visit([res](const auto& v) {
    using V = std::decay_t<decltype(v[0])>;
    std::vector<V> out(v.size(), V(0));
    for (int level = 0; level <= res; ++level) {
      const std::size_t block = std::size_t{1} << (res - level);
      for (std::size_t start = 0; start < v.size(); start += block) {
        V sum(0);
        for (std::size_t i = start; i < start + block; ++i) sum += v[i];
        V avg = sum / V(static_cast<long long>(block));
        if (avg.sign() < 0) avg = -avg;
        for (std::size_t i = start; i < start + block; ++i)
          if (out[i] < avg) out[i] = avg;
      }
    }
    return ValueArray(std::move(out));
  }));
}

NormValue hardy_norm(const StepFunction& f, const Exponent& p) {
  NormValue v = lp_quasinorm(dyadic_maximal(f), p);
  v.kind = NormKind::hardy;
  return v;
}

PAtom haar_atom(const Rational& p, int level) {
  if (p.sign() <= 0 || p > 1) throw DomainError("atoms need 0 < p <= 1");
  const int res = level + 1;
  check_resolution(res);
  const Scalar c = pow(Scalar(2), Rational(level) / p);
  std::vector<Scalar> v(std::size_t{1} << res, Scalar(0));
  v[0] = c;
  v[1] = -c;
  return {p, DyadicInterval(level, 1), StepFunction(res, std::span<const Scalar>(v)), 0,
          "haar: +-2^(N/p) on the halves of I_N"};
}

PAtom constant_atom(const Rational& p, int resolution) {
  return {p, DyadicInterval::whole(), StepFunction::constant(resolution, 1), 0, "constant 1"};
}

PAtom make_p_atom(const Rational& p, int level, std::uint64_t seed, int extra) {
  if (p.sign() <= 0 || p > 1) throw DomainError("atoms need 0 < p <= 1");
  if (extra < 1) throw DomainError("atoms need at least one extra level");
  const int res = level + extra;
  check_resolution(res);
  const std::size_t cells = std::size_t{1} << extra;
  std::mt19937_64 gen(seed);
  std::vector<Rational> draw(cells);
  int attempts = 0;
  Rational peak = 0;
  do {
    ++attempts;
    Rational mean = 0;
    for (auto& d : draw) {
      d = Rational(static_cast<long long>(gen() % 2001) - 1000);
      mean += d;
    }
    mean /= static_cast<long long>(cells);
    peak = 0;
    for (auto& d : draw) {
      d -= mean;
      peak = std::max(peak, Rational(d.sign() < 0 ? Rational(-d) : d));
    }
  } while (peak.sign() == 0);
  // 2^{floor(N/p)} <= 2^{N/p}
  const long long bound_exp =
      (Integer(level) * mp::denominator(p) / mp::numerator(p)).convert_to<long long>();
  const Rational scale = pow2(bound_exp) / peak;
  ValueArray::Exact v(std::size_t{1} << res);
  for (std::size_t i = 0; i < cells; ++i) v[i] = draw[i] * scale;
  std::string trace = "mt19937_64 seed " + std::to_string(seed) + ", " + std::to_string(cells) +
                      " integer draws in [-1000, 1000] (" + std::to_string(attempts) +
                      " round(s)), mean removed, scaled to sup 2^" + std::to_string(bound_exp);
  return {p, DyadicInterval(level, 1), StepFunction(res, ValueArray(std::move(v))), seed, std::move(trace)};
}

std::string atom_violation(const PAtom& a) {
  const StepFunction& f = a.values;
  const int level = a.support.level();
  if (level > f.resolution()) return "support is finer than the sampled resolution";
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!a.support.contains_cell(i, f.resolution()) && !f[i].is_zero())
      return "nonzero value outside the support at cell " + std::to_string(i);

  const bool whole = level == 0 && !a.support.is_complement();
  const Scalar sup = f.sup_abs();
  if (whole && f == StepFunction::constant(f.resolution(), f[0]))
    return sup <= Scalar(1) ? "" : "constant atom exceeds 1";

  const Scalar mean = integrate(f);
  if (mean.is_exact()) {
    if (!mean.is_zero()) return "integral is " + mean.str() + ", not 0";
  } else if (abs(mean) > Scalar(Real("1e-30")) * max(sup, Scalar(1))) {
    return "integral is " + mean.str() + ", not 0";
  }

  // sup <= |I|^{-1/p} = 2^{N/p}
  if (sup.is_exact()) {
    const auto num = mp::numerator(a.p).convert_to<unsigned>();
    const Rational lhs = pow(sup, Rational(num)).exact();
    const Rational rhs = pow2((Integer(level) * mp::denominator(a.p)).convert_to<long long>());
    if (lhs > rhs) return "sup " + sup.str() + " exceeds 2^(N/p)";
  } else {
    const Real bound = mp::pow(Real(2), Real(level) / to_real(a.p));
    if (sup.real() > bound * (1 + Real("1e-30"))) return "sup " + sup.str() + " exceeds 2^(N/p)";
  }
  return "";
}

}  // namespace walshsum
