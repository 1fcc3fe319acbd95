#include "walshsum/criteria.hpp"

#include "walshsum/errors.hpp"

#include <cmath>

namespace walshsum {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded-evidence";
    case Verdict::divergent: return "divergent-evidence";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return 0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0 ? 0 : sxy / sxx;
}

Verdict classify_growth(const std::vector<Real>& series, GrowthStats* out) {
  GrowthStats st;
  const int nmax = static_cast<int>(series.size());
  if (nmax < 2) {
    if (out) *out = st;
    return Verdict::inconclusive;
  }
  const int lo = (nmax + 1) / 2;  // ceil(nmax / 2), 1-based
  auto at = [&](int n) -> const Real& { return series[static_cast<std::size_t>(n - 1)]; };

  st.half_ratio = static_cast<double>(at(nmax) / at(lo));
  std::vector<double> xs, ys;
  st.monotone_upper = true;
  for (int n = lo; n <= nmax; ++n) {
    xs.push_back(n);
    ys.push_back(static_cast<double>(mp::log(at(n))));
    if (n > lo && at(n) < at(n - 1)) st.monotone_upper = false;
  }
  st.log_slope = fit_slope(xs, ys);

  std::vector<double> dx, dy;
  bool all_pos = true;
  st.increments_nonpositive = true;
  for (int n = std::max(lo, 2); n <= nmax; ++n) {
    Real d = at(n) - at(n - 1);
    if (d.sign() > 0) {
      st.increments_nonpositive = false;
      dx.push_back(n);
      dy.push_back(static_cast<double>(mp::log(d)));
    } else {
      all_pos = false;
    }
  }
  if (all_pos && dx.size() >= 2) st.increment_slope = fit_slope(dx, dy);

  Verdict v = Verdict::inconclusive;
  if (st.half_ratio <= 1.05 && st.log_slope <= 0.01)
    v = Verdict::bounded;
  else if (st.log_slope >= 0.05 && st.monotone_upper)
    v = Verdict::divergent;
  else if (st.increments_nonpositive)
    v = Verdict::bounded;
  else if (st.increment_slope) {
    if (*st.increment_slope <= -0.01)
      v = Verdict::bounded;
    else if (*st.increment_slope >= -0.005)
      v = Verdict::divergent;
  }
  if (out) *out = st;
  return v;
}

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(const Real& x) {
    Real t = sum_ + x;
    if (mp::abs(sum_) >= mp::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = std::move(t);
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

Scalar aitken(const std::vector<Scalar>& s) {
  if (s.size() < 3) return s.empty() ? Scalar(0) : s.back();
  const Scalar& x0 = s[s.size() - 3];
  const Scalar& x1 = s[s.size() - 2];
  const Scalar& x2 = s[s.size() - 1];
  Scalar d1 = x2 - x1;
  Scalar denom = d1 - (x1 - x0);
  if (denom.is_zero()) return x2;
  return x2 - d1 * d1 / denom;
}

void finish(CriterionReport& r) {
  std::vector<Real> reals;
  Scalar sup;
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    sup = i == 0 ? r.series[0] : max(sup, r.series[i]);
    r.running_sup.push_back(sup);
    reals.push_back(r.series[i].real());
  }
  r.verdict = classify_growth(reals, &r.stats);
  if (r.verdict == Verdict::bounded) r.limit_estimate = aitken(r.series);
}

std::uint64_t dyadic(int j) {
  if (j < 0 || j > 62) throw DomainError("dyadic index 2^" + std::to_string(j) + " out of range");
  return std::uint64_t{1} << j;
}

}  // namespace

CriterionReport criterion_series(const WeightSequence& q, const Rational& p, int nmax) {
  if (p.sign() <= 0) throw DomainError("criterion exponent must be positive");
  if (nmax < 1) throw DomainError("criterion needs Nmax >= 1");
  CriterionReport r;
  r.id = "criterion-series";
  r.weights = q.id();
  r.p = p;
  r.nmax = nmax;

  bool exact = p == 1;
  std::vector<Scalar> prefix;
  if (exact) {
    for (int j = 1; j <= nmax && exact; ++j) {
      prefix.push_back(q.prefix_sum(dyadic(j)));
      exact = prefix.back().is_exact();
    }
  }
  if (exact) {
    Scalar acc;
    for (int n = 1; n <= nmax; ++n) {
      acc += prefix[static_cast<std::size_t>(n - 1)];
      r.series.push_back(acc / prefix[static_cast<std::size_t>(n - 1)]);
    }
  } else {
    const Real pr = to_real(p);
    const Real two(2);
    CompensatedSum acc;
    for (int n = 1; n <= nmax; ++n) {
      Real qp = mp::pow(q.prefix_sum_real(dyadic(n)), pr);
      Real scale = mp::pow(two, Real(n) * (pr - 1));
      acc.add(qp * scale);
      r.series.push_back(Scalar(Real(acc.value() / (qp * scale))));
    }
  }
  finish(r);
  return r;
}

CriterionReport criterion_main(const WeightSequence& q, const Rational& p, int nmax) {
  if (!(p > Rational(1, 2) && p <= 1))
    throw DomainError("criterion_main needs 1/2 < p <= 1; for 0 < p <= 1/2 the maximal operator is never bounded");
  if (nmax < 4) throw DomainError("criterion_main needs Nmax >= 4");
  CriterionReport r = criterion_series(q, p, nmax);
  r.id = "criterion-main";
  r.linf_verdict = p == 1 ? r.verdict : criterion_series(q, Rational(1), nmax).verdict;
  return r;
}

CriterionReport criterion_h1(const WeightSequence& q, int nmax) {
  if (nmax < 4) throw DomainError("criterion_h1 needs Nmax >= 4");
  CriterionReport r = criterion_series(q, Rational(1), nmax);
  r.id = "criterion-h1";
  return r;
}

Scalar h1_general(const WeightSequence& q, std::uint64_t n) {
  const int order = BinaryIndex(n).order();
  Scalar acc;
  for (int k = 1; k <= order; ++k) acc += q.prefix_sum(dyadic(k));
  return acc / q.prefix_sum(n);
}

Scalar gn2_rhs(const WeightSequence& q, const BinaryIndex& n) {
  if (!q.declared_non_increasing())
    throw DomainError("gn2_rhs needs weights declared non-increasing, " + q.id() + " is not");
  if (n.value() < 2) throw DomainError("gn2_rhs needs n >= 2");
  Scalar acc;
  for (int k = 1; k <= n.order(); ++k)
    if (n.bit(k) != n.bit(k + 1)) acc += q.prefix_sum(dyadic(k));
  return acc / q.prefix_sum(n.value());
}

RegularityReport regularity_check(const WeightSequence& q, std::uint64_t horizon) {
  if (horizon < 2) throw DomainError("regularity_check needs horizon >= 2");
  RegularityReport r;
  r.ratios.reserve(horizon);
  const auto prefix = q.prefix_sums(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) r.ratios.push_back(q.q(n - 1) / prefix[n]);
  r.tail_sup.resize(horizon);
  r.tail_sup[horizon - 1] = r.ratios[horizon - 1];
  for (std::uint64_t i = horizon - 1; i-- > 0;) r.tail_sup[i] = max(r.ratios[i], r.tail_sup[i + 1]);
  r.non_increasing = true;
  for (std::uint64_t i = 1; i < horizon; ++i)
    if (r.ratios[i] > r.ratios[i - 1]) r.non_increasing = false;
  return r;
}

DoublingReport q_doubling_check(const WeightSequence& q, int nmax) {
  if (!q.declared_non_increasing())
    throw DomainError("q_doubling_check needs weights declared non-increasing, " + q.id() + " is not");
  DoublingReport r;
  std::vector<Scalar> prefix;
  for (int s = 0; s <= nmax; ++s) {
    prefix.push_back(q.prefix_sum(dyadic(s)));
    r.ratios.push_back(prefix.back() / Scalar(pow2(s)));
  }
  for (int n = 0; n <= nmax && r.holds; ++n)
    for (int s = 0; s <= n; ++s)
      if (prefix[static_cast<std::size_t>(n)] > Scalar(pow2(n - s)) * prefix[static_cast<std::size_t>(s)]) {
        r.holds = false;
        r.witness = {s, n};
        break;
      }
  return r;
}

}  // namespace walshsum
