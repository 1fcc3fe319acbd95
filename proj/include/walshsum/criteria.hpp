#pragma once

#include "walshsum/dyadic.hpp"
#include "walshsum/weights.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace walshsum {

enum class Verdict { bounded, divergent, inconclusive };

std::string_view to_string(Verdict v);

/// Summary statistics behind a verdict. All fits use the upper half
/// N in [ceil(Nmax/2), Nmax].
struct GrowthStats {
  double half_ratio = 0;        // B(Nmax) / B(ceil(Nmax/2))
  double log_slope = 0;         // least-squares slope of ln B(N)
  bool monotone_upper = false;  // B non-decreasing on the upper half
  // ln of the increments B(N) - B(N-1); present when they are all positive.
  std::optional<double> increment_slope;
  bool increments_nonpositive = false;
};

/// Deterministic verdict for a series B(1..Nmax).
///
/// First the plain rule: bounded when the half ratio is at most 1.05 and
/// the log slope at most 0.01; divergent when the log slope is at least
/// 0.05 and B is monotone on the upper half. Otherwise the increments
/// decide: all non-positive means bounded; all positive with ln-slope
/// <= -0.01 means geometric convergence (bounded), >= -0.005 means the
/// increments do not shrink (divergent).
Verdict classify_growth(const std::vector<Real>& series, GrowthStats* stats = nullptr);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct CriterionReport {
  std::string id;
  std::string weights;
  Rational p;
  int nmax = 0;
  std::vector<Scalar> series;  // B(1), ..., B(Nmax)
  std::vector<Scalar> running_sup;
  /// Aitken extrapolation of the last three terms; only set on a bounded
  /// verdict.
  std::optional<Scalar> limit_estimate;
  GrowthStats stats;
  Verdict verdict = Verdict::inconclusive;
  /// criterion_main only: verdict of the p = 1 series (L_inf boundedness).
  std::optional<Verdict> linf_verdict;
};

/// B_p(N) = 2^{N(1-p)} Q_{2^N}^{-p} sum_{j=1}^{N} Q_{2^j}^p 2^{j(p-1)} for
/// N = 1..Nmax and any p > 0. Exact for p = 1 when the prefix sums are.
CriterionReport criterion_series(const WeightSequence& q, const Rational& p, int nmax);

/// Same series restricted to 1/2 < p <= 1, Nmax >= 4.
CriterionReport criterion_main(const WeightSequence& q, const Rational& p, int nmax);

/// p = 1 series (1/Q_{2^N}) sum_{j=1}^{N} Q_{2^j}.
CriterionReport criterion_h1(const WeightSequence& q, int nmax);

/// (1/Q_n) sum_{k=1}^{|n|} Q_{2^k} for arbitrary n >= 1.
Scalar h1_general(const WeightSequence& q, std::uint64_t n);

/// (1/Q_n) sum_{k=1}^{|n|} |e_k(n) - e_{k+1}(n)| Q_{2^k}; n >= 2 and q
/// declared non-increasing.
Scalar gn2_rhs(const WeightSequence& q, const BinaryIndex& n);

struct RegularityReport {
  std::vector<Scalar> ratios;    // q_{n-1}/Q_n, n = 1..horizon
  std::vector<Scalar> tail_sup;  // sup_{m >= n} ratios within the horizon
  bool non_increasing = false;
};

RegularityReport regularity_check(const WeightSequence& q, std::uint64_t horizon);

struct DoublingReport {
  std::vector<Scalar> ratios;  // Q_{2^s} / 2^s, s = 0..nmax
  bool holds = true;
  std::optional<std::pair<int, int>> witness;  // (s, n) with Q_{2^n} > 2^{n-s} Q_{2^s}
};

/// Checks Q_{2^n} <= 2^{n-s} Q_{2^s} for all s <= n <= nmax.
DoublingReport q_doubling_check(const WeightSequence& q, int nmax);

}  // namespace walshsum
