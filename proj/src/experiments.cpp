#include "walshsum/experiments.hpp"

#include "walshsum/errors.hpp"
#include "walshsum/kernels.hpp"
#include "walshsum/means.hpp"
#include "walshsum/norms.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

#ifndef WALSHSUM_VERSION
#define WALSHSUM_VERSION "0.0.0"
#endif

namespace walshsum {

std::string version() { return WALSHSUM_VERSION; }

const Scalar& ExperimentReport::constant(std::string_view name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  throw DomainError("report " + id + " has no constant '" + std::string(name) + "'");
}

Series& ExperimentReport::add_series(std::string name) {
  series.push_back({std::move(name), {}});
  return series.back();
}

Backend ExperimentReport::backend() const {
  for (const auto& s : series)
    for (const auto& pt : s.points)
      if (!pt.value.is_exact() || (pt.bound && !pt.bound->is_exact())) return Backend::real;
  for (const auto& [k, v] : constants)
    if (!v.is_exact()) return Backend::real;
  return Backend::exact;
}

Json ExperimentReport::to_json() const {
  Json j;
  j["id"] = id;
  j["statement"] = statement;
  j["parameters"] = parameters;
  j["verdict"] = verdict;
  j["passed"] = passed;
  j["rule"] = rule;
  if (slope) j["fit"] = {{"method", fit}, {"slope", *slope}};
  Json c = Json::object();
  Json approx = Json::object();
  for (const auto& [k, v] : constants) {
    c[k] = v.str();
    approx[k] = v.to_double();
  }
  j["constants"] = c;
  j["constants_approx"] = approx;
  j["checks_failed"] = checks_failed;
  j["notes"] = notes;
  Json all = Json::array();
  for (const auto& s : series) {
    Json pts = Json::array();
    for (const auto& pt : s.points) {
      Json e = {{"index", pt.index.str()}, {"value", pt.value.str()}};
      if (pt.bound) e["bound"] = pt.bound->str();
      pts.push_back(std::move(e));
    }
    all.push_back({{"name", s.name}, {"points", std::move(pts)}});
  }
  j["series"] = std::move(all);
  j["provenance"] = provenance;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  const bool many = series.size() > 1;
  bool bounds = false;
  for (const auto& s : series)
    for (const auto& pt : s.points) bounds = bounds || pt.bound.has_value();
  out << (many ? "series," : "") << "index,value" << (bounds ? ",bound" : "") << '\n';
  for (const auto& s : series)
    for (const auto& pt : s.points) {
      if (many) out << s.name << ',';
      out << pt.index.str() << ',' << pt.value.str();
      if (bounds) out << ',' << (pt.bound ? pt.bound->str() : "");
      out << '\n';
    }
  return out.str();
}

void stamp_provenance(ExperimentReport& r, const Json& config, std::optional<std::uint64_t> seed) {
  r.provenance = Json::object();
  r.provenance["config"] = config;
  r.provenance["backend"] = std::string(to_string(r.backend()));
  r.provenance["precision_digits"] = working_digits();
  r.provenance["version"] = version();
  if (seed)
    r.provenance["seed"] = *seed;
  else
    r.provenance["seed"] = nullptr;
}

namespace {

Scalar as_scalar(bool b) { return Scalar(b ? 1 : 0); }

Scalar dyadic_scalar(long long e) { return Scalar(pow2(e)); }

// |a - b| <= tol |b|
bool rel_close(const Scalar& a, const Scalar& b, const char* tol = "1e-30") {
  if (a.is_exact() && b.is_exact()) return a == b;
  return abs(a - b).real() <= Real(tol) * mp::abs(b.real());
}

Scalar rel_error(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return abs(a - b) / abs(b);
  return Scalar(Real(mp::abs(a.real() - b.real()) / mp::abs(b.real())));
}

std::vector<Rational> default_grid() {
  std::vector<Rational> g;
  for (int k = 10; k <= 20; ++k) g.emplace_back(k, 20);
  return g;
}

StepFunction block_function(int n) {
  // f_n = D_{2^{n+1}} - D_{2^n}
  return dirichlet(std::uint64_t{2} << n, n + 1) - dirichlet(std::uint64_t{1} << n, n + 1);
}

void require(ExperimentReport& r, bool ok, const std::string& what) {
  if (!ok) r.checks_failed.push_back(what);
}

}  // namespace

ExperimentReport gn2_equivalence(const WeightSequence& q, std::uint64_t n_hi, std::uint64_t ref_hi, const Rational& pad,
                                 const Rational& cap) {
  if (!q.declared_non_increasing()) throw DomainError("gn2-equivalence needs non-increasing weights");
  if (n_hi < 2 || n_hi > 4096 || ref_hi < 2 || ref_hi > n_hi) throw DomainError("gn2-equivalence: bad index range");
  ExperimentReport r;
  r.id = "gn2-equivalence";
  r.statement = "||F_n||_1 ~ (1/Q_n) sum_k |e_k(n) - e_{k+1}(n)| Q_{2^k}";
  r.parameters = {{"weights", q.id()},
                  {"n_min", 2},
                  {"n_max", n_hi},
                  {"reference_n_max", ref_hi},
                  {"pad", pad.str()},
                  {"cap", cap.str()}};
  const int res = std::bit_width(n_hi - 1);
  q.prefix_sums(n_hi);

  const auto count = static_cast<std::int64_t>(n_hi - 1);
  std::vector<Scalar> norm(count), rhs(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t n = static_cast<std::uint64_t>(i) + 2;
    norm[i] = lp_integral(norlund_kernel(q, n, res), 1);
    rhs[i] = gn2_rhs(q, n);
  }

  auto& s = r.add_series("ratio");
  std::optional<Scalar> ref_min, ref_max, all_min, all_max;
  auto widen = [](std::optional<Scalar>& lo, std::optional<Scalar>& hi, const Scalar& v) {
    lo = lo ? std::min(*lo, v, [](const Scalar& a, const Scalar& b) { return a < b; }) : v;
    hi = hi ? max(*hi, v) : v;
  };
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t n = static_cast<std::uint64_t>(i) + 2;
    if (rhs[i].is_zero()) {
      require(r, norm[i].is_zero(), "gn2_rhs vanishes with nonzero norm at n=" + std::to_string(n));
      continue;
    }
    Scalar ratio = norm[i] / rhs[i];
    require(r, ratio > Scalar(0), "non-positive ratio at n=" + std::to_string(n));
    s.points.push_back({Rational(static_cast<long long>(n)), ratio, rhs[i]});
    widen(all_min, all_max, ratio);
    if (n <= ref_hi) widen(ref_min, ref_max, ratio);
  }
  if (!ref_min) throw DomainError("gn2-equivalence: empty reference range");
  const Scalar lo = *ref_min / Scalar(pad), hi = *ref_max * Scalar(pad);
  const Scalar spread = hi / lo;
  const bool raw_covers = !(*all_min < *ref_min) && !(*all_max > *ref_max);
  const bool covers = !(*all_min < lo) && !(*all_max > hi);
  r.constants = {{"reference_min", *ref_min}, {"reference_max", *ref_max}, {"min", *all_min},
                 {"max", *all_max},           {"window_lo", lo},         {"window_hi", hi},
                 {"window_spread", spread},   {"raw_window_covers", as_scalar(raw_covers)}};
  require(r, !(spread > Scalar(cap)), "window spread exceeds the cap");
  require(r, covers, "reference window does not cover the full range");
  if (!raw_covers) r.notes.push_back("unpadded reference range does not cover the doubled range");
  r.rule = "ratios positive; window [min/pad, max*pad] measured on n <= reference_n_max covers all n; spread <= cap";
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

ExperimentReport nobound(const WeightSequence& q, int a_max) {
  if (a_max < 1 || a_max > 6) throw DomainError("nobound needs 1 <= A <= 6");
  ExperimentReport r;
  r.id = "nobound";
  r.statement = "t_{m_A} f_A = (w_{2^|m_A|} / Q_{m_A}) sum_{k=1}^{q_A} q_{q_A-k} D_k with ||f_A||_H1 = 1";
  r.parameters = {{"weights", q.id()}, {"A_max", a_max}, {"m_A", "2^(2A) + 2^A"}};
  auto& lhs_series = r.add_series("t_norm");
  auto& kernel_series = r.add_series("F_qA_norm");
  bool increasing = true;
  std::optional<Scalar> prev;
  for (int a = 1; a <= a_max; ++a) {
    const int order = 2 * a;
    const std::uint64_t top = std::uint64_t{1} << order;
    const std::uint64_t qa = std::uint64_t{1} << a;
    const std::uint64_t m = top + qa;
    const int res = order + 1;
    const std::string tag = " at A=" + std::to_string(a);

    const StepFunction f = block_function(order);
    require(r, hardy_norm(f, Exponent{}).value == Scalar(1), "||f_A||_H1 != 1" + tag);

    StepFunction t;
    if (m <= 512) {
      t = norlund_mean(q, m, f);
    } else {
      t = norlund_mean_spectral(q, m, f);
      if (a == a_max) r.notes.push_back("m_A > 512 uses the coefficient route only");
    }

    // (w_{2^|m|} / Q_m) sum_{k=1}^{q_A} q_{q_A - k} D_k, built from Dirichlet kernels
    StepFunction sum = StepFunction::constant(res, 0);
    for (std::uint64_t k = 1; k <= qa; ++k) sum = sum + q.q(qa - k) * dirichlet(k, res);
    const Scalar qm = q.prefix_sum(m);
    const StepFunction formula = (Scalar(1) / qm) * (StepFunction::walsh(top, res) * sum);
    require(r, t == formula, "mean differs from the kernel formula" + tag);

    const Scalar lhs = lp_integral(t, 1);
    const Scalar kernel_norm = lp_integral(norlund_kernel(q, qa, a), 1);
    const Scalar rhs = q.prefix_sum(qa) / qm * kernel_norm;
    require(r, lhs == rhs, "||t||_1 != (Q_qA/Q_m) ||F_qA||_1" + tag);
    lhs_series.points.push_back({Rational(a), lhs, rhs});
    kernel_series.points.push_back({Rational(a), kernel_norm, std::nullopt});
    if (prev && !(lhs > *prev)) increasing = false;
    prev = lhs;
  }
  r.constants = {{"strictly_increasing", as_scalar(increasing)}};
  r.rule = "all identities exact; divergent-evidence when ||t_{m_A} f_A||_1 increases strictly in A";
  r.passed = r.checks_failed.empty();
  r.verdict = increasing && a_max >= 2 ? std::string(to_string(Verdict::divergent)) : "no-growth";
  return r;
}

ExperimentReport half_counterexample(const WeightSequence& q, int n_lo, int n_hi) {
  if (!q.declared_non_increasing()) throw DomainError("half-counterexample needs non-increasing weights");
  if (n_lo < 1 || n_hi > 12 || n_lo > n_hi) throw DomainError("half-counterexample needs 1 <= n_lo <= n_hi <= 12");
  ExperimentReport r;
  r.id = "half-counterexample";
  r.statement = "||sup_s |t_{2^n+2^s} f_n| ||_{1/2}^{1/2} / ||f_n||_{H_{1/2}}^{1/2} >= c n";
  r.parameters = {{"weights", q.id()}, {"n_min", n_lo}, {"n_max", n_hi}};
  const Rational half(1, 2);

  const DoublingReport doubling = q_doubling_check(q, n_hi);
  require(r, doubling.holds, "Q_{2^s}/2^s >= Q_{2^n}/2^n fails");

  auto& s = r.add_series("R");
  std::vector<double> xs, ys;
  for (int n = n_lo; n <= n_hi; ++n) {
    const int res = n + 1;
    const std::string tag = " at n=" + std::to_string(n);
    const StepFunction f = block_function(n);
    std::vector<std::uint64_t> idx;
    for (int k = 0; k < n; ++k) idx.push_back((std::uint64_t{1} << n) + (std::uint64_t{1} << k));
    const StepFunction sup = maximal_mean(q, idx, f);

    Scalar lower;
    for (int k = 0; k < n; ++k) {
      const std::uint64_t block = std::uint64_t{1} << k;
      Scalar inner;
      for (std::uint64_t j = 1; j <= block; ++j) inner += q.q(block - j) * Scalar(static_cast<long long>(j));
      const Scalar qm = q.prefix_sum(idx[static_cast<std::size_t>(k)]);
      // |t| on the shell I_k \ I_{k+1}
      const Scalar shell_value = abs(inner) / qm;
      const StepFunction t = norlund_mean_spectral(q, idx[static_cast<std::size_t>(k)], f);
      const std::uint64_t first = std::uint64_t{1} << (res - k - 1), last = std::uint64_t{1} << (res - k);
      bool shell_ok = true;
      for (std::uint64_t c = first; c < last; ++c) shell_ok = shell_ok && abs(t[c]) == shell_value;
      require(r, shell_ok, "shell value mismatch at s=" + std::to_string(k) + tag);
      lower += pow(shell_value, half) * dyadic_scalar(-(k + 1));
    }

    const Scalar integral = lp_integral(sup, half);
    const Scalar hardy = hardy_norm(f, Exponent{half, false}).value;
    require(r, rel_close(hardy, dyadic_scalar(-n)), "||f_n||_H1/2 != 2^-n" + tag);
    require(r, !(integral < lower), "shell lower bound exceeds the integral" + tag);
    const Scalar norm = pow(hardy, half);
    const Scalar ratio = integral / norm;
    s.points.push_back({Rational(n), ratio, lower / norm});
  }

  // Linear fits on the upper half, per the growth-fit convention.
  const std::size_t lo = s.points.size() / 2;
  for (std::size_t i = lo; i < s.points.size(); ++i) {
    xs.push_back(s.points[i].index.convert_to<double>());
    ys.push_back(s.points[i].value.to_double());
  }
  std::vector<double> all_x, all_y;
  for (const auto& pt : s.points) {
    all_x.push_back(pt.index.convert_to<double>());
    all_y.push_back(pt.value.to_double());
  }
  const double slope = fit_slope(xs, ys);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / static_cast<double>(xs.size());
    my += ys[i] / static_cast<double>(xs.size());
  }
  double residual = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    residual = std::max(residual, std::abs(ys[i] - (my + slope * (xs[i] - mx))) / ys[i]);
  r.slope = slope;
  r.fit = "linear least squares of R(n) on the upper half of the n range";
  r.constants = {{"full_range_slope", Scalar(Real(fit_slope(all_x, all_y)))},
                 {"max_relative_residual", Scalar(Real(residual))}};
  if (n_lo <= 6 && n_hi >= 12) {
    auto at = [&](int n) { return s.points[static_cast<std::size_t>(n - n_lo)].value; };
    r.constants.emplace_back("R12_over_R6", at(12) / at(6));
  }
  r.rule = "exact shell values, R(n) >= shell bound, slope > 0, max relative residual <= 0.1";
  r.passed = r.checks_failed.empty() && slope > 0 && residual <= 0.1;
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

ExperimentReport threshold_scan(const WeightSequence& q, std::vector<Rational> grid, int nmax) {
  if (grid.empty()) grid = default_grid();
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < Rational(1, 2) || grid.back() > 1) throw DomainError("threshold-scan grid must lie in [1/2, 1]");
  if (nmax < 20) throw DomainError("threshold-scan needs Nmax >= 20");
  ExperimentReport r;
  r.id = "threshold-scan";
  r.statement = "verdict flip of sup_N 2^{N(1-p)} Q_{2^N}^{-p} sum_j Q_{2^j}^p 2^{j(p-1)} as p varies";
  Json g = Json::array();
  for (const auto& p : grid) g.push_back(p.str());
  r.parameters = {{"weights", q.id()}, {"p_grid", g}, {"N_max", nmax}};

  auto& values = r.add_series("B_Nmax");
  auto& verdicts = r.add_series("verdict");
  std::optional<Rational> lo, hi;
  std::vector<Verdict> found;
  for (const auto& p : grid) {
    const CriterionReport c = p == Rational(1, 2) ? criterion_series(q, p, nmax) : criterion_main(q, p, nmax);
    values.points.push_back({p, c.series.back(), std::nullopt});
    const int code = c.verdict == Verdict::bounded ? 1 : c.verdict == Verdict::divergent ? -1 : 0;
    verdicts.points.push_back({p, Scalar(code), std::nullopt});
    found.push_back(c.verdict);
    if (c.verdict == Verdict::divergent) lo = p;
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (found[i] == Verdict::bounded && (!lo || grid[i] > *lo)) {
      hi = grid[i];
      break;
    }
  // No bounded verdict below a divergent one.
  bool monotone = true;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (found[i] == Verdict::bounded && lo && grid[i] < *lo) monotone = false;

  std::optional<Scalar> theory;
  if (q.family() == Family::fejer) theory = Scalar(Rational(1, 2));
  if (q.family() == Family::cesaro || q.family() == Family::power) theory = Scalar(1) / (Scalar(1) + *q.alpha());

  if (lo) r.constants.emplace_back("bracket_lo", Scalar(*lo));
  if (hi) r.constants.emplace_back("bracket_hi", Scalar(*hi));
  if (lo && hi) r.constants.emplace_back("bracket_width", Scalar(Rational(*hi - *lo)));
  if (theory) r.constants.emplace_back("threshold", *theory);
  require(r, monotone, "bounded verdict below a divergent one");
  if (theory) {
    require(r, lo && hi, "no verdict flip on the grid");
    if (lo && hi) require(r, !(Scalar(*lo) > *theory) && !(Scalar(*hi) < *theory), "bracket misses the threshold");
    r.rule = "verdicts monotone in p and the flip bracket [largest divergent p, next bounded p] contains the threshold";
  } else if (q.family() == Family::logarithmic) {
    require(r, std::all_of(found.begin(), found.end(), [](Verdict v) { return v == Verdict::divergent; }),
            "logarithmic weights should diverge for every p <= 1");
    r.rule = "divergent-evidence at every p";
  } else {
    r.rule = "verdicts monotone in p";
  }
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

ExperimentReport kernel_sup_scaling(std::vector<Rational> grid, int n_lo, int n_hi) {
  if (grid.empty()) grid = {Rational(3, 5), Rational(3, 4), Rational(1)};
  for (const auto& p : grid)
    if (!(p > Rational(1, 2) && p <= 1)) throw DomainError("kernel-sup-scaling needs 1/2 < p <= 1");
  if (n_lo < 0 || n_hi > 12 || n_lo + 1 >= n_hi) throw DomainError("kernel-sup-scaling needs 0 <= N_lo < N_hi <= 12");
  ExperimentReport r;
  r.id = "kernel-sup-scaling";
  r.statement = "integral of sup_{n <= 2^N} (n |K_n|)^p <= c_p 2^{N(2p-1)}";
  Json g = Json::array();
  for (const auto& p : grid) g.push_back(p.str());
  r.parameters = {{"p_grid", g}, {"N_min", n_lo}, {"N_max", n_hi}};

  std::vector<std::vector<std::int64_t>> sups;
  for (int n = n_lo; n <= n_hi; ++n) sups.push_back(kernel_sup_values(n));

  const int mid = (n_lo + n_hi + 1) / 2;
  for (const auto& p : grid) {
    auto& s = r.add_series("p=" + p.str());
    Scalar lower_max, upper_max;
    std::vector<double> xs, ys;
    for (int n = n_lo; n <= n_hi; ++n) {
      const Scalar integral = integral_of_power(sups[static_cast<std::size_t>(n - n_lo)], n, p);
      const Scalar ratio = integral / pow(Scalar(2), Rational(n) * (2 * p - 1));
      s.points.push_back({Rational(n), ratio, integral});
      if (n < mid)
        lower_max = max(lower_max, ratio);
      else {
        upper_max = max(upper_max, ratio);
        xs.push_back(n);
        ys.push_back(std::log(ratio.to_double()));
      }
    }
    r.constants.emplace_back("lower_max p=" + p.str(), lower_max);
    r.constants.emplace_back("upper_max p=" + p.str(), upper_max);
    r.constants.emplace_back("upper_log_slope p=" + p.str(), Scalar(Real(fit_slope(xs, ys))));
    // geometric tail estimate from the last three ratios
    const auto& pts = s.points;
    if (pts.size() >= 3) {
      const Scalar d1 = pts[pts.size() - 2].value - pts[pts.size() - 3].value;
      const Scalar d2 = pts.back().value - pts[pts.size() - 2].value;
      if (d1.sign() > 0 && d2.sign() > 0 && d2 < d1) {
        const Scalar rho = d2 / d1;
        r.constants.emplace_back("increment_ratio p=" + p.str(), rho);
        r.constants.emplace_back("extrapolated_limit p=" + p.str(), pts.back().value + d2 * rho / (Scalar(1) - rho));
      }
    }
    require(r, !(upper_max > Scalar(Rational(6, 5)) * lower_max), "upward trend at p=" + p.str());
  }
  r.rule = "for each p: max ratio over the upper half of N <= 1.2 x max over the lower half";
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

namespace {

std::uint64_t atom_seed(std::uint64_t seed, int level, int i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(i)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

// Integrals over the complement of I_N of (sup_{N < n <= 2^{N+d}} |t_n a|)^p, d = 1..delta.
std::vector<Scalar> quasilocal_integrals(const WeightSequence& q, const PAtom& a, const Rational& p, int delta) {
  const int level = a.support.level();
  const std::uint64_t n_lo = static_cast<std::uint64_t>(level) + 1;
  std::vector<std::uint64_t> marks;
  for (int d = 1; d <= delta; ++d) marks.push_back(std::uint64_t{1} << (level + d));
  std::vector<StepFunction> sups;
  if (q.family() == Family::fejer && a.values.is_exact()) {
    sups = fejer_maximal_range(a.values, n_lo, marks.back(), marks);
  } else {
    std::uint64_t from = n_lo;
    for (auto mark : marks) {
      std::vector<std::uint64_t> idx;
      for (std::uint64_t n = from; n <= mark; ++n) idx.push_back(n);
      StepFunction part = maximal_mean(q, idx, a.values.refined(std::max(a.values.resolution(), level + delta)));
      sups.push_back(sups.empty() ? part : pointwise_max(sups.back(), part));
      from = mark + 1;
    }
  }
  std::vector<Scalar> out;
  const DyadicInterval off = a.support.complement();
  for (const auto& s : sups) {
    const StepFunction outside = s * StepFunction::indicator(off, s.resolution());
    out.push_back(lp_integral(outside, p));
  }
  return out;
}

}  // namespace

ExperimentReport atom_quasilocality(const WeightSequence& q, const Rational& p, int level_lo, int level_hi, int atoms,
                                    std::uint64_t seed, int delta) {
  if (level_lo < 1 || level_hi > 10 || level_lo > level_hi) throw DomainError("atom-quasilocality: bad level range");
  if (atoms < 1 || delta < 1 || delta > 6) throw DomainError("atom-quasilocality: bad atom count or delta");
  const CriterionReport gate = criterion_main(q, p, 40);
  if (gate.verdict != Verdict::bounded)
    throw DomainError("atom-quasilocality refuses: " + q.id() + " at p=" + p.str() +
                      " does not show bounded evidence for the maximal-operator criterion");
  ExperimentReport r;
  r.id = "atom-quasilocality";
  r.statement = "integral over the complement of I_N of (sup_{n>N} |a * F_n|)^p <= c_p";
  r.parameters = {{"weights", q.id()}, {"p", p.str()},  {"level_min", level_lo}, {"level_max", level_hi},
                  {"atoms", atoms},    {"seed", seed},  {"delta", delta},        {"atom_extra_levels", 3}};
  r.notes.push_back("sup over n is truncated to N < n <= 2^(N+delta)");
  r.notes.push_back("atom seeds: seed_seq(seed, level, i) for i = 0..atoms-1");

  auto& s = r.add_series("level_max");
  std::vector<Series> by_delta(static_cast<std::size_t>(delta - 1));
  for (int d = 1; d < delta; ++d) by_delta[static_cast<std::size_t>(d - 1)].name = "level_max_delta=" + std::to_string(d);
  for (int level = level_lo; level <= level_hi; ++level) {
    std::vector<Scalar> best(static_cast<std::size_t>(delta));
    for (int i = 0; i < atoms; ++i) {
      const PAtom a = make_p_atom(p, level, atom_seed(seed, level, i));
      const std::string why = atom_violation(a);
      require(r, why.empty(), "invalid atom at level " + std::to_string(level) + ": " + why);
      const auto vals = quasilocal_integrals(q, a, p, delta);
      for (std::size_t d = 0; d < vals.size(); ++d) best[d] = max(best[d], vals[d]);
    }
    s.points.push_back({Rational(level), best.back(), std::nullopt});
    for (int d = 1; d < delta; ++d)
      by_delta[static_cast<std::size_t>(d - 1)].points.push_back({Rational(level), best[static_cast<std::size_t>(d - 1)], std::nullopt});
  }
  for (auto& b : by_delta) r.series.push_back(std::move(b));

  // Reference atoms.
  if (level_lo <= 3 && 3 <= level_hi) {
    const PAtom haar = haar_atom(p, 3);
    r.constants.emplace_back("haar_atom_level3", quasilocal_integrals(q, haar, p, delta).back());
  }
  {
    // t_n 1 = 1 and the complement of [0, 1) is empty.
    const PAtom one = constant_atom(p);
    const Scalar outside = integrate(norlund_mean(q, 1, one.values), one.support.complement());
    r.constants.emplace_back("constant_atom", outside);
    require(r, outside.is_zero(), "constant atom contributes off its support");
  }

  Scalar lo = s.points.front().value, hi = lo;
  bool increasing = s.points.size() > 1;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const Scalar& v = s.points[i].value;
    lo = v < lo ? v : lo;
    hi = max(hi, v);
    if (i > 0 && !(v > s.points[i - 1].value)) increasing = false;
  }
  require(r, lo > Scalar(0), "a level maximum vanishes");
  const Scalar spread = lo > Scalar(0) ? hi / lo : Scalar(0);
  r.constants.emplace_back("level_max_min", lo);
  r.constants.emplace_back("level_max_max", hi);
  r.constants.emplace_back("level_spread", spread);
  require(r, lo > Scalar(0) && spread < Scalar(3), "per-level maxima vary by a factor >= 3");
  require(r, !increasing, "per-level maxima increase monotonically");
  r.rule = "per-level maxima vary by less than a factor 3 and do not increase monotonically with N";
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

ExperimentReport fejer_norm_scan(std::uint64_t n_max) {
  if (n_max < 1 || n_max > 4096) throw DomainError("fejer-norm-scan needs 1 <= n_max <= 4096");
  ExperimentReport r;
  r.id = "fejer-norm-scan";
  r.statement = "||K_n||_1 <= 17/15";
  r.parameters = {{"n_max", n_max}};
  const Rational bound(17, 15);
  const auto norms = fejer_l1_norms(n_max);
  auto& s = r.add_series("K_n_L1");
  auto& d = r.add_series("K_2^m_L1");
  std::size_t arg = 0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    s.points.push_back({Rational(static_cast<long long>(i + 1)), Scalar(norms[i]), Scalar(bound)});
    if (norms[i] > norms[arg]) arg = i;
    if (std::has_single_bit(i + 1))
      d.points.push_back({Rational(std::countr_zero(i + 1)), Scalar(norms[i]), std::nullopt});
  }
  r.constants = {{"max", Scalar(norms[arg])}, {"argmax", Scalar(static_cast<long long>(arg + 1))}};
  require(r, norms[arg] <= bound, "max ||K_n||_1 exceeds 17/15");
  r.rule = "max over n <= n_max of ||K_n||_1 <= 17/15, exact";
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

ExperimentReport exact_identities(std::uint64_t seed, int random_count) {
  ExperimentReport r;
  r.id = "exact-identities";
  r.statement = "D_{2^n} = 2^n 1_{I_n}; K_{2^n} equals its shifted-Dirichlet expansion; F_n splits exactly";
  r.parameters = {{"dirichlet_n_max", 12}, {"shift_n_max", 10}, {"split_weights", {"fejer", "cesaro(1/2)"}}, {"split_exhaustive_below", 64},
                  {"split_random", random_count}, {"split_random_below", 1024}, {"seed", seed}};

  auto& dir = r.add_series("dirichlet");
  for (int n = 0; n <= 12; ++n) {
    const bool ok = dirichlet(std::uint64_t{1} << n, 12) ==
                    Scalar(pow2(n)) * StepFunction::indicator(DyadicInterval(n, 1), 12);
    dir.points.push_back({Rational(n), as_scalar(ok), std::nullopt});
    require(r, ok, "D_{2^n} formula at n=" + std::to_string(n));
  }
  auto& sw = r.add_series("shifted_dirichlet");
  for (int n = 0; n <= 10; ++n) {
    const bool ok = schipp_rhs(n, 10) == fejer(std::uint64_t{1} << n, 10);
    sw.points.push_back({Rational(n), as_scalar(ok), std::nullopt});
    require(r, ok, "K_{2^n} expansion at n=" + std::to_string(n));
  }

  std::set<std::uint64_t> indices;
  for (std::uint64_t n = 1; n < 64; ++n) indices.insert(n);
  std::mt19937_64 gen(seed);
  for (int i = 0; i < random_count; ++i) indices.insert(gen() % 1023 + 1);
  const std::vector<std::uint64_t> ns(indices.begin(), indices.end());
  r.constants.emplace_back("split_indices", Scalar(static_cast<long long>(ns.size())));

  for (const auto& q : {WeightSequence::fejer(), WeightSequence::cesaro(Scalar(Rational(1, 2)))}) {
    q.prefix_sums(1024);
    auto& s = r.add_series("split " + q.id());
    std::vector<int> ok1(ns.size()), ok2(ns.size());
    const auto count = static_cast<std::int64_t>(ns.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto d = gn1_decompose(q, ns[static_cast<std::size_t>(i)], 10);
      ok1[static_cast<std::size_t>(i)] = d.whole == d.part1 + d.part2;
      ok2[static_cast<std::size_t>(i)] = d.part2 == d.part2a + d.part2b;
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
      s.points.push_back({Rational(static_cast<long long>(ns[i])), as_scalar(ok1[i] && ok2[i]), std::nullopt});
      require(r, ok1[i], "F_n = F_n1 + F_n2 fails for " + q.id() + " at n=" + std::to_string(ns[i]));
      require(r, ok2[i], "F_n2 = F_n2a + F_n2b fails for " + q.id() + " at n=" + std::to_string(ns[i]));
    }
  }
  r.rule = "every identity holds exactly";
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

ExperimentReport norm_formulas(int n_max) {
  if (n_max < 0 || n_max > 16) throw DomainError("norm-formulas needs 0 <= n_max <= 16");
  ExperimentReport r;
  r.id = "norm-formulas";
  r.statement = "||D_{2^n}||_p = 2^{n(1-1/p)}; ||D_{2^{n+1}} - D_{2^n}||_{H_p} = 2^{n(1-1/p)}";
  r.parameters = {{"n_max", n_max}, {"p", {"1", "1/2", "3/4"}}, {"relative_tolerance", "1e-30"}};
  Scalar worst;
  for (const Rational& p : {Rational(1), Rational(1, 2), Rational(3, 4)}) {
    auto& s = r.add_series("D_L" + p.str());
    for (int n = 0; n <= n_max; ++n) {
      const Scalar value = lp_quasinorm(dirichlet(std::uint64_t{1} << n, n), Exponent{p, false}).value;
      const Rational e = Rational(n) * (1 - 1 / p);
      const Scalar expected = mp::denominator(e) == 1
                                  ? dyadic_scalar(mp::numerator(e).convert_to<long long>())
                                  : Scalar(Real(mp::pow(Real(2), to_real(e))));
      s.points.push_back({Rational(n), value, expected});
      if (p == 1) {
        require(r, value.is_exact() && value == expected, "||D_{2^n}||_1 not exactly 1 at n=" + std::to_string(n));
      } else {
        const Scalar err = rel_error(value, expected);
        worst = max(worst, err);
        require(r, !(err > Scalar(Real("1e-30"))),
                "||D_{2^n}||_" + p.str() + " off by more than 1e-30 at n=" + std::to_string(n));
      }
    }
  }
  auto& h = r.add_series("f_H1");
  for (int n = 0; n <= n_max; ++n) {
    const Scalar value = hardy_norm(block_function(n), Exponent{}).value;
    h.points.push_back({Rational(n), value, Scalar(1)});
    require(r, value.is_exact() && value == Scalar(1), "||f_n||_H1 != 1 at n=" + std::to_string(n));
  }
  r.constants = {{"max_relative_error", worst}};
  r.rule = "exact at p = 1 and for the H1 norm; relative error <= 1e-30 otherwise";
  r.passed = r.checks_failed.empty();
  r.verdict = r.passed ? "pass" : "fail";
  return r;
}

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog{
      {"gn2-equivalence", "||F_n||_1 ~ (1/Q_n) sum_k |e_k(n) - e_{k+1}(n)| Q_{2^k}",
       "--weights fejer, n in [2, 255], reference n <= 127, pad 2, cap 20"},
      {"nobound", "t_{m_A} is unbounded from H_1 to L_1 when the H_1 criterion fails",
       "--weights logarithmic, A = 1..5, m_A = 2^(2A) + 2^A"},
      {"half-counterexample", "the maximal operator is unbounded from H_p to L_p for p <= 1/2",
       "--weights fejer, n in [4, 12]"},
      {"threshold-scan", "boundedness threshold in p (1/2 Fejer, 1/(1+alpha) Cesaro and power)",
       "--weights fejer, p = 0.50, 0.55, ..., 1.00, Nmax 40"},
      {"kernel-sup-scaling", "integral of sup_{n <= 2^N} (n |K_n|)^p <= c_p 2^{N(2p-1)}",
       "p in {3/5, 3/4, 1}, N in [1, 12]"},
      {"atom-quasilocality", "integral off I_N of (sup_{n>N} |a * F_n|)^p <= c_p for p-atoms a",
       "--weights fejer, p 1, levels 2..6, 20 atoms, delta 4, seed 1"},
      {"fejer-norm-scan", "||K_n||_1 <= 17/15", "n_max 4096"},
      {"exact-identities", "D_{2^n} = 2^n 1_{I_n}, shifted-Dirichlet form of K_{2^n}, exact splitting of F_n",
       "Dirichlet n <= 12, shifts n <= 10, fejer and cesaro(1/2) splits for n < 64 plus 200 random n < 1024, seed 1"},
      {"norm-formulas", "||D_{2^n}||_p = 2^{n(1-1/p)} and ||f_n||_{H_1} = 1", "n <= 10, p in {1, 1/2, 3/4}"},
  };
  return catalog;
}

ExperimentReport run_experiment(std::string_view id, const ExperimentParams& params) {
  const WeightSequence fejer_weights = WeightSequence::fejer();
  auto weights = [&](const WeightSequence& fallback) { return params.weights ? *params.weights : fallback; };
  auto nmax = [&](std::int64_t fallback) { return params.nmax ? *params.nmax : fallback; };
  auto nmin = [&](std::int64_t fallback) { return params.nmin ? *params.nmin : fallback; };
  const std::uint64_t seed = params.seed ? *params.seed : 1;
  std::optional<std::uint64_t> used_seed;

  ExperimentReport r;
  if (id == "gn2-equivalence") {
    const auto hi = static_cast<std::uint64_t>(nmax(255));
    r = gn2_equivalence(weights(fejer_weights), hi, std::max<std::uint64_t>(2, (hi + 1) / 2 - 1));
  } else if (id == "nobound") {
    r = nobound(weights(WeightSequence::logarithmic()), static_cast<int>(nmax(5)));
  } else if (id == "half-counterexample") {
    r = half_counterexample(weights(fejer_weights), static_cast<int>(nmin(4)), static_cast<int>(nmax(12)));
  } else if (id == "threshold-scan") {
    std::vector<Rational> grid = params.p_grid;
    if (grid.empty() && params.p) grid = {*params.p};
    r = threshold_scan(weights(fejer_weights), grid, static_cast<int>(nmax(40)));
  } else if (id == "kernel-sup-scaling") {
    std::vector<Rational> grid = params.p_grid;
    if (grid.empty() && params.p) grid = {*params.p};
    r = kernel_sup_scaling(grid, static_cast<int>(nmin(1)), static_cast<int>(nmax(12)));
  } else if (id == "atom-quasilocality") {
    used_seed = seed;
    r = atom_quasilocality(weights(fejer_weights), params.p ? *params.p : Rational(1), static_cast<int>(nmin(2)),
                           static_cast<int>(nmax(6)), params.atoms ? *params.atoms : 20, seed,
                           params.delta ? *params.delta : 4);
  } else if (id == "fejer-norm-scan") {
    r = fejer_norm_scan(static_cast<std::uint64_t>(nmax(4096)));
  } else if (id == "exact-identities") {
    used_seed = seed;
    r = exact_identities(seed);
  } else if (id == "norm-formulas") {
    r = norm_formulas(static_cast<int>(nmax(10)));
  } else {
    throw DomainError("unknown experiment '" + std::string(id) + "'");
  }
  stamp_provenance(r, params.config, used_seed);
  return r;
}

}  // namespace walshsum
