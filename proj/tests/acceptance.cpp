// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 when every criterion ran to completion; with --strict it
// is 1 when any criterion fails. An exception exits 2.

#include "walshsum/criteria.hpp"
#include "walshsum/errors.hpp"
#include "walshsum/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

using namespace walshsum;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> dumps;  // JSON of every report, for the determinism check

  void fail(const std::string& why) {
    pass = false;
    note(why);
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
  ExperimentReport keep(ExperimentReport r) {
    dumps.push_back(r.to_json().dump());
    return r;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const Series& series(const ExperimentReport& r, std::string_view name) {
  for (const auto& s : r.series)
    if (s.name == name) return s;
  throw InvariantError("report " + r.id + " has no series " + std::string(name));
}

Scalar value_at(const Series& s, long long index) {
  for (const auto& p : s.points)
    if (p.index == Rational(index)) return p.value;
  throw InvariantError("series " + s.name + " has no index " + std::to_string(index));
}

ExperimentParams params(std::optional<WeightSequence> w = std::nullopt) {
  ExperimentParams p;
  p.weights = std::move(w);
  return p;
}

std::vector<std::pair<std::string, WeightSequence>> three_families() {
  return {{"fejer", WeightSequence::fejer()},
          {"cesaro(1/2)", WeightSequence::cesaro(Scalar(Rational(1, 2)))},
          {"logarithmic", WeightSequence::logarithmic()}};
}

void require_passed(Outcome& o, const ExperimentReport& r, const std::string& tag) {
  if (!r.passed) {
    std::string why = tag + " failed";
    for (const auto& c : r.checks_failed) why += ": " + c;
    o.fail(why);
  }
}

Outcome exact_identities_criterion() {
  Outcome o;
  auto p = params();
  p.seed = 1;
  const auto r = o.keep(run_experiment("exact-identities", p));
  require_passed(o, r, "exact-identities");
  if (o.pass) o.note("all identities exact");
  return o;
}

Outcome norm_formulas_criterion() {
  Outcome o;
  auto p = params();
  p.nmax = 10;
  const auto r = o.keep(run_experiment("norm-formulas", p));
  require_passed(o, r, "norm-formulas");
  o.note("max relative error " + fmt(r.constant("max_relative_error").to_double()));
  return o;
}

Outcome fejer_constant_criterion() {
  Outcome o;
  auto p = params();
  p.nmax = 4096;
  const auto r = o.keep(run_experiment("fejer-norm-scan", p));
  require_passed(o, r, "fejer-norm-scan");
  if (r.constant("max") > Scalar(Rational(17, 15))) o.fail("max exceeds 17/15");
  o.note("max ||K_n||_1 = " + r.constant("max").str() + " at n = " + r.constant("argmax").str());
  return o;
}

Outcome gn2_criterion() {
  Outcome o;
  for (const auto& [name, w] : three_families()) {
    auto p = params(w);
    p.nmax = 255;
    const auto r = o.keep(run_experiment("gn2-equivalence", p));
    require_passed(o, r, name);
    if (r.parameters["reference_n_max"] != 127) o.fail(name + ": reference range is not n < 2^7");
    o.note(name + " spread " + fmt(r.constant("window_spread").to_double()));
  }
  return o;
}

Outcome threshold_criterion() {
  Outcome o;
  const std::vector<std::pair<std::pair<std::string, WeightSequence>, Rational>> cases{
      {three_families()[0], Rational(1, 2)}, {three_families()[1], Rational(2, 3)}};
  for (const auto& [fam, expected] : cases) {
    auto p = params(fam.second);
    p.nmax = 40;
    const auto r = o.keep(run_experiment("threshold-scan", p));
    const Scalar lo = r.constant("bracket_lo"), hi = r.constant("bracket_hi");
    const bool contains = !(Scalar(expected) < lo) && !(Scalar(expected) > hi);
    if (!contains) o.fail(fam.first + ": bracket misses " + expected.str());
    if (hi - lo > Scalar(Rational(1, 20))) o.fail(fam.first + ": bracket wider than 0.05");
    o.note(fam.first + " [" + lo.str() + ", " + hi.str() + "]");
  }
  const auto h1 = criterion_h1(WeightSequence::logarithmic(), 40);
  bool increasing = true;
  for (int n = 4; n <= 40; ++n)
    if (!(h1.series[n - 1] > h1.series[n - 2])) increasing = false;
  std::ostringstream series_dump;
  for (const auto& v : h1.series) series_dump << v.str() << ' ';
  o.dumps.push_back(series_dump.str());
  if (!increasing) o.fail("logarithmic h1 series not strictly increasing on [3, 40]");
  o.note("logarithmic h1 series strictly increasing: " + std::string(increasing ? "yes" : "no"));
  return o;
}

Outcome half_criterion() {
  Outcome o;
  auto p = params(WeightSequence::fejer());
  p.nmin = 4;
  p.nmax = 12;
  const auto r = o.keep(run_experiment("half-counterexample", p));
  require_passed(o, r, "half-counterexample");
  const auto& s = series(r, "R");
  const double ratio = (value_at(s, 12) / value_at(s, 6)).to_double();
  if (!r.slope || !(*r.slope > 0)) o.fail("slope not positive");
  if (ratio < 1.5 || ratio > 2.5) o.fail("R(12)/R(6) outside [1.5, 2.5]");
  o.note("slope " + fmt(r.slope.value_or(0)) + ", R(12)/R(6) " + fmt(ratio));
  return o;
}

Outcome kernel_sup_criterion() {
  Outcome o;
  ExperimentParams p;
  p.p_grid = {Rational(3, 5), Rational(3, 4), Rational(1)};
  p.nmin = 1;
  p.nmax = 12;
  const auto r = o.keep(run_experiment("kernel-sup-scaling", p));
  for (const auto& e : p.p_grid) {
    const auto& s = series(r, "p=" + e.str());
    Scalar lower, upper;
    for (long long n = 1; n <= 6; ++n) lower = max(lower, value_at(s, n));
    for (long long n = 7; n <= 12; ++n) upper = max(upper, value_at(s, n));
    const double ratio = (upper / lower).to_double();
    if (ratio > 1.2) o.fail("p=" + e.str() + " upper/lower " + fmt(ratio));
    else o.note("p=" + e.str() + " upper/lower " + fmt(ratio));
  }
  return o;
}

Outcome nobound_criterion() {
  Outcome o;
  for (const auto& [name, w] : three_families()) {
    auto p = params(w);
    p.nmax = 5;
    const auto r = o.keep(run_experiment("nobound", p));
    require_passed(o, r, name);
    if (name == "logarithmic" && !(r.constant("strictly_increasing") == Scalar(1)))
      o.fail("logarithmic series not strictly increasing in A");
  }
  if (o.pass) o.note("identities exact for three families; logarithmic series increasing");
  return o;
}

Outcome quasilocality_criterion() {
  Outcome o;
  auto p = params(WeightSequence::fejer());
  p.p = Rational(1);
  p.nmin = 2;
  p.nmax = 6;
  p.atoms = 20;
  p.delta = 4;
  p.seed = 1;
  const auto r = o.keep(run_experiment("atom-quasilocality", p));
  const auto& s = series(r, "level_max");
  Scalar lo = s.points.front().value, hi = lo;
  bool monotone = true;
  std::string levels;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    lo = std::min(lo, s.points[i].value, [](const Scalar& a, const Scalar& b) { return a < b; });
    hi = max(hi, s.points[i].value);
    if (i > 0 && !(s.points[i].value > s.points[i - 1].value)) monotone = false;
    levels += (i ? " " : "") + fmt(s.points[i].value.to_double());
  }
  const double spread = (hi / lo).to_double();
  if (!(spread < 3)) o.fail("spread " + fmt(spread) + " not below 3");
  if (monotone) o.fail("level maxima increase monotonically");
  o.note("level maxima " + levels + ", spread " + fmt(spread));
  return o;
}

using Criterion = std::function<Outcome()>;

const std::vector<std::pair<std::string, Criterion>>& criteria() {
  static const std::vector<std::pair<std::string, Criterion>> list{
      {"exact identities", exact_identities_criterion},
      {"norm formulas", norm_formulas_criterion},
      {"Fejer kernel L1 constant", fejer_constant_criterion},
      {"binary-digit norm equivalence", gn2_criterion},
      {"criterion thresholds", threshold_criterion},
      {"p < 1/2 growth rate", half_criterion},
      {"kernel sup scaling", kernel_sup_criterion},
      {"unbounded H1 mean identity", nobound_criterion},
      {"atom quasi-locality", quasilocality_criterion},
  };
  return list;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int index, const std::string& name, const Outcome& o, double secs) {
  std::cout << "criterion " << index << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail
            << "; " << fmt(secs) << " s)" << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--strict") {
      strict = true;
    } else {
      std::cerr << "usage: acceptance [--strict]\n";
      return 2;
    }
  }
  try {
    int failed = 0;
    std::vector<std::vector<std::string>> first;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      const Outcome o = criteria()[i].second();
      report(static_cast<int>(i) + 1, criteria()[i].first, o, seconds_since(t0));
      if (!o.pass) ++failed;
      first.push_back(o.dumps);
    }

    const auto t0 = std::chrono::steady_clock::now();
    Outcome det;
    for (std::size_t i = 0; i < criteria().size(); ++i)
      if (criteria()[i].second().dumps != first[i]) det.fail("criterion " + std::to_string(i + 1) + " reports differ");
    std::size_t count = 0;
    for (const auto& d : first) count += d.size();
    if (det.pass) det.note(std::to_string(count) + " reports byte-identical on rerun");
    report(10, "determinism", det, seconds_since(t0));
    if (!det.pass) ++failed;

    std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
    return strict && failed ? 1 : 0;
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
}
