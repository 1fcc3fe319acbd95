#include <doctest.h>

#include "support.hpp"
#include "walshsum/experiments.hpp"
#include "walshsum/kernels.hpp"
#include "walshsum/norms.hpp"

#include <set>

using namespace walshsum;
using walshsum::testing::q;

namespace {

ExperimentParams with_range(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi) {
  ExperimentParams p;
  p.nmin = lo;
  p.nmax = hi;
  return p;
}

const Series& series(const ExperimentReport& r, std::string_view name) {
  for (const auto& s : r.series)
    if (s.name == name) return s;
  FAIL("missing series " << name);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("catalog") {
  std::set<std::string> ids;
  for (const auto& e : experiment_catalog()) {
    CHECK_FALSE(e.statement.empty());
    CHECK_FALSE(e.defaults.empty());
    ids.insert(e.id);
  }
  for (const char* id : {"gn2-equivalence", "nobound", "half-counterexample", "threshold-scan", "kernel-sup-scaling",
                         "atom-quasilocality", "fejer-norm-scan", "exact-identities", "norm-formulas"})
    CHECK(ids.count(id) == 1);
  CHECK(ids.size() == experiment_catalog().size());
  CHECK_THROWS_AS(run_experiment("no-such-experiment", {}), DomainError);
}

TEST_CASE("report structure and provenance") {
  ExperimentParams p = with_range(std::nullopt, 8);
  p.config = {{"command", "experiment"}};
  const auto r = run_experiment("fejer-norm-scan", p);
  const auto j = r.to_json();
  for (const char* key : {"id", "statement", "parameters", "verdict", "passed", "rule", "constants", "constants_approx",
                          "checks_failed", "notes", "series", "provenance"})
    CHECK(j.contains(key));
  CHECK(j["id"] == "fejer-norm-scan");
  CHECK(j["provenance"]["config"] == p.config);
  CHECK(j["provenance"]["version"] == version());
  CHECK(j["provenance"]["backend"] == "exact-rational");
  CHECK(r.constant("max") == Scalar(q(21, 20)));
  CHECK_THROWS(r.constant("nope"));

  const auto csv = r.to_csv();
  CHECK(csv.rfind("series,index,value,bound\n", 0) == 0);
  CHECK(csv.find("K_n_L1,5,21/20,17/15\n") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  for (const char* id : {"fejer-norm-scan", "gn2-equivalence", "half-counterexample", "atom-quasilocality"}) {
    ExperimentParams p = with_range(std::nullopt, std::string_view(id) == "fejer-norm-scan" ? 64 : 5);
    if (std::string_view(id) == "half-counterexample") p.nmin = 3;
    if (std::string_view(id) == "atom-quasilocality") {
      p.nmin = 2;
      p.nmax = 3;
      p.atoms = 3;
    }
    if (std::string_view(id) == "gn2-equivalence") p.nmax = 31;
    REQUIRE(run_experiment(id, p).to_json().dump() == run_experiment(id, p).to_json().dump());
  }
}

TEST_CASE("fejer norm scan") {
  const auto r = fejer_norm_scan(256);
  CHECK(r.passed);
  const auto& s = series(r, "K_n_L1");
  REQUIRE(s.points.size() == 256);
  for (int i = 0; i < 3; ++i) CHECK(s.points[i].value == Scalar(1));
  for (const auto& pt : s.points) REQUIRE(!(pt.value > Scalar(q(17, 15))));
}

TEST_CASE("gn2 equivalence") {
  for (const auto& w : {WeightSequence::fejer(), WeightSequence::cesaro(q(1, 2)), WeightSequence::logarithmic()}) {
    const auto r = gn2_equivalence(w, 63, 31);
    CHECK(r.passed);
    CHECK(!(r.constant("window_spread") > Scalar(20)));
  }
  // fejer at n = 2^m: ||K_{2^m}||_1 / (3/2) for m >= 2
  const auto r = gn2_equivalence(WeightSequence::fejer(), 64, 32);
  for (const auto& pt : series(r, "ratio").points) {
    const auto n = mp::numerator(pt.index).convert_to<std::uint64_t>();
    if (n >= 4 && std::has_single_bit(n)) {
      REQUIRE(pt.value == Scalar(q(2, 3)) * lp_quasinorm(fejer(n, 6), Exponent{}).value);
      REQUIRE(!(pt.value < Scalar(q(2, 3))));
      REQUIRE(!(pt.value > Scalar(q(34, 45))));
    }
  }
  CHECK_THROWS_AS(gn2_equivalence(WeightSequence::fejer(), 1), DomainError);
}

TEST_CASE("nobound") {
  const auto r = nobound(WeightSequence::logarithmic(), 3);
  CHECK(r.checks_failed.empty());
  const auto& t = series(r, "t_norm");
  REQUIRE(t.points.size() == 3);
  for (std::size_t i = 1; i < t.points.size(); ++i) CHECK(t.points[i].value > t.points[i - 1].value);
  CHECK_THROWS_AS(nobound(WeightSequence::logarithmic(), 7), DomainError);
}

TEST_CASE("half counterexample") {
  const auto r = half_counterexample(WeightSequence::fejer(), 4, 8);
  CHECK(r.passed);
  CHECK(*r.slope > 0);
  const auto& s = series(r, "R");
  for (std::size_t i = 1; i < s.points.size(); ++i) CHECK(s.points[i].value > s.points[i - 1].value);
}

TEST_CASE("threshold scan") {
  const auto r = threshold_scan(WeightSequence::fejer(), {Rational(1, 2), Rational(11, 20), Rational(1)}, 24);
  CHECK(r.checks_failed.empty());
  CHECK(r.passed);
  CHECK(r.constant("bracket_lo") == Scalar(q(1, 2)));
  CHECK(r.constant("bracket_hi") == Scalar(q(11, 20)));
  CHECK_THROWS_AS(threshold_scan(WeightSequence::fejer(), {Rational(9, 20)}, 24), DomainError);
  CHECK_THROWS_AS(threshold_scan(WeightSequence::fejer(), {Rational(1)}, 10), DomainError);
}

TEST_CASE("kernel sup scaling at p = 1") {
  const auto r = kernel_sup_scaling({Rational(1)}, 1, 8);
  CHECK(r.checks_failed.empty());
  CHECK(r.passed);
}

TEST_CASE("atom quasi-locality runs and reports each level") {
  const auto r = atom_quasilocality(WeightSequence::fejer(), 1, 2, 3, 3, 1, 2);
  const auto& s = series(r, "level_max");
  CHECK(s.points.size() == 2);
  CHECK(r.constant("constant_atom") == Scalar(0));
  CHECK(r.parameters["atoms"] == 3);
}

TEST_CASE("norm formulas") {
  const auto r = norm_formulas(6);
  CHECK(r.passed);
  CHECK(r.constant("max_relative_error").to_double() < 1e-30);
}

TEST_CASE("exact identities with a small random count") {
  const auto r = exact_identities(3, 5);
  CHECK(r.passed);
  CHECK(r.checks_failed.empty());
}
