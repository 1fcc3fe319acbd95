#include <doctest.h>

#include "support.hpp"
#include "walshsum/criteria.hpp"
#include "walshsum/weights.hpp"

#include <cstdio>
#include <fstream>

using namespace walshsum;
using walshsum::testing::q;

namespace {

Scalar term_sum(const WeightSequence& w, std::uint64_t n) {
  Scalar s;
  for (std::uint64_t k = 0; k < n; ++k) s += w.q(k);
  return s;
}

WeightSequence geometric(long long ratio_num, long long ratio_den, bool declared) {
  std::vector<Scalar> t;
  Scalar x = 1;
  for (int k = 0; k < 30; ++k) {
    t.push_back(x);
    x = x * q(ratio_num, ratio_den);
  }
  return WeightSequence::custom(t, declared, 0);
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& body) : path("walshsum_weights_test.txt") { std::ofstream(path) << body; }
  ~TempFile() { std::remove(path.c_str()); }
};

Verdict verdict_at(const WeightSequence& w, const Rational& p) {
  return p > Rational(1, 2) ? criterion_main(w, p, 40).verdict : criterion_series(w, p, 40).verdict;
}

}  // namespace

TEST_CASE("family examples") {
  const auto f = WeightSequence::fejer();
  CHECK(f.terms(4) == std::vector<Scalar>{1, 1, 1, 1});
  CHECK(f.prefix_sum(7) == Scalar(7));
  CHECK(f.prefix_sum(1024) == Scalar(1024));

  const auto c = WeightSequence::cesaro(q(1, 2));
  CHECK(c.q(0) == Scalar(1));
  CHECK(c.q(1) == Scalar(q(1, 2)));
  CHECK(c.q(2) == Scalar(q(3, 8)));
  CHECK(c.id() == "cesaro(1/2)");

  const auto l = WeightSequence::logarithmic();
  CHECK(l.q(0) == Scalar(1));
  CHECK(l.q(1) == Scalar(1));
  CHECK(l.q(2) == Scalar(q(1, 2)));
  CHECK(l.q(3) == Scalar(q(1, 3)));
  CHECK(l.prefix_sum(4) == Scalar(q(17, 6)));

  const auto h = geometric(1, 2, true);
  CHECK(h.prefix_sum(3) == Scalar(q(7, 4)));

  CHECK(WeightSequence::power(Scalar(0)).id() == l.id());
  CHECK(WeightSequence::power(q(1, 2)).q(4) == Scalar(q(1, 2)));
  CHECK_FALSE(WeightSequence::power(q(1, 2)).q(2).is_exact());
  CHECK(make_family("cesaro", Scalar(q(1, 3))).id() == "cesaro(1/3)");
}

TEST_CASE("family parameter ranges") {
  CHECK_THROWS_AS(WeightSequence::cesaro(Scalar(0)), DomainError);
  CHECK_THROWS_AS(WeightSequence::cesaro(Scalar(1)), DomainError);
  CHECK_THROWS_AS(WeightSequence::power(Scalar(1)), DomainError);
  CHECK_THROWS_AS(WeightSequence::power(Scalar(-1)), DomainError);
  CHECK_THROWS_AS(make_family("cesaro", std::nullopt), DomainError);
  CHECK_THROWS_AS(make_family("nope", std::nullopt), DomainError);
  CHECK_THROWS_AS(WeightSequence::custom(std::vector<Scalar>{0, 1}, false), DomainError);
  CHECK_THROWS_AS(WeightSequence::custom(std::vector<Scalar>{1, -1}, false), DomainError);
  // declared non-increasing but increasing: rejected by the spot check
  CHECK_THROWS_AS(WeightSequence::custom(std::vector<Scalar>{1, 2, 4}, true), DomainError);
}

TEST_CASE("cached prefix sums equal term-by-term sums") {
  for (const auto& w : {WeightSequence::fejer(), WeightSequence::cesaro(q(1, 2)), WeightSequence::cesaro(q(2, 3)),
                        WeightSequence::logarithmic()}) {
    CHECK(w.is_exact());
    Scalar s;
    for (std::uint64_t n = 1; n <= kExactHorizon; ++n) {
      s += w.q(n - 1);
      if (std::has_single_bit(n) || n % 997 == 0) REQUIRE(w.prefix_sum(n) == s);
    }
  }
  const auto p = WeightSequence::power(Scalar::parse("0.3"));
  CHECK_FALSE(p.is_exact());
  for (std::uint64_t n : {1, 2, 100, 4096, 16384}) {
    const Scalar direct = term_sum(p, n);
    REQUIRE(abs(p.prefix_sum(n) - direct).real() <= Real("1e-40") * direct.real());
  }
}

TEST_CASE("Cesaro prefix sums follow the binomial identity") {
  // Q_n = A_{n-1}^alpha with A_m^a = prod_{i=1}^{m} (a + i) / i
  const Rational a(1, 2);
  Rational binom = 1;
  const auto c = WeightSequence::cesaro(Scalar(a));
  for (std::uint64_t n = 1; n <= 200; ++n) {
    if (n > 1) binom = binom * (a + Rational(static_cast<long long>(n - 1))) / Rational(static_cast<long long>(n - 1));
    REQUIRE(c.prefix_sum(n) == Scalar(binom));
  }
}

TEST_CASE("closed forms agree with exact sums at the horizon") {
  for (const auto& w : {WeightSequence::cesaro(q(1, 2)), WeightSequence::cesaro(q(1, 5)), WeightSequence::logarithmic()}) {
    const Real exact = w.prefix_sum(kExactHorizon).real();
    const Real closed = w.prefix_sum_real(kExactHorizon);
    REQUIRE(mp::abs(exact - closed) <= Real("1e-40") * exact);
  }
  const auto p = WeightSequence::power(Scalar::parse("0.3"));
  const std::uint64_t far = 4 * kExactHorizon;
  const Scalar direct = term_sum(p, far);
  CHECK(mp::abs(p.prefix_sum_real(far) - direct.real()) <= Real("1e-35") * direct.real());
  const auto f = WeightSequence::fejer();
  CHECK(f.prefix_sum_real(std::uint64_t{1} << 40) == Real(std::uint64_t{1} << 40));
}

TEST_CASE("regularity") {
  const auto r = regularity_check(WeightSequence::fejer(), 1024);
  CHECK(r.ratios.back() == Scalar(q(1, 1024)));
  CHECK(r.non_increasing);
  const auto l = regularity_check(WeightSequence::logarithmic(), 256);
  CHECK(l.non_increasing);
  for (std::size_t i = 1; i < l.ratios.size(); ++i) REQUIRE(!(l.ratios[i] > l.ratios[i - 1]));
  const auto d = regularity_check(WeightSequence::custom(std::vector<Scalar>{1}, true), 64);
  CHECK(d.ratios[0] == Scalar(1));
  for (std::size_t i = 1; i < d.ratios.size(); ++i) REQUIRE(d.ratios[i].is_zero());
}

TEST_CASE("gn2 right-hand side") {
  const auto f = WeightSequence::fejer();
  CHECK(gn2_rhs(f, 13) == Scalar(q(10, 13)));
  for (int m = 1; m <= 12; ++m) {
    // k = m - 1 and k = m both see a bit change
    for (const auto& w : {f, WeightSequence::cesaro(q(1, 2)), WeightSequence::logarithmic()}) {
      const std::uint64_t n = std::uint64_t{1} << m;
      const Scalar expect = m == 1 ? Scalar(1) : Scalar(1) + w.prefix_sum(n / 2) / w.prefix_sum(n);
      REQUIRE(gn2_rhs(w, n) == expect);
    }
    if (m >= 2) REQUIRE(gn2_rhs(f, std::uint64_t{1} << m) == Scalar(q(3, 2)));
    const long long n = (1LL << m) - 1;
    if (n >= 2) REQUIRE(gn2_rhs(f, static_cast<std::uint64_t>(n)) == Scalar(q(1LL << (m - 1), n)));
  }
  CHECK_THROWS_AS(gn2_rhs(f, 1), DomainError);
  CHECK_THROWS_AS(gn2_rhs(geometric(1, 2, false), 5), DomainError);
}

TEST_CASE("general H1 expression") {
  CHECK(h1_general(WeightSequence::fejer(), 13) == Scalar(q(14, 13)));
  CHECK(h1_general(WeightSequence::fejer(), 8) == Scalar(q(14, 8)));
}

TEST_CASE("criterion series, fejer") {
  const auto f = WeightSequence::fejer();
  const auto r = criterion_main(f, 1, 30);
  for (int n = 1; n <= 30; ++n) REQUIRE(r.series[n - 1] == Scalar(2 - pow2(1 - n)));
  CHECK(r.running_sup.back() == Scalar(2 - pow2(-29)));
  CHECK(r.verdict == Verdict::bounded);
  CHECK(r.linf_verdict == Verdict::bounded);

  const auto half = criterion_series(f, Rational(1, 2), 40);
  for (int n = 1; n <= 40; ++n) REQUIRE(abs(half.series[n - 1] - Scalar(n)).to_double() < 1e-30);
  CHECK(half.verdict == Verdict::divergent);
  CHECK_THROWS_AS(criterion_main(f, Rational(1, 2), 40), DomainError);
  CHECK_THROWS_AS(criterion_main(f, Rational(2), 40), DomainError);
  CHECK_THROWS_AS(criterion_main(f, 1, 3), DomainError);
}

TEST_CASE("running supremum is monotone") {
  const auto r = criterion_main(WeightSequence::cesaro(q(1, 2)), Rational(7, 10), 40);
  for (std::size_t i = 1; i < r.running_sup.size(); ++i) REQUIRE(!(r.running_sup[i] < r.running_sup[i - 1]));
}

TEST_CASE("verdicts flip at the family thresholds") {
  const Rational eps(1, 20);
  CHECK(verdict_at(WeightSequence::fejer(), Rational(1, 2) + eps) == Verdict::bounded);
  CHECK(verdict_at(WeightSequence::fejer(), Rational(1, 2) - eps) == Verdict::divergent);
  for (const Rational& a : {Rational(1, 2), Rational(1, 4)}) {
    const Rational t = 1 / (1 + a);
    for (const auto& w : {WeightSequence::cesaro(Scalar(a)), WeightSequence::power(Scalar(a))}) {
      INFO(w.id());
      CHECK(verdict_at(w, t + eps) == Verdict::bounded);
      CHECK(verdict_at(w, t - eps) == Verdict::divergent);
    }
  }
  CHECK(criterion_main(WeightSequence::cesaro(q(1, 2)), Rational(7, 10), 40).verdict == Verdict::bounded);
  CHECK(criterion_main(WeightSequence::cesaro(q(1, 2)), Rational(3, 5), 40).verdict == Verdict::divergent);
  for (const Rational& p : {Rational(3, 5), Rational(4, 5), Rational(1)})
    CHECK(criterion_main(WeightSequence::logarithmic(), p, 40).verdict == Verdict::divergent);
}

TEST_CASE("H1 criterion") {
  const auto f = criterion_h1(WeightSequence::fejer(), 40);
  CHECK(f.verdict == Verdict::bounded);
  REQUIRE(f.limit_estimate.has_value());
  CHECK(*f.limit_estimate == Scalar(2));

  const auto l = criterion_h1(WeightSequence::logarithmic(), 40);
  CHECK(l.verdict == Verdict::divergent);
  CHECK_FALSE(l.limit_estimate.has_value());
  for (int n = 3; n < 40; ++n) REQUIRE(l.series[n] > l.series[n - 1]);

  const auto c = criterion_h1(WeightSequence::cesaro(q(1, 2)), 40);
  CHECK(c.verdict == Verdict::bounded);
  CHECK(c.running_sup.back().to_double() <= 1 / (1 - std::pow(2.0, -0.5)));
}

TEST_CASE("doubling chain") {
  const auto f = q_doubling_check(WeightSequence::fejer(), 14);
  CHECK(f.holds);
  for (const auto& r : f.ratios) REQUIRE(r == Scalar(1));
  const auto c = q_doubling_check(WeightSequence::cesaro(q(1, 2)), 14);
  CHECK(c.holds);
  for (std::size_t s = 1; s < c.ratios.size(); ++s) REQUIRE(c.ratios[s] < c.ratios[s - 1]);
  CHECK(q_doubling_check(WeightSequence::logarithmic(), 14).holds);
  CHECK(q_doubling_check(WeightSequence::power(Scalar::parse("0.3")), 14).holds);

  const auto bad = q_doubling_check(geometric(2, 1, true), 6);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->first < bad.witness->second);
  CHECK_THROWS_AS(q_doubling_check(geometric(2, 1, false), 6), DomainError);
}

TEST_CASE("growth classification") {
  std::vector<Real> flat(40, Real(3)), linear, geometric_limit;
  for (int n = 1; n <= 40; ++n) {
    linear.push_back(Real(n));
    geometric_limit.push_back(Real(2) - mp::pow(Real(2), Real(1 - n)));
  }
  CHECK(classify_growth(flat) == Verdict::bounded);
  CHECK(classify_growth(linear) == Verdict::divergent);
  GrowthStats st;
  CHECK(classify_growth(geometric_limit, &st) == Verdict::bounded);
  CHECK(st.half_ratio < 1.05);
  CHECK(fit_slope({1, 2, 3}, {2, 4, 6}) == doctest::Approx(2));
}

TEST_CASE("weights file") {
  {
    TempFile t("# halving weights\n0 1\n1 1/2\n2 0.25  # decimal\n3 1/8\n");
    const auto w = load_weights_file(t.path, true);
    CHECK(w.prefix_sum(4) == Scalar(q(15, 8)));
    CHECK(w.q(10).is_zero());
    CHECK(w.is_exact());
  }
  {
    TempFile t("1 1\n0 2\n");
    CHECK(load_weights_file(t.path, false).q(0) == Scalar(2));
  }
  {
    TempFile t("0 1\n0 2\n");
    CHECK_THROWS_AS(load_weights_file(t.path, false), DomainError);
  }
  {
    TempFile t("0 1\n2 2\n");
    CHECK_THROWS_AS(load_weights_file(t.path, false), DomainError);
  }
  {
    TempFile t("0 1 extra\n");
    CHECK_THROWS_AS(load_weights_file(t.path, false), DomainError);
  }
  CHECK_THROWS_AS(load_weights_file("/nonexistent/weights.txt", false), DomainError);
}
