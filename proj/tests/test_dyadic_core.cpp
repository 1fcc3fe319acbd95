#include <doctest.h>

#include "support.hpp"
#include "walshsum/dyadic.hpp"
#include "walshsum/serial.hpp"
#include "walshsum/serialize.hpp"
#include "walshsum/transform.hpp"

#include <random>

using namespace walshsum;
using walshsum::testing::q;
using walshsum::testing::quarters;
using walshsum::testing::random_function;

namespace {

DyadicPoint pt(long long a, long long b) { return DyadicPoint::from_rational(Rational(a, b)); }

std::vector<Scalar> as_scalars(const Spectrum& s) {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s[i]);
  return out;
}

}  // namespace

TEST_CASE("binary index bookkeeping") {
  BinaryIndex n(13);
  CHECK(n.order() == 3);
  CHECK(n.popcount() == 3);
  CHECK(n.exponents() == std::vector<int>{3, 2, 0});
  CHECK(n.tails() == std::vector<std::uint64_t>{13, 5, 1, 0});
  CHECK(n.bits() == std::vector<int>{1, 0, 1, 1});
  CHECK_THROWS_AS(BinaryIndex(0).order(), DomainError);

  for (std::uint64_t k = 1; k < 5000; ++k) {
    BinaryIndex b(k);
    std::uint64_t sum = 0;
    const auto bits = b.bits();
    for (std::size_t j = 0; j < bits.size(); ++j) sum += std::uint64_t(bits[j]) << j;
    REQUIRE(sum == k);
    REQUIRE((std::uint64_t{1} << b.order()) <= k);
    REQUIRE(k < (std::uint64_t{2} << b.order()));
    const auto t = b.tails();
    REQUIRE(t.size() == static_cast<std::size_t>(b.popcount()) + 1);
    for (std::size_t i = 1; i < t.size(); ++i) REQUIRE(t[i] < t[i - 1]);
    REQUIRE(t.back() == 0);
  }
}

TEST_CASE("dyadic addition") {
  CHECK(dyadic_add(pt(1, 2), pt(1, 2)) == DyadicPoint());
  CHECK(dyadic_add(pt(1, 2), pt(1, 4)).value() == Rational(3, 4));
  CHECK(dyadic_add(pt(3, 4), pt(1, 4)).value() == Rational(1, 2));
  CHECK(DyadicPoint::basis(0).value() == Rational(1, 2));
  CHECK(DyadicPoint::basis(3).value() == Rational(1, 16));
  CHECK_THROWS_AS(DyadicPoint::from_rational(Rational(1, 3)), DomainError);
  CHECK_THROWS_AS(DyadicPoint::from_rational(Rational(1)), DomainError);
}

TEST_CASE("dyadic addition is a group law") {
  const DyadicPoint zero;
  for (std::uint64_t i = 0; i < 4096; ++i) {
    const auto x = DyadicPoint::from_fraction(i, 12);
    REQUIRE(dyadic_add(x, zero) == x);
    REQUIRE(dyadic_add(x, x) == zero);
  }
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t j = 0; j < 64; ++j) {
      const auto x = DyadicPoint::from_fraction(i, 6), y = DyadicPoint::from_fraction(j, 6);
      REQUIRE(dyadic_add(x, y) == dyadic_add(y, x));
      for (std::uint64_t k = 0; k < 64; k += 7) {
        const auto z = DyadicPoint::from_fraction(k, 6);
        REQUIRE(dyadic_add(dyadic_add(x, y), z) == dyadic_add(x, dyadic_add(y, z)));
      }
    }
}

TEST_CASE("walsh_eval") {
  CHECK(walsh_eval(0, pt(5, 8)) == 1);
  CHECK(walsh_eval(1, pt(3, 4)) == -1);
  CHECK(walsh_eval(3, pt(1, 4)) == -1);
  // agrees with the sampled Walsh function
  for (std::uint64_t k = 0; k < 16; ++k) {
    const auto w = StepFunction::walsh(k, 4);
    for (std::uint64_t c = 0; c < 16; ++c)
      REQUIRE(w[c] == Scalar(walsh_eval(k, DyadicPoint::cell_start(c, 4))));
  }
}

TEST_CASE("Walsh functions are characters") {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 10000; ++t) {
    const BinaryIndex n(gen() % 1024);
    const auto x = DyadicPoint::from_fraction(gen() % 1024, 10);
    const auto y = DyadicPoint::from_fraction(gen() % 1024, 10);
    REQUIRE(walsh_eval(n, dyadic_add(x, y)) == walsh_eval(n, x) * walsh_eval(n, y));
  }
}

TEST_CASE("walsh_coefficients examples") {
  const auto one = walsh_coefficients(StepFunction::constant(2, 1));
  CHECK(as_scalars(one) == std::vector<Scalar>{1, 0, 0, 0});
  const auto w3 = walsh_coefficients(quarters(1, -1, -1, 1));
  CHECK(as_scalars(w3) == std::vector<Scalar>{0, 0, 0, 1});
  const auto d4 = walsh_coefficients(quarters(4, 0, 0, 0));
  CHECK(as_scalars(d4) == std::vector<Scalar>{1, 1, 1, 1});
}

TEST_CASE("from_coefficients examples") {
  std::vector<Scalar> c{1, 0, 0, 0};
  CHECK(from_coefficients(c) == StepFunction::constant(2, 1));
  std::vector<Scalar> ones{1, 1, 1, 1};
  CHECK(from_coefficients(ones) == quarters(4, 0, 0, 0));
  std::vector<Scalar> three{1, 1, 1};
  CHECK_THROWS_AS(from_coefficients(three), DomainError);
}

TEST_CASE("fast transform against direct integration") {
  for (int n = 0; n <= 7; ++n) {
    const auto f = random_function(n, 100 + n);
    const auto fast = walsh_coefficients(f);
    const auto slow = serial::coefficients(f);
    REQUIRE(fast.coefficients().exact() == slow);
    REQUIRE(serial::synthesize(slow, n) == f);
  }
}

TEST_CASE("transform round trip is exact up to resolution 12") {
  for (int n = 0; n <= 12; ++n) {
    const auto f = random_function(n, 200 + n);
    REQUIRE(from_coefficients(walsh_coefficients(f)) == f);
  }
}

TEST_CASE("orthonormality") {
  for (int n = 0; n <= 6; ++n)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const auto c = walsh_coefficients(StepFunction::walsh(k, n));
      for (std::uint64_t i = 0; i < c.size(); ++i) REQUIRE(c[i] == Scalar(i == k ? 1 : 0));
    }
}

TEST_CASE("refinement preserves integrals and coefficients") {
  for (int n = 1; n <= 6; ++n) {
    const auto f = random_function(n, 300 + n);
    const auto g = f.refined(n + 3);
    REQUIRE(integrate(g) == integrate(f));
    REQUIRE(walsh_coefficients(g) == walsh_coefficients(f).padded(n + 3));
    REQUIRE(g == f);
  }
}

TEST_CASE("integrate") {
  const auto d8 = StepFunction(3, ValueArray(ValueArray::Exact{8, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(integrate(d8) == Scalar(1));
  const auto d4 = quarters(4, 0, 0, 0);
  CHECK(integrate(d4, DyadicInterval(2, 1)) == Scalar(1));
  CHECK(integrate(d4, DyadicInterval(2, 1).complement()) == Scalar(0));
  CHECK(integrate(quarters(2, q(4, 3), q(2, 3), 0)) == Scalar(1));
  CHECK(integrate(quarters(1, 2, 3, 4), DyadicInterval(3, 2)) == Scalar(q(1, 8)));
}

TEST_CASE("dyadic intervals") {
  const DyadicInterval i(2, 3);
  CHECK(i.lower() == Rational(1, 2));
  CHECK(i.upper() == Rational(3, 4));
  CHECK(i.complement().measure() == Rational(3, 4));
  CHECK(i.contains(pt(5, 8)));
  CHECK_FALSE(i.complement().contains(pt(5, 8)));
  CHECK(DyadicInterval::containing(pt(5, 8), 2) == i);
  CHECK_THROWS_AS(DyadicInterval(2, 0), DomainError);
  CHECK_THROWS_AS(DyadicInterval(2, 5), DomainError);
}

TEST_CASE("scalar backends") {
  const Scalar a = q(1, 3);
  const Scalar r = Scalar::parse("0.25");
  CHECK(a.is_exact());
  CHECK_FALSE(r.is_exact());
  CHECK_FALSE((a + r).is_exact());
  CHECK((a * 3).is_exact());
  CHECK(Scalar::parse("-7/21") == q(-1, 3));
  CHECK(parse_exact_decimal("0.75") == Rational(3, 4));
  CHECK(parse_exact_decimal("0.0625") == Rational(1, 16));
  CHECK(parse_exact_decimal("-1.5e-2") == Rational(-3, 200));
  CHECK(parse_rational("010/03") == Rational(10, 3));
  CHECK(pow(Scalar(4), Rational(3, 2)) == Scalar(8));
  CHECK_FALSE(pow(Scalar(2), Rational(1, 2)).is_exact());
  CHECK_THROWS_AS(Scalar::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Scalar::parse("abc"), DomainError);
  CHECK(Exponent::parse("inf").infinite);
  CHECK_THROWS_AS(Exponent::parse("-1"), DomainError);
}

TEST_CASE("mixing backends promotes the whole function") {
  const auto f = quarters(1, 2, 3, 4);
  const auto g = Scalar::parse("0.5") * f;
  CHECK_FALSE(g.is_exact());
  CHECK((f + g).backend() == Backend::real);
}

TEST_CASE("parallel butterfly matches the serial one") {
  std::mt19937_64 gen(11);
  std::vector<std::int64_t> a(1 << 15);
  for (auto& x : a) x = static_cast<std::int64_t>(gen() % 2001) - 1000;
  auto b = a;
  hadamard_inplace(std::span<std::int64_t>(a));
  serial::hadamard_butterfly(b);
  CHECK(a == b);
}

TEST_CASE("step function text format") {
  const auto f = random_function(5, 9);
  const auto text = to_text(f);
  CHECK(from_text(text) == f);
  CHECK(to_text(from_text(text)) == text);

  const auto g = Scalar::parse("0.1") * f;
  const auto back = from_text(to_text(g));
  CHECK_FALSE(back.is_exact());
  CHECK(abs(integrate(back) - integrate(g)).real() < Real("1e-45"));

  CHECK_THROWS_AS(from_text("resolution 1\nbackend exact\n1\n"), DomainError);
  CHECK_THROWS_AS(from_text("resolution 1\nbackend exact\n1\n2\n3\n"), DomainError);
  CHECK_THROWS_AS(from_text("resolution 1\nbackend fuzzy\n1\n2\n"), DomainError);
}
