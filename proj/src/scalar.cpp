#include "walshsum/scalar.hpp"

#include "walshsum/errors.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace walshsum {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return is_digits(s);
}

Real make_real(const Rational& r) {
  Real x;
  mpfr_set_q(x.backend().data(), r.backend().data(), MPFR_RNDN);
  return x;
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact-rational" : "high-precision-real";
}

unsigned working_digits() { return Real::default_precision(); }

void set_working_digits(unsigned digits) {
  if (digits < 10) throw DomainError("working precision must be at least 10 digits");
  Real::default_precision(digits);
}

Real to_real(const Rational& r) { return make_real(r); }

Rational pow2(long long exponent) {
  Integer p = Integer(1) << static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  return exponent >= 0 ? Rational(p) : Rational(Integer(1), p);
}

// GMP reads a leading 0 as an octal prefix; literals here are always decimal.
static Integer decimal_integer(std::string_view digits) {
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  Integer v(std::string{digits});
  return negative ? Integer(-v) : v;
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  auto num = s.substr(0, slash);
  if (!is_integer_literal(num)) throw DomainError("malformed rational literal '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(decimal_integer(num));
  auto den = s.substr(slash + 1);
  if (!is_digits(den)) throw DomainError("malformed rational literal '" + std::string(text) + "'");
  Integer d = decimal_integer(den);
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return Rational(decimal_integer(num), d);
}

Rational parse_exact_decimal(std::string_view text) {
  auto s = trim(text);
  if (s.find('/') != std::string_view::npos) return parse_rational(s);
  std::string mantissa(s);
  long long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto tail = s.substr(e + 1);
    if (!is_integer_literal(tail)) throw DomainError("malformed decimal literal '" + std::string(text) + "'");
    exp10 = std::stoll(std::string(tail));
    mantissa = std::string(s.substr(0, e));
  }
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (!is_integer_literal(mantissa)) throw DomainError("malformed decimal literal '" + std::string(text) + "'");
  Rational r{decimal_integer(mantissa)};
  Integer scale = mp::pow(Integer(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  return exp10 >= 0 ? Rational(r * scale) : Rational(r / scale);
}

Scalar Scalar::ratio(long long num, long long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::parse(std::string_view text) {
  auto s = trim(text);
  if (s.find_first_of(".eE") == std::string_view::npos) return Scalar(parse_rational(s));
  // Validate through the exact parser, then round once at working precision.
  parse_exact_decimal(s);
  return Scalar(Real(std::string(s)));
}

const Rational& Scalar::exact() const {
  if (auto* r = std::get_if<Rational>(&value_)) return *r;
  throw DomainError("scalar is not exact");
}

Real Scalar::real() const {
  if (auto* r = std::get_if<Rational>(&value_)) return make_real(*r);
  return std::get<Real>(value_);
}

double Scalar::to_double() const {
  return std::visit([](const auto& v) { return v.template convert_to<double>(); }, value_);
}

int Scalar::sign() const {
  return std::visit([](const auto& v) { return v.sign(); }, value_);
}

std::string Scalar::str() const {
  if (auto* r = std::get_if<Rational>(&value_)) return r->str();
  const auto& x = std::get<Real>(value_);
  return x.str(static_cast<std::streamsize>(working_digits()), std::ios_base::scientific);
}

Scalar Scalar::operator-() const {
  return std::visit([](const auto& v) { return Scalar(-v); }, value_);
}

namespace {

template <class Op>
void combine(std::variant<Rational, Real>& lhs, const std::variant<Rational, Real>& rhs, Op op) {
  if (lhs.index() == 0 && rhs.index() == 0) {
    op(std::get<Rational>(lhs), std::get<Rational>(rhs));
    return;
  }
  Real a = lhs.index() == 0 ? make_real(std::get<Rational>(lhs)) : std::get<Real>(lhs);
  Real b = rhs.index() == 0 ? make_real(std::get<Rational>(rhs)) : std::get<Real>(rhs);
  op(a, b);
  lhs = std::move(a);
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
  combine(value_, rhs.value_, [](auto& a, const auto& b) { a += b; });
  return *this;
}
Scalar& Scalar::operator-=(const Scalar& rhs) {
  combine(value_, rhs.value_, [](auto& a, const auto& b) { a -= b; });
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& rhs) {
  combine(value_, rhs.value_, [](auto& a, const auto& b) { a *= b; });
  return *this;
}
Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  combine(value_, rhs.value_, [](auto& a, const auto& b) { a /= b; });
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.real() == b.real();
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    return x < y ? std::partial_ordering::less
                 : (y < x ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  Real x = a.real(), y = b.real();
  if (x < y) return std::partial_ordering::less;
  if (y < x) return std::partial_ordering::greater;
  if (x == y) return std::partial_ordering::equivalent;
  return std::partial_ordering::unordered;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

bool exact_root(const Rational& value, unsigned long k, Rational& root) {
  if (value.sign() < 0 || k == 0) return false;
  Integer num = mp::numerator(value), den = mp::denominator(value);
  Integer rn, rd;
  if (mpz_root(rn.backend().data(), num.backend().data(), k) == 0) return false;
  if (mpz_root(rd.backend().data(), den.backend().data(), k) == 0) return false;
  root = Rational(rn, rd);
  return true;
}

namespace {

Rational exact_int_pow(const Rational& base, long long e) {
  unsigned u = static_cast<unsigned>(e < 0 ? -e : e);
  Rational r(mp::pow(mp::numerator(base), u), mp::pow(mp::denominator(base), u));
  if (e < 0) {
    if (base.sign() == 0) throw DomainError("zero to a negative power");
    r = Rational(1) / r;
  }
  return r;
}

}  // namespace

Scalar pow(const Scalar& base, const Rational& exponent) {
  if (exponent.sign() == 0) return Scalar(1);
  const Integer num = mp::numerator(exponent);
  const Integer den = mp::denominator(exponent);
  if (base.is_exact()) {
    if (base.is_zero()) {
      if (exponent.sign() < 0) throw DomainError("zero to a negative power");
      return Scalar(0);
    }
    if (den == 1 && mp::abs(num) <= 4096) return Scalar(exact_int_pow(base.exact(), num.convert_to<long long>()));
    if (base.sign() > 0 && mp::abs(num) <= 64 && den <= 64) {
      Rational powered = exact_int_pow(base.exact(), num.convert_to<long long>());
      Rational root;
      if (exact_root(powered, den.convert_to<unsigned long>(), root)) return Scalar(root);
    }
  }
  Real b = base.real();
  if (b.sign() < 0 && den != 1) throw DomainError("fractional power of a negative number");
  if (b.sign() == 0) return Scalar(Real(0));
  if (den == 2 && num == 1) return Scalar(Real(mp::sqrt(b)));
  return Scalar(Real(mp::pow(b, to_real(exponent))));
}

Exponent Exponent::parse(std::string_view text) {
  auto s = trim(text);
  if (s == "inf" || s == "infinity" || s == "Inf") return inf();
  Rational r = parse_exact_decimal(s);
  if (r.sign() <= 0) throw DomainError("exponent must be positive: '" + std::string(text) + "'");
  return {r, false};
}

std::string Exponent::str() const { return infinite ? "inf" : value.str(); }

}  // namespace walshsum
