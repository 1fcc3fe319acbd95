#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

namespace walshsum {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

enum class Backend { exact, real };

std::string_view to_string(Backend backend);

inline constexpr unsigned kDefaultDigits = 50;

/// Working precision (significant decimal digits) of newly created reals.
/// Not synchronized: set it before starting parallel work.
unsigned working_digits();
void set_working_digits(unsigned digits);

/// Either an exact rational or a high-precision real. Arithmetic between
/// an exact and a real operand yields a real; nothing ever silently turns
/// a real back into an exact value.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  template <std::integral I>
  Scalar(I v) : value_(Rational(static_cast<long long>(v))) {}
  Scalar(Rational v) : value_(std::move(v)) {}
  Scalar(Real v) : value_(std::move(v)) {}

  static Scalar ratio(long long num, long long den);

  /// "a", "-a/b" parse exactly; decimal or scientific literals parse as reals.
  static Scalar parse(std::string_view text);

  Backend backend() const {
    return value_.index() == 0 ? Backend::exact : Backend::real;
  }
  bool is_exact() const { return value_.index() == 0; }

  /// Throws DomainError on a real value.
  const Rational& exact() const;
  Real real() const;
  double to_double() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// "a/b" for exact values, scientific notation at working precision
  /// for reals.
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, Real> value_;
};

Scalar abs(const Scalar& x);
Scalar max(const Scalar& a, const Scalar& b);

/// base^exponent. Exact when base is exact and the exponent is an integer,
/// or when the root happens to be rational (perfect powers).
Scalar pow(const Scalar& base, const Rational& exponent);

/// Exact k-th root of a non-negative rational if it exists.
bool exact_root(const Rational& value, unsigned long k, Rational& root);

Rational parse_rational(std::string_view text);

/// Exact value of a decimal literal such as "0.75" or "1e-3"; also accepts
/// "a/b".
Rational parse_exact_decimal(std::string_view text);

Real to_real(const Rational& r);
Rational pow2(long long exponent);

/// L_p exponent: a positive rational or +infinity.
struct Exponent {
  Rational value{1};
  bool infinite = false;

  static Exponent inf() { return {Rational(0), true}; }
  static Exponent parse(std::string_view text);
  std::string str() const;
  bool operator==(const Exponent&) const = default;
};

}  // namespace walshsum
