#include "walshsum/dyadic.hpp"

#include "walshsum/errors.hpp"

#include <string>

namespace walshsum {

int BinaryIndex::order() const {
  if (n_ == 0) throw DomainError("|n| is undefined for n = 0");
  return 63 - std::countl_zero(n_);
}

std::vector<int> BinaryIndex::exponents() const {
  std::vector<int> out;
  for (int k = 63; k >= 0; --k)
    if (bit(k)) out.push_back(k);
  return out;
}

std::vector<std::uint64_t> BinaryIndex::tails() const {
  std::vector<std::uint64_t> out{n_};
  std::uint64_t t = n_;
  for (int e : exponents()) {
    t -= std::uint64_t{1} << e;
    out.push_back(t);
  }
  return out;
}

std::vector<int> BinaryIndex::bits() const {
  std::vector<int> out;
  if (n_ == 0) return out;
  for (int k = 0; k <= order(); ++k) out.push_back(bit(k));
  return out;
}

DyadicPoint::DyadicPoint(std::uint64_t numerator, int level) : numerator_(numerator), level_(level) {
  if (level < 0 || level > 63) throw DomainError("dyadic point level out of range");
  if (level < 63 && numerator_ >> level) throw DomainError("dyadic point outside [0, 1)");
  if (numerator_ == 0) {
    level_ = 0;
    return;
  }
  while ((numerator_ & 1u) == 0) {
    numerator_ >>= 1;
    --level_;
  }
}

DyadicPoint DyadicPoint::from_bits(std::span<const int> digits) {
  if (digits.size() > 63) throw DomainError("at most 63 binary digits are supported");
  std::uint64_t num = 0;
  for (int d : digits) {
    if (d != 0 && d != 1) throw DomainError("binary digits must be 0 or 1");
    num = (num << 1) | static_cast<std::uint64_t>(d);
  }
  return DyadicPoint(num, static_cast<int>(digits.size()));
}

DyadicPoint DyadicPoint::from_fraction(std::uint64_t numerator, int level) { return DyadicPoint(numerator, level); }

DyadicPoint DyadicPoint::from_rational(const Rational& value) {
  if (value.sign() < 0 || value >= 1) throw DomainError("dyadic point must lie in [0, 1)");
  Integer den = mp::denominator(value);
  if ((den & (den - 1)) != 0) throw DomainError("not a dyadic rational: " + value.str());
  int level = static_cast<int>(mp::msb(den));
  return DyadicPoint(mp::numerator(value).convert_to<std::uint64_t>(), level);
}

DyadicPoint DyadicPoint::basis(int j) {
  if (j < 0 || j > 62) throw DomainError("basis point index out of range");
  return DyadicPoint(1, j + 1);
}

DyadicPoint DyadicPoint::cell_start(std::uint64_t cell, int resolution) { return DyadicPoint(cell, resolution); }

int DyadicPoint::digit(int j) const {
  if (j < 0) throw DomainError("negative digit index");
  if (j >= level_) return 0;
  return static_cast<int>((numerator_ >> (level_ - 1 - j)) & 1u);
}

Rational DyadicPoint::value() const { return Rational(Integer(numerator_)) * pow2(-level_); }

std::uint64_t DyadicPoint::cell(int resolution) const {
  if (level_ >= resolution) return numerator_ >> (level_ - resolution);
  return numerator_ << (resolution - level_);
}

DyadicPoint dyadic_add(const DyadicPoint& x, const DyadicPoint& y) {
  int level = std::max(x.level(), y.level());
  return DyadicPoint::from_fraction(x.cell(level) ^ y.cell(level), level);
}

int walsh_eval(BinaryIndex n, const DyadicPoint& x) {
  int parity = 0;
  for (int j = 0; j < 64 && j < x.level(); ++j) parity ^= n.bit(j) & x.digit(j);
  return parity ? -1 : 1;
}

DyadicInterval::DyadicInterval(int level, std::uint64_t index, bool complement)
    : level_(level), index_(index), complement_(complement) {
  if (level < 0 || level > 62) throw DomainError("interval level out of range");
  if (index == 0 || index > (std::uint64_t{1} << level))
    throw DomainError("interval index must satisfy 0 < l <= 2^k");
}

DyadicInterval DyadicInterval::containing(const DyadicPoint& x, int level) {
  return DyadicInterval(level, x.cell(level) + 1);
}

Rational DyadicInterval::lower() const { return Rational(Integer(index_ - 1)) * pow2(-level_); }
Rational DyadicInterval::upper() const { return Rational(Integer(index_)) * pow2(-level_); }

Rational DyadicInterval::measure() const {
  Rational m = pow2(-level_);
  return complement_ ? Rational(1 - m) : m;
}

bool DyadicInterval::contains(const DyadicPoint& x) const {
  bool inside = x.cell(level_) + 1 == index_;
  return inside != complement_;
}

bool DyadicInterval::contains_cell(std::uint64_t cell, int resolution) const {
  if (resolution < level_) throw DomainError("resolution coarser than the interval");
  bool inside = (cell >> (resolution - level_)) + 1 == index_;
  return inside != complement_;
}

std::uint64_t DyadicInterval::first_cell(int resolution) const {
  if (resolution < level_) throw DomainError("resolution coarser than the interval");
  return (index_ - 1) << (resolution - level_);
}

std::uint64_t DyadicInterval::cell_count(int resolution) const {
  if (resolution < level_) throw DomainError("resolution coarser than the interval");
  return std::uint64_t{1} << (resolution - level_);
}

}  // namespace walshsum
