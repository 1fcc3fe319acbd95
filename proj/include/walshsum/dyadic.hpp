#pragma once

#include "walshsum/scalar.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace walshsum {

/// Largest supported resolution; a StepFunction holds 2^N values.
inline constexpr int kMaxResolution = 24;

inline std::uint64_t reverse_bits(std::uint64_t v, int width) {
  std::uint64_t r = 0;
  for (int b = 0; b < width; ++b) r |= ((v >> b) & 1u) << (width - 1 - b);
  return r;
}

/// w_k on cell `cell` of resolution N, as +1 / -1. Cell bit N-1 is the
/// first binary digit x_0 of the points in the cell.
inline int walsh_sign(std::uint64_t k, std::uint64_t cell, int resolution) {
  return (std::popcount(k & reverse_bits(cell, resolution)) & 1) ? -1 : 1;
}

/// Non-negative integer with its binary bookkeeping: n = sum 2^{n_j},
/// n_1 > ... > n_r, and the tails n^(i) obtained by stripping the top bits.
class BinaryIndex {
 public:
  constexpr BinaryIndex(std::uint64_t n = 0) : n_(n) {}

  constexpr std::uint64_t value() const { return n_; }
  constexpr operator std::uint64_t() const { return n_; }

  /// epsilon_k(n)
  constexpr int bit(int k) const { return k >= 64 ? 0 : static_cast<int>((n_ >> k) & 1u); }

  /// |n| = position of the highest set bit; DomainError for n = 0.
  int order() const;
  int popcount() const { return std::popcount(n_); }

  /// n_1 > n_2 > ... > n_r
  std::vector<int> exponents() const;

  /// n^(0) = n, n^(i) = n^(i-1) - 2^{n_i}, ..., n^(r) = 0 (r + 1 entries).
  std::vector<std::uint64_t> tails() const;

  /// epsilon_0(n), ..., epsilon_{|n|}(n); empty for n = 0.
  std::vector<int> bits() const;

 private:
  std::uint64_t n_;
};

/// Dyadic rational in [0, 1) with its terminating expansion
/// x = sum x_j 2^{-(j+1)}. Stored as numerator / 2^level with an odd
/// numerator (or the zero point at level 0).
class DyadicPoint {
 public:
  DyadicPoint() = default;

  static DyadicPoint from_bits(std::span<const int> digits);
  static DyadicPoint from_fraction(std::uint64_t numerator, int level);
  static DyadicPoint from_rational(const Rational& value);
  /// e_j = 2^{-j-1}
  static DyadicPoint basis(int j);
  /// Left endpoint of cell `cell` at the given resolution.
  static DyadicPoint cell_start(std::uint64_t cell, int resolution);

  /// x_j
  int digit(int j) const;
  int level() const { return level_; }
  std::uint64_t numerator() const { return numerator_; }
  Rational value() const;

  /// Index of the resolution-N cell containing the point.
  std::uint64_t cell(int resolution) const;

  bool operator==(const DyadicPoint&) const = default;

 private:
  DyadicPoint(std::uint64_t numerator, int level);
  std::uint64_t numerator_ = 0;
  int level_ = 0;
};

/// x (+) y: digitwise exclusive or.
DyadicPoint dyadic_add(const DyadicPoint& x, const DyadicPoint& y);

/// w_n(x) = (-1)^{sum_j epsilon_j(n) x_j}
int walsh_eval(BinaryIndex n, const DyadicPoint& x);

/// [(l-1)/2^k, l/2^k), or its complement in [0, 1).
class DyadicInterval {
 public:
  DyadicInterval(int level, std::uint64_t index, bool complement = false);

  /// I_k(x); I_k = I_k(0).
  static DyadicInterval containing(const DyadicPoint& x, int level);
  static DyadicInterval whole() { return DyadicInterval(0, 1); }

  int level() const { return level_; }
  std::uint64_t index() const { return index_; }
  bool is_complement() const { return complement_; }
  DyadicInterval complement() const { return DyadicInterval(level_, index_, !complement_); }

  Rational lower() const;
  Rational upper() const;
  Rational measure() const;
  bool contains(const DyadicPoint& x) const;
  bool contains_cell(std::uint64_t cell, int resolution) const;

  /// Cells [first, first + count) of resolution N covered by the base
  /// interval (ignoring the complement flag); requires level <= N.
  std::uint64_t first_cell(int resolution) const;
  std::uint64_t cell_count(int resolution) const;

  bool operator==(const DyadicInterval&) const = default;

 private:
  int level_;
  std::uint64_t index_;
  bool complement_;
};

}  // namespace walshsum
