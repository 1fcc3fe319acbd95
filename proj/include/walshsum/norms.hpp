#pragma once

#include "walshsum/dyadic.hpp"
#include "walshsum/step_function.hpp"

#include <cstdint>
#include <string>

namespace walshsum {

enum class NormKind { lp, weak_l1, hardy, linf };

struct NormValue {
  NormKind kind = NormKind::lp;
  Exponent p;
  Scalar value;
  Backend backend() const { return value.backend(); }
  /// Working digits for real values, 0 for exact ones.
  unsigned digits() const { return value.is_exact() ? 0 : working_digits(); }
  /// "L1", "L3/4", "Linf", "weak-L1", "H1/2"
  std::string label() const;
};

/// Integral of |f|^p, p > 0. Exact when every |value|^p is rational.
Scalar lp_integral(const StepFunction& f, const Rational& p);

/// (integral |f|^p)^{1/p}, or max |f| for p = inf.
NormValue lp_quasinorm(const StepFunction& f, const Exponent& p);

/// sup_t t |{|f| > t}|, attained as t rises to one of the values of |f|.
NormValue weak_l1_norm(const StepFunction& f);

/// E* f = max_{0 <= n <= N} |S_{2^n} f|, built from level-n block averages.
StepFunction dyadic_maximal(const StepFunction& f);

/// || E* f ||_p
NormValue hardy_norm(const StepFunction& f, const Exponent& p);

struct PAtom {
  Rational p;
  DyadicInterval support;
  StepFunction values;
  std::uint64_t seed = 0;
  /// How the atom was built, for report provenance.
  std::string trace;
};

/// +c on the left half of I_N, -c on the right half, c = 2^{N/p}; lives
/// at resolution N + 1 (real-valued unless N/p is an integer).
PAtom haar_atom(const Rational& p, int level);

/// The constant function 1 on [0, 1), the degenerate atom.
PAtom constant_atom(const Rational& p, int resolution = 0);

/// Seeded random atom on I_N sampled on 2^extra cells: integer draws from
/// mt19937_64, mean removed exactly, then scaled to sup 2^{floor(N/p)}.
PAtom make_p_atom(const Rational& p, int level, std::uint64_t seed, int extra = 3);

/// Empty string when the atom satisfies support, mean-zero and size
/// conditions, otherwise a description of the first violation.
std::string atom_violation(const PAtom& a);

}  // namespace walshsum
