#include "walshsum/weights.hpp"

#include "walshsum/errors.hpp"

#include <mpfr.h>

#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace walshsum {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::fejer: return "fejer";
    case Family::cesaro: return "cesaro";
    case Family::power: return "power";
    case Family::logarithmic: return "logarithmic";
    case Family::custom: return "custom";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kCustomLimit = std::uint64_t{1} << 22;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v, precision_bits()); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  // Closed forms subtract large logarithms; carry guard digits.
  static mpfr_prec_t precision_bits() {
    return static_cast<mpfr_prec_t>((working_digits() + 30) * 3.3219280948873623) + 8;
  }

  void set(const Scalar& s) {
    if (s.is_exact())
      mpfr_set_q(v, s.exact().backend().data(), MPFR_RNDN);
    else
      mpfr_set(v, s.real().backend().data(), MPFR_RNDN);
  }
  Real real() const {
    Real r;
    mpfr_set(r.backend().data(), v, MPFR_RNDN);
    return r;
  }

  mpfr_t v;
};

// Gamma-function ratio exp(lgamma(a) - lgamma(b) - lgamma(c)) for positive
// arguments.
Real gamma_ratio(const Scalar& a, const Scalar& b, const Scalar& c) {
  Mpfr x, y, z;
  x.set(a);
  y.set(b);
  z.set(c);
  mpfr_lngamma(x.v, x.v, MPFR_RNDN);
  mpfr_lngamma(y.v, y.v, MPFR_RNDN);
  mpfr_lngamma(z.v, z.v, MPFR_RNDN);
  mpfr_sub(x.v, x.v, y.v, MPFR_RNDN);
  mpfr_sub(x.v, x.v, z.v, MPFR_RNDN);
  mpfr_exp(x.v, x.v, MPFR_RNDN);
  return x.real();
}

// 1 + H_{n-1} = 1 + psi(n) + gamma
Real log_prefix(std::uint64_t n) {
  Mpfr x, g;
  mpfr_set_ui(x.v, n, MPFR_RNDN);
  mpfr_digamma(x.v, x.v, MPFR_RNDN);
  mpfr_const_euler(g.v, MPFR_RNDN);
  mpfr_add(x.v, x.v, g.v, MPFR_RNDN);
  mpfr_add_ui(x.v, x.v, 1, MPFR_RNDN);
  return x.real();
}

// Euler-Maclaurin approximation of sum_{j=a}^{b} j^s for s in (-1, 0) and
// large a; eight Bernoulli corrections leave an error far below 10^-60
// once a exceeds 10^4.
Real power_tail(const Scalar& s, std::uint64_t a, std::uint64_t b) {
  static const std::array<std::pair<long, long>, 8> kBernoulli{
      {{1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66}, {-691, 2730}, {7, 6}, {-3617, 510}}};
  Mpfr exp_s, fa, fb, total, t, u, coef;
  exp_s.set(s);
  Mpfr xa, xb;
  mpfr_set_ui(xa.v, a, MPFR_RNDN);
  mpfr_set_ui(xb.v, b, MPFR_RNDN);
  // integral (b^{s+1} - a^{s+1}) / (s+1)
  mpfr_add_ui(t.v, exp_s.v, 1, MPFR_RNDN);
  mpfr_pow(fa.v, xa.v, t.v, MPFR_RNDN);
  mpfr_pow(fb.v, xb.v, t.v, MPFR_RNDN);
  mpfr_sub(total.v, fb.v, fa.v, MPFR_RNDN);
  mpfr_div(total.v, total.v, t.v, MPFR_RNDN);
  // (f(a) + f(b)) / 2
  mpfr_pow(fa.v, xa.v, exp_s.v, MPFR_RNDN);
  mpfr_pow(fb.v, xb.v, exp_s.v, MPFR_RNDN);
  mpfr_add(t.v, fa.v, fb.v, MPFR_RNDN);
  mpfr_div_ui(t.v, t.v, 2, MPFR_RNDN);
  mpfr_add(total.v, total.v, t.v, MPFR_RNDN);
  // falling factorial s (s-1) ... (s-m+1) for the (m)-th derivative
  mpfr_set_ui(coef.v, 1, MPFR_RNDN);
  long m = 0;
  long factorial_index = 0;
  Mpfr fact;
  mpfr_set_ui(fact.v, 1, MPFR_RNDN);
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    const long order = static_cast<long>(2 * k - 1);
    while (m < order) {
      mpfr_sub_si(t.v, exp_s.v, m, MPFR_RNDN);
      mpfr_mul(coef.v, coef.v, t.v, MPFR_RNDN);
      ++m;
    }
    while (factorial_index < static_cast<long>(2 * k)) {
      ++factorial_index;
      mpfr_mul_ui(fact.v, fact.v, static_cast<unsigned long>(factorial_index), MPFR_RNDN);
    }
    mpfr_sub_si(t.v, exp_s.v, order, MPFR_RNDN);
    mpfr_pow(fa.v, xa.v, t.v, MPFR_RNDN);
    mpfr_pow(fb.v, xb.v, t.v, MPFR_RNDN);
    mpfr_sub(u.v, fb.v, fa.v, MPFR_RNDN);
    mpfr_mul(u.v, u.v, coef.v, MPFR_RNDN);
    mpfr_mul_si(u.v, u.v, kBernoulli[k - 1].first, MPFR_RNDN);
    mpfr_div_si(u.v, u.v, kBernoulli[k - 1].second, MPFR_RNDN);
    mpfr_div(u.v, u.v, fact.v, MPFR_RNDN);
    mpfr_add(total.v, total.v, u.v, MPFR_RNDN);
  }
  return total.real();
}

bool in_open_unit(const Scalar& a) { return a > Scalar(0) && a < Scalar(1); }

}  // namespace

struct WeightSequence::State {
  Family family = Family::custom;
  std::optional<Scalar> alpha;
  std::string name;
  bool non_increasing = false;
  bool exact = true;
  // q_k from k and q_{k-1} (the latter is meaningless for k = 0).
  std::function<Scalar(std::uint64_t, const Scalar&)> step;
  std::optional<std::uint64_t> finite_length;
  std::uint64_t cache_limit = kExactHorizon;

  mutable std::mutex mu;
  mutable std::vector<Scalar> q_cache;
  mutable std::vector<Scalar> prefix_cache{Scalar(0)};

  // Makes q_0..q_{n-1} and Q_0..Q_n available. Caller holds mu.
  void extend(std::uint64_t n) const {
    while (q_cache.size() < n) {
      const std::uint64_t k = q_cache.size();
      Scalar next = step(k, k == 0 ? Scalar(0) : q_cache.back());
      prefix_cache.push_back(prefix_cache.back() + next);
      q_cache.push_back(std::move(next));
    }
  }

  Scalar cached_q(std::uint64_t k) const {
    std::lock_guard lock(mu);
    extend(k + 1);
    return q_cache[k];
  }

  Scalar cached_prefix(std::uint64_t n) const {
    std::lock_guard lock(mu);
    extend(n);
    return prefix_cache[n];
  }
};

namespace {

void spot_check(const WeightSequence& w, std::uint64_t horizon) {
  if (!w.declared_non_increasing()) return;
  Scalar prev = w.q(0);
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    Scalar cur = w.q(k);
    if (cur > prev)
      throw DomainError(w.id() + " declared non-increasing but q_" + std::to_string(k) + " > q_" +
                        std::to_string(k - 1));
    prev = std::move(cur);
  }
}

}  // namespace

WeightSequence WeightSequence::fejer() {
  auto s = std::make_shared<State>();
  s->family = Family::fejer;
  s->name = "fejer";
  s->non_increasing = true;
  s->step = [](std::uint64_t, const Scalar&) { return Scalar(1); };
  return WeightSequence(s);
}

WeightSequence WeightSequence::cesaro(const Scalar& alpha) {
  if (!in_open_unit(alpha)) throw DomainError("cesaro weights need alpha in (0, 1), got " + alpha.str());
  auto s = std::make_shared<State>();
  s->family = Family::cesaro;
  s->alpha = alpha;
  s->name = "cesaro(" + alpha.str() + ")";
  s->non_increasing = true;
  s->exact = alpha.is_exact();
  // A_k^{alpha-1} = A_{k-1}^{alpha-1} (alpha - 1 + k) / k
  s->step = [alpha](std::uint64_t k, const Scalar& prev) {
    if (k == 0) return Scalar(1);
    const Scalar kk(static_cast<long long>(k));
    return prev * (alpha - Scalar(1) + kk) / kk;
  };
  return WeightSequence(s);
}

WeightSequence WeightSequence::logarithmic() {
  auto s = std::make_shared<State>();
  s->family = Family::logarithmic;
  s->alpha = Scalar(0);
  s->name = "logarithmic";
  s->non_increasing = true;
  s->step = [](std::uint64_t k, const Scalar&) {
    return k == 0 ? Scalar(1) : Scalar(Rational(1, static_cast<long long>(k)));
  };
  return WeightSequence(s);
}

WeightSequence WeightSequence::power(const Scalar& alpha) {
  if (alpha.is_zero()) return logarithmic();
  if (!in_open_unit(alpha)) throw DomainError("power weights need alpha in [0, 1), got " + alpha.str());
  if (!alpha.is_exact()) {
    // Irrational exponents are fine, the rational case just tries harder.
  }
  auto s = std::make_shared<State>();
  s->family = Family::power;
  s->alpha = alpha;
  s->name = "power(" + alpha.str() + ")";
  s->non_increasing = true;
  s->exact = false;
  const Scalar exponent = alpha - Scalar(1);
  s->step = [exponent](std::uint64_t k, const Scalar&) {
    if (k == 0) return Scalar(1);
    if (exponent.is_exact()) return pow(Scalar(static_cast<long long>(k)), exponent.exact());
    return Scalar(Real(mp::pow(Real(static_cast<long long>(k)), exponent.real())));
  };
  return WeightSequence(s);
}

WeightSequence WeightSequence::custom(std::vector<Scalar> terms, bool declared_non_increasing,
                                      std::uint64_t spot_check_horizon, std::string name) {
  if (terms.empty() || !(terms.front() > Scalar(0))) throw DomainError("custom weights need q_0 > 0");
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (terms[k] < Scalar(0)) throw DomainError("custom weight q_" + std::to_string(k) + " is negative");
  auto s = std::make_shared<State>();
  s->family = Family::custom;
  s->name = std::move(name);
  s->non_increasing = declared_non_increasing;
  s->exact = std::all_of(terms.begin(), terms.end(), [](const Scalar& x) { return x.is_exact(); });
  s->finite_length = terms.size();
  s->cache_limit = terms.size();
  auto shared = std::make_shared<std::vector<Scalar>>(std::move(terms));
  s->step = [shared](std::uint64_t k, const Scalar&) { return k < shared->size() ? (*shared)[k] : Scalar(0); };
  WeightSequence w(s);
  spot_check(w, spot_check_horizon);
  return w;
}

WeightSequence WeightSequence::custom(std::function<Scalar(std::uint64_t)> term, bool exact,
                                      bool declared_non_increasing, std::uint64_t spot_check_horizon,
                                      std::string name) {
  if (!(term(0) > Scalar(0))) throw DomainError("custom weights need q_0 > 0");
  auto s = std::make_shared<State>();
  s->family = Family::custom;
  s->name = std::move(name);
  s->non_increasing = declared_non_increasing;
  s->exact = exact;
  s->cache_limit = kCustomLimit;
  s->step = [term = std::move(term), exact](std::uint64_t k, const Scalar&) {
    Scalar v = term(k);
    if (v < Scalar(0)) throw DomainError("custom weight q_" + std::to_string(k) + " is negative");
    if (exact && !v.is_exact()) throw DomainError("custom weight declared exact returned a real");
    return v;
  };
  WeightSequence w(s);
  spot_check(w, spot_check_horizon);
  return w;
}

Family WeightSequence::family() const { return state_->family; }
const std::optional<Scalar>& WeightSequence::alpha() const { return state_->alpha; }
std::string WeightSequence::id() const { return state_->name; }
bool WeightSequence::declared_non_increasing() const { return state_->non_increasing; }
bool WeightSequence::is_exact() const { return state_->exact; }

Scalar WeightSequence::q(std::uint64_t k) const {
  const auto& s = *state_;
  if (s.family == Family::fejer) return Scalar(1);
  if (s.finite_length) return k < *s.finite_length ? s.cached_q(k) : Scalar(0);
  if (k < s.cache_limit) return s.cached_q(k);
  switch (s.family) {
    case Family::cesaro: {
      const Scalar kk(static_cast<long long>(k));
      return Scalar(gamma_ratio(kk + *s.alpha, kk + Scalar(1), *s.alpha));
    }
    case Family::logarithmic: return Scalar(Rational(1, static_cast<long long>(k)));
    case Family::power: return s.step(k, Scalar(0));
    default: throw DomainError("weight index beyond the supported range of " + s.name);
  }
}

Scalar WeightSequence::prefix_sum(std::uint64_t n) const {
  const auto& s = *state_;
  if (s.family == Family::fejer) return Scalar(static_cast<long long>(n));
  if (s.finite_length) return s.cached_prefix(std::min(n, *s.finite_length));
  if (n <= s.cache_limit) return s.cached_prefix(n);
  if (s.family == Family::custom) throw DomainError("prefix sum beyond the supported range of " + s.name);
  return Scalar(prefix_sum_real(n));
}

Real WeightSequence::prefix_sum_real(std::uint64_t n) const {
  const auto& s = *state_;
  if (n == 0) return Real(0);
  switch (s.family) {
    case Family::fejer: return Real(static_cast<long long>(n));
    case Family::cesaro: {
      // Q_n = A_{n-1}^alpha = Gamma(n + alpha) / (Gamma(n) Gamma(alpha + 1))
      const Scalar nn(static_cast<long long>(n));
      return gamma_ratio(nn + *s.alpha, nn, *s.alpha + Scalar(1));
    }
    case Family::logarithmic: return log_prefix(n);
    case Family::power: {
      if (n <= s.cache_limit + 1) return s.cached_prefix(n).real();
      Real head = s.cached_prefix(s.cache_limit + 1).real();
      return head + power_tail(*s.alpha - Scalar(1), s.cache_limit + 1, n - 1);
    }
    case Family::custom: return prefix_sum(n).real();
  }
  return Real(0);
}

std::vector<Scalar> WeightSequence::terms(std::uint64_t n) const {
  std::vector<Scalar> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(q(k));
  return out;
}

std::vector<Scalar> WeightSequence::prefix_sums(std::uint64_t n) const {
  const auto& s = *state_;
  if (n <= s.cache_limit && s.family != Family::fejer && !s.finite_length) {
    std::lock_guard lock(s.mu);
    s.extend(n);
    return {s.prefix_cache.begin(), s.prefix_cache.begin() + static_cast<std::ptrdiff_t>(n + 1)};
  }
  std::vector<Scalar> out;
  out.reserve(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) out.push_back(prefix_sum(k));
  return out;
}

WeightSequence make_family(std::string_view tag, const std::optional<Scalar>& alpha) {
  auto need_alpha = [&]() -> const Scalar& {
    if (!alpha) throw DomainError(std::string(tag) + " weights need an alpha parameter");
    return *alpha;
  };
  if (tag == "fejer") return WeightSequence::fejer();
  if (tag == "cesaro") return WeightSequence::cesaro(need_alpha());
  if (tag == "power") return WeightSequence::power(need_alpha());
  if (tag == "logarithmic") return WeightSequence::logarithmic();
  throw DomainError("unknown weight family '" + std::string(tag) + "'");
}

WeightSequence load_weights_file(const std::filesystem::path& path, bool declared_non_increasing,
                                 std::uint64_t spot_check_horizon) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open weights file " + path.string());
  std::map<std::uint64_t, Scalar> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string index_text, value_text, extra;
    if (!(fields >> index_text)) continue;
    if (!(fields >> value_text) || (fields >> extra))
      throw DomainError(path.string() + ":" + std::to_string(line_no) + ": expected 'index value'");
    Rational index = parse_rational(index_text);
    if (mp::denominator(index) != 1 || index.sign() < 0)
      throw DomainError(path.string() + ":" + std::to_string(line_no) + ": bad index");
    auto k = mp::numerator(index).convert_to<std::uint64_t>();
    if (!entries.emplace(k, Scalar(parse_exact_decimal(value_text))).second)
      throw DomainError(path.string() + ":" + std::to_string(line_no) + ": duplicate index");
  }
  std::vector<Scalar> terms;
  for (const auto& [k, v] : entries) {
    if (k != terms.size()) throw DomainError(path.string() + ": missing index " + std::to_string(terms.size()));
    terms.push_back(v);
  }
  return WeightSequence::custom(std::move(terms), declared_non_increasing, spot_check_horizon,
                                "custom(" + path.filename().string() + ")");
}

}  // namespace walshsum
