#pragma once

#include "walshsum/criteria.hpp"
#include "walshsum/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace walshsum {

using Json = nlohmann::ordered_json;

struct SeriesPoint {
  Rational index;
  Scalar value;
  std::optional<Scalar> bound;
};

struct Series {
  std::string name;
  std::vector<SeriesPoint> points;
};

struct ExperimentReport {
  std::string id;
  std::string statement;
  Json parameters = Json::object();
  std::deque<Series> series;  // stable references across add_series
  /// Fitted slope and how it was fitted.
  std::optional<double> slope;
  std::string fit;
  /// Named measured constants, in insertion order.
  std::vector<std::pair<std::string, Scalar>> constants;
  std::vector<std::string> checks_failed;
  std::vector<std::string> notes;
  std::string verdict;
  std::string rule;
  bool passed = false;
  Json provenance = Json::object();

  const Scalar& constant(std::string_view name) const;
  Series& add_series(std::string name);
  Backend backend() const;

  Json to_json() const;
  std::string to_csv() const;
};

/// Shared experiment inputs; unset fields take per-experiment defaults.
struct ExperimentParams {
  std::optional<WeightSequence> weights;
  std::optional<Rational> p;
  std::vector<Rational> p_grid;
  std::optional<std::int64_t> nmin;
  std::optional<std::int64_t> nmax;
  std::optional<std::uint64_t> seed;
  std::optional<int> atoms;
  std::optional<int> delta;
  /// Echoed verbatim into provenance.
  Json config = Json::object();
};

struct ExperimentInfo {
  std::string id;
  std::string statement;
  std::string defaults;
};

const std::vector<ExperimentInfo>& experiment_catalog();

/// DomainError for an unknown id.
ExperimentReport run_experiment(std::string_view id, const ExperimentParams& params);

// Individual harnesses.

/// ||F_n||_1 / gn2_rhs(n) for 2 <= n <= n_hi; the window measured on
/// n <= ref_hi, widened by `pad` on each side, must cover the full range.
ExperimentReport gn2_equivalence(const WeightSequence& q, std::uint64_t n_hi = 255, std::uint64_t ref_hi = 127,
                                 const Rational& pad = 2, const Rational& cap = 20);

/// f_A = D_{2^{|m_A|+1}} - D_{2^{|m_A|}}, m_A = 2^{2A} + 2^A, A = 1..a_max.
ExperimentReport nobound(const WeightSequence& q, int a_max = 5);

/// R(n) for n_lo <= n <= n_hi.
ExperimentReport half_counterexample(const WeightSequence& q, int n_lo = 4, int n_hi = 12);

/// criterion_main over the grid (p = 1/2 itself runs the unrestricted
/// series as the boundary anchor).
ExperimentReport threshold_scan(const WeightSequence& q, std::vector<Rational> grid = {}, int nmax = 40);

/// kernel_sup integral over 2^{N(2p-1)}.
ExperimentReport kernel_sup_scaling(std::vector<Rational> grid = {}, int n_lo = 1, int n_hi = 12);

ExperimentReport atom_quasilocality(const WeightSequence& q, const Rational& p = 1, int level_lo = 2,
                                    int level_hi = 6, int atoms = 20, std::uint64_t seed = 1, int delta = 4);

ExperimentReport fejer_norm_scan(std::uint64_t n_max = 4096);

/// Closed-form kernel identities, checked exactly.
ExperimentReport exact_identities(std::uint64_t seed = 1, int random_count = 200);

/// Dirichlet-kernel and Hardy-norm formulas.
ExperimentReport norm_formulas(int n_max = 10);

/// Fills version, backend and precision fields.
void stamp_provenance(ExperimentReport& r, const Json& config, std::optional<std::uint64_t> seed);

std::string version();

}  // namespace walshsum
