#include "walshsum/cli.hpp"

#include "walshsum/criteria.hpp"
#include "walshsum/kernels.hpp"
#include "walshsum/means.hpp"
#include "walshsum/norms.hpp"
#include "walshsum/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace walshsum {

namespace {

constexpr int kMaxCliResolution = 20;
constexpr std::int64_t kMaxCriterionN = 62;

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  if (command == "experiment") j["experiment"] = experiment;
  if (command == "kernel") j["type"] = kernel_type;
  if (command == "criterion") j["criterion"] = criterion;
  if (command == "norm") j["norm"] = norm;
  j["weights"] = optional_json(weights);
  j["alpha"] = optional_json(alpha);
  j["weights_file"] = optional_json(weights_file);
  j["non_increasing"] = non_increasing;
  j["p"] = optional_json(p);
  j["p_grid"] = p_grid;
  j["n"] = optional_json(n);
  j["resolution"] = optional_json(resolution);
  j["nmin"] = optional_json(nmin);
  j["nmax"] = optional_json(nmax);
  j["atoms"] = optional_json(atoms);
  j["delta"] = optional_json(delta);
  j["input"] = optional_json(input);
  j["values"] = values;
  j["digits"] = digits;
  j["seed"] = optional_json(seed);
  j["format"] = format;
  j["output"] = optional_json(output);
  j["expect"] = expect_pass ? Json("pass") : Json(nullptr);
  j["jobs"] = optional_json(jobs);
  return j;
}

namespace {

void add_weight_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--weights", c.weights, "fejer, cesaro, power, logarithmic")
      ->check(CLI::IsMember({"fejer", "cesaro", "power", "logarithmic"}));
  sub->add_option("--alpha", c.alpha, "family parameter, e.g. 1/2");
  sub->add_option("--weights-file", c.weights_file, "two-column 'index value' file")->check(CLI::ExistingFile);
  sub->add_flag("--non-increasing", c.non_increasing, "declare the file weights non-increasing");
}

void add_common_flags(CLI::App* sub, RunConfig& c, std::string& expect, std::optional<unsigned>& digits) {
  sub->add_option("--format", c.format, "json, csv or stepfn")->check(CLI::IsMember({"json", "csv", "stepfn"}));
  sub->add_option("--output", c.output, "write the report here instead of stdout");
  sub->add_option("--expect", expect, "exit 1 unless the report passes")->check(CLI::IsMember({"pass"}));
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 1024));
  sub->add_option("--digits", digits, "working precision (env WALSH_DIGITS)")->check(CLI::Range(10u, 2000u));
  sub->add_option("--seed", c.seed, "random seed");
}

std::string catalog_ids() {
  std::string s;
  for (const auto& e : experiment_catalog()) s += (s.empty() ? "" : ", ") + e.id;
  return s;
}

void validate(RunConfig& c) {
  const auto& cmd = c.command;
  if (c.weights_file && c.weights) throw UsageError("--weights and --weights-file are mutually exclusive");
  if (c.alpha && !(c.weights && (*c.weights == "cesaro" || *c.weights == "power")))
    throw UsageError("--alpha needs --weights cesaro or power");
  if (c.weights && (*c.weights == "cesaro" || *c.weights == "power") && !c.alpha)
    throw UsageError("--weights " + *c.weights + " needs --alpha");
  if (c.format == "stepfn" && cmd != "kernel" && cmd != "mean")
    throw UsageError("--format stepfn is only available for kernel and mean");
  if ((cmd == "kernel" || cmd == "mean" || cmd == "decompose") && !c.n) throw UsageError(cmd + " needs --n");
  if (cmd == "kernel" && c.kernel_type != "norlund" && (c.weights || c.weights_file))
    throw UsageError("--weights applies to --type norlund only");
  if (c.resolution && (*c.resolution < 0 || *c.resolution > kMaxCliResolution))
    throw UsageError("--resolution must lie in [0, " + std::to_string(kMaxCliResolution) + "]");
  if (cmd == "criterion") {
    if (c.nmax && (*c.nmax < 1 || *c.nmax > kMaxCriterionN))
      throw UsageError("--nmax must lie in [1, " + std::to_string(kMaxCriterionN) + "] for criterion");
    if (c.criterion == "h1" && c.p) throw UsageError("--p does not apply to --criterion h1");
  }
  if ((cmd == "mean" || cmd == "norm") && !c.input && c.values.empty())
    throw UsageError(cmd + " needs --input or --values");
  if (c.input && !c.values.empty()) throw UsageError("--input and --values are mutually exclusive");
  if (cmd == "experiment") {
    const auto& cat = experiment_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const ExperimentInfo& e) { return e.id == c.experiment; }))
      throw UsageError("unknown experiment '" + c.experiment + "'; known: " + catalog_ids());
  }
}

}  // namespace

RunConfig parse_invocation(const std::vector<std::string>& args) {
  RunConfig c;
  std::string expect;
  std::optional<unsigned> digits;

  CLI::App app{"Exact Walsh-Fourier summability kernels, norms and experiments", "walshsum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  auto* kernel = app.add_subcommand("kernel", "dump D_n, K_n or F_n as cell values");
  kernel->add_option("--type", c.kernel_type, "dirichlet, fejer or norlund")
      ->check(CLI::IsMember({"dirichlet", "fejer", "norlund"}));
  kernel->add_option("--n", c.n, "kernel index")->required();
  kernel->add_option("--resolution", c.resolution, "cells 2^N (default: smallest that fits)");
  add_weight_flags(kernel, c);

  auto* mean = app.add_subcommand("mean", "Norlund mean t_n f (both routes, cross-checked)");
  mean->add_option("--n", c.n, "mean index")->required();
  mean->add_option("--input", c.input, "step function file")->check(CLI::ExistingFile);
  mean->add_option("--values", c.values, "cell values, comma separated")->delimiter(',');
  add_weight_flags(mean, c);

  auto* norm = app.add_subcommand("norm", "L_p, weak-L1 or dyadic Hardy norm of a step function");
  norm->add_option("--kind", c.norm, "lp, weak-l1 or hardy")->check(CLI::IsMember({"lp", "weak-l1", "hardy"}));
  norm->add_option("--p", c.p, "exponent, e.g. 1/2 or inf");
  norm->add_option("--input", c.input, "step function file")->check(CLI::ExistingFile);
  norm->add_option("--values", c.values, "cell values, comma separated")->delimiter(',');

  auto* criterion = app.add_subcommand("criterion", "boundedness criterion series B(N)");
  criterion->add_option("--criterion", c.criterion, "main or h1")->check(CLI::IsMember({"main", "h1"}));
  criterion->add_option("--p", c.p, "exponent in (1/2, 1]");
  criterion->add_option("--nmax", c.nmax, "largest N");
  add_weight_flags(criterion, c);

  auto* decompose = app.add_subcommand("decompose", "split F_n along the binary digits of n");
  decompose->add_option("--n", c.n, "kernel index")->required();
  decompose->add_option("--resolution", c.resolution, "cells 2^N");
  add_weight_flags(decompose, c);

  auto* experiment = app.add_subcommand("experiment", "run an experiment harness");
  experiment->add_option("id", c.experiment, "experiment id (see list)")->required();
  experiment->add_option("--p", c.p, "exponent");
  experiment->add_option("--p-grid", c.p_grid, "exponents, comma separated")->delimiter(',');
  experiment->add_option("--nmin", c.nmin, "lower size limit");
  experiment->add_option("--nmax", c.nmax, "upper size limit");
  experiment->add_option("--atoms", c.atoms, "atoms per level")->check(CLI::Range(1, 1000));
  experiment->add_option("--delta", c.delta, "extra levels in the sup over n")->check(CLI::Range(1, 8));
  add_weight_flags(experiment, c);

  auto* list = app.add_subcommand("list", "print the experiment catalog");

  for (auto* sub : {kernel, mean, norm, criterion, decompose, experiment})
    add_common_flags(sub, c, expect, digits);
  (void)list;

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), 0);
  } catch (const CLI::CallForVersion&) {
    throw UsageError(version() + "\n", 0);
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    throw UsageError(std::string(e.what()) + "\n" + (help.empty() ? app.help() : help));
  }

  c.command = app.get_subcommands().front()->get_name();
  c.expect_pass = expect == "pass";
  if (digits) {
    c.digits = *digits;
  } else if (const char* env = std::getenv("WALSH_DIGITS")) {
    try {
      std::size_t used = 0;
      const unsigned long d = std::stoul(env, &used);
      if (used != std::string(env).size() || d < 10 || d > 2000) throw std::invalid_argument(env);
      c.digits = static_cast<unsigned>(d);
    } catch (const std::exception&) {
      throw UsageError("WALSH_DIGITS must be an integer in [10, 2000]");
    }
  }
  validate(c);
  return c;
}

namespace {

struct Outcome {
  ExperimentReport report;
  std::optional<StepFunction> function;
};

std::optional<WeightSequence> weights_of(const RunConfig& c) {
  if (c.weights_file) return load_weights_file(*c.weights_file, c.non_increasing);
  if (!c.weights) return std::nullopt;
  std::optional<Scalar> alpha;
  if (c.alpha) alpha = Scalar::parse(*c.alpha);
  return make_family(*c.weights, alpha);
}

WeightSequence weights_or_fejer(const RunConfig& c) {
  auto q = weights_of(c);
  return q ? *q : WeightSequence::fejer();
}

int fitting_resolution(std::uint64_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

StepFunction input_function(const RunConfig& c) {
  if (c.input) {
    std::ifstream in(*c.input);
    if (!in) throw DomainError("cannot open " + *c.input);
    return read_step_function(in);
  }
  std::vector<Scalar> v;
  for (const auto& s : c.values) v.push_back(Scalar::parse(s));
  if (!std::has_single_bit(v.size())) throw DomainError("--values needs a power-of-two number of cells");
  return StepFunction(std::countr_zero(v.size()), std::span<const Scalar>(v));
}

void add_cells(ExperimentReport& r, const std::string& name, const StepFunction& f) {
  auto& s = r.add_series(name);
  for (std::size_t i = 0; i < f.size(); ++i) s.points.push_back({Rational(static_cast<long long>(i)), f[i], {}});
}

void computed(ExperimentReport& r) {
  r.verdict = "computed";
  r.rule = "none (reporting only)";
  r.passed = true;
}

Outcome run_kernel(const RunConfig& c) {
  const std::uint64_t n = *c.n;
  const int res = c.resolution ? *c.resolution : fitting_resolution(n);
  Outcome o;
  auto& r = o.report;
  r.id = "kernel";
  r.parameters = {{"type", c.kernel_type}, {"n", n}, {"resolution", res}};
  StepFunction f;
  if (c.kernel_type == "dirichlet") {
    r.statement = "D_n = sum_{k<n} w_k";
    f = dirichlet(n, res);
  } else if (c.kernel_type == "fejer") {
    r.statement = "K_n = (1/n) sum_{k=1}^{n} D_k";
    f = fejer(n, res);
  } else {
    const auto q = weights_or_fejer(c);
    r.statement = "F_n = (1/Q_n) sum_{k=1}^{n} q_{n-k} D_k";
    r.parameters["weights"] = q.id();
    f = norlund_kernel(q, n, res);
  }
  add_cells(r, "cells", f);
  r.constants = {{"integral", integrate(f)}, {"l1_norm", lp_quasinorm(f, Exponent{}).value}, {"sup", f.sup_abs()}};
  computed(r);
  o.function = std::move(f);
  return o;
}

Outcome run_mean(const RunConfig& c) {
  const auto q = weights_or_fejer(c);
  const StepFunction f = input_function(c);
  Outcome o;
  auto& r = o.report;
  r.id = "mean";
  r.statement = "t_n f = (1/Q_n) sum_{k=1}^{n} q_{n-k} S_k f";
  r.parameters = {{"weights", q.id()}, {"n", *c.n}, {"resolution", f.resolution()}};
  StepFunction t = norlund_mean(q, *c.n, f);
  add_cells(r, "cells", t);
  r.constants = {{"l1_norm", lp_quasinorm(t, Exponent{}).value}, {"sup", t.sup_abs()}};
  r.notes.push_back("weighted partial sums and convolution with F_n agree");
  computed(r);
  o.function = std::move(t);
  return o;
}

Outcome run_norm(const RunConfig& c) {
  const StepFunction f = input_function(c);
  const Exponent p = c.p ? Exponent::parse(*c.p) : Exponent{};
  Outcome o;
  auto& r = o.report;
  r.id = "norm";
  NormValue v;
  if (c.norm == "lp") {
    r.statement = "||f||_p = (integral |f|^p)^{1/p}";
    v = lp_quasinorm(f, p);
  } else if (c.norm == "weak-l1") {
    r.statement = "||f||_{weak L1} = sup_t t |{|f| > t}|";
    v = weak_l1_norm(f);
  } else {
    if (p.infinite) throw DomainError("the Hardy norm needs a finite p");
    r.statement = "||f||_{H_p} = ||sup_n |S_{2^n} f|||_p";
    v = hardy_norm(f, p);
  }
  r.parameters = {{"kind", c.norm}, {"p", p.str()}, {"label", v.label()}, {"resolution", f.resolution()}};
  auto& s = r.add_series(v.label());
  s.points.push_back({p.infinite ? Rational(0) : p.value, v.value, {}});
  r.constants = {{"norm", v.value}};
  r.notes.push_back(v.value.is_exact() ? "exact" : "real, " + std::to_string(v.digits()) + " digits");
  computed(r);
  return o;
}

Outcome run_criterion(const RunConfig& c) {
  const auto q = weights_or_fejer(c);
  const int nmax = static_cast<int>(c.nmax ? *c.nmax : 40);
  Outcome o;
  auto& r = o.report;
  CriterionReport cr;
  if (c.criterion == "h1") {
    cr = criterion_h1(q, nmax);
    r.statement = "sup_N (1/Q_{2^N}) sum_{j=1}^{N} Q_{2^j} < inf";
  } else {
    cr = criterion_main(q, c.p ? parse_exact_decimal(*c.p) : Rational(1), nmax);
    r.statement = "sup_N 2^{N(1-p)} Q_{2^N}^{-p} sum_{j=1}^{N} Q_{2^j}^p 2^{j(p-1)} < inf";
  }
  r.id = "criterion-" + c.criterion;
  r.parameters = {{"weights", cr.weights}, {"p", cr.p.str()}, {"nmax", cr.nmax}};
  auto& s = r.add_series("B");
  for (std::size_t i = 0; i < cr.series.size(); ++i)
    s.points.push_back({Rational(static_cast<long long>(i + 1)), cr.series[i], cr.running_sup[i]});
  r.constants.emplace_back("supremum", cr.running_sup.back());
  if (cr.limit_estimate) r.constants.emplace_back("limit_estimate", *cr.limit_estimate);
  r.constants.emplace_back("half_ratio", Scalar(Real(cr.stats.half_ratio)));
  r.constants.emplace_back("log_slope", Scalar(Real(cr.stats.log_slope)));
  if (cr.stats.increment_slope) r.constants.emplace_back("increment_log_slope", Scalar(Real(*cr.stats.increment_slope)));
  if (cr.linf_verdict) r.notes.push_back("p = 1 series: " + std::string(to_string(*cr.linf_verdict)));
  r.verdict = std::string(to_string(cr.verdict));
  r.rule = "half ratio <= 1.05 and log slope <= 0.01 (bounded), log slope >= 0.05 and monotone (divergent), "
           "else the log-slope of the increments decides";
  r.passed = cr.verdict == Verdict::bounded;
  return o;
}

Outcome run_decompose(const RunConfig& c) {
  const auto q = weights_or_fejer(c);
  const BinaryIndex n(*c.n);
  const int res = c.resolution ? *c.resolution : fitting_resolution(n);
  KernelDecomposition d = gn1_decompose(q, n, res);
  Outcome o;
  auto& r = o.report;
  r.id = "decompose";
  r.statement = "F_n = part1 + part2, part2 = part2a + part2b";
  r.parameters = {{"weights", d.weights}, {"n", n.value()}, {"resolution", d.whole.resolution()}};
  add_cells(r, "whole", d.whole);
  add_cells(r, "part1", d.part1);
  add_cells(r, "part2", d.part2);
  add_cells(r, "part2a", d.part2a);
  add_cells(r, "part2b", d.part2b);
  const bool exact = d.whole.is_exact();
  auto same = [&](const StepFunction& a, const StepFunction& b) {
    if (exact) return a == b;
    return !((a - b).sup_abs() > Scalar(Real("1e-30")) * max(Scalar(1), b.sup_abs()));
  };
  if (!same(d.part1 + d.part2, d.whole)) throw InvariantError("part1 + part2 != F_n");
  if (!same(d.part2a + d.part2b, d.part2)) throw InvariantError("part2a + part2b != part2");
  r.verdict = "closed";
  r.rule = exact ? "exact equality of both splits" : "both splits agree to 1e-30";
  r.passed = true;
  return o;
}

Outcome run_command(const RunConfig& c) {
  Outcome o;
  if (c.command == "kernel") {
    o = run_kernel(c);
  } else if (c.command == "mean") {
    o = run_mean(c);
  } else if (c.command == "norm") {
    o = run_norm(c);
  } else if (c.command == "criterion") {
    o = run_criterion(c);
  } else if (c.command == "decompose") {
    o = run_decompose(c);
  } else if (c.command == "experiment") {
    ExperimentParams params;
    params.weights = weights_of(c);
    if (c.p) params.p = parse_exact_decimal(*c.p);
    for (const auto& s : c.p_grid) params.p_grid.push_back(parse_exact_decimal(s));
    params.nmin = c.nmin;
    params.nmax = c.nmax;
    params.seed = c.seed;
    params.atoms = c.atoms;
    params.delta = c.delta;
    params.config = c.to_json();
    o.report = run_experiment(c.experiment, params);
    return o;
  } else {
    throw DomainError("command '" + c.command + "' produces no report");
  }
  stamp_provenance(o.report, c.to_json(), std::nullopt);
  return o;
}

void write_catalog(std::ostream& out) {
  for (const auto& e : experiment_catalog()) {
    out << e.id << "\n  " << e.statement << "\n  defaults: " << e.defaults << '\n';
  }
}

}  // namespace

ExperimentReport command_report(const RunConfig& config) {
  set_working_digits(config.digits);
  return run_command(config).report;
}

int execute(const RunConfig& c, std::ostream& out) {
  set_working_digits(c.digits);
#ifdef _OPENMP
  if (c.jobs) omp_set_num_threads(*c.jobs);
#endif
  if (c.command == "list") {
    write_catalog(out);
    return kExitOk;
  }
  const Outcome o = run_command(c);

  std::ostringstream text;
  if (c.format == "json") {
    text << o.report.to_json().dump(2) << '\n';
  } else if (c.format == "csv") {
    text << o.report.to_csv();
  } else {
    write_step_function(text, *o.function);
  }
  if (c.output) {
    std::ofstream file(*c.output, std::ios::binary | std::ios::trunc);
    if (!file) throw DomainError("cannot write " + *c.output);
    file << text.str();
  } else {
    out << text.str();
  }
  if (c.expect_pass && !o.report.passed) return kExitExpectation;
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    const RunConfig c = parse_invocation(args);
    const int status = execute(c, out);
    if (status == kExitExpectation) err << "expectation failed: report did not pass\n";
    return status;
  } catch (const UsageError& e) {
    (e.code == 0 ? out : err) << e.what();
    return e.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "invariant breach: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace walshsum
