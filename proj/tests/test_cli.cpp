#include <doctest.h>

#include "support.hpp"
#include "walshsum/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace walshsum;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "walshsum");
  return parse_invocation(args);
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "walshsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int usage_code(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const UsageError& e) {
    return e.code;
  }
  return -1;
}

Json json_of(const Run& r) { return Json::parse(r.out); }

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("parse_invocation") {
  const auto c = parse({"kernel", "--type", "fejer", "--n", "13", "--resolution", "5", "--format", "csv"});
  CHECK(c.command == "kernel");
  CHECK(c.kernel_type == "fejer");
  CHECK(*c.n == 13);
  CHECK(*c.resolution == 5);
  CHECK(c.format == "csv");

  const auto e = parse({"experiment", "threshold-scan", "--p-grid", "0.5,3/4,1", "--nmax", "30", "--weights", "cesaro",
                        "--alpha", "1/2", "--expect", "pass"});
  CHECK(e.experiment == "threshold-scan");
  CHECK(e.p_grid == std::vector<std::string>{"0.5", "3/4", "1"});
  CHECK(*e.alpha == "1/2");
  CHECK(e.expect_pass);
  CHECK(e.to_json()["p_grid"].size() == 3);

  const auto m = parse({"mean", "--n", "3", "--values", "1,2,3,4"});
  CHECK(m.values.size() == 4);
}

TEST_CASE("usage errors") {
  CHECK(usage_code({"kernel", "--n", "3", "--bogus"}) == 2);
  CHECK(usage_code({}) == 2);
  CHECK(usage_code({"kernel"}) == 2);
  CHECK(usage_code({"kernel", "--n", "3", "--resolution", "21"}) == 2);
  CHECK(usage_code({"kernel", "--type", "dirichlet", "--n", "3", "--weights", "fejer"}) == 2);
  CHECK(usage_code({"criterion", "--weights", "fejer", "--weights-file", "/dev/null"}) == 2);
  CHECK(usage_code({"criterion", "--weights", "cesaro"}) == 2);
  CHECK(usage_code({"criterion", "--weights", "fejer", "--alpha", "1/2"}) == 2);
  CHECK(usage_code({"criterion", "--nmax", "63"}) == 2);
  CHECK(usage_code({"criterion", "--criterion", "h1", "--p", "1"}) == 2);
  CHECK(usage_code({"mean", "--n", "2"}) == 2);
  CHECK(usage_code({"norm", "--values", "1,2", "--format", "stepfn"}) == 2);
  CHECK(usage_code({"experiment", "nothing-here"}) == 2);
  CHECK(usage_code({"kernel", "--n", "3", "--digits", "5"}) == 2);
  CHECK(usage_code({"--help"}) == 0);
}

TEST_CASE("kernel command") {
  const auto r = run({"kernel", "--n", "8", "--resolution", "3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0,8\n1,0\n") != std::string::npos);

  const auto j = json_of(run({"kernel", "--type", "fejer", "--n", "3"}));
  CHECK(j["provenance"]["config"]["n"] == 3);
  CHECK(j["provenance"]["backend"] == "exact-rational");

  const auto s = run({"kernel", "--type", "fejer", "--n", "3", "--format", "stepfn"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("resolution 2\n", 0) == 0);
}

TEST_CASE("mean, norm and decompose commands") {
  CHECK(run({"mean", "--n", "4", "--values", "1,2,3,4"}).code == 0);
  const auto n = json_of(run({"norm", "--kind", "lp", "--p", "1/2", "--values", "4,0,0,0"}));
  CHECK(n["constants"].dump().find("1/4") != std::string::npos);
  const auto w = json_of(run({"norm", "--kind", "weak-l1", "--values", "4,0,0,0"}));
  CHECK(w["constants"].begin().value() == "1");
  CHECK(run({"decompose", "--n", "13", "--weights", "cesaro", "--alpha", "1/2"}).code == 0);

  const auto file = temp_path("walshsum_cli_input.txt");
  std::ofstream(file) << "resolution 1\nbackend exact\n3\n-1\n";
  const auto h = run({"norm", "--kind", "hardy", "--p", "1", "--input", file.string()});
  CHECK(h.code == 0);
  std::filesystem::remove(file);

  CHECK(run({"mean", "--n", "5", "--values", "1,2,3,4"}).code == 2);
}

TEST_CASE("criterion command") {
  const auto j = json_of(run({"criterion", "--weights", "fejer", "--p", "1", "--nmax", "30"}));
  CHECK(j["verdict"] == "bounded-evidence");
  CHECK(j["constants"]["supremum"] == "1073741823/536870912");
  CHECK(run({"criterion", "--weights", "cesaro", "--alpha", "1/2", "--p", "0.7", "--nmax", "30"}).code == 0);
}

TEST_CASE("expectations and output files") {
  const auto fail = run({"experiment", "kernel-sup-scaling", "--p", "3/4", "--nmax", "6", "--expect", "pass"});
  CHECK(fail.code == 1);
  CHECK(fail.err.find("expectation failed") != std::string::npos);
  CHECK(run({"experiment", "fejer-norm-scan", "--nmax", "16", "--expect", "pass"}).code == 0);

  const auto file = temp_path("walshsum_cli_report.json");
  const auto r = run({"experiment", "norm-formulas", "--nmax", "3", "--output", file.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(file);
  CHECK(Json::parse(in)["id"] == "norm-formulas");
  std::filesystem::remove(file);
}

TEST_CASE("WALSH_DIGITS") {
  ::setenv("WALSH_DIGITS", "80", 1);
  CHECK(parse({"list"}).digits == 80);
  CHECK(parse({"kernel", "--n", "3", "--digits", "60"}).digits == 60);
  ::setenv("WALSH_DIGITS", "abc", 1);
  CHECK(usage_code({"list"}) == 2);
  ::unsetenv("WALSH_DIGITS");
  CHECK(parse({"list"}).digits == kDefaultDigits);
}

TEST_CASE("list command") {
  const auto r = run({"list"});
  CHECK(r.code == 0);
  for (const auto& e : experiment_catalog()) CHECK(r.out.find(e.id) != std::string::npos);
}

TEST_CASE("executable exit codes") {
  const char* exe = std::getenv("WALSHSUM_CLI");
  if (!exe) return;
  auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(exe) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("list") == 0);
  CHECK(status("kernel --n 3 --bogus") == 2);
  CHECK(status("kernel --n 9 --resolution 3") == 2);
  CHECK(status("experiment kernel-sup-scaling --p 3/4 --nmax 6 --expect pass") == 1);
  CHECK(status("--help") == 0);
}
