#include "walshsum/serialize.hpp"

#include "walshsum/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace walshsum {

void write_step_function(std::ostream& out, const StepFunction& f) {
  out << "resolution " << f.resolution() << '\n';
  if (f.is_exact())
    out << "backend exact\n";
  else
    out << "backend real " << working_digits() << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) out << f[i].str() << '\n';
}

StepFunction read_step_function(std::istream& in) {
  std::string word, backend;
  int resolution = -1;
  if (!(in >> word >> resolution) || word != "resolution") throw DomainError("expected 'resolution N'");
  check_resolution(resolution);
  if (!(in >> word >> backend) || word != "backend") throw DomainError("expected 'backend ...'");
  unsigned digits = 0;
  if (backend == "real") {
    if (!(in >> digits)) throw DomainError("expected digits after 'backend real'");
  } else if (backend != "exact") {
    throw DomainError("unknown backend '" + backend + "'");
  }
  const std::size_t n = std::size_t{1} << resolution;
  std::vector<Scalar> values;
  values.reserve(n);
  std::string token;
  while (values.size() < n && in >> token) {
    if (backend == "exact")
      values.emplace_back(parse_rational(token));
    else
      values.emplace_back(Real(token));
  }
  if (values.size() != n) throw DomainError("expected " + std::to_string(n) + " values");
  if (in >> token) throw DomainError("trailing data after step function values");
  if (backend == "exact") return StepFunction(resolution, std::span<const Scalar>(values));
  ValueArray::Reals reals;
  reals.reserve(n);
  for (const auto& v : values) reals.push_back(v.real());
  return StepFunction(resolution, ValueArray(std::move(reals)));
}

std::string to_text(const StepFunction& f) {
  std::ostringstream out;
  write_step_function(out, f);
  return out.str();
}

StepFunction from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_step_function(in);
}

}  // namespace walshsum
