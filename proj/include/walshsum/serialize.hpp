#pragma once

#include "walshsum/step_function.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace walshsum {

// Text format:
//   resolution N
//   backend exact            (or: backend real D)
//   one value per line, "a/b" or a decimal with D significant digits
void write_step_function(std::ostream& out, const StepFunction& f);
StepFunction read_step_function(std::istream& in);

std::string to_text(const StepFunction& f);
StepFunction from_text(std::string_view text);

}  // namespace walshsum
