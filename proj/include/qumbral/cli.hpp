#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qumbral/umbral.hpp"

namespace qumbral::cli {

enum ExitCode : int { ok = 0, usage_error = 1, internal_error = 2 };

/// Runs the command line tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Named functionals accepted by `functional --f`:
///   eq, eq+1, eq-1, eq(y*t), eq(y*t)+1, eq(y*t)-1,
///   bern-det, bern-g, euler-det, euler-g, geno-det, geno-g, t^K (K may be negative).
/// Known to t^N. Throws std::invalid_argument for other names.
Functional named_functional(const Ctx& ctx, std::string_view name, const Rational& y, int n_max);
std::vector<std::string> functional_names();

}  // namespace qumbral::cli
