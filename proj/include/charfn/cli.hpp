#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "charfn/function_core.hpp"
#include "charfn/herglotz_measure.hpp"

namespace charfn::cli {

// Exit codes: 0 success, 1 a requested verification failed (or a
// computation error), 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// "a+bi" or "a-bi" with a mandatory real part.
Complex parse_complex(std::string_view text);

// "loc:weight,loc:weight,..."
std::vector<Atom> parse_atoms(std::string_view text);

// "default" or "file:<path>".
EvaluationGrid parse_grid(std::string_view text);

// args[0] is the verb. The report goes to out, diagnostics to err.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace charfn::cli
