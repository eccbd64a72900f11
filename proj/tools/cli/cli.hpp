#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cltlab::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // usage, validation and failed checks
inline constexpr int kExitBudget = 2;   // exact, lattice or quantizer budget exhausted

/// Runs one command line. `args` excludes the program name. Normal output goes
/// to `out` (or to --out PATH), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that reads back as the same double.
std::string format_double(double v);

/// "16,64,256": positive and strictly increasing.
std::vector<long> parse_n_list(std::string_view text);

/// "lo:hi:step" with step > 0 and lo <= hi.
std::vector<double> parse_grid(std::string_view text);

struct VerifyOutcome {
  std::string property;
  bool pass = false;
  std::string detail;
};

/// Invariant suite behind `verify`: randomized exact checks seeded from `seed`.
std::vector<VerifyOutcome> run_verify_suite(std::uint64_t seed, int trials);

}  // namespace cltlab::cli
