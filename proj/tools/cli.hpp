#ifndef NSHARDY_TOOLS_CLI_HPP
#define NSHARDY_TOOLS_CLI_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nshardy/hardy.hpp"
#include "nshardy/rational.hpp"

namespace nshardy::cli {

inline constexpr int kDefaultSweepCap = 16;

/// One row of the dimension sweep; every value comes out of an LP solve or
/// the PN search.
struct SweepRow {
  int d = 2;
  Rational q_h_gnst;
  Rational q_rh_gnst;
  Rational ppc_gnst;
  std::optional<double> quantum_ref;
};

SweepRow compute_sweep_row(int d);
std::vector<SweepRow> compute_sweep(int d_min, int d_max, int cap = kDefaultSweepCap);
/// Header plus one LF-terminated line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// "a0,a1,b0,b1" -> Scenario.
Scenario parse_dims(const std::string& text);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nshardy::cli

#endif  // NSHARDY_TOOLS_CLI_HPP
