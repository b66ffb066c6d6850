#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "cregf/mc_harness.hpp"

namespace cregf {

/// Observations separated by whitespace or newlines, or a single-column CSV
/// (one optional non-numeric header line). Lines starting with '#' are
/// comments. Throws ParseError on malformed input, EmptyInput on no values.
std::vector<double> parse_data(std::istream& in);
std::vector<double> read_data_file(const std::filesystem::path& path);

/// One value per line in shortest round-trip form.
void write_data(std::ostream& out, std::span<const double> values);

/// Key-value simulation config, one `key = value` per line:
///
///   kind    = size_power | bias_mse
///   models  = exp:1 gamma:2,1 weibull:2,1      (whitespace separated; repeated
///                                               models lines accumulate)
///   n       = 10 20 30 40 50
///   s       = 1 2 3
///   alpha   = 0.01 0.05                        (size_power; default 0.01 0.05)
///   reps    = 10000                            (default 10000)
///   seed    = 1                                (default 1)
///   workers = 4                                (default 1)
///
/// '#' starts a comment anywhere on a line. Numeric lists accept spaces or
/// commas. Unknown keys are errors.
SimSpec parse_sim_config(std::istream& in);
SimSpec load_sim_config(const std::filesystem::path& path);

}  // namespace cregf
