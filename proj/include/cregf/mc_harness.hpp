#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cregf {

enum class SimKind { BiasMse, SizePower };

/// One Monte Carlo experiment: every (model, n, s) combination is a table
/// cell, replicated `reps` times.
struct SimSpec {
  SimKind kind = SimKind::SizePower;
  std::vector<std::string> models;  // distribution spec strings, e.g. "gamma:2,1"
  std::vector<std::size_t> n_list;
  std::vector<int> s_list;
  std::vector<double> alpha_list;  // SizePower only
  std::size_t reps = 10000;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
};

/// One CSV line. BiasMse cells produce metrics bias, abs_bias and mse;
/// SizePower cells produce one rejection_rate per alpha.
struct SimRow {
  std::string model;
  std::size_t n = 0;
  int s = 1;
  std::string metric;
  std::optional<double> alpha;
  double value = 0.0;
  double mc_se = 0.0;
};

/// Called after each finished cell with (cells done, cells total).
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

/// Throws InvalidParameter (or ParseError for a bad model string) when the
/// spec is unusable.
void validate(const SimSpec& spec);

/// Bias and MSE of the C_s estimator against the closed-form truth, or the
/// quadrature value where no closed form exists.
std::vector<SimRow> run_bias_mse(const SimSpec& spec, const ProgressFn& progress = {});

/// Empirical rejection rates of the two-sided test with binomial standard
/// errors sqrt(p(1-p)/reps).
std::vector<SimRow> run_size_power(const SimSpec& spec, const ProgressFn& progress = {});

/// Dispatches on spec.kind.
std::vector<SimRow> run_simulation(const SimSpec& spec, const ProgressFn& progress = {});

struct NullVarianceResult {
  double empirical = 0.0;
  double target = 0.0;  // s / (4 s^2 - 1)
};

/// Empirical Var(sqrt(n) delta_star) over `reps` exp(1) samples of size n.
NullVarianceResult null_variance_check(int s, std::size_t n, std::size_t reps, std::uint64_t seed,
                                       std::size_t workers = 1);

/// Identifies a table cell by content, so a cell's random stream does not
/// move when other models or sizes are added to a config.
std::uint64_t cell_key(std::string_view model, std::size_t n, int s);

/// Columns: model,n,s,metric,alpha,value,mc_se. Values use the shortest
/// round-trip decimal form, so equal results give byte-identical files.
void write_csv(std::ostream& out, std::span<const SimRow> rows);

}  // namespace cregf
