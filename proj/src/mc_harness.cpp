#include "cregf/mc_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "cregf/ddcregf_test.hpp"
#include "cregf/distributions.hpp"
#include "cregf/error.hpp"
#include "cregf/format.hpp"
#include "cregf/estimator.hpp"
#include "cregf/random.hpp"

namespace cregf {
namespace {

constexpr std::size_t kChunk = 64;

// Runs fn(rep) for rep in [0, reps) on `workers` threads. fn writes only to
// its own slot, so the caller's reduction sees the same values in the same
// order for any worker count.
template <class Fn>
void for_each_rep(std::size_t reps, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, reps / kChunk));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= reps) return;
        const std::size_t end = std::min(begin + kChunk, reps);
        for (std::size_t rep = begin; rep < end; ++rep) fn(rep);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(reps);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};

Moments moments(std::span<const double> v) {
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double m = sum / n;
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

double truth_for(const DistributionModel& model, int s) {
  try {
    return cregf_closed(model, s).value;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoClosedForm) throw;
  }
  return cregf_numeric(model, s).value;
}

std::size_t cell_count(const SimSpec& spec) {
  return spec.models.size() * spec.n_list.size() * spec.s_list.size();
}

}  // namespace

std::uint64_t cell_key(std::string_view model, std::size_t n, int s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  auto feed = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (char c : model) feed(static_cast<unsigned char>(c));
  feed('|');
  for (int b = 0; b < 8; ++b) feed(static_cast<unsigned char>((static_cast<std::uint64_t>(n) >> (8 * b)) & 0xff));
  feed('|');
  for (int b = 0; b < 4; ++b) feed(static_cast<unsigned char>((static_cast<std::uint32_t>(s) >> (8 * b)) & 0xff));
  return h;
}

void validate(const SimSpec& spec) {
  if (spec.reps < 1) fail(ErrorKind::InvalidParameter, "reps must be at least 1");
  if (spec.models.empty()) fail(ErrorKind::InvalidParameter, "no models given");
  if (spec.n_list.empty() || spec.s_list.empty()) fail(ErrorKind::InvalidParameter, "n and s lists must be non-empty");
  for (const auto& m : spec.models) parse_model(m);
  const int max_s = *std::max_element(spec.s_list.begin(), spec.s_list.end());
  if (*std::min_element(spec.s_list.begin(), spec.s_list.end()) < 1) {
    fail(ErrorKind::InvalidParameter, "every s must be >= 1");
  }
  const std::size_t need = static_cast<std::size_t>(max_s) + (spec.kind == SimKind::SizePower ? 1 : 0);
  for (std::size_t n : spec.n_list) {
    if (n < need) {
      fail(ErrorKind::InvalidParameter,
           "n = " + std::to_string(n) + " is too small for s = " + std::to_string(max_s));
    }
  }
  if (spec.kind == SimKind::SizePower) {
    if (spec.alpha_list.empty()) fail(ErrorKind::InvalidParameter, "alpha list must be non-empty");
    for (double a : spec.alpha_list) {
      if (!(a > 0.0 && a < 1.0)) fail(ErrorKind::InvalidProbability, "alpha must lie in (0, 1)");
    }
  }
}

std::vector<SimRow> run_bias_mse(const SimSpec& spec, const ProgressFn& progress) {
  validate(spec);
  std::vector<SimRow> rows;
  const std::size_t total = cell_count(spec);
  std::size_t done = 0;
  for (const auto& name : spec.models) {
    const auto model = parse_model(name);
    const std::string label = to_string(model);
    for (std::size_t n : spec.n_list) {
      for (int s : spec.s_list) {
        double truth = 0.0;
        try {
          truth = truth_for(model, s);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::DivergentIntegral) {
            fail(ErrorKind::DivergentIntegral, "no finite C_s truth for " + label + " at s = " + std::to_string(s));
          }
          throw;
        }
        const std::uint64_t cell = cell_key(label, n, s);
        std::vector<double> err(spec.reps);
        for_each_rep(spec.reps, spec.workers, [&](std::size_t rep) {
          Rng rng(substream_seed(spec.master_seed, cell, rep));
          const auto smp = Sample::sort_validate(draw(model, n, rng));
          err[rep] = cregf_estimate(smp, s).value - truth;
        });
        std::vector<double> sq(err.size());
        std::transform(err.begin(), err.end(), sq.begin(), [](double e) { return e * e; });
        const auto b = moments(err);
        const auto m = moments(sq);
        rows.push_back({label, n, s, "bias", std::nullopt, b.mean, b.se});
        rows.push_back({label, n, s, "abs_bias", std::nullopt, std::abs(b.mean), b.se});
        rows.push_back({label, n, s, "mse", std::nullopt, m.mean, m.se});
        if (progress) progress(++done, total);
      }
    }
  }
  return rows;
}

std::vector<SimRow> run_size_power(const SimSpec& spec, const ProgressFn& progress) {
  validate(spec);
  std::vector<SimRow> rows;
  const std::size_t total = cell_count(spec);
  std::size_t done = 0;
  for (const auto& name : spec.models) {
    const auto model = parse_model(name);
    const std::string label = to_string(model);
    for (std::size_t n : spec.n_list) {
      for (int s : spec.s_list) {
        const std::uint64_t cell = cell_key(label, n, s);
        std::vector<double> p_values(spec.reps);
        for_each_rep(spec.reps, spec.workers, [&](std::size_t rep) {
          Rng rng(substream_seed(spec.master_seed, cell, rep));
          const auto smp = Sample::sort_validate(draw(model, n, rng));
          p_values[rep] = run_test(smp, s, spec.alpha_list.front(), Sidedness::TwoSidedPaper).p_value;
        });
        for (double alpha : spec.alpha_list) {
          const auto hits = std::count_if(p_values.begin(), p_values.end(), [alpha](double p) { return p < alpha; });
          const double rate = static_cast<double>(hits) / static_cast<double>(spec.reps);
          const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(spec.reps));
          rows.push_back({label, n, s, "rejection_rate", alpha, rate, se});
        }
        if (progress) progress(++done, total);
      }
    }
  }
  return rows;
}

std::vector<SimRow> run_simulation(const SimSpec& spec, const ProgressFn& progress) {
  return spec.kind == SimKind::BiasMse ? run_bias_mse(spec, progress) : run_size_power(spec, progress);
}

NullVarianceResult null_variance_check(int s, std::size_t n, std::size_t reps, std::uint64_t seed,
                                       std::size_t workers) {
  if (s < 1 || n < static_cast<std::size_t>(s) + 1) fail(ErrorKind::OrderOutOfRange, "null variance needs n >= s + 1");
  if (reps < 2) fail(ErrorKind::InvalidParameter, "null variance needs at least 2 replications");
  const auto model = make_model(Family::Exponential, {1.0});
  const std::uint64_t cell = cell_key("null_variance", n, s);
  std::vector<double> scaled(reps);
  const double root_n = std::sqrt(static_cast<double>(n));
  for_each_rep(reps, workers, [&](std::size_t rep) {
    Rng rng(substream_seed(seed, cell, rep));
    scaled[rep] = root_n * delta_star(Sample::sort_validate(draw(model, n, rng)), s);
  });
  const auto m = moments(scaled);
  const double var = m.se * m.se * static_cast<double>(reps);
  return {var, null_variance(s)};
}

void write_csv(std::ostream& out, std::span<const SimRow> rows) {
  out << "model,n,s,metric,alpha,value,mc_se\n";
  for (const auto& r : rows) {
    out << '"' << r.model << "\"," << r.n << ',' << r.s << ',' << r.metric << ',';
    if (r.alpha) out << shortest(*r.alpha);
    out << ',' << shortest(r.value) << ',' << shortest(r.mc_se) << '\n';
  }
}

}  // namespace cregf
