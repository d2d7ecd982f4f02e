#include "madcdf/simbench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "madcdf/error.hpp"

namespace madcdf {

const BenchCell* BenchReport::find(const std::string& dist, std::size_t n, Method m) const {
  for (const BenchCell& c : cells) {
    if (c.dist == dist && c.n == n && c.estimator == m) return &c;
  }
  return nullptr;
}

double ase(const CdfEstimate& e, const DistSpec& d) {
  if (e.points.empty()) throw Error(ErrorCode::TooFewPoints, "ASE of an empty estimate");
  double total = 0.0;
  for (const CdfPoint& pt : e.points) {
    const double err = pt.p - cdf(d, pt.v);
    total += err * err;
  }
  return total / static_cast<double>(e.points.size());
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MADCDF_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void validate(const BenchConfig& cfg) {
  if (cfg.reps < 1) throw Error(ErrorCode::InvalidConfig, "reps must be at least 1");
  if (cfg.distributions.empty() || cfg.sizes.empty() || cfg.estimators.empty()) {
    throw Error(ErrorCode::InvalidConfig, "benchmark needs distributions, sizes and estimators");
  }
  for (std::size_t n : cfg.sizes) {
    if (n < 3) throw Error(ErrorCode::InvalidConfig, "benchmark sample sizes must be at least 3");
  }
}

// Runs all replications of one (dist, n) cell; ase_by_rep[e][r].
std::vector<std::vector<double>> run_cell(const BenchConfig& cfg, const DistSpec& d, std::size_t n, unsigned threads) {
  const std::size_t n_est = cfg.estimators.size();
  std::vector<std::vector<double>> ase_by_rep(n_est, std::vector<double>(cfg.reps, 0.0));

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_rep = cfg.reps;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t r = next.fetch_add(1); r < cfg.reps; r = next.fetch_add(1)) {
      try {
        const Sample s = sample_n(d, n, SeedSpec{cfg.master_seed, r});
        for (std::size_t e = 0; e < n_est; ++e) {
          ase_by_rep[e][r] = ase(estimate(s, cfg.estimators[e], cfg.richardson), d);
        }
      } catch (const Error& err) {
        std::lock_guard lock(failure_mutex);
        if (r < failed_rep) {
          failed_rep = r;
          failure = std::make_exception_ptr(Error(err.code(), "dist=" + d.name() + " n=" + std::to_string(n) +
                                                                  " rep=" + std::to_string(r) + ": " + err.what()));
        }
      }
    }
  };

  const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(cfg.reps, 1u << 16)));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return ase_by_rep;
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
  validate(cfg);
  const unsigned threads = resolve_threads(cfg.threads);
  BenchReport report;
  report.config = cfg;
  for (const std::string& name : cfg.distributions) {
    const DistSpec d = builtin(name, cfg.sc_variant);
    for (std::size_t n : cfg.sizes) {
      const auto ase_by_rep = run_cell(cfg, d, n, threads);
      for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
        const auto& values = ase_by_rep[e];
        double sum = 0.0;
        for (double v : values) sum += v;
        const double mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
        report.cells.push_back(
            {name, n, cfg.estimators[e], mean, sd / std::sqrt(static_cast<double>(values.size())), values.size()});
      }
    }
  }
  return report;
}

}  // namespace madcdf
