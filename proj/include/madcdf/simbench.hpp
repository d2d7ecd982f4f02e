#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "madcdf/cdf_estimators.hpp"
#include "madcdf/distributions.hpp"

namespace madcdf {

inline constexpr const char* kVersion = "madcdf 1.0.0";

struct BenchConfig {
  std::vector<std::string> distributions = builtin_names();
  std::vector<std::size_t> sizes = {20, 50, 200};
  std::size_t reps = 1000;
  std::vector<Method> estimators = {Method::Empirical, Method::Forward, Method::Backward, Method::Centre,
                                    Method::Obc,       Method::Fch,     Method::RichardsonAdjusted};
  std::uint64_t master_seed = 0;
  ScVariant sc_variant = ScVariant::MarronWand;
  RichardsonOptions richardson;
  /// Worker threads; 0 reads MADCDF_THREADS, falling back to hardware concurrency.
  unsigned threads = 0;
};

struct BenchCell {
  std::string dist;
  std::size_t n = 0;
  Method estimator = Method::Empirical;
  double mean_ase = 0.0;
  double mc_std_error = 0.0;  // sd of per-replication ASE / sqrt(reps)
  std::size_t reps = 0;
};

struct BenchReport {
  BenchConfig config;
  std::string version = kVersion;
  std::vector<BenchCell> cells;

  /// nullptr when the cell was not requested.
  [[nodiscard]] const BenchCell* find(const std::string& dist, std::size_t n, Method m) const;
};

/// Averaged squared error of the estimate against the true cdf, taken over
/// the estimate's own abscissae.
[[nodiscard]] double ase(const CdfEstimate& e, const DistSpec& d);

/// Replication r of every (dist, n) cell draws its sample from stream r of
/// the master seed, and every estimator sees that same sample. Per-replication
/// errors are reduced in replication order, so the report does not depend on
/// the thread count.
[[nodiscard]] BenchReport run_benchmark(const BenchConfig& cfg);

[[nodiscard]] unsigned resolve_threads(unsigned requested);

}  // namespace madcdf
