#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcm {

/// A sweep of random connected instances; trial k uses seed `seed + k`.
struct BatchConfig {
  int order = 4;
  int missing = 1;
  int trials = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
};

struct BatchRow {
  int order = 0;
  int missing_count = 0;
  std::uint64_t seed = 0;
  double max_divergence = 0.0;
  bool coincide = false;
  double lambda_max_ev = 0.0;
  double gci_llsm = 0.0;

  friend bool operator==(const BatchRow&, const BatchRow&) = default;
};

/// One trial: generate, complete with both methods, compare.
BatchRow run_trial(const BatchConfig& config, std::uint64_t seed);

/// Reference implementation, one trial after another.
std::vector<BatchRow> run_batch_serial(const BatchConfig& config);

/// Trials distributed over OpenMP threads. Produces exactly the rows of
/// run_batch_serial, in the same order. The first exception raised by any
/// trial is rethrown after the loop.
std::vector<BatchRow> run_batch(const BatchConfig& config);

/// CSV with header order,missing_count,seed,max_divergence,coincide,lambda_max_ev,gci_llsm.
std::string batch_csv(const std::vector<BatchRow>& rows);

}  // namespace pcm
