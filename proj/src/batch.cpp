#include "pcm/batch.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>

#include "pcm/experiments.hpp"

namespace pcm {

BatchRow run_trial(const BatchConfig& config, std::uint64_t seed) {
  const auto pcm = random_connected_incomplete(config.order, config.missing, seed);
  const auto cmp = compare_completions(pcm, config.tolerance);
  return {config.order, config.missing, seed, cmp.max_divergence, cmp.coincide, cmp.ev.lambda_max, cmp.llsm.gci};
}

std::vector<BatchRow> run_batch_serial(const BatchConfig& config) {
  std::vector<BatchRow> rows;
  rows.reserve(static_cast<std::size_t>(std::max(config.trials, 0)));
  for (int k = 0; k < config.trials; ++k) rows.push_back(run_trial(config, config.seed + static_cast<std::uint64_t>(k)));
  return rows;
}

std::vector<BatchRow> run_batch(const BatchConfig& config) {
  const int trials = std::max(config.trials, 0);
  std::vector<BatchRow> rows(static_cast<std::size_t>(trials));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < trials; ++k) {
    try {
      rows[static_cast<std::size_t>(k)] = run_trial(config, config.seed + static_cast<std::uint64_t>(k));
    } catch (...) {
#pragma omp critical(pcm_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string batch_csv(const std::vector<BatchRow>& rows) {
  std::string out = "order,missing_count,seed,max_divergence,coincide,lambda_max_ev,gci_llsm\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%llu,%.17g,%s,%.17g,%.17g\n", r.order, r.missing_count,
                  static_cast<unsigned long long>(r.seed), r.max_divergence, r.coincide ? "true" : "false",
                  r.lambda_max_ev, r.gci_llsm);
    out += buf;
  }
  return out;
}

}  // namespace pcm
