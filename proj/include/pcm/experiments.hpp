#pragma once

#include <cstdint>
#include <random>

#include "pcm/comparison.hpp"
#include "pcm/pcm.hpp"

namespace pcm {

/// The 5x5 matrix with the single missing pair (1,5) on which the LLSM and
/// eigenvalue completions differ (0.1705 vs 0.1798).
IncompletePCM lemma2_matrix();

/// Runs both completions and compares them entrywise. Throws DisconnectedGraph.
CompletionComparison compare_completions(const IncompletePCM& pcm, double tolerance);

/// Order-n matrix whose two optimal completions differ: the 5x5 example for
/// n = 5, otherwise that example with alternative 2 cloned n-5 times.
/// Throws OrderTooSmall for n <= 4, where no such matrix exists.
IncompletePCM counterexample_of_order(int n);

/// Deterministic generator for test instances.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), identical on every platform.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Log-uniform on [lo, hi].
  double log_uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Saaty-scale bounds for generated judgments.
inline constexpr double kScaleMin = 1.0 / 9.0;
inline constexpr double kScaleMax = 9.0;

/// Random order-n matrix with `missing_count` missing pairs and a connected
/// comparison graph. Known entries are log-uniform on [1/9, 9]; missing
/// pairs are removed one at a time, each chosen uniformly among the edges
/// whose removal keeps the graph connected.
/// Throws TooManyMissing when missing_count > n(n-1)/2 - (n-1).
IncompletePCM random_connected_incomplete(int n, int missing_count, std::uint64_t seed);

/// Largest missing count that still leaves a spanning tree.
inline int max_missing_connected(int n) { return n * (n - 1) / 2 - (n - 1); }

}  // namespace pcm
