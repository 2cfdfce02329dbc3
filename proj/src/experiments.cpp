#include "pcm/experiments.hpp"

#include <cmath>
#include <limits>

#include "pcm/eigenvalue.hpp"
#include "pcm/graph.hpp"
#include "pcm/transform.hpp"

namespace pcm {

CompletionComparison compare_results(CompletionResult llsm, CompletionResult ev, double tolerance) {
  CompletionComparison out;
  const int n = llsm.order();
  out.order = n;
  out.tolerance = tolerance;
  out.divergence = Matrix::Zero(n, n);
  for (const auto& [i, j] : llsm.filled) {
    const double d = std::abs(std::log(llsm.matrix(i, j) / ev.matrix(i, j)));
    out.divergence(i, j) = out.divergence(j, i) = d;
    if (!out.max_position || d > out.max_divergence) {
      out.max_divergence = d;
      out.max_position = Position{i, j};
    }
  }
  out.coincide = out.max_divergence <= tolerance;
  out.llsm = std::move(llsm);
  out.ev = std::move(ev);
  return out;
}

IncompletePCM lemma2_matrix() {
  // Upper triangle, row-major.
  return IncompletePCM::from_upper(5, {
                                          1.0 / 2, 5.0, 1.0 / 6, std::nullopt,  // row 1
                                          4.0, 1.0 / 2, 1.0 / 6,                 // row 2
                                          1.0 / 6, 1.0 / 7,                      // row 3
                                          1.0 / 2,                               // row 4
                                      });
}

CompletionComparison compare_completions(const IncompletePCM& pcm, double tolerance) {
  require_connected(pcm);
  return compare_results(llsm_completion(pcm), ev_completion(pcm), tolerance);
}

IncompletePCM counterexample_of_order(int n) {
  if (n <= 4)
    throw OrderTooSmall("no counterexample exists for order " + std::to_string(n) +
                        ": both optimal completions coincide up to order 4");
  IncompletePCM pcm = lemma2_matrix();
  while (pcm.order() < n) pcm = clone_alternative(pcm, 1);
  return pcm;
}

double InstanceRng::uniform() {
  // 53 random bits mapped onto [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double InstanceRng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::size_t InstanceRng::index(std::size_t n) {
  // Rejection sampling keeps the draw unbiased and platform independent.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

IncompletePCM random_connected_incomplete(int n, int missing_count, std::uint64_t seed) {
  if (n < 2) throw Error("order must be at least 2");
  if (missing_count < 0 || missing_count > max_missing_connected(n))
    throw TooManyMissing("order " + std::to_string(n) + " allows at most " + std::to_string(max_missing_connected(n)) +
                         " missing pairs with a connected comparison graph, requested " +
                         std::to_string(missing_count));
  InstanceRng rng(seed);
  std::vector<Cell> upper;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) upper.emplace_back(rng.log_uniform(kScaleMin, kScaleMax));

  ComparisonGraph graph{n, {}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) graph.edges.push_back({i, j});

  for (int removed = 0; removed < missing_count; ++removed) {
    std::vector<std::size_t> removable;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      ComparisonGraph trial = graph;
      trial.edges.erase(trial.edges.begin() + static_cast<std::ptrdiff_t>(e));
      if (is_connected(trial)) removable.push_back(e);
    }
    const std::size_t pick = removable[rng.index(removable.size())];
    const auto [i, j] = graph.edges[pick];
    graph.edges.erase(graph.edges.begin() + static_cast<std::ptrdiff_t>(pick));
    upper[static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1)] = std::nullopt;
  }
  return IncompletePCM::from_upper(n, std::move(upper));
}

}  // namespace pcm
