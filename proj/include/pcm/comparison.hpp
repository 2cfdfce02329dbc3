#pragma once

#include <optional>

#include "pcm/llsm.hpp"

namespace pcm {

/// Entrywise agreement of the LLSM and eigenvalue completions of one matrix.
struct CompletionComparison {
  int order = 0;
  Matrix divergence;  // |log(b_ij / c_ij)|, symmetric, zero on known cells
  double max_divergence = 0.0;
  std::optional<Position> max_position;  // upper triangle; none when nothing was filled
  bool coincide = true;
  double tolerance = 0.0;

  CompletionResult llsm;
  CompletionResult ev;
};

/// Builds the comparison of two completions of the same matrix.
CompletionComparison compare_results(CompletionResult llsm, CompletionResult ev, double tolerance);

}  // namespace pcm
