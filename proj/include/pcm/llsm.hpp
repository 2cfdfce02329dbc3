#pragma once

#include <string_view>
#include <vector>

#include "pcm/pcm.hpp"

namespace pcm {

/// Positive priority vector normalised to sum to one.
struct WeightVector {
  Vector values;

  static WeightVector normalized(Vector w);

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values(i); }
  double ratio(int i, int j) const { return values(i) / values(j); }
};

enum class Method { Llsm, Eigenvalue };

std::string_view to_string(Method method);

/// A completed matrix together with the priorities and inconsistency
/// measures of the method that produced it.
struct CompletionResult {
  Matrix matrix;                 // complete, positive, reciprocal
  std::vector<Position> filled;  // upper-triangle cells that were missing
  Method method = Method::Llsm;
  WeightVector weights;
  double lambda_max = 0.0;
  double ci = 0.0;
  double gci = 0.0;

  int order() const { return static_cast<int>(matrix.rows()); }
  bool is_filled(int i, int j) const;
};

/// Log-weights y = log w from the Laplacian system L y = r with y_0 = 0,
/// plus the infinity-norm residual of the full (unreduced) system.
struct LlsmSystemSolution {
  Vector log_weights;
  double residual = 0.0;
};

/// Solves the logarithmic least squares normal equations over the known
/// comparisons. Throws DisconnectedGraph.
LlsmSystemSolution solve_llsm_system(const IncompletePCM& pcm);

/// Weights minimising the sum of squared log-residuals over the known
/// comparisons. Throws DisconnectedGraph.
WeightVector llsm_weights(const IncompletePCM& pcm);

/// Known entries copied, missing ones set to w_i / w_j with the LLSM weights.
CompletionResult llsm_completion(const IncompletePCM& pcm);

/// Sum over known ordered pairs of [log a_ij - log(w_i / w_j)]^2.
double llsm_objective(const IncompletePCM& pcm, const Vector& weights);

/// Geometric consistency index
///   2 / ((n-1)(n-2)) * sum_{i<j} log^2(a_ij w_j / w_i),
/// zero for n = 2.
double gci(const Matrix& matrix, const Vector& weights);
inline double gci(const Matrix& matrix, const WeightVector& w) { return gci(matrix, w.values); }

/// GCI of a complete matrix at its own LLSM weights.
double gci(const Matrix& matrix);

/// Row geometric means of a complete positive matrix (its LLSM weights),
/// normalised to sum to one.
WeightVector geometric_mean_weights(const Matrix& matrix);

}  // namespace pcm
