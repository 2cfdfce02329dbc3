#pragma once

#include <optional>
#include <vector>

#include "pcm/llsm.hpp"
#include "pcm/pcm.hpp"

namespace pcm {

inline constexpr double kEigenTolerance = 1e-12;
inline constexpr int kPowerIterationCap = 100000;

/// Dominant (Perron) eigenpair of a positive matrix.
struct EigenPair {
  double lambda_max = 0.0;
  Vector vector;  // positive, sums to one
  int iterations = 0;
  double residual = 0.0;  // ||A v - lambda v||_inf / ||v||_inf
};

/// Power iteration with per-step normalisation. Stops once the relative
/// change of the eigenvalue estimate and the residual are both below `tol`.
/// `start`, when given, must be a positive vector of matching size.
/// Throws NoConvergence after kPowerIterationCap steps.
EigenPair dominant_eigenpair(const Matrix& matrix, double tol = kEigenTolerance, const Vector* start = nullptr);

inline double lambda_max(const Matrix& matrix) { return dominant_eigenpair(matrix).lambda_max; }

/// Saaty's consistency index (lambda_max - n) / (n - 1).
double saaty_ci(double lambda_max, int n);

/// lambda_max of A(exp(t)) as a function of the log-fill vector t, with the
/// exact partial derivatives
///   d lambda / d t_k = (u_i a_ij v_j - u_j a_ji v_i) / (u . v)
/// from the left (u) and right (v) Perron vectors. Keeps the previous
/// eigenvectors as warm starts, so an instance must not be shared between
/// threads.
class LambdaMaxObjective {
 public:
  explicit LambdaMaxObjective(const CompletionProblem& problem, double tol = kEigenTolerance);

  double value(const std::vector<double>& log_fill);
  double partial(const std::vector<double>& log_fill, int k);
  Vector gradient(const std::vector<double>& log_fill);

  int evaluations() const { return evaluations_; }

 private:
  void load(const std::vector<double>& log_fill);
  void solve_left();

  double slope(int k) const;

  const CompletionProblem& problem_;
  double tol_;
  Matrix work_;
  // Eigenpairs are computed for D^-1 A D with D = diag(scale_), the previous
  // right Perron vector, which keeps the matrix near all-ones.
  Vector scale_;
  Matrix balanced_;
  std::optional<EigenPair> right_;
  std::optional<EigenPair> left_;
  int evaluations_ = 0;
};

struct OptimizerTrace {
  int sweeps = 0;
  double final_gradient_norm = 0.0;
  std::vector<double> objective_history;  // lambda_max after each sweep, nonincreasing
};

struct EvOptions {
  /// Starting point in log-coordinates, one entry per missing upper-triangle
  /// pair. Defaults to the LLSM completion. Supplying one disables the
  /// spanning-tree shortcut.
  std::optional<std::vector<double>> initial_log_fill;
  int max_sweeps = 20000;
  double move_tolerance = 1e-12;       // max |delta t_k| per sweep
  double objective_tolerance = 1e-12;  // |delta lambda_max| per sweep
  double line_tolerance = 1e-13;       // eigen tolerance inside line searches
};

struct EvCompletion {
  CompletionResult result;
  OptimizerTrace trace;
  std::vector<double> log_fill;
};

/// Eigenvalue-optimal completion: the missing entries minimise lambda_max of
/// the completed matrix; weights are its right Perron vector.
///
/// Cyclic coordinate descent over t = log x. Every univariate subproblem is
/// bracketed by doubling steps, narrowed by golden-section search, and
/// finished by bisection on the sign of d lambda / d t_k. lambda_max is
/// strictly convex in t when the comparison graph is connected, so the
/// stationary point is the unique minimiser.
///
/// Throws DisconnectedGraph, NoConvergence.
EvCompletion ev_completion_traced(const IncompletePCM& pcm, const EvOptions& options = {});

inline CompletionResult ev_completion(const IncompletePCM& pcm, const EvOptions& options = {}) {
  return ev_completion_traced(pcm, options).result;
}

}  // namespace pcm
