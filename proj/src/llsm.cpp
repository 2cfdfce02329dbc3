#include "pcm/llsm.hpp"

#include <cmath>

#include "pcm/eigenvalue.hpp"
#include "pcm/graph.hpp"
#include "pcm/transform.hpp"

namespace pcm {

WeightVector WeightVector::normalized(Vector w) {
  const double s = w.sum();
  return {w / s};
}

std::string_view to_string(Method method) {
  return method == Method::Llsm ? "llsm" : "ev";
}

bool CompletionResult::is_filled(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& p : filled)
    if (p.row == i && p.col == j) return true;
  return false;
}

LlsmSystemSolution solve_llsm_system(const IncompletePCM& pcm) {
  require_connected(pcm);
  const int n = pcm.order();
  Matrix laplacian = Matrix::Zero(n, n);
  Vector rhs = Vector::Zero(n);
  for (const auto& [i, j] : pcm.known_positions()) {
    const double l = std::log(*pcm.at(i, j));
    laplacian(i, i) += 1.0;
    laplacian(j, j) += 1.0;
    laplacian(i, j) -= 1.0;
    laplacian(j, i) -= 1.0;
    rhs(i) += l;
    rhs(j) -= l;
  }
  // Gauge y_0 = 0: drop the first row and column.
  Vector y = Vector::Zero(n);
  if (n > 1) {
    const Matrix reduced = laplacian.bottomRightCorner(n - 1, n - 1);
    Eigen::PartialPivLU<Matrix> lu(reduced);
    y.tail(n - 1) = lu.solve(rhs.tail(n - 1));
  }
  const double residual = (laplacian * y - rhs).lpNorm<Eigen::Infinity>();
  if (!std::isfinite(residual) || !y.allFinite())
    throw SingularSystem("logarithmic least squares system could not be solved");
  return {std::move(y), residual};
}

WeightVector llsm_weights(const IncompletePCM& pcm) {
  const auto sol = solve_llsm_system(pcm);
  // Shift by the max before exponentiating to stay clear of overflow.
  const Vector y = sol.log_weights.array() - sol.log_weights.maxCoeff();
  return WeightVector::normalized(y.array().exp());
}

CompletionResult llsm_completion(const IncompletePCM& pcm) {
  CompletionResult out;
  out.weights = llsm_weights(pcm);
  out.matrix = complete_with_weights(pcm, out.weights.values);
  out.filled = pcm.missing_positions();
  out.method = Method::Llsm;
  out.lambda_max = dominant_eigenpair(out.matrix).lambda_max;
  out.ci = saaty_ci(out.lambda_max, pcm.order());
  out.gci = gci(out.matrix, out.weights);
  return out;
}

double llsm_objective(const IncompletePCM& pcm, const Vector& weights) {
  double total = 0.0;
  for (const auto& [i, j] : pcm.known_positions()) {
    const double r = std::log(*pcm.at(i, j)) - std::log(weights(i) / weights(j));
    total += 2.0 * r * r;  // (i,j) and (j,i) contribute equally
  }
  return total;
}

double gci(const Matrix& matrix, const Vector& weights) {
  const auto n = matrix.rows();
  if (n <= 2) return 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = std::log(matrix(i, j) * weights(j) / weights(i));
      total += r * r;
    }
  return 2.0 * total / static_cast<double>((n - 1) * (n - 2));
}

WeightVector geometric_mean_weights(const Matrix& matrix) {
  const Vector logmean = matrix.array().log().rowwise().mean();
  return WeightVector::normalized((logmean.array() - logmean.maxCoeff()).exp());
}

double gci(const Matrix& matrix) {
  return gci(matrix, geometric_mean_weights(matrix));
}

}  // namespace pcm
