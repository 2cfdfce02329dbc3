#include "pcm/eigenvalue.hpp"

#include <cmath>
#include <limits>

#include "pcm/graph.hpp"
#include "pcm/transform.hpp"

namespace pcm {

EigenPair dominant_eigenpair(const Matrix& a, double tol, const Vector* start) {
  const auto n = a.rows();
  if (n == 0 || a.cols() != n) throw Error("dominant_eigenpair needs a non-empty square matrix");
  if (!(a.array() > 0.0).all() || !a.allFinite()) throw Error("dominant_eigenpair needs a strictly positive matrix");

  // The residual of a computed mat-vec cannot drop below its rounding error.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * a.rowwise().sum().maxCoeff();
  const double res_tol = std::max(tol, floor);

  Vector v = start && start->size() == n && (start->array() > 0.0).all() ? Vector(*start / start->sum())
                                                                         : Vector::Constant(n, 1.0 / n);
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= kPowerIterationCap; ++it) {
    const Vector x = a * v;
    const double lambda = x.sum();  // v sums to one
    const double residual = (x - lambda * v).lpNorm<Eigen::Infinity>() / v.lpNorm<Eigen::Infinity>();
    if (residual <= res_tol && (it == 1 || std::abs(lambda - previous) <= tol * lambda))
      return {lambda, std::move(v), it, residual};
    previous = lambda;
    v = x / lambda;
  }
  throw NoConvergence("power iteration did not converge in " + std::to_string(kPowerIterationCap) + " steps");
}

double saaty_ci(double lambda_max, int n) {
  return (lambda_max - n) / (n - 1);
}

LambdaMaxObjective::LambdaMaxObjective(const CompletionProblem& problem, double tol)
    : problem_(problem), tol_(tol), work_(problem.base) {}

void LambdaMaxObjective::load(const std::vector<double>& log_fill) {
  problem_.assign(work_, log_fill);
  const auto n = work_.rows();
  scale_ = right_ ? Vector(scale_.cwiseProduct(right_->vector)) : Vector::Ones(n);
  scale_ /= scale_.maxCoeff();
  balanced_ = scale_.cwiseInverse().asDiagonal() * work_ * scale_.asDiagonal();
  right_ = dominant_eigenpair(balanced_, tol_);
  ++evaluations_;
}

void LambdaMaxObjective::solve_left() {
  const Vector* start = left_ ? &left_->vector : nullptr;
  left_ = dominant_eigenpair(balanced_.transpose(), tol_, start);
}

double LambdaMaxObjective::slope(int k) const {
  // u_i a_ij v_j is invariant under the diagonal similarity.
  const Vector& v = right_->vector;
  const Vector& u = left_->vector;
  const auto [i, j] = problem_.missing_positions[k];
  return (u(i) * balanced_(i, j) * v(j) - u(j) * balanced_(j, i) * v(i)) / u.dot(v);
}

double LambdaMaxObjective::value(const std::vector<double>& log_fill) {
  load(log_fill);
  return right_->lambda_max;
}

double LambdaMaxObjective::partial(const std::vector<double>& log_fill, int k) {
  load(log_fill);
  solve_left();
  return slope(k);
}

Vector LambdaMaxObjective::gradient(const std::vector<double>& log_fill) {
  load(log_fill);
  solve_left();
  Vector g(static_cast<Eigen::Index>(problem_.missing_positions.size()));
  for (Eigen::Index k = 0; k < g.size(); ++k) g(k) = slope(static_cast<int>(k));
  return g;
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kGoldenWidth = 1e-4;
constexpr double kBisectionWidth = 1e-13;
constexpr int kMaxBracketDoublings = 60;

struct LineResult {
  double t;
  double value;
};

/// Minimises lambda_max along coordinate k starting from the current point.
LineResult minimize_coordinate(LambdaMaxObjective& objective, std::vector<double> t, int k, double f0) {
  auto f = [&](double s) {
    t[k] = s;
    return objective.value(t);
  };
  auto df = [&](double s) {
    t[k] = s;
    return objective.partial(t, k);
  };

  // Bracket [lo, hi] around the minimiser with a lower interior point.
  const double t0 = t[k];
  double step = 1.0;
  double lo = t0 - step, hi = t0 + step;
  const double fl = f(lo), fr = f(hi);
  if (!(f0 <= fl && f0 <= fr)) {
    const double dir = fr < fl ? 1.0 : -1.0;
    double a = t0, b = t0 + dir * step, fb = dir > 0 ? fr : fl;
    int doublings = 0;
    while (true) {
      step *= 2.0;
      const double c = b + dir * step;
      const double fc = f(c);
      if (fc >= fb) {
        lo = std::min(a, c);
        hi = std::max(a, c);
        break;
      }
      a = b;
      b = c;
      fb = fc;
      if (++doublings > kMaxBracketDoublings)
        throw NoConvergence("line search could not bracket a minimum; the objective is unbounded below");
    }
  }

  // Golden-section narrowing.
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > kGoldenWidth) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }

  // Golden section works on noisy values; re-anchor the bracket on derivative signs.
  double width = std::max(hi - lo, kGoldenWidth);
  for (int widen = 0; df(lo) > 0.0; ++widen) {
    if (widen > kMaxBracketDoublings) throw NoConvergence("line search lost its bracket");
    hi = lo;
    lo -= width;
    width *= 2.0;
  }
  for (int widen = 0; df(hi) < 0.0; ++widen) {
    if (widen > kMaxBracketDoublings) throw NoConvergence("line search lost its bracket");
    lo = hi;
    hi += width;
    width *= 2.0;
  }

  // Bisection on the sign of the derivative.
  while (hi - lo > kBisectionWidth * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double d = df(mid);
    if (d > 0.0)
      hi = mid;
    else if (d < 0.0)
      lo = mid;
    else {
      lo = hi = mid;
    }
  }
  const double best = 0.5 * (lo + hi);
  return {best, f(best)};
}

CompletionResult finish(const IncompletePCM& pcm, Matrix matrix, const EigenPair& pair) {
  CompletionResult out;
  out.matrix = std::move(matrix);
  out.filled = pcm.missing_positions();
  out.method = Method::Eigenvalue;
  out.weights = WeightVector::normalized(pair.vector);
  out.lambda_max = pair.lambda_max;
  out.ci = saaty_ci(pair.lambda_max, pcm.order());
  out.gci = gci(out.matrix);
  return out;
}

std::vector<double> log_fill_of(const CompletionProblem& problem, const Vector& weights) {
  std::vector<double> t;
  for (const auto& [i, j] : problem.missing_positions) t.push_back(std::log(weights(i) / weights(j)));
  return t;
}

}  // namespace

EvCompletion ev_completion_traced(const IncompletePCM& pcm, const EvOptions& options) {
  require_connected(pcm);
  const CompletionProblem problem(pcm);
  const auto m = problem.missing_positions.size();

  if (options.initial_log_fill && options.initial_log_fill->size() != m)
    throw Error("initial_log_fill has " + std::to_string(options.initial_log_fill->size()) +
                " entries; the matrix has " + std::to_string(m) + " missing pairs");

  EvCompletion out;
  if (m == 0) {
    const auto pair = dominant_eigenpair(problem.base);
    out.result = finish(pcm, problem.base, pair);
    out.trace.objective_history = {pair.lambda_max};
    return out;
  }

  // A spanning tree admits exactly one consistent completion, where
  // lambda_max attains its lower bound n.
  if (!options.initial_log_fill && is_spanning_tree(comparison_graph(pcm))) {
    const Vector w = tree_weights(pcm);
    out.log_fill = log_fill_of(problem, w);
    const auto pair = dominant_eigenpair(problem.matrix_at(out.log_fill));
    out.result = finish(pcm, problem.matrix_at(out.log_fill), pair);
    out.trace.objective_history = {pair.lambda_max};
    return out;
  }

  std::vector<double> t = options.initial_log_fill ? *options.initial_log_fill
                                                   : log_fill_of(problem, llsm_weights(pcm).values);
  LambdaMaxObjective objective(problem, options.line_tolerance);
  double f = objective.value(t);
  bool converged = false;
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    const double f_start = f;
    double max_move = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const int kk = static_cast<int>(k);
      const double slope = objective.partial(t, kk);
      if (slope == 0.0) continue;
      const auto line = minimize_coordinate(objective, t, kk, f);
      // Near the optimum lambda_max differences fall below evaluation noise;
      // a move against the exact slope is a descent step by convexity.
      const double move = line.t - t[k];
      if (line.value <= f || slope * move < 0.0) {
        max_move = std::max(max_move, std::abs(move));
        t[k] = line.t;
        f = std::min(f, line.value);
      }
    }
    out.trace.objective_history.push_back(f);
    out.trace.sweeps = sweep;
    if (max_move < options.move_tolerance && f_start - f < options.objective_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("coordinate descent did not converge in " + std::to_string(options.max_sweeps) + " sweeps");

  out.trace.final_gradient_norm = objective.gradient(t).lpNorm<Eigen::Infinity>();
  const Matrix c = problem.matrix_at(t);
  out.result = finish(pcm, c, dominant_eigenpair(c));
  out.log_fill = std::move(t);
  return out;
}

}  // namespace pcm
