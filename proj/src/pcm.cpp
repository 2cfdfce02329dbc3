#include "pcm/pcm.hpp"

#include <cmath>
#include <sstream>

namespace pcm {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonPositive: return "NonPositive";
    case ViolationKind::NonReciprocal: return "NonReciprocal";
    case ViolationKind::BadDiagonal: return "BadDiagonal";
    case ViolationKind::AsymmetricMissing: return "AsymmetricMissing";
  }
  return "?";
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    const auto& v = violations[k];
    if (k) out << "; ";
    out << to_string(v.kind) << " at (" << v.row + 1 << "," << v.col + 1 << ")";
    if (!v.detail.empty()) out << ": " << v.detail;
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("invalid pairwise comparison matrix: " + report.summary()), report_(std::move(report)) {}

namespace {

std::string describe_components(const std::vector<std::vector<int>>& components) {
  std::ostringstream out;
  out << "comparison graph is disconnected (" << components.size() << " components:";
  for (const auto& c : components) {
    out << " {";
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << c[k] + 1;
    out << "}";
  }
  out << "); the optimal completion is not unique";
  return out.str();
}

}  // namespace

DisconnectedGraph::DisconnectedGraph(std::vector<std::vector<int>> components)
    : Error(describe_components(components)), components_(std::move(components)) {}

bool reciprocal_close(double a, double b, double tol) {
  return std::abs(a * b - 1.0) <= tol;
}

ValidationReport IncompletePCM::validate(const Grid& grid) {
  ValidationReport report;
  const int n = static_cast<int>(grid.size());
  if (n < 2) {
    report.violations.push_back({0, 0, ViolationKind::BadDiagonal, "order must be at least 2"});
    return report;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(grid[i].size()) != n) {
      report.violations.push_back(
          {i, 0, ViolationKind::BadDiagonal, "row length " + std::to_string(grid[i].size()) + " != order"});
      return report;
    }
  }
  auto positive = [](const Cell& c) { return c && std::isfinite(*c) && *c > 0.0; };
  for (int i = 0; i < n; ++i) {
    const Cell& d = grid[i][i];
    if (!d || *d != 1.0) report.violations.push_back({i, i, ViolationKind::BadDiagonal, "diagonal entry must be 1"});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Cell& c = grid[i][j];
      if (c && !positive(c)) {
        std::ostringstream detail;
        detail << "entry " << *c << " is not a positive finite number";
        report.violations.push_back({i, j, ViolationKind::NonPositive, detail.str()});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Cell& up = grid[i][j];
      const Cell& lo = grid[j][i];
      if (up.has_value() != lo.has_value()) {
        const bool upper_missing = !up.has_value();
        report.violations.push_back({upper_missing ? i : j, upper_missing ? j : i, ViolationKind::AsymmetricMissing,
                                     "missing entry has a known reciprocal partner"});
        continue;
      }
      if (positive(up) && positive(lo) && !reciprocal_close(*up, *lo)) {
        std::ostringstream detail;
        detail << *lo << " != 1/" << *up;
        report.violations.push_back({j, i, ViolationKind::NonReciprocal, detail.str()});
      }
    }
  }
  return report;
}

IncompletePCM IncompletePCM::from_grid(const Grid& grid) {
  auto report = validate(grid);
  if (!report.ok()) throw ValidationError(std::move(report));
  const int n = static_cast<int>(grid.size());
  std::vector<Cell> upper;
  upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) upper.push_back(grid[i][j]);
  return IncompletePCM(n, std::move(upper));
}

IncompletePCM IncompletePCM::from_upper(int order, std::vector<Cell> upper) {
  ValidationReport report;
  if (order < 2) {
    report.violations.push_back({0, 0, ViolationKind::BadDiagonal, "order must be at least 2"});
    throw ValidationError(std::move(report));
  }
  if (upper.size() != static_cast<std::size_t>(order) * (order - 1) / 2)
    throw Error("upper triangle has " + std::to_string(upper.size()) + " cells, expected " +
                std::to_string(order * (order - 1) / 2));
  std::size_t k = 0;
  for (int i = 0; i < order; ++i) {
    for (int j = i + 1; j < order; ++j, ++k) {
      const Cell& c = upper[k];
      if (c && !(std::isfinite(*c) && *c > 0.0))
        report.violations.push_back({i, j, ViolationKind::NonPositive, "entry is not a positive finite number"});
    }
  }
  if (!report.ok()) throw ValidationError(std::move(report));
  return IncompletePCM(order, std::move(upper));
}

std::size_t IncompletePCM::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // Row-major strict upper triangle offset.
  return static_cast<std::size_t>(i) * (2 * order_ - i - 1) / 2 + (j - i - 1);
}

Cell IncompletePCM::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= order_ || j >= order_) throw IndexError("index out of range");
  if (i == j) return 1.0;
  const Cell& c = upper_[index(i, j)];
  if (!c) return std::nullopt;
  return i < j ? *c : 1.0 / *c;
}

std::vector<Position> IncompletePCM::missing_positions() const {
  std::vector<Position> out;
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (!upper_[index(i, j)]) out.push_back({i, j});
  return out;
}

std::vector<Position> IncompletePCM::known_positions() const {
  std::vector<Position> out;
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (upper_[index(i, j)]) out.push_back({i, j});
  return out;
}

int IncompletePCM::missing_count() const {
  int m = 0;
  for (const auto& c : upper_) m += c ? 0 : 1;
  return m;
}

Grid IncompletePCM::to_grid() const {
  Grid g(order_, std::vector<Cell>(order_));
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) g[i][j] = at(i, j);
  return g;
}

Matrix IncompletePCM::dense(double fill) const {
  Matrix m(order_, order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) {
      const Cell c = at(i, j);
      m(i, j) = c ? *c : fill;
    }
  return m;
}

IncompletePCM IncompletePCM::with(int i, int j, Cell value) const {
  if (i < 0 || j < 0 || i >= order_ || j >= order_ || i == j) throw IndexError("judgment index out of range");
  if (value && !(std::isfinite(*value) && *value > 0.0)) {
    ValidationReport report;
    report.violations.push_back({i, j, ViolationKind::NonPositive, "entry is not a positive finite number"});
    throw ValidationError(std::move(report));
  }
  auto upper = upper_;
  if (value && i > j) value = 1.0 / *value;
  upper[index(i, j)] = value;
  return IncompletePCM(order_, std::move(upper));
}

CompletionProblem::CompletionProblem(IncompletePCM pcm)
    : matrix(std::move(pcm)), missing_positions(matrix.missing_positions()), base(matrix.dense(1.0)) {}

void CompletionProblem::assign(Matrix& m, const std::vector<double>& log_fill) const {
  for (std::size_t k = 0; k < missing_positions.size(); ++k) {
    const auto [i, j] = missing_positions[k];
    m(i, j) = std::exp(log_fill[k]);
    m(j, i) = std::exp(-log_fill[k]);
  }
}

Matrix CompletionProblem::matrix_at(const std::vector<double>& log_fill) const {
  Matrix m = base;
  assign(m, log_fill);
  return m;
}

}  // namespace pcm
