#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative tolerance used when checking a_ij * a_ji = 1 on input.
inline constexpr double kReciprocityTolerance = 1e-9;

/// An (i, j) index pair, 0-based. Upper-triangle pairs have row < col.
struct Position {
  int row = 0;
  int col = 0;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Cell of a user-supplied square grid before validation.
using Cell = std::optional<double>;
using Grid = std::vector<std::vector<Cell>>;

/// Reciprocal pairwise comparison matrix in which some off-diagonal
/// judgments may be missing.
///
/// Only the strict upper triangle is stored; the lower triangle is derived as
/// the reciprocal, so a_ij * a_ji = 1 holds exactly for every known pair.
/// Instances are immutable once built.
class IncompletePCM {
 public:
  /// Builds from a full n x n grid. Missing cells are std::nullopt. Known
  /// lower-triangle cells must be reciprocal to their upper partners within
  /// kReciprocityTolerance; the upper value is the one kept.
  /// Throws ValidationError when the grid violates any structural rule.
  static IncompletePCM from_grid(const Grid& grid);

  /// Builds from the strict upper triangle listed row-major:
  /// (0,1), (0,2), ..., (0,n-1), (1,2), ...
  static IncompletePCM from_upper(int order, std::vector<Cell> upper);

  /// Returns every rule violated by `grid`; ok() when the grid is a legal
  /// incomplete PCM.
  static ValidationReport validate(const Grid& grid);

  int order() const { return order_; }

  /// a_ij, or nullopt when missing. Diagonal is always 1.
  Cell at(int i, int j) const;
  bool known(int i, int j) const { return i == j || upper_[index(i, j)].has_value(); }

  /// Missing upper-triangle pairs in row-major order.
  std::vector<Position> missing_positions() const;
  /// Known upper-triangle pairs in row-major order.
  std::vector<Position> known_positions() const;

  int missing_count() const;
  bool complete() const { return missing_count() == 0; }

  /// Full grid view (nullopt for missing cells).
  Grid to_grid() const;

  /// Dense matrix with missing cells replaced by `fill`. Used by the
  /// optimizers, which then overwrite the missing cells.
  Matrix dense(double fill = 1.0) const;

  /// Returns a copy with the (i, j) judgment replaced. `value` nullopt
  /// removes the judgment. i != j.
  IncompletePCM with(int i, int j, Cell value) const;

  friend bool operator==(const IncompletePCM&, const IncompletePCM&) = default;

 private:
  IncompletePCM(int order, std::vector<Cell> upper) : order_(order), upper_(std::move(upper)) {}

  std::size_t index(int i, int j) const;

  int order_ = 0;
  std::vector<Cell> upper_;
};

/// The variables of an optimal-completion problem: one per missing
/// upper-triangle pair, with the reciprocal cell tied to it.
struct CompletionProblem {
  explicit CompletionProblem(IncompletePCM pcm);

  /// Completed matrix for fill values x_k = exp(log_fill[k]).
  Matrix matrix_at(const std::vector<double>& log_fill) const;
  /// Writes the fill values into an existing dense matrix in place.
  void assign(Matrix& m, const std::vector<double>& log_fill) const;

  IncompletePCM matrix;
  std::vector<Position> missing_positions;
  Matrix base;  // known entries, ones in the missing cells
};

/// Relative agreement of two positive reals.
bool reciprocal_close(double a, double b, double tol = kReciprocityTolerance);

}  // namespace pcm
