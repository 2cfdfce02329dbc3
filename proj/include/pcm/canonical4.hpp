#pragma once

#include <array>
#include <optional>

#include "pcm/comparison.hpp"
#include "pcm/pcm.hpp"

namespace pcm {

/// Order-4 matrices reduced by a permutation and a diagonal similarity to
///
///     1    1    y    x
///     1    1    1    z
///     1/y  1    1    1
///     1/x  1/z  1    1
///
/// Canonical cell (k, l) equals s_k * a_{p(k) p(l)} / s_l, where p is
/// `permutation` and s is `scaling`.
struct CanonicalForm4 {
  Cell x;  // (1,4)
  Cell y;  // (1,3)
  Cell z;  // (2,4)
  std::array<double, 4> scaling{1.0, 1.0, 1.0, 1.0};
  std::array<int, 4> permutation{0, 1, 2, 3};
};

/// Which of x, y, z are missing. Complete means none.
enum class CanonicalCase {
  Complete = 0,
  OneMissing = 1,        // x
  TwoSameRow = 2,        // x, y
  TwoDifferentRows = 3,  // y, z
  AllMissing = 4,        // x, y, z
};

/// Coefficients of the characteristic polynomial lambda^4 - 4 lambda^3 + p lambda + q.
struct CharPolyCoeffs {
  double p = 0.0;
  double q = 0.0;

  double evaluate(double lambda) const { return ((lambda - 4.0) * lambda * lambda + p) * lambda + q; }
};

/// Canonical matrix for the given x, y, z.
Matrix canonical_matrix(double x, double y, double z);

/// Reduces a complete 4x4 reciprocal matrix with upper entries
/// a=(1,2) b=(1,3) c=(1,4) d=(2,3) e=(2,4) f=(3,4) to canonical form:
/// y = b/(ad), x = c/(adf), z = e/(df), scaling (1/(ad), 1/d, 1, f).
CanonicalForm4 reduce_to_canonical(const Matrix& matrix);

/// Finds a relabelling that puts the missing cells of an order-4 matrix on
/// canonical positions, then scales the known cells. Returns nullopt when the
/// missing pattern has no canonical form (a star-shaped comparison graph, or
/// a disconnected one). Throws WrongOrder.
std::optional<CanonicalForm4> canonicalize(const IncompletePCM& pcm);

/// Case implied by which canonical entries are missing. Throws
/// PatternMismatch for the missing sets {y}, {z}, {x, z} that canonicalize
/// never produces.
CanonicalCase canonical_case(const CanonicalForm4& form);

/// Applies the inverse relabelling and scaling: returns the original-order
/// matrix whose canonical form has entries (x, y, z).
Matrix from_canonical(const CanonicalForm4& form, double x, double y, double z);

CharPolyCoeffs char_poly_coeffs(double x, double y, double z);

/// Closed-form optimal fill (x, y, z) for a canonical missing pattern:
///   OneMissing        x = sqrt(yz)
///   TwoSameRow        x = z^(2/3), y = z^(1/3)
///   TwoDifferentRows  y = z = sqrt(x)
///   AllMissing        x = y = z = 1
/// Throws PatternMismatch when the missing/known entries disagree with `which`.
std::array<double, 3> closed_form_completion(CanonicalCase which, Cell x, Cell y, Cell z);

/// Closed-form optimal completion of an order-4 matrix via its canonical form.
/// Throws PatternMismatch when no canonical form exists.
Matrix closed_form_fill(const IncompletePCM& pcm);

inline constexpr double kCoincidenceTolerance = 1e-6;

/// Runs both optimal completions on an order-4 matrix and compares them.
/// Throws WrongOrder, DisconnectedGraph.
CompletionComparison verify_theorem1(const IncompletePCM& pcm, double tol = kCoincidenceTolerance);

}  // namespace pcm
