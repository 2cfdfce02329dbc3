#include "pcm/canonical4.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/eigenvalue.hpp"
#include "pcm/graph.hpp"

namespace pcm {

Matrix canonical_matrix(double x, double y, double z) {
  Matrix m(4, 4);
  m << 1.0, 1.0, y, x,
       1.0, 1.0, 1.0, z,
       1.0 / y, 1.0, 1.0, 1.0,
       1.0 / x, 1.0 / z, 1.0, 1.0;
  return m;
}

CanonicalForm4 reduce_to_canonical(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw WrongOrder("canonical reduction needs a 4x4 matrix");
  const double a = m(0, 1), b = m(0, 2), c = m(0, 3);
  const double d = m(1, 2), e = m(1, 3), f = m(2, 3);
  CanonicalForm4 form;
  form.y = b / (a * d);
  form.x = c / (a * d * f);
  form.z = e / (d * f);
  form.scaling = {1.0 / (a * d), 1.0 / d, 1.0, f};
  return form;
}

CanonicalCase canonical_case(const CanonicalForm4& form) {
  const bool mx = !form.x, my = !form.y, mz = !form.z;
  if (!mx && !my && !mz) return CanonicalCase::Complete;
  if (mx && !my && !mz) return CanonicalCase::OneMissing;
  if (mx && my && !mz) return CanonicalCase::TwoSameRow;
  if (!mx && my && mz) return CanonicalCase::TwoDifferentRows;
  if (mx && my && mz) return CanonicalCase::AllMissing;
  throw PatternMismatch("missing entries are not in a canonical pattern");
}

std::optional<CanonicalForm4> canonicalize(const IncompletePCM& pcm) {
  if (pcm.order() != 4) throw WrongOrder("canonical form needs order 4, got " + std::to_string(pcm.order()));
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    const Cell a = pcm.at(p[0], p[1]);
    const Cell d = pcm.at(p[1], p[2]);
    const Cell f = pcm.at(p[2], p[3]);
    if (!a || !d || !f) continue;
    CanonicalForm4 form;
    form.permutation = p;
    form.scaling = {1.0 / (*a * *d), 1.0 / *d, 1.0, *f};
    const auto& s = form.scaling;
    auto scaled = [&](int k, int l) -> Cell {
      const Cell v = pcm.at(p[k], p[l]);
      return v ? Cell(s[k] * *v / s[l]) : std::nullopt;
    };
    form.x = scaled(0, 3);
    form.y = scaled(0, 2);
    form.z = scaled(1, 3);
    const bool mx = !form.x, my = !form.y, mz = !form.z;
    const bool canonical = (!my && !mz) || (mx && my) || (!mx && my && mz);
    if (canonical) return form;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

Matrix from_canonical(const CanonicalForm4& form, double x, double y, double z) {
  const Matrix c = canonical_matrix(x, y, z);
  const auto& p = form.permutation;
  const auto& s = form.scaling;
  Matrix out(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) out(p[k], p[l]) = c(k, l) * s[l] / s[k];
  return out;
}

CharPolyCoeffs char_poly_coeffs(double x, double y, double z) {
  CharPolyCoeffs c;
  c.p = -z - 1.0 / z - y - 1.0 / y - x / y - y / x - x / z - z / x + 8.0;
  c.q = -x - 1.0 / x + y + 1.0 / y + z + 1.0 / z + x / y + y / x + x / z + z / x - y / z - z / y - x / (y * z) -
        (y * z) / x - 2.0;
  return c;
}

std::array<double, 3> closed_form_completion(CanonicalCase which, Cell x, Cell y, Cell z) {
  CanonicalForm4 pattern;
  pattern.x = x;
  pattern.y = y;
  pattern.z = z;
  CanonicalCase actual;
  try {
    actual = canonical_case(pattern);
  } catch (const PatternMismatch&) {
    actual = CanonicalCase::Complete;
  }
  if (actual != which || which == CanonicalCase::Complete)
    throw PatternMismatch("missing entries do not match case " + std::to_string(static_cast<int>(which)));
  switch (which) {
    case CanonicalCase::OneMissing: return {std::sqrt(*y * *z), *y, *z};
    case CanonicalCase::TwoSameRow: return {std::cbrt(*z * *z), std::cbrt(*z), *z};
    case CanonicalCase::TwoDifferentRows: return {*x, std::sqrt(*x), std::sqrt(*x)};
    case CanonicalCase::AllMissing: return {1.0, 1.0, 1.0};
    case CanonicalCase::Complete: break;
  }
  throw PatternMismatch("no closed form for a complete matrix");
}

Matrix closed_form_fill(const IncompletePCM& pcm) {
  const auto form = canonicalize(pcm);
  if (!form) throw PatternMismatch("missing pattern has no canonical 4x4 form");
  const auto which = canonical_case(*form);
  if (which == CanonicalCase::Complete) return pcm.dense();
  const auto [x, y, z] = closed_form_completion(which, form->x, form->y, form->z);
  return from_canonical(*form, x, y, z);
}

CompletionComparison verify_theorem1(const IncompletePCM& pcm, double tol) {
  if (pcm.order() != 4) throw WrongOrder("order-4 coincidence check needs order 4, got " + std::to_string(pcm.order()));
  require_connected(pcm);
  // Cold start at the all-ones fill so the eigenvalue route never sees the
  // LLSM answer.
  EvOptions options;
  options.initial_log_fill = std::vector<double>(static_cast<std::size_t>(pcm.missing_count()), 0.0);
  return compare_results(llsm_completion(pcm), ev_completion(pcm, options), tol);
}

}  // namespace pcm
