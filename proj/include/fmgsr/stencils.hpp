#pragma once

#include "fmgsr/mesh.hpp"

#include <span>

namespace fmgsr {

// Matrix-free operators for the cell-centered 1D Laplacian with homogeneous
// Dirichlet walls. The operator rows are (1/h^2)[-1 2 -1] in the interior and
// (1/h^2)[3 -1] / [-1 3] at the walls (ghost value mirrored with sign flip).

/// Diagonal entry of row i of L on an n-cell level, without the 1/h^2 factor.
inline double operator_diagonal(std::size_t i, std::size_t n) {
  return (i == 0 || i + 1 == n) ? 3.0 : 2.0;
}

/// (L u)_i evaluated from the three-point row. `u` spans the whole level.
inline double apply_operator_row(std::span<const double> u, std::size_t i, double inv_h2) {
  const std::size_t n = u.size();
  double acc = operator_diagonal(i, n) * u[i];
  if (i > 0) acc -= u[i - 1];
  if (i + 1 < n) acc -= u[i + 1];
  return inv_h2 * acc;
}

inline double inverse_spacing_squared(int level) {
  const double inv_h = static_cast<double>(level_size(level));
  return inv_h * inv_h;
}

/// L_k u.
Field apply_operator(const Field& u);

/// f - L u.
Field residual(const Field& u, const Field& f);

/// Pair average: coarse cell j = (u[2j] + u[2j+1]) / 2. Serves as both the
/// solution restriction and the residual restriction.
Field restrict_to_coarse(const Field& fine);

/// Second-order correction prolongation, 1/4 [1 3 3 1] with wall rows
/// 1/4 [2] and 1/4 [3 1].
Field prolong_correction(const Field& coarse);

/// Fourth-order FMG interpolation (1/128 stencils). Needs >= 4 coarse cells.
Field prolong_fmg(const Field& coarse);

/// tau = L_H (R u_h) - R (L_h u_h), living on the level below u_fine.
Field tau_correction(const Field& fine_solution);

/// FAS coarse right-hand side R f_h + tau.
Field coarse_rhs(const Field& fine_rhs, const Field& fine_solution);

// Small vector helpers.
Field subtract(const Field& a, const Field& b);
void add_in_place(Field& a, const Field& b);
Field scaled(const Field& a, double s);
double norm2(const Field& a);
double norm_inf(const Field& a);

} // namespace fmgsr
