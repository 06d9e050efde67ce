#pragma once

#include "fmgsr/mesh.hpp"

#include <vector>

namespace fmgsr {

/// -u'' = f on (0,1), u(0) = u(1) = 0, with f a sum of odd sine modes
/// f = sum_{j odd <= nmodes} sin(j pi x) / j.
struct ManufacturedProblem {
  int level = 4;   ///< finest exponent, n = 2^level
  int nmodes = 1;  ///< highest mode index considered

  /// nmodes = n / divisor (at least 1).
  static ManufacturedProblem with_default_modes(int level, int divisor = 16);
  int n() const { return level_size(level); }
};

Field manufactured_rhs(int level, int nmodes);
Field exact_solution(int level, int nmodes);

/// Plain (unweighted) ||u - ref||_2 / ||ref||_2.
double rel_l2_error(const Field& u, const Field& ref);

/// Exact tridiagonal solve of L u = f on f's level.
Field direct_fine_solve(const Field& forcing);

/// Fields on levels coarsest..finest, coarser ones by repeated pair averaging.
/// Index 0 is the coarsest level.
std::vector<Field> cascade_restrict(const Field& finest, int coarsest);

} // namespace fmgsr
