#include "fmgsr/problem.hpp"

#include "fmgsr/smoothers.hpp"
#include "fmgsr/stencils.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fmgsr {

ManufacturedProblem ManufacturedProblem::with_default_modes(int level, int divisor) {
  if (divisor < 1) throw std::invalid_argument("nmodes divisor must be >= 1");
  return {level, std::max(1, level_size(level) / divisor)};
}

namespace {

void check_modes(int nmodes) {
  if (nmodes < 1) throw std::invalid_argument("nmodes must be >= 1");
}

} // namespace

Field manufactured_rhs(int level, int nmodes) {
  check_modes(nmodes);
  Field f(level);
  for (int j = 1; j <= nmodes; j += 2) {
    const double jj = j;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] += (1.0 / jj) * std::sin(jj * std::numbers::pi * cell_center(level, i));
    }
  }
  return f;
}

Field exact_solution(int level, int nmodes) {
  check_modes(nmodes);
  Field u(level);
  for (int j = 1; j <= nmodes; j += 2) {
    const double jj = j;
    const double k2 = (jj * std::numbers::pi) * (jj * std::numbers::pi);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] += (1.0 / jj) * std::sin(jj * std::numbers::pi * cell_center(level, i)) / k2;
    }
  }
  return u;
}

double rel_l2_error(const Field& u, const Field& ref) {
  if (u.size() != ref.size()) throw std::invalid_argument("rel_l2_error: length mismatch");
  const double denom = norm2(ref);
  if (denom == 0.0) throw std::invalid_argument("rel_l2_error: reference has zero norm");
  return norm2(subtract(u, ref)) / denom;
}

Field direct_fine_solve(const Field& forcing) { return solve_tridiagonal(forcing); }

std::vector<Field> cascade_restrict(const Field& finest, int coarsest) {
  if (coarsest > finest.level() || coarsest < 0) throw std::invalid_argument("cascade_restrict: bad coarsest level");
  std::vector<Field> out(static_cast<std::size_t>(finest.level() - coarsest + 1));
  out.back() = finest;
  for (std::size_t idx = out.size() - 1; idx-- > 0;) out[idx] = restrict_to_coarse(out[idx + 1]);
  return out;
}

} // namespace fmgsr
