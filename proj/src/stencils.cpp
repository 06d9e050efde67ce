#include "fmgsr/stencils.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmgsr {

namespace {

void require_same_shape(const Field& a, const Field& b, const char* who) {
  if (a.level() != b.level() || a.size() != b.size()) {
    throw std::invalid_argument(std::string(who) + ": level mismatch");
  }
}

} // namespace

Field apply_operator(const Field& u) {
  Field out(u.level());
  const double inv_h2 = inverse_spacing_squared(u.level());
  const auto values = u.values();
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = apply_operator_row(values, i, inv_h2);
  return out;
}

Field residual(const Field& u, const Field& f) {
  require_same_shape(u, f, "residual");
  Field r(u.level());
  const double inv_h2 = inverse_spacing_squared(u.level());
  const auto values = u.values();
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = f[i] - apply_operator_row(values, i, inv_h2);
  return r;
}

Field restrict_to_coarse(const Field& fine) {
  if (fine.level() < 1) throw std::invalid_argument("restrict_to_coarse: nothing coarser than one cell");
  Field coarse(fine.level() - 1);
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    coarse[j] = 0.5 * fine[2 * j] + 0.5 * fine[2 * j + 1];
  }
  return coarse;
}

Field prolong_correction(const Field& coarse) {
  const std::size_t n = coarse.size();
  if (n < 2) throw std::invalid_argument("prolong_correction: need at least 2 coarse cells");
  Field fine(coarse.level() + 1);
  fine[0] = 0.25 * (2.0 * coarse[0]);
  fine[2 * n - 1] = 0.25 * (2.0 * coarse[n - 1]);
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) fine[2 * j] = 0.25 * (coarse[j - 1] + 3.0 * coarse[j]);
    if (j + 1 < n) fine[2 * j + 1] = 0.25 * (3.0 * coarse[j] + coarse[j + 1]);
  }
  return fine;
}

Field prolong_fmg(const Field& coarse) {
  const std::size_t n = coarse.size();
  if (n < 4) throw std::invalid_argument("prolong_fmg: need at least 4 coarse cells");
  Field fine(coarse.level() + 1);
  const std::size_t nf = 2 * n;
  const auto& c = coarse;
  constexpr double w = 1.0 / 128.0;

  fine[0] = w * (70.0 * c[0] - 2.0 * c[1]);
  fine[1] = w * (112.0 * c[0] + 35.0 * c[1] - 5.0 * c[2]);
  fine[2] = w * (40.0 * c[0] + 105.0 * c[1] - 7.0 * c[2]);
  fine[3] = w * (-7.0 * c[0] + 105.0 * c[1] + 35.0 * c[2] - 5.0 * c[3]);

  for (std::size_t r = 4; r + 1 <= nf - 5; r += 2) {
    const std::size_t j = r / 2;
    fine[r] = w * (-5.0 * c[j - 2] + 35.0 * c[j - 1] + 105.0 * c[j] - 7.0 * c[j + 1]);
    fine[r + 1] = w * (-7.0 * c[j - 1] + 105.0 * c[j] + 35.0 * c[j + 1] - 5.0 * c[j + 2]);
  }

  const std::size_t J = n - 1;
  fine[nf - 1] = w * (70.0 * c[J] - 2.0 * c[J - 1]);
  fine[nf - 2] = w * (112.0 * c[J] + 35.0 * c[J - 1] - 5.0 * c[J - 2]);
  fine[nf - 3] = w * (40.0 * c[J] + 105.0 * c[J - 1] - 7.0 * c[J - 2]);
  fine[nf - 4] = w * (-7.0 * c[J] + 105.0 * c[J - 1] + 35.0 * c[J - 2] - 5.0 * c[J - 3]);
  return fine;
}

Field tau_correction(const Field& fine_solution) {
  return subtract(apply_operator(restrict_to_coarse(fine_solution)),
                  restrict_to_coarse(apply_operator(fine_solution)));
}

Field coarse_rhs(const Field& fine_rhs, const Field& fine_solution) {
  require_same_shape(fine_rhs, fine_solution, "coarse_rhs");
  Field out = restrict_to_coarse(fine_rhs);
  add_in_place(out, tau_correction(fine_solution));
  return out;
}

Field subtract(const Field& a, const Field& b) {
  require_same_shape(a, b, "subtract");
  Field out(a.level());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void add_in_place(Field& a, const Field& b) {
  require_same_shape(a, b, "add_in_place");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

Field scaled(const Field& a, double s) {
  Field out(a.level());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

double norm2(const Field& a) {
  double sum = 0.0;
  for (double v : a.values()) sum += v * v;
  return std::sqrt(sum);
}

double norm_inf(const Field& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

} // namespace fmgsr
