#include "fmgsr/smoothers.hpp"

#include "fmgsr/stencils.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fmgsr {

void SmootherConfig::validate() const {
  if (sweeps < 1) throw std::invalid_argument("SmootherConfig: sweeps must be >= 1");
  if (!(omega > 0.0 && omega < 2.0)) throw std::invalid_argument("SmootherConfig: omega outside (0, 2)");
}

namespace {

void check_window(const Field& u, IndexRange window) {
  if (window.begin < 0 || window.end > static_cast<int>(u.size()) || window.begin >= window.end) {
    throw std::invalid_argument("smoother window outside level");
  }
}

void check_cr(const Field& u, const Field& coarse) {
  if (coarse.level() + 1 != u.level()) {
    throw std::invalid_argument("CrContext: coarse field must live one level below");
  }
}

} // namespace

void patch_gs_sweep(Field& u, const Field& f, IndexRange window, Sweep direction, double omega) {
  if (u.level() != f.level()) throw std::invalid_argument("patch_gs_sweep: level mismatch");
  check_window(u, window);
  detail::gs_sweep(u.values(), f.values(), 0, static_cast<int>(u.size()), window, direction,
                   inverse_spacing_squared(u.level()), omega);
}

void kaczmarz_pass(Field& u, const Field& coarse, IndexRange window, Sweep direction) {
  check_cr(u, coarse);
  check_window(u, window);
  detail::check_pair_aligned(window);
  detail::kaczmarz_sweep(u.values(), coarse.values(), 0, window, direction);
}

Field smooth_patches(const Field& u, const Field& f, const SmootherConfig& cfg,
                     const std::optional<CrContext>& cr, std::span<const Patch> patches,
                     Execution exec) {
  cfg.validate();
  if (u.level() != f.level()) throw std::invalid_argument("smooth_patches: level mismatch");
  if (cr) check_cr(u, cr->coarse);
  for (const Patch& p : patches) {
    check_window(u, p.extended);
    if (!p.extended.contains(p.owned)) throw std::invalid_argument("smooth_patches: owned range outside window");
    if (cr) detail::check_pair_aligned(p.extended);
  }

  const int n = static_cast<int>(u.size());
  const double inv_h2 = inverse_spacing_squared(u.level());
  const auto input = u.values();
  const auto rhs = f.values();
  const std::span<const double> coarse = cr ? cr->coarse.values() : std::span<const double>{};
  const auto num_patches = static_cast<std::ptrdiff_t>(patches.size());

  Field out = u;
  auto result = out.values();

#pragma omp parallel if (exec == Execution::Parallel && num_patches > 1)
  {
    std::vector<double> local;
#pragma omp for schedule(static)
    for (std::ptrdiff_t p = 0; p < num_patches; ++p) {
      const Patch& patch = patches[static_cast<std::size_t>(p)];
      // Window plus one frozen neighbour on each side.
      const int lo = std::max(0, patch.extended.begin - 1);
      const int hi = std::min(n, patch.extended.end + 1);
      local.assign(input.begin() + lo, input.begin() + hi);

      Sweep dir = Sweep::Forward;
      for (int rep = 0; rep < cfg.sweeps; ++rep) {
        if (cr) detail::kaczmarz_sweep(local, coarse, lo, patch.extended, dir);
        detail::gs_sweep(local, rhs, lo, n, patch.extended, dir, inv_h2, cfg.omega);
        dir = reversed(dir);
      }
      for (int i = patch.owned.begin; i < patch.owned.end; ++i) {
        result[static_cast<std::size_t>(i)] = local[static_cast<std::size_t>(i - lo)];
      }
    }
  }
  return out;
}

Field smooth_level(const Hierarchy& hierarchy, const Field& u, const Field& f,
                   const SmootherConfig& cfg, const std::optional<CrContext>& cr, Execution exec) {
  if (!hierarchy.contains(u.level())) throw std::invalid_argument("smooth_level: level outside hierarchy");
  if (u.level() != f.level()) throw std::invalid_argument("smooth_level: level mismatch");
  if (u.level() == hierarchy.coarsest()) return direct_solve(hierarchy, f);
  const auto patches = partition(static_cast<int>(u.size()), cfg.halo);
  return smooth_patches(u, f, cfg, cr, patches, exec);
}

Field solve_tridiagonal(const Field& f) {
  const std::size_t n = f.size();
  const double inv_h2 = inverse_spacing_squared(f.level());
  // Forward elimination on the unscaled matrix, then scale the solution.
  std::vector<double> c_prime(n, 0.0);
  std::vector<double> d_prime(n, 0.0);
  double denom = operator_diagonal(0, n);
  c_prime[0] = -1.0 / denom;
  d_prime[0] = f[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = operator_diagonal(i, n) + c_prime[i - 1];
    c_prime[i] = -1.0 / denom;
    d_prime[i] = (f[i] + d_prime[i - 1]) / denom;
  }
  Field u(f.level());
  u[n - 1] = d_prime[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = d_prime[i] - c_prime[i] * u[i + 1];
  const double h2 = 1.0 / inv_h2;
  for (std::size_t i = 0; i < n; ++i) u[i] *= h2;
  return u;
}

Field direct_solve(const Hierarchy& hierarchy, const Field& f) {
  if (f.level() != hierarchy.coarsest()) {
    throw std::invalid_argument("direct_solve: only the coarsest level is solved directly");
  }
  return solve_tridiagonal(f);
}

} // namespace fmgsr
