#include "fmgsr/reference.hpp"

#include "fmgsr/stencils.hpp"

#include <stdexcept>

namespace fmgsr::reference {

Field smooth_patches(const Field& u, const Field& f, const SmootherConfig& cfg,
                     const std::optional<CrContext>& cr, std::span<const Patch> patches) {
  cfg.validate();
  const double inv_h2 = inverse_spacing_squared(u.level());
  Field out = u;
  for (const Patch& patch : patches) {
    Field work = u;
    auto w = work.values();
    bool forward = true;
    for (int rep = 0; rep < cfg.sweeps; ++rep) {
      if (cr) {
        const Field& coarse = cr->coarse;
        const int first = patch.extended.begin / 2;
        const int last = patch.extended.end / 2;
        for (int step = 0; step < last - first; ++step) {
          const int j = forward ? first + step : last - 1 - step;
          const auto a = static_cast<std::size_t>(2 * j);
          const double r = coarse[static_cast<std::size_t>(j)] - (0.5 * w[a] + 0.5 * w[a + 1]);
          const double t = r / 0.5;
          w[a] += 0.5 * t;
          w[a + 1] += 0.5 * t;
        }
      }
      const int width = patch.extended.size();
      for (int step = 0; step < width; ++step) {
        const int i = forward ? patch.extended.begin + step : patch.extended.end - 1 - step;
        const auto ui = static_cast<std::size_t>(i);
        const double row = apply_operator_row(w, ui, inv_h2);
        const double diag = inv_h2 * operator_diagonal(ui, w.size());
        w[ui] = w[ui] + cfg.omega * (f[ui] - row) / diag;
      }
      forward = !forward;
    }
    for (int i = patch.owned.begin; i < patch.owned.end; ++i) {
      out[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Field smooth_level(const Hierarchy& hierarchy, const Field& u, const Field& f,
                   const SmootherConfig& cfg, const std::optional<CrContext>& cr) {
  if (u.level() == hierarchy.coarsest()) return direct_solve(hierarchy, f);
  const auto patches = partition(static_cast<int>(u.size()), cfg.halo);
  return reference::smooth_patches(u, f, cfg, cr, patches);
}

} // namespace fmgsr::reference
