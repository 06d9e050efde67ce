#include "fmgsr/memory_model.hpp"

#include <algorithm>

namespace fmgsr {

std::int64_t patch_window_cells(std::int64_t n, HaloMode mode) {
  if (mode == HaloMode::Global) return n;
  return std::min<std::int64_t>(n, kOwnedPatchWidth + 2 * halo_width(mode));
}

MemoryModel memory_report(const SolverConfig& cfg) {
  cfg.validate();
  MemoryModel m;
  const Hierarchy& h = cfg.hierarchy;
  for (int k = h.coarsest(); k <= h.finest(); ++k) {
    const std::int64_t n = level_size(k);
    if (cfg.is_sr_level(k)) {
      m.sr_working_set += patch_window_cells(n, cfg.smoother.halo);
    } else {
      m.cells_stored_full += n;
    }
  }
  m.total_modeled = m.cells_stored_full + m.sr_working_set;
  return m;
}

} // namespace fmgsr
