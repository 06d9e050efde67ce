#pragma once

#include "fmgsr/cycles.hpp"

#include <cstdint>

namespace fmgsr {

/// Modeled storage of one FMG-SR solve, in cells.
///
/// Levels up to finest - sr_levels are held whole. Each SR level only keeps
/// the extended window of the patch currently being processed, so it adds
/// min(2 + 2*halo, 2^k) cells (the whole level in Global mode). The tau/RHS
/// accumulation lands in the finest stored level, already counted.
struct MemoryModel {
  std::int64_t cells_stored_full = 0;
  std::int64_t sr_working_set = 0;
  std::int64_t total_modeled = 0;
};

MemoryModel memory_report(const SolverConfig& cfg);

/// Extended window of one interior patch on a level of `n` cells.
std::int64_t patch_window_cells(std::int64_t n, HaloMode mode);

} // namespace fmgsr
