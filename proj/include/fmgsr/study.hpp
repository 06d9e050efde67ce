#pragma once

#include "fmgsr/mesh.hpp"

#include <span>
#include <vector>

namespace fmgsr {

/// One solver configuration of the convergence study.
struct StudyConfig {
  int sr_levels = 0;
  HaloMode halo = HaloMode::Halo4;
  int sweeps = 1;
  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

struct StudyRecord {
  int n = 0;
  int sr_levels = 0;
  HaloMode halo = HaloMode::Halo4;
  int sweeps = 1;
  double rel_error = 0.0;
  double quad_ref = 0.0;
  double runtime_ms = 0.0;

  StudyConfig config() const { return {sr_levels, halo, sweeps}; }
};

struct StudyOptions {
  int m_min = 4;
  int m_max = 12;
  int coarsest = 2;
  int nmodes_divisor = 16;
  bool parallel = true;  ///< run independent (config, m) cells concurrently
};

/// The 24 configurations behind the published figures: sr in {0..3},
/// halo in {2, 4, global}, sweeps in {1, 2}.
std::vector<StudyConfig> full_study_grid();

/// Reference line (1/16)^2 at 16 cells, divided by 4 per refinement.
double quadratic_reference(int level);

/// Runs one FMG solve per (config, m) cell on the manufactured problem and
/// records the relative L2 error against the exact solution. Cells whose
/// sr_levels exceed m - coarsest - 1 are skipped; a config that fits no m in
/// range is rejected. Output is sorted by (halo, sweeps, sr_levels, n).
std::vector<StudyRecord> run_study(const StudyOptions& options, std::span<const StudyConfig> configs);

/// Records of one configuration, sorted by n.
std::vector<StudyRecord> select_config(std::span<const StudyRecord> records, const StudyConfig& config);

/// Negated least-squares slope of log2(error) against log2(n).
double observed_order(std::span<const StudyRecord> records);

} // namespace fmgsr
