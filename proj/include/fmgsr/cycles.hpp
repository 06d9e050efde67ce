#pragma once

#include "fmgsr/mesh.hpp"
#include "fmgsr/smoothers.hpp"

#include <optional>
#include <vector>

namespace fmgsr {

struct SolverConfig {
  Hierarchy hierarchy{2, 4};
  /// Number of finest levels that take the full update (segmental refinement).
  int sr_levels = 0;
  SmootherConfig smoother;
  Execution execution = Execution::Parallel;
  /// Debug: NaN-fill SR-level solutions once the down leg has consumed them.
  /// A finite result then shows those fields were never read again.
  bool poison_sr_levels = false;

  /// Checks coarsest >= 2 (FMG interpolation support) and
  /// 0 <= sr_levels <= finest - coarsest - 1.
  void validate() const;

  /// Levels above finest - sr_levels are rebuilt by full update plus
  /// compatible relaxation instead of a coarse-grid correction.
  bool is_sr_level(int level) const { return level > hierarchy.finest() - sr_levels; }
};

/// Per-level data of one FMG solve. Vectors are indexed by level - coarsest.
class CycleState {
public:
  CycleState() = default;
  /// Cascades `forcing` down the hierarchy; solutions start at zero.
  CycleState(const Hierarchy& hierarchy, const Field& forcing);

  int coarsest() const { return coarsest_; }
  int finest() const { return coarsest_ + static_cast<int>(solution_.size()) - 1; }

  Field& solution(int level) { return solution_.at(index(level)); }
  const Field& solution(int level) const { return solution_.at(index(level)); }
  /// Working right-hand side (tau-corrected below the current finest level).
  Field& rhs(int level) { return rhs_.at(index(level)); }
  const Field& rhs(int level) const { return rhs_.at(index(level)); }
  /// Original forcing restricted to `level`.
  const Field& forcing(int level) const { return forcing_.at(index(level)); }

private:
  std::size_t index(int level) const { return static_cast<std::size_t>(level - coarsest_); }

  int coarsest_ = 0;
  std::vector<Field> solution_;
  std::vector<Field> rhs_;
  std::vector<Field> forcing_;
};

struct LevelDiagnostics {
  int level = 0;
  double residual_after_prolong = 0.0;   ///< ||f_k - L u_k||_2 right after FMG interpolation
  double residual_after_cycle = 0.0;
  double algebraic_error_after_prolong = 0.0;  ///< vs. the exact discrete solve on level k
  double algebraic_error_after_cycle = 0.0;
  std::optional<double> rel_error_vs_exact;    ///< when an exact solution is supplied

  /// Measured per-level error reduction of the V-cycle.
  double contraction() const {
    return algebraic_error_after_prolong > 0.0 ? algebraic_error_after_cycle / algebraic_error_after_prolong : 0.0;
  }
};

struct Diagnostics {
  std::vector<LevelDiagnostics> levels;  ///< one entry per FMG level above the coarsest
};

struct SolveOptions {
  bool collect_diagnostics = false;
  std::optional<Field> exact;  ///< finest-level exact solution, restricted for coarser levels
};

struct FmgResult {
  Field solution;
  Diagnostics diagnostics;
  CycleState state;  ///< all levels as left by the last cycle
};

/// One FMG pass: exact coarsest solve, then per level FMG interpolation,
/// pre-smoothing and a single V-cycle (down leg, up leg).
FmgResult fmg_solve(const SolverConfig& cfg, const Field& forcing, const SolveOptions& options = {});

/// Restrict, rebuild the tau-corrected RHS and smooth on every level from
/// `finest - 1` down to the coarsest (which is solved exactly).
void down_leg(const SolverConfig& cfg, CycleState& state, int finest);

/// Walk back up to `finest`: correction update plus smoothing on ordinary
/// levels, full FMG-interpolated update plus compatible relaxation on SR levels.
void up_leg(const SolverConfig& cfg, CycleState& state, int finest);

/// Rebuilds the finest solution from the stored solution on `from_level`,
/// replaying the SR up-leg steps. Every level above `from_level` must be an
/// SR level.
Field expand_from(const SolverConfig& cfg, const CycleState& state, int from_level);

} // namespace fmgsr
