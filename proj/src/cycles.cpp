#include "fmgsr/cycles.hpp"

#include "fmgsr/problem.hpp"
#include "fmgsr/stencils.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace fmgsr {

void SolverConfig::validate() const {
  if (hierarchy.coarsest() < 2) {
    throw std::invalid_argument("SolverConfig: coarsest level needs >= 4 cells for FMG interpolation");
  }
  const int max_sr = hierarchy.finest() - hierarchy.coarsest() - 1;
  if (sr_levels < 0 || sr_levels > max_sr) {
    throw std::invalid_argument("SolverConfig: sr_levels=" + std::to_string(sr_levels) + " outside [0, " +
                                std::to_string(max_sr) + "] for levels " + std::to_string(hierarchy.coarsest()) +
                                ".." + std::to_string(hierarchy.finest()));
  }
  smoother.validate();
}

CycleState::CycleState(const Hierarchy& hierarchy, const Field& forcing) : coarsest_(hierarchy.coarsest()) {
  if (forcing.level() != hierarchy.finest()) throw std::invalid_argument("CycleState: forcing must live on the finest level");
  forcing_ = cascade_restrict(forcing, hierarchy.coarsest());
  rhs_ = forcing_;
  for (int k = hierarchy.coarsest(); k <= hierarchy.finest(); ++k) solution_.emplace_back(k);
}

void down_leg(const SolverConfig& cfg, CycleState& state, int finest) {
  const Hierarchy& h = cfg.hierarchy;
  for (int l = finest; l > h.coarsest(); --l) {
    state.rhs(l - 1) = coarse_rhs(state.rhs(l), state.solution(l));
    Field restricted = restrict_to_coarse(state.solution(l));
    state.solution(l - 1) = smooth_level(h, restricted, state.rhs(l - 1), cfg.smoother, std::nullopt, cfg.execution);
  }
}

void up_leg(const SolverConfig& cfg, CycleState& state, int finest) {
  const Hierarchy& h = cfg.hierarchy;
  for (int l = h.coarsest(); l < finest; ++l) {
    const Field& coarse = state.solution(l);
    Field& fine = state.solution(l + 1);
    if (!cfg.is_sr_level(l + 1)) {
      add_in_place(fine, prolong_correction(subtract(coarse, restrict_to_coarse(fine))));
      fine = smooth_level(h, fine, state.rhs(l + 1), cfg.smoother, std::nullopt, cfg.execution);
    } else {
      Field full = prolong_fmg(coarse);
      fine = smooth_level(h, full, state.rhs(l + 1), cfg.smoother, CrContext{coarse}, cfg.execution);
    }
  }
}

namespace {

struct Snapshot {
  double residual;
  double algebraic_error;
};

Snapshot snapshot(const CycleState& state, int level, const Field& discrete) {
  return {norm2(residual(state.solution(level), state.forcing(level))),
          norm2(subtract(state.solution(level), discrete))};
}

} // namespace

FmgResult fmg_solve(const SolverConfig& cfg, const Field& forcing, const SolveOptions& options) {
  cfg.validate();
  const Hierarchy& h = cfg.hierarchy;
  if (forcing.level() != h.finest()) throw std::invalid_argument("fmg_solve: forcing must live on the finest level");

  FmgResult result;
  CycleState& state = result.state;
  state = CycleState(h, forcing);

  std::vector<Field> exact_levels;
  if (options.exact) {
    if (options.exact->level() != h.finest()) throw std::invalid_argument("fmg_solve: exact solution level mismatch");
    exact_levels = cascade_restrict(*options.exact, h.coarsest());
  }

  state.solution(h.coarsest()) = direct_solve(h, state.forcing(h.coarsest()));

  for (int k = h.coarsest(); k < h.finest(); ++k) {
    const int fine = k + 1;
    state.rhs(fine) = state.forcing(fine);
    state.solution(fine) = prolong_fmg(state.solution(k));

    LevelDiagnostics diag;
    diag.level = fine;
    Field discrete;
    if (options.collect_diagnostics) {
      discrete = solve_tridiagonal(state.forcing(fine));
      const Snapshot before = snapshot(state, fine, discrete);
      diag.residual_after_prolong = before.residual;
      diag.algebraic_error_after_prolong = before.algebraic_error;
    }

    state.solution(fine) = smooth_level(h, state.solution(fine), state.rhs(fine), cfg.smoother, std::nullopt, cfg.execution);
    down_leg(cfg, state, fine);
    if (cfg.poison_sr_levels) {
      for (int l = h.coarsest() + 1; l <= fine; ++l) {
        if (cfg.is_sr_level(l)) std::ranges::fill(state.solution(l).values(), std::numeric_limits<double>::quiet_NaN());
      }
    }
    up_leg(cfg, state, fine);

    if (options.collect_diagnostics) {
      const Snapshot after = snapshot(state, fine, discrete);
      diag.residual_after_cycle = after.residual;
      diag.algebraic_error_after_cycle = after.algebraic_error;
      if (!exact_levels.empty()) {
        diag.rel_error_vs_exact =
            rel_l2_error(state.solution(fine), exact_levels[static_cast<std::size_t>(fine - h.coarsest())]);
      }
      result.diagnostics.levels.push_back(diag);
    }
  }

  result.solution = state.solution(h.finest());
  return result;
}

Field expand_from(const SolverConfig& cfg, const CycleState& state, int from_level) {
  const Hierarchy& h = cfg.hierarchy;
  if (!h.contains(from_level)) throw std::invalid_argument("expand_from: level outside hierarchy");
  Field u = state.solution(from_level);
  for (int l = from_level; l < h.finest(); ++l) {
    if (!cfg.is_sr_level(l + 1)) throw std::invalid_argument("expand_from: level above start is not an SR level");
    Field full = prolong_fmg(u);
    u = smooth_level(h, full, state.rhs(l + 1), cfg.smoother, CrContext{u}, cfg.execution);
  }
  return u;
}

} // namespace fmgsr
