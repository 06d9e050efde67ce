#pragma once

#include "fmgsr/mesh.hpp"

#include <optional>
#include <span>

namespace fmgsr {

enum class Sweep { Forward, Backward };

inline Sweep reversed(Sweep s) { return s == Sweep::Forward ? Sweep::Backward : Sweep::Forward; }

/// How patch solves inside one smoother application are scheduled. Both
/// produce bit-identical results; owned ranges are disjoint.
enum class Execution { Serial, Parallel };

struct SmootherConfig {
  int sweeps = 1;               ///< inner repetitions per application (nu of V(nu,nu))
  HaloMode halo = HaloMode::Halo4;
  double omega = 1.0;

  void validate() const;
};

/// Coarse data for compatible relaxation on a full-update level: the smoothed
/// fine field is pulled back toward restrict(u_h) == coarse.
struct CrContext {
  const Field& coarse;
};

/// One Gauss-Seidel pass over `window`, in place. Cells outside the window are
/// read as frozen boundary data and never written.
void patch_gs_sweep(Field& u, const Field& f, IndexRange window, Sweep direction, double omega = 1.0);

/// Kaczmarz projection onto restrict(u) == coarse for every coarse cell whose
/// children lie in `window`. The window must cover whole pairs.
void kaczmarz_pass(Field& u, const Field& coarse, IndexRange window, Sweep direction);

/// Additive block-Jacobi smoother over `patches`: each patch starts from the
/// same input `u`, runs cfg.sweeps repetitions of {Kaczmarz (if cr), GS} on
/// its extended window with alternating direction, and keeps only its owned
/// cells. Output does not depend on patch order.
Field smooth_patches(const Field& u, const Field& f, const SmootherConfig& cfg,
                     const std::optional<CrContext>& cr, std::span<const Patch> patches,
                     Execution exec = Execution::Parallel);

/// One smoother application on a hierarchy level; the coarsest level is
/// solved exactly instead.
Field smooth_level(const Hierarchy& hierarchy, const Field& u, const Field& f,
                   const SmootherConfig& cfg, const std::optional<CrContext>& cr = std::nullopt,
                   Execution exec = Execution::Parallel);

/// Exact solve of L u = f on any level (Thomas algorithm).
Field solve_tridiagonal(const Field& f);

/// Exact coarsest-grid solve; rejects any level but the hierarchy's coarsest.
Field direct_solve(const Hierarchy& hierarchy, const Field& f);

} // namespace fmgsr
