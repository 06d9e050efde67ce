#pragma once

// Serial reference smoother, kept for testing and benchmarking. It follows the
// original whole-vector formulation: every patch copies the entire input
// level, relaxes its window in place, and contributes its owned cells. The
// production smoother (smooth_patches) must match it bit for bit.

#include "fmgsr/mesh.hpp"
#include "fmgsr/smoothers.hpp"

#include <optional>
#include <span>

namespace fmgsr::reference {

Field smooth_patches(const Field& u, const Field& f, const SmootherConfig& cfg,
                     const std::optional<CrContext>& cr, std::span<const Patch> patches);

Field smooth_level(const Hierarchy& hierarchy, const Field& u, const Field& f,
                   const SmootherConfig& cfg, const std::optional<CrContext>& cr = std::nullopt);

} // namespace fmgsr::reference
