#pragma once

// Window-local smoother kernels shared by the OpenMP smoother and the public
// single-window entry points. `u[i - offset]` holds global cell i for every i
// the kernel touches (the window plus one frozen neighbour on each side).

#include "fmgsr/mesh.hpp"
#include "fmgsr/smoothers.hpp"
#include "fmgsr/stencils.hpp"

#include <span>
#include <stdexcept>

namespace fmgsr::detail {

inline void gs_update(std::span<double> u, std::span<const double> f, int offset, int n, int i,
                      double inv_h2, double omega) {
  const auto li = static_cast<std::size_t>(i - offset);
  const double diag = operator_diagonal(static_cast<std::size_t>(i), static_cast<std::size_t>(n));
  double acc = diag * u[li];
  if (i > 0) acc -= u[li - 1];
  if (i + 1 < n) acc -= u[li + 1];
  const double row = inv_h2 * acc;
  u[li] = u[li] + omega * (f[static_cast<std::size_t>(i)] - row) / (inv_h2 * diag);
}

inline void gs_sweep(std::span<double> u, std::span<const double> f, int offset, int n,
                     IndexRange window, Sweep dir, double inv_h2, double omega) {
  if (dir == Sweep::Forward) {
    for (int i = window.begin; i < window.end; ++i) gs_update(u, f, offset, n, i, inv_h2, omega);
  } else {
    for (int i = window.end - 1; i >= window.begin; --i) gs_update(u, f, offset, n, i, inv_h2, omega);
  }
}

inline void check_pair_aligned(IndexRange window) {
  if (window.begin % 2 != 0 || window.end % 2 != 0) {
    throw std::invalid_argument("kaczmarz_pass: window must cover whole coarse pairs");
  }
}

// Restriction rows are 1/2 [1 1] so P(j,j) = 1/2 and the distributed update
// adds r to both children.
inline void kaczmarz_update(std::span<double> u, std::span<const double> coarse, int offset, int j) {
  const auto a = static_cast<std::size_t>(2 * j - offset);
  const double r = coarse[static_cast<std::size_t>(j)] - (0.5 * u[a] + 0.5 * u[a + 1]);
  const double t = r / 0.5;
  u[a] += 0.5 * t;
  u[a + 1] += 0.5 * t;
}

inline void kaczmarz_sweep(std::span<double> u, std::span<const double> coarse, int offset,
                           IndexRange window, Sweep dir) {
  const int first = window.begin / 2;
  const int last = window.end / 2;
  if (dir == Sweep::Forward) {
    for (int j = first; j < last; ++j) kaczmarz_update(u, coarse, offset, j);
  } else {
    for (int j = last - 1; j >= first; --j) kaczmarz_update(u, coarse, offset, j);
  }
}

} // namespace fmgsr::detail
