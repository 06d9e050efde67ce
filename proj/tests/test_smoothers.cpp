#include "fmgsr/problem.hpp"
#include "fmgsr/reference.hpp"
#include "fmgsr/smoothers.hpp"
#include "fmgsr/stencils.hpp"

#include "dense_oracle.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

using namespace fmgsr;

namespace {

Field random_field(int level, std::mt19937_64& rng) { return Field(level, oracle::random_vec(level_size(level), rng)); }

IndexRange whole(const Field& u) { return {0, static_cast<int>(u.size())}; }

} // namespace

TEST_CASE("patch GS: fixed point of the exact discrete solution") {
  const Field f = manufactured_rhs(6, 4);
  const Field exact = solve_tridiagonal(f);
  Field u = exact;
  patch_gs_sweep(u, f, whole(u), Sweep::Forward);
  CHECK(norm_inf(subtract(u, exact)) <= 1e-13);
}

TEST_CASE("patch GS: hand replay on four cells") {
  Field u(2);
  const Field f(2, {1, 1, 1, 1});
  patch_gs_sweep(u, f, whole(u), Sweep::Forward);
  // h = 1/4: u1 = 1/48, u2 = (1 + 16 u1)/32, u3 = (1 + 16 u2)/32, u4 = (1 + 16 u3)/48.
  const double u1 = 1.0 / 48;
  const double u2 = (1 + 16 * u1) / 32;
  const double u3 = (1 + 16 * u2) / 32;
  const double u4 = (1 + 16 * u3) / 48;
  CHECK(u[0] == doctest::Approx(u1).epsilon(1e-15));
  CHECK(u[1] == doctest::Approx(u2).epsilon(1e-15));
  CHECK(u[2] == doctest::Approx(u3).epsilon(1e-15));
  CHECK(u[3] == doctest::Approx(u4).epsilon(1e-15));
  CHECK(u[1] == doctest::Approx(1.0 / 24));
  CHECK(u[3] == doctest::Approx(11.0 / 288));
}

TEST_CASE("patch GS: backward sweep mirrors forward sweep") {
  std::mt19937_64 rng(3);
  const Field u0 = random_field(5, rng);
  const Field f = random_field(5, rng);
  auto mirror = [](const Field& a) {
    std::vector<double> v(a.data().rbegin(), a.data().rend());
    return Field(a.level(), v);
  };
  Field back = u0;
  patch_gs_sweep(back, f, {6, 20}, Sweep::Backward);
  Field fwd = mirror(u0);
  patch_gs_sweep(fwd, mirror(f), {12, 26}, Sweep::Forward);
  CHECK(norm_inf(subtract(back, mirror(fwd))) <= 1e-13);
}

TEST_CASE("patch GS leaves cells outside the window untouched") {
  std::mt19937_64 rng(4);
  const Field u0 = random_field(4, rng);
  Field u = u0;
  patch_gs_sweep(u, random_field(4, rng), {4, 10}, Sweep::Forward);
  for (int i = 0; i < 16; ++i) {
    if (i < 4 || i >= 10) CHECK(u[static_cast<std::size_t>(i)] == u0[static_cast<std::size_t>(i)]);
  }
  CHECK_THROWS_AS(patch_gs_sweep(u, Field(4), {10, 20}, Sweep::Forward), std::invalid_argument);
}

TEST_CASE("Kaczmarz pass") {
  Field u(1, {1, 3});
  kaczmarz_pass(u, Field(0, {5}), {0, 2}, Sweep::Forward);
  CHECK(u == Field(1, {4, 6}));

  Field same(2, {1, 3, 2, 2});
  kaczmarz_pass(same, Field(1, {2, 2}), whole(same), Sweep::Backward);
  CHECK(same == Field(2, {1, 3, 2, 2}));

  std::mt19937_64 rng(5);
  for (int level = 3; level <= 10; ++level) {
    Field v = random_field(level, rng);
    const Field target = random_field(level - 1, rng);
    kaczmarz_pass(v, target, whole(v), Sweep::Forward);
    CHECK(norm_inf(subtract(restrict_to_coarse(v), target)) <= 1e-14);
  }

  Field w(3);
  CHECK_THROWS_AS(kaczmarz_pass(w, Field(2), {1, 5}, Sweep::Forward), std::invalid_argument);
  CHECK_THROWS_AS(kaczmarz_pass(w, Field(1), {0, 8}, Sweep::Forward), std::invalid_argument);
}

TEST_CASE("Kaczmarz on a partial window only touches covered pairs") {
  std::mt19937_64 rng(6);
  const Field u0 = random_field(4, rng);
  const Field target = random_field(3, rng);
  Field u = u0;
  kaczmarz_pass(u, target, {4, 10}, Sweep::Backward);
  const Field r = restrict_to_coarse(u);
  for (int j = 0; j < 8; ++j) {
    if (j >= 2 && j < 5) {
      CHECK(r[static_cast<std::size_t>(j)] == doctest::Approx(target[static_cast<std::size_t>(j)]).epsilon(1e-14));
    } else {
      CHECK(u[static_cast<std::size_t>(2 * j)] == u0[static_cast<std::size_t>(2 * j)]);
    }
  }
}

TEST_CASE("smooth_level: Global mode is alternating point GS") {
  const Hierarchy h(2, 6);
  std::mt19937_64 rng(8);
  const Field u0 = random_field(5, rng);
  const Field f = random_field(5, rng);
  SmootherConfig cfg{2, HaloMode::Global, 1.0};
  const Field s = smooth_level(h, u0, f, cfg);
  Field manual = u0;
  patch_gs_sweep(manual, f, whole(manual), Sweep::Forward);
  patch_gs_sweep(manual, f, whole(manual), Sweep::Backward);
  CHECK(s == manual);
}

TEST_CASE("smooth_level: sweeps=2 is forward then backward in every patch mode") {
  const Hierarchy h(2, 8);
  std::mt19937_64 rng(9);
  for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global}) {
    const Field u0 = random_field(6, rng);
    const Field f = random_field(6, rng);
    const Field coarse = random_field(5, rng);
    const Field two = smooth_level(h, u0, f, {2, mode, 1.0}, CrContext{coarse});
    const auto patches = partition(64, mode);
    Field expect = u0;
    for (const Patch& p : patches) {
      Field work = u0;
      kaczmarz_pass(work, coarse, p.extended, Sweep::Forward);
      patch_gs_sweep(work, f, p.extended, Sweep::Forward);
      kaczmarz_pass(work, coarse, p.extended, Sweep::Backward);
      patch_gs_sweep(work, f, p.extended, Sweep::Backward);
      for (int i = p.owned.begin; i < p.owned.end; ++i) expect[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)];
    }
    CHECK(two == expect);
  }
}

TEST_CASE("smooth_level keeps the exact discrete solution") {
  const Hierarchy h(2, 8);
  const Field f = manufactured_rhs(7, 8);
  const Field exact = solve_tridiagonal(f);
  for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global}) {
    for (int ns : {1, 2}) {
      const Field s = smooth_level(h, exact, f, {ns, mode, 1.0});
      CHECK(norm_inf(subtract(s, exact)) <= 1e-13);
    }
  }
}

TEST_CASE("smooth_level matches the dense reference smoother") {
  const Hierarchy h(2, 7);
  std::mt19937_64 rng(10);
  for (int level = 3; level <= 6; ++level) {
    const int n = level_size(level);
    const auto L = oracle::laplacian(n);
    for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global}) {
      for (int ns : {1, 2}) {
        const Field u = random_field(level, rng);
        const Field f = random_field(level, rng);
        const Field coarse = random_field(level - 1, rng);
        const auto plain = oracle::dense_smooth(L, u.data(), f.data(), ns, mode);
        const auto cr = oracle::dense_smooth(L, u.data(), f.data(), ns, mode, &coarse.data());
        const double tol = 1e-12;
        CHECK(oracle::max_abs(oracle::sub(smooth_level(h, u, f, {ns, mode, 1.0}).data(), plain)) <= tol);
        CHECK(oracle::max_abs(oracle::sub(smooth_level(h, u, f, {ns, mode, 1.0}, CrContext{coarse}).data(), cr)) <= tol);
      }
    }
  }
}

TEST_CASE("halo 2 and halo 4 differ and both reduce the residual") {
  const Hierarchy h(2, 6);
  std::mt19937_64 rng(12);
  const Field u = random_field(4, rng);
  const Field f = manufactured_rhs(4, 1);
  const double before = norm2(residual(u, f));
  const Field a = smooth_level(h, u, f, {1, HaloMode::Halo2, 1.0});
  const Field b = smooth_level(h, u, f, {1, HaloMode::Halo4, 1.0});
  CHECK(norm_inf(subtract(a, b)) > 1e-6);
  CHECK(norm2(residual(a, f)) < before);
  CHECK(norm2(residual(b, f)) < before);
}

TEST_CASE("one smoother application from zero reduces the error in the energy norm") {
  for (int level = 3; level <= 12; ++level) {
    const Hierarchy h(2, level);
    const Field f = manufactured_rhs(level, std::max(1, level_size(level) / 16));
    const Field exact = solve_tridiagonal(f);
    const auto energy = [](const Field& e) {
      const Field le = apply_operator(e);
      double s = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * le[i];
      return s;
    };
    const double before = energy(exact);
    for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global}) {
      for (int ns : {1, 2}) {
        const Field u = smooth_level(h, Field(level), f, {ns, mode, 1.0});
        CHECK(energy(subtract(exact, u)) < before);
        CHECK(norm2(subtract(exact, u)) < norm2(exact));
        if (mode == HaloMode::Global) CHECK(norm2(residual(u, f)) <= norm2(f));
      }
    }
  }
}

TEST_CASE("patch smoothing can raise the residual norm slightly") {
  const Hierarchy h(2, 6);
  const Field f = manufactured_rhs(6, 4);
  const Field u = smooth_level(h, Field(6), f, {1, HaloMode::Halo2, 1.0});
  CHECK(norm2(residual(u, f)) == doctest::Approx(5.986006273305823).epsilon(1e-9));
  CHECK(norm2(f) == doctest::Approx(5.962847939999439).epsilon(1e-12));
}

TEST_CASE("patch order does not change the smoother output") {
  std::mt19937_64 rng(14);
  const Field u = random_field(8, rng);
  const Field f = random_field(8, rng);
  const Field coarse = random_field(7, rng);
  for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4}) {
    auto patches = partition(256, mode);
    const SmootherConfig cfg{2, mode, 1.0};
    const Field base = smooth_patches(u, f, cfg, CrContext{coarse}, patches);
    for (int t = 0; t < 25; ++t) {
      std::shuffle(patches.begin(), patches.end(), rng);
      CHECK(smooth_patches(u, f, cfg, CrContext{coarse}, patches) == base);
    }
  }
}

TEST_CASE("OpenMP smoother is bit-identical to the serial reference") {
  std::mt19937_64 rng(15);
  for (int level = 3; level <= 10; ++level) {
    const Hierarchy h(2, level + 1);
    const Field u = random_field(level, rng);
    const Field f = random_field(level, rng);
    const Field coarse = random_field(level - 1, rng);
    for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global}) {
      for (int ns : {1, 2, 3}) {
        const SmootherConfig cfg{ns, mode, 1.0};
        const Field ref = reference::smooth_level(h, u, f, cfg);
        const Field ref_cr = reference::smooth_level(h, u, f, cfg, CrContext{coarse});
        CHECK(smooth_level(h, u, f, cfg, std::nullopt, Execution::Parallel) == ref);
        CHECK(smooth_level(h, u, f, cfg, std::nullopt, Execution::Serial) == ref);
        CHECK(smooth_level(h, u, f, cfg, CrContext{coarse}, Execution::Parallel) == ref_cr);
      }
    }
  }
}

TEST_CASE("smooth_level input validation") {
  const Hierarchy h(3, 6);
  CHECK_THROWS_AS(smooth_level(h, Field(2), Field(2), {}), std::invalid_argument);
  CHECK_THROWS_AS(smooth_level(h, Field(4), Field(5), {}), std::invalid_argument);
  CHECK_THROWS_AS(smooth_level(h, Field(4), Field(4), {0, HaloMode::Halo2, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(smooth_level(h, Field(4), Field(4), {}, CrContext{Field(2)}), std::invalid_argument);
}

TEST_CASE("coarsest level dispatches to the direct solve") {
  const Hierarchy h(2, 5);
  const Field f(2, {1, 1, 1, 1});
  std::mt19937_64 rng(16);
  CHECK(smooth_level(h, random_field(2, rng), f, {}) == direct_solve(h, f));
}

TEST_CASE("direct solve") {
  const Hierarchy h(2, 5);
  CHECK(direct_solve(h, Field(2)) == Field(2));
  CHECK_THROWS_AS(direct_solve(h, Field(3)), std::invalid_argument);

  std::mt19937_64 rng(18);
  const Field v = random_field(2, rng);
  CHECK(norm_inf(subtract(direct_solve(h, apply_operator(v)), v)) <= 1e-12);

  const Field ones(2, {1, 1, 1, 1});
  const auto dense = oracle::solve(oracle::laplacian(4), ones.data());
  CHECK(oracle::max_abs(oracle::sub(direct_solve(h, ones).data(), dense)) <= 1e-15);
  const Field u = direct_solve(h, ones);
  CHECK(norm_inf(residual(u, ones)) <= 1e-12 * norm_inf(ones));

  for (int level = 3; level <= 7; ++level) {
    const Field g = random_field(level, rng);
    const auto want = oracle::solve(oracle::laplacian(level_size(level)), g.data());
    CHECK(oracle::max_abs(oracle::sub(solve_tridiagonal(g).data(), want)) <= 1e-13);
  }
}
