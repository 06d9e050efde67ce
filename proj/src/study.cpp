#include "fmgsr/study.hpp"

#include "fmgsr/cycles.hpp"
#include "fmgsr/problem.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <tuple>

namespace fmgsr {

std::vector<StudyConfig> full_study_grid() {
  std::vector<StudyConfig> grid;
  for (HaloMode halo : {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global}) {
    for (int sweeps : {1, 2}) {
      for (int sr = 0; sr <= 3; ++sr) grid.push_back({sr, halo, sweeps});
    }
  }
  return grid;
}

double quadratic_reference(int level) {
  double q = 1.0 / 256.0;
  for (int k = 4; k < level; ++k) q /= 4;
  for (int k = level; k < 4; ++k) q *= 4;
  return q;
}

namespace {

auto sort_key(const StudyRecord& r) { return std::make_tuple(static_cast<int>(r.halo), r.sweeps, r.sr_levels, r.n); }

StudyRecord run_cell(const StudyOptions& options, const StudyConfig& config, int m, Execution exec) {
  SolverConfig cfg;
  cfg.hierarchy = Hierarchy(options.coarsest, m);
  cfg.sr_levels = config.sr_levels;
  cfg.smoother.halo = config.halo;
  cfg.smoother.sweeps = config.sweeps;
  cfg.execution = exec;

  const auto problem = ManufacturedProblem::with_default_modes(m, options.nmodes_divisor);
  const Field f = manufactured_rhs(m, problem.nmodes);
  const Field exact = exact_solution(m, problem.nmodes);

  const auto start = std::chrono::steady_clock::now();
  const FmgResult result = fmg_solve(cfg, f);
  const auto stop = std::chrono::steady_clock::now();

  StudyRecord rec;
  rec.n = level_size(m);
  rec.sr_levels = config.sr_levels;
  rec.halo = config.halo;
  rec.sweeps = config.sweeps;
  rec.rel_error = rel_l2_error(result.solution, exact);
  rec.quad_ref = quadratic_reference(m);
  rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

} // namespace

std::vector<StudyRecord> run_study(const StudyOptions& options, std::span<const StudyConfig> configs) {
  if (options.coarsest < 2) throw std::invalid_argument("run_study: coarsest level must be >= 2");
  if (options.m_min < options.coarsest + 1) throw std::invalid_argument("run_study: m_min must exceed the coarsest level");
  if (options.m_max < options.m_min) throw std::invalid_argument("run_study: m_max < m_min");
  if (options.m_max > 24) throw std::invalid_argument("run_study: m_max too large");
  if (options.nmodes_divisor < 1) throw std::invalid_argument("run_study: nmodes divisor must be >= 1");

  struct Cell {
    StudyConfig config;
    int m;
  };
  std::vector<Cell> cells;
  for (const StudyConfig& c : configs) {
    if (c.sweeps < 1) throw std::invalid_argument("run_study: sweeps must be >= 1");
    if (c.sr_levels < 0) throw std::invalid_argument("run_study: negative sr_levels");
    bool any = false;
    for (int m = options.m_min; m <= options.m_max; ++m) {
      if (c.sr_levels <= m - options.coarsest - 1) {
        cells.push_back({c, m});
        any = true;
      }
    }
    if (!any) {
      throw std::invalid_argument("run_study: sr_levels=" + std::to_string(c.sr_levels) +
                                  " needs more levels above the coarsest than m_max provides");
    }
  }

  std::vector<StudyRecord> records(cells.size());
  const auto count = static_cast<std::ptrdiff_t>(cells.size());
  const Execution inner = options.parallel ? Execution::Serial : Execution::Parallel;
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const Cell& cell = cells[static_cast<std::size_t>(i)];
      records[static_cast<std::size_t>(i)] = run_cell(options, cell.config, cell.m, inner);
    } catch (...) {
#pragma omp critical(fmgsr_study_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(),
            [](const StudyRecord& a, const StudyRecord& b) { return sort_key(a) < sort_key(b); });
  return records;
}

std::vector<StudyRecord> select_config(std::span<const StudyRecord> records, const StudyConfig& config) {
  std::vector<StudyRecord> out;
  for (const StudyRecord& r : records) {
    if (r.config() == config) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const StudyRecord& a, const StudyRecord& b) { return a.n < b.n; });
  return out;
}

double observed_order(std::span<const StudyRecord> records) {
  if (records.size() < 3) throw std::invalid_argument("observed_order: need at least 3 records");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const StudyRecord& r : records) {
    if (r.n <= 0 || !(r.rel_error > 0.0)) throw std::invalid_argument("observed_order: errors must be positive");
    const double x = std::log2(static_cast<double>(r.n));
    const double y = std::log2(r.rel_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(records.size());
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("observed_order: all records share one n");
  return -(k * sxy - sx * sy) / denom;
}

} // namespace fmgsr
