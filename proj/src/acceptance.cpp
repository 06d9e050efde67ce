#include "fmgsr/acceptance.hpp"

#include "fmgsr/cycles.hpp"
#include "fmgsr/memory_model.hpp"
#include "fmgsr/problem.hpp"
#include "fmgsr/report.hpp"
#include "fmgsr/smoothers.hpp"
#include "fmgsr/stencils.hpp"
#include "fmgsr/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace fmgsr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

Field random_field(int level, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(level);
  for (auto& v : f.values()) v = dist(rng);
  return f;
}

void finish(CriterionResult& r, Clock::time_point start, bool ok) {
  r.seconds = seconds_since(start);
  r.passed = ok && r.seconds < r.budget_seconds;
  if (ok && !r.passed) r.detail += "; over runtime budget";
}

CriterionResult tau_exactness() {
  CriterionResult r{1, "tau algebraic exactness", false, "", 0.0, 1.0};
  const auto start = Clock::now();
  double worst = 0.0;
  for (int level : {3, 4}) {
    const auto problem = ManufacturedProblem::with_default_modes(level);
    const Field f = manufactured_rhs(level, problem.nmodes);
    const Field u_fine = direct_fine_solve(f);
    const Field coarse = solve_tridiagonal(coarse_rhs(f, u_fine));
    worst = std::max(worst, norm_inf(subtract(coarse, restrict_to_coarse(u_fine))));
  }
  r.detail = "max inf-norm |u_H - R u_h| = " + sci(worst) + " (tol 1e-12)";
  finish(r, start, worst <= 1e-12);
  return r;
}

CriterionResult kaczmarz_constraint(std::uint64_t seed) {
  CriterionResult r{2, "Kaczmarz constraint", false, "", 0.0, 1.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int level = 3; level <= 10; ++level) {
    Field u = random_field(level, rng);
    const Field target = random_field(level - 1, rng);
    for (Sweep dir : {Sweep::Forward, Sweep::Backward}) {
      Field v = u;
      kaczmarz_pass(v, target, {0, static_cast<int>(v.size())}, dir);
      worst = std::max(worst, norm_inf(subtract(restrict_to_coarse(v), target)));
    }
  }
  r.detail = "max inf-norm |R u - u_H| over N=8..1024 = " + sci(worst) + " (tol 1e-13)";
  finish(r, start, worst <= 1e-13);
  return r;
}

CriterionResult patch_order_invariance(std::uint64_t seed) {
  CriterionResult r{3, "patch-order invariance", false, "", 0.0, 5.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(seed + 1);
  constexpr int level = 8;
  double worst = 0.0;
  int trials = 0;
  for (HaloMode mode : {HaloMode::Halo2, HaloMode::Halo4}) {
    const Field u = random_field(level, rng);
    const Field f = random_field(level, rng);
    const Field coarse = random_field(level - 1, rng);
    auto patches = partition(level_size(level), mode);
    for (bool with_cr : {false, true}) {
      for (int sweeps : {1, 2}) {
        SmootherConfig cfg{sweeps, mode, 1.0};
        std::optional<CrContext> cr;
        if (with_cr) cr.emplace(CrContext{coarse});
        const Field baseline = smooth_patches(u, f, cfg, cr, partition(level_size(level), mode), Execution::Serial);
        for (int t = 0; t < 13; ++t) {
          std::shuffle(patches.begin(), patches.end(), rng);
          const Field permuted = smooth_patches(u, f, cfg, cr, patches, Execution::Parallel);
          worst = std::max(worst, norm_inf(subtract(permuted, baseline)));
          ++trials;
        }
      }
    }
  }
  // 8 settings x 13 shuffles = 104 trials.
  r.detail = std::to_string(trials) + " shuffles at N=256, max deviation " + sci(worst) + " (tol 1e-15)";
  finish(r, start, trials >= 100 && worst <= 1e-15);
  return r;
}

CriterionResult discretization_baseline(std::map<int, double>& direct_error) {
  CriterionResult r{4, "discretization baseline", false, "", 0.0, 5.0};
  const auto start = Clock::now();
  bool ok = true;
  double lo = INFINITY, hi = -INFINITY;
  for (int level = 4; level <= 12; ++level) {
    const auto p = ManufacturedProblem::with_default_modes(level);
    const Field u = direct_fine_solve(manufactured_rhs(level, p.nmodes));
    direct_error[level] = rel_l2_error(u, exact_solution(level, p.nmodes));
    if (level > 4) {
      const double ratio = direct_error[level - 1] / direct_error[level];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ok = ok && ratio >= 3.6 && ratio <= 4.4;
    }
  }
  r.detail = "error ratio per doubling in [" + sci(lo) + ", " + sci(hi) + "] (need [3.6, 4.4])";
  finish(r, start, ok);
  return r;
}

CriterionResult one_fmg_accuracy(const std::vector<StudyRecord>& records, const std::map<int, double>& direct_error,
                                 double study_seconds) {
  CriterionResult r{5, "one-FMG truncation accuracy (halo 4, global)", false, "", 0.0, 60.0};
  const auto start = Clock::now();
  bool ok = true;
  double worst_ratio = 0.0, worst_order = INFINITY;
  std::string failures;
  for (HaloMode halo : {HaloMode::Halo4, HaloMode::Global}) {
    for (int sweeps : {1, 2}) {
      for (int sr = 0; sr <= 3; ++sr) {
        const auto curve = select_config(records, {sr, halo, sweeps});
        if (curve.size() < 3) {
          ok = false;
          failures += " missing curve;";
          continue;
        }
        for (const StudyRecord& rec : curve) {
          const double ratio = rec.rel_error / direct_error.at(static_cast<int>(std::log2(rec.n)));
          worst_ratio = std::max(worst_ratio, ratio);
          if (ratio > 2.0) {
            ok = false;
            failures += " halo=" + to_string(halo) + ",ns=" + std::to_string(sweeps) + ",sr=" + std::to_string(sr) +
                        ",N=" + std::to_string(rec.n) + " ratio " + sci(ratio) + ";";
          }
        }
        const double order = observed_order(curve);
        worst_order = std::min(worst_order, order);
        if (order < 1.9) {
          ok = false;
          failures += " halo=" + to_string(halo) + ",ns=" + std::to_string(sweeps) + ",sr=" + std::to_string(sr) +
                      " order " + sci(order) + ";";
        }
      }
    }
  }
  r.detail = "worst error/direct ratio " + sci(worst_ratio) + " (<= 2), worst order " + sci(worst_order) + " (>= 1.9)" +
             (failures.empty() ? "" : "; failures:" + failures);
  finish(r, start, ok);
  r.seconds += study_seconds;
  r.passed = ok && r.seconds < r.budget_seconds;
  return r;
}

CriterionResult two_halo_degradation(const std::vector<StudyRecord>& records) {
  CriterionResult r{6, "two-halo degradation", false, "", 0.0, 60.0};
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  detail << "orders (halo 2, ns 1):";
  for (int sr = 0; sr <= 3; ++sr) {
    const auto curve = select_config(records, {sr, HaloMode::Halo2, 1});
    if (curve.size() < 3) {
      ok = false;
      continue;
    }
    const double order = observed_order(curve);
    detail << " sr" << sr << "=" << std::fixed << std::setprecision(3) << order;
    if (sr <= 2 && order < 1.9) ok = false;
  }
  const auto base = select_config(records, {0, HaloMode::Halo2, 1});
  const auto deep = select_config(records, {3, HaloMode::Halo2, 1});
  double e0 = 0.0, e3 = 0.0;
  for (const auto& rec : base) {
    if (rec.n == 4096) e0 = rec.rel_error;
  }
  for (const auto& rec : deep) {
    if (rec.n == 4096) e3 = rec.rel_error;
  }
  detail << "; N=4096 error sr3=" << sci(e3) << " vs sr0=" << sci(e0);
  ok = ok && e0 > 0.0 && e3 > e0;
  r.detail = detail.str();
  finish(r, start, ok);
  return r;
}

CriterionResult memory_model_check() {
  CriterionResult r{7, "memory model", false, "", 0.0, 1.0};
  const auto start = Clock::now();
  SolverConfig cfg;
  cfg.hierarchy = Hierarchy(2, 12);
  cfg.smoother.halo = HaloMode::Halo4;
  cfg.sr_levels = 0;
  const MemoryModel full = memory_report(cfg);
  cfg.sr_levels = 3;
  const MemoryModel sr = memory_report(cfg);
  const double ratio = static_cast<double>(full.total_modeled) / static_cast<double>(sr.total_modeled);
  r.detail = "n_sr=0 total " + std::to_string(full.total_modeled) + " (expect 8188), n_sr=3 total " +
             std::to_string(sr.total_modeled) + ", ratio " + sci(ratio) + " (>= 7)";
  finish(r, start, full.total_modeled == 8188 && ratio >= 7.0);
  return r;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + needle.size())) ++n;
  return n;
}

CriterionResult figure_structure(const std::vector<StudyRecord>& records, const std::filesystem::path& dir,
                                 double study_seconds) {
  CriterionResult r{8, "figure structure", false, "", 0.0, 90.0};
  const auto start = Clock::now();
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / "study.csv";
  const auto svg_path = dir / "study.svg";
  emit_csv(records, csv_path);
  emit_plot(records, svg_path);

  std::ifstream csv_in(csv_path, std::ios::binary);
  const auto parsed = read_csv(csv_in);
  std::ifstream svg_in(svg_path, std::ios::binary);
  const std::string svg((std::istreambuf_iterator<char>(svg_in)), std::istreambuf_iterator<char>());

  const std::string chart_tag = "<g class=\"chart\"";
  std::vector<std::string> charts;
  for (auto pos = svg.find(chart_tag); pos != std::string::npos;) {
    const auto next = svg.find(chart_tag, pos + 1);
    charts.push_back(svg.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    pos = next;
  }
  bool ok = parsed.size() == records.size() && charts.size() == 6;
  for (const std::string& c : charts) {
    ok = ok && count(c, "<g class=\"curve\"") == 4 && count(c, "class=\"reference\"") == 1;
    for (const char* label : {"FMG-SR 1-grid", "FMG-SR 2-grids", "FMG-SR 3-grids", "quadratic"}) {
      ok = ok && count(c, label) == 1;
    }
  }
  r.detail = std::to_string(parsed.size()) + " CSV rows, " + std::to_string(charts.size()) +
             " charts with 4 SR curves + quadratic each; written to " + dir.string();
  finish(r, start, ok);
  r.seconds += study_seconds;
  r.passed = ok && r.seconds < r.budget_seconds;
  return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  results.push_back(tau_exactness());
  results.push_back(kaczmarz_constraint(options.seed));
  results.push_back(patch_order_invariance(options.seed));
  std::map<int, double> direct_error;
  results.push_back(discretization_baseline(direct_error));

  const auto study_start = Clock::now();
  const auto grid = full_study_grid();
  const auto records = run_study(StudyOptions{}, grid);
  const double study_seconds = seconds_since(study_start);

  results.push_back(one_fmg_accuracy(records, direct_error, study_seconds));
  results.push_back(two_halo_degradation(records));
  results.push_back(memory_model_check());
  results.push_back(figure_structure(records, options.output_dir, study_seconds));
  return results;
}

void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << '#' << r.id << ' ' << r.title << " -- " << r.detail << " ("
        << std::fixed << std::setprecision(3) << r.seconds << " s, budget " << std::setprecision(0)
        << r.budget_seconds << " s)\n";
    out.unsetf(std::ios::floatfield);
  }
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

} // namespace fmgsr
