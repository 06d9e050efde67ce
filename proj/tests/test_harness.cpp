#include "fmgsr/memory_model.hpp"
#include "fmgsr/report.hpp"
#include "fmgsr/study.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <tuple>

using namespace fmgsr;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

StudyRecord record(int n, double err) {
  StudyRecord r;
  r.n = n;
  r.rel_error = err;
  return r;
}

} // namespace

TEST_CASE("study grid") {
  const auto grid = full_study_grid();
  CHECK(grid.size() == 24);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) CHECK_FALSE(grid[i] == grid[j]);
  }
}

TEST_CASE("quadratic reference") {
  CHECK(quadratic_reference(4) == doctest::Approx(1.0 / 256.0));
  for (int k = 4; k < 12; ++k) CHECK(quadratic_reference(k) / quadratic_reference(k + 1) == doctest::Approx(4.0));
}

TEST_CASE("single configuration and size") {
  StudyOptions opts;
  opts.m_min = opts.m_max = 6;
  const StudyConfig c{1, HaloMode::Halo4, 1};
  const auto records = run_study(opts, std::span(&c, 1));
  REQUIRE(records.size() == 1);
  CHECK(records[0].n == 64);
  CHECK(records[0].config() == c);
  CHECK(records[0].rel_error > 0.0);
  CHECK(records[0].rel_error < 1e-2);
  CHECK(records[0].quad_ref == doctest::Approx(quadratic_reference(6)));
  CHECK(records[0].runtime_ms >= 0.0);
}

TEST_CASE("SR depth that fits no size is rejected") {
  StudyOptions opts;
  opts.m_min = opts.m_max = 4;
  const StudyConfig c{3, HaloMode::Halo2, 1};
  CHECK_THROWS_AS(run_study(opts, std::span(&c, 1)), std::invalid_argument);
  opts.m_max = 6;
  const auto records = run_study(opts, std::span(&c, 1));
  REQUIRE(records.size() == 1);
  CHECK(records[0].n == 64);
}

TEST_CASE("study output is deterministic and ordered") {
  StudyOptions opts;
  opts.m_min = 4;
  opts.m_max = 7;
  const auto grid = full_study_grid();
  const auto a = run_study(opts, grid);
  opts.parallel = false;
  const auto b = run_study(opts, grid);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 96 - 6 - 12);  // sr=2 drops m=4, sr=3 drops m=4,5
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].config() == b[i].config());
    CHECK(a[i].rel_error == b[i].rel_error);
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto key = [](const StudyRecord& r) {
      return std::tuple(static_cast<int>(r.halo), r.sweeps, r.sr_levels, r.n);
    };
    CHECK(key(a[i - 1]) < key(a[i]));
  }
}

TEST_CASE("observed order") {
  const std::vector<StudyRecord> quad = {record(16, 1e-2), record(32, 2.5e-3), record(64, 6.25e-4)};
  CHECK(observed_order(quad) == doctest::Approx(2.0));
  const std::vector<StudyRecord> flat = {record(16, 1e-3), record(32, 1e-3), record(64, 1e-3)};
  CHECK(observed_order(flat) == doctest::Approx(0.0));
  CHECK_THROWS_AS(observed_order(std::span(quad).first(2)), std::invalid_argument);
}

TEST_CASE("select_config") {
  std::vector<StudyRecord> rs = {record(64, 1), record(16, 2), record(32, 3)};
  rs[0].sr_levels = 1;
  const auto curve = select_config(rs, StudyConfig{0, HaloMode::Halo4, 1});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].n == 16);
  CHECK(curve[1].n == 32);
}

TEST_CASE("CSV") {
  std::ostringstream empty;
  write_csv(empty, {});
  CHECK(empty.str() == std::string(kCsvHeader) + "\n");

  StudyRecord r{256, 2, HaloMode::Global, 2, 1.0 / 3.0, quadratic_reference(8), 0.125};
  std::ostringstream one;
  write_csv(one, std::span(&r, 1));
  const auto ls = lines(one.str());
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == kCsvHeader);
  CHECK(ls[1].rfind("256,2,global,2,", 0) == 0);

  std::istringstream in(one.str());
  const auto back = read_csv(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].n == r.n);
  CHECK(back[0].config() == r.config());
  CHECK(back[0].rel_error == r.rel_error);
  CHECK(back[0].quad_ref == r.quad_ref);
  CHECK(back[0].runtime_ms == r.runtime_ms);

  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV write to an unwritable path fails") {
  const auto path = std::filesystem::temp_directory_path() / "fmgsr_no_such_dir" / "x" / "out.csv";
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "fmgsr_no_such_dir");
  CHECK_THROWS_AS(emit_csv({}, path), std::runtime_error);
}

TEST_CASE("SVG for a single curve") {
  CHECK_THROWS_AS(render_svg({}), std::invalid_argument);
  std::vector<StudyRecord> rs = {record(16, 1e-2), record(32, 3e-3), record(64, 8e-4)};
  for (auto& r : rs) r.quad_ref = quadratic_reference(static_cast<int>(std::log2(r.n)));
  const std::string svg = render_svg(rs);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, "class=\"chart\"") == 1);
  CHECK(count(svg, "class=\"curve\"") == 1);
  CHECK(count(svg, "class=\"marker\"") == 3);
  CHECK(count(svg, "class=\"segment\"") == 2);
  CHECK(count(svg, "class=\"reference\"") == 1);
  CHECK(svg.find("quadratic") != std::string::npos);
  CHECK(svg.find("FMG") != std::string::npos);
}

TEST_CASE("SVG for the full grid") {
  StudyOptions opts;
  opts.m_min = 4;
  opts.m_max = 7;
  const auto records = run_study(opts, full_study_grid());
  const std::string svg = render_svg(records);
  CHECK(count(svg, "class=\"chart\"") == 6);
  CHECK(count(svg, "class=\"curve\"") == 24);
  CHECK(count(svg, "class=\"reference\"") == 6);
  CHECK(svg.find("w/ 4 halo &amp; V(1,1) cycles") != std::string::npos);
  CHECK(count(svg, "class=\"marker\"") == records.size());
}

TEST_CASE("curve labels") {
  CHECK(curve_label(0) == "FMG");
  CHECK(curve_label(1) == "FMG-SR 1-grid");
  CHECK(curve_label(3) == "FMG-SR 3-grids");
}

TEST_CASE("memory model") {
  SolverConfig cfg;
  cfg.hierarchy = Hierarchy(2, 12);
  cfg.smoother.halo = HaloMode::Halo4;
  const auto plain = memory_report(cfg);
  CHECK(plain.cells_stored_full == 8188);
  CHECK(plain.sr_working_set == 0);
  CHECK(plain.total_modeled == 8188);

  cfg.sr_levels = 3;
  const auto sr = memory_report(cfg);
  CHECK(sr.cells_stored_full == 1020);
  CHECK(sr.sr_working_set == 30);
  CHECK(sr.total_modeled == 1050);
  CHECK(static_cast<double>(plain.total_modeled) / static_cast<double>(sr.total_modeled) ==
        doctest::Approx(7.798).epsilon(1e-3));

  cfg.smoother.halo = HaloMode::Global;
  CHECK(memory_report(cfg).total_modeled == 8188);

  for (int m0 = 2; m0 <= 5; ++m0) {
    for (int m = m0 + 1; m <= 14; ++m) {
      SolverConfig c;
      c.hierarchy = Hierarchy(m0, m);
      CHECK(memory_report(c).total_modeled == (std::int64_t{1} << (m + 1)) - (std::int64_t{1} << m0));
    }
  }
}

TEST_CASE("patch window size") {
  CHECK(patch_window_cells(1024, HaloMode::Halo2) == 6);
  CHECK(patch_window_cells(1024, HaloMode::Halo4) == 10);
  CHECK(patch_window_cells(8, HaloMode::Halo4) == 8);
  CHECK(patch_window_cells(1024, HaloMode::Global) == 1024);
}
