// fmgsr: convergence studies for the FMG-FAS solver with segmental refinement.
//
// Exit codes: 0 success, 1 configuration error, 2 acceptance failure
// (--seed-check).

#include "fmgsr/acceptance.hpp"
#include "fmgsr/cycles.hpp"
#include "fmgsr/memory_model.hpp"
#include "fmgsr/report.hpp"
#include "fmgsr/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kConfigError = 1;
constexpr int kAcceptanceFailure = 2;

void print_orders(const std::vector<fmgsr::StudyRecord>& records, const std::vector<fmgsr::StudyConfig>& configs) {
  std::cout << "\nobserved order (least-squares slope):\n";
  for (const auto& c : configs) {
    const auto curve = fmgsr::select_config(records, c);
    std::cout << "  halo=" << std::setw(6) << fmgsr::to_string(c.halo) << " ns=" << c.sweeps << " nsr=" << c.sr_levels
              << "  ";
    if (curve.size() >= 3) {
      std::cout << std::fixed << std::setprecision(3) << fmgsr::observed_order(curve) << '\n';
    } else {
      std::cout << "n/a (fewer than 3 sizes)\n";
    }
    std::cout.unsetf(std::ios::floatfield);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"FMG-FAS with segmental refinement: 1D Poisson convergence studies"};

  fmgsr::StudyOptions study;
  std::vector<int> nsr_values;
  std::vector<std::string> halo_values;
  std::vector<int> ns_values;
  std::string csv_path;
  std::string svg_path;
  bool seed_check = false;
  bool memory = false;
  bool serial = false;
  bool quiet = false;

  app.set_config("--config", "", "Plain 'key = value' file (# comments); flags override it");
  app.add_option("--m-min", study.m_min, "Smallest finest-level exponent")->capture_default_str();
  app.add_option("--m-max", study.m_max, "Largest finest-level exponent")->capture_default_str();
  app.add_option("--m0", study.coarsest, "Coarsest level exponent")->capture_default_str();
  app.add_option("--nsr", nsr_values, "SR depths to run (default 0 1 2 3)")->delimiter(',');
  app.add_option("--halo", halo_values, "Halo modes: 2, 4, global (default all)")->delimiter(',');
  app.add_option("--ns", ns_values, "Inner sweeps per smoothing (default 1 2)")->delimiter(',');
  app.add_option("--nmodes-div", study.nmodes_divisor, "nmodes = N / this")->capture_default_str();
  app.add_option("--csv", csv_path, "Write study records as CSV");
  app.add_option("--svg", svg_path, "Write log-log convergence charts as SVG");
  app.add_flag("--seed-check", seed_check, "Run the acceptance/oracle suite and exit");
  app.add_flag("--memory", memory, "Print the modeled SR memory footprint per configuration");
  app.add_flag("--serial", serial, "Run study cells one after another");
  app.add_flag("-q,--quiet", quiet, "Do not print the record table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (seed_check) {
    const auto results = fmgsr::run_acceptance();
    fmgsr::print_acceptance(std::cout, results);
    return fmgsr::all_passed(results) ? 0 : kAcceptanceFailure;
  }

  std::vector<fmgsr::StudyConfig> configs;
  try {
    if (nsr_values.empty()) nsr_values = {0, 1, 2, 3};
    if (ns_values.empty()) ns_values = {1, 2};
    std::vector<fmgsr::HaloMode> halos;
    if (halo_values.empty()) {
      halos = {fmgsr::HaloMode::Halo2, fmgsr::HaloMode::Halo4, fmgsr::HaloMode::Global};
    } else {
      for (const auto& h : halo_values) halos.push_back(fmgsr::parse_halo_mode(h));
    }
    for (auto halo : halos) {
      for (int ns : ns_values) {
        for (int sr : nsr_values) configs.push_back({sr, halo, ns});
      }
    }
    study.parallel = !serial;

    if (memory) {
      std::cout << "modeled storage at m0=" << study.coarsest << ", m=" << study.m_max << " (cells):\n";
      for (const auto& c : configs) {
        fmgsr::SolverConfig cfg;
        cfg.hierarchy = fmgsr::Hierarchy(study.coarsest, study.m_max);
        cfg.sr_levels = c.sr_levels;
        cfg.smoother.halo = c.halo;
        cfg.smoother.sweeps = c.sweeps;
        const auto m = fmgsr::memory_report(cfg);
        std::cout << "  halo=" << std::setw(6) << fmgsr::to_string(c.halo) << " nsr=" << c.sr_levels
                  << "  full=" << m.cells_stored_full << " sr_window=" << m.sr_working_set
                  << " total=" << m.total_modeled << '\n';
      }
    }

    const auto records = fmgsr::run_study(study, configs);
    if (!quiet) {
      fmgsr::write_csv(std::cout, records);
      print_orders(records, configs);
    }
    if (!csv_path.empty()) fmgsr::emit_csv(records, csv_path);
    if (!svg_path.empty()) fmgsr::emit_plot(records, svg_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
