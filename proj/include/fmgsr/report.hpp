#pragma once

#include "fmgsr/study.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fmgsr {

inline constexpr const char* kCsvHeader = "n,n_sr,halo,ns,rel_error,quad_ref,runtime_ms";

/// Shortest round-trippable decimal form, locale independent.
std::string format_double(double v);

void write_csv(std::ostream& out, std::span<const StudyRecord> records);
std::vector<StudyRecord> read_csv(std::istream& in);

/// Throws std::runtime_error if the file cannot be written.
void emit_csv(std::span<const StudyRecord> records, const std::filesystem::path& path);

/// Log-log convergence charts, one per (halo, sweeps) pair present in
/// `records`, each with one curve per SR depth and the quadratic reference.
/// Throws std::invalid_argument on an empty record list.
std::string render_svg(std::span<const StudyRecord> records);
void emit_plot(std::span<const StudyRecord> records, const std::filesystem::path& path);

/// Legend label for a curve ("FMG", "FMG-SR 1-grid", "FMG-SR 2-grids", ...).
std::string curve_label(int sr_levels);

} // namespace fmgsr
