#include "fmgsr/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fmgsr {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, std::span<const StudyRecord> records) {
  out << kCsvHeader << '\n';
  for (const StudyRecord& r : records) {
    out << r.n << ',' << r.sr_levels << ',' << to_string(r.halo) << ',' << r.sweeps << ','
        << format_double(r.rel_error) << ',' << format_double(r.quad_ref) << ','
        << format_double(r.runtime_ms) << '\n';
  }
}

namespace {

template <typename T>
T parse_number(std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::runtime_error("read_csv: bad number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

} // namespace

std::vector<StudyRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("read_csv: missing header");
  std::vector<StudyRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line);
    if (cols.size() != 7) throw std::runtime_error("read_csv: expected 7 columns");
    StudyRecord r;
    r.n = parse_number<int>(cols[0]);
    r.sr_levels = parse_number<int>(cols[1]);
    r.halo = parse_halo_mode(cols[2]);
    r.sweeps = parse_number<int>(cols[3]);
    r.rel_error = parse_number<double>(cols[4]);
    r.quad_ref = parse_number<double>(cols[5]);
    r.runtime_ms = parse_number<double>(cols[6]);
    out.push_back(r);
  }
  return out;
}

void emit_csv(std::span<const StudyRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, records);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string curve_label(int sr_levels) {
  if (sr_levels == 0) return "FMG";
  return "FMG-SR " + std::to_string(sr_levels) + (sr_levels == 1 ? "-grid" : "-grids");
}

namespace {

constexpr double kChartWidth = 520;
constexpr double kChartHeight = 400;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

struct CurveStyle {
  const char* color;
  const char* dash;
};

// FMG and SR 1-3 curves, then the reference line.
constexpr std::array<CurveStyle, 4> kStyles{{{"#000000", "8,4"}, {"#0000ff", "8,3,2,3"}, {"#ff0000", "2,3"}, {"#008000", ""}}};
constexpr const char* kReferenceColor = "#ff00ff";

std::string num(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
  return std::string(buf.data(), res.ptr);
}

std::string title_for(HaloMode halo, int sweeps) {
  const std::string cycle = "V(" + std::to_string(sweeps) + "," + std::to_string(sweeps) + ") cycles";
  if (halo == HaloMode::Global) return "Error of FMG vs. FMG-SR, w/ global smoother &amp; " + cycle;
  return "Error of FMG vs. FMG-SR, w/ " + to_string(halo) + " halo &amp; " + cycle;
}

std::string marker(int style, double x, double y, const char* color) {
  std::ostringstream m;
  const double s = 4.5;
  m << "<path class=\"marker\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
  switch (style) {
  case 0:  // diamond
    m << "M" << num(x) << "," << num(y - s) << " L" << num(x + s) << "," << num(y) << " L" << num(x) << ","
      << num(y + s) << " L" << num(x - s) << "," << num(y) << " Z";
    break;
  case 1:  // x
    m << "M" << num(x - s) << "," << num(y - s) << " L" << num(x + s) << "," << num(y + s) << " M" << num(x - s)
      << "," << num(y + s) << " L" << num(x + s) << "," << num(y - s);
    break;
  case 2:  // circle from two arcs
    m << "M" << num(x - s) << "," << num(y) << " A" << s << "," << s << " 0 1,0 " << num(x + s) << "," << num(y)
      << " A" << s << "," << s << " 0 1,0 " << num(x - s) << "," << num(y);
    break;
  default:  // star
    m << "M" << num(x - s) << "," << num(y) << " L" << num(x + s) << "," << num(y) << " M" << num(x) << ","
      << num(y - s) << " L" << num(x) << "," << num(y + s) << " M" << num(x - s * 0.7) << "," << num(y - s * 0.7)
      << " L" << num(x + s * 0.7) << "," << num(y + s * 0.7) << " M" << num(x - s * 0.7) << ","
      << num(y + s * 0.7) << " L" << num(x + s * 0.7) << "," << num(y - s * 0.7);
    break;
  }
  m << "\"/>\n";
  return m.str();
}

void render_chart(std::ostringstream& svg, std::span<const StudyRecord> records, HaloMode halo, int sweeps,
                  double ox, double oy) {
  std::map<int, std::vector<StudyRecord>> curves;
  std::set<int> ns;
  for (const StudyRecord& r : records) {
    if (r.halo != halo || r.sweeps != sweeps) continue;
    curves[r.sr_levels].push_back(r);
    ns.insert(r.n);
  }
  for (auto& [sr, pts] : curves) {
    std::sort(pts.begin(), pts.end(), [](const StudyRecord& a, const StudyRecord& b) { return a.n < b.n; });
  }

  std::map<int, double> quad;
  for (const auto& [sr, pts] : curves) {
    for (const StudyRecord& r : pts) quad[r.n] = r.quad_ref;
  }

  double ymin = INFINITY, ymax = -INFINITY;
  for (const auto& [sr, pts] : curves) {
    for (const StudyRecord& r : pts) {
      if (r.rel_error > 0) {
        ymin = std::min(ymin, r.rel_error);
        ymax = std::max(ymax, r.rel_error);
      }
    }
  }
  for (const auto& [n, q] : quad) {
    ymin = std::min(ymin, q);
    ymax = std::max(ymax, q);
  }
  const double ylo = std::floor(std::log10(ymin));
  double yhi = std::ceil(std::log10(ymax));
  if (yhi <= ylo) yhi = ylo + 1;
  const double xlo = std::log2(static_cast<double>(*ns.begin()));
  double xhi = std::log2(static_cast<double>(*ns.rbegin()));
  if (xhi <= xlo) xhi = xlo + 1;

  const double pw = kChartWidth - kLeft - kRight;
  const double ph = kChartHeight - kTop - kBottom;
  auto px = [&](double n) { return kLeft + (std::log2(n) - xlo) / (xhi - xlo) * pw; };
  auto py = [&](double e) { return kTop + (yhi - std::log10(e)) / (yhi - ylo) * ph; };

  svg << "<g class=\"chart\" data-halo=\"" << to_string(halo) << "\" data-ns=\"" << sweeps
      << "\" transform=\"translate(" << num(ox) << "," << num(oy) << ")\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kChartWidth << "\" height=\"" << kChartHeight
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<text class=\"title\" x=\"" << num(kChartWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << title_for(halo, sweeps) << "</text>\n";

  // Grid and ticks.
  for (int n : ns) {
    const double x = px(n);
    svg << "<line class=\"grid\" x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kTop + ph) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text class=\"tick\" x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << n << "</text>\n";
  }
  for (int d = static_cast<int>(ylo); d <= static_cast<int>(yhi); ++d) {
    const double y = py(std::pow(10.0, d));
    svg << "<line class=\"grid\" x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw)
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text class=\"tick\" x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"10\">1e" << d << "</text>\n";
  }
  svg << "<rect class=\"frame\" x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  svg << "<text class=\"xlabel\" x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kChartHeight - 12)
      << "\" text-anchor=\"middle\" font-size=\"13\">N cells</text>\n";
  svg << "<text class=\"ylabel\" transform=\"translate(16," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">|u - ~u|_2/|u|_2</text>\n";

  for (const auto& [sr, pts] : curves) {
    const CurveStyle& style = kStyles[static_cast<std::size_t>(std::min(sr, 3))];
    svg << "<g class=\"curve\" data-sr=\"" << sr << "\">\n";
    for (std::size_t i = 1; i < pts.size(); ++i) {
      svg << "<line class=\"segment\" x1=\"" << num(px(pts[i - 1].n)) << "\" y1=\"" << num(py(pts[i - 1].rel_error))
          << "\" x2=\"" << num(px(pts[i].n)) << "\" y2=\"" << num(py(pts[i].rel_error)) << "\" stroke=\""
          << style.color << "\" stroke-width=\"1.5\"";
      if (*style.dash) svg << " stroke-dasharray=\"" << style.dash << "\"";
      svg << "/>\n";
    }
    for (const StudyRecord& r : pts) svg << marker(std::min(sr, 3), px(r.n), py(r.rel_error), style.color);
    svg << "</g>\n";
  }

  svg << "<polyline class=\"reference\" fill=\"none\" stroke=\"" << kReferenceColor << "\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const auto& [n, q] : quad) {
    svg << (first ? "" : " ") << num(px(n)) << "," << num(py(q));
    first = false;
  }
  svg << "\"/>\n";

  // Legend, upper right.
  svg << "<g class=\"legend\">\n";
  double ly = kTop + 14;
  const double lx = kLeft + pw - 130;
  for (const auto& [sr, pts] : curves) {
    const CurveStyle& style = kStyles[static_cast<std::size_t>(std::min(sr, 3))];
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 24) << "\" y2=\""
        << num(ly - 4) << "\" stroke=\"" << style.color << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text class=\"legend-entry\" x=\"" << num(lx + 30) << "\" y=\"" << num(ly) << "\" font-size=\"11\">"
        << curve_label(sr) << "</text>\n";
    ly += 15;
  }
  svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 24) << "\" y2=\""
      << num(ly - 4) << "\" stroke=\"" << kReferenceColor << "\" stroke-width=\"1.5\"/>\n";
  svg << "<text class=\"legend-entry\" x=\"" << num(lx + 30) << "\" y=\"" << num(ly)
      << "\" font-size=\"11\">quadratic</text>\n";
  svg << "</g>\n</g>\n";
}

} // namespace

std::string render_svg(std::span<const StudyRecord> records) {
  if (records.empty()) throw std::invalid_argument("render_svg: no records to plot");

  std::set<std::pair<int, int>> panels;  // (halo, sweeps)
  std::set<int> sweep_values;
  for (const StudyRecord& r : records) {
    panels.insert({static_cast<int>(r.halo), r.sweeps});
    sweep_values.insert(r.sweeps);
  }
  std::set<int> halos;
  for (const auto& [h, s] : panels) halos.insert(h);

  // Rows are halo modes, columns are sweep counts.
  std::map<int, int> row_of, col_of;
  for (int h : halos) row_of[h] = static_cast<int>(row_of.size());
  for (int s : sweep_values) col_of[s] = static_cast<int>(col_of.size());

  const double width = kChartWidth * static_cast<double>(col_of.size());
  const double height = kChartHeight * static_cast<double>(row_of.size());
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height)
      << "\" font-family=\"sans-serif\">\n";
  for (const auto& [h, s] : panels) {
    render_chart(svg, records, static_cast<HaloMode>(h), s, kChartWidth * col_of[s], kChartHeight * row_of[h]);
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(std::span<const StudyRecord> records, const std::filesystem::path& path) {
  const std::string text = render_svg(records);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

} // namespace fmgsr
