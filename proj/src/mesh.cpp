#include "fmgsr/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmgsr {

Hierarchy::Hierarchy(int coarsest, int finest) : coarsest_(coarsest), finest_(finest) {
  if (coarsest < 1) {
    throw std::invalid_argument("Hierarchy: coarsest exponent must be >= 1");
  }
  if (finest <= coarsest) {
    throw std::invalid_argument("Hierarchy: finest exponent must exceed coarsest");
  }
  if (finest > 30) {
    throw std::invalid_argument("Hierarchy: finest exponent too large");
  }
}

int Hierarchy::size(int level) const {
  if (!contains(level)) throw std::out_of_range("Hierarchy: level outside ladder");
  return level_size(level);
}

double Hierarchy::spacing(int level) const {
  if (!contains(level)) throw std::out_of_range("Hierarchy: level outside ladder");
  return level_spacing(level);
}

std::vector<int> Hierarchy::sizes() const {
  std::vector<int> out;
  for (int k = coarsest_; k <= finest_; ++k) out.push_back(level_size(k));
  return out;
}

Hierarchy build_hierarchy(int coarsest, int finest) { return Hierarchy(coarsest, finest); }

Field::Field(int level) : level_(level) {
  if (level < 0 || level > 30) throw std::invalid_argument("Field: bad level");
  values_.assign(static_cast<std::size_t>(level_size(level)), 0.0);
}

Field::Field(int level, std::vector<double> values) : level_(level), values_(std::move(values)) {
  if (level < 0 || level > 30) throw std::invalid_argument("Field: bad level");
  if (values_.size() != static_cast<std::size_t>(level_size(level))) {
    throw std::invalid_argument("Field: length must equal 2^level");
  }
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double cell_center(int level, std::size_t i) {
  const double h = level_spacing(level);
  return h / 2 + h * static_cast<double>(i);
}

int halo_width(HaloMode mode) {
  switch (mode) {
  case HaloMode::Halo2: return 2;
  case HaloMode::Halo4: return 4;
  case HaloMode::Global: return 0;
  }
  return 0;
}

std::string to_string(HaloMode mode) {
  switch (mode) {
  case HaloMode::Halo2: return "2";
  case HaloMode::Halo4: return "4";
  case HaloMode::Global: return "global";
  }
  return "?";
}

HaloMode parse_halo_mode(std::string_view text) {
  if (text == "2") return HaloMode::Halo2;
  if (text == "4") return HaloMode::Halo4;
  if (text == "global" || text == "Global") return HaloMode::Global;
  throw std::invalid_argument("unknown halo mode '" + std::string(text) + "' (expected 2, 4 or global)");
}

std::vector<Patch> partition(int n, HaloMode mode) {
  if (n < 1) throw std::invalid_argument("partition: empty level");
  if (mode == HaloMode::Global) {
    return {Patch{{0, n}, {0, n}}};
  }
  if (n % kOwnedPatchWidth != 0) {
    throw std::invalid_argument("partition: patch modes need an even number of cells");
  }
  if (n < 4) throw std::invalid_argument("partition: patch modes need at least 4 cells");

  const int halo = halo_width(mode);
  std::vector<Patch> patches;
  patches.reserve(static_cast<std::size_t>(n / kOwnedPatchWidth));
  for (int start = 0; start < n; start += kOwnedPatchWidth) {
    const IndexRange owned{start, start + kOwnedPatchWidth};
    const IndexRange extended{std::max(0, owned.begin - halo), std::min(n, owned.end + halo)};
    patches.push_back({owned, extended});
  }
  return patches;
}

} // namespace fmgsr
