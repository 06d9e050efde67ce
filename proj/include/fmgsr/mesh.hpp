#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fmgsr {

/// Number of cells on level `level` (2^level).
inline int level_size(int level) { return 1 << level; }

/// Mesh spacing on level `level` (2^-level, exact in binary).
inline double level_spacing(int level) { return 1.0 / static_cast<double>(level_size(level)); }

/// Ladder of cell-centered grids on [0,1], refinement ratio 2.
///
/// Level k carries 2^k cells. The coarsest level is solved directly, so the
/// FMG prolongation (which needs four coarse cells) forces coarsest >= 2 in
/// practice; the hierarchy itself only requires 1 <= coarsest < finest.
class Hierarchy {
public:
  static constexpr int refinement_ratio = 2;

  Hierarchy(int coarsest, int finest);

  int coarsest() const { return coarsest_; }
  int finest() const { return finest_; }
  int num_levels() const { return finest_ - coarsest_ + 1; }
  bool contains(int level) const { return level >= coarsest_ && level <= finest_; }

  int size(int level) const;
  double spacing(int level) const;

  /// Cell counts from coarsest to finest.
  std::vector<int> sizes() const;

private:
  int coarsest_;
  int finest_;
};

Hierarchy build_hierarchy(int coarsest, int finest);

/// Cell-centered values on one level; cell i sits at x = (i + 1/2) h.
class Field {
public:
  Field() = default;
  explicit Field(int level);
  Field(int level, std::vector<double> values);

  int level() const { return level_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return level_spacing(level_); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }

  bool all_finite() const;

  friend bool operator==(const Field&, const Field&) = default;

private:
  int level_ = 0;
  std::vector<double> values_;
};

/// Cell-center coordinate of cell i (0-based) on `level`.
double cell_center(int level, std::size_t i);

/// Half-open 0-based index range [begin, end).
struct IndexRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool contains(int i) const { return i >= begin && i < end; }
  bool contains(const IndexRange& other) const {
    return other.begin >= begin && other.end <= end;
  }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Owned cells of a smoother block plus the halo-extended window it solves on.
struct Patch {
  IndexRange owned;
  IndexRange extended;
  friend bool operator==(const Patch&, const Patch&) = default;
};

enum class HaloMode { Halo2, Halo4, Global };

/// Halo cells on each side of an owned block; 0 for Global.
int halo_width(HaloMode mode);
std::string to_string(HaloMode mode);
/// Accepts "2", "4" or "global"; throws std::invalid_argument otherwise.
HaloMode parse_halo_mode(std::string_view text);

/// Cells owned by one patch in the patch modes.
inline constexpr int kOwnedPatchWidth = 2;

/// Tiles [0, n) into owned pairs and extends each by the halo, clamped to
/// the domain. Global yields one patch covering everything.
std::vector<Patch> partition(int n, HaloMode mode);

} // namespace fmgsr
