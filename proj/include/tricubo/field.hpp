#pragma once

// Per-cell scalar data, thresholding and the embedding of binary data
// into the cubic lattice.
//
// A CubicField is the set of lattice points occupied by the active cells
// of a thresholded field. It is kept sparse: at scale, well under 1% of
// the bounding box is occupied, so a dense (radius+1)^3 array wastes
// almost all of its memory. The sparse set is an open-addressing hash
// table over packed coordinates; a dense array over the bounding box can
// still be materialized for the dense labeling engine.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tricubo/cubulation.hpp"
#include "tricubo/errors.hpp"
#include "tricubo/grid.hpp"

namespace tricubo {

class Field2D {
public:
  explicit Field2D(std::vector<double> values) : values_(std::move(values)) {}

  std::int64_t n_cells() const { return static_cast<std::int64_t>(values_.size()); }
  double value(CellId c) const { return values_[c]; }
  const std::vector<double>& values() const { return values_; }

private:
  std::vector<double> values_;
};

class MultiLevelField {
public:
  MultiLevelField(std::int32_t nlev, std::int64_t n_cells, std::vector<double> values)
      : nlev_(nlev), n_cells_(n_cells), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != nlev_ * n_cells_)
      throw Error("multi-level field: values length does not match nlev * n_cells");
  }

  std::int32_t nlev() const { return nlev_; }
  std::int64_t n_cells() const { return n_cells_; }
  double value(std::int32_t level, CellId c) const { return values_[level * n_cells_ + c]; }

private:
  std::int32_t nlev_;
  std::int64_t n_cells_;
  std::vector<double> values_;
};

class BinaryField {
public:
  explicit BinaryField(std::vector<std::uint8_t> mask) : mask_(std::move(mask)) {}
  explicit BinaryField(std::int64_t n_cells) : mask_(n_cells, 0) {}

  std::int64_t n_cells() const { return static_cast<std::int64_t>(mask_.size()); }
  bool active(CellId c) const { return mask_[c] != 0; }
  void set(CellId c, bool on) { mask_[c] = on ? 1 : 0; }

  std::int64_t active_count() const {
    std::int64_t n = 0;
    for (auto m : mask_) n += m;
    return n;
  }
  std::vector<CellId> active_cells() const {
    std::vector<CellId> out;
    for (std::size_t c = 0; c < mask_.size(); ++c)
      if (mask_[c]) out.push_back(static_cast<CellId>(c));
    return out;
  }

private:
  std::vector<std::uint8_t> mask_;
};

class MultiLevelBinaryField {
public:
  MultiLevelBinaryField(std::int32_t nlev, std::int64_t n_cells)
      : nlev_(nlev), n_cells_(n_cells), mask_(static_cast<std::size_t>(nlev) * n_cells, 0) {}

  std::int32_t nlev() const { return nlev_; }
  std::int64_t n_cells() const { return n_cells_; }
  bool active(std::int32_t level, CellId c) const { return mask_[level * n_cells_ + c] != 0; }
  void set(std::int32_t level, CellId c, bool on) { mask_[level * n_cells_ + c] = on ? 1 : 0; }

  BinaryField slice(std::int32_t level) const {
    return BinaryField(std::vector<std::uint8_t>(mask_.begin() + level * n_cells_,
                                                 mask_.begin() + (level + 1) * n_cells_));
  }

  std::int64_t active_count() const {
    std::int64_t n = 0;
    for (auto m : mask_) n += m;
    return n;
  }

private:
  std::int32_t nlev_;
  std::int64_t n_cells_;
  std::vector<std::uint8_t> mask_;
};

// Mask is 1 where the value is greater than or equal to the threshold.
inline BinaryField threshold_field(const Field2D& field, double threshold) {
  std::vector<std::uint8_t> mask(field.n_cells());
  for (CellId c = 0; c < field.n_cells(); ++c) {
    const double v = field.value(c);
    if (!std::isfinite(v))
      throw Error("threshold: non-finite value at cell " + std::to_string(c));
    mask[c] = v >= threshold ? 1 : 0;
  }
  return BinaryField(std::move(mask));
}

inline MultiLevelBinaryField threshold_field(const MultiLevelField& field, double threshold) {
  MultiLevelBinaryField out(field.nlev(), field.n_cells());
  for (std::int32_t lev = 0; lev < field.nlev(); ++lev) {
    for (CellId c = 0; c < field.n_cells(); ++c) {
      const double v = field.value(lev, c);
      if (!std::isfinite(v))
        throw Error("threshold: non-finite value at level " + std::to_string(lev) + ", cell " +
                    std::to_string(c));
      if (v >= threshold) out.set(lev, c, true);
    }
  }
  return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Occupied lattice points of a cubulated binary field. Entry order is the
// insertion order (ascending cell id when built by to_cubic). Lookup is a
// linear-probing hash table over coordinates packed into 21 bits per axis.
class CubicField {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  CubicField() = default;

  void reserve(std::size_t n) {
    coords_.reserve(n);
    cells_.reserve(n);
    rehash(n * 2 + 16);
  }

  std::size_t size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }

  const CubeCoord& coord_at(std::size_t idx) const { return coords_[idx]; }
  CellId cell_at(std::size_t idx) const { return cells_[idx]; }

  // Originating cell of an occupied coordinate, or no match.
  std::size_t find(const CubeCoord& coord) const {
    if (slots_.empty() || coord.x < 0 || coord.y < 0 || coord.z < 0) return npos;
    const std::uint64_t key = pack(coord);
    std::size_t slot = detail::splitmix64(key) & mask_;
    while (true) {
      const Slot& s = slots_[slot];
      if (s.idx == empty_slot) return npos;
      if (s.key == key) return s.idx;
      slot = (slot + 1) & mask_;
    }
  }
  bool occupied(const CubeCoord& coord) const { return find(coord) != npos; }

  void insert(const CubeCoord& coord, CellId cell) {
    if (coord.x < 0 || coord.y < 0 || coord.z < 0)
      throw Error("cubic field: negative coordinate " + coord.str());
    if (coord.x >= axis_limit || coord.y >= axis_limit || coord.z >= axis_limit)
      throw Error("cubic field: coordinate " + coord.str() + " exceeds the supported range");
    if ((coords_.size() + 1) * 3 > slots_.size() * 2) rehash(slots_.size() * 2 + 16);
    const std::uint64_t key = pack(coord);
    std::size_t slot = detail::splitmix64(key) & mask_;
    while (slots_[slot].idx != empty_slot) {
      if (slots_[slot].key == key)
        throw Error("cubic field: coordinate " + coord.str() + " occupied by cells " +
                    std::to_string(cells_[slots_[slot].idx]) + " and " + std::to_string(cell));
      slot = (slot + 1) & mask_;
    }
    slots_[slot] = Slot{key, static_cast<std::uint32_t>(coords_.size())};
    if (coords_.empty()) {
      min_ = max_ = coord;
    } else {
      min_.x = std::min(min_.x, coord.x);
      min_.y = std::min(min_.y, coord.y);
      min_.z = std::min(min_.z, coord.z);
      max_.x = std::max(max_.x, coord.x);
      max_.y = std::max(max_.y, coord.y);
      max_.z = std::max(max_.z, coord.z);
    }
    coords_.push_back(coord);
    cells_.push_back(cell);
  }

  // Bounding box; only meaningful when non-empty.
  const CubeCoord& min_corner() const { return min_; }
  const CubeCoord& max_corner() const { return max_; }
  std::array<std::int64_t, 3> extents() const {
    if (empty()) return {0, 0, 0};
    return {std::int64_t{max_.x} - min_.x + 1, std::int64_t{max_.y} - min_.y + 1,
            std::int64_t{max_.z} - min_.z + 1};
  }
  std::int64_t bounding_volume() const {
    const auto e = extents();
    return e[0] * e[1] * e[2];
  }

  // Dense 0/1 occupancy array over the bounding box, x fastest.
  std::vector<std::uint8_t> dense_occupancy() const {
    const auto e = extents();
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(bounding_volume()), 0);
    for (const CubeCoord& c : coords_) {
      const std::int64_t ix = c.x - min_.x, iy = c.y - min_.y, iz = c.z - min_.z;
      occ[(iz * e[1] + iy) * e[0] + ix] = 1;
    }
    return occ;
  }

private:
  static constexpr std::int32_t axis_limit = 1 << 21;
  static constexpr std::uint32_t empty_slot = static_cast<std::uint32_t>(-1);

  struct Slot {
    std::uint64_t key = 0;
    std::uint32_t idx = empty_slot;
  };

  static std::uint64_t pack(const CubeCoord& c) {
    return (static_cast<std::uint64_t>(c.x) << 42) | (static_cast<std::uint64_t>(c.y) << 21) |
           static_cast<std::uint64_t>(c.z);
  }

  void rehash(std::size_t want) {
    std::size_t cap = 16;
    while (cap < want) cap <<= 1;
    std::vector<Slot> fresh(cap);
    mask_ = cap - 1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const std::uint64_t key = pack(coords_[i]);
      std::size_t slot = detail::splitmix64(key) & mask_;
      while (fresh[slot].idx != empty_slot) slot = (slot + 1) & mask_;
      fresh[slot] = Slot{key, static_cast<std::uint32_t>(i)};
    }
    slots_ = std::move(fresh);
  }

  std::vector<CubeCoord> coords_;
  std::vector<CellId> cells_;
  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  CubeCoord min_{}, max_{};
};

// Moves a thresholded field onto the cubic lattice. Every active cell must
// have a cubulation coordinate; a miss means the iteration radius was too
// small to cover the grid.
inline CubicField to_cubic(const BinaryField& binary, const Cubulation& cub) {
  if (binary.n_cells() != cub.n_cells())
    throw Error("to_cubic: field and cubulation disagree on the cell count");
  CubicField out;
  out.reserve(static_cast<std::size_t>(binary.active_count()));
  for (CellId c = 0; c < binary.n_cells(); ++c) {
    if (!binary.active(c)) continue;
    if (!cub.reached(c))
      throw CoverageError("uncovered active cell " + std::to_string(c) +
                          ": cubulation radius too small to cover the grid");
    out.insert(cub.coord(c), c);
  }
  return out;
}

// Whole multi-level conversion; element l is the conversion of level l.
inline std::vector<CubicField> to_cubic(const MultiLevelBinaryField& levels,
                                        const Cubulation& cub) {
  std::vector<CubicField> out;
  out.reserve(levels.nlev());
  for (std::int32_t lev = 0; lev < levels.nlev(); ++lev)
    out.push_back(to_cubic(levels.slice(lev), cub));
  return out;
}

}  // namespace tricubo
