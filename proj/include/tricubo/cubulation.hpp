#pragma once

// Cubulation of a triangular grid.
//
// The edges of a regular triangle tiling fall into three parallel line
// families. Numbering the lines of each family consecutively gives every
// triangle an integer triple (x, y, z): entry i is the index of the slab
// of family i that contains the triangle. Under this map two triangles
// share an edge exactly when their triples differ by +-1 in a single
// entry, so the dual graph of the tiling embeds into the integer lattice
// and lattice algorithms apply directly.
//
// compute_cubulation realizes the map breadth-first from a start cell:
//
//   * the start cell becomes (0,0,0) and its three edges take the colors
//     1, 2, 3 (one per line family), assigned in ascending edge-id order;
//   * when a new cell is reached over a shared edge, the shared edge
//     keeps its color and each remaining edge of the new cell copies the
//     color of the edge of the old cell it is parallel to, i.e. the one
//     it shares no vertex with;
//   * the new coordinate copies the old one and moves the entry selected
//     by the shared edge's color: +1 if the old coordinate sum is 0,
//     -1 if it is 1. Coordinate sums therefore alternate between 0 and 1
//     across every adjacency.
//
// After the final round all coordinates are shifted by floor(radius/2)
// per axis, which makes them non-negative. A cell or edge reached on two
// paths must receive the same triple or color on both; a disagreement
// means the grid is outside the method's domain (e.g. a vertex with more
// than six triangles) and raises CubulationError.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tricubo/errors.hpp"
#include "tricubo/grid.hpp"
#include "tricubo/report.hpp"

namespace tricubo {

struct CubeCoord {
  std::int32_t x = 0, y = 0, z = 0;

  std::int32_t& operator[](int axis) { return axis == 0 ? x : axis == 1 ? y : z; }
  std::int32_t operator[](int axis) const { return axis == 0 ? x : axis == 1 ? y : z; }
  std::int64_t sum() const {
    return static_cast<std::int64_t>(x) + y + z;
  }
  friend bool operator==(const CubeCoord&, const CubeCoord&) = default;
  friend auto operator<=>(const CubeCoord&, const CubeCoord&) = default;

  std::string str() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
  }
};

// Edge colors are 1..3 (axis = color - 1); 0 marks an uncolored edge.
using EdgeColor = std::uint8_t;

class Cubulation {
public:
  Cubulation(std::int64_t n_cells, std::int64_t n_edges, CellId start_cell, std::int32_t radius,
             std::int32_t shift)
      : start_cell_(start_cell),
        radius_(radius),
        shift_(shift),
        coords_(n_cells),
        reached_(n_cells, 0),
        edge_color_(n_edges, 0) {}

  CellId start_cell() const { return start_cell_; }
  std::int32_t radius() const { return radius_; }
  std::int32_t shift() const { return shift_; }

  bool reached(CellId c) const { return reached_[c] != 0; }
  std::int64_t reached_count() const { return reached_count_; }

  // Post-shift coordinate triple; only valid for reached cells.
  const CubeCoord& coord(CellId c) const { return coords_[c]; }
  std::optional<CubeCoord> coord_if_reached(CellId c) const {
    if (!reached(c)) return std::nullopt;
    return coords_[c];
  }

  EdgeColor edge_color(EdgeId e) const { return edge_color_[e]; }

  // Coordinate sum before the non-negativity shift; 0 or 1 on valid output.
  std::int64_t preshift_sum(CellId c) const { return coords_[c].sum() - 3 * std::int64_t{shift_}; }

  std::vector<CellId> reached_cells() const {
    std::vector<CellId> out;
    out.reserve(reached_count_);
    for (std::size_t c = 0; c < reached_.size(); ++c)
      if (reached_[c]) out.push_back(static_cast<CellId>(c));
    return out;
  }

  std::int64_t n_cells() const { return static_cast<std::int64_t>(coords_.size()); }
  std::int64_t n_edges() const { return static_cast<std::int64_t>(edge_color_.size()); }

  void set_coord(CellId c, CubeCoord coord) {
    if (!reached_[c]) {
      reached_[c] = 1;
      ++reached_count_;
    }
    coords_[c] = coord;
  }
  void set_edge_color(EdgeId e, EdgeColor color) { edge_color_[e] = color; }
  void set_radius(std::int32_t r) { radius_ = r; }
  void set_shift(std::int32_t s) { shift_ = s; }

  friend bool operator==(const Cubulation& a, const Cubulation& b) {
    if (a.start_cell_ != b.start_cell_ || a.radius_ != b.radius_ || a.shift_ != b.shift_ ||
        a.reached_ != b.reached_ || a.edge_color_ != b.edge_color_)
      return false;
    for (std::size_t c = 0; c < a.coords_.size(); ++c)
      if (a.reached_[c] && !(a.coords_[c] == b.coords_[c])) return false;
    return true;
  }

private:
  CellId start_cell_;
  std::int32_t radius_;
  std::int32_t shift_;
  std::vector<CubeCoord> coords_;
  std::vector<std::uint8_t> reached_;
  std::vector<EdgeColor> edge_color_;
  std::int64_t reached_count_ = 0;
};

// Smallest iteration radius whose hexagonal growth covers n_cells cells:
// the ceiling of r = -1/2 + sqrt(1/4 + 2/3*(n_cells - 1)). Exact for
// circle-shaped grids, a lower bound for any other shape.
inline std::int32_t suggest_radius(std::int64_t n_cells) {
  if (n_cells < 1) throw Error("suggest_radius: cell count must be >= 1");
  const double real = -0.5 + std::sqrt(0.25 + 2.0 / 3.0 * static_cast<double>(n_cells - 1));
  // Integer correction: floating error must not change the ceiling.
  std::int64_t r = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(real)) - 2);
  while (1 + 3 * r * (r + 1) / 2 < n_cells) ++r;
  return static_cast<std::int32_t>(r);
}

using ProgressFn = std::function<void(std::int32_t round, std::int64_t new_cells)>;

// Computes the cubulation by breadth-first iteration around start_cell.
// A fixed radius runs exactly that many rounds; radius = nullopt (auto)
// iterates until a round reaches no new cell and records the effective
// radius. Within a round, newly discovered cells are processed in
// ascending (new, old) cell-id order, so the output is deterministic.
inline Cubulation compute_cubulation(const TriGrid& grid, CellId start_cell,
                                     std::optional<std::int32_t> radius = std::nullopt,
                                     const ProgressFn& progress = {}) {
  if (!grid.cell_in_range(start_cell))
    throw GridError("start cell out of range: " + std::to_string(start_cell));
  if (radius && *radius < 0) throw Error("cubulation radius must be >= 0");

  Cubulation cub(grid.n_cells(), grid.n_edges(), start_cell, radius.value_or(0), 0);

  cub.set_coord(start_cell, {0, 0, 0});
  {
    std::array<EdgeId, 3> edges = grid.edges_of(start_cell);
    std::sort(edges.begin(), edges.end());
    for (int k = 0; k < 3; ++k) cub.set_edge_color(edges[k], static_cast<EdgeColor>(k + 1));
  }

  // Derives the coordinate of `nb` from its already-assigned neighbor
  // `old_cell`, plus the colors of nb's two non-shared edges.
  const auto derive = [&](CellId old_cell, CellId nb, CubeCoord& nb_coord,
                          std::array<std::pair<EdgeId, EdgeColor>, 2>& nb_edges) {
    const EdgeId joint = shared_edge(grid, old_cell, nb);
    if (joint < 0)
      throw CubulationError("cells " + std::to_string(old_cell) + " and " + std::to_string(nb) +
                            " are listed as neighbors but share no edge");
    const EdgeColor axis_color = cub.edge_color(joint);
    if (axis_color == 0)
      throw CubulationError("internal: shared edge " + std::to_string(joint) + " is uncolored");

    nb_coord = cub.coord(old_cell);
    nb_coord[axis_color - 1] += cub.coord(old_cell).sum() == 0 ? 1 : -1;

    // Parallel rule: a non-joint edge of nb is parallel to the non-joint
    // edge of old_cell it shares no vertex with.
    int n = 0;
    for (EdgeId e : grid.edges_of(nb)) {
      if (e == joint) continue;
      const auto& ev = grid.vertices_of_edge(e);
      EdgeColor color = 0;
      for (EdgeId o : grid.edges_of(old_cell)) {
        if (o == joint) continue;
        const auto& ov = grid.vertices_of_edge(o);
        const bool disjoint = ev[0] != ov[0] && ev[0] != ov[1] && ev[1] != ov[0] && ev[1] != ov[1];
        if (disjoint) {
          color = cub.edge_color(o);
          break;
        }
      }
      if (color == 0)
        throw CubulationError("cannot color edge " + std::to_string(e) + " of cell " +
                              std::to_string(nb) + ": no parallel edge on cell " +
                              std::to_string(old_cell));
      nb_edges[n++] = {e, color};
    }
    if (n != 2)
      throw CubulationError("cell " + std::to_string(nb) + " does not have exactly two edges to color");
  };

  std::vector<CellId> frontier{start_cell};
  std::vector<CellId> next;
  std::vector<std::pair<CellId, CellId>> pairs;  // (new, old)
  std::int32_t effective_radius = 0;

  const std::int32_t max_rounds =
      radius ? *radius : (grid.n_cells() > 1 ? std::numeric_limits<std::int32_t>::max() : 0);
  for (std::int32_t round = 1; round <= max_rounds; ++round) {
    pairs.clear();
    for (CellId old_cell : frontier)
      for (CellId nb : grid.neighbors(old_cell))
        if (nb != TriGrid::no_neighbor && grid.cell_in_range(nb) && !cub.reached(nb))
          pairs.emplace_back(nb, old_cell);
    std::sort(pairs.begin(), pairs.end());

    next.clear();
    for (const auto& [nb, old_cell] : pairs) {
      if (cub.reached(nb)) continue;  // second path; checked below
      CubeCoord coord;
      std::array<std::pair<EdgeId, EdgeColor>, 2> colors;
      derive(old_cell, nb, coord, colors);

      cub.set_coord(nb, coord);
      for (const auto& [e, color] : colors) {
        const EdgeColor existing = cub.edge_color(e);
        if (existing == 0)
          cub.set_edge_color(e, color);
        else if (existing != color)
          throw CubulationError("edge-color conflict on edge " + std::to_string(e) +
                                ": colored " + std::to_string(existing) + " and " +
                                std::to_string(color) + " on different paths");
      }

      // Every already-reached neighbor must relate to the fresh coordinate
      // by one step along the axis of the shared edge. This also closes
      // rings: an inconsistent cycle fails here or at the coloring above.
      for (CellId m : grid.neighbors(nb)) {
        if (m == TriGrid::no_neighbor || !grid.cell_in_range(m) || m == old_cell ||
            !cub.reached(m))
          continue;
        const EdgeId joint = shared_edge(grid, nb, m);
        const EdgeColor axis_color = joint >= 0 ? cub.edge_color(joint) : 0;
        const CubeCoord& mc = cub.coord(m);
        bool consistent = axis_color >= 1 && axis_color <= 3;
        if (consistent) {
          for (int axis = 0; axis < 3; ++axis) {
            const std::int64_t d = std::int64_t{coord[axis]} - mc[axis];
            const std::int64_t want = axis == axis_color - 1 ? 1 : 0;
            if (d != want && d != -want) consistent = false;
          }
        }
        if (!consistent)
          throw CubulationError("coordinate conflict between cells " + std::to_string(nb) +
                                " " + coord.str() + " and " + std::to_string(m) + " " +
                                mc.str() + ": paths disagree");
      }
      next.push_back(nb);
    }

    if (progress) progress(round, static_cast<std::int64_t>(next.size()));
    if (!next.empty()) effective_radius = round;
    if (!radius && next.empty()) break;
    frontier.swap(next);
  }

  const std::int32_t recorded_radius = radius ? *radius : effective_radius;
  const std::int32_t shift = recorded_radius / 2;
  cub.set_radius(recorded_radius);
  cub.set_shift(shift);

  if (shift != 0) {
    for (CellId c = 0; c < grid.n_cells(); ++c) {
      if (!cub.reached(c)) continue;
      CubeCoord coord = cub.coord(c);
      coord.x += shift;
      coord.y += shift;
      coord.z += shift;
      cub.set_coord(c, coord);
    }
  }
  for (CellId c = 0; c < grid.n_cells(); ++c) {
    if (!cub.reached(c)) continue;
    const CubeCoord& coord = cub.coord(c);
    if (coord.x < 0 || coord.y < 0 || coord.z < 0)
      throw CubulationError("cell " + std::to_string(c) + " has negative coordinate " +
                            coord.str() + " after shift " + std::to_string(shift));
  }
  return cub;
}

// Re-checks every cubulation invariant against the grid. Finding kinds:
// negative-coordinate, parity-violated, injectivity-violated,
// adjacency-violated, edge-colors-invalid, cube-containment-violated.
inline Report verify_cubulation(const TriGrid& grid, const Cubulation& cub) {
  Report report;
  const std::int64_t shift3 = 3 * std::int64_t{cub.shift()};

  std::vector<std::pair<CubeCoord, CellId>> seen;
  seen.reserve(cub.reached_count());

  for (CellId c = 0; c < grid.n_cells(); ++c) {
    if (!cub.reached(c)) continue;
    const CubeCoord& coord = cub.coord(c);
    if (coord.x < 0 || coord.y < 0 || coord.z < 0)
      report.add("negative-coordinate", {c}, coord.str());
    const std::int64_t presum = coord.sum() - shift3;
    if (presum != 0 && presum != 1)
      report.add("parity-violated", {c},
                 "pre-shift coordinate sum " + std::to_string(presum) + " at " + coord.str());
    seen.emplace_back(coord, c);

    // The three edges of a reached cell must carry colors {1,2,3}.
    std::array<bool, 4> have{};
    bool colors_ok = true;
    for (EdgeId e : grid.edges_of(c)) {
      const EdgeColor col = cub.edge_color(e);
      if (col < 1 || col > 3 || have[col]) colors_ok = false;
      if (col <= 3) have[col] = true;
    }
    if (!colors_ok) report.add("edge-colors-invalid", {c});

    for (CellId b : grid.neighbors(c)) {
      if (b == TriGrid::no_neighbor || b <= c || !grid.cell_in_range(b) || !cub.reached(b))
        continue;
      const CubeCoord& other = cub.coord(b);
      int ndiff = 0;
      int diff_axis = -1;
      for (int axis = 0; axis < 3; ++axis) {
        const std::int64_t d = std::int64_t{other[axis]} - coord[axis];
        if (d != 0) {
          ++ndiff;
          diff_axis = axis;
          if (d != 1 && d != -1) ndiff = 99;
        }
      }
      if (ndiff != 1) {
        report.add("adjacency-violated", {c, b},
                   "coordinates " + coord.str() + " and " + other.str() +
                       " do not differ by one step in one entry");
        continue;
      }
      const EdgeId joint = shared_edge(grid, c, b);
      if (joint >= 0 && cub.edge_color(joint) != diff_axis + 1)
        report.add("adjacency-violated", {c, b},
                   "changed entry axis " + std::to_string(diff_axis + 1) +
                       " does not match shared edge color " +
                       std::to_string(int(cub.edge_color(joint))));
    }
  }

  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i].first == seen[i - 1].first)
      report.add("injectivity-violated", {seen[i - 1].second, seen[i].second},
                 "both map to " + seen[i].first.str());

  // All reached cells around a vertex must fit in one unit cube.
  for (VertexId v = 0; v < grid.n_vertices(); ++v) {
    CubeCoord lo, hi;
    bool first = true;
    CellId first_cell = -1;
    for (CellId c : grid.cells_of_vertex(v)) {
      if (!cub.reached(c)) continue;
      const CubeCoord& coord = cub.coord(c);
      if (first) {
        lo = hi = coord;
        first = false;
        first_cell = c;
        continue;
      }
      for (int axis = 0; axis < 3; ++axis) {
        lo[axis] = std::min(lo[axis], coord[axis]);
        hi[axis] = std::max(hi[axis], coord[axis]);
      }
    }
    if (!first && (hi.x - lo.x > 1 || hi.y - lo.y > 1 || hi.z - lo.z > 1))
      report.add("cube-containment-violated", {v, first_cell},
                 "cells around vertex span " + lo.str() + " to " + hi.str());
  }

  return report;
}

}  // namespace tricubo
