#pragma once

// Synthetic triangular grids: the hexagonal patch of the regular triangle
// tiling that is reachable from a base triangle within a given number of
// edge-adjacency steps. Round i of the growth adds 3*i cells, so a patch
// of radius r has exactly 1 + 3*r*(r+1)/2 cells.
//
// The construction works on the vertex lattice V(i,j) = i*(1,0) +
// j*(1/2, sqrt(3)/2). Each lattice rhombus (i,j) splits into an upward
// triangle {V(i,j), V(i+1,j), V(i,j+1)} and a downward triangle
// {V(i+1,j), V(i,j+1), V(i+1,j+1)}. Edges are keyed as (i,j,d) with
// d=0 the horizontal edge V(i,j)-V(i+1,j), d=1 the left edge
// V(i,j)-V(i,j+1) and d=2 the diagonal V(i+1,j)-V(i,j+1).

#include <array>
#include <cstdint>
#include <queue>
#include <vector>

#include "tricubo/grid.hpp"

namespace tricubo {

namespace detail {

struct LatticeTri {
  std::int32_t i, j;
  std::int32_t down;  // 0 = upward, 1 = downward
};

// Edge keys of a lattice triangle, ordered so that slot k is shared with
// neighbor slot k below.
inline std::array<std::array<std::int32_t, 3>, 3> tri_edges(const LatticeTri& t) {
  if (!t.down)
    return {{{t.i, t.j, 0}, {t.i, t.j, 1}, {t.i, t.j, 2}}};
  return {{{t.i, t.j, 2}, {t.i, t.j + 1, 0}, {t.i + 1, t.j, 1}}};
}

// Edge-adjacent lattice triangles, slot-aligned with tri_edges.
inline std::array<LatticeTri, 3> tri_neighbors(const LatticeTri& t) {
  if (!t.down)
    return {{{t.i, t.j - 1, 1}, {t.i - 1, t.j, 1}, {t.i, t.j, 1}}};
  return {{{t.i, t.j, 0}, {t.i, t.j + 1, 0}, {t.i + 1, t.j, 0}}};
}

// Endpoints of an edge key, in canonical order.
inline std::array<std::array<std::int32_t, 2>, 2> edge_endpoints(std::int32_t i, std::int32_t j,
                                                                 std::int32_t d) {
  switch (d) {
    case 0: return {{{i, j}, {i + 1, j}}};
    case 1: return {{{i, j}, {i, j + 1}}};
    default: return {{{i + 1, j}, {i, j + 1}}};
  }
}

}  // namespace detail

// Generates the radius-r hexagonal patch around a base triangle. Cell 0 is
// the base triangle; the remaining ids follow breadth-first discovery
// order, so the result is deterministic. Cell centers are emitted as
// synthetic lon/lat coordinates (planar centroids scaled by 0.01 degrees).
inline TriGrid generate_hex_patch(std::int32_t radius) {
  using detail::LatticeTri;
  if (radius < 0) throw GridError("hex patch radius must be >= 0");

  // Dense lattice tables over [-radius-2, radius+2]^2; BFS of depth r
  // cannot leave that window.
  const std::int32_t off = radius + 2;
  const std::int32_t dim = 2 * off + 1;
  const auto tri_slot = [&](const LatticeTri& t) -> std::int64_t {
    return ((static_cast<std::int64_t>(t.j + off) * dim) + (t.i + off)) * 2 + t.down;
  };
  const auto in_window = [&](std::int32_t i, std::int32_t j) {
    return i >= -off && i <= off && j >= -off && j <= off;
  };

  std::vector<CellId> tri_id(static_cast<std::size_t>(dim) * dim * 2, -1);
  std::vector<LatticeTri> cells;

  cells.push_back({0, 0, 0});
  tri_id[tri_slot(cells[0])] = 0;
  std::size_t round_begin = 0;
  for (std::int32_t round = 1; round <= radius; ++round) {
    const std::size_t round_end = cells.size();
    for (std::size_t c = round_begin; c < round_end; ++c) {
      const LatticeTri t = cells[c];  // copy: cells reallocates below
      for (const LatticeTri& nb : detail::tri_neighbors(t)) {
        if (!in_window(nb.i, nb.j)) continue;
        CellId& id = tri_id[tri_slot(nb)];
        if (id >= 0) continue;
        id = static_cast<CellId>(cells.size());
        cells.push_back(nb);
      }
    }
    round_begin = round_end;
  }

  const std::int64_t n_cells = static_cast<std::int64_t>(cells.size());

  // Assign edge and vertex ids on first use, scanning cells in id order.
  const std::int32_t vdim = dim + 2;
  std::vector<EdgeId> edge_id(static_cast<std::size_t>(vdim) * vdim * 3, -1);
  std::vector<VertexId> vert_id(static_cast<std::size_t>(vdim) * vdim, -1);
  const auto edge_slot = [&](std::int32_t i, std::int32_t j, std::int32_t d) -> std::int64_t {
    return ((static_cast<std::int64_t>(j + off + 1) * vdim) + (i + off + 1)) * 3 + d;
  };
  const auto vert_slot = [&](std::int32_t i, std::int32_t j) -> std::int64_t {
    return static_cast<std::int64_t>(j + off + 1) * vdim + (i + off + 1);
  };

  std::vector<std::array<CellId, 3>> neighbor_cell_index(n_cells);
  std::vector<std::array<EdgeId, 3>> edge_of_cell(n_cells);
  std::vector<std::array<VertexId, 2>> edge_vertices;
  std::int32_t n_vertices = 0;

  for (std::int64_t c = 0; c < n_cells; ++c) {
    const LatticeTri t = cells[c];
    const auto ekeys = detail::tri_edges(t);
    const auto nbrs = detail::tri_neighbors(t);
    for (int k = 0; k < 3; ++k) {
      EdgeId& e = edge_id[edge_slot(ekeys[k][0], ekeys[k][1], ekeys[k][2])];
      if (e < 0) {
        e = static_cast<EdgeId>(edge_vertices.size());
        std::array<VertexId, 2> vs;
        const auto ends = detail::edge_endpoints(ekeys[k][0], ekeys[k][1], ekeys[k][2]);
        for (int m = 0; m < 2; ++m) {
          VertexId& v = vert_id[vert_slot(ends[m][0], ends[m][1])];
          if (v < 0) v = n_vertices++;
          vs[m] = v;
        }
        edge_vertices.push_back(vs);
      }
      edge_of_cell[c][k] = e;
      const CellId nb = in_window(nbrs[k].i, nbrs[k].j) ? tri_id[tri_slot(nbrs[k])] : -1;
      neighbor_cell_index[c][k] = nb >= 0 ? nb : TriGrid::no_neighbor;
    }
  }

  // Planar centroids as synthetic coordinates, small enough to stay in a
  // valid lon/lat range for any reasonable radius.
  constexpr double root3_half = 0.86602540378443864676;
  constexpr double scale = 0.01;
  std::vector<double> lon(n_cells), lat(n_cells);
  for (std::int64_t c = 0; c < n_cells; ++c) {
    const LatticeTri t = cells[c];
    const double i3 = 3.0 * t.i + (t.down ? 2.0 : 1.0);
    const double j3 = 3.0 * t.j + (t.down ? 2.0 : 1.0);
    lon[c] = scale * (i3 + 0.5 * j3) / 3.0;
    lat[c] = scale * (j3 * root3_half) / 3.0;
  }

  return TriGrid(n_vertices, std::move(neighbor_cell_index), std::move(edge_of_cell),
                 std::move(edge_vertices), std::move(lon), std::move(lat));
}

// Cell count of generate_hex_patch(radius).
constexpr std::int64_t hex_patch_cells(std::int64_t radius) {
  return 1 + 3 * radius * (radius + 1) / 2;
}

}  // namespace tricubo
