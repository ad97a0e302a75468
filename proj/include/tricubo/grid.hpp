#pragma once

// Topology of a triangular grid patch.
//
// A TriGrid stores the three per-cell neighbor slots, the three per-cell
// edge ids and the two per-edge vertex ids, all 0-based. A missing
// neighbor (grid boundary) is the distinguished value TriGrid::no_neighbor.
// Cell-to-vertex and vertex-to-cell incidence are derived once at
// construction; the object is immutable afterwards and safe to read from
// any number of threads.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tricubo/errors.hpp"
#include "tricubo/report.hpp"

namespace tricubo {

using CellId = std::int32_t;
using EdgeId = std::int32_t;
using VertexId = std::int32_t;

class TriGrid {
public:
  // Marks an empty neighbor slot at the grid boundary. Loaders normalize
  // any external sentinel (e.g. -9999) to this value.
  static constexpr CellId no_neighbor = -1;

  TriGrid(std::int32_t n_vertices,
          std::vector<std::array<CellId, 3>> neighbor_cell_index,
          std::vector<std::array<EdgeId, 3>> edge_of_cell,
          std::vector<std::array<VertexId, 2>> edge_vertices,
          std::vector<double> cell_lon = {}, std::vector<double> cell_lat = {})
      : n_vertices_(n_vertices),
        neighbor_cell_index_(std::move(neighbor_cell_index)),
        edge_of_cell_(std::move(edge_of_cell)),
        edge_vertices_(std::move(edge_vertices)),
        cell_lon_(std::move(cell_lon)),
        cell_lat_(std::move(cell_lat)) {
    if (neighbor_cell_index_.size() != edge_of_cell_.size())
      throw GridError("neighbor_cell_index and edge_of_cell disagree on the cell count");
    if (n_vertices_ < 0) throw GridError("negative vertex count");
    if (!cell_lon_.empty() || !cell_lat_.empty()) {
      if (cell_lon_.size() != neighbor_cell_index_.size() ||
          cell_lat_.size() != neighbor_cell_index_.size())
        throw GridError("cell_lon/cell_lat length does not match the cell count");
    }
    build_cell_vertices();
    build_vertex_incidence();
  }

  std::int64_t n_cells() const { return static_cast<std::int64_t>(neighbor_cell_index_.size()); }
  std::int64_t n_edges() const { return static_cast<std::int64_t>(edge_vertices_.size()); }
  std::int64_t n_vertices() const { return n_vertices_; }

  const std::array<CellId, 3>& neighbors(CellId c) const { return neighbor_cell_index_[c]; }
  const std::array<EdgeId, 3>& edges_of(CellId c) const { return edge_of_cell_[c]; }
  const std::array<VertexId, 2>& vertices_of_edge(EdgeId e) const { return edge_vertices_[e]; }

  // The three vertices referenced by the cell's edges, -1-padded when the
  // raw arrays are inconsistent (validate_grid reports such cells).
  const std::array<VertexId, 3>& vertices_of_cell(CellId c) const { return cell_vertices_[c]; }

  // All cells incident to a vertex, ascending.
  std::span<const CellId> cells_of_vertex(VertexId v) const {
    return {vertex_cells_.data() + vertex_offsets_[v],
            vertex_cells_.data() + vertex_offsets_[v + 1]};
  }

  bool has_coordinates() const { return !cell_lon_.empty(); }
  double lon(CellId c) const { return cell_lon_[c]; }
  double lat(CellId c) const { return cell_lat_[c]; }
  const std::vector<double>& cell_lon() const { return cell_lon_; }
  const std::vector<double>& cell_lat() const { return cell_lat_; }

  bool cell_in_range(std::int64_t c) const { return c >= 0 && c < n_cells(); }
  bool edge_in_range(std::int64_t e) const { return e >= 0 && e < n_edges(); }
  bool vertex_in_range(std::int64_t v) const { return v >= 0 && v < n_vertices(); }

  friend bool operator==(const TriGrid& a, const TriGrid& b) {
    return a.n_vertices_ == b.n_vertices_ && a.neighbor_cell_index_ == b.neighbor_cell_index_ &&
           a.edge_of_cell_ == b.edge_of_cell_ && a.edge_vertices_ == b.edge_vertices_ &&
           a.cell_lon_ == b.cell_lon_ && a.cell_lat_ == b.cell_lat_;
  }

private:
  void build_cell_vertices() {
    cell_vertices_.assign(neighbor_cell_index_.size(), {-1, -1, -1});
    for (std::size_t c = 0; c < edge_of_cell_.size(); ++c) {
      int count = 0;
      for (EdgeId e : edge_of_cell_[c]) {
        if (!edge_in_range(e)) continue;
        for (VertexId v : edge_vertices_[e]) {
          bool seen = false;
          for (int i = 0; i < count; ++i) seen |= (cell_vertices_[c][i] == v);
          if (!seen && count < 3) cell_vertices_[c][count++] = v;
        }
      }
    }
  }

  void build_vertex_incidence() {
    vertex_offsets_.assign(static_cast<std::size_t>(n_vertices_) + 1, 0);
    for (const auto& vs : cell_vertices_)
      for (VertexId v : vs)
        if (vertex_in_range(v)) ++vertex_offsets_[static_cast<std::size_t>(v) + 1];
    for (std::size_t v = 0; v < static_cast<std::size_t>(n_vertices_); ++v)
      vertex_offsets_[v + 1] += vertex_offsets_[v];
    vertex_cells_.resize(vertex_offsets_.back());
    std::vector<std::int64_t> fill(vertex_offsets_.begin(), vertex_offsets_.end() - 1);
    for (std::size_t c = 0; c < cell_vertices_.size(); ++c)
      for (VertexId v : cell_vertices_[c])
        if (vertex_in_range(v)) vertex_cells_[fill[v]++] = static_cast<CellId>(c);
    // Cells were visited in ascending order, so each incidence run is sorted.
  }

  std::int32_t n_vertices_;
  std::vector<std::array<CellId, 3>> neighbor_cell_index_;
  std::vector<std::array<EdgeId, 3>> edge_of_cell_;
  std::vector<std::array<VertexId, 2>> edge_vertices_;
  std::vector<double> cell_lon_;
  std::vector<double> cell_lat_;

  std::vector<std::array<VertexId, 3>> cell_vertices_;
  std::vector<std::int64_t> vertex_offsets_;
  std::vector<CellId> vertex_cells_;
};

// The edge shared by two adjacent cells, or -1 if they share none.
inline EdgeId shared_edge(const TriGrid& grid, CellId a, CellId b) {
  for (EdgeId ea : grid.edges_of(a))
    for (EdgeId eb : grid.edges_of(b))
      if (ea == eb) return ea;
  return -1;
}

// Checks every TriGrid invariant and reports all violations.
//
// Finding kinds: index-out-of-range, self-neighbor, asymmetric-adjacency,
// duplicate-edge, degenerate-edge, edge-vertex-mismatch, shared-edge-count,
// vertex-valence-exceeded.
inline Report validate_grid(const TriGrid& grid) {
  Report report;
  const std::int64_t nc = grid.n_cells();

  for (CellId c = 0; c < nc; ++c) {
    const auto& nbrs = grid.neighbors(c);
    for (CellId b : nbrs) {
      if (b == TriGrid::no_neighbor) continue;
      if (!grid.cell_in_range(b)) {
        report.add("index-out-of-range", {c, b}, "neighbor cell id out of range");
        continue;
      }
      if (b == c) {
        report.add("self-neighbor", {c});
        continue;
      }
      const auto& back = grid.neighbors(b);
      if (std::find(back.begin(), back.end(), c) == back.end())
        report.add("asymmetric-adjacency", {c, b},
                   "cell " + std::to_string(c) + " lists neighbor " + std::to_string(b) +
                       " but not vice versa");
    }

    const auto& edges = grid.edges_of(c);
    bool edges_ok = true;
    for (EdgeId e : edges) {
      if (!grid.edge_in_range(e)) {
        report.add("index-out-of-range", {c, e}, "edge id out of range");
        edges_ok = false;
      }
    }
    if (edges[0] == edges[1] || edges[0] == edges[2] || edges[1] == edges[2]) {
      report.add("duplicate-edge", {c});
      edges_ok = false;
    }
    if (edges_ok) {
      // The three edges must jointly reference exactly 3 distinct vertices.
      std::array<VertexId, 6> vs;
      int n = 0;
      for (EdgeId e : edges)
        for (VertexId v : grid.vertices_of_edge(e)) vs[n++] = v;
      std::sort(vs.begin(), vs.end());
      int distinct = static_cast<int>(std::unique(vs.begin(), vs.end()) - vs.begin());
      if (distinct != 3)
        report.add("edge-vertex-mismatch", {c},
                   "cell edges reference " + std::to_string(distinct) + " distinct vertices");
    }

    for (CellId b : nbrs) {
      if (b == TriGrid::no_neighbor || !grid.cell_in_range(b) || b <= c) continue;
      int shared = 0;
      for (EdgeId ea : grid.edges_of(c))
        for (EdgeId eb : grid.edges_of(b))
          if (ea == eb) ++shared;
      if (shared != 1)
        report.add("shared-edge-count", {c, b},
                   "adjacent cells share " + std::to_string(shared) + " edges");
    }
  }

  for (EdgeId e = 0; e < grid.n_edges(); ++e) {
    const auto& vs = grid.vertices_of_edge(e);
    for (VertexId v : vs)
      if (!grid.vertex_in_range(v))
        report.add("index-out-of-range", {e, v}, "vertex id out of range");
    if (vs[0] == vs[1]) report.add("degenerate-edge", {e});
  }

  // Six incident cells per vertex is the most the construction supports.
  for (VertexId v = 0; v < grid.n_vertices(); ++v) {
    auto cells = grid.cells_of_vertex(v);
    if (cells.size() > 6)
      report.add("vertex-valence-exceeded", {v, static_cast<std::int64_t>(cells.size())});
  }

  return report;
}

// All cells sharing at least one vertex with `cell`, sorted ascending,
// excluding the cell itself. A superset of the edge neighbors.
inline std::vector<CellId> cells_sharing_vertex(const TriGrid& grid, CellId cell) {
  if (!grid.cell_in_range(cell)) throw GridError("cell id out of range: " + std::to_string(cell));
  std::array<CellId, 18> buf;
  int n = 0;
  for (VertexId v : grid.vertices_of_cell(cell)) {
    if (!grid.vertex_in_range(v)) continue;
    for (CellId c : grid.cells_of_vertex(v))
      if (c != cell && n < 18) buf[n++] = c;
  }
  std::sort(buf.begin(), buf.begin() + n);
  auto end = std::unique(buf.begin(), buf.begin() + n);
  return {buf.begin(), end};
}

// Haversine formula; distances compare correctly without the final asin.
inline double haversine_term(double lon1, double lat1, double lon2, double lat2) {
  constexpr double deg = 3.14159265358979323846 / 180.0;
  const double dlat = (lat2 - lat1) * deg;
  const double dlon = (lon2 - lon1) * deg;
  const double s1 = std::sin(dlat / 2);
  const double s2 = std::sin(dlon / 2);
  return s1 * s1 + std::cos(lat1 * deg) * std::cos(lat2 * deg) * s2 * s2;
}

// Great-circle distance in radians on the unit sphere.
inline double haversine_distance(double lon1, double lat1, double lon2, double lat2) {
  return 2.0 * std::asin(std::min(1.0, std::sqrt(haversine_term(lon1, lat1, lon2, lat2))));
}

// The cell whose center is closest to (lon, lat) by great-circle distance;
// ties go to the smallest cell id.
inline CellId nearest_cell(const TriGrid& grid, double lon, double lat) {
  if (!grid.has_coordinates())
    throw GridError("grid has no cell_lon/cell_lat coordinate arrays");
  if (grid.n_cells() == 0) throw GridError("grid has no cells");
  CellId best = 0;
  double best_term = haversine_term(lon, lat, grid.lon(0), grid.lat(0));
  for (CellId c = 1; c < grid.n_cells(); ++c) {
    const double t = haversine_term(lon, lat, grid.lon(c), grid.lat(c));
    if (t < best_term) {
      best_term = t;
      best = c;
    }
  }
  return best;
}

}  // namespace tricubo
