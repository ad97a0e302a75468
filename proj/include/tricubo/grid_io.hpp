#pragma once

// Grid file I/O. The canonical file is a single JSON object:
//
//   {
//     "n_cells": 4, "n_edges": 9, "n_vertices": 6,
//     "neighbor_cell_index": [[1,2,3], ...],   // n_cells x 3, -1 = boundary
//     "edge_of_cell":        [[0,1,2], ...],   // n_cells x 3
//     "edge_vertices":       [[0,1], ...],     // n_edges x 2
//     "cell_lon": [...], "cell_lat": [...]     // optional, n_cells
//   }
//
// Canonical files are 0-based with -1 marking a missing neighbor. Loader
// options accept 1-based input and foreign sentinels such as -9999; both
// are normalized at load time so the in-memory TriGrid is always 0-based.

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tricubo/grid.hpp"

namespace tricubo {

struct GridLoadOptions {
  int index_base = 0;            // 0 or 1
  std::int64_t sentinel = -1;    // raw value marking a missing neighbor
};

namespace detail {

inline nlohmann::json parse_json(std::istream& in, const std::string& what) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
  if (!j.is_object()) throw FormatError(what + ": top-level value is not an object");
  return j;
}

template <std::size_t N>
std::vector<std::array<std::int64_t, N>> read_rows(const nlohmann::json& j,
                                                   const std::string& key,
                                                   std::int64_t expect_rows) {
  if (!j.contains(key)) throw FormatError("grid file: missing field \"" + key + "\"");
  const auto& arr = j.at(key);
  if (!arr.is_array() || static_cast<std::int64_t>(arr.size()) != expect_rows)
    throw FormatError("grid file: \"" + key + "\" must be an array of " +
                      std::to_string(expect_rows) + " rows");
  std::vector<std::array<std::int64_t, N>> rows(arr.size());
  for (std::size_t r = 0; r < arr.size(); ++r) {
    const auto& row = arr[r];
    if (!row.is_array() || row.size() != N)
      throw FormatError("grid file: \"" + key + "\" row " + std::to_string(r) + " must have " +
                        std::to_string(N) + " entries");
    for (std::size_t k = 0; k < N; ++k) {
      if (!row[k].is_number_integer())
        throw FormatError("grid file: \"" + key + "\" row " + std::to_string(r) +
                          " has a non-integer entry");
      rows[r][k] = row[k].get<std::int64_t>();
    }
  }
  return rows;
}

inline std::int64_t read_count(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw FormatError("grid file: missing integer field \"" + key + "\"");
  const auto v = j.at(key).get<std::int64_t>();
  if (v < 0) throw FormatError("grid file: \"" + key + "\" is negative");
  return v;
}

}  // namespace detail

inline TriGrid load_grid(std::istream& in, const GridLoadOptions& options = {}) {
  const auto j = detail::parse_json(in, "grid file");
  const std::int64_t n_cells = detail::read_count(j, "n_cells");
  const std::int64_t n_edges = detail::read_count(j, "n_edges");
  const std::int64_t n_vertices = detail::read_count(j, "n_vertices");

  const auto raw_neighbors = detail::read_rows<3>(j, "neighbor_cell_index", n_cells);
  const auto raw_edges = detail::read_rows<3>(j, "edge_of_cell", n_cells);
  const auto raw_edge_vertices = detail::read_rows<2>(j, "edge_vertices", n_edges);

  const std::int64_t base = options.index_base;
  if (base != 0 && base != 1) throw FormatError("grid loader: index base must be 0 or 1");

  std::vector<std::array<CellId, 3>> neighbors(n_cells);
  std::vector<std::array<EdgeId, 3>> edges(n_cells);
  std::vector<std::array<VertexId, 2>> edge_vertices(n_edges);

  for (std::int64_t c = 0; c < n_cells; ++c) {
    for (int k = 0; k < 3; ++k) {
      const std::int64_t raw = raw_neighbors[c][k];
      if (raw == options.sentinel) {
        neighbors[c][k] = TriGrid::no_neighbor;
      } else {
        const std::int64_t v = raw - base;
        if (v < 0 || v >= n_cells)
          throw GridError("grid file: cell " + std::to_string(c) + " has neighbor id " +
                          std::to_string(raw) + " out of range after base shift");
        neighbors[c][k] = static_cast<CellId>(v);
      }
      const std::int64_t e = raw_edges[c][k] - base;
      if (e < 0 || e >= n_edges)
        throw GridError("grid file: cell " + std::to_string(c) + " has edge id " +
                        std::to_string(raw_edges[c][k]) + " out of range after base shift");
      edges[c][k] = static_cast<EdgeId>(e);
    }
  }
  for (std::int64_t e = 0; e < n_edges; ++e) {
    for (int k = 0; k < 2; ++k) {
      const std::int64_t v = raw_edge_vertices[e][k] - base;
      if (v < 0 || v >= n_vertices)
        throw GridError("grid file: edge " + std::to_string(e) + " has vertex id " +
                        std::to_string(raw_edge_vertices[e][k]) + " out of range after base shift");
      edge_vertices[e][k] = static_cast<VertexId>(v);
    }
  }

  std::vector<double> lon, lat;
  const bool has_lon = j.contains("cell_lon");
  const bool has_lat = j.contains("cell_lat");
  if (has_lon != has_lat)
    throw FormatError("grid file: cell_lon and cell_lat must be given together");
  if (has_lon) {
    const auto& jl = j.at("cell_lon");
    const auto& jb = j.at("cell_lat");
    if (!jl.is_array() || !jb.is_array() || static_cast<std::int64_t>(jl.size()) != n_cells ||
        static_cast<std::int64_t>(jb.size()) != n_cells)
      throw FormatError("grid file: cell_lon/cell_lat must be arrays of n_cells numbers");
    lon.resize(n_cells);
    lat.resize(n_cells);
    for (std::int64_t c = 0; c < n_cells; ++c) {
      if (!jl[c].is_number() || !jb[c].is_number())
        throw FormatError("grid file: cell_lon/cell_lat entries must be numbers");
      lon[c] = jl[c].get<double>();
      lat[c] = jb[c].get<double>();
    }
  }

  TriGrid grid(static_cast<std::int32_t>(n_vertices), std::move(neighbors), std::move(edges),
               std::move(edge_vertices), std::move(lon), std::move(lat));
  const Report report = validate_grid(grid);
  if (!report.ok())
    throw GridError("grid file failed validation: " + report.findings.front().str());
  return grid;
}

inline TriGrid load_grid(const std::string& path, const GridLoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open grid file: " + path);
  return load_grid(in, options);
}

inline void save_grid(std::ostream& out, const TriGrid& grid) {
  nlohmann::json j;
  j["n_cells"] = grid.n_cells();
  j["n_edges"] = grid.n_edges();
  j["n_vertices"] = grid.n_vertices();
  auto& nbrs = j["neighbor_cell_index"] = nlohmann::json::array();
  auto& edges = j["edge_of_cell"] = nlohmann::json::array();
  for (CellId c = 0; c < grid.n_cells(); ++c) {
    nbrs.push_back(grid.neighbors(c));
    edges.push_back(grid.edges_of(c));
  }
  auto& ev = j["edge_vertices"] = nlohmann::json::array();
  for (EdgeId e = 0; e < grid.n_edges(); ++e) ev.push_back(grid.vertices_of_edge(e));
  if (grid.has_coordinates()) {
    j["cell_lon"] = grid.cell_lon();
    j["cell_lat"] = grid.cell_lat();
  }
  out << j.dump() << "\n";
}

inline void save_grid(const std::string& path, const TriGrid& grid) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open output file: " + path);
  save_grid(out, grid);
  if (!out) throw FormatError("failed writing grid file: " + path);
}

}  // namespace tricubo
