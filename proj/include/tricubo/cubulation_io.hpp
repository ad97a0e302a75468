#pragma once

// Cubulation cache files. The cubulation of a grid only has to be computed
// once, so it is worth persisting. The format is line-oriented text:
//
//   tricubo-cubulation v1 start=<id> radius=<r> shift=<s>
//   <cell>,<x>,<y>,<z>     one line per reached cell, ascending cell id
//   <edge>,<color>         one line per colored edge, ascending edge id
//
// Coordinates are post-shift and all ids are 0-based. Loading re-runs
// verify_cubulation against the grid and refuses caches that fail, which
// catches caches computed for a different grid.

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tricubo/cubulation.hpp"
#include "tricubo/detail/text.hpp"
#include "tricubo/errors.hpp"
#include "tricubo/grid.hpp"

namespace tricubo {

inline constexpr std::string_view cubulation_cache_magic = "tricubo-cubulation v1";

inline void save_cubulation(std::ostream& out, const Cubulation& cub) {
  out << cubulation_cache_magic << " start=" << cub.start_cell() << " radius=" << cub.radius()
      << " shift=" << cub.shift() << "\n";
  for (CellId c = 0; c < cub.n_cells(); ++c) {
    if (!cub.reached(c)) continue;
    const CubeCoord& coord = cub.coord(c);
    out << c << "," << coord.x << "," << coord.y << "," << coord.z << "\n";
  }
  for (EdgeId e = 0; e < cub.n_edges(); ++e)
    if (cub.edge_color(e) != 0) out << e << "," << int(cub.edge_color(e)) << "\n";
}

inline void save_cubulation(const std::string& path, const Cubulation& cub) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open output file: " + path);
  save_cubulation(out, cub);
  if (!out) throw FormatError("failed writing cubulation cache: " + path);
}

inline Cubulation load_cubulation(std::istream& in, const TriGrid& grid) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("cubulation cache: empty file");
  const std::string_view header = detail::strip_cr(line);

  const auto fields = detail::split(header, ' ');
  if (fields.size() != 5 || fields[0] != "tricubo-cubulation" || fields[1] != "v1")
    throw FormatError("cubulation cache: unrecognized header \"" + std::string(header) + "\"");
  const auto keyed = [&](std::string_view field, std::string_view key) {
    if (field.substr(0, key.size()) != key)
      throw FormatError("cubulation cache: expected \"" + std::string(key) +
                        "\" in header, got \"" + std::string(field) + "\"");
    return detail::parse_int(field.substr(key.size()), std::string(key) + " value");
  };
  const std::int64_t start = keyed(fields[2], "start=");
  const std::int64_t radius = keyed(fields[3], "radius=");
  const std::int64_t shift = keyed(fields[4], "shift=");
  if (!grid.cell_in_range(start))
    throw FormatError("cubulation cache: start cell " + std::to_string(start) + " out of range");
  if (radius < 0 || shift < 0) throw FormatError("cubulation cache: negative radius or shift");

  Cubulation cub(grid.n_cells(), grid.n_edges(), static_cast<CellId>(start),
                 static_cast<std::int32_t>(radius), static_cast<std::int32_t>(shift));

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = detail::strip_cr(line);
    if (text.empty()) continue;
    const auto parts = detail::split(text, ',');
    const auto fail = [&](const std::string& why) {
      throw FormatError("cubulation cache line " + std::to_string(lineno) + ": " + why);
    };
    if (parts.size() == 4) {
      const std::int64_t cell = detail::parse_int(parts[0], "cell id");
      if (!grid.cell_in_range(cell)) fail("cell id out of range");
      if (cub.reached(static_cast<CellId>(cell))) fail("duplicate cell entry");
      CubeCoord coord;
      coord.x = static_cast<std::int32_t>(detail::parse_int(parts[1], "x"));
      coord.y = static_cast<std::int32_t>(detail::parse_int(parts[2], "y"));
      coord.z = static_cast<std::int32_t>(detail::parse_int(parts[3], "z"));
      cub.set_coord(static_cast<CellId>(cell), coord);
    } else if (parts.size() == 2) {
      const std::int64_t edge = detail::parse_int(parts[0], "edge id");
      const std::int64_t color = detail::parse_int(parts[1], "color");
      if (!grid.edge_in_range(edge)) fail("edge id out of range");
      if (color < 1 || color > 3) fail("edge color must be 1, 2 or 3");
      if (cub.edge_color(static_cast<EdgeId>(edge)) != 0) fail("duplicate edge entry");
      cub.set_edge_color(static_cast<EdgeId>(edge), static_cast<EdgeColor>(color));
    } else {
      fail("expected \"cell,x,y,z\" or \"edge,color\"");
    }
  }
  if (cub.reached_count() == 0) throw FormatError("cubulation cache: no cell entries");
  if (!cub.reached(cub.start_cell()))
    throw FormatError("cubulation cache: start cell has no coordinate entry");

  const Report report = verify_cubulation(grid, cub);
  if (!report.ok())
    throw CubulationError("cubulation cache does not verify against this grid: " +
                          report.findings.front().str());
  return cub;
}

inline Cubulation load_cubulation(const std::string& path, const TriGrid& grid) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open cubulation cache: " + path);
  return load_cubulation(in, grid);
}

}  // namespace tricubo
