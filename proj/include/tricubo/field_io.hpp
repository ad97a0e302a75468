#pragma once

// Field files are CSV with one of two headers:
//
//   cell,value           single-level data
//   level,cell,value     multi-level data
//
// Ids are 0-based. Pairs that do not appear default to 0, so sparse files
// stay small; a (level, cell) pair may appear at most once.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "tricubo/detail/text.hpp"
#include "tricubo/errors.hpp"
#include "tricubo/field.hpp"
#include "tricubo/grid.hpp"

namespace tricubo {

namespace detail {

inline double parse_double(std::string_view text, std::size_t lineno) {
  // from_chars for double is missing on some standard libraries; strtod
  // on a bounded copy is portable.
  const std::string copy(text);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || copy.empty())
    throw FormatError("field file line " + std::to_string(lineno) + ": bad value \"" + copy +
                      "\"");
  return v;
}

inline std::int64_t parse_id(std::string_view text, std::size_t lineno, const char* what) {
  try {
    return parse_int(text, what);
  } catch (const FormatError& e) {
    throw FormatError("field file line " + std::to_string(lineno) + ": " + e.what());
  }
}

}  // namespace detail

using LoadedField = std::variant<Field2D, MultiLevelField>;

inline LoadedField load_field(std::istream& in, const TriGrid& grid) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("field file: empty file");
  std::string_view header = detail::strip_cr(line);

  bool multi = false;
  if (header == "level,cell,value")
    multi = true;
  else if (header != "cell,value")
    throw FormatError("field file: header must be \"cell,value\" or \"level,cell,value\", got \"" +
                      std::string(header) + "\"");

  const std::int64_t n_cells = grid.n_cells();
  std::vector<double> values;
  std::vector<std::uint8_t> seen;
  std::int64_t nlev = multi ? 0 : 1;
  if (!multi) {
    values.assign(n_cells, 0.0);
    seen.assign(n_cells, 0);
  }

  std::size_t lineno = 1;
  std::vector<std::tuple<std::int64_t, std::int64_t, double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = detail::strip_cr(line);
    if (text.empty()) continue;
    const auto parts = detail::split(text, ',');
    if (parts.size() != (multi ? 3u : 2u))
      throw FormatError("field file line " + std::to_string(lineno) + ": expected " +
                        (multi ? std::string("level,cell,value") : std::string("cell,value")));

    const std::int64_t level = multi ? detail::parse_id(parts[0], lineno, "level") : 0;
    const std::int64_t cell = detail::parse_id(parts[multi ? 1 : 0], lineno, "cell id");
    const double value = detail::parse_double(parts[multi ? 2 : 1], lineno);
    if (level < 0)
      throw FormatError("field file line " + std::to_string(lineno) + ": negative level");
    if (cell < 0 || cell >= n_cells)
      throw FormatError("field file line " + std::to_string(lineno) + ": cell id " +
                        std::to_string(cell) + " out of range [0," + std::to_string(n_cells) +
                        ")");
    if (!std::isfinite(value))
      throw FormatError("field file line " + std::to_string(lineno) + ": non-finite value");

    if (!multi) {
      if (seen[cell])
        throw FormatError("field file line " + std::to_string(lineno) + ": duplicate cell " +
                          std::to_string(cell));
      seen[cell] = 1;
      values[cell] = value;
    } else {
      nlev = std::max(nlev, level + 1);
      rows.emplace_back(level, cell, value);
    }
  }

  if (!multi) return Field2D(std::move(values));

  if (nlev == 0) nlev = 1;  // an empty multi-level file still has one level
  values.assign(static_cast<std::size_t>(nlev) * n_cells, 0.0);
  seen.assign(values.size(), 0);
  for (const auto& [level, cell, value] : rows) {
    const std::size_t at = static_cast<std::size_t>(level) * n_cells + cell;
    if (seen[at])
      throw FormatError("field file: duplicate entry for level " + std::to_string(level) +
                        ", cell " + std::to_string(cell));
    seen[at] = 1;
    values[at] = value;
  }
  return MultiLevelField(static_cast<std::int32_t>(nlev), n_cells, std::move(values));
}

inline LoadedField load_field(const std::string& path, const TriGrid& grid) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open field file: " + path);
  return load_field(in, grid);
}

}  // namespace tricubo
