#pragma once

// Component output files: CSV rows "cell,label" (2-d) or "level,cell,label"
// (3-d), labels 0-based in component order, followed by a summary footer
//   # components=<n> active=<m> connectivity=<mode>

#include <fstream>
#include <ostream>
#include <string>

#include "tricubo/components.hpp"
#include "tricubo/errors.hpp"

namespace tricubo {

inline void write_components(std::ostream& out, const ComponentSet2D& comps, Connectivity conn) {
  out << "cell,label\n";
  std::int64_t active = 0;
  for (std::size_t label = 0; label < comps.size(); ++label) {
    for (CellId c : comps[label]) out << c << "," << label << "\n";
    active += static_cast<std::int64_t>(comps[label].size());
  }
  out << "# components=" << comps.size() << " active=" << active
      << " connectivity=" << to_string(conn) << "\n";
}

inline void write_components(std::ostream& out, const ComponentSet3D& comps, Connectivity conn) {
  out << "level,cell,label\n";
  std::int64_t active = 0;
  for (std::size_t label = 0; label < comps.size(); ++label) {
    for (const LevelCell& lc : comps[label])
      out << lc.level << "," << lc.cell << "," << label << "\n";
    active += static_cast<std::int64_t>(comps[label].size());
  }
  out << "# components=" << comps.size() << " active=" << active
      << " connectivity=" << to_string(conn) << "\n";
}

template <typename Components>
void write_components(const std::string& path, const Components& comps, Connectivity conn) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open output file: " + path);
  write_components(out, comps, conn);
  if (!out) throw FormatError("failed writing component file: " + path);
}

}  // namespace tricubo
