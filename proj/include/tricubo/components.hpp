#pragma once

// Connected-component labeling.
//
// 2-d labeling runs on the cubic lattice: edge connectivity on the
// triangular grid is 6-connectivity (shared faces) between occupied
// lattice points, vertex connectivity is 26-connectivity. The default
// sparse engine unions occupied points by probing only the neighbor
// offsets that actually exist; the dense engine is the classic two-pass
// raster scan over the bounding box and is kept as an independent second
// route to the same partition.
//
// 3-d labeling merges per-level 2-d components: components on adjacent
// levels are connected when they share a cell id (vertical connectivity
// is cell-identity only, never diagonal), and the components of that
// overlap graph are the 3-d components.
//
// The BFS oracles compute the same partitions directly on the triangular
// grid's dual graph, without the cubulation, and exist to cross-check the
// lattice path and to serve as the baseline in benchmarks.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tricubo/cubulation.hpp"
#include "tricubo/errors.hpp"
#include "tricubo/field.hpp"
#include "tricubo/grid.hpp"
#include "tricubo/union_find.hpp"

namespace tricubo {

enum class Connectivity { vertex, edge };  // vertex = 26-conn, edge = 6-conn

inline const char* to_string(Connectivity c) {
  return c == Connectivity::vertex ? "vertex" : "edge";
}

enum class Engine { sparse, dense };

inline constexpr std::int64_t default_dense_volume_cap = std::int64_t{1} << 27;

struct LevelCell {
  std::int32_t level;
  CellId cell;
  friend bool operator==(const LevelCell&, const LevelCell&) = default;
  friend auto operator<=>(const LevelCell&, const LevelCell&) = default;
};

// An ordered partition of the active set. Components are sorted largest
// first; equal sizes break ties by smallest member. Labels are implicit
// positions in `components`.
template <typename Member>
struct ComponentPartition {
  std::vector<std::vector<Member>> components;

  std::size_t size() const { return components.size(); }
  const std::vector<Member>& operator[](std::size_t i) const { return components[i]; }

  friend bool operator==(const ComponentPartition&, const ComponentPartition&) = default;
};

using ComponentSet2D = ComponentPartition<CellId>;
using ComponentSet3D = ComponentPartition<LevelCell>;

namespace detail {

// Sorts members within each component and orders components by size
// descending, ties by smallest member.
template <typename Member>
void normalize_partition(std::vector<std::vector<Member>>& components) {
  for (auto& comp : components) std::sort(comp.begin(), comp.end());
  std::sort(components.begin(), components.end(),
            [](const std::vector<Member>& a, const std::vector<Member>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
}

// Neighbor offsets on the cubic lattice. 6-connectivity shares a face,
// 26-connectivity a face, edge or corner.
inline std::vector<std::array<std::int32_t, 3>> lattice_offsets(Connectivity conn) {
  std::vector<std::array<std::int32_t, 3>> offs;
  if (conn == Connectivity::edge) {
    offs = {{{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};
  } else {
    for (std::int32_t dz = -1; dz <= 1; ++dz)
      for (std::int32_t dy = -1; dy <= 1; ++dy)
        for (std::int32_t dx = -1; dx <= 1; ++dx)
          if (dx || dy || dz) offs.push_back({dx, dy, dz});
  }
  return offs;
}

// Offsets that precede the current voxel in (z, y, x) scan order.
inline std::vector<std::array<std::int32_t, 3>> prior_offsets(Connectivity conn) {
  std::vector<std::array<std::int32_t, 3>> offs;
  for (const auto& o : lattice_offsets(conn)) {
    const auto [dx, dy, dz] = o;
    if (dz < 0 || (dz == 0 && dy < 0) || (dz == 0 && dy == 0 && dx < 0)) offs.push_back(o);
  }
  return offs;
}

template <typename Member, typename MemberOf>
ComponentPartition<Member> collect_groups(UnionFind& uf, std::size_t n, MemberOf&& member_of) {
  std::vector<std::size_t> group_of(n, static_cast<std::size_t>(-1));
  std::vector<std::vector<Member>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    if (group_of[root] == static_cast<std::size_t>(-1)) {
      group_of[root] = groups.size();
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(member_of(i));
  }
  normalize_partition(groups);
  return ComponentPartition<Member>{std::move(groups)};
}

inline ComponentSet2D label_2d_sparse(const CubicField& cubic, Connectivity conn) {
  const std::size_t n = cubic.size();
  UnionFind uf(n);
  const auto offsets = lattice_offsets(conn);
  for (std::size_t i = 0; i < n; ++i) {
    const CubeCoord& c = cubic.coord_at(i);
    for (const auto& [dx, dy, dz] : offsets) {
      const std::size_t j = cubic.find({c.x + dx, c.y + dy, c.z + dz});
      if (j != CubicField::npos) uf.unite(i, j);
    }
  }
  return collect_groups<CellId>(uf, n, [&](std::size_t i) { return cubic.cell_at(i); });
}

inline ComponentSet2D label_2d_dense(const CubicField& cubic, Connectivity conn,
                                     std::int64_t volume_cap) {
  if (cubic.empty()) return {};
  const std::int64_t volume = cubic.bounding_volume();
  if (volume > volume_cap)
    throw Error("dense labeling: bounding box volume " + std::to_string(volume) +
                " exceeds the cap of " + std::to_string(volume_cap) +
                "; use the sparse engine");

  const auto ext = cubic.extents();
  const std::int64_t ex = ext[0], ey = ext[1];
  const CubeCoord lo = cubic.min_corner();
  const auto occ = cubic.dense_occupancy();
  const auto at = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    return (z * ey + y) * ex + x;
  };

  // First pass: provisional labels plus equivalences from prior neighbors.
  std::vector<std::uint32_t> label(occ.size(), 0);
  const auto prior = prior_offsets(conn);
  std::uint32_t next_label = 0;
  UnionFind uf(cubic.size());
  for (std::int64_t z = 0; z < ext[2]; ++z) {
    for (std::int64_t y = 0; y < ey; ++y) {
      for (std::int64_t x = 0; x < ex; ++x) {
        const std::int64_t idx = at(x, y, z);
        if (!occ[idx]) continue;
        std::uint32_t assigned = 0;
        for (const auto& [dx, dy, dz] : prior) {
          const std::int64_t nx = x + dx, ny = y + dy, nz = z + dz;
          if (nx < 0 || ny < 0 || nz < 0 || nx >= ex || ny >= ey || nz >= ext[2]) continue;
          const std::uint32_t nb = label[at(nx, ny, nz)];
          if (!nb) continue;
          if (!assigned)
            assigned = nb;
          else
            uf.unite(assigned - 1, nb - 1);
        }
        if (!assigned) assigned = ++next_label;
        label[idx] = assigned;
      }
    }
  }

  // Second pass: resolve each occupied voxel to its root label and group.
  std::vector<std::size_t> group_of(next_label, static_cast<std::size_t>(-1));
  std::vector<std::vector<CellId>> groups;
  for (std::int64_t z = 0; z < ext[2]; ++z) {
    for (std::int64_t y = 0; y < ey; ++y) {
      for (std::int64_t x = 0; x < ex; ++x) {
        const std::int64_t idx = at(x, y, z);
        if (!occ[idx]) continue;
        const std::size_t root = uf.find(label[idx] - 1);
        if (group_of[root] == static_cast<std::size_t>(-1)) {
          group_of[root] = groups.size();
          groups.emplace_back();
        }
        const std::size_t entry = cubic.find({static_cast<std::int32_t>(lo.x + x),
                                              static_cast<std::int32_t>(lo.y + y),
                                              static_cast<std::int32_t>(lo.z + z)});
        groups[group_of[root]].push_back(cubic.cell_at(entry));
      }
    }
  }
  detail::normalize_partition(groups);
  return ComponentSet2D{std::move(groups)};
}

}  // namespace detail

// Labels the occupied lattice points of a cubulated field. Both engines
// return the same partition; sparse is the default, dense requires the
// bounding box volume to stay under the cap.
inline ComponentSet2D label_2d(const CubicField& cubic, Connectivity conn,
                               Engine engine = Engine::sparse,
                               std::int64_t dense_volume_cap = default_dense_volume_cap) {
  if (cubic.empty()) return {};
  if (engine == Engine::sparse) return detail::label_2d_sparse(cubic, conn);
  return detail::label_2d_dense(cubic, conn, dense_volume_cap);
}

// Labels multi-level data: per-level 2-d labeling, then vertical merging
// of components on adjacent levels that share a cell id.
inline ComponentSet3D label_3d(const MultiLevelBinaryField& levels, const Cubulation& cub,
                               Connectivity conn) {
  const std::int32_t nlev = levels.nlev();
  std::vector<ComponentSet2D> per_level(nlev);
  for (std::int32_t lev = 0; lev < nlev; ++lev)
    per_level[lev] = label_2d(to_cubic(levels.slice(lev), cub), conn);

  std::vector<std::size_t> node_base(nlev + 1, 0);
  for (std::int32_t lev = 0; lev < nlev; ++lev)
    node_base[lev + 1] = node_base[lev] + per_level[lev].size();
  UnionFind uf(node_base[nlev]);

  // Connect components on adjacent levels that share at least one cell.
  std::vector<std::int64_t> comp_of_cell(levels.n_cells(), -1);
  std::vector<CellId> touched;
  for (std::int32_t lev = 0; lev + 1 < nlev; ++lev) {
    for (std::size_t k = 0; k < per_level[lev].size(); ++k)
      for (CellId c : per_level[lev][k]) {
        comp_of_cell[c] = static_cast<std::int64_t>(node_base[lev] + k);
        touched.push_back(c);
      }
    for (std::size_t k = 0; k < per_level[lev + 1].size(); ++k)
      for (CellId c : per_level[lev + 1][k])
        if (comp_of_cell[c] >= 0)
          uf.unite(node_base[lev + 1] + k, static_cast<std::size_t>(comp_of_cell[c]));
    for (CellId c : touched) comp_of_cell[c] = -1;
    touched.clear();
  }

  std::vector<std::size_t> group_of(node_base[nlev], static_cast<std::size_t>(-1));
  std::vector<std::vector<LevelCell>> groups;
  for (std::int32_t lev = 0; lev < nlev; ++lev) {
    for (std::size_t k = 0; k < per_level[lev].size(); ++k) {
      const std::size_t root = uf.find(node_base[lev] + k);
      if (group_of[root] == static_cast<std::size_t>(-1)) {
        group_of[root] = groups.size();
        groups.emplace_back();
      }
      auto& group = groups[group_of[root]];
      for (CellId c : per_level[lev][k]) group.push_back({lev, c});
    }
  }
  detail::normalize_partition(groups);
  return ComponentSet3D{std::move(groups)};
}

// Independent baseline: breadth-first search over active cells on the
// triangular grid's dual graph. No cubulation involved.
inline ComponentSet2D bfs_oracle_2d(const TriGrid& grid, const BinaryField& binary,
                                    Connectivity conn) {
  if (binary.n_cells() != grid.n_cells())
    throw Error("bfs_oracle_2d: field and grid disagree on the cell count");
  std::vector<std::uint8_t> visited(grid.n_cells(), 0);
  std::vector<std::vector<CellId>> groups;
  std::deque<CellId> queue;
  for (CellId seed = 0; seed < grid.n_cells(); ++seed) {
    if (!binary.active(seed) || visited[seed]) continue;
    groups.emplace_back();
    auto& group = groups.back();
    visited[seed] = 1;
    queue.push_back(seed);
    while (!queue.empty()) {
      const CellId c = queue.front();
      queue.pop_front();
      group.push_back(c);
      const auto visit = [&](CellId nb) {
        if (nb == TriGrid::no_neighbor || !grid.cell_in_range(nb)) return;
        if (!binary.active(nb) || visited[nb]) return;
        visited[nb] = 1;
        queue.push_back(nb);
      };
      if (conn == Connectivity::edge) {
        for (CellId nb : grid.neighbors(c)) visit(nb);
      } else {
        for (CellId nb : cells_sharing_vertex(grid, c)) visit(nb);
      }
    }
  }
  detail::normalize_partition(groups);
  return ComponentSet2D{std::move(groups)};
}

// 3-d baseline over (level, cell) nodes: horizontal adjacency within a
// level per the connectivity mode, vertical adjacency between the same
// cell on adjacent levels.
inline ComponentSet3D bfs_oracle_3d(const TriGrid& grid, const MultiLevelBinaryField& levels,
                                    Connectivity conn) {
  if (levels.n_cells() != grid.n_cells())
    throw Error("bfs_oracle_3d: field and grid disagree on the cell count");
  const std::int32_t nlev = levels.nlev();
  const std::int64_t nc = grid.n_cells();
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(nlev) * nc, 0);
  const auto at = [&](std::int32_t lev, CellId c) {
    return static_cast<std::size_t>(lev) * nc + c;
  };

  std::vector<std::vector<LevelCell>> groups;
  std::deque<LevelCell> queue;
  for (std::int32_t lev = 0; lev < nlev; ++lev) {
    for (CellId seed = 0; seed < nc; ++seed) {
      if (!levels.active(lev, seed) || visited[at(lev, seed)]) continue;
      groups.emplace_back();
      auto& group = groups.back();
      visited[at(lev, seed)] = 1;
      queue.push_back({lev, seed});
      while (!queue.empty()) {
        const LevelCell lc = queue.front();
        queue.pop_front();
        group.push_back(lc);
        const auto visit = [&](std::int32_t l, CellId nb) {
          if (nb == TriGrid::no_neighbor || !grid.cell_in_range(nb)) return;
          if (l < 0 || l >= nlev) return;
          if (!levels.active(l, nb) || visited[at(l, nb)]) return;
          visited[at(l, nb)] = 1;
          queue.push_back({l, nb});
        };
        if (conn == Connectivity::edge) {
          for (CellId nb : grid.neighbors(lc.cell)) visit(lc.level, nb);
        } else {
          for (CellId nb : cells_sharing_vertex(grid, lc.cell)) visit(lc.level, nb);
        }
        visit(lc.level - 1, lc.cell);
        visit(lc.level + 1, lc.cell);
      }
    }
  }
  detail::normalize_partition(groups);
  return ComponentSet3D{std::move(groups)};
}

// Precomputed all-cells adjacency for the baseline method; like the
// cubulation, it is built once per grid and reused across time steps.
class FullGraph {
public:
  FullGraph(const TriGrid& grid, Connectivity conn) : mode_(conn) {
    const std::int64_t nc = grid.n_cells();
    offsets_.assign(nc + 1, 0);
    std::vector<std::vector<CellId>> rows(nc);
    for (CellId c = 0; c < nc; ++c) {
      if (conn == Connectivity::edge) {
        for (CellId nb : grid.neighbors(c))
          if (nb != TriGrid::no_neighbor && grid.cell_in_range(nb)) rows[c].push_back(nb);
        std::sort(rows[c].begin(), rows[c].end());
      } else {
        rows[c] = cells_sharing_vertex(grid, c);
      }
    }
    for (CellId c = 0; c < nc; ++c) offsets_[c + 1] = offsets_[c] + rows[c].size();
    links_.reserve(offsets_[nc]);
    for (auto& row : rows) links_.insert(links_.end(), row.begin(), row.end());
  }

  Connectivity mode() const { return mode_; }
  std::int64_t n_nodes() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }
  std::int64_t n_links() const { return static_cast<std::int64_t>(links_.size()) / 2; }
  std::size_t degree(CellId c) const { return offsets_[c + 1] - offsets_[c]; }
  std::span<const CellId> neighbors_of(CellId c) const {
    return {links_.data() + offsets_[c], links_.data() + offsets_[c + 1]};
  }

private:
  Connectivity mode_;
  std::vector<std::size_t> offsets_;
  std::vector<CellId> links_;
};

inline FullGraph build_full_graph(const TriGrid& grid, Connectivity conn) {
  return FullGraph(grid, conn);
}

}  // namespace tricubo
