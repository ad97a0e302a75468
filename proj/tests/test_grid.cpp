#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "tricubo/grid.hpp"
#include "tricubo/hex_patch.hpp"

using namespace tricubo;

namespace {

// Independent oracle: two cells share a vertex iff the vertex sets of
// their edges intersect. Works straight off the raw arrays.
std::set<VertexId> cell_vertex_set(const TriGrid& g, CellId c) {
  std::set<VertexId> vs;
  for (EdgeId e : g.edges_of(c))
    for (VertexId v : g.vertices_of_edge(e)) vs.insert(v);
  return vs;
}

std::vector<CellId> brute_force_vertex_sharers(const TriGrid& g, CellId cell) {
  const auto mine = cell_vertex_set(g, cell);
  std::vector<CellId> out;
  for (CellId c = 0; c < g.n_cells(); ++c) {
    if (c == cell) continue;
    const auto theirs = cell_vertex_set(g, c);
    bool shares = false;
    for (VertexId v : mine) shares |= theirs.count(v) > 0;
    if (shares) out.push_back(c);
  }
  return out;
}

// A closed fan of seven triangles around one central vertex. Structurally
// consistent except that the central vertex has valence 7.
TriGrid seven_fan() {
  std::vector<std::array<CellId, 3>> nbrs(7);
  std::vector<std::array<EdgeId, 3>> eoc(7);
  std::vector<std::array<VertexId, 2>> ev;
  // spoke edge i connects center 0 to rim vertex i+1
  for (VertexId r = 1; r <= 7; ++r) ev.push_back({0, r});
  // rim edge 7+i connects rim vertices i+1 and (i+1)%7+1
  for (std::int32_t i = 0; i < 7; ++i)
    ev.push_back({static_cast<VertexId>(i + 1), static_cast<VertexId>((i + 1) % 7 + 1)});
  for (std::int32_t i = 0; i < 7; ++i) {
    eoc[i] = {static_cast<EdgeId>(i), static_cast<EdgeId>(7 + i),
              static_cast<EdgeId>((i + 1) % 7)};
    nbrs[i] = {static_cast<CellId>((i + 6) % 7), static_cast<CellId>((i + 1) % 7),
               TriGrid::no_neighbor};
  }
  return TriGrid(8, std::move(nbrs), std::move(eoc), std::move(ev));
}

// Two triangles sharing edge 1-2; `symmetric` controls whether the second
// cell lists the first back.
TriGrid two_cell_grid(bool symmetric) {
  std::vector<std::array<CellId, 3>> nbrs = {
      {1, TriGrid::no_neighbor, TriGrid::no_neighbor},
      {symmetric ? 0 : TriGrid::no_neighbor, TriGrid::no_neighbor, TriGrid::no_neighbor}};
  std::vector<std::array<EdgeId, 3>> eoc = {{1, 0, 2}, {1, 3, 4}};
  std::vector<std::array<VertexId, 2>> ev = {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 2}};
  return TriGrid(4, std::move(nbrs), std::move(eoc), std::move(ev));
}

}  // namespace

TEST_CASE("hex patch growth is exact", "[grid]") {
  CHECK(generate_hex_patch(0).n_cells() == 1);
  CHECK(generate_hex_patch(1).n_cells() == 4);
  CHECK(generate_hex_patch(2).n_cells() == 10);
  for (std::int32_t r = 0; r <= 40; ++r) {
    const auto g = generate_hex_patch(r);
    CAPTURE(r);
    CHECK(g.n_cells() == 1 + 3 * std::int64_t{r} * (r + 1) / 2);
  }
  CHECK_THROWS_AS(generate_hex_patch(-1), GridError);
}

TEST_CASE("generated patches validate cleanly", "[grid]") {
  for (std::int32_t r : {0, 1, 2, 3, 5, 12}) {
    const auto g = generate_hex_patch(r);
    CAPTURE(r);
    CHECK(validate_grid(g).ok());
  }
}

TEST_CASE("adjacent cells share exactly one edge", "[grid]") {
  const auto g = generate_hex_patch(10);
  for (CellId a = 0; a < g.n_cells(); ++a) {
    for (CellId b : g.neighbors(a)) {
      if (b == TriGrid::no_neighbor) continue;
      int shared = 0;
      for (EdgeId ea : g.edges_of(a))
        for (EdgeId eb : g.edges_of(b))
          if (ea == eb) ++shared;
      CAPTURE(a, b);
      REQUIRE(shared == 1);
      const EdgeId e = shared_edge(g, a, b);
      const auto va = cell_vertex_set(g, a);
      const auto vb = cell_vertex_set(g, b);
      for (VertexId v : g.vertices_of_edge(e)) {
        CHECK(va.count(v) == 1);
        CHECK(vb.count(v) == 1);
      }
    }
  }
}

TEST_CASE("cells_sharing_vertex matches the brute-force oracle", "[grid]") {
  SECTION("single triangle has no sharers") {
    const auto g = generate_hex_patch(0);
    CHECK(cells_sharing_vertex(g, 0).empty());
  }
  SECTION("base cell of a radius-2 patch") {
    const auto g = generate_hex_patch(2);
    const auto got = cells_sharing_vertex(g, 0);
    CHECK(got == brute_force_vertex_sharers(g, 0));
    // Of the 12 vertex sharers an interior cell has, the three that sit
    // at dual-graph distance 3 are still outside a radius-2 patch.
    CHECK(got.size() == 9);
  }
  SECTION("interior cell returns exactly 12 cells") {
    const auto g = generate_hex_patch(3);
    const auto got = cells_sharing_vertex(g, 0);
    CHECK(got == brute_force_vertex_sharers(g, 0));
    CHECK(got.size() == 12);
  }
  SECTION("boundary cell of a radius-1 patch") {
    const auto g = generate_hex_patch(1);
    const auto got = cells_sharing_vertex(g, 1);
    CHECK(got == brute_force_vertex_sharers(g, 1));
    // the base cell plus the two other outer cells
    CHECK(got == std::vector<CellId>{0, 2, 3});
  }
  SECTION("whole patch agrees with the oracle") {
    const auto g = generate_hex_patch(4);
    for (CellId c = 0; c < g.n_cells(); ++c) {
      CAPTURE(c);
      CHECK(cells_sharing_vertex(g, c) == brute_force_vertex_sharers(g, c));
    }
  }
  SECTION("always a superset of the edge neighbors") {
    const auto g = generate_hex_patch(4);
    for (CellId c = 0; c < g.n_cells(); ++c) {
      const auto sharers = cells_sharing_vertex(g, c);
      for (CellId nb : g.neighbors(c)) {
        if (nb == TriGrid::no_neighbor) continue;
        CAPTURE(c, nb);
        CHECK(std::binary_search(sharers.begin(), sharers.end(), nb));
      }
    }
  }
  SECTION("out-of-range cell id throws") {
    const auto g = generate_hex_patch(1);
    CHECK_THROWS_AS(cells_sharing_vertex(g, 99), GridError);
  }
}

TEST_CASE("validate_grid reports violations", "[grid]") {
  SECTION("vertex valence above six") {
    const auto report = validate_grid(seven_fan());
    REQUIRE(report.has("vertex-valence-exceeded"));
    const auto& f = report.findings.front();
    CHECK(f.ids == std::vector<std::int64_t>{0, 7});
  }
  SECTION("asymmetric adjacency names both cells") {
    const auto report = validate_grid(two_cell_grid(false));
    REQUIRE(report.has("asymmetric-adjacency"));
    bool found = false;
    for (const auto& f : report.findings)
      if (f.kind == "asymmetric-adjacency")
        found = f.ids == std::vector<std::int64_t>{0, 1};
    CHECK(found);
    CHECK(validate_grid(two_cell_grid(true)).ok());
  }
  SECTION("edge whose vertices are not the cell's vertices") {
    const auto g = generate_hex_patch(2);
    std::vector<std::array<CellId, 3>> nbrs;
    std::vector<std::array<EdgeId, 3>> eoc;
    std::vector<std::array<VertexId, 2>> ev;
    for (CellId c = 0; c < g.n_cells(); ++c) {
      nbrs.push_back(g.neighbors(c));
      eoc.push_back(g.edges_of(c));
    }
    for (EdgeId e = 0; e < g.n_edges(); ++e) ev.push_back(g.vertices_of_edge(e));
    // point one edge slot of the base cell at an edge of a far-away cell
    eoc[0][0] = g.edges_of(9)[2];
    const TriGrid corrupted(static_cast<std::int32_t>(g.n_vertices()), std::move(nbrs),
                            std::move(eoc), std::move(ev));
    CHECK(validate_grid(corrupted).has("edge-vertex-mismatch"));
  }
  SECTION("self neighbor") {
    std::vector<std::array<CellId, 3>> nbrs = {
        {0, TriGrid::no_neighbor, TriGrid::no_neighbor}};
    std::vector<std::array<EdgeId, 3>> eoc = {{0, 1, 2}};
    std::vector<std::array<VertexId, 2>> ev = {{0, 1}, {1, 2}, {2, 0}};
    const TriGrid g(3, std::move(nbrs), std::move(eoc), std::move(ev));
    CHECK(validate_grid(g).has("self-neighbor"));
  }
  SECTION("out-of-range ids") {
    std::vector<std::array<CellId, 3>> nbrs = {
        {7, TriGrid::no_neighbor, TriGrid::no_neighbor}};
    std::vector<std::array<EdgeId, 3>> eoc = {{0, 1, 5}};
    std::vector<std::array<VertexId, 2>> ev = {{0, 9}, {1, 2}, {2, 0}};
    const TriGrid g(3, std::move(nbrs), std::move(eoc), std::move(ev));
    const auto report = validate_grid(g);
    CHECK(report.has("index-out-of-range"));
  }
  SECTION("duplicate and degenerate edges") {
    std::vector<std::array<CellId, 3>> nbrs(1, {TriGrid::no_neighbor, TriGrid::no_neighbor,
                                                TriGrid::no_neighbor});
    std::vector<std::array<EdgeId, 3>> eoc = {{0, 0, 1}};
    std::vector<std::array<VertexId, 2>> ev = {{0, 1}, {2, 2}};
    const TriGrid g(3, std::move(nbrs), std::move(eoc), std::move(ev));
    const auto report = validate_grid(g);
    CHECK(report.has("duplicate-edge"));
    CHECK(report.has("degenerate-edge"));
  }
}

TEST_CASE("nearest_cell picks the closest center", "[grid]") {
  SECTION("query exactly at a cell center") {
    const auto g = generate_hex_patch(2);
    for (CellId c : {0, 3, 7}) {
      CAPTURE(c);
      CHECK(nearest_cell(g, g.lon(c), g.lat(c)) == c);
    }
  }
  SECTION("monotone distance") {
    std::vector<std::array<CellId, 3>> nbrs(
        2, {TriGrid::no_neighbor, TriGrid::no_neighbor, TriGrid::no_neighbor});
    std::vector<std::array<EdgeId, 3>> eoc = {{0, 1, 2}, {3, 4, 5}};
    std::vector<std::array<VertexId, 2>> ev = {{0, 1}, {1, 2}, {2, 0},
                                               {3, 4}, {4, 5}, {5, 3}};
    const TriGrid g(6, std::move(nbrs), std::move(eoc), std::move(ev), {0.0, 10.0}, {0.0, 0.0});
    CHECK(nearest_cell(g, 1.0, 0.0) == 0);
    CHECK(nearest_cell(g, 9.0, 0.0) == 1);
  }
  SECTION("ties break to the smallest cell id") {
    std::vector<std::array<CellId, 3>> nbrs(
        2, {TriGrid::no_neighbor, TriGrid::no_neighbor, TriGrid::no_neighbor});
    std::vector<std::array<EdgeId, 3>> eoc = {{0, 1, 2}, {3, 4, 5}};
    std::vector<std::array<VertexId, 2>> ev = {{0, 1}, {1, 2}, {2, 0},
                                               {3, 4}, {4, 5}, {5, 3}};
    const TriGrid g(6, std::move(nbrs), std::move(eoc), std::move(ev), {-5.0, 5.0}, {0.0, 0.0});
    // linear-scan oracle with explicit distances
    const double d0 = haversine_distance(0.0, 0.0, g.lon(0), g.lat(0));
    const double d1 = haversine_distance(0.0, 0.0, g.lon(1), g.lat(1));
    REQUIRE(d0 == d1);
    CHECK(nearest_cell(g, 0.0, 0.0) == 0);
  }
  SECTION("missing coordinates throw") {
    std::vector<std::array<CellId, 3>> nbrs(1, {TriGrid::no_neighbor, TriGrid::no_neighbor,
                                                TriGrid::no_neighbor});
    std::vector<std::array<EdgeId, 3>> eoc = {{0, 1, 2}};
    std::vector<std::array<VertexId, 2>> ev = {{0, 1}, {1, 2}, {2, 0}};
    const TriGrid g(3, std::move(nbrs), std::move(eoc), std::move(ev));
    CHECK_THROWS_AS(nearest_cell(g, 0.0, 0.0), GridError);
  }
}
