#include <sstream>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "tricubo/grid_io.hpp"
#include "tricubo/hex_patch.hpp"

using namespace tricubo;

namespace {

nlohmann::json grid_json(const TriGrid& g) {
  std::stringstream ss;
  save_grid(ss, g);
  return nlohmann::json::parse(ss.str());
}

TriGrid load_from_json(const nlohmann::json& j, const GridLoadOptions& opt = {}) {
  std::stringstream ss(j.dump());
  return load_grid(ss, opt);
}

}  // namespace

TEST_CASE("grid save/load round-trips", "[grid_io]") {
  const auto g = generate_hex_patch(3);
  std::stringstream ss;
  save_grid(ss, g);
  const auto back = load_grid(ss);
  CHECK(back == g);
}

TEST_CASE("loader normalizes 1-based indices and foreign sentinels", "[grid_io]") {
  const auto g = generate_hex_patch(2);
  auto j = grid_json(g);
  // rewrite the canonical file the way a model with 1-based ids and a
  // -9999 missing-neighbor marker would have produced it
  for (auto& row : j["neighbor_cell_index"])
    for (auto& v : row) v = v.get<std::int64_t>() == -1 ? -9999 : v.get<std::int64_t>() + 1;
  for (auto& row : j["edge_of_cell"])
    for (auto& v : row) v = v.get<std::int64_t>() + 1;
  for (auto& row : j["edge_vertices"])
    for (auto& v : row) v = v.get<std::int64_t>() + 1;

  GridLoadOptions opt;
  opt.index_base = 1;
  opt.sentinel = -9999;
  const auto back = load_from_json(j, opt);
  CHECK(back == g);
}

TEST_CASE("single-triangle file loads", "[grid_io]") {
  const auto j = nlohmann::json::parse(R"({
    "n_cells": 1, "n_edges": 3, "n_vertices": 3,
    "neighbor_cell_index": [[-1, -1, -1]],
    "edge_of_cell": [[0, 1, 2]],
    "edge_vertices": [[0, 1], [1, 2], [2, 0]]
  })");
  const auto g = load_from_json(j);
  CHECK(g.n_cells() == 1);
  for (CellId nb : g.neighbors(0)) CHECK(nb == TriGrid::no_neighbor);
}

TEST_CASE("asymmetric neighbor lists are rejected at load", "[grid_io]") {
  auto j = grid_json(generate_hex_patch(1));
  // cell 0 lists cell 1, but cell 1 no longer lists cell 0
  for (auto& v : j["neighbor_cell_index"][1])
    if (v.get<std::int64_t>() == 0) v = -1;
  try {
    load_from_json(j);
    FAIL("expected GridError");
  } catch (const GridError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("asymmetric-adjacency") != std::string::npos);
    CHECK(msg.find("[0,1]") != std::string::npos);
  }
}

TEST_CASE("malformed grid files are rejected", "[grid_io]") {
  SECTION("not JSON") {
    std::stringstream ss("this is not json");
    CHECK_THROWS_AS(load_grid(ss), FormatError);
  }
  SECTION("dimension mismatch") {
    auto j = grid_json(generate_hex_patch(1));
    j["n_cells"] = 5;
    CHECK_THROWS_AS(load_from_json(j), FormatError);
  }
  SECTION("row with wrong width") {
    auto j = grid_json(generate_hex_patch(1));
    j["edge_vertices"][0] = {1, 2, 3};
    CHECK_THROWS_AS(load_from_json(j), FormatError);
  }
  SECTION("missing field") {
    auto j = grid_json(generate_hex_patch(1));
    j.erase("edge_of_cell");
    CHECK_THROWS_AS(load_from_json(j), FormatError);
  }
  SECTION("neighbor id out of range after base shift") {
    auto j = grid_json(generate_hex_patch(1));
    j["neighbor_cell_index"][0][0] = 17;
    CHECK_THROWS_AS(load_from_json(j), GridError);
  }
  SECTION("lon without lat") {
    auto j = grid_json(generate_hex_patch(1));
    j.erase("cell_lat");
    CHECK_THROWS_AS(load_from_json(j), FormatError);
  }
}

TEST_CASE("saved files are bitwise deterministic", "[grid_io]") {
  const auto g = generate_hex_patch(4);
  std::stringstream a, b;
  save_grid(a, g);
  save_grid(b, g);
  CHECK(a.str() == b.str());
}
