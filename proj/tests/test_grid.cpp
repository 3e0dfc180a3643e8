#include "doctest.h"

#include <set>

#include "hibi/grid.hpp"

using namespace hibi;

namespace {

Poset bowtie() { return make_poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

// c1 < c2, d1 < d2, c1 < d2: ideal lattice is the 3x3 grid minus (0,2)
Poset grid_minus_corner_poset() { return make_poset(4, {{0, 1}, {2, 3}, {0, 3}}); }

GridEmbedding embed(const Poset& p) {
  IdealLattice il = ideal_lattice(p);
  auto cover = two_chain_cover(p);
  REQUIRE(cover.has_value());
  return grid_embedding(il, *cover);
}

}  // namespace

TEST_CASE("grid_embedding") {
  SUBCASE("bowtie misses the two off corners") {
    GridEmbedding e = embed(bowtie());
    CHECK(e.m == 2);
    CHECK(e.n == 2);
    CHECK(e.image.size() == 7);
    std::set<std::pair<int, int>> pts;
    for (auto p : e.image) pts.insert({p.i, p.j});
    CHECK(pts.size() == 7);
    CHECK(!pts.count({0, 2}));
    CHECK(!pts.count({2, 0}));
  }
  SUBCASE("two incomparable chains fill the grid") {
    GridEmbedding e = embed(make_poset(4, {{0, 1}, {2, 3}}));
    CHECK(e.image.size() == 9);
    CHECK((e.m + 1) * (e.n + 1) == 9);
  }
  SUBCASE("chain poset maps to a column") {
    GridEmbedding e = embed(make_poset(3, {{0, 1}, {1, 2}}));
    CHECK(e.m == 3);
    CHECK(e.n == 0);
    CHECK(e.image.size() == 4);
  }
  SUBCASE("invalid cover rejected") {
    IdealLattice il = ideal_lattice(bowtie());
    CHECK_THROWS_AS(grid_embedding(il, ChainCover{{0, 1}, {2, 3}}), NotACover);
  }
}

TEST_CASE("is_full_sublattice") {
  CHECK(is_full_sublattice(embed(bowtie())));
  CHECK(is_full_sublattice(embed(make_poset(4, {{0, 1}, {2, 3}}))));
  // missing intermediate points: no unit-step chain
  CHECK(!is_full_sublattice(1, 1, {{0, 0}, {1, 1}}));
  // full grid given as raw points
  std::vector<GridPoint> full;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) full.push_back({i, j});
  CHECK(is_full_sublattice(2, 2, full));
}

TEST_CASE("classify_corners") {
  SUBCASE("bowtie has one critical corner at (1,1)") {
    auto corners = classify_corners(embed(bowtie()));
    REQUIRE(corners.size() == 1);
    CHECK(corners[0].at == GridPoint{1, 1});
    CHECK(corners[0].kind == CornerKind::Critical);
  }
  SUBCASE("grid minus one corner has a single non-critical corner at (1,1)") {
    GridEmbedding e = embed(grid_minus_corner_poset());
    auto corners = classify_corners(e);
    REQUIRE(corners.size() == 1);
    CHECK(corners[0].at == GridPoint{1, 1});
    CHECK(corners[0].kind != CornerKind::Critical);
  }
  SUBCASE("full grid has no corners") {
    CHECK(classify_corners(embed(make_poset(4, {{0, 1}, {2, 3}}))).empty());
  }
}

TEST_CASE("is_chain_ladder") {
  CHECK(is_chain_ladder(classify_corners(embed(grid_minus_corner_poset()))).chain_ladder);
  CHECK(is_chain_ladder(classify_corners(embed(make_poset(4, {{0, 1}, {2, 3}})))).chain_ladder);
  // artificial incomparable corner pair
  std::vector<Corner> bad{{GridPoint{1, 2}, CornerKind::Upper},
                          {GridPoint{2, 1}, CornerKind::Lower}};
  auto r = is_chain_ladder(bad);
  CHECK(!r.chain_ladder);
  REQUIRE(r.witness.has_value());
  // comparable but sharing a coordinate
  std::vector<Corner> shared{{GridPoint{1, 1}, CornerKind::Upper},
                             {GridPoint{1, 2}, CornerKind::Lower}};
  CHECK(!is_chain_ladder(shared).chain_ladder);
}

TEST_CASE("is_grid_iso") {
  auto d = is_grid_iso(ideal_lattice(make_poset(2, {})).lat);
  REQUIRE(d.has_value());
  CHECK(*d == std::pair<int, int>{1, 1});

  auto g = is_grid_iso(ideal_lattice(make_poset(4, {{0, 1}, {2, 3}})).lat);
  REQUIRE(g.has_value());
  CHECK(*g == std::pair<int, int>{2, 2});

  CHECK(!is_grid_iso(ideal_lattice(bowtie()).lat).has_value());

  auto c = is_grid_iso(ideal_lattice(make_poset(3, {{0, 1}, {1, 2}})).lat);
  REQUIRE(c.has_value());
  CHECK(*c == std::pair<int, int>{3, 0});
}

TEST_CASE("embedding invariants over every width-2 poset cover") {
  for (const Poset& p : {bowtie(), grid_minus_corner_poset(), make_poset(4, {{0, 1}, {2, 3}}),
                         make_poset(5, {{0, 1}, {1, 2}, {3, 4}})}) {
    for (const auto& cover : all_two_chain_covers(p)) {
      GridEmbedding e = grid_embedding(ideal_lattice(p), cover);
      CHECK(is_full_sublattice(e));
    }
  }
}
