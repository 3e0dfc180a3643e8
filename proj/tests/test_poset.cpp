#include "doctest.h"

#include <algorithm>
#include <set>

#include "hibi/poset.hpp"

using namespace hibi;

namespace {

// Reachability oracle: Floyd-Warshall over the raw cover pairs, no bitsets.
bool reachable(int n, const std::vector<std::pair<int, int>>& covers, int a, int b) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) r[i][i] = true;
  for (auto [p, q] : covers) r[p][q] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r[a][b];
}

Poset bowtie() {
  // a,b below both c,d
  return make_poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

}  // namespace

TEST_CASE("build_poset validates and closes") {
  SUBCASE("antichain") {
    Poset p = make_poset(3, {});
    CHECK(p.size() == 3);
    CHECK(p.covers.empty());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(p.leq(i, j) == (i == j));
  }
  SUBCASE("two-chain") {
    Poset p = make_poset(2, {{0, 1}});
    CHECK(p.leq(0, 1));
    CHECK(!p.leq(1, 0));
    CHECK(p.covers == std::vector<std::pair<int, int>>{{0, 1}});
  }
  SUBCASE("bowtie closure matches reachability oracle") {
    std::vector<std::pair<int, int>> covers{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    Poset p = bowtie();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(p.leq(i, j) == reachable(4, covers, i, j));
  }
  SUBCASE("cycles rejected") {
    CHECK_THROWS_AS(make_poset(2, {{0, 1}, {1, 0}}), CycleDetected);
    CHECK_THROWS_AS(make_poset(3, {{0, 1}, {1, 2}, {2, 0}}), CycleDetected);
  }
  SUBCASE("unknown labels rejected") {
    CHECK_THROWS_AS(build_poset({"a", "b"}, {{"a", "z"}}), UnknownLabel);
    CHECK_THROWS_AS(build_poset({"a", "a"}, {}), UnknownLabel);
  }
  SUBCASE("redundant covers dropped with a record") {
    Poset p = make_poset(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(p.covers == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(p.dropped_covers == std::vector<std::pair<int, int>>{{0, 2}});
  }
}

TEST_CASE("enumerate_down_sets") {
  CHECK(enumerate_down_sets(make_poset(3, {})).size() == 8);
  CHECK(enumerate_down_sets(make_poset(3, {{0, 1}, {1, 2}})).size() == 4);

  // bowtie: filter all 16 subsets with a plain loop as the oracle
  Poset p = bowtie();
  std::set<Mask> expect;
  for (Mask a = 0; a < 16; ++a) {
    bool down = true;
    for (int i = 0; i < 4 && down; ++i)
      if (has_bit(a, i))
        for (int j = 0; j < 4; ++j)
          if (p.leq(j, i) && !has_bit(a, j)) down = false;
    if (down) expect.insert(a);
  }
  auto ds = enumerate_down_sets(p);
  CHECK(ds.size() == 7);
  CHECK(ds.size() == expect.size());
  for (auto& d : ds) CHECK(expect.count(d.bits) == 1);
  // sorted by (cardinality, bits)
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    auto &a = ds[i], &b = ds[i + 1];
    CHECK((a.cardinality() < b.cardinality() ||
           (a.cardinality() == b.cardinality() && a.bits < b.bits)));
  }
  CHECK_THROWS_AS(enumerate_down_sets(make_poset(4, {}), 10), SizeExceeded);
}

TEST_CASE("minimal_generators regenerate their downset") {
  Poset p = bowtie();
  // {a,b,c} has unique maximal element c
  DownSet abc{bit(0) | bit(1) | bit(2)};
  CHECK(minimal_generators(p, abc) == std::vector<int>{2});

  Poset chain = make_poset(4, {{0, 1}, {1, 2}, {2, 3}});
  for (auto d : enumerate_down_sets(chain))
    if (d.bits != 0) CHECK(minimal_generators(chain, d).size() == 1);

  Poset anti = make_poset(3, {});
  CHECK(minimal_generators(anti, DownSet{bit(0) | bit(1)}) == std::vector<int>{0, 1});

  // regeneration + antichain property over every downset of every small poset
  for (const Poset* q : {&p, &chain, &anti}) {
    for (auto d : enumerate_down_sets(*q)) {
      auto gens = minimal_generators(*q, d);
      CHECK(down_closure(*q, gens) == d.bits);
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
          CHECK(!q->comparable(gens[i], gens[j]));
      // removing a maximal element leaves a downset
      for (int g : gens) CHECK(is_down_set(*q, d.bits & ~bit(g)));
    }
  }
}

TEST_CASE("width_le_two") {
  auto anti = width_le_two(make_poset(3, {}));
  CHECK(!anti.le_two);
  CHECK(anti.antichain == std::array<int, 3>{0, 1, 2});
  CHECK(width_le_two(bowtie()).le_two);
  CHECK(width_le_two(make_poset(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})).le_two);
}

TEST_CASE("two_chain_cover: three routes agree") {
  SUBCASE("bowtie") {
    Poset p = bowtie();
    auto cc = two_chain_cover(p);
    REQUIRE(cc.has_value());
    CHECK(is_chain_cover(p, *cc));
    CHECK(min_chain_partition(p) <= 2);
    auto ind = two_chain_cover_inductive(p);
    REQUIRE(ind.cover.has_value());
    CHECK(is_chain_cover(p, *ind.cover));
  }
  SUBCASE("chain gets an empty second chain") {
    Poset p = make_poset(3, {{0, 1}, {1, 2}});
    auto cc = two_chain_cover(p);
    REQUIRE(cc.has_value());
    CHECK(cc->chain_c.size() == 3);
    CHECK(cc->chain_d.empty());
    CHECK(min_chain_partition(p) == 1);
  }
  SUBCASE("antichain-3 has none") {
    Poset p = make_poset(3, {});
    CHECK(!two_chain_cover(p).has_value());
    CHECK(min_chain_partition(p) == 3);
    auto ind = two_chain_cover_inductive(p);
    CHECK(!ind.cover.has_value());
    CHECK(!ind.construction_failed);  // width gate, not a construction break
  }
  SUBCASE("canonical cover is deterministic and lex-least") {
    // two incomparable 1-chains: element 0 must land in C
    Poset p = make_poset(2, {});
    auto cc = two_chain_cover(p);
    REQUIRE(cc.has_value());
    CHECK(cc->chain_c == std::vector<int>{0});
    CHECK(cc->chain_d == std::vector<int>{1});
  }
}

TEST_CASE("all_two_chain_covers includes mirrors") {
  Poset p = make_poset(2, {});
  auto all = all_two_chain_covers(p);
  CHECK(all.size() == 2);  // ({0},{1}) and ({1},{0})
}
