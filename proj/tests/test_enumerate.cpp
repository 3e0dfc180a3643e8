#include "doctest.h"

#include <set>

#include "hibi/enumerate.hpp"
#include "hibi/relations.hpp"

using namespace hibi;

namespace {

// brute-force oracle: try all 3^(n(n-1)/2) pair assignments, keep the
// transitive ones, and encode each poset as its leq matrix bits
std::set<std::vector<Mask>> brute_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::vector<Mask>> out;
  std::vector<int> state(pairs.size(), 0);
  while (true) {
    std::vector<Mask> above(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (state[k] == 1) above[pairs[k].first] |= bit(pairs[k].second);
      if (state[k] == 2) above[pairs[k].second] |= bit(pairs[k].first);
    }
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for_each_bit(above[i], [&](int j) {
        if (!subset_of(above[j], above[i])) transitive = false;
      });
    if (transitive) out.insert(above);
    std::size_t k = 0;
    for (; k < pairs.size(); ++k) {
      if (++state[k] < 3) break;
      state[k] = 0;
    }
    if (k == pairs.size()) break;
  }
  return out;
}

std::vector<Mask> strict_encoding(const Poset& p) {
  std::vector<Mask> enc(p.size());
  for (int i = 0; i < p.size(); ++i) enc[i] = p.above[i] & ~bit(i);
  return enc;
}

}  // namespace

TEST_CASE("labeled poset counts") {
  CHECK(all_labeled_posets(0).size() == 1);
  CHECK(all_labeled_posets(1).size() == 1);
  CHECK(all_labeled_posets(2).size() == 3);
  CHECK(all_labeled_posets(3).size() == 19);
  CHECK(all_labeled_posets(4).size() == 219);
  CHECK_THROWS_AS(all_labeled_posets(8), SizeExceeded);
}

TEST_CASE("labeled enumeration matches the brute-force filter") {
  for (int n : {2, 3, 4}) {
    auto expect = brute_posets(n);
    std::set<std::vector<Mask>> got;
    for (const Poset& p : all_labeled_posets(n)) {
      CHECK(got.insert(strict_encoding(p)).second);  // no duplicates
    }
    for (const Poset& p : all_labeled_posets(n)) got.insert(strict_encoding(p));
    CHECK(got == expect);
  }
}

TEST_CASE("labeled poset count at n=5" * doctest::timeout(60)) {
  CHECK(all_labeled_posets(5).size() == 4231);
}

TEST_CASE("iso-deduplicated poset counts") {
  CHECK(posets_up_to_iso(1).size() == 1);
  CHECK(posets_up_to_iso(2).size() == 2);
  CHECK(posets_up_to_iso(3).size() == 5);
  CHECK(posets_up_to_iso(4).size() == 16);
  CHECK(posets_up_to_iso(5).size() == 63);
}

TEST_CASE("lattice census up to iso") {
  CHECK(lattices_up_to_iso(1).size() == 1);
  CHECK(lattices_up_to_iso(2).size() == 1);
  CHECK(lattices_up_to_iso(3).size() == 1);
  CHECK(lattices_up_to_iso(4).size() == 2);
  CHECK(lattices_up_to_iso(5).size() == 5);
  CHECK(lattices_up_to_iso(6).size() == 15);
  CHECK(lattices_up_to_iso(7).size() == 53);
}

TEST_CASE("lattice census at n=8 and the distributive count" * doctest::timeout(120)) {
  auto ls = lattices_up_to_iso(8);
  CHECK(ls.size() == 222);
  int distributive = 0;
  for (const Lattice& L : ls)
    if (is_distributive(L).distributive) ++distributive;
  CHECK(distributive == 15);
}

TEST_CASE("cover routes and the Birkhoff round trip over all 6-element posets" *
          doctest::timeout(300)) {
  long long checked = 0;
  enumerate_posets(6, [&](const Poset& p) {
    ++checked;
    bool width2 = width_le_two(p).le_two;
    CHECK(two_chain_cover(p).has_value() == width2);
    CHECK((min_chain_partition(p) <= 2) == width2);
    auto ind = two_chain_cover_inductive(p);
    CHECK(!ind.construction_failed);
    CHECK(ind.cover.has_value() == width2);
    IdealLattice il = ideal_lattice(p);
    CHECK(poset_isomorphic(join_irreducibles(il.lat).poset, p));
  });
  CHECK(checked == 130023);
}

TEST_CASE("five-element lattices contain M3 and N5 exactly once each") {
  auto ls = lattices_up_to_iso(5);
  int m3 = 0, n5 = 0, distributive = 0;
  for (const Lattice& L : ls) {
    auto r = is_distributive(L);
    if (r.distributive) ++distributive;
    if (r.forbidden == ForbiddenKind::M3) ++m3;
    if (r.forbidden == ForbiddenKind::N5) ++n5;
  }
  CHECK(distributive == 3);
  CHECK(m3 == 1);
  CHECK(n5 == 1);
}
