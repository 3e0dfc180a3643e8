#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hibi/base.hpp"
#include "hibi/poset.hpp"

namespace hibi {

/// A finite lattice with precomputed order masks, meet/join tables, covers
/// and ranks. Values are immutable after construction and safe to share
/// across threads.
struct Lattice {
  int n = 0;
  std::vector<Mask> up;    // up[i] = { j : i <= j }
  std::vector<Mask> down;  // down[i] = { j : j <= i }
  std::vector<std::int16_t> meet_table, join_table;  // n*n, row-major
  std::vector<Mask> lower_covers, upper_covers;
  std::vector<int> rank;  // longest chain from bottom
  int bottom = -1, top = -1;

  /// When the lattice came from a poset (or via the Birkhoff map),
  /// element_downsets[i] is the downset of `source poset` realizing i.
  std::vector<Mask> element_downsets;

  int meet(int a, int b) const { return meet_table[a * n + b]; }
  int join(int a, int b) const { return join_table[a * n + b]; }
  bool leq(int a, int b) const { return has_bit(up[a], b); }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
  Mask interval_mask(int lo, int hi) const { return up[lo] & down[hi]; }
  int num_lower_covers(int x) const { return popcount(lower_covers[x]); }
  int num_upper_covers(int x) const { return popcount(upper_covers[x]); }
};

struct Interval {
  int lo, hi;
  bool operator==(const Interval&) const = default;
};

/// Unordered pair {c,d} with c v d = hi, c ^ d = lo and {c,d} != {lo,hi}.
struct ComplementarySet {
  int c, d;  // normalized c < d
  bool operator==(const ComplementarySet&) const = default;
};

namespace detail {

inline void finish_lattice_tables(Lattice& L) {
  const int n = L.n;
  L.meet_table.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_table.assign(static_cast<std::size_t>(n) * n, -1);
  // meet: maximum of common lower bounds; join: minimum of common upper bounds
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Mask lower = L.down[a] & L.down[b];
      int mt = -1;
      for_each_bit(lower, [&](int x) {
        if (subset_of(lower, L.down[x])) mt = x;
      });
      if (mt < 0) throw NotALattice("pair has no meet", a, b);
      Mask upper = L.up[a] & L.up[b];
      int jn = -1;
      for_each_bit(upper, [&](int x) {
        if (subset_of(upper, L.up[x])) jn = x;
      });
      if (jn < 0) throw NotALattice("pair has no join", a, b);
      L.meet_table[a * n + b] = L.meet_table[b * n + a] = static_cast<std::int16_t>(mt);
      L.join_table[a * n + b] = L.join_table[b * n + a] = static_cast<std::int16_t>(jn);
    }

  L.lower_covers.assign(n, 0);
  L.upper_covers.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    Mask strictly_below = L.down[x] & ~bit(x);
    for_each_bit(strictly_below, [&](int y) {
      Mask between = L.up[y] & L.down[x] & ~bit(x) & ~bit(y);
      if (between == 0) {
        L.lower_covers[x] |= bit(y);
        L.upper_covers[y] |= bit(x);
      }
    });
  }

  // bottom/top and rank by longest chain
  L.bottom = -1;
  L.top = -1;
  for (int x = 0; x < n; ++x) {
    if (popcount(L.down[x]) == 1) L.bottom = x;
    if (popcount(L.up[x]) == 1) L.top = x;
  }
  if (L.bottom < 0 || L.top < 0 || L.down[L.top] != (n == 64 ? ~Mask{0} : bit(n) - 1))
    throw NotALattice("missing unique bottom or top", L.bottom, L.top);
  L.rank.assign(n, 0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return popcount(L.down[a]) < popcount(L.down[b]); });
  for (int x : order)
    for_each_bit(L.lower_covers[x],
                 [&](int y) { L.rank[x] = std::max(L.rank[x], L.rank[y] + 1); });
}

inline void verify_lattice_axioms(const Lattice& L) {
  const int n = L.n;
  for (int a = 0; a < n; ++a) {
    if (L.meet(a, a) != a || L.join(a, a) != a) throw Defect("idempotence failed");
    for (int b = 0; b < n; ++b) {
      if (L.meet(a, b) != L.meet(b, a) || L.join(a, b) != L.join(b, a))
        throw Defect("commutativity failed");
      if (L.meet(a, L.join(a, b)) != a || L.join(a, L.meet(a, b)) != a)
        throw Defect("absorption failed");
      bool le = L.leq(a, b);
      if (le != (L.meet(a, b) == a) || le != (L.join(a, b) == b))
        throw Defect("order/operation compatibility failed");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (L.meet(L.meet(a, b), c) != L.meet(a, L.meet(b, c)))
          throw Defect("meet associativity failed");
        if (L.join(L.join(a, b), c) != L.join(a, L.join(b, c)))
          throw Defect("join associativity failed");
      }
}

}  // namespace detail

/// Builds a lattice from a full reflexive leq matrix. Throws NotAPartialOrder
/// or NotALattice (with a witness pair lacking a meet or join).
inline Lattice build_lattice(const std::vector<std::vector<bool>>& leq,
                             bool verify_axioms = true) {
  const int n = static_cast<int>(leq.size());
  if (n == 0 || n > 64) throw SizeExceeded("lattices are limited to 1..64 elements");
  for (const auto& row : leq)
    if (static_cast<int>(row.size()) != n) throw NotAPartialOrder("leq matrix not square");
  for (int i = 0; i < n; ++i)
    if (!leq[i][i]) throw NotAPartialOrder("leq not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) throw NotAPartialOrder("leq not antisymmetric");
      if (leq[i][j])
        for (int k = 0; k < n; ++k)
          if (leq[j][k] && !leq[i][k]) throw NotAPartialOrder("leq not transitive");
    }
  Lattice L;
  L.n = n;
  L.up.assign(n, 0);
  L.down.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j]) {
        L.up[i] |= bit(j);
        L.down[j] |= bit(i);
      }
  detail::finish_lattice_tables(L);
  if (verify_axioms) detail::verify_lattice_axioms(L);
  return L;
}

/// Builds a lattice from strict cover pairs (lower, upper) on 0..n-1.
inline Lattice build_lattice_from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                                         bool verify_axioms = true) {
  auto strict = detail::strict_closure_from_edges(n, covers);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    leq[i][i] = true;
    for_each_bit(strict[i], [&](int j) { leq[i][j] = true; });
  }
  return build_lattice(leq, verify_axioms);
}

/// A lattice realized as the lattice of downsets of a poset: meet is
/// intersection, join is union, rank is cardinality.
struct IdealLattice {
  Lattice lat;
  Poset poset;

  int element_of(Mask downset) const {
    for (int i = 0; i < lat.n; ++i)
      if (lat.element_downsets[i] == downset) return i;
    throw Error("downset is not an element of this ideal lattice");
  }
};

inline IdealLattice ideal_lattice(const Poset& p, std::size_t count_cap = 64) {
  auto downs = enumerate_down_sets(p, count_cap == 0 ? (std::size_t{1} << 20) : count_cap);
  if (downs.size() > 64) throw SizeExceeded("ideal lattice exceeds 64 elements");
  const int n = static_cast<int>(downs.size());
  IdealLattice il;
  il.poset = p;
  Lattice& L = il.lat;
  L.n = n;
  L.up.assign(n, 0);
  L.down.assign(n, 0);
  L.element_downsets.resize(n);
  std::map<Mask, int> index;
  for (int i = 0; i < n; ++i) {
    L.element_downsets[i] = downs[i].bits;
    index[downs[i].bits] = i;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (subset_of(downs[a].bits, downs[b].bits)) {
        L.up[a] |= bit(b);
        L.down[b] |= bit(a);
      }
  detail::finish_lattice_tables(L);
  // meet/join must be intersection/union, rank must equal cardinality
  for (int a = 0; a < n; ++a) {
    if (L.rank[a] != popcount(downs[a].bits))
      throw Defect("ideal lattice rank differs from downset cardinality");
    for (int b = 0; b < n; ++b) {
      if (L.meet(a, b) != index.at(downs[a].bits & downs[b].bits) ||
          L.join(a, b) != index.at(downs[a].bits | downs[b].bits))
        throw Defect("ideal lattice meet/join differ from intersection/union");
    }
  }
  return il;
}

/// The subposet of join-irreducible elements (exactly one lower cover).
struct JoinIrreducibles {
  Poset poset;
  std::vector<int> lattice_elements;  // poset index -> lattice element
};

inline JoinIrreducibles join_irreducibles(const Lattice& L) {
  JoinIrreducibles ji;
  for (int x = 0; x < L.n; ++x)
    if (x != L.bottom && L.num_lower_covers(x) == 1) ji.lattice_elements.push_back(x);
  const int m = static_cast<int>(ji.lattice_elements.size());
  std::vector<std::string> labels;
  labels.reserve(m);
  for (int k = 0; k < m; ++k) labels.push_back("e" + std::to_string(ji.lattice_elements[k]));
  std::vector<std::pair<std::string, std::string>> covers;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      int x = ji.lattice_elements[a], y = ji.lattice_elements[b];
      if (!L.less(x, y)) continue;
      bool direct = true;
      for (int c = 0; c < m && direct; ++c)
        if (c != a && c != b) {
          int z = ji.lattice_elements[c];
          if (L.less(x, z) && L.less(z, y)) direct = false;
        }
      if (direct) covers.emplace_back(labels[a], labels[b]);
    }
  ji.poset = build_poset(labels, covers);
  return ji;
}

/// Realizes a distributive lattice as the ideal lattice of its
/// join-irreducibles without relabeling: element ids are preserved and
/// element_downsets[i] becomes the set of join-irreducibles below i.
inline IdealLattice birkhoff(const Lattice& L) {
  JoinIrreducibles ji = join_irreducibles(L);
  IdealLattice il;
  il.lat = L;
  il.poset = ji.poset;
  il.lat.element_downsets.assign(L.n, 0);
  for (int x = 0; x < L.n; ++x)
    for (std::size_t k = 0; k < ji.lattice_elements.size(); ++k)
      if (L.leq(ji.lattice_elements[k], x)) il.lat.element_downsets[x] |= bit(static_cast<int>(k));
  for (int a = 0; a < L.n; ++a)
    for (int b = 0; b < L.n; ++b) {
      if (a < b && il.lat.element_downsets[a] == il.lat.element_downsets[b])
        throw Error("birkhoff map not injective: lattice is not distributive");
      if (L.leq(a, b) != subset_of(il.lat.element_downsets[a], il.lat.element_downsets[b]))
        throw Error("birkhoff map not an order embedding: lattice is not distributive");
    }
  return il;
}

// ---------------------------------------------------------------------------
// Distributivity, run as two independent tests that must agree.
// ---------------------------------------------------------------------------

enum class ForbiddenKind { None, M3, N5 };

struct DistributivityResult {
  bool distributive = true;
  std::optional<std::array<int, 3>> law_witness;         // a,b,c with a^(bvc) != (a^b)v(a^c)
  std::optional<std::array<int, 5>> sublattice_witness;  // closed 5-subset, bottom first
  ForbiddenKind forbidden = ForbiddenKind::None;
};

namespace detail {

inline std::optional<std::array<int, 5>> find_m3(const Lattice& L) {
  for (int x = 0; x < L.n; ++x)
    for (int y = x + 1; y < L.n; ++y) {
      if (L.comparable(x, y)) continue;
      for (int z = y + 1; z < L.n; ++z) {
        if (L.comparable(x, z) || L.comparable(y, z)) continue;
        int m = L.meet(x, y);
        if (L.meet(y, z) != m || L.meet(x, z) != m) continue;
        int j = L.join(x, y);
        if (L.join(y, z) != j || L.join(x, z) != j) continue;
        return std::array<int, 5>{m, x, y, z, j};
      }
    }
  return std::nullopt;
}

inline std::optional<std::array<int, 5>> find_n5(const Lattice& L) {
  for (int a = 0; a < L.n; ++a)
    for (int b = 0; b < L.n; ++b) {
      if (!L.less(b, a)) continue;
      for (int c = 0; c < L.n; ++c) {
        if (L.comparable(c, a) || L.comparable(c, b)) continue;
        if (L.meet(c, a) == L.meet(c, b) && L.join(c, a) == L.join(c, b))
          return std::array<int, 5>{L.meet(c, a), b, a, c, L.join(c, a)};
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Distributivity by (i) the distributive law over all triples and (ii) a
/// search for a 5-element sublattice isomorphic to M3 or N5. Throws Defect
/// if the routes disagree.
inline DistributivityResult is_distributive(const Lattice& L) {
  DistributivityResult r;
  for (int a = 0; a < L.n && !r.law_witness; ++a)
    for (int b = 0; b < L.n && !r.law_witness; ++b)
      for (int c = 0; c < L.n; ++c)
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) {
          r.law_witness = std::array<int, 3>{a, b, c};
          break;
        }
  if (auto m3 = detail::find_m3(L)) {
    r.sublattice_witness = m3;
    r.forbidden = ForbiddenKind::M3;
  } else if (auto n5 = detail::find_n5(L)) {
    r.sublattice_witness = n5;
    r.forbidden = ForbiddenKind::N5;
  }
  if (r.law_witness.has_value() != r.sublattice_witness.has_value())
    throw Defect("distributivity tests disagree");
  r.distributive = !r.law_witness.has_value();
  return r;
}

// ---------------------------------------------------------------------------
// Complements and the URC taxonomy.
// ---------------------------------------------------------------------------

/// All complements of c within [lo,hi]: d with c v d = hi and c ^ d = lo.
inline std::vector<int> complements_in_interval(const Lattice& L, Interval iv, int c) {
  if (!L.leq(iv.lo, c) || !L.leq(c, iv.hi)) throw Error("element outside interval");
  std::vector<int> out;
  for_each_bit(L.interval_mask(iv.lo, iv.hi), [&](int d) {
    if (L.join(c, d) == iv.hi && L.meet(c, d) == iv.lo) out.push_back(d);
  });
  return out;
}

/// The unique complement when it exists. Multiple complements raise
/// MultipleComplements for non-distributive lattices and Defect for
/// distributive ones (where uniqueness is a theorem).
inline std::optional<int> complement_in_interval(const Lattice& L, Interval iv, int c) {
  auto cands = complements_in_interval(L, iv, c);
  if (cands.empty()) return std::nullopt;
  if (cands.size() == 1) return cands[0];
  if (is_distributive(L).distributive)
    throw Defect("distributive lattice produced multiple complements");
  throw MultipleComplements("multiple complements in interval", cands);
}

inline std::vector<ComplementarySet> complementary_sets(const Lattice& L, Interval iv) {
  if (!L.leq(iv.lo, iv.hi)) throw Error("not an interval");
  std::vector<ComplementarySet> out;
  Mask m = L.interval_mask(iv.lo, iv.hi);
  for_each_bit(m, [&](int c) {
    for_each_bit(m, [&](int d) {
      if (d <= c) return;
      if (L.join(c, d) != iv.hi || L.meet(c, d) != iv.lo) return;
      if (c == iv.lo && d == iv.hi) return;
      out.push_back({c, d});
    });
  });
  return out;
}

struct CondUrcResult {
  bool conditionally_urc = true;
  std::optional<Interval> witness;  // interval with two complementary sets
  std::optional<std::array<ComplementarySet, 2>> sets;
};

/// True iff every interval has at most one complementary set.
inline CondUrcResult is_conditionally_urc(const Lattice& L) {
  for (int a = 0; a < L.n; ++a)
    for (int b = 0; b < L.n; ++b) {
      if (!L.leq(a, b)) continue;
      auto sets = complementary_sets(L, {a, b});
      if (sets.size() > 1)
        return {false, Interval{a, b}, std::array<ComplementarySet, 2>{sets[0], sets[1]}};
    }
  return {};
}

inline bool interval_is_chain(const Lattice& L, Interval iv) {
  Mask m = L.interval_mask(iv.lo, iv.hi);
  bool chain = true;
  for_each_bit(m, [&](int x) {
    if (!subset_of(m, L.up[x] | L.down[x])) chain = false;
  });
  return chain;
}

struct UrcResult {
  bool urc = true;
  std::optional<Interval> witness;  // non-chain interval without a unique complementary set
  int witness_set_count = 0;
};

/// True iff every interval is a chain or has exactly one complementary set.
inline UrcResult is_urc(const Lattice& L) {
  for (int a = 0; a < L.n; ++a)
    for (int b = 0; b < L.n; ++b) {
      if (!L.leq(a, b)) continue;
      if (interval_is_chain(L, {a, b})) continue;
      auto sets = complementary_sets(L, {a, b});
      if (sets.size() != 1)
        return {false, Interval{a, b}, static_cast<int>(sets.size())};
    }
  return {};
}

struct NeighborBounds {
  int max_lower = 0, max_upper = 0;
  int lower_witness = -1, upper_witness = -1;
};

inline NeighborBounds neighbor_bounds(const Lattice& L) {
  NeighborBounds nb;
  for (int x = 0; x < L.n; ++x) {
    if (L.num_lower_covers(x) > nb.max_lower) {
      nb.max_lower = L.num_lower_covers(x);
      nb.lower_witness = x;
    }
    if (L.num_upper_covers(x) > nb.max_upper) {
      nb.max_upper = L.num_upper_covers(x);
      nb.upper_witness = x;
    }
  }
  return nb;
}

}  // namespace hibi
