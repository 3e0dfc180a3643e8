#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hibi/base.hpp"
#include "hibi/lattice.hpp"
#include "hibi/poset.hpp"

namespace hibi {

/// A finite meet-semilattice: meets always exist, joins are partial and
/// recorded only where a least upper bound exists.
struct MeetSemilattice {
  int n = 0;
  std::vector<Mask> up, down;
  std::vector<std::int16_t> meet_table;
  std::vector<std::int16_t> join_table;  // -1 where no join exists
  std::vector<Mask> lower_covers, upper_covers;
  std::vector<int> rank;  // longest chain from bottom
  int bottom = -1;

  int meet(int a, int b) const { return meet_table[a * n + b]; }
  /// -1 when {a,b} has no least upper bound.
  int join(int a, int b) const { return join_table[a * n + b]; }
  bool leq(int a, int b) const { return has_bit(up[a], b); }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  Mask interval_mask(int lo, int hi) const { return up[lo] & down[hi]; }

  /// Join-irreducible elements: exactly one lower cover, bottom excluded.
  std::vector<int> join_irreducible_elements() const {
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
      if (x != bottom && popcount(lower_covers[x]) == 1) out.push_back(x);
    return out;
  }

  /// Number of join-irreducibles below x.
  int degree(int x) const {
    int d = 0;
    for (int j : join_irreducible_elements())
      if (leq(j, x)) ++d;
    return d;
  }
};

namespace detail {

inline void finish_semilattice_tables(MeetSemilattice& S) {
  const int n = S.n;
  S.meet_table.assign(static_cast<std::size_t>(n) * n, -1);
  S.join_table.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Mask lower = S.down[a] & S.down[b];
      int mt = -1;
      for_each_bit(lower, [&](int x) {
        if (subset_of(lower, S.down[x])) mt = x;
      });
      if (mt < 0) throw NotALattice("pair has no meet", a, b);
      S.meet_table[a * n + b] = S.meet_table[b * n + a] = static_cast<std::int16_t>(mt);
      Mask upper = S.up[a] & S.up[b];
      int jn = -1;
      for_each_bit(upper, [&](int x) {
        if (subset_of(upper, S.up[x])) jn = x;
      });
      if (jn >= 0)
        S.join_table[a * n + b] = S.join_table[b * n + a] = static_cast<std::int16_t>(jn);
    }
  S.lower_covers.assign(n, 0);
  S.upper_covers.assign(n, 0);
  for (int x = 0; x < n; ++x)
    for_each_bit(S.down[x] & ~bit(x), [&](int y) {
      if ((S.up[y] & S.down[x] & ~bit(x) & ~bit(y)) == 0) {
        S.lower_covers[x] |= bit(y);
        S.upper_covers[y] |= bit(x);
      }
    });
  S.bottom = -1;
  for (int x = 0; x < n; ++x)
    if (popcount(S.down[x]) == 1) {
      if (S.bottom >= 0) throw NotALattice("two minimal elements without a meet", S.bottom, x);
      S.bottom = x;
    }
  S.rank.assign(n, 0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return popcount(S.down[a]) < popcount(S.down[b]); });
  for (int x : order)
    for_each_bit(S.lower_covers[x],
                 [&](int y) { S.rank[x] = std::max(S.rank[x], S.rank[y] + 1); });
}

}  // namespace detail

inline MeetSemilattice semilattice_from_leq(const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(leq.size());
  if (n == 0 || n > 64) throw SizeExceeded("semilattices are limited to 1..64 elements");
  for (int i = 0; i < n; ++i)
    if (!leq[i][i]) throw NotAPartialOrder("leq not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) throw NotAPartialOrder("leq not antisymmetric");
      if (leq[i][j])
        for (int k = 0; k < n; ++k)
          if (leq[j][k] && !leq[i][k]) throw NotAPartialOrder("leq not transitive");
    }
  MeetSemilattice S;
  S.n = n;
  S.up.assign(n, 0);
  S.down.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j]) {
        S.up[i] |= bit(j);
        S.down[j] |= bit(i);
      }
  detail::finish_semilattice_tables(S);
  return S;
}

inline MeetSemilattice as_semilattice(const Lattice& L) {
  MeetSemilattice S;
  S.n = L.n;
  S.up = L.up;
  S.down = L.down;
  detail::finish_semilattice_tables(S);
  return S;
}

/// The downward-closed subset of an ideal lattice selected by `mask`, as a
/// meet-semilattice. Throws NotPosetIdeal when the subset is not a poset
/// ideal of the ambient lattice. Element k of the result is the k-th set bit.
struct SubSemilattice {
  MeetSemilattice S;
  std::vector<int> ambient;  // result element -> ambient lattice element
};

inline SubSemilattice sub_semilattice(const Lattice& hat, Mask mask) {
  if (mask == 0) throw NotPosetIdeal("empty subset");
  for_each_bit(mask, [&](int x) {
    if (!subset_of(hat.down[x], mask))
      throw NotPosetIdeal("subset is not downward closed in the ambient lattice");
  });
  SubSemilattice out;
  std::vector<int> local(hat.n, -1);
  for_each_bit(mask, [&](int x) {
    local[x] = static_cast<int>(out.ambient.size());
    out.ambient.push_back(x);
  });
  const int n = static_cast<int>(out.ambient.size());
  out.S.n = n;
  out.S.up.assign(n, 0);
  out.S.down.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (hat.leq(out.ambient[i], out.ambient[j])) {
        out.S.up[i] |= bit(j);
        out.S.down[j] |= bit(i);
      }
  detail::finish_semilattice_tables(out.S);
  return out;
}

// ---------------------------------------------------------------------------
// Meet-distributivity: three conditions evaluated independently.
//   (a) every interval [x,y] with x the meet of y's lower covers inside the
//       interval is Boolean;
//   (b) graded (each cover raises rank by one) and degree == rank everywhere;
//   (c) every element is the join of a unique minimal set of
//       join-irreducibles.
// ---------------------------------------------------------------------------

struct MeetDistributivityReport {
  bool boolean_intervals = true;
  bool graded_degree_rank = true;
  bool unique_minimal_join = true;
  std::optional<Interval> boolean_witness;
  int degree_rank_witness = -1;
  int join_witness = -1;
  bool verdict = true;
};

namespace detail {

/// Least upper bound of the element set `elems` (mask), which always exists
/// in a meet-semilattice when an upper bound does; here every queried set is
/// bounded above. Returns -1 when no upper bound exists.
inline int lub(const MeetSemilattice& S, Mask elems) {
  Mask ub = S.n == 64 ? ~Mask{0} : bit(S.n) - 1;
  for_each_bit(elems, [&](int x) { ub &= S.up[x]; });
  if (ub == 0) return -1;
  int best = -1;
  for_each_bit(ub, [&](int x) {
    if (subset_of(ub, S.up[x])) best = x;
  });
  return best;
}

inline bool interval_is_boolean(const MeetSemilattice& S, Interval iv) {
  // coatoms of the interval: lower covers of hi inside [lo,hi]
  std::vector<int> coatoms;
  for_each_bit(S.lower_covers[iv.hi] & S.interval_mask(iv.lo, iv.hi),
               [&](int x) { coatoms.push_back(x); });
  const int k = static_cast<int>(coatoms.size());
  if (k > 20) return false;
  Mask seen = 0;
  if (popcount(S.interval_mask(iv.lo, iv.hi)) != (1 << k)) return false;
  for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
    int m = iv.hi;
    for_each_bit(sub, [&](int i) { m = S.meet(m, coatoms[i]); });
    if (has_bit(seen, m)) return false;  // meets of distinct coatom subsets collide
    seen |= bit(m);
  }
  return seen == S.interval_mask(iv.lo, iv.hi);
}

}  // namespace detail

inline MeetDistributivityReport is_meet_distributive(const MeetSemilattice& S) {
  MeetDistributivityReport r;

  // (a)
  for (int y = 0; y < S.n && r.boolean_intervals; ++y)
    for (int x = 0; x < S.n; ++x) {
      if (!S.leq(x, y)) continue;
      Mask covers_in = S.lower_covers[y] & S.interval_mask(x, y);
      int m = y;
      for_each_bit(covers_in, [&](int c) { m = S.meet(m, c); });
      if (m != x) continue;
      if (!detail::interval_is_boolean(S, {x, y})) {
        r.boolean_intervals = false;
        r.boolean_witness = Interval{x, y};
        break;
      }
    }

  // (b)
  for (int y = 0; y < S.n && r.graded_degree_rank; ++y) {
    for_each_bit(S.lower_covers[y], [&](int x) {
      if (S.rank[y] != S.rank[x] + 1) {
        r.graded_degree_rank = false;
        r.degree_rank_witness = y;
      }
    });
    if (r.graded_degree_rank && S.degree(y) != S.rank[y]) {
      r.graded_degree_rank = false;
      r.degree_rank_witness = y;
    }
  }

  // (c)
  auto ji = S.join_irreducible_elements();
  for (int l = 0; l < S.n && r.unique_minimal_join; ++l) {
    std::vector<int> below;
    for (int j : ji)
      if (S.leq(j, l)) below.push_back(j);
    const int k = static_cast<int>(below.size());
    std::vector<Mask> achieving;  // subsets of `below` whose join is l
    for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
      Mask elems = 0;
      for_each_bit(sub, [&](int i) { elems |= bit(below[i]); });
      int j = l;
      if (elems == 0)
        j = S.bottom;
      else
        j = detail::lub(S, elems);
      if (j == l) achieving.push_back(sub);
    }
    int minimal = 0;
    for (Mask a : achieving) {
      bool is_min = true;
      for (Mask b : achieving)
        if (b != a && subset_of(b, a)) is_min = false;
      if (is_min) ++minimal;
    }
    if (minimal != 1) {
      r.unique_minimal_join = false;
      r.join_witness = l;
    }
  }

  if (r.boolean_intervals != r.graded_degree_rank ||
      r.boolean_intervals != r.unique_minimal_join)
    throw Defect("meet-distributivity conditions disagree");
  r.verdict = r.boolean_intervals;
  return r;
}

/// The associated distributive lattice: the ideal lattice of the
/// join-irreducibles, together with the canonical embedding
/// l |-> { p join-irreducible : p <= l }.
struct AssociatedLattice {
  IdealLattice hat;
  std::vector<int> ji_elements;   // JI poset index -> source element
  std::vector<int> embedding;     // source element -> hat element
  std::vector<Mask> image_downsets;  // source element -> downset over JI poset
  bool image_is_poset_ideal = true;
};

inline AssociatedLattice associated_distributive_lattice(const MeetSemilattice& S) {
  if (!is_meet_distributive(S).verdict)
    throw NotMeetDistributive("semilattice is not meet-distributive");
  AssociatedLattice out;
  out.ji_elements = S.join_irreducible_elements();
  const int m = static_cast<int>(out.ji_elements.size());
  std::vector<std::string> labels;
  for (int k = 0; k < m; ++k) labels.push_back("e" + std::to_string(out.ji_elements[k]));
  std::vector<std::pair<std::string, std::string>> covers;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      int x = out.ji_elements[a], y = out.ji_elements[b];
      if (!S.less(x, y)) continue;
      bool direct = true;
      for (int c = 0; c < m && direct; ++c)
        if (c != a && c != b) {
          int z = out.ji_elements[c];
          if (S.less(x, z) && S.less(z, y)) direct = false;
        }
      if (direct) covers.emplace_back(labels[a], labels[b]);
    }
  Poset P = build_poset(labels, covers);
  out.hat = ideal_lattice(P);
  out.image_downsets.assign(S.n, 0);
  out.embedding.assign(S.n, -1);
  for (int l = 0; l < S.n; ++l) {
    for (int k = 0; k < m; ++k)
      if (S.leq(out.ji_elements[k], l)) out.image_downsets[l] |= bit(k);
    out.embedding[l] = out.hat.element_of(out.image_downsets[l]);
  }
  // injectivity and meet preservation
  for (int a = 0; a < S.n; ++a)
    for (int b = 0; b < S.n; ++b) {
      if (a < b && out.embedding[a] == out.embedding[b])
        throw Defect("associated-lattice embedding not injective");
      if (out.hat.lat.meet(out.embedding[a], out.embedding[b]) !=
          out.embedding[S.meet(a, b)])
        throw Defect("associated-lattice embedding does not preserve meets");
    }
  // the image must be a poset ideal of hat; a false value is a defect signal
  Mask image = 0;
  for (int l = 0; l < S.n; ++l) image |= bit(out.embedding[l]);
  for_each_bit(image, [&](int e) {
    if (!subset_of(out.hat.lat.down[e], image)) out.image_is_poset_ideal = false;
  });
  return out;
}

}  // namespace hibi
