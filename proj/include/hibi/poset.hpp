#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hibi/base.hpp"

namespace hibi {

/// A finite poset given by cover relations. `covers` is kept as the
/// transitive reduction; redundant input covers are dropped and recorded,
/// not rejected. Element indices follow the input order of `labels`, and
/// that order fixes every canonical tie-break downstream.
struct Poset {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> covers;  // (lower, upper)
  std::vector<Mask> below;                  // below[i] = { j : j <= i }
  std::vector<Mask> above;                  // above[i] = { j : j >= i }
  std::vector<std::pair<int, int>> dropped_covers;

  int size() const { return static_cast<int>(labels.size()); }
  Mask all() const { return size() == 64 ? ~Mask{0} : (bit(size()) - 1); }

  bool leq(int i, int j) const { return has_bit(above[i], j); }
  bool less(int i, int j) const { return i != j && leq(i, j); }
  bool comparable(int i, int j) const { return leq(i, j) || leq(j, i); }
  /// Elements comparable with i, including i itself.
  Mask comparable_mask(int i) const { return above[i] | below[i]; }
};

/// A poset ideal (downset), encoded over the parent poset's element order.
struct DownSet {
  Mask bits = 0;
  bool operator==(const DownSet&) const = default;
  bool contains(int i) const { return has_bit(bits, i); }
  int cardinality() const { return popcount(bits); }
};

/// Two disjoint chains covering the whole poset. The second chain may be
/// empty (chain posets).
struct ChainCover {
  std::vector<int> chain_c;
  std::vector<int> chain_d;
};

namespace detail {

inline std::vector<Mask> strict_closure_from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  // Kahn topological order, then reachability by bit rows.
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [p, q] : edges) {
    succ[p].push_back(q);
    indeg[q]++;
  }
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  if (static_cast<int>(order.size()) != n)
    throw CycleDetected("cover relation contains a directed cycle");
  std::vector<Mask> reach(n, 0);  // strictly-above masks
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int w : succ[v]) reach[v] |= reach[w] | bit(w);
  }
  return reach;
}

}  // namespace detail

/// Builds a validated poset from labels and (lower, upper) cover pairs.
/// Throws CycleDetected / UnknownLabel; redundant covers are dropped with a
/// record in `dropped_covers`.
inline Poset build_poset(std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  const int n = static_cast<int>(labels.size());
  if (n > 64) throw SizeExceeded("posets are limited to 64 elements");
  Poset p;
  p.labels = std::move(labels);
  std::vector<std::pair<int, int>> edges;
  auto index_of = [&](const std::string& s) {
    for (int i = 0; i < n; ++i)
      if (p.labels[i] == s) return i;
    throw UnknownLabel("cover references unknown label '" + s + "'");
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.labels[i] == p.labels[j])
        throw UnknownLabel("duplicate label '" + p.labels[i] + "'");
  for (const auto& [lo, hi] : covers) {
    int a = index_of(lo), b = index_of(hi);
    if (a == b) throw CycleDetected("cover pair (" + lo + "," + hi + ") is reflexive");
    edges.emplace_back(a, b);
  }

  const auto strict_above = detail::strict_closure_from_edges(n, edges);
  p.above.assign(n, 0);
  p.below.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    p.above[i] = strict_above[i] | bit(i);
    for_each_bit(strict_above[i], [&](int j) { p.below[j] |= bit(i); });
  }
  for (int i = 0; i < n; ++i) p.below[i] |= bit(i);

  // Canonical transitive reduction: (i,j) is a cover iff nothing sits
  // strictly between. Input pairs not in the reduction are recorded.
  auto is_cover = [&](int i, int j) {
    if (!(p.less(i, j))) return false;
    Mask between = strict_above[i] & p.below[j] & ~bit(j);
    return between == 0;
  };
  for (int i = 0; i < n; ++i)
    for_each_bit(strict_above[i], [&](int j) {
      if (is_cover(i, j)) p.covers.emplace_back(i, j);
    });
  std::sort(p.covers.begin(), p.covers.end());
  for (auto e : edges) {
    if (!std::binary_search(p.covers.begin(), p.covers.end(), e))
      p.dropped_covers.push_back(e);
  }
  return p;
}

/// Test-friendly constructor with numeric labels p1..pn.
inline Poset make_poset(int n, const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i + 1));
  std::vector<std::pair<std::string, std::string>> named;
  named.reserve(covers.size());
  for (auto [a, b] : covers) named.emplace_back(labels[a], labels[b]);
  return build_poset(std::move(labels), named);
}

inline bool is_down_set(const Poset& p, Mask a) {
  Mask closure = 0;
  for_each_bit(a, [&](int i) { closure |= p.below[i]; });
  return closure == a;
}

/// All downsets of p, sorted by (cardinality, bit value). Their count equals
/// the number of antichains of p.
inline std::vector<DownSet> enumerate_down_sets(const Poset& p,
                                                std::size_t count_cap = (std::size_t{1} << 20)) {
  if (p.size() > 20)
    throw SizeExceeded("downset enumeration is bounded to posets with <= 20 elements");
  std::vector<DownSet> out;
  const Mask full = p.all();
  for (Mask a = 0;; ++a) {
    if (is_down_set(p, a)) {
      if (out.size() >= count_cap) throw SizeExceeded("downset count exceeds configured cap");
      out.push_back(DownSet{a});
    }
    if (a == full) break;
  }
  std::sort(out.begin(), out.end(), [](const DownSet& x, const DownSet& y) {
    if (x.cardinality() != y.cardinality()) return x.cardinality() < y.cardinality();
    return x.bits < y.bits;
  });
  return out;
}

/// Maximal elements of a downset; these minimally generate it.
inline std::vector<int> minimal_generators(const Poset& p, DownSet a) {
  std::vector<int> gens;
  for_each_bit(a.bits, [&](int i) {
    if ((p.above[i] & a.bits & ~bit(i)) == 0) gens.push_back(i);
  });
  return gens;
}

inline Mask down_closure(const Poset& p, const std::vector<int>& gens) {
  Mask m = 0;
  for (int g : gens) m |= p.below[g];
  return m;
}

struct WidthResult {
  bool le_two = true;
  std::optional<std::array<int, 3>> antichain;  // witness when false
};

/// Width test: true iff p has no 3 pairwise-incomparable elements.
inline WidthResult width_le_two(const Poset& p) {
  const int n = p.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (p.comparable(a, b)) continue;
      for (int c = b + 1; c < n; ++c)
        if (!p.comparable(a, c) && !p.comparable(b, c))
          return {false, std::array<int, 3>{a, b, c}};
    }
  return {true, std::nullopt};
}

namespace detail {

inline bool chain_in_poset(const Poset& p, const std::vector<int>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!p.comparable(xs[i], xs[j])) return false;
  return true;
}

inline std::vector<int> sorted_chain(const Poset& p, Mask m) {
  std::vector<int> xs;
  for_each_bit(m, [&](int i) { xs.push_back(i); });
  std::sort(xs.begin(), xs.end(), [&](int a, int b) { return p.less(a, b); });
  return xs;
}

}  // namespace detail

inline bool is_chain_cover(const Poset& p, const ChainCover& cc) {
  Mask mc = 0, md = 0;
  for (int x : cc.chain_c) mc |= bit(x);
  for (int x : cc.chain_d) md |= bit(x);
  if ((mc & md) != 0) return false;
  if ((mc | md) != p.all()) return false;
  if (popcount(mc) != static_cast<int>(cc.chain_c.size())) return false;
  if (popcount(md) != static_cast<int>(cc.chain_d.size())) return false;
  if (!detail::chain_in_poset(p, cc.chain_c)) return false;
  if (!detail::chain_in_poset(p, cc.chain_d)) return false;
  for (std::size_t i = 0; i + 1 < cc.chain_c.size(); ++i)
    if (!p.less(cc.chain_c[i], cc.chain_c[i + 1])) return false;
  for (std::size_t i = 0; i + 1 < cc.chain_d.size(); ++i)
    if (!p.less(cc.chain_d[i], cc.chain_d[i + 1])) return false;
  return true;
}

/// Canonical two-chain cover: backtracking assignment of elements (in input
/// order) to chains C then D, preferring C; the first complete assignment is
/// the lexicographically least one. Absent iff the poset has width > 2.
inline std::optional<ChainCover> two_chain_cover(const Poset& p) {
  const int n = p.size();
  if (!width_le_two(p).le_two) return std::nullopt;
  Mask mc = 0, md = 0;
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    Mask comp = p.comparable_mask(i);
    if (subset_of(mc, comp)) {
      mc |= bit(i);
      if (rec(i + 1)) return true;
      mc &= ~bit(i);
    }
    if (subset_of(md, comp)) {
      md |= bit(i);
      if (rec(i + 1)) return true;
      md &= ~bit(i);
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return ChainCover{detail::sorted_chain(p, mc), detail::sorted_chain(p, md)};
}

/// Enumerates every two-chain cover (ordered pairs: mirrored covers are
/// distinct), capped. Used to probe cover-sensitivity of derived data.
inline std::vector<ChainCover> all_two_chain_covers(const Poset& p, std::size_t cap = 4096) {
  const int n = p.size();
  std::vector<ChainCover> out;
  if (!width_le_two(p).le_two) return out;
  Mask mc = 0, md = 0;
  std::function<void(int)> rec = [&](int i) {
    if (out.size() >= cap) return;
    if (i == n) {
      out.push_back(ChainCover{detail::sorted_chain(p, mc), detail::sorted_chain(p, md)});
      return;
    }
    Mask comp = p.comparable_mask(i);
    if (subset_of(mc, comp)) {
      mc |= bit(i);
      rec(i + 1);
      mc &= ~bit(i);
    }
    if (subset_of(md, comp)) {
      md |= bit(i);
      rec(i + 1);
      md &= ~bit(i);
    }
  };
  rec(0);
  return out;
}

/// Minimum number of disjoint chains covering p, via maximum bipartite
/// matching on the strict order (Dilworth / Fulkerson). Independent oracle
/// for two-chain coverability.
inline int min_chain_partition(const Poset& p) {
  const int n = p.size();
  std::vector<int> match_right(n, -1);
  std::vector<char> seen(n, 0);
  std::function<bool(int)> try_kuhn = [&](int u) -> bool {
    for (int v = 0; v < n; ++v) {
      if (!p.less(u, v) || seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || try_kuhn(match_right[v])) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  int matching = 0;
  for (int u = 0; u < n; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    if (try_kuhn(u)) ++matching;
  }
  return n - matching;
}

struct InductiveCoverResult {
  std::optional<ChainCover> cover;
  bool construction_failed = false;  // width was <= 2 but the construction broke
};

/// Constructive route: grow the cover along a linear extension, one element
/// at a time. A new maximal element p either extends the chain whose top it
/// dominates, or it displaces the tail of the chain holding its deepest
/// predecessor: that tail moves onto the other chain and p starts a fresh
/// chain on top of the predecessors it keeps. Both donor choices are tried;
/// a validation failure of both is recorded as construction_failed.
inline InductiveCoverResult two_chain_cover_inductive(const Poset& p) {
  if (!width_le_two(p).le_two) return {std::nullopt, false};
  // Canonical linear extension: repeatedly take the smallest-index minimal
  // element among the remainder.
  std::vector<int> ext;
  {
    Mask remaining = p.all();
    while (remaining != 0) {
      int pick = -1;
      for_each_bit(remaining, [&](int i) {
        if (pick >= 0) return;
        if ((p.below[i] & remaining & ~bit(i)) == 0) pick = i;
      });
      ext.push_back(pick);
      remaining &= ~bit(pick);
    }
  }
  std::vector<int> C, D;
  auto predecessors_in = [&](const std::vector<int>& chain, int x) {
    // chain predecessor prefix length (chain is sorted ascending)
    std::size_t k = 0;
    while (k < chain.size() && p.less(chain[k], x)) ++k;
    return k;
  };
  auto try_displace = [&](std::vector<int>& donor, std::vector<int>& other, int x) -> bool {
    const std::size_t i = predecessors_in(donor, x);
    std::vector<int> new_other = other;
    new_other.insert(new_other.end(), donor.begin() + i, donor.end());
    std::sort(new_other.begin(), new_other.end(), [&](int a, int b) { return p.less(a, b); });
    if (!detail::chain_in_poset(p, new_other)) return false;
    std::vector<int> new_donor(donor.begin(), donor.begin() + i);
    new_donor.push_back(x);
    other = std::move(new_other);
    donor = std::move(new_donor);
    return true;
  };
  for (int x : ext) {
    if (C.empty() || p.less(C.back(), x)) {
      C.push_back(x);
    } else if (D.empty() || p.less(D.back(), x)) {
      D.push_back(x);
    } else {
      // x is incomparable with both tops; prefer the donor chain that holds
      // a predecessor of x.
      bool ok = false;
      if (predecessors_in(D, x) > 0)
        ok = try_displace(D, C, x) || try_displace(C, D, x);
      else
        ok = try_displace(C, D, x) || try_displace(D, C, x);
      if (!ok) return {std::nullopt, true};
    }
  }
  ChainCover cc{C, D};
  if (!is_chain_cover(p, cc)) return {std::nullopt, true};
  return {cc, false};
}

}  // namespace hibi
