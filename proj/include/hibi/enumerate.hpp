#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hibi/base.hpp"
#include "hibi/iso.hpp"
#include "hibi/lattice.hpp"
#include "hibi/poset.hpp"

namespace hibi {

namespace detail {

inline Poset poset_from_strict_masks(int n, const std::vector<Mask>& strictly_above) {
  Poset p;
  p.labels.reserve(n);
  for (int i = 0; i < n; ++i) p.labels.push_back("p" + std::to_string(i + 1));
  p.above.assign(n, 0);
  p.below.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    p.above[i] = strictly_above[i] | bit(i);
    p.below[i] |= bit(i);
    for_each_bit(strictly_above[i], [&](int j) { p.below[j] |= bit(i); });
  }
  for (int i = 0; i < n; ++i)
    for_each_bit(strictly_above[i], [&](int j) {
      Mask between = strictly_above[i] & p.below[j] & ~bit(j);
      if (between == 0) p.covers.emplace_back(i, j);
    });
  std::sort(p.covers.begin(), p.covers.end());
  return p;
}

}  // namespace detail

/// Streams every labeled poset on n elements (every strict partial order on
/// {0..n-1}), in a fixed deterministic order. Pairs are decided one at a
/// time (incomparable first, then i<j, then j<i) with transitive closure
/// propagated eagerly; a propagation step that would overturn an earlier
/// "incomparable" decision prunes the branch.
inline void enumerate_posets(int n, const std::function<void(const Poset&)>& emit) {
  if (n < 0 || n > 7) throw SizeExceeded("labeled poset enumeration is capped at n <= 7");
  if (n == 0) {
    emit(detail::poset_from_strict_masks(0, {}));
    return;
  }
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> pair_index(n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pair_index[i * n + j] = static_cast<int>(pairs.size());
      pairs.emplace_back(i, j);
    }
  auto index_of = [&](int a, int b) { return pair_index[std::min(a, b) * n + std::max(a, b)]; };

  std::vector<Mask> above(n, 0), below(n, 0);  // strict
  std::vector<std::pair<int, int>> undo;

  auto add_edge = [&](int u, int v, int now) -> bool {
    // u < v plus closure; fails on conflicts with earlier decisions
    if (has_bit(above[v], u)) return false;  // v < u already
    Mask lows = below[u] | bit(u);
    Mask highs = above[v] | bit(v);
    bool ok = true;
    for_each_bit(lows, [&](int a) {
      if (!ok) return;
      for_each_bit(highs, [&](int b) {
        if (!ok || has_bit(above[a], b)) return;
        if (has_bit(above[b], a) || index_of(a, b) < now) {
          ok = false;  // antisymmetry or an earlier incomparable decision
          return;
        }
        above[a] |= bit(b);
        below[b] |= bit(a);
        undo.emplace_back(a, b);
      });
    });
    return ok;
  };

  std::function<void(int)> rec = [&](int k) {
    if (k == static_cast<int>(pairs.size())) {
      emit(detail::poset_from_strict_masks(n, above));
      return;
    }
    auto [i, j] = pairs[k];
    if (has_bit(above[i], j) || has_bit(above[j], i)) {
      rec(k + 1);  // already implied earlier
      return;
    }
    rec(k + 1);  // leave incomparable
    for (auto [u, v] : {std::pair{i, j}, {j, i}}) {
      std::size_t mark = undo.size();
      if (add_edge(u, v, k)) rec(k + 1);
      while (undo.size() > mark) {
        auto [a, b] = undo.back();
        undo.pop_back();
        above[a] &= ~bit(b);
        below[b] &= ~bit(a);
      }
    }
  };
  rec(0);
}

inline std::vector<Poset> all_labeled_posets(int n) {
  std::vector<Poset> out;
  enumerate_posets(n, [&](const Poset& p) { out.push_back(p); });
  return out;
}

/// Labeled enumeration deduplicated by isomorphism (bucketed by an invariant
/// key, then exact isomorphism tests against representatives).
inline std::vector<Poset> posets_up_to_iso(int n) {
  std::vector<Poset> reps;
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;
  enumerate_posets(n, [&](const Poset& p) {
    auto key = order_invariant_key(p.size(), p.above, p.below);
    for (std::size_t idx : buckets[key])
      if (poset_isomorphic(reps[idx], p)) return;
    buckets[key].push_back(reps.size());
    reps.push_back(p);
  });
  return reps;
}

/// Every lattice with exactly n elements, up to isomorphism. Candidates are
/// generated with element 0 the bottom, element n-1 the top and the index
/// order a linear extension, so only the strict relation on the middle
/// elements varies.
inline std::vector<Lattice> lattices_up_to_iso(int n) {
  if (n < 1 || n > 8) throw SizeExceeded("lattice enumeration is capped at 1 <= n <= 8");
  std::vector<Lattice> reps;
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;
  auto consider = [&](const std::vector<Mask>& up, const std::vector<Mask>& down) {
    // meets and joins must exist for every pair
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Mask lower = down[a] & down[b];
        bool ok = false;
        for_each_bit(lower, [&](int x) {
          if (subset_of(lower, down[x])) ok = true;
        });
        if (!ok) return;
        Mask upper = up[a] & up[b];
        ok = false;
        for_each_bit(upper, [&](int x) {
          if (subset_of(upper, up[x])) ok = true;
        });
        if (!ok) return;
      }
    auto key = order_invariant_key(n, up, down);
    for (std::size_t idx : buckets[key]) {
      const Lattice& r = reps[idx];
      if (detail::find_order_isomorphism(n, up, down, r.n, r.up, r.down).has_value()) return;
    }
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for_each_bit(up[i], [&](int j) { leq[i][j] = true; });
    buckets[key].push_back(reps.size());
    reps.push_back(build_lattice(leq));
  };

  if (n == 1) {
    std::vector<Mask> up{1}, down{1};
    consider(up, down);
    return reps;
  }
  const int mid = n - 2;  // elements 1..n-2
  std::vector<std::pair<int, int>> mid_pairs;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = i + 1; j + 1 < n; ++j) mid_pairs.emplace_back(i, j);
  (void)mid;
  const Mask full = n == 64 ? ~Mask{0} : bit(n) - 1;
  for (Mask choice = 0; choice < (Mask{1} << mid_pairs.size()); ++choice) {
    std::vector<Mask> above(n, 0);  // strict
    for (std::size_t k = 0; k < mid_pairs.size(); ++k)
      if (has_bit(choice, static_cast<int>(k)))
        above[mid_pairs[k].first] |= bit(mid_pairs[k].second);
    // transitivity of the middle relation
    bool transitive = true;
    for (int i = 1; i + 1 < n && transitive; ++i)
      for_each_bit(above[i], [&](int j) {
        if (!subset_of(above[j], above[i])) transitive = false;
      });
    if (!transitive) continue;
    // attach bottom and top
    above[0] = full & ~bit(0);
    for (int i = 1; i + 1 < n; ++i) above[i] |= bit(n - 1);
    std::vector<Mask> up(n, 0), down(n, 0);
    for (int i = 0; i < n; ++i) {
      up[i] = above[i] | bit(i);
      down[i] |= bit(i);
      for_each_bit(above[i], [&](int j) { down[j] |= bit(i); });
    }
    consider(up, down);
  }
  return reps;
}

}  // namespace hibi
