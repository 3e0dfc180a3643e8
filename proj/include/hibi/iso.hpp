#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "hibi/base.hpp"
#include "hibi/lattice.hpp"
#include "hibi/poset.hpp"

namespace hibi {

namespace detail {

struct OrderSignature {
  // (|down|, |up|, lower covers, upper covers); order-iso invariant
  std::array<int, 4> key;
  bool operator==(const OrderSignature&) const = default;
  bool operator<(const OrderSignature& o) const { return key < o.key; }
};

inline std::vector<OrderSignature> order_signatures(int n, const std::vector<Mask>& up,
                                                    const std::vector<Mask>& down) {
  std::vector<OrderSignature> sig(n);
  for (int x = 0; x < n; ++x) {
    int lc = 0, uc = 0;
    for_each_bit(down[x] & ~bit(x), [&](int y) {
      if ((up[y] & down[x] & ~bit(x) & ~bit(y)) == 0) ++lc;
    });
    for_each_bit(up[x] & ~bit(x), [&](int y) {
      if ((down[y] & up[x] & ~bit(x) & ~bit(y)) == 0) ++uc;
    });
    sig[x] = {{popcount(down[x]), popcount(up[x]), lc, uc}};
  }
  return sig;
}

/// Backtracking order-isomorphism search with signature pruning.
inline std::optional<std::vector<int>> find_order_isomorphism(int n1, const std::vector<Mask>& up1,
                                                              const std::vector<Mask>& down1,
                                                              int n2, const std::vector<Mask>& up2,
                                                              const std::vector<Mask>& down2) {
  if (n1 != n2) return std::nullopt;
  const int n = n1;
  auto s1 = order_signatures(n, up1, down1);
  auto s2 = order_signatures(n, up2, down2);
  {
    auto m1 = s1, m2 = s2;
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    if (m1 != m2) return std::nullopt;
  }
  // Map the most constrained elements first: rarest signature, then most related.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<int> freq(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s1[i] == s1[j]) ++freq[i];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (freq[a] != freq[b]) return freq[a] < freq[b];
    return popcount(down1[a]) + popcount(up1[a]) > popcount(down1[b]) + popcount(up1[b]);
  });
  std::vector<int> map(n, -1);
  Mask used = 0;
  std::vector<int> placed;
  placed.reserve(n);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    int x = order[k];
    for (int y = 0; y < n; ++y) {
      if (has_bit(used, y) || !(s1[x] == s2[y])) continue;
      bool ok = true;
      for (int z : placed) {
        if (has_bit(up1[x], z) != has_bit(up2[y], map[z]) ||
            has_bit(down1[x], z) != has_bit(down2[y], map[z])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[x] = y;
      used |= bit(y);
      placed.push_back(x);
      if (rec(k + 1)) return true;
      placed.pop_back();
      used &= ~bit(y);
      map[x] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

}  // namespace detail

inline bool poset_isomorphic(const Poset& a, const Poset& b) {
  return detail::find_order_isomorphism(a.size(), a.above, a.below, b.size(), b.above, b.below)
      .has_value();
}

/// Order isomorphism; for lattices this is the same as lattice isomorphism
/// since meets and joins are determined by the order.
inline bool lattice_isomorphic(const Lattice& a, const Lattice& b) {
  return detail::find_order_isomorphism(a.n, a.up, a.down, b.n, b.up, b.down).has_value();
}

/// Cheap iso-invariant bucket key used to pre-sort candidates before the
/// exact isomorphism test.
inline std::uint64_t order_invariant_key(int n, const std::vector<Mask>& up,
                                         const std::vector<Mask>& down) {
  auto sig = detail::order_signatures(n, up, down);
  std::sort(sig.begin(), sig.end());
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n);
  for (const auto& s : sig)
    for (int v : s.key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
  return h;
}

}  // namespace hibi
