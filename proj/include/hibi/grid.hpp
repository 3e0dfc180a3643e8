#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "hibi/base.hpp"
#include "hibi/iso.hpp"
#include "hibi/lattice.hpp"
#include "hibi/poset.hpp"

namespace hibi {

struct GridPoint {
  int i = 0, j = 0;
  bool operator==(const GridPoint&) const = default;
  bool leq(GridPoint o) const { return i <= o.i && j <= o.j; }
};

enum class CornerKind { Upper, Lower, Critical };

struct Corner {
  GridPoint at;
  CornerKind kind;
};

/// The map a |-> (|a n C|, |a n D|) on the downsets of a two-chain-covered
/// poset, landing in [m]0 x [n]0 with m = |C| and n = |D|; the first
/// coordinate always counts C-elements.
struct GridEmbedding {
  int m = 0, n = 0;
  std::vector<GridPoint> image;  // indexed by lattice element
  ChainCover chains;
};

namespace detail {

struct PointSet {
  int m, n;
  std::vector<std::vector<bool>> in;
  PointSet(int m_, int n_, const std::vector<GridPoint>& pts)
      : m(m_), n(n_), in(m_ + 1, std::vector<bool>(n_ + 1, false)) {
    for (auto p : pts) {
      if (p.i < 0 || p.i > m || p.j < 0 || p.j > n) throw Error("grid point out of range");
      in[p.i][p.j] = true;
    }
  }
  bool has(int i, int j) const { return i >= 0 && i <= m && j >= 0 && j <= n && in[i][j]; }
};

}  // namespace detail

inline GridEmbedding grid_embedding(const IdealLattice& il, const ChainCover& cover) {
  if (!is_chain_cover(il.poset, cover)) throw NotACover("not a two-chain cover of the poset");
  GridEmbedding e;
  e.chains = cover;
  e.m = static_cast<int>(cover.chain_c.size());
  e.n = static_cast<int>(cover.chain_d.size());
  Mask mc = 0, md = 0;
  for (int x : cover.chain_c) mc |= bit(x);
  for (int x : cover.chain_d) md |= bit(x);
  e.image.resize(il.lat.n);
  for (int a = 0; a < il.lat.n; ++a) {
    Mask ds = il.lat.element_downsets[a];
    // a downset meets each chain in a prefix; the coordinate is its length
    Mask ac = ds & mc, ad = ds & md;
    int i = popcount(ac), j = popcount(ad);
    Mask prefix_c = 0, prefix_d = 0;
    for (int k = 0; k < i; ++k) prefix_c |= bit(cover.chain_c[k]);
    for (int k = 0; k < j; ++k) prefix_d |= bit(cover.chain_d[k]);
    if (ac != prefix_c || ad != prefix_d)
      throw Defect("downset does not meet a cover chain in a prefix");
    e.image[a] = GridPoint{i, j};
  }
  // injectivity, meet -> min, join -> max
  for (int a = 0; a < il.lat.n; ++a)
    for (int b = 0; b < il.lat.n; ++b) {
      if (a < b && e.image[a] == e.image[b]) throw Defect("grid embedding not injective");
      GridPoint pa = e.image[a], pb = e.image[b];
      GridPoint mt = e.image[il.lat.meet(a, b)], jn = e.image[il.lat.join(a, b)];
      if (mt != GridPoint{std::min(pa.i, pb.i), std::min(pa.j, pb.j)} ||
          jn != GridPoint{std::max(pa.i, pb.i), std::max(pa.j, pb.j)})
        throw Defect("grid embedding does not send meet/join to min/max");
    }
  return e;
}

/// Full sublattice test on a raw point set: closed under componentwise
/// min/max and containing a saturated chain of length m+n from (0,0) to
/// (m,n), i.e. a monotone unit-step path inside the set.
inline bool is_full_sublattice(int m, int n, const std::vector<GridPoint>& pts) {
  detail::PointSet ps(m, n, pts);
  for (auto p : pts)
    for (auto q : pts) {
      if (!ps.has(std::min(p.i, q.i), std::min(p.j, q.j))) return false;
      if (!ps.has(std::max(p.i, q.i), std::max(p.j, q.j))) return false;
    }
  if (!ps.has(0, 0)) return false;
  std::vector<std::vector<bool>> reach(m + 1, std::vector<bool>(n + 1, false));
  reach[0][0] = true;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      if (!reach[i][j]) continue;
      if (i < m && ps.has(i + 1, j)) reach[i + 1][j] = true;
      if (j < n && ps.has(i, j + 1)) reach[i][j + 1] = true;
    }
  return reach[m][n];
}

inline bool is_full_sublattice(const GridEmbedding& e) {
  return is_full_sublattice(e.m, e.n, e.image);
}

/// Corner taxonomy: a point with all four axis neighbors in the set is
/// classified by its two diagonals. Membership always refers to the image
/// set, never the ambient grid.
inline std::vector<Corner> classify_corners(int m, int n, const std::vector<GridPoint>& pts) {
  detail::PointSet ps(m, n, pts);
  std::vector<Corner> out;
  std::vector<GridPoint> sorted = pts;
  std::sort(sorted.begin(), sorted.end(),
            [](GridPoint a, GridPoint b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (auto p : sorted) {
    if (!ps.has(p.i - 1, p.j) || !ps.has(p.i + 1, p.j) || !ps.has(p.i, p.j - 1) ||
        !ps.has(p.i, p.j + 1))
      continue;
    bool ne = ps.has(p.i - 1, p.j + 1);  // (i-1, j+1)
    bool sw = ps.has(p.i + 1, p.j - 1);  // (i+1, j-1)
    if (!ne && sw) out.push_back({p, CornerKind::Upper});
    if (ne && !sw) out.push_back({p, CornerKind::Lower});
    if (!ne && !sw) out.push_back({p, CornerKind::Critical});
  }
  return out;
}

inline std::vector<Corner> classify_corners(const GridEmbedding& e) {
  return classify_corners(e.m, e.n, e.image);
}

struct ChainLadderResult {
  bool chain_ladder = true;
  std::optional<std::pair<GridPoint, GridPoint>> witness;
};

/// Chain-ladder test: corners pairwise comparable, with pairwise distinct
/// first and distinct second coordinates.
inline ChainLadderResult is_chain_ladder(const std::vector<Corner>& corners) {
  for (std::size_t a = 0; a < corners.size(); ++a)
    for (std::size_t b = a + 1; b < corners.size(); ++b) {
      GridPoint p = corners[a].at, q = corners[b].at;
      if (!p.leq(q) && !q.leq(p)) return {false, std::make_pair(p, q)};
      if (p.i == q.i || p.j == q.j) return {false, std::make_pair(p, q)};
    }
  return {};
}

inline Lattice grid_lattice(int m, int n) {
  const int size = (m + 1) * (n + 1);
  if (size > 64) throw SizeExceeded("grid lattice exceeds 64 elements");
  auto id = [&](int i, int j) { return i * (n + 1) + j; };
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i < m) covers.emplace_back(id(i, j), id(i + 1, j));
      if (j < n) covers.emplace_back(id(i, j), id(i, j + 1));
    }
  return build_lattice_from_covers(size, covers, /*verify_axioms=*/false);
}

/// Extents (m, n) with m >= n when L is isomorphic to the full grid
/// [m]0 x [n]0, found by explicit isomorphism search over the factorizations
/// of |L|.
inline std::optional<std::pair<int, int>> is_grid_iso(const Lattice& L) {
  const int size = L.n;
  for (int d1 = size; d1 >= 1; --d1) {
    if (size % d1 != 0) continue;
    int d2 = size / d1;
    if (d1 < d2) break;
    int m = d1 - 1, n = d2 - 1;
    // a grid of shape (m,n) has top rank m+n; skip obvious mismatches
    if (L.rank[L.top] != m + n) continue;
    if (lattice_isomorphic(L, grid_lattice(m, n))) return std::make_pair(m, n);
  }
  return std::nullopt;
}

}  // namespace hibi
