#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hibi/base.hpp"
#include "hibi/enumerate.hpp"
#include "hibi/grid.hpp"
#include "hibi/iso.hpp"
#include "hibi/relations.hpp"

namespace hibi {

/// Mutation-test hooks: deliberately wrong classifiers, used to demonstrate
/// that the harness actually detects counterexamples.
enum class Mutation { None, FlipIndispensable, FlipConditionallyUrc, FlipWidth, FlipUrc };

struct Campaign {
  int max_poset_size = 5;       // labeled posets on 1..max elements
  int rees_max_poset_size = 4;  // the Rees sweep is the expensive part
  int lattice_census_max = 8;   // 0 disables the all-lattices census
  bool tiebreak_sweep = false;
  int degree_cap = kDefaultDegreeCap;
  int jobs = 1;
  bool iso_dedup = false;
  bool check_indisp = true;
  bool check_rank_lex = true;
  bool check_rees = true;
  bool check_urc_prop = true;
  Mutation mutation = Mutation::None;
};

struct PosetRecord {
  int n = 0;
  std::vector<std::pair<int, int>> covers;
  std::array<bool, 5> indisp{};      // indispensable, cond-URC, 2-generated, 2-chains, embedding
  std::array<bool, 4> rank_lex{};  // gb==hibi, indisp+quadratic, interval condition, ladder
  std::array<bool, 2> rees{};     // URC, rees gb == presentation
  bool rees_checked = false;
  std::array<bool, 3> urc_prop{};  // URC, poset shape, grid iso
  bool distributive = false;
  bool revlex_criterion = false;
  std::vector<std::string> disagreements;
  bool cover_sensitive = false;      // corner-kind multiset varies with the cover
  bool tiebreak_dependent = false;   // rank-lex verdict varies with the tie-break
  std::string defect;                // nonempty if a dual-route check threw
};

struct LatticeRecord {
  int n = 0;
  bool distributive = false;
  bool revlex_criterion = false;
  bool urc = false;
  std::vector<std::string> disagreements;
  std::string defect;
};

struct EquivalenceReport {
  std::vector<long long> posets_per_n;  // index = element count
  std::vector<PosetRecord> poset_records;
  std::vector<LatticeRecord> lattice_records;
  std::vector<std::string> counterexamples;
  std::vector<std::string> defects;
  std::size_t cover_sensitive_count = 0;
  std::size_t tiebreak_dependent_count = 0;
  double elapsed_seconds = 0.0;
  bool ok() const { return counterexamples.empty() && defects.empty(); }
};

namespace detail {

inline std::string poset_id(const Poset& p) {
  std::ostringstream os;
  os << "n=" << p.size() << " covers=[";
  for (std::size_t i = 0; i < p.covers.size(); ++i) {
    if (i) os << ",";
    os << p.covers[i].first << "<" << p.covers[i].second;
  }
  os << "]";
  return os.str();
}

inline std::string bits(std::initializer_list<bool> vs) {
  std::string s;
  for (bool v : vs) s += v ? '1' : '0';
  return s;
}

/// The shape test of the grid proposition: the poset is a chain, or two
/// disjoint chains with every element of one incomparable with every
/// element of the other.
inline bool is_chain_or_two_incomparable_chains(const Poset& p) {
  const int n = p.size();
  if (n == 0) return true;
  // connected components of the comparability graph
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && v != w && p.comparable(v, w)) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  if (ncomp > 2) return false;
  for (int c = 0; c < ncomp; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (comp[a] == c && comp[b] == c && !p.comparable(a, b)) return false;
  return true;
}

}  // namespace detail

/// Evaluates every theorem condition independently on one poset. Conditions
/// within a theorem are never derived from one another; the record carries
/// any intra-theorem disagreement.
inline PosetRecord check_equivalences(const Poset& p, const Campaign& cfg) {
  PosetRecord rec;
  rec.n = p.size();
  rec.covers = p.covers;
  try {
    IdealLattice il = ideal_lattice(p);
    const Lattice& L = il.lat;

    auto dist = is_distributive(L);
    rec.distributive = dist.distributive;
    rec.revlex_criterion = hibi_revlex_criterion(L, cfg.degree_cap);
    if (rec.distributive != rec.revlex_criterion)
      rec.disagreements.push_back("distributivity vs revlex criterion");

    // Birkhoff round trip
    auto ji = join_irreducibles(L);
    if (!poset_isomorphic(ji.poset, p))
      rec.disagreements.push_back("birkhoff round trip failed");

    auto curc = is_conditionally_urc(L);
    auto nb = neighbor_bounds(L);
    if (curc.conditionally_urc != (nb.max_lower <= 2) ||
        curc.conditionally_urc != (nb.max_upper <= 2))
      rec.disagreements.push_back("neighbor-bound lemma failed");

    auto urc = is_urc(L);
    if (urc.urc && !dist.distributive)
      rec.disagreements.push_back("URC lattice not distributive");
    if (urc.urc && !curc.conditionally_urc)
      rec.disagreements.push_back("URC without conditionally URC");

    auto cover = two_chain_cover(p);
    auto inductive = two_chain_cover_inductive(p);
    auto width = width_le_two(p);
    if (cover.has_value() != width.le_two)
      rec.disagreements.push_back("two-chain cover vs width");
    if (cover.has_value() != (min_chain_partition(p) <= 2))
      rec.disagreements.push_back("two-chain cover vs matching oracle");
    if (inductive.construction_failed)
      rec.disagreements.push_back("inductive chain-cover construction failed");
    else if (inductive.cover.has_value() != cover.has_value())
      rec.disagreements.push_back("inductive cover existence differs");

    const bool indispensable = all_hibi_indispensable(il).all;

    if (cfg.check_indisp) {
      rec.indisp[0] = indispensable;
      rec.indisp[1] = curc.conditionally_urc;
      bool two_generated = true;
      for (const DownSet& d : enumerate_down_sets(p))
        if (minimal_generators(p, d).size() > 2) two_generated = false;
      rec.indisp[2] = two_generated;
      rec.indisp[3] = min_chain_partition(p) <= 2;
      rec.indisp[4] = cover.has_value() && is_full_sublattice(grid_embedding(il, *cover));
      if (cfg.mutation == Mutation::FlipIndispensable) rec.indisp[0] = !rec.indisp[0];
      if (cfg.mutation == Mutation::FlipConditionallyUrc) rec.indisp[1] = !rec.indisp[1];
      if (cfg.mutation == Mutation::FlipWidth) rec.indisp[3] = !rec.indisp[3];
      for (int i = 1; i < 5; ++i)
        if (rec.indisp[i] != rec.indisp[0]) {
          rec.disagreements.push_back(
              "indispensability vector " + detail::bits({rec.indisp[0], rec.indisp[1], rec.indisp[2], rec.indisp[3],
                                            rec.indisp[4]}));
          break;
        }
    }

    if (cfg.check_rank_lex) {
      auto gbc = rank_lex_gb_check(L, std::nullopt, cfg.degree_cap);
      rec.rank_lex[0] = gbc.equals_hibi;
      TermOrder rl = rank_lex(L);
      auto full_gb = buchberger(hibi_relations(L, rl).relations, rl, cfg.degree_cap);
      bool quadratic = true;
      for (const Binomial& b : full_gb)
        if (b.degree() > 2) quadratic = false;
      rec.rank_lex[1] = indispensable && quadratic;
      rec.rank_lex[2] = interval_condition_check(L).holds;
      if (cover.has_value()) {
        auto corners = classify_corners(grid_embedding(il, *cover));
        bool no_critical = true;
        for (const Corner& c : corners)
          if (c.kind == CornerKind::Critical) no_critical = false;
        rec.rank_lex[3] = is_chain_ladder(corners).chain_ladder && no_critical;
        // cover sensitivity of the corner-kind multiset, recorded not judged
        std::map<CornerKind, int> reference;
        for (const Corner& c : corners) reference[c.kind]++;
        for (const ChainCover& other : all_two_chain_covers(p)) {
          std::map<CornerKind, int> kinds;
          for (const Corner& c : classify_corners(grid_embedding(il, other))) kinds[c.kind]++;
          if (kinds != reference) rec.cover_sensitive = true;
        }
      } else {
        rec.rank_lex[3] = false;
      }
      for (int i = 1; i < 4; ++i)
        if (rec.rank_lex[i] != rec.rank_lex[0]) {
          rec.disagreements.push_back(
              "rank-lex vector " + detail::bits({rec.rank_lex[0], rec.rank_lex[1], rec.rank_lex[2],
                                                rec.rank_lex[3]}));
          break;
        }
      if (cfg.tiebreak_sweep && L.n <= 7) {
        for (const auto& prec : rank_compatible_zprecs(L)) {
          if (rank_lex_gb_check(L, prec, cfg.degree_cap).equals_hibi != rec.rank_lex[0]) {
            rec.tiebreak_dependent = true;
            break;
          }
        }
      }
    }

    if (cfg.check_urc_prop) {
      rec.urc_prop[0] = urc.urc;
      rec.urc_prop[1] = detail::is_chain_or_two_incomparable_chains(p);
      rec.urc_prop[2] = is_grid_iso(L).has_value();
      if (cfg.mutation == Mutation::FlipUrc) rec.urc_prop[0] = !rec.urc_prop[0];
      for (int i = 1; i < 3; ++i)
        if (rec.urc_prop[i] != rec.urc_prop[0]) {
          rec.disagreements.push_back(
              "urc vector " +
              detail::bits({rec.urc_prop[0], rec.urc_prop[1], rec.urc_prop[2]}));
          break;
        }
    }

    if (cfg.check_rees && p.size() <= cfg.rees_max_poset_size) {
      rec.rees_checked = true;
      rec.rees[0] = urc.urc;
      auto rgb = rees_gb_check(rees_instance(il), cfg.degree_cap);
      rec.rees[1] = rgb.equals_presentation;
      if (!rgb.presentation_generates_kernel)
        rec.disagreements.push_back("rees presentation does not generate the kernel");
      if (rec.rees[0] != rec.rees[1])
        rec.disagreements.push_back("rees vector " + detail::bits({rec.rees[0], rec.rees[1]}));
    }
  } catch (const Error& e) {
    rec.defect = e.what();
  }
  return rec;
}

inline LatticeRecord check_lattice(const Lattice& L, const Campaign& cfg) {
  LatticeRecord rec;
  rec.n = L.n;
  try {
    rec.distributive = is_distributive(L).distributive;
    rec.revlex_criterion = hibi_revlex_criterion(L, cfg.degree_cap);
    if (rec.distributive != rec.revlex_criterion)
      rec.disagreements.push_back("distributivity vs revlex criterion");
    rec.urc = is_urc(L).urc;
    if (rec.urc && !rec.distributive) rec.disagreements.push_back("URC lattice not distributive");
    if (rec.distributive) {
      auto nb = neighbor_bounds(L);
      bool curc = is_conditionally_urc(L).conditionally_urc;
      if (curc != (nb.max_lower <= 2) || curc != (nb.max_upper <= 2))
        rec.disagreements.push_back("neighbor-bound lemma failed");
    }
  } catch (const Error& e) {
    rec.defect = e.what();
  }
  return rec;
}

/// Runs the campaign: every labeled poset on 1..max elements (optionally up
/// to iso), in parallel with a deterministic aggregation, plus the
/// small-lattice census. Any counterexample or defect fails the run.
inline EquivalenceReport run_campaign(const Campaign& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.max_poset_size > 6)
    throw SizeExceeded("campaigns are capped at posets with 6 elements");
  EquivalenceReport report;
  report.posets_per_n.assign(cfg.max_poset_size + 1, 0);

  std::vector<Poset> posets;
  for (int n = 1; n <= cfg.max_poset_size; ++n) {
    std::vector<Poset> batch = cfg.iso_dedup ? posets_up_to_iso(n) : all_labeled_posets(n);
    report.posets_per_n[n] = static_cast<long long>(batch.size());
    for (auto& p : batch) posets.push_back(std::move(p));
  }

  report.poset_records.resize(posets.size());
  const int jobs = std::max(1, cfg.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= posets.size()) break;
      report.poset_records[i] = check_equivalences(posets[i], cfg);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < posets.size(); ++i) {
    const PosetRecord& rec = report.poset_records[i];
    std::string id = detail::poset_id(posets[i]);
    for (const std::string& d : rec.disagreements)
      report.counterexamples.push_back(id + ": " + d);
    if (!rec.defect.empty()) report.defects.push_back(id + ": " + rec.defect);
    if (rec.cover_sensitive) ++report.cover_sensitive_count;
    if (rec.tiebreak_dependent) ++report.tiebreak_dependent_count;
  }

  for (int n = 1; n <= cfg.lattice_census_max; ++n) {
    for (const Lattice& L : lattices_up_to_iso(n)) {
      LatticeRecord rec = check_lattice(L, cfg);
      std::string id = "lattice n=" + std::to_string(n);
      for (const std::string& d : rec.disagreements)
        report.counterexamples.push_back(id + ": " + d);
      if (!rec.defect.empty()) report.defects.push_back(id + ": " + rec.defect);
      report.lattice_records.push_back(std::move(rec));
    }
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace hibi
