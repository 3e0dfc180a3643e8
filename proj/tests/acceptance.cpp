// Acceptance suite: the eight classification/verification criteria, each
// printed as one PASS/FAIL line with its runtime. Exits nonzero if any
// criterion fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "hibi/grid.hpp"
#include "hibi/harness.hpp"
#include "hibi/json_io.hpp"
#include "hibi/relations.hpp"

using namespace hibi;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CriterionResult {
  int id = 0;
  std::string label;
  bool pass = false;
  double seconds = 0;
  double budget = 0;
  std::string detail;
};

CriterionResult make_criterion(int id, std::string label, double budget) {
  CriterionResult r;
  r.id = id;
  r.label = std::move(label);
  r.budget = budget;
  return r;
}

void print_result(const CriterionResult& r) {
  std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)%s%s\n", r.pass ? "PASS" : "FAIL",
              r.id, r.label.c_str(), r.seconds, r.budget,
              r.detail.empty() ? "" : " -- ", r.detail.c_str());
  std::fflush(stdout);
}

// one poset's worth of sweep data for criteria 2, 3, 4 and 7
struct SweepRecord {
  std::string id;
  bool revlex_criterion = false;   // criterion 2 (ideal lattices: must hold)
  bool indisp_agree = false;          // criterion 3
  bool rank_lex_agree = false;      // criterion 4
  bool birkhoff_ok = false;        // criterion 7
  bool urc_implies_distributive = false;
  bool neighbors_ok = false;
  bool dilworth_ok = false;
  std::string defect;              // any dual-route disagreement thrown
};

SweepRecord sweep_one(const Poset& p) {
  SweepRecord rec;
  rec.id = detail::poset_id(p);
  try {
    IdealLattice il = ideal_lattice(p);
    const Lattice& L = il.lat;

    rec.revlex_criterion = hibi_revlex_criterion(L);

    bool a = all_hibi_indispensable(il).all;
    bool b = is_conditionally_urc(L).conditionally_urc;
    bool c = true;
    for (const DownSet& d : enumerate_down_sets(p))
      if (minimal_generators(p, d).size() > 2) c = false;
    bool d = min_chain_partition(p) <= 2;
    auto cover = two_chain_cover(p);
    bool e = cover.has_value() && is_full_sublattice(grid_embedding(il, *cover));
    rec.indisp_agree = (a == b && b == c && c == d && d == e);

    bool da = rank_lex_gb_check(L).equals_hibi;
    TermOrder rl = rank_lex(L);
    auto gb = buchberger(hibi_relations(L, rl).relations, rl);
    bool quadratic = true;
    for (const Binomial& g : gb)
      if (g.degree() > 2) quadratic = false;
    bool db = a && quadratic;
    bool dc = interval_condition_check(L).holds;
    bool dd = false;
    if (cover) {
      auto corners = classify_corners(grid_embedding(il, *cover));
      bool no_critical = true;
      for (const Corner& k : corners)
        if (k.kind == CornerKind::Critical) no_critical = false;
      dd = is_chain_ladder(corners).chain_ladder && no_critical;
    }
    rec.rank_lex_agree = (da == db && db == dc && dc == dd);

    rec.birkhoff_ok = poset_isomorphic(join_irreducibles(L).poset, p);
    bool urc = is_urc(L).urc;
    rec.urc_implies_distributive = !urc || is_distributive(L).distributive;
    auto nb = neighbor_bounds(L);
    rec.neighbors_ok = (b == (nb.max_lower <= 2)) && (b == (nb.max_upper <= 2));
    rec.dilworth_ok = (cover.has_value() == width_le_two(p).le_two) &&
                      (cover.has_value() == d) &&
                      !two_chain_cover_inductive(p).construction_failed;
  } catch (const Error& err) {
    rec.defect = err.what();
  }
  return rec;
}

template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& xs, Fn fn) {
  std::vector<decltype(fn(xs[0]))> out(xs.size());
  std::atomic<std::size_t> next{0};
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= xs.size()) break;
      out[i] = fn(xs[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::string first_failures(const std::vector<std::string>& all, std::size_t keep = 3) {
  std::ostringstream os;
  os << all.size() << " failure(s)";
  for (std::size_t i = 0; i < all.size() && i < keep; ++i) os << "; " << all[i];
  if (all.size() > keep) os << "; ...";
  return os.str();
}

}  // namespace

int main() {
  std::vector<CriterionResult> results;

  // ------------------------------------------------------------------ 1
  {
    CriterionResult r = make_criterion(1, "B3 dispensability via the bottom-top fiber", 1);
    auto t0 = std::chrono::steady_clock::now();
    IdealLattice b3 = ideal_lattice(make_poset(3, {}));
    Fiber f = quad_fiber(b3, b3.lat.bottom, b3.lat.top);
    auto ind = all_hibi_indispensable(b3);
    bool witness_in_top_fiber = false;
    if (ind.witness) {
      auto [a, b] = *ind.witness;
      witness_in_top_fiber =
          b3.lat.meet(a, b) == b3.lat.bottom && b3.lat.join(a, b) == b3.lat.top;
    }
    r.seconds = seconds_since(t0);
    r.pass = f.monomials.size() == 4 && !ind.all && witness_in_top_fiber &&
             r.seconds < r.budget;
    std::ostringstream os;
    os << "fiber size " << f.monomials.size() << ", witness in top fiber "
       << (witness_in_top_fiber ? "yes" : "no");
    r.detail = os.str();
    results.push_back(r);
    print_result(r);
  }

  // shared sweep over every labeled poset with 1..5 elements
  std::vector<Poset> corpus;
  for (int n = 1; n <= 5; ++n)
    for (Poset& p : all_labeled_posets(n)) corpus.push_back(std::move(p));
  auto sweep_t0 = std::chrono::steady_clock::now();
  auto sweep = parallel_map(corpus, sweep_one);
  double sweep_seconds = seconds_since(sweep_t0);

  std::vector<std::string> defects;
  for (const auto& rec : sweep)
    if (!rec.defect.empty()) defects.push_back(rec.id + ": " + rec.defect);

  // ------------------------------------------------------------------ 2
  {
    CriterionResult r = make_criterion(2, "rank-revlex basis criterion: all posets <= 5, all lattices <= 8", 600);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    for (const auto& rec : sweep)
      if (!rec.revlex_criterion) bad.push_back(rec.id);
    long long nondistributive = 0;
    for (int n = 1; n <= 8; ++n)
      for (const Lattice& L : lattices_up_to_iso(n)) {
        bool dist = is_distributive(L).distributive;
        bool crit = hibi_revlex_criterion(L);
        if (dist != crit)
          bad.push_back("lattice n=" + std::to_string(n) + " census mismatch");
        if (!dist) ++nondistributive;
      }
    r.seconds = sweep_seconds + seconds_since(t0);
    r.pass = bad.empty() && defects.empty() && r.seconds < r.budget;
    std::ostringstream os;
    os << corpus.size() << " posets, " << nondistributive
       << " non-distributive lattices all fail as required";
    r.detail = bad.empty() ? os.str() : first_failures(bad);
    results.push_back(r);
    print_result(r);
  }

  // ------------------------------------------------------------------ 3
  {
    CriterionResult r = make_criterion(3, "five-way indispensability equivalence on all posets <= 5", 600);
    std::vector<std::string> bad;
    for (const auto& rec : sweep)
      if (!rec.indisp_agree) bad.push_back(rec.id);
    r.seconds = sweep_seconds;
    r.pass = bad.empty() && defects.empty() && r.seconds < r.budget;
    r.detail = bad.empty() ? "fiber and span oracles never disagreed" : first_failures(bad);
    results.push_back(r);
    print_result(r);
  }

  // ------------------------------------------------------------------ 4
  {
    CriterionResult r = make_criterion(4, "four-way rank-lex basis equivalence on all posets <= 5", 900);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    for (const auto& rec : sweep)
      if (!rec.rank_lex_agree) bad.push_back(rec.id);
    // named instances with machine-checked witnesses
    Poset bowtie = make_poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    IdealLattice bt = ideal_lattice(bowtie);
    auto bt_gb = rank_lex_gb_check(bt.lat);
    auto bt_c = interval_condition_check(bt.lat);
    auto bt_corners = classify_corners(grid_embedding(bt, *two_chain_cover(bowtie)));
    bool bowtie_ok = !bt_gb.equals_hibi && bt_gb.offending.has_value() &&
                     bt_gb.offending->degree() == 3 && !bt_c.holds &&
                     bt_c.witness.has_value() && bt_corners.size() == 1 &&
                     bt_corners[0].kind == CornerKind::Critical &&
                     bt_corners[0].at == GridPoint{1, 1};
    Poset gm = make_poset(4, {{0, 1}, {2, 3}, {0, 3}});
    IdealLattice gmil = ideal_lattice(gm);
    auto gm_gb = rank_lex_gb_check(gmil.lat);
    auto gm_corners = classify_corners(grid_embedding(gmil, *two_chain_cover(gm)));
    bool grid_minus_ok = gm_gb.equals_hibi && interval_condition_check(gmil.lat).holds &&
                         is_chain_ladder(gm_corners).chain_ladder && gm_corners.size() == 1 &&
                         gm_corners[0].kind != CornerKind::Critical;
    if (!bowtie_ok) bad.push_back("bowtie witnesses");
    if (!grid_minus_ok) bad.push_back("grid-minus-corner witnesses");
    r.seconds = sweep_seconds + seconds_since(t0);
    r.pass = bad.empty() && defects.empty() && r.seconds < r.budget;
    r.detail = bad.empty() ? "bowtie all-false and grid-minus-corner all-true with witnesses"
                           : first_failures(bad);
    results.push_back(r);
    print_result(r);
  }

  // ------------------------------------------------------------------ 5
  {
    CriterionResult r = make_criterion(5, "URC <=> Rees basis equals presentation on all posets <= 4", 900);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> mismatches, kernel_failures;
    long long checked = 0;
    for (int n = 1; n <= 4; ++n)
      for (const Poset& p : all_labeled_posets(n)) {
        ++checked;
        IdealLattice il = ideal_lattice(p);
        bool urc = is_urc(il.lat).urc;
        auto rgb = rees_gb_check(rees_instance(il));
        if (!rgb.presentation_generates_kernel)
          kernel_failures.push_back(detail::poset_id(p));
        if (urc != rgb.equals_presentation)
          mismatches.push_back(detail::poset_id(p) + (urc ? " urc-not-basis" : " basis-not-urc"));
      }
    r.seconds = seconds_since(t0);
    r.pass = mismatches.empty() && kernel_failures.empty() && r.seconds < r.budget;
    std::ostringstream os;
    os << checked << " posets; presentation generated the kernel in every case";
    if (!mismatches.empty()) os << "; equivalence fails on " << first_failures(mismatches);
    r.detail = os.str();
    results.push_back(r);
    print_result(r);
  }

  // ------------------------------------------------------------------ 6
  {
    CriterionResult r = make_criterion(6, "proper poset-ideal sub-semilattices of small grids fail with x*y*z", 60);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    int proper_checked = 0;
    for (const Poset& p : {make_poset(2, {}), make_poset(3, {{1, 2}})}) {
      IdealLattice hat = ideal_lattice(p);
      Mask ji = 0;  // hat elements that are principal downsets
      for (int q = 0; q < p.size(); ++q) ji |= bit(hat.element_of(p.below[q]));
      const Mask all = bit(hat.lat.n) - 1;
      for (Mask sub = 0; sub <= all; ++sub) {
        if (!subset_of(ji, sub) || sub == 0) continue;
        bool ideal = true;
        for_each_bit(sub, [&](int x) {
          if (!subset_of(hat.lat.down[x], sub)) ideal = false;
        });
        if (!ideal) continue;
        auto check = rees_gb_check(rees_instance(hat, sub));
        if (sub == all) {
          if (!check.equals_presentation) bad.push_back("full lattice failed");
          continue;
        }
        ++proper_checked;
        bool xyz = false;
        if (check.offending) {
          int nx = 0, ny = 0, nz = 0;
          for (auto& [v, e] : check.offending->lead.exps) {
            if (v.kind == VarKind::X) nx += e;
            if (v.kind == VarKind::Y) ny += e;
            if (v.kind == VarKind::Z) nz += e;
          }
          xyz = nx == 1 && ny == 1 && nz == 1;
        }
        if (check.equals_presentation || !xyz)
          bad.push_back("proper ideal did not fail with an x*y*z lead");
      }
    }
    r.seconds = seconds_since(t0);
    r.pass = bad.empty() && proper_checked == 3 && r.seconds < r.budget;
    std::ostringstream os;
    os << proper_checked << " proper sub-semilattices all fail with x*y*z leads";
    r.detail = bad.empty() ? os.str() : first_failures(bad);
    results.push_back(r);
    print_result(r);
  }

  // ------------------------------------------------------------------ 7
  {
    CriterionResult r = make_criterion(7, "structural invariants over all posets <= 5", 300);
    std::vector<std::string> bad;
    for (const auto& rec : sweep) {
      if (!rec.birkhoff_ok) bad.push_back(rec.id + " birkhoff");
      if (!rec.urc_implies_distributive) bad.push_back(rec.id + " urc->distributive");
      if (!rec.neighbors_ok) bad.push_back(rec.id + " neighbors");
      if (!rec.dilworth_ok) bad.push_back(rec.id + " dilworth");
    }
    for (const auto& d : defects) bad.push_back(d);
    r.seconds = sweep_seconds;
    r.pass = bad.empty() && r.seconds < r.budget;
    r.detail = bad.empty() ? "birkhoff, urc->distributive, neighbors, dilworth, closure"
                           : first_failures(bad);
    results.push_back(r);
    print_result(r);
  }

  // ------------------------------------------------------------------ 8
  {
    CriterionResult r = make_criterion(8, "Hibi relation basis equals elimination kernel on all posets <= 4", 300);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    for (int n = 1; n <= 4; ++n)
      for (const Poset& p : all_labeled_posets(n)) {
        IdealLattice il = ideal_lattice(p);
        TermOrder o = rank_rev_lex(il.lat);
        auto direct = buchberger(hibi_relations(il.lat, o).relations, o);
        auto oracle = toric_kernel(hibi_map(il), o);
        if (direct != oracle) bad.push_back(detail::poset_id(p));
      }
    r.seconds = seconds_since(t0);
    r.pass = bad.empty() && r.seconds < r.budget;
    r.detail = bad.empty() ? "exact set equality in every case" : first_failures(bad);
    results.push_back(r);
    print_result(r);
  }

  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
