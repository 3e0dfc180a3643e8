#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hibi/base.hpp"
#include "hibi/grid.hpp"
#include "hibi/harness.hpp"
#include "hibi/relations.hpp"

namespace hibi {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Poset and lattice wire formats.
//   poset:   {"elements":["p1","p2"],"covers":[["p1","p2"]]}
//   lattice: {"size":n,"leq":[[bool...]...]}  or  {"covers":[[i,j]...]}
// ---------------------------------------------------------------------------

inline Poset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements"))
    throw Error("poset json needs an \"elements\" array");
  std::vector<std::string> labels;
  for (const auto& e : j.at("elements")) labels.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers"))
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw Error("cover pairs are [lower, upper]");
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  return build_poset(std::move(labels), covers);
}

inline Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = p.labels;
  Json covers = Json::array();
  for (auto [a, b] : p.covers) covers.push_back(Json::array({p.labels[a], p.labels[b]}));
  j["covers"] = covers;
  return j;
}

inline Lattice lattice_from_json(const Json& j) {
  if (j.contains("leq")) {
    const auto& rows = j.at("leq");
    std::vector<std::vector<bool>> leq;
    for (const auto& row : rows) {
      leq.emplace_back();
      for (const auto& v : row) leq.back().push_back(v.get<bool>());
    }
    return build_lattice(leq);
  }
  if (j.contains("covers")) {
    std::vector<std::pair<int, int>> covers;
    int max_id = -1;
    for (const auto& c : j.at("covers")) {
      covers.emplace_back(c[0].get<int>(), c[1].get<int>());
      max_id = std::max({max_id, covers.back().first, covers.back().second});
    }
    int n = j.contains("size") ? j.at("size").get<int>() : max_id + 1;
    return build_lattice_from_covers(n, covers);
  }
  throw Error("lattice json needs \"leq\" or \"covers\"");
}

inline Json lattice_to_json(const Lattice& L) {
  Json j;
  j["size"] = L.n;
  Json covers = Json::array();
  for (int x = 0; x < L.n; ++x)
    for_each_bit(L.upper_covers[x], [&](int y) { covers.push_back(Json::array({x, y})); });
  j["covers"] = covers;
  return j;
}

// ---------------------------------------------------------------------------
// Variable naming for reports: "z:<downset-bits>" (character k is '1' when
// poset element k lies in the downset), "x:<label>", "y:<label>", "t".
// ---------------------------------------------------------------------------

struct VarNames {
  std::vector<std::string> labels;  // poset labels for x/y
  std::vector<Mask> z_downsets;     // per z index; empty -> plain indices

  static VarNames of(const IdealLattice& il) {
    VarNames v;
    v.labels = il.poset.labels;
    v.z_downsets = il.lat.element_downsets;
    return v;
  }
  static VarNames of(const ReesInstance& r) {
    VarNames v;
    v.labels = r.hat.poset.labels;
    for (int e : r.elements) v.z_downsets.push_back(r.hat.lat.element_downsets[e]);
    return v;
  }

  std::string bits(Mask m) const {
    std::string s(labels.size(), '0');
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (has_bit(m, static_cast<int>(k))) s[k] = '1';
    return s;
  }
  std::string name(Variable v) const {
    switch (v.kind) {
      case VarKind::Z:
        if (v.index < static_cast<int>(z_downsets.size()))
          return "z:" + bits(z_downsets[v.index]);
        return "z:" + std::to_string(v.index);
      case VarKind::X: return "x:" + labels.at(v.index);
      case VarKind::Y: return "y:" + labels.at(v.index);
      case VarKind::T: return "t";
      default: throw Error("image variables never appear in reports");
    }
  }
};

inline Json monomial_to_json(const Monomial& m, const VarNames& names) {
  Json j = Json::object();
  for (auto& [v, e] : m.exps) j[names.name(v)] = e;
  return j;
}

inline Json binomial_to_json(const Binomial& b, const VarNames& names) {
  Json j;
  j["lead"] = monomial_to_json(b.lead, names);
  j["trail"] = monomial_to_json(b.trail, names);
  return j;
}

inline Json gb_report(const std::vector<Binomial>& gb, const TermOrder& o,
                      const VarNames& names) {
  Json j;
  j["order"] = o.name;
  j["size"] = gb.size();
  Json elems = Json::array();
  for (const Binomial& b : gb) elems.push_back(binomial_to_json(b, names));
  j["elements"] = elems;
  return j;
}

// ---------------------------------------------------------------------------
// Embedding report: {"m":..,"n":..,"points":[[i,j]..],"corners":[{...}..]}.
// ---------------------------------------------------------------------------

inline std::string corner_kind_name(CornerKind k) {
  switch (k) {
    case CornerKind::Upper: return "upper";
    case CornerKind::Lower: return "lower";
    case CornerKind::Critical: return "critical";
  }
  return "?";
}

inline Json embedding_report(const GridEmbedding& e) {
  Json j;
  j["m"] = e.m;
  j["n"] = e.n;
  Json pts = Json::array();
  std::vector<GridPoint> sorted = e.image;
  std::sort(sorted.begin(), sorted.end(),
            [](GridPoint a, GridPoint b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (auto p : sorted) pts.push_back(Json::array({p.i, p.j}));
  j["points"] = pts;
  Json corners = Json::array();
  for (const Corner& c : classify_corners(e)) {
    Json cj;
    cj["at"] = Json::array({c.at.i, c.at.j});
    cj["kind"] = corner_kind_name(c.kind);
    corners.push_back(cj);
  }
  j["corners"] = corners;
  return j;
}

// ---------------------------------------------------------------------------
// Classification certificates, one object per theorem:
//   {"theorem":"indispensability","conditions":{"a":..},"witnesses":{..}}
// ---------------------------------------------------------------------------

inline Json classification_report(const Poset& p, bool with_rees = true,
                                  int degree_cap = kDefaultDegreeCap) {
  IdealLattice il = ideal_lattice(p);
  const Lattice& L = il.lat;
  VarNames names = VarNames::of(il);
  Json out;
  out["poset"] = poset_to_json(p);
  out["lattice_size"] = L.n;
  out["distributive"] = is_distributive(L).distributive;

  Json theorems = Json::array();

  {  // indispensability classification
    Json t;
    t["theorem"] = "indispensability";
    auto ind = all_hibi_indispensable(il);
    auto curc = is_conditionally_urc(L);
    bool two_gen = true;
    for (const DownSet& d : enumerate_down_sets(p))
      if (minimal_generators(p, d).size() > 2) two_gen = false;
    auto cover = two_chain_cover(p);
    bool embeds = cover.has_value() && is_full_sublattice(grid_embedding(il, *cover));
    Json cond;
    cond["a_indispensable"] = ind.all;
    cond["b_conditionally_urc"] = curc.conditionally_urc;
    cond["c_ideals_two_generated"] = two_gen;
    cond["d_two_chain_cover"] = min_chain_partition(p) <= 2;
    cond["e_full_grid_embedding"] = embeds;
    t["conditions"] = cond;
    Json w = Json::object();
    if (ind.witness) {
      auto [a, b] = *ind.witness;
      w["dispensable_relation"] =
          Json::array({names.bits(L.element_downsets[a]), names.bits(L.element_downsets[b])});
    }
    if (curc.witness)
      w["interval_with_two_complementary_sets"] = Json::array(
          {names.bits(L.element_downsets[curc.witness->lo]),
           names.bits(L.element_downsets[curc.witness->hi])});
    if (cover) {
      Json cc;
      Json c = Json::array(), d = Json::array();
      for (int x : cover->chain_c) c.push_back(p.labels[x]);
      for (int x : cover->chain_d) d.push_back(p.labels[x]);
      cc["chain_c"] = c;
      cc["chain_d"] = d;
      w["cover"] = cc;
      w["embedding"] = embedding_report(grid_embedding(il, *cover));
    }
    t["witnesses"] = w;
    theorems.push_back(t);
  }

  {  // rank-lex basis classification
    Json t;
    t["theorem"] = "rank_lex_gb";
    auto gbc = rank_lex_gb_check(L, std::nullopt, degree_cap);
    auto condc = interval_condition_check(L);
    auto cover = two_chain_cover(p);
    bool ladder = false;
    if (cover) {
      auto corners = classify_corners(grid_embedding(il, *cover));
      bool no_critical = true;
      for (const Corner& c : corners)
        if (c.kind == CornerKind::Critical) no_critical = false;
      ladder = is_chain_ladder(corners).chain_ladder && no_critical;
    }
    TermOrder rl = rank_lex(L);
    auto full_gb = buchberger(hibi_relations(L, rl).relations, rl, degree_cap);
    bool quadratic = true;
    for (const Binomial& b : full_gb)
      if (b.degree() > 2) quadratic = false;
    Json cond;
    cond["a_rank_lex_basis_is_hibi"] = gbc.equals_hibi;
    cond["b_indispensable_and_quadratic"] = all_hibi_indispensable(il).all && quadratic;
    cond["c_interval_condition"] = condc.holds;
    cond["d_chain_ladder_no_critical"] = ladder;
    t["conditions"] = cond;
    Json w = Json::object();
    if (gbc.offending) w["non_hibi_basis_element"] = binomial_to_json(*gbc.offending, names);
    if (condc.witness) {
      Json triple = Json::array();
      for (int x : *condc.witness) triple.push_back(names.bits(L.element_downsets[x]));
      w["interval_condition_witness"] = triple;
    }
    t["witnesses"] = w;
    theorems.push_back(t);
  }

  {  // distributivity vs the rank-revlex criterion
    Json t;
    t["theorem"] = "rank_revlex_gb";
    Json cond;
    cond["a_distributive"] = is_distributive(L).distributive;
    cond["b_hibi_is_basis"] = hibi_revlex_criterion(L, degree_cap);
    t["conditions"] = cond;
    t["witnesses"] = Json::object();
    theorems.push_back(t);
  }

  {  // URC / grid classification
    Json t;
    t["theorem"] = "urc_grid";
    auto urc = is_urc(L);
    auto grid = is_grid_iso(L);
    Json cond;
    cond["a_urc"] = urc.urc;
    cond["b_poset_two_incomparable_chains"] = detail::is_chain_or_two_incomparable_chains(p);
    cond["c_grid_isomorphic"] = grid.has_value();
    t["conditions"] = cond;
    Json w = Json::object();
    if (urc.witness)
      w["urc_witness_interval"] = Json::array(
          {names.bits(L.element_downsets[urc.witness->lo]),
           names.bits(L.element_downsets[urc.witness->hi])});
    if (grid) w["grid_extents"] = Json::array({grid->first, grid->second});
    t["witnesses"] = w;
    theorems.push_back(t);
  }

  if (with_rees) {
    Json t;
    t["theorem"] = "rees";
    ReesInstance inst = rees_instance(il);
    auto rgb = rees_gb_check(inst, degree_cap);
    Json cond;
    cond["a_urc"] = is_urc(L).urc;
    cond["b_rees_basis_is_presentation"] = rgb.equals_presentation;
    t["conditions"] = cond;
    Json w = Json::object();
    w["presentation_generates_kernel"] = rgb.presentation_generates_kernel;
    if (rgb.offending)
      w["extra_basis_element"] = binomial_to_json(*rgb.offending, VarNames::of(inst));
    t["witnesses"] = w;
    theorems.push_back(t);
  }

  out["theorems"] = theorems;
  return out;
}

// ---------------------------------------------------------------------------
// Campaign report. The "timing" object is the only nondeterministic field.
// ---------------------------------------------------------------------------

inline std::string mutation_name(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::FlipIndispensable: return "flip-indispensable";
    case Mutation::FlipConditionallyUrc: return "flip-conditionally-urc";
    case Mutation::FlipWidth: return "flip-width";
    case Mutation::FlipUrc: return "flip-urc";
  }
  return "?";
}

inline Json campaign_report_json(const Campaign& cfg, const EquivalenceReport& r) {
  Json j;
  Json c;
  c["max_poset_size"] = cfg.max_poset_size;
  c["rees_max_poset_size"] = cfg.rees_max_poset_size;
  c["lattice_census_max"] = cfg.lattice_census_max;
  c["tiebreak_sweep"] = cfg.tiebreak_sweep;
  c["degree_cap"] = cfg.degree_cap;
  c["jobs"] = cfg.jobs;
  c["iso_dedup"] = cfg.iso_dedup;
  c["mutation"] = mutation_name(cfg.mutation);
  j["config"] = c;
  Json per = Json::array();
  for (std::size_t n = 1; n < r.posets_per_n.size(); ++n) per.push_back(r.posets_per_n[n]);
  j["posets_per_size"] = per;
  j["poset_total"] = r.poset_records.size();
  j["lattice_total"] = r.lattice_records.size();
  j["counterexamples"] = r.counterexamples;
  j["defects"] = r.defects;
  j["cover_sensitive_count"] = r.cover_sensitive_count;
  j["tiebreak_dependent_count"] = r.tiebreak_dependent_count;
  j["ok"] = r.ok();
  j["timing"] = Json{{"elapsed_seconds", r.elapsed_seconds}};
  return j;
}

inline std::string campaign_summary_text(const Campaign& cfg, const EquivalenceReport& r) {
  std::ostringstream os;
  os << "posets checked: " << r.poset_records.size() << " (";
  for (std::size_t n = 1; n < r.posets_per_n.size(); ++n)
    os << (n > 1 ? "+" : "") << r.posets_per_n[n];
  os << ")\n";
  if (cfg.lattice_census_max > 0)
    os << "lattices checked (census to " << cfg.lattice_census_max
       << " elements): " << r.lattice_records.size() << "\n";
  os << "counterexamples: " << r.counterexamples.size() << "\n";
  for (const auto& c : r.counterexamples) os << "  " << c << "\n";
  os << "defects: " << r.defects.size() << "\n";
  for (const auto& d : r.defects) os << "  " << d << "\n";
  os << "cover-sensitive corner multisets: " << r.cover_sensitive_count << "\n";
  if (cfg.tiebreak_sweep)
    os << "tie-break dependent verdicts: " << r.tiebreak_dependent_count << "\n";
  os << (r.ok() ? "OK" : "FAIL") << " (" << r.elapsed_seconds << "s)\n";
  return os.str();
}

}  // namespace hibi
