// Command-line front end: classification, Groebner bases, fibers,
// indispensability, Rees checks, exhaustive verification, poset streams.
//
// Exit codes: 0 success / true verdict, 1 false classification verdict,
// 2 runtime error, 64 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hibi/json_io.hpp"

namespace {

using namespace hibi;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

struct CommonInput {
  std::string poset_file;
  std::string poset_inline;
  std::string lattice_file;
};

void add_input_options(CLI::App* cmd, CommonInput& in, bool lattice_ok = false) {
  cmd->add_option("--poset", in.poset_file, "poset JSON file");
  cmd->add_option("--poset-inline", in.poset_inline, "poset JSON given inline");
  if (lattice_ok) cmd->add_option("--lattice", in.lattice_file, "lattice JSON file");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  Json j;
  f >> j;
  return j;
}

int input_count(const CommonInput& in) {
  return !in.poset_file.empty() + !in.poset_inline.empty() + !in.lattice_file.empty();
}

Poset poset_from_input(const CommonInput& in) {
  if (!in.poset_file.empty()) return poset_from_json(read_json_file(in.poset_file));
  return poset_from_json(Json::parse(in.poset_inline));
}

int degree_cap_from_env() {
  const char* env = std::getenv("HIBI_DEGREE_CAP");
  if (!env) return kDefaultDegreeCap;
  try {
    int cap = std::stoi(env);
    if (cap < 2) throw Error("");
    return cap;
  } catch (...) {
    throw CLI::ValidationError("HIBI_DEGREE_CAP", "must be an integer >= 2");
  }
}

std::string mono_text(const Monomial& m, const VarNames& names) {
  if (m.is_one()) return "1";
  std::string s;
  for (auto& [v, e] : m.exps) {
    if (!s.empty()) s += "*";
    s += names.name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string binomial_text(const Binomial& b, const VarNames& names) {
  return mono_text(b.lead, names) + " - " + mono_text(b.trail, names);
}

/// Accepts a lattice element as a downset bit string ("0110", position k =
/// poset element k) or as a plain element index.
int parse_element(const IdealLattice& il, const std::string& token) {
  bool bits = token.size() == static_cast<std::size_t>(il.poset.size()) &&
              token.find_first_not_of("01") == std::string::npos;
  if (bits && il.poset.size() > 0) {
    Mask m = 0;
    for (std::size_t k = 0; k < token.size(); ++k)
      if (token[k] == '1') m |= bit(static_cast<int>(k));
    return il.element_of(m);
  }
  int id = std::stoi(token);
  if (id < 0 || id >= il.lat.n) throw Error("element index out of range: " + token);
  return id;
}

std::pair<int, int> parse_pair(const IdealLattice& il, const std::string& arg) {
  auto comma = arg.find(',');
  if (comma == std::string::npos) throw Error("--pair wants two comma-separated elements");
  return {parse_element(il, arg.substr(0, comma)), parse_element(il, arg.substr(comma + 1))};
}

int cmd_classify(const CommonInput& in, bool json, bool no_rees, int cap) {
  Json report;
  if (!in.lattice_file.empty()) {
    Lattice L = lattice_from_json(read_json_file(in.lattice_file));
    if (!is_distributive(L).distributive) {
      report["lattice_size"] = L.n;
      report["distributive"] = false;
      report["hibi_revlex_basis"] = hibi_revlex_criterion(L, cap);
      std::cout << (json ? report.dump(2) : std::string("not distributive")) << "\n";
      return kExitFalse;
    }
    report = classification_report(join_irreducibles(L).poset, !no_rees, cap);
    report["note"] = "input was a lattice; classified via its join-irreducible poset";
  } else {
    report = classification_report(poset_from_input(in), !no_rees, cap);
  }
  bool indispensable = false;
  for (const auto& t : report["theorems"])
    if (t["theorem"] == "indispensability") {
      indispensable = true;
      for (const auto& [k, v] : t["conditions"].items())
        if (v == false) indispensable = false;
    }
  if (json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "lattice: " << report["lattice_size"] << " elements, "
              << (report["distributive"] == true ? "distributive" : "not distributive") << "\n";
    for (const auto& t : report["theorems"]) {
      std::cout << t["theorem"].get<std::string>() << ":";
      for (const auto& [k, v] : t["conditions"].items())
        std::cout << " " << k << "=" << (v == true ? "yes" : "no");
      std::cout << "\n";
    }
    std::cout << (indispensable ? "hibi relations indispensable\n"
                                : "hibi relations dispensable\n");
  }
  return indispensable ? kExitTrue : kExitFalse;
}

int cmd_gb(const CommonInput& in, const std::string& order_name,
           const std::string& tiebreak, bool json, int cap) {
  Lattice L;
  VarNames names;
  if (!in.lattice_file.empty()) {
    L = lattice_from_json(read_json_file(in.lattice_file));
  } else {
    IdealLattice il = ideal_lattice(poset_from_input(in));
    L = il.lat;
    names = VarNames::of(il);
  }
  TermOrder o;
  if (order_name == "rank-lex")
    o = rank_lex(L);
  else if (order_name == "rank-revlex")
    o = rank_rev_lex(L);
  else
    throw CLI::ValidationError("--order", "expected rank-lex or rank-revlex");
  if (!tiebreak.empty()) {
    // comma-separated element ids, ascending precedence; must refine rank
    std::vector<int> order_ids;
    std::stringstream ss(tiebreak);
    std::string tok;
    while (std::getline(ss, tok, ',')) order_ids.push_back(std::stoi(tok));
    if (static_cast<int>(order_ids.size()) != L.n)
      throw CLI::ValidationError("--tiebreak", "needs every lattice element exactly once");
    std::vector<int> prec(L.n, -1);
    for (int pos = 0; pos < L.n; ++pos) {
      int id = order_ids[pos];
      if (id < 0 || id >= L.n || prec[id] >= 0)
        throw CLI::ValidationError("--tiebreak", "needs every lattice element exactly once");
      prec[id] = pos;
      if (pos > 0 && L.rank[order_ids[pos - 1]] > L.rank[id])
        throw CLI::ValidationError("--tiebreak", "must be compatible with rank");
    }
    o.zprec = prec;
  }
  auto gb = buchberger(hibi_relations(L, o).relations, o, cap);
  if (json) {
    std::cout << gb_report(gb, o, names).dump(2) << "\n";
  } else {
    std::cout << gb.size() << " elements (" << o.name << ")\n";
    for (const Binomial& b : gb) std::cout << "  " << binomial_text(b, names) << "\n";
  }
  return kExitTrue;
}

int cmd_fiber(const CommonInput& in, const std::string& pair, bool json) {
  IdealLattice il = ideal_lattice(poset_from_input(in));
  auto [a, b] = parse_pair(il, pair);
  Fiber f = quad_fiber(il, a, b);
  VarNames names = VarNames::of(il);
  if (json) {
    Json j;
    j["multidegree"] = monomial_to_json(f.degree, names);
    Json ms = Json::array();
    for (const Monomial& m : f.monomials) ms.push_back(monomial_to_json(m, names));
    j["monomials"] = ms;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << f.monomials.size() << " monomials in the fiber of ("
              << names.bits(il.lat.element_downsets[a]) << ", "
              << names.bits(il.lat.element_downsets[b]) << ")\n";
    for (const Monomial& m : f.monomials) std::cout << "  " << mono_text(m, names) << "\n";
  }
  return kExitTrue;
}

int cmd_indispensable(const CommonInput& in, const std::string& pair, bool json) {
  IdealLattice il = ideal_lattice(poset_from_input(in));
  VarNames names = VarNames::of(il);
  if (!pair.empty()) {
    auto [a, b] = parse_pair(il, pair);
    auto r = is_indispensable(il, a, b);
    if (json) {
      Json j;
      j["indispensable"] = r.indispensable;
      j["fiber_size"] = r.fiber_size;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (r.indispensable ? "indispensable" : "dispensable") << " (fiber size "
                << r.fiber_size << ")\n";
    }
    return r.indispensable ? kExitTrue : kExitFalse;
  }
  auto all = all_hibi_indispensable(il);
  auto pres = hibi_relations(il.lat, rank_rev_lex(il.lat));
  if (json) {
    Json j;
    j["all_indispensable"] = all.all;
    Json rels = Json::array();
    for (std::size_t i = 0; i < pres.pairs.size(); ++i) {
      Json r;
      r["pair"] = Json::array({names.bits(il.lat.element_downsets[pres.pairs[i].first]),
                               names.bits(il.lat.element_downsets[pres.pairs[i].second])});
      r["indispensable"] = static_cast<bool>(all.per_relation[i]);
      rels.push_back(r);
    }
    j["relations"] = rels;
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < pres.pairs.size(); ++i)
      std::cout << binomial_text(pres.relations[i], names) << "  "
                << (all.per_relation[i] ? "indispensable" : "dispensable") << "\n";
    std::cout << (all.all ? "all indispensable\n" : "some dispensable\n");
  }
  return all.all ? kExitTrue : kExitFalse;
}

int cmd_rees(const CommonInput& in, const std::string& subset, bool json, int cap) {
  IdealLattice il = ideal_lattice(poset_from_input(in));
  ReesInstance inst;
  if (subset.empty()) {
    inst = rees_instance(il);
  } else {
    Mask mask = 0;
    std::stringstream ss(subset);
    std::string tok;
    while (std::getline(ss, tok, ',')) mask |= bit(parse_element(il, tok));
    inst = rees_instance_from_subset(il, mask);
  }
  auto pres = rees_presentation(inst);
  auto check = rees_gb_check(inst, cap);
  VarNames names = VarNames::of(inst);
  if (json) {
    Json j;
    j["hibi_relations"] = pres.hibi.size();
    j["special_linear_relations"] = pres.special_linear.size();
    Json pj = Json::array();
    for (const Binomial& b : pres.hibi) pj.push_back(binomial_to_json(b, names));
    for (const Binomial& b : pres.special_linear) pj.push_back(binomial_to_json(b, names));
    j["presentation"] = pj;
    j["reduced_basis_size"] = check.kernel_basis_size;
    j["basis_equals_presentation"] = check.equals_presentation;
    j["presentation_generates_kernel"] = check.presentation_generates_kernel;
    if (check.offending) j["extra_element"] = binomial_to_json(*check.offending, names);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << pres.hibi.size() << " hibi + " << pres.special_linear.size()
              << " special linear relations; reduced basis has " << check.kernel_basis_size
              << " elements\n";
    if (check.offending)
      std::cout << "extra element: " << binomial_text(*check.offending, names) << "\n";
    std::cout << (check.equals_presentation ? "basis equals presentation\n"
                                            : "basis differs from presentation\n");
  }
  return check.equals_presentation ? kExitTrue : kExitFalse;
}

int cmd_verify(const Campaign& cfg, bool json) {
  auto report = run_campaign(cfg);
  if (json)
    std::cout << campaign_report_json(cfg, report).dump(2) << "\n";
  else
    std::cout << campaign_summary_text(cfg, report);
  return report.ok() ? kExitTrue : kExitFalse;
}

int cmd_enumerate(int n, bool iso, bool count_only) {
  if (count_only) {
    long long count = 0;
    if (iso) {
      count = static_cast<long long>(posets_up_to_iso(n).size());
    } else {
      enumerate_posets(n, [&](const Poset&) { ++count; });
    }
    std::cout << count << "\n";
    return kExitTrue;
  }
  auto emit = [&](const Poset& p) { std::cout << poset_to_json(p).dump() << "\n"; };
  if (iso) {
    for (const Poset& p : posets_up_to_iso(n)) emit(p);
  } else {
    enumerate_posets(n, emit);
  }
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hibi relation classifiers and Groebner tooling for finite lattices"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of text");

  CommonInput cin_classify, cin_gb, cin_fiber, cin_ind, cin_rees;
  bool no_rees = false;

  auto* c_classify = app.add_subcommand("classify", "full condition vectors with certificates");
  add_input_options(c_classify, cin_classify, /*lattice_ok=*/true);
  c_classify->add_flag("--no-rees", no_rees, "skip the Rees computation");

  auto* c_gb = app.add_subcommand("gb", "reduced basis of the Hibi relation ideal");
  add_input_options(c_gb, cin_gb, /*lattice_ok=*/true);
  std::string order_name = "rank-revlex", tiebreak;
  c_gb->add_option("--order", order_name, "rank-lex or rank-revlex");
  c_gb->add_option("--tiebreak", tiebreak, "element ids in ascending precedence order");

  auto* c_fiber = app.add_subcommand("fiber", "all monomials sharing a pair's multidegree");
  add_input_options(c_fiber, cin_fiber);
  std::string fiber_pair;
  c_fiber->add_option("--pair", fiber_pair, "two elements: downset bit strings or indices")
      ->required();

  auto* c_ind = app.add_subcommand("indispensable", "fiber + span-oracle indispensability");
  add_input_options(c_ind, cin_ind);
  std::string ind_pair;
  c_ind->add_option("--pair", ind_pair, "restrict to one incomparable pair");

  auto* c_rees = app.add_subcommand("rees", "Rees presentation and basis verdict");
  add_input_options(c_rees, cin_rees);
  std::string subset;
  c_rees->add_option("--subset", subset,
                     "comma-separated lattice elements forming a poset ideal");

  auto* c_verify = app.add_subcommand("verify", "exhaustive equivalence campaign");
  Campaign cfg;
  c_verify->add_option("--max-n", cfg.max_poset_size, "largest poset size (<= 6)");
  c_verify->add_option("--rees-max-n", cfg.rees_max_poset_size, "largest size for Rees checks");
  c_verify->add_option("--lattice-max", cfg.lattice_census_max,
                       "lattice census bound (<= 8, 0 disables)");
  c_verify->add_flag("--sweep-tiebreaks", cfg.tiebreak_sweep, "try every rank tie-break");
  c_verify->add_option("--jobs", cfg.jobs, "parallel workers");
  c_verify->add_flag("--iso", cfg.iso_dedup, "deduplicate posets up to isomorphism");
  std::string mutate = "none";
  c_verify->add_option("--mutate", mutate,
                       "self-test: none, flip-indispensable, flip-conditionally-urc, "
                       "flip-width, flip-urc");

  auto* c_enum = app.add_subcommand("enumerate", "stream labeled posets as JSON lines");
  int enum_n = 0;
  bool enum_iso = false, count_only = false;
  c_enum->add_option("--n", enum_n, "poset size (<= 7)")->required();
  c_enum->add_flag("--iso", enum_iso, "up to isomorphism");
  c_enum->add_flag("--count-only", count_only, "print only the count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    int cap = degree_cap_from_env();
    cfg.degree_cap = cap;
    if (c_classify->parsed()) {
      if (input_count(cin_classify) != 1)
        throw CLI::ValidationError("classify", "needs exactly one input source");
      return cmd_classify(cin_classify, json, no_rees, cap);
    }
    if (c_gb->parsed()) {
      if (input_count(cin_gb) != 1)
        throw CLI::ValidationError("gb", "needs exactly one input source");
      return cmd_gb(cin_gb, order_name, tiebreak, json, cap);
    }
    if (c_fiber->parsed()) {
      if (input_count(cin_fiber) != 1)
        throw CLI::ValidationError("fiber", "needs exactly one input source");
      return cmd_fiber(cin_fiber, fiber_pair, json);
    }
    if (c_ind->parsed()) {
      if (input_count(cin_ind) != 1)
        throw CLI::ValidationError("indispensable", "needs exactly one input source");
      return cmd_indispensable(cin_ind, ind_pair, json);
    }
    if (c_rees->parsed()) {
      if (input_count(cin_rees) != 1)
        throw CLI::ValidationError("rees", "needs exactly one input source");
      return cmd_rees(cin_rees, subset, json, cap);
    }
    if (c_verify->parsed()) {
      if (mutate == "none")
        cfg.mutation = Mutation::None;
      else if (mutate == "flip-indispensable")
        cfg.mutation = Mutation::FlipIndispensable;
      else if (mutate == "flip-conditionally-urc")
        cfg.mutation = Mutation::FlipConditionallyUrc;
      else if (mutate == "flip-width")
        cfg.mutation = Mutation::FlipWidth;
      else if (mutate == "flip-urc")
        cfg.mutation = Mutation::FlipUrc;
      else
        throw CLI::ValidationError("--mutate", "unknown mutation " + mutate);
      return cmd_verify(cfg, json);
    }
    if (c_enum->parsed()) return cmd_enumerate(enum_n, enum_iso, count_only);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
