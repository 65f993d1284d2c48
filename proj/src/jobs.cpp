#include "gcoh/jobs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gcoh/cohomology.hpp"
#include "gcoh/errors.hpp"
#include "gcoh/massey.hpp"
#include "gcoh/paper_example.hpp"
#include "gcoh/presentation.hpp"
#include "gcoh/unitriangular.hpp"

namespace gcoh {

namespace {

Json base_report(const std::string& command) {
  return Json{{"command", command}, {"version", kVersion}, {"convention", kConvention}};
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Residue x : v) a.push_back(x);
  return a;
}

Json to_json(const UniMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.dense()) rows.push_back(to_json(Vec(r.begin(), r.end())));
  return rows;
}

Json to_json(const UniLift& l) {
  Json images = Json::array();
  for (const auto& m : l.images) images.push_back(to_json(m));
  return Json{{"size", l.shape.size}, {"prime", l.shape.prime}, {"barred", l.shape.barred}, {"images", images}};
}

Json to_json(const DefiningSystem& m) {
  Json entries = Json::array();
  for (const auto& [key, c] : m.entries)
    entries.push_back(Json{{"i", key.first}, {"j", key.second}, {"values", to_json(c.as_function())}});
  return Json{{"n", m.n}, {"entries", entries}, {"value", to_json(defining_system_value(m).values())}};
}

Json to_json(const Word& w) {
  Json a = Json::array();
  for (int x : w) a.push_back(x);
  return a;
}

Json to_json(const Presentation& p) {
  Json rel = Json::array();
  for (const auto& r : p.relators) rel.push_back(to_json(r));
  return Json{{"generators", p.generator_count}, {"relators", rel}, {"label", p.label}};
}

template <class T>
T get_or(const Json& doc, const char* key, T fallback) {
  auto it = doc.find(key);
  return it == doc.end() ? fallback : it->get<T>();
}

Vec read_values(const Json& j) {
  Vec out;
  for (const auto& x : j) {
    long long v = x.get<long long>();
    if (v < 0) throw InputError("values must be nonnegative");
    out.push_back(static_cast<Residue>(v));
  }
  return out;
}

Residue job_prime(const Json& input, const JobOptions& o) {
  Residue p = o.prime ? *o.prime : get_or<Residue>(input, "prime", 2);
  if (!is_prime(p)) throw NonPrimeModulus("prime expected, got " + std::to_string(p));
  return p;
}

unsigned long long job_budget(const Json& input, const JobOptions& o, unsigned long long fallback) {
  unsigned long long b = o.budget ? *o.budget : get_or<unsigned long long>(input, "budget", fallback);
  if (b == 0) throw InputError("budget must be positive");
  return b;
}

const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<PresentedCharacter> read_presented_characters(const Json& input, const Presentation& p, Residue prime) {
  std::vector<PresentedCharacter> out;
  for (const auto& c : require(input, "characters")) {
    PresentedCharacter chi{get_or<Residue>(c, "modulus", prime), read_values(require(c, "values"))};
    if (chi.values.size() != p.generator_count) throw InputError("one character value per generator required");
    out.push_back(std::move(chi));
  }
  return out;
}

std::vector<Cochain> read_group_characters(const Json& input, const GroupPtr& g, Residue prime) {
  std::vector<Cochain> out;
  for (const auto& c : require(input, "characters")) {
    Residue m = get_or<Residue>(c, "modulus", prime);
    if (m != prime) throw InputError("character modulus must equal the prime");
    Vec v = read_values(require(c, "values"));
    bool per_element = get_or<bool>(c, "per_element", !g->known_presentation().has_value());
    if (per_element) {
      if (v.size() != g->order()) throw InputError("one character value per element required");
      Cochain chi = Cochain::from_function(g, v, m);
      if (!is_cocycle(chi)) throw NotHomomorphism("character values are not additive");
      out.push_back(std::move(chi));
    } else {
      out.push_back(character_from_generators(g, v, m));
    }
  }
  return out;
}

Json massey_presented(const Json& input, const JobOptions& o) {
  Presentation p = parse_presentation(require(input, "presentation"));
  Residue prime = job_prime(input, o);
  auto chis = read_presented_characters(input, p, prime);
  auto r = massey_status_presented(p, chis, job_budget(input, o, kDefaultLiftBudget));
  Json out = base_report("massey");
  out["input"] = input;
  out["presentation"] = to_json(p);
  out["status"] = to_string(r.status);
  out["defined"] = r.status != MasseyStatus::Undefined;
  out["vanishes"] = r.status == MasseyStatus::Vanishes;
  out["method"] = "lifts to unitriangular groups";
  out["search_stats"] = Json{{"barred_candidates", r.barred_candidates}, {"candidates", r.candidates}, {"nodes", r.nodes}};
  out["witness"] = Json{{"barred_lift", r.barred_witness ? to_json(*r.barred_witness) : Json()},
                        {"lift", r.witness ? to_json(*r.witness) : Json()}};
  return out;
}

Json massey_finite(const Json& input, const JobOptions& o) {
  GroupPtr g = parse_group(require(input, "group"));
  Residue prime = job_prime(input, o);
  auto chis = read_group_characters(input, g, prime);
  MasseyOptions opts;
  opts.budget = job_budget(input, o, opts.budget);
  auto r = massey_status_finite(g, chis, opts);
  Json out = base_report("massey");
  out["input"] = input;
  out["group"] = Json{{"label", g->label()}, {"order", g->order()}};
  out["status"] = to_string(r.status);
  out["defined"] = r.status != MasseyStatus::Undefined;
  out["vanishes"] = r.status == MasseyStatus::Vanishes;
  out["method"] = "layered cochain search";
  out["search_stats"] =
      Json{{"branches", r.stats.branches}, {"solves", r.stats.solves}, {"last_layer_checks", r.stats.last_layer_checks}};
  out["witness"] = r.witness ? to_json(*r.witness) : Json();
  return out;
}

Json matrix_json(const std::vector<Vec>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

Json formal_h90_json(const FormalH90Report& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"subgroup", e.subgroup},
                           {"subgroup_order", e.subgroup_order},
                           {"n", e.n},
                           {"reduction_surjective", e.reduction_surjective},
                           {"consecutive_h1_surjective", e.consecutive_h1_surjective},
                           {"consecutive_z1_surjective", e.consecutive_z1_surjective},
                           {"z1_order", e.z1_order}});
  std::optional<std::size_t> first_failure;
  for (const auto& e : r.entries)
    if (!e.reduction_surjective && (!first_failure || e.n < *first_failure)) first_failure = e.n;
  return Json{{"prime", r.prime},
              {"n_max", r.n_max},
              {"entries", entries},
              {"all_surjective", r.all_surjective},
              {"monotonicity_holds", r.monotonicity_holds},
              {"first_failing_n", first_failure ? Json(*first_failure) : Json()}};
}

Json four_term_json(const FourTermReport& r) {
  return Json{{"exact_at_h1", r.exact_at_h1}, {"exact_at_h2", r.exact_at_h2}, {"dim_h1_g", r.dim_h1_g},
              {"dim_h2_g", r.dim_h2_g},       {"dim_h1_h", r.dim_h1_h},       {"dim_h2_h", r.dim_h2_h},
              {"rank_cor", r.rank_cor},       {"kernel_cup", r.kernel_cup},   {"rank_cup", r.rank_cup},
              {"kernel_res", r.kernel_res}};
}

// ---------------------------------------------------------------------------
// Scenarios

Json scenario_paper_example() {
  ExampleReport r = verify_paper_example();
  Json surj = Json::array();
  for (const auto& s : r.g_surjectivity) surj.push_back(Json{{"n", s.n}, {"surjective", s.surjective}});
  Json gens = Json::array();
  for (const auto& w : r.h_generators) gens.push_back(word_to_string(w));
  Json out;
  out["part1"] = Json{{"passed", r.g_ok}, {"reductions", surj}};
  out["part2"] = Json{{"passed", r.h_ok},
                      {"kernel_generators", gens},
                      {"free_rank", r.h_free_rank},
                      {"torsion", r.h_torsion},
                      {"chi_on_generators", to_json(r.chi_on_generators)},
                      {"chi_of_h", r.chi_of_commutator},
                      {"lift_to_z4_exists", r.chi_lifts_to_z4}};
  out["part3"] = Json{{"passed", r.massey_ok},
                      {"barred_lifts", r.barred_lifts},
                      {"barred_candidates", r.barred_candidates},
                      {"exhibited_lift_found", r.exhibited_lift_valid},
                      {"lifts", r.lifts},
                      {"candidates", r.candidates},
                      {"status", to_string(r.status)}};
  out["passed"] = r.passed();
  return out;
}

Json scenario_shift_lemma() {
  Json cases = Json::array();
  bool all = true;
  for (auto [n, p] : {std::pair<std::size_t, Residue>{3, 2}, {3, 3}, {4, 2}}) {
    ShiftLemmaReport r = check_shift_lemma(n, p);
    all = all && r.passed();
    cases.push_back(Json{{"n", n},
                         {"prime", p},
                         {"centralizer_order", r.centralizer_order},
                         {"expected_centralizer_order", r.expected_centralizer_order},
                         {"centralizer_is_constant_diagonal", r.centralizer_is_constant_diagonal},
                         {"class_size", r.class_size},
                         {"expected_class_size", r.expected_class_size},
                         {"class_is_superdiagonal_ones", r.class_is_superdiagonal_ones},
                         {"passed", r.passed()}});
  }
  return Json{{"cases", cases}, {"passed", all}};
}

Json scenario_resolution() {
  ResolutionReport r = verify_u3_resolution();
  bool ok = r.ranks == std::vector<std::size_t>{2, 6, 5, 1} && r.exact && r.squares_commute && r.compositions_vanish &&
            r.bottom_row_exact;
  return Json{{"ranks", r.ranks},
              {"exact", r.exact},
              {"squares_commute", r.squares_commute},
              {"compositions_vanish", r.compositions_vanish},
              {"bottom_row_exact", r.bottom_row_exact},
              {"passed", ok}};
}

Json scenario_exactness_sweep() {
  Json groups = Json::array();
  bool all = true;
  std::size_t instances = 0;
  for (const auto& name : catalog_two_groups(16)) {
    GroupPtr g = catalog(name);
    std::size_t exact = 0, total = 0;
    for (const auto& v : characters_of(*g, 2)) {
      Cochain chi = Cochain::from_function(g, v, 2);
      if (chi.is_zero()) continue;
      FourTermReport r = four_term_exactness(g, chi);
      ++total;
      if (r.exact_at_h1 && r.exact_at_h2) ++exact;
    }
    instances += total;
    all = all && exact == total;
    groups.push_back(Json{{"group", name}, {"order", g->order()}, {"characters", total}, {"exact", exact}});
  }
  return Json{{"groups", groups}, {"instances", instances}, {"passed", all}};
}

struct H90Probe {
  std::string group;
  Residue modulus;
  Vec generator_units;
};

Json scenario_formal_h90() {
  Json out;
  const std::size_t n_max = 4;
  GroupPtr one = catalog("cyclic(1)");
  FormalH90Report trivial = formal_h90_check(one, Orientation::trivial(one, 16), n_max);
  out["trivial_group"] = formal_h90_json(trivial);
  GroupPtr c2 = catalog("cyclic(2)");
  FormalH90Report z2 = formal_h90_check(c2, Orientation::trivial(c2, 16), n_max);
  out["z2_trivial_orientation"] = formal_h90_json(z2);
  bool z2_fails_at_2 = false;
  for (const auto& e : z2.entries)
    if (e.subgroup_order == 2 && e.n == 2 && !e.reduction_surjective) z2_fails_at_2 = true;
  for (const auto& e : z2.entries)
    if (e.subgroup_order == 2 && e.n == 1 && !e.reduction_surjective) z2_fails_at_2 = false;

  const std::vector<H90Probe> probes{
      {"cyclic(2)", 16, {15}},         {"cyclic(4)", 16, {15}},        {"cyclic(4)", 16, {5}},
      {"cyclic(4)", 16, {1}},          {"product(2,2)", 16, {15, 1}},  {"product(2,2)", 16, {15, 15}},
      {"dihedral(8)", 16, {1, 15}},    {"dihedral(8)", 16, {1, 1}},    {"quaternion8", 16, {15, 15}},
      {"u3(2)", 16, {15, 1}},          {"cyclic(8)", 16, {3}},         {"cyclic(3)", 27, {10}},
      {"cyclic(3)", 27, {1}},          {"product(3,3)", 27, {1, 10}},  {"cyclic(9)", 27, {10}},
      {"dihedral(6)", 27, {1, 26}},
  };
  Json probe_json = Json::array();
  bool monotone = trivial.monotonicity_holds && z2.monotonicity_holds;
  for (const auto& pr : probes) {
    GroupPtr g = catalog(pr.group);
    FormalH90Report r = formal_h90_check(g, Orientation::from_generators(g, pr.modulus, pr.generator_units), 3);
    monotone = monotone && r.monotonicity_holds;
    probe_json.push_back(Json{{"group", pr.group},
                              {"modulus", pr.modulus},
                              {"orientation", to_json(pr.generator_units)},
                              {"all_surjective", r.all_surjective},
                              {"monotonicity_holds", r.monotonicity_holds}});
  }
  out["probes"] = probe_json;
  out["trivial_group_passes"] = trivial.all_surjective;
  out["z2_fails_at_n2"] = z2_fails_at_2;
  out["monotonicity_holds"] = monotone;
  out["passed"] = trivial.all_surjective && z2_fails_at_2 && monotone;
  return out;
}

}  // namespace

Presentation parse_presentation(const Json& doc) {
  if (doc.is_string()) {
    std::string name = doc.get<std::string>();
    if (name == "paper-g") return paper_group_presentation();
    if (name == "paper-h") return example_subgroup().kernel;
    throw UnknownName("unknown presentation shortcut '" + name + "'");
  }
  Presentation p;
  p.generator_count = require(doc, "generators").get<std::size_t>();
  for (const auto& r : require(doc, "relators")) p.relators.push_back(r.get<Word>());
  p.label = get_or<std::string>(doc, "label", "");
  p.validate();
  return p;
}

GroupPtr parse_group(const Json& doc) {
  if (doc.is_string()) return catalog(doc.get<std::string>());
  std::vector<std::vector<Elem>> table;
  for (const auto& row : require(doc, "table")) table.push_back(row.get<std::vector<Elem>>());
  auto names = get_or<std::vector<std::string>>(doc, "names", {});
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(std::move(table), std::move(names), get_or<std::string>(doc, "label", "table")));
}

Json run_massey(const Json& input, const JobOptions& options) {
  std::string type = require(input, "type").get<std::string>();
  if (type == "presentation") return massey_presented(input, options);
  if (type == "finite-group") return massey_finite(input, options);
  throw InputError("massey expects type presentation or finite-group");
}

Json run_cohomology(const Json& input, const JobOptions& options) {
  if (get_or<std::string>(input, "type", "finite-group") != "finite-group")
    throw InputError("cohomology expects a finite-group document");
  GroupPtr g = parse_group(require(input, "group"));
  Residue p = job_prime(input, options);
  const bool with_h2 = g->order() <= 32;
  ModPCohomology coh(g, p, with_h2);

  Json out = base_report("cohomology");
  out["input"] = input;
  out["group"] = Json{{"label", g->label()}, {"order", g->order()}};
  out["prime"] = p;
  out["h1_dim"] = coh.dim_h1();
  Json h1 = Json::array();
  for (const auto& c : coh.h1_basis()) h1.push_back(to_json(c.as_function()));
  out["h1_basis"] = h1;
  if (with_h2) {
    out["h2_dim"] = coh.dim_h2();
    Json h2 = Json::array();
    for (const auto& c : coh.h2_basis()) h2.push_back(to_json(c.values()));
    out["h2_basis"] = h2;
    // Rows indexed by the H^1 basis, columns by H^2 coordinates.
    std::vector<Vec> beta;
    for (const auto& c : coh.h1_basis()) beta.push_back(coh.h2_coordinates(bockstein(c)));
    out["bockstein"] = matrix_json(beta);
    Json cups = Json::array();
    for (std::size_t i = 0; i < coh.dim_h1(); ++i)
      for (std::size_t j = 0; j < coh.dim_h1(); ++j)
        cups.push_back(Json{{"i", i}, {"j", j},
                            {"class", to_json(coh.h2_coordinates(cup(coh.h1_basis()[i], coh.h1_basis()[j])))}});
    out["cup_products"] = cups;
    if (p == 2 && g->order() <= 16) {
      Json terms = Json::array();
      for (const auto& v : characters_of(*g, 2)) {
        Cochain chi = Cochain::from_function(g, v, 2);
        if (chi.is_zero()) continue;
        Json t = four_term_json(four_term_exactness(g, chi));
        t["character"] = to_json(v);
        terms.push_back(t);
      }
      out["four_term"] = terms;
    }
  }
  std::optional<std::size_t> k = options.modulus_exponent;
  if (!k && input.contains("modulus_exponent")) k = input["modulus_exponent"].get<std::size_t>();
  if (k || input.contains("orientation")) {
    std::size_t exponent = k.value_or(4);
    if (exponent == 0 || exponent > 8) throw InputError("modulus exponent must be between 1 and 8");
    Residue modulus = 1;
    for (std::size_t i = 0; i < exponent; ++i) modulus *= p;
    Orientation theta = input.contains("orientation")
                            ? Orientation::from_generators(g, modulus, read_values(input["orientation"]))
                            : Orientation::trivial(g, modulus);
    out["formal_h90"] = formal_h90_json(formal_h90_check(g, theta, exponent));
  }
  return out;
}

Json run_verify(const std::string& scenario) {
  Json body;
  if (scenario == "paper-example")
    body = scenario_paper_example();
  else if (scenario == "lemma-i+n")
    body = scenario_shift_lemma();
  else if (scenario == "u3-resolution")
    body = scenario_resolution();
  else if (scenario == "exactness-sweep")
    body = scenario_exactness_sweep();
  else if (scenario == "formal-h90")
    body = scenario_formal_h90();
  else
    throw UnknownScenario("unknown scenario '" + scenario + "'");
  Json out = base_report("verify");
  out["scenario"] = scenario;
  out["result"] = body;
  out["passed"] = body["passed"];
  return out;
}

void write_atomic(const std::string& path, const std::string& text) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw InputError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace gcoh
