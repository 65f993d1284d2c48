#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gcoh/errors.hpp"
#include "gcoh/massey.hpp"
#include "gcoh/paper_example.hpp"
#include "oracles.hpp"

using namespace gcoh;

namespace {

oracle::Dense dense_2(const Cochain& z) {
  const std::size_t n = z.group()->order();
  oracle::Dense d(n, std::vector<long long>(n, 0));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) d[x][y] = z(x, y);
  return d;
}

std::vector<Cochain> group_characters(const GroupPtr& g, Residue p) {
  std::vector<Cochain> out;
  for (const auto& v : characters_of(*g, p)) out.push_back(Cochain::from_function(g, v, p));
  return out;
}

const std::vector<std::string> kSmoke{"cyclic(2)", "cyclic(4)", "product(2,2)", "cyclic(8)", "product(2,4)",
                                      "elementary(2,3)", "dihedral(8)", "quaternion8", "cyclic(6)", "dihedral(6)"};

}  // namespace

TEST_CASE("n = 2: the product vanishes iff the cup product is a coboundary") {
  for (const auto& name : kSmoke) {
    auto g = catalog(name);
    for (Residue p : {2u, 3u}) {
      auto chars = group_characters(g, p);
      ModPCohomology coh(g, p, false);
      for (const auto& a : chars)
        for (const auto& b : chars) {
          auto r = massey_status_finite(coh, {a, b});
          CHECK(r.status != MasseyStatus::Undefined);
          bool vanishes = oracle::is_coboundary_2(*g, dense_2(cup(a, b)), p);
          CHECK((r.status == MasseyStatus::Vanishes) == vanishes);
          REQUIRE(r.witness.has_value());
          CHECK(defining_system_value(*r.witness) == -cup(a, b));
        }
    }
  }
  // (chi, chi) on Z/2: the cup square is the nonzero class.
  auto c2 = catalog("cyclic(2)");
  Cochain chi = Cochain::from_function(c2, Vec{0, 1}, 2);
  CHECK(massey_status_finite(c2, {chi, chi}).status == MasseyStatus::DefinedNotVanishing);
}

TEST_CASE("defining systems: validation and value") {
  auto g = catalog("product(2,2)");
  auto chars = group_characters(g, 2);
  DefiningSystem m;
  m.n = 2;
  m.entries.emplace(std::make_pair(1, 2), chars[1]);
  m.entries.emplace(std::make_pair(2, 3), chars[2]);
  CHECK(validate_defining_system(m, {chars[1], chars[2]}));
  CHECK_FALSE(validate_defining_system(m, {chars[2], chars[1]}));
  CHECK_FALSE(validate_defining_system(m, {chars[1]}));

  // All characters zero with zero inner entries: value 0.
  DefiningSystem z;
  z.n = 3;
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = i + 1; j <= 4; ++j)
      if (!(i == 1 && j == 4)) z.entries.emplace(std::make_pair(i, j), Cochain(g, 1, 2));
  CHECK(validate_defining_system(z, {chars[0], chars[0], chars[0]}));
  CHECK(defining_system_value(z).is_zero());

  // Breaking an inner entry with a non-cocycle invalidates the system.
  Vec bad(g->order(), 0);
  bad[1] = 1;
  z.entries.insert_or_assign({1, 3}, Cochain::from_function(g, bad, 2));
  CHECK_FALSE(validate_defining_system(z, {chars[0], chars[0], chars[0]}));
  CHECK_THROWS_AS(defining_system_value(z), InvalidSystem);
  z.entries.erase({1, 3});
  CHECK_THROWS_AS(defining_system_value(z), InvalidSystem);
}

TEST_CASE("Dwyer correspondence on the smoke subset") {
  std::size_t defined = 0, vanishing = 0, checked = 0;
  for (const auto& name : kSmoke) {
    auto g = catalog(name);
    auto chars = group_characters(g, 2);
    ModPCohomology coh(g, 2, false);
    const auto& pres = g->known_presentation()->presentation;
    for (std::size_t n : {2u, 3u}) {
      std::size_t total = 1;
      for (std::size_t k = 0; k < n; ++k) total *= chars.size();
      for (std::size_t t = 0; t < total; ++t) {
        std::vector<Cochain> chis;
        std::vector<PresentedCharacter> pc;
        for (std::size_t k = 0, r = t; k < n; ++k, r /= chars.size()) {
          chis.push_back(chars[r % chars.size()]);
          pc.push_back(presented_from_cochain(*g, chis.back()));
        }
        auto fin = massey_status_finite(coh, chis);
        auto bar = lift_search(pres, pc, true);
        auto full = lift_search(pres, pc, false);
        ++checked;
        CHECK((fin.status != MasseyStatus::Undefined) == !bar.lifts.empty());
        CHECK((fin.status == MasseyStatus::Vanishes) == !full.lifts.empty());
        defined += fin.status != MasseyStatus::Undefined;
        vanishing += fin.status == MasseyStatus::Vanishes;
        if (fin.witness) CHECK(validate_defining_system(*fin.witness, chis));
        if (fin.status == MasseyStatus::Vanishes)
          CHECK(oracle::is_coboundary_2(*g, dense_2(defining_system_value(*fin.witness)), 2));

        std::set<std::vector<Vec>> projected_full;
        for (const auto& l : full.lifts) {
          std::vector<Vec> key;
          for (const auto& m : l.images) key.push_back(project_bar(m).coordinates());
          projected_full.insert(key);
          for (const auto& r : pres.relators) CHECK(evaluate_word(r, l.images).is_identity());
        }
        for (const auto& l : bar.lifts) {
          for (const auto& r : pres.relators) CHECK(evaluate_word(r, l.images).is_identity());
          for (const auto& m : l.images)
            for (std::size_t i = 1; i <= n; ++i) CHECK(m.shape().barred);
          auto imgs = extend_homomorphism(*g, l.images);
          auto sys = defining_system_from_lift(g, imgs);
          CHECK(validate_defining_system(sys, chis));
          // The value is minus the pulled-back obstruction, as cocycles.
          Cochain obstruction = obstruction_cocycle(g, imgs);
          CHECK(defining_system_value(sys) == -obstruction);
          // This particular lift extends to U iff its obstruction vanishes on G.
          std::vector<Vec> key;
          for (const auto& m : l.images) key.push_back(m.coordinates());
          CHECK(oracle::is_coboundary_2(*g, dense_2(obstruction), 2) == (projected_full.count(key) > 0));
        }
      }
    }
  }
  CHECK(checked > 500);
  CHECK(defined > vanishing);
  CHECK(vanishing > 0);
}

TEST_CASE("fourfold products agree with lifts to U_5") {
  for (const auto& name : {"cyclic(4)", "product(2,2)", "dihedral(8)", "quaternion8"}) {
    auto g = catalog(name);
    auto chars = group_characters(g, 2);
    ModPCohomology coh(g, 2, false);
    const auto& pres = g->known_presentation()->presentation;
    for (std::size_t t = 0; t < chars.size() * chars.size() * chars.size() * chars.size(); t += 3) {
      std::vector<Cochain> chis;
      std::vector<PresentedCharacter> pc;
      for (std::size_t k = 0, r = t; k < 4; ++k, r /= chars.size()) {
        chis.push_back(chars[r % chars.size()]);
        pc.push_back(presented_from_cochain(*g, chis.back()));
      }
      auto fin = massey_status_finite(coh, chis);
      auto pr = massey_status_presented(pres, pc);
      CHECK(fin.status == pr.status);
      MasseyOptions enumerate;
      enumerate.linear_last_layer = false;
      CHECK(massey_status_finite(coh, chis, enumerate).status == fin.status);
    }
  }
}

TEST_CASE("a zero character makes every defined product vanish") {
  std::mt19937 rng(20261016);
  std::size_t defined = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto g = catalog(kSmoke[rng() % kSmoke.size()]);
    auto chars = group_characters(g, 2);
    std::size_t n = 2 + rng() % (g->order() <= 8 ? 3 : 2);
    std::vector<Cochain> chis;
    for (std::size_t k = 0; k < n; ++k) chis.push_back(chars[rng() % chars.size()]);
    chis[rng() % n] = Cochain(g, 1, 2);
    auto r = massey_status_finite(g, chis);
    if (r.status == MasseyStatus::Undefined) continue;
    ++defined;
    CHECK(r.status == MasseyStatus::Vanishes);
  }
  CHECK(defined > 100);
}

TEST_CASE("lift search") {
  const Presentation g = paper_group_presentation();
  const std::vector<PresentedCharacter> chis{{2, {1, 1}}, {2, {1, 0}}, {2, {1, 0}}};
  auto bar = lift_search(g, chis, true);
  CHECK(bar.candidates == 16);
  CHECK(bar.lifts.size() >= 1);
  UniShape s(4, 2, true);
  bool exhibited = false;
  for (const auto& l : bar.lifts)
    exhibited |= l.images == std::vector<UniMatrix>{identity_plus_shift(s), elementary(s, 1, 2)};
  CHECK(exhibited);
  auto full = lift_search(g, chis, false);
  CHECK(full.candidates == 64);
  CHECK(full.lifts.empty());
  CHECK(lift_search(g, chis, true, kDefaultLiftBudget, 1).lifts.size() == 1);

  // n = 2: exactly one lift to U-bar_3 per character pair.
  for (const auto& a : presented_characters(g, 3))
    for (const auto& b : presented_characters(g, 3)) CHECK(lift_search(g, {a, b}, true).lifts.size() == 1);

  CHECK_THROWS_AS(lift_search(g, {chis[0]}, true), InputError);
  CHECK_THROWS_AS(lift_search(g, chis, false, 63), BudgetExceeded);
  CHECK_THROWS_AS(lift_search(g, {{4, {1, 1}}, {4, {1, 1}}}, true), NonPrimeModulus);
  Presentation z2{1, {{1, 1}}, "z2"};
  CHECK_THROWS_AS(lift_search(z2, {{3, {1}}, {3, {1}}}, true), NotHomomorphism);
}

TEST_CASE("Dwyer obstruction on image groups") {
  UniShape s(4, 2, true);
  auto paper = dwyer_obstruction(UniLift{s, {identity_plus_shift(s), elementary(s, 1, 2)}});
  CHECK_FALSE(paper.vanishes);
  CHECK(is_cocycle(paper.cocycle));

  auto trivial = dwyer_obstruction(UniLift{s, {UniMatrix(s), UniMatrix(s)}});
  CHECK(trivial.vanishes);
  CHECK(trivial.image.group->order() == 1);

  // Commuting images with a zero factor: a -> E_12, b -> E_34 in U-bar_4.
  auto commuting = dwyer_obstruction(UniLift{s, {elementary(s, 1, 2), elementary(s, 3, 4)}});
  CHECK(commuting.image.group->order() == 4);
  CHECK(commuting.vanishes);

  // Unbarred input is projected first.
  UniShape u(4, 2);
  auto projected = dwyer_obstruction(UniLift{u, {identity_plus_shift(u), elementary(u, 1, 2)}});
  CHECK(projected.vanishes == paper.vanishes);
}

TEST_CASE("degenerate fourfold criterion") {
  auto g = catalog("product(2,2)");
  auto chars = group_characters(g, 2);
  Cochain zero(g, 1, 2);
  auto r = u5_degenerate_criterion(g, chars[1], zero, zero);
  CHECK(r.lhs_vanishes);
  CHECK(r.rhs_vanishes);
  REQUIRE(r.rhs_vanishing_witness.has_value());
  CHECK(r.rhs_vanishing_witness->first.is_zero());
  CHECK(r.rhs_vanishing_witness->second.is_zero());
  CHECK(r.agree);

  // First projection, then the second projection twice.
  Cochain first = character_from_generators(g, Vec{1, 0}, 2);
  Cochain second = character_from_generators(g, Vec{0, 1}, 2);
  auto q = u5_degenerate_criterion(g, first, second, second);
  CHECK(q.agree);
  if (q.rhs_defined_witness) {
    SubgroupData h = kernel_of_character(g, first.as_function(), 2);
    CHECK(corestriction_deg1(q.rhs_defined_witness->first, h) == second);
    CHECK(corestriction_deg1(q.rhs_defined_witness->second, h) == second);
  }

  for (const auto& name : {"cyclic(4)", "dihedral(8)", "quaternion8", "product(2,4)"}) {
    auto grp = catalog(name);
    auto cs = group_characters(grp, 2);
    for (std::size_t a = 1; a < cs.size(); ++a)
      for (const auto& b : cs)
        for (const auto& c : cs) CHECK(u5_degenerate_criterion(grp, cs[a], b, c).agree);
  }
  CHECK_THROWS_AS(u5_degenerate_criterion(g, zero, chars[1], chars[1]), InputError);
  auto c3 = catalog("cyclic(3)");
  Cochain t = Cochain::from_function(c3, Vec{0, 1, 2}, 3);
  CHECK_THROWS_AS(u5_degenerate_criterion(c3, t, t, t), InputError);
}

TEST_CASE("input checks and budgets for the finite search") {
  auto g = catalog("dihedral(8)");
  auto chars = group_characters(g, 2);
  CHECK_THROWS_AS(massey_status_finite(g, {chars[1]}), InputError);
  CHECK_THROWS_AS(massey_status_finite(g, {chars[1], chars[1], chars[1], chars[1], chars[1]}), InputError);
  Vec not_additive(8, 1);
  not_additive[0] = 0;
  Cochain bad = Cochain::from_function(g, not_additive, 2);
  CHECK_THROWS_AS(massey_status_finite(g, {bad, chars[1]}), NotACocycle);
  auto h = catalog("cyclic(4)");
  CHECK_THROWS_AS(massey_status_finite(g, {chars[1], group_characters(h, 2)[1]}), InputError);
  // A search that needs more than one inner branch runs out of a budget of one.
  ModPCohomology coh(g, 2, false);
  std::optional<std::vector<Cochain>> heavy;
  for (std::size_t t = 0; t < 256 && !heavy; ++t) {
    std::vector<Cochain> chis;
    for (std::size_t k = 0, r = t; k < 4; ++k, r /= chars.size()) chis.push_back(chars[r % chars.size()]);
    if (massey_status_finite(coh, chis).stats.branches > 1) heavy = chis;
  }
  REQUIRE(heavy.has_value());
  MasseyOptions tight;
  tight.budget = 1;
  CHECK_THROWS_AS(massey_status_finite(coh, *heavy, tight), BudgetExceeded);
  CHECK_THROWS_AS(massey_status_finite(catalog("u4(2)"), {Cochain(catalog("u4(2)"), 1, 2)}), BudgetExceeded);
}

TEST_CASE("worked example") {
  auto r = verify_paper_example();
  CHECK(r.g_ok);
  REQUIRE(r.g_surjectivity.size() == 3);
  for (const auto& s : r.g_surjectivity) CHECK(s.surjective);
  CHECK(r.h_generators.size() == 3);
  CHECK(r.h_free_rank == 2);
  CHECK(r.h_torsion == std::vector<std::string>{"2"});
  CHECK(r.chi_on_generators == Vec{0, 1, 0});
  CHECK(r.chi_of_commutator == 1);
  CHECK_FALSE(r.chi_lifts_to_z4);
  CHECK(r.h_ok);
  CHECK(r.barred_lifts >= 1);
  CHECK(r.exhibited_lift_valid);
  CHECK(r.lifts == 0);
  CHECK(r.candidates == 64);
  CHECK(r.status == MasseyStatus::DefinedNotVanishing);
  CHECK(r.passed());
}
