#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gcoh/errors.hpp"
#include "gcoh/finite_group.hpp"
#include "gcoh/presentation.hpp"
#include "oracles.hpp"

using namespace gcoh;

namespace {

// Order of the subgroup generated by a set of elements, from the table.
std::size_t generated_order(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::set<Elem> s{g.identity()};
  std::vector<Elem> queue{g.identity()};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Elem x : gens) {
      Elem y = g.mul(queue[h], x);
      if (s.insert(y).second) queue.push_back(y);
    }
  return s.size();
}

// |G^ab| = |G| / |[G, G]| computed on the multiplication table.
std::size_t abelianization_order(const FiniteGroup& g, const std::vector<Elem>& members) {
  std::vector<Elem> comms;
  for (Elem a : members)
    for (Elem b : members) comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
  return members.size() / generated_order(g, comms);
}

BigInt torsion_product(const AbelianStructure& a) {
  BigInt t = 1;
  for (const auto& x : a.torsion) t *= x;
  return t;
}

const std::vector<std::string> kSmallGroups{
    "cyclic(1)",     "cyclic(2)",     "cyclic(4)",         "product(2,2)",   "cyclic(6)",      "dihedral(6)",
    "product(2,4)",  "dihedral(8)",   "quaternion8",       "u3(2)",          "elementary(2,3)", "cyclic(9)",
    "product(3,3)",  "dihedral(10)",  "dihedral(12)",      "product(2,6)",   "dihedral(16)",   "product(4,4)",
    "product(quaternion8,2)", "product(dihedral(8),2)", "elementary(2,4)", "u3(3)"};

}  // namespace

TEST_CASE("tables are validated and relabelled") {
  // Z/3 with identity stored as element 2.
  std::vector<std::vector<Elem>> t{{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
  auto g = FiniteGroup::from_table(t, {"x", "y", "e"});
  CHECK(g.order() == 3);
  CHECK(g.name(0) == "e");
  for (Elem a = 0; a < 3; ++a) CHECK(g.mul(0, a) == a);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), InputError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), InputError);
}

TEST_CASE("catalog orders and isomorphism types") {
  CHECK(catalog("cyclic(4)")->order() == 4);
  CHECK(catalog("u4(2)")->order() == 64);
  CHECK(catalog("elementary(3,2)")->order() == 9);
  CHECK(catalog("product(dihedral(8),2)")->order() == 16);
  CHECK(catalog("u3(2)")->isomorphic_to(*catalog("dihedral(8)")));
  CHECK_FALSE(catalog("quaternion8")->isomorphic_to(*catalog("dihedral(8)")));
  CHECK_FALSE(catalog("product(2,2)")->isomorphic_to(*catalog("cyclic(4)")));
  CHECK(catalog("elementary(2,3)")->isomorphic_to(*catalog("product(product(2,2),2)")));
  CHECK(catalog("product(2,3)")->isomorphic_to(*catalog("cyclic(6)")));
  CHECK_THROWS_AS(catalog("cyclic(x)"), UnknownName);
  CHECK_THROWS_AS(catalog("klein"), UnknownName);
  CHECK_THROWS_AS(catalog("u3(4)"), UnknownName);
  const auto two = catalog_two_groups(16);
  CHECK(two.size() == 17);
  for (const auto& name : two) {
    auto g = catalog(name);
    CHECK(g->order() <= 16);
    CHECK(prime_power(g->order())->first == 2);
  }
  // Pairwise non-isomorphic among groups of equal order, except that U_3(F_2)
  // is listed next to the dihedral group of order 8 it is isomorphic to.
  std::size_t iso_pairs = 0;
  for (std::size_t i = 0; i < two.size(); ++i)
    for (std::size_t j = i + 1; j < two.size(); ++j) {
      auto a = catalog(two[i]), b = catalog(two[j]);
      if (a->order() == b->order() && a->isomorphic_to(*b)) {
        ++iso_pairs;
        CHECK(std::set<std::string>{two[i], two[j]} == std::set<std::string>{"dihedral(8)", "u3(2)"});
      }
    }
  CHECK(iso_pairs == 1);
}

TEST_CASE("known presentations have the right abelianization") {
  for (const auto& name : kSmallGroups) {
    CAPTURE(name);
    auto g = catalog(name);
    const auto& kp = g->known_presentation();
    REQUIRE(kp.has_value());
    std::vector<Elem> all(g->order());
    for (Elem x = 0; x < g->order(); ++x) all[x] = x;
    CHECK(generated_order(*g, kp->generator_images) == g->order());
    for (const auto& r : kp->presentation.relators) CHECK(evaluate_word(r, kp->generator_images, *g) == 0);
    auto ab = abelianization(kp->presentation);
    CHECK(ab.free_rank == 0);
    CHECK(torsion_product(ab) == abelianization_order(*g, all));
    for (long long q : {2, 3, 4}) {
      CHECK(characters_of(*g, q).size() == oracle::count_homs_to_cyclic(kp->presentation, q));
      if (q != 4) {
        std::vector<std::vector<long long>> mine;
        for (const auto& v : characters_of(*g, q)) mine.emplace_back(v.begin(), v.end());
        std::sort(mine.begin(), mine.end());
        CHECK(mine == oracle::characters(*g, q));
      }
    }
  }
}

TEST_CASE("subgroup enumeration") {
  CHECK(enumerate_subgroups(catalog("cyclic(4)")).size() == 3);
  CHECK(enumerate_subgroups(catalog("product(2,2)")).size() == 5);
  CHECK(enumerate_subgroups(catalog("dihedral(8)")).size() == 10);
  CHECK(enumerate_subgroups(catalog("quaternion8")).size() == 6);
  CHECK(enumerate_subgroups(catalog("elementary(2,3)")).size() == 16);
  CHECK(enumerate_subgroups(catalog("dihedral(6)")).size() == 6);
  auto subs = enumerate_subgroups(catalog("dihedral(8)"));
  std::size_t normal = 0;
  for (const auto& h : subs) {
    CHECK(h.members.front() == 0);
    CHECK(h.index() * h.members.size() == 8);
    CHECK(h.as_group->order() == h.members.size());
    normal += h.is_normal();
    // Transversal hits every coset once.
    std::set<std::size_t> cosets;
    for (Elem g = 0; g < 8; ++g) cosets.insert(h.coset_of(g));
    CHECK(cosets.size() == h.index());
  }
  CHECK(normal == 6);
  for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].members.size() <= subs[i].members.size());
  CHECK_THROWS_AS(SubgroupData::from_members(catalog("cyclic(4)"), {0, 1}), InputError);
}

TEST_CASE("kernels of characters use powers of the smallest element of value one") {
  auto g = catalog("cyclic(4)");
  auto chis = characters_of(*g, 2);
  REQUIRE(chis.size() == 2);
  const Vec& chi = chis[1];
  auto h = kernel_of_character(g, chi, 2);
  CHECK(h.members.size() == 2);
  CHECK(h.index() == 2);
  Elem first = 0;
  while (chi[first] != 1) ++first;
  CHECK(h.transversal == std::vector<Elem>{0, first});
  for (Elem m : h.members) CHECK(chi[m] == 0);

  auto u = catalog("u3(3)");
  for (const auto& c : characters_of(*u, 3)) {
    if (std::all_of(c.begin(), c.end(), [](Residue v) { return v == 0; })) continue;
    auto k = kernel_of_character(u, c, 3);
    CHECK(k.index() == 3);
    CHECK(k.is_normal());
    CHECK(k.transversal[2] == u->mul(k.transversal[1], k.transversal[1]));
  }
  CHECK_THROWS(kernel_of_character(g, Vec(4, 0), 2));
}

TEST_CASE("homomorphisms extend from generators") {
  auto g = catalog("product(2,4)");
  auto c2 = catalog("cyclic(2)");
  const auto& kp = *g->known_presentation();
  std::vector<Elem> imgs(kp.generator_images.size(), 1);
  auto all = extend_homomorphism(*g, imgs, *c2);
  for (Elem a = 0; a < g->order(); ++a)
    for (Elem b = 0; b < g->order(); ++b) CHECK(all[g->mul(a, b)] == c2->mul(all[a], all[b]));
  auto c3 = catalog("cyclic(3)");
  CHECK_THROWS_AS(extend_homomorphism(*g, std::vector<Elem>(imgs.size(), 1), *c3), NotHomomorphism);
}

TEST_CASE("permutation closure") {
  auto s3 = closure_group(std::vector<Permutation>{{1, 0, 2}, {1, 2, 0}}, 3);
  CHECK(s3->order() == 6);
  CHECK(s3->isomorphic_to(*catalog("dihedral(6)")));
  CHECK_FALSE(s3->is_abelian());
  CHECK_THROWS_AS(closure_group(std::vector<Permutation>{{1, 2, 3, 4, 5, 6, 0}}, 7, 3), BudgetExceeded);
}

TEST_CASE("abelianization invariants") {
  auto ab = abelianization(paper_group_presentation());
  CHECK(ab.free_rank == 2);
  CHECK(ab.torsion.empty());
  auto z4 = abelianization(Presentation{1, {{1, 1, 1, 1}}, "z4"});
  CHECK(z4.torsion == std::vector<BigInt>{4});
  auto mixed = abelianization(*&catalog("product(2,4)")->known_presentation()->presentation);
  CHECK(mixed.torsion == std::vector<BigInt>{2, 4});
  auto free = abelianization(Presentation{3, {}, "free"});
  CHECK(free.free_rank == 3);
}

TEST_CASE("lifting characters to Z/q matches exhaustion") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Presentation p;
    p.generator_count = 1 + rng() % 3;
    std::size_t nrel = rng() % 3;
    for (std::size_t r = 0; r < nrel; ++r) {
      Word w;
      std::size_t len = 1 + rng() % 6;
      for (std::size_t k = 0; k < len; ++k) {
        int g = 1 + static_cast<int>(rng() % p.generator_count);
        w.push_back(rng() % 2 ? g : -g);
      }
      p.relators.push_back(w);
    }
    for (const auto& chi : presented_characters(p, 2)) {
      CHECK(is_character(p, chi));
      for (Residue q : {4u, 8u}) {
        auto lift = hom_lift_to_Zmod(p, chi, q);
        // Oracle: search all homs to Z/q for one reducing to chi.
        bool exists = false;
        std::size_t total = 1;
        for (std::size_t i = 0; i < p.generator_count; ++i) total *= q;
        for (std::size_t t = 0; t < total && !exists; ++t) {
          PresentedCharacter cand{q, Vec(p.generator_count)};
          std::size_t r = t;
          for (auto& v : cand.values) {
            v = r % q;
            r /= q;
          }
          if (!is_character(p, cand)) continue;
          bool reduces = true;
          for (std::size_t i = 0; i < p.generator_count; ++i) reduces &= cand.values[i] % 2 == chi.values[i];
          exists = reduces;
        }
        CHECK(lift.has_value() == exists);
        if (lift) {
          CHECK(is_character(p, *lift));
          for (std::size_t i = 0; i < p.generator_count; ++i) CHECK(lift->values[i] % 2 == chi.values[i]);
        }
      }
    }
  }
}

TEST_CASE("Reidemeister-Schreier presentations of index-2 kernels") {
  for (const auto& name : catalog_two_groups(16)) {
    CAPTURE(name);
    auto g = catalog(name);
    const auto& kp = *g->known_presentation();
    auto c2 = catalog("cyclic(2)");
    for (const auto& chi : characters_of(*g, 2)) {
      if (std::all_of(chi.begin(), chi.end(), [](Residue v) { return v == 0; })) continue;
      std::vector<Elem> imgs;
      for (Elem x : kp.generator_images) imgs.push_back(chi[x]);
      auto f = GroupHom::make(kp.presentation, c2, imgs);
      auto s = reidemeister_schreier(f);
      // Schreier's index formula and one rewritten relator per coset.
      CHECK(s.rewrite.size() == 2 * (kp.presentation.generator_count - 1) + 1);
      CHECK(s.kernel.relators.size() == 2 * kp.presentation.relators.size());
      // The kernel presentation has the abelianization of the kernel subgroup.
      auto h = kernel_of_character(g, chi, 2);
      auto ab = abelianization(s.kernel);
      CHECK(ab.free_rank == 0);
      CHECK(torsion_product(ab) == abelianization_order(*g, h.members));
      // Generators map into the kernel, and rewriting preserves elements.
      std::vector<Elem> gen_elems;
      for (const auto& w : s.rewrite) {
        Elem e = evaluate_word(w, kp.generator_images, *g);
        CHECK(chi[e] == 0);
        gen_elems.push_back(e);
      }
      for (const auto& r : s.kernel.relators) CHECK(evaluate_word(r, gen_elems, *g) == 0);
      Word w{1, 1, 2, -1, 1};
      w.resize(std::min<std::size_t>(w.size(), 5));
      for (int& x : w) x = 1 + (std::abs(x) - 1) % static_cast<int>(kp.presentation.generator_count);
      if (chi[evaluate_word(w, kp.generator_images, *g)] == 0) {
        Word in_h = rewrite_in_kernel(f, s, w);
        CHECK(evaluate_word(in_h, gen_elems, *g) == evaluate_word(w, kp.generator_images, *g));
      }
    }
  }
}

TEST_CASE("the worked example kernel") {
  auto f = GroupHom::make(paper_group_presentation(), catalog("cyclic(2)"), {0, 1});
  auto s = reidemeister_schreier(f);
  CHECK(s.rewrite == std::vector<Word>{{1}, {2, 1, -2}, {2, 2}});
  auto ab = abelianization(s.kernel);
  CHECK(ab.free_rank == 2);
  CHECK(ab.torsion == std::vector<BigInt>{2});
  CHECK(rewrite_in_kernel(f, s, Word{1, 2, -1, -2}) == Word{1, -2});
  CHECK_THROWS_AS(rewrite_in_kernel(f, s, Word{2}), InputError);
  CHECK_THROWS_AS(GroupHom::make(paper_group_presentation(), catalog("dihedral(6)"), {1, 3}), NotHomomorphism);
  CHECK_THROWS_AS(reidemeister_schreier(GroupHom::make(paper_group_presentation(), catalog("cyclic(2)"), {0, 0})),
                  NotSurjective);
}
