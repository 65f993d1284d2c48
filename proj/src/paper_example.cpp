#include "gcoh/paper_example.hpp"

#include "gcoh/errors.hpp"

namespace gcoh {

GroupHom example_quotient() { return GroupHom::make(paper_group_presentation(), catalog("cyclic(2)"), {0, 1}); }

SchreierResult example_subgroup() { return reidemeister_schreier(example_quotient()); }

namespace {

// phi: a -> sigma_1, b -> sigma_2 into U_3(F_2), extended to words.
UniMatrix phi_of(const Word& w) {
  UniShape s(3, 2);
  std::vector<UniMatrix> images{elementary(s, 1, 2), elementary(s, 2, 3)};
  return evaluate_word(w, images);
}

}  // namespace

ExampleReport verify_paper_example() {
  ExampleReport r;
  const Presentation g = paper_group_presentation();
  const AbelianStructure gab = abelianization(g);

  r.g_ok = true;
  for (std::size_t n = 2; n <= 4; ++n) {
    bool all = true;
    for (const auto& chi : presented_characters(g, 2))
      if (!hom_lift_to_Zmod(gab, chi, Residue{1} << n)) all = false;
    r.g_surjectivity.push_back({n, all});
    r.g_ok = r.g_ok && all;
  }

  const GroupHom f = example_quotient();
  const SchreierResult h = reidemeister_schreier(f);
  r.h_generators = h.rewrite;
  const AbelianStructure hab = abelianization(h.kernel);
  r.h_free_rank = hab.free_rank;
  for (const auto& t : hab.torsion) r.h_torsion.push_back(t.str());
  PresentedCharacter chi{2, {}};
  for (const auto& w : h.rewrite) chi.values.push_back(phi_of(w).at(1, 3));
  r.chi_on_generators = chi.values;
  const Word commutator_word{1, 2, -1, -2};
  r.chi_of_commutator = phi_of(commutator_word).at(1, 3);
  // The same value read through the rewritten word in H.
  Word in_h = rewrite_in_kernel(f, h, commutator_word);
  long long through_h = 0;
  for (std::size_t k = 0; k < chi.values.size(); ++k)
    through_h += exponent_sum(in_h, k + 1) * static_cast<long long>(chi.values[k]);
  const bool consistent = reduce_mod(through_h, 2) == r.chi_of_commutator;
  r.chi_lifts_to_z4 = is_character(h.kernel, chi) && hom_lift_to_Zmod(hab, chi, 4).has_value();
  r.h_ok = consistent && is_character(h.kernel, chi) && h.rewrite.size() == 3 && r.h_free_rank == 2 &&
           r.h_torsion == std::vector<std::string>{"2"} && chi.values == Vec{0, 1, 0} && r.chi_of_commutator == 1 &&
           !r.chi_lifts_to_z4;

  const std::vector<PresentedCharacter> chis{{2, {1, 1}}, {2, {1, 0}}, {2, {1, 0}}};
  auto barred = lift_search(g, chis, true);
  r.barred_lifts = barred.lifts.size();
  r.barred_candidates = barred.candidates;
  UniShape bar(4, 2, true);
  UniLift exhibited{bar, {identity_plus_shift(bar), elementary(bar, 1, 2)}};
  for (const auto& l : barred.lifts)
    if (l.images == exhibited.images) r.exhibited_lift_valid = true;
  auto full = lift_search(g, chis, false);
  r.lifts = full.lifts.size();
  r.candidates = full.candidates;
  r.status = massey_status_presented(g, chis).status;
  r.massey_ok = r.exhibited_lift_valid && r.barred_lifts >= 1 && r.lifts == 0 && r.candidates == 64 &&
                r.status == MasseyStatus::DefinedNotVanishing;
  return r;
}

}  // namespace gcoh
