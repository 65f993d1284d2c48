#ifndef GCOH_PRESENTATION_HPP
#define GCOH_PRESENTATION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gcoh/finite_group.hpp"
#include "gcoh/smith.hpp"
#include "gcoh/word.hpp"

namespace gcoh {

// G^ab = Z^free_rank + sum Z/torsion_i.
struct AbelianStructure {
  std::size_t generator_count = 0;
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors >= 2, each dividing the next
  // Per presentation generator: torsion coordinates (reduced) then free coordinates.
  std::vector<BigVec> generator_images;

  // Change of basis from the Smith form: column i of basis_change spans a
  // cyclic factor of order factor_orders[i] (1 trivial, 0 infinite).
  std::vector<BigInt> factor_orders;
  IntMatrix basis_change;
  IntMatrix basis_change_inverse;

  // #{x in torsion part : m x = 0}.
  BigInt count_solutions(const BigInt& m) const;
};

AbelianStructure abelianization(const Presentation& p);

// Homomorphism from a presented group to Z/modulus, by generator values.
struct PresentedCharacter {
  Residue modulus = 2;
  Vec values;
  friend bool operator==(const PresentedCharacter&, const PresentedCharacter&) = default;
};

bool is_character(const Presentation& p, const PresentedCharacter& chi);
std::vector<PresentedCharacter> presented_characters(const Presentation& p, Residue modulus);

// A character to Z/target_modulus reducing to chi, or nullopt if none exists.
std::optional<PresentedCharacter> hom_lift_to_Zmod(const AbelianStructure& a,
                                                   const PresentedCharacter& chi,
                                                   Residue target_modulus);
std::optional<PresentedCharacter> hom_lift_to_Zmod(const Presentation& p,
                                                   const PresentedCharacter& chi,
                                                   Residue target_modulus);

// Homomorphism from a presented group to a finite group.
struct GroupHom {
  Presentation source;
  GroupPtr target;
  std::vector<Elem> images;

  // Throws NotHomomorphism when a relator is not killed.
  static GroupHom make(Presentation source, GroupPtr target, std::vector<Elem> images);
};

struct SchreierResult {
  Presentation kernel;
  std::vector<Word> rewrite;  // kernel generator k+1 as a word in the source generators
  std::vector<std::pair<Elem, std::size_t>> schreier_pairs;  // (coset, source generator)
  std::vector<Elem> transversal;                              // breadth-first coset order
  std::vector<Word> transversal_words;
};

// Presentation of ker(f) on the non-trivial Schreier generators. Throws NotSurjective.
SchreierResult reidemeister_schreier(const GroupHom& f);

// A word of the kernel (f(w) = e) in the Schreier generators. Throws InputError.
Word rewrite_in_kernel(const GroupHom& f, const SchreierResult& s, const Word& w);

}  // namespace gcoh

#endif
