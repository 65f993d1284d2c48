#ifndef GCOH_PAPER_EXAMPLE_HPP
#define GCOH_PAPER_EXAMPLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gcoh/massey.hpp"
#include "gcoh/presentation.hpp"

namespace gcoh {

// The worked example G = <a, b | a^2 b = b a^2> with f: G -> Z/2, a -> 0, b -> 1,
// and H = ker f.
GroupHom example_quotient();
SchreierResult example_subgroup();

struct ExampleSurjectivity {
  std::size_t n = 0;  // target Z/2^n
  bool surjective = false;
};

struct ExampleReport {
  // Hom(G, Z/2^n) -> Hom(G, Z/2) is onto for every n checked.
  std::vector<ExampleSurjectivity> g_surjectivity;
  bool g_ok = false;

  // H: Schreier generators a, b a b^-1, b^2.
  std::vector<Word> h_generators;
  std::size_t h_free_rank = 0;
  std::vector<std::string> h_torsion;
  Vec chi_on_generators;    // u_13 o phi on the generators of H
  Residue chi_of_commutator = 0;  // on a b a^-1 b^-1
  bool chi_lifts_to_z4 = true;
  bool h_ok = false;

  // <chi1, chi2, chi3> on G through lifts to U_4 and U-bar_4.
  std::size_t barred_lifts = 0;
  unsigned long long barred_candidates = 0;
  bool exhibited_lift_valid = false;  // a -> I + N, b -> E_12
  std::size_t lifts = 0;
  unsigned long long candidates = 0;
  MasseyStatus status = MasseyStatus::Undefined;
  bool massey_ok = false;

  bool passed() const { return g_ok && h_ok && massey_ok; }
};

ExampleReport verify_paper_example();

}  // namespace gcoh

#endif
