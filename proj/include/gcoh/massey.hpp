#ifndef GCOH_MASSEY_HPP
#define GCOH_MASSEY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/cohomology.hpp"
#include "gcoh/finite_group.hpp"
#include "gcoh/presentation.hpp"
#include "gcoh/unitriangular.hpp"

namespace gcoh {

// Entries a_ij, 1 <= i < j <= n+1, (i,j) != (1,n+1), as 1-cochains mod p.
struct DefiningSystem {
  std::size_t n = 0;
  std::map<std::pair<std::size_t, std::size_t>, Cochain> entries;

  const Cochain& at(std::size_t i, std::size_t j) const;
};

// Both defining-system conditions: a_{i,i+1} are cocycles representing chi_i
// and d a_ij = -sum_l a_il u a_lj.
bool validate_defining_system(const DefiningSystem& m, const std::vector<Cochain>& chis);

// The 2-cocycle -sum_{l=2}^{n} a_{1l} u a_{l,n+1}. Throws InvalidSystem.
Cochain defining_system_value(const DefiningSystem& m);

enum class MasseyStatus { Undefined, DefinedNotVanishing, Vanishes };
std::string to_string(MasseyStatus s);

struct MasseyStats {
  unsigned long long branches = 0;        // inner-layer choices examined
  unsigned long long solves = 0;          // primitive computations
  unsigned long long last_layer_checks = 0;
};

struct MasseyReport {
  MasseyStatus status = MasseyStatus::Undefined;
  std::optional<DefiningSystem> witness;  // value 0 when status is Vanishes
  MasseyStats stats;
};

struct MasseyOptions {
  unsigned long long budget = 1ULL << 20;
  // Decide the last layer by one linear solve; otherwise enumerate it.
  bool linear_last_layer = true;
};

// chis: degree-1 cocycles mod p on one finite group, 2 <= n <= 4.
MasseyReport massey_status_finite(const ModPCohomology& coh, const std::vector<Cochain>& chis,
                                  const MasseyOptions& options = {});
MasseyReport massey_status_finite(GroupPtr g, const std::vector<Cochain>& chis, const MasseyOptions& options = {});

inline constexpr unsigned long long kDefaultLiftBudget = 1ULL << 24;

// A homomorphism from a presented group to U_{n+1}(F_p) or its barred quotient
// whose superdiagonal reproduces the characters.
struct UniLift {
  UniShape shape;
  std::vector<UniMatrix> images;  // one per presentation generator
};

struct LiftSearchResult {
  std::vector<UniLift> lifts;
  unsigned long long candidates = 0;  // size of the exhaustive candidate space
  unsigned long long nodes = 0;       // partial assignments visited
};

// All lifts of (chi_1..chi_n) to U_{n+1} (or U-bar when barred), in
// lexicographic order of free entries, generators in presentation order.
LiftSearchResult lift_search(const Presentation& p, const std::vector<PresentedCharacter>& chis, bool barred,
                             unsigned long long budget = kDefaultLiftBudget,
                             std::optional<std::size_t> max_results = std::nullopt);

// Status of a Massey product on a presented group through Dwyer's criterion:
// defined iff a U-bar lift exists, vanishing iff a U lift exists.
struct PresentedMasseyReport {
  MasseyStatus status = MasseyStatus::Undefined;
  std::optional<UniLift> barred_witness;
  std::optional<UniLift> witness;  // lift to U when vanishing
  unsigned long long barred_candidates = 0, candidates = 0, nodes = 0;
};
PresentedMasseyReport massey_status_presented(const Presentation& p, const std::vector<PresentedCharacter>& chis,
                                              unsigned long long budget = kDefaultLiftBudget);

// Characters of a finite group with a known presentation, read off on its generators.
PresentedCharacter presented_from_cochain(const FiniteGroup& g, const Cochain& chi);

// M = {u_ij o lift}, for a lift given on every element of G.
DefiningSystem defining_system_from_lift(GroupPtr g, const std::vector<UniMatrix>& element_images);

// Sum_{l=2}^{n} u_{1l}(x) u_{l,n+1}(y) on a group with the given element images.
Cochain obstruction_cocycle(GroupPtr g, const std::vector<UniMatrix>& element_images);

struct DwyerObstruction {
  UniClosure image;   // subgroup of U-bar generated by the lift images
  Cochain cocycle;    // obstruction on the image group
  bool vanishes = false;
};
DwyerObstruction dwyer_obstruction(const UniLift& lift);

struct U5CriterionReport {
  bool lhs_defined = false;
  bool lhs_vanishes = false;
  bool rhs_defined = false;
  bool rhs_vanishes = false;
  std::optional<std::pair<Cochain, Cochain>> rhs_defined_witness;   // (phi, psi) on Ker(chi_1)
  std::optional<std::pair<Cochain, Cochain>> rhs_vanishing_witness;
  bool agree = false;
};
// <chi1, chi2, chi3, chi1> against the (phi, psi) conditions on H = Ker(chi1), p = 2.
U5CriterionReport u5_degenerate_criterion(GroupPtr g, const Cochain& chi1, const Cochain& chi2, const Cochain& chi3);

}  // namespace gcoh

#endif
