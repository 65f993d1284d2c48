#ifndef GCOH_COHOMOLOGY_HPP
#define GCOH_COHOMOLOGY_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcoh/finite_group.hpp"
#include "gcoh/linalg.hpp"

namespace gcoh {

// theta: G -> (Z/modulus)^x, acting on Z/modulus by multiplication.
struct Orientation {
  GroupPtr group;
  Residue modulus = 2;
  Vec unit_values;  // per element

  // Throws InputError unless the values are units and multiplicative.
  static Orientation make(GroupPtr group, Residue modulus, Vec unit_values);
  static Orientation trivial(GroupPtr group, Residue modulus);
  // From values on the generators of the group's known presentation.
  static Orientation from_generators(GroupPtr group, Residue modulus, const Vec& generator_units);

  bool is_trivial() const;
  Orientation reduced(Residue m) const;  // m must divide modulus
  Orientation restricted(const SubgroupData& h) const;
  Residue at(Elem g) const { return unit_values[g]; }
};

// Normalized non-homogeneous cochain G^d -> Z/modulus, 0 <= d <= 3, with
// optional twisted action. Values are stored over tuples of non-identity
// elements, first argument most significant.
class Cochain {
 public:
  Cochain(GroupPtr group, std::size_t degree, Residue modulus, std::optional<Orientation> twist = std::nullopt);

  // Degree-1 cochain from per-element values (the identity entry must be 0).
  static Cochain from_function(GroupPtr group, std::span<const Residue> values, Residue modulus);
  static Cochain from_values(GroupPtr group, std::size_t degree, Residue modulus, Vec values,
                             std::optional<Orientation> twist = std::nullopt);

  const GroupPtr& group() const { return group_; }
  std::size_t degree() const { return degree_; }
  Residue modulus() const { return modulus_; }
  const std::optional<Orientation>& twist() const { return twist_; }
  const Vec& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  // Evaluation at any tuple; tuples containing the identity give 0.
  Residue at(std::span<const Elem> args) const;
  Residue operator()() const { return at(std::span<const Elem>{}); }
  Residue operator()(Elem g) const;
  Residue operator()(Elem g, Elem h) const;
  Residue operator()(Elem g, Elem h, Elem k) const;
  void set(std::span<const Elem> args, long long value);

  // Per-element values of a degree-1 cochain.
  Vec as_function() const;
  bool is_zero() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain scaled(long long c) const;
  bool operator==(const Cochain& o) const;

 private:
  void check_compatible(const Cochain& o) const;

  GroupPtr group_;
  std::size_t degree_;
  Residue modulus_;
  std::optional<Orientation> twist_;
  Vec values_;
};

// Character G -> Z/modulus from its values on the known presentation's
// generators. Throws NotHomomorphism.
Cochain character_from_generators(GroupPtr group, const Vec& generator_values, Residue modulus);

// A cohomology class is carried by a cocycle representative.
using CohomClass = Cochain;

// (df)(g_1..g_{d+1}) = g_1 f(g_2..) + sum (-1)^i f(..g_i g_{i+1}..) + (-1)^{d+1} f(g_1..g_d).
Cochain coboundary(const Cochain& c);

// (a u b)(g_1..g_{i+j}) = a(g_1..g_i) b(g_{i+1}..g_{i+j}); trivial coefficients.
Cochain cup(const Cochain& a, const Cochain& b);

bool is_cocycle(const Cochain& c);

// f with df = z, or nullopt. Throws NotACocycle. Degree 1 or 2.
std::optional<Cochain> is_coboundary(const Cochain& z);

// Mod-p cochain data of a finite group with trivial coefficients, cached for
// repeated solves: degree-1 cocycles, primitives of 2-cocycles, and an H^2 basis.
class ModPCohomology {
 public:
  ModPCohomology(GroupPtr group, Residue p, bool with_h2 = true);

  const GroupPtr& group() const { return group_; }
  Residue prime() const { return p_; }

  // Basis of Z^1 = H^1 = Hom(G, Z/p).
  const std::vector<Cochain>& h1_basis() const { return h1_; }
  // Cocycle representatives of a basis of H^2; requires with_h2.
  const std::vector<Cochain>& h2_basis() const;
  std::size_t dim_h1() const { return h1_.size(); }
  std::size_t dim_h2() const { return h2_basis().size(); }

  // f with df = z (z a 2-cochain), or nullopt when z is not a coboundary.
  std::optional<Cochain> primitive(const Cochain& z) const;
  bool is_coboundary(const Cochain& z) const;

  // Coordinates of a 2-cocycle in h2_basis(); throws NotACocycle.
  Vec h2_coordinates(const Cochain& z) const;
  // Coordinates of a 1-cocycle in h1_basis(); throws NotACocycle.
  Vec h1_coordinates(const Cochain& z) const;

  // Coboundaries of the elementary 1-cochains (delta_g for g != e), in element order.
  const std::vector<Vec>& b2_generators() const { return b2_gens_; }

  Cochain zero(std::size_t degree) const { return Cochain(group_, degree, p_); }

 private:
  GroupPtr group_;
  Residue p_;
  std::vector<Vec> b2_gens_;
  EchelonBasis b2_;  // tracked over b2_gens_
  std::vector<Cochain> h1_;
  EchelonBasis h1_span_;
  bool with_h2_;
  std::vector<Cochain> h2_;
  std::vector<std::size_t> h2_index_;  // generator position of each h2_ entry
  std::optional<EchelonBasis> h2_span_;  // tracked over b2_gens_ then h2_
};

// Representatives of a basis of H^d(G, Z/p), d in {1, 2}. |G| <= 32 for d = 2.
std::vector<CohomClass> h_basis(GroupPtr g, std::size_t degree, Residue p);

// Mod-p Bockstein of a character: (g,h) -> (x(g) + x(h) - x(gh)) / p with lifts in [0, p).
Cochain bockstein(const Cochain& chi);

Cochain restriction(const Cochain& x, const SubgroupData& h);

// Transfer of a character of H to G: sum_i psi(r_{j(i)}^{-1} g r_i) where g r_i is in r_{j(i)} H.
Cochain corestriction_deg1(const Cochain& psi, const SubgroupData& h);

// Degree-0 transfer sum_i r_i . a over the stored transversal, and the norm
// computed over an independent transversal (largest element of each coset).
Residue corestriction_deg0(Residue a, const SubgroupData& h, const Orientation& theta);
Residue norm_map(Residue a, const SubgroupData& h, const Orientation& theta);

// (g . psi)(h) = psi(g^{-1} h g) for a character of a normal subgroup. Throws NotNormal.
Cochain conjugate_character(Elem g, const Cochain& psi, const SubgroupData& h);

struct TildeNReport {
  SubgroupData kernel;
  Elem g = 0;  // smallest element with chi(g) = 1
  Cochain tilde_n;
  Cochain norm;
  bool identity_holds = false;  // g.N~ - N~ == N - p psi, pointwise on H
};
// chi: surjective character G -> Z/p; psi: character of Ker(chi) (on kernel.as_group).
TildeNReport tilde_N_and_norm(const Cochain& chi, const Cochain& psi);

struct FourTermReport {
  bool exact_at_h1 = false;
  bool exact_at_h2 = false;
  std::size_t dim_h1_g = 0, dim_h2_g = 0, dim_h1_h = 0, dim_h2_h = 0;
  std::size_t rank_cor = 0, kernel_cup = 0, rank_cup = 0, kernel_res = 0;
};
// H^1(H) -Cor-> H^1(G) -(u chi)-> H^2(G) -Res-> H^2(H) for H = Ker(chi), p = 2.
FourTermReport four_term_exactness(GroupPtr g, const Cochain& chi);

struct FormalH90Entry {
  std::size_t subgroup = 0;  // position in enumerate_subgroups order
  std::size_t subgroup_order = 0;
  std::size_t n = 1;
  bool reduction_surjective = false;          // H^1(H, Z/p^n(1)) -> H^1(H, Z/p(1))
  bool consecutive_h1_surjective = false;     // H^1(H, Z/p^n(1)) -> H^1(H, Z/p^{n-1}(1))
  bool consecutive_z1_surjective = false;     // same on crossed homomorphisms
  std::string z1_order;                       // |Z^1(H, Z/p^n(1))| in decimal
};
struct FormalH90Report {
  Residue prime = 2;
  std::size_t n_max = 1;
  std::vector<FormalH90Entry> entries;
  bool all_surjective = false;
  bool monotonicity_holds = false;
};
// theta has modulus p^K with n_max <= K. Sweeps every subgroup of G (|G| <= 24).
FormalH90Report formal_h90_check(GroupPtr g, const Orientation& theta, std::size_t n_max);

// Generators of Z^1(H, Z/q(theta)) for a finite group, as per-element value vectors.
std::vector<Vec> crossed_hom_generators(const FiniteGroup& h, std::span<const Residue> theta, Residue q);

}  // namespace gcoh

#endif
