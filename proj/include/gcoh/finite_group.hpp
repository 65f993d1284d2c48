#ifndef GCOH_FINITE_GROUP_HPP
#define GCOH_FINITE_GROUP_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcoh/linalg.hpp"
#include "gcoh/unitriangular.hpp"
#include "gcoh/word.hpp"

namespace gcoh {

using Elem = std::size_t;

inline constexpr std::size_t kDefaultClosureBudget = 4096;

struct KnownPresentation {
  Presentation presentation;
  std::vector<Elem> generator_images;  // element index per presentation generator
};

// A finite group given by its multiplication table. The identity is always
// element 0; tables with another identity are relabelled on construction.
class FiniteGroup {
 public:
  // Validates the group axioms on the full table; throws InputError.
  static FiniteGroup from_table(std::vector<std::vector<Elem>> mul,
                                std::vector<std::string> names = {}, std::string label = "");

  std::size_t order() const { return order_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return mul_[a * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem pow(Elem a, long long e) const;
  Elem conj(Elem g, Elem h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  std::size_t element_order(Elem a) const;
  bool is_abelian() const;

  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& label() const { return label_; }

  const std::optional<KnownPresentation>& known_presentation() const { return presentation_; }
  // Throws NotHomomorphism if a relator does not evaluate to the identity.
  void set_known_presentation(Presentation p, std::vector<Elem> generator_images);

  // Table equality up to relabelling (brute force, intended for order <= 16).
  bool isomorphic_to(const FiniteGroup& other) const;

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<std::string> names_;
  std::string label_;
  std::optional<KnownPresentation> presentation_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

Elem evaluate_word(const Word& w, std::span<const Elem> images, const FiniteGroup& g);
UniMatrix evaluate_word(const Word& w, std::span<const UniMatrix> images);

// Breadth-first closure from the identity, multiplying on the right by the
// generators in the given order.
struct UniClosure {
  GroupPtr group;
  std::vector<UniMatrix> elements;  // element index -> matrix
  std::map<UniMatrix, Elem> lookup;
  // Throws InputError when m is not in the closure.
  Elem index_of(const UniMatrix& m) const;
};
UniClosure closure_group(const UniShape& shape, const std::vector<UniMatrix>& generators,
                         std::size_t budget = kDefaultClosureBudget);

// Permutations of {0..degree-1}; (a * b)(x) = a(b(x)).
using Permutation = std::vector<std::size_t>;
GroupPtr closure_group(const std::vector<Permutation>& generators, std::size_t degree,
                       std::size_t budget = kDefaultClosureBudget);

// Named groups: cyclic(m), product(a,b), dihedral(2m), quaternion8, u3(p),
// u4(p), elementary(p,k). Each carries a known presentation.
GroupPtr catalog(const std::string& name);

// Catalog entries that are 2-groups of order <= max_order.
std::vector<std::string> catalog_two_groups(std::size_t max_order);

// Image of every element under the homomorphism determined by generator
// images through the group's known presentation. Throws NotHomomorphism.
std::vector<Elem> extend_homomorphism(const FiniteGroup& source, std::span<const Elem> target_images,
                                      const FiniteGroup& target);
std::vector<UniMatrix> extend_homomorphism(const FiniteGroup& source,
                                           std::span<const UniMatrix> target_images);

struct SubgroupData {
  GroupPtr parent;
  std::vector<Elem> members;      // sorted parent indices; members[0] is the identity
  std::vector<Elem> transversal;  // left coset representatives, identity first
  GroupPtr as_group;              // element i corresponds to members[i]

  // Throws InputError if the members are not a subgroup.
  static SubgroupData from_members(GroupPtr parent, std::vector<Elem> members,
                                   std::vector<Elem> transversal = {});

  std::size_t index() const { return transversal.size(); }
  bool contains(Elem g) const;
  // Position of a parent element inside as_group; throws if not a member.
  Elem local(Elem g) const;
  bool is_normal() const;
  // Coset (transversal position) containing g.
  std::size_t coset_of(Elem g) const;
};

// Kernel of a surjective character G -> Z/p given by its values on all
// elements; the transversal is {e, g, ..., g^{p-1}} with g the smallest
// element of value 1.
SubgroupData kernel_of_character(GroupPtr g, std::span<const Residue> values, Residue p);

// All subgroups, sorted by order and then members. Requires |G| <= 64.
std::vector<SubgroupData> enumerate_subgroups(GroupPtr g);

// Homomorphisms G -> Z/m as value lists over all elements, enumerated through
// the known presentation (lexicographic in generator values).
std::vector<Vec> characters_of(const FiniteGroup& g, Residue modulus);

}  // namespace gcoh

#endif
