#ifndef GCOH_UNITRIANGULAR_HPP
#define GCOH_UNITRIANGULAR_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "gcoh/linalg.hpp"

namespace gcoh {

inline constexpr unsigned long long kDefaultUniBudget = 1ULL << 20;

// U_size(F_p), or its quotient by the center when barred (corner (1, size) dropped).
struct UniShape {
  std::size_t size;
  Residue prime;
  bool barred = false;

  UniShape(std::size_t size, Residue prime, bool barred = false);

  // Number of coordinates (i, j), i < j, carried by an element.
  std::size_t coordinate_count() const;
  std::size_t free_count_above_superdiagonal() const { return coordinate_count() - (size - 1); }
  unsigned long long order() const;
  UniShape unbarred() const { return UniShape(size, prime, false); }
  UniShape as_barred() const { return UniShape(size, prime, true); }

  friend bool operator==(const UniShape&, const UniShape&) = default;
};

// Element of U_size(F_p) or its barred quotient, indexed 1-based as (i, j), i < j.
class UniMatrix {
 public:
  explicit UniMatrix(const UniShape& shape);  // identity

  const UniShape& shape() const { return shape_; }
  Residue at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, long long value);

  bool is_identity() const;

  // Entries in the canonical order (1,2),(1,3),...,(1,n),(2,3),...; the
  // corner is skipped for barred shapes.
  Vec coordinates() const;
  static UniMatrix from_coordinates(const UniShape& shape, std::span<const Residue> coords);

  // Dense (size x size) matrix with unit diagonal (corner 0 when barred).
  std::vector<std::vector<Residue>> dense() const;
  std::string to_string() const;

  friend bool operator==(const UniMatrix& a, const UniMatrix& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const UniMatrix& a, const UniMatrix& b) { return a.entries_ < b.entries_; }

 private:
  std::size_t slot(std::size_t i, std::size_t j) const;

  UniShape shape_;
  Vec entries_;  // strictly upper part, row-major, corner kept (always 0 if barred)
};

// Superdiagonal generators E_{i,i+1}; the n x n "I + N" element.
UniMatrix elementary(const UniShape& shape, std::size_t i, std::size_t j, Residue value = 1);
UniMatrix identity_plus_shift(const UniShape& shape);

UniMatrix uni_mul(const UniMatrix& a, const UniMatrix& b);
UniMatrix uni_inv(const UniMatrix& a);
UniMatrix uni_pow(const UniMatrix& a, unsigned long long e);
UniMatrix commutator(const UniMatrix& a, const UniMatrix& b);

// All elements in lexicographic order of coordinates().
std::vector<UniMatrix> enumerate_group(const UniShape& shape,
                                       unsigned long long budget = kDefaultUniBudget);
std::vector<UniMatrix> centralizer_of(const UniMatrix& g,
                                      unsigned long long budget = kDefaultUniBudget);
std::vector<UniMatrix> conjugacy_class_of(const UniMatrix& g,
                                          unsigned long long budget = kDefaultUniBudget);

// U -> U-bar and the corner-zero section back.
UniMatrix project_bar(const UniMatrix& g);
UniMatrix section_lift(const UniMatrix& g_bar);

// Corner of s(g) s(h) s(gh)^{-1}: the normalized 2-cocycle of the central
// extension Z/p -> U -> U-bar for the corner-zero section s.
Residue extension_cocycle(const UniMatrix& g_bar, const UniMatrix& h_bar);

// Lemma checks on I + N: centralizer is the constant-diagonal matrices,
// conjugacy class is the matrices with all superdiagonal entries 1.
struct ShiftLemmaReport {
  std::size_t n;  // matrices are (n+1) x (n+1)
  Residue prime;
  unsigned long long centralizer_order;
  unsigned long long expected_centralizer_order;  // p^n
  bool centralizer_is_constant_diagonal;
  unsigned long long class_size;
  unsigned long long expected_class_size;  // p^{n(n-1)/2}
  bool class_is_superdiagonal_ones;
  bool passed() const;
};
ShiftLemmaReport check_shift_lemma(std::size_t n, Residue prime);

// Integer-matrix check of the four-term U_3(F_2) permutation-module resolution
// and of the three squares comparing it with the induced cyclic resolution.
struct ResolutionReport {
  std::vector<std::size_t> ranks;
  bool exact = false;
  bool squares_commute = false;
  bool compositions_vanish = false;
  bool bottom_row_exact = false;
};
ResolutionReport verify_u3_resolution();

}  // namespace gcoh

#endif
