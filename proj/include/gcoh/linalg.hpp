#ifndef GCOH_LINALG_HPP
#define GCOH_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gcoh {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

bool is_prime(std::uint64_t n);

// Returns (p, k) with n == p^k, k >= 1, or nullopt if n is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n);

// Inverse of a modulo m; a must be a unit.
Residue inverse_mod(Residue a, Residue m);

inline Residue reduce_mod(long long value, Residue m) {
  long long r = value % static_cast<long long>(m);
  return static_cast<Residue>(r < 0 ? r + m : r);
}

// Dense row-major matrix with entries in [0, modulus).
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols, Residue modulus);

  static ModMatrix from_rows(const std::vector<std::vector<long long>>& rows,
                             Residue modulus);
  static ModMatrix identity(std::size_t n, Residue modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue modulus() const { return modulus_; }

  Residue at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long value) {
    entries_[r * cols_ + c] = reduce_mod(value, modulus_);
  }
  std::span<const Residue> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  const Vec& entries() const { return entries_; }

  Vec apply(std::span<const Residue> x) const;
  ModMatrix operator*(const ModMatrix& other) const;

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Residue modulus_;
  Vec entries_;
};

struct RowReduction {
  ModMatrix echelon;
  std::vector<std::size_t> pivots;
  std::size_t rank;
};

// Reduced row-echelon form over F_p. Throws NonPrimeModulus.
RowReduction rref_mod_p(const ModMatrix& m);

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel_basis;
};

// Solves A x = b over F_p; nullopt when inconsistent.
std::optional<LinearSolution> solve_mod_p(const ModMatrix& a, std::span<const Residue> b);

std::vector<Vec> kernel_basis_mod_p(const ModMatrix& a);

// Incrementally maintained echelon basis of a subspace of F_p^dim.
//
// Rows are kept with a leading coefficient of 1 at distinct pivot columns.
// With tracking enabled every basis row remembers its combination of the
// vectors passed to insert(), so express() can write a member of the span in
// terms of the original generators. For p = 2 rows are bit-packed.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, Residue p, bool track = false);

  std::size_t dim() const { return dim_; }
  Residue prime() const { return p_; }
  std::size_t rank() const { return rank_; }
  std::size_t generator_count() const { return generators_; }

  // Returns true when v was independent of the current span.
  bool insert(std::span<const Residue> v);
  bool contains(std::span<const Residue> v) const;

  // Coefficients c with sum c_i * generator_i == v, or nullopt.
  std::optional<Vec> express(std::span<const Residue> v) const;

  // Basis of {x : <row, x> = 0 for every inserted row}, in canonical form.
  std::vector<Vec> nullspace() const;

  // Canonical reduced basis of the span (rows of the RREF).
  std::vector<Vec> reduced_rows() const;

 private:
  struct Row {
    std::vector<std::uint64_t> bits;  // p == 2
    Vec values;                       // p odd
    Vec combo;
  };

  // Reduces v (already in internal form) in place; returns the first column
  // that stays nonzero without a pivot, or dim_ when v reduces to zero.
  std::size_t reduce(Row& v, bool full) const;
  Row make_row(std::span<const Residue> v) const;
  Residue entry(const Row& r, std::size_t c) const;
  bool is_zero(const Row& r) const;
  void axpy(Row& target, const Row& source, Residue factor) const;
  void scale(Row& r, Residue factor) const;

  std::size_t dim_;
  Residue p_;
  bool track_;
  std::size_t rank_ = 0;
  std::size_t generators_ = 0;
  std::vector<Row> rows_;
  std::vector<long> pivot_row_;  // column -> index into rows_, or -1
};

}  // namespace gcoh

#endif
