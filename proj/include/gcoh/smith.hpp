#ifndef GCOH_SMITH_HPP
#define GCOH_SMITH_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace gcoh {

using BigInt = boost::multiprecision::cpp_int;
using BigVec = std::vector<BigInt>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  BigVec apply(const BigVec& x) const;
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

// left * source * right == diagonal(diag) padded with zeros.
struct SmithDecomposition {
  IntMatrix left;
  std::vector<BigInt> diag;  // length min(rows, cols); nonnegative, d_i | d_{i+1}
  IntMatrix right;
  IntMatrix right_inverse;
  IntMatrix source;

  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Generators of {x in (Z/q)^cols : a x == 0 mod q}.
std::vector<BigVec> kernel_generators_mod(const IntMatrix& a, const BigInt& q);

// Some x with a x == b mod q, or nullopt.
std::optional<BigVec> solve_mod(const IntMatrix& a, const BigVec& b, const BigInt& q);

// Order of the subgroup of (Z/q)^dim generated by gens.
BigInt subgroup_order_mod(const std::vector<BigVec>& gens, std::size_t dim, const BigInt& q);

BigInt floor_mod(const BigInt& a, const BigInt& q);

}  // namespace gcoh

#endif
