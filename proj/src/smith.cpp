#include "gcoh/smith.hpp"

#include <boost/integer/common_factor.hpp>

#include "gcoh/errors.hpp"

namespace gcoh {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionMismatch("incompatible matrix product");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, c) += a * other.at(k, c);
    }
  return out;
}

BigVec IntMatrix::apply(const BigVec& x) const {
  if (x.size() != cols_) throw DimensionMismatch("vector length does not match columns");
  BigVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c) * x[c];
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : diag)
    if (d != 0) ++r;
  return r;
}

BigInt floor_mod(const BigInt& a, const BigInt& q) {
  BigInt r = a % q;
  if (r < 0) r += q;
  return r;
}

namespace {

// Floor division for signed big integers.
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& a)
      : a_(a),
        u_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        vinv_(IntMatrix::identity(a.cols())) {}

  SmithDecomposition run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
      if (!select_pivot(t)) break;
      for (;;) {
        clear_row_and_column(t);
        // Enforce divisibility of the remaining block by the pivot.
        bool fixed = true;
        for (std::size_t i = t + 1; i < m && fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a_.at(i, j) % a_.at(t, t) != 0) {
              add_row(t, i, 1);
              fixed = false;
              break;
            }
        if (fixed) break;
      }
      if (a_.at(t, t) < 0) negate_row(t);
    }
    SmithDecomposition out;
    out.diag.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diag[t] = a_.at(t, t);
    out.left = std::move(u_);
    out.right = std::move(v_);
    out.right_inverse = std::move(vinv_);
    return out;
  }

 private:
  // Moves a nonzero entry of minimal absolute value in the block [t.., t..]
  // to (t, t). Returns false if the block is zero.
  bool select_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const BigInt& x = a_.at(i, j);
        if (x == 0) continue;
        BigInt ax = abs(x);
        if (!found || ax < best) {
          best = ax;
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void clear_row_and_column(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_.at(i, t) == 0) continue;
        BigInt q = floor_div(a_.at(i, t), a_.at(t, t));
        add_row(i, t, -q);
        if (a_.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_.at(t, j) == 0) continue;
        BigInt q = floor_div(a_.at(t, j), a_.at(t, t));
        add_col(j, t, -q);
        if (a_.at(t, j) != 0) dirty = true;
      }
      if (!dirty) return;
      select_pivot_in_cross(t);
    }
  }

  // After a reduction pass leaves remainders, bring the smallest nonzero
  // entry of row t / column t to the pivot position.
  void select_pivot_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    BigInt best = abs(a_.at(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_.at(i, t) != 0 && abs(a_.at(i, t)) < best) {
        best = abs(a_.at(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_.at(t, j) != 0 && abs(a_.at(t, j)) < best) {
        best = abs(a_.at(t, j));
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_.at(j, c) != 0) a_.at(i, c) += k * a_.at(j, c);
    for (std::size_t c = 0; c < u_.cols(); ++c)
      if (u_.at(j, c) != 0) u_.at(i, c) += k * u_.at(j, c);
  }

  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_.at(r, j) != 0) a_.at(r, i) += k * a_.at(r, j);
    for (std::size_t r = 0; r < v_.rows(); ++r)
      if (v_.at(r, j) != 0) v_.at(r, i) += k * v_.at(r, j);
    // Inverse operation acts on rows of V^{-1}: row_j -= k * row_i.
    for (std::size_t c = 0; c < vinv_.cols(); ++c)
      if (vinv_.at(i, c) != 0) vinv_.at(j, c) -= k * vinv_.at(i, c);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_.at(i, c), a_.at(j, c));
    for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_.at(i, c), u_.at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_.at(r, i), a_.at(r, j));
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_.at(r, i), v_.at(r, j));
    for (std::size_t c = 0; c < vinv_.cols(); ++c) std::swap(vinv_.at(i, c), vinv_.at(j, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_.at(i, c) = -a_.at(i, c);
    for (std::size_t c = 0; c < u_.cols(); ++c) u_.at(i, c) = -u_.at(i, c);
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix v_;
  IntMatrix vinv_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition out = SmithWorker(a).run();
  out.source = a;
  return out;
}

std::vector<BigVec> kernel_generators_mod(const IntMatrix& a, const BigInt& q) {
  const auto snf = smith_normal_form(a);
  const std::size_t n = a.cols();
  std::vector<BigVec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt scale = 1;
    if (i < snf.diag.size()) scale = q / boost::integer::gcd(snf.diag[i], q);
    BigVec x(n);
    bool nonzero = false;
    for (std::size_t r = 0; r < n; ++r) {
      x[r] = floor_mod(snf.right.at(r, i) * scale, q);
      if (x[r] != 0) nonzero = true;
    }
    if (nonzero) gens.push_back(std::move(x));
  }
  return gens;
}

std::optional<BigVec> solve_mod(const IntMatrix& a, const BigVec& b, const BigInt& q) {
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length does not match rows");
  const auto snf = smith_normal_form(a);
  BigVec c = snf.left.apply(b);
  const std::size_t n = a.cols();
  BigVec y(n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt ci = floor_mod(c[i], q);
    if (i >= snf.diag.size()) {
      if (ci != 0) return std::nullopt;
      continue;
    }
    BigInt d = floor_mod(snf.diag[i], q);
    BigInt g = boost::integer::gcd(d, q);  // gcd(0, q) = q
    if (ci % g != 0) return std::nullopt;
    BigInt qg = q / g;
    if (qg == 1) continue;
    // Solve (d/g) y == c/g mod q/g.
    BigInt dg = floor_mod(d / g, qg), cg = ci / g;
    BigInt t0 = 0, t1 = 1, r0 = qg, r1 = dg;
    while (r1 != 0) {
      BigInt quo = r0 / r1;
      BigInt tmp = t0 - quo * t1;
      t0 = t1;
      t1 = tmp;
      tmp = r0 - quo * r1;
      r0 = r1;
      r1 = tmp;
    }
    y[i] = floor_mod(cg * t0, qg);
  }
  BigVec x = snf.right.apply(y);
  for (auto& xi : x) xi = floor_mod(xi, q);
  return x;
}

BigInt subgroup_order_mod(const std::vector<BigVec>& gens, std::size_t dim, const BigInt& q) {
  IntMatrix m(gens.size() + dim, dim);
  for (std::size_t r = 0; r < gens.size(); ++r) {
    if (gens[r].size() != dim) throw DimensionMismatch("generator length mismatch");
    for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = gens[r][c];
  }
  for (std::size_t i = 0; i < dim; ++i) m.at(gens.size() + i, i) = q;
  const auto snf = smith_normal_form(m);
  BigInt index = 1, total = 1;
  for (const auto& d : snf.diag) index *= d;
  for (std::size_t i = 0; i < dim; ++i) total *= q;
  return total / index;
}

}  // namespace gcoh
