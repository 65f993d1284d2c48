#include "gcoh/linalg.hpp"

#include <algorithm>
#include <bit>

#include "gcoh/errors.hpp"

namespace gcoh {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), k);
}

Residue inverse_mod(Residue a, Residue m) {
  long long t = 0, new_t = 1;
  long long r = m, new_r = a % m;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw InputError("residue is not a unit");
  return reduce_mod(t, m);
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, Residue modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(rows * cols, 0) {
  if (modulus < 2) throw InputError("modulus must be at least 2");
}

ModMatrix ModMatrix::from_rows(const std::vector<std::vector<long long>>& rows,
                               Residue modulus) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ModMatrix m(rows.size(), cols, modulus);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ModMatrix ModMatrix::identity(std::size_t n, Residue modulus) {
  ModMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vec ModMatrix::apply(std::span<const Residue> x) const {
  if (x.size() != cols_) throw DimensionMismatch("vector length does not match columns");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      acc = (acc + static_cast<std::uint64_t>(at(r, c)) * x[c]) % modulus_;
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

ModMatrix ModMatrix::operator*(const ModMatrix& other) const {
  if (cols_ != other.rows_ || modulus_ != other.modulus_)
    throw DimensionMismatch("incompatible matrix product");
  ModMatrix out(rows_, other.cols_, modulus_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k)
        acc = (acc + static_cast<std::uint64_t>(at(r, k)) * other.at(k, c)) % modulus_;
      out.entries_[r * out.cols_ + c] = static_cast<Residue>(acc);
    }
  return out;
}

namespace {

void require_prime(Residue m) {
  if (!is_prime(m)) throw NonPrimeModulus("modulus " + std::to_string(m) + " is not prime");
}

// Gauss-Jordan on a row-major buffer restricted to the first `limit` columns.
std::vector<std::size_t> gauss_jordan(Vec& a, std::size_t rows, std::size_t cols,
                                      std::size_t limit, Residue p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      std::swap_ranges(a.begin() + sel * cols, a.begin() + (sel + 1) * cols,
                       a.begin() + r * cols);
    Residue inv = inverse_mod(a[r * cols + c], p);
    for (std::size_t k = 0; k < cols; ++k)
      a[r * cols + k] = static_cast<Residue>(static_cast<std::uint64_t>(a[r * cols + k]) * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      std::uint64_t f = p - a[i * cols + c];
      for (std::size_t k = 0; k < cols; ++k)
        a[i * cols + k] = static_cast<Residue>((a[i * cols + k] + f * a[r * cols + k]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vec> kernel_from_rref(const Vec& a, std::size_t cols, std::size_t n,
                                  const std::vector<std::size_t>& pivots, Residue p) {
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = a[i * cols + f] == 0 ? 0 : p - a[i * cols + f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

RowReduction rref_mod_p(const ModMatrix& m) {
  require_prime(m.modulus());
  Vec a = m.entries();
  auto pivots = gauss_jordan(a, m.rows(), m.cols(), m.cols(), m.modulus());
  ModMatrix echelon(m.rows(), m.cols(), m.modulus());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) echelon.set(r, c, a[r * m.cols() + c]);
  std::size_t rank = pivots.size();
  return {std::move(echelon), std::move(pivots), rank};
}

std::optional<LinearSolution> solve_mod_p(const ModMatrix& a, std::span<const Residue> b) {
  require_prime(a.modulus());
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length does not match rows");
  const Residue p = a.modulus();
  const std::size_t n = a.cols(), cols = n + 1;
  Vec aug(a.rows() * cols);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r * cols + c] = a.at(r, c);
    aug[r * cols + n] = b[r] % p;
  }
  auto pivots = gauss_jordan(aug, a.rows(), cols, n, p);
  for (std::size_t r = pivots.size(); r < a.rows(); ++r)
    if (aug[r * cols + n] != 0) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug[i * cols + n];
  sol.kernel_basis = kernel_from_rref(aug, cols, n, pivots, p);
  return sol;
}

std::vector<Vec> kernel_basis_mod_p(const ModMatrix& a) {
  require_prime(a.modulus());
  Vec buf = a.entries();
  auto pivots = gauss_jordan(buf, a.rows(), a.cols(), a.cols(), a.modulus());
  return kernel_from_rref(buf, a.cols(), a.cols(), pivots, a.modulus());
}

// ---------------------------------------------------------------------------
// EchelonBasis

EchelonBasis::EchelonBasis(std::size_t dim, Residue p, bool track)
    : dim_(dim), p_(p), track_(track), pivot_row_(dim, -1) {
  require_prime(p);
}

EchelonBasis::Row EchelonBasis::make_row(std::span<const Residue> v) const {
  if (v.size() != dim_) throw DimensionMismatch("vector length does not match basis dimension");
  Row r;
  if (p_ == 2) {
    r.bits.assign((dim_ + 63) / 64, 0);
    for (std::size_t i = 0; i < dim_; ++i)
      if (v[i] & 1) r.bits[i / 64] |= std::uint64_t{1} << (i % 64);
  } else {
    r.values.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r.values[i] = v[i] % p_;
  }
  return r;
}

Residue EchelonBasis::entry(const Row& r, std::size_t c) const {
  if (p_ == 2) return (r.bits[c / 64] >> (c % 64)) & 1;
  return r.values[c];
}

bool EchelonBasis::is_zero(const Row& r) const {
  if (p_ == 2) return std::all_of(r.bits.begin(), r.bits.end(), [](auto w) { return w == 0; });
  return std::all_of(r.values.begin(), r.values.end(), [](auto x) { return x == 0; });
}

void EchelonBasis::axpy(Row& target, const Row& source, Residue factor) const {
  if (factor == 0) return;
  if (p_ == 2) {
    for (std::size_t w = 0; w < target.bits.size(); ++w) target.bits[w] ^= source.bits[w];
  } else {
    for (std::size_t i = 0; i < dim_; ++i)
      if (source.values[i] != 0)
        target.values[i] = static_cast<Residue>(
            (target.values[i] + static_cast<std::uint64_t>(factor) * source.values[i]) % p_);
  }
  if (track_) {
    if (target.combo.size() < source.combo.size()) target.combo.resize(source.combo.size(), 0);
    for (std::size_t i = 0; i < source.combo.size(); ++i)
      target.combo[i] = static_cast<Residue>(
          (target.combo[i] + static_cast<std::uint64_t>(factor) * source.combo[i]) % p_);
  }
}

void EchelonBasis::scale(Row& r, Residue factor) const {
  if (p_ != 2)
    for (auto& x : r.values) x = static_cast<Residue>(static_cast<std::uint64_t>(x) * factor % p_);
  if (track_)
    for (auto& x : r.combo) x = static_cast<Residue>(static_cast<std::uint64_t>(x) * factor % p_);
}

std::size_t EchelonBasis::reduce(Row& v, bool full) const {
  std::size_t first_free = dim_;
  if (p_ == 2) {
    for (std::size_t w = 0; w < v.bits.size(); ++w) {
      std::uint64_t skip = 0;  // bits of this word already known to be unpivoted
      while (std::uint64_t word = v.bits[w] & ~skip) {
        std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        long pr = pivot_row_[c];
        if (pr >= 0) {
          axpy(v, rows_[static_cast<std::size_t>(pr)], 1);
        } else {
          if (first_free == dim_) first_free = c;
          if (!full) return first_free;
          skip |= std::uint64_t{1} << (c % 64);
        }
      }
    }
    return first_free;
  }
  for (std::size_t c = 0; c < dim_; ++c) {
    Residue x = v.values[c];
    if (x == 0) continue;
    long pr = pivot_row_[c];
    if (pr >= 0) {
      axpy(v, rows_[static_cast<std::size_t>(pr)], p_ - x);
    } else {
      if (first_free == dim_) first_free = c;
      if (!full) return first_free;
    }
  }
  return first_free;
}

bool EchelonBasis::insert(std::span<const Residue> v) {
  Row r = make_row(v);
  if (track_) {
    r.combo.assign(generators_ + 1, 0);
    r.combo[generators_] = 1;
  }
  ++generators_;
  std::size_t lead = reduce(r, false);
  if (lead == dim_) return false;
  Residue x = entry(r, lead);
  if (x != 1) scale(r, inverse_mod(x, p_));
  pivot_row_[lead] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(r));
  ++rank_;
  return true;
}

bool EchelonBasis::contains(std::span<const Residue> v) const {
  Row r = make_row(v);
  return reduce(r, true) == dim_;
}

std::optional<Vec> EchelonBasis::express(std::span<const Residue> v) const {
  if (!track_) throw InputError("EchelonBasis::express requires tracking");
  Row r = make_row(v);
  r.combo.assign(generators_, 0);
  if (reduce(r, true) != dim_) return std::nullopt;
  // r now holds v - sum(...) = 0, so v = -combo.
  Vec out(generators_, 0);
  for (std::size_t i = 0; i < r.combo.size() && i < generators_; ++i)
    out[i] = r.combo[i] == 0 ? 0 : p_ - r.combo[i];
  return out;
}

std::vector<Vec> EchelonBasis::reduced_rows() const {
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < dim_; ++c)
    if (pivot_row_[c] >= 0) pivots.push_back(c);
  std::vector<Row> rows;
  for (auto c : pivots) {
    Row r = rows_[static_cast<std::size_t>(pivot_row_[c])];
    r.combo.clear();
    rows.push_back(std::move(r));
  }
  // Back-substitution: clear every pivot column from the other rows.
  EchelonBasis plain(dim_, p_, false);
  for (std::size_t i = pivots.size(); i-- > 0;) {
    for (std::size_t j = 0; j < pivots.size(); ++j) {
      if (j == i) continue;
      Residue x = plain.entry(rows[j], pivots[i]);
      if (x != 0) plain.axpy(rows[j], rows[i], p_ - x);
    }
  }
  std::vector<Vec> out;
  for (auto& r : rows) {
    Vec v(dim_);
    for (std::size_t c = 0; c < dim_; ++c) v[c] = plain.entry(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> EchelonBasis::nullspace() const {
  auto rows = reduced_rows();
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < dim_; ++c)
    if (pivot_row_[c] >= 0) pivots.push_back(c);
  Vec flat;
  flat.reserve(rows.size() * dim_);
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return kernel_from_rref(flat, dim_, dim_, pivots, p_);
}

}  // namespace gcoh
