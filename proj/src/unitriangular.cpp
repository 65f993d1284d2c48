#include "gcoh/unitriangular.hpp"

#include <algorithm>
#include <sstream>

#include "gcoh/errors.hpp"

namespace gcoh {

UniShape::UniShape(std::size_t size_, Residue prime_, bool barred_)
    : size(size_), prime(prime_), barred(barred_) {
  if (size < 3) throw ShapeMismatch("unitriangular shape needs size >= 3");
  if (!is_prime(prime)) throw NonPrimeModulus("unitriangular prime must be prime");
}

std::size_t UniShape::coordinate_count() const {
  return size * (size - 1) / 2 - (barred ? 1 : 0);
}

unsigned long long UniShape::order() const {
  unsigned long long o = 1;
  for (std::size_t i = 0; i < coordinate_count(); ++i) o *= prime;
  return o;
}

UniMatrix::UniMatrix(const UniShape& shape)
    : shape_(shape), entries_(shape.size * (shape.size - 1) / 2, 0) {}

std::size_t UniMatrix::slot(std::size_t i, std::size_t j) const {
  const std::size_t n = shape_.size;
  if (i < 1 || j > n || i >= j) throw ShapeMismatch("coordinate out of range");
  // Row i (1-based) starts after rows 1..i-1, which hold (n-1)+(n-2)+... entries.
  std::size_t before = (i - 1) * n - (i - 1) * i / 2;
  return before + (j - i - 1);
}

Residue UniMatrix::at(std::size_t i, std::size_t j) const { return entries_[slot(i, j)]; }

void UniMatrix::set(std::size_t i, std::size_t j, long long value) {
  if (shape_.barred && i == 1 && j == shape_.size) return;
  entries_[slot(i, j)] = reduce_mod(value, shape_.prime);
}

bool UniMatrix::is_identity() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue x) { return x == 0; });
}

Vec UniMatrix::coordinates() const {
  Vec out;
  out.reserve(shape_.coordinate_count());
  for (std::size_t i = 1; i <= shape_.size; ++i)
    for (std::size_t j = i + 1; j <= shape_.size; ++j) {
      if (shape_.barred && i == 1 && j == shape_.size) continue;
      out.push_back(at(i, j));
    }
  return out;
}

UniMatrix UniMatrix::from_coordinates(const UniShape& shape, std::span<const Residue> coords) {
  if (coords.size() != shape.coordinate_count())
    throw ShapeMismatch("coordinate vector has wrong length");
  UniMatrix m(shape);
  std::size_t k = 0;
  for (std::size_t i = 1; i <= shape.size; ++i)
    for (std::size_t j = i + 1; j <= shape.size; ++j) {
      if (shape.barred && i == 1 && j == shape.size) continue;
      m.set(i, j, coords[k++]);
    }
  return m;
}

std::vector<std::vector<Residue>> UniMatrix::dense() const {
  const std::size_t n = shape_.size;
  std::vector<std::vector<Residue>> d(n, std::vector<Residue>(n, 0));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) d[i - 1][j - 1] = at(i, j);
  return d;
}

std::string UniMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  const std::size_t n = shape_.size;
  for (std::size_t i = 1; i <= n; ++i) {
    os << (i > 1 ? "; " : "");
    for (std::size_t j = 1; j <= n; ++j) {
      if (j > 1) os << ' ';
      if (i == j) os << 1;
      else if (j < i) os << 0;
      else if (shape_.barred && i == 1 && j == n) os << '*';
      else os << at(i, j);
    }
  }
  os << "]";
  return os.str();
}

UniMatrix elementary(const UniShape& shape, std::size_t i, std::size_t j, Residue value) {
  UniMatrix m(shape);
  m.set(i, j, value);
  return m;
}

UniMatrix identity_plus_shift(const UniShape& shape) {
  UniMatrix m(shape);
  for (std::size_t i = 1; i < shape.size; ++i) m.set(i, i + 1, 1);
  return m;
}

UniMatrix uni_mul(const UniMatrix& a, const UniMatrix& b) {
  if (!(a.shape() == b.shape())) throw ShapeMismatch("uni_mul: shapes differ");
  const UniShape& s = a.shape();
  const std::size_t n = s.size;
  const Residue p = s.prime;
  UniMatrix c(s);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (s.barred && i == 1 && j == n) continue;
      std::uint64_t acc = a.at(i, j) + b.at(i, j);
      for (std::size_t l = i + 1; l < j; ++l) acc += static_cast<std::uint64_t>(a.at(i, l)) * b.at(l, j);
      c.set(i, j, static_cast<long long>(acc % p));
    }
  return c;
}

UniMatrix uni_inv(const UniMatrix& a) {
  // Solve a * x = I column by column, from the diagonal outwards.
  const UniShape& s = a.shape();
  const std::size_t n = s.size;
  const Residue p = s.prime;
  UniMatrix x(s);
  for (std::size_t d = 1; d < n; ++d)
    for (std::size_t i = 1; i + d <= n; ++i) {
      std::size_t j = i + d;
      if (s.barred && i == 1 && j == n) continue;
      // (a x)_{ij} = x_ij + a_ij + sum_{i<l<j} a_il x_lj = 0
      std::uint64_t acc = a.at(i, j);
      for (std::size_t l = i + 1; l < j; ++l) acc += static_cast<std::uint64_t>(a.at(i, l)) * x.at(l, j);
      x.set(i, j, -static_cast<long long>(acc % p));
    }
  return x;
}

UniMatrix uni_pow(const UniMatrix& a, unsigned long long e) {
  UniMatrix result(a.shape()), base = a;
  while (e > 0) {
    if (e & 1) result = uni_mul(result, base);
    base = uni_mul(base, base);
    e >>= 1;
  }
  return result;
}

UniMatrix commutator(const UniMatrix& a, const UniMatrix& b) {
  return uni_mul(uni_mul(a, b), uni_mul(uni_inv(a), uni_inv(b)));
}

std::vector<UniMatrix> enumerate_group(const UniShape& shape, unsigned long long budget) {
  const std::size_t k = shape.coordinate_count();
  unsigned long long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= shape.prime;
    if (total > budget) throw BudgetExceeded("unitriangular group exceeds enumeration budget");
  }
  std::vector<UniMatrix> out;
  out.reserve(total);
  Vec coords(k, 0);
  for (unsigned long long idx = 0; idx < total; ++idx) {
    out.push_back(UniMatrix::from_coordinates(shape, coords));
    // Increment with the last coordinate fastest (lexicographic order).
    for (std::size_t pos = k; pos-- > 0;) {
      if (++coords[pos] < shape.prime) break;
      coords[pos] = 0;
    }
  }
  return out;
}

std::vector<UniMatrix> centralizer_of(const UniMatrix& g, unsigned long long budget) {
  std::vector<UniMatrix> out;
  for (auto& x : enumerate_group(g.shape(), budget))
    if (uni_mul(x, g) == uni_mul(g, x)) out.push_back(x);
  return out;
}

std::vector<UniMatrix> conjugacy_class_of(const UniMatrix& g, unsigned long long budget) {
  std::vector<UniMatrix> out;
  for (auto& x : enumerate_group(g.shape(), budget)) out.push_back(uni_mul(uni_mul(x, g), uni_inv(x)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

UniMatrix project_bar(const UniMatrix& g) {
  if (g.shape().barred) throw ShapeMismatch("project_bar expects an unbarred matrix");
  UniMatrix out(g.shape().as_barred());
  const std::size_t n = g.shape().size;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) out.set(i, j, g.at(i, j));
  return out;
}

UniMatrix section_lift(const UniMatrix& g_bar) {
  if (!g_bar.shape().barred) throw ShapeMismatch("section_lift expects a barred matrix");
  UniMatrix out(g_bar.shape().unbarred());
  const std::size_t n = g_bar.shape().size;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (!(i == 1 && j == n)) out.set(i, j, g_bar.at(i, j));
  return out;
}

Residue extension_cocycle(const UniMatrix& g_bar, const UniMatrix& h_bar) {
  if (!(g_bar.shape() == h_bar.shape())) throw ShapeMismatch("extension_cocycle: shapes differ");
  UniMatrix lhs = uni_mul(section_lift(g_bar), section_lift(h_bar));
  UniMatrix z = uni_mul(lhs, uni_inv(section_lift(uni_mul(g_bar, h_bar))));
  return z.at(1, g_bar.shape().size);
}

bool ShiftLemmaReport::passed() const {
  return centralizer_order == expected_centralizer_order && centralizer_is_constant_diagonal &&
         class_size == expected_class_size && class_is_superdiagonal_ones;
}

ShiftLemmaReport check_shift_lemma(std::size_t n, Residue prime) {
  UniShape shape(n + 1, prime);
  UniMatrix a = identity_plus_shift(shape);
  ShiftLemmaReport r{};
  r.n = n;
  r.prime = prime;
  r.expected_centralizer_order = 1;
  for (std::size_t i = 0; i < n; ++i) r.expected_centralizer_order *= prime;
  r.expected_class_size = 1;
  for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) r.expected_class_size *= prime;

  auto all = enumerate_group(shape);
  auto constant_diagonals = [&](const UniMatrix& m) {
    for (std::size_t d = 1; d <= n; ++d)
      for (std::size_t i = 2; i + d <= n + 1; ++i)
        if (m.at(i, i + d) != m.at(1, 1 + d)) return false;
    return true;
  };
  auto superdiagonal_ones = [&](const UniMatrix& m) {
    for (std::size_t i = 1; i <= n; ++i)
      if (m.at(i, i + 1) != 1) return false;
    return true;
  };

  auto cent = centralizer_of(a);
  r.centralizer_order = cent.size();
  std::size_t constant_total = std::count_if(all.begin(), all.end(), constant_diagonals);
  r.centralizer_is_constant_diagonal =
      std::all_of(cent.begin(), cent.end(), constant_diagonals) && constant_total == cent.size();

  auto cls = conjugacy_class_of(a);
  r.class_size = cls.size();
  std::size_t ones_total = std::count_if(all.begin(), all.end(), superdiagonal_ones);
  r.class_is_superdiagonal_ones =
      std::all_of(cls.begin(), cls.end(), superdiagonal_ones) && ones_total == cls.size();
  return r;
}

}  // namespace gcoh
