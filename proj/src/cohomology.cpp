#include "gcoh/cohomology.hpp"

#include <algorithm>
#include <numeric>

#include "gcoh/errors.hpp"
#include "gcoh/smith.hpp"

namespace gcoh {

// ---------------------------------------------------------------------------
// Orientation

Orientation Orientation::make(GroupPtr group, Residue modulus, Vec unit_values) {
  const FiniteGroup& g = *group;
  if (modulus < 2) throw InputError("orientation modulus must be at least 2");
  if (unit_values.size() != g.order()) throw DimensionMismatch("one orientation value per element required");
  for (auto& v : unit_values) {
    v %= modulus;
    if (std::gcd(v, modulus) != 1) throw InputError("orientation values must be units");
  }
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (unit_values[g.mul(a, b)] != static_cast<Residue>(std::uint64_t{unit_values[a]} * unit_values[b] % modulus))
        throw InputError("orientation is not multiplicative");
  return Orientation{std::move(group), modulus, std::move(unit_values)};
}

Orientation Orientation::trivial(GroupPtr group, Residue modulus) {
  std::size_t n = group->order();
  return Orientation{std::move(group), modulus, Vec(n, 1 % modulus)};
}

namespace {

// Per-element values of the map determined multiplicatively (or additively)
// by generator values, spread along right multiplication by generators.
Vec spread_from_generators(const FiniteGroup& g, const Vec& gen_values, Residue modulus, bool multiplicative) {
  const auto& kp = g.known_presentation();
  if (!kp) throw InputError("group has no known presentation");
  if (gen_values.size() != kp->generator_images.size())
    throw DimensionMismatch("one value per presentation generator required");
  Vec v(g.order(), multiplicative ? 1 % modulus : 0);
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> queue{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Elem x = queue[head];
    for (std::size_t k = 0; k < gen_values.size(); ++k) {
      Elem y = g.mul(x, kp->generator_images[k]);
      if (seen[y]) continue;
      seen[y] = true;
      std::uint64_t a = v[x], b = gen_values[k] % modulus;
      v[y] = static_cast<Residue>(multiplicative ? a * b % modulus : (a + b) % modulus);
      queue.push_back(y);
    }
  }
  return v;
}

}  // namespace

Orientation Orientation::from_generators(GroupPtr group, Residue modulus, const Vec& generator_units) {
  Vec v = spread_from_generators(*group, generator_units, modulus, true);
  return make(std::move(group), modulus, std::move(v));
}

Cochain character_from_generators(GroupPtr group, const Vec& generator_values, Residue modulus) {
  Vec v = spread_from_generators(*group, generator_values, modulus, false);
  Cochain c = Cochain::from_function(group, v, modulus);
  if (!is_cocycle(c)) throw NotHomomorphism("generator values do not define a character");
  return c;
}

bool Orientation::is_trivial() const {
  return std::all_of(unit_values.begin(), unit_values.end(), [&](Residue v) { return v == 1 % modulus; });
}

Orientation Orientation::reduced(Residue m) const {
  if (m == 0 || modulus % m != 0) throw InputError("reduction modulus must divide the orientation modulus");
  Vec v = unit_values;
  for (auto& x : v) x %= m;
  return Orientation{group, m, std::move(v)};
}

Orientation Orientation::restricted(const SubgroupData& h) const {
  Vec v;
  for (Elem m : h.members) v.push_back(unit_values[m]);
  return Orientation{h.as_group, modulus, std::move(v)};
}

// ---------------------------------------------------------------------------
// Cochains

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Calls fn(index, tuple) for every tuple of non-identity elements.
template <class F>
void for_each_tuple(std::size_t order, std::size_t degree, F&& fn) {
  const std::size_t n = order - 1;
  const std::size_t total = ipow(n, degree);
  std::vector<Elem> t(degree, 1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    fn(idx, std::span<const Elem>(t));
    for (std::size_t k = degree; k-- > 0;) {
      if (++t[k] <= n) break;
      t[k] = 1;
    }
  }
}

Residue action(const std::optional<Orientation>& twist, Elem g) { return twist ? twist->at(g) : 1; }

bool same_twist(const std::optional<Orientation>& a, const std::optional<Orientation>& b) {
  bool ta = !a || a->is_trivial(), tb = !b || b->is_trivial();
  if (ta || tb) return ta == tb;
  return a->unit_values == b->unit_values && a->modulus == b->modulus;
}

}  // namespace

Cochain::Cochain(GroupPtr group, std::size_t degree, Residue modulus, std::optional<Orientation> twist)
    : group_(std::move(group)), degree_(degree), modulus_(modulus), twist_(std::move(twist)) {
  if (!group_) throw InputError("cochain needs a group");
  if (degree_ > 3) throw DegreeTooHigh("cochains are limited to degree 3");
  if (modulus_ < 2) throw InputError("coefficient modulus must be at least 2");
  if (twist_) {
    if (twist_->unit_values.size() != group_->order()) throw DimensionMismatch("orientation does not match group");
    if (twist_->modulus % modulus_ != 0 && modulus_ % twist_->modulus != 0)
      throw InputError("orientation modulus incompatible with coefficients");
    if (twist_->modulus != modulus_) {
      Vec v = twist_->unit_values;
      for (auto& x : v) x %= modulus_;
      twist_ = Orientation{twist_->group, modulus_, std::move(v)};
    }
    if (twist_->is_trivial()) twist_.reset();
  }
  values_.assign(ipow(group_->order() - 1, degree_), 0);
}

Cochain Cochain::from_function(GroupPtr group, std::span<const Residue> values, Residue modulus) {
  if (values.size() != group->order()) throw DimensionMismatch("one value per element required");
  if (values[0] % modulus != 0) throw InputError("normalized cochains vanish at the identity");
  Cochain c(std::move(group), 1, modulus);
  for (std::size_t i = 1; i < values.size(); ++i) c.values_[i - 1] = values[i] % modulus;
  return c;
}

Cochain Cochain::from_values(GroupPtr group, std::size_t degree, Residue modulus, Vec values,
                             std::optional<Orientation> twist) {
  Cochain c(std::move(group), degree, modulus, std::move(twist));
  if (values.size() != c.values_.size()) throw DimensionMismatch("wrong number of cochain values");
  for (auto& v : values) v %= modulus;
  c.values_ = std::move(values);
  return c;
}

Residue Cochain::at(std::span<const Elem> args) const {
  if (args.size() != degree_) throw DimensionMismatch("wrong number of cochain arguments");
  const std::size_t n = group_->order() - 1;
  std::size_t idx = 0;
  for (Elem a : args) {
    if (a == 0) return 0;
    idx = idx * n + (a - 1);
  }
  return values_[idx];
}

Residue Cochain::operator()(Elem g) const {
  Elem a[1] = {g};
  return at(a);
}
Residue Cochain::operator()(Elem g, Elem h) const {
  Elem a[2] = {g, h};
  return at(a);
}
Residue Cochain::operator()(Elem g, Elem h, Elem k) const {
  Elem a[3] = {g, h, k};
  return at(a);
}

void Cochain::set(std::span<const Elem> args, long long value) {
  if (args.size() != degree_) throw DimensionMismatch("wrong number of cochain arguments");
  const std::size_t n = group_->order() - 1;
  std::size_t idx = 0;
  for (Elem a : args) {
    if (a == 0) throw InputError("normalized cochains vanish on tuples containing the identity");
    idx = idx * n + (a - 1);
  }
  values_[idx] = reduce_mod(value, modulus_);
}

Vec Cochain::as_function() const {
  if (degree_ != 1) throw InputError("as_function needs a degree-1 cochain");
  Vec v(group_->order(), 0);
  std::copy(values_.begin(), values_.end(), v.begin() + 1);
  return v;
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](Residue x) { return x == 0; });
}

void Cochain::check_compatible(const Cochain& o) const {
  if (group_ != o.group_ || degree_ != o.degree_ || modulus_ != o.modulus_ || !same_twist(twist_, o.twist_))
    throw InputError("incompatible cochains");
}

Cochain Cochain::operator+(const Cochain& o) const {
  check_compatible(o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = (values_[i] + o.values_[i]) % modulus_;
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const { return scaled(-1); }

Cochain Cochain::scaled(long long c) const {
  Cochain r = *this;
  Residue k = reduce_mod(c, modulus_);
  for (auto& x : r.values_) x = static_cast<Residue>(std::uint64_t{x} * k % modulus_);
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  return group_ == o.group_ && degree_ == o.degree_ && modulus_ == o.modulus_ && same_twist(twist_, o.twist_) &&
         values_ == o.values_;
}

Cochain coboundary(const Cochain& c) {
  if (c.degree() > 2) throw DegreeTooHigh("coboundary implemented up to degree 2");
  const FiniteGroup& g = *c.group();
  const std::size_t d = c.degree();
  const long long m = c.modulus();
  Cochain out(c.group(), d + 1, c.modulus(), c.twist());
  Vec vals(out.size());
  std::vector<Elem> tmp(d);
  for_each_tuple(g.order(), d + 1, [&](std::size_t idx, std::span<const Elem> t) {
    long long s = static_cast<long long>(action(c.twist(), t[0])) * c.at(t.subspan(1));
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t k = 0, pos = 0; k <= d; ++k) {
        if (k == i) continue;
        tmp[pos++] = k == i - 1 ? g.mul(t[i - 1], t[i]) : t[k];
      }
      long long v = c.at(tmp);
      s += (i % 2) ? -v : v;
    }
    long long last = c.at(t.subspan(0, d));
    s += ((d + 1) % 2) ? -last : last;
    vals[idx] = reduce_mod(s % m, c.modulus());
  });
  return Cochain::from_values(c.group(), d + 1, c.modulus(), std::move(vals), c.twist());
}

Cochain cup(const Cochain& a, const Cochain& b) {
  if (a.group() != b.group()) throw InputError("cup product of cochains on different groups");
  if (a.modulus() != b.modulus()) throw InputError("cup product needs equal coefficient moduli");
  if (a.twist() || b.twist()) throw InputError("cup products are implemented for trivial coefficients only");
  const std::size_t i = a.degree(), j = b.degree();
  if (i + j > 3) throw DegreeTooHigh("cup product degree exceeds 3");
  const std::size_t bs = b.size();
  Vec vals(a.size() * bs);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < bs; ++y)
      vals[x * bs + y] = static_cast<Residue>(std::uint64_t{a.values()[x]} * b.values()[y] % a.modulus());
  return Cochain::from_values(a.group(), i + j, a.modulus(), std::move(vals));
}

bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

std::optional<Cochain> is_coboundary(const Cochain& z) {
  if (z.degree() != 1 && z.degree() != 2) throw InputError("is_coboundary expects degree 1 or 2");
  if (!is_cocycle(z)) throw NotACocycle("cochain is not a cocycle");
  const std::size_t src_dim = Cochain(z.group(), z.degree() - 1, z.modulus()).size();
  std::vector<Vec> columns;
  for (std::size_t k = 0; k < src_dim; ++k) {
    Vec e(src_dim, 0);
    e[k] = 1;
    columns.push_back(coboundary(Cochain::from_values(z.group(), z.degree() - 1, z.modulus(), e, z.twist())).values());
  }
  const std::size_t rows = z.size();
  if (is_prime(z.modulus())) {
    ModMatrix a(rows, src_dim, z.modulus());
    for (std::size_t k = 0; k < src_dim; ++k)
      for (std::size_t r = 0; r < rows; ++r) a.set(r, k, columns[k][r]);
    auto sol = solve_mod_p(a, z.values());
    if (!sol) return std::nullopt;
    return Cochain::from_values(z.group(), z.degree() - 1, z.modulus(), sol->particular, z.twist());
  }
  IntMatrix a(rows, src_dim);
  for (std::size_t k = 0; k < src_dim; ++k)
    for (std::size_t r = 0; r < rows; ++r) a.at(r, k) = columns[k][r];
  BigVec b(z.values().begin(), z.values().end());
  auto sol = solve_mod(a, b, z.modulus());
  if (!sol) return std::nullopt;
  Vec f;
  for (const auto& x : *sol) f.push_back(static_cast<Residue>(floor_mod(x, z.modulus())));
  return Cochain::from_values(z.group(), z.degree() - 1, z.modulus(), std::move(f), z.twist());
}

// ---------------------------------------------------------------------------
// Cached mod-p data

ModPCohomology::ModPCohomology(GroupPtr group, Residue p, bool with_h2)
    : group_(std::move(group)),
      p_(p),
      b2_(ipow(group_->order() - 1, 2), p, true),
      h1_span_(group_->order() - 1, p, true),
      with_h2_(with_h2) {
  const FiniteGroup& g = *group_;
  const std::size_t n = g.order() - 1;
  for (std::size_t k = 0; k < n; ++k) {
    Vec e(n, 0);
    e[k] = 1;
    b2_gens_.push_back(coboundary(Cochain::from_values(group_, 1, p, e)).values());
    b2_.insert(b2_gens_.back());
  }
  // Z^1 is the kernel of the coboundary on 1-cochains.
  EchelonBasis rows(n, p);
  for (std::size_t r = 0; r < n * n; ++r) {
    Vec row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = b2_gens_[k][r];
    rows.insert(row);
  }
  for (auto& v : rows.nullspace()) {
    h1_.push_back(Cochain::from_values(group_, 1, p, v));
    h1_span_.insert(v);
  }
  if (!with_h2_) return;

  if (n > 31) throw BudgetExceeded("degree-2 cohomology limited to groups of order 32", n + 1);
  // Z^2 is the kernel of the coboundary on 2-cochains; stream its rows.
  const std::size_t d2 = n * n;
  EchelonBasis d2_rows(d2, p);
  Vec row(d2, 0);
  for_each_tuple(g.order(), 3, [&](std::size_t, std::span<const Elem> t) {
    std::fill(row.begin(), row.end(), 0);
    auto add = [&](Elem a, Elem b, long long s) {
      if (a == 0 || b == 0) return;
      std::size_t idx = (a - 1) * n + (b - 1);
      row[idx] = reduce_mod(static_cast<long long>(row[idx]) + s, p);
    };
    add(t[1], t[2], 1);
    add(g.mul(t[0], t[1]), t[2], -1);
    add(t[0], g.mul(t[1], t[2]), 1);
    add(t[0], t[1], -1);
    d2_rows.insert(row);
  });
  h2_span_.emplace(d2, p, true);
  for (const auto& v : b2_gens_) h2_span_->insert(v);
  for (auto& z : d2_rows.nullspace())
    if (h2_span_->insert(z)) {
      h2_index_.push_back(h2_span_->generator_count() - 1);
      h2_.push_back(Cochain::from_values(group_, 2, p, z));
    }
}

const std::vector<Cochain>& ModPCohomology::h2_basis() const {
  if (!with_h2_) throw InputError("degree-2 data was not computed");
  return h2_;
}

std::optional<Cochain> ModPCohomology::primitive(const Cochain& z) const {
  if (z.degree() != 2 || z.modulus() != p_ || z.group() != group_) throw InputError("primitive expects a 2-cochain");
  auto c = b2_.express(z.values());
  if (!c) return std::nullopt;
  return Cochain::from_values(group_, 1, p_, std::move(*c));
}

bool ModPCohomology::is_coboundary(const Cochain& z) const {
  if (z.degree() != 2 || z.modulus() != p_ || z.group() != group_) throw InputError("expected a 2-cochain");
  return b2_.contains(z.values());
}

Vec ModPCohomology::h2_coordinates(const Cochain& z) const {
  if (!with_h2_) throw InputError("degree-2 data was not computed");
  if (z.degree() != 2 || z.group() != group_ || z.modulus() != p_) throw InputError("expected a 2-cochain");
  if (!is_cocycle(z)) throw NotACocycle("cochain is not a 2-cocycle");
  auto c = h2_span_->express(z.values());
  if (!c) throw InternalInconsistency("2-cocycle outside the computed Z^2");
  // Generators were b2_gens_ then the Z^2 basis; dependent ones carry no weight.
  Vec out(h2_.size(), 0);
  for (std::size_t k = 0; k < h2_.size(); ++k) out[k] = (*c)[h2_index_[k]];
  return out;
}

Vec ModPCohomology::h1_coordinates(const Cochain& z) const {
  if (z.degree() != 1 || z.group() != group_ || z.modulus() != p_) throw InputError("expected a 1-cochain");
  auto c = h1_span_.express(z.values());
  if (!c) throw NotACocycle("cochain is not a 1-cocycle");
  return *c;
}

std::vector<CohomClass> h_basis(GroupPtr g, std::size_t degree, Residue p) {
  if (degree == 1) return ModPCohomology(std::move(g), p, false).h1_basis();
  if (degree == 2) return ModPCohomology(std::move(g), p, true).h2_basis();
  throw DegreeTooHigh("h_basis supports degrees 1 and 2");
}

// ---------------------------------------------------------------------------
// Operations

Cochain bockstein(const Cochain& chi) {
  if (chi.degree() != 1 || chi.twist()) throw InputError("bockstein expects a character");
  const Residue p = chi.modulus();
  const FiniteGroup& g = *chi.group();
  Cochain out(chi.group(), 2, p);
  for (Elem a = 1; a < g.order(); ++a)
    for (Elem b = 1; b < g.order(); ++b) {
      long long s = static_cast<long long>(chi(a)) + chi(b) - chi(g.mul(a, b));
      if (s % p != 0) throw NotHomomorphism("bockstein input is not a character");
      Elem args[2] = {a, b};
      out.set(args, s / static_cast<long long>(p));
    }
  return out;
}

Cochain restriction(const Cochain& x, const SubgroupData& h) {
  if (x.group() != h.parent) throw InputError("restriction to a subgroup of another group");
  std::optional<Orientation> tw;
  if (x.twist()) tw = x.twist()->restricted(h);
  Cochain out(h.as_group, x.degree(), x.modulus(), tw);
  std::vector<Elem> parent_args(x.degree());
  Vec vals(out.size());
  for_each_tuple(h.as_group->order(), x.degree(), [&](std::size_t idx, std::span<const Elem> t) {
    for (std::size_t k = 0; k < t.size(); ++k) parent_args[k] = h.members[t[k]];
    vals[idx] = x.at(parent_args);
  });
  return Cochain::from_values(h.as_group, x.degree(), x.modulus(), std::move(vals), tw);
}

namespace {

std::vector<std::size_t> coset_table(const SubgroupData& h) {
  const FiniteGroup& g = *h.parent;
  std::vector<std::size_t> t(g.order());
  for (std::size_t i = 0; i < h.transversal.size(); ++i)
    for (Elem m : h.members) t[g.mul(h.transversal[i], m)] = i;
  return t;
}

}  // namespace

Cochain corestriction_deg1(const Cochain& psi, const SubgroupData& h) {
  if (psi.degree() != 1 || psi.twist()) throw InputError("corestriction_deg1 expects a character with trivial action");
  if (psi.group() != h.as_group) throw InputError("character is not defined on the subgroup");
  const FiniteGroup& g = *h.parent;
  auto cosets = coset_table(h);
  Vec vals(g.order(), 0);
  for (Elem x = 1; x < g.order(); ++x) {
    long long s = 0;
    for (Elem r : h.transversal) {
      Elem xr = g.mul(x, r);
      Elem rj = h.transversal[cosets[xr]];
      s += psi(h.local(g.mul(g.inv(rj), xr)));
    }
    vals[x] = reduce_mod(s, psi.modulus());
  }
  return Cochain::from_function(h.parent, vals, psi.modulus());
}

Residue corestriction_deg0(Residue a, const SubgroupData& h, const Orientation& theta) {
  const Residue m = theta.modulus;
  for (Elem x : h.members)
    if (std::uint64_t{theta.at(x)} * a % m != a % m) throw InputError("degree-0 class is not invariant under the subgroup");
  std::uint64_t s = 0;
  for (Elem r : h.transversal) s = (s + std::uint64_t{theta.at(r)} * a) % m;
  return static_cast<Residue>(s);
}

Residue norm_map(Residue a, const SubgroupData& h, const Orientation& theta) {
  const FiniteGroup& g = *h.parent;
  const Residue m = theta.modulus;
  auto cosets = coset_table(h);
  std::vector<Elem> rep(h.transversal.size(), 0);
  for (Elem x = 0; x < g.order(); ++x) rep[cosets[x]] = std::max(rep[cosets[x]], x);
  std::uint64_t s = 0;
  for (Elem r : rep) s = (s + std::uint64_t{theta.at(r)} * a) % m;
  return static_cast<Residue>(s);
}

Cochain conjugate_character(Elem g, const Cochain& psi, const SubgroupData& h) {
  if (psi.degree() != 1 || psi.group() != h.as_group) throw InputError("expected a character of the subgroup");
  if (!h.is_normal()) throw NotNormal("subgroup is not normal");
  const FiniteGroup& G = *h.parent;
  Vec vals(h.members.size(), 0);
  for (std::size_t i = 1; i < h.members.size(); ++i) vals[i] = psi(h.local(G.conj(G.inv(g), h.members[i])));
  return Cochain::from_function(h.as_group, vals, psi.modulus());
}

TildeNReport tilde_N_and_norm(const Cochain& chi, const Cochain& psi) {
  if (chi.degree() != 1 || psi.degree() != 1) throw InputError("characters expected");
  const Residue p = chi.modulus();
  if (!is_prime(p)) throw NonPrimeModulus("character modulus must be prime");
  SubgroupData h = kernel_of_character(chi.group(), chi.as_function(), p);
  if (psi.group()->order() != h.members.size()) throw InputError("psi is not defined on the kernel");
  Cochain psi_h = Cochain::from_values(h.as_group, 1, psi.modulus(), psi.values());
  const Elem g = h.transversal.at(1);

  Cochain tilde(h.as_group, 1, psi.modulus());
  Cochain norm(h.as_group, 1, psi.modulus());
  Cochain conj_l = psi_h;  // g^l . psi
  for (Residue l = 0; l < p; ++l) {
    if (l + 1 < p) tilde = tilde + conj_l.scaled(static_cast<long long>(p - 1 - l));
    norm = norm + conj_l;
    conj_l = conjugate_character(g, conj_l, h);
  }
  Cochain lhs = conjugate_character(g, tilde, h) - tilde;
  Cochain rhs = norm - psi_h.scaled(p);
  return TildeNReport{std::move(h), g, std::move(tilde), std::move(norm), lhs == rhs};
}

// ---------------------------------------------------------------------------
// Four-term exactness

namespace {

// Kernel of the map with the given column images (each of length rows).
std::vector<Vec> kernel_of_columns(const std::vector<Vec>& cols, std::size_t rows, Residue p) {
  const std::size_t n = cols.size();
  std::vector<Vec> out;
  if (rows == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n, 0);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  if (n == 0) return out;
  ModMatrix a(rows, n, p);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < rows; ++r) a.set(r, c, cols[c][r]);
  return kernel_basis_mod_p(a);
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim, Residue p) {
  EchelonBasis ea(dim, p), eb(dim, p);
  for (const auto& v : a) ea.insert(v);
  for (const auto& v : b) eb.insert(v);
  return ea.reduced_rows() == eb.reduced_rows();
}

std::size_t span_rank(const std::vector<Vec>& a, std::size_t dim, Residue p) {
  EchelonBasis e(dim, p);
  for (const auto& v : a) e.insert(v);
  return e.rank();
}

}  // namespace

FourTermReport four_term_exactness(GroupPtr g, const Cochain& chi) {
  if (chi.modulus() != 2 || chi.degree() != 1) throw InputError("four-term exactness is checked for p = 2 characters");
  if (chi.group() != g) throw InputError("character is defined on another group");
  if (chi.is_zero()) throw NotSurjective("the character must be nonzero");
  SubgroupData h = kernel_of_character(g, chi.as_function(), 2);
  ModPCohomology cg(g, 2), ch(h.as_group, 2);

  FourTermReport r;
  r.dim_h1_g = cg.dim_h1();
  r.dim_h2_g = cg.dim_h2();
  r.dim_h1_h = ch.dim_h1();
  r.dim_h2_h = ch.dim_h2();

  std::vector<Vec> im_cor;
  for (const auto& psi : ch.h1_basis()) im_cor.push_back(cg.h1_coordinates(corestriction_deg1(psi, h)));
  std::vector<Vec> cup_cols;
  for (const auto& x : cg.h1_basis()) cup_cols.push_back(cg.h2_coordinates(cup(x, chi)));
  auto ker_cup = kernel_of_columns(cup_cols, r.dim_h2_g, 2);
  r.rank_cor = span_rank(im_cor, r.dim_h1_g, 2);
  r.kernel_cup = ker_cup.size();
  r.exact_at_h1 = same_span(im_cor, ker_cup, r.dim_h1_g, 2);

  std::vector<Vec> res_cols;
  for (const auto& y : cg.h2_basis()) res_cols.push_back(ch.h2_coordinates(restriction(y, h)));
  auto ker_res = kernel_of_columns(res_cols, r.dim_h2_h, 2);
  r.rank_cup = span_rank(cup_cols, r.dim_h2_g, 2);
  r.kernel_res = ker_res.size();
  r.exact_at_h2 = same_span(cup_cols, ker_res, r.dim_h2_g, 2);
  return r;
}

// ---------------------------------------------------------------------------
// Formal Hilbert 90

namespace {

std::vector<Elem> generating_set(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<bool> covered(g.order(), false);
  covered[0] = true;
  for (Elem a = 0; a < g.order(); ++a) {
    if (covered[a]) continue;
    gens.push_back(a);
    std::fill(covered.begin(), covered.end(), false);
    covered[0] = true;
    std::vector<Elem> frontier{0};
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (Elem s : gens) {
        Elem y = g.mul(frontier[i], s);
        if (!covered[y]) {
          covered[y] = true;
          frontier.push_back(y);
        }
      }
  }
  return gens;
}

std::vector<BigVec> reduce_all(const std::vector<BigVec>& gens, const BigInt& q) {
  std::vector<BigVec> out = gens;
  for (auto& v : out)
    for (auto& x : v) x = floor_mod(x, q);
  return out;
}

BigInt group_order(const std::vector<BigVec>& gens, std::size_t dim, const BigInt& q) {
  if (dim == 0) return 1;
  return subgroup_order_mod(gens, dim, q);
}

}  // namespace

std::vector<Vec> crossed_hom_generators(const FiniteGroup& h, std::span<const Residue> theta, Residue q) {
  if (theta.size() != h.order()) throw DimensionMismatch("one orientation value per element required");
  const std::size_t n = h.order() - 1;
  if (n == 0) return {};
  auto gens = generating_set(h);
  // f(s x) - f(s) - theta(s) f(x) = 0 for generators s and all x.
  IntMatrix a(gens.size() * h.order(), n);
  std::size_t r = 0;
  for (Elem s : gens)
    for (Elem x = 0; x < h.order(); ++x, ++r) {
      Elem sx = h.mul(s, x);
      if (sx != 0) a.at(r, sx - 1) += 1;
      a.at(r, s - 1) -= 1;
      if (x != 0) a.at(r, x - 1) -= static_cast<long long>(theta[s] % q);
    }
  std::vector<Vec> out;
  for (const auto& k : kernel_generators_mod(a, q)) {
    Vec v(h.order(), 0);
    for (std::size_t i = 0; i < n; ++i) v[i + 1] = static_cast<Residue>(floor_mod(k[i], q));
    if (std::any_of(v.begin(), v.end(), [](Residue x) { return x != 0; })) out.push_back(std::move(v));
  }
  return out;
}

FormalH90Report formal_h90_check(GroupPtr g, const Orientation& theta, std::size_t n_max) {
  auto pk = prime_power(theta.modulus);
  if (!pk) throw InputError("orientation modulus must be a prime power");
  const Residue p = pk->first;
  if (n_max < 1 || n_max > pk->second) throw InputError("n_max must lie between 1 and the orientation exponent");
  if (theta.group != g) throw InputError("orientation is defined on another group");

  FormalH90Report report;
  report.prime = p;
  report.n_max = n_max;
  report.all_surjective = true;
  report.monotonicity_holds = true;
  auto subgroups = enumerate_subgroups(g);
  for (std::size_t s = 0; s < subgroups.size(); ++s) {
    const SubgroupData& h = subgroups[s];
    const FiniteGroup& hg = *h.as_group;
    const std::size_t dim = hg.order() - 1;
    Orientation th = theta.restricted(h);

    std::vector<std::vector<BigVec>> z1(n_max + 1);
    std::vector<BigInt> z1_order(n_max + 1, 1);
    std::vector<BigInt> q(n_max + 1, 1);
    for (std::size_t m = 1; m <= n_max; ++m) {
      q[m] = q[m - 1] * p;
      Residue qm = static_cast<Residue>(q[m]);
      Vec t = th.reduced(qm).unit_values;
      for (const auto& v : crossed_hom_generators(hg, t, qm)) z1[m].push_back(BigVec(v.begin() + 1, v.end()));
      z1_order[m] = group_order(z1[m], dim, q[m]);
    }
    std::vector<FormalH90Entry> rows;
    for (std::size_t m = 1; m <= n_max; ++m) {
      FormalH90Entry e;
      e.subgroup = s;
      e.subgroup_order = hg.order();
      e.n = m;
      e.z1_order = z1_order[m].str();
      e.reduction_surjective = group_order(reduce_all(z1[m], q[1]), dim, q[1]) == z1_order[1];
      if (m == 1) {
        e.consecutive_z1_surjective = e.consecutive_h1_surjective = true;
      } else {
        auto red = reduce_all(z1[m], q[m - 1]);
        e.consecutive_z1_surjective = group_order(red, dim, q[m - 1]) == z1_order[m - 1];
        BigVec b1(dim);
        for (std::size_t i = 0; i < dim; ++i) b1[i] = floor_mod(BigInt(th.at(i + 1)) - 1, q[m - 1]);
        red.push_back(b1);
        e.consecutive_h1_surjective = group_order(red, dim, q[m - 1]) == z1_order[m - 1];
      }
      report.all_surjective = report.all_surjective && e.reduction_surjective;
      rows.push_back(e);
    }
    // If every level up to n reduces onto level 1, every consecutive map up to n is onto.
    bool prefix_ok = true;
    for (std::size_t m = 1; m <= n_max; ++m) {
      prefix_ok = prefix_ok && rows[m - 1].reduction_surjective;
      if (!prefix_ok) break;
      for (std::size_t k = 1; k <= m; ++k)
        if (!rows[k - 1].consecutive_h1_surjective || !rows[k - 1].consecutive_z1_surjective)
          report.monotonicity_holds = false;
    }
    report.entries.insert(report.entries.end(), rows.begin(), rows.end());
  }
  return report;
}

}  // namespace gcoh
