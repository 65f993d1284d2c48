#include "gcoh/finite_group.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "gcoh/errors.hpp"
#include "gcoh/presentation.hpp"

namespace gcoh {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Elem>> mul, std::vector<std::string> names,
                                    std::string label) {
  const std::size_t n = mul.size();
  if (n == 0) throw InputError("a group needs at least one element");
  for (const auto& row : mul) {
    if (row.size() != n) throw InputError("multiplication table is not square");
    for (Elem x : row)
      if (x >= n) throw InputError("multiplication table entry out of range");
  }
  if (!names.empty() && names.size() != n) throw InputError("one name per element required");

  std::optional<Elem> e;
  for (Elem a = 0; a < n && !e; ++a) {
    bool ok = true;
    for (Elem b = 0; b < n && ok; ++b) ok = mul[a][b] == b && mul[b][a] == b;
    if (ok) e = a;
  }
  if (!e) throw InputError("multiplication table has no identity");

  // Relabel so that the identity is element 0.
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::swap(perm[0], perm[*e]);  // perm is an involution
  FiniteGroup g;
  g.order_ = n;
  g.mul_.resize(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) g.mul_[a * n + b] = perm[mul[perm[a]][perm[b]]];
  if (names.empty()) {
    g.names_.resize(n);
    for (Elem a = 0; a < n; ++a) g.names_[a] = a == 0 ? "e" : "g" + std::to_string(a);
  } else {
    g.names_.resize(n);
    for (Elem a = 0; a < n; ++a) g.names_[a] = names[perm[a]];
  }
  g.label_ = std::move(label);

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) throw InputError("multiplication is not associative");
    }
  g.inv_.assign(n, n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b)
      if (g.mul(a, b) == 0) {
        g.inv_[a] = b;
        break;
      }
    if (g.inv_[a] == n || g.mul(g.inv_[a], a) != 0) throw InputError("element without inverse");
  }
  return g;
}

Elem FiniteGroup::pow(Elem a, long long e) const {
  Elem base = e < 0 ? inv(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  Elem out = identity();
  while (k) {
    if (k & 1) out = mul(out, base);
    base = mul(base, base);
    k >>= 1;
  }
  return out;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

namespace {

// Breadth-first spanning tree of the right Cayley graph: parent[x] * gens[via[x]] = x.
struct CayleyTree {
  std::vector<Elem> order;
  std::vector<Elem> parent;
  std::vector<std::size_t> via;
};

CayleyTree cayley_tree(const FiniteGroup& g, std::span<const Elem> gens) {
  const std::size_t n = g.order();
  CayleyTree t;
  t.parent.assign(n, n);
  t.via.assign(n, 0);
  t.order.push_back(g.identity());
  t.parent[g.identity()] = g.identity();
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    Elem x = t.order[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = g.mul(x, gens[i]);
      if (t.parent[y] != n) continue;
      t.parent[y] = x;
      t.via[y] = i;
      t.order.push_back(y);
    }
  }
  if (t.order.size() != n) throw InputError("generator images do not generate the group");
  return t;
}

}  // namespace

void FiniteGroup::set_known_presentation(Presentation p, std::vector<Elem> generator_images) {
  p.validate();
  if (generator_images.size() != p.generator_count)
    throw DimensionMismatch("one element per presentation generator required");
  for (Elem x : generator_images)
    if (x >= order_) throw InputError("generator image out of range");
  for (const auto& r : p.relators)
    if (evaluate_word(r, generator_images, *this) != identity())
      throw NotHomomorphism("relator " + word_to_string(r) + " does not hold in " + label_);
  cayley_tree(*this, generator_images);
  presentation_ = KnownPresentation{std::move(p), std::move(generator_images)};
}

bool FiniteGroup::isomorphic_to(const FiniteGroup& other) const {
  const std::size_t n = order_;
  if (n != other.order()) return false;
  if (n > 64) throw BudgetExceeded("isomorphism search limited to order 64");

  auto order_profile = [](const FiniteGroup& g) {
    std::vector<std::size_t> v;
    for (Elem a = 0; a < g.order(); ++a) v.push_back(g.element_order(a));
    std::sort(v.begin(), v.end());
    return v;
  };
  if (order_profile(*this) != order_profile(other) || is_abelian() != other.is_abelian()) return false;

  // Greedy generating set, then try every order-preserving assignment.
  std::vector<Elem> gens;
  std::vector<bool> covered(n, false);
  covered[identity()] = true;
  auto regenerate = [&] {
    std::vector<Elem> frontier{identity()};
    std::fill(covered.begin(), covered.end(), false);
    covered[identity()] = true;
    for (std::size_t h = 0; h < frontier.size(); ++h)
      for (Elem s : gens) {
        Elem y = mul(frontier[h], s);
        if (!covered[y]) {
          covered[y] = true;
          frontier.push_back(y);
        }
      }
  };
  for (Elem a = 0; a < n; ++a)
    if (!covered[a]) {
      gens.push_back(a);
      regenerate();
    }
  CayleyTree tree = cayley_tree(*this, gens);

  std::vector<Elem> images(gens.size());
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<Elem> phi(n);
      std::vector<bool> hit(n, false);
      for (Elem x : tree.order) {
        phi[x] = x == identity() ? other.identity() : other.mul(phi[tree.parent[x]], images[tree.via[x]]);
        if (hit[phi[x]]) return false;
        hit[phi[x]] = true;
      }
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (phi[mul(a, b)] != other.mul(phi[a], phi[b])) return false;
      return true;
    }
    for (Elem c = 0; c < n; ++c) {
      if (other.element_order(c) != element_order(gens[k])) continue;
      images[k] = c;
      if (assign(k + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------------------
// Words

Elem evaluate_word(const Word& w, std::span<const Elem> images, const FiniteGroup& g) {
  Elem x = g.identity();
  for (int letter : w) {
    std::size_t k = static_cast<std::size_t>(std::abs(letter));
    if (k == 0 || k > images.size()) throw InputError("word letter without an image");
    Elem y = images[k - 1];
    x = g.mul(x, letter > 0 ? y : g.inv(y));
  }
  return x;
}

UniMatrix evaluate_word(const Word& w, std::span<const UniMatrix> images) {
  if (images.empty()) {
    if (!w.empty()) throw InputError("word letter without an image");
    throw InputError("cannot evaluate a word without a target shape");
  }
  UniMatrix x(images[0].shape());
  for (int letter : w) {
    std::size_t k = static_cast<std::size_t>(std::abs(letter));
    if (k == 0 || k > images.size()) throw InputError("word letter without an image");
    x = uni_mul(x, letter > 0 ? images[k - 1] : uni_inv(images[k - 1]));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Closures

namespace {

// Builds the multiplication table of a closure from right multiplication by
// generators: a * x = (a * parent(x)) * gen(x).
std::vector<std::vector<Elem>> table_from_edges(const std::vector<std::vector<Elem>>& right,
                                                const std::vector<Elem>& parent,
                                                const std::vector<std::size_t>& via) {
  const std::size_t n = right.size();
  std::vector<std::vector<Elem>> mul(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a) {
    mul[a][0] = a;
    for (Elem x = 1; x < n; ++x) mul[a][x] = right[mul[a][parent[x]]][via[x]];
  }
  return mul;
}

template <class T, class Mul>
std::pair<std::vector<T>, std::vector<std::vector<Elem>>> closure_table(const T& identity,
                                                                        const std::vector<T>& gens,
                                                                        std::size_t budget, Mul mulf,
                                                                        std::map<T, Elem>& index) {
  std::vector<T> elems{identity};
  std::vector<Elem> parent{0};
  std::vector<std::size_t> via{0};
  std::vector<std::vector<Elem>> right;
  index.clear();
  index.emplace(identity, 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    std::vector<Elem> edges;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      T y = mulf(elems[head], gens[i]);
      auto [it, fresh] = index.emplace(y, elems.size());
      if (fresh) {
        if (elems.size() >= budget) throw BudgetExceeded("group closure exceeds budget", elems.size());
        elems.push_back(std::move(y));
        parent.push_back(head);
        via.push_back(i);
      }
      edges.push_back(it->second);
    }
    right.push_back(std::move(edges));
  }
  return {std::move(elems), table_from_edges(right, parent, via)};
}

}  // namespace

Elem UniClosure::index_of(const UniMatrix& m) const {
  auto it = lookup.find(m);
  if (it == lookup.end()) throw InputError("matrix " + m.to_string() + " is not in the group");
  return it->second;
}

UniClosure closure_group(const UniShape& shape, const std::vector<UniMatrix>& generators, std::size_t budget) {
  for (const auto& g : generators)
    if (!(g.shape() == shape)) throw ShapeMismatch("generator shape differs from the closure shape");
  UniClosure out;
  auto [elems, table] = closure_table(UniMatrix(shape), generators, budget, uni_mul, out.lookup);
  std::vector<std::string> names;
  for (const auto& m : elems) names.push_back(m.to_string());
  out.group = std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(table), std::move(names), "closure"));
  out.elements = std::move(elems);
  return out;
}

GroupPtr closure_group(const std::vector<Permutation>& generators, std::size_t degree, std::size_t budget) {
  for (const auto& g : generators) {
    if (g.size() != degree) throw InputError("permutation has the wrong degree");
    std::vector<bool> seen(degree, false);
    for (std::size_t x : g) {
      if (x >= degree || seen[x]) throw InputError("not a permutation");
      seen[x] = true;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), std::size_t{0});
  auto compose = [](const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
  };
  std::map<Permutation, Elem> index;
  auto [elems, table] = closure_table(id, generators, budget, compose, index);
  return std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(table), {}, "permutation closure"));
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Word power_word(int g, long long e) { return Word(static_cast<std::size_t>(e), g); }
Word commutator_word(int a, int b) { return {a, b, -a, -b}; }

struct Parsed {
  std::string head;
  std::vector<std::string> args;
};

Parsed parse_name(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  Parsed p;
  auto open = s.find('(');
  if (open == std::string::npos) {
    p.head = s;
    return p;
  }
  if (s.back() != ')') throw UnknownName("malformed group name: " + raw);
  p.head = s.substr(0, open);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      p.args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !p.args.empty()) p.args.push_back(cur);
  return p;
}

std::size_t parse_count(const std::string& s, const std::string& name) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 6)
    throw UnknownName("bad numeric argument in " + name);
  return std::stoul(s);
}

GroupPtr finish(std::vector<std::vector<Elem>> table, std::vector<std::string> names, const std::string& label,
                Presentation p, std::vector<Elem> images) {
  auto g = FiniteGroup::from_table(std::move(table), std::move(names), label);
  p.label = label;
  g.set_known_presentation(std::move(p), std::move(images));
  return std::make_shared<FiniteGroup>(std::move(g));
}

GroupPtr make_cyclic(std::size_t m, const std::string& label) {
  if (m == 0) throw UnknownName("cyclic group order must be positive");
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  std::vector<std::string> names;
  for (Elem a = 0; a < m; ++a) {
    names.push_back(a == 0 ? "e" : (a == 1 ? "x" : "x^" + std::to_string(a)));
    for (Elem b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  }
  return finish(std::move(t), std::move(names), label, Presentation{1, {power_word(1, static_cast<long long>(m))}, ""},
                {m == 1 ? Elem{0} : Elem{1}});
}

GroupPtr make_product(const FiniteGroup& a, const FiniteGroup& b, const std::string& label) {
  const std::size_t na = a.order(), nb = b.order();
  if (!a.known_presentation() || !b.known_presentation()) throw UnknownName("product factors need presentations");
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  std::vector<std::string> names;
  for (Elem x = 0; x < na * nb; ++x) {
    names.push_back("(" + a.name(x / nb) + "," + b.name(x % nb) + ")");
    for (Elem y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  const auto& pa = a.known_presentation()->presentation;
  const auto& pb = b.known_presentation()->presentation;
  const int ka = static_cast<int>(pa.generator_count);
  Presentation p{pa.generator_count + pb.generator_count, pa.relators, ""};
  for (Word w : pb.relators) {
    for (int& x : w) x += x > 0 ? ka : -ka;
    p.relators.push_back(std::move(w));
  }
  for (int i = 1; i <= ka; ++i)
    for (int j = 1; j <= static_cast<int>(pb.generator_count); ++j) p.relators.push_back(commutator_word(i, ka + j));
  std::vector<Elem> images;
  for (Elem g : a.known_presentation()->generator_images) images.push_back(g * nb);
  for (Elem g : b.known_presentation()->generator_images) images.push_back(g);
  return finish(std::move(t), std::move(names), label, std::move(p), std::move(images));
}

GroupPtr make_dihedral(std::size_t order, const std::string& label) {
  if (order < 4 || order % 2) throw UnknownName("dihedral(2m) needs an even order >= 4");
  const std::size_t m = order / 2;
  // r^i s^j has index i + m j.
  std::vector<std::vector<Elem>> t(order, std::vector<Elem>(order));
  std::vector<std::string> names;
  for (Elem x = 0; x < order; ++x) {
    std::size_t i = x % m, j = x / m;
    std::string nm = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
    if (j) nm += "s";
    names.push_back(nm.empty() ? "e" : nm);
    for (Elem y = 0; y < order; ++y) {
      std::size_t k = y % m, l = y / m;
      std::size_t ni = (j ? i + m - k : i + k) % m;
      t[x][y] = ni + m * ((j + l) % 2);
    }
  }
  Presentation p{2, {power_word(1, static_cast<long long>(m)), {2, 2}, {2, 1, 2, 1}}, ""};
  return finish(std::move(t), std::move(names), label, std::move(p), {1, m});
}

GroupPtr make_quaternion8(const std::string& label) {
  // Units 1, i, j, k with sign: index u + 4 s.
  static const int unit_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  static const char* unit_name[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  std::vector<std::string> names;
  for (Elem x = 0; x < 8; ++x) {
    names.push_back(std::string(x >= 4 ? "-" : "") + unit_name[x % 4]);
    for (Elem y = 0; y < 8; ++y) {
      const int* r = unit_mul[x % 4][y % 4];
      t[x][y] = static_cast<Elem>(r[0]) + 4 * ((x / 4 + y / 4 + static_cast<Elem>(r[1])) % 2);
    }
  }
  Presentation p{2, {{1, 1, 1, 1}, {1, 1, -2, -2}, {2, 1, -2, 1}}, ""};
  return finish(std::move(t), std::move(names), label, std::move(p), {1, 2});
}

GroupPtr make_unitriangular(std::size_t size, Residue prime, const std::string& label) {
  if (!is_prime(prime)) throw UnknownName("unitriangular catalog entries need a prime");
  UniShape shape(size, prime);
  auto elems = enumerate_group(shape, kDefaultClosureBudget);
  std::map<UniMatrix, Elem> index;
  for (Elem i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<std::vector<Elem>> t(elems.size(), std::vector<Elem>(elems.size()));
  std::vector<std::string> names;
  for (Elem a = 0; a < elems.size(); ++a) {
    names.push_back(elems[a].to_string());
    for (Elem b = 0; b < elems.size(); ++b) t[a][b] = index.at(uni_mul(elems[a], elems[b]));
  }
  const long long p = prime;
  Presentation pres;
  std::vector<Elem> images;
  if (size == 3) {
    // <x, y | x^p, y^p, [x,y]^p, [x,[x,y]], [y,[x,y]]>
    Word c = commutator_word(1, 2);
    Word cp;
    for (long long i = 0; i < p; ++i) cp = concat(cp, c);
    pres = Presentation{2,
                        {power_word(1, p), power_word(2, p), cp, concat(concat(Word{1}, c), concat(Word{-1}, invert_word(c))),
                         concat(concat(Word{2}, c), concat(Word{-2}, invert_word(c)))},
                        ""};
    images = {index.at(elementary(shape, 1, 2)), index.at(elementary(shape, 2, 3))};
  } else {
    // Steinberg-type presentation on x_ij, i < j, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> coords;
    for (std::size_t i = 1; i <= size; ++i)
      for (std::size_t j = i + 1; j <= size; ++j) coords.push_back({i, j});
    auto gen_of = [&](std::size_t i, std::size_t j) {
      return static_cast<int>(std::find(coords.begin(), coords.end(), std::make_pair(i, j)) - coords.begin()) + 1;
    };
    pres.generator_count = coords.size();
    for (std::size_t a = 0; a < coords.size(); ++a) pres.relators.push_back(power_word(static_cast<int>(a) + 1, p));
    for (std::size_t a = 0; a < coords.size(); ++a)
      for (std::size_t b = a + 1; b < coords.size(); ++b) {
        auto [i, j] = coords[a];
        auto [k, l] = coords[b];
        int ga = static_cast<int>(a) + 1, gb = static_cast<int>(b) + 1;
        if (j == k) pres.relators.push_back(concat(commutator_word(ga, gb), Word{-gen_of(i, l)}));
        else if (l == i) pres.relators.push_back(concat(commutator_word(gb, ga), Word{-gen_of(k, j)}));
        else pres.relators.push_back(commutator_word(ga, gb));
      }
    for (auto [i, j] : coords) images.push_back(index.at(elementary(shape, i, j)));
  }
  return finish(std::move(t), std::move(names), label, std::move(pres), std::move(images));
}

GroupPtr catalog_factor(const std::string& arg) {
  if (!arg.empty() && std::all_of(arg.begin(), arg.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return catalog("cyclic(" + arg + ")");
  return catalog(arg);
}

}  // namespace

GroupPtr catalog(const std::string& name) {
  Parsed p = parse_name(name);
  std::string label;
  for (char c : name)
    if (c != ' ') label += c;
  auto want_args = [&](std::size_t k) {
    if (p.args.size() != k) throw UnknownName("wrong number of arguments in " + name);
  };
  if (p.head == "cyclic") {
    want_args(1);
    return make_cyclic(parse_count(p.args[0], name), label);
  }
  if (p.head == "product") {
    want_args(2);
    return make_product(*catalog_factor(p.args[0]), *catalog_factor(p.args[1]), label);
  }
  if (p.head == "dihedral") {
    want_args(1);
    return make_dihedral(parse_count(p.args[0], name), label);
  }
  if (p.head == "quaternion8") {
    want_args(0);
    return make_quaternion8(label);
  }
  if (p.head == "u3" || p.head == "u4") {
    want_args(1);
    return make_unitriangular(p.head == "u3" ? 3 : 4, static_cast<Residue>(parse_count(p.args[0], name)), label);
  }
  if (p.head == "elementary") {
    want_args(2);
    std::size_t prime = parse_count(p.args[0], name), k = parse_count(p.args[1], name);
    if (!is_prime(prime) || k == 0) throw UnknownName("elementary(p,k) needs a prime p and k >= 1");
    GroupPtr cyc = make_cyclic(prime, "cyclic(" + std::to_string(prime) + ")");
    if (k == 1) return make_cyclic(prime, label);
    GroupPtr g = cyc;
    for (std::size_t i = 2; i <= k; ++i)
      g = make_product(*g, *cyc, i == k ? label : "elementary(" + std::to_string(prime) + "," + std::to_string(i) + ")");
    return g;
  }
  throw UnknownName("unknown group name: " + name);
}

std::vector<std::string> catalog_two_groups(std::size_t max_order) {
  static const std::vector<std::pair<std::size_t, std::string>> all = {
      {2, "cyclic(2)"},
      {4, "cyclic(4)"},
      {4, "product(2,2)"},
      {8, "cyclic(8)"},
      {8, "product(2,4)"},
      {8, "elementary(2,3)"},
      {8, "dihedral(8)"},
      {8, "quaternion8"},
      {8, "u3(2)"},
      {16, "cyclic(16)"},
      {16, "product(2,8)"},
      {16, "product(4,4)"},
      {16, "product(product(2,2),4)"},
      {16, "elementary(2,4)"},
      {16, "dihedral(16)"},
      {16, "product(dihedral(8),2)"},
      {16, "product(quaternion8,2)"},
  };
  std::vector<std::string> out;
  for (const auto& [n, name] : all)
    if (n <= max_order) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

std::vector<Elem> extend_homomorphism(const FiniteGroup& source, std::span<const Elem> target_images,
                                      const FiniteGroup& target) {
  const auto& kp = source.known_presentation();
  if (!kp) throw InputError("source group has no known presentation");
  if (target_images.size() != kp->presentation.generator_count)
    throw DimensionMismatch("one image per presentation generator required");
  for (const auto& r : kp->presentation.relators)
    if (evaluate_word(r, target_images, target) != target.identity())
      throw NotHomomorphism("relator " + word_to_string(r) + " is not killed");
  CayleyTree tree = cayley_tree(source, kp->generator_images);
  std::vector<Elem> phi(source.order());
  for (Elem x : tree.order)
    phi[x] = x == source.identity() ? target.identity() : target.mul(phi[tree.parent[x]], target_images[tree.via[x]]);
  for (Elem x = 0; x < source.order(); ++x)
    for (std::size_t i = 0; i < target_images.size(); ++i)
      if (phi[source.mul(x, kp->generator_images[i])] != target.mul(phi[x], target_images[i]))
        throw NotHomomorphism("generator images do not define a homomorphism");
  return phi;
}

std::vector<UniMatrix> extend_homomorphism(const FiniteGroup& source, std::span<const UniMatrix> target_images) {
  const auto& kp = source.known_presentation();
  if (!kp) throw InputError("source group has no known presentation");
  if (target_images.size() != kp->presentation.generator_count || target_images.empty())
    throw DimensionMismatch("one image per presentation generator required");
  for (const auto& r : kp->presentation.relators)
    if (!evaluate_word(r, target_images).is_identity())
      throw NotHomomorphism("relator " + word_to_string(r) + " is not killed");
  CayleyTree tree = cayley_tree(source, kp->generator_images);
  std::vector<UniMatrix> phi(source.order(), UniMatrix(target_images[0].shape()));
  for (Elem x : tree.order)
    if (x != source.identity()) phi[x] = uni_mul(phi[tree.parent[x]], target_images[tree.via[x]]);
  for (Elem x = 0; x < source.order(); ++x)
    for (std::size_t i = 0; i < target_images.size(); ++i)
      if (!(phi[source.mul(x, kp->generator_images[i])] == uni_mul(phi[x], target_images[i])))
        throw NotHomomorphism("generator images do not define a homomorphism");
  return phi;
}

// ---------------------------------------------------------------------------
// Subgroups

SubgroupData SubgroupData::from_members(GroupPtr parent, std::vector<Elem> members, std::vector<Elem> transversal) {
  const FiniteGroup& g = *parent;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members[0] != g.identity()) throw InputError("subgroup must contain the identity");
  if (members.back() >= g.order()) throw InputError("subgroup member out of range");
  std::vector<bool> in(g.order(), false);
  for (Elem m : members) in[m] = true;
  for (Elem a : members)
    for (Elem b : members)
      if (!in[g.mul(a, b)]) throw InputError("members are not closed under multiplication");

  const std::size_t idx = g.order() / members.size();
  std::vector<bool> covered(g.order(), false);
  if (transversal.empty()) {
    for (Elem x = 0; x < g.order(); ++x) {
      if (covered[x]) continue;
      transversal.push_back(x);
      for (Elem h : members) covered[g.mul(x, h)] = true;
    }
  } else {
    for (Elem r : transversal) {
      if (r >= g.order()) throw InputError("transversal element out of range");
      for (Elem h : members) {
        if (covered[g.mul(r, h)]) throw InputError("transversal repeats a coset");
        covered[g.mul(r, h)] = true;
      }
    }
    if (transversal.size() != idx) throw InputError("transversal misses a coset");
  }
  if (!in[transversal[0]]) throw InputError("transversal must start in the subgroup");

  std::vector<std::vector<Elem>> table(members.size(), std::vector<Elem>(members.size()));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < members.size(); ++i) {
    names.push_back(g.name(members[i]));
    for (std::size_t j = 0; j < members.size(); ++j)
      table[i][j] = static_cast<Elem>(std::lower_bound(members.begin(), members.end(), g.mul(members[i], members[j])) -
                                      members.begin());
  }
  auto sub = std::make_shared<FiniteGroup>(
      FiniteGroup::from_table(std::move(table), std::move(names), "subgroup of " + g.label()));
  return SubgroupData{std::move(parent), std::move(members), std::move(transversal), std::move(sub)};
}

bool SubgroupData::contains(Elem g) const { return std::binary_search(members.begin(), members.end(), g); }

Elem SubgroupData::local(Elem g) const {
  auto it = std::lower_bound(members.begin(), members.end(), g);
  if (it == members.end() || *it != g) throw InputError("element is not in the subgroup");
  return static_cast<Elem>(it - members.begin());
}

bool SubgroupData::is_normal() const {
  for (Elem g = 0; g < parent->order(); ++g)
    for (Elem h : members)
      if (!contains(parent->conj(g, h))) return false;
  return true;
}

std::size_t SubgroupData::coset_of(Elem g) const {
  for (std::size_t i = 0; i < transversal.size(); ++i)
    if (contains(parent->mul(parent->inv(transversal[i]), g))) return i;
  throw InternalInconsistency("element lies in no coset");
}

SubgroupData kernel_of_character(GroupPtr g, std::span<const Residue> values, Residue p) {
  const FiniteGroup& G = *g;
  if (values.size() != G.order()) throw DimensionMismatch("one character value per element required");
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b)
      if (values[G.mul(a, b)] % p != (values[a] + values[b]) % p)
        throw NotHomomorphism("values do not define a character");
  std::optional<Elem> gen;
  std::vector<Elem> members;
  for (Elem a = 0; a < G.order(); ++a) {
    if (values[a] % p == 0) members.push_back(a);
    else if (values[a] % p == 1 && !gen) gen = a;
  }
  if (!gen) throw NotSurjective("character is zero");
  std::vector<Elem> transversal;
  for (Residue l = 0; l < p; ++l) transversal.push_back(G.pow(*gen, l));
  return SubgroupData::from_members(std::move(g), std::move(members), std::move(transversal));
}

std::vector<SubgroupData> enumerate_subgroups(GroupPtr g) {
  const FiniteGroup& G = *g;
  const std::size_t n = G.order();
  if (n > 64) throw BudgetExceeded("subgroup enumeration limited to order 64", n);
  using Mask = std::uint64_t;
  auto bit = [](Elem x) { return Mask{1} << x; };

  // Closure of a subgroup (given as a mask) with one extra element.
  auto join = [&](Mask base, Elem extra) {
    std::vector<Elem> gens;
    for (Elem x = 0; x < n; ++x)
      if (base & bit(x)) gens.push_back(x);
    gens.push_back(extra);
    Mask m = bit(G.identity());
    std::vector<Elem> frontier{G.identity()};
    for (std::size_t h = 0; h < frontier.size(); ++h)
      for (Elem s : gens) {
        Elem y = G.mul(frontier[h], s);
        if (!(m & bit(y))) {
          m |= bit(y);
          frontier.push_back(y);
        }
      }
    return m;
  };

  std::set<Mask> found{bit(G.identity())};
  std::deque<Mask> work{bit(G.identity())};
  while (!work.empty()) {
    Mask s = work.front();
    work.pop_front();
    for (Elem x = 0; x < n; ++x) {
      if (s & bit(x)) continue;
      Mask t = join(s, x);
      if (found.insert(t).second) work.push_back(t);
    }
  }
  std::vector<std::vector<Elem>> lists;
  for (Mask m : found) {
    std::vector<Elem> v;
    for (Elem x = 0; x < n; ++x)
      if (m & bit(x)) v.push_back(x);
    lists.push_back(std::move(v));
  }
  std::sort(lists.begin(), lists.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<SubgroupData> out;
  for (auto& v : lists) out.push_back(SubgroupData::from_members(g, std::move(v)));
  return out;
}

std::vector<Vec> characters_of(const FiniteGroup& g, Residue modulus) {
  const auto& kp = g.known_presentation();
  if (!kp) throw InputError("group has no known presentation");
  CayleyTree tree = cayley_tree(g, kp->generator_images);
  std::vector<Vec> out;
  for (const auto& chi : presented_characters(kp->presentation, modulus)) {
    Vec v(g.order(), 0);
    for (Elem x : tree.order)
      if (x != g.identity()) v[x] = (v[tree.parent[x]] + chi.values[tree.via[x]]) % modulus;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace gcoh
