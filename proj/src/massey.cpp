#include "gcoh/massey.hpp"

#include <algorithm>
#include <functional>

#include "gcoh/errors.hpp"

namespace gcoh {

const Cochain& DefiningSystem::at(std::size_t i, std::size_t j) const {
  auto it = entries.find({i, j});
  if (it == entries.end())
    throw InvalidSystem("defining system has no entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return it->second;
}

std::string to_string(MasseyStatus s) {
  switch (s) {
    case MasseyStatus::Undefined:
      return "Undefined";
    case MasseyStatus::DefinedNotVanishing:
      return "DefinedNotVanishing";
    case MasseyStatus::Vanishes:
      return "Vanishes";
  }
  return "Undefined";
}

namespace {

// -sum_{l=i+1}^{j-1} a_il u a_lj
Cochain inner_target(const DefiningSystem& m, std::size_t i, std::size_t j) {
  const Cochain& first = m.at(i, i + 1);
  Cochain s(first.group(), 2, first.modulus());
  for (std::size_t l = i + 1; l < j; ++l) s = s + cup(m.at(i, l), m.at(l, j));
  return -s;
}

Cochain value_cocycle(const DefiningSystem& m) {
  const std::size_t n = m.n;
  const Cochain& first = m.at(1, 2);
  Cochain s(first.group(), 2, first.modulus());
  for (std::size_t l = 2; l <= n; ++l) s = s + cup(m.at(1, l), m.at(l, n + 1));
  return -s;
}

bool structurally_valid(const DefiningSystem& m) {
  if (m.n < 2) return false;
  std::size_t expected = (m.n + 1) * m.n / 2 - 1;
  if (m.entries.size() != expected) return false;
  for (std::size_t i = 1; i <= m.n + 1; ++i)
    for (std::size_t j = i + 1; j <= m.n + 1; ++j) {
      if (i == 1 && j == m.n + 1) continue;
      auto it = m.entries.find({i, j});
      if (it == m.entries.end() || it->second.degree() != 1) return false;
    }
  const Cochain& first = m.at(1, 2);
  for (const auto& [key, c] : m.entries)
    if (c.group() != first.group() || c.modulus() != first.modulus() || c.twist()) return false;
  for (std::size_t i = 1; i <= m.n; ++i)
    if (!is_cocycle(m.at(i, i + 1))) return false;
  for (std::size_t k = 2; k < m.n; ++k)
    for (std::size_t i = 1; i + k <= m.n + 1; ++i) {
      std::size_t j = i + k;
      if (!(coboundary(m.at(i, j)) == inner_target(m, i, j))) return false;
    }
  return true;
}

}  // namespace

bool validate_defining_system(const DefiningSystem& m, const std::vector<Cochain>& chis) {
  try {
    if (chis.size() != m.n || !structurally_valid(m)) return false;
    for (std::size_t i = 1; i <= m.n; ++i) {
      const Cochain& a = m.at(i, i + 1);
      if (chis[i - 1].group() != a.group() || chis[i - 1].modulus() != a.modulus()) return false;
      if (!is_coboundary(a - chis[i - 1])) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

Cochain defining_system_value(const DefiningSystem& m) {
  bool ok = false;
  try {
    ok = structurally_valid(m);
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) throw InvalidSystem("not a defining system");
  return value_cocycle(m);
}

// ---------------------------------------------------------------------------
// Finite groups: layered search

namespace {

class LayeredSearch {
 public:
  LayeredSearch(const ModPCohomology& coh, const std::vector<Cochain>& chis, const MasseyOptions& opt)
      : coh_(coh), chis_(chis), opt_(opt), n_(chis.size()) {
    const Residue p = coh.prime();
    // Every element of Z^1, in lexicographic order of basis coefficients.
    const auto& basis = coh.h1_basis();
    std::size_t count = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) count *= p;
    for (std::size_t t = 0; t < count; ++t) {
      Cochain z = coh.zero(1);
      std::size_t r = t;
      for (std::size_t b = basis.size(); b-- > 0;) {
        z = z + basis[b].scaled(static_cast<long long>(r % p));
        r /= p;
      }
      z1_.push_back(std::move(z));
    }
    sys_.n = n_;
    for (std::size_t i = 1; i <= n_; ++i) sys_.entries.emplace(std::make_pair(i, i + 1), chis[i - 1]);
  }

  MasseyReport run() {
    MasseyReport r;
    if (n_ == 2) {
      Cochain v = value_cocycle(sys_);
      ++stats_.last_layer_checks;
      r.witness = sys_;
      r.status = coh_.is_coboundary(v) ? MasseyStatus::Vanishes : MasseyStatus::DefinedNotVanishing;
      r.stats = stats_;
      return r;
    }
    bool vanished = layer(2);
    r.stats = stats_;
    if (vanished) {
      r.status = MasseyStatus::Vanishes;
      r.witness = vanishing_;
    } else if (defined_) {
      r.status = MasseyStatus::DefinedNotVanishing;
      r.witness = defined_;
    }
    return r;
  }

 private:
  std::optional<Cochain> solve(const Cochain& target) {
    ++stats_.solves;
    return coh_.primitive(target);
  }

  bool layer(std::size_t k) {
    if (k == n_ - 1) return last_layer();
    std::vector<std::size_t> rows;
    std::vector<Cochain> particular;
    for (std::size_t i = 1; i + k <= n_ + 1; ++i) {
      auto f = solve(inner_target(sys_, i, i + k));
      if (!f) return false;
      rows.push_back(i);
      particular.push_back(std::move(*f));
    }
    const std::size_t m = rows.size();
    std::vector<std::size_t> choice(m, 0);
    for (;;) {
      if (++stats_.branches > opt_.budget) throw BudgetExceeded("Massey layered search exceeds budget", stats_.branches);
      for (std::size_t e = 0; e < m; ++e)
        sys_.entries.insert_or_assign({rows[e], rows[e] + k}, particular[e] + z1_[choice[e]]);
      if (layer(k + 1)) return true;
      std::size_t e = m;
      while (e-- > 0) {
        if (++choice[e] < z1_.size()) break;
        choice[e] = 0;
      }
      if (e == static_cast<std::size_t>(-1)) break;
    }
    for (std::size_t e = 0; e < m; ++e) sys_.entries.erase({rows[e], rows[e] + k});
    return false;
  }

  bool last_layer() {
    const std::size_t n = n_;
    auto f1 = solve(inner_target(sys_, 1, n));
    if (!f1) return false;
    auto f2 = solve(inner_target(sys_, 2, n + 1));
    if (!f2) return false;
    sys_.entries.insert_or_assign({1, n}, *f1);
    sys_.entries.insert_or_assign({2, n + 1}, *f2);
    if (!defined_) defined_ = sys_;
    const Cochain value0 = value_cocycle(sys_);
    const Cochain& a12 = sys_.at(1, 2);
    const Cochain& alast = sys_.at(n, n + 1);
    bool found = false;

    if (opt_.linear_last_layer) {
      ++stats_.last_layer_checks;
      // value0 + d f = sum alpha (a12 u z'_b) + sum beta (z_b u a_{n,n+1})
      const auto& basis = coh_.h1_basis();
      EchelonBasis span(value0.size(), coh_.prime(), true);
      for (const auto& v : coh_.b2_generators()) span.insert(v);
      for (const auto& z : basis) span.insert(cup(a12, z).values());
      for (const auto& z : basis) span.insert(cup(z, alast).values());
      if (auto c = span.express(value0.values())) {
        const std::size_t nb = coh_.b2_generators().size(), d = basis.size();
        Cochain add2 = coh_.zero(1), add1 = coh_.zero(1);
        for (std::size_t b = 0; b < d; ++b) {
          add2 = add2 + basis[b].scaled((*c)[nb + b]);
          add1 = add1 + basis[b].scaled((*c)[nb + d + b]);
        }
        sys_.entries.insert_or_assign({2, n + 1}, *f2 + add2);
        sys_.entries.insert_or_assign({1, n}, *f1 + add1);
        if (!coh_.is_coboundary(value_cocycle(sys_)))
          throw InternalInconsistency("linear last layer produced a non-vanishing value");
        found = true;
      }
    } else {
      for (const auto& z : z1_) {
        for (const auto& w : z1_) {
          ++stats_.last_layer_checks;
          sys_.entries.insert_or_assign({1, n}, *f1 + z);
          sys_.entries.insert_or_assign({2, n + 1}, *f2 + w);
          if (coh_.is_coboundary(value_cocycle(sys_))) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (found) {
      vanishing_ = sys_;
      return true;
    }
    sys_.entries.erase({1, n});
    sys_.entries.erase({2, n + 1});
    return false;
  }

  const ModPCohomology& coh_;
  const std::vector<Cochain>& chis_;
  MasseyOptions opt_;
  std::size_t n_;
  std::vector<Cochain> z1_;
  DefiningSystem sys_;
  std::optional<DefiningSystem> defined_, vanishing_;
  MasseyStats stats_;
};

}  // namespace

MasseyReport massey_status_finite(const ModPCohomology& coh, const std::vector<Cochain>& chis,
                                  const MasseyOptions& options) {
  if (chis.size() < 2 || chis.size() > 4) throw InputError("Massey products of order 2 to 4 are supported");
  for (const auto& c : chis) {
    if (c.degree() != 1 || c.group() != coh.group() || c.modulus() != coh.prime() || c.twist())
      throw InputError("Massey entries must be mod-p characters of the group");
    if (!is_cocycle(c)) throw NotACocycle("Massey entry is not a character");
  }
  return LayeredSearch(coh, chis, options).run();
}

MasseyReport massey_status_finite(GroupPtr g, const std::vector<Cochain>& chis, const MasseyOptions& options) {
  if (chis.empty()) throw InputError("no characters given");
  if (g->order() > 32) throw BudgetExceeded("finite Massey search limited to order 32", g->order());
  ModPCohomology coh(std::move(g), chis[0].modulus(), false);
  return massey_status_finite(coh, chis, options);
}

// ---------------------------------------------------------------------------
// Presented groups: lifts to unitriangular groups

LiftSearchResult lift_search(const Presentation& p, const std::vector<PresentedCharacter>& chis, bool barred,
                             unsigned long long budget, std::optional<std::size_t> max_results) {
  p.validate();
  const std::size_t n = chis.size();
  if (n < 2) throw InputError("lift search needs at least two characters");
  if (n + 1 > 6) throw InputError("unitriangular targets are limited to size 6");
  const Residue prime = chis[0].modulus;
  if (!is_prime(prime)) throw NonPrimeModulus("characters must take values in Z/p");
  for (const auto& c : chis) {
    if (c.modulus != prime) throw InputError("characters must share one modulus");
    if (c.values.size() != p.generator_count) throw DimensionMismatch("one character value per generator required");
    if (!is_character(p, c)) throw NotHomomorphism("a character does not respect the relators");
  }
  const UniShape shape(n + 1, prime, barred);
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = i + 2; j <= n + 1; ++j)
      if (!(barred && i == 1 && j == n + 1)) free.push_back({i, j});

  LiftSearchResult result;
  unsigned long long per_gen = 1;
  for (std::size_t k = 0; k < free.size(); ++k) per_gen *= prime;
  result.candidates = 1;
  for (std::size_t g = 0; g < p.generator_count; ++g) {
    if (result.candidates > budget / per_gen) throw BudgetExceeded("lift search space exceeds budget", 0);
    result.candidates *= per_gen;
  }

  // Relators are checked as soon as their largest generator is assigned.
  std::vector<std::vector<const Word*>> check_at(p.generator_count + 1);
  for (const auto& r : p.relators) {
    std::size_t top = 0;
    for (int x : r) top = std::max(top, static_cast<std::size_t>(std::abs(x)));
    check_at[top].push_back(&r);
  }
  if (!check_at[0].empty() && p.generator_count == 0) {
    // only empty relators; nothing to check
  }

  std::vector<UniMatrix> images(p.generator_count, UniMatrix(shape));
  std::vector<UniMatrix> inverses(p.generator_count, UniMatrix(shape));
  auto eval = [&](const Word& w) {
    UniMatrix x(shape);
    for (int letter : w) {
      std::size_t k = static_cast<std::size_t>(std::abs(letter)) - 1;
      x = uni_mul(x, letter > 0 ? images[k] : inverses[k]);
    }
    return x;
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t g) -> bool {
    if (g == p.generator_count) {
      result.lifts.push_back(UniLift{shape, images});
      return max_results && result.lifts.size() >= *max_results;
    }
    for (unsigned long long t = 0; t < per_gen; ++t) {
      ++result.nodes;
      UniMatrix m(shape);
      for (std::size_t i = 1; i <= n; ++i) m.set(i, i + 1, chis[i - 1].values[g]);
      unsigned long long r = t;
      for (std::size_t k = free.size(); k-- > 0;) {
        m.set(free[k].first, free[k].second, static_cast<long long>(r % prime));
        r /= prime;
      }
      images[g] = m;
      inverses[g] = uni_inv(m);
      bool ok = true;
      for (const Word* w : check_at[g + 1])
        if (!eval(*w).is_identity()) {
          ok = false;
          break;
        }
      if (ok && dfs(g + 1)) return true;
    }
    return false;
  };
  dfs(0);
  return result;
}

PresentedMasseyReport massey_status_presented(const Presentation& p, const std::vector<PresentedCharacter>& chis,
                                              unsigned long long budget) {
  PresentedMasseyReport r;
  auto bar = lift_search(p, chis, true, budget, 1);
  r.barred_candidates = bar.candidates;
  r.nodes = bar.nodes;
  if (bar.lifts.empty()) return r;
  r.barred_witness = bar.lifts.front();
  auto full = lift_search(p, chis, false, budget, 1);
  r.candidates = full.candidates;
  r.nodes += full.nodes;
  if (full.lifts.empty()) {
    r.status = MasseyStatus::DefinedNotVanishing;
  } else {
    r.status = MasseyStatus::Vanishes;
    r.witness = full.lifts.front();
  }
  return r;
}

PresentedCharacter presented_from_cochain(const FiniteGroup& g, const Cochain& chi) {
  const auto& kp = g.known_presentation();
  if (!kp) throw InputError("group has no known presentation");
  PresentedCharacter out{chi.modulus(), {}};
  for (Elem x : kp->generator_images) out.values.push_back(chi(x));
  return out;
}

DefiningSystem defining_system_from_lift(GroupPtr g, const std::vector<UniMatrix>& element_images) {
  if (element_images.size() != g->order()) throw DimensionMismatch("one image per element required");
  const UniShape& shape = element_images[0].shape();
  const std::size_t n = shape.size - 1;
  DefiningSystem m;
  m.n = n;
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = i + 1; j <= n + 1; ++j) {
      if (i == 1 && j == n + 1) continue;
      Vec v(g->order());
      for (Elem x = 0; x < g->order(); ++x) v[x] = element_images[x].at(i, j);
      m.entries.emplace(std::make_pair(i, j), Cochain::from_function(g, v, shape.prime));
    }
  return m;
}

Cochain obstruction_cocycle(GroupPtr g, const std::vector<UniMatrix>& element_images) {
  if (element_images.size() != g->order()) throw DimensionMismatch("one image per element required");
  const UniShape& shape = element_images[0].shape();
  const std::size_t n = shape.size - 1;
  Cochain c(g, 2, shape.prime);
  for (Elem x = 1; x < g->order(); ++x)
    for (Elem y = 1; y < g->order(); ++y) {
      long long s = 0;
      for (std::size_t l = 2; l <= n; ++l)
        s += static_cast<long long>(element_images[x].at(1, l)) * element_images[y].at(l, n + 1);
      Elem args[2] = {x, y};
      c.set(args, s);
    }
  return c;
}

DwyerObstruction dwyer_obstruction(const UniLift& lift) {
  UniShape shape = lift.shape.as_barred();
  std::vector<UniMatrix> gens;
  for (const auto& m : lift.images) gens.push_back(lift.shape.barred ? m : project_bar(m));
  UniClosure img = closure_group(shape, gens);
  Cochain c = obstruction_cocycle(img.group, img.elements);
  ModPCohomology coh(img.group, shape.prime, false);
  bool v = coh.is_coboundary(c);
  return DwyerObstruction{std::move(img), std::move(c), v};
}

// ---------------------------------------------------------------------------
// Degenerate fourfold products

U5CriterionReport u5_degenerate_criterion(GroupPtr g, const Cochain& chi1, const Cochain& chi2, const Cochain& chi3) {
  for (const Cochain* c : {&chi1, &chi2, &chi3})
    if (c->modulus() != 2 || c->group() != g || c->degree() != 1) throw InputError("expected characters to Z/2");
  if (chi1.is_zero()) throw InputError("chi1 must be nonzero");
  if (g->order() > 16) throw BudgetExceeded("degenerate fourfold criterion limited to order 16", g->order());

  U5CriterionReport r;
  ModPCohomology cg(g, 2, true);
  MasseyReport lhs = massey_status_finite(cg, {chi1, chi2, chi3, chi1});
  r.lhs_defined = lhs.status != MasseyStatus::Undefined;
  r.lhs_vanishes = lhs.status == MasseyStatus::Vanishes;

  SubgroupData h = kernel_of_character(g, chi1.as_function(), 2);
  ModPCohomology ch(h.as_group, 2, false);
  const Cochain res3 = restriction(chi3, h);
  EchelonBasis image_of_res(ch.zero(2).size(), 2);
  for (const auto& v : ch.b2_generators()) image_of_res.insert(v);
  for (const auto& y : cg.h2_basis()) image_of_res.insert(restriction(y, h).values());

  std::vector<Cochain> all;
  const auto& basis = ch.h1_basis();
  for (std::size_t t = 0; t < (std::size_t{1} << basis.size()); ++t) {
    Cochain z = ch.zero(1);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (t >> (basis.size() - 1 - b) & 1) z = z + basis[b];
    all.push_back(std::move(z));
  }
  for (const auto& phi : all) {
    if (!(corestriction_deg1(phi, h) == chi2)) continue;
    if (!ch.is_coboundary(cup(phi, res3))) continue;
    for (const auto& psi : all) {
      if (!(corestriction_deg1(psi, h) == chi3)) continue;
      Cochain c = cup(phi, psi);
      if (!r.rhs_vanishing_witness && ch.is_coboundary(c)) {
        r.rhs_vanishes = true;
        r.rhs_vanishing_witness.emplace(phi, psi);
      }
      if (!r.rhs_defined_witness && image_of_res.contains(c.values())) {
        r.rhs_defined = true;
        r.rhs_defined_witness.emplace(phi, psi);
      }
    }
  }
  r.agree = r.lhs_defined == r.rhs_defined && r.lhs_vanishes == r.rhs_vanishes;
  return r;
}

}  // namespace gcoh
