#include "gcoh/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "gcoh/errors.hpp"

namespace gcoh {

// ---------------------------------------------------------------------------
// Words

Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << std::abs(w[i]);
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

long long exponent_sum(const Word& w, std::size_t g) {
  long long s = 0;
  for (int x : w)
    if (static_cast<std::size_t>(std::abs(x)) == g) s += x > 0 ? 1 : -1;
  return s;
}

void Presentation::validate() const {
  for (const auto& r : relators)
    for (int x : r) {
      if (x == 0) throw InputError("relator contains a zero letter");
      if (static_cast<std::size_t>(std::abs(x)) > generator_count)
        throw InputError("relator letter " + std::to_string(x) + " exceeds generator count");
    }
}

Presentation paper_group_presentation() {
  return Presentation{2, {{1, 1, 2, -1, -1, -2}}, "paper-g"};
}

// ---------------------------------------------------------------------------
// Abelianization

AbelianStructure abelianization(const Presentation& p) {
  p.validate();
  const std::size_t n = p.generator_count;
  IntMatrix rel(p.relators.size(), n);
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (std::size_t g = 1; g <= n; ++g) rel.at(r, g - 1) = exponent_sum(p.relators[r], g);

  AbelianStructure a;
  a.generator_count = n;
  if (n == 0) return a;
  SmithDecomposition snf = smith_normal_form(rel);
  // Column i of the basis change V spans a cyclic factor of order diag[i]
  // (0 meaning infinite); columns beyond the diagonal are free.
  std::vector<std::size_t> torsion_cols, free_cols;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt d = i < snf.diag.size() ? snf.diag[i] : BigInt(0);
    a.factor_orders.push_back(d);
    if (d == 0) free_cols.push_back(i);
    else if (d > 1) {
      torsion_cols.push_back(i);
      a.torsion.push_back(d);
    }
  }
  a.free_rank = free_cols.size();
  a.basis_change = snf.right;
  a.basis_change_inverse = snf.right_inverse;
  for (std::size_t g = 0; g < n; ++g) {
    BigVec coords;
    for (std::size_t c : torsion_cols) coords.push_back(floor_mod(snf.right.at(g, c), a.factor_orders[c]));
    for (std::size_t c : free_cols) coords.push_back(snf.right.at(g, c));
    a.generator_images.push_back(std::move(coords));
  }
  return a;
}

BigInt AbelianStructure::count_solutions(const BigInt& m) const {
  // #{x : m x = 0}, finite only without free part.
  BigInt c = 1;
  for (const auto& d : torsion) c *= boost::integer::gcd(d, m);
  return c;
}

// ---------------------------------------------------------------------------
// Presented characters and lifting

bool is_character(const Presentation& p, const PresentedCharacter& chi) {
  if (chi.values.size() != p.generator_count) return false;
  for (const auto& r : p.relators) {
    long long s = 0;
    for (std::size_t g = 1; g <= p.generator_count; ++g)
      s += exponent_sum(r, g) * static_cast<long long>(chi.values[g - 1]);
    if (reduce_mod(s, chi.modulus) != 0) return false;
  }
  return true;
}

std::vector<PresentedCharacter> presented_characters(const Presentation& p, Residue modulus) {
  std::vector<PresentedCharacter> out;
  const std::size_t n = p.generator_count;
  Vec vals(n, 0);
  for (;;) {
    PresentedCharacter chi{modulus, vals};
    if (is_character(p, chi)) out.push_back(chi);
    std::size_t pos = n;
    while (pos-- > 0) {
      if (++vals[pos] < modulus) break;
      vals[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::optional<PresentedCharacter> hom_lift_to_Zmod(const AbelianStructure& a,
                                                   const PresentedCharacter& chi,
                                                   Residue target_modulus) {
  if (chi.values.size() != a.generator_count) throw DimensionMismatch("character length mismatch");
  const Residue p = chi.modulus;
  if (target_modulus % p != 0) throw InputError("target modulus must be a multiple of the character modulus");
  const BigInt q = target_modulus;
  const std::size_t n = a.generator_count;

  // chi on the canonical generator of factor i is row i of V^{-1} applied
  // to the generator values. A factor of order d admits lifts y with
  // d y = 0 mod q; unless q | d these all reduce to 0 mod p.
  BigVec lifted_coord(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt v = 0;
    for (std::size_t k = 0; k < n; ++k) v += a.basis_change_inverse.at(i, k) * chi.values[k];
    v = floor_mod(v, p);
    const BigInt& order = a.factor_orders[i];
    if (order == 1) {
      if (v != 0) throw NotHomomorphism("character does not respect the relators");
    } else if (order == 0 || order % q == 0) {
      lifted_coord[i] = v;
    } else if (v != 0) {
      return std::nullopt;
    }
  }
  PresentedCharacter out{target_modulus, Vec(n, 0)};
  for (std::size_t k = 0; k < n; ++k) {
    BigInt v = 0;
    for (std::size_t i = 0; i < n; ++i) v += a.basis_change.at(k, i) * lifted_coord[i];
    out.values[k] = static_cast<Residue>(floor_mod(v, q));
  }
  return out;
}

std::optional<PresentedCharacter> hom_lift_to_Zmod(const Presentation& p,
                                                   const PresentedCharacter& chi,
                                                   Residue target_modulus) {
  if (!is_character(p, chi)) throw NotHomomorphism("character does not respect the relators");
  auto lift = hom_lift_to_Zmod(abelianization(p), chi, target_modulus);
  if (lift && !is_character(p, *lift))
    throw InternalInconsistency("lifted character does not respect the relators");
  return lift;
}

// ---------------------------------------------------------------------------
// Homomorphisms and Reidemeister-Schreier

GroupHom GroupHom::make(Presentation source, GroupPtr target, std::vector<Elem> images) {
  source.validate();
  if (images.size() != source.generator_count)
    throw DimensionMismatch("one image per generator required");
  for (const auto& r : source.relators)
    if (evaluate_word(r, images, *target) != target->identity())
      throw NotHomomorphism("relator " + word_to_string(r) + " is not killed");
  return GroupHom{std::move(source), std::move(target), std::move(images)};
}

SchreierResult reidemeister_schreier(const GroupHom& f) {
  const Presentation& p = f.source;
  const FiniteGroup& q = *f.target;
  const std::size_t n = p.generator_count;

  // Schreier transversal, breadth-first: generators, then inverses.
  std::vector<Word> rep(q.order());
  std::vector<bool> seen(q.order(), false);
  std::vector<Elem> order{q.identity()};
  seen[q.identity()] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    Elem c = order[head];
    for (int sign : {1, -1})
      for (std::size_t g = 1; g <= n; ++g) {
        Elem img = f.images[g - 1];
        Elem d = q.mul(c, sign > 0 ? img : q.inv(img));
        if (seen[d]) continue;
        seen[d] = true;
        rep[d] = concat(rep[c], Word{sign * static_cast<int>(g)});
        order.push_back(d);
      }
  }
  if (order.size() != q.order()) throw NotSurjective("homomorphism onto the finite quotient is not surjective");

  // Schreier generators x_{c,g} = rep(c) g rep(c f(g))^{-1}, numbered in
  // transversal order then generator order; tree edges are trivial.
  std::map<std::pair<Elem, std::size_t>, int> gen_id;
  SchreierResult out;
  out.kernel.label = p.label.empty() ? "kernel" : "kernel of " + p.label;
  for (Elem c : order)
    for (std::size_t g = 1; g <= n; ++g) {
      Elem d = q.mul(c, f.images[g - 1]);
      Word w = free_reduce(concat(concat(rep[c], Word{static_cast<int>(g)}), invert_word(rep[d])));
      if (w.empty()) continue;
      out.rewrite.push_back(w);
      out.schreier_pairs.push_back({c, g});
      gen_id[{c, g}] = static_cast<int>(out.rewrite.size());
    }
  out.kernel.generator_count = out.rewrite.size();

  auto rewrite = [&](Elem start, const Word& w) {
    Word out_word;
    Elem c = start;
    for (int x : w) {
      std::size_t g = static_cast<std::size_t>(std::abs(x));
      Elem img = f.images[g - 1];
      if (x > 0) {
        auto it = gen_id.find({c, g});
        if (it != gen_id.end()) out_word.push_back(it->second);
        c = q.mul(c, img);
      } else {
        Elem d = q.mul(c, q.inv(img));
        auto it = gen_id.find({d, g});
        if (it != gen_id.end()) out_word.push_back(-it->second);
        c = d;
      }
    }
    if (c != start) throw InternalInconsistency("relator does not return to its coset");
    return free_reduce(out_word);
  };
  for (Elem c : order)
    for (const auto& r : p.relators) out.kernel.relators.push_back(rewrite(c, r));
  out.transversal = order;
  out.transversal_words.reserve(order.size());
  for (Elem c : order) out.transversal_words.push_back(rep[c]);
  return out;
}

Word rewrite_in_kernel(const GroupHom& f, const SchreierResult& s, const Word& w) {
  const FiniteGroup& q = *f.target;
  std::map<std::pair<Elem, std::size_t>, int> gen_id;
  for (std::size_t k = 0; k < s.schreier_pairs.size(); ++k) gen_id[s.schreier_pairs[k]] = static_cast<int>(k + 1);
  Word out;
  Elem c = q.identity();
  for (int x : w) {
    std::size_t g = static_cast<std::size_t>(std::abs(x));
    if (g == 0 || g > f.images.size()) throw InputError("word letter out of range");
    Elem img = f.images[g - 1];
    Elem d = x > 0 ? c : q.mul(c, q.inv(img));
    auto it = gen_id.find({d, g});
    if (it != gen_id.end()) out.push_back(x > 0 ? it->second : -it->second);
    c = x > 0 ? q.mul(c, img) : d;
  }
  if (c != q.identity()) throw InputError("word does not lie in the kernel");
  return free_reduce(out);
}

}  // namespace gcoh
