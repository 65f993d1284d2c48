#include <algorithm>
#include <set>
#include <utility>

#include "gcoh/errors.hpp"
#include "gcoh/smith.hpp"
#include "gcoh/unitriangular.hpp"

namespace gcoh {
namespace {

// Permutation module Z[U/K]; U acts on left cosets xK by left multiplication.
struct CosetModule {
  std::vector<std::vector<std::size_t>> cosets;  // sorted members, ordered by first member
  std::vector<std::size_t> coset_of;             // element index -> coset index
};

using RingElement = std::vector<std::pair<long long, UniMatrix>>;

class U3Modules {
 public:
  U3Modules() : shape_(3, 2), elements_(enumerate_group(shape_)) {}

  const UniShape& shape() const { return shape_; }

  std::size_t index_of(const UniMatrix& g) const {
    auto it = std::find(elements_.begin(), elements_.end(), g);
    if (it == elements_.end()) throw InternalInconsistency("element not in U3");
    return static_cast<std::size_t>(it - elements_.begin());
  }

  CosetModule module_for(const std::vector<UniMatrix>& generators) const {
    std::set<std::size_t> members{index_of(UniMatrix(shape_))};
    bool grown = true;
    while (grown) {
      grown = false;
      for (std::size_t m : std::vector<std::size_t>(members.begin(), members.end()))
        for (const auto& g : generators)
          if (members.insert(index_of(uni_mul(elements_[m], g))).second) grown = true;
    }
    CosetModule mod;
    mod.coset_of.assign(elements_.size(), SIZE_MAX);
    for (std::size_t x = 0; x < elements_.size(); ++x) {
      if (mod.coset_of[x] != SIZE_MAX) continue;
      std::vector<std::size_t> coset;
      for (std::size_t k : members) coset.push_back(index_of(uni_mul(elements_[x], elements_[k])));
      std::sort(coset.begin(), coset.end());
      for (std::size_t y : coset) mod.coset_of[y] = mod.cosets.size();
      mod.cosets.push_back(std::move(coset));
    }
    return mod;
  }

  // Matrix of the U-module map between direct sums of permutation modules
  // that sends the base coset of source summand s to images[s][t] applied to
  // the base coset of target summand t.
  IntMatrix hom(const std::vector<const CosetModule*>& source,
                const std::vector<const CosetModule*>& target,
                const std::vector<std::vector<RingElement>>& images) const {
    std::vector<std::size_t> src_off{0}, dst_off{0};
    for (auto* m : source) src_off.push_back(src_off.back() + m->cosets.size());
    for (auto* m : target) dst_off.push_back(dst_off.back() + m->cosets.size());
    IntMatrix mat(dst_off.back(), src_off.back());
    for (std::size_t s = 0; s < source.size(); ++s)
      for (std::size_t c = 0; c < source[s]->cosets.size(); ++c) {
        // Every representative of the coset must give the same image.
        std::vector<BigInt> first;
        for (std::size_t rep : source[s]->cosets[c]) {
          std::vector<BigInt> col(dst_off.back());
          for (std::size_t t = 0; t < target.size(); ++t)
            for (const auto& [coeff, g] : images[s][t]) {
              std::size_t y = index_of(uni_mul(elements_[rep], g));
              col[dst_off[t] + target[t]->coset_of[y]] += coeff;
            }
          if (first.empty()) first = col;
          else if (col != first) throw InternalInconsistency("module map is not well defined");
        }
        for (std::size_t r = 0; r < first.size(); ++r) mat.at(r, src_off[s] + c) = first[r];
      }
    return mat;
  }

 private:
  UniShape shape_;
  std::vector<UniMatrix> elements_;
};

bool is_zero(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0) return false;
  return true;
}

// Image of `in` is a saturated sublattice (all nonzero invariant factors 1).
bool saturated_image(const IntMatrix& in) {
  auto snf = smith_normal_form(in);
  return std::all_of(snf.diag.begin(), snf.diag.end(), [](const BigInt& d) { return d == 0 || d == 1; });
}

// Exactness of  A -in-> B -out-> C  at B over Z.
bool exact_at(const IntMatrix& in, const IntMatrix& out) {
  if (!is_zero(out * in)) return false;
  std::size_t rank_in = smith_normal_form(in).rank();
  std::size_t rank_out = smith_normal_form(out).rank();
  return rank_in + rank_out == in.rows() && saturated_image(in);
}

bool injective(const IntMatrix& m) { return smith_normal_form(m).rank() == m.cols(); }

bool surjective(const IntMatrix& m) {
  return smith_normal_form(m).rank() == m.rows() && saturated_image(m);
}

}  // namespace

ResolutionReport verify_u3_resolution() {
  U3Modules u3;
  const UniShape& s = u3.shape();
  const UniMatrix e(s);
  const UniMatrix s1 = elementary(s, 1, 2), s2 = elementary(s, 2, 3);
  const UniMatrix tau = commutator(s1, s2);
  const UniMatrix s1tau = uni_mul(s1, tau);

  const CosetModule m_s2tau = u3.module_for({s2, tau});
  const CosetModule m_s2 = u3.module_for({s2});
  const CosetModule m_s1tau = u3.module_for({s1, tau});
  const CosetModule m_s1 = u3.module_for({s1});
  const CosetModule m_triv = u3.module_for({s1, s2});

  // Top row: 0 -> Z[U/<s2,t>] -f-> Z[U/<s2>] + Z[U/<s1,t>] -g-> Z[U/<s1>] + Z -k-> Z -> 0
  IntMatrix f = u3.hom({&m_s2tau}, {&m_s2, &m_s1tau}, {{{{1, e}, {1, tau}}, {{-1, e}, {-1, s2}}}});
  IntMatrix g = u3.hom({&m_s2, &m_s1tau}, {&m_s1, &m_triv},
                       {{{{1, e}, {1, s2}}, {{-1, e}}}, {{{1, e}, {1, tau}}, {{-1, e}}}});
  IntMatrix k = u3.hom({&m_s1, &m_triv}, {&m_triv}, {{{{1, e}}}, {{{2, e}}}});

  // Bottom row: 0 -> Z[U/<s2,t>] -(1+t)-> Z[U/<s2>] -(1-t)-> Z[U/<s2>] -1-> Z[U/<s2,t>] -> 0
  IntMatrix b0 = u3.hom({&m_s2tau}, {&m_s2}, {{{{1, e}, {1, tau}}}});
  IntMatrix b1 = u3.hom({&m_s2}, {&m_s2}, {{{{1, e}, {-1, tau}}}});
  IntMatrix b2 = u3.hom({&m_s2}, {&m_s2tau}, {{{{1, e}}}});

  // Vertical maps.
  IntMatrix v0 = u3.hom({&m_s2tau}, {&m_s2tau}, {{{{1, e}}}});
  IntMatrix v1 = u3.hom({&m_s2, &m_s1tau}, {&m_s2}, {{{{1, e}}}, {{}}});
  IntMatrix v2 = u3.hom({&m_s1, &m_triv}, {&m_s2},
                        {{{{1, e}, {1, s1}}}, {{{1, e}, {1, s1}, {1, tau}, {1, s1tau}}}});
  IntMatrix v3 = u3.hom({&m_triv}, {&m_s2tau}, {{{{1, e}, {1, s1}}}});

  ResolutionReport r;
  r.ranks = {f.cols(), f.rows(), g.rows(), k.rows()};
  r.compositions_vanish = is_zero(g * f) && is_zero(k * g);
  r.exact = injective(f) && exact_at(f, g) && exact_at(g, k) && surjective(k);
  r.bottom_row_exact = injective(b0) && exact_at(b0, b1) && exact_at(b1, b2) && surjective(b2);
  r.squares_commute = (v1 * f == b0 * v0) && (v2 * g == b1 * v1) && (v3 * k == b2 * v2);
  return r;
}

}  // namespace gcoh
