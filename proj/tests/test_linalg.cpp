#include <doctest.h>

#include <random>

#include "gcoh/errors.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/smith.hpp"
#include "oracles.hpp"

using namespace gcoh;

namespace {

std::vector<std::vector<long long>> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long long lo,
                                                  long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  std::vector<std::vector<long long>> m(r, std::vector<long long>(c));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

long long to_ll(const BigInt& b) { return b.convert_to<long long>(); }

}  // namespace

TEST_CASE("primes and prime powers") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK(is_prime(65537));
  CHECK(prime_power(16) == std::make_pair(2u, 4u));
  CHECK(prime_power(27) == std::make_pair(3u, 3u));
  CHECK_FALSE(prime_power(12).has_value());
  CHECK_FALSE(prime_power(1).has_value());
  for (Residue m : {7u, 16u, 27u})
    for (Residue a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) CHECK((std::uint64_t{a} * inverse_mod(a, m)) % m == 1);
}

TEST_CASE("rank over F_p agrees with textbook elimination") {
  std::mt19937 rng(7);
  for (long long p : {2, 3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      auto m = random_matrix(rng, r, c, 0, p - 1);
      auto rr = rref_mod_p(ModMatrix::from_rows(m, static_cast<Residue>(p)));
      CHECK(rr.rank == oracle::rank_mod_p(m, p));

      EchelonBasis basis(c, static_cast<Residue>(p));
      for (const auto& row : m) {
        Vec v(row.begin(), row.end());
        basis.insert(v);
      }
      CHECK(basis.rank() == rr.rank);
    }
  }
}

TEST_CASE("echelon basis: membership, expression and nullspace") {
  std::mt19937 rng(11);
  for (long long p : {2, 3, 7}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t dim = 2 + rng() % 9, gens = 1 + rng() % 6;
      auto m = random_matrix(rng, gens, dim, 0, p - 1);
      EchelonBasis b(dim, static_cast<Residue>(p), true);
      for (const auto& row : m) b.insert(Vec(row.begin(), row.end()));
      CHECK(b.generator_count() == gens);

      // A random combination is a member and is expressed exactly.
      std::vector<long long> coeff(gens);
      for (auto& x : coeff) x = rng() % p;
      Vec target(dim, 0);
      for (std::size_t g = 0; g < gens; ++g)
        for (std::size_t k = 0; k < dim; ++k) target[k] = oracle::mod(target[k] + coeff[g] * m[g][k], p);
      CHECK(b.contains(target));
      auto c = b.express(target);
      REQUIRE(c.has_value());
      REQUIRE(c->size() == gens);
      Vec back(dim, 0);
      for (std::size_t g = 0; g < gens; ++g)
        for (std::size_t k = 0; k < dim; ++k) back[k] = oracle::mod(back[k] + (*c)[g] * m[g][k], p);
      CHECK(back == target);

      // Membership matches the augmented-rank oracle for a random vector.
      std::vector<long long> v(dim);
      for (auto& x : v) x = rng() % p;
      oracle::Dense cols(dim, std::vector<long long>(gens));
      for (std::size_t g = 0; g < gens; ++g)
        for (std::size_t k = 0; k < dim; ++k) cols[k][g] = m[g][k];
      CHECK(b.contains(Vec(v.begin(), v.end())) == oracle::solvable_mod_p(cols, v, p));

      // The nullspace is orthogonal to every row and has complementary dimension.
      auto ns = b.nullspace();
      CHECK(ns.size() + b.rank() == dim);
      for (const auto& x : ns)
        for (const auto& row : m) {
          long long s = 0;
          for (std::size_t k = 0; k < dim; ++k) s += row[k] * x[k];
          CHECK(oracle::mod(s, p) == 0);
        }
    }
  }
}

TEST_CASE("solve_mod_p returns a solution and a kernel basis") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Residue p = trial % 2 ? 3 : 2;
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c, 0, p - 1);
    ModMatrix a = ModMatrix::from_rows(m, p);
    Vec x(c);
    for (auto& v : x) v = rng() % p;
    Vec b = a.apply(x);
    auto sol = solve_mod_p(a, b);
    REQUIRE(sol.has_value());
    CHECK(a.apply(sol->particular) == b);
    CHECK(sol->kernel_basis.size() == c - oracle::rank_mod_p(m, p));
    for (const auto& k : sol->kernel_basis) CHECK(a.apply(k) == Vec(r, 0));
  }
  ModMatrix z = ModMatrix::from_rows({{1, 1}, {1, 1}}, 2);
  CHECK_FALSE(solve_mod_p(z, Vec{1, 0}).has_value());
  CHECK_THROWS_AS(rref_mod_p(ModMatrix::from_rows({{1}}, 4)), NonPrimeModulus);
}

TEST_CASE("Smith normal form: decomposition and determinantal divisors") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c, -6, 6);
    IntMatrix a = IntMatrix::from_rows(m);
    auto s = smith_normal_form(a);
    IntMatrix d = s.left * a * s.right;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(d.at(i, j) == (i == j ? s.diag[i] : BigInt(0)));
    CHECK(s.right * s.right_inverse == IntMatrix::identity(c));
    long long prod = 1;
    for (std::size_t k = 1; k <= s.diag.size(); ++k) {
      CHECK(s.diag[k - 1] >= 0);
      if (k < s.diag.size() && s.diag[k - 1] != 0) CHECK(s.diag[k] % s.diag[k - 1] == 0);
      prod *= to_ll(s.diag[k - 1]);
      CHECK(prod == oracle::determinantal_divisor(m, k));
    }
  }
}

TEST_CASE("known Smith forms") {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(s.diag == std::vector<BigInt>{2, 6, 12});
  auto t = smith_normal_form(IntMatrix::from_rows({{2, -2}, {-2, 2}}));
  CHECK(t.diag == std::vector<BigInt>{2, 0});
  CHECK(t.rank() == 1);
}

TEST_CASE("kernels, solutions and subgroup orders modulo q") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const long long q = trial % 3 == 0 ? 4 : trial % 3 == 1 ? 8 : 9;
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    auto m = random_matrix(rng, r, c, -5, 5);
    IntMatrix a = IntMatrix::from_rows(m);

    // Brute-force kernel size over (Z/q)^c.
    std::size_t total = 1, brute = 0;
    for (std::size_t k = 0; k < c; ++k) total *= q;
    std::vector<std::vector<long long>> points;
    for (std::size_t t = 0; t < total; ++t) {
      std::vector<long long> x(c);
      std::size_t rem = t;
      for (auto& v : x) {
        v = rem % q;
        rem /= q;
      }
      bool zero = true;
      for (std::size_t i = 0; i < r; ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < c; ++j) s += m[i][j] * x[j];
        if (oracle::mod(s, q)) zero = false;
      }
      brute += zero;
      points.push_back(x);
    }
    auto gens = kernel_generators_mod(a, q);
    for (const auto& g : gens) {
      BigVec ax = a.apply(g);
      for (const auto& v : ax) CHECK(floor_mod(v, q) == 0);
    }
    CHECK(to_ll(subgroup_order_mod(gens, c, q)) == static_cast<long long>(brute));

    // Solve a consistent right-hand side built from a random point.
    const auto& x = points[rng() % points.size()];
    BigVec bx(x.begin(), x.end());
    BigVec b = a.apply(bx);
    auto sol = solve_mod(a, b, q);
    REQUIRE(sol.has_value());
    BigVec check = a.apply(*sol);
    for (std::size_t i = 0; i < r; ++i) CHECK(floor_mod(check[i] - b[i], q) == 0);
  }
  CHECK_FALSE(solve_mod(IntMatrix::from_rows({{2}}), BigVec{1}, 4).has_value());
}
