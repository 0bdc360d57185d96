#include <doctest.h>

#include <random>
#include <set>

#include "shabound/arith.hpp"

using namespace shabound;

namespace {

bool trial_division_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

TEST_CASE("is_prime small values and a strong pseudoprime") {
  CHECK(is_prime(11));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(Int("3215031751")));
  CHECK(3215031751UL % 151 == 0);
  for (unsigned long n = 0; n < 5000; ++n) CHECK(is_prime(Int(n)) == trial_division_prime(n));
}

TEST_CASE("is_prime large and out of range") {
  CHECK(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
  CHECK_FALSE(is_prime(Int("170141183460469231731687303715884105729")));
  CHECK_THROWS_AS(is_prime(prime_range_limit() + 1), RangeError);
}

TEST_CASE("factor examples") {
  auto f = factor_complete(Int(-19008));
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == PrimePower{2, 6});
  CHECK(f.factors[1] == PrimePower{3, 3});
  CHECK(f.factors[2] == PrimePower{11, 1});

  auto one = factor_complete(Int(1));
  CHECK(one.sign == 1);
  CHECK(one.factors.empty());

  auto g = factor_complete(Int(448));
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0] == PrimePower{2, 6});
  CHECK(g.factors[1] == PrimePower{7, 1});
  CHECK_THROWS_AS(factor_complete(Int(0)), ValidationError);
}

TEST_CASE("factor reproduces its input on random semiprimes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Int a = Int(rng() % 1000000007UL) + 2, b = Int(rng() % 998244353UL) + 2;
    Int n = a * b;
    auto f = factor_complete(n);
    CHECK(f.product() == n);
    for (const auto& pp : f.factors) CHECK(is_prime(pp.prime));
  }
}

TEST_CASE("factor gives Incomplete on a hard cofactor under a tiny budget") {
  Int p = Int("1000000000000000000000000000057");
  while (!is_prime(p)) ++p;
  Int q = Int("2000000000000000000000000000041");
  while (!is_prime(q)) ++q;
  FactorBudget tiny{10};
  auto out = factor(p * q * 12, tiny);
  REQUIRE(std::holds_alternative<Incomplete>(out));
  CHECK(std::get<Incomplete>(out).cofactor == p * q);
  CHECK_THROWS_AS(factor_complete(p * q, tiny), IncompleteFactorization);
}

TEST_CASE("valuation") {
  CHECK(valuation(Int(448), Int(2)) == 6);
  CHECK(valuation(Rat(9, 250), Int(5)) == -3);
  CHECK(valuation(Rat(9, 250), Int(3)) == 2);
}

TEST_CASE("character_eval examples") {
  ResidueCharacter chi11(11, 5);
  CHECK(chi11.generator() == 4);
  CHECK(chi11(Int(3)) == 3);
  CHECK(chi11(Int(32)) == 0);
  ResidueCharacter chi31(31, 5);
  CHECK(chi31.generator() == 16);
  CHECK(chi31(Int(2)) == 4);
  CHECK_THROWS_AS(ResidueCharacter(7, 5), ValidationError);
}

TEST_CASE("character agrees with the p-th power set and is a homomorphism") {
  for (unsigned p : {5u, 7u}) {
    for (unsigned long ell = 3; ell < 400; ++ell) {
      if (!trial_division_prime(ell) || ell % p != 1) continue;
      ResidueCharacter chi(Int(ell), p);
      std::set<unsigned long> powers;
      for (unsigned long a = 1; a < ell; ++a) powers.insert(powmod(Int(a), Int(p), Int(ell)).get_ui());
      CHECK(powers.size() == (ell - 1) / p);
      for (unsigned long a = 1; a < ell; ++a) {
        const unsigned c = chi(Int(a));
        CHECK((c == 0) == (powers.count(a) == 1));
        const unsigned long b = (a * 3) % ell;
        if (b != 0) CHECK(chi(Int((a * b) % ell)) == (c + chi(Int(b))) % p);
      }
    }
  }
}

TEST_CASE("local p-th powers") {
  CHECK_FALSE(is_local_pth_power(Rat(11), Int(5), 5));
  CHECK(is_local_pth_power(Rat(32), Int(11), 5));
  CHECK_FALSE(is_local_pth_power(Rat(5), Int(11), 5));
  CHECK(fermat_quotient(Rat(11), 5) != 0);
  CHECK(is_unit_pth_power_at_p(Rat(26), 5) == (powmod(26, 4, 25) == 1));
}

TEST_CASE("local p-th power at q != p matches brute force mod q") {
  // For a q-adic unit and q != p, Hensel reduces the question to F_q.
  for (unsigned p : {5u, 7u}) {
    for (unsigned long q : {11UL, 29UL, 43UL, 71UL, 13UL, 17UL}) {
      std::set<unsigned long> powers;
      for (unsigned long a = 1; a < q; ++a) powers.insert(powmod(Int(a), Int(p), Int(q)).get_ui());
      for (long a = 1; a < 200; ++a) {
        if (a % static_cast<long>(q) == 0) continue;
        CHECK(is_local_pth_power(Rat(a), Int(q), p) == (powers.count(a % q) == 1));
        CHECK(is_local_pth_power(Rat(a * static_cast<long>(q)), Int(q), p) == false);
      }
    }
  }
}

TEST_CASE("local p-th power at p matches brute force mod p^2") {
  for (unsigned p : {5u, 7u}) {
    const unsigned long p2 = p * p;
    std::set<unsigned long> powers;
    for (unsigned long a = 1; a < p2; ++a)
      if (a % p) powers.insert(powmod(Int(a), Int(p), Int(p2)).get_ui());
    for (unsigned long a = 1; a < 500; ++a) {
      if (a % p == 0) continue;
      CHECK(is_local_pth_power(Rat(a), Int(p), p) == (powers.count(a % p2) == 1));
    }
  }
}

TEST_CASE("crt_solve") {
  std::vector<Congruence> a{{0, 41}, {1, 11}};
  CHECK(crt_solve(a) == 287);
  std::vector<Congruence> b{{0, 2}};
  CHECK(crt_solve(b) == 0);
  std::vector<Congruence> c{{2, 3}, {3, 5}};
  CHECK(crt_solve(c) == 8);
  std::vector<Congruence> bad{{1, 6}, {1, 4}};
  CHECK_THROWS_AS(crt_solve(bad), ValidationError);
}

TEST_CASE("count_distinct_prime_factors") {
  CHECK(std::get<std::size_t>(count_distinct_prime_factors(448)) == 2);
  CHECK(std::get<std::size_t>(count_distinct_prime_factors(-11)) == 1);
  CHECK(std::get<std::size_t>(count_distinct_prime_factors(161051)) == 1);
}

TEST_CASE("cyclotomic_splitting") {
  auto s = cyclotomic_splitting(11, 5);
  CHECK(s.residue_degree == 1);
  CHECK(s.num_primes == 4);
  s = cyclotomic_splitting(2, 5);
  CHECK(s.residue_degree == 4);
  CHECK(s.num_primes == 1);
  s = cyclotomic_splitting(7, 5);
  CHECK(s.residue_degree == 4);
  CHECK(s.num_primes == 1);
}

TEST_CASE("modular helpers") {
  CHECK(inverse_mod(3, 11) == 4);
  CHECK_THROWS_AS(inverse_mod(4, 8), ValidationError);
  CHECK(reduce_mod(Rat(1, 2), 11) == 6);
  CHECK(smallest_primitive_root(31) == 3);
}
