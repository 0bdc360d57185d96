#include <doctest.h>

#include <random>

#include "shabound/poly.hpp"

using namespace shabound;

namespace {

Poly ints(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(v);
}

}  // namespace

TEST_CASE("arithmetic and evaluation") {
  Poly f = ints({-1, 0, 1});  // x^2 - 1
  Poly g = ints({1, 1});
  CHECK(f(Rat(3)) == 8);
  CHECK((f * g).degree() == 3);
  auto qr = divmod(f, g);
  CHECK(qr.quotient == ints({-1, 1}));
  CHECK(qr.remainder.is_zero());
  CHECK(gcd(f, ints({1, 2, 1})) == g);
  CHECK(f.derivative() == ints({0, 2}));
  CHECK(f.substitute_affine(Rat(2), Rat(1)) == ints({0, 4, 4}));
  CHECK(pow(g, 3) == ints({1, 3, 3, 1}));
  CHECK(Poly().is_zero());
  CHECK((f - f).is_zero());
}

TEST_CASE("division identity on random polynomials") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rat> a(6), b(3);
    for (auto& c : a) c = d(rng);
    for (auto& c : b) c = d(rng);
    b.back() = d(rng) == 0 ? 1 : 3;
    Poly pa(a), pb(b);
    auto qr = divmod(pa, pb);
    CHECK(qr.quotient * pb + qr.remainder == pa);
    CHECK(qr.remainder.degree() < pb.degree());
  }
}

TEST_CASE("inverse modulo a polynomial") {
  Poly m = ints({1, 0, 1});
  Poly a = ints({2, 1});
  Poly inv = inverse_mod(a, m);
  CHECK((a * inv) % m == Poly::constant(1));
  CHECK_THROWS(inverse_mod(ints({1, 1}), ints({1, 2, 1})));
}

TEST_CASE("factor_integer_poly") {
  // 3 (x - 2)^2 (x^2 + 1) (2x + 1)
  Poly f = ints({-2, 1}) * ints({-2, 1}) * ints({1, 0, 1}) * ints({1, 2}) * Rat(3);
  auto fac = factor_integer_poly(f);
  CHECK(fac.content == 3);
  Poly back = Poly::constant(Rat(fac.content));
  for (const auto& ff : fac.factors) back *= pow(ff.factor, ff.multiplicity);
  CHECK(back == f);
  bool saw_square = false;
  for (const auto& ff : fac.factors)
    if (ff.factor == ints({-2, 1})) saw_square = ff.multiplicity == 2;
  CHECK(saw_square);
}

TEST_CASE("roots mod q agree with enumeration") {
  for (long q : {2L, 3L, 11L, 31L, 101L}) {
    Poly f = ints({-1, -11, 1}) * ints({0, 1}) * ints({5, 0, 0, 1});
    std::vector<Int> brute;
    for (long x = 0; x < q; ++x) {
      Rat v = f(Rat(x));
      Int n = v.get_num() % q;
      if (n < 0) n += q;
      if (n == 0) brute.emplace_back(x);
    }
    CHECK(modq::roots(f, q) == brute);
    CHECK(modq::count_roots(f, q) == brute.size());
  }
}
