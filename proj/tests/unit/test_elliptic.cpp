#include <doctest.h>

#include <optional>
#include <random>

#include "shabound/elliptic.hpp"

using namespace shabound;

namespace {

const Curve e11 = Curve::from_ainvs(0, -1, 1, 0, 0);

// a_i multiplied by u^i
Curve scaled(const Curve& e, long u) {
  AInvariants a = e.ainvs();
  const int weight[5] = {1, 2, 3, 4, 6};
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < weight[i]; ++k) a[i] *= u;
  return Curve::from_ainvs(a);
}

Int mod(const Int& a, long q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

// Singular points of the reduction by brute force over F_q.
std::vector<FqPoint> brute_singular(const Curve& e, long q) {
  std::vector<FqPoint> out;
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y) {
      Int X = x, Y = y;
      Int f = Y * Y + e.a1() * X * Y + e.a3() * Y - X * X * X - e.a2() * X * X - e.a4() * X - e.a6();
      Int fx = e.a1() * Y - 3 * X * X - 2 * e.a2() * X - e.a4();
      Int fy = 2 * Y + e.a1() * X + e.a3();
      if (mod(f, q) == 0 && mod(fx, q) == 0 && mod(fy, q) == 0) out.push_back({x, y});
    }
  return out;
}

// Random small model, or nullopt when it is singular.
std::optional<Curve> random_curve(std::mt19937& rng, long span) {
  try {
    return Curve::from_ainvs(rng() % 2, static_cast<long>(rng() % 3) - 1, rng() % 2,
                             static_cast<long>(rng() % (2 * span + 1)) - span,
                             static_cast<long>(rng() % (2 * span + 1)) - span);
  } catch (const SingularModel&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("invariants") {
  CHECK(e11.c4() == 16);
  CHECK(e11.c6() == -152);
  CHECK(e11.discriminant() == -11);
  CHECK(e11.b2() == -4);
  CHECK(e11.b6() == 1);
  auto c = Curve::from_ainvs(0, 0, 0, -1, 0);
  CHECK(c.c4() == 48);
  CHECK(c.discriminant() == 64);
  CHECK_THROWS_AS(Curve::from_ainvs(0, 0, 0, 0, 0), SingularModel);
  CHECK(e11.c4() * e11.c4() * e11.c4() - e11.c6() * e11.c6() == 1728 * e11.discriminant());
}

TEST_CASE("group law") {
  Point p0 = Point::affine(0, 0);
  CHECK(add_points(e11, p0, Point::at_infinity()) == p0);
  CHECK(add_points(e11, p0, negate(e11, p0)).infinity);
  CHECK(add_points(e11, p0, p0) == Point::affine(1, -1));
  CHECK(multiply(e11, p0, 5).infinity);
  CHECK(has_order(e11, p0, 5));
  CHECK_FALSE(has_order(e11, Point::at_infinity(), 5));
  CHECK_FALSE(has_order(e11, p0, 7));
  CHECK_THROWS_AS(add_points(e11, Point::affine(1, 1), p0), ValidationError);
}

TEST_CASE("associativity and multiplication on a rank one curve") {
  // y^2 + y = x^3 - x, generator (0,0)
  auto e = Curve::from_ainvs(0, 0, 1, -1, 0);
  Point g = Point::affine(0, 0);
  std::vector<Point> pts;
  for (long n = -4; n <= 4; ++n) pts.push_back(multiply(e, g, n));
  for (const auto& a : pts)
    for (const auto& b : pts) {
      CHECK(on_curve(e, add_points(e, a, b)));
      CHECK(add_points(e, a, b) == add_points(e, b, a));
      for (const auto& c : pts)
        CHECK(add_points(e, add_points(e, a, b), c) == add_points(e, a, add_points(e, b, c)));
    }
  for (long m = -3; m <= 3; ++m)
    for (long n = -3; n <= 3; ++n)
      CHECK(add_points(e, multiply(e, g, m), multiply(e, g, n)) == multiply(e, g, m + n));
}

TEST_CASE("transforms") {
  Transform w{Rat(2), Rat(1, 3), Rat(-1), Rat(5, 2)};
  CHECK(w.then(w.inverse()).is_identity());
  auto e = Curve::from_ainvs(1, -1, 1, 3, 7);
  auto big = scaled(e, 6);
  Transform down{Rat(6), 0, 0, 0};
  CHECK(apply(down, big) == e);
  Point pt = Point::affine(0, 0);
  auto e2 = Curve::from_ainvs(0, 0, 1, -1, 0);
  Transform t{Rat(1), Rat(2), Rat(1), Rat(-3)};
  Curve moved = apply(t, e2);
  CHECK(moved.j_invariant() == e2.j_invariant());
  CHECK(on_curve(moved, apply(t, pt)));
  CHECK(apply(t.inverse(), moved) == e2);
  Transform half{Rat(1, 2), 0, 0, 0};
  Transform back;
  Curve integral = make_integral(transform_ainvs(half, to_rational(e2.ainvs())), &back);
  CHECK(integral.j_invariant() == e2.j_invariant());
}

TEST_CASE("minimal models") {
  auto mm = minimal_model(e11);
  CHECK(mm.curve == e11);
  CHECK(mm.transform.is_identity());

  auto big = scaled(e11, 5);
  CHECK(minimal_model(big).curve == e11);

  auto c = Curve::from_ainvs(0, 0, 0, 0, 4096);
  auto m2 = minimal_model(c);
  CHECK(m2.curve.j_invariant() == c.j_invariant());
  CHECK(valuation(m2.curve.discriminant(), Int(2)) < valuation(c.discriminant(), Int(2)));
  CHECK(apply(m2.transform, c) == m2.curve);
  // minimality: Tate at 2 and 3 does not rescale
  for (long q : {2L, 3L}) CHECK(reduction_at(m2.curve, q).transform.u == 1);

  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto maybe = random_curve(rng, 20);
    if (!maybe) continue;
    const Curve base = *maybe;
    auto ref = minimal_model(base).curve;
    for (long u : {2L, 3L, 10L}) {
      auto blown = scaled(base, u);
      auto got = minimal_model(blown);
      CHECK(got.curve == ref);
      CHECK(apply(got.transform, blown) == got.curve);
    }
  }
}

TEST_CASE("reduction types") {
  auto r = reduction_at(e11, 11);
  CHECK(r.kind == ReductionKind::split_multiplicative);
  CHECK(r.v_disc == 1);
  CHECK(reduction_at(e11, 7).kind == ReductionKind::good);
  CHECK(reduction_at(Curve::from_ainvs(0, 0, 0, 0, 11), 11).kind == ReductionKind::additive);
  // 14a1: I6 at 2, I3 at 7
  auto e14 = Curve::from_ainvs(1, 0, 1, 4, -6);
  CHECK(reduction_at(e14, 2).multiplicative());
  CHECK(reduction_at(e14, 7).multiplicative());
}

TEST_CASE("split tests agree") {
  std::mt19937 rng(17);
  int checked = 0;
  for (int i = 0; i < 4000 && checked < 300; ++i) {
    auto maybe = random_curve(rng, 100);
    if (!maybe) continue;
    const Curve e = *maybe;
    for (long q : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      if (e.discriminant() % q != 0) continue;
      auto r = reduction_at(e, q);
      if (!r.multiplicative()) continue;
      CHECK(split_by_c6(r.minimal_model, q) == split_by_tangent(r.minimal_model, q));
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("singular points") {
  CHECK(singular_point(e11, 11) == FqPoint{8, 5});
  CHECK(singular_point(Curve::from_ainvs(0, 0, 0, 0, 11), 11) == FqPoint{0, 0});
  CHECK_THROWS_AS(singular_point(e11, 7), ValidationError);
  CHECK_FALSE(reduces_to_singular_point(e11, Point::affine(0, 0), 11));

  std::mt19937 rng(23);
  int checked = 0;
  for (int i = 0; i < 3000 && checked < 200; ++i) {
    auto maybe = random_curve(rng, 30);
    if (!maybe) continue;
    const Curve e = *maybe;
    for (long q : {2L, 3L, 5L, 7L, 11L, 13L}) {
      if (e.discriminant() % q != 0) continue;
      auto brute = brute_singular(e, q);
      REQUIRE(brute.size() == 1);
      CHECK(singular_point(e, q) == brute[0]);
      ++checked;
    }
  }
  CHECK(checked > 50);
}
