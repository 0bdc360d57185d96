#include "shabound/elliptic.hpp"

#include <map>
#include <sstream>

#include "shabound/poly.hpp"

namespace shabound {

namespace {

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool divides(const Int& q, const Int& a) { return mpz_divisible_p(a.get_mpz_t(), q.get_mpz_t()) != 0; }

Int exact_div(const Int& a, const Int& b) {
  if (!divides(b, a)) throw std::logic_error("inexact division " + a.get_str() + " / " + b.get_str());
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

unsigned val_or_inf(const Int& a, const Int& q) { return a == 0 ? kInfiniteValuation : valuation(a, q); }

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

Curve Curve::from_ainvs(const AInvariants& a) {
  Curve e;
  e.a_ = a;
  const auto& [a1, a2, a3, a4, a6] = a;
  e.b2_ = a1 * a1 + 4 * a2;
  e.b4_ = 2 * a4 + a1 * a3;
  e.b6_ = a3 * a3 + 4 * a6;
  e.b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  e.c4_ = e.b2_ * e.b2_ - 24 * e.b4_;
  e.c6_ = -e.b2_ * e.b2_ * e.b2_ + 36 * e.b2_ * e.b4_ - 216 * e.b6_;
  e.disc_ = -e.b2_ * e.b2_ * e.b8_ - 8 * e.b4_ * e.b4_ * e.b4_ - 27 * e.b6_ * e.b6_ +
            9 * e.b2_ * e.b4_ * e.b6_;
  if (e.disc_ == 0) throw SingularModel();
  e.j_ = Rat(e.c4_ * e.c4_ * e.c4_, e.disc_);
  e.j_.canonicalize();
  return e;
}

Curve Curve::from_ainvs(long a1, long a2, long a3, long a4, long a6) {
  return from_ainvs(AInvariants{Int(a1), Int(a2), Int(a3), Int(a4), Int(a6)});
}

std::string Curve::str() const {
  std::ostringstream os;
  os << "[" << a_[0].get_str() << "," << a_[1].get_str() << "," << a_[2].get_str() << ","
     << a_[3].get_str() << "," << a_[4].get_str() << "]";
  return os.str();
}

Point Point::affine(Rat x, Rat y) {
  x.canonicalize();
  y.canonicalize();
  return Point{false, std::move(x), std::move(y)};
}

std::string Point::str() const {
  if (infinity) return "O";
  return "(" + x.get_str() + ", " + y.get_str() + ")";
}

Transform Transform::then(const Transform& n) const {
  Transform c;
  c.u = u * n.u;
  c.r = r + u * u * n.r;
  c.s = s + u * n.s;
  c.t = t + u * u * s * n.r + u * u * u * n.t;
  return c;
}

Transform Transform::inverse() const {
  Transform inv;
  inv.u = 1 / u;
  inv.r = -r / (u * u);
  inv.s = -s / u;
  inv.t = (r * s - t) / (u * u * u);
  return inv;
}

RatAInvariants to_rational(const AInvariants& a) {
  return {Rat(a[0]), Rat(a[1]), Rat(a[2]), Rat(a[3]), Rat(a[4])};
}

RatAInvariants transform_ainvs(const Transform& w, const RatAInvariants& a) {
  const auto& [a1, a2, a3, a4, a6] = a;
  const Rat& u = w.u;
  const Rat& r = w.r;
  const Rat& s = w.s;
  const Rat& t = w.t;
  const Rat u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  RatAInvariants out{
      (a1 + 2 * s) / u,
      (a2 - s * a1 + 3 * r - s * s) / u2,
      (a3 + r * a1 + 2 * t) / u3,
      (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4,
      (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6,
  };
  for (auto& c : out) c.canonicalize();
  return out;
}

Curve apply(const Transform& w, const Curve& e) {
  const auto ra = transform_ainvs(w, to_rational(e.ainvs()));
  AInvariants a;
  for (std::size_t i = 0; i < 5; ++i) {
    if (ra[i].get_den() != 1) throw ValidationError("transform", "transformed model is not integral");
    a[i] = ra[i].get_num();
  }
  return Curve::from_ainvs(a);
}

Point apply(const Transform& w, const Point& pt) {
  if (pt.infinity) return pt;
  const Rat dx = pt.x - w.r;
  return Point::affine(dx / (w.u * w.u), (pt.y - w.s * dx - w.t) / (w.u * w.u * w.u));
}

Curve make_integral(const RatAInvariants& a, Transform* w) {
  // Scale by the smallest integer k with k^i * a_i integral.
  Int den_lcm = 1;
  for (const auto& c : a) den_lcm = lcm(den_lcm, Int(c.get_den()));
  Int k = 1;
  if (den_lcm != 1) {
    const auto fac = factor_complete(den_lcm);
    static constexpr unsigned kWeights[] = {1, 2, 3, 4, 6};
    for (const auto& pp : fac.factors) {
      unsigned need = 0;
      for (std::size_t i = 0; i < 5; ++i) {
        if (a[i] == 0) continue;
        const unsigned v = valuation(Int(a[i].get_den()), pp.prime);
        need = std::max(need, (v + kWeights[i] - 1) / kWeights[i]);
      }
      k *= ipow(pp.prime, need);
    }
  }
  Transform scale;
  scale.u = Rat(Int(1), k);
  const auto scaled = transform_ainvs(scale, a);
  AInvariants out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = scaled[i].get_num();
  if (w) *w = scale;
  return Curve::from_ainvs(out);
}

bool on_curve(const Curve& e, const Point& pt) {
  if (pt.infinity) return true;
  const Rat& x = pt.x;
  const Rat& y = pt.y;
  const Rat lhs = y * y + Rat(e.a1()) * x * y + Rat(e.a3()) * y;
  const Rat rhs = x * x * x + Rat(e.a2()) * x * x + Rat(e.a4()) * x + Rat(e.a6());
  return lhs == rhs;
}

Point negate(const Curve& e, const Point& pt) {
  if (pt.infinity) return pt;
  return Point::affine(pt.x, -pt.y - Rat(e.a1()) * pt.x - Rat(e.a3()));
}

namespace {

Point add_unchecked(const Curve& e, const Point& p, const Point& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const Rat a1 = e.a1(), a2 = e.a2(), a3 = e.a3(), a4 = e.a4(), a6 = e.a6();
  Rat lambda, nu;
  if (p.x == q.x) {
    if (p.y + q.y + a1 * q.x + a3 == 0) return Point::at_infinity();
    const Rat denom = 2 * p.y + a1 * p.x + a3;
    lambda = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / denom;
    nu = (-p.x * p.x * p.x + a4 * p.x + 2 * a6 - a3 * p.y) / denom;
  } else {
    const Rat dx = q.x - p.x;
    lambda = (q.y - p.y) / dx;
    nu = (p.y * q.x - q.y * p.x) / dx;
  }
  const Rat x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  const Rat y3 = -(lambda + a1) * x3 - nu - a3;
  return Point::affine(x3, y3);
}

}  // namespace

Point add_points(const Curve& e, const Point& p, const Point& q) {
  if (!on_curve(e, p)) throw ValidationError("P", "point " + p.str() + " is not on the curve");
  if (!on_curve(e, q)) throw ValidationError("Q", "point " + q.str() + " is not on the curve");
  return add_unchecked(e, p, q);
}

Point multiply(const Curve& e, const Point& pt, long n) {
  if (!on_curve(e, pt)) throw ValidationError("P", "point " + pt.str() + " is not on the curve");
  Point base = n < 0 ? negate(e, pt) : pt;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Point acc = Point::at_infinity();
  while (k) {
    if (k & 1ul) acc = add_unchecked(e, acc, base);
    k >>= 1;
    if (k) base = add_unchecked(e, base, base);
  }
  return acc;
}

bool has_order(const Curve& e, const Point& pt, unsigned p) {
  if (!on_curve(e, pt)) throw ValidationError("P", "point " + pt.str() + " is not on the curve");
  if (pt.infinity) return false;
  return multiply(e, pt, static_cast<long>(p)).infinity;
}

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::good: return "good";
    case ReductionKind::split_multiplicative: return "split_multiplicative";
    case ReductionKind::nonsplit_multiplicative: return "nonsplit_multiplicative";
    case ReductionKind::additive: return "additive";
  }
  return "?";
}

namespace {

// Working state for Tate's algorithm: integral a-invariants plus the
// accumulated change of variables from the input model.
struct TateState {
  Int a1, a2, a3, a4, a6;
  Transform w;

  Curve curve() const { return Curve::from_ainvs(AInvariants{a1, a2, a3, a4, a6}); }

  void rst(const Int& r, const Int& s, const Int& t) {
    const Int na1 = a1 + 2 * s;
    const Int na2 = a2 - s * a1 + 3 * r - s * s;
    const Int na3 = a3 + r * a1 + 2 * t;
    const Int na4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    const Int na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = na1;
    a2 = na2;
    a3 = na3;
    a4 = na4;
    a6 = na6;
    w = w.then(Transform{1, Rat(r), Rat(s), Rat(t)});
  }

  void divide_by(const Int& q) {
    a1 = exact_div(a1, q);
    a2 = exact_div(a2, q * q);
    a3 = exact_div(a3, ipow(q, 3));
    a4 = exact_div(a4, ipow(q, 4));
    a6 = exact_div(a6, ipow(q, 6));
    w = w.then(Transform{Rat(q), 0, 0, 0});
  }
};

// Whether a x^2 + b x + c has a root in F_q.
bool has_quadratic_root(const Int& a, const Int& b, const Int& c, const Int& q) {
  const Int ra = mod_floor(a, q), rb = mod_floor(b, q), rc = mod_floor(c, q);
  if (q == 2) return rc == 0 || mod_floor(ra + rb + rc, q) == 0;
  if (ra == 0) return rb != 0 || rc == 0;
  const Int disc = mod_floor(rb * rb - 4 * ra * rc, q);
  return disc == 0 || mpz_legendre(disc.get_mpz_t(), q.get_mpz_t()) == 1;
}

std::size_t cubic_roots(const Int& b, const Int& c, const Int& d, const Int& q) {
  return modq::count_roots(Poly({Rat(d), Rat(c), Rat(b), Rat(1)}), q);
}

FqPoint singular_point_of(const Int& a1, const Int& a2, const Int& a3, const Int& a4,
                          const Int& a6, const Int& q) {
  const Curve e = Curve::from_ainvs(AInvariants{a1, a2, a3, a4, a6});
  if (q <= 3) {
    for (Int x = 0; x < q; ++x) {
      for (Int y = 0; y < q; ++y) {
        const Int f = y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
        const Int fx = a1 * y - 3 * x * x - 2 * a2 * x - a4;
        const Int fy = 2 * y + a1 * x + a3;
        if (divides(q, f) && divides(q, fx) && divides(q, fy)) return {x, y};
      }
    }
    throw std::logic_error("no singular point found over F_" + q.get_str());
  }
  Int x0;
  if (divides(q, e.c4())) {
    x0 = mod_floor(-e.b2() * inverse_mod(Int(12), q), q);
  } else {
    x0 = mod_floor(-(e.c6() + e.b2() * e.c4()) * inverse_mod(mod_floor(12 * e.c4(), q), q), q);
  }
  const Int y0 = mod_floor(-(a1 * x0 + a3) * inverse_mod(Int(2), q), q);
  return {x0, y0};
}

ReductionData run_tate(const Curve& e, const Int& q) {
  if (!is_prime(q)) throw ValidationError("q", q.get_str() + " is not prime");
  TateState st{e.a1(), e.a2(), e.a3(), e.a4(), e.a6(), Transform{}};
  ReductionData out;
  out.q = q;
  auto pdiv = [&](const Int& x) { return divides(q, x); };
  auto pval = [&](const Int& x) { return val_or_inf(x, q); };
  auto preduce = [&](const Int& x) { return mod_floor(x, q); };
  auto pinv = [&](const Int& x) { return inverse_mod(mod_floor(x, q), q); };
  const Int q2 = q * q;

  auto finish = [&](ReductionKind kind, std::string kod, unsigned tam, unsigned vd) {
    out.kind = kind;
    out.kodaira = std::move(kod);
    out.tamagawa = tam;
    out.v_disc = vd;
    out.minimal_model = st.curve();
    out.transform = st.w;
    out.v_c4 = val_or_inf(out.minimal_model.c4(), q);
    return out;
  };

  for (;;) {
    const Curve cur = st.curve();
    const unsigned vd = valuation(cur.discriminant(), q);
    if (vd == 0) return finish(ReductionKind::good, "I0", 1, 0);

    // Move the singular point to (0,0).
    const FqPoint sing = singular_point_of(st.a1, st.a2, st.a3, st.a4, st.a6, q);
    st.rst(sing.x, 0, sing.y);
    if (!pdiv(st.a3) || !pdiv(st.a4) || !pdiv(st.a6))
      throw std::logic_error("Tate: singular point not moved to origin");

    const Curve c1 = st.curve();
    if (!pdiv(c1.c4())) {
      const bool split = has_quadratic_root(Int(1), st.a1, -st.a2, q);
      out.tangent_split = split;
      unsigned tam = split ? vd : (vd % 2 == 0 ? 2u : 1u);
      bool split_verdict = split;
      if (q >= 5) {
        const Int minus_c6 = mod_floor(-c1.c6(), q);
        split_verdict = mpz_legendre(minus_c6.get_mpz_t(), q.get_mpz_t()) == 1;
      }
      return finish(split_verdict ? ReductionKind::split_multiplicative
                                  : ReductionKind::nonsplit_multiplicative,
                    "I" + std::to_string(vd), tam, vd);
    }
    if (pval(st.a6) < 2) return finish(ReductionKind::additive, "II", 1, vd);
    if (pval(c1.b8()) < 3) return finish(ReductionKind::additive, "III", 2, vd);
    if (pval(c1.b6()) < 3) {
      const unsigned tam = has_quadratic_root(Int(1), exact_div(st.a3, q), -exact_div(st.a6, q2), q) ? 3 : 1;
      return finish(ReductionKind::additive, "IV", tam, vd);
    }

    // Now arrange q | a1, a2; q^2 | a3, a4; q^3 | a6.
    Int s, t;
    if (q == 2) {
      s = preduce(st.a2);
      t = 2 * preduce(exact_div(st.a6, 4));
    } else if (q == 3) {
      s = st.a1;
      t = st.a3;
    } else {
      const Int half = pinv(Int(2));
      s = preduce(-st.a1 * half);
      t = q * preduce(-exact_div(st.a3, q) * half);
    }
    st.rst(0, s, t);

    const Int b = exact_div(st.a2, q);
    const Int c = exact_div(st.a4, q2);
    const Int d = exact_div(st.a6, q2 * q);
    const Int w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    const Int x = 3 * c - b * b;
    const int sw = pdiv(w) ? (pdiv(x) ? 3 : 2) : 1;

    if (sw == 1) {
      return finish(ReductionKind::additive, "I0*", 1 + static_cast<unsigned>(cubic_roots(b, c, d, q)), vd);
    }
    if (sw == 2) {
      Int r;
      if (q == 2) r = preduce(c);
      else if (q == 3) r = c * pinv(b);
      else r = (b * c - 9 * d) * pinv(2 * x);
      r = q * preduce(r);
      st.rst(r, 0, 0);
      unsigned ix = 3, iy = 3;
      Int mx = q2, my = q2;
      unsigned tam = 0;
      for (;;) {
        Int a2t = exact_div(st.a2, q);
        Int a3t = exact_div(st.a3, my);
        Int a4t = exact_div(st.a4, q * mx);
        Int a6t = exact_div(st.a6, mx * my);
        if (pdiv(a3t * a3t + 4 * a6t)) {
          Int tt = q == 2 ? Int(my * preduce(a6t)) : Int(my * preduce(-a3t * pinv(Int(2))));
          st.rst(0, 0, tt);
          my *= q;
          ++iy;
          a2t = exact_div(st.a2, q);
          a3t = exact_div(st.a3, my);
          a4t = exact_div(st.a4, q * mx);
          a6t = exact_div(st.a6, mx * my);
          if (pdiv(a4t * a4t - 4 * a6t * a2t)) {
            Int rr = q == 2 ? Int(mx * preduce(a6t * pinv(a2t))) : Int(mx * preduce(-a4t * pinv(2 * a2t)));
            st.rst(rr, 0, 0);
            mx *= q;
            ++ix;
          } else {
            tam = has_quadratic_root(a2t, a4t, a6t, q) ? 4 : 2;
            break;
          }
        } else {
          tam = has_quadratic_root(Int(1), a3t, -a6t, q) ? 4 : 2;
          break;
        }
      }
      const unsigned m = ix + iy - 5;
      return finish(ReductionKind::additive, "I" + std::to_string(m) + "*", tam, vd);
    }

    // Triple root.
    Int r;
    if (q == 2) r = b;
    else if (q == 3) r = -d;
    else r = -b * pinv(Int(3));
    r = q * preduce(r);
    st.rst(r, 0, 0);
    const Int a3t = exact_div(st.a3, q2);
    const Int a6t = exact_div(st.a6, q2 * q2);
    if (!pdiv(a3t * a3t + 4 * a6t)) {
      const unsigned tam = has_quadratic_root(Int(1), a3t, -a6t, q) ? 3 : 1;
      return finish(ReductionKind::additive, "IV*", tam, vd);
    }
    Int tt = q == 2 ? Int(-q2 * preduce(a6t)) : Int(q2 * preduce(-a3t * pinv(Int(2))));
    st.rst(0, 0, tt);
    if (pval(st.a4) < 4) return finish(ReductionKind::additive, "III*", 2, vd);
    if (pval(st.a6) < 6) return finish(ReductionKind::additive, "II*", 1, vd);
    st.divide_by(q);
  }
}

}  // namespace

ReductionData reduction_at(const Curve& e, const Int& q) { return run_tate(e, q); }

bool split_by_c6(const Curve& e, const Int& q) {
  if (q < 5) throw ValidationError("q", "the -c6 criterion is used for q >= 5 only");
  const auto red = run_tate(e, q);
  if (!red.multiplicative()) throw ValidationError("q", "reduction is not multiplicative at " + q.get_str());
  const Int minus_c6 = mod_floor(-red.minimal_model.c6(), q);
  return mpz_legendre(minus_c6.get_mpz_t(), q.get_mpz_t()) == 1;
}

bool split_by_tangent(const Curve& e, const Int& q) {
  const auto red = run_tate(e, q);
  if (!red.multiplicative()) throw ValidationError("q", "reduction is not multiplicative at " + q.get_str());
  return red.tangent_split;
}

FqPoint singular_point(const Curve& e, const Int& q) {
  if (!is_prime(q)) throw ValidationError("q", q.get_str() + " is not prime");
  if (!divides(q, e.discriminant()))
    throw ValidationError("q", "good reduction at " + q.get_str() + ": no singular point");
  return singular_point_of(e.a1(), e.a2(), e.a3(), e.a4(), e.a6(), q);
}

bool reduces_to_singular_point(const Curve& e, const Point& pt, const Int& q) {
  if (pt.infinity) return false;
  if (divides(q, Int(pt.x.get_den())) || divides(q, Int(pt.y.get_den()))) return false;
  const FqPoint s = singular_point(e, q);
  return reduce_mod(pt.x, q) == s.x && reduce_mod(pt.y, q) == s.y;
}

MinimalModel minimal_model(const Curve& e, const FactorBudget& budget) {
  const Int g = gcd(gcd(e.c4(), e.c6()), e.discriminant());
  Int u = 1;
  if (g != 1) {
    const auto fac = factor_complete(g, budget);
    for (const auto& pp : fac.factors) {
      const unsigned vd = valuation(e.discriminant(), pp.prime);
      if (vd < 12) continue;
      const auto red = run_tate(e, pp.prime);
      const unsigned drop = vd - red.v_disc;
      if (drop % 12 != 0) throw std::logic_error("minimal discriminant drop not a multiple of 12");
      u *= ipow(pp.prime, drop / 12);
    }
  }
  const Int c4 = exact_div(e.c4(), ipow(u, 4));
  const Int c6 = exact_div(e.c6(), ipow(u, 6));
  // Reduced model from (c4, c6).
  Int b2 = mod_floor(-c6, Int(12));
  if (b2 > 6) b2 -= 12;
  const Int b4 = exact_div(b2 * b2 - c4, Int(24));
  const Int b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - c6, Int(216));
  const Int a1 = mod_floor(b2, Int(2));
  const Int a3 = mod_floor(b6, Int(2));
  const Int a2 = exact_div(b2 - a1, Int(4));
  const Int a4 = exact_div(b4 - a1 * a3, Int(2));
  const Int a6 = exact_div(b6 - a3, Int(4));
  const Curve out = Curve::from_ainvs(AInvariants{a1, a2, a3, a4, a6});

  Transform w;
  w.u = Rat(u);
  w.s = (w.u * Rat(a1) - Rat(e.a1())) / 2;
  w.r = (w.u * w.u * Rat(a2) - Rat(e.a2()) + w.s * Rat(e.a1()) + w.s * w.s) / 3;
  w.t = (w.u * w.u * w.u * Rat(a3) - Rat(e.a3()) - w.r * Rat(e.a1())) / 2;
  if (transform_ainvs(w, to_rational(e.ainvs())) != to_rational(out.ainvs()))
    throw std::logic_error("minimal model transform does not reproduce the reduced model");
  return {out, w};
}

}  // namespace shabound
