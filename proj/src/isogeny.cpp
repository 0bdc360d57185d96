#include "shabound/isogeny.hpp"

namespace shabound {

namespace {

void check_degree(unsigned p) {
  if (p < 3 || !is_prime(Int(p))) throw ValidationError("p", "isogeny degree must be an odd prime");
}

Poly quadratic_f(const Curve& e) {
  // 4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2
  return Poly({Rat(e.b6()), Rat(2 * e.b4()), Rat(e.b2()), Rat(4)});
}

struct Codomain {
  RatAInvariants ainvs;
  Poly x_numerator;
};

// Kohel's formulas from the elementary symmetric functions of the roots.
Codomain kohel(const Curve& e, const Poly& psi) {
  const int n = psi.degree();
  const Rat s1 = -psi.coeff(n - 1);
  const Rat s2 = n >= 2 ? psi.coeff(n - 2) : Rat(0);
  const Rat s3 = n >= 3 ? -psi.coeff(n - 3) : Rat(0);
  const Rat b2 = e.b2(), b4 = e.b4(), b6 = e.b6();
  const Rat pow2 = s1 * s1 - 2 * s2;
  const Rat pow3 = s1 * s1 * s1 - 3 * s1 * s2 + 3 * s3;
  const Rat v = 6 * pow2 + b2 * s1 + n * b4;
  const Rat w = 10 * pow3 + 2 * b2 * pow2 + 3 * b4 * s1 + n * b6;
  Codomain out;
  out.ainvs = {Rat(e.a1()), Rat(e.a2()), Rat(e.a3()), Rat(e.a4()) - 5 * v,
               Rat(e.a6()) - b2 * v - 7 * w};
  for (auto& c : out.ainvs) c.canonicalize();

  const Poly dpsi = psi.derivative();
  const Poly vpoly({b4, b2, Rat(6)});
  const Poly upoly({b6, 2 * b4, b2, Rat(4)});
  const Poly t1 = (vpoly * dpsi) % psi;
  const Poly t2 = (upoly * dpsi) % psi;
  out.x_numerator = Poly::x() * psi * psi + (t1 - t2.derivative()) * psi + t2 * dpsi;
  return out;
}

IsogenyData finish(const Curve& e, unsigned p, std::optional<Point> gen, Poly psi,
                   const Codomain& cod, const FactorBudget& budget) {
  IsogenyData iso;
  iso.p = p;
  iso.domain = e;
  iso.kernel_gen = std::move(gen);
  iso.kernel_x_poly = std::move(psi);
  iso.raw_codomain = cod.ainvs;
  iso.x_numerator = cod.x_numerator;
  Transform scale;
  const Curve integral = make_integral(cod.ainvs, &scale);
  const MinimalModel mm = minimal_model(integral, budget);
  iso.codomain = mm.curve;
  iso.raw_to_codomain = scale.then(mm.transform);
  return iso;
}

// (num, den) with x([r]Q) = num(x) / den(x).
std::pair<Poly, Poly> multiplication_x_map(const Curve& e, unsigned r) {
  const Poly f_prev = division_polynomial(e, r - 1);
  const Poly f_r = division_polynomial(e, r);
  const Poly f_next = division_polynomial(e, r + 1);
  const Poly big_f = quadratic_f(e);
  if (r % 2 == 1) return {Poly::x() * f_r * f_r - big_f * f_prev * f_next, f_r * f_r};
  return {Poly::x() * big_f * f_r * f_r - f_prev * f_next, big_f * f_r * f_r};
}

// Smallest r generating (Z/p)* modulo {1, -1}.
unsigned half_generator(unsigned p) {
  const unsigned half = (p - 1) / 2;
  for (unsigned r = 2; r < p; ++r) {
    unsigned x = 1, order = 0;
    do {
      x = x * r % p;
      ++order;
    } while (x != 1 && x != p - 1);
    if (order == half) return r;
  }
  return 1;
}

}  // namespace

Poly division_polynomial(const Curve& e, unsigned n) {
  const Rat b2 = e.b2(), b4 = e.b4(), b6 = e.b6(), b8 = e.b8();
  const Poly big_f = quadratic_f(e);
  const Poly f2 = big_f * big_f;
  std::vector<Poly> f(std::max(n + 1, 5u));
  f[0] = Poly();
  f[1] = Poly::constant(1);
  f[2] = Poly::constant(1);
  f[3] = Poly({b8, 3 * b6, 3 * b4, b2, Rat(3)});
  f[4] = Poly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, Rat(2)});
  for (unsigned k = 5; k <= n; ++k) {
    const unsigned m = k / 2;
    if (k % 2 == 1) {
      Poly a = f[m + 2] * f[m] * f[m] * f[m];
      Poly b = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
      if (m % 2 == 0) a *= f2;
      else b *= f2;
      f[k] = a - b;
    } else {
      f[k] = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]);
    }
  }
  return f[n];
}

void check_kernel_poly(const Curve& e, const Poly& psi, unsigned p) {
  check_degree(p);
  const int n = static_cast<int>(p - 1) / 2;
  if (psi.degree() != n) throw ValidationError("kernel", "kernel polynomial must have degree (p-1)/2");
  if (!psi.is_monic()) throw ValidationError("kernel", "kernel polynomial must be monic");
  if (!divmod(division_polynomial(e, p), psi).remainder.is_zero())
    throw ValidationError("kernel", "kernel polynomial does not divide the p-division polynomial");
  if (gcd(psi, psi.derivative()).degree() != 0)
    throw ValidationError("kernel", "kernel polynomial is not squarefree");
  const unsigned r = half_generator(p);
  auto [num, den] = multiplication_x_map(e, r);
  num = num % psi;
  den = den % psi;
  // Homogenized psi(num/den) * den^n, reduced mod psi.
  Poly acc;
  Poly num_pow = Poly::constant(1);
  std::vector<Poly> den_pows(n + 1, Poly::constant(1));
  for (int i = 1; i <= n; ++i) den_pows[i] = (den_pows[i - 1] * den) % psi;
  for (int i = 0; i <= n; ++i) {
    acc += num_pow * den_pows[n - i] * psi.coeff(i);
    num_pow = (num_pow * num) % psi;
  }
  if (!(acc % psi).is_zero())
    throw ValidationError("kernel", "roots of the kernel polynomial do not form a subgroup");
}

IsogenyData velu_quotient(const Curve& e, const Point& kernel_gen, unsigned p,
                          const FactorBudget& budget) {
  check_degree(p);
  if (!on_curve(e, kernel_gen)) throw ValidationError("point", "point is not on the curve");
  if (!has_order(e, kernel_gen, p))
    throw ValidationError("point", "point order: " + kernel_gen.str() + " does not have order " + std::to_string(p));
  const Rat a1 = e.a1(), a2 = e.a2(), a3 = e.a3(), a4 = e.a4(), a6 = e.a6();
  Rat v = 0, w = 0;
  Poly psi = Poly::constant(1);
  Point q = kernel_gen;
  for (unsigned i = 1; i <= (p - 1) / 2; ++i) {
    const Rat gx = 3 * q.x * q.x + 2 * a2 * q.x + a4 - a1 * q.y;
    const Rat gy = -2 * q.y - a1 * q.x - a3;
    const Rat vq = 2 * gx - a1 * gy;
    const Rat uq = gy * gy;
    v += vq;
    w += uq + q.x * vq;
    psi *= Poly::linear_root(q.x);
    q = add_points(e, q, kernel_gen);
  }
  Codomain cod = kohel(e, psi);
  const Rat b2 = e.b2();
  RatAInvariants velu{a1, a2, a3, a4 - 5 * v, a6 - b2 * v - 7 * w};
  for (auto& c : velu) c.canonicalize();
  if (velu != cod.ainvs) throw std::logic_error("Velu and Kohel codomains differ");
  return finish(e, p, kernel_gen, std::move(psi), cod, budget);
}

IsogenyData velu_from_kernel_poly(const Curve& e, const Poly& psi, unsigned p,
                                  const FactorBudget& budget) {
  check_kernel_poly(e, psi, p);
  return finish(e, p, std::nullopt, psi, kohel(e, psi), budget);
}

Point push_point(const IsogenyData& iso, const Point& q) {
  if (!on_curve(iso.domain, q)) throw ValidationError("point", "point " + q.str() + " is not on the domain");
  if (q.infinity) return q;
  const Poly& psi = iso.kernel_x_poly;
  const Rat psi_at = psi(q.x);
  if (psi_at == 0) return Point::at_infinity();
  const Rat den = psi_at * psi_at;
  const Rat num = iso.x_numerator(q.x);
  const Rat x_img = num / den;
  // X'(x) for X = num / psi^2.
  const Rat dden = 2 * psi_at * psi.derivative()(q.x);
  const Rat dx = (iso.x_numerator.derivative()(q.x) * den - num * dden) / (den * den);
  const Curve& e = iso.domain;
  const Rat a1 = e.a1(), a3 = e.a3();
  const Rat y_img = (dx * (2 * q.y + a1 * q.x + a3) - a1 * x_img - a3) / 2;
  const Point raw = Point::affine(x_img, y_img);
  const Point out = apply(iso.raw_to_codomain, raw);
  if (!on_curve(iso.codomain, out)) throw std::logic_error("pushed point is not on the codomain");
  return out;
}

Poly dual_kernel_poly(const IsogenyData& iso) {
  const unsigned p = iso.p;
  const int n = static_cast<int>(p - 1) / 2;
  const Curve& e = iso.domain;
  const Poly& psi = iso.kernel_x_poly;
  const auto division = divmod(division_polynomial(e, p), psi);
  if (!division.remainder.is_zero()) throw std::logic_error("kernel polynomial does not divide f_p");
  const Poly g = division.quotient.monic();
  const int deg_g = g.degree();

  // Power sums of the roots of g by Newton's identities.
  std::vector<Rat> power(deg_g + 1);
  power[0] = deg_g;
  auto ecoef = [&](int k) {  // elementary symmetric e_k of the roots of g
    const Rat c = g.coeff(deg_g - k);
    return k % 2 == 0 ? c : Rat(-c);
  };
  for (int k = 1; k <= deg_g; ++k) {
    Rat acc = 0;
    for (int i = 1; i < k; ++i) {
      const Rat term = ecoef(i) * power[k - i];
      acc += i % 2 == 1 ? term : Rat(-term);
    }
    const Rat last = ecoef(k) * k;
    acc += k % 2 == 1 ? last : Rat(-last);
    power[k] = acc;
  }
  // For traces we need power sums up to 2 * deg_g - 2 after reduction; reduce
  // alpha^k mod g so only exponents < deg_g appear.
  auto trace = [&](const Poly& h) {
    Rat t = 0;
    for (int j = 0; j <= h.degree(); ++j) t += h.coeff(j) * power[j];
    return t;
  };

  const Poly alpha = (iso.x_numerator % g) * inverse_mod((psi * psi) % g, g) % g;
  // Each nonzero dual-kernel x-coordinate is the image of exactly p roots of g.
  std::vector<Rat> dual_power(n + 1);
  Poly alpha_k = Poly::constant(1);
  for (int k = 1; k <= n; ++k) {
    alpha_k = (alpha_k * alpha) % g;
    dual_power[k] = trace(alpha_k) / p;
  }
  std::vector<Rat> elem(n + 1);
  elem[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat acc = 0;
    for (int i = 1; i <= k; ++i) {
      const Rat term = elem[k - i] * dual_power[i];
      acc += i % 2 == 1 ? term : Rat(-term);
    }
    elem[k] = acc / k;
  }
  std::vector<Rat> coeffs(n + 1);
  for (int k = 0; k <= n; ++k) coeffs[n - k] = k % 2 == 0 ? elem[k] : Rat(-elem[k]);
  const Poly raw(std::move(coeffs));

  // Move to the minimal codomain: x_raw = u^2 x' + r.
  const Transform& w = iso.raw_to_codomain;
  const Rat u2 = w.u * w.u;
  Rat scale = 1;
  for (int i = 0; i < n; ++i) scale *= u2;
  return raw.substitute_affine(u2, w.r) * (Rat(1) / scale);
}

IsogenyData dual_isogeny(const IsogenyData& iso, const FactorBudget& budget) {
  return velu_from_kernel_poly(iso.codomain, dual_kernel_poly(iso), iso.p, budget);
}

}  // namespace shabound
