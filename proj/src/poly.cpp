#include "shabound/poly.hpp"

#include <algorithm>
#include <sstream>

#include "shabound/arith.hpp"

namespace shabound {

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }
Poly Poly::x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
Poly Poly::linear_root(const Rat& root) { return Poly(std::vector<Rat>{-root, Rat(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rat& Poly::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

bool Poly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c.get_den() == 1; });
}

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

Rat Poly::operator()(const Rat& at) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Rat> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<long>(i));
  return Poly(std::move(out));
}

Poly Poly::monic() const {
  Poly out = *this;
  if (out.is_zero()) return out;
  const Rat lc = out.leading();
  for (auto& c : out.coeffs_) c /= lc;
  return out;
}

Poly Poly::substitute_affine(const Rat& c, const Rat& d) const {
  const Poly lin(std::vector<Rat>{d, c});
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rat> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (c != 1 || i == 0) os << c.get_str() << (i > 0 ? "*" : "");
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> rem = a.coeffs();
  const int db = b.degree();
  const Rat lc = b.leading();
  std::vector<Rat> quot(static_cast<std::size_t>(std::max(0, a.degree() - db + 1)));
  for (int i = a.degree(); i >= db; --i) {
    const Rat c = rem[static_cast<std::size_t>(i)] / lc;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(std::max(0, std::min(a.degree() + 1, db))));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly pow(const Poly& base, unsigned e) {
  Poly acc = Poly::constant(1);
  Poly sq = base;
  while (e) {
    if (e & 1u) acc *= sq;
    e >>= 1u;
    if (e) sq *= sq;
  }
  return acc;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  // Extended Euclid tracking the coefficient of a.
  Poly r0 = m, r1 = a % m, s0, s1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw std::domain_error("polynomial not invertible modulo m");
  return (s0 * Rat(1 / r0.leading())) % m;
}

namespace {

Int integer_content(const Poly& f) {
  Int g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, Int(c.get_num()));
  return g;
}

std::vector<Int> positive_divisors(const Int& n) {
  const auto fac = factor_complete(abs(n));
  std::vector<Int> divs{1};
  for (const auto& pp : fac.factors) {
    const std::size_t base = divs.size();
    Int pw = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pw *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Poly normalize_primitive(const Poly& f) {
  Poly g = f * Rat(1, 1);
  const Int c = integer_content(g);
  g *= Rat(Int(1), c);
  if (g.leading() < 0) g *= Rat(-1);
  return g;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

}  // namespace

IntegerFactorization factor_integer_poly(const Poly& f) {
  if (f.is_zero()) throw ValidationError("f", "cannot factor the zero polynomial");
  if (!f.is_integral()) throw ValidationError("f", "polynomial must have integer coefficients");
  IntegerFactorization out;
  out.content = integer_content(f);
  if (f.leading() < 0) out.content = -out.content;
  Poly rest = f * Rat(Int(1), out.content);

  std::vector<Poly> found;
  // Root 0.
  while (rest.degree() > 0 && rest.coeff(0) == 0) {
    found.push_back(Poly::x());
    rest = divmod(rest, Poly::x()).quotient;
  }
  // Other rational roots a/b with a | a0, b | an.
  if (rest.degree() >= 1) {
    const auto num_divs = positive_divisors(Int(rest.coeff(0).get_num()));
    const auto den_divs = positive_divisors(Int(rest.leading().get_num()));
    bool progress = true;
    while (progress && rest.degree() >= 1) {
      progress = false;
      for (const auto& b : den_divs) {
        for (const auto& a : num_divs) {
          for (int sgn : {1, -1}) {
            const Rat r(Int(a * sgn), b);
            Rat rr = r;
            rr.canonicalize();
            if (rest(rr) != 0) continue;
            Poly lin = normalize_primitive(Poly(std::vector<Rat>{Rat(-rr.get_num()), Rat(rr.get_den())}));
            found.push_back(lin);
            rest = divmod(rest, lin).quotient;
            progress = true;
            break;
          }
          if (progress) break;
        }
        if (progress) break;
      }
    }
  }
  // Quadratic divisors for what is left.
  while (rest.degree() >= 4) {
    const Rat lc = rest.leading();
    Rat bound = 0;
    for (int i = 0; i < rest.degree(); ++i) {
      Rat ratio = abs(rest.coeff(i) / lc);
      if (ratio > bound) bound = ratio;
    }
    const Rat root_bound = bound + 1;
    bool split = false;
    const auto a_divs = positive_divisors(Int(rest.leading().get_num()));
    const auto c_divs = positive_divisors(Int(rest.coeff(0).get_num()));
    for (const auto& a : a_divs) {
      Rat bmax_r = 2 * root_bound * a;
      Int bmax = Int(bmax_r.get_num()) / Int(bmax_r.get_den()) + 1;
      if (bmax > 10000) bmax = 10000;
      for (const auto& cd : c_divs) {
        for (int cs : {1, -1}) {
          const Int c = cd * cs;
          for (Int bb = -bmax; bb <= bmax; ++bb) {
            Poly q(std::vector<Rat>{Rat(c), Rat(bb), Rat(a)});
            auto dm = divmod(rest, q);
            if (!dm.remainder.is_zero() || !dm.quotient.is_integral()) continue;
            found.push_back(normalize_primitive(q));
            rest = dm.quotient;
            split = true;
            break;
          }
          if (split) break;
        }
        if (split) break;
      }
      if (split) break;
    }
    if (!split) break;
  }
  if (rest.degree() >= 1) found.push_back(normalize_primitive(rest));
  else out.content *= Int(rest.coeff(0).get_num());

  std::sort(found.begin(), found.end(), poly_less);
  for (auto& fct : found) {
    if (!out.factors.empty() && out.factors.back().factor == fct) ++out.factors.back().multiplicity;
    else out.factors.push_back({fct, 1});
  }
  return out;
}

namespace modq {

namespace {

Int mod_floor(const Int& a, const Int& q) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  return r;
}

void trim(PolyQ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

PolyQ reduce(const Poly& f, const Int& q) {
  PolyQ out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(reduce_mod(c, q));
  trim(out);
  return out;
}

PolyQ mul(const PolyQ& a, const PolyQ& b, const Int& q) {
  if (a.empty() || b.empty()) return {};
  PolyQ out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  for (auto& c : out) c = mod_floor(c, q);
  trim(out);
  return out;
}

PolyQ rem(const PolyQ& a, const PolyQ& m, const Int& q) {
  if (m.empty()) throw std::domain_error("division by zero polynomial mod q");
  PolyQ r = a;
  const Int inv_lc = inverse_mod(m.back(), q);
  while (r.size() >= m.size()) {
    const Int c = mod_floor(r.back() * inv_lc, q);
    const std::size_t shift = r.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) r[shift + j] = mod_floor(r[shift + j] - c * m[j], q);
    trim(r);
  }
  return r;
}

PolyQ sub(const PolyQ& a, const PolyQ& b, const Int& q) {
  PolyQ out(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  for (auto& c : out) c = mod_floor(c, q);
  trim(out);
  return out;
}

PolyQ gcd(PolyQ a, PolyQ b, const Int& q) {
  while (!b.empty()) {
    PolyQ r = rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Int inv = inverse_mod(a.back(), q);
    for (auto& c : a) c = mod_floor(c * inv, q);
  }
  return a;
}

PolyQ powmod(const PolyQ& base, Int e, const PolyQ& m, const Int& q) {
  PolyQ acc{Int(1)};
  acc = rem(acc, m, q);
  PolyQ sq = rem(base, m, q);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = rem(mul(acc, sq, q), m, q);
    e >>= 1;
    if (e > 0) sq = rem(mul(sq, sq, q), m, q);
  }
  return acc;
}

namespace {

Int eval(const PolyQ& f, const Int& x, const Int& q) {
  Int acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod_floor(acc * x + *it, q);
  return acc;
}

// Split a squarefree product of distinct linear factors.
void split_linear(const PolyQ& f, const Int& q, std::vector<Int>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back(mod_floor(-f[0] * inverse_mod(f[1], q), q));
    return;
  }
  const Int half = (q - 1) / 2;
  for (Int a = 0;; ++a) {
    PolyQ shifted{mod_floor(a, q), Int(1)};
    PolyQ h = powmod(shifted, half, f, q);
    h = sub(h, PolyQ{Int(1)}, q);
    PolyQ g = gcd(f, h, q);
    if (g.size() > 1 && g.size() < f.size()) {
      split_linear(g, q, out);
      // f / g via repeated division: the cofactor is gcd(f, stuff) - recompute
      // by exact long division.
      PolyQ num = f, quot(f.size() - g.size() + 1, Int(0));
      const Int inv_lc = inverse_mod(g.back(), q);
      while (num.size() >= g.size()) {
        const Int c = mod_floor(num.back() * inv_lc, q);
        const std::size_t shift = num.size() - g.size();
        quot[shift] = c;
        for (std::size_t j = 0; j < g.size(); ++j) num[shift + j] = mod_floor(num[shift + j] - c * g[j], q);
        trim(num);
      }
      trim(quot);
      split_linear(quot, q, out);
      return;
    }
  }
}

}  // namespace

std::vector<Int> roots(const Poly& f, const Int& q) {
  PolyQ fq = reduce(f, q);
  if (fq.empty()) throw ValidationError("f", "polynomial vanishes identically mod q");
  std::vector<Int> out;
  if (q < 1000) {
    for (Int x = 0; x < q; ++x)
      if (eval(fq, x, q) == 0) out.push_back(x);
    return out;
  }
  if (fq.size() == 1) return out;
  // g = gcd(f, x^q - x) collects the distinct linear factors.
  PolyQ xq = powmod(PolyQ{Int(0), Int(1)}, q, fq, q);
  PolyQ g = gcd(fq, sub(xq, PolyQ{Int(0), Int(1)}, q), q);
  split_linear(g, q, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_roots(const Poly& f, const Int& q) {
  PolyQ fq = reduce(f, q);
  if (fq.empty()) throw ValidationError("f", "polynomial vanishes identically mod q");
  if (q < 1000) return roots(f, q).size();
  if (fq.size() == 1) return 0;
  PolyQ xq = powmod(PolyQ{Int(0), Int(1)}, q, fq, q);
  PolyQ g = gcd(fq, sub(xq, PolyQ{Int(0), Int(1)}, q), q);
  return g.size() - 1;
}

}  // namespace modq

}  // namespace shabound
