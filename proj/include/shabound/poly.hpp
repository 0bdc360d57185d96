#pragma once

// Dense univariate polynomials over Q, plus a few helpers for polynomials
// over F_q used by root counting and root finding.

#include <string>
#include <vector>

#include "shabound/errors.hpp"

namespace shabound {

/// Coefficients stored low degree first; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c);
  static Poly x();
  /// x - root
  static Poly linear_root(const Rat& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rat>& coeffs() const noexcept { return coeffs_; }
  Rat coeff(int i) const;
  const Rat& leading() const;
  bool is_integral() const;
  bool is_monic() const;

  Rat operator()(const Rat& at) const;
  Poly derivative() const;
  Poly monic() const;
  /// p(c*x + d)
  Poly substitute_affine(const Rat& c, const Rat& d) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator-(Poly a) { return a *= Rat(-1); }
  friend bool operator==(const Poly&, const Poly&) = default;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly pow(const Poly& base, unsigned e);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// a^-1 mod m; throws when gcd(a, m) != 1.
Poly inverse_mod(const Poly& a, const Poly& m);

/// Integer content times a primitive integer polynomial with positive
/// leading coefficient; input must have integer coefficients.
struct IntegerFactor {
  Poly factor;
  unsigned multiplicity = 1;
};

/// Factor an integer polynomial into content and irreducible factors of
/// degree <= 2 found by rational-root extraction and a bounded search for
/// quadratic divisors; whatever remains is reported as one factor.
/// Factors are primitive with positive leading coefficient, sorted by
/// (degree, coefficients).
struct IntegerFactorization {
  Int content;
  std::vector<IntegerFactor> factors;
};
IntegerFactorization factor_integer_poly(const Poly& f);

namespace modq {

/// Polynomials over F_q with q prime: coefficient vectors reduced into
/// [0, q), low degree first, no trailing zeros.
using PolyQ = std::vector<Int>;

PolyQ reduce(const Poly& f, const Int& q);
PolyQ mul(const PolyQ& a, const PolyQ& b, const Int& q);
PolyQ rem(const PolyQ& a, const PolyQ& m, const Int& q);
PolyQ sub(const PolyQ& a, const PolyQ& b, const Int& q);
PolyQ gcd(PolyQ a, PolyQ b, const Int& q);
PolyQ powmod(const PolyQ& base, Int e, const PolyQ& m, const Int& q);

/// Number of distinct roots in F_q.
std::size_t count_roots(const Poly& f, const Int& q);
/// All distinct roots in F_q, ascending.
std::vector<Int> roots(const Poly& f, const Int& q);

}  // namespace modq

}  // namespace shabound
