#pragma once

// Long Weierstrass models over Q: invariants, the group law on rational
// points, global minimal models and local reduction data.

#include <array>
#include <climits>
#include <string>

#include "shabound/arith.hpp"
#include "shabound/errors.hpp"

namespace shabound {

using AInvariants = std::array<Int, 5>;
using RatAInvariants = std::array<Rat, 5>;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients
/// and nonzero discriminant.
class Curve {
 public:
  /// Throws SingularModel when the discriminant vanishes.
  static Curve from_ainvs(const AInvariants& a);
  static Curve from_ainvs(long a1, long a2, long a3, long a4, long a6);

  const AInvariants& ainvs() const noexcept { return a_; }
  const Int& a1() const noexcept { return a_[0]; }
  const Int& a2() const noexcept { return a_[1]; }
  const Int& a3() const noexcept { return a_[2]; }
  const Int& a4() const noexcept { return a_[3]; }
  const Int& a6() const noexcept { return a_[4]; }
  const Int& b2() const noexcept { return b2_; }
  const Int& b4() const noexcept { return b4_; }
  const Int& b6() const noexcept { return b6_; }
  const Int& b8() const noexcept { return b8_; }
  const Int& c4() const noexcept { return c4_; }
  const Int& c6() const noexcept { return c6_; }
  const Int& discriminant() const noexcept { return disc_; }
  const Rat& j_invariant() const noexcept { return j_; }

  std::string str() const;

  friend bool operator==(const Curve& a, const Curve& b) { return a.a_ == b.a_; }

 private:
  AInvariants a_;
  Int b2_, b4_, b6_, b8_, c4_, c6_, disc_;
  Rat j_;
};

/// A rational point: the point at infinity or an affine (x, y).
struct Point {
  bool infinity = true;
  Rat x, y;

  static Point at_infinity() { return {}; }
  static Point affine(Rat x, Rat y);
  friend bool operator==(const Point&, const Point&) = default;
  std::string str() const;
};

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Transform {
  Rat u = 1, r = 0, s = 0, t = 0;

  bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
  /// Apply *this first, then `next`.
  Transform then(const Transform& next) const;
  Transform inverse() const;
  friend bool operator==(const Transform&, const Transform&) = default;
};

RatAInvariants to_rational(const AInvariants& a);
RatAInvariants transform_ainvs(const Transform& w, const RatAInvariants& a);
/// Throws ValidationError unless the transformed model is integral.
Curve apply(const Transform& w, const Curve& e);
Point apply(const Transform& w, const Point& pt);

/// Scale a rational model to an integral one (smallest positive integer
/// scaling); `w` receives the transform from `a` to the result.
Curve make_integral(const RatAInvariants& a, Transform* w = nullptr);

bool on_curve(const Curve& e, const Point& pt);
Point negate(const Curve& e, const Point& pt);
/// Throws ValidationError for points not on the curve.
Point add_points(const Curve& e, const Point& p, const Point& q);
/// Double-and-add; negative n multiplies the negation.
Point multiply(const Curve& e, const Point& pt, long n);
/// P != O and p*P = O.
bool has_order(const Curve& e, const Point& pt, unsigned p);

struct MinimalModel {
  Curve curve;
  Transform transform;  // from the input model to `curve`
};

/// Global minimal model over Q in reduced form (a1, a3 in {0,1},
/// a2 in {-1,0,1}). Throws IncompleteFactorization when the candidate
/// primes cannot be determined.
MinimalModel minimal_model(const Curve& e, const FactorBudget& budget = {});

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive };
std::string to_string(ReductionKind k);

inline constexpr unsigned kInfiniteValuation = UINT_MAX;

struct ReductionData {
  Int q;
  ReductionKind kind = ReductionKind::good;
  unsigned v_disc = 0;   // on the q-minimal model
  unsigned v_c4 = 0;     // kInfiniteValuation when c4 = 0
  Curve minimal_model;   // q-minimal model reached by Tate's algorithm
  Transform transform;   // input model -> minimal_model
  std::string kodaira;
  unsigned tamagawa = 1;
  bool tangent_split = false;  // tangent-cone verdict at the node

  bool multiplicative() const {
    return kind == ReductionKind::split_multiplicative || kind == ReductionKind::nonsplit_multiplicative;
  }
};

/// Tate's algorithm at the prime q. Split/nonsplit is decided by whether
/// -c6 is a square mod q for q >= 5 and by the tangent cone for q = 2, 3.
ReductionData reduction_at(const Curve& e, const Int& q);

/// -c6 of the q-minimal model is a square mod q. Requires q >= 5 and
/// multiplicative reduction.
bool split_by_c6(const Curve& e, const Int& q);
/// The tangent directions at the node are F_q-rational. Requires
/// multiplicative reduction.
bool split_by_tangent(const Curve& e, const Int& q);

struct FqPoint {
  Int x, y;
  friend bool operator==(const FqPoint&, const FqPoint&) = default;
};

/// Unique singular point of this model reduced mod q; rejects models with
/// nonsingular reduction at q.
FqPoint singular_point(const Curve& e, const Int& q);

/// Whether P reduces mod q to the singular point of the model (points with
/// q in a denominator reduce to the point at infinity).
bool reduces_to_singular_point(const Curve& e, const Point& pt, const Int& q);

}  // namespace shabound
