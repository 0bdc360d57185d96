#pragma once

// Cyclic p-isogenies: Velu/Kohel quotients, point images, division
// polynomials and the kernel of the dual isogeny.

#include <optional>

#include "shabound/elliptic.hpp"
#include "shabound/poly.hpp"

namespace shabound {

struct IsogenyData {
  unsigned p = 0;
  Curve domain;
  std::optional<Point> kernel_gen;
  /// Monic, degree (p-1)/2, roots the x-coordinates of the nonzero kernel points.
  Poly kernel_x_poly;
  /// E/<P> in globally minimal form.
  Curve codomain;
  /// Quotient model produced by the formulas, before scaling and minimalizing.
  RatAInvariants raw_codomain;
  Transform raw_to_codomain;
  /// x-coordinate map on the raw codomain: x_numerator / kernel_x_poly^2.
  Poly x_numerator;
};

/// Throws ValidationError unless P has exact order p on E.
IsogenyData velu_quotient(const Curve& e, const Point& kernel_gen, unsigned p,
                          const FactorBudget& budget = {});

/// Quotient by the subgroup whose nonzero points have x-coordinates the
/// roots of psi. psi must be monic of degree (p-1)/2, divide the p-division
/// polynomial and be stable under multiplication by integers.
IsogenyData velu_from_kernel_poly(const Curve& e, const Poly& psi, unsigned p,
                                  const FactorBudget& budget = {});

/// Image on iso.codomain; throws ValidationError for points off the domain.
Point push_point(const IsogenyData& iso, const Point& q);

/// f_n with psi_n = f_n for odd n and psi_n = (2y + a1 x + a3) f_n for even n.
Poly division_polynomial(const Curve& e, unsigned n);

/// Throws ValidationError describing the first failed condition.
void check_kernel_poly(const Curve& e, const Poly& psi, unsigned p);

/// Kernel polynomial of the dual isogeny, on iso.codomain.
Poly dual_kernel_poly(const IsogenyData& iso);

/// The dual isogeny codomain -> (minimal model of) domain.
IsogenyData dual_isogeny(const IsogenyData& iso, const FactorBudget& budget = {});

}  // namespace shabound
