#pragma once

// One-parameter Tate normal form families with a marked point of order p,
// congruence-forced parameters and a ranked fiber scan.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shabound/bounds.hpp"
#include "shabound/descent.hpp"

namespace shabound {

struct FactorPoly {
  Poly factor;
  unsigned multiplicity = 1;
  /// Set into which a prime dividing factor(b) falls, learned from probes.
  std::optional<PrimeSet> role;
};

struct FamilySpec {
  unsigned p = 0;
  std::string parameter_name;
  std::array<Poly, 5> ainvs;  // a-invariants as polynomials in the parameter
  Poly discriminant;
  Int content;
  std::vector<FactorPoly> factor_polys;
};

/// Tate normal form family for p = 5 (parameter b) or p = 7 (parameter t).
/// The discriminant is expanded and factored, and each factor's role is
/// determined by classifying probe fibers.
FamilySpec tate_normal_family(unsigned p);

struct Fiber {
  Rat parameter;
  Curve curve;  // globally minimal
  Point point;  // image of (0,0), order p
  Transform transform;  // family model -> curve
};

/// Throws Degenerate when the discriminant vanishes at b.
Fiber fiber(const FamilySpec& family, const Rat& b);

struct SearchConstraints {
  std::vector<Int> force_s1;
  std::vector<Int> force_s2;
  std::optional<std::size_t> omega_max;
  /// Parameters to visit; unset means 1000 progression terms when primes
  /// are forced and the whole box otherwise.
  std::optional<std::size_t> scan_budget;
  Int parameter_box = 10000;
  /// Largest parameter denominator in box scans; 1 scans integers only.
  unsigned max_denominator = 1;
};

struct ConstructedParameter {
  Int b;        // least nonnegative solution
  Int modulus;  // product of the forced primes
};

/// Throws UnreachableCusp when a forced S2 prime admits no root of any
/// S2-role factor, ValidationError for malformed constraints.
ConstructedParameter construct_parameter(const FamilySpec& family, const SearchConstraints& c);

struct AlmostPrimeResult {
  std::vector<Int> kept;
  std::size_t incomplete = 0;
};
AlmostPrimeResult almost_prime_filter(const std::vector<Int>& values, std::size_t omega_max,
                                      const FactorBudget& budget = {});

struct ForcedPrime {
  Int prime;
  std::string intended;  // "S1" or "S2"
  std::string landed;    // "S1", "S2", "nonsplit", "additive", "above_p_overlap" or "absent"
  bool divides_discriminant = false;
};

struct SearchRow {
  Rat b;
  std::optional<std::string> error;
  Curve curve;
  Curve codomain;
  DescentSets sets;
  std::size_t m_phi = 0;
  std::size_t m_phihat = 0;
  SandwichResult sandwich_phi;
  SandwichResult sandwich_phihat;
  BoundReport bounds;
  std::size_t omega_of_cofactor = 0;
  bool dual_swap_ok = false;
  std::vector<ForcedPrime> forced;
  bool forcing_ok = true;
};

struct SearchReport {
  unsigned p = 0;
  std::size_t parameters_tried = 0;
  std::size_t degenerate = 0;
  std::size_t incomplete = 0;
  std::size_t filtered_by_omega = 0;
  std::vector<SearchRow> rows;
};

/// Full analysis of one fiber; errors are recorded in the row.
SearchRow analyze_fiber(const FamilySpec& family, const Fiber& f, const SearchConstraints& c,
                        const FactorBudget& budget = {});

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Deterministic for any worker count.
SearchReport scan(const FamilySpec& family, const SearchConstraints& c, unsigned jobs = 1,
                  const FactorBudget& budget = {}, const ProgressFn& progress = {});

/// Parameters visited by scan, in order.
std::vector<Rat> scan_parameters(const FamilySpec& family, const SearchConstraints& c);

}  // namespace shabound
