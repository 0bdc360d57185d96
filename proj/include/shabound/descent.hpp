#pragma once

// Prime classification for a p-isogeny, the character matrix T and its rank,
// and the two-sided Selmer sandwich over Q.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shabound/fp_matrix.hpp"
#include "shabound/isogeny.hpp"

namespace shabound {

enum class PrimeSet { S1, S2 };
std::string to_string(PrimeSet s);

enum class ExclusionReason { nonsplit, additive, above_p_overlap };
std::string to_string(ExclusionReason r);

struct Exclusion {
  Int prime;
  ExclusionReason reason;
};

struct PrimeEvidence {
  Int prime;
  PrimeSet singular_point_test;
  PrimeSet valuation_ratio_test;
  unsigned v_disc_domain = 0;
  unsigned v_disc_codomain = 0;
};

struct DescentSets {
  unsigned p = 0;
  std::vector<Int> S1, S2, S3;
  std::vector<Exclusion> excluded;
  std::vector<PrimeEvidence> evidence;
};

/// Classify the bad primes of iso.domain (which must be a minimal model).
/// The kernel is taken from iso.kernel_gen when present, otherwise from the
/// kernel polynomial. `bad_primes` lists the primes dividing the domain
/// discriminant; when omitted the discriminant is factored.
DescentSets classify_primes(const IsogenyData& iso, const FactorBudget& budget = {},
                            std::optional<std::vector<Int>> bad_primes = std::nullopt);

/// Point-kernel entry: builds the quotient and classifies. For point kernels
/// every S2 prime is checked to be 1 mod p.
DescentSets classify_primes(const Curve& e, const Point& pt, unsigned p, const FactorBudget& budget = {});

/// Kernel-polynomial entry.
DescentSets classify_primes(const Curve& e, const Poly& kernel_poly, unsigned p,
                            const FactorBudget& budget = {});

/// Swap S1 and S2 (and the per-prime verdicts).
DescentSets dual_sets(const DescentSets& sets);

struct CharacterMatrixSpec {
  unsigned p = 0;
  std::vector<Int> col_basis;
  std::vector<Int> row_conditions;
  FpMatrix matrix{2, 0, 0};
};

/// Entry (l, q) = character of q at l. Rejects non-primes, overlaps,
/// p in either set and rows with l != 1 mod p.
CharacterMatrixSpec character_matrix(unsigned p, std::span<const Int> s1, std::span<const Int> s2);
std::size_t m_rank(unsigned p, std::span<const Int> s1, std::span<const Int> s2);

/// m for a classified isogeny over Q: rows at primes l != 1 mod p carry no
/// condition (units there are all p-th powers) and are dropped.
std::size_t descent_m(const DescentSets& sets);

struct SandwichResult {
  std::size_t lower_dim = 0;
  std::size_t upper_dim = 0;
  std::vector<Int> lower_support;
  std::vector<Int> upper_support;
  /// Exponent vectors over the support primes, in the support order.
  std::vector<FpVector> lower_basis;
  std::vector<FpVector> upper_basis;
};

SandwichResult selmer_sandwich(const DescentSets& sets);
SandwichResult selmer_sandwich(const Curve& e, const Point& pt, unsigned p, const FactorBudget& budget = {});

}  // namespace shabound
