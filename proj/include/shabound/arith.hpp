#pragma once

// Exact integer and modular arithmetic: primality, factorization,
// p-th power residue characters, local p-th power tests, CRT.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "shabound/errors.hpp"

namespace shabound {

/// Effort limit for the rho stage of factorization (iterations per run).
struct FactorBudget {
  std::uint64_t rho_iterations = 200000;

  /// Reads SHABOUND_FACTOR_BUDGET; falls back to the default when unset or
  /// unparsable.
  static FactorBudget from_env();
};

struct PrimePower {
  Int prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
  Int value;
  int sign = 1;
  std::vector<PrimePower> factors;

  std::vector<Int> primes() const;
  unsigned valuation(const Int& q) const;
  Int product() const;
};

/// Factorization that stalled: the known part plus the composite (or
/// uncertifiable) cofactor that resisted the budget.
struct Incomplete {
  Factorization partial;
  Int cofactor;
};

using FactorOutcome = std::variant<Factorization, Incomplete>;

/// Deterministic for 0 <= n < 2^128; throws RangeError beyond that.
bool is_prime(const Int& n);

/// The upper end of the primality working range, 2^128.
const Int& prime_range_limit();

FactorOutcome factor(const Int& n, const FactorBudget& budget = {});

/// Throws IncompleteFactorization instead of returning Incomplete.
Factorization factor_complete(const Int& n, const FactorBudget& budget = {});

/// v_q(n) for n != 0.
unsigned valuation(const Int& n, const Int& q);

/// v_q(x) for a nonzero rational.
long valuation(const Rat& x, const Int& q);

/// Smallest primitive root modulo an odd prime.
Int smallest_primitive_root(const Int& ell, const FactorBudget& budget = {});

/// Z/p-valued p-th power residue character modulo ell (ell = 1 mod p).
/// generator = r^((ell-1)/p) with r the smallest primitive root, so it has
/// exact order p.
class ResidueCharacter {
 public:
  ResidueCharacter(Int ell, unsigned p, const FactorBudget& budget = {});

  const Int& modulus() const noexcept { return ell_; }
  unsigned p() const noexcept { return p_; }
  const Int& generator() const noexcept { return generator_; }

  /// x in [0, p) with a^((ell-1)/p) = generator^x mod ell.
  unsigned operator()(const Int& a) const;
  unsigned operator()(const Rat& a) const;

 private:
  Int ell_;
  unsigned p_;
  Int exponent_;
  Int generator_;
  std::vector<Int> powers_;
};

unsigned character_eval(const ResidueCharacter& chi, const Int& a);

/// Whether the unit u (coprime to p) is a p-th power in Z_p, i.e.
/// u^(p-1) = 1 mod p^2.
bool is_unit_pth_power_at_p(const Rat& u, unsigned p);

/// (u^(p-1) - 1)/p mod p: the Z/p coordinate of u in units modulo p-th
/// powers at p. Zero iff is_unit_pth_power_at_p.
unsigned fermat_quotient(const Rat& u, unsigned p);

/// Whether x is a p-th power in Q_q.
bool is_local_pth_power(const Rat& x, const Int& q, unsigned p);

struct Congruence {
  Int residue;
  Int modulus;
};

/// Least nonnegative solution; moduli must be positive and pairwise coprime.
Int crt_solve(std::span<const Congruence> congruences);

/// omega(n): number of distinct primes dividing n.
std::variant<std::size_t, Incomplete> count_distinct_prime_factors(
    const Int& n, const FactorBudget& budget = {});

struct SplittingData {
  Int ell;
  unsigned p = 0;
  unsigned residue_degree = 0;
  unsigned num_primes = 0;
};

/// Splitting of ell in Q(zeta_p).
SplittingData cyclotomic_splitting(const Int& ell, unsigned p);

/// a^-1 mod m; throws ValidationError when not invertible.
Int inverse_mod(const Int& a, const Int& m);

/// Reduce a rational with denominator prime to m into [0, m).
Int reduce_mod(const Rat& x, const Int& m);

}  // namespace shabound
