#pragma once

// Selmer, rank and Sha bound formulas parameterized by field invariants.
// Strict entry points require a totally imaginary K containing zeta_p and
// throw HypothesisViolated otherwise; advisory_report evaluates the same
// formulas in exact rationals for any field and flags the violation.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shabound/errors.hpp"

namespace shabound {

struct FieldInvariants {
  std::int64_t d = 1;   // [K:Q]
  std::int64_t cp = 0;  // dim C_K[p]
  bool totally_imaginary = false;
  bool contains_zeta_p = false;

  /// Throws ValidationError on d < 1, cp < 0 or an odd totally imaginary degree.
  void validate() const;
  static FieldInvariants rationals() { return {}; }
};

std::int64_t dim_ksp(const FieldInvariants& f, std::int64_t s);
std::pair<std::int64_t, std::int64_t> selmer_interval(const FieldInvariants& f, std::int64_t s1,
                                                      std::int64_t s2, std::int64_t m);
std::int64_t rank_upper(const FieldInvariants& f, std::int64_t s1, std::int64_t s2, std::int64_t m,
                        std::int64_t m_hat);
std::pair<std::int64_t, std::int64_t> cassels_interval(const FieldInvariants& f, std::int64_t s1,
                                                       std::int64_t s2, std::int64_t dim_phi);
std::int64_t sum_lower(const FieldInvariants& f, std::int64_t s1, std::int64_t s2);
/// ceil((selmer_sum - 1 - r) / 2), clamped at 0.
std::int64_t sha_from_sum(std::int64_t selmer_sum, std::int64_t r);

struct ShaLower {
  Rat raw;
  std::int64_t clamped = 0;
};
ShaLower sha_lower_matrix(const FieldInvariants& f, std::int64_t s1, std::int64_t s2, std::int64_t m_psi,
                          std::int64_t m_psi_hat);

struct TheoremBudget {
  std::int64_t m_threshold = 0;
  std::int64_t d_max = 0;
  std::int64_t s2_max = 0;
  std::int64_t sha_guarantee = 0;
};
/// Throws ValidationError for p <= 3 or k, n, D < 1, and logic_error if the
/// chain fails to reach k.
TheoremBudget theorem_budget(std::int64_t p, std::int64_t k, std::int64_t n, std::int64_t deg_h);

struct DegreeBudget {
  Int deg_h_bound;
  Int g_bound;
};
/// D(p) = c3 p^3 and g(p) = 2 (p - 1) D(p); c3 is an order-of-magnitude
/// placeholder.
DegreeBudget degree_budget(std::int64_t p, std::int64_t c3 = 1);

struct BoundReport {
  Rat selmer_lower, selmer_upper;
  Rat rank_upper;
  std::pair<Rat, Rat> cassels_interval;
  Rat sum_lower;
  Rat sha_lower_raw;
  std::int64_t sha_lower = 0;
  bool hypothesis_ok = false;
  std::vector<std::string> reasons;
};

struct BoundInputs {
  std::int64_t s1 = 0, s2 = 0;
  std::int64_t m = 0, m_hat = 0;
  std::int64_t m_psi = 0, m_psi_hat = 0;
  std::int64_t dim_phi = 0;
};

BoundReport advisory_report(const FieldInvariants& f, const BoundInputs& in);

}  // namespace shabound
