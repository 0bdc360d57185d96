#include "shabound/bounds.hpp"

#include <algorithm>
#include <cstdlib>

#include "shabound/arith.hpp"

namespace shabound {

namespace {

void require_hypotheses(const FieldInvariants& f) {
  f.validate();
  if (!f.totally_imaginary) throw HypothesisViolated("K must be totally imaginary (no real embedding)");
  if (!f.contains_zeta_p) throw HypothesisViolated("K must contain the p-th roots of unity");
}

std::int64_t ceil_half(std::int64_t v) {
  // ceil(v / 2) for any sign
  return v >= 0 ? (v + 1) / 2 : -((-v) / 2);
}

std::int64_t ceil_rat(const Rat& r) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return c.get_si();
}

}  // namespace

void FieldInvariants::validate() const {
  if (d < 1) throw ValidationError("d", "[K:Q] must be positive");
  if (cp < 0) throw ValidationError("cp", "dim C_K[p] must be nonnegative");
  if (totally_imaginary && d % 2 != 0)
    throw ValidationError("d", "a totally imaginary field has even degree");
}

std::int64_t dim_ksp(const FieldInvariants& f, std::int64_t s) {
  require_hypotheses(f);
  return f.d / 2 + s + f.cp;
}

std::pair<std::int64_t, std::int64_t> selmer_interval(const FieldInvariants& f, std::int64_t s1,
                                                      std::int64_t s2, std::int64_t m) {
  require_hypotheses(f);
  if (m < 0) throw ValidationError("m", "m must be nonnegative");
  return {s1 - s2 + f.cp - f.d / 2, s1 + f.cp - m + 3 * f.d / 2};
}

std::int64_t rank_upper(const FieldInvariants& f, std::int64_t s1, std::int64_t s2, std::int64_t m,
                        std::int64_t m_hat) {
  require_hypotheses(f);
  return s1 + s2 + 2 * f.cp + 3 * f.d - m - m_hat - 1;
}

std::pair<std::int64_t, std::int64_t> cassels_interval(const FieldInvariants& f, std::int64_t s1,
                                                       std::int64_t s2, std::int64_t dim_phi) {
  require_hypotheses(f);
  const std::int64_t centre = dim_phi - s1 + s2;
  const std::int64_t t = 2 * f.d + 1;
  return {centre - t, centre + t};
}

std::int64_t sum_lower(const FieldInvariants& f, std::int64_t s1, std::int64_t s2) {
  require_hypotheses(f);
  return std::abs(s1 - s2) + 2 * f.cp - 3 * f.d - 1;
}

std::int64_t sha_from_sum(std::int64_t selmer_sum, std::int64_t r) {
  if (selmer_sum < 0) throw ValidationError("sum", "Selmer sum must be nonnegative");
  if (r < 0) throw ValidationError("rank", "rank must be nonnegative");
  return std::max<std::int64_t>(0, ceil_half(selmer_sum - 1 - r));
}

ShaLower sha_lower_matrix(const FieldInvariants& f, std::int64_t s1, std::int64_t s2, std::int64_t m_psi,
                          std::int64_t m_psi_hat) {
  require_hypotheses(f);
  ShaLower out;
  out.raw = Rat(-std::min(s1, s2) - 3 * f.d - 1) + Rat(m_psi + m_psi_hat, 2);
  out.raw.canonicalize();
  out.clamped = std::max<std::int64_t>(0, ceil_rat(out.raw));
  return out;
}

TheoremBudget theorem_budget(std::int64_t p, std::int64_t k, std::int64_t n, std::int64_t deg_h) {
  if (p <= 3 || !is_prime(Int(p))) throw ValidationError("p", "p must be a prime greater than 3");
  if (k < 1) throw ValidationError("k", "k must be at least 1");
  if (n < 1) throw ValidationError("n", "n must be at least 1");
  if (deg_h < 1) throw ValidationError("D", "deg(h) must be at least 1");
  TheoremBudget b;
  b.m_threshold = 2 * k + 4 * (n + 3) * deg_h * (p - 1) + 2;
  b.d_max = 2 * (p - 1) * deg_h;
  b.s2_max = n * b.d_max;
  b.sha_guarantee = -b.s2_max - 3 * b.d_max - 1 + ceil_half(b.m_threshold);
  if (b.sha_guarantee < k) throw std::logic_error("budget chain falls short of k");
  return b;
}

DegreeBudget degree_budget(std::int64_t p, std::int64_t c3) {
  if (p <= 3 || !is_prime(Int(p))) throw ValidationError("p", "p must be a prime greater than 3");
  if (c3 < 1) throw ValidationError("c3", "the constant must be positive");
  DegreeBudget b;
  b.deg_h_bound = Int(c3) * p * p * p;
  b.g_bound = 2 * Int(p - 1) * b.deg_h_bound;
  return b;
}

BoundReport advisory_report(const FieldInvariants& f, const BoundInputs& in) {
  f.validate();
  BoundReport r;
  if (!f.totally_imaginary) r.reasons.emplace_back("K has a real embedding");
  if (!f.contains_zeta_p) r.reasons.emplace_back("K does not contain the p-th roots of unity");
  r.hypothesis_ok = r.reasons.empty();
  const Rat d = f.d, cp = f.cp, half_d = Rat(f.d, 2);
  const Rat s1 = in.s1, s2 = in.s2;
  r.selmer_lower = s1 - s2 + cp - half_d;
  r.selmer_upper = s1 + cp - in.m + 3 * half_d;
  r.rank_upper = s1 + s2 + 2 * cp + 3 * d - in.m - in.m_hat - 1;
  const Rat centre = Rat(in.dim_phi) - s1 + s2;
  r.cassels_interval = {centre - (2 * d + 1), centre + (2 * d + 1)};
  r.sum_lower = Rat(std::abs(in.s1 - in.s2)) + 2 * cp - 3 * d - 1;
  r.sha_lower_raw = Rat(-std::min(in.s1, in.s2)) - 3 * d - 1 + Rat(in.m_psi + in.m_psi_hat, 2);
  for (Rat* v : {&r.selmer_lower, &r.selmer_upper, &r.rank_upper, &r.cassels_interval.first,
                 &r.cassels_interval.second, &r.sum_lower, &r.sha_lower_raw})
    v->canonicalize();
  r.sha_lower = std::max<std::int64_t>(0, ceil_rat(r.sha_lower_raw));
  return r;
}

}  // namespace shabound
