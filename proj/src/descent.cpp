#include "shabound/descent.hpp"

#include <algorithm>
#include <map>

namespace shabound {

std::string to_string(PrimeSet s) { return s == PrimeSet::S1 ? "S1" : "S2"; }

std::string to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::nonsplit: return "nonsplit";
    case ExclusionReason::additive: return "additive";
    case ExclusionReason::above_p_overlap: return "above_p_overlap";
  }
  return "?";
}

namespace {

bool kernel_poly_at_node(const Poly& psi, const Int& q, const FqPoint& node) {
  for (const auto& c : psi.coeffs())
    if (c.get_den() % q == 0) return false;
  // psi = (x - x_s)^n mod q
  const Poly target = pow(Poly::linear_root(Rat(node.x)), static_cast<unsigned>(psi.degree()));
  return modq::reduce(psi, q) == modq::reduce(target, q);
}

PrimeSet valuation_verdict(unsigned vd, unsigned vc, unsigned p, const Int& q) {
  if (vc == p * vd) return PrimeSet::S2;
  if (p * vc == vd) return PrimeSet::S1;
  throw ClassifierDisagreement("discriminant valuations " + std::to_string(vd) + " -> " + std::to_string(vc) +
                               " at " + q.get_str() + " fit neither ratio");
}

void check_prime_list(const char* field, std::span<const Int> primes, unsigned p) {
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Int& q = primes[i];
    if (q < 2 || !is_prime(q)) throw ValidationError(field, q.get_str() + " is not prime");
    if (q == p) throw ValidationError(field, q.get_str() + " lies above p");
    for (std::size_t j = 0; j < i; ++j)
      if (primes[j] == q) throw ValidationError(field, q.get_str() + " is listed twice");
  }
}

// Rows of characters at the given primes over the given support.
void append_character_rows(std::vector<std::vector<std::int64_t>>& rows, std::span<const Int> ells,
                           std::span<const Int> support, unsigned p) {
  for (const auto& ell : ells) {
    if (ell % p != 1) continue;
    const ResidueCharacter chi(ell, p);
    std::vector<std::int64_t> row;
    for (const auto& q : support) row.push_back(character_eval(chi, q));
    rows.push_back(std::move(row));
  }
}

}  // namespace

DescentSets classify_primes(const IsogenyData& iso, const FactorBudget& budget,
                            std::optional<std::vector<Int>> bad_primes) {
  const Curve& e = iso.domain;
  const unsigned p = iso.p;
  const Int disc = abs(e.discriminant());
  if (!bad_primes) bad_primes = factor_complete(disc, budget).primes();
  std::sort(bad_primes->begin(), bad_primes->end());

  DescentSets sets;
  sets.p = p;
  sets.S3 = {Int(p)};
  for (const auto& q : *bad_primes) {
    const unsigned vd = valuation(disc, q);
    if (vd == 0) throw ValidationError("bad_primes", q.get_str() + " does not divide the discriminant");
    const ReductionData red = reduction_at(e, q);
    if (red.v_disc != vd) throw ValidationError("curve", "model is not minimal at " + q.get_str());
    if (q == p) {
      sets.excluded.push_back({q, ExclusionReason::above_p_overlap});
      continue;
    }
    if (red.kind == ReductionKind::additive) {
      sets.excluded.push_back({q, ExclusionReason::additive});
      continue;
    }
    if (red.kind == ReductionKind::nonsplit_multiplicative) {
      sets.excluded.push_back({q, ExclusionReason::nonsplit});
      continue;
    }
    bool at_node;
    if (iso.kernel_gen) {
      at_node = reduces_to_singular_point(e, *iso.kernel_gen, q);
    } else {
      at_node = kernel_poly_at_node(iso.kernel_x_poly, q, singular_point(e, q));
    }
    const PrimeSet sp = at_node ? PrimeSet::S1 : PrimeSet::S2;
    const unsigned vc = valuation(iso.codomain.discriminant(), q);
    const PrimeSet vr = valuation_verdict(vd, vc, p, q);
    if (sp != vr)
      throw ClassifierDisagreement("at " + q.get_str() + ": singular-point test says " + to_string(sp) +
                                   ", valuation ratio says " + to_string(vr));
    (sp == PrimeSet::S1 ? sets.S1 : sets.S2).push_back(q);
    sets.evidence.push_back({q, sp, vr, vd, vc});
  }
  if (iso.kernel_gen) {
    for (const auto& ell : sets.S2)
      if (ell % p != 1)
        throw ClassifierDisagreement("S2 prime " + ell.get_str() + " is not 1 mod " + std::to_string(p));
  }
  return sets;
}

DescentSets classify_primes(const Curve& e, const Point& pt, unsigned p, const FactorBudget& budget) {
  return classify_primes(velu_quotient(e, pt, p, budget), budget);
}

DescentSets classify_primes(const Curve& e, const Poly& kernel_poly, unsigned p, const FactorBudget& budget) {
  return classify_primes(velu_from_kernel_poly(e, kernel_poly, p, budget), budget);
}

DescentSets dual_sets(const DescentSets& sets) {
  DescentSets out = sets;
  std::swap(out.S1, out.S2);
  for (auto& ev : out.evidence) {
    auto flip = [](PrimeSet s) { return s == PrimeSet::S1 ? PrimeSet::S2 : PrimeSet::S1; };
    ev.singular_point_test = flip(ev.singular_point_test);
    ev.valuation_ratio_test = flip(ev.valuation_ratio_test);
    std::swap(ev.v_disc_domain, ev.v_disc_codomain);
  }
  return out;
}

CharacterMatrixSpec character_matrix(unsigned p, std::span<const Int> s1, std::span<const Int> s2) {
  if (p < 3 || !is_prime(Int(p))) throw ValidationError("p", "p must be an odd prime");
  check_prime_list("S1", s1, p);
  check_prime_list("S2", s2, p);
  for (const auto& ell : s2) {
    if (std::find(s1.begin(), s1.end(), ell) != s1.end())
      throw ValidationError("S2", ell.get_str() + " is in both S1 and S2");
    if (ell % p != 1)
      throw ValidationError("S2", ell.get_str() + " is not 1 mod " + std::to_string(p));
  }
  CharacterMatrixSpec spec;
  spec.p = p;
  spec.col_basis.assign(s1.begin(), s1.end());
  spec.row_conditions.assign(s2.begin(), s2.end());
  std::vector<std::vector<std::int64_t>> rows;
  append_character_rows(rows, s2, s1, p);
  spec.matrix = FpMatrix::from_rows(p, rows, s1.size());
  for (const auto& q : s1) spec.matrix.col_labels.push_back(q.get_str());
  for (const auto& ell : s2) spec.matrix.row_labels.push_back(ell.get_str());
  return spec;
}

std::size_t m_rank(unsigned p, std::span<const Int> s1, std::span<const Int> s2) {
  return rank(character_matrix(p, s1, s2).matrix);
}

std::size_t descent_m(const DescentSets& sets) {
  std::vector<Int> rows;
  for (const auto& ell : sets.S2)
    if (ell % sets.p == 1) rows.push_back(ell);
  return m_rank(sets.p, sets.S1, rows);
}

SandwichResult selmer_sandwich(const DescentSets& sets) {
  const unsigned p = sets.p;
  SandwichResult out;

  out.upper_support = sets.S1;
  out.upper_support.push_back(Int(p));
  std::vector<std::vector<std::int64_t>> upper_rows;
  append_character_rows(upper_rows, sets.S2, out.upper_support, p);
  const FpMatrix upper = FpMatrix::from_rows(p, upper_rows, out.upper_support.size());
  out.upper_basis = kernel_basis(upper);
  out.upper_dim = out.upper_basis.size();

  out.lower_support = sets.S1;
  std::vector<std::vector<std::int64_t>> lower_rows;
  append_character_rows(lower_rows, sets.S2, out.lower_support, p);
  std::vector<std::int64_t> at_p;
  for (const auto& q : out.lower_support) at_p.push_back(fermat_quotient(Rat(q), p));
  lower_rows.push_back(std::move(at_p));
  const FpMatrix lower = FpMatrix::from_rows(p, lower_rows, out.lower_support.size());
  out.lower_basis = kernel_basis(lower);
  out.lower_dim = out.lower_basis.size();
  return out;
}

SandwichResult selmer_sandwich(const Curve& e, const Point& pt, unsigned p, const FactorBudget& budget) {
  return selmer_sandwich(classify_primes(e, pt, p, budget));
}

}  // namespace shabound
