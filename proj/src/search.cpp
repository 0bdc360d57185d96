#include "shabound/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace shabound {

namespace {

Poly discriminant_of(const std::array<Poly, 5>& a) {
  const Poly& a1 = a[0];
  const Poly& a2 = a[1];
  const Poly& a3 = a[2];
  const Poly& a4 = a[3];
  const Poly& a6 = a[4];
  const Rat two = 2, four = 4, eight = 8, nine = 9, twenty_seven = 27;
  const Poly b2 = a1 * a1 + a2 * four;
  const Poly b4 = a4 * two + a1 * a3;
  const Poly b6 = a3 * a3 + a6 * four;
  const Poly b8 = a1 * a1 * a6 + a2 * a6 * four - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -(b2 * b2 * b8) - b4 * b4 * b4 * eight - b6 * b6 * twenty_seven + b2 * b4 * b6 * nine;
}

std::array<Poly, 5> tate_ainvs(unsigned p) {
  const Poly x = Poly::x();
  const Poly one = Poly::constant(1);
  if (p == 5) return {one - x, -x, -x, Poly(), Poly()};
  const Poly b = x * x * x - x * x;
  const Poly c = x * x - x;
  return {one - c, -b, -b, Poly(), Poly()};
}

RatAInvariants evaluate(const std::array<Poly, 5>& a, const Rat& b) {
  RatAInvariants out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = a[i](b);
  return out;
}

std::vector<Int> primes_one_mod(unsigned p, std::size_t count) {
  std::vector<Int> out;
  for (Int ell = p + 1; out.size() < count; ell += p)
    if (is_prime(ell)) out.push_back(ell);
  return out;
}

// Classify probe fibers b = root + k*ell for primes ell = 1 mod p dividing
// the factor and no other factor.
std::optional<PrimeSet> probe_role(const FamilySpec& fam, std::size_t index) {
  const Poly& f = fam.factor_polys[index].factor;
  std::optional<PrimeSet> role;
  std::size_t agreeing = 0;
  for (const auto& ell : primes_one_mod(fam.p, 12)) {
    for (const auto& r : modq::roots(f, ell)) {
      for (int k = 0; k < 3 && agreeing < 3; ++k) {
        const Rat b = Rat(r + k * ell);
        bool clean = true;
        for (std::size_t j = 0; j < fam.factor_polys.size(); ++j) {
          if (j == index) continue;
          const Rat v = fam.factor_polys[j].factor(b);
          if (v == 0 || v.get_num() % ell == 0) clean = false;
        }
        if (!clean || fam.content % ell == 0) continue;
        try {
          const Fiber fb = fiber(fam, b);
          const DescentSets sets = classify_primes(fb.curve, fb.point, fam.p);
          std::optional<PrimeSet> seen;
          if (std::find(sets.S1.begin(), sets.S1.end(), ell) != sets.S1.end()) seen = PrimeSet::S1;
          if (std::find(sets.S2.begin(), sets.S2.end(), ell) != sets.S2.end()) seen = PrimeSet::S2;
          if (!seen) continue;
          if (role && *role != *seen)
            throw std::logic_error("factor " + f.str() + " has inconsistent probe roles");
          role = seen;
          ++agreeing;
        } catch (const Degenerate&) {
        }
      }
    }
    if (agreeing >= 3) break;
  }
  return role;
}

std::optional<Int> smallest_root_for_role(const FamilySpec& fam, PrimeSet role, const Int& ell) {
  std::optional<Int> best;
  for (const auto& fp : fam.factor_polys) {
    if (fp.role != role) continue;
    const auto roots = modq::roots(fp.factor, ell);
    if (!roots.empty() && (!best || roots.front() < *best)) best = roots.front();
  }
  return best;
}

Int height(const Rat& b) { return std::max(Int(abs(b.get_num())), Int(b.get_den())); }

std::string landed_in(const DescentSets& sets, const Int& q) {
  if (std::find(sets.S1.begin(), sets.S1.end(), q) != sets.S1.end()) return "S1";
  if (std::find(sets.S2.begin(), sets.S2.end(), q) != sets.S2.end()) return "S2";
  for (const auto& ex : sets.excluded)
    if (ex.prime == q) return to_string(ex.reason);
  return "absent";
}

}  // namespace

FamilySpec tate_normal_family(unsigned p) {
  if (p != 5 && p != 7) throw ValidationError("p", "families exist for p = 5 and p = 7");
  FamilySpec fam;
  fam.p = p;
  fam.parameter_name = p == 5 ? "b" : "t";
  fam.ainvs = tate_ainvs(p);
  fam.discriminant = discriminant_of(fam.ainvs);
  const IntegerFactorization fac = factor_integer_poly(fam.discriminant);
  fam.content = fac.content;
  for (const auto& f : fac.factors) fam.factor_polys.push_back({f.factor, f.multiplicity, std::nullopt});
  for (std::size_t i = 0; i < fam.factor_polys.size(); ++i) fam.factor_polys[i].role = probe_role(fam, i);
  return fam;
}

Fiber fiber(const FamilySpec& family, const Rat& b) {
  if (family.discriminant(b) == 0)
    throw Degenerate("discriminant vanishes at " + family.parameter_name + " = " + b.get_str());
  Transform scale;
  const Curve integral = make_integral(evaluate(family.ainvs, b), &scale);
  const MinimalModel mm = minimal_model(integral);
  Fiber f;
  f.parameter = b;
  f.curve = mm.curve;
  f.transform = scale.then(mm.transform);
  f.point = apply(f.transform, Point::affine(0, 0));
  return f;
}

ConstructedParameter construct_parameter(const FamilySpec& family, const SearchConstraints& c) {
  const unsigned p = family.p;
  std::vector<Congruence> congruences;
  std::vector<Int> seen;
  auto check = [&](const Int& ell, const char* field) {
    if (ell < 2 || !is_prime(ell)) throw ValidationError(field, ell.get_str() + " is not prime");
    if (ell == p) throw ValidationError(field, ell.get_str() + " lies above p");
    if (std::find(seen.begin(), seen.end(), ell) != seen.end())
      throw ValidationError(field, ell.get_str() + " is forced more than once");
    seen.push_back(ell);
  };
  for (const auto& ell : c.force_s1) {
    check(ell, "force_s1");
    const auto root = smallest_root_for_role(family, PrimeSet::S1, ell);
    if (!root) throw UnreachableCusp("no S1 factor has a root modulo " + ell.get_str());
    congruences.push_back({*root, ell});
  }
  for (const auto& ell : c.force_s2) {
    check(ell, "force_s2");
    const auto root = smallest_root_for_role(family, PrimeSet::S2, ell);
    if (!root) throw UnreachableCusp("no S2 factor has a root modulo " + ell.get_str());
    if (ell % p != 1) throw ValidationError("force_s2", ell.get_str() + " is not 1 mod " + std::to_string(p));
    congruences.push_back({*root, ell});
  }
  ConstructedParameter out;
  out.modulus = 1;
  for (const auto& cg : congruences) out.modulus *= cg.modulus;
  out.b = congruences.empty() ? Int(0) : crt_solve(congruences);
  return out;
}

AlmostPrimeResult almost_prime_filter(const std::vector<Int>& values, std::size_t omega_max,
                                      const FactorBudget& budget) {
  AlmostPrimeResult out;
  for (const auto& v : values) {
    if (v == 0) throw ValidationError("values", "values must be nonzero");
    const auto omega = count_distinct_prime_factors(v, budget);
    if (const auto* n = std::get_if<std::size_t>(&omega)) {
      if (*n <= omega_max) out.kept.push_back(v);
    } else {
      ++out.incomplete;
    }
  }
  return out;
}

std::vector<Rat> scan_parameters(const FamilySpec& family, const SearchConstraints& c) {
  std::vector<Rat> out;
  const bool forced = !c.force_s1.empty() || !c.force_s2.empty();
  const std::size_t budget = c.scan_budget.value_or(forced ? 1000 : SIZE_MAX);
  if (budget == 0) return out;
  if (forced) {
    const auto cp = construct_parameter(family, c);
    for (std::size_t k = 0; k < budget; ++k) out.emplace_back(cp.b + cp.modulus * Int(k));
    return out;
  }
  if (c.max_denominator == 0) throw ValidationError("max_denominator", "must be at least 1");
  if (c.parameter_box < 0) throw ValidationError("parameter_box", "must be nonnegative");
  auto push = [&](const Rat& b) {
    if (out.size() < budget) out.push_back(b);
  };
  push(Rat(0));
  for (Int n = 1; n <= c.parameter_box && out.size() < budget; ++n) {
    push(Rat(n));
    push(Rat(-n));
  }
  for (unsigned d = 2; d <= c.max_denominator && out.size() < budget; ++d) {
    for (Int n = 1; n <= c.parameter_box * d && out.size() < budget; ++n) {
      if (gcd(n, Int(d)) != 1) continue;
      Rat b(n, d);
      push(b);
      push(-b);
    }
  }
  return out;
}

SearchRow analyze_fiber(const FamilySpec& family, const Fiber& f, const SearchConstraints& c,
                        const FactorBudget& budget) {
  SearchRow row;
  row.b = f.parameter;
  row.curve = f.curve;
  const unsigned p = family.p;
  const Int disc = abs(f.curve.discriminant());
  const auto fac = factor(disc, budget);
  if (std::holds_alternative<Incomplete>(fac)) throw IncompleteFactorization(std::get<Incomplete>(fac).cofactor);
  const auto primes = std::get<Factorization>(fac).primes();

  std::size_t omega = 0;
  for (const auto& q : primes) {
    const bool forced = std::find(c.force_s1.begin(), c.force_s1.end(), q) != c.force_s1.end() ||
                        std::find(c.force_s2.begin(), c.force_s2.end(), q) != c.force_s2.end();
    if (!forced) ++omega;
  }
  row.omega_of_cofactor = omega;

  try {
    const IsogenyData iso = velu_quotient(f.curve, f.point, p, budget);
    row.codomain = iso.codomain;
    row.sets = classify_primes(iso, budget, primes);
    row.m_phi = descent_m(row.sets);
    const IsogenyData dual = dual_isogeny(iso, budget);
    if (!(dual.codomain == f.curve)) throw std::logic_error("dual isogeny does not return to the fiber");
    const DescentSets dual_sets_direct = classify_primes(dual, budget, primes);
    const DescentSets swapped = dual_sets(row.sets);
    row.dual_swap_ok = dual_sets_direct.S1 == swapped.S1 && dual_sets_direct.S2 == swapped.S2;
    if (!row.dual_swap_ok) row.error = "dual_swap_failed";
    row.m_phihat = descent_m(dual_sets_direct);
    row.sandwich_phi = selmer_sandwich(row.sets);
    row.sandwich_phihat = selmer_sandwich(dual_sets_direct);
    BoundInputs in;
    in.s1 = static_cast<std::int64_t>(row.sets.S1.size());
    in.s2 = static_cast<std::int64_t>(row.sets.S2.size());
    in.m = static_cast<std::int64_t>(row.m_phi);
    in.m_hat = static_cast<std::int64_t>(row.m_phihat);
    in.m_psi = in.m;
    in.m_psi_hat = in.m_hat;
    in.dim_phi = static_cast<std::int64_t>(row.sandwich_phi.upper_dim);
    row.bounds = advisory_report(FieldInvariants::rationals(), in);
  } catch (const ClassifierDisagreement& e) {
    row.error = std::string("classifier_disagreement: ") + e.what();
  }

  auto record = [&](const Int& q, const char* intended) {
    ForcedPrime fp;
    fp.prime = q;
    fp.intended = intended;
    fp.divides_discriminant = disc % q == 0;
    fp.landed = row.error ? "unknown" : landed_in(row.sets, q);
    if (!fp.divides_discriminant || fp.landed != fp.intended) row.forcing_ok = false;
    row.forced.push_back(std::move(fp));
  };
  for (const auto& q : c.force_s1) record(q, "S1");
  for (const auto& q : c.force_s2) record(q, "S2");
  return row;
}

SearchReport scan(const FamilySpec& family, const SearchConstraints& c, unsigned jobs,
                  const FactorBudget& budget, const ProgressFn& progress) {
  const std::vector<Rat> params = scan_parameters(family, c);
  enum class Outcome { row, degenerate, incomplete };
  struct Slot {
    Outcome outcome = Outcome::degenerate;
    SearchRow row;
  };
  std::vector<Slot> slots(params.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= params.size()) return;
      try {
        const Fiber f = fiber(family, params[i]);
        slots[i].row = analyze_fiber(family, f, c, budget);
        slots[i].outcome = Outcome::row;
      } catch (const Degenerate&) {
        slots[i].outcome = Outcome::degenerate;
      } catch (const IncompleteFactorization&) {
        slots[i].outcome = Outcome::incomplete;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
      const std::size_t n = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(n, params.size());
      }
    }
  };
  const unsigned workers = std::max(1u, jobs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SearchReport report;
  report.p = family.p;
  report.parameters_tried = params.size();
  for (auto& slot : slots) {
    switch (slot.outcome) {
      case Outcome::degenerate: ++report.degenerate; break;
      case Outcome::incomplete: ++report.incomplete; break;
      case Outcome::row:
        if (c.omega_max && slot.row.omega_of_cofactor > *c.omega_max) {
          ++report.filtered_by_omega;
        } else {
          report.rows.push_back(std::move(slot.row));
        }
        break;
    }
  }
  auto key_gap = [](const SearchRow& r) {
    const auto a = r.sets.S1.size(), b = r.sets.S2.size();
    return a > b ? a - b : b - a;
  };
  std::sort(report.rows.begin(), report.rows.end(), [&](const SearchRow& x, const SearchRow& y) {
    if (key_gap(x) != key_gap(y)) return key_gap(x) > key_gap(y);
    if (x.m_phi != y.m_phi) return x.m_phi > y.m_phi;
    const Int hx = height(x.b), hy = height(y.b);
    if (hx != hy) return hx < hy;
    return x.b < y.b;
  });
  return report;
}

}  // namespace shabound
