#include "shabound/pipeline.hpp"

namespace shabound {

namespace {

struct Directions {
  IsogenyData iso;
  IsogenyData dual;
  DescentSets sets;
  DescentSets dual_sets_direct;
  bool dual_swap_ok = false;
};

Directions both_directions(IsogenyData iso, const FactorBudget& budget, const std::vector<Int>& primes) {
  Directions d;
  d.sets = classify_primes(iso, budget, primes);
  d.dual = dual_isogeny(iso, budget);
  d.dual_sets_direct = classify_primes(d.dual, budget, primes);
  const DescentSets swapped = dual_sets(d.sets);
  d.dual_swap_ok = swapped.S1 == d.dual_sets_direct.S1 && swapped.S2 == d.dual_sets_direct.S2;
  d.iso = std::move(iso);
  return d;
}

struct Prepared {
  MinimalModel mm;
  Point point;
  std::vector<Int> primes;
};

Prepared prepare(const AnalyzeRequest& req, const FactorBudget& budget) {
  Prepared out;
  out.mm = minimal_model(req.curve, budget);
  if (!on_curve(req.curve, req.point)) throw ValidationError("point", "point is not on the curve");
  out.point = apply(out.mm.transform, req.point);
  out.primes = factor_complete(abs(out.mm.curve.discriminant()), budget).primes();
  return out;
}

}  // namespace

unsigned parse_degree(const Json& j) {
  const Int p = parse_int(j, "p");
  if (p != 5 && p != 7) throw ValidationError("p", "p must be 5 or 7");
  return static_cast<unsigned>(p.get_ui());
}

Json run_analyze(const AnalyzeRequest& req, const FactorBudget& budget) {
  const Prepared prep = prepare(req, budget);
  const Directions phi = both_directions(velu_quotient(prep.mm.curve, prep.point, req.p, budget), budget, prep.primes);
  const std::size_t m_phi = descent_m(phi.sets);
  const std::size_t m_phihat = descent_m(phi.dual_sets_direct);
  const SandwichResult sw_phi = selmer_sandwich(phi.sets);
  const SandwichResult sw_phihat = selmer_sandwich(phi.dual_sets_direct);

  Json out = Json::object();
  out["command"] = "analyze";
  out["p"] = encode(static_cast<std::size_t>(req.p));
  out["input_curve"] = encode(req.curve);
  out["minimal_model"] = encode(prep.mm.curve);
  out["transform"] = encode(prep.mm.transform);
  out["point"] = encode(prep.point);
  out["minimal_discriminant"] = encode(prep.mm.curve.discriminant());
  out["codomain"] = encode(phi.iso.codomain);
  out["codomain_discriminant"] = encode(phi.iso.codomain.discriminant());
  out["kernel_x_poly"] = encode(phi.iso.kernel_x_poly);
  out["dual_kernel_x_poly"] = encode(phi.dual.kernel_x_poly);
  out["phi"] = encode(phi.sets);
  out["phihat"] = encode(phi.dual_sets_direct);
  out["dual_swap_ok"] = phi.dual_swap_ok;
  out["m_phi"] = encode(m_phi);
  out["m_phihat"] = encode(m_phihat);
  out["sandwich_phi"] = encode(sw_phi);
  out["sandwich_phihat"] = encode(sw_phihat);

  BoundInputs in;
  in.s1 = static_cast<std::int64_t>(phi.sets.S1.size());
  in.s2 = static_cast<std::int64_t>(phi.sets.S2.size());
  in.m = static_cast<std::int64_t>(m_phi);
  in.m_hat = static_cast<std::int64_t>(m_phihat);
  in.m_psi = in.m;
  in.m_psi_hat = in.m_hat;
  in.dim_phi = static_cast<std::int64_t>(sw_phi.upper_dim);
  std::string psi_source = "phi";
  if (req.second_kernel) {
    const Directions psi =
        both_directions(velu_from_kernel_poly(prep.mm.curve, *req.second_kernel, req.p, budget), budget, prep.primes);
    const std::size_t m_psi = descent_m(psi.sets);
    const std::size_t m_psihat = descent_m(psi.dual_sets_direct);
    Json second = Json::object();
    second["kernel_x_poly"] = encode(psi.iso.kernel_x_poly);
    second["codomain"] = encode(psi.iso.codomain);
    second["psi"] = encode(psi.sets);
    second["psihat"] = encode(psi.dual_sets_direct);
    second["dual_swap_ok"] = psi.dual_swap_ok;
    second["m_psi"] = encode(m_psi);
    second["m_psihat"] = encode(m_psihat);
    out["second_isogeny"] = std::move(second);
    in.m_psi = static_cast<std::int64_t>(m_psi);
    in.m_psi_hat = static_cast<std::int64_t>(m_psihat);
    psi_source = "second_isogeny";
  }
  Json bounds = encode(advisory_report(FieldInvariants::rationals(), in));
  bounds["field"] = encode(FieldInvariants::rationals());
  bounds["dim_phi_source"] = "sandwich_phi.upper_dim";
  bounds["m_psi_source"] = psi_source;
  out["bounds"] = std::move(bounds);
  return out;
}

Json run_sandwich(const AnalyzeRequest& req, const FactorBudget& budget) {
  const Prepared prep = prepare(req, budget);
  const Directions phi = both_directions(velu_quotient(prep.mm.curve, prep.point, req.p, budget), budget, prep.primes);
  Json out = Json::object();
  out["command"] = "sandwich";
  out["p"] = encode(static_cast<std::size_t>(req.p));
  out["minimal_model"] = encode(prep.mm.curve);
  out["phi"] = encode(phi.sets);
  out["phihat"] = encode(phi.dual_sets_direct);
  out["sandwich_phi"] = encode(selmer_sandwich(phi.sets));
  out["sandwich_phihat"] = encode(selmer_sandwich(phi.dual_sets_direct));
  return out;
}

Json run_matrix(unsigned p, const std::vector<Int>& s1, const std::vector<Int>& s2) {
  Json out = Json::object();
  out["command"] = "matrix";
  const Json body = encode(character_matrix(p, s1, s2));
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

Json run_bounds(const BoundsRequest& req) {
  req.field.validate();
  BoundInputs in;
  in.s1 = req.s1;
  in.s2 = req.s2;
  in.m = req.m;
  in.m_hat = req.m_hat;
  in.m_psi = req.m_psi.value_or(req.m);
  in.m_psi_hat = req.m_psi_hat.value_or(req.m_hat);
  in.dim_phi = req.dim_phi.value_or(0);
  for (auto v : {in.s1, in.s2, in.m, in.m_hat, in.m_psi, in.m_psi_hat})
    if (v < 0) throw ValidationError("bounds", "set sizes and ranks must be nonnegative");
  Json out = Json::object();
  out["command"] = "bounds";
  out["field"] = encode(req.field);
  Json inputs = Json::object();
  inputs["s1"] = encode(in.s1);
  inputs["s2"] = encode(in.s2);
  inputs["m"] = encode(in.m);
  inputs["m_hat"] = encode(in.m_hat);
  inputs["m_psi"] = encode(in.m_psi);
  inputs["m_psi_hat"] = encode(in.m_psi_hat);
  inputs["dim_phi"] = encode(in.dim_phi);
  out["inputs"] = std::move(inputs);
  const BoundReport r = advisory_report(req.field, in);
  const Json body = encode(r);
  for (const auto& [k, v] : body.items()) out[k] = v;
  if (r.hypothesis_ok) {
    out["dim_ksp_s1"] = encode(dim_ksp(req.field, in.s1));
  }
  if (req.selmer_sum || req.rank) {
    if (!req.selmer_sum || !req.rank) throw ValidationError("sum", "--sum and --rank go together");
    out["sha_from_sum"] = encode(sha_from_sum(*req.selmer_sum, *req.rank));
  }
  return out;
}

Json run_budget(std::int64_t p, std::int64_t k, std::int64_t n, std::int64_t deg_h, std::int64_t c3) {
  Json out = Json::object();
  out["command"] = "budget";
  Json inputs = Json::object();
  inputs["p"] = encode(p);
  inputs["k"] = encode(k);
  inputs["n"] = encode(n);
  inputs["D"] = encode(deg_h);
  out["inputs"] = std::move(inputs);
  out["theorem_budget"] = encode(theorem_budget(p, k, n, deg_h));
  Json deg = encode(degree_budget(p, c3));
  deg["c3"] = encode(c3);
  out["degree_budget"] = std::move(deg);
  return out;
}

Json run_search(const Json& config, unsigned jobs, const FactorBudget& budget, const ProgressFn& progress) {
  const unsigned p = config.contains("p") ? parse_degree(config["p"]) : 5u;
  const SearchConstraints c = parse_constraints(config);
  const FamilySpec family = tate_normal_family(p);
  const SearchReport report = scan(family, c, jobs, budget, progress);
  Json out = Json::object();
  out["command"] = "search";
  Json fam = Json::object();
  fam["p"] = encode(static_cast<std::size_t>(p));
  fam["parameter"] = family.parameter_name;
  Json factors = Json::array();
  for (const auto& f : family.factor_polys) {
    Json item = Json::object();
    item["factor"] = encode(f.factor);
    item["multiplicity"] = encode(static_cast<std::size_t>(f.multiplicity));
    item["role"] = f.role ? to_string(*f.role) : "unknown";
    factors.push_back(std::move(item));
  }
  fam["factor_polys"] = std::move(factors);
  out["family"] = std::move(fam);
  Json cons = Json::object();
  cons["force_s1"] = encode(c.force_s1);
  cons["force_s2"] = encode(c.force_s2);
  cons["omega_max"] = c.omega_max ? encode(*c.omega_max) : Json(nullptr);
  cons["scan_budget"] = c.scan_budget ? encode(*c.scan_budget) : Json(nullptr);
  cons["parameter_box"] = encode(c.parameter_box);
  cons["max_denominator"] = encode(static_cast<std::size_t>(c.max_denominator));
  out["constraints"] = std::move(cons);
  if (!c.force_s1.empty() || !c.force_s2.empty()) {
    const auto cp = construct_parameter(family, c);
    Json constructed = Json::object();
    constructed["b"] = encode(cp.b);
    constructed["modulus"] = encode(cp.modulus);
    out["constructed_parameter"] = std::move(constructed);
  }
  const Json body = encode(report);
  for (const auto& [k, v] : body.items())
    if (k != "p") out[k] = v;
  return out;
}

}  // namespace shabound
