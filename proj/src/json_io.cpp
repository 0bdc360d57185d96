#include "shabound/json_io.hpp"

#include <sstream>

namespace shabound {

namespace {

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_decimal(std::string s, const std::string& field) {
  if (!is_decimal(s)) throw ValidationError(field, "not an integer: \"" + s + "\"");
  if (s[0] == '+') s.erase(0, 1);
  return Int(s, 10);
}

Json encode_sizes(const std::vector<std::size_t>& xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(encode(x));
  return a;
}

Json encode_basis(const std::vector<FpVector>& basis) {
  Json a = Json::array();
  for (const auto& v : basis) {
    Json row = Json::array();
    for (auto x : v) row.push_back(encode(static_cast<std::size_t>(x)));
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace

Json encode(const Int& n) { return n.get_str(); }

Json encode(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return c.get_str();
}

Json encode(std::size_t n) { return std::to_string(n); }
Json encode(std::int64_t n) { return std::to_string(n); }

Json encode(const Curve& e) {
  Json a = Json::array();
  for (const auto& c : e.ainvs()) a.push_back(encode(c));
  return a;
}

Json encode(const Point& pt) {
  if (pt.infinity) return "O";
  return Json::array({encode(pt.x), encode(pt.y)});
}

Json encode(const Transform& w) {
  Json j = Json::object();
  j["u"] = encode(w.u);
  j["r"] = encode(w.r);
  j["s"] = encode(w.s);
  j["t"] = encode(w.t);
  return j;
}

Json encode(const Poly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(encode(c));
  return a;
}

Json encode(const std::vector<Int>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(encode(x));
  return a;
}

Json encode(const DescentSets& sets) {
  Json j = Json::object();
  j["p"] = encode(static_cast<std::size_t>(sets.p));
  j["S1"] = encode(sets.S1);
  j["S2"] = encode(sets.S2);
  j["S3"] = encode(sets.S3);
  Json ex = Json::array();
  for (const auto& e : sets.excluded) {
    Json row = Json::object();
    row["prime"] = encode(e.prime);
    row["reason"] = to_string(e.reason);
    ex.push_back(std::move(row));
  }
  j["excluded"] = std::move(ex);
  Json ev = Json::array();
  for (const auto& e : sets.evidence) {
    Json row = Json::object();
    row["prime"] = encode(e.prime);
    row["singular_point_test"] = to_string(e.singular_point_test);
    row["valuation_ratio_test"] = to_string(e.valuation_ratio_test);
    row["v_disc_domain"] = encode(static_cast<std::size_t>(e.v_disc_domain));
    row["v_disc_codomain"] = encode(static_cast<std::size_t>(e.v_disc_codomain));
    ev.push_back(std::move(row));
  }
  j["evidence"] = std::move(ev);
  return j;
}

Json encode(const CharacterMatrixSpec& spec) {
  Json j = Json::object();
  j["p"] = encode(static_cast<std::size_t>(spec.p));
  j["col_basis"] = encode(spec.col_basis);
  j["row_conditions"] = encode(spec.row_conditions);
  Json rows = Json::array();
  for (std::size_t r = 0; r < spec.matrix.rows(); ++r) {
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < spec.matrix.cols(); ++c) row.push_back(spec.matrix.at(r, c));
    rows.push_back(encode_sizes(row));
  }
  j["entries"] = std::move(rows);
  j["rank"] = encode(rank(spec.matrix));
  return j;
}

Json encode(const SandwichResult& s) {
  Json j = Json::object();
  j["lower_dim"] = encode(s.lower_dim);
  j["upper_dim"] = encode(s.upper_dim);
  j["lower_support"] = encode(s.lower_support);
  j["upper_support"] = encode(s.upper_support);
  j["lower_basis"] = encode_basis(s.lower_basis);
  j["upper_basis"] = encode_basis(s.upper_basis);
  return j;
}

Json encode(const BoundReport& r) {
  Json j = Json::object();
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["advisory"] = r.hypothesis_ok ? "" : "bound hypotheses not met; values are advisory";
  j["reasons"] = r.reasons;
  j["selmer_lower"] = encode(r.selmer_lower);
  j["selmer_upper"] = encode(r.selmer_upper);
  j["rank_upper"] = encode(r.rank_upper);
  j["cassels_interval"] = Json::array({encode(r.cassels_interval.first), encode(r.cassels_interval.second)});
  j["sum_lower"] = encode(r.sum_lower);
  j["sha_lower_raw"] = encode(r.sha_lower_raw);
  j["sha_lower"] = encode(r.sha_lower);
  return j;
}

Json encode(const FieldInvariants& f) {
  Json j = Json::object();
  j["d"] = encode(f.d);
  j["cp"] = encode(f.cp);
  j["totally_imaginary"] = f.totally_imaginary;
  j["contains_zeta_p"] = f.contains_zeta_p;
  return j;
}

Json encode(const TheoremBudget& b) {
  Json j = Json::object();
  j["m_threshold"] = encode(b.m_threshold);
  j["d_max"] = encode(b.d_max);
  j["s2_max"] = encode(b.s2_max);
  j["sha_guarantee"] = encode(b.sha_guarantee);
  return j;
}

Json encode(const DegreeBudget& b) {
  Json j = Json::object();
  j["deg_h_bound"] = encode(b.deg_h_bound);
  j["g_bound"] = encode(b.g_bound);
  return j;
}

Json encode(const SearchRow& row) {
  Json j = Json::object();
  j["b"] = encode(row.b);
  j["curve"] = encode(row.curve);
  if (row.error) {
    j["error"] = *row.error;
    return j;
  }
  j["codomain"] = encode(row.codomain);
  j["S1"] = encode(row.sets.S1);
  j["S2"] = encode(row.sets.S2);
  j["S3"] = encode(row.sets.S3);
  Json ex = Json::array();
  for (const auto& e : row.sets.excluded) {
    Json item = Json::object();
    item["prime"] = encode(e.prime);
    item["reason"] = to_string(e.reason);
    ex.push_back(std::move(item));
  }
  j["excluded"] = std::move(ex);
  j["m_phi"] = encode(row.m_phi);
  j["m_phihat"] = encode(row.m_phihat);
  j["sandwich_phi"] = Json::array({encode(row.sandwich_phi.lower_dim), encode(row.sandwich_phi.upper_dim)});
  j["sandwich_phihat"] =
      Json::array({encode(row.sandwich_phihat.lower_dim), encode(row.sandwich_phihat.upper_dim)});
  j["dual_swap_ok"] = row.dual_swap_ok;
  j["bounds"] = encode(row.bounds);
  j["omega_of_cofactor"] = encode(row.omega_of_cofactor);
  if (!row.forced.empty()) {
    Json forced = Json::array();
    for (const auto& f : row.forced) {
      Json item = Json::object();
      item["prime"] = encode(f.prime);
      item["intended"] = f.intended;
      item["landed"] = f.landed;
      item["divides_discriminant"] = f.divides_discriminant;
      forced.push_back(std::move(item));
    }
    j["forced"] = std::move(forced);
    j["forcing_ok"] = row.forcing_ok;
  }
  return j;
}

Json encode(const SearchReport& report) {
  Json j = Json::object();
  j["p"] = encode(static_cast<std::size_t>(report.p));
  j["parameters_tried"] = encode(report.parameters_tried);
  j["degenerate"] = encode(report.degenerate);
  j["incomplete"] = encode(report.incomplete);
  j["filtered_by_omega"] = encode(report.filtered_by_omega);
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(encode(r));
  j["rows"] = std::move(rows);
  return j;
}

Int parse_int(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()), 10);
    return Int(std::to_string(j.get<std::int64_t>()), 10);
  }
  if (j.is_string()) return parse_decimal(j.get<std::string>(), field);
  throw ValidationError(field, "expected an integer or a decimal string");
}

Rat parse_rat(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rat(parse_int(j, field));
  if (!j.is_string()) throw ValidationError(field, "expected a rational \"n/d\"");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_decimal(s, field));
  const Int num = parse_decimal(s.substr(0, slash), field);
  const Int den = parse_decimal(s.substr(slash + 1), field);
  if (den == 0) throw ValidationError(field, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Curve parse_curve(const Json& j) {
  if (!j.is_array() || j.size() != 5) throw ValidationError("curve", "expected [a1,a2,a3,a4,a6]");
  AInvariants a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = parse_int(j[i], "curve");
  try {
    return Curve::from_ainvs(a);
  } catch (const SingularModel& e) {
    throw ValidationError("curve", e.what());
  }
}

Point parse_point(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "O") return Point::at_infinity();
  if (!j.is_array() || j.size() != 2) throw ValidationError("point", "expected [\"x\",\"y\"] or \"O\"");
  return Point::affine(parse_rat(j[0], "point"), parse_rat(j[1], "point"));
}

Poly parse_poly(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ValidationError(field, "expected a coefficient array");
  std::vector<Rat> cs;
  for (const auto& c : j) cs.push_back(parse_rat(c, field));
  return Poly(std::move(cs));
}

std::vector<Int> parse_int_list(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of integers");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(parse_int(x, field));
  return out;
}

std::vector<Int> parse_csv_ints(const std::string& s, const std::string& field) {
  std::vector<Int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_decimal(item, field));
  return out;
}

SearchConstraints parse_constraints(const Json& j) {
  if (!j.is_object()) throw ValidationError("config", "expected a JSON object");
  static const char* kKnown[] = {"p",         "force_s1",      "force_s2",       "omega_max",
                                 "scan_budget", "parameter_box", "max_denominator"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw ValidationError(key, "unknown config key");
  }
  auto size_field = [&](const char* key) -> std::size_t {
    const Int v = parse_int(j.at(key), key);
    if (v < 0 || !v.fits_ulong_p()) throw ValidationError(key, "must be a nonnegative machine-size integer");
    return v.get_ui();
  };
  SearchConstraints c;
  if (j.contains("force_s1")) c.force_s1 = parse_int_list(j["force_s1"], "force_s1");
  if (j.contains("force_s2")) c.force_s2 = parse_int_list(j["force_s2"], "force_s2");
  if (j.contains("omega_max")) c.omega_max = size_field("omega_max");
  if (j.contains("scan_budget")) c.scan_budget = size_field("scan_budget");
  if (j.contains("parameter_box")) c.parameter_box = Int(size_field("parameter_box"));
  if (j.contains("max_denominator")) {
    const std::size_t d = size_field("max_denominator");
    if (d < 1 || d > 1000) throw ValidationError("max_denominator", "must lie in [1, 1000]");
    c.max_denominator = static_cast<unsigned>(d);
  }
  return c;
}

Json parse_json_text(const std::string& text, const std::string& field) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(field, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace shabound
