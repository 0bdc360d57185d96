#include "shabound/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shabound/pipeline.hpp"

namespace shabound {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIncomplete = 3;

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return is_scalar(x); })) {
        os << pad << k << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
      } else {
        os << pad << k << ":\n";
        render_text(v, os, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v)) {
        os << pad << "- " << scalar_text(v) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return is_scalar(x); })) {
        os << pad << "- [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
      } else {
        os << pad << "-\n";
        render_text(v, os, indent + 1);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

void emit(const Json& j, bool json, std::ostream& out) {
  if (json) {
    out << j.dump(2) << "\n";
  } else {
    render_text(j, out, 0);
  }
}

int report_error(bool json, std::ostream& out, std::ostream& err, const std::string& kind,
                 const std::string& field, const std::string& message, int code) {
  if (json) {
    Json e = Json::object();
    e["kind"] = kind;
    if (!field.empty()) e["field"] = field;
    e["message"] = message;
    Json wrapper = Json::object();
    wrapper["error"] = std::move(e);
    out << wrapper.dump(2) << "\n";
  }
  err << "error";
  if (!field.empty()) err << " (" << field << ")";
  err << ": " << message << "\n";
  return code;
}

std::int64_t to_i64(const std::string& s, const std::string& field) {
  const Int v = parse_int(Json(s), field);
  if (!v.fits_slong_p()) throw ValidationError(field, "value out of range");
  return v.get_si();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Descent invariants and Selmer/Sha bounds for rational p-isogenies"};
  app.name("shabound");
  app.require_subcommand(1);
  bool json = false;

  std::string curve_text, point_text, second_kernel_text;
  unsigned p = 5;
  auto* analyze = app.add_subcommand("analyze", "Full descent report for a curve with a point of order p");
  analyze->add_option("--curve", curve_text, "[a1,a2,a3,a4,a6]")->required();
  analyze->add_option("--point", point_text, "[\"x\",\"y\"]")->required();
  analyze->add_option("--p", p, "Isogeny degree");
  analyze->add_option("--second-kernel", second_kernel_text,
                      "Kernel polynomial of a second p-isogeny, coefficients constant term first");
  analyze->add_flag("--json", json, "Emit JSON");

  auto* sandwich = app.add_subcommand("sandwich", "Selmer sandwich in both directions");
  sandwich->add_option("--curve", curve_text, "[a1,a2,a3,a4,a6]")->required();
  sandwich->add_option("--point", point_text, "[\"x\",\"y\"]")->required();
  sandwich->add_option("--p", p, "Isogeny degree");
  sandwich->add_flag("--json", json, "Emit JSON");

  std::string s1_text, s2_text;
  auto* matrix = app.add_subcommand("matrix", "Character matrix and its rank");
  matrix->add_option("--p", p, "Odd prime");
  matrix->add_option("--s1", s1_text, "Comma-separated primes (columns)");
  matrix->add_option("--s2", s2_text, "Comma-separated primes (rows)");
  matrix->add_flag("--json", json, "Emit JSON");

  std::string d_text = "4", cp_text = "0", bs1 = "0", bs2 = "0", m_text = "0", mhat_text = "0";
  std::string mpsi_text, mpsihat_text, dimphi_text, sum_text, rank_text, budget_text;
  bool totally_imaginary = true, zeta = true;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the bound formulas");
  bounds->add_option("--d", d_text, "[K:Q]");
  bounds->add_option("--cp", cp_text, "dim C_K[p]");
  bounds->add_option("--s1", bs1, "#S1");
  bounds->add_option("--s2", bs2, "#S2");
  bounds->add_option("--m", m_text, "m(phi)");
  bounds->add_option("--mhat", mhat_text, "m(phi hat)");
  bounds->add_option("--m-psi", mpsi_text, "m(psi), defaults to m");
  bounds->add_option("--m-psi-hat", mpsihat_text, "m(psi hat), defaults to mhat");
  bounds->add_option("--dim-phi", dimphi_text, "dim S^phi for the Cassels interval");
  bounds->add_option("--sum", sum_text, "Selmer sum dim S^phi + dim S^phihat");
  bounds->add_option("--rank", rank_text, "Rank r for the Selmer-sum bound");
  bounds->add_option("--budget", budget_text, "p,k,n,D for the construction budget");
  bounds->add_option("--totally-imaginary", totally_imaginary, "K has no real embedding");
  bounds->add_option("--zeta", zeta, "K contains the p-th roots of unity");
  bounds->add_flag("--json", json, "Emit JSON");

  std::string k_text = "1", n_text = "1", deg_text = "1", c3_text = "1";
  std::string bp_text = "5";
  auto* budget = app.add_subcommand("budget", "Construction budget and degree budget");
  budget->add_option("--p", bp_text, "Prime > 3");
  budget->add_option("--k", k_text, "Target Sha dimension");
  budget->add_option("--n", n_text, "Almost-prime budget");
  budget->add_option("--D", deg_text, "deg(h)");
  budget->add_option("--c3", c3_text, "Constant in deg(h) <= c3 p^3");
  budget->add_flag("--json", json, "Emit JSON");

  std::string config_path, out_path;
  unsigned jobs = 1;
  bool quiet = false;
  auto* search = app.add_subcommand("search", "Scan a Tate normal form family");
  search->add_option("--config", config_path, "JSON config file")->required();
  search->add_option("--jobs", jobs, "Worker threads");
  search->add_option("--out", out_path, "Write the report to this file");
  search->add_flag("--quiet", quiet, "No progress output");
  search->add_flag("--json", json, "Emit JSON");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(json, out, err, "usage", "", e.what(), kExitInvalid);
  }

  try {
    const FactorBudget fb = FactorBudget::from_env();
    Json result;
    if (analyze->parsed() || sandwich->parsed()) {
      AnalyzeRequest req;
      req.curve = parse_curve(parse_json_text(curve_text, "curve"));
      req.point = parse_point(parse_json_text(point_text, "point"));
      req.p = p;
      if (!second_kernel_text.empty())
        req.second_kernel = parse_poly(parse_json_text(second_kernel_text, "second_kernel"), "second_kernel");
      result = analyze->parsed() ? run_analyze(req, fb) : run_sandwich(req, fb);
    } else if (matrix->parsed()) {
      result = run_matrix(p, parse_csv_ints(s1_text, "s1"), parse_csv_ints(s2_text, "s2"));
    } else if (bounds->parsed()) {
      if (!budget_text.empty()) {
        const auto parts = parse_csv_ints(budget_text, "budget");
        if (parts.size() != 4) throw ValidationError("budget", "expected p,k,n,D");
        auto get = [&](std::size_t i) { return to_i64(parts[i].get_str(), "budget"); };
        result = run_budget(get(0), get(1), get(2), get(3));
      } else {
        BoundsRequest req;
        req.field.d = to_i64(d_text, "d");
        req.field.cp = to_i64(cp_text, "cp");
        req.field.totally_imaginary = totally_imaginary;
        req.field.contains_zeta_p = zeta;
        req.s1 = to_i64(bs1, "s1");
        req.s2 = to_i64(bs2, "s2");
        req.m = to_i64(m_text, "m");
        req.m_hat = to_i64(mhat_text, "mhat");
        if (!mpsi_text.empty()) req.m_psi = to_i64(mpsi_text, "m-psi");
        if (!mpsihat_text.empty()) req.m_psi_hat = to_i64(mpsihat_text, "m-psi-hat");
        if (!dimphi_text.empty()) req.dim_phi = to_i64(dimphi_text, "dim-phi");
        if (!sum_text.empty()) req.selmer_sum = to_i64(sum_text, "sum");
        if (!rank_text.empty()) req.rank = to_i64(rank_text, "rank");
        result = run_bounds(req);
      }
    } else if (budget->parsed()) {
      result = run_budget(to_i64(bp_text, "p"), to_i64(k_text, "k"), to_i64(n_text, "n"), to_i64(deg_text, "D"),
                          to_i64(c3_text, "c3"));
    } else if (search->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("config", "cannot read " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      const Json config = parse_json_text(buf.str(), "config");
      ProgressFn progress;
      if (!quiet) {
        progress = [&err](std::size_t done, std::size_t total) {
          if (done % 1000 == 0 || done == total) err << "scanned " << done << "/" << total << "\n";
        };
      }
      result = run_search(config, jobs, fb, progress);
      if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw ValidationError("out", "cannot write " + out_path);
        emit(result, json, file);
        return kExitOk;
      }
    }
    emit(result, json, out);
    return kExitOk;
  } catch (const ValidationError& e) {
    return report_error(json, out, err, "validation", e.field(), e.what(), kExitInvalid);
  } catch (const UnreachableCusp& e) {
    return report_error(json, out, err, "validation", "force_s2", e.what(), kExitInvalid);
  } catch (const HypothesisViolated& e) {
    return report_error(json, out, err, "validation", "field", e.what(), kExitInvalid);
  } catch (const SingularModel& e) {
    return report_error(json, out, err, "validation", "curve", e.what(), kExitInvalid);
  } catch (const IncompleteFactorization& e) {
    return report_error(json, out, err, "incomplete", "", e.what(), kExitIncomplete);
  } catch (const RangeError& e) {
    return report_error(json, out, err, "incomplete", "", e.what(), kExitIncomplete);
  } catch (const std::exception& e) {
    return report_error(json, out, err, "internal", "", e.what(), kExitInternal);
  }
}

}  // namespace shabound
