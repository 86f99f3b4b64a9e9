// dp5: command-line front end. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 success, 1 check failed, 2 usage or domain error,
// 3 computation error or cost cap.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/errors.hpp"
#include "dp5/finiteness.hpp"
#include "dp5/invariants.hpp"
#include "dp5/modular.hpp"
#include "dp5/parallel.hpp"
#include "dp5/pointconfig.hpp"

using namespace dp5;
using nlohmann::json;

namespace {

constexpr u64 kDefaultSeed = 3735928559ULL;

struct Options {
  unsigned jobs = 0;
  u64 seed = kDefaultSeed;
  std::string fault;  // hidden: mutates a verify computation
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
}

bool is_rational_config(const json& j) {
  return j.contains("field") && j.at("field").is_object() && j.at("field").value("type", "") == "rational";
}

// ---- delta ----

int cmd_delta(int layer) {
  if (layer < 1) throw DomainError("layer must be at least 1");
  const Residue d = hensel_delta(layer);
  emit({{"layer", layer}, {"modulus", d.modulus}, {"delta", d.value}});
  return 0;
}

// ---- construct ----

int cmd_construct(int degree, int layer, const std::string& out) {
  if (layer < 1) throw DomainError("layer must be at least 1");
  const json cfg = to_json(config(layer, degree));
  if (out.empty()) {
    emit(cfg);
    return 0;
  }
  std::ofstream f(out);
  if (!f) throw DomainError("cannot write " + out);
  f << cfg.dump(2) << '\n';
  emit({{"out", out}, {"degree", degree}, {"layer", layer}, {"points", cfg.at("points").size()}});
  return 0;
}

// ---- check ----

int cmd_check(const std::string& path, std::optional<u64> prime, bool certify, unsigned cap,
              const Options& o) {
  const json j = read_json(path);
  if (is_rational_config(j)) {
    if (prime) throw DomainError("--prime needs a cyclotomic configuration");
    const GPReport r = check_general_position(rat_config_from_json(j), o.jobs);
    emit(to_json(r));
    return r.verdict ? 0 : 1;
  }
  const CycConfig c = cyc_config_from_json(j);
  if (!prime) {
    if (certify) throw DomainError("--certify needs --prime");
    const GPReport r = check_general_position(c, o.jobs);
    emit(to_json(r));
    return r.verdict ? 0 : 1;
  }
  const auto cert = good_reduction_certificate(c, *prime, o.seed, certify, cap, o.jobs);
  emit(to_json(cert));
  return cert.valid ? 0 : 1;
}

// ---- invariants ----

int cmd_invariants(int degree, const std::string& u_text, const std::string& v_text,
                   const std::string& pipeline, const std::vector<std::string>& penta) {
  if (degree == 3) {
    if (penta.size() != 5) throw DomainError("--pentahedral needs exactly five coefficients");
    std::vector<Rat> a;
    for (const auto& s : penta) a.push_back(Rat::parse(s));
    json j = to_json(clebsch_salmon(a).vector());
    j["degree"] = 3;
    emit(j);
    return 0;
  }
  if (u_text.empty() || v_text.empty()) throw DomainError("--degree 4 needs --u and --v");
  const Rat u = Rat::parse(u_text), v = Rat::parse(v_text);
  if (u.is_zero() || v.is_zero()) throw DomainError("u and v must be nonzero");
  const bool nonzero = f_criterion(u, v).second;
  if (!nonzero) std::cerr << "warning: f(u,v) = 0; the points are not in general position\n";
  const auto inv = tuv_quintic_invariants(u, v, pipeline == "implicitize");
  json j = to_json(inv.vector());
  j["degree"] = 4;
  j["pipeline"] = pipeline;
  j["u"] = u.str();
  j["v"] = v.str();
  j["discriminant"] = inv.delta->str();
  j["f_nonzero"] = nonzero;
  emit(j);
  return 0;
}

// ---- finiteness ----

int cmd_finiteness(int degree, const std::string& mode, const std::string& problem, unsigned cap,
                   const Options& o) {
  FinitenessProblem p;
  if (!problem.empty()) {
    p = load_problem(problem);
  } else {
    if (degree != 4) throw DomainError("only the degree-4 problem is built internally; use --problem");
    p = build_problem_deg4();
  }
  std::cerr << "computing resultant degrees (" << mode << ")\n";
  const auto rep = finiteness_degrees(p, mode == "exact" ? FinitenessMode::Exact : FinitenessMode::Modular,
                                      o.seed, o.jobs, cap);
  emit(to_json(rep));
  return 0;
}

// ---- verify ----

json check_entry(const std::string& name, bool pass, json detail) {
  return {{"name", name}, {"pass", pass}, {"detail", std::move(detail)}};
}

// det of the conic matrix times u^3 v^3 against the closed form. Points at
// u^-1, v^-1 are scaled by u^2, v^2 to keep entries polynomial, which
// multiplies the determinant by u^4 v^4.
json verify_conic(bool fault) {
  using P = MPoly<Rat>;
  const std::vector<std::string> vars{"u", "v"};
  const P u = P::variable(vars, "u"), v = P::variable(vars, "v"), one = P::constant(vars, Rat(1)), zero(vars);
  const P vv = fault ? v + one : v;
  auto det_of = [&](const std::vector<std::array<P, 3>>& pts) {
    Matrix<P> m(6, 6, zero);
    for (std::size_t i = 0; i < 6; ++i) {
      const auto& [x, y, z] = pts[i];
      const std::array<P, 6> row{x * x, y * y, z * z, x * y, x * z, y * z};
      for (std::size_t k = 0; k < 6; ++k) m(i, k) = row[k];
    }
    return exact_divide(determinant(m), u * v);
  };
  const std::array<P, 3> p1{u * u, u, one}, p2{one, u, u * u}, p3{vv * vv, vv, one}, p4{one, v, v * v},
      e1{one, zero, zero}, e2{zero, one, zero};
  const P stated = (u + one) * (u - one) * (v + one) * (v - one) * (u - v).pow(2) * (u * v - one).pow(2);
  const P listed = det_of({p1, p2, p3, p4, e1, e2});
  const P swapped = det_of({p1, p2, p3, p4, e2, e1});
  const bool pass = swapped == stated && listed == -stated;
  return check_entry("tuv.conic_closed_form", pass,
                     {{"stated", to_string(stated)},
                      {"order (1:0:0),(0:1:0)", to_string(listed)},
                      {"order (0:1:0),(1:0:0)", to_string(swapped)}});
}

json verify_line_norms(bool fault, unsigned jobs) {
  CycConfig c = config(1, 3);
  if (fault) {
    const CycField K(1);
    c.points.back() = CycPoint(zeta_power(K, 3), zeta_power(K, 1), K.one());
  }
  const auto dets = line_determinants(c, jobs);
  json norms = json::array();
  bool pass = dets.size() == 20;
  for (const auto& d : dets) {
    const Rat n = norm(d);
    pass = pass && as_power_of_five(n).ok;
    norms.push_back(power_of_five_string(n));
  }
  for (i64 mu : certificate_mus(1)) {
    const CycField K(1);
    pass = pass && norm(zeta_power(K, mu) - K.one()) == Rat(5);
  }
  return check_entry("tuv.line_norms_r1", pass, {{"norms", norms}});
}

json verify_pencil(bool fault) {
  using P = MPoly<Rat>;
  const std::vector<std::string> vars{"a", "b"};
  const P a = P::variable(vars, "a"), b = P::variable(vars, "b"), one = P::constant(vars, Rat(1)), zero(vars);
  auto pencil = closed_form_pencil(a, b);
  if (fault) pencil.AF(3, 3) = b + one;
  const auto h = char_quintic(pencil);
  const auto stated = BinaryForm<P>(5, {one, -a, b, -a, one, zero}).scaled(Rat(mpz_class(1), mpz_class(16)));
  json coeffs = json::array();
  for (const auto& c : h.coeffs()) coeffs.push_back(to_string(c));
  return check_entry("pencil.closed_form", h == stated, {{"h", coeffs}});
}

int cmd_verify(const std::string& suite, const Options& o) {
  const bool fault_tuv = o.fault == "tuv" || o.fault == "all";
  const bool fault_pencil = o.fault == "pencil" || o.fault == "all";
  json checks = json::array();
  if (suite == "tuv" || suite == "all") {
    checks.push_back(verify_conic(fault_tuv));
    checks.push_back(verify_line_norms(fault_tuv, o.jobs));
  }
  if (suite == "pencil" || suite == "all") checks.push_back(verify_pencil(fault_pencil));
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.at("pass").get<bool>();
  emit({{"suite", suite}, {"checks", checks}, {"pass", pass}});
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Del Pezzo surfaces over the cyclotomic Z5-extension: constructions and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  if (const char* env = std::getenv("DP5_JOBS")) {
    try {
      o.jobs = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: DP5_JOBS must be a non-negative integer\n";
      return 2;
    }
  }
  app.add_option("--jobs", o.jobs, "Worker threads (0 = all processors; DP5_JOBS sets the default)");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--inject-fault", o.fault)->group("");  // hidden

  int layer = 0, degree = 3;
  std::string out, path, u, v, pipeline = "paper", mode = "modular", problem, suite = "all";
  std::vector<std::string> penta;
  u64 prime = 0;
  bool certify = false;
  unsigned cap = 1024, exact_cap = 8;

  auto* delta = app.add_subcommand("delta", "Print the order-4 residue delta mod 5^(r+1)");
  delta->add_option("--layer", layer, "Layer r >= 1")->required();

  auto* construct = app.add_subcommand("construct", "Build the 6- or 5-point configuration of layer r");
  construct->add_option("--degree", degree, "3 (six points) or 4 (five points)")->required()
      ->check(CLI::IsMember({3, 4}));
  construct->add_option("--layer", layer, "Layer r >= 1")->required();
  construct->add_option("--out", out, "Write the configuration here instead of stdout");

  auto* check = app.add_subcommand("check", "General position, or a good-reduction certificate at a prime");
  check->add_option("config", path, "Configuration JSON")->required();
  auto* prime_opt = check->add_option("--prime", prime, "Residue characteristic q");
  check->add_flag("--certify", certify, "Include the norm section");
  check->add_option("--cap", cap, "Largest residue degree to attempt")->capture_default_str();

  auto* invariants = app.add_subcommand("invariants", "Invariants of the degree-3 or degree-4 surfaces");
  invariants->add_option("--degree", degree, "3 or 4")->required()->check(CLI::IsMember({3, 4}));
  invariants->add_option("--u", u, "Rational u (p/q or integer)");
  invariants->add_option("--v", v, "Rational v (p/q or integer)");
  invariants->add_option("--pipeline", pipeline, "paper or implicitize")
      ->check(CLI::IsMember({"paper", "implicitize"}))->capture_default_str();
  invariants->add_option("--pentahedral", penta, "a0,...,a4")->delimiter(',');

  auto* finiteness = app.add_subcommand("finiteness", "Resultant degrees of the finiteness lemma");
  finiteness->add_option("--degree", degree, "4")->check(CLI::IsMember({3, 4}));
  finiteness->add_option("--mode", mode, "modular or exact")
      ->check(CLI::IsMember({"modular", "exact"}))->capture_default_str();
  finiteness->add_option("--problem", problem, "Problem JSON with F and G");
  finiteness->add_option("--exact-cap", exact_cap, "Largest Sylvester size allowed in exact mode")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the symbolic identity checks");
  verify->add_option("--suite", suite, "tuv, pencil or all")
      ->check(CLI::IsMember({"tuv", "pencil", "all"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*delta) return cmd_delta(layer);
    if (*construct) return cmd_construct(degree, layer, out);
    if (*check) return cmd_check(path, *prime_opt ? std::optional<u64>(prime) : std::nullopt, certify, cap, o);
    if (*invariants) return cmd_invariants(degree, u, v, pipeline, penta);
    if (*finiteness) return cmd_finiteness(degree, mode, problem, exact_cap, o);
    if (*verify) return cmd_verify(suite, o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (required: " << e.required() << ")\n";
    return 3;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
