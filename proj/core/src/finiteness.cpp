#include "dp5/finiteness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dp5/invariants.hpp"

namespace dp5 {

namespace {

using P = MPoly<Rat>;

// Removes rational content and the largest monomial r^i s^j dividing f,
// recording what was removed.
P strip(const P& f, const std::string& name, std::vector<std::string>& cleared) {
  const Rat c = rational_content(f);
  P g = primitive_part(f);
  if (!(c == Rat(1))) cleared.push_back(name + ": rational content " + c.str());
  for (const char* v : {"r", "s"}) {
    const std::size_t idx = g.var_index(v);
    unsigned low = ~0u;
    for (const auto& [e, _] : g.terms()) low = std::min(low, e[idx]);
    if (low == 0 || low == ~0u) continue;
    Exponent e(g.nvars(), 0);
    e[idx] = low;
    g = exact_divide(g, P::monomial(g.vars(), e, Rat(1)));
    cleared.push_back(name + ": monomial factor " + std::string(v) + "^" + std::to_string(low));
  }
  return g;
}

std::string canonical_var(const std::string& v) {
  if (v == "\xce\xb1") return "alpha";  // Greek alpha
  if (v == "\xce\xb2") return "beta";
  return v;
}

P to_problem_vars(const P& f) {
  std::vector<std::string> renamed;
  for (const auto& v : f.vars()) renamed.push_back(canonical_var(v));
  P g(renamed);
  for (const auto& [e, c] : f.terms()) g.add_term(e, c);
  for (const auto& v : renamed)
    if (std::find(finiteness_vars().begin(), finiteness_vars().end(), v) == finiteness_vars().end() &&
        g.degree(v) > 0)
      throw DomainError("unexpected variable '" + v + "' in finiteness problem");
  return g.with_vars(finiteness_vars());
}

std::vector<std::string> present_params(const P& f, const P& g) {
  std::vector<std::string> out;
  for (const char* v : {"alpha", "beta"})
    if (f.has_var(v) || g.has_var(v)) out.emplace_back(v);
  return out;
}

}  // namespace

FinitenessProblem build_problem_deg4() {
  const auto& vars = finiteness_vars();
  const P r = P::variable(vars, "r"), s = P::variable(vars, "s"), one = P::constant(vars, Rat(1));
  const P alpha = P::variable(vars, "alpha"), beta = P::variable(vars, "beta");
  // a = A/(rs), b = B/(rs); 16 rs h(t, w) has polynomial coefficients.
  const P m = r * s;
  const P A = -(r * r * s + r * s * s + r + s);
  const P B = m * m + r * r + m.scaled(Rat(2)) + s * s + one;
  const BinaryForm<P> h(5, {m, -A, B, -A, m, P(vars)});
  const auto inv = quintic_invariants(h, false);

  FinitenessProblem p;
  p.degree = 4;
  p.provenance = "internal";
  p.cleared.push_back("F, G: denominator (16 r s)^d of I_d");
  p.F = strip(inv.I8 - alpha * inv.I4 * inv.I4, "F", p.cleared);
  p.G = strip(inv.I12 - beta * inv.I4 * inv.I4 * inv.I4, "G", p.cleared);
  validate(p);
  return p;
}

void validate(const FinitenessProblem& p) {
  if (p.degree != 3 && p.degree != 4) throw DomainError("finiteness problem degree must be 3 or 4");
  if (p.F.is_zero() || p.G.is_zero()) throw DomainError("finiteness polynomials must be nonzero");
  if (p.F.vars() != finiteness_vars() || p.G.vars() != finiteness_vars())
    throw DomainError("finiteness polynomials must use the variables (r, s, alpha, beta)");
  if (p.F.involves("beta")) throw DomainError("F must not involve beta");
  if (p.G.involves("alpha")) throw DomainError("G must not involve alpha");
  for (const char* v : {"r", "s"})
    if (!p.F.involves(v) || !p.G.involves(v))
      throw DomainError(std::string("F and G need positive degree in ") + v);
}

nlohmann::json to_json(const FinitenessProblem& p) {
  return {{"degree", p.degree}, {"F", to_json(p.F)}, {"G", to_json(p.G)}, {"provenance", p.provenance},
          {"cleared_content", p.cleared}};
}

FinitenessProblem problem_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("F") || !j.contains("G"))
    throw DomainError("problem JSON needs \"F\" and \"G\"");
  FinitenessProblem p;
  p.degree = j.value("degree", 4);
  p.F = to_problem_vars(mpoly_from_json(j.at("F")));
  p.G = to_problem_vars(mpoly_from_json(j.at("G")));
  p.provenance = "external";
  if (j.contains("cleared_content")) p.cleared = j.at("cleared_content").get<std::vector<std::string>>();
  validate(p);
  return p;
}

FinitenessProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open problem file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed problem JSON: ") + e.what());
  }
  return problem_from_json(j);
}

nlohmann::json to_json(const FinitenessReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses) {
    auto o = to_json(x.witness);
    o["resultant"] = x.resultant;
    w.push_back(std::move(o));
  }
  return {{"deg_h1", r.deg_h1},
          {"deg_h2", r.deg_h2},
          {"product", r.product},
          {"expected", kExpectedProduct},
          {"match", r.match},
          {"mode", r.mode},
          {"seed", r.seed},
          {"witnesses", std::move(w)},
          {"cleared_content", r.cleared_content},
          {"bound", "the number of possibilities for the pair (r,s) is at most " + std::to_string(r.product)}};
}

FinitenessReport finiteness_degrees(const FinitenessProblem& p, FinitenessMode mode, u64 seed,
                                    unsigned jobs, unsigned exact_cap) {
  validate(p);
  FinitenessReport rep;
  rep.seed = seed;
  rep.cleared_content = p.cleared;
  if (mode == FinitenessMode::Modular) {
    rep.mode = "modular";
    const auto params = present_params(p.F, p.G);
    const auto h1 = resultant_degree_modular(p.F, p.G, "s", "r", params, seed, jobs);
    const auto h2 = resultant_degree_modular(p.F, p.G, "r", "s", params, seed + 1, jobs);
    if (h1.degenerate || h2.degenerate)
      throw ComputationError("degenerate problem: the resultant vanishes identically (common factor)");
    rep.deg_h1 = h1.degree;
    rep.deg_h2 = h2.degree;
    for (const auto& w : h1.witnesses) rep.witnesses.push_back({"h1", w});
    for (const auto& w : h2.witnesses) rep.witnesses.push_back({"h2", w});
  } else {
    rep.mode = "exact";
    for (const char* v : {"r", "s"}) {
      const auto size = static_cast<unsigned>(p.F.degree(v) + p.G.degree(v));
      if (size > exact_cap)
        throw CapExceeded("exact mode: Sylvester matrix of size " + std::to_string(size) +
                              " exceeds the cap of " + std::to_string(exact_cap),
                          size);
    }
    const P h1 = resultant(p.F, p.G, "s"), h2 = resultant(p.F, p.G, "r");
    if (h1.is_zero() || h2.is_zero())
      throw ComputationError("degenerate problem: the resultant vanishes identically (common factor)");
    rep.deg_h1 = h1.degree("r");
    rep.deg_h2 = h2.degree("s");
  }
  rep.product = static_cast<long long>(rep.deg_h1) * rep.deg_h2;
  rep.match = rep.product == kExpectedProduct;
  return rep;
}

std::pair<Rat, Rat> invariant_ratios(const Rat& u, const Rat& v) {
  const auto inv = tuv_quintic_invariants(u, v, false);
  if (inv.I4.is_zero()) throw ComputationError("I4 vanishes; invariant ratios undefined");
  return {inv.I8 / (inv.I4 * inv.I4), inv.I12 / (inv.I4 * inv.I4 * inv.I4)};
}

u64 h1_at(const FinitenessProblem& p, const Rat& r0, const Rat& alpha, const Rat& beta, u64 prime) {
  return specialized_resultant_mod(
      p.F, p.G, "s",
      {{"r", reduce_mod(r0, prime)}, {"alpha", reduce_mod(alpha, prime)}, {"beta", reduce_mod(beta, prime)}},
      prime);
}

}  // namespace dp5
