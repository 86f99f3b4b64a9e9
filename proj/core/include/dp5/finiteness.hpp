#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/mpoly.hpp"
#include "dp5/rat.hpp"
#include "dp5/resultant.hpp"

namespace dp5 {

// The value both finiteness lemmas state for deg(h1) * deg(h2).
inline constexpr long long kExpectedProduct = 518400;

// F(r, s) = I8 - alpha I4^2 and G(r, s) = I12 - beta I4^3 of the member at
// (r, s), cleared of denominators. Both polynomials use the variables
// (r, s, alpha, beta); F must not involve beta and G must not involve alpha.
struct FinitenessProblem {
  int degree = 4;
  MPoly<Rat> F, G;
  std::string provenance;              // "internal" or "external"
  std::vector<std::string> cleared;    // content removed while building
};

inline const std::vector<std::string>& finiteness_vars() {
  static const std::vector<std::string> v{"r", "s", "alpha", "beta"};
  return v;
}

FinitenessProblem build_problem_deg4();

// Checks the structural invariants; DomainError on violation.
void validate(const FinitenessProblem& p);

nlohmann::json to_json(const FinitenessProblem& p);
FinitenessProblem problem_from_json(const nlohmann::json& j);
FinitenessProblem load_problem(const std::string& path);

enum class FinitenessMode { Modular, Exact };

struct ResultantWitness {
  std::string resultant;  // "h1" or "h2"
  ModularWitness witness;
};

struct FinitenessReport {
  int deg_h1 = -1, deg_h2 = -1;
  long long product = 0;
  bool match = false;
  std::string mode;
  u64 seed = 0;
  std::vector<ResultantWitness> witnesses;
  std::vector<std::string> cleared_content;
};
nlohmann::json to_json(const FinitenessReport& r);

// deg_h1 = deg_r Res_s(F, G), deg_h2 = deg_s Res_r(F, G). Exact mode refuses
// (CapExceeded) when either Sylvester matrix would exceed exact_cap rows.
// A resultant vanishing identically raises ComputationError ("degenerate").
FinitenessReport finiteness_degrees(const FinitenessProblem& p, FinitenessMode mode, u64 seed,
                                    unsigned jobs = 0, unsigned exact_cap = 8);

// (alpha, beta) = (I8/I4^2, I12/I4^3) of the degree-4 pencil at (u, v).
std::pair<Rat, Rat> invariant_ratios(const Rat& u, const Rat& v);

// Res_s(F, G) mod p at r = r0 and the given (alpha, beta).
u64 h1_at(const FinitenessProblem& p, const Rat& r0, const Rat& alpha, const Rat& beta, u64 prime);

}  // namespace dp5
