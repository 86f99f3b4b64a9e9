#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/matrix.hpp"
#include "dp5/modular.hpp"
#include "dp5/mpoly.hpp"

namespace dp5 {

// Sylvester matrix of f and g with respect to variable `var`, rows of f
// first, coefficients in descending powers. Nominal degrees are the actual
// degrees in `var`.
template <class K>
Matrix<MPoly<K>> sylvester_matrix(const MPoly<K>& f, const MPoly<K>& g, std::size_t var) {
  const int df = f.degree(var), dg = g.degree(var);
  if (df < 0 || dg < 0) throw DomainError("resultant of a zero polynomial");
  const std::size_t n = static_cast<std::size_t>(df + dg);
  const auto cf = f.coefficients_in(var);
  const auto cg = g.coefficients_in(var);
  Matrix<MPoly<K>> m(n, n, MPoly<K>(f.vars()));
  for (int i = 0; i < dg; ++i)
    for (int k = 0; k <= df; ++k) m(i, i + k) = cf[df - k];
  for (int i = 0; i < df; ++i)
    for (int k = 0; k <= dg; ++k) m(dg + i, i + k) = cg[dg - k];
  return m;
}

// Res_var(f, g) = det of the Sylvester matrix. A side of degree zero gives
// its constant raised to the other side's degree.
template <class K>
MPoly<K> resultant(const MPoly<K>& f, const MPoly<K>& g, std::size_t var) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant of a zero polynomial");
  const int df = f.degree(var), dg = g.degree(var);
  if (df == 0 && dg == 0) throw DomainError("resultant of two polynomials constant in the variable");
  if (df == 0) return f.pow(static_cast<unsigned>(dg));
  if (dg == 0) return g.pow(static_cast<unsigned>(df));
  return determinant(sylvester_matrix(f, g, var));
}

template <class K>
MPoly<K> resultant(const MPoly<K>& f, const MPoly<K>& g, std::string_view var) {
  return resultant(f, g, f.var_index(var));
}

struct ModularWitness {
  u64 prime = 0;
  std::map<std::string, u64> specialization;
  int degree = -1;  // -1: resultant vanished identically
};
nlohmann::json to_json(const ModularWitness& w);

struct ModularDegree {
  int degree = -1;
  bool degenerate = false;
  std::vector<ModularWitness> witnesses;  // those agreeing on the reported degree
  std::vector<ModularWitness> rejected;   // unlucky attempts
};

// Degree in `kept` of Res_elim(f, g) with every parameter specialized to a
// random residue mod a random prime in [2^61, 2^62). Requires two agreeing
// witnesses at the largest observed degree; disagreements trigger fresh
// attempts, at most eight of them, before ComputationError. When two
// witnesses vanish identically the result is flagged degenerate.
ModularDegree resultant_degree_modular(const MPoly<Rat>& f, const MPoly<Rat>& g,
                                       std::string_view elim, std::string_view kept,
                                       const std::vector<std::string>& params,
                                       u64 seed, unsigned jobs = 0);

// Res_elim(f, g) mod p with every other variable replaced by the given
// residues, using the nominal Sylvester size over Q.
u64 specialized_resultant_mod(const MPoly<Rat>& f, const MPoly<Rat>& g,
                              std::string_view elim,
                              const std::map<std::string, u64>& values, u64 p);

}  // namespace dp5
