#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/errors.hpp"
#include "dp5/rat.hpp"

namespace dp5 {

using Exponent = std::vector<std::uint32_t>;

// Graded lexicographic order: total degree first, then lexicographic in
// variable order.
struct GrLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse multivariate polynomial over a field K. Coefficients are never
// zero; every exponent vector has one entry per variable. K must be
// default-constructible to zero and constructible from 1.
template <class K>
class MPoly {
 public:
  using Coeff = K;
  using Terms = std::map<Exponent, K, GrLex>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(std::vector<std::string> vars, const K& c) {
    MPoly p(std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
  }
  static MPoly variable(std::vector<std::string> vars, std::string_view name) {
    MPoly p(std::move(vars));
    Exponent e(p.nvars(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(std::move(e), K(1));
    return p;
  }
  static MPoly monomial(std::vector<std::string> vars, Exponent e, const K& c) {
    MPoly p(std::move(vars));
    if (e.size() != p.nvars()) throw DomainError("exponent length does not match variable count");
    p.add_term(std::move(e), c);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::size_t var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw DomainError("unknown variable '" + std::string(name) + "'");
  }
  bool has_var(std::string_view name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }
  K constant_term() const {
    auto it = terms_.find(Exponent(nvars(), 0));
    return it == terms_.end() ? K() : it->second;
  }

  // -1 for the zero polynomial.
  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }
  int degree(std::string_view name) const { return degree(var_index(name)); }
  int total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
  }
  bool involves(std::string_view name) const { return has_var(name) && degree(name) > 0; }

  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }
  const K& leading_coeff() const { return terms_.rbegin()->second; }

  void add_term(Exponent e, const K& c) {
    if (c == K()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == K()) terms_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    if (o.vars_ != vars_) return *this += conform(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    if (o.vars_ != vars_) return *this -= conform(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  MPoly operator-() const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) {
      if (a.vars_.empty()) return a.promoted(b.vars_) * b;
      if (b.vars_.empty()) return a * b.promoted(a.vars_);
      throw DomainError("polynomials over different variable lists");
    }
    MPoly r(a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const K& c) const {
    MPoly r(vars_);
    if (c == K()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, x * c);
    return r;
  }

  MPoly pow(unsigned e) const {
    MPoly result = constant(vars_, K(1)), base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    if (a.vars_.empty() && a.is_constant()) return a.promoted(b.vars_).terms_ == b.terms_;
    if (b.vars_.empty() && b.is_constant()) return b.promoted(a.vars_).terms_ == a.terms_;
    return false;
  }

  // Coefficients of var^k (k = 0..deg), each a polynomial in the same
  // variable list with the exponent of var set to zero.
  std::vector<MPoly> coefficients_in(std::size_t var) const {
    std::vector<MPoly> out(static_cast<std::size_t>(std::max(degree(var), 0)) + 1, MPoly(vars_));
    for (const auto& [e, c] : terms_) {
      Exponent ee = e;
      const std::size_t k = ee[var];
      ee[var] = 0;
      out[k].terms_.emplace(std::move(ee), c);
    }
    return out;
  }

  MPoly substitute(std::size_t var, const MPoly& value) const {
    const auto coeffs = coefficients_in(var);
    MPoly acc(vars_);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * value + coeffs[k];
    return acc;
  }

  MPoly evaluate(std::size_t var, const K& value) const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent ee = e;
      K factor(1);
      for (std::uint32_t i = 0; i < e[var]; ++i) factor *= value;
      ee[var] = 0;
      r.add_term(std::move(ee), c * factor);
    }
    return r;
  }

  K evaluate_all(std::span<const K> values) const {
    if (values.size() != nvars()) throw DomainError("wrong number of evaluation values");
    K acc{};
    for (const auto& [e, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t j = 0; j < e[i]; ++j) t *= values[i];
      acc += t;
    }
    return acc;
  }

  MPoly derivative(std::size_t var) const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent ee = e;
      K factor = c * K(static_cast<long>(e[var]));
      ee[var] -= 1;
      r.add_term(std::move(ee), factor);
    }
    return r;
  }

  // Re-expresses the polynomial over another variable list; every variable
  // that occurs with positive degree must be present in new_vars.
  MPoly with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<std::size_t> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
      if (it == new_vars.end()) {
        if (degree(i) > 0) throw DomainError("variable '" + vars_[i] + "' missing from target list");
        map[i] = new_vars.size();
      } else {
        map[i] = static_cast<std::size_t>(it - new_vars.begin());
      }
    }
    MPoly r(new_vars);
    for (const auto& [e, c] : terms_) {
      Exponent ee(new_vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (map[i] < new_vars.size()) ee[map[i]] = e[i];
      r.add_term(std::move(ee), c);
    }
    return r;
  }

 private:
  // Variable-free operands (default-constructed constants) are promoted
  // to the other side's list; otherwise the lists must agree.
  MPoly conform(const MPoly& o) {
    if (o.vars_.empty()) return o.promoted(vars_);
    if (vars_.empty() && is_constant()) {
      *this = promoted(o.vars_);
      return o;
    }
    throw DomainError("polynomials over different variable lists");
  }
  MPoly promoted(const std::vector<std::string>& vars) const {
    MPoly r(vars);
    for (const auto& [e, c] : terms_) r.add_term(Exponent(vars.size(), 0), c);
    return r;
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

template <class K> MPoly<K> zero_like(const MPoly<K>& x) { return MPoly<K>(x.vars()); }
template <class K> MPoly<K> one_like(const MPoly<K>& x) { return MPoly<K>::constant(x.vars(), K(1)); }
template <class K> bool is_zero(const MPoly<K>& x) { return x.is_zero(); }
template <class K> MPoly<K> scale(const MPoly<K>& x, const Rat& c) {
  MPoly<K> r(x.vars());
  for (const auto& [e, v] : x.terms()) r.add_term(e, scale(v, c));
  return r;
}

template <class K> struct is_mpoly : std::false_type {};
template <class K> struct is_mpoly<MPoly<K>> : std::true_type {};
template <class K> inline constexpr bool is_mpoly_v = is_mpoly<K>::value;

// Quotient q with f = q * g; NotDivisible if g does not divide f.
template <class K>
MPoly<K> exact_divide(const MPoly<K>& f, const MPoly<K>& g) {
  if (g.is_zero()) throw DomainError("exact_divide by zero polynomial");
  const auto& vars = f.vars().empty() ? g.vars() : f.vars();
  MPoly<K> q(vars);
  MPoly<K> r = f.vars().empty() ? f + MPoly<K>(vars) : f;
  const Exponent& lg = g.leading_exponent();
  const K& cg = g.leading_coeff();
  while (!r.is_zero()) {
    const Exponent& lr = r.leading_exponent();
    Exponent e(lr.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (lr[i] < lg[i]) throw NotDivisible();
      e[i] = lr[i] - lg[i];
    }
    const MPoly<K> t = MPoly<K>::monomial(vars, std::move(e), r.leading_coeff() / cg);
    q += t;
    r -= t * g;
  }
  return q;
}

template <class K>
MPoly<K> operator/(const MPoly<K>& f, const MPoly<K>& g) { return exact_divide(f, g); }

// Rational content: positive gcd of numerators over lcm of denominators,
// signed so that content * primitive part reproduces f with a positive
// leading coefficient.
Rat rational_content(const MPoly<Rat>& f);
MPoly<Rat> primitive_part(const MPoly<Rat>& f);

// {"vars": [...], "terms": [{"e": [...], "c": "p/q"}, ...]}, terms in
// ascending graded-lex order.
nlohmann::json to_json(const MPoly<Rat>& f);
MPoly<Rat> mpoly_from_json(const nlohmann::json& j);
std::string to_string(const MPoly<Rat>& f);

}  // namespace dp5
