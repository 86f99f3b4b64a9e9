#include "dp5/resultant.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dp5/parallel.hpp"
#include "dp5/upoly_fp.hpp"

namespace dp5 {

Rat rational_content(const MPoly<Rat>& f) {
  if (f.is_zero()) return Rat(0);
  mpz_class g = 0, l = 1;
  for (const auto& [e, c] : f.terms()) {
    g = gcd(g, c.num());
    l = lcm(l, c.den());
  }
  Rat content(g, l);
  return f.leading_coeff().sign() < 0 ? -content : content;
}

MPoly<Rat> primitive_part(const MPoly<Rat>& f) {
  if (f.is_zero()) return f;
  return f.scaled(rational_content(f).inverse());
}

nlohmann::json to_json(const MPoly<Rat>& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"e", e}, {"c", c.str()}});
  return {{"vars", f.vars()}, {"terms", std::move(terms)}};
}

MPoly<Rat> mpoly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    throw DomainError("polynomial JSON needs \"vars\" and \"terms\"");
  std::vector<std::string> vars;
  for (const auto& v : j.at("vars")) {
    if (!v.is_string()) throw DomainError("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t k = i + 1; k < vars.size(); ++k)
      if (vars[i] == vars[k]) throw DomainError("duplicate variable '" + vars[i] + "'");
  MPoly<Rat> f(vars);
  for (const auto& t : j.at("terms")) {
    if (!t.contains("e") || !t.contains("c")) throw DomainError("term needs \"e\" and \"c\"");
    Exponent e;
    for (const auto& x : t.at("e")) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        throw DomainError("exponents must be non-negative integers");
      e.push_back(static_cast<std::uint32_t>(x.get<long long>()));
    }
    if (e.size() != vars.size()) throw DomainError("exponent length does not match variable count");
    const auto& c = t.at("c");
    Rat value;
    if (c.is_string()) value = Rat::parse(c.get<std::string>());
    else if (c.is_number_integer()) value = Rat(static_cast<long>(c.get<long long>()));
    else throw DomainError("coefficient must be a \"p/q\" string or an integer");
    f.add_term(std::move(e), value);
  }
  return f;
}

std::string to_string(const MPoly<Rat>& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool constant = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    Rat mag = c.abs();
    if (first) os << (c.sign() < 0 ? "-" : "");
    else os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    bool wrote = false;
    if (!mag.is_one() || constant) {
      os << mag.str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << f.vars()[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

nlohmann::json to_json(const ModularWitness& w) {
  nlohmann::json spec = nlohmann::json::object();
  for (const auto& [k, v] : w.specialization) spec[k] = v;
  return {{"prime", w.prime}, {"specialization", std::move(spec)}, {"degree", w.degree}};
}

namespace {

// Coefficients of elim^i * kept^j mod p after substituting every other
// variable. Without a kept variable only column 0 is used.
struct Reduced {
  std::vector<fp::Poly> rows;  // rows[i] = coefficient of elim^i as a poly in kept
};

Reduced reduce(const MPoly<Rat>& f, std::size_t elim, std::ptrdiff_t kept,
               const std::vector<u64>& values, u64 p) {
  Reduced out;
  out.rows.assign(static_cast<std::size_t>(std::max(f.degree(elim), 0)) + 1, fp::Poly{});
  for (const auto& [e, c] : f.terms()) {
    u64 t = reduce_mod(c, p);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (v == elim || static_cast<std::ptrdiff_t>(v) == kept || e[v] == 0) continue;
      t = mul_mod(t, pow_mod(values[v], e[v], p), p);
    }
    const std::size_t j = kept >= 0 ? e[static_cast<std::size_t>(kept)] : 0;
    auto& row = out.rows[e[elim]];
    if (row.size() <= j) row.resize(j + 1, 0);
    row[j] = add_mod(row[j], t, p);
  }
  for (auto& row : out.rows) fp::trim(row);
  return out;
}

// Nominal-size Sylvester determinant of two univariate polynomials given by
// coefficient vectors of length df+1 and dg+1.
u64 sylvester_det(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  const std::size_t df = a.size() - 1, dg = b.size() - 1;
  if (df == 0) return pow_mod(a[0], dg, p);
  if (dg == 0) return pow_mod(b[0], df, p);
  const std::size_t n = df + dg;
  std::vector<u64> m(n * n, 0);
  for (std::size_t i = 0; i < dg; ++i)
    for (std::size_t k = 0; k <= df; ++k) m[i * n + i + k] = a[df - k];
  for (std::size_t i = 0; i < df; ++i)
    for (std::size_t k = 0; k <= dg; ++k) m[(dg + i) * n + i + k] = b[dg - k];
  return fp::det(std::move(m), n, p);
}

std::vector<u64> specialize_rows(const Reduced& r, u64 x, u64 p) {
  std::vector<u64> out(r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) out[i] = fp::evaluate(r.rows[i], x, p);
  return out;
}

bool denominators_ok(const MPoly<Rat>& f, u64 p) {
  for (const auto& [e, c] : f.terms())
    if (mpz_divisible_ui_p(c.den().get_mpz_t(), p)) return false;
  return true;
}

void check_variables(const MPoly<Rat>& f, std::size_t elim, std::ptrdiff_t kept,
                     const std::vector<char>& is_param) {
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    if (v == elim || static_cast<std::ptrdiff_t>(v) == kept || is_param[v]) continue;
    if (f.degree(v) > 0) throw DomainError("variable '" + f.vars()[v] + "' is neither eliminated, kept nor a parameter");
  }
}

}  // namespace

ModularDegree resultant_degree_modular(const MPoly<Rat>& f_in, const MPoly<Rat>& g_in,
                                       std::string_view elim_name, std::string_view kept_name,
                                       const std::vector<std::string>& params,
                                       u64 seed, unsigned jobs) {
  const MPoly<Rat>& f = f_in;
  const MPoly<Rat> g = g_in.vars() == f.vars() ? g_in : g_in.with_vars(f.vars());
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant of a zero polynomial");
  const std::size_t elim = f.var_index(elim_name);
  const auto kept = static_cast<std::ptrdiff_t>(f.var_index(kept_name));
  if (static_cast<std::size_t>(kept) == elim) throw DomainError("eliminated and kept variable coincide");
  const int df = f.degree(elim), dg = g.degree(elim);
  if (df <= 0 || dg <= 0) throw DomainError("inputs need positive degree in the eliminated variable");

  std::vector<char> is_param(f.nvars(), 0);
  for (const auto& name : params) is_param[f.var_index(name)] = 1;
  check_variables(f, elim, kept, is_param);
  check_variables(g, elim, kept, is_param);

  const auto kf = static_cast<std::size_t>(std::max(f.degree(static_cast<std::size_t>(kept)), 0));
  const auto kg = static_cast<std::size_t>(std::max(g.degree(static_cast<std::size_t>(kept)), 0));
  const std::size_t bound = kf * static_cast<std::size_t>(dg) + kg * static_cast<std::size_t>(df);
  std::vector<u64> xs(bound + 1);
  for (std::size_t k = 0; k <= bound; ++k) xs[k] = k + 1;

  std::mt19937_64 rng(seed);
  constexpr u64 lo = u64{1} << 61, hi = u64{1} << 62;
  constexpr int kBaseAttempts = 2, kRetries = 8;

  ModularDegree result;
  std::vector<ModularWitness> good;
  for (int attempt = 0; attempt < kBaseAttempts + kRetries; ++attempt) {
    u64 p;
    do p = random_prime(rng, lo, hi);
    while (!denominators_ok(f, p) || !denominators_ok(g, p));

    ModularWitness w;
    w.prime = p;
    std::vector<u64> values(f.nvars(), 0);
    for (std::size_t v = 0; v < f.nvars(); ++v) {
      if (!is_param[v]) continue;
      values[v] = rng() % p;
      w.specialization[f.vars()[v]] = values[v];
    }
    const Reduced rf = reduce(f, elim, kept, values, p);
    const Reduced rg = reduce(g, elim, kept, values, p);
    if (rf.rows.back().empty() || rg.rows.back().empty()) {
      result.rejected.push_back(std::move(w));  // leading coefficient vanished
      continue;
    }
    std::vector<u64> ys(xs.size());
    parallel_for(xs.size(), [&](std::size_t k) {
      ys[k] = sylvester_det(specialize_rows(rf, xs[k], p), specialize_rows(rg, xs[k], p), p);
    }, jobs);
    w.degree = fp::degree(fp::interpolate(xs, ys, p));
    good.push_back(std::move(w));

    int best = -1;
    for (const auto& x : good) best = std::max(best, x.degree);
    const auto agreeing = std::count_if(good.begin(), good.end(), [&](const auto& x) { return x.degree == best; });
    if (agreeing >= 2) {
      result.degree = best;
      result.degenerate = best < 0;
      for (auto& x : good) (x.degree == best ? result.witnesses : result.rejected).push_back(x);
      return result;
    }
  }
  throw ComputationError("unlucky specialization: no two witnesses agreed after " +
                         std::to_string(kRetries) + " retries");
}

u64 specialized_resultant_mod(const MPoly<Rat>& f_in, const MPoly<Rat>& g_in,
                              std::string_view elim_name,
                              const std::map<std::string, u64>& values, u64 p) {
  const MPoly<Rat>& f = f_in;
  const MPoly<Rat> g = g_in.vars() == f.vars() ? g_in : g_in.with_vars(f.vars());
  const std::size_t elim = f.var_index(elim_name);
  const int df = f.degree(elim), dg = g.degree(elim);
  if (df < 0 || dg < 0) throw DomainError("resultant of a zero polynomial");
  if (df == 0 && dg == 0) throw DomainError("resultant of two polynomials constant in the variable");
  std::vector<u64> vals(f.nvars(), 0);
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    if (v == elim) continue;
    auto it = values.find(f.vars()[v]);
    if (it != values.end()) vals[v] = it->second % p;
    else if (f.degree(v) > 0 || g.degree(v) > 0)
      throw DomainError("no value given for variable '" + f.vars()[v] + "'");
  }
  const Reduced rf = reduce(f, elim, -1, vals, p);
  const Reduced rg = reduce(g, elim, -1, vals, p);
  return sylvester_det(specialize_rows(rf, 0, p), specialize_rows(rg, 0, p), p);
}

}  // namespace dp5
