#include "dp5/pointconfig.hpp"


#include "dp5/modular.hpp"

namespace dp5 {

nlohmann::json to_json(const GPReport& r) {
  nlohmann::json j{{"verdict", r.verdict}, {"lines_checked", r.lines_checked},
                   {"conic_checked", r.conic_checked}, {"witness", nullptr}};
  if (r.witness)
    j["witness"] = {{"kind", r.witness->kind}, {"indices", r.witness->indices},
                    {"determinant", r.witness->determinant}};
  return j;
}

std::vector<std::pair<u64, u64>> orbit_exponents(int r) {
  const Residue d = hensel_delta(r);
  const u64 n = d.modulus;
  std::vector<std::pair<u64, u64>> out;
  u64 a = 1;
  for (int k = 0; k < 4; ++k) {
    out.emplace_back(mul_mod(2, a, n), a);
    a = mul_mod(a, d.value, n);
  }
  return out;
}

std::vector<CycPoint> build_orbit(int r) {
  const CycField K(r);
  std::vector<CycPoint> out;
  for (auto [e2, e1] : orbit_exponents(r))
    out.emplace_back(zeta_power(K, static_cast<i64>(e2)), zeta_power(K, static_cast<i64>(e1)), K.one());
  return out;
}

CycConfig config(int r, int degree) {
  if (degree != 3 && degree != 4) throw DomainError("degree must be 3 or 4");
  const CycField K(r);
  CycConfig c;
  c.degree = degree;
  c.field = K.to_json();
  c.provenance = LayerProvenance{r, hensel_delta(r).value};
  c.points = build_orbit(r);
  c.points.emplace_back(K.one(), K.zero(), K.zero());
  if (degree == 3) c.points.emplace_back(K.zero(), K.one(), K.zero());
  c.canonicalize();
  return c;
}

CycConfig apply_galois(const CycConfig& c, i64 a) {
  CycConfig out = c;
  out.points.clear();
  for (const auto& p : c.points)
    out.points.emplace_back(galois_apply(a, p[0]), galois_apply(a, p[1]), galois_apply(a, p[2]));
  out.canonicalize();
  return out;
}

bool galois_stable(const CycConfig& c, i64 a) {
  return apply_galois(c, a).points == sorted_points(c);
}

PointConfig<FqElt> reduce_config(const CycConfig& c, const ResidueEmbedding& e) {
  PointConfig<FqElt> out;
  out.degree = c.degree;
  out.field = e.target().to_json();
  out.provenance = c.provenance;
  for (const auto& p : c.points) out.points.emplace_back(e(p[0]), e(p[1]), e(p[2]));
  return out;
}

namespace {

int layer_of(const CycConfig& c) {
  if (c.points.empty()) throw DomainError("empty configuration");
  return c.points.front()[0].field().layer();
}

}  // namespace

nlohmann::json to_json(const CycConfig& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points) pts.push_back({p[0].to_json(), p[1].to_json(), p[2].to_json()});
  nlohmann::json j{{"degree", c.degree}, {"layer", layer_of(c)}, {"field", c.field}, {"points", pts}};
  if (const auto* lp = std::get_if<LayerProvenance>(&c.provenance)) j["delta"] = lp->delta;
  return j;
}

CycConfig cyc_config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("layer"))
    throw DomainError("configuration JSON needs \"layer\" and \"points\"");
  const int layer = j.at("layer").get<int>();
  const CycField K(layer);
  CycConfig c;
  c.field = K.to_json();
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 3) throw DomainError("each point needs three coordinates");
    std::vector<CycElt> xs;
    for (const auto& x : p) {
      CycElt e = CycElt::from_json(x);
      if (!(e.field() == K)) throw DomainError("point coordinate from a different layer");
      xs.push_back(std::move(e));
    }
    c.points.emplace_back(xs[0], xs[1], xs[2]);
  }
  c.degree = degree_for_points(c.points.size());
  if (j.contains("degree") && j.at("degree").get<int>() != c.degree)
    throw DomainError("degree does not match the number of points");
  if (j.contains("delta")) {
    const u64 delta = j.at("delta").get<u64>();
    if (delta != hensel_delta(layer).value) throw DomainError("delta does not match the layer");
    c.provenance = LayerProvenance{layer, delta};
  }
  return c;
}

nlohmann::json to_json(const PointConfig<Rat>& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points) pts.push_back({p[0].str(), p[1].str(), p[2].str()});
  nlohmann::json j{{"degree", c.degree}, {"field", {{"type", "rational"}}}, {"points", pts}};
  if (const auto* fp = std::get_if<FamilyProvenance>(&c.provenance)) {
    j["u"] = fp->u;
    j["v"] = fp->v;
  }
  return j;
}

PointConfig<Rat> rat_config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points")) throw DomainError("configuration JSON needs \"points\"");
  PointConfig<Rat> c;
  c.field = {{"type", "rational"}};
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 3) throw DomainError("each point needs three coordinates");
    std::vector<Rat> xs;
    for (const auto& x : p) {
      if (x.is_string()) xs.push_back(Rat::parse(x.get<std::string>()));
      else if (x.is_number_integer()) xs.emplace_back(mpz_class(std::to_string(x.get<long long>())));
      else throw DomainError("rational coordinates must be strings or integers");
    }
    c.points.emplace_back(xs[0], xs[1], xs[2]);
  }
  c.degree = degree_for_points(c.points.size());
  if (j.contains("degree") && j.at("degree").get<int>() != c.degree)
    throw DomainError("degree does not match the number of points");
  if (j.contains("u") && j.contains("v"))
    c.provenance = FamilyProvenance{j.at("u").get<std::string>(), j.at("v").get<std::string>()};
  return c;
}

PowerOfFive as_power_of_five(const Rat& n) {
  PowerOfFive out;
  if (n.is_zero() || !n.is_integer()) return out;
  mpz_class m = n.num();
  out.sign = sgn(m) < 0 ? -1 : 1;
  m = abs(m);
  while (mpz_divisible_ui_p(m.get_mpz_t(), 5)) {
    m /= 5;
    ++out.k;
  }
  out.ok = m == 1;
  return out;
}

std::string power_of_five_string(const Rat& n) {
  const PowerOfFive f = as_power_of_five(n);
  if (!f.ok) return n.str();
  return (f.sign < 0 ? "-5^" : "5^") + std::to_string(f.k);
}

std::vector<i64> certificate_mus(int r) {
  const Residue d = hensel_delta(r);
  const auto n = static_cast<i64>(d.modulus);
  const auto delta = static_cast<i64>(d.value);
  std::vector<i64> mus{4, 4 * delta, 2 * delta - 2, 2 * delta + 2};
  for (auto& m : mus) m = ((m % n) + n) % n;
  return mus;
}

namespace {

GoodReductionCertificate assemble(const CycConfig& c, const ResidueEmbedding& e, bool with_norms,
                                  unsigned jobs) {
  const CycField& K = e.source();
  GoodReductionCertificate cert;
  cert.config = to_json(c);
  cert.layer = K.layer();
  cert.degree = c.degree;
  cert.prime = e.prime();
  cert.residue_degree = e.residue_degree();
  cert.embedding = e.to_json();
  cert.gp = check_general_position(reduce_config(c, e), jobs);
  cert.valid = cert.gp.verdict;
  if (!with_norms) return cert;
  cert.has_norms = true;
  for (i64 mu : certificate_mus(K.layer())) {
    const Rat nv = norm(zeta_power(K, mu) - K.one());
    cert.norms.push_back({mu, nv, as_power_of_five(nv)});
    cert.valid = cert.valid && cert.norms.back().factor.ok;
  }
  const auto triples = index_triples(c.points.size());
  const auto dets = line_determinants(c, jobs);
  for (std::size_t t = 0; t < dets.size(); ++t) {
    const Rat nv = norm(dets[t]);
    cert.line_norms.push_back({triples[t], nv, as_power_of_five(nv)});
    cert.valid = cert.valid && cert.line_norms.back().factor.ok;
  }
  return cert;
}

}  // namespace

GoodReductionCertificate good_reduction_certificate(const CycConfig& c, u64 q, u64 seed,
                                                    bool with_norms, unsigned degree_cap,
                                                    unsigned jobs) {
  if (q == 5) throw DomainError("excluded prime: 5 is totally ramified in the cyclotomic tower");
  const CycField K(layer_of(c));
  return assemble(c, ResidueEmbedding::make(K, q, seed, degree_cap), with_norms, jobs);
}

GoodReductionCertificate good_reduction_certificate(int r, int degree, u64 q, u64 seed,
                                                    bool with_norms, unsigned degree_cap,
                                                    unsigned jobs) {
  if (q == 5) throw DomainError("excluded prime: 5 is totally ramified in the cyclotomic tower");
  return good_reduction_certificate(config(r, degree), q, seed, with_norms, degree_cap, jobs);
}

namespace {

nlohmann::json norm_json(const Rat& v, const PowerOfFive& f) {
  return {{"norm", power_of_five_string(v)}, {"k", f.ok ? nlohmann::json(f.k) : nlohmann::json(nullptr)}};
}

}  // namespace

nlohmann::json to_json(const GoodReductionCertificate& c) {
  nlohmann::json j{{"layer", c.layer},
                   {"degree", c.degree},
                   {"prime", c.prime},
                   {"residue_degree", c.residue_degree},
                   {"embedding", c.embedding},
                   {"general_position", to_json(c.gp)},
                   {"valid", c.valid},
                   {"config", c.config}};
  if (c.has_norms) {
    nlohmann::json norms = nlohmann::json::array(), lines = nlohmann::json::array();
    for (const auto& m : c.norms) {
      auto x = norm_json(m.norm, m.factor);
      x["mu"] = m.mu;
      norms.push_back(std::move(x));
    }
    for (const auto& l : c.line_norms) {
      auto x = norm_json(l.norm, l.factor);
      x["indices"] = l.indices;
      lines.push_back(std::move(x));
    }
    j["norms"] = std::move(norms);
    j["line_norms"] = std::move(lines);
  }
  return j;
}

bool verify_certificate(const nlohmann::json& j, unsigned jobs) {
  const CycConfig c = cyc_config_from_json(j.at("config"));
  const CycField K(layer_of(c));
  const ResidueEmbedding e = ResidueEmbedding::from_json(K, j.at("embedding"));
  if (e.prime() != j.at("prime").get<u64>()) return false;
  if (e.residue_degree() != mult_order(static_cast<i64>(e.prime()), K.conductor())) return false;
  return to_json(assemble(c, e, j.contains("norms"), jobs)) == j;
}

}  // namespace dp5
