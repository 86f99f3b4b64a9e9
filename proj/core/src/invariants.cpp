#include "dp5/invariants.hpp"

#include "dp5/modular.hpp"

namespace dp5 {

namespace {

nlohmann::json vector_json(const std::vector<int>& w, nlohmann::json values, const nlohmann::json& field) {
  return {{"weights", w}, {"values", std::move(values)}, {"field", field.is_null() ? nlohmann::json::object() : field}};
}

}  // namespace

nlohmann::json to_json(const InvariantVector<Rat>& v) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& x : v.values) vals.push_back(x.str());
  return vector_json(v.weights, std::move(vals), v.field.is_null() ? nlohmann::json{{"type", "rational"}} : v.field);
}

nlohmann::json to_json(const InvariantVector<CycElt>& v) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& x : v.values) vals.push_back(x.to_json());
  nlohmann::json field = v.field;
  if (field.is_null() && !v.values.empty()) field = v.values.front().field().to_json();
  return vector_json(v.weights, std::move(vals), field);
}

nlohmann::json to_json(const BinaryForm<Rat>& f) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : f.coeffs()) c.push_back(x.str());
  return {{"deg", f.degree()}, {"coeffs", c}};
}

BinaryForm<Rat> binary_form_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("deg") || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw DomainError("binary form JSON needs \"deg\" and \"coeffs\"");
  std::vector<Rat> c;
  for (const auto& x : j.at("coeffs")) {
    if (x.is_string()) c.push_back(Rat::parse(x.get<std::string>()));
    else if (x.is_number_integer()) c.emplace_back(mpz_class(std::to_string(x.get<long long>())));
    else throw DomainError("binary form coefficients must be strings or integers");
  }
  return BinaryForm<Rat>(j.at("deg").get<int>(), std::move(c));
}

QuinticInvariants<CycElt> layer_quintic_invariants(int r) {
  const CycField K(r);
  const auto delta = static_cast<i64>(hensel_delta(r).value);
  return quintic_invariants(char_quintic(pencil_from_paper(zeta_power(K, 1), zeta_power(K, delta))));
}

qpoly::Poly layer_ratio_min_poly(int r) {
  const auto inv = layer_quintic_invariants(r);
  if (inv.I4.is_zero()) throw ComputationError("I4 vanishes; the ratio I8/I4^2 is undefined");
  return min_poly_of_ratio(inv.I8, inv.I4 * inv.I4);
}

}  // namespace dp5
