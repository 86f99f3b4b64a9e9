#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/rat.hpp"

// Dense univariate polynomials over Q, little-endian; zero is the empty vector.
namespace dp5::qpoly {

using Poly = std::vector<Rat>;

void trim(Poly& f);
inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }
Poly add(const Poly& f, const Poly& g);
Poly sub(const Poly& f, const Poly& g);
Poly mul(const Poly& f, const Poly& g);
Poly pow(const Poly& f, unsigned e);
void divrem(const Poly& f, const Poly& g, Poly& q, Poly& r);
Poly derivative(const Poly& f);
Poly monic(const Poly& f);
Rat evaluate(const Poly& f, const Rat& x);

nlohmann::json to_json(const Poly& f);
Poly from_json(const nlohmann::json& j);

}  // namespace dp5::qpoly
