#include "dp5/qpoly.hpp"

#include <algorithm>

#include "dp5/errors.hpp"

namespace dp5::qpoly {

void trim(Poly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

Poly add(const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  trim(r);
  return r;
}

Poly sub(const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
  trim(r);
  return r;
}

Poly mul(const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  }
  trim(r);
  return r;
}

Poly pow(const Poly& f, unsigned e) {
  Poly result{Rat(1)};
  Poly base = f;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

void divrem(const Poly& f, const Poly& g, Poly& q, Poly& r) {
  if (g.empty()) throw DomainError("polynomial division by zero");
  r = f;
  trim(r);
  const int dg = degree(g);
  q.assign(degree(r) >= dg ? static_cast<std::size_t>(degree(r) - dg + 1) : 0, Rat(0));
  const Rat inv_lead = g.back().inverse();
  for (int k = degree(r); k >= dg; --k) {
    const Rat c = r[static_cast<std::size_t>(k)] * inv_lead;
    q[static_cast<std::size_t>(k - dg)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(k - dg + j)] -= c * g[static_cast<std::size_t>(j)];
  }
  trim(r);
  trim(q);
}

Poly derivative(const Poly& f) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * Rat(static_cast<long>(i));
  trim(d);
  return d;
}

Poly monic(const Poly& f) {
  if (f.empty()) return f;
  const Rat inv = f.back().inverse();
  Poly r = f;
  for (auto& c : r) c *= inv;
  return r;
}

Rat evaluate(const Poly& f, const Rat& x) {
  Rat acc(0);
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

nlohmann::json to_json(const Poly& f) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : f) j.push_back(c.str());
  return j;
}

Poly from_json(const nlohmann::json& j) {
  Poly f;
  for (const auto& c : j) f.push_back(Rat::parse(c.get<std::string>()));
  trim(f);
  return f;
}

}  // namespace dp5::qpoly
