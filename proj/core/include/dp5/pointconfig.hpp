#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/cyclotomic.hpp"
#include "dp5/errors.hpp"
#include "dp5/finite_field.hpp"
#include "dp5/matrix.hpp"
#include "dp5/parallel.hpp"
#include "dp5/rat.hpp"

namespace dp5 {

// Point of P^2 over a field, scaled so its last nonzero coordinate is 1.
template <class K>
class ProjPoint {
 public:
  ProjPoint(K x, K y, K z) : c_{std::move(x), std::move(y), std::move(z)} {
    std::size_t last = 3;
    for (std::size_t i = 3; i-- > 0;)
      if (!is_zero(c_[i])) { last = i; break; }
    if (last == 3) throw DomainError("projective point with all coordinates zero");
    if (!(c_[last] == one_like(c_[last]))) {
      const K inv = one_like(c_[last]) / c_[last];
      for (std::size_t i = 0; i < last; ++i) c_[i] = c_[i] * inv;
      c_[last] = one_like(c_[last]);
    }
  }

  const K& operator[](std::size_t i) const { return c_[i]; }
  const std::array<K, 3>& coords() const { return c_; }
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }

  std::string key() const { return to_string(c_[0]) + "|" + to_string(c_[1]) + "|" + to_string(c_[2]); }

 private:
  std::array<K, 3> c_;
};

struct LayerProvenance {
  int layer;
  u64 delta;
};
struct FamilyProvenance {
  std::string u, v;
};
using Provenance = std::variant<std::monostate, LayerProvenance, FamilyProvenance>;

// Planar configuration whose blow-up is a del Pezzo surface of degree
// 9 - (number of points). Builders store points in canonical order.
template <class K>
struct PointConfig {
  int degree = 3;
  std::vector<ProjPoint<K>> points;
  nlohmann::json field;
  Provenance provenance;

  void canonicalize() {
    std::stable_sort(points.begin(), points.end(),
                     [](const ProjPoint<K>& a, const ProjPoint<K>& b) { return a.key() < b.key(); });
  }
};

inline int degree_for_points(std::size_t n) {
  if (n != 5 && n != 6) throw DomainError("configurations must have 5 or 6 points");
  return static_cast<int>(9 - n);
}

struct GPWitness {
  std::string kind;  // "duplicate", "line" or "conic"
  std::vector<std::size_t> indices;
  std::string determinant;
};

struct GPReport {
  bool verdict = true;
  std::optional<GPWitness> witness;
  std::size_t lines_checked = 0;
  bool conic_checked = false;
};
nlohmann::json to_json(const GPReport& r);

template <class K>
K line_determinant(const ProjPoint<K>& a, const ProjPoint<K>& b, const ProjPoint<K>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Rows (x^2, y^2, z^2, xy, xz, yz) for each of six points.
template <class K>
Matrix<K> conic_matrix(const std::vector<ProjPoint<K>>& pts) {
  if (pts.size() != 6) throw DomainError("conic matrix needs exactly six points");
  Matrix<K> m(6, 6, zero_like(pts[0][0]));
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& [x, y, z] = pts[i].coords();
    const std::array<K, 6> row{x * x, y * y, z * z, x * y, x * z, y * z};
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = row[j];
  }
  return m;
}

// All C(n,3) index triples in lexicographic order.
inline std::vector<std::array<std::size_t, 3>> index_triples(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

template <class K>
std::vector<ProjPoint<K>> sorted_points(const PointConfig<K>& c) {
  auto copy = c;
  copy.canonicalize();
  return copy.points;
}

// Determinants of every triple of points, in canonical point order.
template <class K>
std::vector<K> line_determinants(const PointConfig<K>& c, unsigned jobs = 1) {
  const auto pts = sorted_points(c);
  const auto triples = index_triples(pts.size());
  std::vector<std::optional<K>> dets(triples.size());
  parallel_for(triples.size(), [&](std::size_t t) {
    const auto& [i, j, k] = triples[t];
    dets[t] = line_determinant(pts[i], pts[j], pts[k]);
  }, jobs);
  std::vector<K> out;
  for (auto& d : dets) out.push_back(std::move(*d));
  return out;
}

// No three points collinear and, for six points, not all on one conic.
// Witness indices refer to the canonical order of the points.
template <class K>
GPReport check_general_position(const PointConfig<K>& c, unsigned jobs = 1) {
  GPReport report;
  const auto pts = sorted_points(c);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) {
        report.verdict = false;
        report.witness = GPWitness{"duplicate", {i, j}, "0"};
        return report;
      }
  const auto triples = index_triples(pts.size());
  const auto dets = line_determinants(c, jobs);
  report.lines_checked = dets.size();
  for (std::size_t t = 0; t < dets.size(); ++t) {
    if (is_zero(dets[t])) {
      report.verdict = false;
      report.witness = GPWitness{"line", {triples[t][0], triples[t][1], triples[t][2]}, to_string(dets[t])};
      return report;
    }
  }
  if (pts.size() == 6) {
    report.conic_checked = true;
    const K d = det_expansion(conic_matrix(pts));
    if (is_zero(d)) {
      report.verdict = false;
      report.witness = GPWitness{"conic", {0, 1, 2, 3, 4, 5}, to_string(d)};
    }
  }
  return report;
}

// T_{u,v}: (u^2:u:1), (u^-2:u^-1:1), (v^2:v:1), (v^-2:v^-1:1), (1:0:0) and,
// for degree 3, (0:1:0).
template <class K>
PointConfig<K> tuv_config(const K& u, const K& v, int degree = 3, nlohmann::json field = {},
                          Provenance provenance = {}) {
  if (degree != 3 && degree != 4) throw DomainError("degree must be 3 or 4");
  if (is_zero(u) || is_zero(v)) throw DomainError("T_{u,v} needs invertible u and v");
  const K one = one_like(u), zero = zero_like(u);
  const K ui = one / u, vi = one / v;
  PointConfig<K> c;
  c.degree = degree;
  c.field = std::move(field);
  c.provenance = std::move(provenance);
  c.points = {ProjPoint<K>(u * u, u, one), ProjPoint<K>(ui * ui, ui, one),
              ProjPoint<K>(v * v, v, one), ProjPoint<K>(vi * vi, vi, one),
              ProjPoint<K>(one, zero, zero)};
  if (degree == 3) c.points.emplace_back(zero, one, zero);
  c.canonicalize();
  return c;
}

// f(u,v) = (u^4-1)(v^4-1)(u^2-v^2)(u^2 v^2-1) and whether it is nonzero.
template <class K>
std::pair<K, bool> f_criterion(const K& u, const K& v) {
  if (is_zero(u) || is_zero(v)) throw DomainError("f_criterion needs invertible u and v");
  const K one = one_like(u);
  const K u2 = u * u, v2 = v * v;
  K f = (u2 * u2 - one) * (v2 * v2 - one) * (u2 - v2) * (u2 * v2 - one);
  const bool nonzero = !is_zero(f);
  return {std::move(f), nonzero};
}

// ---- cyclotomic configurations ----

using CycPoint = ProjPoint<CycElt>;
using CycConfig = PointConfig<CycElt>;

// Exponents (2a, a) mod n of the orbit of (zeta^2 : zeta : 1) under
// tau: zeta -> zeta^delta, in the order P, tau P, tau^2 P, tau^3 P.
std::vector<std::pair<u64, u64>> orbit_exponents(int r);
std::vector<CycPoint> build_orbit(int r);
// Orbit plus (1:0:0), and (0:1:0) for degree 3.
CycConfig config(int r, int degree);
// Whether zeta -> zeta^a maps the point set onto itself.
bool galois_stable(const CycConfig& c, i64 a);
CycConfig apply_galois(const CycConfig& c, i64 a);

// Image of the configuration in the residue field of the embedding.
PointConfig<FqElt> reduce_config(const CycConfig& c, const ResidueEmbedding& e);

nlohmann::json to_json(const CycConfig& c);
CycConfig cyc_config_from_json(const nlohmann::json& j);

// Rational configurations (T_{u,v} over Q).
nlohmann::json to_json(const PointConfig<Rat>& c);
PointConfig<Rat> rat_config_from_json(const nlohmann::json& j);

// Writes n as sign * 5^k when possible.
struct PowerOfFive {
  bool ok = false;
  int sign = 1;
  unsigned k = 0;
};
PowerOfFive as_power_of_five(const Rat& n);
std::string power_of_five_string(const Rat& n);

struct MuNorm {
  i64 mu;
  Rat norm;
  PowerOfFive factor;
};

struct LineNorm {
  std::array<std::size_t, 3> indices;
  Rat norm;
  PowerOfFive factor;
};

struct GoodReductionCertificate {
  nlohmann::json config;
  int layer = 1;
  int degree = 3;
  u64 prime = 0;
  unsigned residue_degree = 0;
  nlohmann::json embedding;
  GPReport gp;
  bool has_norms = false;
  std::vector<MuNorm> norms;
  std::vector<LineNorm> line_norms;
  bool valid = false;
};

// mu in {4, 4 delta, 2 delta - 2, 2 delta + 2}, reduced mod n.
std::vector<i64> certificate_mus(int r);

// Reduces the configuration at a prime above q through a seeded embedding
// and checks general position there. With norms, also records
// norm(zeta^mu - 1) for each mu and the norm of every line determinant
// over Q(zeta); each must be +-5^k. CapExceeded when the residue degree
// exceeds degree_cap.
GoodReductionCertificate good_reduction_certificate(const CycConfig& c, u64 q, u64 seed,
                                                    bool with_norms = true,
                                                    unsigned degree_cap = 1024, unsigned jobs = 0);
GoodReductionCertificate good_reduction_certificate(int r, int degree, u64 q, u64 seed,
                                                    bool with_norms = true,
                                                    unsigned degree_cap = 1024, unsigned jobs = 0);
nlohmann::json to_json(const GoodReductionCertificate& c);

// Recomputes a certificate from its serialized embedding data and reports
// whether every recorded verdict and norm is reproduced.
bool verify_certificate(const nlohmann::json& j, unsigned jobs = 0);

}  // namespace dp5
