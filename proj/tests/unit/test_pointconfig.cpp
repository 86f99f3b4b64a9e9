#include <doctest.h>

#include <random>
#include <set>

#include "dp5/errors.hpp"
#include "dp5/modular.hpp"
#include "dp5/mpoly.hpp"
#include "dp5/pointconfig.hpp"

using namespace dp5;

namespace {

using F = Fp<10007>;

F random_unit(std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> d(1, 10006);
  return F(d(rng));
}

template <class K>
PointConfig<K> transform(const PointConfig<K>& c, const Matrix<K>& g) {
  PointConfig<K> out = c;
  out.points.clear();
  for (const auto& p : c.points) {
    std::array<K, 3> img{zero_like(p[0]), zero_like(p[0]), zero_like(p[0])};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) img[i] = img[i] + g(i, j) * p[j];
    out.points.emplace_back(img[0], img[1], img[2]);
  }
  return out;
}

std::set<std::string> keys(const std::vector<CycPoint>& pts) {
  std::set<std::string> s;
  for (const auto& p : pts) s.insert(p.key());
  return s;
}

}  // namespace

TEST_CASE("projective points normalize") {
  const ProjPoint<Rat> p(Rat(2), Rat(4), Rat(2));
  CHECK(p[0] == Rat(1));
  CHECK(p[1] == Rat(2));
  CHECK(p[2] == Rat(1));
  const ProjPoint<Rat> q(Rat(3), Rat(6), Rat(0));
  CHECK(q[0] == Rat(mpz_class(1), mpz_class(2)));
  CHECK(q[1] == Rat(1));
  CHECK(p == ProjPoint<Rat>(Rat(-1), Rat(-2), Rat(-1)));
  CHECK_THROWS_AS(ProjPoint<Rat>(Rat(0), Rat(0), Rat(0)), DomainError);
  CHECK(degree_for_points(6) == 3);
  CHECK(degree_for_points(5) == 4);
  CHECK_THROWS_AS(degree_for_points(4), DomainError);
}

TEST_CASE("orbit exponents and tau stability") {
  const std::vector<std::pair<u64, u64>> expect{{2, 1}, {14, 7}, {23, 24}, {11, 18}};
  CHECK(orbit_exponents(1) == expect);
  for (int r : {1, 2, 3}) {
    const u64 n = hensel_delta(r).modulus;
    const u64 d = hensel_delta(r).value;
    const auto ex = orbit_exponents(r);
    REQUIRE(ex.size() == 4);
    // (2,1), (2d,d), (-2,-1), (-2d,-d) mod n.
    CHECK(ex[1] == std::pair<u64, u64>{2 * d % n, d});
    CHECK(ex[2] == std::pair<u64, u64>{n - 2, n - 1});
    CHECK(ex[3] == std::pair<u64, u64>{(n - 2 * d % n) % n, n - d});
    const auto orbit = build_orbit(r);
    CHECK(keys(orbit).size() == 4);

    // tau sends the k-th orbit point to the (k+1)-th.
    const auto i = static_cast<i64>(d);
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& p = orbit[k];
      const CycPoint img(galois_apply(i, p[0]), galois_apply(i, p[1]), galois_apply(i, p[2]));
      CHECK(img == orbit[(k + 1) % 4]);
    }
  }
}

TEST_CASE("configurations") {
  for (int r : {1, 2}) {
    const auto c3 = config(r, 3), c4 = config(r, 4);
    CHECK(c3.points.size() == 6);
    CHECK(c4.points.size() == 5);
    const auto k3 = keys(c3.points);
    for (const auto& p : c4.points) CHECK(k3.count(p.key()) == 1);
    const auto d = static_cast<i64>(hensel_delta(r).value);
    CHECK(galois_stable(c3, d));
    CHECK(galois_stable(c4, d));
    CHECK_FALSE(galois_stable(c3, 2));
  }
  CHECK_THROWS_AS(config(1, 5), DomainError);
}

TEST_CASE("cyclotomic configuration JSON") {
  const auto c = config(1, 3);
  const auto j = to_json(c);
  CHECK(j.at("degree") == 3);
  CHECK(j.at("layer") == 1);
  CHECK(j.at("delta") == 7);
  CHECK(j.at("points").size() == 6);
  const auto back = cyc_config_from_json(j);
  CHECK(back.points == c.points);
  CHECK(back.degree == 3);
  auto bad = j;
  bad["delta"] = 8;
  CHECK_THROWS_AS(cyc_config_from_json(bad), DomainError);
  bad = j;
  bad["degree"] = 4;
  CHECK_THROWS_AS(cyc_config_from_json(bad), DomainError);
}

TEST_CASE("T_{u,v} over the rationals") {
  const auto t = tuv_config(Rat(2), Rat(3));
  CHECK(t.points.size() == 6);
  const auto rep = check_general_position(t);
  CHECK(rep.verdict);
  CHECK(rep.lines_checked == 20);
  CHECK(rep.conic_checked);
  CHECK_FALSE(rep.witness.has_value());

  const auto [f, nz] = f_criterion(Rat(2), Rat(3));
  CHECK(f == Rat(-210000));
  CHECK(nz);
  CHECK(f_criterion(Rat(1), Rat(7)).first == Rat(0));
  CHECK_THROWS_AS(f_criterion(Rat(0), Rat(2)), DomainError);
  CHECK_THROWS_AS(tuv_config(Rat(0), Rat(2)), DomainError);

  // u = v: points coincide.
  const auto same = check_general_position(tuv_config(Rat(2), Rat(2)));
  CHECK_FALSE(same.verdict);
  REQUIRE(same.witness.has_value());
  CHECK(same.witness->kind == "duplicate");

  // u = -1: (u^2:u:1) = (u^-2:u^-1:1).
  CHECK_FALSE(check_general_position(tuv_config(Rat(-1), Rat(3))).verdict);

  // Hand-built collinear triple.
  PointConfig<Rat> line;
  line.points = {ProjPoint<Rat>(Rat(1), Rat(0), Rat(1)), ProjPoint<Rat>(Rat(2), Rat(0), Rat(1)),
                 ProjPoint<Rat>(Rat(3), Rat(0), Rat(1)), ProjPoint<Rat>(Rat(0), Rat(1), Rat(0)),
                 ProjPoint<Rat>(Rat(0), Rat(3), Rat(1))};
  const auto lr = check_general_position(line);
  CHECK_FALSE(lr.verdict);
  REQUIRE(lr.witness.has_value());
  CHECK(lr.witness->kind == "line");
  CHECK(lr.witness->determinant == "0");

  // Six points on x^2 + y^2 = z^2 with no three collinear.
  PointConfig<Rat> conic;
  conic.points = {ProjPoint<Rat>(Rat(3), Rat(4), Rat(5)),    ProjPoint<Rat>(Rat(4), Rat(3), Rat(5)),
                  ProjPoint<Rat>(Rat(5), Rat(12), Rat(13)),  ProjPoint<Rat>(Rat(12), Rat(5), Rat(13)),
                  ProjPoint<Rat>(Rat(-3), Rat(4), Rat(5)),   ProjPoint<Rat>(Rat(8), Rat(15), Rat(17))};
  const auto cr = check_general_position(conic);
  CHECK_FALSE(cr.verdict);
  REQUIRE(cr.witness.has_value());
  CHECK(cr.witness->kind == "conic");
  CHECK(cr.lines_checked == 20);

  const auto tj = to_json(tuv_config(Rat(2), Rat(3), 4, {}, FamilyProvenance{"2", "3"}));
  CHECK(tj.at("points").size() == 5);
  CHECK(tj.at("u") == "2");
}

TEST_CASE("conic determinant closed form") {
  using P = MPoly<Rat>;
  const std::vector<std::string> vars{"u", "v"};
  const P u = P::variable(vars, "u"), v = P::variable(vars, "v"), one = P::constant(vars, Rat(1));
  const P zero(vars);
  // Points scaled by u^2 and v^2 so every entry is polynomial; the scaling
  // multiplies the determinant by u^4 v^4.
  const std::vector<std::array<P, 3>> pts{{u * u, u, one}, {one, u, u * u}, {v * v, v, one},
                                          {one, v, v * v}, {one, zero, zero}, {zero, one, zero}};
  Matrix<P> m(6, 6, zero);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& [x, y, z] = pts[i];
    const std::array<P, 6> row{x * x, y * y, z * z, x * y, x * z, y * z};
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = row[j];
  }
  const P det = determinant(m);
  const P rest = (u + one) * (u - one) * (v + one) * (v - one) * (u - v).pow(2) * (u * v - one).pow(2);
  // det(original) * u^3 v^3 = det / (u v) = -rest in this point order.
  CHECK(det == -(u * v * rest));
}

TEST_CASE("general position is PGL3 invariant") {
  std::mt19937_64 rng(17);
  int trials = 0;
  while (trials < 20) {
    const F u = random_unit(rng), v = random_unit(rng);
    const auto c = tuv_config(u, v);
    Matrix<F> g(3, 3, F(0));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) = random_unit(rng);
    if (is_zero(det_expansion(g))) continue;
    ++trials;
    CHECK(check_general_position(transform(c, g)).verdict == check_general_position(c).verdict);
  }
  // Also on degenerate members.
  Matrix<F> g(3, 3, F(0));
  g(0, 0) = F(2); g(0, 1) = F(1); g(1, 1) = F(5); g(2, 0) = F(3); g(2, 2) = F(1);
  const auto c = tuv_config(F(1), F(9));
  CHECK_FALSE(check_general_position(transform(c, g)).verdict);
}

TEST_CASE("criterion equivalence over F_10007") {
  std::mt19937_64 rng(2024);
  int disagreements = 0, failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const F u = random_unit(rng), v = random_unit(rng);
    const bool gp = check_general_position(tuv_config(u, v)).verdict;
    const bool nz = f_criterion(u, v).second;
    if (gp != nz) ++disagreements;
    if (!gp) ++failures;
  }
  CHECK(disagreements == 0);
  // Sample points on each linear factor of f, where the verdict must fail.
  for (int i = 0; i < 20; ++i) {
    const F w = random_unit(rng);
    const std::vector<std::pair<F, F>> on{{F(1), w}, {F(-1), w}, {w, F(1)}, {w, F(-1)}, {w, w},
                                          {w, -w}, {w, F(1) / w}, {w, F(-1) / w}};
    for (const auto& [a, b] : on) {
      CHECK_FALSE(f_criterion(a, b).second);
      CHECK_FALSE(check_general_position(tuv_config(a, b)).verdict);
    }
  }
}

TEST_CASE("degree-4 configurations skip the conic") {
  const auto c = tuv_config(Rat(2), Rat(3), 4);
  const auto rep = check_general_position(c);
  CHECK(rep.verdict);
  CHECK(rep.lines_checked == 10);
  CHECK_FALSE(rep.conic_checked);
}

TEST_CASE("f at the layer-one orbit") {
  const CycField K(1);
  const auto d = static_cast<i64>(hensel_delta(1).value);
  const auto [f, nz] = f_criterion(zeta_power(K, 1), zeta_power(K, d));
  CHECK(nz);
  CHECK_FALSE(f.is_zero());
  CHECK(check_general_position(config(1, 3)).verdict);
  CHECK(check_general_position(config(1, 4)).verdict);
}

TEST_CASE("mu values") {
  for (int r : {1, 2}) {
    const auto n = static_cast<i64>(hensel_delta(r).modulus);
    const auto mus = certificate_mus(r);
    REQUIRE(mus.size() == 4);
    std::set<i64> residues;
    for (i64 m : mus) {
      CHECK(m % 5 != 0);
      residues.insert(m % 5);
    }
    CHECK(residues == std::set<i64>{1, 2, 3, 4});
    // Exponent pairs of the orbit: first coordinates reduce to distinct classes mod 5.
    std::set<u64> e1;
    for (auto [a, b] : orbit_exponents(r)) e1.insert(b % 5);
    CHECK(e1.size() == 4);
    CHECK(mus[0] == 4 % n);
  }
}

TEST_CASE("powers of five") {
  CHECK(as_power_of_five(Rat(125)).ok);
  CHECK(as_power_of_five(Rat(125)).k == 3);
  CHECK(as_power_of_five(Rat(-5)).sign == -1);
  CHECK_FALSE(as_power_of_five(Rat(10)).ok);
  CHECK_FALSE(as_power_of_five(Rat(0)).ok);
  CHECK_FALSE(as_power_of_five(Rat(mpz_class(1), mpz_class(5))).ok);
  CHECK(as_power_of_five(Rat(1)).ok);
  CHECK(power_of_five_string(Rat(5)) == "5^1");
  CHECK(power_of_five_string(Rat(-25)) == "-5^2");
  CHECK(power_of_five_string(Rat(6)) == "6");
}

TEST_CASE("good reduction certificates") {
  const auto c7 = good_reduction_certificate(1, 3, 7, 1);
  CHECK(c7.valid);
  CHECK(c7.gp.verdict);
  CHECK(c7.residue_degree == 4);
  REQUIRE(c7.norms.size() == 4);
  for (const auto& m : c7.norms) CHECK(power_of_five_string(m.norm) == "5^1");
  CHECK(c7.line_norms.size() == 20);
  for (const auto& l : c7.line_norms) CHECK(l.factor.ok);

  const auto c2 = good_reduction_certificate(1, 3, 2, 1);
  CHECK(c2.valid);
  CHECK(c2.residue_degree == 20);

  CHECK_THROWS_AS(good_reduction_certificate(1, 3, 5, 1), DomainError);
  CHECK_THROWS_AS(good_reduction_certificate(2, 3, 2, 1, true, 64), CapExceeded);

  const auto j = to_json(c7);
  CHECK(j.at("prime") == 7);
  CHECK(j.at("norms").size() == 4);
  CHECK(j.at("norms")[0].at("norm") == "5^1");
  CHECK(j.at("norms")[0].at("k") == 1);
  CHECK(verify_certificate(j));
  CHECK(verify_certificate(nlohmann::json::parse(j.dump())));

  auto tampered = j;
  tampered["norms"][1]["norm"] = "5^2";
  CHECK_FALSE(verify_certificate(tampered));
  tampered = j;
  tampered["general_position"]["verdict"] = false;
  CHECK_FALSE(verify_certificate(tampered));

  // Without norms, and for a degree-4 configuration.
  const auto lean = good_reduction_certificate(1, 4, 11, 3, false);
  CHECK(lean.valid);
  CHECK_FALSE(lean.has_norms);
  CHECK(verify_certificate(to_json(lean)));

  // Deterministic in the seed.
  CHECK(to_json(good_reduction_certificate(1, 3, 7, 1)) == j);
}
