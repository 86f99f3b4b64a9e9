#include <doctest.h>

#include <random>

#include "dp5/cyclotomic.hpp"
#include "dp5/errors.hpp"
#include "dp5/matrix.hpp"
#include "dp5/modular.hpp"

using namespace dp5;

namespace {

CycElt random_elt(const CycField& K, std::mt19937_64& rng, int terms = 6, long range = 5) {
  std::vector<Rat> c(K.degree(), Rat(0));
  std::uniform_int_distribution<std::size_t> pos(0, K.degree() - 1);
  std::uniform_int_distribution<long> val(-range, range), den(1, 3);
  for (int i = 0; i < terms; ++i) c[pos(rng)] = Rat(mpz_class(val(rng)), mpz_class(den(rng)));
  return K.from_coeffs(c);
}

// Oracle: reduce a dense polynomial by long division against Phi_n.
std::vector<Rat> reduce_by_division(const qpoly::Poly& f, const CycField& K) {
  qpoly::Poly q, r;
  qpoly::divrem(f, K.cyclotomic_poly(), q, r);
  r.resize(K.degree(), Rat(0));
  return r;
}

qpoly::Poly as_poly(const CycElt& x) {
  qpoly::Poly p = x.coeffs();
  qpoly::trim(p);
  return p;
}

// Matrix of multiplication by x on the power basis.
Matrix<Rat> mult_matrix(const CycElt& x) {
  const CycField& K = x.field();
  const std::size_t n = K.degree();
  Matrix<Rat> m(n, n, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    const CycElt col = x * zeta_power(K, static_cast<i64>(j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coeff(i);
  }
  return m;
}

}  // namespace

TEST_CASE("field parameters") {
  const CycField K1(1), K2(2);
  CHECK(K1.conductor() == 25);
  CHECK(K1.degree() == 20);
  CHECK(K2.degree() == 100);
  const auto phi = K1.cyclotomic_poly();
  CHECK(qpoly::evaluate(phi, Rat(1)) == Rat(5));
  for (std::size_t i = 0; i < phi.size(); ++i)
    CHECK(phi[i] == Rat(i % 5 == 0 ? 1 : 0));
  CHECK_THROWS_AS(CycField(0), DomainError);
  CHECK_THROWS_AS(CycField(kMaxLayer + 1), CapExceeded);
}

TEST_CASE("zeta_power reduction against long division") {
  const CycField K(1);
  CHECK(zeta_power(K, 0).is_one());
  CHECK(zeta_power(K, 25).is_one());
  std::vector<Rat> expect(20, Rat(0));
  for (int i : {0, 5, 10, 15}) expect[i] = Rat(-1);
  CHECK(zeta_power(K, 20).coeffs() == expect);
  for (i64 e = -30; e < 60; ++e) {
    qpoly::Poly mono(static_cast<std::size_t>(((e % 25) + 25) % 25) + 1, Rat(0));
    mono.back() = Rat(1);
    CHECK(zeta_power(K, e).coeffs() == reduce_by_division(mono, K));
  }
}

TEST_CASE("multiplication agrees with naive polynomial product") {
  std::mt19937_64 rng(3);
  for (int r : {1, 2}) {
    const CycField K(r);
    for (int i = 0; i < 20; ++i) {
      const CycElt a = random_elt(K, rng, 12), b = random_elt(K, rng, 12);
      CHECK((a * b).coeffs() == reduce_by_division(qpoly::mul(as_poly(a), as_poly(b)), K));
      CHECK(a * (b + a) == a * b + a * a);
      if (!a.is_zero()) CHECK(a * a.inverse() == K.one());
    }
  }
}

TEST_CASE("serialization round trip") {
  const CycField K(1);
  const CycElt x = zeta_power(K, 3).scaled(Rat(mpz_class(-2), mpz_class(7))) + K.one();
  const auto j = x.to_json();
  CHECK(j.at("layer") == 1);
  CHECK(j.at("coeffs").size() == 20);
  CHECK(j.at("coeffs")[0] == "1");
  CHECK(j.at("coeffs")[3] == "-2/7");
  CHECK(CycElt::from_json(j) == x);
  CHECK(K.to_json().at("conductor") == 25);
}

TEST_CASE("galois action") {
  std::mt19937_64 rng(11);
  const CycField K(1);
  const i64 delta = static_cast<i64>(hensel_delta(1).value);
  CHECK(galois_apply(delta, zeta_power(K, 1)) == zeta_power(K, delta));
  CHECK_THROWS_AS(galois_apply(10, K.one()), DomainError);
  for (int i = 0; i < 20; ++i) {
    const CycElt x = random_elt(K, rng), y = random_elt(K, rng);
    CHECK(galois_apply(1, x) == x);
    CycElt t = x;
    for (int k = 0; k < 4; ++k) t = galois_apply(delta, t);
    CHECK(t == x);
    CHECK(galois_apply(delta, x) != x);
    for (i64 a : {2, 7, 24}) {
      CHECK(galois_apply(a, x + y) == galois_apply(a, x) + galois_apply(a, y));
      CHECK(galois_apply(a, x * y) == galois_apply(a, x) * galois_apply(a, y));
    }
    CHECK(norm(galois_apply(2, x)) == norm(x));
  }
}

TEST_CASE("norm") {
  for (int r : {1, 2, 3}) {
    const CycField K(r);
    CHECK(norm(zeta_power(K, 1) - K.one()) == Rat(5));
    CHECK(norm(K.one()) == Rat(1));
    CHECK(norm(zeta_power(K, 1)) == Rat(1));
    CHECK(norm(K.from_rat(Rat(-2))) == Rat(2).pow(static_cast<long>(K.degree())));
  }
  std::mt19937_64 rng(7);
  const CycField K1(1);
  for (int i = 0; i < 10; ++i) {
    const CycElt x = random_elt(K1, rng, 8);
    CHECK(norm(x) == det_gauss(mult_matrix(x)));  // determinant oracle
  }
  for (int r : {1, 2}) {
    const CycField K(r);
    for (int i = 0; i < 100; ++i) {
      const CycElt x = random_elt(K, rng, 4, 3), y = random_elt(K, rng, 4, 3);
      CHECK(norm(x * y) == norm(x) * norm(y));
    }
  }
}

TEST_CASE("characteristic and minimal polynomials") {
  const CycField K(1);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    const CycElt x = random_elt(K, rng, 5);
    const auto chi = charpoly(x);
    REQUIRE(qpoly::degree(chi) == 20);
    // chi(t) = det(t I - M_x) at a few rational points.
    for (long t : {-2L, 0L, 3L}) {
      auto m = mult_matrix(x);
      for (std::size_t k = 0; k < 20; ++k)
        for (std::size_t l = 0; l < 20; ++l) m(k, l) = (k == l ? Rat(t) : Rat(0)) - m(k, l);
      CHECK(qpoly::evaluate(chi, Rat(t)) == det_gauss(m));
    }
    CHECK(evaluate(chi, x).is_zero());
    const CycElt y = random_elt(K, rng, 5) + K.one();
    CHECK(charpoly_of_ratio(x, y) == charpoly(x / y));
  }

  for (int r : {1, 2}) {
    const CycField Kr(r);
    CHECK(min_poly(zeta_power(Kr, 1)) == Kr.cyclotomic_poly());
  }
  CHECK(min_poly(K.one()) == qpoly::Poly{Rat(-1), Rat(1)});
  CHECK(min_poly(K.from_rat(Rat(3))) == qpoly::Poly{Rat(-3), Rat(1)});

  const CycElt c = zeta_power(K, 1) + zeta_power(K, -1);
  const auto mc = min_poly(c);
  CHECK(qpoly::degree(mc) == 10);
  CHECK(evaluate(mc, c).is_zero());

  // zeta^5 generates Q(zeta_5): degree 4.
  const auto m5 = min_poly(zeta_power(K, 5));
  CHECK(m5 == qpoly::Poly{Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)});

  // Trace of zeta over the fixed field of <delta> has degree 5.
  const i64 delta = static_cast<i64>(hensel_delta(1).value);
  CycElt trace = K.zero();
  CycElt s = zeta_power(K, 1);
  for (int k = 0; k < 4; ++k) {
    trace += s;
    s = galois_apply(delta, s);
  }
  const auto mt = min_poly(trace);
  CHECK(qpoly::degree(mt) == 5);
  CHECK(evaluate(mt, trace).is_zero());

  for (int i = 0; i < 5; ++i) {
    const CycElt x = random_elt(K, rng, 3);
    const auto m = min_poly(x);
    CHECK(20 % qpoly::degree(m) == 0);
    CHECK(evaluate(m, x).is_zero());
  }
}

TEST_CASE("residue embeddings") {
  const CycField K1(1);
  const auto e7 = ResidueEmbedding::make(K1, 7, 1);
  CHECK(e7.residue_degree() == 4);
  CHECK(e7(K1.one()).is_one());
  CHECK_FALSE(e7(zeta_power(K1, 1) - K1.one()).is_zero());
  const FqElt w = e7.zeta_image();
  CHECK(w.pow(25).is_one());
  CHECK_FALSE(w.pow(5).is_one());

  const auto e2 = ResidueEmbedding::make(K1, 2, 1);
  CHECK(e2.residue_degree() == 20);
  CHECK_FALSE(e2(zeta_power(K1, 4) - K1.one()).is_zero());

  CHECK_THROWS_AS(ResidueEmbedding::make(K1, 5, 1), DomainError);
  CHECK_THROWS_AS(ResidueEmbedding::make(K1, 9, 1), DomainError);
  CHECK_THROWS_AS(ResidueEmbedding::make(CycField(3), 2, 1, 64), CapExceeded);
  CHECK_THROWS_AS(e7(K1.from_rat(Rat(mpz_class(1), mpz_class(7)))), DomainError);

  std::mt19937_64 rng(9);
  const auto e11 = ResidueEmbedding::make(K1, 11, 4);
  for (const auto* e : {&e7, &e11}) {
    for (int i = 0; i < 30; ++i) {
      const CycElt x = random_elt(K1, rng), y = random_elt(K1, rng);
      CHECK((*e)(x + y) == (*e)(x) + (*e)(y));
      CHECK((*e)(x * y) == (*e)(x) * (*e)(y));
    }
  }

  const auto j = e7.to_json();
  CHECK(j.at("prime") == 7);
  CHECK(j.at("residue_degree") == 4);
  const auto back = ResidueEmbedding::from_json(K1, j);
  CHECK(back.zeta_image() == e7.zeta_image());
  auto bad = j;
  bad["zeta_image"] = nlohmann::json::array({1});
  CHECK_THROWS_AS(ResidueEmbedding::from_json(K1, bad), DomainError);

  // Same seed, same embedding.
  CHECK(ResidueEmbedding::make(K1, 7, 1).zeta_image() == e7.zeta_image());
}
