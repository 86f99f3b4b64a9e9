#include <doctest.h>

#include <algorithm>
#include <random>

#include "dp5/errors.hpp"
#include "dp5/invariants.hpp"
#include "dp5/modular.hpp"

using namespace dp5;

namespace {

using P = MPoly<Rat>;

Rat rnd(std::mt19937_64& rng, long lo, long hi) {
  return Rat(std::uniform_int_distribution<long>(lo, hi)(rng));
}

BinaryForm<Rat> random_quintic(std::mt19937_64& rng, long range = 6) {
  std::vector<Rat> c;
  for (int k = 0; k < 6; ++k) c.push_back(rnd(rng, -range, range));
  if (c[0].is_zero()) c[0] = Rat(1);
  return BinaryForm<Rat>(5, c);
}

// Every integer matrix with entries in [-5, 5] and determinant 1.
std::vector<std::array<Rat, 4>> sl2_small() {
  std::vector<std::array<Rat, 4>> out;
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -5; c <= 5; ++c)
        for (long d = -5; d <= 5; ++d)
          if (a * d - b * c == 1) out.push_back({Rat(a), Rat(b), Rat(c), Rat(d)});
  return out;
}

// f = prod (t - r_i w); oracle discriminant prod_{i<j} (r_i - r_j)^2.
BinaryForm<Rat> from_roots(const std::vector<Rat>& roots) {
  BinaryForm<Rat> f = BinaryForm<Rat>::constant(Rat(1));
  for (const auto& r : roots) f = f * BinaryForm<Rat>(1, {Rat(1), -r});
  return f;
}

Rat root_discriminant(const std::vector<Rat>& roots) {
  Rat d(1);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) d *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
  return d;
}

InvariantVector<Rat> iv(std::vector<Rat> v) { return {{4, 8, 12}, std::move(v), {}}; }

}  // namespace

TEST_CASE("Clebsch-Salmon invariants") {
  const auto cs = clebsch_salmon(std::vector<Rat>(5, Rat(1)));
  CHECK(cs.values == std::array<Rat, 5>{Rat(-15), Rat(5), Rat(5), Rat(10), Rat(1)});
  CHECK(clebsch_salmon(std::vector<Rat>{Rat(2), Rat(0), Rat(3), Rat(1), Rat(5)}).values[4] == Rat(0));
  CHECK_THROWS_AS(clebsch_salmon(std::vector<Rat>(4, Rat(1))), DomainError);

  CHECK(elementary_symmetric(std::vector<Rat>{Rat(1), Rat(2), Rat(3)}) ==
        std::vector<Rat>{Rat(6), Rat(11), Rat(6)});

  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    std::vector<Rat> a;
    for (int i = 0; i < 5; ++i) a.push_back(Rat(mpz_class(rnd(rng, -9, 9).num()), mpz_class(rnd(rng, 1, 4).num())));
    const auto ref = clebsch_salmon(a).values;
    std::vector<int> perm{0, 1, 2, 3, 4};
    int count = 0;
    do {
      std::vector<Rat> b;
      for (int i : perm) b.push_back(a[static_cast<std::size_t>(i)]);
      CHECK(clebsch_salmon(b).values == ref);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(count == 120);
  }

  // a -> lambda a scales I_d by lambda^d, with lambda symbolic.
  const std::vector<std::string> vars{"l"};
  const P l = P::variable(vars, "l");
  const std::vector<Rat> base{Rat(2), Rat(-1), Rat(3), Rat(5), Rat(7)};
  std::vector<P> scaled;
  for (const auto& x : base) scaled.push_back(l.scaled(x));
  const auto sym = clebsch_salmon(scaled).values;
  const auto num = clebsch_salmon(base).values;
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(sym[i] == l.pow(static_cast<unsigned>(CSInvariants<Rat>::weights[i])).scaled(num[i]));
}

TEST_CASE("weighted projective equality") {
  const auto a = iv({Rat(3), Rat(-2), Rat(5)});
  for (long lam : {2L, -3L}) {
    const Rat L(lam);
    CHECK(weighted_equal(a, iv({L.pow(4) * Rat(3), L.pow(8) * Rat(-2), L.pow(12) * Rat(5)})));
  }
  CHECK(weighted_equal(a, a));
  // lambda^4 = 1 forces lambda^8 = 1.
  CHECK_FALSE(weighted_equal(iv({Rat(1), Rat(1), Rat(0)}), iv({Rat(1), Rat(-1), Rat(0)})));
  // lambda = i: lambda^4 = 1, lambda^8 = 1, lambda^12 = 1 but sign on weight 2?
  InvariantVector<Rat> w2{{2, 4}, {Rat(1), Rat(1)}, {}}, w2b{{2, 4}, {Rat(-1), Rat(1)}, {}};
  CHECK(weighted_equal(w2, w2b));
  CHECK_FALSE(weighted_equal(iv({Rat(1), Rat(0), Rat(1)}), iv({Rat(1), Rat(2), Rat(1)})));
  CHECK_FALSE(weighted_equal(a, iv({Rat(3), Rat(-2), Rat(6)})));
  CHECK_THROWS_AS(weighted_equal(a, iv({Rat(0), Rat(0), Rat(0)})), DomainError);
  CHECK_THROWS_AS(weighted_equal(a, InvariantVector<Rat>{{4, 8}, {Rat(1), Rat(1)}, {}}), DomainError);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto x = iv({rnd(rng, 1, 9), rnd(rng, -9, 9), rnd(rng, -9, 9)});
    const auto y = iv({rnd(rng, 1, 9), rnd(rng, -9, 9), rnd(rng, -9, 9)});
    CHECK(weighted_equal(x, x));
    CHECK(weighted_equal(x, y) == weighted_equal(y, x));
  }
  const auto j = to_json(a);
  CHECK(j.at("weights") == nlohmann::json::array({4, 8, 12}));
  CHECK(j.at("values")[1] == "-2");
}

TEST_CASE("binary forms and transvectants") {
  const BinaryForm<Rat> t2(2, {Rat(1), Rat(0), Rat(0)}), w2(2, {Rat(0), Rat(0), Rat(1)});
  CHECK(transvectant(t2, w2, 2) == BinaryForm<Rat>::constant(Rat(1)));
  CHECK_THROWS_AS(transvectant(t2, w2, 3), DomainError);

  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_quintic(rng);
    const BinaryForm<Rat> g(3, {rnd(rng, -5, 5), rnd(rng, -5, 5), rnd(rng, -5, 5), rnd(rng, -5, 5)});
    CHECK(transvectant(f, g, 0) == f * g);
    for (int k : {1, 3, 5}) CHECK(transvectant(f, f, k).is_zero());
    // (q,q)^2 = 2(ac - b^2) for q = a t^2 + 2b tw + c w^2.
    const Rat a = rnd(rng, -7, 7), b = rnd(rng, -7, 7), c = rnd(rng, -7, 7);
    const BinaryForm<Rat> q(2, {a, Rat(2) * b, c});
    CHECK(transvectant(q, q, 2) == BinaryForm<Rat>::constant(Rat(2) * (a * c - b * b)));
    // Substitution oracle: f(m00 x + m01, m10 x + m11) at w = 1.
    const std::array<Rat, 4> m{Rat(2), Rat(1), Rat(3), Rat(2)};
    const auto fs = f.substitute(m);
    for (long x : {-2L, 1L, 4L}) {
      const Rat X(x), den = m[2] * X + m[3];
      CHECK(fs.dehomogenized_at(X) == den.pow(5) * f.dehomogenized_at((m[0] * X + m[1]) / den));
    }
  }

  const auto f = from_roots({Rat(1), Rat(2), Rat(-3), Rat(5), Rat(mpz_class(1), mpz_class(2))});
  const auto back = binary_form_from_json(to_json(f));
  CHECK(back == f);
  CHECK(to_json(f).at("deg") == 5);
  CHECK_THROWS_AS(BinaryForm<Rat>(5, {Rat(1)}), DomainError);
  CHECK_THROWS_AS(binary_form_from_json(nlohmann::json{{"deg", 2}, {"coeffs", {"1", "2"}}}), DomainError);
}

TEST_CASE("discriminant") {
  const std::vector<std::vector<Rat>> roots{{Rat(1), Rat(2), Rat(3), Rat(5), Rat(-1)},
                                            {Rat(0), Rat(4), Rat(-2), Rat(7), Rat(mpz_class(1), mpz_class(3))}};
  for (const auto& r : roots) CHECK(discriminant(from_roots(r)) == root_discriminant(r));
  // Planted double root t = 0.
  CHECK(discriminant(from_roots({Rat(0), Rat(0), Rat(1), Rat(2), Rat(3)})).is_zero());
  // Nonmonic: disc(c f) = c^(2n-2) disc(f).
  const auto g = from_roots(roots[0]).scaled(Rat(3));
  CHECK(discriminant(g) == Rat(3).pow(8) * root_discriminant(roots[0]));
}

TEST_CASE("quintic invariants: SL2 invariance and weights") {
  std::mt19937_64 rng(99);
  const auto mats = sl2_small();
  REQUIRE(mats.size() > 100);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_quintic(rng);
    const auto a = quintic_invariants(f), b = quintic_invariants(f.substitute(mats[pick(rng)]));
    CHECK(a.I4 == b.I4);
    CHECK(a.I8 == b.I8);
    CHECK(a.I12 == b.I12);
    CHECK(*a.delta == *b.delta);
  }
  // Nondegenerate chain on a generic form.
  const auto inv = quintic_invariants(random_quintic(rng));
  CHECK_FALSE(inv.I4.is_zero());
  CHECK_FALSE(inv.I8.is_zero());
  CHECK_FALSE(inv.I12.is_zero());

  // f -> lambda f scales by (lambda^4, lambda^8, lambda^12, lambda^8), lambda symbolic.
  const std::vector<std::string> vars{"l"};
  const P l = P::variable(vars, "l");
  const auto f = random_quintic(rng);
  std::vector<P> c;
  for (const auto& x : f.coeffs()) c.push_back(l.scaled(x));
  const auto s = quintic_invariants(BinaryForm<P>(5, c));
  const auto n = quintic_invariants(f);
  CHECK(s.I4 == l.pow(4).scaled(n.I4));
  CHECK(s.I8 == l.pow(8).scaled(n.I8));
  CHECK(s.I12 == l.pow(12).scaled(n.I12));
  CHECK(*s.delta == l.pow(8).scaled(*n.delta));
  CHECK_THROWS_AS(quintic_invariants(BinaryForm<Rat>(2, {Rat(1), Rat(0), Rat(1)})), DomainError);
}

TEST_CASE("closed-form pencil") {
  const auto [a, b] = pencil_parameters(Rat(2), Rat(3));
  CHECK(a == Rat(mpz_class(-35), mpz_class(6)));
  CHECK(b == Rat(mpz_class(31), mpz_class(3)));
  CHECK(pencil_parameters(Rat(3), Rat(2)) == std::pair<Rat, Rat>{a, b});
  CHECK(pencil_parameters(Rat(1), Rat(1)) == std::pair<Rat, Rat>{Rat(-4), Rat(6)});
  CHECK_THROWS_AS(pencil_parameters(Rat(0), Rat(1)), DomainError);

  const std::vector<std::string> vars{"a", "b"};
  const P A = P::variable(vars, "a"), B = P::variable(vars, "b"), one = P::constant(vars, Rat(1)),
          zero(vars);
  const auto pencil = closed_form_pencil(A, B);

  // The displayed matrices are the quadric_matrix convention applied to F and G.
  std::vector<P> qf(15, zero), qg(15, zero);
  const auto mons = quadric_monomials(5);
  auto slot = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(std::find(mons.begin(), mons.end(), std::pair{i, j}) - mons.begin());
  };
  qf[slot(1, 2)] = -one; qf[slot(2, 2)] = one; qf[slot(0, 3)] = one; qf[slot(2, 3)] = A;
  qf[slot(3, 3)] = B; qf[slot(3, 4)] = A; qf[slot(4, 4)] = one;
  qg[slot(1, 3)] = -one; qg[slot(3, 3)] = -A; qg[slot(0, 4)] = one; qg[slot(2, 4)] = A;
  const auto mf = quadric_matrix(qf, 5), mg = quadric_matrix(qg, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(mf(i, j) == pencil.AF(i, j));
      CHECK(mg(i, j) == pencil.AG(i, j));
    }
  CHECK(quadric_coefficients(mf) == qf);

  // h(t,w) = (t^5 - a t^4 w + b t^3 w^2 - a t^2 w^3 + t w^4)/16.
  const auto h = char_quintic(pencil);
  const Rat r16(mpz_class(1), mpz_class(16));
  CHECK(h == BinaryForm<P>(5, {one, -A, B, -A, one, zero}).scaled(r16));

  // A_G = 0 gives det(A_F) t^5; swapping the matrices swaps t and w.
  const auto p23 = pencil_from_paper(Rat(2), Rat(3));
  const auto h0 = char_quintic(QuadricPencil<Rat>{p23.AF, Matrix<Rat>(5, 5, Rat(0))});
  CHECK(h0 == BinaryForm<Rat>(5, {det_gauss(p23.AF), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)}));
  const auto hs = char_quintic(QuadricPencil<Rat>{p23.AG, p23.AF});
  const auto hn = char_quintic(p23);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(hs[k] == hn[5 - k]);

  Matrix<Rat> asym(5, 5, Rat(0));
  asym(0, 1) = Rat(1);
  CHECK_THROWS_AS(char_quintic(QuadricPencil<Rat>{asym, p23.AG}), DomainError);
}

TEST_CASE("anticanonical basis and implicitization") {
  for (int degree : {3, 4}) {
    const auto c = config(1, degree);
    const auto basis = anticanonical_basis(c);
    CHECK(basis.size() == static_cast<std::size_t>(10 - c.points.size()));
    const auto mons = ternary_monomials(3);
    for (const auto& b : basis)
      for (const auto& p : c.points) {
        CycElt v = p[0].field().zero();
        for (std::size_t j = 0; j < 10; ++j)
          v += b[j] * power(p[0], mons[j][0]) * power(p[1], mons[j][1]) * power(p[2], mons[j][2]);
        CHECK(v.is_zero());
      }
  }
  CHECK_THROWS_AS(anticanonical_basis(tuv_config(Rat(1), Rat(3), 4)), ComputationError);

  std::mt19937_64 rng(31);
  const auto mons = ternary_monomials(3);
  auto image = [&](const std::vector<std::vector<Rat>>& basis, const Rat& x, const Rat& y) {
    std::vector<Rat> out;
    for (const auto& b : basis) {
      Rat v(0);
      for (std::size_t j = 0; j < 10; ++j)
        v += b[j] * x.pow(mons[j][0]) * y.pow(mons[j][1]);  // z = 1
      out.push_back(v);
    }
    return out;
  };

  const auto b5 = anticanonical_basis(tuv_config(Rat(2), Rat(3), 4));
  const auto quads = implicitize(b5, ImplicitTarget::QuadricsInP4);
  CHECK(quads.size() == 2);
  const auto b6 = anticanonical_basis(tuv_config(Rat(2), Rat(3), 3));
  const auto cubic = implicitize(b6, ImplicitTarget::CubicInP3);
  CHECK(cubic.size() == 1);
  const auto qm = quadric_monomials(5);
  const auto cm = cubic_monomials(4);
  for (int i = 0; i < 20; ++i) {
    const Rat x = rnd(rng, -20, 20), y = rnd(rng, -20, 20);
    const auto p5 = image(b5, x, y);
    for (const auto& q : quads) {
      Rat v(0);
      for (std::size_t k = 0; k < qm.size(); ++k) v += q[k] * p5[qm[k].first] * p5[qm[k].second];
      CHECK(v.is_zero());
    }
    const auto p4 = image(b6, x, y);
    Rat v(0);
    for (std::size_t k = 0; k < cm.size(); ++k) v += cubic[0][k] * p4[cm[k][0]] * p4[cm[k][1]] * p4[cm[k][2]];
    CHECK(v.is_zero());
  }
  CHECK_THROWS_AS(implicitize(b6, ImplicitTarget::QuadricsInP4), DomainError);
}

TEST_CASE("pipeline cross-check") {
  const auto paper = tuv_quintic_invariants(Rat(2), Rat(3), false);
  const auto impl = tuv_quintic_invariants(Rat(2), Rat(3), true);
  CHECK(weighted_equal(paper.vector(), impl.vector()));
  CHECK_FALSE(weighted_equal(paper.vector(), tuv_quintic_invariants(Rat(2), Rat(5), false).vector()));
  CHECK_FALSE(paper.delta->is_zero());

  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 5) {
    const Rat u(mpz_class(rnd(rng, -9, 9).num()), mpz_class(rnd(rng, 1, 5).num()));
    const Rat v(mpz_class(rnd(rng, -9, 9).num()), mpz_class(rnd(rng, 1, 5).num()));
    if (u.is_zero() || v.is_zero() || !f_criterion(u, v).second) continue;
    ++done;
    CHECK(weighted_equal(tuv_quintic_invariants(u, v, false).vector(),
                         tuv_quintic_invariants(u, v, true).vector()));
  }
}

TEST_CASE("cyclotomic layers") {
  const auto y1 = layer_quintic_invariants(1);
  REQUIRE(y1.delta.has_value());
  CHECK_FALSE(y1.delta->is_zero());
  CHECK_FALSE(y1.I4.is_zero());
  const auto m1 = layer_ratio_min_poly(1);
  // The ratio lies in the degree-5 subfield fixed by tau.
  CHECK(5 % qpoly::degree(m1) == 0);
  const auto j = to_json(y1.vector());
  CHECK(j.at("values").size() == 3);
  CHECK(j.at("field").at("conductor") == 25);
}
