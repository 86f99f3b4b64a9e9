#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/cyclotomic.hpp"
#include "dp5/errors.hpp"
#include "dp5/matrix.hpp"
#include "dp5/mpoly.hpp"
#include "dp5/pointconfig.hpp"
#include "dp5/qpoly.hpp"
#include "dp5/rat.hpp"

namespace dp5 {

template <class K>
K power(const K& x, unsigned e) {
  K result = one_like(x), base = x;
  for (; e; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

// ---- weighted projective comparison ----

template <class K>
struct InvariantVector {
  std::vector<int> weights;
  std::vector<K> values;
  nlohmann::json field;
};

nlohmann::json to_json(const InvariantVector<Rat>& v);
nlohmann::json to_json(const InvariantVector<CycElt>& v);

// True iff B_d = lambda^d A_d for some nonzero lambda in the algebraic
// closure. Pairwise equalities use exponents divided by gcd(d_i, d_j):
// without the reduction, (1, -1) and (1, 1) in weights (4, 8) would compare
// equal although lambda^4 = 1 forces lambda^8 = 1.
template <class K>
bool weighted_equal(const InvariantVector<K>& A, const InvariantVector<K>& B) {
  if (A.weights != B.weights || A.values.size() != A.weights.size() ||
      B.values.size() != B.weights.size())
    throw DomainError("invariant vectors with different weights");
  for (int w : A.weights)
    if (w <= 0) throw DomainError("weights must be positive");
  auto all_zero = [](const std::vector<K>& v) {
    return std::all_of(v.begin(), v.end(), [](const K& x) { return is_zero(x); });
  };
  if (all_zero(A.values) || all_zero(B.values)) throw DomainError("all-zero invariant vector is not comparable");
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < A.values.size(); ++i) {
    const bool za = is_zero(A.values[i]);
    if (za != is_zero(B.values[i])) return false;
    if (!za) nz.push_back(i);
  }
  for (std::size_t x = 0; x < nz.size(); ++x)
    for (std::size_t y = x + 1; y < nz.size(); ++y) {
      const std::size_t i = nz[x], j = nz[y];
      const int g = std::gcd(A.weights[i], A.weights[j]);
      const auto ei = static_cast<unsigned>(A.weights[i] / g), ej = static_cast<unsigned>(A.weights[j] / g);
      if (!(power(B.values[i], ej) * power(A.values[j], ei) == power(B.values[j], ei) * power(A.values[i], ej)))
        return false;
    }
  return true;
}

// ---- Clebsch-Salmon invariants ----

template <class K>
struct CSInvariants {
  static constexpr std::array<int, 5> weights{8, 16, 24, 32, 40};
  std::array<K, 5> values;  // I8, I16, I24, I32, I40

  InvariantVector<K> vector(nlohmann::json field = {}) const {
    return {{weights.begin(), weights.end()}, {values.begin(), values.end()}, std::move(field)};
  }
};

// sigma_1..sigma_k of the inputs.
template <class K>
std::vector<K> elementary_symmetric(const std::vector<K>& a) {
  if (a.empty()) throw DomainError("elementary_symmetric needs at least one value");
  std::vector<K> e(a.size() + 1, zero_like(a[0]));
  e[0] = one_like(a[0]);
  for (const K& x : a)
    for (std::size_t k = a.size(); k >= 1; --k) e[k] = e[k] + e[k - 1] * x;
  return {e.begin() + 1, e.end()};
}

template <class K>
CSInvariants<K> clebsch_salmon(const std::vector<K>& a) {
  if (a.size() != 5) throw DomainError("pentahedral form needs exactly five coefficients");
  const auto s = elementary_symmetric(a);
  const K& s5 = s[4];
  return {{s[3] * s[3] - scale(s[2] * s5, Rat(4)), s[0] * power(s5, 3), s[3] * power(s5, 4),
           s[1] * power(s5, 6), power(s5, 8)}};
}

// ---- binary forms ----

// sum_k c_k t^(d-k) w^k.
template <class K>
class BinaryForm {
 public:
  BinaryForm(int deg, std::vector<K> coeffs) : deg_(deg), c_(std::move(coeffs)) {
    if (deg < 0 || c_.size() != static_cast<std::size_t>(deg) + 1)
      throw DomainError("binary form of degree d needs d+1 coefficients");
  }
  static BinaryForm constant(const K& c) { return BinaryForm(0, {c}); }

  int degree() const { return deg_; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& operator[](std::size_t k) const { return c_[k]; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!dp5::is_zero(x)) return false;
    return true;
  }

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    a.same_degree(b);
    BinaryForm r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] + b.c_[k];
    return r;
  }
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
    a.same_degree(b);
    BinaryForm r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] - b.c_[k];
    return r;
  }
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return BinaryForm(a.deg_ + b.deg_, std::move(c));
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.deg_ == b.deg_ && a.c_ == b.c_;
  }

  BinaryForm scaled(const Rat& s) const {
    BinaryForm r = *this;
    for (auto& x : r.c_) x = scale(x, s);
    return r;
  }
  BinaryForm times(const K& s) const {
    BinaryForm r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
  }

  // Partial derivatives; the degree-0 case returns the zero constant.
  BinaryForm dt() const {
    if (deg_ == 0) return constant(zero_like(c_[0]));
    std::vector<K> c;
    for (int k = 0; k < deg_; ++k) c.push_back(scale(c_[k], Rat(deg_ - k)));
    return BinaryForm(deg_ - 1, std::move(c));
  }
  BinaryForm dw() const {
    if (deg_ == 0) return constant(zero_like(c_[0]));
    std::vector<K> c;
    for (int k = 1; k <= deg_; ++k) c.push_back(scale(c_[k], Rat(k)));
    return BinaryForm(deg_ - 1, std::move(c));
  }
  BinaryForm derivative(int i, int j) const {
    BinaryForm r = *this;
    for (int a = 0; a < i; ++a) r = r.dt();
    for (int b = 0; b < j; ++b) r = r.dw();
    return r;
  }

  // f(m00 t + m01 w, m10 t + m11 w).
  BinaryForm substitute(const std::array<Rat, 4>& m) const {
    const K zero = zero_like(c_[0]), one = one_like(c_[0]);
    const BinaryForm lt(1, {scale(one, m[0]), scale(one, m[1])});
    const BinaryForm lw(1, {scale(one, m[2]), scale(one, m[3])});
    BinaryForm acc(deg_, std::vector<K>(c_.size(), zero));
    for (int k = 0; k <= deg_; ++k) {
      BinaryForm term = constant(c_[k]);
      for (int a = 0; a < deg_ - k; ++a) term = term * lt;
      for (int b = 0; b < k; ++b) term = term * lw;
      acc = acc + term;
    }
    return acc;
  }

  // Value at (t, w) = (x, 1).
  K dehomogenized_at(const K& x) const {
    K acc = zero_like(c_[0]);
    for (const auto& c : c_) acc = acc * x + c;
    return acc;
  }

 private:
  void same_degree(const BinaryForm& o) const {
    if (deg_ != o.deg_) throw DomainError("binary forms of different degree");
  }
  int deg_;
  std::vector<K> c_;
};

nlohmann::json to_json(const BinaryForm<Rat>& f);
BinaryForm<Rat> binary_form_from_json(const nlohmann::json& j);

namespace detail {
inline Rat factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}
inline Rat binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }
}  // namespace detail

template <class K>
BinaryForm<K> transvectant(const BinaryForm<K>& f, const BinaryForm<K>& g, int k) {
  const int m = f.degree(), n = g.degree();
  if (k < 0 || k > std::min(m, n)) throw DomainError("transvectant order out of range");
  const Rat norm = detail::factorial(m - k) * detail::factorial(n - k) /
                   (detail::factorial(m) * detail::factorial(n));
  std::optional<BinaryForm<K>> acc;
  for (int j = 0; j <= k; ++j) {
    Rat c = detail::binomial(k, j) * norm;
    if (j % 2) c = -c;
    const BinaryForm<K> term = (f.derivative(k - j, j) * g.derivative(j, k - j)).scaled(c);
    acc = acc ? *acc + term : term;
  }
  return *acc;
}

// Discriminant of a binary form of degree n >= 2:
// Res(df/dt, df/dw) / n^(n-2), both partials taken at nominal degree n-1.
template <class K>
K discriminant(const BinaryForm<K>& f) {
  const int n = f.degree();
  if (n < 2) throw DomainError("discriminant needs degree at least 2");
  const auto a = f.dt().coeffs(), b = f.dw().coeffs();
  const auto d = static_cast<std::size_t>(n - 1);
  Matrix<K> s(2 * d, 2 * d, zero_like(f[0]));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k <= d; ++k) {
      s(i, i + k) = a[k];
      s(d + i, i + k) = b[k];
    }
  Rat denom = Rat(n).pow(n - 2);
  return scale(determinant(s), Rat(1) / denom);
}

template <class K>
struct QuinticInvariants {
  static constexpr std::array<int, 3> weights{4, 8, 12};
  K I4, I8, I12;
  std::optional<K> delta;

  InvariantVector<K> vector(nlohmann::json field = {}) const {
    return {{weights.begin(), weights.end()}, {I4, I8, I12}, std::move(field)};
  }
};

// alpha = (f,f)^4, beta = (f,alpha)^2, gamma = (beta,beta)^2;
// I4 = (alpha,alpha)^2, I8 = (gamma,alpha)^2, I12 = (gamma,gamma)^2.
template <class K>
QuinticInvariants<K> quintic_invariants(const BinaryForm<K>& f, bool with_delta = true) {
  if (f.degree() != 5) throw DomainError("quintic invariants need a form of degree 5");
  const auto alpha = transvectant(f, f, 4);
  const auto beta = transvectant(f, alpha, 2);
  const auto gamma = transvectant(beta, beta, 2);
  QuinticInvariants<K> out{transvectant(alpha, alpha, 2)[0], transvectant(gamma, alpha, 2)[0],
                           transvectant(gamma, gamma, 2)[0], std::nullopt};
  if (with_delta) out.delta = discriminant(f);
  return out;
}

// ---- quadrics and pencils ----

// Index pairs (i <= j) of the monomials x_i x_j in n variables, lexicographic.
inline std::vector<std::pair<std::size_t, std::size_t>> quadric_monomials(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// A[i][i] = coefficient of x_i^2, A[i][j] = half the coefficient of x_i x_j.
template <class K>
Matrix<K> quadric_matrix(const std::vector<K>& q, std::size_t n) {
  const auto mons = quadric_monomials(n);
  if (q.size() != mons.size()) throw DomainError("quadric coefficient vector has the wrong length");
  Matrix<K> a(n, n, zero_like(q[0]));
  for (std::size_t k = 0; k < mons.size(); ++k) {
    const auto [i, j] = mons[k];
    if (i == j) {
      a(i, i) = q[k];
    } else {
      a(i, j) = scale(q[k], Rat(mpz_class(1), mpz_class(2)));
      a(j, i) = a(i, j);
    }
  }
  return a;
}

template <class K>
std::vector<K> quadric_coefficients(const Matrix<K>& a) {
  std::vector<K> q;
  for (const auto& [i, j] : quadric_monomials(a.rows())) q.push_back(i == j ? a(i, i) : a(i, j) + a(j, i));
  return q;
}

template <class K>
bool is_symmetric(const Matrix<K>& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!(a(i, j) == a(j, i))) return false;
  return true;
}

template <class K>
struct QuadricPencil {
  Matrix<K> AF, AG;
};

// a = -(u^2 v + u v^2 + u + v)/(uv), b = (u^2 v^2 + u^2 + 2uv + v^2 + 1)/(uv).
template <class K>
std::pair<K, K> pencil_parameters(const K& u, const K& v) {
  if (is_zero(u) || is_zero(v)) throw DomainError("pencil parameters need uv != 0");
  const K one = one_like(u);
  const K uv = u * v;
  const K a = -(u * u * v + u * v * v + u + v) / uv;
  const K b = (uv * uv + u * u + scale(uv, Rat(2)) + v * v + one) / uv;
  return {a, b};
}

// The pencil F = -x1x2 + x2^2 + x0x3 + a x2x3 + b x3^2 + a x3x4 + x4^2,
// G = -x1x3 - a x3^2 + x0x4 + a x2x4.
template <class K>
QuadricPencil<K> closed_form_pencil(const K& a, const K& b) {
  const K zero = zero_like(a), one = one_like(a);
  const Rat half(mpz_class(1), mpz_class(2));
  const K h = scale(one, half), ha = scale(a, half);
  Matrix<K> F(5, 5, zero), G(5, 5, zero);
  F(0, 3) = F(3, 0) = h;
  F(1, 2) = F(2, 1) = -h;
  F(2, 2) = one;
  F(2, 3) = F(3, 2) = ha;
  F(3, 3) = b;
  F(3, 4) = F(4, 3) = ha;
  F(4, 4) = one;
  G(0, 4) = G(4, 0) = h;
  G(1, 3) = G(3, 1) = -h;
  G(2, 4) = G(4, 2) = ha;
  G(3, 3) = -a;
  return {F, G};
}

template <class K>
QuadricPencil<K> pencil_from_paper(const K& u, const K& v) {
  const auto [a, b] = pencil_parameters(u, v);
  return closed_form_pencil(a, b);
}

namespace detail {
// Inverse of the Vandermonde matrix on nodes 0..n.
inline Matrix<Rat> vandermonde_inverse(std::size_t n) {
  Matrix<Rat> m(n + 1, 2 * (n + 1), Rat(0));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) m(i, j) = Rat(static_cast<long>(i)).pow(static_cast<long>(j));
    m(i, n + 1 + i) = Rat(1);
  }
  rref(m);
  Matrix<Rat> inv(n + 1, n + 1, Rat(0));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) inv(i, j) = m(i, n + 1 + j);
  return inv;
}
}  // namespace detail

// det(t A_F + w A_G) as a binary form of degree n, by interpolating
// t -> det(t A_F + A_G) at t = 0..n.
template <class K>
BinaryForm<K> char_quintic(const QuadricPencil<K>& p) {
  const std::size_t n = p.AF.rows();
  if (n == 0 || !is_symmetric(p.AF) || !is_symmetric(p.AG) || p.AG.rows() != n)
    throw DomainError("pencil matrices must be symmetric and of equal size");
  std::vector<K> h;
  for (std::size_t i = 0; i <= n; ++i) {
    Matrix<K> m(n, n, zero_like(p.AF(0, 0)));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = scale(p.AF(r, c), Rat(static_cast<long>(i))) + p.AG(r, c);
    h.push_back(determinant(m));
  }
  const Matrix<Rat> vinv = detail::vandermonde_inverse(n);
  std::vector<K> c(n + 1, zero_like(h[0]));
  // c_k multiplies t^(n-k) w^k, i.e. the coefficient of t^(n-k) in h(t,1).
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = 0; i <= n; ++i) c[k] = c[k] + scale(h[i], vinv(n - k, i));
  return BinaryForm<K>(static_cast<int>(n), std::move(c));
}

// ---- anticanonical maps and implicitization ----

// Exponent triples (a, b, c) of x^a y^b z^c with a+b+c = d, descending lex.
inline std::vector<std::array<unsigned, 3>> ternary_monomials(unsigned d) {
  std::vector<std::array<unsigned, 3>> out;
  for (unsigned a = d + 1; a-- > 0;)
    for (unsigned b = d - a + 1; b-- > 0;) out.push_back({a, b, d - a - b});
  return out;
}

// Index triples i <= j <= k of cubic monomials in n variables.
inline std::vector<std::array<std::size_t, 3>> cubic_monomials(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) out.push_back({i, j, k});
  return out;
}

// Kernel of the n x 10 matrix of cubic monomials at the points: coefficient
// vectors (in ternary_monomials(3) order) of the cubics through them.
template <class K>
std::vector<std::vector<K>> anticanonical_basis(const PointConfig<K>& c) {
  const auto mons = ternary_monomials(3);
  const std::size_t n = c.points.size();
  if (n == 0 || n > 9) throw DomainError("anticanonical basis needs 1 to 9 points");
  Matrix<K> m(n, mons.size(), zero_like(c.points[0][0]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < mons.size(); ++j) {
      K v = one_like(c.points[i][0]);
      for (std::size_t a = 0; a < 3; ++a) v = v * power(c.points[i][a], mons[j][a]);
      m(i, j) = v;
    }
  auto ker = kernel(m);
  if (ker.size() != 10 - n)
    throw ComputationError("anticanonical system has dimension " + std::to_string(ker.size()) +
                           ", expected " + std::to_string(10 - n) + "; points not in general position");
  return ker;
}

enum class ImplicitTarget { CubicInP3, QuadricsInP4 };

namespace detail {
inline const std::vector<std::string>& xyz() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}

template <class K>
MPoly<K> ternary_form(const std::vector<K>& coeffs, unsigned d) {
  const auto mons = ternary_monomials(d);
  if (coeffs.size() != mons.size()) throw DomainError("ternary form coefficient vector has the wrong length");
  MPoly<K> f(xyz());
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (!is_zero(coeffs[i])) f.add_term({mons[i][0], mons[i][1], mons[i][2]}, coeffs[i]);
  return f;
}

// Matrix whose columns are the coefficient vectors of the products.
template <class K>
Matrix<K> coefficient_columns(const std::vector<MPoly<K>>& products, unsigned d, const K& zero) {
  const auto mons = ternary_monomials(d);
  Matrix<K> m(mons.size(), products.size(), zero);
  for (std::size_t j = 0; j < products.size(); ++j)
    for (std::size_t i = 0; i < mons.size(); ++i) {
      const Exponent e{mons[i][0], mons[i][1], mons[i][2]};
      const auto it = products[j].terms().find(e);
      if (it != products[j].terms().end()) m(i, j) = it->second;
    }
  return m;
}
}  // namespace detail

// Forms in the basis coordinates whose pullback under the cubic map vanishes
// identically. Quadrics come in quadric_monomials(5) order, the cubic in
// cubic_monomials(4) order.
template <class K>
std::vector<std::vector<K>> implicitize(const std::vector<std::vector<K>>& basis, ImplicitTarget target) {
  if (basis.empty()) throw DomainError("empty cubic basis");
  const K zero = zero_like(basis[0][0]);
  std::vector<MPoly<K>> cs;
  for (const auto& b : basis) cs.push_back(detail::ternary_form(b, 3));
  std::vector<MPoly<K>> products;
  std::size_t expected = 0;
  unsigned d = 0;
  if (target == ImplicitTarget::QuadricsInP4) {
    if (basis.size() != 5) throw DomainError("quadric implicitization needs a 5-dimensional basis");
    for (const auto& [i, j] : quadric_monomials(5)) products.push_back(cs[i] * cs[j]);
    expected = 2;
    d = 6;
  } else {
    if (basis.size() != 4) throw DomainError("cubic implicitization needs a 4-dimensional basis");
    for (const auto& [i, j, k] : cubic_monomials(4)) products.push_back(cs[i] * cs[j] * cs[k]);
    expected = 1;
    d = 9;
  }
  auto ker = kernel(detail::coefficient_columns(products, d, zero));
  if (ker.size() != expected)
    throw ComputationError("implicitization kernel has dimension " + std::to_string(ker.size()) +
                           ", expected " + std::to_string(expected));
  return ker;
}

// Pencil of the two quadrics through the anticanonical image of five points.
template <class K>
QuadricPencil<K> implicit_pencil(const PointConfig<K>& c) {
  if (c.points.size() != 5) throw DomainError("implicit pencil needs a five-point configuration");
  const auto q = implicitize(anticanonical_basis(c), ImplicitTarget::QuadricsInP4);
  return {quadric_matrix(q[0], 5), quadric_matrix(q[1], 5)};
}

// Quintic invariants of Y_{u,v} by either pipeline.
template <class K>
QuinticInvariants<K> tuv_quintic_invariants(const K& u, const K& v, bool implicit) {
  const auto pencil = implicit ? implicit_pencil(tuv_config(u, v, 4)) : pencil_from_paper(u, v);
  return quintic_invariants(char_quintic(pencil));
}

// ---- cyclotomic layers ----

// Invariants of Y_r, the pencil at (u, v) = (zeta, zeta^delta) over Q(zeta).
QuinticInvariants<CycElt> layer_quintic_invariants(int r);

// Minimal polynomial over Q of I8 / I4^2 for Y_r.
qpoly::Poly layer_ratio_min_poly(int r);

}  // namespace dp5
