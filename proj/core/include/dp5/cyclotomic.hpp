#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/finite_field.hpp"
#include "dp5/qpoly.hpp"
#include "dp5/rat.hpp"

namespace dp5 {

inline constexpr int kMaxLayer = 6;

class CycElt;

// Q(zeta_n) for n = 5^(r+1), presented as Q[x] / Phi_n(x) with
// Phi_n(x) = Phi_5(x^(5^r)).
class CycField {
 public:
  explicit CycField(int layer);

  int layer() const { return layer_; }
  u64 conductor() const { return block_ * 5; }
  // 5^r; Phi_n has nonzero coefficients exactly at multiples of this.
  u64 block() const { return block_; }
  // phi(n) = 4 * 5^r.
  std::size_t degree() const { return static_cast<std::size_t>(4 * block_); }
  qpoly::Poly cyclotomic_poly() const;

  CycElt zero() const;
  CycElt one() const;
  CycElt from_rat(const Rat& c) const;
  CycElt from_coeffs(const std::vector<Rat>& c) const;

  nlohmann::json to_json() const;
  friend bool operator==(const CycField& a, const CycField& b) { return a.layer_ == b.layer_; }

 private:
  int layer_;
  u64 block_;
};

// Element of Q(zeta_n), stored as an integer numerator vector of length
// phi(n) over a common positive denominator, in lowest terms.
class CycElt {
 public:
  const CycField& field() const { return field_; }

  std::vector<Rat> coeffs() const;
  Rat coeff(std::size_t i) const { return Rat(num_[i], den_); }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  std::size_t support_size() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  CycElt& operator+=(const CycElt& o);
  CycElt& operator-=(const CycElt& o);
  CycElt& operator*=(const CycElt& o);
  CycElt& operator/=(const CycElt& o) { return *this *= o.inverse(); }
  friend CycElt operator+(CycElt a, const CycElt& b) { return a += b; }
  friend CycElt operator-(CycElt a, const CycElt& b) { return a -= b; }
  friend CycElt operator*(const CycElt& a, const CycElt& b);
  friend CycElt operator/(CycElt a, const CycElt& b) { return a /= b; }
  CycElt operator-() const;
  CycElt scaled(const Rat& c) const;
  friend bool operator==(const CycElt& a, const CycElt& b) {
    return a.field_ == b.field_ && a.den_ == b.den_ && a.num_ == b.num_;
  }

  CycElt inverse() const;
  CycElt pow(u64 e) const;

  nlohmann::json to_json() const;
  static CycElt from_json(const nlohmann::json& j);
  std::string str() const;

 private:
  CycElt(CycField f, std::vector<mpz_class> num, mpz_class den);
  void normalize();

  CycField field_;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;

  friend class CycField;
  friend CycElt zeta_power(const CycField&, i64);
  friend CycElt galois_apply(i64, const CycElt&);
};

inline CycElt zero_like(const CycElt& x) { return x.field().zero(); }
inline CycElt one_like(const CycElt& x) { return x.field().one(); }
inline bool is_zero(const CycElt& x) { return x.is_zero(); }
inline CycElt scale(const CycElt& x, const Rat& c) { return x.scaled(c); }
inline std::string to_string(const CycElt& x) { return x.str(); }

// zeta^e in canonical form; e is reduced mod n.
CycElt zeta_power(const CycField& F, i64 e);

// Image of x under zeta -> zeta^a. DomainError unless gcd(a, n) = 1.
CycElt galois_apply(i64 a, const CycElt& x);

// N_{Q(zeta)/Q}(x) = Res(Phi_n, x(y)), computed multi-modularly with a
// Hadamard-style bound, so norm(c) = c^phi(n) for rational c.
Rat norm(const CycElt& x);

// Characteristic polynomial of multiplication by x (monic, degree phi(n)).
qpoly::Poly charpoly(const CycElt& x);
// Characteristic polynomial of multiplication by num/den without forming
// the quotient: N(T*den - num) / N(den).
qpoly::Poly charpoly_of_ratio(const CycElt& num, const CycElt& den);

// Minimal polynomial over Q (monic). The characteristic polynomial is a
// pure power m^k of the minimal polynomial; m is recovered as its exact
// k-th root and checked by re-exponentiation.
qpoly::Poly min_poly(const CycElt& x);
qpoly::Poly min_poly_of_ratio(const CycElt& num, const CycElt& den);
qpoly::Poly min_poly_from_charpoly(const qpoly::Poly& chi);

// p(x) for a rational polynomial p.
CycElt evaluate(const qpoly::Poly& p, const CycElt& x);

// A fixed ring homomorphism Z[zeta][1/m] -> F_{q^d}, zeta -> omega, where
// omega has exact order n and d = mult_order(q, n).
class ResidueEmbedding {
 public:
  // q must be a prime other than 5. The field and omega are drawn from a
  // seeded generator so the embedding is reproducible.
  static ResidueEmbedding make(const CycField& K, u64 q, u64 seed, unsigned degree_cap = 1024);
  // Rebuilds an embedding from its serialized form and checks that the
  // recorded image of zeta has exact order n.
  static ResidueEmbedding from_json(const CycField& K, const nlohmann::json& j);

  const CycField& source() const { return source_; }
  const FqField& target() const { return target_; }
  const FqElt& zeta_image() const { return powers_[1]; }
  u64 prime() const { return target_.characteristic(); }
  unsigned residue_degree() const { return target_.degree(); }

  // DomainError when a coefficient denominator is divisible by q.
  FqElt operator()(const CycElt& x) const;

  nlohmann::json to_json() const;

 private:
  ResidueEmbedding(CycField K, FqField F, const FqElt& omega, u64 seed);
  CycField source_;
  FqField target_;
  std::vector<FqElt> powers_;
  u64 seed_;
};

inline FqElt residue_embed(const ResidueEmbedding& e, const CycElt& x) { return e(x); }

}  // namespace dp5
