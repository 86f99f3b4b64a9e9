#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "dp5/upoly_fp.hpp"

namespace dp5 {

class FqElt;

// F_{q^d} = F_q[x] / (m(x)) with m monic irreducible of degree d.
class FqField {
 public:
  // Samples random monic polynomials of degree d until one passes the
  // irreducibility test. Deterministic for a fixed seed.
  static FqField random(u64 q, unsigned d, u64 seed);
  // Uses the given monic polynomial (little-endian, length d+1); verifies
  // primality of q and irreducibility of the polynomial.
  static FqField from_poly(u64 q, const fp::Poly& modulus);
  static FqField from_json(const nlohmann::json& j);

  u64 characteristic() const { return impl_->q; }
  unsigned degree() const { return impl_->d; }
  const fp::Poly& modulus() const { return impl_->modulus; }
  // q^d as an arbitrary-precision integer.
  mpz_class order() const;

  FqElt zero() const;
  FqElt one() const;
  FqElt from_int(i64 n) const;
  FqElt from_rat(const Rat& r) const;
  FqElt from_coeffs(fp::Poly c) const;
  FqElt random_element(std::mt19937_64& rng) const;

  nlohmann::json to_json() const;

  friend bool operator==(const FqField& a, const FqField& b) {
    return a.impl_ == b.impl_ ||
           (a.impl_->q == b.impl_->q && a.impl_->modulus == b.impl_->modulus);
  }

 private:
  struct Impl {
    u64 q;
    unsigned d;
    fp::Poly modulus;
  };
  explicit FqField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend class FqElt;
};

// Ben-Or irreducibility test for a monic f over F_q.
bool is_irreducible(const fp::Poly& f, u64 q);

class FqElt {
 public:
  const FqField& field() const { return field_; }
  const fp::Poly& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  FqElt& operator+=(const FqElt& o);
  FqElt& operator-=(const FqElt& o);
  FqElt& operator*=(const FqElt& o);
  FqElt& operator/=(const FqElt& o);
  friend FqElt operator+(FqElt a, const FqElt& b) { return a += b; }
  friend FqElt operator-(FqElt a, const FqElt& b) { return a -= b; }
  friend FqElt operator*(FqElt a, const FqElt& b) { return a *= b; }
  friend FqElt operator/(FqElt a, const FqElt& b) { return a /= b; }
  FqElt operator-() const;
  friend bool operator==(const FqElt& a, const FqElt& b) { return a.c_ == b.c_; }

  FqElt inverse() const;
  FqElt pow(const mpz_class& e) const;
  FqElt pow(u64 e) const { return pow(mpz_class(static_cast<unsigned long>(e))); }

  // Little-endian coefficient list of length d.
  nlohmann::json to_json() const;
  std::string str() const;

 private:
  FqElt(FqField f, fp::Poly c) : field_(std::move(f)), c_(std::move(c)) {}
  FqField field_;
  fp::Poly c_;

  friend class FqField;
};

inline FqElt zero_like(const FqElt& x) { return x.field().zero(); }
inline FqElt one_like(const FqElt& x) { return x.field().one(); }
inline bool is_zero(const FqElt& x) { return x.is_zero(); }
inline FqElt scale(const FqElt& x, const Rat& c) { return x * x.field().from_rat(c); }
inline std::string to_string(const FqElt& x) { return x.str(); }

// Uniformly samples x and returns x^((q^d-1)/n) once it has exact order n.
// Prime fields below 2^16 instead return the least such residue.
// DomainError if n does not divide q^d - 1; ComputationError after 256 misses.
FqElt element_of_order(const FqField& F, u64 n, std::mt19937_64& rng);

}  // namespace dp5
