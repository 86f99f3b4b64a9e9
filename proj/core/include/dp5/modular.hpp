#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dp5/rat.hpp"

namespace dp5 {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 pow_mod(u64 base, u64 exp, u64 m);
// Throws DomainError when gcd(a, m) != 1.
u64 inv_mod(u64 a, u64 m);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);
// Distinct prime factors by trial division; intended for n < 2^40.
std::vector<u64> prime_factors(u64 n);
// Uniform random prime in [lo, hi).
u64 random_prime(std::mt19937_64& rng, u64 lo, u64 hi);

// Reduces a rational modulo p; throws DomainError if p divides the denominator.
u64 reduce_mod(const Rat& x, u64 p);
u64 reduce_mod(const mpz_class& x, u64 p);

// Element of Z/mZ.
struct Residue {
  u64 value = 0;
  u64 modulus = 1;

  friend bool operator==(const Residue&, const Residue&) = default;
};
nlohmann::json to_json(const Residue& r);

// The unique d mod 5^(r+1) with d^2 = -1 and d = 2 (mod 5), by Hensel lifting.
Residue hensel_delta(int r);

// Smallest d >= 1 with q^d = 1 (mod n). DomainError if gcd(q, n) != 1.
u64 mult_order(i64 q, u64 n);

u64 ipow(u64 base, unsigned exp);

// Prime field with a compile-time modulus P < 2^63.
template <u64 P>
class Fp {
 public:
  static constexpr u64 modulus = P;

  constexpr Fp() = default;
  constexpr Fp(i64 n)  // NOLINT(google-explicit-constructor)
      : v_(static_cast<u64>(n >= 0 ? n % static_cast<i64>(P)
                                   : (P - static_cast<u64>(-(n % static_cast<i64>(P)))) % P)) {}
  static Fp from_raw(u64 v) { Fp f; f.v_ = v % P; return f; }

  u64 value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fp& operator+=(Fp o) { v_ = add_mod(v_, o.v_, P); return *this; }
  Fp& operator-=(Fp o) { v_ = sub_mod(v_, o.v_, P); return *this; }
  Fp& operator*=(Fp o) { v_ = mul_mod(v_, o.v_, P); return *this; }
  Fp& operator/=(Fp o) { v_ = mul_mod(v_, inv_mod(o.v_, P), P); return *this; }
  friend Fp operator+(Fp a, Fp b) { return a += b; }
  friend Fp operator-(Fp a, Fp b) { return a -= b; }
  friend Fp operator*(Fp a, Fp b) { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  Fp operator-() const { return Fp() - *this; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  Fp inverse() const { return from_raw(inv_mod(v_, P)); }
  Fp pow(u64 e) const { return from_raw(pow_mod(v_, e, P)); }

 private:
  u64 v_ = 0;
};

template <u64 P> Fp<P> zero_like(const Fp<P>&) { return Fp<P>(); }
template <u64 P> Fp<P> one_like(const Fp<P>&) { return Fp<P>(1); }
template <u64 P> bool is_zero(const Fp<P>& x) { return x.is_zero(); }
template <u64 P> Fp<P> scale(const Fp<P>& x, const Rat& c) {
  return x * Fp<P>::from_raw(reduce_mod(c, P));
}
template <u64 P> std::string to_string(const Fp<P>& x) { return std::to_string(x.value()); }

}  // namespace dp5
