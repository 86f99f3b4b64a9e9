#include "dp5/modular.hpp"

#include <array>
#include <numeric>

#include "dp5/errors.hpp"

namespace dp5 {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  u128 r = m, new_r = a % m;
  i128 tt = 0, new_tt = 1;
  while (new_r != 0) {
    u128 q = r / new_r;
    i128 tmp = tt - static_cast<i128>(q) * new_tt;
    tt = new_tt;
    new_tt = tmp;
    u128 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw DomainError("element not invertible modulo " + std::to_string(m));
  if (tt < 0) tt += m;
  return static_cast<u64>(tt);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 random_prime(std::mt19937_64& rng, u64 lo, u64 hi) {
  std::uniform_int_distribution<u64> dist(lo, hi - 1);
  for (;;) {
    u64 c = dist(rng) | 1;
    if (c >= lo && c < hi && is_prime(c)) return c;
  }
}

u64 reduce_mod(const mpz_class& x, u64 p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return r.get_ui();
}

u64 reduce_mod(const Rat& x, u64 p) {
  u64 den = reduce_mod(x.den(), p);
  if (den == 0) throw DomainError("denominator divisible by " + std::to_string(p));
  return mul_mod(reduce_mod(x.num(), p), inv_mod(den, p), p);
}

nlohmann::json to_json(const Residue& r) {
  return {{"value", r.value}, {"modulus", r.modulus}};
}

u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  while (exp--) r *= base;
  return r;
}

Residue hensel_delta(int r) {
  if (r < 1) throw DomainError("layer must be >= 1");
  if (r > 25) throw DomainError("layer too large for 64-bit residues");
  // Linear lifting, one power of 5 per step.
  u64 d = 2;
  u64 mod = 5;
  for (int k = 1; k <= r; ++k) {
    u64 next = mod * 5;
    u64 f = add_mod(mul_mod(d, d, next), 1, next);  // d^2 + 1, divisible by mod
    u64 t = f / mod;                                // (d^2+1)/5^k mod 5
    // Solve 2d * c = -t (mod 5), then d += c * 5^k.
    u64 c = mul_mod((5 - t % 5) % 5, inv_mod((2 * d) % 5, 5), 5);
    d = (d + c * mod) % next;
    mod = next;
  }
  return Residue{d, mod};
}

u64 mult_order(i64 q, u64 n) {
  if (n == 0) throw DomainError("modulus must be positive");
  if (n == 1) return 1;
  i64 qm = q % static_cast<i64>(n);
  u64 base = static_cast<u64>(qm < 0 ? qm + static_cast<i64>(n) : qm);
  if (std::gcd(base, n) != 1) throw DomainError("mult_order: arguments not coprime");
  u64 x = base;
  for (u64 d = 1;; ++d) {
    if (x == 1) return d;
    x = mul_mod(x, base, n);
  }
}

}  // namespace dp5
