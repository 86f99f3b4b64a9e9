#include "dp5/crt.hpp"

#include <mutex>

namespace dp5 {

std::vector<u64> crt_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  u64 candidate = primes.empty() ? (u64{1} << 62) - 1 : primes.back() - 2;
  if (primes.size() < count) primes.reserve(count);
  while (primes.size() < count) {
    if (is_prime(candidate)) primes.push_back(candidate);
    candidate -= 2;
  }
  return {primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(count)};
}

void CrtAccumulator::add(u64 residue, u64 prime) {
  // value += M * ((residue - value) * M^-1 mod p)
  const u64 vmod = reduce_mod(value_, prime);
  const u64 minv = inv_mod(reduce_mod(modulus_, prime), prime);
  const u64 t = mul_mod(sub_mod(residue % prime, vmod, prime), minv, prime);
  value_ += modulus_ * mpz_class(static_cast<unsigned long>(t));
  modulus_ *= static_cast<unsigned long>(prime);
}

mpz_class CrtAccumulator::symmetric() const {
  mpz_class half = modulus_ / 2;
  return value_ > half ? mpz_class(value_ - modulus_) : value_;
}

std::size_t primes_for_bits(std::size_t bits) {
  // Each prime contributes at least 61 bits; one extra bit for the sign.
  return (bits + 2) / 61 + 1;
}

}  // namespace dp5
