#pragma once

#include <cstddef>
#include <vector>

#include "dp5/modular.hpp"

namespace dp5 {

// The first `count` primes below 2^62, in descending order. Fixed across runs.
std::vector<u64> crt_primes(std::size_t count);

// Incremental Chinese remaindering of one integer.
class CrtAccumulator {
 public:
  void add(u64 residue, u64 prime);
  const mpz_class& modulus() const { return modulus_; }
  // Representative in (-M/2, M/2].
  mpz_class symmetric() const;

 private:
  mpz_class value_ = 0;
  mpz_class modulus_ = 1;
};

// Number of 62-bit primes whose product exceeds 2 * 2^bits.
std::size_t primes_for_bits(std::size_t bits);

}  // namespace dp5
