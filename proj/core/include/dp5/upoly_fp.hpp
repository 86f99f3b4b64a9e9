#pragma once

#include <span>
#include <vector>

#include "dp5/modular.hpp"

// Dense univariate polynomials over F_p, little-endian coefficient vectors.
// The zero polynomial is the empty vector; every result is trimmed.
namespace dp5::fp {

using Poly = std::vector<u64>;

void trim(Poly& f);
inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }
inline u64 lead(const Poly& f) { return f.empty() ? 0 : f.back(); }

Poly add(const Poly& f, const Poly& g, u64 p);
Poly sub(const Poly& f, const Poly& g, u64 p);
Poly mul(const Poly& f, const Poly& g, u64 p);
Poly scale(const Poly& f, u64 c, u64 p);
// Quotient and remainder; g must be nonzero.
void divrem(const Poly& f, const Poly& g, u64 p, Poly& q, Poly& r);
Poly rem(const Poly& f, const Poly& g, u64 p);
Poly monic(const Poly& f, u64 p);
Poly gcd(Poly f, Poly g, u64 p);
Poly derivative(const Poly& f, u64 p);
u64 evaluate(const Poly& f, u64 x, u64 p);

// f^e mod m, with e given as an arbitrary-precision integer.
Poly powmod(const Poly& f, const mpz_class& e, const Poly& m, u64 p);
// Inverse of f modulo m; DomainError if gcd(f, m) != 1.
Poly invmod(const Poly& f, const Poly& m, u64 p);

// Resultant of f and g using the Euclidean remainder sequence. The degrees
// are the actual degrees of the trimmed inputs, which matches the Sylvester
// determinant whenever f is monic or both leading coefficients are nonzero.
u64 resultant(Poly f, Poly g, u64 p);

// Coefficients of the unique polynomial of degree < xs.size() through the points.
Poly interpolate(std::span<const u64> xs, std::span<const u64> ys, u64 p);

// Determinant of a dense n x n matrix (row-major) by Gaussian elimination.
u64 det(std::vector<u64> a, std::size_t n, u64 p);

}  // namespace dp5::fp
