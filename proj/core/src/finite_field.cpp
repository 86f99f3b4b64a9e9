#include "dp5/finite_field.hpp"

#include <algorithm>

#include "dp5/errors.hpp"

namespace dp5 {

namespace fp {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly add(const Poly& f, const Poly& g, u64 p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = add_mod(r[i], g[i], p);
  trim(r);
  return r;
}

Poly sub(const Poly& f, const Poly& g, u64 p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = sub_mod(r[i], g[i], p);
  trim(r);
  return r;
}

Poly mul(const Poly& f, const Poly& g, u64 p) {
  if (f.empty() || g.empty()) return {};
  std::vector<u128> acc(f.size() + g.size() - 1, 0);
  // Accumulate in 128 bits and reduce only when an overflow could occur.
  const bool small = p < (u64{1} << 32);
  Poly r(acc.size(), 0);
  if (small) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      for (std::size_t j = 0; j < g.size(); ++j) acc[i + j] += static_cast<u128>(f[i]) * g[j];
    }
    for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = add_mod(r[i + j], mul_mod(f[i], g[j], p), p);
    }
  }
  trim(r);
  return r;
}

Poly scale(const Poly& f, u64 c, u64 p) {
  Poly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mul_mod(f[i], c, p);
  trim(r);
  return r;
}

void divrem(const Poly& f, const Poly& g, u64 p, Poly& q, Poly& r) {
  if (g.empty()) throw DomainError("polynomial division by zero");
  r = f;
  trim(r);
  const int dg = degree(g);
  if (degree(r) < dg) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(r) - dg + 1), 0);
  const u64 inv_lead = inv_mod(g.back(), p);
  for (int k = degree(r); k >= dg; --k) {
    u64 c = mul_mod(r[static_cast<std::size_t>(k)], inv_lead, p);
    q[static_cast<std::size_t>(k - dg)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) {
      auto idx = static_cast<std::size_t>(k - dg + j);
      r[idx] = sub_mod(r[idx], mul_mod(c, g[static_cast<std::size_t>(j)], p), p);
    }
  }
  trim(r);
  trim(q);
}

Poly rem(const Poly& f, const Poly& g, u64 p) {
  Poly q, r;
  divrem(f, g, p, q, r);
  return r;
}

Poly monic(const Poly& f, u64 p) {
  if (f.empty()) return f;
  return scale(f, inv_mod(f.back(), p), p);
}

Poly gcd(Poly f, Poly g, u64 p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  return monic(f, p);
}

Poly derivative(const Poly& f, u64 p) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mul_mod(f[i], i % p, p);
  trim(d);
  return d;
}

u64 evaluate(const Poly& f, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = add_mod(mul_mod(acc, x, p), f[i], p);
  return acc;
}

Poly powmod(const Poly& f, const mpz_class& e, const Poly& m, u64 p) {
  Poly base = rem(f, m, p);
  Poly result = rem(Poly{1}, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return result;
}

Poly invmod(const Poly& f, const Poly& m, u64 p) {
  // Extended Euclid tracking the cofactor of f.
  Poly r0 = m, r1 = rem(f, m, p);
  Poly s0, s1{1};
  while (!r1.empty()) {
    Poly q, r;
    divrem(r0, r1, p, q, r);
    Poly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r0) != 0) throw DomainError("polynomial not invertible modulo m");
  return rem(scale(s0, inv_mod(r0[0], p), p), m, p);
}

u64 resultant(Poly f, Poly g, u64 p) {
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  u64 acc = 1;
  for (;;) {
    const int df = degree(f), dg = degree(g);
    if (df == 0) return mul_mod(acc, pow_mod(f[0], static_cast<u64>(dg), p), p);
    if (dg == 0) return mul_mod(acc, pow_mod(g[0], static_cast<u64>(df), p), p);
    Poly r = rem(f, g, p);
    if (r.empty()) return 0;
    const int dr = degree(r);
    // Res(f, g) = (-1)^(df*dg) lc(g)^(df-dr) Res(g, r)
    if ((df & 1) && (dg & 1)) acc = sub_mod(0, acc, p);
    acc = mul_mod(acc, pow_mod(g.back(), static_cast<u64>(df - dr), p), p);
    f = std::move(g);
    g = std::move(r);
  }
}

Poly interpolate(std::span<const u64> xs, std::span<const u64> ys, u64 p) {
  const std::size_t n = xs.size();
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<u64> c(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      u64 num = sub_mod(c[i], c[i - 1], p);
      u64 den = sub_mod(xs[i], xs[i - j], p);
      c[i] = mul_mod(num, inv_mod(den, p), p);
      if (i == j) break;
    }
  }
  Poly r(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    // r <- r * (x - xs[k]) + c[k]
    for (std::size_t i = n - 1; i > 0; --i) r[i] = sub_mod(r[i - 1], mul_mod(r[i], xs[k], p), p);
    r[0] = sub_mod(c[k], mul_mod(r[0], xs[k], p), p);
  }
  trim(r);
  return r;
}

u64 det(std::vector<u64> a, std::size_t n, u64 p) {
  u64 result = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      result = sub_mod(0, result, p);
    }
    const u64 pv = a[col * n + col];
    result = mul_mod(result, pv, p);
    const u64 inv = inv_mod(pv, p);
    for (std::size_t i = col + 1; i < n; ++i) {
      u64 factor = mul_mod(a[i * n + col], inv, p);
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j)
        a[i * n + j] = sub_mod(a[i * n + j], mul_mod(factor, a[col * n + j], p), p);
    }
  }
  return result;
}

}  // namespace fp

bool is_irreducible(const fp::Poly& f, u64 q) {
  const int d = fp::degree(f);
  if (d < 1 || f.back() != 1) return false;
  // A reducible f has a factor of degree k <= d/2, which divides x^(q^k) - x.
  const fp::Poly x{0, 1};
  const mpz_class qz(static_cast<unsigned long>(q));
  fp::Poly h = fp::rem(x, f, q);
  for (int k = 1; 2 * k <= d; ++k) {
    h = fp::powmod(h, qz, f, q);
    if (fp::degree(fp::gcd(fp::sub(h, x, q), f, q)) != 0) return false;
  }
  return true;
}

FqField FqField::random(u64 q, unsigned d, u64 seed) {
  if (!is_prime(q)) throw DomainError("field characteristic must be prime");
  if (d < 1) throw DomainError("extension degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> coeff(0, q - 1);
  for (;;) {
    fp::Poly m(d + 1);
    for (unsigned i = 0; i < d; ++i) m[i] = coeff(rng);
    m[d] = 1;
    if (is_irreducible(m, q)) return FqField(std::make_shared<const Impl>(Impl{q, d, std::move(m)}));
  }
}

FqField FqField::from_poly(u64 q, const fp::Poly& modulus) {
  if (!is_prime(q)) throw DomainError("field characteristic must be prime");
  fp::Poly m = modulus;
  for (auto& c : m) c %= q;
  fp::trim(m);
  if (fp::degree(m) < 1 || m.back() != 1) throw DomainError("defining polynomial must be monic of degree >= 1");
  if (!is_irreducible(m, q)) throw DomainError("defining polynomial is reducible");
  const auto d = static_cast<unsigned>(fp::degree(m));
  return FqField(std::make_shared<const Impl>(Impl{q, d, std::move(m)}));
}

FqField FqField::from_json(const nlohmann::json& j) {
  const u64 q = j.at("q").get<u64>();
  const auto poly = j.at("poly").get<fp::Poly>();
  FqField F = from_poly(q, poly);
  if (j.contains("d") && j.at("d").get<unsigned>() != F.degree())
    throw DomainError("field degree does not match defining polynomial");
  return F;
}

mpz_class FqField::order() const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), impl_->q, impl_->d);
  return r;
}

FqElt FqField::zero() const { return FqElt(*this, {}); }
FqElt FqField::one() const { return FqElt(*this, {1}); }

FqElt FqField::from_int(i64 n) const {
  const i64 q = static_cast<i64>(impl_->q);
  i64 r = n % q;
  if (r < 0) r += q;
  fp::Poly c{static_cast<u64>(r)};
  fp::trim(c);
  return FqElt(*this, std::move(c));
}

FqElt FqField::from_rat(const Rat& r) const {
  fp::Poly c{reduce_mod(r, impl_->q)};
  fp::trim(c);
  return FqElt(*this, std::move(c));
}

FqElt FqField::from_coeffs(fp::Poly c) const {
  for (auto& x : c) x %= impl_->q;
  return FqElt(*this, fp::rem(c, impl_->modulus, impl_->q));
}

FqElt FqField::random_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<u64> coeff(0, impl_->q - 1);
  fp::Poly c(impl_->d);
  for (auto& x : c) x = coeff(rng);
  fp::trim(c);
  return FqElt(*this, std::move(c));
}

nlohmann::json FqField::to_json() const {
  return {{"q", impl_->q}, {"d", impl_->d}, {"poly", impl_->modulus}};
}

FqElt& FqElt::operator+=(const FqElt& o) {
  c_ = fp::add(c_, o.c_, field_.characteristic());
  return *this;
}

FqElt& FqElt::operator-=(const FqElt& o) {
  c_ = fp::sub(c_, o.c_, field_.characteristic());
  return *this;
}

FqElt& FqElt::operator*=(const FqElt& o) {
  const u64 q = field_.characteristic();
  c_ = fp::rem(fp::mul(c_, o.c_, q), field_.modulus(), q);
  return *this;
}

FqElt& FqElt::operator/=(const FqElt& o) { return *this *= o.inverse(); }

FqElt FqElt::operator-() const { return field_.zero() - *this; }

FqElt FqElt::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in finite field");
  return FqElt(field_, fp::invmod(c_, field_.modulus(), field_.characteristic()));
}

FqElt FqElt::pow(const mpz_class& e) const {
  return FqElt(field_, fp::powmod(c_, e, field_.modulus(), field_.characteristic()));
}

nlohmann::json FqElt::to_json() const {
  fp::Poly full = c_;
  full.resize(field_.degree(), 0);
  return full;
}

std::string FqElt::str() const {
  std::string s = "[";
  fp::Poly full = c_;
  full.resize(field_.degree(), 0);
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(full[i]);
  }
  return s + "]";
}

FqElt element_of_order(const FqField& F, u64 n, std::mt19937_64& rng) {
  if (n == 0) throw DomainError("element order must be positive");
  const mpz_class group = F.order() - 1;
  if (!mpz_divisible_ui_p(group.get_mpz_t(), n))
    throw DomainError("order " + std::to_string(n) + " does not divide q^d - 1");
  if (n == 1) return F.one();
  const mpz_class cofactor = group / static_cast<unsigned long>(n);
  const auto primes = prime_factors(n);
  auto exact_order = [&](const FqElt& y) {
    for (u64 p : primes)
      if (y.pow(n / p).is_one()) return false;
    return true;
  };
  // Small prime fields get the least residue of exact order n, which makes
  // the choice canonical and independent of the generator.
  if (F.degree() == 1 && F.characteristic() < (u64{1} << 16)) {
    for (u64 v = 2; v < F.characteristic(); ++v) {
      FqElt y = F.from_int(static_cast<i64>(v));
      if (y.pow(n).is_one() && exact_order(y)) return y;
    }
  }
  for (int attempt = 0; attempt < 256; ++attempt) {
    FqElt x = F.random_element(rng);
    if (x.is_zero()) continue;
    FqElt y = x.pow(cofactor);
    if (exact_order(y)) return y;
  }
  throw ComputationError("no element of order " + std::to_string(n) + " found after 256 samples");
}

}  // namespace dp5
