#include "dp5/cyclotomic.hpp"

#include <algorithm>
#include <numeric>

#include "dp5/crt.hpp"
#include "dp5/errors.hpp"
#include "dp5/parallel.hpp"

namespace dp5 {

namespace {

mpz_class l1_norm(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& c : v) s += abs(c);
  return s;
}

// Bits needed for (bound)^exponent, plus slack.
std::size_t power_bits(const mpz_class& bound, std::size_t exponent) {
  const std::size_t b = bound <= 1 ? 1 : mpz_sizeinbase(bound.get_mpz_t(), 2);
  return b * exponent + 2;
}

// Reduces a length-(2*phi-1) or shorter vector modulo Phi_n in place and
// resizes it to phi. x^k = -(x^(k-m) + x^(k-2m) + x^(k-3m) + x^(k-4m)) for k >= 4m.
void reduce_cyclotomic(std::vector<mpz_class>& v, std::size_t phi, std::size_t m) {
  for (std::size_t k = v.size(); k-- > phi;) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t s = 1; s <= 4; ++s) v[k - s * m] -= v[k];
    v[k] = 0;
  }
  v.resize(phi);
}

fp::Poly reduce_vector(const std::vector<mpz_class>& v, u64 p) {
  fp::Poly r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = reduce_mod(v[i], p);
  fp::trim(r);
  return r;
}

// Phi_n has 0/1 coefficients, so its image is the same for every prime.
fp::Poly cyclotomic_mod(const CycField& F) {
  fp::Poly phi_n(F.degree() + 1, 0);
  for (std::size_t s = 0; s <= 4; ++s) phi_n[s * F.block()] = 1;
  return phi_n;
}

// Integer polynomial P(T) = Res_y(Phi_n(y), T*U(y) - V(y)), computed modulo
// enough primes to cover `bits`.
std::vector<mpz_class> resultant_pencil(const CycField& F, const std::vector<mpz_class>& U,
                                        const std::vector<mpz_class>& V, std::size_t bits) {
  const std::size_t phi = F.degree();
  const std::size_t nprimes = primes_for_bits(bits);
  const auto primes = crt_primes(nprimes);
  std::vector<fp::Poly> images(nprimes);
  parallel_for(nprimes, [&](std::size_t idx) {
    const u64 p = primes[idx];
    const fp::Poly phi_n = cyclotomic_mod(F);
    const fp::Poly up = reduce_vector(U, p), vp = reduce_vector(V, p);
    std::vector<u64> xs(phi + 1), ys(phi + 1);
    for (std::size_t t = 0; t <= phi; ++t) {
      xs[t] = t;
      ys[t] = fp::resultant(phi_n, fp::sub(fp::scale(up, t, p), vp, p), p);
    }
    images[idx] = fp::interpolate(xs, ys, p);
    images[idx].resize(phi + 1, 0);
  });
  std::vector<mpz_class> out(phi + 1);
  for (std::size_t k = 0; k <= phi; ++k) {
    CrtAccumulator acc;
    for (std::size_t idx = 0; idx < nprimes; ++idx) acc.add(images[idx][k], primes[idx]);
    out[k] = acc.symmetric();
  }
  return out;
}

qpoly::Poly kth_root(const qpoly::Poly& chi, std::size_t e, std::size_t k) {
  // Power series root of c(y) = y^deg * chi(1/y) with c(0) = 1, truncated at y^e.
  const std::size_t deg = static_cast<std::size_t>(qpoly::degree(chi));
  auto c = [&](std::size_t j) { return j <= deg ? chi[deg - j] : Rat(0); };
  std::vector<Rat> s(e + 1);
  s[0] = Rat(1);
  const Rat kk(static_cast<long>(k));
  for (std::size_t n = 1; n <= e; ++n) {
    Rat acc(0);
    for (std::size_t i = 0; i < n; ++i) acc += s[i] * Rat(static_cast<long>(n - i)) * c(n - i);
    for (std::size_t i = 1; i < n; ++i) acc -= kk * c(i) * Rat(static_cast<long>(n - i)) * s[n - i];
    s[n] = acc / (kk * Rat(static_cast<long>(n)));
  }
  qpoly::Poly m(e + 1);
  for (std::size_t j = 0; j <= e; ++j) m[e - j] = s[j];
  return m;
}

}  // namespace

CycField::CycField(int layer) : layer_(layer), block_(1) {
  if (layer < 1) throw DomainError("layer must be >= 1");
  if (layer > kMaxLayer)
    throw CapExceeded("layer " + std::to_string(layer) + " exceeds the supported cap of " +
                          std::to_string(kMaxLayer),
                      layer);
  block_ = ipow(5, static_cast<unsigned>(layer));
}

qpoly::Poly CycField::cyclotomic_poly() const {
  qpoly::Poly f(degree() + 1, Rat(0));
  for (std::size_t s = 0; s <= 4; ++s) f[s * block_] = Rat(1);
  return f;
}

CycElt CycField::zero() const { return CycElt(*this, std::vector<mpz_class>(degree()), 1); }
CycElt CycField::one() const { return from_rat(Rat(1)); }

CycElt CycField::from_rat(const Rat& c) const {
  std::vector<mpz_class> num(degree());
  num[0] = c.num();
  return CycElt(*this, std::move(num), c.den());
}

CycElt CycField::from_coeffs(const std::vector<Rat>& c) const {
  // Accepts any length; longer inputs are reduced modulo Phi_n.
  mpz_class den = 1;
  for (const auto& x : c) den = lcm(den, x.den());
  std::vector<mpz_class> num(std::max(c.size(), degree()));
  for (std::size_t i = 0; i < c.size(); ++i) num[i] = c[i].num() * (den / c[i].den());
  if (num.size() > 2 * degree() - 1) {
    // Fold high powers with x^n = 1 before the single-pass reduction.
    std::vector<mpz_class> folded(conductor());
    for (std::size_t i = 0; i < num.size(); ++i) folded[i % conductor()] += num[i];
    num = std::move(folded);
  }
  reduce_cyclotomic(num, degree(), static_cast<std::size_t>(block_));
  return CycElt(*this, std::move(num), den);
}

nlohmann::json CycField::to_json() const {
  return {{"type", "cyclotomic"}, {"layer", layer_}, {"conductor", conductor()}, {"degree", degree()}};
}

CycElt::CycElt(CycField f, std::vector<mpz_class> num, mpz_class den)
    : field_(f), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void CycElt::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (sgn(c) != 0) g = gcd(g, c);
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    den_ /= g;
  }
}

std::vector<Rat> CycElt::coeffs() const {
  std::vector<Rat> out;
  out.reserve(num_.size());
  for (const auto& c : num_) out.emplace_back(c, den_);
  return out;
}

std::size_t CycElt::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) != 0; }));
}

bool CycElt::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

bool CycElt::is_one() const { return is_rational() && num_[0] == den_; }

bool CycElt::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

CycElt& CycElt::operator+=(const CycElt& o) {
  if (!(field_ == o.field_)) throw DomainError("cyclotomic elements from different fields");
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    const mpz_class l = lcm(den_, o.den_);
    const mpz_class a = l / den_, b = l / o.den_;
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * a + o.num_[i] * b;
    den_ = l;
  }
  normalize();
  return *this;
}

CycElt& CycElt::operator-=(const CycElt& o) { return *this += -o; }

CycElt CycElt::operator-() const {
  CycElt r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

CycElt operator*(const CycElt& a, const CycElt& b) {
  if (!(a.field_ == b.field_)) throw DomainError("cyclotomic elements from different fields");
  const std::size_t phi = a.field_.degree();
  std::vector<std::size_t> nz_a, nz_b;
  for (std::size_t i = 0; i < phi; ++i) {
    if (sgn(a.num_[i]) != 0) nz_a.push_back(i);
    if (sgn(b.num_[i]) != 0) nz_b.push_back(i);
  }
  std::vector<mpz_class> acc(2 * phi - 1);
  for (std::size_t i : nz_a)
    for (std::size_t j : nz_b) mpz_addmul(acc[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
  reduce_cyclotomic(acc, phi, static_cast<std::size_t>(a.field_.block()));
  return CycElt(a.field_, std::move(acc), a.den_ * b.den_);
}

CycElt& CycElt::operator*=(const CycElt& o) { return *this = *this * o; }

CycElt CycElt::scaled(const Rat& c) const {
  std::vector<mpz_class> num = num_;
  const mpz_class n = c.num();
  for (auto& x : num) x *= n;
  return CycElt(field_, std::move(num), den_ * c.den());
}

CycElt CycElt::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in cyclotomic field");
  if (is_rational()) return field_.from_rat(coeff(0).inverse());
  // With x = X/d and N = norm(X), Y = N/X lies in Z[zeta]; Y is found
  // multi-modularly and checked by X*Y == N. Its coefficients are minors of
  // the multiplication matrix of X, whose columns have l1 norm <= 4|X|_1.
  const std::size_t phi = field_.degree();
  const CycElt X(field_, num_, mpz_class(1));
  const mpz_class N = norm(X).num();
  const CycElt target = field_.from_rat(Rat(N));
  const std::size_t max_bits = power_bits(4 * l1_norm(num_), phi - 1) + 1;
  const fp::Poly phi_n = cyclotomic_mod(field_);

  std::vector<u64> primes;
  std::vector<fp::Poly> images;
  std::size_t scanned = 0;
  for (std::size_t want = 2;; want *= 2) {
    while (primes.size() < want) {
      const auto batch = crt_primes(scanned + want);
      for (; scanned < batch.size() && primes.size() < want; ++scanned)
        if (!mpz_divisible_ui_p(N.get_mpz_t(), batch[scanned])) primes.push_back(batch[scanned]);
    }
    const std::size_t done = images.size();
    images.resize(primes.size());
    parallel_for(primes.size() - done, [&](std::size_t k) {
      const u64 p = primes[done + k];
      fp::Poly y = fp::invmod(reduce_vector(num_, p), phi_n, p);
      y = fp::scale(y, reduce_mod(N, p), p);
      y.resize(phi, 0);
      images[done + k] = std::move(y);
    });
    std::vector<mpz_class> y(phi);
    for (std::size_t i = 0; i < phi; ++i) {
      CrtAccumulator acc;
      for (std::size_t k = 0; k < primes.size(); ++k) acc.add(images[k][i], primes[k]);
      y[i] = acc.symmetric();
    }
    const CycElt Y(field_, std::move(y), mpz_class(1));
    if (X * Y == target) return Y.scaled(Rat(den_, N));
    if (61 * primes.size() > max_bits + 61)
      throw ComputationError("cyclotomic inverse failed to reconstruct");
  }
}

CycElt CycElt::pow(u64 e) const {
  CycElt result = field_.one(), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

nlohmann::json CycElt::to_json() const {
  nlohmann::json coeffs_json = nlohmann::json::array();
  for (std::size_t i = 0; i < num_.size(); ++i) coeffs_json.push_back(coeff(i).str());
  return {{"layer", field_.layer()}, {"coeffs", coeffs_json}};
}

CycElt CycElt::from_json(const nlohmann::json& j) {
  const CycField F(j.at("layer").get<int>());
  std::vector<Rat> c;
  for (const auto& x : j.at("coeffs")) c.push_back(Rat::parse(x.get<std::string>()));
  if (c.size() != F.degree()) throw DomainError("cyclotomic coefficient vector has wrong length");
  return F.from_coeffs(c);
}

std::string CycElt::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) s += ",";
    s += coeff(i).str();
  }
  return s + "]";
}

CycElt zeta_power(const CycField& F, i64 e) {
  const i64 n = static_cast<i64>(F.conductor());
  i64 k = e % n;
  if (k < 0) k += n;
  std::vector<mpz_class> num(F.degree());
  const auto uk = static_cast<std::size_t>(k);
  if (uk < F.degree()) {
    num[uk] = 1;
  } else {
    const auto m = static_cast<std::size_t>(F.block());
    for (std::size_t s = 1; s <= 4; ++s) num[uk - s * m] = -1;
  }
  return CycElt(F, std::move(num), 1);
}

CycElt galois_apply(i64 a, const CycElt& x) {
  const CycField& F = x.field();
  const i64 n = static_cast<i64>(F.conductor());
  i64 am = a % n;
  if (am < 0) am += n;
  if (std::gcd(am, n) != 1) throw DomainError("Galois exponent must be coprime to the conductor");
  const std::size_t phi = F.degree();
  const auto m = static_cast<std::size_t>(F.block());
  std::vector<mpz_class> num(phi);
  for (std::size_t i = 0; i < phi; ++i) {
    if (sgn(x.num_[i]) == 0) continue;
    const auto e = static_cast<std::size_t>((static_cast<u128>(am) * i) % static_cast<u64>(n));
    if (e < phi) {
      num[e] += x.num_[i];
    } else {
      for (std::size_t s = 1; s <= 4; ++s) num[e - s * m] -= x.num_[i];
    }
  }
  return CycElt(F, std::move(num), x.den_);
}

Rat norm(const CycElt& x) {
  const CycField& F = x.field();
  const std::size_t phi = F.degree();
  const auto& num = x.numerators();
  const std::size_t bits = power_bits(l1_norm(num), phi);
  const std::size_t nprimes = primes_for_bits(bits);
  const auto primes = crt_primes(nprimes);
  std::vector<u64> residues(nprimes);
  parallel_for(nprimes, [&](std::size_t idx) {
    const u64 p = primes[idx];
    residues[idx] = fp::resultant(cyclotomic_mod(F), reduce_vector(num, p), p);
  });
  CrtAccumulator acc;
  for (std::size_t idx = 0; idx < nprimes; ++idx) acc.add(residues[idx], primes[idx]);
  mpz_class den_pow;
  mpz_pow_ui(den_pow.get_mpz_t(), x.denominator().get_mpz_t(), phi);
  return Rat(acc.symmetric(), den_pow);
}

qpoly::Poly charpoly_of_ratio(const CycElt& num, const CycElt& den) {
  if (!(num.field() == den.field())) throw DomainError("cyclotomic elements from different fields");
  if (den.is_zero()) throw DomainError("charpoly_of_ratio: zero denominator element");
  const CycField& F = num.field();
  // num/den = V/U with integer vectors U = den_n * num_d, V = num_n * den_d.
  std::vector<mpz_class> U = den.numerators(), V = num.numerators();
  for (auto& c : U) c *= num.denominator();
  for (auto& c : V) c *= den.denominator();
  const std::size_t bits = power_bits(l1_norm(U) + l1_norm(V), F.degree());
  const std::vector<mpz_class> P = resultant_pencil(F, U, V, bits);
  qpoly::Poly chi(P.size());
  for (std::size_t k = 0; k < P.size(); ++k) chi[k] = Rat(P[k], P.back());
  return chi;
}

qpoly::Poly charpoly(const CycElt& x) { return charpoly_of_ratio(x, x.field().one()); }

qpoly::Poly min_poly_from_charpoly(const qpoly::Poly& chi) {
  const auto phi = static_cast<std::size_t>(qpoly::degree(chi));
  std::vector<std::size_t> candidates;
  // Degree hint from the square-free part modulo a prime.
  for (u64 p : crt_primes(4)) {
    fp::Poly cp;
    try {
      for (const auto& c : chi) cp.push_back(reduce_mod(c, p));
    } catch (const DomainError&) {
      continue;
    }
    fp::trim(cp);
    const fp::Poly g = fp::gcd(cp, fp::derivative(cp, p), p);
    const auto e = phi - static_cast<std::size_t>(fp::degree(g));
    if (e >= 1 && phi % e == 0) candidates.push_back(e);
    break;
  }
  for (std::size_t e = 1; e <= phi; ++e)
    if (phi % e == 0) candidates.push_back(e);
  for (std::size_t e : candidates) {
    const std::size_t k = phi / e;
    qpoly::Poly m = kth_root(chi, e, k);
    if (qpoly::pow(m, static_cast<unsigned>(k)) == chi) return m;
  }
  throw ComputationError("characteristic polynomial is not a power of an irreducible");
}

qpoly::Poly min_poly(const CycElt& x) { return min_poly_from_charpoly(charpoly(x)); }

qpoly::Poly min_poly_of_ratio(const CycElt& num, const CycElt& den) {
  return min_poly_from_charpoly(charpoly_of_ratio(num, den));
}

CycElt evaluate(const qpoly::Poly& p, const CycElt& x) {
  CycElt acc = x.field().zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + x.field().from_rat(p[i]);
  return acc;
}

ResidueEmbedding::ResidueEmbedding(CycField K, FqField F, const FqElt& omega, u64 seed)
    : source_(K), target_(std::move(F)), seed_(seed) {
  powers_.reserve(K.degree());
  powers_.push_back(target_.one());
  for (std::size_t i = 1; i < K.degree(); ++i) powers_.push_back(powers_.back() * omega);
}

ResidueEmbedding ResidueEmbedding::make(const CycField& K, u64 q, u64 seed, unsigned degree_cap) {
  if (q == 5) throw DomainError("excluded prime: 5 is totally ramified in Q(zeta)");
  if (!is_prime(q)) throw DomainError("residue characteristic must be prime");
  const u64 d = mult_order(static_cast<i64>(q), K.conductor());
  if (d > degree_cap)
    throw CapExceeded("residue degree " + std::to_string(d) + " exceeds cap " + std::to_string(degree_cap),
                      static_cast<long long>(d));
  FqField F = FqField::random(q, static_cast<unsigned>(d), seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  FqElt omega = element_of_order(F, K.conductor(), rng);
  return ResidueEmbedding(K, std::move(F), omega, seed);
}

ResidueEmbedding ResidueEmbedding::from_json(const CycField& K, const nlohmann::json& j) {
  FqField F = FqField::from_json(j.at("field"));
  if (F.characteristic() == 5) throw DomainError("excluded prime: 5 is totally ramified in Q(zeta)");
  const FqElt omega = F.from_coeffs(j.at("zeta_image").get<fp::Poly>());
  const u64 n = K.conductor();
  if (!omega.pow(n).is_one() || omega.pow(n / 5).is_one())
    throw DomainError("recorded image of zeta does not have exact order " + std::to_string(n));
  return ResidueEmbedding(K, std::move(F), omega, j.value("seed", u64{0}));
}

FqElt ResidueEmbedding::operator()(const CycElt& x) const {
  if (!(x.field() == source_)) throw DomainError("element is not in the embedding's source field");
  const u64 q = prime();
  const u64 den = reduce_mod(x.denominator(), q);
  if (den == 0) throw DomainError("coefficient denominator divisible by " + std::to_string(q));
  FqElt acc = target_.zero();
  const auto& num = x.numerators();
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (sgn(num[i]) == 0) continue;
    acc += powers_[i] * target_.from_int(static_cast<i64>(reduce_mod(num[i], q)));
  }
  return acc * target_.from_int(static_cast<i64>(inv_mod(den, q)));
}

nlohmann::json ResidueEmbedding::to_json() const {
  return {{"prime", prime()},
          {"residue_degree", residue_degree()},
          {"field", target_.to_json()},
          {"zeta_image", zeta_image().to_json()},
          {"seed", seed_}};
}

}  // namespace dp5
