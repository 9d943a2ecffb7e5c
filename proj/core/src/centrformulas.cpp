#include "stablecentres/centrformulas.hpp"

#include <set>

#include "stablecentres/errors.hpp"
#include "stablecentres/fqpoly.hpp"
#include "stablecentres/gf.hpp"

namespace stc {

namespace {

// prod_{i=1}^k (1 - t^i)
BigRational phi(int k, const BigRational& t) {
  BigRational r = 1, p = 1;
  for (int i = 1; i <= k; ++i) {
    p *= t;
    r *= 1 - p;
  }
  return r;
}

BigInt order_gl(const BigInt& Q, int m) {
  BigInt r = 1;
  for (int i = 0; i < m; ++i) r *= ipow(Q, m) - ipow(Q, i);
  return r;
}

BigInt order_u(const BigInt& Q, int m) {
  BigInt r = ipow(Q, static_cast<unsigned>(m * (m - 1) / 2));
  for (int i = 1; i <= m; ++i) r *= ipow(Q, i) - (i % 2 ? -1 : 1);
  return r;
}

// Symplectic group of dimension m.
BigInt order_sp(const BigInt& Q, int m) {
  const int n = m / 2;
  BigInt r = ipow(Q, static_cast<unsigned>(n * n));
  for (int i = 1; i <= n; ++i) r *= ipow(Q, 2 * i) - 1;
  return r;
}

BigInt order_o(const BigInt& Q, int m, bool plus) {
  const int n = m / 2;
  BigInt r = 2;
  if (m % 2) {
    r *= ipow(Q, static_cast<unsigned>(n * n));
    for (int i = 1; i <= n; ++i) r *= ipow(Q, 2 * i) - 1;
    return r;
  }
  r *= ipow(Q, static_cast<unsigned>(n * n - n)) * (ipow(Q, n) - (plus ? 1 : -1));
  for (int i = 1; i < n; ++i) r *= ipow(Q, 2 * i) - 1;
  return r;
}

BigInt as_integer(const BigRational& x) {
  if (!is_integral(x)) throw Error(ErrorCode::NonIntegral, "centralizer formula is not integral: " + to_string(x));
  return numerator(x);
}

struct TMinusOne {
  int k = 0, h = 0;
};

TMinusOne t_minus_1_stats(const Multipartition& mu, unsigned q) {
  const std::string key = t_minus_1_key(prime_power(q).first);
  TMinusOne s;
  if (mu.contains(key)) {
    const Partition& p = mu.at(key);
    s.k = p.length();
    s.h = p.mult(1);
  }
  return s;
}

bool even_germ(WittClass w) { return w == WittClass::Zero || w == WittClass::Omega; }

}  // namespace

BigInt gl_centralizer_size(const Multipartition& mu, unsigned q) {
  BigRational r = 1;
  for (const auto& [key, part] : mu.entries()) {
    const BigInt qr = ipow(BigInt(q), static_cast<unsigned>(poly_string_degree(key)));
    r *= BigRational(ipow(qr, static_cast<unsigned>(part.size() + 2 * part.n_stat())));
    for (const auto& [i, m] : part.multiplicities()) r *= phi(m, BigRational(1) / BigRational(qr));
  }
  return as_integer(r);
}

BigRational gl_centralizer_ratio(const Multipartition& mu, int d, unsigned q) {
  if (d < 0) throw Error(ErrorCode::InvalidInput, "negative d");
  auto [k, h] = t_minus_1_stats(mu, q);
  BigRational r = BigRational(ipow(BigInt(q), static_cast<unsigned>(d * (2 * k + d))));
  for (int i = h + 1; i <= h + d; ++i) r *= 1 - BigRational(1) / BigRational(ipow(BigInt(q), static_cast<unsigned>(i)));
  return r;
}

BigInt unitary_centralizer_size(const Multipartition& mu, unsigned q) {
  const Field& F = field_of_order(static_cast<std::uint64_t>(q) * q);
  BigInt total = 1;
  std::set<std::string> done;
  for (const auto& [key, part] : mu.entries()) {
    if (done.count(key)) continue;
    const std::string skey = star(poly_parse(F, key), true).to_string();
    if (!mu.contains(skey) || mu.at(skey) != part) throw Error(ErrorCode::StarAsymmetric, "type is not star-invariant at " + key);
    const bool self = skey == key;
    done.insert(key);
    done.insert(skey);
    const BigInt Q = ipow(BigInt(q), static_cast<unsigned>(poly_string_degree(key)));
    const auto mult = part.multiplicities();
    long e = 0;
    for (auto i = mult.begin(); i != mult.end(); ++i) {
      for (auto j = std::next(i); j != mult.end(); ++j) e += 2L * i->first * i->second * j->second;
      e += static_cast<long>(i->first - 1) * i->second * i->second;
    }
    BigInt b = ipow(Q, static_cast<unsigned>(e * (self ? 1 : 2)));
    for (const auto& [i, m] : mult) b *= self ? order_u(Q, m) : order_gl(Q * Q, m);
    total *= b;
  }
  return total;
}

BigRational unitary_ratio(const Multipartition& mu, int d, unsigned q) {
  if (d < 0) throw Error(ErrorCode::InvalidInput, "negative d");
  auto [k, h] = t_minus_1_stats(mu, q * q);
  const BigInt Q = q;
  return BigRational(ipow(Q, static_cast<unsigned>(2 * d * (k - h)))) * BigRational(order_u(Q, h + d)) /
         BigRational(order_u(Q, h));
}

BigRational sp_ratio(const Multipartition& mu, int d, unsigned q) {
  if (d < 0 || d % 2) throw Error(ErrorCode::BadParity, "symplectic extension needs even d");
  auto [k, h] = t_minus_1_stats(mu, q);
  if (h % 2) throw Error(ErrorCode::BadParity, "odd number of 1-blocks at t-1");
  const BigInt Q = q;
  return BigRational(ipow(Q, static_cast<unsigned>(d * (k - h)))) * BigRational(order_sp(Q, h + d)) /
         BigRational(order_sp(Q, h));
}

BigInt orthogonal_order(int m, WittClass germ, unsigned q) {
  if (m < 0 || (m % 2 == 0) != even_germ(germ) || (m == 0 && germ != WittClass::Zero))
    throw Error(ErrorCode::BadParity, "germ does not fit the dimension");
  if (m == 0) return 1;
  return order_o(BigInt(q), m, germ == WittClass::Zero);
}

std::map<WittClass, BigRational> orth_ratio(const Multipartition& mu, int d, unsigned q, WittClass rho) {
  if (q % 2 == 0) throw Error(ErrorCode::IncompatibleFamily, "orthogonal ratios need odd q");
  if (d < 0 || (d % 2 == 0) != even_germ(rho) || (d == 0 && rho != WittClass::Zero))
    throw Error(ErrorCode::BadParity, "germ does not fit the added dimension");
  auto [k, h] = t_minus_1_stats(mu, q);
  const BigRational scale = BigRational(ipow(BigInt(q), static_cast<unsigned>(d * (k - h))));
  std::map<WittClass, BigRational> out;
  for (WittClass e : {WittClass::Zero, WittClass::One, WittClass::Delta, WittClass::Omega}) {
    if ((h % 2 == 0) != even_germ(e) || (h == 0 && e != WittClass::Zero)) continue;
    const WittClass e2 = witt_add(e, rho, q);
    out[e] = scale * BigRational(orthogonal_order(h + d, e2, q)) / BigRational(orthogonal_order(h, e, q));
  }
  return out;
}

}  // namespace stc
