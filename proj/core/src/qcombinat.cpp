#include "stablecentres/qcombinat.hpp"

#include "stablecentres/errors.hpp"

namespace stc {

QValue::QValue(long v) : q(v) {
  if (v > -2 && v < 2) throw Error(ErrorCode::InvalidInput, "|q| must be at least 2");
}

BigRational q_int(long n, QValue q) {
  BigRational b(q.q);
  return (rpow(b, n) - 1) / (b - 1);
}

BigInt q_int_z(long n, QValue q) {
  if (n < 0) throw Error(ErrorCode::InvalidInput, "q_int_z needs n >= 0");
  BigInt r = 0, p = 1;
  for (long i = 0; i < n; ++i) {
    r += p;
    p *= q.q;
  }
  return r;
}

BigInt q_factorial(long n, QValue q) {
  BigInt r = 1;
  for (long i = 1; i <= n; ++i) r *= q_int_z(i, q);
  return r;
}

BigInt q_binomial(long n, long k, QValue q) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigRational r = 1;
  for (long i = 0; i < k; ++i) r *= q_int(n - i, q) / q_int(i + 1, q);
  if (!is_integral(r)) throw Error(ErrorCode::InternalNonIntegral, "q_binomial " + to_string(r));
  return boost::multiprecision::numerator(r);
}

RationalPoly gauss_poly(long n, long k) {
  if (k < 0 || n < 0 || k > n) return {};
  // Pascal row: rows[j] holds [i choose j]_q.
  std::vector<RationalPoly> row(static_cast<std::size_t>(n) + 1);
  row[0] = RationalPoly::constant(1);
  for (long i = 1; i <= n; ++i) {
    for (long j = std::min(i, k); j >= 1; --j) {
      row[j] = row[j - 1] + row[j] * RationalPoly::monomial(1, static_cast<std::size_t>(j));
    }
  }
  return row[static_cast<std::size_t>(k)];
}

BigRational rq_basis_eval(long k, const BigRational& x, QValue q) {
  if (k < 0) return 0;
  BigRational num = 1;
  for (long i = 0; i < k; ++i) num *= x - q_int(i, q);
  BigRational den = rpow(BigRational(q.q), k * (k - 1) / 2) * BigRational(q_factorial(k, q));
  return num / den;
}

bool shifted_qbinom_check(long d, long h, long m, QValue q) {
  if (m + d < 0) throw Error(ErrorCode::InvalidInput, "m + d must be nonnegative");
  BigRational lhs(q_binomial(m + d, h, q));
  BigRational x = rpow(BigRational(q.q), d) * q_int(m, q) + q_int(d, q);
  return lhs == rq_basis_eval(h, x, q);
}

}  // namespace stc
