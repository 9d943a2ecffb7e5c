#pragma once

#include "stablecentres/rational.hpp"

namespace stc {

// Evaluation base for q-analogues. Negative bases and squares are plain substitutions.
struct QValue {
  long q;
  explicit QValue(long v);
};

// (q^n - 1)/(q - 1); integral for n >= 0.
BigRational q_int(long n, QValue q);
BigInt q_int_z(long n, QValue q);
BigInt q_factorial(long n, QValue q);
BigInt q_binomial(long n, long k, QValue q);

// Gaussian binomial as a polynomial in q.
RationalPoly gauss_poly(long n, long k);

// x (x - [1]) ... (x - [k-1]) / (q^{k(k-1)/2} [k]!)
BigRational rq_basis_eval(long k, const BigRational& x, QValue q);

// Compares q_binomial(m+d, h) with the basis element at q^d [m] + [d].
bool shifted_qbinom_check(long d, long h, long m, QValue q);

}  // namespace stc
