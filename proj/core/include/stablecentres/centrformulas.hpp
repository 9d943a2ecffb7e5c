#pragma once

#include <map>

#include "stablecentres/rational.hpp"
#include "stablecentres/types.hpp"

namespace stc {

// Centralizer in GL_n(F_q) of an element of type mu.
BigInt gl_centralizer_size(const Multipartition& mu, unsigned q);
// |C(g + Id_d)| / |C(g)| in GL.
BigRational gl_centralizer_ratio(const Multipartition& mu, int d, unsigned q);

// mu is a type over F_{q^2}; it must be invariant under r -> r*.
BigInt unitary_centralizer_size(const Multipartition& mu, unsigned q);
BigRational unitary_ratio(const Multipartition& mu, int d, unsigned q);
// d counts added dimensions and must be even.
BigRational sp_ratio(const Multipartition& mu, int d, unsigned q);
// One value per admissible germ eps1 of the fixed part of the 1-blocks of t-1.
std::map<WittClass, BigRational> orth_ratio(const Multipartition& mu, int d, unsigned q, WittClass rho);

// Germ-indexed orthogonal group order in dimension m, with 1 for m = 0.
BigInt orthogonal_order(int m, WittClass germ, unsigned q);

}  // namespace stc
