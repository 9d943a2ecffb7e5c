#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stablecentres/classalg.hpp"
#include "stablecentres/forms.hpp"
#include "stablecentres/matfq.hpp"
#include "stablecentres/rational.hpp"
#include "stablecentres/types.hpp"

namespace stc {

// All subspaces of F^n in RREF, ordered by dimension then basis.
std::vector<Subspace> all_subspaces(const Field& f, int n);
// All subspaces of k.
std::vector<Subspace> subspaces_within(const Subspace& k);

// ---------------------------------------------------------------- triples

// (W, g, V) at truncation m; W and V stand for themselves plus span(e_{m+1}, ...).
struct BoundingTriple {
  int m = 0;
  Subspace W, V;
  Mat g;

  bool operator==(const BoundingTriple& o) const { return m == o.m && W == o.W && V == o.V && g == o.g; }
  bool operator<(const BoundingTriple& o) const;
};

bool triple_valid(const BoundingTriple& t);
// W, V contain e_{n+1}, ..., e_m and g lies in GL_n.
bool in_BT(const BoundingTriple& t, int n);
BoundingTriple tight_triple(const Mat& g);
// Same triple at truncation m >= t.m.
BoundingTriple triple_extend(const BoundingTriple& t, int m);
// Same triple at truncation n <= t.m; requires t in BT_n.
BoundingTriple triple_restrict(const BoundingTriple& t, int n);
BoundingTriple triple_product(const BoundingTriple& a, const BoundingTriple& b);
// x . (W, g, V) = (x^{-T} W, x g x^{-1}, x V)
BoundingTriple triple_conjugate(const Mat& x, const BoundingTriple& t);

struct TripleInvariants {
  int a = 0, b = 0, c = 0, n = 0;
  int h = 0, k = 0;
  Multipartition type;  // of g as an element of GL_{n-c}
  Multipartition modified_type;
  int excess() const { return 2 * k - a - b - h; }
};
TripleInvariants triple_invariants(const BoundingTriple& t, int n);

struct StandardShape {
  Mat x;               // in GL_n
  BoundingTriple t;    // x . t at truncation n
  int a = 0, b = 0, c = 0;
};
StandardShape standard_shape(const BoundingTriple& t, int n);
// Checks the block pattern of a triple in standard shape with the given block sizes.
bool has_standard_shape(const BoundingTriple& t, int a, int b, int c);

// Orbits of BT_n under GL_n, each sorted, orbits ordered by their least member.
std::vector<std::vector<BoundingTriple>> triple_orbits(unsigned q, int n);
// GL_N-orbit of t (embedded at truncation N >= t.m).
std::vector<BoundingTriple> triple_orbit(const BoundingTriple& t, int N);

// Size of the orbit of (W, V) under the centralizer of g in GL_m, for m >= t.m.
BigInt orbit_count_P_centralizer(const BoundingTriple& t, int m);
// Coefficient of Cl(g) in Psi_m of the orbit indicator of t, for any m >= 0.
BigInt orbit_count_P(const BoundingTriple& t, int m);

// qbinom(m-n+c+h, h)_q q^{(m-n+c)(2k-h-a-b)}, zero when Cl(g) is empty at rank m.
BigRational predicted_remainder_gl(const TripleInvariants& inv, int m, unsigned q);
BigRational predicted_P_gl(const TripleInvariants& inv, int m, const BigRational& K, unsigned q);

using TripleFunction = std::map<BoundingTriple, BigInt>;
TripleFunction indicator(const std::vector<BoundingTriple>& orbit);
// f1 * f2 restricted to BT_n.
TripleFunction convolve(const TripleFunction& f1, const TripleFunction& f2);
ElementVector psi_elements(const TripleFunction& f);

// ---------------------------------------------------------------- pairs

// (g, V) at rank n of a classical family; V stands for V + V_n^perp.
struct BoundingPair {
  Family family = Family::U;
  unsigned q = 2;
  int n = 0;
  Subspace V;
  Mat g;

  bool operator==(const BoundingPair& o) const {
    return family == o.family && q == o.q && n == o.n && V == o.V && g == o.g;
  }
  bool operator<(const BoundingPair& o) const;
};

bool pair_valid(const BoundingPair& p);
BoundingPair tight_pair(Family family, unsigned q, int n, const Mat& g);
BoundingPair pair_extend(const BoundingPair& p, int m);
BoundingPair pair_product(const BoundingPair& a, const BoundingPair& b);
BoundingPair pair_conjugate(const Mat& x, const BoundingPair& p);

struct PairInvariants {
  int a = 0, r = 0;
  int h = 0, k = 0;
  Multipartition type;  // stripped type on W1 + W2 + W3
  bool numerator_nonnegative() const { return 2 * k - h - 2 * a >= 0; }
};
PairInvariants pair_invariants(const BoundingPair& p);

// Orbits of BP_n under G_n.
std::vector<std::vector<BoundingPair>> pair_orbits(Family family, unsigned q, int n, const BuildOptions& opt = {});

// Least member of each G_n-orbit on BP_n, found from class representatives and
// centralizer orbits on subspaces of ker(g - 1).
std::vector<BoundingPair> pair_orbit_representatives(Family family, unsigned q, int n, const BuildOptions& opt = {});

// Size of the orbit of V under the centralizer of g in G_m, m >= p.n.
BigInt orbit_count_P_pair(const BoundingPair& p, int m, const BuildOptions& opt = {});

// Remainders R(m) with P(m) = K R(m); each equals the centralizer-order expression.
BigRational predicted_remainder_unitary(const PairInvariants& inv, int m, unsigned q);
BigRational predicted_remainder_sp(const PairInvariants& inv, int m, unsigned q);
// Keyed by eps1; eps2 is the germ of V inside V_m.
std::map<WittClass, BigRational> predicted_remainder_orth(const PairInvariants& inv, int M, WittClass eps2, unsigned q);
// The same orthogonal values from the four parity cases of the closed form.
std::map<WittClass, BigRational> predicted_remainder_orth_cases(const PairInvariants& inv, int M, WittClass eps2, unsigned q);
// Unitary closed form exactly as (-1)^{(m-r)h} times q^{2(m-r)(k-h/2-a)} qbinom(m-r+h, h)_{-q}.
BigRational unitary_closed_form(const PairInvariants& inv, int m, unsigned q);
// Symplectic closed form q^{(2m-r)(k-h/2-a)} qbinom(m-r/2+h/2, h/2)_{q^2}.
BigRational sp_closed_form(const PairInvariants& inv, int m, unsigned q);
// Germ of the restriction of the form to V inside V_m.
WittClass pair_germ(const BoundingPair& p, int m);

using PairFunction = std::map<BoundingPair, BigInt>;
PairFunction indicator(const std::vector<BoundingPair>& orbit);
PairFunction convolve(const PairFunction& f1, const PairFunction& f2);
ElementVector psi_elements(const PairFunction& f);

// Collapses a central element vector onto class sums; nullopt if it is not constant on classes.
std::optional<CentreVector> to_centre_vector(const CentreContext& ctx, const ElementVector& v);

// ---------------------------------------------------------------- reports

struct OrbitCheckRow {
  int m = 0;
  BigInt brute;
  BigRational predicted;
  bool match = false;
};
struct OrbitReport {
  std::string description;
  std::map<std::string, long> invariants;
  BigRational K;
  int calibration_m = 0;
  bool K_integral = false;
  std::vector<OrbitCheckRow> rows;
  std::string note;
  bool ok() const;
};

// Calibrates K at the first m with a nonzero remainder and compares at every m in [m_lo, m_hi].
OrbitReport check_triple_orbit(const BoundingTriple& t, int n, int m_lo, int m_hi, unsigned q);
OrbitReport check_pair_orbit(const BoundingPair& p, int m_hi, const BuildOptions& opt = {});

std::string reports_json(const std::vector<OrbitReport>& reports);

}  // namespace stc
