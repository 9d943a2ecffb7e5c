#pragma once

#include <optional>
#include <vector>

#include "stablecentres/grouptable.hpp"
#include "stablecentres/matfq.hpp"
#include "stablecentres/rational.hpp"
#include "stablecentres/types.hpp"

namespace stc {

enum class FormKind { Hermitian, Alternating, Symmetric };

// B(v, w) = v^T gram sigma(w), sigma the Frobenius for Hermitian forms.
struct FormSpec {
  FormKind kind = FormKind::Symmetric;
  Family family = Family::OOdd;
  const Field* F = nullptr;
  unsigned q = 0;
  int n = 0;
  int N = 0;
  Mat gram;

  bool hermitian() const { return kind == FormKind::Hermitian; }
  Scalar sigma(Scalar x) const { return hermitian() ? F->frobenius_q(x) : x; }
  Scalar eval(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const;
};

// Ambient dimension of level n.
int ambient_dim(Family f, int n);
// Coordinates added per level.
int level_step(Family f);
// Field of matrix entries: GF(q^2) for u, GF(q) otherwise.
const Field& entry_field(Family f, unsigned q);
Scalar least_nonsquare(const Field& f);

FormSpec standard_gram(Family family, int n, unsigned q);
FormSpec form_from_gram(FormKind kind, const Mat& gram, unsigned q);
bool is_isometry(const Mat& g, const FormSpec& form);

BigInt group_order(Family family, unsigned q, int n);

struct EnumerateOptions {
  std::uint64_t limit = 30'000'000;
  unsigned threads = 1;
};
GroupTable enumerate_isometry_group(const FormSpec& form, const EnumerateOptions& opt = {});

std::vector<Scalar> hyperbolic_complete(const std::vector<Scalar>& u1, const FormSpec& form);

struct WittDecomposition {
  int radical_dim = 0;
  int polar_rank = 0;
  int germ_dim = 0;
  // Symmetric forms only.
  WittClass germ = WittClass::Zero;
  bool operator==(const WittDecomposition&) const = default;
};
WittDecomposition witt_decompose(const FormSpec& form, const Subspace& s);
// Same invariants from the rank and discriminant of the restricted Gram matrix.
WittDecomposition witt_invariants_by_discriminant(const FormSpec& form, const Subspace& s);

// Gram matrix of B restricted to the rows of s.
Mat restricted_gram(const FormSpec& form, const Subspace& s);
// { x : B(x, v) = 0 for all v in s }
Subspace orthogonal(const FormSpec& form, const Subspace& s);

}  // namespace stc
