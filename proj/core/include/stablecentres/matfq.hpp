#pragma once

#include <cstdint>
#include <vector>

#include "stablecentres/fqpoly.hpp"
#include "stablecentres/gf.hpp"
#include "stablecentres/types.hpp"

namespace stc {

class Mat {
 public:
  Mat() = default;
  Mat(const Field& f, int rows, int cols) : F_(&f), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}
  Mat(const Field& f, int rows, int cols, std::vector<Scalar> entries);
  static Mat identity(const Field& f, int n);

  const Field& field() const { return *F_; }
  const Field* field_ptr() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }
  Scalar operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const std::vector<Scalar>& data() const { return a_; }
  std::vector<Scalar>& data() { return a_; }
  bool is_identity() const;

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

 private:
  const Field* F_ = nullptr;
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scale(const Mat& a, Scalar s);
Mat mat_inv(const Mat& a);
Mat transpose(const Mat& a);
// Entrywise Frobenius then transpose; needs a field of square order.
Mat conj_transpose(const Mat& a);
Mat frobenius(const Mat& a);
Scalar det(const Mat& a);
int rank(const Mat& a);
// diag(g, I_d)
Mat block_embed(const Mat& g, int d);
// Upper-left n x n block.
Mat block_restrict(const Mat& g, int n);
Mat poly_eval(const PolyFq& p, const Mat& m);
PolyFq char_poly(const Mat& m);

// Elementary transvections I + E_ij together with diag(primitive, 1, ..., 1) when q > 2.
std::vector<Mat> gl_generators(const Field& f, int n);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m);

// Subspace of F^m with a reduced row echelon basis (one vector per row).
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, int ambient);  // zero subspace
  static Subspace span(const Mat& rows);
  static Subspace full(const Field& f, int ambient);
  // span(e_from, ..., e_{ambient-1}), zero-based
  static Subspace tail(const Field& f, int ambient, int from);

  const Field& field() const { return basis_.field(); }
  int ambient() const { return m_; }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  std::vector<Scalar> vector(int i) const;
  bool contains(const std::vector<Scalar>& v) const;
  bool contains(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return m_ == o.m_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const;

 private:
  int m_ = 0;
  Mat basis_;
};

Subspace kernel(const Mat& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
// g V with vectors as columns.
Subspace subspace_image(const Mat& g, const Subspace& v);
// V + span(e_n, ..., e_{n+d-1}) inside F^{n+d}.
Subspace subspace_embed(const Subspace& v, int d);
// Annihilator for the plain dot product.
Subspace annihilator(const Subspace& v);

// Monic invariant factors of tI - M, d_1 | d_2 | ... | d_n.
std::vector<PolyFq> smith_invariant_factors(const Mat& m);
std::vector<std::pair<PolyFq, int>> elementary_divisors(const Mat& m);
Multipartition type_of(const Mat& m);

// Packed layout: entry width ceil(log2 |F|) bits, row-major little-endian bit stream,
// padded to 64-bit words.
unsigned bits_per_entry(const Field& f);
std::size_t packed_words(const Field& f, int rows, int cols);
void pack_into(const Mat& m, std::uint64_t* out);
std::vector<std::uint64_t> pack(const Mat& m);
Mat unpack(const Field& f, int rows, int cols, const std::uint64_t* words);

}  // namespace stc
