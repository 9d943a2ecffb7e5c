#include "stablecentres/matfq.hpp"

#include <algorithm>

#include "stablecentres/errors.hpp"

namespace stc {

Mat::Mat(const Field& f, int rows, int cols, std::vector<Scalar> entries)
    : F_(&f), r_(rows), c_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(rows) * cols)
    throw Error(ErrorCode::InvalidInput, "entry count does not match shape");
  for (auto x : a_)
    if (x >= f.size()) throw Error(ErrorCode::InvalidInput, "entry out of field range");
}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::is_identity() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidInput, "shape mismatch in product");
  const Field& f = a.field();
  Mat r(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      Scalar x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) r.at(i, j) = f.add(r(i, j), f.mul(x, b(k, j)));
    }
  return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::InvalidInput, "shape mismatch in sum");
  Mat r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.field().add(a.data()[i], b.data()[i]);
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::InvalidInput, "shape mismatch in difference");
  Mat r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.field().sub(a.data()[i], b.data()[i]);
  return r;
}

Mat mat_scale(const Mat& a, Scalar s) {
  Mat r = a;
  for (auto& x : r.data()) x = a.field().mul(x, s);
  return r;
}

std::vector<int> rref(Mat& m) {
  const Field& f = m.field();
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    Scalar iv = f.inv(m(row, col));
    for (int j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(m(row, j), iv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Scalar c = m(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

Mat mat_inv(const Mat& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "inverse of non-square matrix");
  const int n = a.rows();
  if (n == 0) return a;
  const Field& f = a.field();
  Mat aug(f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw Error(ErrorCode::Singular, "matrix is singular");
  Mat r(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = aug(i, n + j);
  return r;
}

Mat transpose(const Mat& a) {
  Mat r(a.field(), a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(j, i) = a(i, j);
  return r;
}

Mat frobenius(const Mat& a) {
  Mat r = a;
  for (auto& x : r.data()) x = a.field().frobenius_q(x);
  return r;
}

Mat conj_transpose(const Mat& a) {
  if (!a.field().has_frobenius()) throw Error(ErrorCode::WrongField, "conjugate transpose needs GF(q^2)");
  return transpose(frobenius(a));
}

Scalar det(const Mat& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
  const Field& f = a.field();
  Mat m = a;
  const int n = m.rows();
  Scalar d = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c)) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(c, c));
    Scalar iv = f.inv(m(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (!m(i, c)) continue;
      Scalar k = f.mul(m(i, c), iv);
      for (int j = c; j < n; ++j) m.at(i, j) = f.sub(m(i, j), f.mul(k, m(c, j)));
    }
  }
  return d;
}

int rank(const Mat& a) {
  Mat m = a;
  return static_cast<int>(rref(m).size());
}

Mat block_embed(const Mat& g, int d) {
  if (!g.square()) throw Error(ErrorCode::InvalidInput, "block_embed needs a square matrix");
  const int n = g.rows();
  Mat r = Mat::identity(g.field(), n + d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = g(i, j);
  return r;
}

Mat block_restrict(const Mat& g, int n) {
  Mat r(g.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = g(i, j);
  return r;
}

Mat poly_eval(const PolyFq& p, const Mat& m) {
  const Field& f = m.field();
  const int n = m.rows();
  Mat r(f, n, n);
  for (int i = p.degree(); i >= 0; --i) {
    r = mat_mul(r, m);
    Scalar c = p.coeff(static_cast<std::size_t>(i));
    for (int k = 0; k < n; ++k) r.at(k, k) = f.add(r(k, k), c);
  }
  return r;
}

PolyFq char_poly(const Mat& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidInput, "characteristic polynomial of non-square matrix");
  const Field& f = m.field();
  const int n = m.rows();
  Mat h = m;
  // Similarity reduction to upper Hessenberg form.
  for (int k = 0; k + 2 < n; ++k) {
    int p = -1;
    for (int i = k + 1; i < n; ++i)
      if (h(i, k)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(h.at(p, j), h.at(k + 1, j));
      for (int i = 0; i < n; ++i) std::swap(h.at(i, p), h.at(i, k + 1));
    }
    Scalar iv = f.inv(h(k + 1, k));
    for (int r = k + 2; r < n; ++r) {
      if (!h(r, k)) continue;
      Scalar c = f.mul(h(r, k), iv);
      for (int j = 0; j < n; ++j) h.at(r, j) = f.sub(h(r, j), f.mul(c, h(k + 1, j)));
      for (int i = 0; i < n; ++i) h.at(i, k + 1) = f.add(h(i, k + 1), f.mul(c, h(i, r)));
    }
  }
  std::vector<PolyFq> p(n + 1);
  p[0] = PolyFq::one(f);
  for (int mm = 1; mm <= n; ++mm) {
    p[mm] = PolyFq::linear(f, h(mm - 1, mm - 1)) * p[mm - 1];
    Scalar prod = 1;
    for (int i = mm - 1; i >= 1; --i) {
      prod = f.mul(prod, h(i, i - 1));
      Scalar c = f.mul(prod, h(i - 1, mm - 1));
      if (c) p[mm] = p[mm] - p[i - 1].scale(c);
    }
  }
  return p[n];
}

Subspace::Subspace(const Field& f, int ambient) : m_(ambient), basis_(f, 0, ambient) {}

Subspace Subspace::span(const Mat& rows) {
  Mat m = rows;
  auto piv = rref(m);
  Subspace s(rows.field(), rows.cols());
  Mat b(rows.field(), static_cast<int>(piv.size()), rows.cols());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) b.at(i, j) = m(i, j);
  s.basis_ = std::move(b);
  return s;
}

Subspace Subspace::full(const Field& f, int ambient) { return span(Mat::identity(f, ambient)); }

Subspace Subspace::tail(const Field& f, int ambient, int from) {
  from = std::clamp(from, 0, ambient);
  Mat b(f, ambient - from, ambient);
  for (int i = 0; i < b.rows(); ++i) b.at(i, from + i) = 1;
  return span(b);
}

std::vector<Scalar> Subspace::vector(int i) const {
  std::vector<Scalar> v(static_cast<std::size_t>(m_));
  for (int j = 0; j < m_; ++j) v[j] = basis_(i, j);
  return v;
}

bool Subspace::contains(const std::vector<Scalar>& v) const {
  Mat m(field(), dim() + 1, m_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < m_; ++j) m.at(i, j) = basis_(i, j);
  for (int j = 0; j < m_; ++j) m.at(dim(), j) = v[j];
  return rank(m) == dim();
}

bool Subspace::contains(const Subspace& o) const { return subspace_sum(*this, o).dim() == dim(); }

bool Subspace::operator<(const Subspace& o) const {
  if (m_ != o.m_) return m_ < o.m_;
  if (dim() != o.dim()) return dim() < o.dim();
  return basis_.data() < o.basis_.data();
}

std::vector<Mat> gl_generators(const Field& f, int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        Mat e = Mat::identity(f, n);
        e.at(i, j) = 1;
        out.push_back(std::move(e));
      }
  if (f.size() > 2 && n > 0) {
    Mat d = Mat::identity(f, n);
    d.at(0, 0) = f.primitive();
    out.push_back(std::move(d));
  }
  return out;
}

Subspace kernel(const Mat& a) {
  const Field& f = a.field();
  Mat m = a;
  auto piv = rref(m);
  const int n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Scalar>> vecs;
  for (int fc = 0; fc < n; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<Scalar> v(n, 0);
    v[fc] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(m(static_cast<int>(r), fc));
    vecs.push_back(std::move(v));
  }
  Mat b(f, static_cast<int>(vecs.size()), n);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < n; ++j) b.at(i, j) = vecs[i][j];
  return Subspace::span(b);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  Mat m(a.field(), a.dim() + b.dim(), a.ambient());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.ambient(); ++j) m.at(i, j) = a.basis()(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < a.ambient(); ++j) m.at(a.dim() + i, j) = b.basis()(i, j);
  return Subspace::span(m);
}

Subspace annihilator(const Subspace& v) {
  if (v.dim() == 0) return Subspace::full(v.field(), v.ambient());
  return kernel(v.basis());
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

Subspace subspace_image(const Mat& g, const Subspace& v) {
  if (v.dim() == 0) return Subspace(v.field(), g.rows());
  return Subspace::span(mat_mul(v.basis(), transpose(g)));
}

Subspace subspace_embed(const Subspace& v, int d) {
  const int m = v.ambient();
  Mat b(v.field(), v.dim() + d, m + d);
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < m; ++j) b.at(i, j) = v.basis()(i, j);
  for (int i = 0; i < d; ++i) b.at(v.dim() + i, m + i) = 1;
  return Subspace::span(b);
}

std::vector<PolyFq> smith_invariant_factors(const Mat& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "Smith form needs a square matrix");
  const Field& f = a.field();
  const int n = a.rows();
  std::vector<std::vector<PolyFq>> m(n, std::vector<PolyFq>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m[i][j] = PolyFq(f, {f.neg(a(i, j))});
      if (i == j) m[i][j] = m[i][j] + PolyFq::t(f);
    }
  auto row_op = [&](int dst, int src, const PolyFq& c) {  // row_dst -= c row_src
    for (int j = 0; j < n; ++j) m[dst][j] = m[dst][j] - c * m[src][j];
  };
  auto col_op = [&](int dst, int src, const PolyFq& c) {
    for (int i = 0; i < n; ++i) m[i][dst] = m[i][dst] - c * m[i][src];
  };
  for (int k = 0; k < n; ++k) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (!m[i][j].is_zero() && (pi < 0 || m[i][j].degree() < m[pi][pj].degree())) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      std::swap(m[k], m[pi]);
      for (int i = 0; i < n; ++i) std::swap(m[i][k], m[i][pj]);
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        if (m[i][k].is_zero()) continue;
        auto [q, r] = poly_divmod(m[i][k], m[k][k]);
        row_op(i, k, q);
        if (!r.is_zero()) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        if (m[k][j].is_zero()) continue;
        auto [q, r] = poly_divmod(m[k][j], m[k][k]);
        col_op(j, k, q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide the rest of the submatrix.
      int bad = -1;
      for (int i = k + 1; i < n && bad < 0; ++i)
        for (int j = k + 1; j < n; ++j)
          if (!poly_divmod(m[i][j], m[k][k]).second.is_zero()) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = 0; j < n; ++j) m[k][j] = m[k][j] + m[bad][j];
    }
  }
  std::vector<PolyFq> d;
  for (int k = 0; k < n; ++k) d.push_back(m[k][k].is_zero() ? m[k][k] : m[k][k].monic());
  return d;
}

std::vector<std::pair<PolyFq, int>> elementary_divisors(const Mat& a) {
  std::vector<std::pair<PolyFq, int>> out;
  for (const auto& d : smith_invariant_factors(a)) {
    if (d.degree() < 1) continue;
    for (auto& pr : factor(d)) out.push_back(std::move(pr));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second > y.second;
  });
  return out;
}

Multipartition type_of(const Mat& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "type of non-square matrix");
  const int n = a.rows();
  PolyFq cp = char_poly(a);
  if (cp.coeff(0) == 0) throw Error(ErrorCode::Singular, "type_of needs an invertible matrix");
  Multipartition mu;
  for (const auto& [r, e] : factor(cp)) {
    Mat ra = poly_eval(r, a);
    Mat pw = Mat::identity(a.field(), n);
    const int d = r.degree();
    std::vector<int> conj;
    int prev = 0, total = 0;
    while (total < d * e) {
      pw = mat_mul(pw, ra);
      int k = n - rank(pw);
      conj.push_back((k - prev) / d);
      total = k;
      prev = k;
    }
    mu.set(r.to_string(), Partition(conj).conjugate());
  }
  return mu;
}

unsigned bits_per_entry(const Field& f) {
  unsigned b = 0;
  while ((1u << b) < f.size()) ++b;
  return b == 0 ? 1 : b;
}

std::size_t packed_words(const Field& f, int rows, int cols) {
  std::size_t bits = static_cast<std::size_t>(bits_per_entry(f)) * rows * cols;
  return std::max<std::size_t>(1, (bits + 63) / 64);
}

void pack_into(const Mat& m, std::uint64_t* out) {
  const unsigned b = bits_per_entry(m.field());
  const std::size_t w = packed_words(m.field(), m.rows(), m.cols());
  std::fill(out, out + w, 0);
  std::size_t pos = 0;
  for (Scalar x : m.data()) {
    std::uint64_t v = x;
    std::size_t word = pos / 64, off = pos % 64;
    out[word] |= v << off;
    if (off + b > 64) out[word + 1] |= v >> (64 - off);
    pos += b;
  }
}

std::vector<std::uint64_t> pack(const Mat& m) {
  std::vector<std::uint64_t> w(packed_words(m.field(), m.rows(), m.cols()));
  pack_into(m, w.data());
  return w;
}

Mat unpack(const Field& f, int rows, int cols, const std::uint64_t* words) {
  const unsigned b = bits_per_entry(f);
  const std::uint64_t mask = (std::uint64_t(1) << b) - 1;
  Mat m(f, rows, cols);
  std::size_t pos = 0;
  for (auto& x : m.data()) {
    std::size_t word = pos / 64, off = pos % 64;
    std::uint64_t v = words[word] >> off;
    if (off + b > 64) v |= words[word + 1] << (64 - off);
    x = static_cast<Scalar>(v & mask);
    pos += b;
  }
  return m;
}

}  // namespace stc
