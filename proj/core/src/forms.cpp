#include "stablecentres/forms.hpp"

#include <thread>

#include "stablecentres/errors.hpp"

namespace stc {

Scalar FormSpec::eval(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const {
  Scalar r = 0;
  for (int i = 0; i < N; ++i) {
    if (!v[i]) continue;
    Scalar row = 0;
    for (int j = 0; j < N; ++j)
      if (gram(i, j) && w[j]) row = F->add(row, F->mul(gram(i, j), sigma(w[j])));
    r = F->add(r, F->mul(v[i], row));
  }
  return r;
}

int ambient_dim(Family f, int n) {
  switch (f) {
    case Family::GL:
    case Family::U: return n;
    case Family::Sp:
    case Family::OPlus:
    case Family::OMinus: return 2 * n;
    case Family::OOdd: return 2 * n + 1;
  }
  return n;
}

int level_step(Family f) { return (f == Family::GL || f == Family::U) ? 1 : 2; }

const Field& entry_field(Family f, unsigned q) {
  if (f == Family::U) {
    auto [p, k] = prime_power(q);
    if (!p) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    return field_make(p, 2 * k);
  }
  return field_of_order(q);
}

Scalar least_nonsquare(const Field& f) {
  for (Scalar x = 1; x < f.size(); ++x)
    if (!f.is_square(x)) return x;
  throw Error(ErrorCode::IncompatibleFamily, "every element is a square");
}

FormSpec standard_gram(Family family, int n, unsigned q) {
  if (n < 0) throw Error(ErrorCode::InvalidInput, "negative rank");
  if (family == Family::GL) throw Error(ErrorCode::IncompatibleFamily, "gl has no form");
  const Field& f = entry_field(family, q);
  const bool odd_char = f.p() != 2;
  if (is_orthogonal(family) && !odd_char)
    throw Error(ErrorCode::IncompatibleFamily, "orthogonal groups need odd characteristic");
  if (family == Family::OMinus && n < 1) throw Error(ErrorCode::IncompatibleFamily, "o- needs n >= 1");
  FormSpec s;
  s.family = family;
  s.F = &f;
  s.q = q;
  s.n = n;
  s.N = ambient_dim(family, n);
  s.gram = Mat(f, s.N, s.N);
  Mat& g = s.gram;
  const Scalar one = 1, m1 = f.neg(1);
  switch (family) {
    case Family::U:
      s.kind = FormKind::Hermitian;
      for (int i = 0; i < n; ++i) g.at(i, i) = one;
      break;
    case Family::Sp:
      s.kind = FormKind::Alternating;
      for (int i = 0; i < n; ++i) {
        g.at(2 * i, 2 * i + 1) = one;
        g.at(2 * i + 1, 2 * i) = m1;
      }
      break;
    case Family::OPlus:
      s.kind = FormKind::Symmetric;
      for (int i = 0; i < n; ++i) {
        g.at(2 * i, 2 * i + 1) = one;
        g.at(2 * i + 1, 2 * i) = one;
      }
      break;
    case Family::OMinus:
      s.kind = FormKind::Symmetric;
      g.at(0, 0) = one;
      g.at(1, 1) = f.neg(least_nonsquare(f));
      for (int i = 1; i < n; ++i) {
        g.at(2 * i, 2 * i + 1) = one;
        g.at(2 * i + 1, 2 * i) = one;
      }
      break;
    case Family::OOdd:
      s.kind = FormKind::Symmetric;
      g.at(0, 0) = one;
      for (int i = 0; i < n; ++i) {
        g.at(2 * i + 1, 2 * i + 2) = one;
        g.at(2 * i + 2, 2 * i + 1) = one;
      }
      break;
    case Family::GL: break;
  }
  return s;
}

FormSpec form_from_gram(FormKind kind, const Mat& gram, unsigned q) {
  FormSpec s;
  s.kind = kind;
  s.F = gram.field_ptr();
  s.q = q;
  s.N = gram.rows();
  s.n = s.N;
  s.gram = gram;
  s.family = kind == FormKind::Hermitian ? Family::U : kind == FormKind::Alternating ? Family::Sp : Family::OOdd;
  return s;
}

bool is_isometry(const Mat& g, const FormSpec& form) {
  if (g.rows() != form.N || g.cols() != form.N) return false;
  Mat sg = form.hermitian() ? frobenius(g) : g;
  return mat_mul(mat_mul(transpose(g), form.gram), sg) == form.gram;
}

BigInt group_order(Family family, unsigned q, int n) {
  const BigInt Q = q;
  BigInt r = 1;
  switch (family) {
    case Family::GL:
      for (int i = 0; i < n; ++i) r *= ipow(Q, n) - ipow(Q, i);
      return r;
    case Family::U:
      r = ipow(Q, static_cast<unsigned>(n * (n - 1) / 2));
      for (int i = 1; i <= n; ++i) r *= ipow(Q, i) - (i % 2 ? -1 : 1);
      return r;
    case Family::Sp:
      r = ipow(Q, static_cast<unsigned>(n * n));
      for (int i = 1; i <= n; ++i) r *= ipow(Q, 2 * i) - 1;
      return r;
    case Family::OOdd:
      r = 2 * ipow(Q, static_cast<unsigned>(n * n));
      for (int i = 1; i <= n; ++i) r *= ipow(Q, 2 * i) - 1;
      return r;
    case Family::OPlus:
    case Family::OMinus: {
      if (n == 0) return 1;
      BigInt eps = family == Family::OPlus ? 1 : -1;
      r = 2 * ipow(Q, static_cast<unsigned>(n * n - n)) * (ipow(Q, n) - eps);
      for (int i = 1; i < n; ++i) r *= ipow(Q, 2 * i) - 1;
      return r;
    }
  }
  return r;
}

namespace {

struct Enumerator {
  const FormSpec& form;
  const Field& f;
  int N;
  std::size_t words;
  std::vector<std::uint64_t> out;
  Mat g;

  Enumerator(const FormSpec& s)
      : form(s), f(*s.F), N(s.N), words(packed_words(*s.F, s.N, s.N)), g(*s.F, s.N, s.N) {}

  std::vector<Scalar> column(int j) const {
    std::vector<Scalar> c(N);
    for (int i = 0; i < N; ++i) c[i] = g(i, j);
    return c;
  }

  // Solutions w of a_i . w = M_ij for i < j, returned as candidate columns sigma(w).
  template <class Fn>
  void for_each_candidate(int j, Fn&& fn) {
    Mat aug(f, j, N + 1);
    for (int i = 0; i < j; ++i) {
      for (int c = 0; c < N; ++c) {
        Scalar s = 0;
        for (int r = 0; r < N; ++r)
          if (g(r, i) && form.gram(r, c)) s = f.add(s, f.mul(g(r, i), form.gram(r, c)));
        aug.at(i, c) = s;
      }
      aug.at(i, N) = form.gram(i, j);
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == N) return;
    std::vector<bool> is_piv(N, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int c = 0; c < N; ++c)
      if (!is_piv[c]) free.push_back(c);
    std::vector<Scalar> fv(free.size(), 0), w(N), v(N);
    while (true) {
      std::fill(w.begin(), w.end(), 0);
      for (std::size_t k = 0; k < free.size(); ++k) w[free[k]] = fv[k];
      for (std::size_t r = 0; r < piv.size(); ++r) {
        Scalar s = aug(static_cast<int>(r), N);
        for (std::size_t k = 0; k < free.size(); ++k)
          if (fv[k]) s = f.sub(s, f.mul(aug(static_cast<int>(r), free[k]), fv[k]));
        w[piv[r]] = s;
      }
      for (int i = 0; i < N; ++i) v[i] = form.sigma(w[i]);
      if (form.eval(v, v) == form.gram(j, j)) fn(v);
      std::size_t k = 0;
      for (; k < fv.size(); ++k) {
        if (++fv[k] < f.size()) break;
        fv[k] = 0;
      }
      if (k == fv.size()) break;
    }
  }

  void dfs(int j) {
    if (j == N) {
      std::size_t at = out.size();
      out.resize(at + words);
      pack_into(g, out.data() + at);
      return;
    }
    for_each_candidate(j, [&](const std::vector<Scalar>& v) {
      for (int i = 0; i < N; ++i) g.at(i, j) = v[i];
      dfs(j + 1);
    });
    for (int i = 0; i < N; ++i) g.at(i, j) = 0;
  }
};

}  // namespace

GroupTable enumerate_isometry_group(const FormSpec& form, const EnumerateOptions& opt) {
  BigInt predicted = group_order(form.family, form.q, form.n);
  if (predicted > opt.limit) throw Error(ErrorCode::LimitExceeded, "group order exceeds limit");
  GroupTable t;
  t.family = form.family;
  t.q = form.q;
  t.n = form.n;
  t.N = form.N;
  t.F = form.F;
  t.words = packed_words(*form.F, form.N, form.N);
  if (form.N == 0) {
    t.elems.assign(t.words, 0);
    return t;
  }
  // Split on the first column.
  std::vector<std::vector<Scalar>> firsts;
  {
    Enumerator e(form);
    e.for_each_candidate(0, [&](const std::vector<Scalar>& v) { firsts.push_back(v); });
  }
  const unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(firsts.size())));
  std::vector<std::vector<std::uint64_t>> parts(nt);
  auto work = [&](unsigned tid) {
    Enumerator e(form);
    for (std::size_t k = tid; k < firsts.size(); k += nt) {
      for (int i = 0; i < form.N; ++i) e.g.at(i, 0) = firsts[k][i];
      e.dfs(1);
    }
    parts[tid] = std::move(e.out);
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (unsigned i = 0; i < nt; ++i) th.emplace_back(work, i);
    for (auto& x : th) x.join();
  }
  for (auto& p : parts) t.elems.insert(t.elems.end(), p.begin(), p.end());
  t.sort_unique();
  return t;
}

Mat restricted_gram(const FormSpec& form, const Subspace& s) {
  const int d = s.dim();
  Mat g(*form.F, d, d);
  std::vector<std::vector<Scalar>> v(d);
  for (int i = 0; i < d; ++i) v[i] = s.vector(i);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g.at(i, j) = form.eval(v[i], v[j]);
  return g;
}

Subspace orthogonal(const FormSpec& form, const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(*form.F, form.N);
  Mat sv = form.hermitian() ? frobenius(s.basis()) : s.basis();
  return kernel(mat_mul(sv, transpose(form.gram)));
}

namespace {

std::vector<Scalar> complete_with(const std::vector<Scalar>& u1, const std::vector<Scalar>& v0,
                                  const FormSpec& form) {
  const Field& f = *form.F;
  // Rescale so that B(u1, v) = 1.
  Scalar b = form.eval(u1, v0);
  Scalar c = form.sigma(f.inv(b));
  std::vector<Scalar> v(v0.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.mul(c, v0[i]);
  Scalar bvv = form.eval(v, v);
  Scalar x = 0;
  switch (form.kind) {
    case FormKind::Alternating: return v;
    case FormKind::Hermitian: {
      bool found = false;
      for (Scalar y = 0; y < f.size() && !found; ++y)
        if (f.add(y, f.frobenius_q(y)) == bvv) {
          x = y;
          found = true;
        }
      if (!found) throw Error(ErrorCode::InvalidInput, "no trace preimage");
      break;
    }
    case FormKind::Symmetric: x = f.div(bvv, f.from_int(2)); break;
  }
  std::vector<Scalar> u2(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u2[i] = f.sub(v[i], f.mul(x, u1[i]));
  return u2;
}

}  // namespace

std::vector<Scalar> hyperbolic_complete(const std::vector<Scalar>& u1, const FormSpec& form) {
  bool zero = true;
  for (auto x : u1) zero = zero && x == 0;
  if (zero) throw Error(ErrorCode::ZeroVector, "u1 is zero");
  if (form.eval(u1, u1) != 0) throw Error(ErrorCode::NotIsotropic, "B(u1,u1) != 0");
  for (int k = 0; k < form.N; ++k) {
    std::vector<Scalar> e(form.N, 0);
    e[k] = 1;
    if (form.eval(u1, e) != 0) return complete_with(u1, e, form);
  }
  throw Error(ErrorCode::InvalidInput, "form is degenerate at u1");
}

WittDecomposition witt_decompose(const FormSpec& form, const Subspace& s) {
  const Field& f = *form.F;
  WittDecomposition r;
  Subspace rad = subspace_intersect(s, orthogonal(form, s));
  r.radical_dim = rad.dim();
  // Complement of the radical inside s.
  Subspace acc = rad;
  std::vector<std::vector<Scalar>> comp;
  for (int i = 0; i < s.dim(); ++i) {
    auto v = s.vector(i);
    if (acc.contains(v)) continue;
    comp.push_back(v);
    Mat one(f, 1, form.N, v);
    acc = subspace_sum(acc, Subspace::span(one));
  }
  auto to_subspace = [&](const std::vector<std::vector<Scalar>>& vs) {
    Mat m(f, static_cast<int>(vs.size()), form.N);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < form.N; ++j) m.at(i, j) = vs[i][j];
    return Subspace::span(m);
  };
  Subspace m = to_subspace(comp);
  while (m.dim() > 0) {
    const int d = m.dim();
    std::vector<Scalar> coef(d, 0), u(form.N);
    bool found = false;
    while (true) {
      std::size_t k = 0;
      for (; k < coef.size(); ++k) {
        if (++coef[k] < f.size()) break;
        coef[k] = 0;
      }
      if (k == coef.size()) break;
      std::fill(u.begin(), u.end(), 0);
      for (int i = 0; i < d; ++i)
        if (coef[i])
          for (int j = 0; j < form.N; ++j) u[j] = f.add(u[j], f.mul(coef[i], m.basis()(i, j)));
      if (form.eval(u, u) == 0) {
        found = true;
        break;
      }
    }
    if (!found) break;
    std::vector<Scalar> v;
    for (int i = 0; i < d; ++i) {
      auto b = m.vector(i);
      if (form.eval(u, b) != 0) {
        v = b;
        break;
      }
    }
    auto u2 = complete_with(u, v, form);
    Subspace plane = to_subspace({u, u2});
    m = subspace_intersect(m, orthogonal(form, plane));
    ++r.polar_rank;
  }
  r.germ_dim = m.dim();
  if (form.kind == FormKind::Symmetric) {
    if (r.germ_dim == 1) {
      auto v = m.vector(0);
      r.germ = f.is_square(form.eval(v, v)) ? WittClass::One : WittClass::Delta;
    } else if (r.germ_dim == 2) {
      r.germ = WittClass::Omega;
    }
  }
  return r;
}

WittDecomposition witt_invariants_by_discriminant(const FormSpec& form, const Subspace& s) {
  const Field& f = *form.F;
  WittDecomposition r;
  Mat g = restricted_gram(form, s);
  const int rk = rank(g);
  r.radical_dim = s.dim() - rk;
  switch (form.kind) {
    case FormKind::Alternating: r.polar_rank = rk / 2; return r;
    case FormKind::Hermitian:
      r.germ_dim = rk % 2;
      r.polar_rank = rk / 2;
      return r;
    case FormKind::Symmetric: break;
  }
  // Nondegenerate part: rows and columns of a maximal invertible principal block.
  std::vector<int> rows;
  {
    Mat gt = transpose(g);
    rows = rref(gt);
  }
  Mat sub(f, rk, rk);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) sub.at(i, j) = g(rows[i], rows[j]);
  Scalar d = det(sub);
  if (((rk / 2) % 2) == 1) d = f.neg(d);
  const bool sq = f.is_square(d);
  if (rk % 2 == 0) {
    r.germ_dim = sq ? 0 : 2;
    r.germ = sq ? WittClass::Zero : WittClass::Omega;
  } else {
    r.germ_dim = 1;
    r.germ = sq ? WittClass::One : WittClass::Delta;
  }
  r.polar_rank = (rk - r.germ_dim) / 2;
  return r;
}

}  // namespace stc
