#include "stablecentres/bounding.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>

#include "json.hpp"
#include "stablecentres/centrformulas.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/groups.hpp"
#include "stablecentres/qcombinat.hpp"

namespace stc {

namespace {

Mat head_basis(const Field& f, int ambient, int n) {
  Mat b(f, n, ambient);
  for (int i = 0; i < n; ++i) b.at(i, i) = 1;
  return b;
}

Subspace head(const Field& f, int ambient, int n) { return Subspace::span(head_basis(f, ambient, n)); }

// Drops coordinates >= n from a subspace contained in span(e_1..e_n).
Subspace truncate_coords(const Subspace& s, int n) {
  Mat b(s.field(), s.dim(), n);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < n; ++j) b.at(i, j) = s.basis()(i, j);
  return Subspace::span(b);
}

bool fixes_pointwise(const Mat& g, const Subspace& s) {
  const Field& f = g.field();
  for (int i = 0; i < s.dim(); ++i) {
    auto v = s.vector(i);
    for (int r = 0; r < g.rows(); ++r) {
      Scalar acc = 0;
      for (int c = 0; c < g.cols(); ++c) acc = f.add(acc, f.mul(g(r, c), v[c]));
      if (acc != v[r]) return false;
    }
  }
  return true;
}

bool mat_less(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  return a.data() < b.data();
}

Mat rows_to_mat(const Field& f, int ambient, const std::vector<std::vector<Scalar>>& rows) {
  Mat m(f, static_cast<int>(rows.size()), ambient);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < ambient; ++j) m.at(i, j) = rows[i][j];
  return m;
}

// Appends vectors from `cands` to `basis` while they stay independent, up to `want` additions.
void extend_greedy(const Field& f, int ambient, std::vector<std::vector<Scalar>>& basis,
                   const std::vector<std::vector<Scalar>>& cands, int want) {
  int added = 0;
  for (const auto& v : cands) {
    if (added == want) break;
    const int before = static_cast<int>(basis.size()) ? rank(rows_to_mat(f, ambient, basis)) : 0;
    basis.push_back(v);
    if (rank(rows_to_mat(f, ambient, basis)) == before + 1)
      ++added;
    else
      basis.pop_back();
  }
  if (added != want) throw Error(ErrorCode::InvalidInput, "basis extension failed");
}

std::vector<std::vector<Scalar>> vectors_of(const Subspace& s) {
  std::vector<std::vector<Scalar>> out;
  for (int i = 0; i < s.dim(); ++i) out.push_back(s.vector(i));
  return out;
}

std::vector<std::vector<Scalar>> unit_vectors(int ambient, int lo, int hi) {
  std::vector<std::vector<Scalar>> out;
  for (int i = lo; i < hi; ++i) {
    std::vector<Scalar> v(ambient, 0);
    v[i] = 1;
    out.push_back(std::move(v));
  }
  return out;
}

// Matrix whose columns are the given vectors.
Mat columns(const Field& f, int n, const std::vector<std::vector<Scalar>>& cols) {
  Mat m(f, n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
  return m;
}

int pairing_rank(const Subspace& w, const Subspace& v) {
  if (w.dim() == 0 || v.dim() == 0) return 0;
  return rank(mat_mul(w.basis(), transpose(v.basis())));
}

void enumerate_rref(const Field& f, int n, int k, int start, std::vector<int>& piv, std::vector<Subspace>& out) {
  if (static_cast<int>(piv.size()) == k) {
    // free positions: (row i, column j) with j > piv[i] and j not a pivot
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.emplace_back(i, j);
    std::vector<Scalar> digit(free.size(), 0);
    for (;;) {
      Mat b(f, k, n);
      for (int i = 0; i < k; ++i) b.at(i, piv[i]) = 1;
      for (std::size_t t = 0; t < free.size(); ++t) b.at(free[t].first, free[t].second) = digit[t];
      out.push_back(Subspace::span(b));
      std::size_t t = 0;
      for (; t < digit.size(); ++t) {
        if (++digit[t] < f.size()) break;
        digit[t] = 0;
      }
      if (t == digit.size()) break;
    }
    return;
  }
  for (int p = start; p < n; ++p) {
    piv.push_back(p);
    enumerate_rref(f, n, k, p + 1, piv, out);
    piv.pop_back();
  }
}

std::string tm1_key(const Field& f) { return t_minus_1_key(f.p()); }

Multipartition strip_ones(const Multipartition& mu, int d, const std::string& tm1) {
  if (d == 0) return mu;
  if (!mu.contains(tm1) || mu.at(tm1).mult(1) < d) throw Error(ErrorCode::InvalidInput, "not enough 1-blocks at t-1");
  std::vector<int> parts = mu.at(tm1).parts;
  parts.resize(parts.size() - d);
  Multipartition out = mu;
  out.set(tm1, Partition(parts));
  return out;
}

std::shared_ptr<const GroupTable> cached_group(Family family, unsigned q, int n, const BuildOptions& opt) {
  static std::mutex mu;
  static std::map<std::tuple<Family, unsigned, int>, std::shared_ptr<const GroupTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{family, q, n}];
  if (!slot) slot = std::make_shared<const GroupTable>(build_group(family, q, n, opt));
  return slot;
}

BigRational qpow(unsigned q, long e) { return rpow(BigRational(q), e); }

std::vector<WittClass> germs_of_parity(int dim) {
  if (dim == 0) return {WittClass::Zero};
  if (dim % 2) return {WittClass::One, WittClass::Delta};
  if (dim == 1) return {};
  return {WittClass::Zero, WittClass::Omega};
}

int germ_sign(WittClass w) { return w == WittClass::Omega ? -1 : 1; }

}  // namespace

std::vector<Subspace> all_subspaces(const Field& f, int n) {
  std::vector<Subspace> out;
  for (int k = 0; k <= n; ++k) {
    std::vector<int> piv;
    enumerate_rref(f, n, k, 0, piv, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> subspaces_within(const Subspace& k) {
  std::vector<Subspace> out;
  for (const Subspace& s : all_subspaces(k.field(), k.dim())) {
    if (s.dim() == 0)
      out.emplace_back(k.field(), k.ambient());
    else
      out.push_back(Subspace::span(mat_mul(s.basis(), k.basis())));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- triples

bool BoundingTriple::operator<(const BoundingTriple& o) const {
  if (m != o.m) return m < o.m;
  if (g != o.g) return mat_less(g, o.g);
  if (W != o.W) return W < o.W;
  return V < o.V;
}

bool triple_valid(const BoundingTriple& t) {
  if (t.g.rows() != t.m || t.g.cols() != t.m || t.W.ambient() != t.m || t.V.ambient() != t.m) return false;
  if (t.m > 0 && det(t.g) == 0) return false;
  return fixes_pointwise(t.g, t.V) && fixes_pointwise(transpose(t.g), t.W);
}

bool in_BT(const BoundingTriple& t, int n) {
  if (n >= t.m) return true;
  const Subspace tl = Subspace::tail(t.g.field(), t.m, n);
  if (!t.W.contains(tl) || !t.V.contains(tl)) return false;
  for (int i = 0; i < t.m; ++i)
    for (int j = 0; j < t.m; ++j)
      if ((i >= n || j >= n) && t.g(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

BoundingTriple tight_triple(const Mat& g) {
  if (!g.square()) throw Error(ErrorCode::InvalidInput, "square matrix expected");
  const int m = g.rows();
  if (m > 0 && det(g) == 0) throw Error(ErrorCode::Singular, "tight triple of a singular matrix");
  const Mat id = Mat::identity(g.field(), m);
  if (m == 0) return {0, Subspace(g.field(), 0), Subspace(g.field(), 0), g};
  return {m, kernel(mat_sub(transpose(g), id)), kernel(mat_sub(g, id)), g};
}

BoundingTriple triple_extend(const BoundingTriple& t, int m) {
  if (m < t.m) throw Error(ErrorCode::InvalidInput, "cannot extend to a smaller truncation");
  const int d = m - t.m;
  if (d == 0) return t;
  return {m, subspace_embed(t.W, d), subspace_embed(t.V, d), block_embed(t.g, d)};
}

BoundingTriple triple_restrict(const BoundingTriple& t, int n) {
  if (n >= t.m) return triple_extend(t, n);
  if (!in_BT(t, n)) throw Error(ErrorCode::NotInBTn, "triple is not in BT_n");
  const Field& f = t.g.field();
  const Subspace h = head(f, t.m, n);
  return {n, truncate_coords(subspace_intersect(t.W, h), n), truncate_coords(subspace_intersect(t.V, h), n),
          block_restrict(t.g, n)};
}

BoundingTriple triple_product(const BoundingTriple& a, const BoundingTriple& b) {
  const int m = std::max(a.m, b.m);
  BoundingTriple x = triple_extend(a, m), y = triple_extend(b, m);
  return {m, subspace_intersect(x.W, y.W), subspace_intersect(x.V, y.V), mat_mul(x.g, y.g)};
}

BoundingTriple triple_conjugate(const Mat& x, const BoundingTriple& t) {
  const int m = std::max(x.rows(), t.m);
  const Mat xe = x.rows() < m ? block_embed(x, m - x.rows()) : x;
  const BoundingTriple te = triple_extend(t, m);
  const Mat xi = mat_inv(xe);
  return {m, subspace_image(transpose(xi), te.W), subspace_image(xe, te.V), mat_mul(mat_mul(xe, te.g), xi)};
}

StandardShape standard_shape(const BoundingTriple& t0, int n) {
  const BoundingTriple T = triple_restrict(t0, n);
  const Field& f = T.g.field();
  StandardShape s;
  const Subspace annV = annihilator(T.V), annW = annihilator(T.W);
  s.a = subspace_intersect(T.W, annV).dim();
  s.b = subspace_intersect(T.V, annW).dim();
  s.c = pairing_rank(T.W, T.V);
  const int r = n - s.b - s.c;

  // First change of basis: complement of V, then V cap W^perp, then the rest of V.
  std::vector<std::vector<Scalar>> u2 = vectors_of(subspace_intersect(T.V, annW));
  std::vector<std::vector<Scalar>> vb = u2;
  extend_greedy(f, n, vb, vectors_of(T.V), s.c);
  std::vector<std::vector<Scalar>> all = vb;
  extend_greedy(f, n, all, unit_vectors(n, 0, n), r);
  std::vector<std::vector<Scalar>> cols1(all.begin() + s.b + s.c, all.end());
  cols1.insert(cols1.end(), vb.begin(), vb.end());
  const Mat x2 = n ? mat_inv(columns(f, n, cols1)) : Mat(f, 0, 0);
  const BoundingTriple T2 = triple_conjugate(x2, T);

  // Second change of basis fixes V'' and moves W''.
  const Subspace fr = head(f, n, r);
  std::vector<std::vector<Scalar>> a1 = vectors_of(subspace_intersect(T2.W, fr));
  std::vector<std::vector<Scalar>> frb = a1;
  extend_greedy(f, n, frb, unit_vectors(n, 0, r), r - s.a);
  std::vector<std::vector<Scalar>> wb = a1;
  extend_greedy(f, n, wb, vectors_of(T2.W), s.c);
  std::vector<std::vector<Scalar>> wrest(wb.begin() + s.a, wb.end());
  std::vector<std::vector<Scalar>> acc = frb;
  acc.insert(acc.end(), wrest.begin(), wrest.end());
  extend_greedy(f, n, acc, unit_vectors(n, r, n), s.b);
  std::vector<std::vector<Scalar>> cols2 = frb;
  cols2.insert(cols2.end(), acc.begin() + r + s.c, acc.end());
  cols2.insert(cols2.end(), wrest.begin(), wrest.end());
  const Mat x1 = n ? transpose(columns(f, n, cols2)) : Mat(f, 0, 0);

  s.x = n ? mat_mul(x1, x2) : Mat(f, 0, 0);
  s.t = n ? triple_conjugate(s.x, T) : T;
  return s;
}

bool has_standard_shape(const BoundingTriple& t, int a, int b, int c) {
  const int n = t.m;
  const int s = n - a - b - c;
  if (s < 0) return false;
  const Field& f = t.g.field();
  Mat wb(f, a + c, n);
  for (int i = 0; i < a; ++i) wb.at(i, i) = 1;
  for (int i = 0; i < c; ++i) wb.at(a + i, n - c + i) = 1;
  if (t.W != Subspace::span(wb)) return false;
  if (t.V != Subspace::tail(f, n, n - b - c)) return false;
  auto block = [&](int i) { return i < a ? 0 : i < a + s ? 1 : i < a + s + b ? 2 : 3; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int bi = block(i), bj = block(j);
      const Scalar e = t.g(i, j), id = i == j ? 1 : 0;
      if (bi == 0 && e != id) return false;
      if (bi == 1 && bj >= 2 && e != 0) return false;
      if (bi == 2 && bj >= 2 && e != id) return false;
      if (bi == 3 && e != id) return false;
    }
  return true;
}

TripleInvariants triple_invariants(const BoundingTriple& t, int n) {
  if (!triple_valid(t)) throw Error(ErrorCode::InvalidInput, "invalid bounding triple");
  if (!in_BT(t, n)) throw Error(ErrorCode::NotInBTn, "triple is not in BT_n");
  StandardShape s = standard_shape(t, n);
  TripleInvariants inv;
  inv.a = s.a;
  inv.b = s.b;
  inv.c = s.c;
  inv.n = n;
  const Field& f = t.g.field();
  const std::string tm1 = tm1_key(f);
  const int base = n - s.c;
  inv.type = base > 0 ? type_of(block_restrict(s.t.g, base)) : Multipartition();
  inv.modified_type = to_modified(inv.type, tm1);
  if (inv.type.contains(tm1)) {
    inv.k = inv.type.at(tm1).length();
    inv.h = inv.type.at(tm1).mult(1);
  }
  return inv;
}

std::vector<BoundingTriple> triple_orbit(const BoundingTriple& t, int N) {
  const BoundingTriple start = triple_extend(t, N);
  const Field& f = t.g.field();
  std::vector<std::pair<Mat, Mat>> gens;
  for (Mat& x : gl_generators(f, N)) {
    Mat xi = mat_inv(x);
    gens.emplace_back(std::move(x), std::move(xi));
  }
  std::set<BoundingTriple> seen{start};
  std::vector<BoundingTriple> queue{start};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& [x, xi] : gens) {
      const BoundingTriple& u = queue[i];
      BoundingTriple y{N, subspace_image(transpose(xi), u.W), subspace_image(x, u.V), mat_mul(mat_mul(x, u.g), xi)};
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  return {seen.begin(), seen.end()};
}

namespace {

std::vector<BoundingTriple> enumerate_BT(unsigned q, int n) {
  const Field& f = field_of_order(q);
  std::vector<BoundingTriple> out;
  if (n == 0) {
    out.push_back({0, Subspace(f, 0), Subspace(f, 0), Mat(f, 0, 0)});
    return out;
  }
  const GroupTable g = build_group(Family::GL, q, n);
  const Mat id = Mat::identity(f, n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Mat x = g.element(i);
    const auto vs = subspaces_within(kernel(mat_sub(x, id)));
    const auto ws = subspaces_within(kernel(mat_sub(transpose(x), id)));
    for (const auto& w : ws)
      for (const auto& v : vs) out.push_back({n, w, v, x});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<BoundingTriple>> triple_orbits(unsigned q, int n) {
  const auto all = enumerate_BT(q, n);
  std::set<BoundingTriple> done;
  std::vector<std::vector<BoundingTriple>> out;
  for (const auto& t : all) {
    if (done.count(t)) continue;
    auto orb = triple_orbit(t, n);
    done.insert(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

BigInt orbit_count_P_centralizer(const BoundingTriple& t, int m) {
  const BoundingTriple T = triple_extend(t, m);
  if (m == 0) return 1;
  std::set<std::pair<Subspace, Subspace>> orbit;
  for (const Mat& x : centralizer_gl(T.g)) {
    const Mat xi = mat_inv(x);
    orbit.emplace(subspace_image(transpose(xi), T.W), subspace_image(x, T.V));
  }
  return BigInt(orbit.size());
}

BigInt orbit_count_P(const BoundingTriple& t, int m) {
  const int n0 = t.m;
  const StandardShape s = standard_shape(t, n0);
  const int base_n = n0 - s.c;
  const BoundingTriple base = triple_restrict(s.t, base_n);
  if (m >= base_n) return orbit_count_P_centralizer(base, m);
  // Below the minimal level: count members of the orbit inside BT_m directly.
  const auto orbit = triple_orbit(base, base_n);
  const std::set<BoundingTriple> orb(orbit.begin(), orbit.end());
  BigInt total = 0;
  std::optional<Mat> g0;
  for (const auto& u : enumerate_BT(t.g.field().size(), m))
    if (orb.count(triple_extend(u, base_n))) {
      ++total;
      if (!g0) g0 = u.g;
    }
  if (total == 0) return 0;
  const BigInt cls = group_order(Family::GL, t.g.field().size(), m) / commutant_units(*g0);
  if (total % cls != 0) throw Error(ErrorCode::InternalNonIntegral, "orbit count is not a multiple of the class size");
  return total / cls;
}

BigRational predicted_remainder_gl(const TripleInvariants& inv, int m, unsigned q) {
  const long s = static_cast<long>(m) - inv.n + inv.c;
  if (s + inv.h < 0) return 0;
  const BigInt qb = q_binomial(s + inv.h, inv.h, QValue(q));
  if (qb == 0) return 0;
  return BigRational(qb) * qpow(q, s * inv.excess());
}

BigRational predicted_P_gl(const TripleInvariants& inv, int m, const BigRational& K, unsigned q) {
  return K * predicted_remainder_gl(inv, m, q);
}

TripleFunction indicator(const std::vector<BoundingTriple>& orbit) {
  TripleFunction f;
  for (const auto& t : orbit) f[t] = 1;
  return f;
}

TripleFunction convolve(const TripleFunction& f1, const TripleFunction& f2) {
  TripleFunction out;
  for (const auto& [a, x] : f1)
    for (const auto& [b, y] : f2) {
      BigInt& v = out[triple_product(a, b)];
      v += x * y;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

ElementVector psi_elements(const TripleFunction& f) {
  ElementVector out;
  for (const auto& [t, c] : f) out[pack(t.g)] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// ---------------------------------------------------------------- pairs

bool BoundingPair::operator<(const BoundingPair& o) const {
  if (family != o.family) return family < o.family;
  if (q != o.q) return q < o.q;
  if (n != o.n) return n < o.n;
  if (g != o.g) return mat_less(g, o.g);
  return V < o.V;
}

bool pair_valid(const BoundingPair& p) {
  const FormSpec form = standard_gram(p.family, p.n, p.q);
  if (p.g.rows() != form.N || p.V.ambient() != form.N) return false;
  return is_isometry(p.g, form) && fixes_pointwise(p.g, p.V);
}

BoundingPair tight_pair(Family family, unsigned q, int n, const Mat& g) {
  const int N = g.rows();
  if (N == 0) return {family, q, n, Subspace(g.field(), 0), g};
  return {family, q, n, kernel(mat_sub(g, Mat::identity(g.field(), N))), g};
}

BoundingPair pair_extend(const BoundingPair& p, int m) {
  if (m < p.n) throw Error(ErrorCode::InvalidInput, "cannot extend to a smaller rank");
  const int d = ambient_dim(p.family, m) - ambient_dim(p.family, p.n);
  if (d == 0) return p;
  return {p.family, p.q, m, subspace_embed(p.V, d), block_embed(p.g, d)};
}

BoundingPair pair_product(const BoundingPair& a, const BoundingPair& b) {
  if (a.family != b.family || a.q != b.q) throw Error(ErrorCode::IncompatibleFamily, "pairs of different groups");
  const int m = std::max(a.n, b.n);
  BoundingPair x = pair_extend(a, m), y = pair_extend(b, m);
  return {a.family, a.q, m, subspace_intersect(x.V, y.V), mat_mul(x.g, y.g)};
}

BoundingPair pair_conjugate(const Mat& x, const BoundingPair& p) {
  const Mat xi = mat_inv(x);
  return {p.family, p.q, p.n, subspace_image(x, p.V), mat_mul(mat_mul(x, p.g), xi)};
}

PairInvariants pair_invariants(const BoundingPair& p) {
  const FormSpec form = standard_gram(p.family, p.n, p.q);
  const int N = form.N;
  PairInvariants inv;
  inv.a = subspace_intersect(p.V, orthogonal(form, p.V)).dim();
  inv.r = N - p.V.dim() + inv.a;
  const std::string tm1 = tm1_key(*form.F);
  const Multipartition full = N > 0 ? type_of(p.g) : Multipartition();
  inv.type = strip_ones(full, N - inv.r, tm1);
  if (inv.type.contains(tm1)) {
    inv.k = inv.type.at(tm1).length();
    inv.h = inv.type.at(tm1).mult(1);
  }
  return inv;
}

std::vector<std::vector<BoundingPair>> pair_orbits(Family family, unsigned q, int n, const BuildOptions& opt) {
  const GroupTable& g = *cached_group(family, q, n, opt);
  const Field& f = *g.F;
  std::vector<BoundingPair> all;
  std::vector<Mat> elems;
  for (std::size_t i = 0; i < g.size(); ++i) elems.push_back(g.element(i));
  for (const Mat& x : elems) {
    const Subspace k = g.N ? kernel(mat_sub(x, Mat::identity(f, g.N))) : Subspace(f, 0);
    for (const auto& v : subspaces_within(k)) all.push_back({family, q, n, v, x});
  }
  std::sort(all.begin(), all.end());
  std::vector<Mat> inv;
  for (const Mat& x : elems) inv.push_back(g.N ? mat_inv(x) : x);
  std::set<BoundingPair> done;
  std::vector<std::vector<BoundingPair>> out;
  for (const auto& p : all) {
    if (done.count(p)) continue;
    std::set<BoundingPair> orb;
    for (std::size_t i = 0; i < elems.size(); ++i)
      orb.insert({family, q, n, subspace_image(elems[i], p.V), mat_mul(mat_mul(elems[i], p.g), inv[i])});
    done.insert(orb.begin(), orb.end());
    out.emplace_back(orb.begin(), orb.end());
  }
  return out;
}

std::vector<BoundingPair> pair_orbit_representatives(Family family, unsigned q, int n, const BuildOptions& opt) {
  const ClassTable ct = load_or_build(family, q, n, opt);
  const GroupTable& g = *ct.group;
  const Field& f = *g.F;
  std::vector<BoundingPair> out;
  for (std::size_t c = 0; c < ct.count(); ++c) {
    const Mat x = ct.rep(c);
    std::vector<Mat> cent;
    for (std::size_t i : centralizer_elements(g, x)) cent.push_back(g.element(i));
    const Subspace k = g.N ? kernel(mat_sub(x, Mat::identity(f, g.N))) : Subspace(f, 0);
    std::set<Subspace> done;
    for (const auto& v : subspaces_within(k)) {
      if (done.count(v)) continue;
      for (const Mat& y : cent) done.insert(subspace_image(y, v));
      out.push_back({family, q, n, v, x});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt orbit_count_P_pair(const BoundingPair& p, int m, const BuildOptions& opt) {
  const BoundingPair P = pair_extend(p, m);
  const GroupTable& g = *cached_group(p.family, p.q, m, opt);
  std::set<Subspace> orbit;
  for (std::size_t i : centralizer_elements(g, P.g)) orbit.insert(subspace_image(g.element(i), P.V));
  return BigInt(orbit.size());
}

BigRational predicted_remainder_unitary(const PairInvariants& inv, int m, unsigned q) {
  const int d = m - inv.r;
  if (d < 0) return 0;
  const BigRational num = qpow(q, 2L * d * (inv.k - inv.h)) * BigRational(group_order(Family::U, q, inv.h + d));
  const BigRational den = BigRational(group_order(Family::U, q, inv.h)) * qpow(q, 2L * inv.a * d) *
                          BigRational(group_order(Family::U, q, d));
  return num / den;
}

BigRational unitary_closed_form(const PairInvariants& inv, int m, unsigned q) {
  const long d = m - inv.r;
  if (d < 0) return 0;
  const long q2 = static_cast<long>(q);
  BigRational v = qpow(q, d * (2L * inv.k - inv.h - 2L * inv.a)) * BigRational(q_binomial(d + inv.h, inv.h, QValue(-q2)));
  return (d * inv.h) % 2 ? -v : v;
}

BigRational predicted_remainder_sp(const PairInvariants& inv, int m, unsigned q) {
  const int d = 2 * m - inv.r;
  if (d < 0) return 0;
  if (d % 2 || inv.h % 2) throw Error(ErrorCode::BadParity, "odd symplectic dimension");
  const BigRational num = qpow(q, static_cast<long>(d) * (inv.k - inv.h)) * BigRational(group_order(Family::Sp, q, (inv.h + d) / 2));
  const BigRational den = BigRational(group_order(Family::Sp, q, inv.h / 2)) * qpow(q, static_cast<long>(inv.a) * d) *
                          BigRational(group_order(Family::Sp, q, d / 2));
  return num / den;
}

BigRational sp_closed_form(const PairInvariants& inv, int m, unsigned q) {
  const long d = 2L * m - inv.r;
  if (d < 0) return 0;
  if (d % 2 || inv.h % 2) throw Error(ErrorCode::BadParity, "odd symplectic dimension");
  const long q2 = static_cast<long>(q) * q;
  return qpow(q, d * (2L * inv.k - inv.h - 2L * inv.a) / 2) *
         BigRational(q_binomial(d / 2 + inv.h / 2, inv.h / 2, QValue(q2)));
}

WittClass pair_germ(const BoundingPair& p, int m) {
  const BoundingPair P = pair_extend(p, m);
  return witt_decompose(standard_gram(p.family, m, p.q), P.V).germ;
}

std::map<WittClass, BigRational> predicted_remainder_orth(const PairInvariants& inv, int M, WittClass eps2, unsigned q) {
  std::map<WittClass, BigRational> out;
  const int d = M - inv.r;
  if (d < 0) return out;
  for (WittClass e1 : germs_of_parity(inv.h)) {
    const WittClass e3 = witt_add(e1, eps2, q);
    out[e1] = qpow(q, static_cast<long>(d) * (inv.k - inv.h - inv.a)) * BigRational(orthogonal_order(inv.h + d, e3, q)) /
              (BigRational(orthogonal_order(inv.h, e1, q)) * BigRational(orthogonal_order(d, eps2, q)));
  }
  return out;
}

std::map<WittClass, BigRational> predicted_remainder_orth_cases(const PairInvariants& inv, int M, WittClass eps2, unsigned q) {
  std::map<WittClass, BigRational> out;
  const long d = M - inv.r, h = inv.h, k = inv.k, a = inv.a;
  if (d < 0) return out;
  const long q2 = static_cast<long>(q) * q;
  const long top = 2 * k - h - 2 * a;
  const BigRational half(1, 2);
  for (WittClass e1 : germs_of_parity(static_cast<int>(h))) {
    const WittClass e3 = witt_add(e1, eps2, q);
    BigRational v;
    if (h % 2 && d % 2) {
      v = half * qpow(q, (d * top - 1) / 2) * BigRational(q_binomial((d - 1) / 2 + (h - 1) / 2, (h - 1) / 2, QValue(q2))) *
          (qpow(q, (d + h) / 2) - germ_sign(e3));
    } else if (h % 2) {
      v = half * qpow(q, d / 2 * top) * BigRational(q_binomial(d / 2 + (h - 1) / 2, (h - 1) / 2, QValue(q2))) *
          (qpow(q, d / 2) + germ_sign(eps2));
    } else if (d % 2) {
      v = half * qpow(q, d * top / 2) * BigRational(q_binomial((d - 1) / 2 + h / 2, h / 2, QValue(q2))) *
          (qpow(q, h / 2) + germ_sign(e1));
    } else if (h == 0) {
      // The case-4 expression degenerates to 0/0; its limit is q^{d(k-a)}.
      v = qpow(q, d * (k - a));
    } else {
      v = half * qpow(q, d / 2 * top) * BigRational(q_binomial(d / 2 + h / 2 - 1, h / 2 - 1, QValue(q2))) *
          (qpow(q, d / 2) + germ_sign(eps2)) * (qpow(q, (d + h) / 2) - germ_sign(e3)) / (qpow(q, h / 2) - germ_sign(e1));
    }
    out[e1] = v;
  }
  return out;
}

PairFunction indicator(const std::vector<BoundingPair>& orbit) {
  PairFunction f;
  for (const auto& p : orbit) f[p] = 1;
  return f;
}

PairFunction convolve(const PairFunction& f1, const PairFunction& f2) {
  PairFunction out;
  for (const auto& [a, x] : f1)
    for (const auto& [b, y] : f2) out[pair_product(a, b)] += x * y;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

ElementVector psi_elements(const PairFunction& f) {
  ElementVector out;
  for (const auto& [p, c] : f) out[pack(p.g)] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::optional<CentreVector> to_centre_vector(const CentreContext& ctx, const ElementVector& v) {
  std::map<std::size_t, std::pair<BigInt, BigInt>> acc;  // class -> (coefficient, members seen)
  const Field& f = ctx.field();
  const int N = ctx.dim();
  for (const auto& [key, c] : v) {
    const std::size_t cls = ctx.class_of(unpack(f, N, N, key.data()));
    auto it = acc.find(cls);
    if (it == acc.end())
      acc.emplace(cls, std::make_pair(c, BigInt(1)));
    else if (it->second.first != c)
      return std::nullopt;
    else
      ++it->second.second;
  }
  CentreVector out{&ctx, {}};
  for (const auto& [cls, cm] : acc) {
    if (cm.second != ctx.class_size(cls)) return std::nullopt;
    out.add(cls, cm.first);
  }
  return out;
}

// ---------------------------------------------------------------- reports

bool OrbitReport::ok() const {
  if (!K_integral || rows.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const OrbitCheckRow& r) { return r.match; });
}

namespace {

void calibrate_rows(OrbitReport& rep, const std::vector<std::pair<int, BigInt>>& brute,
                    const std::vector<BigRational>& remainder) {
  rep.rows.clear();
  rep.K = 0;
  rep.K_integral = false;
  std::size_t i0 = brute.size();
  for (std::size_t i = 0; i < brute.size(); ++i)
    if (remainder[i] != 0) {
      i0 = i;
      break;
    }
  if (i0 < brute.size()) {
    rep.K = BigRational(brute[i0].second) / remainder[i0];
    rep.calibration_m = brute[i0].first;
    rep.K_integral = is_integral(rep.K) && rep.K > 0;
  }
  for (std::size_t i = 0; i < brute.size(); ++i) {
    OrbitCheckRow row;
    row.m = brute[i].first;
    row.brute = brute[i].second;
    row.predicted = rep.K * remainder[i];
    row.match = row.predicted == BigRational(row.brute);
    rep.rows.push_back(row);
  }
}

}  // namespace

OrbitReport check_triple_orbit(const BoundingTriple& t, int n, int m_lo, int m_hi, unsigned q) {
  const BoundingTriple T = triple_restrict(t, n);
  const TripleInvariants inv = triple_invariants(T, n);
  OrbitReport rep;
  rep.description = "triple g=" + (n ? type_of(T.g).to_string() : std::string("()")) + " dimW=" + std::to_string(T.W.dim()) + " dimV=" + std::to_string(T.V.dim()) +
                    " n=" + std::to_string(n);
  rep.invariants = {{"a", inv.a}, {"b", inv.b}, {"c", inv.c}, {"n", inv.n}, {"h", inv.h}, {"k", inv.k}, {"excess", inv.excess()}};
  std::vector<std::pair<int, BigInt>> brute;
  std::vector<BigRational> rem;
  for (int m = m_lo; m <= m_hi; ++m) {
    brute.emplace_back(m, orbit_count_P(T, m));
    rem.push_back(predicted_remainder_gl(inv, m, q));
  }
  calibrate_rows(rep, brute, rem);
  if (inv.excess() < 0) {
    rep.note = "negative exponent";
    rep.K_integral = false;
  }
  return rep;
}

OrbitReport check_pair_orbit(const BoundingPair& p, int m_hi, const BuildOptions& opt) {
  const PairInvariants inv = pair_invariants(p);
  OrbitReport rep;
  rep.description = family_name(p.family) + " q=" + std::to_string(p.q) + " n=" + std::to_string(p.n) +
                    " g=" + (p.g.rows() ? type_of(p.g).to_string() : std::string("()")) + " dimV=" + std::to_string(p.V.dim());
  rep.invariants = {{"a", inv.a}, {"r", inv.r}, {"h", inv.h}, {"k", inv.k}};
  std::vector<std::pair<int, BigInt>> brute;
  for (int m = p.n; m <= m_hi; ++m) brute.emplace_back(m, orbit_count_P_pair(p, m, opt));
  if (p.family == Family::U || p.family == Family::Sp) {
    std::vector<BigRational> rem;
    for (auto& [m, b] : brute)
      rem.push_back(p.family == Family::U ? predicted_remainder_unitary(inv, m, p.q) : predicted_remainder_sp(inv, m, p.q));
    calibrate_rows(rep, brute, rem);
  } else {
    std::map<WittClass, std::vector<BigRational>> rem;
    for (auto& [m, b] : brute) {
      const auto r = predicted_remainder_orth(inv, ambient_dim(p.family, m), pair_germ(p, m), p.q);
      for (const auto& [e1, v] : r) rem[e1].push_back(v);
    }
    std::vector<std::string> survivors;
    std::optional<OrbitReport> chosen;
    for (const auto& [e1, values] : rem) {
      if (values.size() != brute.size()) continue;
      OrbitReport cand = rep;
      calibrate_rows(cand, brute, values);
      if (cand.ok()) {
        survivors.push_back(witt_name(e1));
        if (!chosen) chosen = cand;
      }
    }
    if (!chosen) {
      chosen = rep;
      if (!rem.empty()) calibrate_rows(*chosen, brute, rem.begin()->second);
    }
    rep = *chosen;
    rep.note = "eps1 matches: ";
    for (std::size_t i = 0; i < survivors.size(); ++i) rep.note += (i ? "," : "") + survivors[i];
    if (survivors.empty()) rep.note += "none";
    if (survivors.size() > 1) rep.note += " (ambiguous)";
  }
  if (!inv.numerator_nonnegative()) {
    rep.note += " negative exponent";
    rep.K_integral = false;
  }
  return rep;
}

std::string reports_json(const std::vector<OrbitReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["orbit"] = r.description;
    j["invariants"] = r.invariants;
    j["K"] = to_string(r.K);
    j["calibration_m"] = r.calibration_m;
    j["K_integral"] = r.K_integral;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"m", row.m}, {"brute", row.brute.str()}, {"predicted", to_string(row.predicted)}, {"match", row.match}});
    j["rows"] = rows;
    if (!r.note.empty()) j["note"] = r.note;
    j["ok"] = r.ok();
    arr.push_back(j);
  }
  return arr.dump();
}

}  // namespace stc
