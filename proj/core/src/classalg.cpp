#include "stablecentres/classalg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "parallel.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/forms.hpp"
#include "stablecentres/fqpoly.hpp"

namespace stc {

using detail::parallel_for;

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : k) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

Mat companion(const PolyFq& f) {
  const Field& F = f.field();
  const int d = f.degree();
  Mat c(F, d, d);
  for (int i = 1; i < d; ++i) c.at(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) c.at(i, d - 1) = F.neg(f.coeff(i));
  return c;
}

class TableContext final : public CentreContext {
 public:
  explicit TableContext(std::shared_ptr<const ClassTable> t) : t_(std::move(t)) {
    const GroupTable& g = *t_->group;
    family_ = g.family;
    q_ = g.q;
    n_ = g.n;
    N_ = g.N;
    F_ = g.F;
    order_ = BigInt(g.size());
    for (std::size_t c = 0; c < t_->count(); ++c) {
      const ClassInfo& ci = t_->classes[c];
      classes_.push_back({ci.label, ci.type, ci.modified, t_->rep(c)});
    }
  }

  std::size_t class_of(const Mat& m) const override {
    auto c = t_->class_of_matrix(m);
    if (!c) throw Error(ErrorCode::NotInGroup, "element not in group");
    return *c;
  }
  BigInt class_size(std::size_t c) const override { return BigInt(t_->classes.at(c).size); }
  std::vector<Mat> members(std::size_t c) const override {
    std::vector<Mat> out;
    for (std::size_t i = t_->offsets.at(c); i < t_->offsets[c + 1]; ++i) out.push_back(t_->group->element(t_->members[i]));
    return out;
  }
  Mat random_element(std::mt19937_64& rng) const override {
    std::uniform_int_distribution<std::size_t> d(0, t_->group->size() - 1);
    return t_->group->element(d(rng));
  }

 private:
  std::shared_ptr<const ClassTable> t_;
};

class GLTypeContext final : public CentreContext {
 public:
  GLTypeContext(unsigned q, int n, std::uint64_t orbit_limit) : limit_(orbit_limit) {
    family_ = Family::GL;
    q_ = q;
    n_ = N_ = n;
    F_ = &field_of_order(q);
    order_ = group_order(Family::GL, q, n);
    const std::string tm1 = t_minus_1_key(F_->p());
    auto types = all_types(*F_, n);
    for (std::size_t c = 0; c < types.size(); ++c) {
      CentreClass cc;
      cc.type = types[c];
      cc.modified = to_modified(types[c], tm1);
      cc.label = {Family::GL, q, cc.modified, 0};
      cc.rep = type_representative(*F_, types[c], n);
      index_[types[c]] = c;
      classes_.push_back(std::move(cc));
    }
    sizes_.resize(classes_.size());
  }

  std::size_t class_of(const Mat& m) const override {
    if (m.rows() != n_ || m.cols() != n_ || (n_ > 0 && det(m) == 0)) throw Error(ErrorCode::NotInGroup, "element not in group");
    return index_.at(n_ == 0 ? Multipartition() : type_of(m));
  }

  BigInt class_size(std::size_t c) const override {
    std::lock_guard<std::mutex> lk(mu_);
    auto& s = sizes_.at(c);
    if (!s) {
      const Mat& g = classes_[c].rep;
      bool scalar = true;
      for (int i = 0; i < n_ && scalar; ++i)
        for (int j = 0; j < n_; ++j)
          if (g(i, j) != (i == j ? g(0, 0) : 0)) scalar = false;
      s = scalar ? BigInt(1) : order_ / commutant_units(g);
    }
    return *s;
  }

  std::vector<Mat> members(std::size_t c) const override {
    const Mat& r = classes_.at(c).rep;
    if (n_ == 0) return {r};
    std::vector<std::pair<Mat, Mat>> gens;
    for (Mat& s : gl_generators(*F_, n_)) {
      Mat si = mat_inv(s);
      gens.emplace_back(std::move(s), std::move(si));
    }
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> seen;
    std::vector<Mat> out{r};
    seen.insert(pack(r));
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (auto& [s, si] : gens) {
        Mat y = mat_mul(mat_mul(s, out[i]), si);
        if (seen.insert(pack(y)).second) {
          if (out.size() >= limit_) throw Error(ErrorCode::LimitExceeded, "conjugacy class too large");
          out.push_back(std::move(y));
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const Mat& a, const Mat& b) { return pack(a) < pack(b); });
    return out;
  }

  Mat random_element(std::mt19937_64& rng) const override {
    std::uniform_int_distribution<Scalar> d(0, F_->size() - 1);
    for (;;) {
      Mat m(*F_, n_, n_);
      for (auto& x : m.data()) x = d(rng);
      if (n_ == 0 || det(m) != 0) return m;
    }
  }

 private:
  std::uint64_t limit_;
  std::map<Multipartition, std::size_t> index_;
  mutable std::mutex mu_;
  mutable std::vector<std::optional<BigInt>> sizes_;
};

void types_rec(const std::vector<PolyFq>& irr, std::size_t i, int left, Multipartition& cur, std::vector<Multipartition>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  if (i == irr.size()) return;
  types_rec(irr, i + 1, left, cur, out);
  const int d = irr[i].degree();
  const std::string key = irr[i].to_string();
  for (int s = 1; s * d <= left; ++s)
    for (const Partition& p : partitions_of(s)) {
      cur.set(key, p);
      types_rec(irr, i + 1, left - s * d, cur, out);
      cur.set(key, Partition());
    }
}

}  // namespace

std::optional<std::size_t> CentreContext::find_label(const StableLabel& l) const {
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].label == l) return c;
  return std::nullopt;
}

std::shared_ptr<CentreContext> table_context(std::shared_ptr<const ClassTable> t) {
  return std::make_shared<TableContext>(std::move(t));
}

std::shared_ptr<CentreContext> gl_type_context(unsigned q, int n, std::uint64_t orbit_limit) {
  return std::make_shared<GLTypeContext>(q, n, orbit_limit);
}

std::vector<Multipartition> all_types(const Field& f, int n) {
  std::vector<Multipartition> out;
  Multipartition cur;
  types_rec(irreducibles_up_to(n, f), 0, n, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

Mat type_representative(const Field& f, const Multipartition& mu, int n) {
  if (mu.size() != n) throw Error(ErrorCode::InvalidInput, "type size differs from n");
  Mat m(f, n, n);
  int off = 0;
  for (const auto& [key, part] : mu.entries()) {
    const PolyFq r = poly_parse(f, key);
    for (int e : part.parts) {
      Mat c = companion(poly_pow(r, static_cast<unsigned>(e)));
      for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) m.at(off + i, off + j) = c(i, j);
      off += c.rows();
    }
  }
  return m;
}

void for_each_commutant_unit(const Mat& g, std::uint64_t limit, const std::function<void(const Mat&)>& fn) {
  const Field& F = g.field();
  const int n = g.rows();
  const int nn = n * n;
  // Linear map X -> Xg - gX on row-major vectors of X.
  Mat sys(F, nn, nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar& a = sys.at(i * n + j, i * n + k);
        a = F.add(a, g(k, j));
        Scalar& b = sys.at(i * n + j, k * n + j);
        b = F.sub(b, g(i, k));
      }
  Subspace ker = kernel(sys);
  const int D = ker.dim();
  BigInt total = ipow(BigInt(F.size()), D);
  if (total > BigInt(limit)) throw Error(ErrorCode::LimitExceeded, "commutant too large");
  const std::uint64_t cnt = static_cast<std::uint64_t>(total);
  std::vector<std::vector<Scalar>> basis;
  for (int i = 0; i < D; ++i) basis.push_back(ker.vector(i));
  std::vector<Scalar> digits(D, 0);
  Mat x(F, n, n);
  for (std::uint64_t idx = 0; idx < cnt; ++idx) {
    std::fill(x.data().begin(), x.data().end(), 0);
    for (int b = 0; b < D; ++b)
      if (digits[b])
        for (int e = 0; e < nn; ++e) x.data()[e] = F.add(x.data()[e], F.mul(digits[b], basis[b][e]));
    if (n == 0 || det(x) != 0) fn(x);
    for (int b = 0; b < D; ++b) {
      if (++digits[b] < F.size()) break;
      digits[b] = 0;
    }
  }
}

BigInt commutant_units(const Mat& g, std::uint64_t limit) {
  std::uint64_t units = 0;
  for_each_commutant_unit(g, limit, [&](const Mat&) { ++units; });
  return BigInt(units);
}

std::vector<Mat> centralizer_gl(const Mat& g, std::uint64_t limit) {
  std::vector<Mat> out;
  for_each_commutant_unit(g, limit, [&](const Mat& x) { out.push_back(x); });
  return out;
}

void CentreVector::add(std::size_t c, const BigInt& v) {
  if (v == 0) return;
  auto& x = coeffs[c];
  x += v;
  if (x == 0) coeffs.erase(c);
}

void validate_label(const CentreContext& ctx, const StableLabel& label) {
  if (label.family != ctx.family() || label.q != ctx.q()) throw Error(ErrorCode::UnknownLabel, "label belongs to another group");
  for (const auto& [key, part] : label.nu.entries()) {
    std::optional<PolyFq> p;
    try {
      p = poly_parse(ctx.field(), key);
    } catch (const Error&) {
    }
    if (!p || p->degree() < 1 || p->coeff(0) == 0 || !is_irreducible(*p) || p->to_string() != key)
      throw Error(ErrorCode::UnknownLabel, "'" + key + "' is not a canonical monic irreducible over F_" +
                                               std::to_string(ctx.field().size()));
  }
}

CentreVector class_sum(const CentreContext& ctx, const StableLabel& label) {
  validate_label(ctx, label);
  CentreVector v{&ctx, {}};
  if (auto c = ctx.find_label(label)) v.add(*c, 1);
  return v;
}

BigInt product_coefficient(const CentreContext& ctx, std::size_t alpha, std::size_t beta, const Mat& z) {
  BigInt cnt = 0;
  for (const Mat& x : ctx.members(alpha))
    if (ctx.class_of(mat_mul(mat_inv(x), z)) == beta) ++cnt;
  return cnt;
}

CentreVector centre_product(const CentreContext& ctx, std::size_t alpha, std::size_t beta, unsigned threads) {
  std::size_t small = alpha, other = beta;
  if (ctx.class_size(beta) < ctx.class_size(alpha)) std::swap(small, other);
  const std::vector<Mat> mem = ctx.members(small);
  std::vector<Mat> inv(mem.size());
  for (std::size_t i = 0; i < mem.size(); ++i) inv[i] = mat_inv(mem[i]);
  const unsigned nt = std::max(1u, threads);

  const Mat& y0 = ctx.classes()[other].rep;
  std::vector<std::set<std::size_t>> part(nt);
  parallel_for(nt, mem.size(), [&](unsigned t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) part[t].insert(ctx.class_of(mat_mul(mem[i], y0)));
  });
  std::set<std::size_t> support;
  for (auto& s : part) support.insert(s.begin(), s.end());

  CentreVector out{&ctx, {}};
  for (std::size_t gamma : support) {
    const Mat& z = ctx.classes()[gamma].rep;
    std::vector<std::uint64_t> tally(nt, 0);
    parallel_for(nt, mem.size(), [&](unsigned t, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        if (ctx.class_of(mat_mul(inv[i], z)) == other) ++tally[t];
    });
    BigInt c = 0;
    for (auto v : tally) c += v;
    out.add(gamma, c);
  }
  return out;
}

CentreVector centre_product(const CentreVector& a, const CentreVector& b, unsigned threads) {
  const CentreContext* ctx = a.ctx ? a.ctx : b.ctx;
  CentreVector out{ctx, {}};
  for (const auto& [ca, va] : a.coeffs)
    for (const auto& [cb, vb] : b.coeffs) {
      CentreVector p = centre_product(*ctx, ca, cb, threads);
      for (const auto& [c, v] : p.coeffs) out.add(c, va * vb * v);
    }
  return out;
}

BigInt structure_constant(const CentreContext& ctx, const StableLabel& mu, const StableLabel& nu,
                          const StableLabel& lambda, unsigned threads) {
  CentreVector a = class_sum(ctx, mu), b = class_sum(ctx, nu);
  CentreVector l = class_sum(ctx, lambda);
  if (a.is_zero() || b.is_zero() || l.is_zero()) return 0;
  return centre_product(a, b, threads).at(l.coeffs.begin()->first);
}

ElementVector expand(const CentreVector& v) {
  ElementVector out;
  for (const auto& [c, x] : v.coeffs)
    for (const Mat& m : v.ctx->members(c)) out[pack(m)] += x;
  return out;
}

bool verify_central(const CentreContext& ctx, const ElementVector& v, int sample_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Field& F = ctx.field();
  const int N = ctx.dim();
  auto multiply = [&](const Mat& g, bool left) {
    ElementVector out;
    for (const auto& [k, c] : v) {
      Mat x = unpack(F, N, N, k.data());
      Mat y = left ? mat_mul(g, x) : mat_mul(x, g);
      BigInt& t = out[pack(y)];
      t += c;
      if (t == 0) out.erase(pack(y));
    }
    return out;
  };
  for (int s = 0; s < sample_size; ++s) {
    Mat g = ctx.random_element(rng);
    if (multiply(g, true) != multiply(g, false)) return false;
  }
  return true;
}

std::string product_json(const CentreContext& ctx, const StableLabel& mu, const StableLabel& nu, const CentreVector& v) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (const auto& [c, x] : v.coeffs) terms.emplace_back(label_print(ctx.classes()[c].label), x.str());
  std::sort(terms.begin(), terms.end());
  nlohmann::ordered_json j;
  j["mu"] = label_print(mu);
  j["nu"] = label_print(nu);
  j["n"] = ctx.n();
  j["terms"] = nlohmann::ordered_json::array();
  for (auto& [l, c] : terms) j["terms"].push_back({{"lambda", l}, {"coeff", c}});
  return j.dump();
}

}  // namespace stc
