#include "stablecentres/fqpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "stablecentres/errors.hpp"

namespace stc {

PolyFq::PolyFq(const Field& f, std::vector<Scalar> coeffs) : F_(&f), c_(std::move(coeffs)) {
  normalize();
}

PolyFq PolyFq::linear(const Field& f, Scalar a) { return PolyFq(f, {f.neg(a), 1}); }

void PolyFq::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Scalar PolyFq::eval(Scalar x) const {
  Scalar r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
  return r;
}

PolyFq PolyFq::monic() const {
  if (c_.empty()) throw Error(ErrorCode::ZeroPolynomial, "monic of zero");
  return scale(F_->inv(c_.back()));
}

PolyFq PolyFq::operator+(const PolyFq& o) const {
  const Field& f = F_ ? *F_ : *o.F_;
  std::vector<Scalar> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(coeff(i), o.coeff(i));
  return PolyFq(f, std::move(v));
}

PolyFq PolyFq::operator-(const PolyFq& o) const {
  const Field& f = F_ ? *F_ : *o.F_;
  std::vector<Scalar> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(coeff(i), o.coeff(i));
  return PolyFq(f, std::move(v));
}

PolyFq PolyFq::operator*(const PolyFq& o) const { return poly_mul(*this, o); }

PolyFq PolyFq::scale(Scalar s) const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x = F_->mul(x, s);
  return PolyFq(*F_, std::move(v));
}

bool PolyFq::operator<(const PolyFq& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::string PolyFq::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    Scalar c = c_[i];
    if (c == 0) continue;
    if (!first) os << '+';
    if (c != 1 || i == 0) os << c;
    if (i > 0) os << 't';
    if (i > 1) os << '^' << i;
    first = false;
  }
  return os.str();
}

PolyFq poly_parse(const Field& f, const std::string& s) {
  std::vector<Scalar> v;
  std::size_t i = 0;
  auto fail = [&](const std::string& m) { throw ParseError(i, m); };
  auto read_int = [&]() {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected digit");
    std::uint64_t x = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      x = x * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (x > (1u << 20)) fail("number too large");
      ++i;
    }
    return x;
  };
  if (s.empty()) fail("empty polynomial");
  if (s == "0") return PolyFq::zero(f);
  while (true) {
    std::uint64_t c = 1;
    bool have_c = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = read_int();
      have_c = true;
    }
    std::uint64_t e = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        e = read_int();
      }
    } else if (!have_c) {
      fail("expected term");
    }
    if (c >= f.size()) fail("coefficient out of range");
    if (v.size() <= e) v.resize(e + 1, 0);
    v[e] = f.add(v[e], static_cast<Scalar>(c));
    if (i == s.size()) break;
    if (s[i] != '+') fail("expected '+'");
    ++i;
  }
  return PolyFq(f, std::move(v));
}

PolyFq poly_mul(const PolyFq& a, const PolyFq& b) {
  const Field& f = a.field_ptr() ? a.field() : b.field();
  if (a.is_zero() || b.is_zero()) return PolyFq::zero(f);
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Scalar> v(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) v[i + j] = f.add(v[i + j], f.mul(x[i], y[j]));
  }
  return PolyFq(f, std::move(v));
}

std::pair<PolyFq, PolyFq> poly_divmod(const PolyFq& a, const PolyFq& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const Field& f = b.field();
  std::vector<Scalar> r = a.coeffs();
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  if (r.size() < d.size()) return {PolyFq::zero(f), PolyFq(f, r)};
  std::vector<Scalar> q(r.size() - db, 0);
  const Scalar li = f.inv(d.back());
  for (std::size_t i = r.size(); i-- > db;) {
    Scalar c = f.mul(r[i], li);
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, d[j]));
  }
  r.resize(db);
  return {PolyFq(f, std::move(q)), PolyFq(f, std::move(r))};
}

PolyFq poly_gcd(const PolyFq& a, const PolyFq& b) {
  PolyFq x = a, y = b;
  while (!y.is_zero()) {
    PolyFq r = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.monic();
}

PolyFq poly_pow(const PolyFq& a, unsigned e) {
  PolyFq r = PolyFq::one(a.field()), b = a;
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

namespace {

PolyFq powmod(const PolyFq& base, std::uint64_t e, const PolyFq& m) {
  PolyFq r = PolyFq::one(m.field()), b = poly_divmod(base, m).second;
  while (e) {
    if (e & 1u) r = poly_divmod(r * b, m).second;
    b = poly_divmod(b * b, m).second;
    e >>= 1;
  }
  return r;
}

// t^{q^k} mod m
PolyFq frob_iter(const PolyFq& m, int k) {
  PolyFq x = poly_divmod(PolyFq::t(m.field()), m).second;
  for (int i = 0; i < k; ++i) x = powmod(x, m.field().size(), m);
  return x;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> r;
  for (int p = 2; p <= n; ++p) {
    if (n % p) continue;
    r.push_back(p);
    while (n % p == 0) n /= p;
  }
  return r;
}

}  // namespace

bool is_irreducible(const PolyFq& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  const int d = p.degree();
  PolyFq m = p.monic();
  PolyFq t = PolyFq::t(m.field());
  if (frob_iter(m, d) != poly_divmod(t, m).second) return false;
  for (int r : prime_divisors(d)) {
    PolyFq g = poly_gcd(frob_iter(m, d / r) - t, m);
    if (!g.is_one()) return false;
  }
  return true;
}

std::vector<PolyFq> irreducibles_of_degree(int d, const Field& f) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, int>, std::vector<PolyFq>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({&f, d});
    if (it != cache.end()) return it->second;
  }
  std::vector<PolyFq> out;
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= f.size();
  for (std::uint64_t x = 0; x < count; ++x) {
    std::vector<Scalar> c(d + 1);
    std::uint64_t y = x;
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<Scalar>(y % f.size());
      y /= f.size();
    }
    c[d] = 1;
    if (c[0] == 0) continue;  // divisible by t
    PolyFq p(f, std::move(c));
    if (is_irreducible(p)) out.push_back(std::move(p));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(&f, d), out);
  return out;
}

std::vector<PolyFq> irreducibles_up_to(int d, const Field& f, std::uint64_t limit) {
  if (d < 1) throw Error(ErrorCode::InvalidInput, "degree must be positive");
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) {
    count *= f.size();
    if (count > limit) throw Error(ErrorCode::LimitExceeded, "too many candidate polynomials");
  }
  std::vector<PolyFq> out;
  for (int e = 1; e <= d; ++e) {
    auto v = irreducibles_of_degree(e, f);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<std::pair<PolyFq, int>> factor(const PolyFq& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "factor of zero");
  const Field& F = f.field();
  std::vector<std::pair<PolyFq, int>> out;
  PolyFq g = f.monic();
  auto strip = [&](const PolyFq& p) {
    int m = 0;
    while (g.degree() >= p.degree()) {
      auto [q, r] = poly_divmod(g, p);
      if (!r.is_zero()) break;
      g = std::move(q);
      ++m;
    }
    if (m) out.emplace_back(p, m);
  };
  strip(PolyFq::t(F));
  for (int e = 1; 2 * e <= g.degree(); ++e) {
    for (const auto& p : irreducibles_of_degree(e, F)) {
      strip(p);
      if (2 * e > g.degree()) break;
    }
  }
  if (g.degree() >= 1) {
    bool merged = false;
    for (auto& pr : out)
      if (pr.first == g) {
        ++pr.second;
        merged = true;
      }
    if (!merged) out.emplace_back(g, 1);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

PolyFq star(const PolyFq& r, bool use_frobenius) {
  if (r.is_zero() || !r.is_monic() || r.coeff(0) == 0)
    throw Error(ErrorCode::InvalidInput, "star needs a monic polynomial with nonzero constant term");
  const Field& f = r.field();
  auto s = [&](Scalar x) { return use_frobenius ? f.frobenius_q(x) : x; };
  const int d = r.degree();
  std::vector<Scalar> v(d + 1);
  for (int i = 0; i <= d; ++i) v[d - i] = s(r.coeff(i));
  Scalar c = f.inv(s(r.coeff(0)));
  for (auto& x : v) x = f.mul(x, c);
  return PolyFq(f, std::move(v));
}

}  // namespace stc
