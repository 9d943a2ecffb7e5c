#include "stablecentres/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "stablecentres/errors.hpp"

namespace stc {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Remainder of a modulo monic m over GF(p), in place.
void poly_mod(Coeffs& a, const Coeffs& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    std::uint32_t c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) {
      std::size_t idx = i - dm + j;
      a[idx] = (a[idx] + (p - c) * m[j]) % p;
    }
  }
  if (a.size() > dm) a.resize(dm);
}

bool has_factor_of_degree(const Coeffs& f, std::uint32_t p, std::uint32_t d) {
  // Try every monic polynomial of degree d.
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < d; ++i) count *= p;
  for (std::uint64_t x = 0; x < count; ++x) {
    Coeffs g(d + 1);
    std::uint64_t y = x;
    for (std::uint32_t i = 0; i < d; ++i) {
      g[i] = static_cast<std::uint32_t>(y % p);
      y /= p;
    }
    g[d] = 1;
    Coeffs r = f;
    poly_mod(r, g, p);
    bool zero = true;
    for (auto c : r) zero = zero && c == 0;
    if (zero) return true;
  }
  return false;
}

bool irreducible_over_prime(const Coeffs& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= n; ++d)
    if (has_factor_of_degree(f, p, d)) return false;
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), k};
}

Field::Field(std::uint32_t p, std::uint32_t k, std::uint64_t limit) : p_(p), k_(k) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
  std::uint64_t sz = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    sz *= p;
    if (sz > limit) throw Error(ErrorCode::LimitExceeded, "field order exceeds limit");
  }
  size_ = static_cast<std::uint32_t>(sz);
  if (k % 2 == 0) {
    sub_q_ = 1;
    for (std::uint32_t i = 0; i < k / 2; ++i) sub_q_ *= p;
  }

  // Least monic irreducible, constant term most significant.
  for (std::uint64_t x = 0;; ++x) {
    Coeffs f(k + 1);
    std::uint64_t y = x;
    for (std::uint32_t i = k; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(y % p);
      y /= p;
    }
    f[k] = 1;
    if (irreducible_over_prime(f, p)) {
      modulus_ = f;
      break;
    }
  }

  auto naive_mul = [&](Scalar a, Scalar b) {
    Coeffs da = digits(a), db = digits(b), r(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p_;
    poly_mod(r, modulus_, p_);
    r.resize(k_);
    return from_digits(r);
  };

  neg_.resize(size_);
  for (Scalar a = 0; a < size_; ++a) {
    Coeffs d = digits(a);
    for (auto& c : d) c = (p_ - c) % p_;
    neg_[a] = from_digits(d);
  }

  // Primitive element and log tables.
  exp_.assign(size_ - 1, 0);
  log_.assign(size_, 0);
  for (Scalar g = 1; g < size_; ++g) {
    Scalar x = 1;
    std::uint32_t order = 0;
    do {
      x = naive_mul(x, g);
      ++order;
    } while (x != 1);
    if (order == size_ - 1) {
      primitive_ = g;
      break;
    }
  }
  {
    Scalar x = 1;
    for (std::uint32_t i = 0; i + 1 < size_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = naive_mul(x, primitive_);
    }
  }

  inv_.assign(size_, 0);
  for (Scalar a = 1; a < size_; ++a) inv_[a] = exp_[(size_ - 1 - log_[a]) % (size_ - 1)];

  if (size_ <= 256) {
    small_ = true;
    add_.resize(static_cast<std::size_t>(size_) * size_);
    mul_.resize(static_cast<std::size_t>(size_) * size_);
    for (Scalar a = 0; a < size_; ++a)
      for (Scalar b = 0; b < size_; ++b) {
        add_[a * size_ + b] = p_ == 2 ? (a ^ b) : add_digits(a, b, false);
        if (a == 0 || b == 0) {
          mul_[a * size_ + b] = 0;
        } else {
          std::uint32_t l = log_[a] + log_[b];
          if (l >= size_ - 1) l -= size_ - 1;
          mul_[a * size_ + b] = exp_[l];
        }
      }
  }

  if (sub_q_) {
    frob_.resize(size_);
    for (Scalar a = 0; a < size_; ++a) frob_[a] = pow(a, sub_q_);
  }
}

std::vector<std::uint32_t> Field::digits(Scalar a) const {
  std::vector<std::uint32_t> d(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Scalar Field::from_digits(const std::vector<std::uint32_t>& d) const {
  Scalar r = 0;
  for (std::size_t i = d.size(); i-- > 0;) r = r * p_ + d[i] % p_;
  return r;
}

Scalar Field::add_digits(Scalar a, Scalar b, bool) const {
  Scalar r = 0, place = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

Scalar Field::inv(Scalar a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return inv_[a];
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1);
  return exp_[l];
}

Scalar Field::from_int(long v) const {
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

Scalar Field::frobenius_q(Scalar a) const {
  if (!sub_q_) throw Error(ErrorCode::WrongField, "field has odd extension degree");
  return frob_[a];
}

bool Field::is_square(Scalar a) const {
  if (a == 0) return true;
  if (p_ == 2) return true;
  return log_[a] % 2 == 0;
}

std::string Field::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    std::uint32_t c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << '+';
    if (c != 1 || i == 0) os << c;
    if (i > 0) os << 't';
    if (i > 1) os << '^' << i;
    first = false;
  }
  return os.str();
}

const Field& field_make(std::uint32_t p, std::uint32_t k, std::uint64_t limit) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto f = std::make_unique<Field>(p, k, limit);
  const Field& ref = *f;
  cache.emplace(key, std::move(f));
  return ref;
}

const Field& field_of_order(std::uint64_t q, std::uint64_t limit) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  if (q > limit) throw Error(ErrorCode::LimitExceeded, "field order exceeds limit");
  return field_make(p, k, limit);
}

}  // namespace stc
