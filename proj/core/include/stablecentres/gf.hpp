#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stc {

// Elements are indices sum_i c_i p^i of the coefficient vector (c_0, ..., c_{k-1}).
using Scalar = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldLimit = 1u << 16;

class Field {
 public:
  Field(std::uint32_t p, std::uint32_t k, std::uint64_t limit = kDefaultFieldLimit);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t size() const { return size_; }
  // Monic modulus, constant term first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string modulus_string() const;
  Scalar primitive() const { return primitive_; }

  Scalar add(Scalar a, Scalar b) const {
    if (small_) return add_[a * size_ + b];
    if (p_ == 2) return a ^ b;
    return add_digits(a, b, false);
  }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar neg(Scalar a) const { return neg_[a]; }
  Scalar mul(Scalar a, Scalar b) const {
    if (small_) return mul_[a * size_ + b];
    if (a == 0 || b == 0) return 0;
    std::uint32_t l = log_[a] + log_[b];
    if (l >= size_ - 1) l -= size_ - 1;
    return exp_[l];
  }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t e) const;

  // Image of an integer in the prime subfield.
  Scalar from_int(long v) const;

  bool has_frobenius() const { return k_ % 2 == 0; }
  // Order of the fixed subfield of x -> x^q.
  std::uint32_t sub_order() const { return sub_q_; }
  // x -> x^q where the field has q^2 elements.
  Scalar frobenius_q(Scalar a) const;
  bool is_square(Scalar a) const;

  std::vector<std::uint32_t> digits(Scalar a) const;
  Scalar from_digits(const std::vector<std::uint32_t>& d) const;

 private:
  Scalar add_digits(Scalar a, Scalar b, bool) const;

  std::uint32_t p_, k_, size_, sub_q_ = 0;
  Scalar primitive_ = 1;
  bool small_ = false;
  std::vector<std::uint32_t> modulus_;
  std::vector<Scalar> add_, mul_, neg_, inv_, frob_;
  std::vector<std::uint32_t> log_, exp_;
};

// Cached, immutable fields keyed by (p, k).
const Field& field_make(std::uint32_t p, std::uint32_t k, std::uint64_t limit = kDefaultFieldLimit);
// Field with q elements, q a prime power.
const Field& field_of_order(std::uint64_t q, std::uint64_t limit = kDefaultFieldLimit);
bool is_prime(std::uint64_t n);
// Returns (p, k) with q = p^k, or (0, 0) if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

}  // namespace stc
