#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stablecentres/gf.hpp"

namespace stc {

// Polynomial over a finite field, constant term first, no trailing zeros.
class PolyFq {
 public:
  PolyFq() = default;
  PolyFq(const Field& f, std::vector<Scalar> coeffs);
  static PolyFq zero(const Field& f) { return PolyFq(f, {}); }
  static PolyFq one(const Field& f) { return PolyFq(f, {1}); }
  // t - a
  static PolyFq linear(const Field& f, Scalar a);
  static PolyFq t(const Field& f) { return PolyFq(f, {0, 1}); }

  const Field& field() const { return *F_; }
  const Field* field_ptr() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Scalar lead() const { return c_.empty() ? 0 : c_.back(); }
  Scalar eval(Scalar x) const;

  PolyFq monic() const;
  PolyFq operator+(const PolyFq& o) const;
  PolyFq operator-(const PolyFq& o) const;
  PolyFq operator*(const PolyFq& o) const;
  PolyFq scale(Scalar s) const;
  bool operator==(const PolyFq& o) const { return c_ == o.c_; }
  bool operator!=(const PolyFq& o) const { return c_ != o.c_; }
  // Degree first, then coefficients from the top down.
  bool operator<(const PolyFq& o) const;

  // Canonical form, e.g. "t^2+t+1"; coefficients are field indices.
  std::string to_string() const;

 private:
  void normalize();
  const Field* F_ = nullptr;
  std::vector<Scalar> c_;
};

PolyFq poly_parse(const Field& f, const std::string& s);

PolyFq poly_mul(const PolyFq& a, const PolyFq& b);
std::pair<PolyFq, PolyFq> poly_divmod(const PolyFq& a, const PolyFq& b);
PolyFq poly_gcd(const PolyFq& a, const PolyFq& b);
PolyFq poly_pow(const PolyFq& a, unsigned e);

// Monic irreducibles of degree 1..d other than t, ordered by degree then coefficients.
std::vector<PolyFq> irreducibles_up_to(int d, const Field& f,
                                       std::uint64_t limit = std::uint64_t(1) << 22);
std::vector<PolyFq> irreducibles_of_degree(int d, const Field& f);
bool is_irreducible(const PolyFq& p);

// Monic irreducible factors with multiplicity, sorted; the leading unit is dropped.
std::vector<std::pair<PolyFq, int>> factor(const PolyFq& f);

// r*(t) = t^deg(r) / s(r(0)) * sum s(a_i) t^{-i}, with s the Frobenius when use_frobenius.
PolyFq star(const PolyFq& r, bool use_frobenius);

}  // namespace stc
