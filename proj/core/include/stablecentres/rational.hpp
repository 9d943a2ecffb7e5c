#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace stc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt ipow(const BigInt& base, unsigned e);
BigRational rpow(const BigRational& base, long e);
bool is_integral(const BigRational& x);
std::string to_string(const BigRational& x);

// Dense univariate polynomial with exact rational coefficients, lowest degree first.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<BigRational> coeffs);
  static RationalPoly constant(const BigRational& c);
  static RationalPoly monomial(const BigRational& c, std::size_t deg);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigRational>& coeffs() const { return c_; }
  BigRational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRational(0); }

  BigRational eval(const BigRational& x) const;
  BigRational leading() const { return c_.empty() ? BigRational(0) : c_.back(); }
  // Least common denominator of all coefficients.
  BigInt denominator() const;

  RationalPoly operator+(const RationalPoly& o) const;
  RationalPoly operator-(const RationalPoly& o) const;
  RationalPoly operator*(const RationalPoly& o) const;
  RationalPoly operator*(const BigRational& s) const;
  bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  std::vector<BigRational> c_;
};

}  // namespace stc
