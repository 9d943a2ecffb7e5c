#include "stablecentres/rational.hpp"

#include <sstream>

namespace stc {

BigInt ipow(const BigInt& base, unsigned e) {
  BigInt r = 1, b = base;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

BigRational rpow(const BigRational& base, long e) {
  BigRational r = 1, b = base;
  bool neg = e < 0;
  unsigned long u = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (u) {
    if (u & 1u) r *= b;
    b *= b;
    u >>= 1;
  }
  return neg ? BigRational(1) / r : r;
}

bool is_integral(const BigRational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

std::string to_string(const BigRational& x) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(x);
  if (!is_integral(x)) os << '/' << boost::multiprecision::denominator(x);
  return os.str();
}

RationalPoly::RationalPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { normalize(); }

RationalPoly RationalPoly::constant(const BigRational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const BigRational& c, std::size_t deg) {
  std::vector<BigRational> v(deg + 1);
  v[deg] = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational RationalPoly::eval(const BigRational& x) const {
  BigRational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

BigInt RationalPoly::denominator() const {
  BigInt l = 1;
  for (const auto& c : c_) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
  return l;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
  std::vector<BigRational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
  std::vector<BigRational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigRational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator*(const BigRational& s) const {
  std::vector<BigRational> v = c_;
  for (auto& c : v) c *= s;
  return RationalPoly(std::move(v));
}

std::string RationalPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const BigRational& c = c_[i];
    if (c == 0) continue;
    BigRational a = c < 0 ? BigRational(-c) : c;
    if (c < 0) os << (first ? "-" : " - ");
    else if (!first) os << " + ";
    if (i == 0 || a != 1) os << stc::to_string(a);
    if (i > 0) {
      if (a != 1) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace stc
