#include "stablecentres/types.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "stablecentres/errors.hpp"

namespace stc {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  std::erase_if(parts, [](int x) { return x <= 0; });
  std::sort(parts.begin(), parts.end(), std::greater<>());
}

int Partition::size() const {
  int s = 0;
  for (int x : parts) s += x;
  return s;
}

int Partition::mult(int i) const {
  return static_cast<int>(std::count(parts.begin(), parts.end(), i));
}

std::map<int, int> Partition::multiplicities() const {
  std::map<int, int> m;
  for (int x : parts) ++m[x];
  return m;
}

long Partition::n_stat() const {
  long s = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) s += static_cast<long>(i) * parts[i];
  return s;
}

Partition Partition::conjugate() const {
  std::vector<int> c;
  if (parts.empty()) return Partition();
  for (int j = 1; j <= parts[0]; ++j) {
    int cnt = 0;
    for (int x : parts) cnt += x >= j;
    c.push_back(cnt);
  }
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ')';
  return os.str();
}

PartitionStats partition_stats(const Partition& p) {
  return {p.size(), p.length(), p.multiplicities(), p.n_stat()};
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxp) {
    if (rem == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int x = std::min(rem, maxp); x >= 1; --x) {
      cur.push_back(x);
      rec(rem - x, x);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, n);
  return out;
}

int poly_string_degree(const std::string& s) {
  auto pos = s.find('t');
  if (pos == std::string::npos) return 0;
  if (pos + 1 < s.size() && s[pos + 1] == '^') {
    int d = 0;
    for (std::size_t i = pos + 2; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i)
      d = d * 10 + (s[i] - '0');
    return d;
  }
  return 1;
}

void Multipartition::set(const std::string& poly, Partition p) {
  if (p.empty())
    m_.erase(poly);
  else
    m_[poly] = std::move(p);
}

const Partition& Multipartition::at(const std::string& poly) const {
  static const Partition kEmpty;
  auto it = m_.find(poly);
  return it == m_.end() ? kEmpty : it->second;
}

int Multipartition::size() const {
  int s = 0;
  for (const auto& [k, p] : m_) s += poly_string_degree(k) * p.size();
  return s;
}

std::string Multipartition::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, p] : m_) {
    if (!first) os << ';';
    os << k << ':' << p.to_string();
    first = false;
  }
  return os.str();
}

std::string t_minus_1_key(unsigned p) { return p == 2 ? "t+1" : "t+" + std::to_string(p - 1); }

Multipartition to_modified(const Multipartition& mu, const std::string& tm1) {
  Multipartition nu = mu;
  std::vector<int> v;
  for (int x : mu.at(tm1).parts)
    if (x > 1) v.push_back(x - 1);
  nu.set(tm1, Partition(v));
  return nu;
}

std::optional<Multipartition> from_modified(const Multipartition& nu, int n, const std::string& tm1) {
  const int free = n - nu.size();
  const Partition& p = nu.at(tm1);
  if (free < 0 || p.length() > free) return std::nullopt;
  std::vector<int> v(p.parts);
  v.resize(static_cast<std::size_t>(free), 0);
  for (auto& x : v) ++x;
  Multipartition mu = nu;
  mu.set(tm1, Partition(v));
  return mu;
}

Multipartition union_t_minus_1(const Multipartition& mu, int d, const std::string& tm1) {
  std::vector<int> v = mu.at(tm1).parts;
  for (int i = 0; i < d; ++i) v.push_back(1);
  Multipartition r = mu;
  r.set(tm1, Partition(v));
  return r;
}

WittClass witt_add(WittClass a, WittClass b, unsigned q) {
  if (q % 2 == 0) throw Error(ErrorCode::InvalidInput, "Witt ring needs odd q");
  if (q % 4 == 1) {
    auto enc = [](WittClass w) {
      switch (w) {
        case WittClass::Zero: return 0;
        case WittClass::One: return 1;
        case WittClass::Delta: return 2;
        case WittClass::Omega: return 3;
      }
      return 0;
    };
    static const WittClass dec[4] = {WittClass::Zero, WittClass::One, WittClass::Delta, WittClass::Omega};
    return dec[enc(a) ^ enc(b)];
  }
  auto enc = [](WittClass w) {
    switch (w) {
      case WittClass::Zero: return 0;
      case WittClass::One: return 1;
      case WittClass::Omega: return 2;
      case WittClass::Delta: return 3;
    }
    return 0;
  };
  static const WittClass dec[4] = {WittClass::Zero, WittClass::One, WittClass::Omega, WittClass::Delta};
  return dec[(enc(a) + enc(b)) % 4];
}

std::string witt_name(WittClass w) {
  switch (w) {
    case WittClass::Zero: return "0";
    case WittClass::One: return "1";
    case WittClass::Delta: return "delta";
    case WittClass::Omega: return "omega";
  }
  return "?";
}

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "gl";
    case Family::U: return "u";
    case Family::Sp: return "sp";
    case Family::OPlus: return "o+";
    case Family::OMinus: return "o-";
    case Family::OOdd: return "oodd";
  }
  return "?";
}

Family family_parse(const std::string& s) {
  if (s == "gl") return Family::GL;
  if (s == "u") return Family::U;
  if (s == "sp") return Family::Sp;
  if (s == "o+") return Family::OPlus;
  if (s == "o-" || s == "o\xe2\x88\x92") return Family::OMinus;
  if (s == "oodd") return Family::OOdd;
  throw Error(ErrorCode::InvalidInput, "unknown family '" + s + "'");
}

bool is_orthogonal(Family f) {
  return f == Family::OPlus || f == Family::OMinus || f == Family::OOdd;
}

std::string label_print(const StableLabel& l) {
  std::string s = family_name(l.family) + ",q=" + std::to_string(l.q) + ";" + l.nu.to_string();
  if (l.index > 0) s += "#" + std::to_string(l.index);
  return s;
}

StableLabel label_parse(const std::string& s) {
  StableLabel l;
  std::size_t i = 0;
  auto fail = [&](const std::string& m) { throw ParseError(i, m); };
  auto comma = s.find(',');
  if (comma == std::string::npos) fail("missing ','");
  try {
    l.family = family_parse(s.substr(0, comma));
  } catch (const Error&) {
    fail("unknown family");
  }
  i = comma + 1;
  if (s.compare(i, 2, "q=") != 0) fail("expected 'q='");
  i += 2;
  auto read_int = [&]() {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected digit");
    long x = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      x = x * 10 + (s[i] - '0');
      if (x > 1000000) fail("number too large");
      ++i;
    }
    return x;
  };
  l.q = static_cast<unsigned>(read_int());
  if (i >= s.size() || s[i] != ';') fail("expected ';'");
  ++i;
  std::string prev;
  while (i < s.size() && s[i] != '#') {
    std::size_t colon = s.find(':', i);
    if (colon == std::string::npos) fail("expected ':'");
    std::string poly = s.substr(i, colon - i);
    if (poly.empty()) fail("empty polynomial");
    for (char c : poly)
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == '^' || c == '+'))
        fail("bad polynomial character");
    if (!prev.empty() && !(prev < poly)) fail("polynomials out of order");
    prev = poly;
    i = colon + 1;
    if (i >= s.size() || s[i] != '(') fail("expected '('");
    ++i;
    std::vector<int> parts;
    while (true) {
      parts.push_back(static_cast<int>(read_int()));
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ')') {
        ++i;
        break;
      }
      fail("expected ',' or ')'");
    }
    Partition p(parts);
    if (p.parts != parts || p.empty()) fail("parts must be positive and non-increasing");
    l.nu.set(poly, p);
    if (i < s.size() && s[i] != ';' && s[i] != '#') fail("expected ';' or '#'");
    if (i < s.size() && s[i] == ';') {
      ++i;
      if (i >= s.size() || s[i] == '#') fail("dangling ';'");
    }
  }
  if (i < s.size() && s[i] == '#') {
    ++i;
    l.index = static_cast<int>(read_int());
    if (l.index == 0) fail("index 0 is implicit");
  }
  if (i != s.size()) fail("trailing characters");
  if (l.family == Family::GL && l.index != 0) fail("gl labels take no index");
  return l;
}

}  // namespace stc
