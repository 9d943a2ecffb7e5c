#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stc {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  Partition() = default;
  explicit Partition(std::vector<int> p);
  bool empty() const { return parts.empty(); }
  int size() const;
  int length() const { return static_cast<int>(parts.size()); }
  // Number of parts equal to i.
  int mult(int i) const;
  std::map<int, int> multiplicities() const;
  // sum (i-1) lambda_i
  long n_stat() const;
  Partition conjugate() const;
  std::string to_string() const;
  auto operator<=>(const Partition&) const = default;
};

struct PartitionStats {
  int size;
  int length;
  std::map<int, int> mult;
  long n;
};
PartitionStats partition_stats(const Partition& p);

// All partitions of n, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n);

// Degree of a polynomial given in canonical string form.
int poly_string_degree(const std::string& s);

// Keys are canonical irreducible strings; the empty partition is never stored.
class Multipartition {
 public:
  Multipartition() = default;
  void set(const std::string& poly, Partition p);
  const Partition& at(const std::string& poly) const;
  bool contains(const std::string& poly) const { return m_.count(poly) != 0; }
  const std::map<std::string, Partition>& entries() const { return m_; }
  bool empty() const { return m_.empty(); }
  int size() const;
  std::string to_string() const;
  auto operator<=>(const Multipartition&) const = default;

 private:
  std::map<std::string, Partition> m_;
};

// Canonical key of t - 1 over a field of characteristic p.
std::string t_minus_1_key(unsigned p);

Multipartition to_modified(const Multipartition& mu, const std::string& tm1);
std::optional<Multipartition> from_modified(const Multipartition& nu, int n, const std::string& tm1);
Multipartition union_t_minus_1(const Multipartition& mu, int d, const std::string& tm1);

enum class WittClass { Zero, One, Delta, Omega };
WittClass witt_add(WittClass a, WittClass b, unsigned q);
std::string witt_name(WittClass w);

enum class Family { GL, U, Sp, OPlus, OMinus, OOdd };
std::string family_name(Family f);
Family family_parse(const std::string& s);
bool is_orthogonal(Family f);

struct StableLabel {
  Family family = Family::GL;
  unsigned q = 2;
  Multipartition nu;
  int index = 0;
  auto operator<=>(const StableLabel&) const = default;
};

std::string label_print(const StableLabel& l);
StableLabel label_parse(const std::string& s);

}  // namespace stc
