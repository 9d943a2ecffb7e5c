#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stablecentres/groups.hpp"
#include "stablecentres/matfq.hpp"
#include "stablecentres/rational.hpp"
#include "stablecentres/types.hpp"

namespace stc {

struct CentreClass {
  StableLabel label;
  Multipartition type;
  Multipartition modified;
  Mat rep;
};

// Conjugacy classes of one group G_n(F_q) together with a classifier for its elements.
class CentreContext {
 public:
  virtual ~CentreContext() = default;

  Family family() const { return family_; }
  unsigned q() const { return q_; }
  int n() const { return n_; }
  int dim() const { return N_; }
  const Field& field() const { return *F_; }
  const BigInt& order() const { return order_; }

  const std::vector<CentreClass>& classes() const { return classes_; }
  std::size_t count() const { return classes_.size(); }
  std::optional<std::size_t> find_label(const StableLabel& l) const;

  virtual std::size_t class_of(const Mat& m) const = 0;
  virtual BigInt class_size(std::size_t c) const = 0;
  BigInt centralizer(std::size_t c) const { return order_ / class_size(c); }
  virtual std::vector<Mat> members(std::size_t c) const = 0;
  virtual Mat random_element(std::mt19937_64& rng) const = 0;
  // Replaces class labels, e.g. to follow embeddings across ranks.
  void relabel(std::size_t c, const StableLabel& l) { classes_[c].label = l; }

 protected:
  Family family_ = Family::GL;
  unsigned q_ = 2;
  int n_ = 0, N_ = 0;
  const Field* F_ = nullptr;
  BigInt order_;
  std::vector<CentreClass> classes_;
};

// Backed by an enumerated class table.
std::shared_ptr<CentreContext> table_context(std::shared_ptr<const ClassTable> t);
// GL_n(F_q) described by types alone; classes are enumerated on demand by conjugation orbits.
std::shared_ptr<CentreContext> gl_type_context(unsigned q, int n, std::uint64_t orbit_limit = 5'000'000);

// All types of total size n over f.
std::vector<Multipartition> all_types(const Field& f, int n);
// Block sum of companion matrices of r^lambda_i.
Mat type_representative(const Field& f, const Multipartition& mu, int n);
// Number of invertible matrices commuting with g, by enumerating the commutant algebra.
BigInt commutant_units(const Mat& g, std::uint64_t limit = std::uint64_t(1) << 24);
// The invertible elements of that algebra, i.e. the centralizer of g in GL_n.
std::vector<Mat> centralizer_gl(const Mat& g, std::uint64_t limit = std::uint64_t(1) << 24);

struct CentreVector {
  const CentreContext* ctx = nullptr;
  std::map<std::size_t, BigInt> coeffs;

  BigInt at(std::size_t c) const {
    auto it = coeffs.find(c);
    return it == coeffs.end() ? BigInt(0) : it->second;
  }
  bool is_zero() const { return coeffs.empty(); }
  void add(std::size_t c, const BigInt& v);
  bool operator==(const CentreVector& o) const { return coeffs == o.coeffs; }
};

// Throws UnknownLabel unless the label is of this group and its keys are canonical monic irreducibles.
void validate_label(const CentreContext& ctx, const StableLabel& label);
CentreVector class_sum(const CentreContext& ctx, const StableLabel& label);
CentreVector centre_product(const CentreContext& ctx, std::size_t alpha, std::size_t beta, unsigned threads = 1);
CentreVector centre_product(const CentreVector& a, const CentreVector& b, unsigned threads = 1);
// Coefficient of gamma computed against a chosen representative z of gamma.
BigInt product_coefficient(const CentreContext& ctx, std::size_t alpha, std::size_t beta, const Mat& z);
BigInt structure_constant(const CentreContext& ctx, const StableLabel& mu, const StableLabel& nu,
                          const StableLabel& lambda, unsigned threads = 1);

// Element-level group algebra vector keyed by packed matrices.
using ElementVector = std::map<std::vector<std::uint64_t>, BigInt>;
ElementVector expand(const CentreVector& v);
bool verify_central(const CentreContext& ctx, const ElementVector& v, int sample_size, std::uint64_t seed = 0);

std::string product_json(const CentreContext& ctx, const StableLabel& mu, const StableLabel& nu,
                         const CentreVector& v);

}  // namespace stc
