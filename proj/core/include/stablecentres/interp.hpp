#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "stablecentres/classalg.hpp"
#include "stablecentres/rational.hpp"
#include "stablecentres/types.hpp"

namespace stc {

// t = q^n (gl, o), s = (-q)^n (u), u = q^{2n} (sp).
enum class Variable { QPow, MinusQPow, QSquaredPow };
std::string variable_name(Variable v);
Variable family_variable(Family f);
BigInt variable_at(Variable v, unsigned q, int n);

// Least-degree interpolant by Newton divided differences; nullopt if its degree exceeds max_degree.
// Throws DuplicateAbscissa on repeated abscissae.
std::optional<RationalPoly> fit_min_degree(const std::vector<std::pair<BigInt, BigRational>>& points, int max_degree);

// Coordinates c_k with p(base^n) = sum_k c_k qbinom(n, k)_base, where base is q, -q or q^2.
std::vector<BigRational> rq_coordinates(const RationalPoly& p, Variable v, unsigned q);
// Largest power of 2 dividing any denominator of the R_q coordinates, after removing primes of q.
// Returns -1 if some other prime divides a denominator.
int rq_two_denominator(const RationalPoly& p, Variable v, unsigned q);

// Class contexts for consecutive ranks of one family, with labels carried along the embeddings.
class RankSeries {
 public:
  RankSeries(Family family, unsigned q, int lo, int hi, const BuildOptions& opt = {});
  Family family() const { return family_; }
  unsigned q() const { return q_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const CentreContext& at(int n) const;
  const std::vector<std::string>& notes() const { return notes_; }
  // Memoized X_alpha X_beta at rank n, by class index.
  const CentreVector& product(int n, std::size_t alpha, std::size_t beta, unsigned threads = 1) const;

 private:
  Family family_;
  unsigned q_;
  int lo_, hi_;
  std::vector<std::shared_ptr<CentreContext>> ctx_;
  std::vector<std::string> notes_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, std::size_t, std::size_t>, std::unique_ptr<CentreVector>> products_;
};

int label_size(const StableLabel& l);
int degree_bound(Family f, const StableLabel& mu, const StableLabel& nu, const StableLabel& lambda);

struct RankPoint {
  int n = 0;
  BigInt value;
  std::optional<BigRational> predicted;
  bool holdout = false;
  bool match = true;
};

struct FitResult {
  Family family = Family::GL;
  unsigned q = 2;
  StableLabel mu, nu, lambda;
  Variable var = Variable::QPow;
  std::optional<RationalPoly> poly;
  int degree = -1;
  int degree_bound = 0;
  bool bound_ok = false;
  std::vector<int> fit_ranks, holdout_ranks;
  std::vector<RankPoint> points;  // ranks where lambda exists
  int two_denominator = 0;
  std::string verdict;  // "verified", "consistency-only" or "failed"
  std::string note;

  bool verified() const { return verdict == "verified"; }
  bool failed() const { return verdict == "failed"; }
};

// Coefficient of X_lambda in X_mu X_nu at rank n; zero if mu or nu is absent, nullopt if lambda is.
std::optional<BigInt> structure_constant_at(const RankSeries& s, int n, const StableLabel& mu, const StableLabel& nu,
                                            const StableLabel& lambda, unsigned threads = 1);

// Verdict: verified when the fit points determine the polynomial within the bound and
// at least one holdout matches; consistency-only when the points are too few.
FitResult interpolate_structure_constant(const RankSeries& s, const StableLabel& mu, const StableLabel& nu,
                                         const StableLabel& lambda, const std::vector<int>& fit_ranks,
                                         const std::vector<int>& holdout_ranks, unsigned threads = 1);
// Every lambda in the support of X_mu X_nu at some computed rank.
std::vector<StableLabel> product_support(const RankSeries& s, const StableLabel& mu, const StableLabel& nu,
                                         unsigned threads = 1);

struct GradedRow {
  StableLabel mu, nu, lambda;
  std::map<int, BigInt> values;  // rank -> constant, ranks where mu and nu exist
  bool constant = true;
};
// Top-degree constants |lambda| = |mu| + |nu| <= degree_cap over all label pairs present in the series.
std::vector<GradedRow> graded_constants(const RankSeries& s, int degree_cap, unsigned threads = 1);

std::string fit_json(const FitResult& r);
std::string fits_json(const std::vector<FitResult>& rs);
std::string graded_json(const std::vector<GradedRow>& rows);

}  // namespace stc
