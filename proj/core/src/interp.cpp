#include "stablecentres/interp.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/gf.hpp"
#include "stablecentres/groups.hpp"
#include "stablecentres/qcombinat.hpp"

namespace stc {

std::string variable_name(Variable v) {
  switch (v) {
    case Variable::QPow: return "t=q^n";
    case Variable::MinusQPow: return "s=(-q)^n";
    case Variable::QSquaredPow: return "u=q^{2n}";
  }
  return "?";
}

Variable family_variable(Family f) {
  if (f == Family::U) return Variable::MinusQPow;
  if (f == Family::Sp) return Variable::QSquaredPow;
  return Variable::QPow;
}

namespace {

long base_of(Variable v, unsigned q) {
  const long b = static_cast<long>(q);
  if (v == Variable::MinusQPow) return -b;
  if (v == Variable::QSquaredPow) return b * b;
  return b;
}

}  // namespace

BigInt variable_at(Variable v, unsigned q, int n) {
  const long b = base_of(v, q);
  BigInt x = 1;
  for (int i = 0; i < n; ++i) x *= b;
  return x;
}

std::optional<RationalPoly> fit_min_degree(const std::vector<std::pair<BigInt, BigRational>>& points, int max_degree) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "no points to fit");
  std::set<BigInt> xs;
  for (const auto& p : points)
    if (!xs.insert(p.first).second) throw Error(ErrorCode::DuplicateAbscissa, "repeated abscissa " + p.first.str());

  const std::size_t n = points.size();
  std::vector<BigRational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / BigRational(points[i].first - points[i - j].first);

  RationalPoly p;
  RationalPoly basis = RationalPoly::constant(1);
  for (std::size_t j = 0; j < n; ++j) {
    if (dd[j] != 0) {
      if (static_cast<int>(j) > max_degree) return std::nullopt;
      p = p + basis * dd[j];
    }
    basis = basis * RationalPoly({BigRational(-points[j].first), BigRational(1)});
  }
  return p;
}

std::vector<BigRational> rq_coordinates(const RationalPoly& p, Variable v, unsigned q) {
  const long b = base_of(v, q);
  std::vector<BigRational> c;
  for (int n = 0; n <= p.degree(); ++n) {
    BigRational y = p.eval(BigRational(variable_at(v, q, n)));
    for (int k = 0; k < n; ++k) y -= c[k] * BigRational(q_binomial(n, k, QValue(b)));
    c.push_back(y);
  }
  return c;
}

int rq_two_denominator(const RationalPoly& p, Variable v, unsigned q) {
  const unsigned pr = prime_power(q).first;
  int worst = 0;
  for (const BigRational& c : rq_coordinates(p, v, q)) {
    BigInt d = boost::multiprecision::denominator(c);
    while (d % pr == 0) d /= pr;
    int e = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++e;
    }
    if (d != 1) return -1;
    worst = std::max(worst, e);
  }
  return worst;
}

// ---------------------------------------------------------------- rank series

RankSeries::RankSeries(Family family, unsigned q, int lo, int hi, const BuildOptions& opt)
    : family_(family), q_(q), lo_(lo), hi_(hi) {
  if (lo < (family == Family::GL ? 1 : 0) || hi < lo) throw Error(ErrorCode::InvalidInput, "bad rank range");
  if (family == Family::GL) {
    for (int n = lo; n <= hi; ++n) ctx_.push_back(gl_type_context(q, n));
    return;
  }
  std::shared_ptr<const ClassTable> prev;
  for (int n = lo; n <= hi; ++n) {
    auto ct = std::make_shared<const ClassTable>(load_or_build(family, q, n, opt));
    auto ctx = table_context(ct);
    if (prev) {
      const CentreContext& before = *ctx_.back();
      const auto match = stable_match(*prev, *ct);
      std::map<std::size_t, StableLabel> inherited;
      for (const auto& [c, d] : match) {
        const StableLabel& l = before.classes()[c].label;
        auto it = inherited.find(d);
        if (it == inherited.end()) {
          inherited.emplace(d, l);
        } else {
          notes_.push_back("rank " + std::to_string(n) + ": " + label_print(l) + " and " + label_print(it->second) +
                           " fuse");
          if (l < it->second) it->second = l;
        }
      }
      std::set<StableLabel> used;
      for (const auto& [d, l] : inherited) used.insert(l);
      for (std::size_t d = 0; d < ctx->count(); ++d) {
        auto it = inherited.find(d);
        if (it != inherited.end()) {
          ctx->relabel(d, it->second);
          continue;
        }
        StableLabel l = ctx->classes()[d].label;
        while (used.count(l)) ++l.index;
        used.insert(l);
        ctx->relabel(d, l);
      }
    }
    prev = ct;
    ctx_.push_back(ctx);
  }
}

const CentreContext& RankSeries::at(int n) const {
  if (n < lo_ || n > hi_) throw Error(ErrorCode::InvalidInput, "rank " + std::to_string(n) + " outside the series");
  return *ctx_[n - lo_];
}

const CentreVector& RankSeries::product(int n, std::size_t alpha, std::size_t beta, unsigned threads) const {
  if (beta < alpha) std::swap(alpha, beta);
  const auto key = std::make_tuple(n, alpha, beta);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = products_.find(key);
    if (it != products_.end()) return *it->second;
  }
  auto v = std::make_unique<CentreVector>(centre_product(at(n), alpha, beta, threads));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = products_.emplace(key, std::move(v));
  return *it->second;
}

// ---------------------------------------------------------------- fitting

int label_size(const StableLabel& l) { return l.nu.size(); }

int degree_bound(Family f, const StableLabel& mu, const StableLabel& nu, const StableLabel& lambda) {
  const int gap = label_size(mu) + label_size(nu) - label_size(lambda);
  return f == Family::Sp ? gap : 2 * gap;
}

std::optional<BigInt> structure_constant_at(const RankSeries& s, int n, const StableLabel& mu, const StableLabel& nu,
                                            const StableLabel& lambda, unsigned threads) {
  const CentreContext& ctx = s.at(n);
  for (const StableLabel* l : {&mu, &nu, &lambda}) validate_label(ctx, *l);
  const auto l = ctx.find_label(lambda);
  if (!l) return std::nullopt;
  const auto a = ctx.find_label(mu), b = ctx.find_label(nu);
  if (!a || !b) return BigInt(0);
  return s.product(n, *a, *b, threads).at(*l);
}

FitResult interpolate_structure_constant(const RankSeries& s, const StableLabel& mu, const StableLabel& nu,
                                         const StableLabel& lambda, const std::vector<int>& fit_ranks,
                                         const std::vector<int>& holdout_ranks, unsigned threads) {
  FitResult r;
  r.family = s.family();
  r.q = s.q();
  r.mu = mu;
  r.nu = nu;
  r.lambda = lambda;
  r.var = family_variable(s.family());
  r.degree_bound = degree_bound(s.family(), mu, nu, lambda);
  r.fit_ranks = fit_ranks;
  r.holdout_ranks = holdout_ranks;
  if (r.degree_bound < 0) throw Error(ErrorCode::InvalidInput, "lambda larger than mu + nu");

  std::vector<int> ranks = fit_ranks;
  ranks.insert(ranks.end(), holdout_ranks.begin(), holdout_ranks.end());
  std::sort(ranks.begin(), ranks.end());
  if (std::adjacent_find(ranks.begin(), ranks.end()) != ranks.end())
    throw Error(ErrorCode::DuplicateAbscissa, "fit and holdout ranks overlap");

  std::vector<std::pair<BigInt, BigRational>> fit_pts, all_pts;
  for (int n : ranks) {
    const auto v = structure_constant_at(s, n, mu, nu, lambda, threads);
    if (!v) continue;
    RankPoint p;
    p.n = n;
    p.value = *v;
    p.holdout = std::count(holdout_ranks.begin(), holdout_ranks.end(), n) > 0;
    r.points.push_back(p);
    const std::pair<BigInt, BigRational> xy{variable_at(r.var, r.q, n), BigRational(*v)};
    all_pts.push_back(xy);
    if (!p.holdout) fit_pts.push_back(xy);
  }
  if (fit_pts.empty()) {
    r.verdict = "consistency-only";
    r.note = "lambda absent at every fit rank";
    return r;
  }

  const bool determined = static_cast<int>(fit_pts.size()) >= r.degree_bound + 1;
  const bool has_holdout = fit_pts.size() < all_pts.size();
  if (determined) {
    r.poly = fit_min_degree(fit_pts, r.degree_bound);
    if (!r.poly) {
      r.verdict = "failed";
      r.note = "fit points need degree above the bound";
      r.poly = fit_min_degree(fit_pts, static_cast<int>(fit_pts.size()));
    }
  } else {
    r.poly = fit_min_degree(all_pts, r.degree_bound);
    r.note = "points do not determine a polynomial within the bound";
  }
  bool all_match = true;
  if (r.poly) {
    r.degree = r.poly->degree();
    r.bound_ok = r.degree <= r.degree_bound;
    r.two_denominator = rq_two_denominator(*r.poly, r.var, r.q);
    for (RankPoint& p : r.points) {
      p.predicted = r.poly->eval(BigRational(variable_at(r.var, r.q, p.n)));
      p.match = *p.predicted == BigRational(p.value);
      all_match = all_match && p.match;
    }
  } else {
    all_match = false;
  }
  if (!r.verdict.empty()) return r;
  if (!all_match || !r.bound_ok)
    r.verdict = "failed";
  else if (determined && has_holdout)
    r.verdict = "verified";
  else
    r.verdict = "consistency-only";
  if (r.verdict == "consistency-only" && r.note.empty()) r.note = "no holdout rank with lambda present";
  return r;
}

std::vector<StableLabel> product_support(const RankSeries& s, const StableLabel& mu, const StableLabel& nu,
                                         unsigned threads) {
  std::set<StableLabel> out;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    const CentreContext& ctx = s.at(n);
    const auto a = ctx.find_label(mu), b = ctx.find_label(nu);
    if (!a || !b) continue;
    for (const auto& [c, v] : s.product(n, *a, *b, threads).coeffs) out.insert(ctx.classes()[c].label);
  }
  return {out.begin(), out.end()};
}

std::vector<GradedRow> graded_constants(const RankSeries& s, int degree_cap, unsigned threads) {
  std::set<StableLabel> labels;
  for (int n = s.lo(); n <= s.hi(); ++n)
    for (const auto& c : s.at(n).classes())
      if (label_size(c.label) <= degree_cap) labels.insert(c.label);
  std::map<std::tuple<StableLabel, StableLabel, StableLabel>, GradedRow> rows;
  for (auto i = labels.begin(); i != labels.end(); ++i)
    for (auto j = i; j != labels.end(); ++j) {
      const int top = label_size(*i) + label_size(*j);
      if (top > degree_cap) continue;
      for (int n = s.lo(); n <= s.hi(); ++n) {
        const CentreContext& ctx = s.at(n);
        const auto a = ctx.find_label(*i), b = ctx.find_label(*j);
        if (!a || !b) continue;
        const CentreVector& v = s.product(n, *a, *b, threads);
        // Every top-degree label present at this rank, so zeros are recorded too.
        for (std::size_t c = 0; c < ctx.count(); ++c) {
          const StableLabel& l = ctx.classes()[c].label;
          if (label_size(l) != top) continue;
          GradedRow& row = rows[{*i, *j, l}];
          row.mu = *i;
          row.nu = *j;
          row.lambda = l;
          row.values[n] = v.at(c);
        }
      }
    }
  std::vector<GradedRow> out;
  for (auto& [k, row] : rows) {
    for (const auto& [n, v] : row.values) row.constant = row.constant && v == row.values.begin()->second;
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

nlohmann::ordered_json fit_object(const FitResult& r) {
  nlohmann::ordered_json j;
  j["family"] = family_name(r.family);
  j["q"] = r.q;
  j["mu"] = label_print(r.mu);
  j["nu"] = label_print(r.nu);
  j["lambda"] = label_print(r.lambda);
  j["variable"] = variable_name(r.var);
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  if (r.poly)
    for (const auto& c : r.poly->coeffs()) coeffs.push_back(to_string(c));
  j["coefficients"] = coeffs;
  j["degree"] = r.degree;
  j["degree_bound"] = r.degree_bound;
  j["bound_ok"] = r.bound_ok;
  j["fit_ranks"] = r.fit_ranks;
  j["holdout_ranks"] = r.holdout_ranks;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : r.points) {
    nlohmann::ordered_json x;
    x["n"] = p.n;
    x["value"] = p.value.str();
    x["predicted"] = p.predicted ? to_string(*p.predicted) : std::string();
    x["holdout"] = p.holdout;
    x["match"] = p.match;
    pts.push_back(x);
  }
  j["ranks"] = pts;
  j["two_denominator"] = r.two_denominator;
  j["verdict"] = r.verdict;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace

std::string fit_json(const FitResult& r) { return fit_object(r).dump(); }

std::string fits_json(const std::vector<FitResult>& rs) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : rs) a.push_back(fit_object(r));
  return a.dump();
}

std::string graded_json(const std::vector<GradedRow>& rows) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["mu"] = label_print(r.mu);
    j["nu"] = label_print(r.nu);
    j["lambda"] = label_print(r.lambda);
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& [n, v] : r.values) vals[std::to_string(n)] = v.str();
    j["values"] = vals;
    j["constant"] = r.constant;
    a.push_back(j);
  }
  return a.dump();
}

}  // namespace stc
