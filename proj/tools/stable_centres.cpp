// Command-line front end: class tables, products, interpolation and verification suites.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stablecentres/bounding.hpp"
#include "stablecentres/centrformulas.hpp"
#include "stablecentres/classalg.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/forms.hpp"
#include "stablecentres/groups.hpp"
#include "stablecentres/interp.hpp"

using nlohmann::ordered_json;
using namespace stc;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kLimit = 3 };

struct RunConfig {
  std::string family = "gl";
  unsigned q = 2;
  int n = 2;
  bool n_given = false;
  std::string mu, nu, lambda;
  std::string fit_ranks, holdout;
  std::string cache;
  unsigned threads = 1;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool big = false;
  std::string suite;

  BuildOptions build() const {
    BuildOptions o;
    if (const char* env = std::getenv("STABLE_CENTRES_CACHE"); env && *env && cache.empty())
      o.cache_dir = std::filesystem::path(env);
    if (!cache.empty()) o.cache_dir = std::filesystem::path(cache);
    o.threads = threads;
    return o;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_ranks(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
        continue;
      }
      const int a = std::stoi(item.substr(0, dots)), b = std::stoi(item.substr(dots + 2));
      if (b < a) throw UsageError("empty rank range " + item);
      for (int i = a; i <= b; ++i) out.push_back(i);
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad rank list '" + s + "'");
  }
  return out;
}

StableLabel parse_label(const std::string& s, Family f, unsigned q) {
  // Bare multipartitions are completed with the family and q; "id" is the empty one.
  const std::string prefix = family_name(f) + ",q=" + std::to_string(q) + ";";
  StableLabel l = label_parse(s == "id" ? prefix : s.find(';') == std::string::npos ? prefix + s : s);
  if (l.family != f || l.q != q) throw Error(ErrorCode::UnknownLabel, "label " + s + " belongs to another group");
  return l;
}

std::shared_ptr<CentreContext> make_context(Family f, unsigned q, int n, const BuildOptions& opt) {
  if (f == Family::GL) return gl_type_context(q, n);
  return table_context(std::make_shared<const ClassTable>(load_or_build(f, q, n, opt)));
}

// Flat CSV projection of an array of flat objects, columns in key order.
void print_csv(const ordered_json& rows) {
  if (rows.empty()) return;
  bool first = true;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
    std::cout << (first ? "" : ",") << it.key();
    first = false;
  }
  std::cout << "\n";
  for (const auto& r : rows) {
    first = true;
    for (auto it = r.begin(); it != r.end(); ++it) {
      std::string v = it->is_string() ? it->get<std::string>() : it->dump();
      if (v.find_first_of(",\"") != std::string::npos) {
        std::string e = "\"";
        for (char c : v) e += c == '"' ? std::string("\"\"") : std::string(1, c);
        v = e + "\"";
      }
      std::cout << (first ? "" : ",") << v;
      first = false;
    }
    std::cout << "\n";
  }
}

void print_text(const ordered_json& rows) {
  for (const auto& r : rows) {
    bool first = true;
    for (auto it = r.begin(); it != r.end(); ++it) {
      std::cout << (first ? "" : "  ") << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
      first = false;
    }
    std::cout << "\n";
  }
}

void emit(const RunConfig& cfg, const ordered_json& doc, const ordered_json& rows) {
  if (cfg.format == "json")
    std::cout << doc.dump(2) << "\n";
  else if (cfg.format == "csv")
    print_csv(rows);
  else
    print_text(rows);
}

// ---------------------------------------------------------------- classes / multiply / interpolate

int cmd_classes(const RunConfig& cfg) {
  const Family f = family_parse(cfg.family);
  auto ctx = make_context(f, cfg.q, cfg.n, cfg.build());
  ordered_json rows = ordered_json::array();
  for (std::size_t c = 0; c < ctx->count(); ++c) {
    const CentreClass& cl = ctx->classes()[c];
    rows.push_back({{"label", label_print(cl.label)},
                    {"size", ctx->class_size(c).str()},
                    {"centralizer", ctx->centralizer(c).str()},
                    {"type", cl.type.to_string()},
                    {"modified", cl.modified.to_string()}});
  }
  ordered_json doc = {{"family", family_name(f)}, {"q", cfg.q}, {"n", cfg.n}, {"order", ctx->order().str()},
                      {"classes", rows}};
  emit(cfg, doc, rows);
  return kPass;
}

int cmd_multiply(const RunConfig& cfg) {
  const Family f = family_parse(cfg.family);
  auto ctx = make_context(f, cfg.q, cfg.n, cfg.build());
  const StableLabel mu = parse_label(cfg.mu, f, cfg.q), nu = parse_label(cfg.nu, f, cfg.q);
  const CentreVector v = centre_product(class_sum(*ctx, mu), class_sum(*ctx, nu), cfg.threads);
  const ordered_json doc = ordered_json::parse(product_json(*ctx, mu, nu, v));
  emit(cfg, doc, doc["terms"]);
  return kPass;
}

int cmd_interpolate(const RunConfig& cfg) {
  const Family f = family_parse(cfg.family);
  const StableLabel mu = parse_label(cfg.mu, f, cfg.q), nu = parse_label(cfg.nu, f, cfg.q);
  const std::vector<int> fit = parse_ranks(cfg.fit_ranks);
  const std::vector<int> hold = cfg.holdout.empty() ? std::vector<int>{} : parse_ranks(cfg.holdout);
  if (fit.empty()) throw UsageError("--fit-ranks is required");
  std::vector<int> all = fit;
  all.insert(all.end(), hold.begin(), hold.end());
  const RankSeries s(f, cfg.q, *std::min_element(all.begin(), all.end()), *std::max_element(all.begin(), all.end()),
                     cfg.build());
  std::vector<StableLabel> lambdas;
  if (!cfg.lambda.empty())
    lambdas.push_back(parse_label(cfg.lambda, f, cfg.q));
  else
    lambdas = product_support(s, mu, nu, cfg.threads);
  std::vector<FitResult> results;
  for (const auto& l : lambdas) results.push_back(interpolate_structure_constant(s, mu, nu, l, fit, hold, cfg.threads));
  const ordered_json doc = ordered_json::parse(fits_json(results));
  ordered_json rows = ordered_json::array();
  bool failed = false;
  for (const auto& r : results) {
    std::string coeffs;
    if (r.poly)
      for (std::size_t i = 0; i < r.poly->coeffs().size(); ++i) coeffs += (i ? ";" : "") + to_string(r.poly->coeffs()[i]);
    rows.push_back({{"lambda", label_print(r.lambda)},
                    {"variable", variable_name(r.var)},
                    {"degree", r.degree},
                    {"degree_bound", r.degree_bound},
                    {"verdict", r.verdict},
                    {"coefficients", coeffs}});
    failed = failed || r.failed();
  }
  emit(cfg, doc, rows);
  return failed ? kFail : kPass;
}

// ---------------------------------------------------------------- verify

struct Report {
  ordered_json checks = ordered_json::array();
  bool pass = true;
  void add(const std::string& name, bool ok, const std::string& detail, const std::string& provenance) {
    checks.push_back({{"check", name}, {"pass", ok}, {"detail", detail}, {"provenance", provenance}});
    pass = pass && ok;
  }
};

struct Target {
  Family f;
  unsigned q;
  int n;
  bool heavy;
};

std::string target_name(const Target& t) {
  return family_name(t.f) + "_" + std::to_string(t.n) + "(" + std::to_string(t.q) + ")";
}

std::vector<Target> scoped(const RunConfig& cfg, std::vector<Target> defaults) {
  if (cfg.n_given) return {{family_parse(cfg.family), cfg.q, cfg.n, false}};
  std::vector<Target> out;
  for (const auto& t : defaults)
    if (cfg.big || !t.heavy) out.push_back(t);
  return out;
}

void verify_orders(const RunConfig& cfg, Report& rep) {
  std::vector<Target> targets;
  for (unsigned q : {2u, 3u})
    for (int n = 1; n <= 4; ++n) targets.push_back({Family::GL, q, n, q == 3 && n == 4});
  for (unsigned q : {4u, 5u})
    for (int n = 1; n <= 2; ++n) targets.push_back({Family::GL, q, n, false});
  for (int n = 1; n <= 4; ++n) targets.push_back({Family::U, 2, n, n == 4});
  targets.push_back({Family::U, 3, 2, false});
  for (unsigned q : {2u, 3u})
    for (int n = 1; n <= 2; ++n) targets.push_back({Family::Sp, q, n, false});
  targets.push_back({Family::Sp, 2, 3, true});
  for (int n = 0; n <= 2; ++n) targets.push_back({Family::OOdd, 3, n, n == 2});
  for (Family f : {Family::OPlus, Family::OMinus})
    for (int n = 1; n <= 2; ++n) targets.push_back({f, 3, n, false});
  for (const auto& t : scoped(cfg, targets)) {
    const GroupTable g = build_group(t.f, t.q, t.n, cfg.build());
    const BigInt formula = group_order(t.f, t.q, t.n);
    rep.add("order " + target_name(t), BigInt(g.size()) == formula,
            "enumerated " + std::to_string(g.size()) + ", formula " + formula.str(), "enumeration vs closed order formula");
  }
}

void verify_centralizers(const RunConfig& cfg, Report& rep) {
  const std::vector<Target> defaults = {{Family::GL, 2, 2, false}, {Family::GL, 3, 2, false}, {Family::GL, 2, 3, false},
                                        {Family::GL, 4, 2, false}, {Family::U, 2, 2, false},  {Family::U, 2, 3, false},
                                        {Family::U, 3, 2, false}};
  for (const auto& t : scoped(cfg, defaults)) {
    if (t.f != Family::GL && t.f != Family::U) throw UsageError("centralizer formulas cover gl and u");
    const ClassTable ct = load_or_build(t.f, t.q, t.n, cfg.build());
    std::size_t bad = 0;
    for (std::size_t c = 0; c < ct.count(); ++c) {
      const BigInt brute = BigInt(ct.group->size()) / ct.classes[c].size;
      const BigInt formula = t.f == Family::GL ? gl_centralizer_size(ct.classes[c].type, t.q)
                                               : unitary_centralizer_size(ct.classes[c].type, t.q);
      if (brute != formula) ++bad;
    }
    rep.add("centralizers " + target_name(t), bad == 0,
            std::to_string(ct.count()) + " classes, " + std::to_string(bad) + " mismatches",
            "class sizes from enumeration vs closed centralizer formula");
  }
}

void verify_psi(const RunConfig& cfg, Report& rep) {
  const unsigned q = cfg.q;
  const int n = cfg.n_given ? cfg.n : 2;
  auto ctx = table_context(std::make_shared<const ClassTable>(load_or_build(Family::GL, q, n, cfg.build())));
  const auto orbits = triple_orbits(q, n);
  std::mt19937_64 rng(cfg.seed);
  int hom = 0;
  for (int i = 0; i < 20; ++i) {
    const auto& a = orbits[rng() % orbits.size()];
    const auto& b = orbits[rng() % orbits.size()];
    const auto lhs = to_centre_vector(*ctx, psi_elements(convolve(indicator(a), indicator(b))));
    const auto pa = to_centre_vector(*ctx, psi_elements(indicator(a)));
    const auto pb = to_centre_vector(*ctx, psi_elements(indicator(b)));
    if (lhs && pa && pb && *lhs == centre_product(*pa, *pb, cfg.threads)) ++hom;
  }
  rep.add("psi homomorphism gl q=" + std::to_string(q) + " n=" + std::to_string(n), hom == 20,
          std::to_string(hom) + "/20 random orbit pairs", "convolution then Psi vs product of images");
  std::size_t central = 0;
  for (const auto& o : orbits)
    if (to_centre_vector(*ctx, psi_elements(indicator(o)))) ++central;
  rep.add("psi centrality", central == orbits.size(),
          std::to_string(central) + "/" + std::to_string(orbits.size()) + " orbit images are class functions",
          "constant on conjugacy classes");
  std::size_t reduced = 0;
  for (const auto& o : orbits) {
    const auto big = triple_orbit(o[0], n + 1);
    std::set<BoundingTriple> inside;
    for (const auto& t : big)
      if (in_BT(t, n)) inside.insert(triple_restrict(t, n));
    if (inside == std::set<BoundingTriple>(o.begin(), o.end())) ++reduced;
  }
  rep.add("conjugacy reduction", reduced == orbits.size(),
          std::to_string(reduced) + "/" + std::to_string(orbits.size()) + " orbits unchanged by GL_{n+1}",
          "orbit at n+1 intersected with BT_n");
}

void verify_graded(const RunConfig& cfg, Report& rep) {
  struct G {
    Family f;
    unsigned q;
    int lo, hi;
    bool heavy;
  };
  std::vector<G> series = {{Family::GL, 2, 1, 4, false}, {Family::GL, 3, 1, 3, false}, {Family::U, 2, 1, 3, false},
                           {Family::Sp, 2, 1, 2, false}, {Family::OOdd, 3, 0, 1, false}, {Family::GL, 2, 1, 5, true},
                           {Family::U, 2, 1, 4, true},   {Family::Sp, 2, 1, 3, true},  {Family::OOdd, 3, 0, 2, true}};
  if (cfg.n_given) {
    const Family f = family_parse(cfg.family);
    series = {{f, cfg.q, f == Family::GL ? 1 : 0, cfg.n, false}};
  }
  for (const auto& s : series) {
    if (s.heavy && !cfg.big) continue;
    const RankSeries rs(s.f, s.q, s.lo, s.hi, cfg.build());
    const auto rows = graded_constants(rs, 2, cfg.threads);
    std::size_t bad = 0;
    for (const auto& r : rows) bad += !r.constant;
    rep.add("graded " + family_name(s.f) + " q=" + std::to_string(s.q) + " n=" + std::to_string(s.lo) + ".." +
                std::to_string(s.hi),
            bad == 0, std::to_string(rows.size()) + " top-degree constants, " + std::to_string(bad) + " vary with n",
            "exact products at every rank");
  }
}

int cmd_verify(const RunConfig& cfg) {
  Report rep;
  const std::set<std::string> suites = {"centralizers", "psi", "orders", "graded", "all"};
  if (!suites.count(cfg.suite)) throw UsageError("unknown suite '" + cfg.suite + "'");
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "orders") verify_orders(cfg, rep);
  if (all || cfg.suite == "centralizers") verify_centralizers(cfg, rep);
  if (all || cfg.suite == "psi") verify_psi(cfg, rep);
  if (all || cfg.suite == "graded") verify_graded(cfg, rep);
  ordered_json doc = {{"suite", cfg.suite}, {"big", cfg.big}, {"pass", rep.pass}, {"checks", rep.checks}};
  emit(cfg, doc, rep.checks);
  return rep.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact class algebra computations for finite classical groups"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "gl, u, sp, o+, o- or oodd");
    sub->add_option("--q", cfg.q, "field order")->check(CLI::PositiveNumber);
    sub->add_option("--cache", cfg.cache, "cache directory");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--big", cfg.big, "include heavy targets");
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
  };
  auto with_n = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option_function<int>("--n", [&](int v) { cfg.n = v; cfg.n_given = true; }, "rank");
    o->check(CLI::NonNegativeNumber);
    if (required) o->required();
  };

  auto* classes = app.add_subcommand("classes", "list conjugacy classes with stable labels");
  common(classes);
  with_n(classes, true);
  auto* multiply = app.add_subcommand("multiply", "expand X_mu X_nu in class sums");
  common(multiply);
  with_n(multiply, true);
  multiply->add_option("--mu", cfg.mu, "label, bare multipartition or id")->required();
  multiply->add_option("--nu", cfg.nu, "label, bare multipartition or id")->required();
  auto* interp = app.add_subcommand("interpolate", "fit structure constants across ranks");
  common(interp);
  interp->add_option("--mu", cfg.mu, "label, bare multipartition or id")->required();
  interp->add_option("--nu", cfg.nu, "label, bare multipartition or id")->required();
  interp->add_option("--lambda", cfg.lambda, "target label; every lambda in the product support when omitted");
  interp->add_option("--fit-ranks", cfg.fit_ranks, "a..b or a,b,c")->required();
  interp->add_option("--holdout", cfg.holdout, "c[,d]");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  with_n(verify, false);
  verify->add_option("suite", cfg.suite, "centralizers, psi, orders, graded or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    family_parse(cfg.family);
    if (*classes) return cmd_classes(cfg);
    if (*multiply) return cmd_multiply(cfg);
    if (*interp) return cmd_interpolate(cfg);
    return cmd_verify(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::LimitExceeded) return kLimit;
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::UnknownLabel ||
        e.code() == ErrorCode::InvalidInput || e.code() == ErrorCode::IncompatibleFamily)
      return kUsage;
    return kFail;
  }
}
