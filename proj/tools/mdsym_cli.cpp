// Command-line front end: symbols, verification suites, decomposition and tables.

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "mdsym/eichler.hpp"
#include "mdsym/serialize.hpp"

using namespace mdsym;
using io::Json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNumeric = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string forms = "A=E4";
  std::vector<std::string> pq;
  std::int64_t pmax = 0;
  std::int64_t qmax = 0;
  int length = 2;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  std::string series = "D";
  std::string suite;
  int samples = 0;
  std::vector<int> weights{4, 6, 8};
  int depth = 2;
  int pq_samples = 20;
  int weight = 4;
  std::string fixture;
  unsigned threads = 0;
};

CoprimePair parse_pq(const std::string& text) {
  static const std::regex re(R"(\s*(-?\d{1,18})\s*,\s*(-?\d{1,18})\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw UsageError("--pq expects P,Q with integers, got '" + text + "'");
  const CoprimePair pq{std::stoll(m[1]), std::stoll(m[2])};
  if (gcd64(pq.p, pq.q) != 1) throw UsageError("--pq " + text + " is not a coprime pair");
  return pq;
}

std::vector<CoprimePair> pairs_of(const RunConfig& cfg) {
  if (cfg.pq.empty()) throw UsageError("at least one --pq is required");
  std::vector<CoprimePair> out;
  for (const auto& s : cfg.pq) out.push_back(parse_pq(s));
  return out;
}

HAssignment assignment_of(const RunConfig& cfg) {
  try {
    return HAssignment::parse(cfg.forms);
  } catch (const Error& e) {
    throw UsageError(std::string("--forms: ") + e.what());
  }
}

IntegratorConfig integrator_of(const RunConfig& cfg) {
  IntegratorConfig ic;
  ic.trunc = cfg.length;
  ic.validate();
  return ic;
}

void emit(const RunConfig& cfg, Json rows) {
  const Json doc = io::document({cfg.command, cfg.seed, cfg.tol}, std::move(rows));
  const std::string text = cfg.format == "csv" ? io::write_csv(doc["rows"]) : io::write_structured(doc);
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + cfg.output);
  out << text;
}

CSeries series_at(const RunConfig& cfg, const HAssignment& h, const IntegratorConfig& ic, std::int64_t p,
                  std::int64_t q) {
  if (cfg.series == "D") return build_D(h, p, q, ic);
  if (cfg.series == "F") return build_F(h, p, q, ic);
  return build_E(h, p, q, ic.trunc);
}

// Every word of length 1..trunc, zero coefficients included, in length-then-word order.
Json component_rows(const CSeries& s, std::int64_t p, std::int64_t q) {
  Json rows = Json::array();
  for (int n = 1; n <= s.trunc(); ++n) {
    for (const auto& w : s.alphabet().words_of_length(n)) {
      const Complex c = s.coeff(w);
      rows.push_back({{"word", s.alphabet().format(w)}, {"p", p}, {"q", q}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  return rows;
}

double magnitude(const CSeries& s) {
  double m = 0.0;
  for (const auto& [w, c] : s.terms()) m = std::max(m, std::abs(c));
  return m;
}

double rel_distance(const CSeries& a, const CSeries& b) { return a.distance(b) / std::max(1.0, magnitude(b)); }

double rel_shuffle_defect(const CSeries& s) { return is_grouplike(s, 0.0).worst / std::max(1.0, magnitude(s)); }

int cmd_symbol(const RunConfig& cfg) {
  const auto h = assignment_of(cfg);
  const auto ic = integrator_of(cfg);
  Json rows = Json::array();
  for (const auto& [p, q] : pairs_of(cfg)) {
    if (p == 0 || q == 0) throw UsageError("--pq needs pq != 0");
    for (auto& r : component_rows(series_at(cfg, h, ic, p, q), p, q)) rows.push_back(std::move(r));
  }
  emit(cfg, std::move(rows));
  return kOk;
}

// Collects per-check worst violations.
class Checks {
 public:
  void add(const std::string& name, double worst, double tol, Json extra = Json::object()) {
    Json row = {{"check", name}, {"worst", worst}, {"tolerance", tol}, {"pass", worst <= tol}};
    for (auto& [k, v] : extra.items()) row[k] = v;
    ok_ = ok_ && worst <= tol;
    rows_.push_back(std::move(row));
  }
  void add_flag(const std::string& name, bool pass) {
    rows_.push_back({{"check", name}, {"pass", pass}});
    ok_ = ok_ && pass;
  }
  int finish(const RunConfig& cfg) {
    emit(cfg, std::move(rows_));
    return ok_ ? kOk : kFailed;
  }

 private:
  Json rows_ = Json::array();
  bool ok_ = true;
};

std::vector<CoprimePair> with_small(std::vector<CoprimePair> v) {
  v.push_back({1, 1});
  v.push_back({1, -1});
  v.push_back({2, 1});
  return v;
}

int suite_reciprocity_law(const RunConfig& cfg) {
  Checks checks;
  const std::int64_t pmax = cfg.pmax ? cfg.pmax : 13;
  for (int w : cfg.weights) {
    double worst = 0.0;
    for (std::int64_t p = 2; p <= pmax; ++p) worst = std::max(worst, reciprocity_law_check(w, p).discrepancy);
    checks.add("reciprocity-law weight " + std::to_string(w), worst, cfg.tol, {{"pmax", pmax}});
  }
  return checks.finish(cfg);
}

int suite_bijection(const RunConfig& cfg) {
  auto al = make_alphabet(Alphabet::of({"a", "b"}));
  const int n = cfg.samples ? cfg.samples : 100;
  const auto pairs = with_small(sample_pairs(cfg.seed, 20, 50));
  double w1 = 0.0, w2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto d = random_symbol(al, 3, cfg.seed * 1000003 + i);
    const auto f = psi(d);
    const auto back = delta(f);
    const auto nd = normalize(d);
    const auto ff = psi(back);
    for (const auto& [p, q] : pairs) {
      w1 = std::max(w1, back(p, q).distance(nd(p, q)));
      w2 = std::max(w2, ff(p, q).distance(f(p, q)));
    }
  }
  Checks checks;
  checks.add("delta(psi(D)) = normalize(D)", w1, 0.0, {{"symbols", n}});
  checks.add("psi(delta(F)) = F", w2, 0.0, {{"symbols", n}});
  return checks.finish(cfg);
}

ScalarFn<Rational> scalar_psi(ScalarFn<Rational> d) {
  return [d](std::int64_t p, std::int64_t q) { return Rational(d(p, q) - d(-q, p)); };
}

ScalarFn<Rational> c_over_pq(Rational c) {
  return [c](std::int64_t p, std::int64_t q) { return Rational(c / Rational(static_cast<long>(p * q))); };
}

int suite_shuffle(const RunConfig& cfg) {
  auto al = make_alphabet(Alphabet::of({"a", "b"}));
  const int n = cfg.samples ? cfg.samples : 20;
  const auto pairs = with_small(sample_pairs(cfg.seed, 50, 40));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    auto f = from_components<Rational>(
        {c_over_pq(make_rational(i + 1, 12)), scalar_psi(random_scalar_symbol(cfg.seed * 7919 + i))}, al, 3);
    const auto d = delta(f);
    for (const auto& [p, q] : pairs) worst = std::max(worst, is_grouplike(d(p, q)).worst);
  }
  auto f = from_components<Rational>({c_over_pq(make_rational(1, 12)), scalar_psi(random_scalar_symbol(cfg.seed))},
                                     al, 3);
  const auto bad = delta(bullet(f, embed_exp<Rational>(scalar_psi(random_scalar_symbol(cfg.seed + 1)), Word{0, 1}, al, 3)));
  bool detected = false;
  for (const auto& [p, q] : pairs) detected = detected || !is_grouplike(bad(p, q)).ok;
  Checks checks;
  checks.add("delta(F) group-like", worst, 0.0, {{"functions", n}, {"pairs", pairs.size()}});
  checks.add_flag("corrupted control rejected", detected);
  return checks.finish(cfg);
}

int suite_axioms_fixture(const RunConfig& cfg) {
  std::ifstream in(cfg.fixture);
  if (!in) throw UsageError("cannot read fixture " + cfg.fixture);
  std::stringstream ss;
  ss << in.rdbuf();
  const Json doc = io::read_structured(ss.str());
  if (!doc.contains("rows") || !doc["rows"].is_array()) throw UsageError("fixture has no rows");
  const auto h = assignment_of(cfg);
  std::map<CoprimePair, CSeries> table;
  for (const auto& row : doc["rows"]) {
    const CoprimePair pq{row.at("p").get<std::int64_t>(), row.at("q").get<std::int64_t>()};
    auto [it, fresh] = table.try_emplace(pq, CSeries::one(h.alphabet_ptr(), cfg.length));
    const Word w = h.alphabet().parse(row.at("word").get<std::string>());
    it->second.set(w, {row.at("re").get<double>(), row.at("im").get<double>()});
  }
  double mds1 = 0.0, mds2 = 0.0, shuffle = 0.0;
  int comparisons = 0;
  for (const auto& [pq, s] : table) {
    shuffle = std::max(shuffle, rel_shuffle_defect(s));
    if (auto it = table.find({pq.p, pq.p + pq.q}); it != table.end()) {
      mds2 = std::max(mds2, rel_distance(it->second, s));
      ++comparisons;
    }
    if (auto it = table.find({-pq.p, -pq.q}); it != table.end()) {
      mds1 = std::max(mds1, rel_distance(it->second, s));
      ++comparisons;
    }
  }
  Checks checks;
  checks.add("MDS1 D(p,-q) = D(-p,q)", mds1, cfg.tol);
  checks.add("MDS2 D(p,q) = D(p,p+q)", mds2, cfg.tol, {{"comparisons", comparisons}});
  checks.add("group-like", shuffle, cfg.tol, {{"pairs", table.size()}});
  return checks.finish(cfg);
}

int suite_axioms(const RunConfig& cfg) {
  if (!cfg.fixture.empty()) return suite_axioms_fixture(cfg);
  auto al = make_alphabet(Alphabet::of({"a", "b"}));
  const int n = cfg.samples ? cfg.samples : 20;
  const auto pairs = sample_pairs(cfg.seed, 40, 50);
  double mds = 0.0, mrf = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto d = random_symbol(al, 3, cfg.seed * 104729 + i);
    for (const auto& e : verify_mds(d, pairs, 0.0).entries) mds = std::max(mds, e.magnitude);
    for (const auto& e : verify_mrf(psi(d), pairs, 0.0).entries) mrf = std::max(mrf, e.magnitude);
  }
  Checks checks;
  checks.add("MDS axioms of random symbols", mds, 0.0, {{"symbols", n}});
  checks.add("MRF axioms of psi images", mrf, 0.0, {{"symbols", n}});
  return checks.finish(cfg);
}

int suite_eichler(const RunConfig& cfg) {
  const auto h = assignment_of(cfg);
  const auto ic = integrator_of(cfg);
  const auto d = eichler_symbol(h, ic);
  const auto pairs = sample_pairs(cfg.seed, cfg.samples ? cfg.samples : 20, 20);
  double mds1 = 0.0, mds2 = 0.0, recip = 0.0, shuffle = 0.0;
  for (const auto& [p, q] : pairs) {
    const auto dpq = d(p, q);
    const double scale = std::max(1.0, magnitude(dpq));
    mds1 = std::max(mds1, d(p, -q).distance(d(-p, q)) / scale);
    mds2 = std::max(mds2, dpq.distance(d(p, p + q)) / scale);
    recip = std::max(recip, rel_distance(dpq * build_E(h, p, q, ic.trunc) * inverse(d(-q, p)), build_F(h, p, q, ic)));
    shuffle = std::max(shuffle, rel_shuffle_defect(dpq));
  }
  Checks checks;
  checks.add("MDS1", mds1, cfg.tol);
  checks.add("MDS2", mds2, cfg.tol);
  checks.add("D E D(-q,p)^-1 = F", recip, cfg.tol);
  checks.add("group-like", shuffle, cfg.tol);
  return checks.finish(cfg);
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.suite == "reciprocity-law") return suite_reciprocity_law(cfg);
  if (cfg.suite == "bijection") return suite_bijection(cfg);
  if (cfg.suite == "shuffle") return suite_shuffle(cfg);
  if (cfg.suite == "axioms") return suite_axioms(cfg);
  return suite_eichler(cfg);
}

int cmd_decompose(const RunConfig& cfg) {
  const auto h = assignment_of(cfg);
  auto ic = integrator_of(cfg);
  if (cfg.depth > ic.trunc) ic.trunc = cfg.depth;
  const auto m = psi(eichler_symbol(h, ic, Memo::sign));
  const auto pairs = sample_pairs(cfg.seed, cfg.pq_samples, 20);
  const auto dec = decompose(m, cfg.depth, pairs, cfg.tol);
  const auto& target = dec.target();
  Json rows = Json::array();
  double residual = 0.0;
  for (const auto& [p, q] : pairs) {
    residual = std::max(residual, rel_distance(dec.reconstruct(p, q), target(p, q).truncated(cfg.depth)));
    const auto c = dec.coefficients(p, q);
    for (std::size_t i = 0; i < c.size(); ++i)
      rows.push_back({{"word", h.alphabet().format(dec.words()[i])}, {"p", p}, {"q", q}, {"re", c[i].real()},
                      {"im", c[i].imag()}});
  }
  emit(cfg, std::move(rows));
  std::fprintf(stderr, "reconstruction residual: %.3e\n", residual);
  return residual <= cfg.tol ? kOk : kFailed;
}

int cmd_gamma02(const RunConfig& cfg) {
  Json rows = Json::array();
  for (const auto& [p, q] : pairs_of(cfg)) {
    const auto z = gamma02_delta(cfg.weight, p, q);
    const Complex dd = gamma02_D(cfg.weight, p, q), ff = gamma02_F(cfg.weight, p, q);
    rows.push_back({{"p", p},
                    {"q", q},
                    {"delta", z.coefficient.get_str() + "*zeta(" + std::to_string(z.zeta_arg) + ")"},
                    {"delta_coefficient", io::rational_to_json(z.coefficient)},
                    {"zeta_arg", z.zeta_arg},
                    {"delta_value", z.value()},
                    {"D_re", dd.real()},
                    {"D_im", dd.imag()},
                    {"F_re", ff.real()},
                    {"F_im", ff.imag()}});
  }
  emit(cfg, std::move(rows));
  return kOk;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int cmd_table(const RunConfig& cfg) {
  if (cfg.pmax < 1) throw UsageError("--pmax must be >= 1");
  const auto h = assignment_of(cfg);
  const auto ic = integrator_of(cfg);
  std::vector<CoprimePair> cells;
  for (std::int64_t p = 1; p <= cfg.pmax; ++p) {
    const std::int64_t top = cfg.qmax ? cfg.qmax : std::max<std::int64_t>(1, p - 1);
    for (std::int64_t q = 1; q <= top; ++q)
      if (gcd64(p, q) == 1) cells.push_back({p, q});
  }

  std::filesystem::path cache;
  if (const char* dir = std::getenv("MDSYM_CACHE_DIR"); dir && *dir) {
    std::ostringstream key;
    key << io::kVersion << '|' << cfg.forms << '|' << cfg.series << '|' << cfg.length << '|' << cfg.pmax << '|'
        << cfg.qmax;
    cache = std::filesystem::path(dir) / ("table-" + fnv1a(key.str()) + ".json");
    if (std::ifstream in(cache); in) {
      std::stringstream ss;
      ss << in.rdbuf();
      emit(cfg, io::read_structured(ss.str()).at("rows"));
      return kOk;
    }
  }

  std::vector<Json> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cells.size();) {
      try {
        const auto [p, q] = cells[i];
        Json rows = Json::array();
        for (const auto& r : component_rows(series_at(cfg, h, ic, p, q), p, q))
          rows.push_back({{"p", p}, {"q", q}, {"word", r["word"]}, {"re", r["re"]}, {"im", r["im"]}});
        results[i] = std::move(rows);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(n, cells.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Json rows = Json::array();
  for (auto& r : results)
    for (auto& x : r) rows.push_back(std::move(x));
  if (!cache.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache.parent_path(), ec);
    std::ofstream(cache) << io::write_structured(io::document({"table", cfg.seed, cfg.tol}, rows));
  }
  emit(cfg, std::move(rows));
  return kOk;
}

int cmd_canonical(const RunConfig& cfg) {
  Json rows = Json::array();
  for (const auto& [p, q] : pairs_of(cfg)) {
    if (p < 1) throw UsageError("canonical continued fractions need p >= 1");
    rows.push_back({{"p", p}, {"q", q}, {"entries", canonical(p, q).entries()}});
  }
  emit(cfg, std::move(rows));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple Dedekind symbols, reciprocity functions and iterated Eichler integrals"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "verification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out,--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", cfg.output, "output path (default stdout)");
  };
  auto forms = [&](CLI::App* sub, const std::string& def) {
    cfg.forms = def;
    sub->add_option("--forms", cfg.forms, "letter=form assignments, e.g. A=E4,B=E6");
    sub->add_option("--length", cfg.length, "truncation length")->check(CLI::Range(1, 4));
  };

  auto* symbol = app.add_subcommand("symbol", "D, F or E series at given pairs");
  common(symbol);
  symbol->add_option("--forms", cfg.forms, "letter=form assignments")->required();
  symbol->add_option("--length", cfg.length, "truncation length")->check(CLI::Range(1, 4));
  symbol->add_option("--pq", cfg.pq, "pair P,Q (repeatable)")->required();
  symbol->add_option("--series", cfg.series, "D, F or E")->check(CLI::IsMember({"D", "F", "E"}));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", cfg.suite)
      ->required()
      ->check(CLI::IsMember({"bijection", "shuffle", "axioms", "reciprocity-law", "eichler"}));
  verify->add_option("--samples", cfg.samples, "number of sampled objects")->check(CLI::PositiveNumber);
  verify->add_option("--weights", cfg.weights, "form weights")->delimiter(',');
  verify->add_option("--pmax", cfg.pmax, "largest p");
  verify->add_option("--fixture", cfg.fixture, "table to check instead of random symbols");
  verify->add_option("--forms", cfg.forms, "letter=form assignments");
  verify->add_option("--length", cfg.length, "truncation length")->check(CLI::Range(1, 4));

  auto* decomp = app.add_subcommand("decompose", "peel the reciprocity function of an assignment");
  common(decomp);
  forms(decomp, "A=E4,B=E6");
  decomp->add_option("--depth", cfg.depth)->check(CLI::Range(1, 4));
  decomp->add_option("--pq-samples", cfg.pq_samples)->check(CLI::PositiveNumber);

  auto* g02 = app.add_subcommand("gamma02", "closed forms for the level-2 Eisenstein series");
  common(g02);
  g02->add_option("--weight", cfg.weight)->check(CLI::Range(4, 40));
  g02->add_option("--pq", cfg.pq, "pair P,Q (repeatable)")->required();

  auto* table = app.add_subcommand("table", "grid of components over coprime pairs");
  common(table);
  forms(table, "A=E4");
  table->add_option("--pmax", cfg.pmax)->required();
  table->add_option("--qmax", cfg.qmax, "largest q (default p-1)");
  table->add_option("--series", cfg.series)->check(CLI::IsMember({"D", "F", "E"}));
  table->add_option("--threads", cfg.threads);

  auto* canon = app.add_subcommand("canonical", "canonical minus continued fraction of q/p");
  common(canon);
  canon->add_option("--pq", cfg.pq)->required();

  cfg.length = 2;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (table->parsed() && table->count("--length") == 0) cfg.length = 1;

  try {
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == symbol) return cmd_symbol(cfg);
    if (sub == verify) return cmd_verify(cfg);
    if (sub == decomp) return cmd_decompose(cfg);
    if (sub == g02) return cmd_gamma02(cfg);
    if (sub == table) return cmd_table(cfg);
    return cmd_canonical(cfg);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return kNumeric;
  } catch (const NotShuffled& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return kFailed;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
}
