#include "walkgroup/cli_report.hpp"

#include "walkgroup/genus0_analysis.hpp"
#include "walkgroup/genus1_analysis.hpp"
#include "walkgroup/group_orbit_oracle.hpp"
#include "walkgroup/walk_gen.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

namespace walkgroup {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fraction_string(const Fraction& f) {
  return std::to_string(f.p) + "/" + std::to_string(f.q);
}

// sin^2(pi/n)/2 rounded to a dyadic rational with 120 fractional bits; the
// rounding error (~1e-37) is far below every detection window in play.
Rat dyadic_sin2_half(int n) {
  mpfr_t t;
  mpfr_init2(t, 192);
  mpfr_const_pi(t, MPFR_RNDN);
  mpfr_div_si(t, t, n, MPFR_RNDN);
  mpfr_sin(t, t, MPFR_RNDN);
  mpfr_sqr(t, t, MPFR_RNDN);
  mpfr_div_si(t, t, 2, MPFR_RNDN);
  mpfr_mul_2exp(t, t, 120, MPFR_RNDN);
  mpz_t num;
  mpz_init(num);
  mpfr_get_z(num, t, MPFR_RNDN);
  Rat r(mpz_class(num), mpz_class(1) << 120);
  r.canonicalize();
  mpz_clear(num);
  mpfr_clear(t);
  return r;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "simple", "gessel", "kreweras", "krsp4",  "case2",
      "case3",  "case4",  "case5",    "delta0-genus1"};
  return names;
}

CatalogEntry catalog_entry(const std::string& name, int n) {
  CatalogEntry e;
  e.name = name;
  StepWeights& w = e.weights;
  if (name == "simple") {
    w.at(1, 0) = w.at(0, 1) = w.at(-1, 0) = w.at(0, -1) = Rat(1, 4);
    e.expected_order = 4;
    e.note = "classical order-4 walk";
    e.genus = GenusClass::Genus0ZeroDrift;
  } else if (name == "gessel") {
    w.at(1, 0) = w.at(1, 1) = w.at(-1, 0) = w.at(-1, -1) = Rat(1, 4);
    e.expected_order = 8;
    e.note = "order 8, theta = 3pi/4";
    e.genus = GenusClass::Genus0ZeroDrift;
  } else if (name == "kreweras") {
    w.at(-1, 0) = w.at(0, -1) = w.at(1, 1) = Rat(1, 3);
    e.expected_order = 6;
    e.note = "order 6, theta = 2pi/3";
    e.genus = GenusClass::Genus0ZeroDrift;
  } else if (name == "krsp4") {
    if (n < 3) throw ParseError("krsp4 needs n >= 3");
    Rat s = dyadic_sin2_half(n);
    w.at(1, 0) = w.at(-1, 0) = s;
    w.at(-1, 1) = w.at(1, -1) = Rat(1, 2) - s;
    w.exact = false;
    e.expected_order = 2 * n;
    e.note = "order-2n family at n = " + std::to_string(n) +
             " (dyadic approximation of sin^2(pi/n)/2)";
    e.genus = GenusClass::Genus0ZeroDrift;
  } else if (name == "case2") {
    w.at(1, 0) = w.at(1, 1) = w.at(1, -1) = w.at(0, -1) = w.at(-1, -1) =
        Rat(1, 5);
    e.expected_order = 0;
    e.note = "drift pattern, infinite group";
    e.genus = GenusClass::Genus0Case2;
  } else if (name == "case3") {
    w.at(1, 1) = w.at(0, 1) = w.at(-1, 1) = w.at(-1, 0) = w.at(-1, -1) =
        Rat(1, 5);
    e.expected_order = 0;
    e.note = "drift pattern, infinite group";
    e.genus = GenusClass::Genus0Case3;
  } else if (name == "case4") {
    w.at(1, -1) = w.at(0, -1) = w.at(-1, -1) = w.at(-1, 0) = w.at(-1, 1) =
        Rat(1, 5);
    e.expected_order = 0;
    e.note = "drift pattern, infinite group";
    e.genus = GenusClass::Genus0Case4;
  } else if (name == "case5") {
    w.at(1, 1) = w.at(1, 0) = w.at(1, -1) = w.at(0, 1) = w.at(-1, 1) =
        Rat(1, 5);
    e.expected_order = 0;
    e.note = "drift pattern, infinite group";
    e.genus = GenusClass::Genus0Case5;
  } else if (name == "delta0-genus1") {
    w.at(1, 0) = w.at(0, 1) = Rat(3, 10);
    w.at(-1, 0) = w.at(0, -1) = Rat(1, 5);
    e.expected_order = 4;
    e.note = "nonzero drift, Delta = 0, period ratio 1/2";
    e.genus = GenusClass::Genus1;
  } else {
    throw ParseError("unknown catalog walk: " + name);
  }
  return e;
}

namespace {

void check_consistency(AnalysisReport& r) {
  std::vector<std::string> clashes;
  const GroupOrderResult& cr = r.criterion.result;
  if (r.oracle.ran) {
    const GroupOrderResult& oc = r.oracle.result;
    if (cr.verdict == Verdict::Finite && oc.verdict == Verdict::Finite) {
      if (cr.order == oc.order)
        r.consistency.push_back("criterion and oracle agree: finite of order " +
                                std::to_string(cr.order));
      else
        clashes.push_back("criterion order " + std::to_string(cr.order) +
                          " vs oracle order " + std::to_string(oc.order));
    } else if (cr.verdict == Verdict::ProvenInfinite &&
               oc.verdict == Verdict::Finite) {
      clashes.push_back("criterion proves infinite but the oracle returned at order " +
                        std::to_string(oc.order));
    } else if (cr.verdict == Verdict::Finite &&
               oc.verdict == Verdict::UndecidedUpToBound) {
      if (2 * oc.bound >= cr.order)
        clashes.push_back("criterion gives finite order " +
                          std::to_string(cr.order) +
                          " but the exact orbit passed the return point");
      else
        r.consistency.push_back(
            "oracle caps stop below the expected return point");
    } else if (cr.verdict == Verdict::ProvenInfinite &&
               oc.verdict == Verdict::UndecidedUpToBound) {
      r.consistency.push_back(
          "oracle found no return within caps, consistent with infinite");
    } else if (cr.verdict == Verdict::UndecidedUpToBound &&
               oc.verdict == Verdict::Finite) {
      r.consistency.push_back("oracle settles finite order " +
                              std::to_string(oc.order) +
                              " where the criterion stayed undecided");
    }
  }
  if (r.orbit.ran) {
    const GroupOrderResult& ob = r.orbit.result;
    if (ob.verdict == Verdict::Finite) {
      if (cr.verdict == Verdict::Finite) {
        if (ob.order == cr.order)
          r.consistency.push_back(
              "numeric orbit returns at the criterion order");
        else
          clashes.push_back("numeric orbit order " + std::to_string(ob.order) +
                            " vs criterion order " + std::to_string(cr.order));
      } else if (cr.verdict == Verdict::ProvenInfinite) {
        clashes.push_back("numeric orbit returned on a proven-infinite walk");
      }
    } else if (cr.verdict == Verdict::ProvenInfinite) {
      r.consistency.push_back(
          "numeric orbit shows no return, consistent with infinite");
    } else if (cr.verdict == Verdict::Finite) {
      // not a proof either way: floating drift can hide a return
      r.consistency.push_back(
          "numeric orbit found no return (tolerance artifact?)");
    }
  }
  if (!clashes.empty()) {
    r.consistent = false;
    std::string msg;
    for (const auto& c : clashes) {
      r.consistency.push_back("CLASH: " + c);
      if (!msg.empty()) msg += "; ";
      msg += c;
    }
    throw InconsistentVerdicts(msg);
  }
}

}  // namespace

AnalysisReport analyze(const StepWeights& w, const AnalyzeOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.input_json = w.to_json_text();

  KernelData k = build_kernel(w);
  SingularityReport sing = is_singular(k);
  if (sing.singular) throw SingularWalk(sing.reason);

  r.moments = moments(w);
  r.delta = delta_determinant(w).value;
  r.genus = genus_classify(k);

  r.criterion.ran = true;
  r.criterion.result = decide(w, opts.bound);
  if (r.criterion.result.theta_over_pi)
    r.theta_exact = r.criterion.result.theta_over_pi;

  if (r.genus == GenusClass::Genus0ZeroDrift) {
    AngleTheta t = angle_theta(w);
    r.theta = t.theta;
    r.theta_over_pi = t.theta / 3.14159265358979323846;
    try {
      r.lambda = lambda_form(k);
    } catch (const DegenerateBranchPoints&) {
    }
    if (!opts.fast) {
      try {
        LimitPeriods lp = limit_periods(k);
        r.period_ratio = lp.alpha3 / lp.alpha2;
      } catch (const std::exception&) {
      }
    }
  } else if (r.genus == GenusClass::Genus1 && !opts.fast) {
    try {
      Periods per = periods(k, branch_points(k));
      r.period_ratio = per.omega3 / per.omega2;
    } catch (const std::exception&) {
    }
  }

  if (w.exact) {
    r.oracle.ran = true;
    r.oracle.result = delta_order(w);
  } else {
    r.oracle.skipped_reason =
        "weights are inexact: the exact orbit has infinite order by design";
  }

  try {
    r.orbit.ran = true;
    NumericOrbitResult no = numeric_orbit(w, cdouble(0.31, 0.47), 512, opts.tol);
    r.orbit.result.proof_path.kind = ProofPathKind::OrbitOracle;
    if (no.returned) {
      r.orbit.result.verdict = Verdict::Finite;
      r.orbit.result.order = 2 * no.period;
    } else {
      r.orbit.result.verdict = Verdict::UndecidedUpToBound;
      r.orbit.result.bound = no.iterations;
      r.orbit.result.reason = "no return within the iteration cap";
    }
  } catch (const OrbitEscape& e) {
    r.orbit.result.verdict = Verdict::UndecidedUpToBound;
    r.orbit.result.reason = std::string("orbit escaped: ") + e.what();
  } catch (const std::invalid_argument& e) {
    r.orbit.ran = false;
    r.orbit.skipped_reason = e.what();
  }

  check_consistency(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

namespace {

std::string verdict_line(const VerdictReport& v) {
  if (!v.ran) return "skipped (" + v.skipped_reason + ")";
  const GroupOrderResult& g = v.result;
  std::string s = to_string(g.verdict);
  if (g.verdict == Verdict::Finite) s += ", order " + std::to_string(g.order);
  if (g.verdict == Verdict::UndecidedUpToBound)
    s += " (bound " + std::to_string(g.bound) + ")";
  s += " [" + to_string(g.proof_path.kind) + "]";
  if (!g.reason.empty()) s += " " + g.reason;
  return s;
}

nlohmann::json verdict_json(const VerdictReport& v) {
  nlohmann::json j;
  j["ran"] = v.ran;
  if (!v.ran) {
    j["skipped_reason"] = v.skipped_reason;
    return j;
  }
  const GroupOrderResult& g = v.result;
  j["verdict"] = to_string(g.verdict);
  if (g.verdict == Verdict::Finite) j["order"] = g.order;
  if (g.verdict == Verdict::UndecidedUpToBound) j["bound"] = g.bound;
  if (!g.reason.empty()) j["reason"] = g.reason;
  j["proof_path"] = {{"kind", to_string(g.proof_path.kind)}};
  if (g.proof_path.denominator) {
    j["proof_path"]["denominator"] = g.proof_path.denominator;
    j["proof_path"]["tolerance"] = g.proof_path.tolerance;
  }
  if (g.theta_over_pi) j["theta_over_pi"] = fraction_string(*g.theta_over_pi);
  return j;
}

}  // namespace

std::string report_text(const AnalysisReport& r) {
  std::ostringstream os;
  if (!r.name.empty()) os << "walk: " << r.name << "\n";
  os << "genus: " << to_string(r.genus) << "\n";
  os << "drift: (" << rational_string(r.moments.drift_x) << ", "
     << rational_string(r.moments.drift_y) << ")  delta: "
     << rational_string(r.delta) << "\n";
  if (r.theta) {
    os << "theta: " << fmt(*r.theta) << "  theta/pi: " << fmt(*r.theta_over_pi);
    if (r.theta_exact) os << " = " << fraction_string(*r.theta_exact);
    os << "\n";
  }
  if (r.lambda)
    os << "lambda: " << fmt(r.lambda->lambda)
       << "  lambda~: " << fmt(r.lambda->lambda_tilde) << "\n";
  if (r.period_ratio) os << "period ratio: " << fmt(*r.period_ratio) << "\n";
  os << "criterion: " << verdict_line(r.criterion) << "\n";
  os << "oracle:    " << verdict_line(r.oracle) << "\n";
  os << "orbit:     " << verdict_line(r.orbit) << "\n";
  for (const auto& line : r.consistency) os << "  - " << line << "\n";
  os << "consistent: " << (r.consistent ? "yes" : "NO") << "  ("
     << fmt(r.elapsed_ms) << " ms)\n";
  return os.str();
}

std::string report_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  if (!r.name.empty()) j["name"] = r.name;
  j["weights"] = nlohmann::json::parse(r.input_json);
  j["genus"] = to_string(r.genus);
  j["moments"] = {{"drift_x", rational_string(r.moments.drift_x)},
                  {"drift_y", rational_string(r.moments.drift_y)},
                  {"var_x", rational_string(r.moments.var_x)},
                  {"var_y", rational_string(r.moments.var_y)},
                  {"mixed", rational_string(r.moments.mixed)},
                  {"r", r.moments.r}};
  j["delta"] = rational_string(r.delta);
  if (r.theta) j["theta"] = *r.theta;
  if (r.theta_over_pi) j["theta_over_pi"] = *r.theta_over_pi;
  if (r.theta_exact) j["theta_exact"] = fraction_string(*r.theta_exact);
  if (r.lambda) {
    j["lambda"] = r.lambda->lambda;
    j["lambda_tilde"] = r.lambda->lambda_tilde;
  }
  if (r.period_ratio) j["period_ratio"] = *r.period_ratio;
  j["criterion"] = verdict_json(r.criterion);
  j["oracle"] = verdict_json(r.oracle);
  j["orbit"] = verdict_json(r.orbit);
  j["consistency"] = r.consistency;
  j["consistent"] = r.consistent;
  j["elapsed_ms"] = r.elapsed_ms;
  return j.dump(2);
}

std::vector<BatchRow> batch_analyze(
    const std::vector<std::pair<std::string, StepWeights>>& walks,
    const AnalyzeOptions& opts) {
  std::vector<std::future<BatchRow>> futures;
  futures.reserve(walks.size());
  for (const auto& item : walks) {
    futures.push_back(std::async(std::launch::async, [item, &opts] {
      BatchRow row;
      row.name = item.first;
      try {
        AnalysisReport rep = analyze(item.second, opts);
        row.ok = true;
        row.genus = to_string(rep.genus);
        if (rep.theta_exact)
          row.theta_over_pi = fraction_string(*rep.theta_exact);
        else if (rep.theta_over_pi)
          row.theta_over_pi = fmt(*rep.theta_over_pi);
        row.verdict = to_string(rep.criterion.result.verdict);
        if (rep.criterion.result.verdict == Verdict::Finite)
          row.order = std::to_string(rep.criterion.result.order);
        row.oracle = verdict_line(rep.oracle);
        row.agreement = "ok";
      } catch (const InconsistentVerdicts& e) {
        row.error = e.what();
        row.agreement = "clash";
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      return row;
    }));
  }
  std::vector<BatchRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string batch_csv(const std::vector<BatchRow>& rows) {
  std::ostringstream os;
  os << "name,ok,error,genus,theta_over_pi,verdict,order,oracle,agreement\n";
  for (const auto& r : rows) {
    os << csv_cell(r.name) << ',' << (r.ok ? "1" : "0") << ','
       << csv_cell(r.error) << ',' << csv_cell(r.genus) << ','
       << csv_cell(r.theta_over_pi) << ',' << csv_cell(r.verdict) << ','
       << csv_cell(r.order) << ',' << csv_cell(r.oracle) << ','
       << csv_cell(r.agreement) << '\n';
  }
  return os.str();
}

namespace {

StepWeights load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return StepWeights::from_json_text(buf.str());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"group of the walk: classification and cross-validation"};
  app.require_subcommand(1);

  std::string weights_file, catalog_name;
  int nparam = 4;
  AnalyzeOptions opts;
  bool json_out = false;

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "analyze one walk");
  cmd_analyze->add_option("--weights", weights_file,
                          "JSON file with the step weights");
  cmd_analyze->add_option("--catalog", catalog_name, "named catalog walk");
  cmd_analyze->add_option("--n", nparam, "parameter for krsp4");
  cmd_analyze->add_option("--bound", opts.bound, "denominator/iteration cap");
  cmd_analyze->add_option("--tol", opts.tol, "numeric orbit tolerance");
  cmd_analyze->add_flag("--json", json_out, "emit JSON instead of text");
  cmd_analyze->add_flag("--fast", opts.fast, "skip quadrature-heavy parts");

  int count = 20;
  uint64_t seed = 1;
  std::string csv_file;
  bool delta0 = false;
  CLI::App* cmd_batch =
      app.add_subcommand("batch", "random zero-drift walks, one CSV row each");
  cmd_batch->add_option("--count", count, "number of walks");
  cmd_batch->add_option("--seed", seed, "generator seed");
  cmd_batch->add_option("--csv", csv_file, "write CSV here instead of stdout");
  cmd_batch->add_flag("--delta0", delta0, "sample the Delta = 0 family");
  cmd_batch->add_option("--bound", opts.bound, "denominator/iteration cap");
  cmd_batch->add_option("--tol", opts.tol, "numeric orbit tolerance");
  cmd_batch->add_flag("--fast", opts.fast, "skip quadrature-heavy parts");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "check the catalog against known orders");
  cmd_verify->add_option("--n", nparam, "parameter for krsp4");
  cmd_verify->add_flag("--fast", opts.fast, "skip quadrature-heavy parts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_analyze->parsed()) {
      if (weights_file.empty() == catalog_name.empty())
        throw ParseError("pass exactly one of --weights or --catalog");
      StepWeights w;
      std::string name;
      if (!weights_file.empty()) {
        w = load_weights_file(weights_file);
        name = weights_file;
      } else {
        CatalogEntry e = catalog_entry(catalog_name, nparam);
        w = e.weights;
        name = e.name;
      }
      AnalysisReport rep = analyze(w, opts);
      rep.name = name;
      std::fputs((json_out ? report_json(rep) : report_text(rep)).c_str(),
                 stdout);
      if (json_out) std::fputs("\n", stdout);
      return 0;
    }
    if (cmd_batch->parsed()) {
      Rng64 rng(seed);
      std::vector<std::pair<std::string, StepWeights>> walks;
      walks.reserve(count);
      for (int i = 0; i < count; ++i) {
        char nm[32];
        std::snprintf(nm, sizeof nm, "walk-%03d", i + 1);
        walks.emplace_back(nm, delta0 ? random_delta0_walk(rng)
                                      : random_zero_drift_walk(rng));
      }
      std::string csv = batch_csv(batch_analyze(walks, opts));
      if (csv_file.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        std::ofstream out(csv_file);
        if (!out) throw ParseError("cannot write " + csv_file);
        out << csv;
      }
      return 0;
    }
    if (cmd_verify->parsed()) {
      int failures = 0;
      for (const auto& name : catalog_names()) {
        CatalogEntry e = catalog_entry(name, nparam);
        std::string status;
        try {
          AnalysisReport rep = analyze(e.weights, opts);
          const GroupOrderResult& g = rep.criterion.result;
          bool ok;
          if (e.expected_order > 0)
            ok = g.verdict == Verdict::Finite && g.order == e.expected_order;
          else if (e.expected_order == 0)
            ok = g.verdict == Verdict::ProvenInfinite;
          else
            ok = true;
          status = ok ? "[ok]      " : "[mismatch]";
          if (!ok) ++failures;
          std::string expect =
              e.expected_order > 0
                  ? "order " + std::to_string(e.expected_order)
                  : std::string("infinite");
          std::printf("%s %-14s %s (expected %s)\n", status.c_str(),
                      name.c_str(), verdict_line(rep.criterion).c_str(),
                      expect.c_str());
        } catch (const std::exception& ex) {
          ++failures;
          std::printf("[error]    %-14s %s\n", name.c_str(), ex.what());
        }
      }
      return failures;
    }
  } catch (const InconsistentVerdicts& e) {
    std::fprintf(stderr, "inconsistent verdicts: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

}  // namespace walkgroup
