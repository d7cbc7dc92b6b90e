// effopt: exact-arithmetic coordinate-descent laboratory.
//
// Subcommands: eval | optimize | experiment | schema.
// Exit codes: 0 success/pass, 1 validation error, 2 experiment verdict fail,
// 3 certified-sign obstruction.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "effopt/experiments.hpp"
#include "effopt/f1.hpp"

namespace {

using namespace effopt;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerdictFail = 2;
constexpr int kExitObstruction = 3;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_prec() {
  if (const char* env = std::getenv("EFFOPT_PREC")) {
    try {
      int p = std::stoi(env);
      if (p >= 1) return p;
    } catch (const std::exception&) {
    }
    throw ValidationError("EFFOPT_PREC must be a positive integer");
  }
  return 53;
}

Dyadic parse_dyadic_or_fail(const std::string& text, const std::string& what) {
  auto d = Dyadic::parse(text);
  if (!d)
    throw ValidationError(what + " '" + text +
                          "' is not an exact binary rational (use p/q with a "
                          "power-of-two q, an exactly representable decimal, "
                          "or 2^-k); refusing to round silently");
  return *d;
}

Rat parse_rat_or_fail(const std::string& text, const std::string& what) {
  auto r = parse_rational(text);
  if (!r) throw ValidationError(what + " '" + text + "' is not a rational");
  return *r;
}

std::vector<Dyadic> parse_point(const std::string& text, size_t dim) {
  std::vector<Dyadic> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_dyadic_or_fail(piece, "coordinate"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != dim)
    throw ValidationError("expected " + std::to_string(dim) + " coordinates");
  return out;
}

struct CorpusOptions {
  std::string xi_star = "1/2";
  std::string sequence = "standard";
  int hidden_k = 20;
  std::string alpha = "1/10";
  int terms = 53;
  int probe_budget = 64;

  void attach(CLI::App* cmd) {
    cmd->add_option("--xi-star", xi_star,
                    "limit of the xi-sequence (rational), default 1/2");
    cmd->add_option("--seq", sequence, "sequence kind: standard | plateau")
        ->check(CLI::IsMember({"standard", "plateau"}));
    cmd->add_option("--hidden-k", hidden_k, "plateau hidden index");
    cmd->add_option("--alpha", alpha, "curvature parameter (rational > 0)");
    cmd->add_option("--terms", terms, "series truncation depth");
    cmd->add_option("--probe-budget", probe_budget,
                    "how many sequence terms membership tests may read");
  }

  GStarParams gstar() const {
    Rat base = parse_rat_or_fail(xi_star, "--xi-star");
    SequenceSpec seq = sequence == "plateau" ? SequenceSpec::plateau(base, hidden_k)
                                             : SequenceSpec::standard(base);
    return GStarParams{seq, terms};
  }

  F2Params f2() const {
    Rat a = parse_rat_or_fail(alpha, "--alpha");
    if (!(a > 0)) throw ValidationError("--alpha must be positive");
    return F2Params{gstar(), a};
  }
};

Rect parse_rect(const std::string& text) {
  size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw ValidationError("--rect expects 'a,b' for [-a,a]x[-b,b]");
  Dyadic a = parse_dyadic_or_fail(text.substr(0, comma), "rect half-width a");
  Dyadic b = parse_dyadic_or_fail(text.substr(comma + 1), "rect half-width b");
  if (a.sign() <= 0 || b.sign() <= 0)
    throw ValidationError("rect half-widths must be positive (a < b per axis)");
  return Rect::centered2(a, b);
}

AssignmentPolicy parse_policy(const std::string& text, const Dyadic& a) {
  if (text == "midpoint") return AssignmentPolicy::mid();
  if (text == "left") return AssignmentPolicy::left();
  if (text == "right") return AssignmentPolicy::right();
  if (text.rfind("fixed:", 0) == 0) {
    Dyadic v = parse_dyadic_or_fail(text.substr(6), "--policy fixed value");
    Dyadic level = a < Dyadic(1) ? a : Dyadic(1);
    if (v < -level || v > level)
      throw ValidationError("fixed policy value outside the admissible segment [-" +
                            level.to_string() + ", " + level.to_string() + "]");
    return AssignmentPolicy::fixed(v);
  }
  throw ValidationError("--policy must be midpoint | left | right | fixed:<dyadic>");
}

void print_enclosure(const std::string& label, const Interval& v) {
  if (v.is_point()) {
    std::cout << label << " = " << v.lo().to_string() << " (= "
              << v.lo().decimal_string() << ", exact)\n";
    return;
  }
  std::cout << label << " in [" << v.lo().to_string() << ", "
            << v.hi().to_string() << "]\n";
  std::cout << "  ~ [" << v.lo().to_double() << ", " << v.hi().to_double()
            << "], width " << v.width().to_double() << "\n";
}

int run_eval(const std::string& fn, const std::string& at,
             const CorpusOptions& corpus, int prec) {
  if (fn == "f1") {
    auto x = parse_point(at, 2);
    Dyadic v = f1_eval(x[0], x[1]);
    std::cout << "f1(" << x[0].decimal_string() << ", " << x[1].decimal_string()
              << ") = " << v.to_string() << " (= " << v.decimal_string()
              << ", exact)\n";
    return kExitOk;
  }
  if (fn == "gstar") {
    auto x = parse_point(at, 1);
    GStarParams p = corpus.gstar();
    print_enclosure("gstar(" + x[0].decimal_string() + ")",
                    gstar_eval(p, x[0], p.default_terms));
    return kExitOk;
  }
  if (fn == "gstar-deriv") {
    auto x = parse_point(at, 1);
    GStarParams p = corpus.gstar();
    SlopeEnclosure s = gstar_deriv(p, x[0], p.default_terms, corpus.probe_budget);
    print_enclosure("gstar'(" + x[0].decimal_string() + ")", s.value);
    std::cout << "  certification: "
              << (s.cert == SlopeCert::certified ? "full" : "one-sided") << "\n";
    return kExitOk;
  }
  if (fn == "f2") {
    auto x = parse_point(at, 2);
    print_enclosure("f2(" + x[0].decimal_string() + ", " + x[1].decimal_string() + ")",
                    f2_eval(corpus.f2(), x[0], x[1], prec));
    return kExitOk;
  }
  throw ValidationError("unknown function '" + fn + "' (f1 | f2 | gstar | gstar-deriv)");
}

int run_optimize(const std::string& fn, const std::string& start_text,
                 const std::string& rect_text, const std::string& policy_text,
                 const std::string& stop_text, const std::string& limit_text,
                 int max_sweeps, const std::string& tol_text,
                 const CorpusOptions& corpus, int prec,
                 const std::string& out_path) {
  Rect rect = parse_rect(rect_text);
  std::vector<Dyadic> start =
      start_text.empty() ? rect.midpoint() : parse_point(start_text, 2);
  if (!rect.contains(start))
    throw ValidationError("start point lies outside the rect");

  StoppingPolicy stop = StoppingPolicy::exact_fixed_point(max_sweeps);
  if (stop_text == "exact") {
    stop = StoppingPolicy::exact_fixed_point(max_sweeps);
  } else if (stop_text.rfind("eps:", 0) == 0) {
    stop = StoppingPolicy::eps_fixed_point(
        parse_dyadic_or_fail(stop_text.substr(4), "--stop eps"), max_sweeps);
  } else if (stop_text.rfind("target:", 0) == 0) {
    int M = 0;
    try {
      M = std::stoi(stop_text.substr(7));
    } catch (const std::exception&) {
      throw ValidationError("--stop target:<M> needs an integer exponent");
    }
    if (!limit_text.empty())
      stop = StoppingPolicy::target(M, parse_point(limit_text, 2), max_sweeps);
    else
      stop = StoppingPolicy::target_heuristic(M, max_sweeps);
  } else if (stop_text == "sweeps") {
    stop = StoppingPolicy::run_sweeps(max_sweeps);
  } else {
    throw ValidationError("--stop must be exact | eps:<dyadic> | target:<M> | sweeps");
  }

  Trace trace;
  if (fn == "f1") {
    AssignmentPolicy policy = parse_policy(policy_text, rect.axis(0).second);
    trace = gauss_seidel(f1_problem(rect, policy), start, stop);
  } else if (fn == "f2") {
    Dyadic tol = parse_dyadic_or_fail(tol_text, "--tol");
    if (tol.sign() <= 0) throw ValidationError("--tol must be positive");
    if (stop.kind == StoppingPolicy::Kind::exact_fixed_point &&
        stop.fixed_point_eps.is_zero())
      stop = StoppingPolicy::eps_fixed_point(tol.mul_pow2(1), max_sweeps);
    PrecBudget budget{prec, std::max(prec * 32, 2048)};
    trace = gauss_seidel(
        f2_problem(corpus.f2(), rect, tol, budget, corpus.probe_budget, prec),
        start, stop);
  } else {
    throw ValidationError("unknown function '" + fn + "' (f1 | f2)");
  }

  Json j = trace_to_json(trace);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot open output file " + out_path);
    out << j.dump(2) << "\n";
    std::cout << "trace written to " << out_path << "\n";
  }
  return trace.stop_reason == StopReason::no_certified_sign ? kExitObstruction
                                                            : kExitOk;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    out.push_back(std::stol(text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_delta_list(const std::string& text) {
  // entries like "2^-4" (or bare exponents like "4")
  std::vector<int> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (piece.rfind("2^-", 0) == 0)
      out.push_back(std::stoi(piece.substr(3)));
    else
      out.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_experiment(const std::string& name, int trials, uint64_t seed, int k_max,
                   int budget, const std::string& l_list,
                   const std::string& delta_list, const std::string& a_text,
                   const std::string& tol_text, const CorpusOptions& corpus,
                   const std::string& out_dir) {
  ExperimentReport report;
  if (name == "f1-convergence") {
    report = exp_f1_convergence(trials > 0 ? trials : 1000, seed);
  } else if (name == "f2-reachability") {
    Dyadic tol = parse_dyadic_or_fail(tol_text, "--tol");
    report = exp_f2_reachability(k_max, tol, corpus.f2(),
                                 Rect::centered2(Dyadic(2), Dyadic(2)),
                                 PrecBudget{}, corpus.probe_budget);
  } else if (name == "approx-gap") {
    report = exp_approx_gap(parse_long_list(l_list), parse_delta_list(delta_list),
                            parse_rat_or_fail(a_text, "--a"));
  } else if (name == "stopping-adversary") {
    report = exp_adversarial_stopping(
        budget, trials > 0 ? trials : 1, seed,
        parse_rat_or_fail(corpus.xi_star, "--xi-star"));
  } else {
    throw ValidationError(
        "unknown experiment '" + name +
        "' (f1-convergence | f2-reachability | approx-gap | stopping-adversary)");
  }
  write_report_files(report, out_dir);
  std::cout << "experiment " << report.name << ": "
            << (report.verdict ? "PASS" : "FAIL") << "\n";
  for (const auto& path : report.artifacts) std::cout << "  " << path << "\n";
  return report.verdict ? kExitOk : kExitVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic coordinate-descent laboratory"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a corpus function");
  std::string eval_fn, eval_at;
  CorpusOptions eval_corpus;
  int eval_prec = 0;
  eval_cmd->add_option("function", eval_fn, "f1 | f2 | gstar | gstar-deriv")
      ->required();
  eval_cmd->add_option("--at", eval_at, "evaluation point (comma separated)")
      ->required();
  eval_corpus.attach(eval_cmd);
  eval_cmd->add_option("--prec", eval_prec, "precision in bits");

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "run block Gauss-Seidel");
  std::string opt_fn, opt_start, opt_rect = "2,2", opt_policy = "midpoint";
  std::string opt_stop = "exact", opt_limit, opt_tol = "2^-20", opt_out;
  int opt_max_sweeps = 16, opt_prec = 0;
  CorpusOptions opt_corpus;
  opt_cmd->add_option("function", opt_fn, "f1 | f2")->required();
  opt_cmd->add_option("--start", opt_start, "start point x1,x2 (default: rect midpoint)");
  opt_cmd->add_option("--rect", opt_rect, "half-widths a,b of [-a,a]x[-b,b]");
  opt_cmd->add_option("--policy", opt_policy,
                      "tie-break at segments: midpoint | left | right | fixed:<v>");
  opt_cmd->add_option("--stop", opt_stop,
                      "exact | eps:<dyadic> | target:<M> | sweeps");
  opt_cmd->add_option("--limit", opt_limit, "exact limit for target stopping");
  opt_cmd->add_option("--max-sweeps", opt_max_sweeps, "sweep cap");
  opt_cmd->add_option("--tol", opt_tol, "inner argmin tolerance (f2)");
  opt_corpus.attach(opt_cmd);
  opt_cmd->add_option("--prec", opt_prec, "precision in bits");
  opt_cmd->add_option("--out", opt_out, "write trace JSON here instead of stdout");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a scripted experiment");
  std::string exp_name, exp_l = "1,2,4,8,16", exp_delta = "2^-4,2^-8,2^-12";
  std::string exp_a = "2", exp_tol = "2^-20", exp_out_dir = "reports";
  int exp_trials = 0, exp_kmax = 12, exp_budget = 10;
  uint64_t exp_seed = 7;
  CorpusOptions exp_corpus;
  exp_cmd->add_option("name", exp_name,
                      "f1-convergence | f2-reachability | approx-gap | stopping-adversary")
      ->required();
  exp_cmd->add_option("--trials", exp_trials,
                      "trial count (default: per experiment)");
  exp_cmd->add_option("--seed", exp_seed, "random seed");
  exp_cmd->add_option("--k-max", exp_kmax, "largest k for x2 = 2^-k");
  exp_cmd->add_option("--budget", exp_budget, "query budget m");
  exp_cmd->add_option("--L", exp_l, "Lipschitz constants, comma separated");
  exp_cmd->add_option("--delta", exp_delta, "offsets, e.g. 2^-4,2^-8");
  exp_cmd->add_option("--a", exp_a, "rect half-width for the gap experiment");
  exp_cmd->add_option("--tol", exp_tol, "argmin tolerance");
  exp_corpus.attach(exp_cmd);
  exp_cmd->add_option("--out-dir", exp_out_dir, "report output directory");

  // schema
  auto* schema_cmd = app.add_subcommand("schema", "print trace/report JSON schemas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    int prec = default_prec();
    if (schema_cmd->parsed()) {
      Json j{{"trace", trace_schema()}, {"report", report_schema()}};
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    if (eval_cmd->parsed())
      return run_eval(eval_fn, eval_at, eval_corpus,
                      eval_prec > 0 ? eval_prec : prec);
    if (opt_cmd->parsed())
      return run_optimize(opt_fn, opt_start, opt_rect, opt_policy, opt_stop,
                          opt_limit, opt_max_sweeps, opt_tol, opt_corpus,
                          opt_prec > 0 ? opt_prec : prec, opt_out);
    if (exp_cmd->parsed())
      return run_experiment(exp_name, exp_trials, exp_seed, exp_kmax, exp_budget,
                            exp_l, exp_delta, exp_a, exp_tol, exp_corpus,
                            exp_out_dir);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const effopt::NoCertifiedSign& e) {
    std::cerr << "obstruction: " << e.what() << "\n";
    return kExitObstruction;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
