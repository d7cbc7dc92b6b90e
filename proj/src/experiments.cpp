#include "effopt/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace effopt {

namespace {

std::string csv_escape(const Json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else
    s = v.dump();
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Json dyadic_cell(const Dyadic& d) { return d.decimal_string(); }

Json rat_cell(const Rat& r) { return rat_string(r); }

double rat_approx(const Rat& r) { return r.get_d(); }

}  // namespace

Json ExperimentReport::to_json() const {
  Json j;
  j["name"] = name;
  j["parameters"] = parameters;
  j["records"] = records;
  if (!summary.empty()) j["summary"] = summary;
  j["verdict"] = verdict;
  j["artifacts"] = artifacts;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::string out;
  if (records.empty()) return out;
  // column set = union of record keys in first-seen order
  std::vector<std::string> columns;
  for (const auto& row : records)
    for (const auto& [key, value] : row.items()) {
      (void)value;
      if (std::find(columns.begin(), columns.end(), key) == columns.end())
        columns.push_back(key);
    }
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : records) {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      if (row.contains(columns[i])) out += csv_escape(row.at(columns[i]));
    }
    out += '\n';
  }
  return out;
}

Dyadic random_dyadic(SplitMix64& rng, const Dyadic& lo, const Dyadic& hi,
                     int bits) {
  uint64_t mask = (bits >= 64) ? ~0ULL : ((1ULL << bits) - 1);
  uint64_t u = rng.next() & mask;
  Dyadic frac(mpz_class(static_cast<unsigned long>(u)), -bits);
  return lo + (hi - lo) * frac;
}

ExperimentReport exp_f1_convergence(int trials, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Rect rect = Rect::centered2(Dyadic(2), Dyadic(2));
  ExperimentReport report;
  report.name = "f1-convergence";
  report.parameters = Json{{"trials", trials}, {"seed", seed}, {"rect", "[-2,2]^2"}};
  SplitMix64 rng(seed);
  std::vector<int> histogram(4, 0);
  bool all_ok = true;

  auto run_one = [&](const std::string& phase, int trial,
                     const AssignmentPolicy& policy, const Dyadic& s1,
                     const Dyadic& s2, int max_changing) {
    Trace t = gauss_seidel(f1_problem(rect, policy), {s1, s2},
                           StoppingPolicy::exact_fixed_point(8));
    const auto& fin = t.iterates.back();
    bool in_segment = fin[0] >= Dyadic(-1) && fin[0] <= Dyadic(1) && fin[1].is_zero();
    bool zero_value = t.values.back().exact && t.values.back().v.lo().is_zero();
    int changing = t.changing_sweeps();
    bool ok = t.stop_reason == StopReason::fixed_point &&
              changing <= max_changing && in_segment && zero_value;
    all_ok = all_ok && ok;
    if (changing >= 0 && changing < 4) ++histogram[changing];
    report.records.push_back(Json{{"phase", phase},
                                  {"trial", trial},
                                  {"start_x1", dyadic_cell(s1)},
                                  {"start_x2", dyadic_cell(s2)},
                                  {"changing_sweeps", changing},
                                  {"final_x1", dyadic_cell(fin[0])},
                                  {"final_x2", dyadic_cell(fin[1])},
                                  {"final_value", dyadic_cell(t.values.back().v.lo())},
                                  {"ok", ok}});
  };

  AssignmentPolicy mid = AssignmentPolicy::fixed(Dyadic(0));
  Dyadic two(2);
  for (int i = 0; i < trials; ++i) {
    Dyadic s1 = random_dyadic(rng, -two, two);
    Dyadic s2 = random_dyadic(rng, -two, two);
    run_one("random", i, mid, s1, s2, 2);
  }
  int axis_trials = std::max(1, trials / 10);
  for (int i = 0; i < axis_trials; ++i) {
    Dyadic s1 = random_dyadic(rng, -two, two);
    run_one("axis_start", i, mid, s1, Dyadic(0), 1);
  }
  for (int i = 0; i < axis_trials; ++i) {
    Dyadic s1 = random_dyadic(rng, -two, two);
    Dyadic s2 = random_dyadic(rng, Dyadic::pow2(-10), two);
    run_one("alpha_right_end", i, AssignmentPolicy::fixed(Dyadic(-1)), s1, s2, 1);
  }

  report.summary =
      Json{{"histogram_changing_sweeps",
            Json{{"0", histogram[0]}, {"1", histogram[1]}, {"2", histogram[2]},
                 {"3", histogram[3]}}}};
  report.verdict = all_ok;
  return report;
}

ExperimentReport exp_f2_reachability(int k_max, const Dyadic& tol,
                                     const F2Params& params, const Rect& rect,
                                     const PrecBudget& budget, int probe_budget) {
  if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
  params.validate();
  ExperimentReport report;
  report.name = "f2-reachability";
  Rat limit = params.gstar.seq.limit();
  report.parameters = Json{
      {"k_max", k_max},
      {"tol", tol.to_string()},
      {"xi_limit", rat_cell(limit)},
      {"alpha", rat_cell(params.alpha)},
      {"sequence", params.gstar.seq.kind() == SequenceSpec::Kind::standard
                       ? "standard"
                       : "plateau"}};

  struct Row {
    int k;
    bool certified;
    Interval enc;
  };
  std::vector<Row> plus, minus;
  for (int side = 0; side < 2; ++side) {
    for (int k = 1; k <= k_max; ++k) {
      Dyadic x2 = Dyadic::pow2(-k);
      if (side == 1) x2 = -x2;
      Json row{{"side", side == 0 ? "+" : "-"}, {"k", k},
               {"x2", dyadic_cell(x2)}};
      try {
        Interval enc = g1_f2(params, x2, tol, rect, budget, probe_budget);
        row["minimizer_lo"] = dyadic_cell(enc.lo());
        row["minimizer_hi"] = dyadic_cell(enc.hi());
        // distance of the enclosure from the approached endpoint -+limit
        Rat target = side == 0 ? -limit : limit;
        Rat gap_lo = side == 0 ? target - to_rat(enc.hi()) : to_rat(enc.lo()) - target;
        Rat gap_hi = side == 0 ? target - to_rat(enc.lo()) : to_rat(enc.hi()) - target;
        row["gap_lo"] = rat_approx(gap_lo);
        row["gap_hi"] = rat_approx(gap_hi);
        row["obstruction"] = false;
        (side == 0 ? plus : minus).push_back({k, true, enc});
      } catch (const NoCertifiedSign& e) {
        row["minimizer_lo"] = "";
        row["minimizer_hi"] = "";
        row["gap_lo"] = "";
        row["gap_hi"] = "";
        row["obstruction"] = true;
        row["obstruction_at"] = e.at.to_string();
        (side == 0 ? plus : minus).push_back({k, false, Interval()});
      }
      report.records.push_back(std::move(row));
    }
  }

  bool ok = true;
  int certified_rows = 0;
  for (int side = 0; side < 2; ++side) {
    const auto& rows = side == 0 ? plus : minus;
    const Row* prev = nullptr;
    for (const auto& r : rows) {
      if (!r.certified) continue;
      ++certified_rows;
      if (side == 0) {
        // strictly below -limit, strictly increasing with k
        ok = ok && to_rat(r.enc.hi()) < -limit;
        if (prev) ok = ok && r.enc.lo() > prev->enc.hi();
      } else {
        ok = ok && to_rat(r.enc.lo()) > limit;
        if (prev) ok = ok && r.enc.hi() < prev->enc.lo();
      }
      prev = &r;
    }
  }
  ok = ok && certified_rows >= 2;
  report.summary = Json{{"certified_rows", certified_rows},
                        {"note", "only the two endpoints -+limit are approached; "
                                 "the whole flat segment never is"}};
  report.verdict = ok;
  return report;
}

ExperimentReport exp_approx_gap(const std::vector<long>& lipschitz,
                                const std::vector<int>& delta_exponents,
                                const Rat& a) {
  if (lipschitz.empty() || delta_exponents.empty())
    throw std::invalid_argument("parameter lists must be nonempty");
  if (!(a > 0)) throw std::invalid_argument("a must be positive");
  ExperimentReport report;
  report.name = "approx-gap";
  Rat amp_rat = a < 1 ? a : Rat(1);
  if (!is_dyadic(amp_rat))
    throw std::invalid_argument("rect half-width a must be dyadic here");
  Dyadic amp = to_dyadic_exact(amp_rat);
  report.parameters = Json{{"L", Json(lipschitz)},
                           {"delta_exponents", Json(delta_exponents)},
                           {"a", rat_cell(a)},
                           {"step_amplitude", dyadic_cell(amp)}};
  bool ok = true;

  for (long L : lipschitz) {
    for (int e : delta_exponents) {
      Dyadic delta = Dyadic::pow2(-e);
      auto ramp = [&](const Dyadic& x) {
        Dyadic y = -(Dyadic(L) * x);
        if (y > amp) return amp;
        if (y < -amp) return -amp;
        return y;
      };
      Dyadic measured = approx_gap(ramp, delta, amp);
      Dyadic bound = amp - Dyadic(L) * delta;
      if (bound.sign() < 0) bound = Dyadic(0);
      bool row_ok = measured >= bound;
      ok = ok && row_ok;
      report.records.push_back(Json{{"kind", "ramp"},
                                    {"L", L},
                                    {"delta", dyadic_cell(delta)},
                                    {"measured_gap", dyadic_cell(measured)},
                                    {"certified_bound", dyadic_cell(bound)},
                                    {"ok", row_ok}});
    }
  }
  // constant approximant: distance to the step is the full amplitude
  for (int e : delta_exponents) {
    Dyadic delta = Dyadic::pow2(-e);
    Dyadic measured = approx_gap([](const Dyadic&) { return Dyadic(0); }, delta, amp);
    bool row_ok = measured == amp;
    ok = ok && row_ok;
    report.records.push_back(Json{{"kind", "constant"},
                                  {"L", 0},
                                  {"delta", dyadic_cell(delta)},
                                  {"measured_gap", dyadic_cell(measured)},
                                  {"certified_bound", dyadic_cell(amp)},
                                  {"ok", row_ok}});
  }
  // the step itself (discontinuous, not Lipschitz): gap zero, sanity row
  {
    Dyadic delta = Dyadic::pow2(-delta_exponents.front());
    auto step = [&](const Dyadic& x) {
      if (x.sign() < 0) return amp;
      if (x.sign() > 0) return -amp;
      return Dyadic(0);
    };
    Dyadic measured = approx_gap(step, delta, amp);
    bool row_ok = measured.is_zero();
    ok = ok && row_ok;
    report.records.push_back(Json{{"kind", "step_itself"},
                                  {"L", -1},
                                  {"delta", dyadic_cell(delta)},
                                  {"measured_gap", dyadic_cell(measured)},
                                  {"certified_bound", "0"},
                                  {"ok", row_ok}});
  }
  report.summary = Json{{"threshold_min_1_a", dyadic_cell(amp)}};
  report.verdict = ok;
  return report;
}

ExperimentReport exp_adversarial_stopping(int budget, int trials, uint64_t seed,
                                          const Rat& xi_base) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  ExperimentReport report;
  report.name = "stopping-adversary";
  report.parameters = Json{{"budget", budget},
                           {"trials", trials},
                           {"seed", seed},
                           {"xi_base", rat_cell(xi_base)}};
  SplitMix64 rng(seed);
  Rat gap, expected_gap = SequenceSpec::pow2_rat(-(budget + 1));
  Rat quarter_gap = SequenceSpec::pow2_rat(-(budget + 2));

  // Stopping rules run as black boxes with the read budget enforced.
  using Rule = std::function<Rat(CountingSequence&)>;
  std::vector<std::pair<std::string, Rule>> rules = {
      {"term_at_budget", [budget](CountingSequence& s) { return s(budget); }},
      {"first_small_gap",
       [budget](CountingSequence& s) {
         Rat prev = s(1);
         Rat threshold = SequenceSpec::pow2_rat(-budget);
         for (int n = 2; n <= budget; ++n) {
           Rat cur = s(n);
           if (prev - cur <= threshold) return cur;
           prev = cur;
         }
         return prev;
       }},
  };

  bool ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    Rat base = trial == 0
                   ? xi_base
                   : to_rat(random_dyadic(rng, *Dyadic::parse("1/4"),
                                          *Dyadic::parse("3/4"), 16));
    SequenceSpec honest = SequenceSpec::standard(base);
    SequenceSpec hidden = SequenceSpec::plateau(base, budget);

    for (int n = 1; n <= budget; ++n) {
      bool equal = honest.term(n) == hidden.term(n);
      ok = ok && equal;
      report.records.push_back(Json{{"kind", "prefix"},
                                    {"trial", trial},
                                    {"n", n},
                                    {"standard_term", rat_cell(honest.term(n))},
                                    {"plateau_term", rat_cell(hidden.term(n))},
                                    {"equal", equal}});
    }
    // strict decrease of the plateau branch across its hidden corner
    for (int n = budget; n <= budget + 2; ++n) {
      bool dec = hidden.term(n + 1) < hidden.term(n);
      ok = ok && dec;
      report.records.push_back(Json{{"kind", "plateau_decrease"},
                                    {"trial", trial},
                                    {"n", n},
                                    {"standard_term", rat_cell(hidden.term(n))},
                                    {"plateau_term", rat_cell(hidden.term(n + 1))},
                                    {"equal", dec}});
    }

    gap = hidden.limit() - honest.limit();
    ok = ok && gap == expected_gap;

    for (const auto& [rule_name, rule] : rules) {
      CountingSequence view_std(honest, budget), view_plt(hidden, budget);
      Rat out_std = rule(view_std);
      Rat out_plt = rule(view_plt);
      bool identical = out_std == out_plt;
      Rat err_std = abs(out_std - honest.limit());
      Rat err_plt = abs(out_plt - hidden.limit());
      Rat worst = err_std > err_plt ? err_std : err_plt;
      bool refutes = worst >= quarter_gap;
      ok = ok && identical && refutes;
      report.records.push_back(Json{{"kind", "rule"},
                                    {"trial", trial},
                                    {"rule", rule_name},
                                    {"output_standard", rat_cell(out_std)},
                                    {"output_plateau", rat_cell(out_plt)},
                                    {"identical", identical},
                                    {"worst_error", rat_approx(worst)},
                                    {"reads_standard", view_std.reads()},
                                    {"reads_plateau", view_plt.reads()}});
    }
  }

  report.summary = Json{{"limit_gap", rat_cell(gap)},
                        {"limit_gap_expected", rat_cell(expected_gap)},
                        {"gap_exact", gap == expected_gap},
                        {"no_error_guarantee_below", rat_cell(quarter_gap)}};
  report.verdict = ok;
  return report;
}

void write_report_files(ExperimentReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::path json_path = fs::path(dir) / (report.name + ".json");
  fs::path csv_path = fs::path(dir) / (report.name + ".csv");
  report.artifacts = {json_path.string(), csv_path.string()};
  std::ofstream jf(json_path);
  jf << report.to_json().dump(2) << "\n";
  std::ofstream cf(csv_path);
  cf << report.to_csv();
}

}  // namespace effopt
