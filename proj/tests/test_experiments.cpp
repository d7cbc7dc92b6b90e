#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "effopt/experiments.hpp"
#include "oracles.hpp"

using namespace effopt;

namespace {

GStarParams gstar_half() { return {SequenceSpec::standard(Rat(1, 2)), 53}; }
F2Params f2_default() { return {gstar_half(), Rat(1, 10)}; }
Rect rect22() { return Rect::centered2(Dyadic(2), Dyadic(2)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("f1 convergence experiment passes and is deterministic") {
  ExperimentReport a = exp_f1_convergence(200, 7);
  ExperimentReport b = exp_f1_convergence(200, 7);
  CHECK(a.verdict);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_csv() == b.to_csv());
  ExperimentReport c = exp_f1_convergence(200, 8);
  CHECK(c.verdict);
  CHECK(a.to_json().dump() != c.to_json().dump());

  // every recorded trial obeys the two-sweep bound
  for (const auto& row : a.records) CHECK(row.at("ok").get<bool>());
}

TEST_CASE("report files land on disk with recorded artifact paths") {
  ExperimentReport r = exp_adversarial_stopping(5);
  std::string dir = (std::filesystem::temp_directory_path() / "effopt_reports").string();
  write_report_files(r, dir);
  REQUIRE(r.artifacts.size() == 2);
  std::string json_text = slurp(r.artifacts[0]);
  CHECK(json_text.find("\"stopping-adversary\"") != std::string::npos);
  for (const auto& p : r.artifacts)
    CHECK(json_text.find(p) != std::string::npos);
  std::string csv_text = slurp(r.artifacts[1]);
  CHECK(csv_text.find("kind") == 0);

  // byte-identical on a rerun
  ExperimentReport r2 = exp_adversarial_stopping(5);
  write_report_files(r2, dir);
  CHECK(slurp(r2.artifacts[0]) == json_text);
}

TEST_CASE("f2 reachability experiment: monotone certified approach") {
  ExperimentReport r = exp_f2_reachability(8, Dyadic::pow2(-20), f2_default(),
                                           rect22());
  CHECK(r.verdict);
  // gaps strictly decrease wherever both neighbors certified
  double prev_gap = 0;
  bool have_prev = false;
  for (const auto& row : r.records) {
    if (row.at("side") != "+" || row.at("obstruction").get<bool>()) continue;
    double gap = row.at("gap_hi").get<double>();
    CHECK(gap > 0);
    if (have_prev) CHECK(gap < prev_gap);
    prev_gap = gap;
    have_prev = true;
  }
}

TEST_CASE("reachability with the small limit variant") {
  F2Params p{{SequenceSpec::standard(Rat(1, 20)), 53}, Rat(1, 10)};
  ExperimentReport r = exp_f2_reachability(6, Dyadic::pow2(-20), p, rect22());
  CHECK(r.verdict);
  for (const auto& row : r.records) {
    if (row.at("side") != "+" || row.at("obstruction").get<bool>()) continue;
    // all strictly below -1/20
    double hi = std::stod(row.at("minimizer_hi").get<std::string>());
    CHECK(hi < -0.05);
  }
}

TEST_CASE("approximation gap experiment covers the grid and the threshold") {
  ExperimentReport r = exp_approx_gap({1, 2, 4, 8, 16}, {4, 6, 8, 10, 12});
  CHECK(r.verdict);
  int ramp_rows = 0, constant_rows = 0;
  for (const auto& row : r.records) {
    if (row.at("kind") == "ramp") ++ramp_rows;
    if (row.at("kind") == "constant") {
      ++constant_rows;
      CHECK(row.at("measured_gap") == row.at("certified_bound"));
    }
  }
  CHECK(ramp_rows == 25);
  CHECK(constant_rows == 5);

  // a = 1/2 variant: threshold and step levels are +-1/2
  ExperimentReport half = exp_approx_gap({2, 4}, {6, 8}, Rat(1, 2));
  CHECK(half.verdict);
  CHECK(half.summary.at("threshold_min_1_a") == "0.5");
}

TEST_CASE("adversarial stopping: identical prefixes, separated limits") {
  for (int m : {1, 5, 10, 20}) {
    ExperimentReport r = exp_adversarial_stopping(m);
    CHECK(r.verdict);
    CHECK(r.summary.at("limit_gap").get<std::string>() ==
          rat_string(oracles::pow2(-(m + 1))));
    for (const auto& row : r.records) {
      if (row.at("kind") == "rule") {
        CHECK(row.at("identical").get<bool>());
        CHECK(row.at("reads_standard").get<int>() <= m);
      }
    }
  }
}

TEST_CASE("adversary holds across randomized bases") {
  ExperimentReport r = exp_adversarial_stopping(6, 5, 3);
  CHECK(r.verdict);
  ExperimentReport r2 = exp_adversarial_stopping(6, 5, 3);
  CHECK(r.to_json().dump() == r2.to_json().dump());
  int rule_rows = 0;
  for (const auto& row : r.records)
    if (row.at("kind") == "rule") {
      ++rule_rows;
      CHECK(row.at("identical").get<bool>());
    }
  CHECK(rule_rows == 5 * 2);
}

TEST_CASE("plateau boundary values match the construction") {
  // xi_{K+1} = base + 3 * 2^-(K+2)
  for (int k : {1, 10}) {
    SequenceSpec p = SequenceSpec::plateau(Rat(1, 2), k);
    CHECK(p.term(k + 1) == Rat(1, 2) + 3 * oracles::pow2(-(k + 2)));
    CHECK(p.term(k) == Rat(1, 2) + oracles::pow2(-k));
    CHECK(p.term(k + 1) < p.term(k));
  }
}

TEST_CASE("random dyadic starts have short mantissas and stay in range") {
  SplitMix64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    Dyadic x = random_dyadic(rng, Dyadic(-2), Dyadic(2));
    CHECK(x >= Dyadic(-2));
    CHECK(x <= Dyadic(2));
    CHECK(mpz_sizeinbase(x.mant().get_mpz_t(), 2) <= 22);
  }
}
