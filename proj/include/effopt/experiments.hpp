#pragma once

#include <cstdint>

#include "effopt/json_io.hpp"

namespace effopt {

// Machine-readable record of one scripted run.  The verdict is computed only
// from the recorded rows; identical (seed, parameters) give byte-identical
// files.
struct ExperimentReport {
  std::string name;
  Json parameters = Json::object();
  Json records = Json::array();
  Json summary = Json::object();
  bool verdict = false;
  std::vector<std::string> artifacts;

  Json to_json() const;
  std::string to_csv() const;  // one flat row per record
};

struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// lo + (hi-lo) * u / 2^bits with u uniform on [0, 2^bits); keeps mantissas
// short so exact traces stay compact.
Dyadic random_dyadic(SplitMix64& rng, const Dyadic& lo, const Dyadic& hi,
                     int bits = 20);

// Every start reaches an exact fixed point of the f1 run in at most two
// changing sweeps; axis starts and the right fixed policy need only one.
ExperimentReport exp_f1_convergence(int trials, uint64_t seed);

// Table of certified block-1 minimizers of f2 at x2 = +-2^-k: monotone
// approach toward -+limit from strictly outside, never reaching it.
ExperimentReport exp_f2_reachability(int k_max, const Dyadic& tol,
                                     const F2Params& params,
                                     const Rect& rect,
                                     const PrecBudget& budget = {},
                                     int probe_budget = 64);

// Measured distance of Lipschitz ramps from the two-level step versus the
// certified bound amp - L*delta.
ExperimentReport exp_approx_gap(const std::vector<long>& lipschitz,
                                const std::vector<int>& delta_exponents,
                                const Rat& a = Rat(2));

// Two sequences agreeing bit-exactly on the first m terms whose limits differ
// by exactly 2^-(m+1).  Every stopping rule restricted to m queries answers
// the same on both, so no 2^-(m+2) error guarantee can hold for both at once.
// Trial 0 uses xi_base; further trials redraw the base at random.
ExperimentReport exp_adversarial_stopping(int budget, int trials = 1,
                                          uint64_t seed = 7,
                                          const Rat& xi_base = Rat(1, 2));

// Writes <dir>/<name>.json and <dir>/<name>.csv, recording both paths in the
// report's artifact list (and hence in the emitted json).
void write_report_files(ExperimentReport& report, const std::string& dir);

}  // namespace effopt
