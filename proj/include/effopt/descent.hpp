#pragma once

#include <optional>
#include <string>

#include "effopt/argmin.hpp"

namespace effopt {

// Ordered partition of coordinate indices into update blocks.  Multi-
// coordinate blocks validate but only scalar blocks can run: the shipped
// inner solvers are one-dimensional.
struct Schedule {
  std::vector<std::vector<int>> blocks;

  static Schedule coordinatewise(int m) {
    Schedule s;
    for (int i = 0; i < m; ++i) s.blocks.push_back({i});
    return s;
  }

  void validate(int m) const;
};

enum class StopReason { fixed_point, max_iter, target_met, no_certified_sign };
std::string to_string(StopReason r);
std::optional<StopReason> stop_reason_from_string(const std::string& s);

struct StoppingPolicy {
  enum class Kind { max_iter, exact_fixed_point, target_error };
  Kind kind = Kind::exact_fixed_point;
  int max_sweeps = 64;  // safety cap for every kind
  // Fixed-point slack: 0 demands bit-exact repeats (f1 path); enclosure-based
  // paths pass a positive epsilon.
  Dyadic fixed_point_eps;
  int target_exponent = 0;
  // With a limit the 2^-M claim is verified exactly; without one the stop is
  // a heuristic on successive iterates and the trace says so.
  std::optional<std::vector<Dyadic>> oracle_limit;

  static StoppingPolicy run_sweeps(int n) {
    return {Kind::max_iter, n, Dyadic(), 0, std::nullopt};
  }
  static StoppingPolicy exact_fixed_point(int cap = 64) {
    return {Kind::exact_fixed_point, cap, Dyadic(), 0, std::nullopt};
  }
  static StoppingPolicy eps_fixed_point(Dyadic eps, int cap = 64) {
    return {Kind::exact_fixed_point, cap, std::move(eps), 0, std::nullopt};
  }
  static StoppingPolicy target(int M, std::vector<Dyadic> limit, int cap = 256) {
    return {Kind::target_error, cap, Dyadic(), M, std::move(limit)};
  }
  static StoppingPolicy target_heuristic(int M, int cap = 256) {
    return {Kind::target_error, cap, Dyadic(), M, std::nullopt};
  }
};

struct TraceValue {
  bool exact = true;
  Interval v;
};

struct InnerStep {
  int coord = 0;
  Dyadic value;
  std::optional<Interval> enclosure;
};

// Full history of one run.  iterates[k] is the state after sweep k
// (iterates[0] = start); a terminating no-move sweep is not duplicated.
struct Trace {
  std::vector<std::vector<Dyadic>> iterates;
  std::vector<TraceValue> values;
  std::vector<std::vector<InnerStep>> inner_steps;
  StopReason stop_reason = StopReason::max_iter;
  int sweeps = 0;  // sweeps executed, including a final no-move sweep
  bool heuristic_stop = false;

  int changing_sweeps() const { return static_cast<int>(iterates.size()) - 1; }
};

struct BlockResult {
  Dyadic value;
  std::optional<Interval> enclosure;
};
using BlockSolver = std::function<BlockResult(const std::vector<Dyadic>&, int coord)>;

struct DescentProblem {
  Rect rect;
  Schedule schedule;
  std::function<TraceValue(const std::vector<Dyadic>&)> objective;
  std::vector<BlockSolver> solvers;  // one per schedule block
};

Trace gauss_seidel(const DescentProblem& problem, std::vector<Dyadic> x0,
                   const StoppingPolicy& stop);

// Ready-made problems for the two corpus functions.
DescentProblem f1_problem(const Rect& rect, const AssignmentPolicy& policy);
DescentProblem f2_problem(const F2Params& p, const Rect& rect, const Dyadic& tol,
                          const PrecBudget& budget = {}, int probe_budget = 64,
                          int value_prec = 64);

// Left/right one-sided partial enclosures per axis.
using PartialOracle =
    std::function<std::pair<Interval, Interval>(std::span<const Dyadic>, int axis)>;

PartialOracle f1_partials();
PartialOracle f2_partials(const F2Params& p, int prec, int probe_budget = 64);

// First-order test against the box: along every admissible direction the
// one-sided slope must not be certified below -tol.
bool critical_point_check(const PartialOracle& partials, const Rect& rect,
                          std::span<const Dyadic> x, const Dyadic& tol);

struct EffectiveReport {
  std::vector<bool> within_contract;  // |x^(k) - limit|_inf <= 2^-k, per k
  bool all() const;
  bool from(int k) const;  // contract holds for every index >= k
};

EffectiveReport verify_effective(const Trace& trace,
                                 std::span<const Dyadic> limit);

}  // namespace effopt
