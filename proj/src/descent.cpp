#include "effopt/descent.hpp"

#include <algorithm>

#include "effopt/f1.hpp"

namespace effopt {

void Schedule::validate(int m) const {
  std::vector<bool> seen(m, false);
  for (const auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("empty schedule block");
    for (size_t j = 0; j < block.size(); ++j) {
      int c = block[j];
      if (c < 0 || c >= m) throw std::invalid_argument("block index out of range");
      if (seen[c]) throw std::invalid_argument("coordinate scheduled twice");
      seen[c] = true;
      if (j > 0 && block[j] <= block[j - 1])
        throw std::invalid_argument("block must preserve coordinate order");
    }
  }
  for (int i = 0; i < m; ++i)
    if (!seen[i]) throw std::invalid_argument("schedule does not cover all coordinates");
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::fixed_point: return "FixedPoint";
    case StopReason::max_iter: return "MaxIter";
    case StopReason::target_met: return "TargetMet";
    default: return "NoCertifiedSign";
  }
}

std::optional<StopReason> stop_reason_from_string(const std::string& s) {
  if (s == "FixedPoint") return StopReason::fixed_point;
  if (s == "MaxIter") return StopReason::max_iter;
  if (s == "TargetMet") return StopReason::target_met;
  if (s == "NoCertifiedSign") return StopReason::no_certified_sign;
  return std::nullopt;
}

namespace {

Dyadic inf_distance(std::span<const Dyadic> a, std::span<const Dyadic> b) {
  Dyadic d(0);
  for (size_t i = 0; i < a.size(); ++i) {
    Dyadic e = (a[i] - b[i]).abs();
    if (e > d) d = e;
  }
  return d;
}

}  // namespace

Trace gauss_seidel(const DescentProblem& problem, std::vector<Dyadic> x,
                   const StoppingPolicy& stop) {
  int m = problem.rect.dim();
  problem.schedule.validate(m);
  if (problem.solvers.size() != problem.schedule.blocks.size())
    throw std::invalid_argument("one solver per schedule block required");
  for (const auto& block : problem.schedule.blocks)
    if (block.size() != 1)
      throw std::invalid_argument("only scalar blocks can run (no inner solver ships for larger ones)");
  if (static_cast<int>(x.size()) != m || !problem.rect.contains(x))
    throw std::invalid_argument("start point must lie in the rect");
  if (stop.max_sweeps < 1) throw std::invalid_argument("sweep cap must be >= 1");

  Trace trace;
  trace.iterates.push_back(x);
  trace.values.push_back(problem.objective(x));

  for (int sweep = 1; sweep <= stop.max_sweeps; ++sweep) {
    trace.sweeps = sweep;
    std::vector<InnerStep> steps;
    Dyadic moved(0);
    for (size_t b = 0; b < problem.schedule.blocks.size(); ++b) {
      int coord = problem.schedule.blocks[b][0];
      BlockResult r;
      try {
        r = problem.solvers[b](x, coord);
      } catch (const NoCertifiedSign&) {
        trace.inner_steps.push_back(std::move(steps));
        trace.stop_reason = StopReason::no_certified_sign;
        return trace;
      }
      Dyadic delta = (r.value - x[coord]).abs();
      if (delta > moved) moved = delta;
      x[coord] = r.value;
      steps.push_back({coord, r.value, std::move(r.enclosure)});
    }

    bool fixed = moved <= stop.fixed_point_eps;
    if (stop.kind == StoppingPolicy::Kind::exact_fixed_point && fixed) {
      trace.inner_steps.push_back(std::move(steps));
      trace.stop_reason = StopReason::fixed_point;
      return trace;
    }

    trace.iterates.push_back(x);
    trace.values.push_back(problem.objective(x));
    trace.inner_steps.push_back(std::move(steps));

    if (stop.kind == StoppingPolicy::Kind::target_error) {
      Dyadic bound = Dyadic::pow2(-stop.target_exponent);
      if (stop.oracle_limit) {
        if (inf_distance(x, *stop.oracle_limit) <= bound) {
          trace.stop_reason = StopReason::target_met;
          return trace;
        }
      } else if (moved <= bound) {
        trace.stop_reason = StopReason::target_met;
        trace.heuristic_stop = true;
        return trace;
      }
    }
  }
  trace.stop_reason = StopReason::max_iter;
  return trace;
}

DescentProblem f1_problem(const Rect& rect, const AssignmentPolicy& policy) {
  if (rect.dim() != 2) throw std::invalid_argument("f1 lives on the plane");
  Dyadic a = rect.axis(0).second;
  DescentProblem p{rect, Schedule::coordinatewise(2), {}, {}};
  p.objective = [](const std::vector<Dyadic>& x) {
    return TraceValue{true, Interval(f1_eval(x[0], x[1]))};
  };
  p.solvers = {
      [a, policy](const std::vector<Dyadic>& x, int) {
        return BlockResult{g1_f1(x[1], policy, a), std::nullopt};
      },
      [](const std::vector<Dyadic>& x, int) {
        return BlockResult{g2_f1(x[0]), std::nullopt};
      },
  };
  return p;
}

DescentProblem f2_problem(const F2Params& params, const Rect& rect,
                          const Dyadic& tol, const PrecBudget& budget,
                          int probe_budget, int value_prec) {
  if (rect.dim() != 2) throw std::invalid_argument("f2 lives on the plane");
  params.validate();
  DescentProblem p{rect, Schedule::coordinatewise(2), {}, {}};
  p.objective = [params, value_prec](const std::vector<Dyadic>& x) {
    return TraceValue{false, f2_eval(params, x[0], x[1], value_prec)};
  };
  Interval dom0(rect.axis(0).first, rect.axis(0).second);
  Interval dom1(rect.axis(1).first, rect.axis(1).second);
  p.solvers = {
      [params, dom0, tol, budget, probe_budget](const std::vector<Dyadic>& x, int) {
        DerivOracle d = [&params, &x, probe_budget](const Dyadic& y, int prec) {
          return f2_partial_x1(params, y, x[1], prec, probe_budget).value;
        };
        Interval enc = convex_1d_min(d, dom0, tol, budget).point;
        return BlockResult{enc.midpoint(), enc};
      },
      [params, dom1, tol, budget](const std::vector<Dyadic>& x, int) {
        DerivOracle d = [&params, &x](const Dyadic& y, int prec) {
          return f2_partial_x2(params, x[0], y, prec);
        };
        Interval enc = convex_1d_min(d, dom1, tol, budget).point;
        return BlockResult{enc.midpoint(), enc};
      },
  };
  return p;
}

PartialOracle f1_partials() {
  return [](std::span<const Dyadic> x, int axis) {
    OneSided s = f1_partial(x[0], x[1], axis);
    return std::make_pair(Interval(s.left), Interval(s.right));
  };
}

PartialOracle f2_partials(const F2Params& p, int prec, int probe_budget) {
  return [p, prec, probe_budget](std::span<const Dyadic> x, int axis) {
    Interval d = axis == 0
                     ? f2_partial_x1(p, x[0], x[1], prec, probe_budget).value
                     : f2_partial_x2(p, x[0], x[1], prec);
    return std::make_pair(d, d);
  };
}

bool critical_point_check(const PartialOracle& partials, const Rect& rect,
                          std::span<const Dyadic> x, const Dyadic& tol) {
  if (!rect.contains(x)) throw std::invalid_argument("point must lie in the rect");
  if (tol.sign() < 0) throw std::invalid_argument("tolerance must be >= 0");
  for (int i = 0; i < rect.dim(); ++i) {
    auto [left, right] = partials(x, i);
    bool at_lower = x[i] == rect.axis(i).first;
    bool at_upper = x[i] == rect.axis(i).second;
    // moving up is admissible unless pinned at the top: need d+ >= -tol
    if (!at_upper && right.lo() < -tol) return false;
    // moving down is admissible unless pinned at the bottom: need d- <= tol
    if (!at_lower && left.hi() > tol) return false;
  }
  return true;
}

bool EffectiveReport::all() const { return from(0); }

bool EffectiveReport::from(int k) const {
  if (k >= static_cast<int>(within_contract.size())) return false;
  for (size_t i = k; i < within_contract.size(); ++i)
    if (!within_contract[i]) return false;
  return true;
}

EffectiveReport verify_effective(const Trace& trace,
                                 std::span<const Dyadic> limit) {
  EffectiveReport report;
  for (size_t k = 0; k < trace.iterates.size(); ++k) {
    Dyadic d = inf_distance(trace.iterates[k], limit);
    report.within_contract.push_back(d <= Dyadic::pow2(-static_cast<int>(k)));
  }
  return report;
}

}  // namespace effopt
