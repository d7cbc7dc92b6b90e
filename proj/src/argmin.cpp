#include "effopt/argmin.hpp"

#include <optional>
#include <queue>

#include "effopt/f1.hpp"

namespace effopt {

namespace {

Dyadic step_level(const Dyadic& a) {
  if (a.sign() <= 0) throw std::invalid_argument("rect half-width must be positive");
  Dyadic one(1);
  return a < one ? a : one;
}

// Certified sign of the derivative at x, escalating precision within the
// budget.  nullopt = enclosure straddles zero even at budget.max.
std::optional<int> certified_sign(const DerivOracle& deriv, const Dyadic& x,
                                  const PrecBudget& budget) {
  int p = budget.start;
  for (;;) {
    Interval d = deriv(x, p);
    if (d.lo().sign() > 0) return 1;
    if (d.hi().sign() < 0) return -1;
    if (d.is_point() && d.lo().is_zero()) return 0;
    if (p >= budget.max) return std::nullopt;
    p = std::min(p * 2, budget.max);
  }
}

}  // namespace

LocalMinSet m1_f1(const Dyadic& x2, const Dyadic& a) {
  Dyadic level = step_level(a);
  int s = x2.sign();
  if (s < 0) return LocalMinSet::singleton(Interval(level));
  if (s > 0) return LocalMinSet::singleton(Interval(-level));
  return LocalMinSet::segment(Interval(-level), Interval(level),
                              LocalMinSet::Certification::two_sided);
}

Dyadic g1_f1(const Dyadic& x2, const AssignmentPolicy& policy, const Dyadic& a) {
  Dyadic level = step_level(a);
  int s = x2.sign();
  if (s < 0) return level;
  if (s > 0) return -level;
  return policy.choose(-level, level);
}

Dyadic g2_f1(const Dyadic&) { return Dyadic(0); }

LocalMinSet convex_1d_min(const DerivOracle& deriv, const Interval& dom,
                          const Dyadic& tol, const PrecBudget& budget) {
  if (tol.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
  Dyadic lo = dom.lo(), hi = dom.hi();
  auto s_lo = certified_sign(deriv, lo, budget);
  if (s_lo && *s_lo >= 0) return LocalMinSet::singleton(Interval(lo));
  auto s_hi = certified_sign(deriv, hi, budget);
  if (s_hi && *s_hi <= 0) return LocalMinSet::singleton(Interval(hi));
  if (!s_lo) throw NoCertifiedSign(lo, budget.max);
  if (!s_hi) throw NoCertifiedSign(hi, budget.max);

  // bracket: derivative certified negative at lo, positive at hi
  while (hi - lo > tol) {
    Dyadic m = (lo + hi).mul_pow2(-1);
    auto s = certified_sign(deriv, m, budget);
    if (!s) throw NoCertifiedSign(m, budget.max);
    if (*s == 0) return LocalMinSet::singleton(Interval(m));
    (*s < 0 ? lo : hi) = m;
  }
  return LocalMinSet::singleton(Interval(lo, hi));
}

Interval g1_f2(const F2Params& p, const Dyadic& x2, const Dyadic& tol,
               const Rect& rect, const PrecBudget& budget, int probe_budget) {
  if (x2.is_zero())
    throw std::invalid_argument("g1 of f2 needs x2 != 0 (x2 = 0 has a whole segment)");
  p.validate();
  DerivOracle F = [&](const Dyadic& x, int prec) {
    return f2_partial_x1(p, x, x2, prec, probe_budget).value;
  };
  Interval dom(rect.axis(0).first, rect.axis(0).second);
  return convex_1d_min(F, dom, tol, budget).point;
}

LocalMinSet m1_f2(const F2Params& p, const Dyadic& x2, const Rect& rect,
                  const Dyadic& tol, const PrecBudget& budget,
                  int probe_budget) {
  p.validate();
  if (!x2.is_zero())
    return LocalMinSet::singleton(g1_f2(p, x2, tol, rect, budget, probe_budget));

  // On the axis the restriction is flat exactly on [-limit, limit], so the
  // minimizer set is that segment intersected with the rect.  A hidden-limit
  // sequence supports only the outer hull [-xi_B, xi_B] (B = probe budget),
  // unless the rect already sits inside the certainly-flat [-base, base].
  const SequenceSpec& seq = p.gstar.seq;
  Rat a_lo = to_rat(rect.axis(0).first), a_hi = to_rat(rect.axis(0).second);
  if (!(a_lo < 0 && 0 < a_hi))
    throw std::invalid_argument("m1 of f2 expects a rect axis straddling zero");
  bool hidden = seq.kind() == SequenceSpec::Kind::plateau;
  Rat bound = hidden ? seq.term(probe_budget) : seq.limit();
  Rat lo = -bound > a_lo ? -bound : a_lo;
  Rat hi = bound < a_hi ? bound : a_hi;
  bool exact = !hidden || (a_hi <= seq.base() && -a_lo <= seq.base());
  long grid = 64;
  return LocalMinSet::segment(enclose_rat(lo, grid), enclose_rat(hi, grid),
                              exact ? LocalMinSet::Certification::two_sided
                                    : LocalMinSet::Certification::outer_only);
}

BoxObjective f1_objective(const Rect& rect) {
  BoxObjective f;
  f.dim = 2;
  f.eval = [](std::span<const Dyadic> x, int) {
    return Interval(f1_eval(x[0], x[1]));
  };
  f.axis_lipschitz = {f1_axis_lipschitz(rect, 0), f1_axis_lipschitz(rect, 1)};
  // affine on each cell of the seam-aligned subdivision, so the exact box
  // minimum sits on a breakpoint-grid corner
  f.lower_on = [](std::span<const Interval> box, int) {
    auto cuts = [](const Interval& v, std::initializer_list<Dyadic> seams) {
      std::vector<Dyadic> xs = {v.lo(), v.hi()};
      for (const Dyadic& s : seams)
        if (v.lo() < s && s < v.hi()) xs.push_back(s);
      return xs;
    };
    std::vector<Dyadic> xs1 = cuts(box[0], {Dyadic(-1), Dyadic(1)});
    std::vector<Dyadic> xs2 = cuts(box[1], {Dyadic(0)});
    bool first = true;
    Dyadic best;
    for (const Dyadic& a : xs1)
      for (const Dyadic& b : xs2) {
        Dyadic v = f1_eval(a, b);
        if (first || v < best) best = v;
        first = false;
      }
    return best;
  };
  return f;
}

BoxObjective f2_objective(const F2Params& p, const Rect& rect) {
  BoxObjective f;
  f.dim = 2;
  f.eval = [p](std::span<const Dyadic> x, int prec) {
    return f2_eval(p, x[0], x[1], prec);
  };
  f.axis_lipschitz = {f2_axis_lipschitz(p, rect, 0), f2_axis_lipschitz(p, rect, 1)};
  // both summands are monotone in |coordinate| away from their zero sets
  f.lower_on = [p](std::span<const Interval> box, int prec) {
    Dyadic x1_near = box[0].contains(Dyadic(0))
                         ? Dyadic(0)
                         : (box[0].lo().sign() > 0 ? box[0].lo() : box[0].hi());
    int terms = std::max(p.gstar.default_terms, prec + 8);
    Dyadic lower = gstar_eval(p.gstar, x1_near, terms).lo();
    if (!box[1].contains(Dyadic(0))) {
      bool positive_side = box[1].lo().sign() > 0;
      Dyadic x2_near = positive_side ? box[1].lo() : box[1].hi();
      // e^{alpha x1} is smallest at the left edge, e^{-alpha x1} at the right
      Dyadic x1_edge = positive_side ? box[0].lo() : box[0].hi();
      Dyadic factor = f2_exp_factor(p, x1_edge, positive_side, prec).lo();
      if (factor.sign() > 0) lower += x2_near * x2_near * factor;
    }
    return lower;
  };
  return f;
}

BoxObjective f1_slice_objective(const Dyadic& x2, const Rect& rect) {
  BoxObjective f;
  f.dim = 1;
  f.eval = [x2](std::span<const Dyadic> x, int) {
    return Interval(f1_eval(x[0], x2));
  };
  f.axis_lipschitz = {f1_axis_lipschitz(rect, 0)};
  return f;
}

Interval global_min_enclosure(const BoxObjective& f, const Rect& rect,
                              const Dyadic& tol, int prec) {
  if (tol.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
  if (f.dim != rect.dim()) throw std::invalid_argument("objective/rect dimension mismatch");
  // enclosure widths only need to beat the tolerance, not the caller's
  // default working precision
  int eval_prec = static_cast<int>(
      std::max<long>({16, prec, -tol.floor_log2_abs() + 6}));

  struct Cell {
    std::vector<Dyadic> center, half;
    Dyadic lower;  // certified lower bound of f on the cell
  };
  auto radius = [&](const std::vector<Dyadic>& half) {
    Dyadic r(0);
    for (int i = 0; i < f.dim; ++i) r += f.axis_lipschitz[i] * half[i];
    return r;
  };
  auto make_cell = [&](std::vector<Dyadic> c, std::vector<Dyadic> h,
                       Dyadic* upper_out) {
    Interval v = f.eval(c, eval_prec);
    *upper_out = v.hi();
    Dyadic lower = v.lo() - radius(h);
    if (f.lower_on) {
      std::vector<Interval> box;
      box.reserve(f.dim);
      for (int i = 0; i < f.dim; ++i) box.emplace_back(c[i] - h[i], c[i] + h[i]);
      Dyadic tight = f.lower_on(box, eval_prec);
      if (tight > lower) lower = tight;
    }
    return Cell{std::move(c), std::move(h), std::move(lower)};
  };

  auto cmp = [](const Cell& a, const Cell& b) { return a.lower > b.lower; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  std::vector<Dyadic> c0 = rect.midpoint(), h0;
  for (int i = 0; i < f.dim; ++i)
    h0.push_back((rect.axis(i).second - rect.axis(i).first).mul_pow2(-1));
  Dyadic best_hi;
  queue.push(make_cell(c0, h0, &best_hi));

  while (true) {
    Cell cell = queue.top();
    if (best_hi - cell.lower <= tol) return Interval(cell.lower, best_hi);
    queue.pop();

    // split along the axis with the largest Lipschitz-scaled extent
    int axis = 0;
    Dyadic extent = f.axis_lipschitz[0] * cell.half[0];
    for (int i = 1; i < f.dim; ++i) {
      Dyadic e = f.axis_lipschitz[i] * cell.half[i];
      if (e > extent) {
        extent = e;
        axis = i;
      }
    }
    Dyadic q = cell.half[axis].mul_pow2(-1);
    for (int side = -1; side <= 1; side += 2) {
      std::vector<Dyadic> c = cell.center, h = cell.half;
      h[axis] = q;
      c[axis] = side < 0 ? c[axis] - q : c[axis] + q;
      Dyadic up;
      Cell child = make_cell(std::move(c), std::move(h), &up);
      if (up < best_hi) best_hi = up;
      if (child.lower <= best_hi) queue.push(std::move(child));
    }
  }
}

Dyadic approx_gap(const std::function<Dyadic(const Dyadic&)>& g,
                  const Dyadic& delta, const Dyadic& amp) {
  if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
  Dyadic miss_neg = (g(-delta) - amp).abs();
  Dyadic miss_pos = (g(delta) + amp).abs();
  return miss_neg > miss_pos ? miss_neg : miss_pos;
}

}  // namespace effopt
