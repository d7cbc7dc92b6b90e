// Python bindings for the main operations.  Exact values travel as strings
// ("m*2^e" fractions, "p/q" rationals, decimals) so nothing is rounded at the
// boundary; floats are offered as explicit approximations only.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "effopt/experiments.hpp"
#include "effopt/f1.hpp"

namespace py = pybind11;
using namespace effopt;

namespace {

Dyadic parse_dy(const std::string& s) {
  auto d = Dyadic::parse(s);
  if (!d) throw py::value_error("'" + s + "' is not an exact binary rational");
  return *d;
}

Rat parse_rt(const std::string& s) {
  auto r = parse_rational(s);
  if (!r) throw py::value_error("'" + s + "' is not a rational");
  return *r;
}

GStarParams make_gstar(const std::string& xi_star, const std::string& kind,
                       int hidden_k, int terms) {
  Rat base = parse_rt(xi_star);
  SequenceSpec seq = kind == "plateau" ? SequenceSpec::plateau(base, hidden_k)
                                       : SequenceSpec::standard(base);
  return GStarParams{seq, terms};
}

F2Params make_f2(const std::string& xi_star, const std::string& kind,
                 int hidden_k, int terms, const std::string& alpha) {
  return F2Params{make_gstar(xi_star, kind, hidden_k, terms), parse_rt(alpha)};
}

py::tuple interval_tuple(const Interval& v) {
  return py::make_tuple(v.lo().to_string(), v.hi().to_string(),
                        v.lo().to_double(), v.hi().to_double());
}

}  // namespace

PYBIND11_MODULE(_effopt, m) {
  m.doc() = "exact-arithmetic coordinate-descent laboratory";

  m.def("dyadic_add", [](const std::string& a, const std::string& b) {
    return (parse_dy(a) + parse_dy(b)).to_string();
  });
  m.def("dyadic_sub", [](const std::string& a, const std::string& b) {
    return (parse_dy(a) - parse_dy(b)).to_string();
  });
  m.def("dyadic_mul", [](const std::string& a, const std::string& b) {
    return (parse_dy(a) * parse_dy(b)).to_string();
  });
  m.def("dyadic_float", [](const std::string& a) { return parse_dy(a).to_double(); });

  m.def(
      "interval_exp",
      [](const std::string& x, int prec) {
        return interval_tuple(exp_point(parse_dy(x), prec));
      },
      py::arg("x"), py::arg("prec") = 53,
      "certified enclosure of e^x: (lo, hi, lo_float, hi_float)");

  m.def(
      "f1",
      [](const std::string& x1, const std::string& x2) {
        return f1_eval(parse_dy(x1), parse_dy(x2)).to_string();
      },
      "exact value of the piecewise-linear corpus function");

  m.def(
      "f1_slopes",
      [](const std::string& x1, const std::string& x2, int axis) {
        OneSided s = f1_partial(parse_dy(x1), parse_dy(x2), axis);
        return py::make_tuple(s.left.to_string(), s.right.to_string(), s.seam());
      },
      py::arg("x1"), py::arg("x2"), py::arg("axis"),
      "one-sided slopes (left, right, is_seam); axis 0 is the first coordinate");

  m.def(
      "gstar",
      [](const std::string& x, const std::string& xi_star, const std::string& kind,
         int hidden_k, int terms) {
        return interval_tuple(
            gstar_eval(make_gstar(xi_star, kind, hidden_k, terms), parse_dy(x), terms));
      },
      py::arg("x"), py::arg("xi_star") = "1/2", py::arg("kind") = "standard",
      py::arg("hidden_k") = 20, py::arg("terms") = 53);

  m.def(
      "gstar_slope",
      [](const std::string& x, const std::string& xi_star, const std::string& kind,
         int hidden_k, int terms, int probe_budget) {
        SlopeEnclosure s = gstar_deriv(make_gstar(xi_star, kind, hidden_k, terms),
                                       parse_dy(x), terms, probe_budget);
        return py::make_tuple(s.value.lo().to_string(), s.value.hi().to_string(),
                              s.cert == SlopeCert::certified, s.piece);
      },
      py::arg("x"), py::arg("xi_star") = "1/2", py::arg("kind") = "standard",
      py::arg("hidden_k") = 20, py::arg("terms") = 53, py::arg("probe_budget") = 64);

  m.def(
      "f2",
      [](const std::string& x1, const std::string& x2, const std::string& xi_star,
         const std::string& alpha, int prec) {
        return interval_tuple(f2_eval(make_f2(xi_star, "standard", 20, 53, alpha),
                                      parse_dy(x1), parse_dy(x2), prec));
      },
      py::arg("x1"), py::arg("x2"), py::arg("xi_star") = "1/2",
      py::arg("alpha") = "1/10", py::arg("prec") = 53);

  m.def(
      "g1_f1",
      [](const std::string& x2, const std::string& policy, const std::string& at) {
        AssignmentPolicy p = AssignmentPolicy::mid();
        if (policy == "left") p = AssignmentPolicy::left();
        else if (policy == "right") p = AssignmentPolicy::right();
        else if (policy == "fixed") p = AssignmentPolicy::fixed(parse_dy(at));
        return g1_f1(parse_dy(x2), p).to_string();
      },
      py::arg("x2"), py::arg("policy") = "midpoint", py::arg("at") = "0");

  m.def("g2_f1",
        [](const std::string& x1) { return g2_f1(parse_dy(x1)).to_string(); });

  m.def(
      "g1_f2",
      [](const std::string& x2, const std::string& xi_star, const std::string& alpha,
         const std::string& tol) {
        Rect rect = Rect::centered2(Dyadic(2), Dyadic(2));
        return interval_tuple(g1_f2(make_f2(xi_star, "standard", 20, 53, alpha),
                                    parse_dy(x2), parse_dy(tol), rect));
      },
      py::arg("x2"), py::arg("xi_star") = "1/2", py::arg("alpha") = "1/10",
      py::arg("tol") = "2^-20");

  m.def(
      "m1_f2",
      [](const std::string& x2, const std::string& xi_star, const std::string& kind,
         int hidden_k, const std::string& alpha, int probe_budget) {
        Rect rect = Rect::centered2(Dyadic(2), Dyadic(2));
        LocalMinSet s = m1_f2(make_f2(xi_star, kind, hidden_k, 53, alpha),
                              parse_dy(x2), rect, Dyadic::pow2(-20), {},
                              probe_budget);
        if (s.kind == LocalMinSet::Kind::singleton)
          return py::make_tuple("singleton", interval_tuple(s.point), true);
        return py::make_tuple(
            "segment",
            py::make_tuple(interval_tuple(s.seg_lo), interval_tuple(s.seg_hi)),
            s.cert == LocalMinSet::Certification::two_sided);
      },
      py::arg("x2"), py::arg("xi_star") = "1/2", py::arg("kind") = "standard",
      py::arg("hidden_k") = 20, py::arg("alpha") = "1/10",
      py::arg("probe_budget") = 64,
      "minimizer set of f2 in x1: (kind, data, fully_certified)");

  m.def(
      "optimize_f1",
      [](const std::string& x1, const std::string& x2, const std::string& policy,
         const std::string& at, int max_sweeps) {
        AssignmentPolicy p = AssignmentPolicy::mid();
        if (policy == "left") p = AssignmentPolicy::left();
        else if (policy == "right") p = AssignmentPolicy::right();
        else if (policy == "fixed") p = AssignmentPolicy::fixed(parse_dy(at));
        Rect rect = Rect::centered2(Dyadic(2), Dyadic(2));
        Trace t = gauss_seidel(f1_problem(rect, p), {parse_dy(x1), parse_dy(x2)},
                               StoppingPolicy::exact_fixed_point(max_sweeps));
        return trace_to_json(t).dump();
      },
      py::arg("x1"), py::arg("x2"), py::arg("policy") = "midpoint",
      py::arg("at") = "0", py::arg("max_sweeps") = 8,
      "run coordinate descent on f1; returns the trace as JSON text");

  m.def(
      "optimize_f2",
      [](const std::string& x1, const std::string& x2, const std::string& xi_star,
         const std::string& alpha, const std::string& tol, int max_sweeps, int prec) {
        Rect rect = Rect::centered2(Dyadic(2), Dyadic(2));
        Dyadic tl = parse_dy(tol);
        Trace t = gauss_seidel(
            f2_problem(make_f2(xi_star, "standard", 20, 53, alpha), rect, tl,
                       PrecBudget{prec, std::max(2048, prec * 32)}, 64, prec),
            {parse_dy(x1), parse_dy(x2)},
            StoppingPolicy::eps_fixed_point(tl.mul_pow2(1), max_sweeps));
        return trace_to_json(t).dump();
      },
      py::arg("x1"), py::arg("x2"), py::arg("xi_star") = "1/2",
      py::arg("alpha") = "1/10", py::arg("tol") = "2^-20",
      py::arg("max_sweeps") = 10, py::arg("prec") = 60);

  m.def(
      "run_experiment",
      [](const std::string& name, int trials, uint64_t seed, int k_max, int budget) {
        ExperimentReport r;
        if (name == "f1-convergence") {
          r = exp_f1_convergence(trials, seed);
        } else if (name == "f2-reachability") {
          r = exp_f2_reachability(k_max, Dyadic::pow2(-20),
                                  F2Params{{SequenceSpec::standard(Rat(1, 2)), 53},
                                           Rat(1, 10)},
                                  Rect::centered2(Dyadic(2), Dyadic(2)));
        } else if (name == "approx-gap") {
          r = exp_approx_gap({1, 2, 4, 8, 16}, {4, 8, 12});
        } else if (name == "stopping-adversary") {
          r = exp_adversarial_stopping(budget);
        } else {
          throw py::value_error("unknown experiment '" + name + "'");
        }
        return r.to_json().dump();
      },
      py::arg("name"), py::arg("trials") = 100, py::arg("seed") = 7,
      py::arg("k_max") = 8, py::arg("budget") = 10,
      "run a named experiment; returns the report as JSON text");
}
