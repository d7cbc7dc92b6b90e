"""Smoke tests for the _effopt extension module."""

import json
import sys

import _effopt as eo


def check(cond, label):
    if not cond:
        print("FAIL:", label)
        sys.exit(1)


# exact arithmetic round trips
check(eo.dyadic_add("1/2", "1/4") == "3/4", "1/2 + 1/4")
check(eo.dyadic_mul("3/2", "-1/2") == "-3/4", "3/2 * -1/2")
check(eo.dyadic_sub("7/8", "7/8") == "0", "x - x")
check(eo.dyadic_float("7/2") == 3.5, "float view")

# rejected inexact literals
try:
    eo.dyadic_add("0.1", "0")
    check(False, "0.1 must be rejected")
except ValueError:
    pass

# the certified exponential brackets e
lo, hi, flo, fhi = eo.interval_exp("1", 48)
check(flo <= 2.718281828459045 <= fhi, "e in the enclosure")
check(fhi - flo < 1e-12, "enclosure is tight")

# corpus values
check(eo.f1("2", "1") == "7/2", "f1(2,1)")
check(eo.f1("0", "-2") == "3", "f1(0,-2)")
left, right, seam = eo.f1_slopes("0", "0", 1)
check(seam and left == "-3/2" and right == "3/2", "axis seam slopes")

lo, hi, flo, fhi = eo.gstar("1/4")
check(lo == "0" and hi == "0", "flat segment is exactly zero")
lo, hi, flo, fhi = eo.gstar("2")
check(abs(flo - 39 / 28) < 1e-9, "series value at 2")

lo, hi, cert, piece = eo.gstar_slope("-2")
check(cert and piece == 1 and flo is not None, "slope certification")
check(abs(eo.dyadic_float(lo) + 7 / 3) < 1e-9, "slope value at -2")

lo, hi, flo, fhi = eo.f2("0", "1", alpha="0.1", prec=48)
check(flo <= 1 <= fhi, "f2(0,1) around 1")

# assignment functions
check(eo.g1_f1("-1/2") == "1", "step left level")
check(eo.g1_f1("0", "fixed", "1/4") == "1/4", "fixed tie break")
check(eo.g2_f1("-2") == "0", "second coordinate always zero")

# certified minimizer stays strictly outside the flat segment
lo, hi, flo, fhi = eo.g1_f2("1")
check(fhi < -0.5, "minimizer below -1/2")

# minimizer sets: exact segment on the axis, outer hull under a hidden limit
kind, data, certified = eo.m1_f2("0")
check(kind == "segment" and certified, "axis segment fully certified")
kind, data, certified = eo.m1_f2("0", kind="plateau", hidden_k=30, probe_budget=8)
check(kind == "segment" and not certified, "hidden limit gives an outer hull")

# a full optimization trace, parseable and convergent
trace = json.loads(eo.optimize_f1("0.5", "1.5", "fixed", "0"))
check(trace["stop_reason"] == "FixedPoint", "f1 trace converges")
check(len(trace["iterates"]) == 3, "three-entry trace")

trace = json.loads(eo.optimize_f2("1", "1", tol="2^-16", prec=50))
check(trace["stop_reason"] in ("FixedPoint", "MaxIter"), "f2 trace finishes")

# experiments return verdicts
report = json.loads(eo.run_experiment("stopping-adversary", budget=8))
check(report["verdict"] is True, "adversary experiment verdict")
check(report["summary"]["limit_gap"] == "1/512", "limit gap 2^-9")

print("all python smoke tests passed")
