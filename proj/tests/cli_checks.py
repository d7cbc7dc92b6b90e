#!/usr/bin/env python3
"""End-to-end checks for the effopt command line tool.

Usage: cli_checks.py /path/to/effopt
"""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(args, env_extra=None, expect_code=0):
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([BIN] + args, capture_output=True, text=True, env=env)
    if proc.returncode != expect_code:
        failures.append(
            f"{' '.join(args)}: exit {proc.returncode}, expected {expect_code}\n"
            f"  stdout: {proc.stdout[:300]}\n  stderr: {proc.stderr[:300]}")
    return proc


def check(cond, label):
    if not cond:
        failures.append(label)


def dyadic(obj):
    return int(obj["m"]) * 2.0 ** obj["e"]


# eval: exact value, exact zero, enclosure
out = run(["eval", "f1", "--at", "2,1"]).stdout
check("7/2" in out and "3.5" in out, "eval f1 prints 7/2")

out = run(["eval", "gstar", "--xi-star", "1/2", "--at", "1/4"]).stdout
check("= 0" in out and "exact" in out, "gstar vanishes exactly on the segment")

out = run(["eval", "f2", "--at", "0,1", "--alpha", "0.1", "--prec", "40"]).stdout
check("= 1" in out, "f2(0,1) is exactly 1")

out = run(["eval", "gstar-deriv", "--xi-star", "1/2", "--at", "-2"]).stdout
check("certification: full" in out, "derivative certification reported")

# validation: non-dyadic points are rejected, not rounded
run(["eval", "f1", "--at", "0.1,0"], expect_code=1)
run(["eval", "f1", "--at", "1/3,0"], expect_code=1)
run(["eval", "nosuch", "--at", "0,0"], expect_code=1)
run(["optimize", "f1", "--start", "3,0"], expect_code=1)
run(["optimize", "f1", "--start", "0,0", "--policy", "fixed:5"], expect_code=1)
run(["optimize", "f1", "--start", "0,0", "--policy", "garbled"], expect_code=1)
run(["experiment", "nosuch"], expect_code=1)

# optimize: the worked trace
out = run(["optimize", "f1", "--start", "0.5,1.5", "--policy", "fixed:0"]).stdout
trace = json.loads(out)
pts = [[dyadic(c) for c in p] for p in trace["iterates"]]
check(pts == [[0.5, 1.5], [-1.0, 0.0], [0.0, 0.0]], "case-I trace iterates")
check(trace["stop_reason"] == "FixedPoint", "case-I trace stops at a fixed point")

out = run(["optimize", "f1", "--start", "0.875,0", "--policy", "fixed:0.25"]).stdout
trace = json.loads(out)
check(dyadic(trace["iterates"][-1][0]) == 0.25, "case-III trace ends at (1/4, 0)")

# optimize writes files too
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "trace.json")
    run(["optimize", "f1", "--start", "0.5,1.5", "--out", path])
    with open(path) as fh:
        loaded = json.load(fh)
    check(loaded["stop_reason"] == "FixedPoint", "trace file written")

# f2 optimize emits enclosures and respects sweep caps
out = run(["optimize", "f2", "--start", "1,1", "--stop", "sweeps",
           "--max-sweeps", "3", "--prec", "50"]).stdout
trace = json.loads(out)
check(trace["stop_reason"] == "MaxIter", "sweep-capped run reports MaxIter")
check("lo" in trace["values"][0], "f2 values are enclosures")

# omitted start defaults to the rect midpoint
out = run(["optimize", "f1"]).stdout
trace = json.loads(out)
check([dyadic(c) for c in trace["iterates"][0]] == [0.0, 0.0],
      "default start is the rect midpoint")

# the certification obstruction surfaces as exit code 3
run(["optimize", "f2", "--seq", "plateau", "--xi-star", "1/2", "--hidden-k", "40",
     "--probe-budget", "12", "--start", "1,2^-16"], expect_code=3)

# a failing experiment verdict surfaces as exit code 2: with a starved probe
# budget every reachability row hits the obstruction and the verdict fails
with tempfile.TemporaryDirectory() as tmp:
    proc = run(["experiment", "f2-reachability", "--seq", "plateau",
                "--xi-star", "1/2", "--hidden-k", "40", "--probe-budget", "2",
                "--k-max", "3", "--out-dir", tmp], expect_code=2)
    check("FAIL" in proc.stdout, "starved run reports FAIL")
    with open(os.path.join(tmp, "f2-reachability.json")) as fh:
        rep = json.load(fh)
    check(any(row.get("obstruction") for row in rep["records"]),
          "obstruction rows recorded, not fatal")

# experiments: one pass each, files land in the out dir
with tempfile.TemporaryDirectory() as tmp:
    out = run(["experiment", "f1-convergence", "--trials", "50", "--seed", "3",
               "--out-dir", tmp]).stdout
    check("PASS" in out, "f1-convergence passes")
    with open(os.path.join(tmp, "f1-convergence.json")) as fh:
        rep = json.load(fh)
    check(rep["verdict"] is True, "report verdict recorded")
    check(os.path.exists(os.path.join(tmp, "f1-convergence.csv")), "csv artifact")

    out = run(["experiment", "stopping-adversary", "--budget", "10",
               "--out-dir", tmp]).stdout
    with open(os.path.join(tmp, "stopping-adversary.json")) as fh:
        rep = json.load(fh)
    check(rep["summary"]["limit_gap"] == "1/2048", "limit gap exactly 2^-11")

    run(["experiment", "approx-gap", "--L", "1,2,4", "--delta", "2^-4,2^-8",
         "--out-dir", tmp])

# schema prints both schemas
out = run(["schema"]).stdout
schemas = json.loads(out)
check("trace" in schemas and "report" in schemas, "schema subcommand")

# environment precision override
run(["eval", "f2", "--at", "1,1"], env_extra={"EFFOPT_PREC": "80"})
run(["eval", "f2", "--at", "1,1"], env_extra={"EFFOPT_PREC": "soup"}, expect_code=1)

if failures:
    print("CLI checks failed:")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print(f"all CLI checks passed")
