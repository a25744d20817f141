#!/usr/bin/env python3
"""End-to-end checks of lqgtool: outputs, schemas, exit codes, determinism."""

import csv
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

TOOL = Path(sys.argv[1]).resolve()
SCHEMAS = Path(sys.argv[2]).resolve()
failures = []


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(args, cwd, env=None, expect=0):
    e = dict(os.environ)
    e.pop("LQG_OUT_DIR", None)
    e.update(env or {})
    p = subprocess.run([str(TOOL), *args], cwd=cwd, env=e, capture_output=True, text=True)
    if p.returncode != expect:
        failures.append(f"{' '.join(args)}: exit {p.returncode}, wanted {expect}\n{p.stderr}")
    return p


def check(cond, what):
    if not cond:
        failures.append(what)


def validate(doc, name, what):
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as err:
        failures.append(f"{what}: {err.message}")


def load(path):
    return json.loads(Path(path).read_text())


def check_meta(d, command):
    meta = load(d / "meta.json")
    validate(meta, "meta", f"meta for {command}")
    check(meta["command"] == command, f"meta command {meta['command']} != {command}")


def stable(doc):
    return {k: v for k, v in doc.items() if k not in ("runtime_s", "wall_time_s", "started_at")}


with tempfile.TemporaryDirectory() as tmp:
    d = Path(tmp)

    run(["laws", "--which", "time_t", "--gamma", "sqrt2", "--grid", "0.1:3:30", "--out", "tt.csv"], d)
    rows = list(csv.reader(open(d / "tt.csv")))
    check(len(rows) == 31, "laws time_t row count")
    check_meta(d, "laws")
    for which in ("exit_point", "survival", "area"):
        run(["laws", "--which", which, "--gamma", "sqrt8over3", "--grid", "-2:2:9" if which == "exit_point" else "0.5:2:4",
             "--out", f"{which}.csv"], d)

    run(["sample", "excursion", "--gamma", "1.2", "--delta", "0.05", "--dt", "1e-3", "--n", "3", "--seed", "7",
         "--out", "exc.csv"], d)
    summ = load(d / "exc.summary.json")
    validate(summ, "excursion_summary", "excursion summary")
    check_meta(d, "sample excursion")
    first = (d / "exc.csv").read_text()
    run(["sample", "excursion", "--gamma", "1.2", "--delta", "0.05", "--dt", "1e-3", "--n", "3", "--seed", "7",
         "--out", "exc.csv"], d)
    check((d / "exc.csv").read_text() == first, "excursion rerun differs")

    for kind, extra in (("wedge", ["--alpha", "1"]), ("disk", ["--beta", "1"]), ("bead", ["--alpha", "2.25"]),
                        ("disk-bessel", [])):
        run(["sample", "field-average", "--kind", kind, "--gamma", "1.5" if kind != "disk-bessel" else "1.9",
             "--dt", "1e-3", "--n", "200", *extra, "--out", f"fa_{kind}.csv"], d)
        check((d / f"fa_{kind}.csv").stat().st_size > 0, f"field-average {kind} empty")

    run(["area-mc", "--gamma", "sqrt2", "--delta", "0.05", "--dt", "1e-3", "--n", "200", "--seed", "1",
         "--out", "area.json"], d)
    rep = load(d / "area.json")
    validate(rep, "area_report", "area report")
    check_meta(d, "area-mc")
    run(["--threads", "1", "area-mc", "--gamma", "sqrt2", "--delta", "0.05", "--dt", "1e-3", "--n", "200",
         "--seed", "1", "--out", "area1.json"], d)
    check(stable(load(d / "area1.json")) == stable(rep), "area report depends on thread count")
    run(["area-mc", "--gamma", "sqrt2", "--delta", "0.05", "--dt", "1e-3", "--n", "50", "--ks-threshold", "1e-6",
         "--out", "bad.json"], d, expect=1)

    # a path for the map command
    lines = ["t,L,R"] + [f"{k * 0.1:.17g},{(k % 7) - 3},{(k % 5) - 2}" for k in range(401)]
    (d / "path.csv").write_text("\n".join(lines) + "\n")
    run(["map", "--in", "path.csv", "--cell-size", "1", "--out", "g.json", "--stats"], d)
    g = load(d / "g.json")
    validate(g, "graph", "graph json")
    check(g["n"] == 40, "graph cell count")
    check((d / "g.degrees.csv").exists(), "degree histogram missing")
    check_meta(d, "map")
    run(["map", "--in", "path.csv", "--cell-size", "1", "--out", "gb.json", "--algorithm", "brute"], d)
    check((d / "gb.json").read_text() == (d / "g.json").read_text(), "fast and brute map outputs differ")
    run(["map", "--in", "path.csv", "--cell-size", "1", "--out", "g.csv", "--format", "csv"], d)
    check((d / "g.csv").read_text().splitlines()[0] == "1,2,consecutive", "csv edge list")
    run(["map", "--in", "path.csv", "--cell-size", "0.5", "--out", "x.json"], d, expect=2)
    run(["map", "--in", "missing.csv", "--cell-size", "1", "--out", "x.json"], d, expect=2)

    run(["verify", "--suite", "analytic", "--out", "verify.json"], d)
    validate(load(d / "verify.json"), "verify_report", "verify report")

    # environment overrides
    sub = d / "elsewhere"
    sub.mkdir()
    run(["laws", "--which", "area", "--grid", "0.5:2:4", "--out", "env.csv"], d, env={"LQG_OUT_DIR": str(sub)})
    check((sub / "env.csv").exists() and (sub / "meta.json").exists(), "LQG_OUT_DIR ignored")
    run(["laws", "--which", "area", "--grid", "0.5:2:4", "--out", "thr.csv"], d, env={"LQG_THREADS": "2"})
    check(load(d / "meta.json")["threads"] == 2, "LQG_THREADS ignored")

    # usage errors
    for args in (["laws", "--bogus"], ["laws", "--which", "area", "--gamma", "2.5", "--grid", "1:2:3", "--out", "e.csv"],
                 ["laws", "--which", "area", "--grid", "1:2", "--out", "e.csv"], ["frobnicate"]):
        p = run(args, d, expect=2)
        err = p.stderr.strip().splitlines()
        check(len(err) == 1, f"{args}: stderr is not a single line")
        try:
            parsed = json.loads(err[-1])
            check({"error", "command", "message"} <= parsed.keys(), f"{args}: error fields")
        except (json.JSONDecodeError, IndexError):
            failures.append(f"{args}: stderr is not JSON: {p.stderr!r}")

    leftovers = [p.name for p in d.rglob("*.tmp*")]
    check(not leftovers, f"temporary files left behind: {leftovers}")

for f in failures:
    print("FAIL:", f)
print("cli tests:", "FAIL" if failures else "PASS")
sys.exit(1 if failures else 0)
