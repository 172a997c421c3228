#!/usr/bin/env python3
"""End-to-end checks of the command-line tool: exit codes, output shape,
determinism, and file round-trips. Argument 1: path to the binary."""

import json
import math
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1] if len(sys.argv) > 1 else "entmono"
FAILURES = []


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        FAILURES.append(
            f"{' '.join(args)}: exit {proc.returncode} (wanted {expect})\n"
            f"  stdout: {proc.stdout[:300]}\n  stderr: {proc.stderr[:300]}"
        )
        return None
    return proc


def check(cond, label):
    if not cond:
        FAILURES.append(label)


def payload(proc):
    return json.loads(proc.stdout) if proc else None


# --- value checks ---------------------------------------------------------

doc = payload(run("measure", "--family", "bell", "--spec", "eoe"))
if doc:
    check(abs(doc["value"] - 1.0) < 1e-12, f"bell eoe = {doc['value']}")
    check(doc["command"] == "measure", "command field")
    check("version" in doc and "seed" in doc and "config" in doc, "run metadata embedded")

doc = payload(run("measure", "--family", "w", "--cut", "A|BC", "--spec", "tangle"))
if doc:
    check(abs(doc["value"] - 8.0 / 9.0) < 1e-10, f"w tangle = {doc['value']}")

doc = payload(run("measure", "--family", "ghz", "--dims", "2,2,2", "--cut", "0|1,2", "--spec", "eoe"))
if doc:
    check(abs(doc["value"] - 1.0) < 1e-10, f"ghz eoe = {doc['value']}")

# mixed-state measure routes through the roof and reports the optimizer
doc = payload(
    run("measure", "--family", "ginibre", "--dims", "2,2", "--rank", "2", "--seed", "5",
        "--spec", "eoe", "--restarts", "4", "--max-evals", "500")
)
if doc:
    check(0.0 <= doc["value"] <= 1.0, f"mixed eoe in range: {doc['value']}")
    check(doc["config"]["optimizer"]["restarts"] == 4, "optimizer echoed")

# roof emits a certificate that sums to one
doc = payload(
    run("roof", "--family", "ginibre", "--dims", "2,2", "--rank", "3", "--seed", "11",
        "--spec", "eoe", "--restarts", "4", "--max-evals", "500")
)
if doc:
    weights = doc["result"]["certificate"]["weights"]
    check(abs(sum(weights) - 1.0) < 1e-9, "certificate weights sum to 1")
    check(doc["result"]["value"] >= -1e-12, "roof value nonnegative")

# alpha on the W state
doc = payload(run("alpha", "--family", "w", "--spec", "eoe", "--seed", "3"))
if doc:
    check(abs(doc["result"]["alpha"] - 1.353) < 0.01, f"alpha = {doc['result']['alpha']}")

# ckw on a W state saturates
doc = payload(run("ckw", "--family", "w"))
if doc:
    check(abs(doc["result"]["residual"]) < 1e-8, f"ckw residual = {doc['result']['residual']}")

# witness on a wired product family succeeds...
doc = payload(
    run("witness", "--family", "product-family", "--dims", "2,4,2", "--seed", "8")
)
if doc:
    check(doc["result"]["found"] is True, "witness found on product family")
    check(doc["result"]["reconstruction_error"] < 1e-6, "witness error")

# ...and structurally fails on a Haar state, naming the stage
doc = payload(run("witness", "--family", "haar-pure", "--dims", "2,4,2", "--seed", "9"))
if doc:
    check(doc["result"]["found"] is False, "witness absent on haar state")
    check(
        doc["result"]["fail_stage"] in ("marginal-equality", "gram", "reconstruction"),
        f"fail stage: {doc['result'].get('fail_stage')}",
    )

# probe reports a nonnegative margin for a concave functional
doc = payload(run("probe", "--entropy", "vn", "--dim", "3", "--trials", "200", "--seed", "4"))
if doc:
    check(doc["result"]["min_margin"] >= 0.0, "vn concavity margin")
    check(doc["result"]["violation_found"] is False, "vn no violation")

# --- batch output ---------------------------------------------------------

proc = run("audit", "--family", "haar-pure", "--dims", "2,2,2", "--count", "3",
           "--seed", "12", "--spec", "eoe", "--restarts", "4", "--max-evals", "500")
if proc:
    lines = [ln for ln in proc.stdout.splitlines() if ln.strip()]
    check(len(lines) == 3, f"audit emits one JSON line per state, got {len(lines)}")
    for ln in lines:
        rec = json.loads(ln)
        check(rec["measure"] == "eoe", "audit record measure")
        check("gap" in rec and "e_abc" in rec, "audit record fields")
    check("gap:" in proc.stderr and "audited" in proc.stderr, "audit summary on stderr")

# --- determinism ----------------------------------------------------------

args = ("roof", "--family", "ginibre", "--dims", "2,2", "--rank", "2", "--seed", "77",
        "--spec", "eoe", "--restarts", "4", "--max-evals", "500")
a, b = run(*args), run(*args)
if a and b:
    check(a.stdout == b.stdout, "identical command + seed gives identical output")

# --- file round-trips -----------------------------------------------------

with tempfile.TemporaryDirectory() as tmp:
    state_path = os.path.join(tmp, "state.json")
    proc = run("gen", "--family", "haar-pure", "--dims", "2,2", "--seed", "21",
               "--index", "0", "--out", state_path)
    if proc:
        with open(state_path) as fh:
            state_doc = json.load(fh)
        check(state_doc["signature"] == [2, 2], "gen wrote a state file")
        doc = payload(run("measure", "--file", state_path, "--spec", "eoe"))
        if doc:
            check(0.0 <= doc["value"] <= 1.0, "measure reads generated state")

    batch_path = os.path.join(tmp, "batch.jsonl")
    proc = run("gen", "--family", "haar-pure", "--dims", "2,2", "--count", "4",
               "--seed", "22", "--out", batch_path)
    if proc:
        with open(batch_path) as fh:
            rows = [json.loads(ln) for ln in fh if ln.strip()]
        check(len(rows) == 4, f"gen batch wrote {len(rows)} lines")

    out_path = os.path.join(tmp, "result.json")
    proc = run("measure", "--family", "bell", "--spec", "eoe", "--out", out_path)
    if proc:
        with open(out_path) as fh:
            check(abs(json.load(fh)["value"] - 1.0) < 1e-12, "--out writes the payload")

# --- exit codes -----------------------------------------------------------

run("measure", "--family", "bell", "--file", "x.json", "--spec", "eoe", expect=1)  # both inputs
run("measure", "--spec", "eoe", expect=1)  # no input
run("measure", "--family", "haar-pure", "--dims", "2,2", "--spec", "eoe", expect=1)  # seed missing
run("bogus-subcommand", expect=1)
run("measure", "--family", "bell", "--spec", "unheard-of", expect=1)  # bad spec
run("ckw", "--family", "ghz", "--dims", "3,3,3", expect=2)  # not three qubits
run("probe", "--entropy", "tsallis:-1", "--seed", "1", expect=1)  # bad parameter
run("measure", "--file", "definitely_missing.json", "--spec", "eoe", expect=3)  # absent file

with tempfile.TemporaryDirectory() as tmp:
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as fh:
        fh.write("{broken")
    run("measure", "--file", bad, "--spec", "eoe", expect=3)  # malformed file
    unnorm = os.path.join(tmp, "unnorm.json")
    with open(unnorm, "w") as fh:
        json.dump({"signature": [2], "re": [2.0, 0.0], "im": [0.0, 0.0]}, fh)
    run("measure", "--file", unnorm, "--spec", "eoe", expect=3)  # broken contract in file

# --------------------------------------------------------------------------

if FAILURES:
    print(f"cli_smoke: {len(FAILURES)} failure(s)")
    for f in FAILURES:
        print(" -", f)
    sys.exit(1)
print("cli_smoke: all checks passed")
