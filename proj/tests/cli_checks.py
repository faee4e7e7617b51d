#!/usr/bin/env python3
"""End-to-end checks of the command line tool: exit codes, golden output, determinism, report schema."""
import json
import os
import subprocess
import sys
import tempfile

BIN, SRC = sys.argv[1], sys.argv[2]
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    if env:
        e.update(env)
    p = subprocess.run([BIN, *args], capture_output=True, env=e)
    return p.returncode, p.stdout.decode(), p.stderr.decode()


def check(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + (f": {detail}" if detail and not cond else ""))
    if not cond:
        failures.append(name)


tmp = tempfile.mkdtemp()

rc, out, _ = run("check", "corpus:iwasawa3", "--minimal")
check("iwasawa3 minimal r", rc == 0 and out == "minimal page-r-ddbar: r=1\n", out)

rc, out, _ = run("check", "corpus:iwasawa3", "--r", "0", "--assert")
check("iwasawa3 page 0 asserted negative", rc == 1 and out.startswith("page-0-ddbar: false"), out)

rc, out, _ = run("check", "corpus:ce(1,1)", "--minimal", "--assert")
check("ce(1,1) has no positive page", rc == 1 and out.startswith("minimal page-r-ddbar: none"), out)

bad = os.path.join(tmp, "bad.json")
with open(bad, "w") as f:
    json.dump({"dims": {"0,0": 1, "1,0": 1, "2,0": 1}, "d1": {"0,0": [["1"]], "1,0": [["1"]]}}, f)
rc, _, err = run("validate", bad)
check("validate reports the failing identity", rc == 2 and "d1∘d1 ≠ 0 at (0,0)" in err, err)

rc, _, _ = run("validate", "corpus:no_such_model")
check("unknown corpus name", rc == 2)
rc, _, _ = run("pages", os.path.join(tmp, "missing.json"))
check("missing file", rc == 2)
lie = os.path.join(tmp, "bad.lie")
with open(lie, "w") as f:
    f.write("dphi1 = 0\ndphi2 = ~phi1^~phi2\n")
rc, _, err = run("validate", lie)
check("(0,2) term rejected", rc == 2 and "(0,2)" in err, err)

with open(os.path.join(SRC, "tests", "golden", "h5_tilde.dot")) as f:
    golden = f.read()
rc, dot1, _ = run("zigzags", "corpus:h5_tilde", "--render", "dot")
_, dot2, _ = run("zigzags", "corpus:h5_tilde", "--render", "dot", env={"BICOMPLEX_THREADS": "1"})
check("h5_tilde DOT matches golden", rc == 0 and dot1 == golden)
check("DOT deterministic", dot1 == dot2)
nodes = sum(1 for line in dot1.splitlines() if "[pos=" in line)
check("one DOT node per basis vector", nodes == 64, str(nodes))

i3 = os.path.join(tmp, "i3.lie")
with open(i3, "w") as f:
    f.write("# Iwasawa\ndphi1 = 0\ndphi2 = 0\ndphi3 = -phi1^phi2\n")
_, a, _ = run("pages", i3)
_, b, _ = run("pages", "corpus:iwasawa3")
check(".lie file and corpus agree", a == b and a != "")

direction = os.path.join(tmp, "dir.json")
with open(direction, "w") as f:
    json.dump({"theta_1*conj(phi_2)": "1", "theta_2*conj(phi_1)": 1}, f)
rc, out, _ = run("kuranishi", "corpus:iwasawa3", "--direction", direction, "--order", "4")
ok = rc == 0
if ok:
    k = json.loads(out)
    ok = (not k["obstructed"] and len(k["series"]) == 4 and all(s.get("residual_zero", True) for s in k["series"])
          and "theta3" in k["series"][1]["psi"] and k["series"][2]["psi"] == "0")
check("kuranishi on iwasawa3", ok, out)
with open(direction, "w") as f:
    json.dump({"theta_9*conj(phi_1)": "1"}, f)
rc, _, _ = run("kuranishi", "corpus:iwasawa3", "--direction", direction)
check("unknown direction label", rc == 2)

try:
    import jsonschema
except ImportError:
    jsonschema = None
with open(os.path.join(SRC, "docs", "report.schema.json")) as f:
    schema = json.load(f)
for model in ["torus(2)", "h5_tilde", "ce(0,1)"]:
    p1, p2 = os.path.join(tmp, "r1.json"), os.path.join(tmp, "r2.json")
    rc1, _, _ = run("report", "corpus:" + model, "--out", p1)
    rc2, _, _ = run("report", "corpus:" + model, "--out", p2, env={"BICOMPLEX_THREADS": "2"})
    with open(p1, "rb") as f1, open(p2, "rb") as f2:
        same = f1.read() == f2.read()
    check(f"report {model} byte-identical", rc1 == 0 and rc2 == 0 and same)
    if jsonschema:
        with open(p1) as f:
            try:
                jsonschema.validate(json.load(f), schema)
                check(f"report {model} schema", True)
            except jsonschema.ValidationError as e:
                check(f"report {model} schema", False, e.message)
rep = os.path.join(tmp, "bad_report.json")
rc, _, _ = run("report", bad, "--out", rep)
with open(rep) as f:
    r = json.load(f)
check("report on an invalid complex", rc == 0 and r["valid"] is False and set(r) == {"name", "valid", "errors"})
if jsonschema:
    try:
        jsonschema.validate(r, schema)
        check("invalid report schema", True)
    except jsonschema.ValidationError as e:
        check("invalid report schema", False, e.message)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
