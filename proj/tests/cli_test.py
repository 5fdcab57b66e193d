"""End-to-end checks of the affsp command-line tool.

Usage: cli_test.py --cli PATH --schema PATH CASE
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, *args, env=None):
    full_env = dict(os.environ)
    full_env.pop("AFFSP_CACHE_DIR", None)
    full_env.pop("AFFSP_MEMORY_CAP", None)
    full_env.update(env or {})
    return subprocess.run([cli, *args], capture_output=True, text=True, env=full_env, timeout=900)


def expect(cond, message):
    if not cond:
        raise AssertionError(message)


def strip_timing(doc):
    if isinstance(doc, dict):
        return {k: strip_timing(v) for k, v in doc.items() if k != "wall_time_s"}
    if isinstance(doc, list):
        return [strip_timing(v) for v in doc]
    return doc


JSON_INVOCATIONS = [
    ["algebra", "info", "--family", "g", "--n", "1"],
    ["algebra", "info", "--family", "I", "--n", "2"],
    ["homology", "--family", "g", "--n", "1", "--theory", "leibniz", "--max-degree", "3", "--emit-cycles"],
    ["homology", "--family", "g", "--n", "1", "--theory", "adjoint", "--max-degree", "3"],
    ["homology", "--family", "g", "--n", "1", "--theory", "rel", "--max-degree", "1"],
    ["homology", "--family", "g", "--n", "1", "--theory", "cr", "--max-degree", "1"],
    ["homology", "--family", "sp", "--n", "1", "--theory", "coeff:ideal^2", "--max-degree", "3"],
    ["invariants", "--n", "2", "--k-max", "4"],
    ["verify", "thm-4.3", "--n", "1", "--cap", "3"],
    ["verify", "all", "--n", "1"],
]


def case_schema(cli, schema):
    validator = jsonschema.Draft202012Validator(schema)
    for argv in JSON_INVOCATIONS:
        p = run(cli, "--format", "json", *argv)
        expect(p.returncode == 0, f"{argv}: exit {p.returncode}: {p.stderr}")
        doc = json.loads(p.stdout)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        expect(not errors, f"{argv}: schema violations: {[e.message for e in errors[:3]]}")


def case_leibniz_example(cli, schema):
    p = run(cli, "homology", "--family", "g", "--n", "1", "--theory", "leibniz", "--max-degree", "5",
            "--format", "json")
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    doc = json.loads(p.stdout)
    expect(doc["betti"] == [1, 0, 1, 0, 0, 0], f"betti {doc['betti']}")
    expect(all(d["bound"] == "exact" for d in doc["degrees"]), "every reported degree is exact")


def case_csv(cli, schema):
    p = run(cli, "--format", "csv", "homology", "--family", "sp", "--n", "1", "--theory", "lie", "--max-degree", "3")
    expect(p.returncode == 0, p.stderr)
    lines = p.stdout.strip().splitlines()
    expect(lines[0] == "degree,dim,rank_d,rank_d_next,betti", f"header {lines[0]!r}")
    expect([l.split(",")[-1] for l in lines[1:]] == ["1", "0", "0", "1"], p.stdout)


def case_exit_codes(cli, schema):
    ok = run(cli, "verify", "thm-4.3", "--n", "1", "--cap", "5")
    expect(ok.returncode == 0, f"verify thm-4.3: exit {ok.returncode}: {ok.stderr}")
    fam = run(cli, "homology", "--family", "q", "--n", "1", "--theory", "lie", "--max-degree", "2")
    expect(fam.returncode == 2 and "unknown family" in fam.stderr, f"unknown family: {fam.returncode} {fam.stderr}")
    claim = run(cli, "verify", "lemma-9.9", "--n", "1")
    expect(claim.returncode == 2, f"unknown claim: exit {claim.returncode}")
    usage = run(cli, "homology", "--family", "g")
    expect(usage.returncode == 2, f"missing options: exit {usage.returncode}")
    zero = run(cli, "algebra", "info", "--family", "g", "--n", "0")
    expect(zero.returncode == 2, f"n = 0: exit {zero.returncode}")
    guard = run(cli, "--memory-cap", "1000", "homology", "--family", "g", "--n", "1", "--theory", "leibniz",
                "--max-degree", "4")
    expect(guard.returncode == 3 and "memory guard" in guard.stderr, f"guard: {guard.returncode} {guard.stderr}")
    env_guard = run(cli, "homology", "--family", "g", "--n", "1", "--theory", "leibniz", "--max-degree", "4",
                    env={"AFFSP_MEMORY_CAP": "1000"})
    expect(env_guard.returncode == 3, f"env guard: exit {env_guard.returncode}")
    flag_wins = run(cli, "--memory-cap", "10000000", "homology", "--family", "g", "--n", "1", "--theory", "leibniz",
                    "--max-degree", "2", env={"AFFSP_MEMORY_CAP": "1"})
    expect(flag_wins.returncode == 0, f"flag over env: exit {flag_wins.returncode}: {flag_wins.stderr}")


def case_suite(cli, schema):
    p = run(cli, "--format", "json", "verify", "all", "--n", "1")
    doc = json.loads(p.stdout)
    expect(doc["pass"] is True and p.returncode == 0, f"suite: exit {p.returncode}")
    expect([c["claim"] for c in doc["claims"]] ==
           ["lemma-3.3", "thm-4.3", "lemma-4.2", "rel-homology", "sp-vanishing", "e2-page", "exactness", "appendix"],
           "claim order")


def case_cache_identity(cli, schema):
    with tempfile.TemporaryDirectory() as tmp:
        cache = os.path.join(tmp, "cache")
        argv_sets = [
            ["homology", "--family", "g", "--n", "1", "--theory", "leibniz", "--max-degree", "4", "--emit-cycles"],
            ["homology", "--family", "g", "--n", "1", "--theory", "rel", "--max-degree", "2"],
            ["verify", "all", "--n", "1"],
        ]
        for argv in argv_sets:
            cold = run(cli, "--format", "json", "--cache-dir", cache, *argv)
            files = sorted(os.listdir(cache))
            warm = run(cli, "--format", "json", *argv, env={"AFFSP_CACHE_DIR": cache})
            nocache = run(cli, "--format", "json", *argv)
            expect(cold.returncode == warm.returncode == nocache.returncode == 0, f"{argv}: exit codes")
            expect(files and all(f.endswith(".mat") for f in files), f"{argv}: cache files {files[:3]}")
            expect(sorted(os.listdir(cache)) == files, f"{argv}: warm run wrote new files")
            a, b, c = (strip_timing(json.loads(x.stdout)) for x in (cold, warm, nocache))
            expect(a == b == c, f"{argv}: cold and warm payloads differ")
            if "wall_time_s" not in cold.stdout:
                expect(cold.stdout == warm.stdout, f"{argv}: payloads not byte-identical")
        # every cached file parses as "rows cols nnz" followed by nnz "row col num/den" lines
        for name in os.listdir(cache):
            with open(os.path.join(cache, name)) as fh:
                header = fh.readline().split()
                expect(len(header) == 3, f"{name}: header")
                body = fh.read().splitlines()
                expect(len(body) == int(header[2]), f"{name}: entry count")
                for line in body[:50]:
                    r, c, q = line.split()
                    expect("/" in q, f"{name}: entry {line!r}")


CASES = {
    "schema": case_schema,
    "leibniz_example": case_leibniz_example,
    "csv": case_csv,
    "exit_codes": case_exit_codes,
    "suite": case_suite,
    "cache_identity": case_cache_identity,
}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schema", required=True)
    parser.add_argument("case", choices=sorted(CASES))
    args = parser.parse_args()
    with open(args.schema) as fh:
        schema = json.load(fh)
    try:
        CASES[args.case](args.cli, schema)
    except AssertionError as exc:
        print(f"FAIL {args.case}: {exc}")
        return 1
    print(f"PASS {args.case}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
