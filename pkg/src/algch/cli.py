"""Command-line front end.

    algch <command> [--max-q N] [--k K] [--seed S] [--out report.json] inputs...

Commands: validate, cohomology, char, modular, cs, morita-check,
product, batch.  Reports go to stdout as text and, with --out, to a
JSON file that mirrors the verdicts with exact rational strings.  Exit
status is 0 iff every asserted identity held.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .scalars import Scalar
from .linalg import Matrix
from .algebroid import betti_number, coboundary_witness
from .connections import HermitianMetric, h_dual
from .transgression import cs_cochain
from .charclasses import adjoint_setup, intrinsic_char, modular_class, default_max_q
from .pullback import SubmersionSpec, pullback_algebroid, morita_check
from . import fileio
from .fileio import ParseError


def _default_metric(extras, bundle, a):
    g_a = extras.get("g_A", Matrix.identity(a.r))
    g_m = extras.get("g_M", Matrix.identity(a.n))
    return HermitianMetric(bundle, g_a, g_m), g_a, g_m


def _tm_conn(extras, a):
    return extras.get("tm_conn", [Matrix.zeros(a.r, a.r) for _ in range(a.n)])


def _random_pd(n: int, rng: random.Random) -> Matrix:
    m = Matrix(
        [
            [
                Scalar(
                    Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
                    Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
                )
                for _ in range(n)
            ]
            for _ in range(n)
        ],
        ncols=n,
    )
    return m.conj_transpose() * m + Matrix.identity(n)


def cmd_validate(job):
    try:
        a, _ = fileio.load_algebroid(job["inputs"][0])
    except ParseError as e:
        return {"verdict": "INVALID", "violations": str(e)}, 1, [f"INVALID: {e}"]
    return (
        {"verdict": "VALID", "base_dim": a.n, "rank": a.r},
        0,
        [f"VALID (base_dim={a.n}, rank={a.r})"],
    )


def cmd_cohomology(job):
    a, _ = fileio.load_algebroid(job["inputs"][0])
    betti = [betti_number(a, k) for k in range(a.r + 1)]
    return {"betti": betti}, 0, ["Betti: " + " ".join(map(str, betti))]


def cmd_char(job):
    a, extras = fileio.load_algebroid(job["inputs"][0])
    max_q = job["options"].get("max_q") or default_max_q(a)
    tm = _tm_conn(extras, a)
    setup = adjoint_setup(a, tm)
    g, _, _ = _default_metric(extras, setup.data.bundle, a)
    reports = intrinsic_char(a, tm, g, max_q)
    lines, out = [], []
    for rep in reports:
        verdict = "ZERO" if rep.is_zero_class else "NONZERO"
        lines.append(f"char^{rep.q}: {verdict}")
        out.append(
            {
                "q": rep.q,
                "is_zero_class": rep.is_zero_class,
                "representative": fileio.form_to_json(rep.representative),
                "witness": fileio.form_to_json(rep.witness)
                if rep.witness is not None
                else None,
            }
        )
    return {"classes": out}, 0, lines


def cmd_modular(job):
    a, extras = fileio.load_algebroid(job["inputs"][0])
    tm = _tm_conn(extras, a)
    setup = adjoint_setup(a, tm)
    g, _, _ = _default_metric(extras, setup.data.bundle, a)
    result = modular_class(a, tm, g, normalize=True)
    rep = result.report
    verdict = "ZERO" if rep.is_zero_class else "NONZERO"
    return (
        {
            "is_zero_class": rep.is_zero_class,
            "representative": fileio.form_to_json(rep.representative),
            "normalized": fileio.form_to_json(result.normalized),
        },
        0,
        [
            f"modular class: {verdict}",
            "normalized: " + json.dumps(fileio.form_to_json(result.normalized)),
        ],
    )


def cmd_cs(job):
    """cs^q(basic connection, its metric dual) for q = 1..max_q."""
    a, extras = fileio.load_algebroid(job["inputs"][0])
    max_q = job["options"].get("max_q") or default_max_q(a)
    tm = _tm_conn(extras, a)
    setup = adjoint_setup(a, tm)
    g, _, _ = _default_metric(extras, setup.data.bundle, a)
    dual = h_dual(setup.basic, g)
    out, lines = [], []
    for q in range(1, max_q + 1):
        form = cs_cochain([setup.basic, dual], q)
        out.append({"q": q, "form": fileio.form_to_json(form)})
        lines.append(f"cs^{q}: " + ("0" if form.is_zero() else json.dumps(fileio.form_to_json(form))))
    return {"cochains": out}, 0, lines


def cmd_morita_check(job):
    a, extras = fileio.load_algebroid(job["inputs"][0])
    opts = job["options"]
    k = opts.get("k") or 1
    max_q = opts.get("max_q") or 2
    seed = opts.get("seed") if opts.get("seed") is not None else 0
    rng = random.Random(seed)
    tm = _tm_conn(extras, a)
    g_a = extras.get("g_A", Matrix.identity(a.r))
    g_m = extras.get("g_M", Matrix.identity(a.n))
    g_v = extras.get("g_V", Matrix.identity(k))
    if g_v.nrows != k:
        raise ParseError(f"g_V must be {k} x {k} for k={k}")
    spec = SubmersionSpec(k, g_v)
    pb = pullback_algebroid(a, spec)
    alt_setup = adjoint_setup(pb, [Matrix.zeros(pb.r, pb.r)] * pb.n)
    alt = HermitianMetric(
        alt_setup.data.bundle, _random_pd(pb.r, rng), _random_pd(pb.n, rng)
    )
    report = morita_check(a, spec, tm, g_a, g_m, max_q=max_q, alt_metric=alt)
    lines = []
    for q, res in report.per_q.items():
        verdict = "EQUAL" if res["equal"] else "DIFFER"
        suffix = " (both zero)" if res["both_zero"] else ""
        lines.append(f"q={q}: {verdict}{suffix}")
    for q, ok in report.cohomologous.items():
        lines.append(f"q={q} perturbed metric: {'cohomologous' if ok else 'NOT cohomologous'}")
    status = 0 if report.passed else 1
    return (
        {
            "k": k,
            "max_q": max_q,
            "seed": seed,
            "per_q": report.per_q,
            "cohomologous": report.cohomologous,
            "passed": report.passed,
        },
        status,
        lines,
    )


def cmd_product(job):
    from .algebroid import direct_product

    a, _ = fileio.load_algebroid(job["inputs"][0])
    b, _ = fileio.load_algebroid(job["inputs"][1])
    prod = direct_product(a, b)
    doc = fileio.serialize_algebroid(prod)
    return {"product": doc}, 0, [json.dumps(doc, indent=2)]


COMMANDS = {
    "validate": (cmd_validate, 1),
    "cohomology": (cmd_cohomology, 1),
    "char": (cmd_char, 1),
    "modular": (cmd_modular, 1),
    "cs": (cmd_cs, 1),
    "morita-check": (cmd_morita_check, 1),
    "product": (cmd_product, 2),
}


def run(job: dict):
    """Dispatch one job: {'command', 'inputs', 'options'}."""
    command = job["command"]
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}")
    fn, arity = COMMANDS[command]
    if len(job["inputs"]) != arity:
        raise ParseError(f"{command} takes {arity} input file(s)")
    try:
        payload, status, lines = fn(job)
    except ParseError as e:
        return {"command": command, "inputs": job["inputs"], "error": str(e)}, 1, [f"error: {e}"]
    report = {
        "command": command,
        "inputs": job["inputs"],
        "options": job["options"],
        **payload,
    }
    return report, status, lines


def cmd_batch(path: str):
    with open(path, encoding="utf-8") as fh:
        jobs = json.load(fh)
    normalized = [
        {
            "command": j["command"],
            "inputs": j.get("inputs", []),
            "options": j.get("options", {}),
        }
        for j in jobs
    ]
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(run, normalized))
    reports, status, lines = [], 0, []
    for (report, st, ls), job in zip(results, normalized):
        reports.append(report)
        status = max(status, st)
        lines.append(f"== {job['command']} {' '.join(job['inputs'])}")
        lines.extend(ls)
    return {"batch": reports}, status, lines


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="algch",
        description="Exact characteristic classes of constant-coefficient Lie algebroids",
    )
    parser.add_argument("command", choices=list(COMMANDS) + ["batch"])
    parser.add_argument("inputs", nargs="+", help="input JSON file(s)")
    parser.add_argument("--max-q", type=int, default=None)
    parser.add_argument("--k", type=int, default=None, help="fibre coordinates for morita-check")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    parser.add_argument("--out", default=None, help="write the JSON report here")
    args = parser.parse_args(argv)

    try:
        if args.command == "batch":
            report, status, lines = cmd_batch(args.inputs[0])
        else:
            job = {
                "command": args.command,
                "inputs": args.inputs,
                "options": {"max_q": args.max_q, "k": args.k, "seed": args.seed},
            }
            report, status, lines = run(job)
    except (ParseError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for line in lines:
        print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
    return status


if __name__ == "__main__":
    sys.exit(main())
