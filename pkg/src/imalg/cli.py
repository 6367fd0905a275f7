"""Batch front-end: config parsing, suite runner, reports, witness command.

A run builds the affinized matrix, the coordinate algebra, and the image
table for one spec, executes the selected verification suites in a fixed
order, and emits a JSON or text report.  Reports are deterministic for a
fixed config and seed; wall-clock numbers are isolated under a "timings"
key so they can be excluded from byte comparisons.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field

from .coordalg import (CompletionError, GenId, Letter,
                       make_coordinate_algebra)
from .homsuite import (build_image_table, verify_coordinate_consequences,
                       verify_gim_relations, verify_gradedness)
from .liealg import (mat_bracket, membership_check, random_coordinate,
                     verify_bracket_lemmas)
from .rootsys import (AffinizationSpec, Root, RootError, RootKind,
                      base_roots, build_affinized_matrix, cartan_pairing,
                      is_gim)
from .scalars import ONE, QSqrt2
from .witness import TargetSpec, verify_witness

ALL_SUITES = ("matrix", "brackets", "coords", "hom", "grading", "witness",
              "selftest")


class ConfigError(ValueError):
    """Invalid run configuration; carries a distinct code per failure kind."""

    def __init__(self, code: str, exitcode: int, message: str):
        super().__init__(message)
        self.code = code
        self.exitcode = exitcode


@dataclass
class RunConfig:
    rank: int
    adjoined: list = field(default_factory=list)  # (coeffs tuple, copies)
    suites: tuple = ALL_SUITES
    trials: int = 100
    seed: int = 0
    output: str = "-"
    format: str = "json"

    def spec(self) -> AffinizationSpec:
        return AffinizationSpec(
            self.rank,
            tuple((Root(coeffs), copies) for coeffs, copies in self.adjoined),
        )

    def echo(self) -> dict:
        return {
            "rank": self.rank,
            "adjoined": [{"root": list(coeffs), "copies": copies}
                         for coeffs, copies in self.adjoined],
            "suites": list(self.suites),
            "trials": self.trials,
            "seed": self.seed,
            "format": self.format,
        }


def parse_config(document) -> RunConfig:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ConfigError("malformed-document", 2,
                              f"config is not valid JSON: {exc}")
    if not isinstance(document, dict):
        raise ConfigError("malformed-document", 2,
                          "config must be a JSON object")
    rank = document.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 3:
        raise ConfigError("invalid-rank", 3,
                          f"field 'rank' must be an integer >= 3, got {rank!r}")
    adjoined = []
    for k, item in enumerate(document.get("adjoined", [])):
        if (not isinstance(item, dict) or "root" not in item
                or "copies" not in item):
            raise ConfigError(
                "malformed-document", 2,
                f"field 'adjoined[{k}]' must be an object with "
                "'root' and 'copies'")
        coeffs = item["root"]
        if (not isinstance(coeffs, list) or len(coeffs) != rank
                or not all(isinstance(c, int) for c in coeffs)):
            raise ConfigError(
                "invalid-root", 4,
                f"field 'adjoined[{k}].root' must be an integer vector "
                f"of length {rank}")
        try:
            rt = Root(tuple(coeffs))
        except RootError as exc:
            raise ConfigError("invalid-root", 4,
                              f"field 'adjoined[{k}].root': {exc}")
        if rt.kind is not RootKind.LONG:
            raise ConfigError(
                "unsupported-root", 5,
                f"field 'adjoined[{k}].root' is a {rt.kind.value} root; "
                "only long roots are supported")
        copies = item["copies"]
        if not isinstance(copies, int) or copies < 1:
            raise ConfigError(
                "invalid-copies", 6,
                f"field 'adjoined[{k}].copies' must be a positive integer")
        adjoined.append((tuple(coeffs), copies))
    suites = tuple(document.get("suites", list(ALL_SUITES)))
    for s in suites:
        if s not in ALL_SUITES:
            raise ConfigError("invalid-suite", 7,
                              f"field 'suites' contains unknown suite {s!r}")
    trials = document.get("trials", 100)
    if not isinstance(trials, int) or trials < 1:
        raise ConfigError("invalid-trials", 8,
                          "field 'trials' must be an integer >= 1")
    seed = document.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("invalid-seed", 9,
                          "field 'seed' must be an integer")
    return RunConfig(
        rank=rank, adjoined=adjoined, suites=suites, trials=trials,
        seed=seed, output=document.get("output", "-"),
        format=document.get("format", "json"),
    )


# -- individual suites ---------------------------------------------------


def run_matrix_suite(spec: AffinizationSpec) -> dict:
    m = build_affinized_matrix(spec)
    rows = m.rows()
    records = []
    ok = is_gim(rows)
    records.append({"relation": "is-gim", "pass": ok})
    base = base_roots(spec.rank)
    cartan = [[cartan_pairing(a, b) for b in base] for a in base]
    top = [row[:spec.rank] for row in rows[:spec.rank]]
    ok2 = top == cartan
    records.append({"relation": "top-left-cartan-block", "pass": ok2})
    passed = sum(1 for rec in records if rec["pass"])
    return {
        "suite": "matrix", "matrix": rows,
        "passed": passed, "failed": len(records) - passed,
        "records": records,
    }


def run_witness_suite(table, trials: int, seed: int) -> dict:
    rng = random.Random(seed)
    ctx = table.ctx
    r = table.r
    letters = [Letter(g, e) for g in ctx.generators for e in (1, -1)]
    records = []
    passed = failed = 0
    for shape in ("VERT", "HORT", "UL", "UR", "BL"):
        for _ in range(trials):
            if shape in ("VERT", "HORT"):
                ix = (rng.randint(1, r),)
            elif shape == "UL":
                i = rng.randint(1, r)
                j = rng.choice([k for k in range(1, r + 1) if k != i])
                ix = (i, j)
            else:
                ix = (rng.randint(1, r), rng.randint(1, r))
            length = rng.randint(0, 4) if letters else 0
            word = ctx.normal_form(
                rng.choice(letters) for _ in range(length))
            scale = QSqrt2.of(rng.choice((1, -1, 2)))
            target = TargetSpec(shape, ix, word, scale)
            rep = verify_witness(target, table)
            records.append(rep)
            if rep["pass"]:
                passed += 1
            else:
                failed += 1
    return {"suite": "witness", "passed": passed, "failed": failed,
            "seed": seed, "records": records}


def run_selftest_suite(table, trials: int, seed: int) -> dict:
    """Lie axioms on random homogeneous triples plus coordinate ring laws."""
    from .liealg import e_bl, e_hort, e_ul, e_ur, e_vert

    rng = random.Random(seed)
    ctx = table.ctx
    r = table.r
    records = []
    passed = failed = 0

    def check(name, ok):
        nonlocal passed, failed
        records.append({"relation": name, "pass": bool(ok)})
        if ok:
            passed += 1
        else:
            failed += 1

    def random_homogeneous():
        shape = rng.randrange(5)
        a = random_coordinate(ctx, rng)
        i = rng.randint(1, r)
        j = rng.randint(1, r)
        if shape == 0:
            return e_vert(i, a, r)
        if shape == 1:
            return e_hort(i, a, r)
        if shape == 2:
            return e_ul(i, j, a, r)
        if shape == 3:
            return e_ur(i, j, a, r)
        return e_bl(i, j, a, r)

    anti = jacobi = member = True
    for _ in range(trials):
        A, B, C = (random_homogeneous() for _ in range(3))
        AB = mat_bracket(A, B)
        anti = anti and AB == -mat_bracket(B, A)
        member = member and membership_check(AB)
        jac = (mat_bracket(A, mat_bracket(B, C))
               + mat_bracket(B, mat_bracket(C, A))
               + mat_bracket(C, mat_bracket(A, B)))
        jacobi = jacobi and jac.is_zero
    check("lie:antisymmetry", anti)
    check("lie:jacobi", jacobi)
    check("lie:bracket-membership", member)

    assoc = distrib = invol = antiauto = True
    for _ in range(trials):
        a = random_coordinate(ctx, rng)
        b = random_coordinate(ctx, rng)
        c = random_coordinate(ctx, rng)
        assoc = assoc and (a * b) * c == a * (b * c)
        distrib = distrib and a * (b + c) == a * b + a * c
        invol = invol and a.involution().involution() == a
        antiauto = antiauto and (a * b).involution() == \
            b.involution() * a.involution()
    check("ring:associativity", assoc)
    check("ring:distributivity", distrib)
    check("eta:involution", invol)
    check("eta:anti-automorphism", antiauto)

    inverses = True
    for gen in ctx.generators:
        t = ctx.element({(Letter(gen, 1),): ONE})
        ti = ctx.element({(Letter(gen, -1),): ONE})
        inverses = inverses and t * ti == ctx.one() and ti * t == ctx.one()
    check("ring:inverse-laws", inverses)
    return {"suite": "selftest", "passed": passed, "failed": failed,
            "seed": seed, "records": records}


def run(config: RunConfig) -> tuple:
    """Execute the selected suites; returns (report, exit_status)."""
    report: dict = {"config": config.echo(), "suites": {}}
    timings: dict = {}
    try:
        spec = config.spec()
        ctx = make_coordinate_algebra(spec)
        table = build_image_table(spec, ctx)
    except (RootError, ValueError, CompletionError) as exc:
        report["error"] = str(exc)
        report["summary"] = {"passed": 0, "failed": 1, "skipped": 0}
        return report, 1
    selected = [s for s in ALL_SUITES if s in config.suites]
    skipped = len(ALL_SUITES) - len(selected)
    for name in selected:
        t0 = time.perf_counter()
        if name == "matrix":
            rep = run_matrix_suite(spec)
        elif name == "brackets":
            rep = verify_bracket_lemmas(spec.rank, ctx, trials=config.trials,
                                        seed=config.seed)
        elif name == "coords":
            rep = verify_coordinate_consequences(spec, table)
        elif name == "hom":
            rep = verify_gim_relations(spec, table)
        elif name == "grading":
            rep = verify_gradedness(table, samples=max(config.trials, 500),
                                    seed=config.seed)
        elif name == "witness":
            rep = run_witness_suite(table, trials=min(config.trials, 50),
                                    seed=config.seed)
        else:
            rep = run_selftest_suite(table, trials=config.trials,
                                     seed=config.seed)
        timings[name] = time.perf_counter() - t0
        report["suites"][name] = rep
    passed = sum(rep["passed"] for rep in report["suites"].values())
    failed = sum(rep["failed"] for rep in report["suites"].values())
    report["summary"] = {"passed": passed, "failed": failed,
                         "skipped": skipped}
    report["timings"] = timings
    return report, 0 if failed == 0 else 1


# -- rendering -----------------------------------------------------------


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2,
                          default=str) + "\n"
    lines = []
    config = report.get("config", {})
    lines.append(f"rank {config.get('rank')}  "
                 f"adjoined {config.get('adjoined')}")
    if "error" in report:
        lines.append(f"error: {report['error']}")
    if "witness" in report:
        rep = report["witness"]
        lines.append(f"target {rep['target']}  pass {rep['pass']}")
        if "expr" in rep:
            lines.append(f"  {rep['expr']}")
    for name, rep in report.get("suites", {}).items():
        lines.append(f"[{name}] passed {rep['passed']}  failed {rep['failed']}")
        for rec in rep.get("records", []):
            if not rec.get("pass", True):
                lines.append(f"  FAIL {rec}")
    summary = report.get("summary", {})
    lines.append(f"summary: passed {summary.get('passed')}  "
                 f"failed {summary.get('failed')}  "
                 f"skipped {summary.get('skipped')}")
    return "\n".join(lines) + "\n"


def write_output(text: str, path: str) -> None:
    if path in ("-", "", None):
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


_LETTER_RE = re.compile(r"^([xyz])\[([-0-9,]+);(\d+)\](\^-1)?$")


def parse_monomial(text: str, ctx) -> tuple:
    """Parse the canonical word rendering back into a Word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters = []
    for chunk in text.split("·"):
        m = _LETTER_RE.match(chunk.strip())
        if m is None:
            raise ConfigError("invalid-monomial", 10,
                              f"cannot parse letter {chunk!r}")
        kind, coeffs, copy, inv = m.groups()
        try:
            rt = Root(tuple(int(c) for c in coeffs.split(",")))
        except (RootError, ValueError) as exc:
            raise ConfigError("invalid-monomial", 10,
                              f"bad root in letter {chunk!r}: {exc}")
        gen = GenId(kind, rt, int(copy))
        letter = Letter(gen, -1 if inv else 1)
        if letter not in ctx._letter_rank:
            raise ConfigError("invalid-monomial", 10,
                              f"letter {chunk!r} is not in this algebra")
        letters.append(letter)
    return ctx.normal_form(letters)


def _load_config(args) -> RunConfig:
    if args.config:
        with open(args.config) as handle:
            config = parse_config(handle.read())
    else:
        raise ConfigError("malformed-document", 2,
                          "--config PATH is required")
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if getattr(args, "trials", None) is not None:
        config.trials = args.trials
    if getattr(args, "format", None):
        config.format = args.format
    if getattr(args, "output", None):
        config.output = args.output
    return config


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="imalg",
        description="Exact verification engine for affinized intersection "
                    "matrix data and its coordinatized realization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="path to a JSON run configuration")
        p.add_argument("--format", choices=("json", "text"))
        p.add_argument("--output", help="output path, '-' for stdout")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)

    common(sub.add_parser("matrix", help="print the affinized matrix"))
    common(sub.add_parser("verify", help="run the verification suites"))
    wp = sub.add_parser("witness", help="emit a verified bracket expression")
    common(wp)
    wp.add_argument("--shape", required=True,
                    choices=("VERT", "HORT", "UL", "UR", "BL"))
    wp.add_argument("--indices", required=True,
                    help="comma-separated 1-based indices")
    wp.add_argument("--monomial", default="1",
                    help="coordinate monomial in canonical rendering")
    common(sub.add_parser("selftest", help="run internal consistency checks"))

    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        if args.command == "matrix":
            config.suites = ("matrix",)
        elif args.command == "selftest":
            config.suites = ("selftest",)
        if args.command == "witness":
            spec = config.spec()
            ctx = make_coordinate_algebra(spec)
            table = build_image_table(spec, ctx)
            word = parse_monomial(args.monomial, ctx)
            indices = tuple(int(s) for s in args.indices.split(","))
            target = TargetSpec(args.shape, indices, word)
            rep = verify_witness(target, table)
            report = {"config": config.echo(), "witness": rep,
                      "summary": {"passed": int(rep["pass"]),
                                  "failed": int(not rep["pass"]),
                                  "skipped": 0}}
            status = 0 if rep["pass"] else 1
        else:
            report, status = run(config)
    except ConfigError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return exc.exitcode
    write_output(render_report(report, config.format), config.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
