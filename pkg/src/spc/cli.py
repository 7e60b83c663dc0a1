"""Command-line front end.

    spc run JOB [--json PATH] [--field QQ|GF(p)] [--verify-certificates]
                [--slow] [--threads N]
    spc catalog list
    spc check --ring "QQ[x,y,z]" --ideal "g1; g2; ..." --m 3 --r 2

Exit codes: 0 all tasks completed, 2 any input or per-task computation
error, 3 an internal invariant violation (a round-trip disagreement, a
failed invariant check, or an internal consistency error).  Code 3 wins
over 2 when both occur: a falsified engine matters more than a bad input.

JSON reports carry `schema: 1`.  Witness polynomials and rational bounds
are canonical strings, never floats.  Re-running the same job with the
same engine version reproduces every verdict byte-for-byte; only the
`timestamp` field and the `elapsed_seconds` timing fields vary between
runs, so determinism comparisons strip exactly those.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .coeff import FieldSpec
from .errors import InternalCheckFailed, SpcError
from .expr import CheckTask, InvariantsTask, RoundtripTask, ScanTask, parse_job
from .idealops import (
    Ideal,
    colon,
    degree,
    ideal_equal,
    ideal_power,
    ideal_product,
    intersect,
    irrelevant_ideal,
    krull_dim,
    saturate_irrelevant,
    substitution_map,
)
from .symbolic import (
    check_containment,
    check_lemma3,
    check_roundtrip,
    resurgence_scan,
    verify_certificate,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3


@dataclass
class Report:
    """A finished run: JSON-ready data plus the process exit code."""

    data: dict
    exit_code: int

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True) + "\n"


def _round(seconds: float) -> float:
    return round(seconds, 6)


def _certificate_json(cert, verify: bool) -> dict:
    out = {
        "m": cert.m,
        "r": cert.r,
        "verdict": cert.verdict,
        "witness": None if cert.witness is None else str(cert.witness),
        "stats": {
            "symbolic_gb_size": cert.stats["symbolic_gb_size"],
            "power_gb_size": cert.stats["power_gb_size"],
            "symbolic_max_degree": cert.stats["symbolic_max_degree"],
            "power_max_degree": cert.stats["power_max_degree"],
            "elapsed_seconds": _round(cert.stats["elapsed_seconds"]),
        },
    }
    if verify:
        out["reverified"] = verify_certificate(cert)
    return out


def _run_check(task: CheckTask, ideals, maps, flags) -> dict:
    cert = check_containment(ideals[task.ideal], task.m, task.r)
    result = _certificate_json(cert, flags["verify"])
    out = {"kind": "check", "ideal": task.ideal, "result": result}
    if flags["verify"] and not result["reverified"]:
        out["violation"] = True
    return out


def _run_roundtrip(task: RoundtripTask, ideals, maps, flags) -> dict:
    I = ideals[task.ideal]
    phi = maps[task.map]()
    report = check_roundtrip(I, phi, task.m, task.r)
    result = {
        "source": _certificate_json(report.source, flags["verify"]),
        "image": _certificate_json(report.image, flags["verify"]),
        "agree": report.agree,
        "saturation_changed": report.saturation_changed,
    }
    if flags["slow"]:
        result["pushforward_commutes_with_symbolic_power"] = check_lemma3(I, phi, task.m)
    else:
        result["pushforward_commutes_with_symbolic_power"] = "skipped"
    violation = not report.agree
    if result["pushforward_commutes_with_symbolic_power"] is False:
        violation = True
    if flags["verify"]:
        for side in ("source", "image"):
            if not result[side]["reverified"]:
                violation = True
    out = {"kind": "roundtrip", "ideal": task.ideal, "map": task.map, "result": result}
    if violation:
        out["violation"] = True
    return out


def _run_scan(task: ScanTask, ideals, maps, flags) -> dict:
    bound = resurgence_scan(ideals[task.ideal], task.smax, task.tmax)
    failures = []
    for cert in bound.failures:
        entry = {"s": cert.m, "t": cert.r, "witness": str(cert.witness)}
        if flags["verify"]:
            entry["reverified"] = verify_certificate(cert)
        failures.append(entry)
    result = {
        "smax": bound.smax,
        "tmax": bound.tmax,
        "failures": failures,
        "skipped_by_theory": [list(p) for p in bound.skipped_by_theory],
        "checked_pairs": [[c.m, c.r] for c in bound.certificates],
        "lower_bound": str(bound.lower_bound),
    }
    out = {"kind": "scan", "ideal": task.ideal, "result": result}
    if any(f.get("reverified") is False for f in failures):
        out["violation"] = True
    return out


def _invariant_checks(I: Ideal, slow: bool):
    """Self-consistency suite for one ideal; every check must pass."""
    ring = I.ring
    m = irrelevant_ideal(ring)
    S = saturate_irrelevant(I)
    yield "saturation_idempotent", ideal_equal(saturate_irrelevant(S), S)
    yield "saturation_contains_ideal", S.contains_ideal(I)
    data = degree(S)
    yield "saturated_dimension_is_1", data.krull_dimension == 1 == krull_dim(S)
    yield "multiplicity_positive", data.multiplicity > 0
    P2 = ideal_power(S, 2)
    S2 = saturate_irrelevant(P2)
    yield "square_inside_symbolic_square", S2.contains_ideal(P2)
    S3 = saturate_irrelevant(ideal_power(S, 3))
    yield "symbolic_powers_antitone", S2.contains_ideal(S3)
    yield "els_bound_2_1", S.contains_ideal(S2)
    meet = intersect(S, m)
    yield "intersection_shrinks", S.contains_ideal(meet) and m.contains_ideal(meet)
    quot = colon(S, m)
    yield "colon_grows", quot.contains_ideal(S)
    yield "colon_product_back_inside", S.contains_ideal(ideal_product(quot, m))
    if slow:
        S4 = saturate_irrelevant(ideal_power(S, 4))
        yield "els_bound_4_2", P2.contains_ideal(S4)


def _run_invariants(task: InvariantsTask, ideals, maps, flags) -> dict:
    checks = []
    failed = 0
    for name, ok in _invariant_checks(ideals[task.ideal], flags["slow"]):
        checks.append({"name": name, "passed": bool(ok)})
        if not ok:
            failed += 1
    result = {"checks": checks, "passed": len(checks) - failed, "total": len(checks)}
    out = {"kind": "invariants", "ideal": task.ideal, "result": result}
    if failed:
        out["violation"] = True
    return out


_RUNNERS = {
    CheckTask: _run_check,
    RoundtripTask: _run_roundtrip,
    ScanTask: _run_scan,
    InvariantsTask: _run_invariants,
}


def _execute_task(task, ideals, maps, flags) -> dict:
    started = time.perf_counter()
    try:
        out = _RUNNERS[type(task)](task, ideals, maps, flags)
        out["status"] = "ok"
    except InternalCheckFailed as e:
        out = {"kind": _RUNNERS[type(task)].__name__.removeprefix("_run_"),
               "status": "error", "error": f"{type(e).__name__}: {e}", "violation": True}
    except SpcError as e:
        out = {"kind": _RUNNERS[type(task)].__name__.removeprefix("_run_"),
               "status": "error", "error": f"{type(e).__name__}: {e}"}
    out["line"] = task.line
    out["elapsed_seconds"] = _round(time.perf_counter() - started)
    return out


def run_job(path: str, *, field: str | None = None, verify_certificates: bool = False,
            slow: bool = False, threads: int = 1, json_path: str | None = None) -> Report:
    """Run every task in a job file and assemble the report."""
    text = Path(path).read_text(encoding="utf-8")
    override = FieldSpec.from_text(field) if field else None
    job = parse_job(text, field_override=override)
    ring = job.ring

    ideals = {name: Ideal(ring, decl.generators) for name, decl in job.ideals.items()}

    # maps are verified (regular sequence check) once, lazily, so that a bad
    # map fails the tasks using it without aborting its siblings
    map_cache: dict[str, object] = {}

    def map_getter(name):
        def get():
            got = map_cache.get(name)
            if got is None:
                got = map_cache[name] = substitution_map(ring, job.maps[name].images, ring)
            return got
        return get

    maps = {name: map_getter(name) for name in job.maps}
    flags = {"verify": verify_certificates, "slow": slow}

    if threads > 1 and len(job.tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: _execute_task(t, ideals, maps, flags),
                                    job.tasks))
    else:
        results = [_execute_task(t, ideals, maps, flags) for t in job.tasks]

    exit_code = EXIT_OK
    if any(r["status"] == "error" for r in results):
        exit_code = EXIT_INPUT
    if any(r.get("violation") for r in results):
        exit_code = EXIT_VIOLATION

    data = {
        "schema": 1,
        "engine": __version__,
        "job": Path(path).name,
        "ring": str(ring),
        "field": repr(ring.field),
        "field_override": None if job.declared_field is None else {
            "declared": repr(job.declared_field),
            "used": repr(ring.field),
            "note": "verdicts over a prime field are evidence, not proof, "
                    "for the characteristic-0 statement",
        },
        "flags": {"verify_certificates": verify_certificates, "slow": slow,
                  "threads": threads},
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "tasks": results,
    }
    report = Report(data, exit_code)
    if json_path:
        Path(json_path).write_text(report.to_json(), encoding="utf-8")
    return report


# -- human-readable rendering --


def _describe_task(r: dict) -> str:
    kind = r["kind"]
    if r["status"] == "error":
        return f"{kind}: ERROR {r['error']}"
    res = r["result"]
    if kind == "check":
        cert = res
        line = f"check {r['ideal']} {cert['m']} {cert['r']}: {cert['verdict']}"
        if cert["witness"]:
            line += f"  witness {cert['witness']}"
        if "reverified" in cert:
            line += f"  [reverified: {cert['reverified']}]"
        return line
    if kind == "roundtrip":
        s, i = res["source"], res["image"]
        line = (f"roundtrip {r['ideal']} via {r['map']} {s['m']} {s['r']}: "
                f"source {s['verdict']}, image {i['verdict']}, "
                f"{'AGREE' if res['agree'] else 'DISAGREE'}")
        if res["saturation_changed"]:
            line += "  [image saturation changed the ideal]"
        lem = res["pushforward_commutes_with_symbolic_power"]
        if lem != "skipped":
            line += f"  [pushforward/symbolic-power identity: {lem}]"
        return line
    if kind == "scan":
        fails = ", ".join(f"({f['s']},{f['t']})" for f in res["failures"]) or "none"
        skips = ", ".join(f"({s},{t})" for s, t in res["skipped_by_theory"]) or "none"
        return (f"scan {r['ideal']} {res['smax']} {res['tmax']}: failures {fails}; "
                f"skipped by theory {skips}; lower bound {res['lower_bound']}")
    if kind == "invariants":
        bad = [c["name"] for c in res["checks"] if not c["passed"]]
        line = f"invariants {r['ideal']}: {res['passed']}/{res['total']} passed"
        if bad:
            line += "  FAILED: " + ", ".join(bad)
        return line
    return f"{kind}: done"


def render_report(report: Report) -> str:
    data = report.data
    lines = [f"spc {data['engine']}  ring {data['ring']}"]
    if data["field_override"]:
        fo = data["field_override"]
        lines.append(f"FIELD OVERRIDE: running over {fo['used']} "
                     f"(job declares {fo['declared']}); {fo['note']}")
    for i, r in enumerate(data["tasks"], start=1):
        lines.append(f"[{i}] {_describe_task(r)}  ({r['elapsed_seconds']:.2f}s)")
    states = [r["status"] for r in data["tasks"]]
    viol = any(r.get("violation") for r in data["tasks"])
    if viol:
        lines.append("RESULT: INVARIANT VIOLATION (see above)")
    elif "error" in states:
        lines.append("RESULT: completed with task errors")
    else:
        lines.append("RESULT: all tasks completed")
    return "\n".join(lines) + "\n"


# -- argument parsing and entry point --


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spc",
                                 description="Symbolic-power containment engine")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a job file")
    run.add_argument("job", help="path to the job file")
    run.add_argument("--json", metavar="PATH", help="also write a JSON report")
    run.add_argument("--field", metavar="SPEC",
                     help="override the job's field, e.g. GF(9001) or QQ")
    run.add_argument("--verify-certificates", action="store_true",
                     help="re-check every witness with the linear-algebra oracle")
    run.add_argument("--slow", action="store_true",
                     help="enable the heavy extra checks (pushforward/symbolic-power "
                          "identity on roundtrips, deeper invariant suite)")
    run.add_argument("--threads", type=int, default=1, metavar="N",
                     help="run independent tasks on up to N threads")

    cat = sub.add_parser("catalog", help="built-in configurations")
    cat.add_argument("action", choices=["list"])

    chk = sub.add_parser("check", help="one containment question, no job file")
    chk.add_argument("--ring", required=True, help='e.g. "QQ[x,y,z]"')
    chk.add_argument("--ideal", required=True,
                     help='generators separated by ";", or a catalog name like @cehh')
    chk.add_argument("--m", type=int, required=True, help="symbolic exponent")
    chk.add_argument("--r", type=int, required=True, help="ordinary exponent")
    chk.add_argument("--json", metavar="PATH", help="also write a JSON report")
    return ap


def _cmd_catalog_list() -> int:
    from .catalog import list_entries

    rows = list_entries()
    width = max(len(r[0]) for r in rows)
    for name, kind, summary in rows:
        print(f"{name:<{width}}  {kind:<5}  {summary}")
    return EXIT_OK


def _cmd_check(args) -> int:
    from .catalog import entry as catalog_entry
    from .errors import ParseError
    from .expr import parse_polynomial, parse_ring

    ring = parse_ring(args.ring)
    spelled = args.ideal.strip()
    if spelled.startswith("@"):
        name, _, arg = spelled[1:].partition("(")
        try:
            arg = int(arg.rstrip(")")) if arg else None
        except ValueError:
            raise ParseError(f"malformed catalog argument in {spelled!r}", (1, 1)) from None
        gens = list(catalog_entry(name.strip(), arg, ring).generators)
    else:
        gens = [parse_polynomial(part, ring)
                for part in spelled.split(";") if part.strip()]
    cert = check_containment(Ideal(ring, gens), args.m, args.r)
    print(f"I^({args.m}) {'<=' if cert.contained else '!<='} I^{args.r}: {cert.verdict}")
    if cert.witness is not None:
        print(f"witness: {cert.witness}")
    if args.json:
        payload = {"schema": 1, "engine": __version__, "ring": str(ring),
                   "result": _certificate_json(cert, verify=False)}
        Path(args.json).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                                   encoding="utf-8")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            return _cmd_catalog_list()
        if args.command == "check":
            return _cmd_check(args)
        report = run_job(args.job, field=args.field,
                         verify_certificates=args.verify_certificates,
                         slow=args.slow, threads=args.threads,
                         json_path=args.json)
        sys.stdout.write(render_report(report))
        return report.exit_code
    except InternalCheckFailed as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (SpcError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
