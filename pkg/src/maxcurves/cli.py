"""Command-line front end: runs the verification suites, emits machine-readable reports.

Exit codes: 0 when every checked identity holds, 1 when a verification fails,
2 for invalid parameters.  Reports are deterministic; timings are integer
milliseconds and only populated under --timings so that repeated runs with the
same configuration stay byte-identical by default.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import coverings, ellgroup, plane, special_set
from .families import (
    BadCharacteristic,
    DivisibilityViolated,
    FamilyError,
    HurwitzParams,
    fermat,
    hermitian,
    hurwitz,
    line_L,
    weierstrass_model,
)
from .ffield import FieldCtx, FieldError, make_field, poly_str, prime_power
from .plane import GenusUnknown, is_maximal
from .special_set import (
    BasisDependentCheck,
    Q11_EXCLUDED_TRIPLES,
    Q11_VALID_TRIPLES,
    SplitSet,
    build_S,
    fundamental_points,
    q11_triples,
    verify_claim1,
)


class InvalidParams(Exception):
    """Configuration cannot be turned into a computation."""


_TERM_RE = re.compile(r"^([0-9]+)?\*?(x(\^([0-9]+))?)?$")


def parse_poly(text: str, p: int) -> tuple[int, ...]:
    """Parse an integer-coefficient polynomial in x ('^' for powers) mod p."""
    s = text.replace(" ", "").replace("**", "^").lower()
    if not s:
        raise InvalidParams("empty polynomial")
    tokens = re.findall(r"[+-]?[^+-]+", s)
    if "".join(tokens) != s:
        raise InvalidParams(f"bad polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for tok in tokens:
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        m = _TERM_RE.match(tok)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InvalidParams(f"bad polynomial term {tok!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            e = int(m.group(4)) if m.group(4) else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    deg = max(coeffs)
    return tuple(coeffs.get(i, 0) % p for i in range(deg + 1))


@dataclass
class RunConfig:
    """Validated parameters for one CLI invocation."""

    command: str
    q: int
    curve: Optional[str] = None
    n: Optional[int] = None
    d: Optional[int] = None
    modulus: Optional[str] = None
    output: Optional[str] = None
    fmt: str = "json"
    threads: int = 1
    cross_check: bool = False
    timings: bool = False

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "q": self.q,
            "curve": self.curve,
            "n": self.n,
            "d": self.d,
            "modulus": self.modulus,
            "format": self.fmt,
            "threads": self.threads,
            "cross_check": self.cross_check,
        }


def _make_ctx(config: RunConfig) -> FieldCtx:
    try:
        p, m = prime_power(config.q)
    except ValueError as exc:
        raise InvalidParams(str(exc)) from None
    mod = parse_poly(config.modulus, p) if config.modulus else None
    return make_field(p, m, mod)


def _curve_for(config: RunConfig, ctx: FieldCtx):
    name = config.curve
    if name == "hermitian":
        return hermitian(config.q)
    if name == "hurwitz":
        if config.n is None:
            raise InvalidParams("--curve hurwitz needs --n")
        return hurwitz(HurwitzParams(config.n, config.q))
    if name == "fermat":
        if config.d is None:
            raise InvalidParams("--curve fermat needs --d")
        return fermat(config.d, config.q)
    if name == "weierstrass":
        return weierstrass_model(config.q)
    if name == "line":
        return line_L()
    raise InvalidParams(f"unknown curve {name!r}")


def _params_for(config: RunConfig) -> HurwitzParams:
    if config.n is None:
        raise InvalidParams(f"command {config.command!r} needs --n")
    return HurwitzParams(config.n, config.q)


Step = tuple[str, Callable[[], tuple[str, str, dict]]]


def _run_steps(steps: list[Step], threads: int, want_timings: bool):
    """Execute verification steps, sequentially or on a pool, in stable order."""
    results = []
    timings = {}

    def execute(item: Step):
        name, fn = item
        start = time.perf_counter()
        status, summary, data = fn()
        elapsed_ms = int((time.perf_counter() - start) * 1000)
        return name, status, summary, data, elapsed_ms

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(execute, steps))
    else:
        outcomes = [execute(s) for s in steps]
    for name, status, summary, data, ms in outcomes:
        results.append({"name": name, "status": status, "summary": summary, "data": data})
        if want_timings:
            timings[name] = ms
    return results, timings


def _verify_all_steps(config: RunConfig, ctx: FieldCtx) -> list[Step]:
    params = _params_for(config)
    split_holder: dict[str, SplitSet] = {}

    def get_split() -> SplitSet:
        if "s" not in split_holder:
            split_holder["s"] = build_S(params, ctx)
        return split_holder["s"]

    def step_claim1():
        rep = verify_claim1(params, ctx)
        summary = (f"#S={rep.s_count} (expected {rep.s_expected}), "
                   f"t={rep.t_count} (expected {rep.t_expected})")
        return ("pass" if rep.ok else "fail"), summary, rep.as_dict()

    def step_triples():
        if params.q != 11 or params.n != 2:
            return "skip", "only defined for n=2, q=11", {}
        try:
            found = q11_triples(ctx)
        except BasisDependentCheck as exc:
            return "skip", str(exc), {}
        ok = found == Q11_VALID_TRIPLES and found.isdisjoint(Q11_EXCLUDED_TRIPLES)
        return (
            ("pass" if ok else "fail"),
            f"{len(found)} solution triples with b != 0",
            {"triples": sorted(map(list, found)),
             "expected": sorted(map(list, Q11_VALID_TRIPLES)),
             "excluded": sorted(map(list, Q11_EXCLUDED_TRIPLES))},
        )

    def step_claim2():
        if params.n != 2:
            return "skip", "group-law checks need the genus-1 model (n=2)", {}
        image = ellgroup.phi_set(get_split().points)
        sub = ellgroup.subgroup_closure(image, ctx)
        ok = set(sub.elements) == set(image) and sub.order == get_split().size
        summary = f"closure order {sub.order}, image size {len(image)}"
        return ("pass" if ok else "fail"), summary, {
            "closure_order": sub.order, "image_size": len(image), "closed": ok}

    def step_index():
        if params.n != 2:
            return "skip", "group-law checks need the genus-1 model (n=2)", {}
        image = ellgroup.phi_set(get_split().points)
        idx = ellgroup.index_dS(image, ctx)
        full = len(plane.enumerate_points(weierstrass_model(config.q), ctx))
        ok = (config.q + 1) ** 2 % idx == 0
        return ("pass" if ok else "fail"), f"d_S={idx}, group order {full}", {
            "d_s": idx, "group_order": full, "divides_q_plus_1_squared": ok}

    def step_torsion():
        if params.n != 2:
            return "skip", "torsion check runs on the genus-1 model (n=2)", {}
        rep = ellgroup.check_torsion(ctx)
        return ("pass" if rep.ok else "fail"), (
            f"order {rep.order} (expected {rep.expected_order})"), rep.as_dict()

    def step_theorem():
        rep = coverings.verify_theorem_instance(get_split(), ctx)
        summary = (f"d*#S = {rep.d}*{rep.s_count} = {rep.d * rep.s_count}, "
                   f"#F_d = {rep.covering.fermat_count}")
        return ("pass" if rep.ok else "fail"), summary, rep.as_dict()

    def step_splitting():
        rep = coverings.verify_splitting(get_split(), ctx, cross_check=config.cross_check)
        ok = (rep.unramified and rep.split_points == rep.s_count
              and rep.cross_check_ok is not False)
        return ("pass" if ok else "fail"), (
            f"{rep.split_points}/{rep.s_count} points split, degree {rep.degree}"
        ), rep.as_dict()

    def step_corollary():
        rep = coverings.verify_corollary_instance(get_split(), ctx)
        return ("pass" if rep.ok else "fail"), (
            f"g={rep.g} vs threshold {rep.threshold} "
            f"(hypothesis {'holds' if rep.hypothesis_holds else 'fails'})"
        ), rep.as_dict()

    def step_negative_control():
        control = SplitSet.assemble(fundamental_points(ctx), params)
        rep = coverings.verify_theorem_instance(control, ctx)
        caught = not rep.ok and not rep.covering.count_identity
        return ("pass" if caught else "fail"), (
            "count identity rejected the 3-point control" if caught
            else "control was not rejected"), rep.as_dict()

    return [
        ("claim1", step_claim1),
        ("triples_q11", step_triples),
        ("claim2_closure", step_claim2),
        ("index_d_s", step_index),
        ("torsion", step_torsion),
        ("splitting", step_splitting),
        ("theorem", step_theorem),
        ("corollary", step_corollary),
        ("negative_control", step_negative_control),
    ]


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit_code, report)."""
    ctx = _make_ctx(config)
    report: dict = {
        "config": config.as_dict(),
        "field": {
            "p": ctx.p,
            "m": ctx.m,
            "q": ctx.q,
            "q_squared": ctx.size,
            "modulus": list(ctx.modulus),
            "modulus_str": poly_str(ctx.modulus),
        },
        "results": [],
        "failures": [],
        "timings": {},
    }

    if config.command == "count":
        curve = _curve_for(config, ctx)
        start = time.perf_counter()
        pts = plane.enumerate_points(curve, ctx)
        ms = int((time.perf_counter() - start) * 1000)
        report["results"].append({
            "name": "count", "status": "pass",
            "summary": f"{curve.label}: {len(pts)} rational points",
            "data": {"curve": curve.label, "degree": curve.degree,
                     "genus": curve.genus, "count": len(pts)},
        })
        if config.timings:
            report["timings"]["count"] = ms
    elif config.command == "maximal":
        curve = _curve_for(config, ctx)
        rep = is_maximal(curve, ctx)
        report["results"].append({
            "name": "maximal", "status": "pass" if rep.maximal else "fail",
            "summary": (f"{curve.label}: count {rep.count} vs Weil bound "
                        f"{rep.weil_upper}"),
            "data": rep.as_dict(),
        })
    elif config.command == "build-s":
        params = _params_for(config)
        split = build_S(params, ctx)
        report["results"].append({
            "name": "build-s", "status": "pass",
            "summary": f"#S={split.size}, t={split.t}",
            "data": split.as_dict(),
        })
    elif config.command == "subgroup":
        params = _params_for(config)
        if params.n != 2:
            raise InvalidParams("subgroup command needs the genus-1 model (n=2)")
        split = build_S(params, ctx)
        image = ellgroup.phi_set(split.points)
        sub = ellgroup.subgroup_closure(image, ctx)
        idx = ellgroup.index_dS(image, ctx)
        torsion = ellgroup.check_torsion(ctx)
        closed = set(sub.elements) == set(image)
        report["results"].append({
            "name": "subgroup", "status": "pass" if closed and torsion.ok else "fail",
            "summary": f"order {sub.order}, index d_S={idx}",
            "data": {"order": sub.order, "d_s": idx, "closed": closed,
                     "torsion": torsion.as_dict(),
                     "generators": [g.coeff_vectors() for g in sub.generators]},
        })
    elif config.command == "covering":
        params = _params_for(config)
        split = build_S(params, ctx)
        rep = coverings.verify_splitting(split, ctx, cross_check=config.cross_check)
        ok = (rep.unramified and rep.split_points == rep.s_count
              and rep.cross_check_ok is not False)
        report["results"].append({
            "name": "covering", "status": "pass" if ok else "fail",
            "summary": (f"{rep.split_points}/{rep.s_count} points split, "
                        f"degree {rep.degree}"),
            "data": rep.as_dict(),
        })
    elif config.command == "verify-all":
        steps = _verify_all_steps(config, ctx)
        results, timings = _run_steps(steps, config.threads, config.timings)
        report["results"] = results
        report["timings"] = timings
    else:
        raise InvalidParams(f"unknown command {config.command!r}")

    report["failures"] = [r["name"] for r in report["results"] if r["status"] == "fail"]
    return (1 if report["failures"] else 0), report


def _render_text(report: dict) -> str:
    lines = []
    fieldinfo = report["field"]
    lines.append(
        f"field: q={fieldinfo['q']}, F_{fieldinfo['q_squared']} with modulus "
        f"{fieldinfo['modulus_str']}")
    if fieldinfo["modulus"] == [1, 1, 1]:
        lines.append("basis: elements read as a + b*alpha with alpha^2 = -alpha - 1")
    for r in report["results"]:
        lines.append(f"[{r['status'].upper():4}] {r['name']}: {r['summary']}")
    if report["failures"]:
        lines.append("failures: " + ", ".join(report["failures"]))
    else:
        lines.append("all checks passed")
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, value, rows: list[tuple[str, str]]):
    if isinstance(value, dict):
        for k in value:
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, json.dumps(value)))


def _render_csv(report: dict) -> str:
    rows: list[tuple[str, str]] = []
    for r in report["results"]:
        base = r["name"]
        rows.append((f"{base}.status", json.dumps(r["status"])))
        _flatten(base, r["data"], rows)
    lines = ["key,value"] + [f"{k},{v}" for k, v in rows]
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    if fmt == "text":
        return _render_text(report)
    raise InvalidParams(f"unknown format {fmt!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxcurves",
        description="Exhaustive verification of maximal-curve constructions over F_{q^2}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--q", type=int, required=True,
                        help="prime power q; computations run over F_{q^2}")
        sp.add_argument("--modulus", type=str, default=None,
                        help="defining polynomial of F_{q^2} over F_p, e.g. 'x^2+x+1'")
        sp.add_argument("--output", type=str, default=None)
        sp.add_argument("--format", dest="fmt", choices=["json", "csv", "text"],
                        default="json")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--cross-check", action="store_true",
                        help="also compare fibers against full enumeration buckets")
        sp.add_argument("--timings", action="store_true",
                        help="include integer-millisecond timings in the report")

    for name, help_text in [
        ("count", "enumerate rational points of a named curve"),
        ("maximal", "certify maximality by exhaustive count"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--curve", required=True,
                        choices=["hermitian", "hurwitz", "fermat", "weierstrass", "line"])
        sp.add_argument("--n", type=int, default=None)
        sp.add_argument("--d", type=int, default=None)
        common(sp)

    for name, help_text in [
        ("build-s", "construct the split set S on the Hurwitz curve"),
        ("subgroup", "closure, index and torsion of the image of S (n=2)"),
        ("covering", "fiber structure of the Fermat covering over S"),
        ("verify-all", "run every verification for one parameter set"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--n", type=int, required=True)
        common(sp)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        q=args.q,
        curve=getattr(args, "curve", None),
        n=getattr(args, "n", None),
        d=getattr(args, "d", None),
        modulus=args.modulus,
        output=args.output,
        fmt=args.fmt,
        threads=args.threads,
        cross_check=args.cross_check,
        timings=args.timings,
    )
    try:
        code, report = run(config)
    except (InvalidParams, FamilyError, FieldError, GenusUnknown, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, config.fmt)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
