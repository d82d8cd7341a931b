"""Command-line front end.

    rescycle verify CASE...      run the verification pipelines
    rescycle cycle CASE          print the combinatorial fundamental cycle
    rescycle demo ex-nonpure | ex-embedded [--params k,l,m]

Exit codes: 0 all cases pass, 1 some mismatch, 2 unsupported case or
fragment error, 3 parse or schema error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Sequence, Tuple

import jsonschema

from .cycles import MonomialIdeal, fundamental_cycle, minimal_primes, multiplicity_along
from .engine import MODES, Case, Options, Report, run_case
from .errors import CaseParseError, RescycleError, UnsupportedCase
from .parse import parse_current, parse_poly
from .superhom import FreeComplex

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}

CASE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["variables", "ideal"],
    "properties": {
        "name": {"type": "string"},
        "variables": {
            "type": "array", "minItems": 1, "uniqueItems": True,
            "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"},
        },
        "ideal": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "mode": {"enum": list(MODES)},
        "resolution": {"type": "array", "minItems": 1, "items": _MATRIX},
        "ci_tuple": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "currents": {
            "type": "object",
            "patternProperties": {"^[1-9][0-9]*$": _MATRIX},
            "additionalProperties": False,
        },
        "prime": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "lift_bound": {"type": "integer", "minimum": 0},
                "seed": {"type": "integer"},
                "emit_intermediates": {"type": "boolean"},
            },
        },
        "results": {},
    },
}

_RESERVED = {"bar", "d", "dbar", "pv", "res", "delbar"}


# -- case files --------------------------------------------------------------------------

def _line_col(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, path: Sequence, value=None) -> int | None:
    """Best-effort offset of a JSON path in the source text."""
    if not text:
        return None
    pos = 0
    for key in path:
        if isinstance(key, str):
            i = text.find(json.dumps(key), pos)
            if i < 0:
                return None
            pos = i
    if isinstance(value, str):
        i = text.find(json.dumps(value), pos)
        if i >= 0:
            return i
    return pos


def _expr(text: str, path: Sequence, src: str, fn, *args, **kw):
    try:
        return fn(src, *args, **kw)
    except CaseParseError as e:
        where = "/".join(map(str, path))
        off = _locate(text, path, src)
        if off is not None and e.column is not None:
            line, col = _line_col(text, off + 1 + e.column - 1)
        else:
            line, col = None, None
        msg = str(e).split(": ", 1)[-1] if e.line is not None else str(e)
        raise CaseParseError(f"{where}: {msg} in {src!r}", line, col) from None


def case_from_dict(data: dict, text: str = "", name: str = "") -> Case:
    try:
        jsonschema.validate(data, CASE_SCHEMA)
    except jsonschema.ValidationError as e:
        path = list(e.absolute_path)
        off = _locate(text, path)
        line, col = _line_col(text, off) if off is not None else (None, None)
        where = "/".join(map(str, path)) or "case"
        raise CaseParseError(f"schema error at {where}: {e.message}", line, col) from None
    variables = list(data["variables"])
    clash = _RESERVED & set(variables)
    if clash:
        raise CaseParseError(f"variable name {sorted(clash)[0]!r} is reserved")
    ideal_polys = [_expr(text, ["ideal", i], s, parse_poly, variables, holomorphic=True)
                   for i, s in enumerate(data["ideal"])]
    try:
        ideal = MonomialIdeal.from_polys(variables, ideal_polys)
    except ValueError as e:
        raise UnsupportedCase(f"non-monomial unsupported: {e}") from None
    resolution = None
    if "resolution" in data:
        mats = [[[_expr(text, ["resolution", k], s, parse_poly, variables, holomorphic=True) for s in row]
                 for row in m] for k, m in enumerate(data["resolution"])]
        ranks = [len(mats[0])] + [len(m[0]) if m else 0 for m in mats]
        try:
            resolution = FreeComplex(ranks, mats)
        except ValueError as e:
            raise CaseParseError(f"resolution: {e}", *_lc(text, ["resolution"])) from None
    ci = None
    if "ci_tuple" in data:
        ci = [_expr(text, ["ci_tuple", i], s, parse_poly, variables, holomorphic=True)
              for i, s in enumerate(data["ci_tuple"])]
    currents = {}
    for k, m in data.get("currents", {}).items():
        currents[int(k)] = [[_expr(text, ["currents", k], s, parse_current, variables) for s in row] for row in m]
    prime = None
    if "prime" in data:
        unknown = [v for v in data["prime"] if v not in variables]
        if unknown:
            raise CaseParseError(f"prime: unknown variable {unknown[0]!r}", *_lc(text, ["prime"]))
        prime = sorted(variables.index(v) for v in data["prime"])
    opts = data.get("options", {})
    options = Options(opts.get("lift_bound"), opts.get("seed", 0), opts.get("emit_intermediates", False))
    return Case(variables, ideal, data.get("mode", "auto"), resolution, ci, currents, prime, options,
                data.get("name", name), {k: v for k, v in data.items() if k != "results"})


def _lc(text, path):
    off = _locate(text, path)
    return _line_col(text, off) if off is not None else (None, None)


def parse_case(path: str | os.PathLike) -> Case:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise CaseParseError(f"cannot read {p}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CaseParseError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise CaseParseError("a case file must contain one JSON object", 1, 1)
    return case_from_dict(data, text, p.stem)


# -- rendering ------------------------------------------------------------------------------

def render_text(r: Report, show_intermediates: bool = False) -> str:
    names = r.variables
    lines = [f"case {r.name} [{r.mode}]"]
    if r.identity:
        lines.append(f"  identity: {r.identity}")
    verdict = "PASS" if r.match else "FAIL"
    lines.append(f"  computed: {r.computed.to_str(names)}; oracle: {r.oracle.to_str(names)}; {verdict}")
    for k, v in r.extras.items():
        lines.append(f"  {k}: {v}")
    for k, v in r.checks.items():
        lines.append(f"  check {k}: {'ok' if v else 'FAILED'}")
    if not r.match:
        for S, got, want in r.differences():
            label = "[" + "=".join(names[i] for i in sorted(S)) + "=0]"
            lines.append(f"  difference at {label}: computed {got}, oracle {want}")
        if not r.remainder.is_zero():
            lines.append(f"  unmatched remainder: {r.remainder.to_str(names)}")
    for n in r.notes:
        lines.append(f"  note: {n}")
    if show_intermediates:
        for k, v in r.intermediates.items():
            lines.append(f"  {k} = {v}")
    return "\n".join(lines)


def render_intermediates(r: Report) -> str:
    out = [f"# {r.name}"]
    out += [f"{k} = {v}" for k, v in r.intermediates.items()]
    return "\n".join(out) + "\n"


def _safe_name(s: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in s) or "case"


# -- execution ------------------------------------------------------------------------------

def _apply_overrides(case: Case, mode, bound, seed) -> Case:
    if mode:
        case.mode = mode
    if bound is not None:
        case.options.lift_bound = bound
    if seed is not None:
        case.options.seed = seed
    return case


def run_one(case: Case, fmt: str, emit_dir: str | None) -> Tuple[int, str]:
    try:
        report = run_case(case)
    except RescycleError as e:
        return _error_output(case.raw, case.name, e, fmt)
    if emit_dir:
        d = Path(emit_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / f"{_safe_name(report.name)}.txt").write_text(render_intermediates(report))
    code = 0 if report.match else 1
    if fmt == "json":
        return code, json.dumps(dict(case.raw, results=report.to_json()), indent=2)
    return code, render_text(report, case.options.emit_intermediates)


def _error_output(raw, name, e: RescycleError, fmt: str) -> Tuple[int, str]:
    kind = "parse error" if e.exit_code == 3 else "unsupported"
    if fmt == "json":
        body = dict(raw or {}, results={"error": str(e), "kind": kind, "exit_code": e.exit_code})
        return e.exit_code, json.dumps(body, indent=2)
    return e.exit_code, f"case {name}: {kind}: {e}"


def _verify_file(args) -> Tuple[int, str]:
    path, mode, bound, seed, fmt, emit_dir = args
    try:
        case = parse_case(path)
    except RescycleError as e:
        raw = {} if fmt != "json" else {"file": str(path)}
        return _error_output(raw, Path(path).stem, e, fmt)
    return run_one(_apply_overrides(case, mode, bound, seed), fmt, emit_dir)


def _emit(results: List[Tuple[int, str]], fmt: str) -> int:
    if fmt == "json" and len(results) > 1:
        print(json.dumps([json.loads(out) for _, out in results], indent=2))
    else:
        for _, out in results:
            print(out)
    return max((code for code, _ in results), default=0)


def cmd_verify(a) -> int:
    jobs = a.jobs if a.jobs else min(len(a.files), os.cpu_count() or 1)
    work = [(f, a.mode, a.lift_degree_bound, a.seed, a.format, a.emit_intermediates) for f in a.files]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_verify_file, work))
    else:
        results = [_verify_file(w) for w in work]
    return _emit(results, a.format)


def cmd_cycle(a) -> int:
    try:
        case = parse_case(a.file)
        J = case.ideal
        names = case.variables
        cyc = fundamental_cycle(J)
        primes = minimal_primes(J)
    except RescycleError as e:
        code, out = _error_output({}, Path(a.file).stem, e, a.format)
        print(out)
        return code
    except ValueError as e:
        print(f"case {Path(a.file).stem}: unsupported: {e}")
        return 2
    if a.format == "json":
        comps = [{"subspace": [names[i] for i in sorted(P)], "multiplicity": multiplicity_along(J, P)}
                 for P in primes]
        print(json.dumps(dict(case.raw, results={"cycle": cyc.to_json(names), "components": comps}), indent=2))
    else:
        print(f"ideal {J}: [Z] = {cyc.to_str(names)}")
    return 0


def demo_case(which: str, params: Sequence[int] | None = None) -> Case:
    if which == "ex-nonpure":
        raw = {"name": "ex-nonpure", "variables": ["x", "y", "z"], "ideal": ["x*z", "y*z"], "mode": "nonpure"}
    else:
        k, l, m = params or (3, 2, 1)
        if not (1 <= m < k and l >= 1):
            raise UnsupportedCase("parameters must satisfy 1 <= m < k and l >= 1")
        raw = {"name": f"ex-embedded k={k} l={l} m={m}", "variables": ["x", "y"],
               "ideal": [f"y^{k}", f"x^{l}*y^{m}"], "mode": "demo"}
    return case_from_dict(raw)


def cmd_demo(a) -> int:
    params = None
    if a.params:
        try:
            params = [int(t) for t in a.params.split(",")]
            if len(params) != 3:
                raise ValueError
        except ValueError:
            print("--params expects three integers k,l,m", file=sys.stderr)
            return 3
    try:
        case = demo_case(a.example, params)
    except RescycleError as e:
        code, out = _error_output({}, a.example, e, a.format)
        print(out)
        return code
    if a.seed is not None:
        case.options.seed = a.seed
    case.options.emit_intermediates = True
    code, out = run_one(case, a.format, a.emit_intermediates)
    print(out)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rescycle", description="Verify residue-current formulas for fundamental cycles.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification pipelines on case files")
    v.add_argument("files", nargs="+")
    v.add_argument("--mode", choices=MODES)
    v.add_argument("--lift-degree-bound", type=int, metavar="N")
    v.add_argument("--seed", type=int, metavar="S")
    v.add_argument("--emit-intermediates", metavar="DIR")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=0, help="worker processes (default: one per file, up to CPU count)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cycle", help="print the combinatorial fundamental cycle")
    c.add_argument("file")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_cycle)

    d = sub.add_parser("demo", help="run a built-in example")
    d.add_argument("example", choices=("ex-nonpure", "ex-embedded"))
    d.add_argument("--params", metavar="k,l,m")
    d.add_argument("--seed", type=int)
    d.add_argument("--emit-intermediates", metavar="DIR")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.set_defaults(func=cmd_demo)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return 3 if e.code not in (0, None) else 0
    return a.func(a)


if __name__ == "__main__":
    sys.exit(main())
