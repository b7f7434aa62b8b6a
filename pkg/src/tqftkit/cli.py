"""Command-line front end.

Exit status 0 on success, 1 when a check fails (the report is printed), 2 on
unreadable or malformed input. Output is JSON with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Optional, Sequence

from . import bordism2d, duality1d, feynman, frobenius, hochschild, selftest
from .catkit import simplicial
from .catkit.category import FinCategory, validate_category
from .exact import ShapeError
from .reports import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, payload: dict[str, Any]):
        super().__init__(payload.get("detail", ""))
        self.payload = payload


def _load(path: Optional[str], flag: str) -> Any:
    if path is None:
        raise InputError(f"{flag} is required")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _parse(build: Callable[[Any], Any], data: Any, what: str) -> Any:
    try:
        return build(data)
    except (KeyError, TypeError, ValueError, IndexError, ShapeError, ZeroDivisionError) as exc:
        raise InputError(f"malformed {what}: {exc!r}") from exc


def _require(report: Report, what: str) -> None:
    if not report:
        raise CheckFailed({"check": what, **report.to_json()})


def _algebra(args) -> frobenius.FrobeniusAlgebra:
    a = _parse(frobenius.FrobeniusAlgebra.from_json, _load(args.algebra, "--algebra"), "algebra")
    _require(frobenius.validate_frobenius(a), "frobenius")
    return a


def _matrix_payload(m) -> dict[str, Any]:
    rows, cols = m.shape
    if rows == 1 and cols == 1:
        return {"value": str(m[0, 0])}
    return {"in": cols, "out": rows, "matrix": m.to_json()}


def _datum_kind(data: Any) -> str:
    if isinstance(data, dict) and "particles" in data:
        return "feynman"
    return "duality"


# -- verbs ----------------------------------------------------------------------

def cmd_validate(args) -> dict[str, Any]:
    results: dict[str, Any] = {}
    if args.algebra:
        a = _parse(frobenius.FrobeniusAlgebra.from_json, _load(args.algebra, "--algebra"), "algebra")
        results["algebra"] = frobenius.validate_frobenius(a)
    if args.category:
        c = _parse(FinCategory.from_json, _load(args.category, "--category"), "category")
        results["category"] = validate_category(c)
    if args.sset:
        s = _parse(simplicial.TruncatedSimplicialSet.from_json, _load(args.sset, "--sset"), "sset")
        results["sset"] = simplicial.check_simplicial_identities(s)
    if args.tangle:
        t = _parse(duality1d.OrientedTangle.from_json, _load(args.tangle, "--tangle"), "tangle")
        results["tangle"] = duality1d.validate_tangle(t)
    datum = None
    if args.datum:
        data = _load(args.datum, "--datum")
        if _datum_kind(data) == "feynman":
            datum = _parse(feynman.SingularityDatum1D.from_json, data, "datum")
            results["datum"] = feynman.validate_datum(datum)
        else:
            dd = _parse(duality1d.DualityDatum.from_json, data, "datum")
            results["datum"] = duality1d.zigzag_check(dd)
    if args.diagram:
        if datum is None:
            raise InputError("--diagram needs a particle --datum")
        g = _parse(lambda x: feynman.FeynmanDiagram.from_json(x, datum),
                   _load(args.diagram, "--diagram"), "diagram")
        results["diagram"] = feynman.validate_diagram(datum, g)
    if not results:
        raise InputError("nothing to validate")
    out = {k: r.to_json() for k, r in results.items()}
    if not all(results.values()):
        raise CheckFailed(out)
    return out


def cmd_eval_surface(args) -> dict[str, Any]:
    if args.genus is None or args.genus < 0:
        raise InputError("--genus must be a natural number")
    a = _algebra(args)
    return {"value": str(frobenius.surface_invariant(a, args.genus))}


def cmd_eval_bordism(args) -> dict[str, Any]:
    a = _algebra(args)
    if args.word is None and args.word_file is None:
        raise InputError("--word or --word-file is required")
    try:
        w = bordism2d.load_word(args.word, args.word_file)
    except OSError as exc:
        raise InputError(f"cannot read {args.word_file}: {exc.strerror}") from exc
    except (bordism2d.WordSyntaxError, bordism2d.ArityMismatch) as exc:
        raise InputError(str(exc)) from exc
    return _matrix_payload(bordism2d.evaluate(w, a))


def cmd_eval_tangle(args) -> dict[str, Any]:
    t = _parse(duality1d.OrientedTangle.from_json, _load(args.tangle, "--tangle"), "tangle")
    d = _parse(duality1d.DualityDatum.from_json, _load(args.datum, "--datum"), "datum")
    _require(duality1d.zigzag_check(d), "duality")
    _require(duality1d.validate_tangle(t), "tangle")
    return _matrix_payload(duality1d.evaluate_tangle(t, d))


def cmd_eval_diagram(args) -> dict[str, Any]:
    d = _parse(feynman.SingularityDatum1D.from_json, _load(args.datum, "--datum"), "datum")
    _require(feynman.validate_datum(d), "datum")
    g = _parse(lambda x: feynman.FeynmanDiagram.from_json(x, d),
               _load(args.diagram, "--diagram"), "diagram")
    _require(feynman.validate_diagram(d, g), "diagram")
    return {"value": str(feynman.evaluate_diagram(d, g))}


def cmd_hochschild(args) -> dict[str, Any]:
    a = _parse(hochschild.AssocAlgebra.from_json, _load(args.algebra, "--algebra"), "algebra")
    _require(hochschild.validate_algebra(a), "algebra")
    return hochschild.hochschild_dims(a, args.level).to_json()


def cmd_nerve(args) -> dict[str, Any]:
    c = _parse(FinCategory.from_json, _load(args.category, "--category"), "category")
    _require(validate_category(c), "category")
    return simplicial.nerve(c, args.level).to_json()


def cmd_segal_check(args) -> dict[str, Any]:
    s = _parse(simplicial.TruncatedSimplicialSet.from_json, _load(args.sset, "--sset"), "sset")
    _require(simplicial.check_simplicial_identities(s), "simplicial identities")
    level = min(args.level, s.max_level)
    _require(simplicial.segal_bijection_check(s, level), "segal")
    return {"pass": True, "checked_up_to": level}


def cmd_selftest(args) -> dict[str, Any]:
    checks = []
    first_failure = None
    for name, report in selftest.run(args.seed):
        checks.append({"name": name, **report.to_json()})
        if not report and first_failure is None:
            first_failure = name
    out = {"checks": checks, "pass": first_failure is None, "seed": args.seed}
    if first_failure is not None:
        raise CheckFailed({**out, "failed": first_failure})
    return out


VERBS: dict[str, Callable] = {
    "validate": cmd_validate,
    "eval-surface": cmd_eval_surface,
    "eval-bordism": cmd_eval_bordism,
    "eval-tangle": cmd_eval_tangle,
    "eval-diagram": cmd_eval_diagram,
    "hochschild": cmd_hochschild,
    "nerve": cmd_nerve,
    "segal-check": cmd_segal_check,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tqftkit", description="Exact evaluation of small field theories.")
    p.add_argument("verb", choices=list(VERBS))
    p.add_argument("--algebra", help="algebra JSON file")
    p.add_argument("--word", help="bordism word, e.g. 'cup; copants; pants; cap'")
    p.add_argument("--word-file", help="file holding a bordism word")
    p.add_argument("--genus", type=int)
    p.add_argument("--tangle", help="oriented tangle JSON file")
    p.add_argument("--datum", help="duality or particle datum JSON file")
    p.add_argument("--diagram", help="Feynman diagram JSON file")
    p.add_argument("--sset", help="truncated simplicial set JSON file")
    p.add_argument("--category", help="finite category JSON file")
    p.add_argument("--level", type=int, default=hochschild.DEFAULT_LEVEL)
    p.add_argument("--seed", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    p.set_defaults(pretty=False)
    return p


def _emit(payload: Any, pretty: bool, stream) -> None:
    if pretty:
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
    else:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    stream.write(text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.level < 0:
        _emit({"error": "--level must be a natural number"}, args.pretty, sys.stderr)
        return EXIT_INPUT
    try:
        payload = VERBS[args.verb](args)
    except InputError as exc:
        _emit({"error": str(exc)}, args.pretty, sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        _emit(exc.payload, args.pretty, sys.stdout)
        return EXIT_FAIL
    _emit(payload, args.pretty, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
