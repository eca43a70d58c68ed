"""Command-line front end.

Two subcommands:

  properk amalgam --r 2 --m 3,2 --theory k --check
  properk coxeter --file pentagon.json --theory ko --model both --check

Exit status: 0 on success (including verdicts that only match up to an
extension problem), 2 when --check finds a MISMATCH, 1 on invalid input or
out-of-scope stabilizers, with a machine-readable error object naming the
offender.  Output is deterministic: identical invocations produce identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abelian import ChainComplexError
from .ahss import (
    MISMATCH,
    ClosedForm,
    E2Page,
    assemble_abutment,
    build_e2,
    closed_form_amalgam,
    closed_form_path_family,
    closed_form_polygon_family,
    closed_form_right_angled,
    compare,
)
from .bredon import CoefficientFunctor, assemble_cochain
from .coxeter import (
    CoxeterMatrix,
    UnsupportedStabilizerError,
    build_bestvina_orbit_complex,
    build_davis_orbit_complex,
)
from .groups import UnsupportedRestrictionError
from .orbit import AmalgamSpec, OrbitComplex, OrbitComplexError, build_amalgam_orbit_complex


class InputError(ValueError):
    pass


def _parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected a comma-separated integer list, got {text!r}") from exc


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _parse_matrix_arg(text: str) -> CoxeterMatrix:
    rows = []
    for chunk in text.split(";"):
        rows.append([int(x) for x in chunk.split(",")])
    return CoxeterMatrix.from_rows(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="properk",
        description="Equivariant K/KO-theory of classifying spaces for proper actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--theory", choices=("k", "ko"), default="k")
    shared.add_argument("--emit", choices=("result", "complex", "cochain", "e2page"),
                        default="result")
    shared.add_argument("--check", action="store_true",
                        help="compare against the applicable closed form")
    shared.add_argument("--out", help="write the report to this file instead of stdout")
    shared.add_argument("--from-complex",
                        help="advanced: read a previously dumped orbit complex instead of building one")

    am = sub.add_parser("amalgam", parents=[shared],
                        help="amalgamated product of finite cyclic groups")
    am.add_argument("--r", default="", help="comma-separated edge orders r_1..r_k")
    am.add_argument("--m", default="", help="comma-separated vertex parameters m_0..m_k")
    am.add_argument("--file", help="JSON file with {\"r\": [...], \"m\": [...]}")

    cox = sub.add_parser("coxeter", parents=[shared], help="Coxeter group")
    cox.add_argument("--file", help="JSON file with {\"size\": n, \"m\": [[...]]} (0 = infinity)")
    cox.add_argument("--matrix", help="inline matrix, rows separated by ';', entries by ','")
    cox.add_argument("--model", choices=("davis", "bestvina", "both"), default="both")
    return parser


def _amalgam_input(args) -> AmalgamSpec:
    if args.file:
        data = _load_json(args.file)
        try:
            return AmalgamSpec.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad amalgam JSON: {exc}") from exc
    try:
        return AmalgamSpec(_parse_int_list(args.r), _parse_int_list(args.m))
    except ValueError as exc:
        raise InputError(f"bad amalgam parameters: {exc}") from exc


def _coxeter_input(args) -> CoxeterMatrix:
    if args.file:
        data = _load_json(args.file)
        try:
            return CoxeterMatrix.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad Coxeter JSON: {exc}") from exc
    if args.matrix is not None:
        try:
            return _parse_matrix_arg(args.matrix)
        except ValueError as exc:
            raise InputError(f"bad inline matrix: {exc}") from exc
    raise InputError("coxeter needs --file or --matrix")


def _coxeter_closed_form(matrix: CoxeterMatrix, theory: str) -> ClosedForm:
    if matrix.is_right_angled():
        return closed_form_right_angled(matrix, theory)
    family = matrix.detect_family()
    if family is None:
        raise InputError(
            "--check needs a closed form: the matrix is neither right-angled nor "
            "one of the recognized braid path/polygon families")
    kind, n = family
    if kind == "path":
        return closed_form_path_family(n, theory)
    return closed_form_polygon_family(n, theory)


def _degree_key(n: int) -> str:
    return str(-n) if n else "0"


def _result_payload(page: E2Page, description: str) -> dict:
    reports = assemble_abutment(page)
    degrees = {}
    for report in reports:
        entry = report.to_json()
        entry["pretty"] = str(report.resolved) if report.resolved is not None else (
            "extension of " + " and ".join(str(g) for _, g in report.pieces))
        degrees[_degree_key(report.degree)] = entry
    return {
        "group": description,
        "theory": page.theory,
        "period": page.period,
        "degrees": degrees,
    }


def _page_payload(page: E2Page) -> dict:
    return {
        "theory": page.theory,
        "period": page.period,
        "rows": {_degree_key(n): [g.to_json() for g in page.rows[n]]
                 for n in range(page.period)},
    }


def _cochain_payload(complex_: OrbitComplex, theory: str) -> dict:
    period = 2 if theory == "k" else 8
    out = []
    for n in range(period):
        functor = CoefficientFunctor(theory, n)
        cochain = assemble_cochain(complex_, functor)
        blocks = []
        for p in range(cochain.length):
            provenance = [
                {"from_cell": j, "to_cell": k,
                 "alpha": complex_.incidence[p].entry(j, k),
                 "descriptor": str(desc)}
                for (j, k), desc in sorted(complex_.descriptors[p].items())
            ]
            blocks.append({
                "p": p,
                "free": cochain.free_d[p].to_rows(),
                "tor2": cochain.tor_d[p].to_rows(),
                "cross": cochain.cross_d[p].to_rows(),
                "provenance": provenance,
            })
        out.append({
            "coefficient_degree": _degree_key(n),
            "free_ranks": list(cochain.free_ranks),
            "tor2_ranks": list(cochain.tor2_ranks),
            "differentials": blocks,
        })
    return {"theory": theory, "cochains": out}


def _verdict_payload(page: E2Page, closed: ClosedForm) -> tuple[list[dict], bool]:
    reports = assemble_abutment(page)
    verdicts = compare(reports, closed)
    payload = [v.to_json(reports) for v in verdicts]
    return payload, any(v.verdict == MISMATCH for v in verdicts)


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _run_amalgam(args) -> int:
    spec = _amalgam_input(args)
    if args.from_complex:
        complex_ = OrbitComplex.from_json(_load_json(args.from_complex))
        description = f"amalgam from {args.from_complex}"
    else:
        complex_ = build_amalgam_orbit_complex(spec)
        description = spec.describe()
    if args.emit == "complex":
        _emit(args, {"group": description, "complex": complex_.to_json()})
        return 0
    if args.theory == "ko" and any(r % 2 == 0 for r in spec.r):
        raise UnsupportedRestrictionError(
            f"KO needs every edge order r_i odd; got r = {list(spec.r)}")
    if args.emit == "cochain":
        _emit(args, _cochain_payload(complex_, args.theory))
        return 0
    page = build_e2(complex_, args.theory)
    if args.emit == "e2page":
        _emit(args, _page_payload(page))
        return 0
    payload = _result_payload(page, description)
    mismatch = False
    if args.check:
        payload["verdicts"], mismatch = _verdict_payload(page, closed_form_amalgam(spec, args.theory))
    _emit(args, payload)
    return 2 if mismatch else 0


def _run_coxeter(args) -> int:
    matrix = _coxeter_input(args)
    description = f"Coxeter group on {matrix.size} generators"
    if args.from_complex:
        complexes = {"loaded": OrbitComplex.from_json(_load_json(args.from_complex))}
    elif args.model == "both":
        complexes = {"davis": build_davis_orbit_complex(matrix),
                     "bestvina": build_bestvina_orbit_complex(matrix)}
    elif args.model == "davis":
        complexes = {"davis": build_davis_orbit_complex(matrix)}
    else:
        complexes = {"bestvina": build_bestvina_orbit_complex(matrix)}
    primary_name = next(iter(complexes))
    primary = complexes[primary_name]
    if args.emit == "complex":
        _emit(args, {"group": description, "model": primary_name,
                     "complex": primary.to_json()})
        return 0
    if args.emit == "cochain":
        _emit(args, _cochain_payload(primary, args.theory))
        return 0
    pages = {name: build_e2(cx, args.theory) for name, cx in complexes.items()}
    page = pages[primary_name]
    if args.emit == "e2page":
        _emit(args, _page_payload(page))
        return 0
    payload = _result_payload(page, description)
    payload["model"] = primary_name
    if len(pages) > 1:
        reports = {name: assemble_abutment(pg) for name, pg in pages.items()}
        names = list(reports)
        agree = reports[names[0]] == reports[names[1]]
        payload["models_agree"] = agree
        if not agree:
            raise AssertionError(
                "Davis and Bestvina pipelines disagree; this is a bug, please report it")
    mismatch = False
    if args.check:
        payload["verdicts"], mismatch = _verdict_payload(
            page, _coxeter_closed_form(matrix, args.theory))
    _emit(args, payload)
    return 2 if mismatch else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "amalgam":
            return _run_amalgam(args)
        return _run_coxeter(args)
    except UnsupportedStabilizerError as exc:
        _emit(args, {"error": {"kind": "unsupported_stabilizer",
                               "subset": [f"s{i}" for i in exc.subset],
                               "message": str(exc)}})
        return 1
    except UnsupportedRestrictionError as exc:
        _emit(args, {"error": {"kind": "unsupported_restriction", "message": str(exc)}})
        return 1
    except (InputError, OrbitComplexError, ChainComplexError, ValueError) as exc:
        _emit(args, {"error": {"kind": "invalid_input", "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
