"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 a verdict is false under
``--assert``, 4 an internal check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .algebra import hilbert_coeffs
from .classify import classify
from .errors import (
    CapExceeded,
    InternalCheckFailed,
    PosetError,
    SplitalgError,
    Underdetermined,
)
from .families import build_family
from .linalg import FieldSpec
from .poset import parse_poset, serialize_poset
from .report import build_report, counts_json, dumps, pairs_json, poset_hash, report_ok
from .resolution import (
    check_augmentation_image,
    check_d_squared,
    check_exactness,
    check_homotopy_identity,
)
from .tables import ext_table, infer_filtered_table, tor_bar_oracle, window_betti
from .tensors import defining_relations, minimal_generator_counts, verify_example5_identities

EXIT_OK, EXIT_INPUT, EXIT_VERDICT, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(Exception):
    pass


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    P = parse_poset(text)
    if P.name is None:
        P.name = Path(path).stem
    return P


def _emit(args, payload: dict, text: str) -> None:
    print(dumps(payload) if args.json else text)


# -- commands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    P = _load(args.file)
    payload = {
        "valid": True,
        "name": P.name,
        "sha256": poset_hash(P),
        "elements": len(P),
        "covers": len(P.covers),
        "max_rank": P.max_rank,
        "ranks": {x: P.rank(x) for x in P.elements},
    }
    _emit(args, payload, f"{P.name}: valid, {len(P)} elements, {len(P.covers)} covers, max rank {P.max_rank}")
    return EXIT_OK


def cmd_ext_table(args) -> int:
    P = _load(args.file)
    T = ext_table(P, args.field)
    _emit(args, T.to_json(), f"{P.name} over {T.field}\n{T.grid()}")
    return EXIT_OK


def cmd_betti(args) -> int:
    P = _load(args.file)
    vec = window_betti(P, args.b, args.q, args.field)
    payload = {"b": args.b, "q": args.q, "field": str(args.field), "betti": vec, "first_degree": -1}
    text = " ".join(f"H~_{n - 1}={v}" for n, v in enumerate(vec))
    _emit(args, payload, f"window ({args.b},{args.q}): {text}")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    P = _load(args.file)
    h = hilbert_coeffs(P, args.max_degree)
    _emit(args, {"hilbert": h}, " ".join(map(str, h)))
    return EXIT_OK


def cmd_classify(args) -> int:
    P = _load(args.file)
    verdicts = classify(P, args.field)
    lines = []
    for v in verdicts:
        extra = f"  witness={v.witness}" if v.witness else ""
        lines.append(f"{v.property}={str(v.value).lower()}{extra}")
    _emit(args, {"verdicts": [v.to_json() for v in verdicts]}, "\n".join(lines))
    if args.assert_ and not all(v.value for v in verdicts):
        return EXIT_VERDICT
    return EXIT_OK


def cmd_resolution_check(args) -> int:
    P = _load(args.file)
    results = [
        fn(P, args.max_degree, args.field)
        for fn in (check_d_squared, check_homotopy_identity, check_augmentation_image, check_exactness)
    ]
    text = "\n".join(f"{r.check}: {r.status}" + (f" ({r.witness})" if r.witness else "") for r in results)
    _emit(args, {"checks": [r.to_json() for r in results]}, text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_INTERNAL


def cmd_oracle_check(args) -> int:
    P = _load(args.file)
    T = ext_table(P, args.field)
    oracle = tor_bar_oracle(P, args.field, args.pmax, args.qmax, args.cap)
    expected = {k: v for k, v in T.nonzero().items() if k[0] <= args.pmax and k[1] <= args.qmax}
    ok = oracle == expected
    payload = {
        "check": "oracle_equality",
        "status": "pass" if ok else "fail",
        "oracle": pairs_json(oracle),
        "ext_table": pairs_json(expected),
    }
    _emit(args, payload, f"oracle {'matches' if ok else 'DIFFERS FROM'} ext table for p<={args.pmax}, q<={args.qmax}")
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_relations(args) -> int:
    P = _load(args.file)
    rels = defining_relations(P, args.max_degree, args.field)
    counts = minimal_generator_counts(P, args.max_degree, args.field, cap=args.cap)
    payload = {
        "max_degree": args.max_degree,
        "defining_relations": [{"q": q, "count": len(v)} for q, v in sorted(rels.items())],
        "minimal_generator_counts": counts_json(counts),
    }
    text = "minimal relations: " + (", ".join(f"degree {q}: {c}" for q, c in sorted(counts.items())) or "none")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify_example5(args) -> int:
    from .families import example5

    P = example5()
    ids = verify_example5_identities(args.field)
    counts = minimal_generator_counts(P, 3, args.field)
    inferred = infer_filtered_table(P, args.field)
    graded = ext_table(P, args.field)
    payload = {
        "identities": ids,
        "minimal_generator_counts": counts_json(counts),
        "inferred_table": inferred.to_json()["entries"],
        "graded_table": pairs_json(graded.nonzero()),
    }
    lines = [f"{'pass' if ok else 'FAIL'}  {name}" for name, ok in ids.items()]
    lines.append("minimal relations: " + ", ".join(f"degree {q}: {c}" for q, c in sorted(counts.items())))
    lines.append(
        "filtered Ext: "
        + ", ".join(f"({p},{q})={v}" for (p, q), v in sorted(inferred.entries.items()) if p >= 1 and (v or graded.get(p, q)))
    )
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all(ids.values()) else EXIT_INTERNAL


def cmd_gen(args) -> int:
    params = {}
    for key in ("n", "max_rank", "widths", "max_covers"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.seed is not None:
        params["seed"] = args.seed
    P = build_family(args.family, **params)
    text = serialize_poset(P)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_report(args) -> int:
    P = _load(args.file)
    report = build_report(P, args.field, args.max_degree, args.cap)
    print(dumps(report))
    return EXIT_OK if report_ok(report) else EXIT_INTERNAL


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=FieldSpec(), help="rational (default) or fp:<prime>")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=None, help="seed for random families")
    common.add_argument("--cap", type=int, default=200_000, help="cap on materialized basis sizes")

    parser = argparse.ArgumentParser(prog="splitalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, with_file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if with_file:
            p.add_argument("file")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "parse and validate a poset file")
    add("ext-table", cmd_ext_table, "bigraded Ext dimensions of the graded algebra")
    p = add("betti", cmd_betti, "reduced Betti numbers of one window")
    p.add_argument("--b", required=True)
    p.add_argument("--q", type=int, required=True)
    p = add("hilbert", cmd_hilbert, "Hilbert function coefficients")
    p.add_argument("--max-degree", type=int, default=8)
    p = add("classify", cmd_classify, "uniform / Cohen-Macaulay / (*) / quadratic / Koszul verdicts")
    p.add_argument("--assert", dest="assert_", action="store_true", help="exit 3 if any verdict is false")
    p = add("resolution-check", cmd_resolution_check, "d^2, homotopy, augmentation image, exactness")
    p.add_argument("--max-degree", type=int, default=4)
    p = add("oracle-check", cmd_oracle_check, "compare the Ext table with bar-complex Tor")
    p.add_argument("--pmax", type=int, default=3)
    p.add_argument("--qmax", type=int, default=4)
    p = add("relations", cmd_relations, "minimal relation counts of the filtered algebra")
    p.add_argument("--max-degree", type=int, default=3)
    add("verify-example5", cmd_verify_example5, "tensor identities and filtered table of the rank-4 example", with_file=False)
    p = add("gen", cmd_gen, "write a poset from a named family", with_file=False)
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--max-rank", type=int)
    p.add_argument("--widths")
    p.add_argument("--max-covers", type=int)
    p.add_argument("-o", "--output")
    p = add("report", cmd_report, "full JSON report")
    p.add_argument("--max-degree", type=int, default=4)
    return parser


def _fail(args_json: bool, code: int, exc: BaseException) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if args_json:
        print(dumps(payload))
    else:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PosetError, InputError) as exc:
        return _fail(args.json, EXIT_INPUT, exc)
    except (InternalCheckFailed, Underdetermined) as exc:
        return _fail(args.json, EXIT_INTERNAL, exc)
    except CapExceeded as exc:
        return _fail(args.json, EXIT_INPUT, exc)
    except SplitalgError as exc:
        return _fail(args.json, EXIT_INTERNAL, exc)


if __name__ == "__main__":
    sys.exit(main())
