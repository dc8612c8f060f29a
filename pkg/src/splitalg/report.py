"""Machine-readable reports combining every computation for one poset."""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .algebra import hilbert_coeffs
from .classify import (
    classify,
    cohen_macaulay,
    equivalence_disagreements,
    relative_decomposition_failures,
)
from .errors import CapExceeded, Underdetermined
from .families import example5
from .linalg import GF2, RATIONAL, FieldSpec
from .poset import RankedPoset, serialize_poset
from .resolution import (
    check_augmentation_image,
    check_d_squared,
    check_exactness,
    check_homotopy_identity,
)
from .tables import ext_table, euler_check, infer_filtered_table, tor_bar_oracle
from .tensors import minimal_generator_counts, verify_example5_identities

SCHEMA_VERSION = 1


def poset_hash(P: RankedPoset) -> str:
    anonymous = RankedPoset(P.elements, P.covers)
    return hashlib.sha256(serialize_poset(anonymous).encode()).hexdigest()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def pairs_json(d: dict[tuple[int, int], int]) -> list[dict]:
    return [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(d.items())]


def counts_json(d: dict[int, int]) -> list[dict]:
    return [{"q": q, "count": v} for q, v in sorted(d.items())]


def build_report(P: RankedPoset, F: FieldSpec = RATIONAL, max_degree: int = 4, cap: int = 200_000) -> dict:
    table = ext_table(P, F)
    checks = {}

    for fn in (check_d_squared, check_homotopy_identity, check_augmentation_image, check_exactness):
        try:
            r = fn(P, max_degree, F)
            checks[r.check] = r.to_json()
        except CapExceeded as exc:
            checks[fn.__name__.removeprefix("check_")] = {"status": "skipped", "reason": str(exc)}

    eu = euler_check(P, F, 8, table)
    checks["euler"] = {"status": "pass" if eu.passed else "fail", "degree": eu.degree, "residual": eu.residual}

    try:
        oracle = tor_bar_oracle(P, F, 3, 4, cap)
        expected = {k: v for k, v in table.nonzero().items() if k[0] <= 3 and k[1] <= 4}
        checks["oracle_equality"] = {
            "status": "pass" if oracle == expected else "fail",
            "p_max": 3,
            "q_max": 4,
            "oracle": pairs_json(oracle),
        }
    except CapExceeded as exc:
        checks["oracle_equality"] = {"status": "skipped", "reason": str(exc)}

    rel = relative_decomposition_failures(P, F)
    checks["relative_decomposition"] = {"status": "fail" if rel else "pass", "failures": len(rel)}

    dis = equivalence_disagreements(P, F, table)
    checks["equivalences"] = {
        "status": "fail" if dis else "pass",
        "disagreements": [{"statement": d.statement, "values": d.values} for d in dis],
    }

    other = GF2 if F.is_rational else RATIONAL
    cm_here, cm_other = cohen_macaulay(P, F).value, cohen_macaulay(P, other).value
    field_note = {str(F): cm_here, str(other): cm_other, "agree": cm_here == cm_other}

    filtered: dict = {}
    try:
        rel_top = min(P.max_rank, 3)
        filtered["minimal_generator_counts"] = counts_json(
            minimal_generator_counts(P, rel_top, F, cap=cap) if rel_top >= 2 else {}
        )
        filtered["relations_max_degree"] = rel_top
    except CapExceeded as exc:
        filtered["minimal_generator_counts"] = {"skipped": str(exc)}
    try:
        inferred = infer_filtered_table(P, F, table, cap)
        filtered["inferred_table"] = inferred.to_json()["entries"]
    except (Underdetermined, CapExceeded) as exc:
        filtered["inferred_table"] = {"error": type(exc).__name__, "message": str(exc)}

    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "poset": {
            "name": P.name,
            "sha256": poset_hash(P),
            "elements": len(P),
            "max_rank": P.max_rank,
        },
        "field": str(F),
        "ext_table": table.to_json(),
        "hilbert": hilbert_coeffs(P, 8),
        "verdicts": [v.to_json() for v in classify(P, F, table)],
        "cohen_macaulay_by_field": field_note,
        "checks": checks,
        "filtered_algebra": filtered,
    }
    if P == example5():
        report["example5_identities"] = verify_example5_identities(F)
    return report


def report_ok(report: dict) -> bool:
    """True when no internal check in the report failed."""
    bad = [c for c in report["checks"].values() if c.get("status") == "fail"]
    ids = report.get("example5_identities", {})
    return not bad and all(ids.values())
