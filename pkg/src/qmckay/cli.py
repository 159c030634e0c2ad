"""Command line front end.

Every subcommand takes a group, computes one block of the correspondence
data, and emits a deterministic report: identical invocations produce
identical bytes.  JSON payloads carry all numbers as strings ("p/q" for
rationals, decimal strings for reals) and validate against the schemas in
`qmckay.schemas`; CSV flattens the same rows; text is for reading.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 unsupported group, 4 internal consistency failure (rounding residual,
tan pole, broken invariant).

Group grammar: "C:k" (cyclic, k >= 2), "D:m" (dihedral, m >= 2), "T", "O",
"I", or a root-system alias "A3", "D5", "E6", ...  An A-alias names the
root system of the binary cover, so "A3" is the cyclic group of order 2,
not of order 3 (odd A-ranks only; even ones match no rotation group).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import crc
from .errors import ConfigurationError, InternalConsistencyError, PoleError
from .exact import mat_inverse
from .grouprep import (
    DEFAULT_DPS,
    GroupSpec,
    as_mpc,
    binary_simple_roots,
    correspondence,
    hard_lefschetz_check,
    inner_product,
    root_system_of,
)
from .gwtheory import (
    bps_table,
    gw_all_genus,
    normal_bundle_type,
    partition_function,
    partition_function_by_roots,
    q_variables,
)
from .intersect import (
    classical_potential,
    mckay_pairing,
    pairing_inverse_check,
    surface_integrals,
    threefold_integrals,
)
from .rootsys import root_system
from .series import Truncation
from .schemas import BY_COMMAND

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_ARGS = 2
EXIT_GROUP = 3
EXIT_INTERNAL = 4

PRECISION_ENV = "QMCKAY_PRECISION"
MIN_PRECISION = 10


class UnsupportedGroupError(Exception):
    """A recognisable group name outside the supported families."""


def parse_group(token: str) -> GroupSpec:
    """Parse "C:k" / "D:m" / "T" / "O" / "I" or an ADE alias.

    Raises UnsupportedGroupError for well-formed names outside the families
    (C:1, A4, D3, E5, ...) and ValueError for unparseable ones.
    """
    text = token.strip().upper()
    if text in ("T", "TETRAHEDRAL"):
        return GroupSpec.tetrahedral()
    if text in ("O", "OCTAHEDRAL"):
        return GroupSpec.octahedral()
    if text in ("I", "ICOSAHEDRAL"):
        return GroupSpec.icosahedral()
    m = re.fullmatch(r"([CD]):([0-9]+)", text)
    if m:
        family, value = m.group(1), int(m.group(2))
        if value < 2:
            raise UnsupportedGroupError(
                f"{token}: the {'cyclic' if family == 'C' else 'dihedral'} "
                f"parameter must be at least 2"
            )
        return GroupSpec.cyclic(value) if family == "C" else GroupSpec.dihedral(value)
    m = re.fullmatch(r"([ADE])([0-9]+)", text)
    if m:
        family, rank = m.group(1), int(m.group(2))
        if family == "A":
            if rank < 3 or rank % 2 == 0:
                raise UnsupportedGroupError(
                    f"{token}: A-aliases name the binary cover's root system, "
                    f"so only odd ranks >= 3 occur (A3 = C:2, A5 = C:3, ...)"
                )
            return GroupSpec.cyclic((rank + 1) // 2)
        if family == "D":
            if rank < 4:
                raise UnsupportedGroupError(
                    f"{token}: D-aliases start at D4 (= D:2)"
                )
            return GroupSpec.dihedral(rank - 2)
        if rank == 6:
            return GroupSpec.tetrahedral()
        if rank == 7:
            return GroupSpec.octahedral()
        if rank == 8:
            return GroupSpec.icosahedral()
        raise UnsupportedGroupError(f"{token}: exceptional aliases are E6, E7, E8")
    raise ValueError(f"cannot parse group {token!r}")


def canonical_token(spec: GroupSpec) -> str:
    if spec.kind == "cyclic":
        return f"C:{spec.parameter}"
    if spec.kind == "dihedral":
        return f"D:{spec.parameter}"
    return {"tetrahedral": "T", "octahedral": "O", "icosahedral": "I"}[spec.kind]


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


@dataclass
class Report:
    payload: object
    csv_fields: list[str]
    csv_rows: list[dict]
    text_lines: list[str]
    exit_code: int = EXIT_OK


def _frac(x: Fraction) -> str:
    return str(x)


def _real(x, digits: int = 30) -> str:
    return mp.nstr(mp.mpf(x), digits)


def _charvalue(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return _real(as_mpc(v).real)


def _ade_name(ade) -> str:
    return f"{ade.family}{ade.rank}"


def cmd_roots(spec: GroupSpec, args, dps: int) -> Report:
    ade = root_system_of(spec)
    rs = root_system(ade)
    roots = [list(alpha) for alpha in rs.positive_roots]
    payload = {
        "ade": _ade_name(ade),
        "rank": rs.rank,
        "coxeter_number": rs.coxeter_number,
        "positive_root_count": len(roots),
        "positive_roots": roots,
    }
    fields = ["index"] + [f"node_{i}" for i in range(rs.rank)]
    rows = [
        {"index": i, **{f"node_{j}": a for j, a in enumerate(alpha)}}
        for i, alpha in enumerate(roots)
    ]
    lines = [
        f"{_ade_name(ade)}: rank {rs.rank}, Coxeter number {rs.coxeter_number}, "
        f"{len(roots)} positive roots",
    ] + ["  " + " ".join(str(a) for a in alpha) for alpha in roots]
    return Report(payload, fields, rows, lines)


def cmd_group(spec: GroupSpec, args, dps: int) -> Report:
    corr = correspondence(spec, dps)
    g = corr.group
    rs = root_system(corr.ade)
    _, ages = hard_lefschetz_check(g)
    classes = [
        {
            "label": c.label,
            "size": c.size,
            "element_order": c.element_order,
            "chi_v": _charvalue(g.chi_v[i]),
            "age": _frac(ages[i]),
        }
        for i, c in enumerate(g.classes)
    ]
    irreps = [{"label": r.label, "dim": r.dim} for r in g.irreps]
    nodes = []
    for p, irrep_idx in enumerate(corr.node_irreps):
        slot = corr.node_slot[p]
        nodes.append({
            "index": p,
            "binary_irrep": corr.binary_group.irreps[irrep_idx].label,
            "curve_irrep": None if slot is None else corr.slot_labels[slot],
            "mark": rs.highest_root[p],
        })
    payload = {
        "group": canonical_token(spec),
        "order": g.order,
        "binary_order": 2 * g.order,
        "ade": _ade_name(corr.ade),
        "classes": classes,
        "irreps": irreps,
        "nodes": nodes,
    }
    fields = [
        "section", "label", "size", "element_order", "chi_v", "age", "dim",
        "index", "binary_irrep", "curve_irrep", "mark",
    ]
    rows = (
        [{"section": "class", **c} for c in classes]
        + [{"section": "irrep", **r} for r in irreps]
        + [{"section": "node", **n} for n in nodes]
    )
    lines = [
        f"{canonical_token(spec)}: |G| = {g.order}, binary cover of order "
        f"{2 * g.order}, root system {_ade_name(corr.ade)}",
        "classes (label size order chi_V age):",
    ]
    lines += [
        f"  {c['label']} {c['size']} {c['element_order']} {c['chi_v']} {c['age']}"
        for c in classes
    ]
    lines.append("irreps (label dim):")
    lines += [f"  {r['label']} {r['dim']}" for r in irreps]
    lines.append("nodes (index binary_irrep curve_irrep mark):")
    lines += [
        f"  {n['index']} {n['binary_irrep']} {n['curve_irrep'] or '-'} {n['mark']}"
        for n in nodes
    ]
    return Report(payload, fields, rows, lines)


def cmd_bps(spec: GroupSpec, args, dps: int) -> Report:
    table = bps_table(spec, dps)
    payload = table.jsonable()
    slots = len(q_variables(spec, dps))
    fields = [f"class_{i}" for i in range(slots)] + ["n0", "fiber_size"]
    rows = []
    for entry in payload:
        row = {f"class_{i}": b for i, b in enumerate(entry["class"])}
        row["n0"] = entry["n0"]
        row["fiber_size"] = entry["fiber_size"]
        rows.append(row)
    lines = [f"{canonical_token(spec)}: {len(payload)} BPS classes"]
    lines += [
        f"  {tuple(e['class'])}: n0 = {e['n0']} (fiber {e['fiber_size']})"
        for e in payload
    ]
    return Report(payload, fields, rows, lines)


def cmd_gw(spec: GroupSpec, args, dps: int) -> Report:
    cap = args.max_q_degree
    lam = args.lambda_order
    table = bps_table(spec, dps)
    classes = set()
    for beta in table.counts:
        size = sum(beta)
        d = 1
        while d * size <= cap:
            classes.add(tuple(d * b for b in beta))
            d += 1
    invariants = []
    for beta in sorted(classes, key=lambda b: (sum(b), b)):
        g = 0
        while 2 * g - 2 <= lam:
            value = gw_all_genus(spec, beta, g, dps)
            invariants.append({
                "class": list(beta),
                "genus": g,
                "lambda_power": 2 * g - 2,
                "coefficient": _frac(value),
            })
            g += 1
    payload = {
        "group": canonical_token(spec),
        "max_q_degree": cap,
        "lambda_order": lam,
        "invariants": invariants,
    }
    slots = len(q_variables(spec, dps))
    fields = [f"class_{i}" for i in range(slots)] + [
        "genus", "lambda_power", "coefficient",
    ]
    rows = []
    for inv in invariants:
        row = {f"class_{i}": b for i, b in enumerate(inv["class"])}
        row.update(
            genus=inv["genus"],
            lambda_power=inv["lambda_power"],
            coefficient=inv["coefficient"],
        )
        rows.append(row)
    lines = [
        f"{canonical_token(spec)}: GW invariants, classes of total degree <= {cap}, "
        f"lambda order <= {lam}",
    ] + [
        f"  {tuple(i['class'])} genus {i['genus']}: {i['coefficient']} "
        f"* lambda^{i['lambda_power']}"
        for i in invariants
    ]
    return Report(payload, fields, rows, lines)


def _partition_report(spec: GroupSpec, args, dps: int, kind: str) -> Report:
    trunc = Truncation(q_total=args.max_q_degree, big_q=args.q_series_degree)
    series = partition_function(spec, trunc, dps).series
    terms = series.terms_jsonable()
    payload = {
        "group": canonical_token(spec),
        "kind": kind,
        "max_q_degree": args.max_q_degree,
        "big_q_degree": args.q_series_degree,
        "variables": list(series.variables),
        "terms": terms,
    }
    fields = list(series.variables) + ["t_power", "numerator", "denominator"]
    rows = []
    for term in terms:
        row = {v: term["exponents"].get(v, 0) for v in series.variables}
        row.update(
            t_power=term["t_power"],
            numerator=term["numerator"],
            denominator=term["denominator"],
        )
        rows.append(row)
    name = "reduced GW partition function" if kind == "gw" else "reduced DT series"
    lines = [
        f"{canonical_token(spec)}: {name}, q-degree <= {args.max_q_degree}, "
        f"Q-degree <= {args.q_series_degree}",
        series.format_text(),
    ]
    return Report(payload, fields, rows, lines)


def cmd_partition(spec: GroupSpec, args, dps: int) -> Report:
    return _partition_report(spec, args, dps, "gw")


def cmd_dt(spec: GroupSpec, args, dps: int) -> Report:
    return _partition_report(spec, args, dps, "dt")


def _scalar_block(scalar) -> dict:
    return {"value": _frac(scalar.value), "t_power": scalar.t_power}


def _matrix_block(matrix, t_power: int) -> dict:
    return {
        "matrix": [[_frac(x) for x in row] for row in matrix],
        "t_power": t_power,
    }


def _tensor_block(tensor, t_power: int) -> dict:
    return {
        "tensor": [[[_frac(x) for x in row] for row in plane] for plane in tensor],
        "t_power": t_power,
    }


def _integrals_block(data) -> dict:
    return {
        "basis": list(data.basis),
        "zero_point": _scalar_block(data.zero_point),
        "one_point": [_frac(x) for x in data.one_point],
        "two_point": _matrix_block(data.two_point, data.two_point_t_power),
        "three_point": _tensor_block(data.three_point, data.three_point_t_power),
    }


def cmd_intersect(spec: GroupSpec, args, dps: int) -> Report:
    three = threefold_integrals(spec, dps)
    surface = surface_integrals(spec, dps)
    pairing, pairing_t = mckay_pairing(spec, dps)
    potential = classical_potential(spec, dps)
    corr = correspondence(spec, dps)
    delta_rows = [
        {
            "class": cls.label,
            "value": _frac(potential.delta_pair[cls.label].value),
            "t_power": potential.delta_pair[cls.label].t_power,
        }
        for cls in corr.group.classes[1:]
    ]
    payload = {
        "group": canonical_token(spec),
        "threefold": _integrals_block(three),
        "surface": _integrals_block(surface),
        "pairing": _matrix_block(
            tuple(tuple(Fraction(x) for x in row) for row in pairing), pairing_t
        ),
        "classical": {
            "delta_e_cubed": _scalar_block(potential.delta_e_cubed),
            "delta_pair": delta_rows,
        },
    }
    fields = ["block", "i", "j", "k", "value", "t_power"]
    rows = []

    def matrix_rows(block: str, matrix, t_power: int):
        for i, row in enumerate(matrix):
            for j, x in enumerate(row):
                rows.append({
                    "block": block, "i": i, "j": j, "k": "",
                    "value": _frac(x), "t_power": t_power,
                })

    for name, data in (("threefold", three), ("surface", surface)):
        rows.append({
            "block": f"{name}.zero_point", "i": "", "j": "", "k": "",
            "value": _frac(data.zero_point.value),
            "t_power": data.zero_point.t_power,
        })
        matrix_rows(f"{name}.two_point", data.two_point, data.two_point_t_power)
        for i, plane in enumerate(data.three_point):
            for j, row in enumerate(plane):
                for k, x in enumerate(row):
                    rows.append({
                        "block": f"{name}.three_point", "i": i, "j": j, "k": k,
                        "value": _frac(x), "t_power": data.three_point_t_power,
                    })
    matrix_rows("pairing", pairing, pairing_t)
    rows.append({
        "block": "classical.delta_e_cubed", "i": "", "j": "", "k": "",
        "value": _frac(potential.delta_e_cubed.value),
        "t_power": potential.delta_e_cubed.t_power,
    })
    for entry in delta_rows:
        rows.append({
            "block": "classical.delta_pair", "i": entry["class"], "j": "", "k": "",
            "value": entry["value"], "t_power": entry["t_power"],
        })
    lines = [f"{canonical_token(spec)}: equivariant intersection data"]
    lines.append(f"threefold basis: {' '.join(three.basis)}")
    lines.append(
        f"  zero-point: {potential.delta_e_cubed.value} * "
        f"t^{potential.delta_e_cubed.t_power}"
    )
    lines.append(f"  two-point (t^{three.two_point_t_power}):")
    for row in three.two_point:
        lines.append("    " + " ".join(str(x) for x in row))
    lines.append(f"pairing (t^{pairing_t}):")
    for row in pairing:
        lines.append("    " + " ".join(str(x) for x in row))
    lines.append(f"surface basis: {' '.join(surface.basis)}")
    lines.append(
        f"  zero-point: {surface.zero_point.value} * t^{surface.zero_point.t_power}"
    )
    lines.append(f"  two-point (t^{surface.two_point_t_power}):")
    for row in surface.two_point:
        lines.append("    " + " ".join(str(x) for x in row))
    return Report(payload, fields, rows, lines)


def cmd_crc(spec: GroupSpec, args, dps: int) -> Report:
    potential = crc.orbifold_potential(spec, args.degree, dps)
    payload = potential.jsonable()
    fields = ["degree"] + [f"x_{lbl}" for lbl in potential.class_labels] + [
        "coefficient", "rational_guess",
    ]
    rows = []
    for entry in payload:
        row = {"degree": entry["degree"]}
        for lbl in potential.class_labels:
            row[f"x_{lbl}"] = entry["exponents"].get(lbl, 0)
        row["coefficient"] = entry["coefficient"]
        row["rational_guess"] = entry["rational_guess"] or ""
        rows.append(row)
    lines = [
        f"{canonical_token(spec)}: orbifold potential coefficients through "
        f"degree {args.degree} (variables: {' '.join(potential.class_labels)})",
    ]
    for entry in payload:
        mono = " ".join(
            f"x_{lbl}^{e}" for lbl, e in sorted(entry["exponents"].items())
        )
        guess = f" ~ {entry['rational_guess']}" if entry["rational_guess"] else ""
        lines.append(f"  {mono}: {entry['coefficient']}{guess}")
    return Report(payload, fields, rows, lines)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _run_checks(spec: GroupSpec, args, dps: int) -> list[dict]:
    checks: list[dict] = []

    def check(name: str):
        def wrap(fn):
            try:
                detail = fn()
                checks.append({"name": name, "status": "pass", "detail": detail})
            except Exception as exc:  # noqa: BLE001 - reported, not swallowed
                checks.append({"name": name, "status": "fail", "detail": str(exc)})
        return wrap

    corr = correspondence(spec, dps)
    rs = root_system(corr.ade)

    @check("mckay-graph")
    def _():
        # correspondence() itself asserts adjacency = 2I - Cartan; surviving
        # construction plus a shape sanity line is the observable here
        return (
            f"affine {_ade_name(corr.ade)} diagram matched with "
            f"{len(corr.binary_nodes)} binary nodes"
        )

    @check("character-orthogonality")
    def _():
        worst = mp.mpf(0)
        for g in (corr.group, corr.binary_group):
            n = len(g.irreps)
            for a in range(n):
                for b in range(a, n):
                    value = inner_product(g, g.table[a], g.table[b])
                    target = 1 if a == b else 0
                    worst = max(worst, abs(value - target))
        tol = mp.mpf(10) ** (-(dps // 2))
        if worst >= tol:
            raise InternalConsistencyError(f"orthogonality residual {mp.nstr(worst, 5)}")
        return f"max residual {mp.nstr(worst, 5)}"

    @check("root-sum-identity")
    def _():
        n = rs.rank
        total = [[0] * n for _ in range(n)]
        for alpha in rs.positive_roots:
            for i in range(n):
                if alpha[i]:
                    for j in range(n):
                        total[i][j] += alpha[i] * alpha[j]
        expected = [
            [rs.coxeter_number * x for x in row] for row in mat_inverse(rs.cartan)
        ]
        if [[Fraction(x) for x in row] for row in total] != expected:
            raise InternalConsistencyError("sum over R+ of a a^T != h C^-1")
        return f"sum over {len(rs.positive_roots)} roots equals h * C^-1"

    @check("ages-hard-lefschetz")
    def _():
        ok, ages = hard_lefschetz_check(corr.group)
        if not ok:
            raise InternalConsistencyError("age(g) != age(g^-1) somewhere")
        bad = [a for a in ages[1:] if a != 1]
        if bad:
            raise InternalConsistencyError(f"nontrivial ages {bad} != 1")
        return f"all {len(ages) - 1} nontrivial classes have age 1"

    @check("bps-fibers")
    def _():
        table = bps_table(spec, dps)
        sizes = set(table.fibers.values())
        if not sizes <= {1, 2, 4, 8}:
            raise InternalConsistencyError(f"fiber sizes {sorted(sizes)}")
        expected = len(rs.positive_roots) - len(binary_simple_roots(spec, dps))
        got = sum(table.fibers.values())
        if got != expected:
            raise InternalConsistencyError(
                f"fibers cover {got} roots, expected {expected}"
            )
        return f"{len(table.counts)} classes, fiber sizes {sorted(sizes)}"

    trunc = Truncation(q_total=args.max_q_degree, big_q=args.q_series_degree)

    @check("partition-factorization")
    def _():
        per_class = partition_function(spec, trunc, dps).series
        per_root = partition_function_by_roots(spec, trunc, dps).series
        if per_class != per_root:
            raise InternalConsistencyError("per-class and per-root products differ")
        return f"{len(per_class)} terms agree"

    @check("exp-log-round-trip")
    def _():
        series = partition_function(spec, trunc, dps).series
        if series.log().exp() != series:
            raise InternalConsistencyError("exp(log Z) != Z")
        return "exp(log Z) == Z exactly"

    @check("bps-recovery")
    def _():
        series = partition_function(spec, trunc, dps).series
        table = bps_table(spec, dps)
        free = series.log()
        n_checked = 0
        for beta, n0 in sorted(table.counts.items()):
            if sum(beta) > args.max_q_degree or args.q_series_degree < 1:
                continue
            exponents = {v: b for v, b in zip(series.variables, beta) if b}
            exponents["Q"] = 1
            got = free.coefficient(exponents)
            want = -n0
            if got != want:
                raise InternalConsistencyError(
                    f"log Z at q^{beta} Q^1 is {got}, expected {want}"
                )
            n_checked += 1
        return f"recovered n0 for {n_checked} classes from log Z"

    @check("pairing-inversion")
    def _():
        if not pairing_inverse_check(spec, dps):
            raise InternalConsistencyError("pairing x two-point != identity")
        return "pairing inverts the two-point matrix exactly"

    @check("surface-two-point")
    def _():
        surface = surface_integrals(spec, dps)
        inverse = mat_inverse(rs.cartan)
        expected = tuple(tuple(-x for x in row) for row in inverse)
        if surface.two_point != expected:
            raise InternalConsistencyError("surface two-point != -C^-1")
        return "surface two-point equals -C^-1 exactly"

    @check("normal-bundles")
    def _():
        for label in corr.slot_labels:
            a, b = normal_bundle_type(spec, label, dps)
            if a + b != -2:
                raise InternalConsistencyError(
                    f"normal bundle ({a},{b}) of {label} does not sum to -2"
                )
        return f"degrees sum to -2 on all {len(corr.slot_labels)} curves"

    @check("crc-consistency")
    def _():
        worst = crc.crc_consistency(spec, dps)
        tol = mp.mpf(10) ** (-(dps - 20))
        if worst >= tol:
            raise InternalConsistencyError(
                f"resolution vs orbifold residual {mp.nstr(worst, 5)}"
            )
        return f"third partials agree to {mp.nstr(worst, 5)}"

    return checks


def cmd_verify(spec: GroupSpec, args, dps: int) -> Report:
    checks = _run_checks(spec, args, dps)
    failed = [c for c in checks if c["status"] == "fail"]
    payload = {
        "group": canonical_token(spec),
        "status": "fail" if failed else "pass",
        "checks": checks,
    }
    fields = ["name", "status", "detail"]
    lines = [f"{canonical_token(spec)}: verification {'FAILED' if failed else 'passed'}"]
    lines += [f"  [{c['status']}] {c['name']}: {c['detail']}" for c in checks]
    return Report(
        payload, fields, checks, lines,
        exit_code=EXIT_VERIFY if failed else EXIT_OK,
    )


COMMANDS = {
    "roots": cmd_roots,
    "group": cmd_group,
    "bps": cmd_bps,
    "gw": cmd_gw,
    "partition": cmd_partition,
    "dt": cmd_dt,
    "intersect": cmd_intersect,
    "crc": cmd_crc,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmckay",
        description="Quantum McKay correspondence data for polyhedral singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--group", required=True,
            help="C:k, D:m, T, O, I, or root-system alias (A3 = C:2, D5 = D:3, E6 = T)",
        )
        p.add_argument(
            "--precision", type=int, default=None,
            help=f"working decimal digits (default ${PRECISION_ENV} or {DEFAULT_DPS})",
        )
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--output", default=None, help="write the report to a file")

    def series_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--max-q-degree", type=int, default=4,
            help="total degree cap on the curve-class variables q_i",
        )
        p.add_argument(
            "--q-series-degree", type=int, default=4,
            help="degree cap on the box-counting variable Q",
        )

    common(sub.add_parser("roots", help="positive roots of the associated ADE system"))
    common(sub.add_parser("group", help="character and McKay-correspondence data"))
    common(sub.add_parser("bps", help="genus-zero BPS table"))

    gw = sub.add_parser("gw", help="Gromov-Witten invariants per curve class")
    common(gw)
    gw.add_argument(
        "--max-q-degree", type=int, default=4,
        help="total degree cap on the curve classes listed",
    )
    gw.add_argument(
        "--lambda-order", type=int, default=4,
        help="largest lambda power reported",
    )

    partition = sub.add_parser("partition", help="reduced GW partition function")
    common(partition)
    series_flags(partition)
    dt = sub.add_parser("dt", help="reduced DT (box-counting) series")
    common(dt)
    series_flags(dt)

    common(sub.add_parser("intersect", help="equivariant intersection numbers"))

    crc_cmd = sub.add_parser("crc", help="orbifold potential Taylor coefficients")
    common(crc_cmd)
    crc_cmd.add_argument(
        "--degree", type=int, default=4,
        help="highest total degree of reported coefficients (>= 3)",
    )

    verify = sub.add_parser("verify", help="run the invariant suite for one group")
    common(verify)
    series_flags(verify)
    verify.add_argument(
        "--lambda-order", type=int, default=4,
        help="accepted for symmetry with gw; the suite fixes its own orders",
    )
    return parser


def _validate_bounds(args) -> str | None:
    for name in ("max_q_degree", "q_series_degree", "lambda_order"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            return f"--{name.replace('_', '-')} must be nonnegative"
    degree = getattr(args, "degree", None)
    if degree is not None and degree < 3:
        return "--degree must be at least 3"
    return None


def _resolve_precision(args) -> int:
    if args.precision is not None:
        dps = args.precision
    else:
        env = os.environ.get(PRECISION_ENV)
        if env is None:
            return DEFAULT_DPS
        try:
            dps = int(env)
        except ValueError:
            raise ValueError(f"{PRECISION_ENV} must be an integer, got {env!r}")
    if dps < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} digits")
    return dps


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(
            buffer, fieldnames=report.csv_fields, lineterminator="\n",
            restval="", extrasaction="ignore",
        )
        writer.writeheader()
        writer.writerows(report.csv_rows)
        return buffer.getvalue()
    return "\n".join(report.text_lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ARGS

    problem = _validate_bounds(args)
    if problem:
        print(f"qmckay: {problem}", file=sys.stderr)
        return EXIT_ARGS

    try:
        spec = parse_group(args.group)
    except UnsupportedGroupError as exc:
        print(f"qmckay: unsupported group: {exc}", file=sys.stderr)
        return EXIT_GROUP
    except ValueError as exc:
        print(f"qmckay: {exc}", file=sys.stderr)
        return EXIT_ARGS

    try:
        dps = _resolve_precision(args)
    except ValueError as exc:
        print(f"qmckay: {exc}", file=sys.stderr)
        return EXIT_ARGS

    try:
        report = COMMANDS[args.command](spec, args, dps)
    except (PoleError, InternalConsistencyError, ConfigurationError, AssertionError) as exc:
        print(f"qmckay: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    text = render(report, args.format)
    if args.output:
        with open(args.output, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
