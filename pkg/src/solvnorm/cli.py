"""Command-line interface: ``solvnorm {validate,analyze,enumerate,transform,conjugate}``.

Exit codes: 0 success, 1 invalid datum, 2 schema or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

import jsonschema

from .classifier import ValidationReport, validate
from .datum import FullDatum, SphericalDatum, character_ambient
from .enumerator import EnumerationOptions, enumerate_data, sober_torus
from .errors import InvalidDatum, SolvNormError
from .lattice import IntegerLattice
from .normalizer import DoubleNormalizerReport, NormalizerReport, double_normalizer_report, normalizer_report
from .rootsys import RootSystem, SimpleComponent, build_root_system, parse_type
from .transforms import conjugacy_chain, elementary_transformation

EXIT_OK, EXIT_INVALID, EXIT_SCHEMA = 0, 1, 2

_RATIONAL = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_INT_VEC = {"type": "array", "items": {"type": "integer"}}

INPUT_SCHEMA = {
    "type": "object",
    "required": ["root_system", "M", "pi"],
    "properties": {
        "root_system": {
            "type": "object",
            "required": ["components"],
            "properties": {
                "components": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["family", "rank"],
                        "properties": {
                            "family": {"enum": list("ABCDEFG")},
                            "rank": {"type": "integer", "minimum": 1},
                        },
                    },
                },
                "lattice": {
                    "anyOf": [
                        {"enum": ["adjoint", "simply_connected"]},
                        {
                            "type": "object",
                            "required": ["generators"],
                            "properties": {"generators": {"type": "array", "items": {"type": "array", "items": _RATIONAL}}},
                        },
                    ]
                },
            },
        },
        "M": {"type": "array", "items": _INT_VEC},
        "pi": {
            "type": "array",
            "items": {"type": "array", "minItems": 2, "maxItems": 2, "prefixItems": [_INT_VEC, {"type": "integer"}]},
        },
        "equiv": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "ker_tau": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
    },
}


class SchemaError(Exception):
    pass


# serialization ----------------------------------------------------------------

def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s.replace(" ", "")) if isinstance(s, str) else Fraction(s)


def root_name(alpha) -> str:
    parts = []
    for i, k in enumerate(alpha):
        if k:
            parts.append((f"{k}" if k != 1 else "") + f"alpha{i + 1}")
    return "+".join(parts) or "0"


def simple_name(i: int) -> str:
    return f"alpha{i + 1}"


def rs_to_doc(rs: RootSystem) -> dict:
    lattice = rs.lattice_name
    if lattice == "custom":
        lattice = {"generators": [[frac_str(x) for x in b] for b in rs.character_lattice]}
    return {"components": [{"family": c.family, "rank": c.rank} for c in rs.components], "lattice": lattice}


def datum_to_doc(data) -> dict:
    full = data if isinstance(data, FullDatum) else None
    datum = full.datum if full else data
    doc = {
        "root_system": rs_to_doc(datum.rs),
        "M": [list(a) for a in datum.M],
        "pi": [[list(a), p] for a, p in zip(datum.M, datum.pi)],
        "equiv": [list(b) for b in datum.equiv],
    }
    if full is not None:
        doc["ker_tau"] = [[frac_str(x) for x in b] for b in full.ker_tau.basis]
    return doc


def doc_to_datum(doc: dict):
    """Parse an input document into a FullDatum (when ker_tau is given) or a SphericalDatum."""
    try:
        jsonschema.validate(doc, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"schema violation at {'/'.join(map(str, exc.absolute_path)) or '<root>'}: {exc.message}")
    rsd = doc["root_system"]
    comps = [SimpleComponent(c["family"], c["rank"]) for c in rsd["components"]]
    lattice = rsd.get("lattice", "adjoint")
    if isinstance(lattice, dict):
        lattice = [[parse_frac(x) for x in g] for g in lattice["generators"]]
    rs = build_root_system(comps, lattice)
    M = [tuple(a) for a in doc["M"]]
    labels = {}
    for root, p in doc["pi"]:
        if tuple(root) in labels:
            raise SchemaError(f"root {root} labelled twice")
        labels[tuple(root)] = p
    if set(labels) != set(M):
        raise SchemaError("pi must label exactly the roots of M")
    if any(not 0 <= p < rs.rank for p in labels.values()):
        raise SchemaError("pi label out of range")
    equiv = doc.get("equiv")
    if equiv is not None and sorted(i for b in equiv for i in b) != list(range(len(M))):
        raise SchemaError("equiv must partition the indices of M")
    try:
        datum = SphericalDatum.make(rs, M, labels, equiv)
    except ValueError as exc:
        raise SchemaError(str(exc))
    if "ker_tau" not in doc:
        return datum
    gens = [[parse_frac(x) for x in g] for g in doc["ker_tau"]]
    kt = IntegerLattice.from_generators(character_ambient(rs), gens)
    if equiv is None:
        return FullDatum.with_lattice(datum, kt)
    return FullDatum(datum, kt)


def validation_to_doc(rep: ValidationReport) -> dict:
    return {
        "valid": rep.valid,
        "conditions": {k: ("skipped" if v is None else v) for k, v in rep.conditions.items()},
        "table_rows": {str(k): v for k, v in sorted(rep.table_rows.items())},
        "patterns": {f"{i},{j}": p for (i, j), p in sorted(rep.patterns.items())},
        "failed": rep.failed,
        "witness": rep.witness,
    }


def _lat_doc(lat: IntegerLattice) -> list:
    return [[frac_str(x) for x in b] for b in lat.basis]


def report_to_doc(rep: NormalizerReport) -> dict:
    return {
        "datum": datum_to_doc(rep.full),
        "Psi": [[list(a), p] for a, p in rep.labels.items()],
        "tau_classes": [[list(a) for a in c] for c in rep.classes],
        "regular": [list(a) for a in sorted(rep.regular)],
        "L": _lat_doc(rep.L),
        "L0": _lat_doc(rep.L0),
        "L0/L": list(rep.component_group_L),
        "P": [simple_name(d) for d in sorted(rep.P)],
        "P_indices": sorted(rep.P),
        "P_S": [simple_name(d) for d in sorted(rep.P_S)],
        "P_S_indices": sorted(rep.P_S),
        "r": rep.r,
        "dims": rep.dims,
        "N_G(H)/H": rep.quotient_NH.as_dict(),
        "N_G(H)/N_G(H)0": rep.quotient_components.as_dict(),
        "generators": list(rep.generators),
    }


def double_to_doc(dbl: DoubleNormalizerReport) -> dict:
    return {
        "stable": dbl.stable,
        "generators": list(dbl.generators),
        "identity_component": report_to_doc(dbl.identity_component),
    }


# rendering ------------------------------------------------------------------

def _fmt_lat(lat: IntegerLattice) -> str:
    if lat.rank == 0:
        return "0"
    return "<" + ", ".join("(" + ", ".join(frac_str(x) for x in b) + ")" for b in lat.basis) + ">"


def _fmt_set(idx) -> str:
    return "{" + ", ".join(simple_name(d) for d in sorted(idx)) + "}"


def render_report(rep: NormalizerReport, double: Optional[DoubleNormalizerReport] = None) -> str:
    rs = rep.full.rs
    datum = rep.full.datum
    lines = [
        f"root system: {'x'.join(map(str, rs.components))} ({rs.lattice_name})",
        "M: " + (", ".join(f"{root_name(a)} [pi = {simple_name(p)}]" for a, p in zip(datum.M, datum.pi)) or "-"),
        "Psi: " + (", ".join(f"{root_name(a)} [{simple_name(p)}]" for a, p in rep.labels.items()) or "-"),
        "tau-classes: " + (" ".join("{" + ", ".join(root_name(a) for a in c) + "}" for c in rep.classes) or "-"),
        f"Ker tau = {_fmt_lat(rep.full.ker_tau)}",
        f"L = {_fmt_lat(rep.L)}",
        f"L0 = {_fmt_lat(rep.L0)}",
        f"P = {_fmt_set(rep.P)}",
        f"P_S = {_fmt_set(rep.P_S)}",
        "dims: " + ", ".join(f"{k} = {v}" for k, v in rep.dims.items()),
        f"N_G(H)/H = {rep.quotient_NH}",
        f"N_G(H)/N_G(H)0 = {rep.quotient_components}",
        "N_G(H) generated by: " + ", ".join(rep.generators),
    ]
    if double is not None:
        lines.append(f"N_G(N_G(H)) = N_G(H): {'yes' if double.stable else 'no'}")
        lines.append("N_G(N_G(H)) generated by: " + ", ".join(double.generators))
    return "\n".join(lines)


def render_validation(rep: ValidationReport) -> str:
    lines = [f"valid: {'yes' if rep.valid else 'no'}"]
    for k, v in rep.conditions.items():
        lines.append(f"  ({k}) {'skipped' if v is None else ('ok' if v else 'FAILED')}")
    if rep.witness:
        lines.append(f"witness: {rep.witness}")
    return "\n".join(lines)


# commands -------------------------------------------------------------------

def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}")
    return doc_to_datum(doc)


def _as_full(data) -> FullDatum:
    if isinstance(data, FullDatum):
        return data
    return sober_torus(data)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def cmd_validate(args) -> int:
    data = _load(args.input)
    rep = validate(data)
    print(_dump(validation_to_doc(rep)) if args.json else render_validation(rep))
    return EXIT_OK if rep.valid else EXIT_INVALID


def _check_valid(data) -> None:
    rep = validate(data)
    if not rep.valid:
        raise InvalidDatum(f"condition ({rep.failed}) fails: {rep.witness}", rep)


def cmd_analyze(args) -> int:
    data = _load(args.input)
    _check_valid(data)
    full = _as_full(data)
    rep = normalizer_report(full)
    dbl = double_normalizer_report(full) if args.double else None
    if args.json:
        doc = report_to_doc(rep)
        if dbl is not None:
            doc["double_normalizer"] = double_to_doc(dbl)
        print(_dump(doc))
    else:
        print(render_report(rep, dbl))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    rs = build_root_system(parse_type(args.type), args.lattice)
    opts = EnumerationOptions(max_size=args.max_size, sober=args.sober, dedupe_automorphisms=args.dedupe)
    for d in enumerate_data(rs, opts):
        print(_dump(datum_to_doc(d)))
    return EXIT_OK


def _center(text: str) -> int:
    text = text.strip()
    if text.startswith("alpha"):
        return int(text[5:]) - 1
    return int(text)


def cmd_transform(args) -> int:
    data = _load(args.input)
    _check_valid(data)
    out = elementary_transformation(_as_full(data), _center(args.center))
    if args.json:
        print(_dump(datum_to_doc(out)))
    else:
        print(json.dumps(datum_to_doc(out), indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_conjugate(args) -> int:
    a, b = _load(args.first), _load(args.second)
    _check_valid(a)
    _check_valid(b)
    chain = conjugacy_chain(_as_full(a), _as_full(b))
    doc = {"conjugate": chain is not None, "chain": [simple_name(d) for d in chain] if chain is not None else None}
    if args.json:
        print(_dump(doc))
    else:
        print("conjugate: " + ("yes via " + (" -> ".join(doc["chain"]) or "identity") if chain is not None else "no"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solvnorm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check conditions (A), (D), (E), (C), (T)")
    v.add_argument("input")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="compute the normalizer report")
    a.add_argument("input")
    a.add_argument("--json", action="store_true")
    a.add_argument("--double", action="store_true", help="also describe N_G(N_G(H))")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="emit all data as JSON Lines")
    e.add_argument("--type", required=True, help="e.g. A2, B3xA1")
    e.add_argument("--lattice", default="adjoint", choices=["adjoint", "simply_connected"])
    e.add_argument("--sober", action="store_true", help="complete each datum with Ker tau = L0")
    e.add_argument("--max-size", type=int, default=None)
    e.add_argument("--dedupe", action="store_true", help="identify data related by diagram automorphisms")
    e.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("transform", help="apply an elementary transformation")
    t.add_argument("input")
    t.add_argument("--center", required=True, help="simple root, as alphaK or a 0-based index")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("conjugate", help="decide conjugacy by elementary transformations")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_conjugate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidDatum as exc:
        print(f"invalid datum: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SchemaError, SolvNormError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
