"""Command-line front end: fan/algebra ingestion, reports, lattice diagrams.

Input files are JSON with a top-level `"schema": "coxkernel/1"` marker;
unknown fields are rejected so typos in fixture files surface early.
Exit codes: 0 success, 1 a verification condition failed (the report is
still emitted), 2 malformed input.  Identical inputs produce byte
identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CoxKernelError, InputError
from .lattice import FgAbelianGroup, GroupHom, IntMatrix, free_group
from .cones import AffineMonoid, Cone, Fan, Poset
from .spectra import GradedMonoidAlgebra, HomogeneousPolynomial, k_spectrum
from .divisors import WeilDivisor, class_group, global_sections, invariant_kdivisor
from .cox import (
    characteristic_space,
    cox_presentation,
    orbit_face_lattice,
    reconstruction_round_trip,
    toric_f1_points,
    verify_theorem_a,
    verify_theorem_b,
    verify_theorem_c,
    verify_theorem_d,
)

SCHEMA = "coxkernel/1"

FAN_KEYS = {"schema", "lattice_rank", "rays", "max_cones"}
ALGEBRA_KEYS = {"schema", "monoid_generators", "grading", "inverted"}
GRADING_KEYS = {"free_rank", "torsion", "matrix"}
SECTIONS_KEYS = FAN_KEYS | {"divisor"}
DIVISOR_KEYS = {"rays", "coeffs"}
POLY_FILE_KEYS = FAN_KEYS | {"polynomial"}
POLY_KEYS = {"terms"}
TERM_KEYS = {"exponents", "coefficient"}


def _fail(message: str, path: Optional[str] = None):
    raise InputError(message, path)


def _expect_keys(obj: dict, keys: set, path: str):
    if not isinstance(obj, dict):
        _fail("expected an object", path)
    for k in obj:
        if k not in keys:
            _fail(f"unknown field {k!r}", f"{path}/{k}")
    for k in keys:
        if k not in obj:
            _fail(f"missing field {k!r}", path)


def _expect_int(x, path: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        _fail("expected an integer", path)
    return x


def _expect_int_vector(x, path: str) -> tuple:
    if not isinstance(x, list):
        _fail("expected an array of integers", path)
    return tuple(_expect_int(v, f"{path}/{i}") for i, v in enumerate(x))


def _check_schema(doc: dict, path: str = ""):
    if doc.get("schema") != SCHEMA:
        _fail(f'schema field must be "{SCHEMA}"', f"{path}/schema")


def parse_fan(doc: dict, extra_keys: set = frozenset()) -> Fan:
    _expect_keys(doc, FAN_KEYS | set(extra_keys), "")
    _check_schema(doc)
    rank = _expect_int(doc["lattice_rank"], "/lattice_rank")
    if not isinstance(doc["rays"], list):
        _fail("expected an array", "/rays")
    rays = [_expect_int_vector(r, f"/rays/{i}") for i, r in enumerate(doc["rays"])]
    for i, r in enumerate(rays):
        if len(r) != rank:
            _fail(f"ray has length {len(r)}, expected {rank}", f"/rays/{i}")
    if not isinstance(doc["max_cones"], list):
        _fail("expected an array", "/max_cones")
    cones = [_expect_int_vector(c, f"/max_cones/{i}") for i, c in enumerate(doc["max_cones"])]
    for i, c in enumerate(cones):
        for j, idx in enumerate(c):
            if idx < 0 or idx >= len(rays):
                _fail(f"ray index {idx} out of range", f"/max_cones/{i}/{j}")
    return Fan(rank, rays, cones)


def parse_algebra(doc: dict) -> GradedMonoidAlgebra:
    _expect_keys(doc, ALGEBRA_KEYS, "")
    _check_schema(doc)
    if not isinstance(doc["monoid_generators"], list) or not doc["monoid_generators"]:
        _fail("expected a non-empty array", "/monoid_generators")
    gens = [_expect_int_vector(g, f"/monoid_generators/{i}") for i, g in enumerate(doc["monoid_generators"])]
    d = len(gens[0])
    for i, g in enumerate(gens):
        if len(g) != d:
            _fail("generator length mismatch", f"/monoid_generators/{i}")
    grading = doc["grading"]
    _expect_keys(grading, GRADING_KEYS, "/grading")
    fr = _expect_int(grading["free_rank"], "/grading/free_rank")
    torsion = _expect_int_vector(grading["torsion"], "/grading/torsion")
    matrix_rows = grading["matrix"]
    if not isinstance(matrix_rows, list):
        _fail("expected an array", "/grading/matrix")
    rows = [_expect_int_vector(r, f"/grading/matrix/{i}") for i, r in enumerate(matrix_rows)]
    try:
        group = FgAbelianGroup(fr, torsion)
    except CoxKernelError as exc:
        _fail(str(exc), "/grading/torsion")
    if len(rows) != group.dim:
        _fail(f"matrix must have {group.dim} rows", "/grading/matrix")
    for i, r in enumerate(rows):
        if len(r) != d:
            _fail(f"matrix row must have {d} columns", f"/grading/matrix/{i}")
    inverted = _expect_int_vector(doc["inverted"], "/inverted")
    for i, idx in enumerate(inverted):
        if idx < 0 or idx >= len(gens):
            _fail(f"inverted index {idx} out of range", f"/inverted/{i}")
    try:
        monoid = AffineMonoid(gens, ambient_rank=d, inverted=inverted)
        hom = GroupHom(free_group(d), group, IntMatrix.from_rows(rows, cols=d))
        return GradedMonoidAlgebra(monoid, hom)
    except CoxKernelError as exc:
        _fail(str(exc))


def parse_divisor(doc: dict, fan: Fan) -> WeilDivisor:
    _expect_keys(doc, DIVISOR_KEYS, "/divisor")
    n = _expect_int(doc["rays"], "/divisor/rays")
    coeffs = _expect_int_vector(doc["coeffs"], "/divisor/coeffs")
    if n != fan.num_rays or len(coeffs) != fan.num_rays:
        _fail("divisor does not match the fan's ray count", "/divisor")
    return WeilDivisor(fan, coeffs)


def parse_polynomial(doc: dict, ring: GradedMonoidAlgebra) -> HomogeneousPolynomial:
    _expect_keys(doc, POLY_KEYS, "/polynomial")
    if not isinstance(doc["terms"], list) or not doc["terms"]:
        _fail("expected a non-empty array", "/polynomial/terms")
    terms = {}
    for i, term in enumerate(doc["terms"]):
        _expect_keys(term, TERM_KEYS, f"/polynomial/terms/{i}")
        exp = _expect_int_vector(term["exponents"], f"/polynomial/terms/{i}/exponents")
        raw = term["coefficient"]
        if isinstance(raw, int) and not isinstance(raw, bool):
            coeff = Fraction(raw)
        elif isinstance(raw, str):
            try:
                coeff = Fraction(raw)
            except (ValueError, ZeroDivisionError):
                _fail("bad rational coefficient", f"/polynomial/terms/{i}/coefficient")
        else:
            _fail("coefficient must be an integer or a rational string", f"/polynomial/terms/{i}/coefficient")
        terms[exp] = terms.get(exp, Fraction(0)) + coeff
    try:
        return HomogeneousPolynomial(ring, terms)
    except CoxKernelError as exc:
        _fail(str(exc), "/polynomial")


# ---------------------------------------------------------------------------
# emission


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def group_json(group: FgAbelianGroup) -> dict:
    return {"free_rank": group.free_rank, "torsion": list(group.torsion)}


def emit_dot(poset: Poset, label) -> str:
    """Deterministic DOT rendering: nodes in lexicographic label order."""
    labelled = [(label(e), k, e) for k, e in enumerate(poset)]
    labelled.sort(key=lambda t: (t[0], t[1]))
    index = {id(e): i for i, (_, _, e) in enumerate(labelled)}
    lines = ["digraph poset {"]
    for i, (text, _, _) in enumerate(labelled):
        lines.append(f'  n{i} [label="{text}"];')
    edges = sorted((index[id(a)], index[id(b)]) for a, b in poset.covers())
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _report_json(report, witnesses: bool) -> list:
    out = []
    for e in report.entries:
        entry = {"id": e.id, "pass": e.passed, "statement": e.statement}
        if witnesses and e.witness is not None:
            entry["witness"] = e.witness
        out.append(entry)
    return out


def _report_text(report) -> str:
    lines = []
    for e in report.entries:
        lines.append(f"{'PASS' if e.passed else 'FAIL'} {e.id}: {e.statement}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _cmd_clgroup(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc)
    cl, deg = class_group(fan)
    n = fan.num_rays
    degrees = [list(deg(tuple(1 if i == rho else 0 for i in range(n)))) for rho in range(n)]
    out = {"cl": group_json(cl), "degrees": degrees}
    if args.format == "text":
        return 0, f"Cl = {cl!r}\ndegrees = {degrees}\n"
    return 0, dumps(out)


def _cmd_coxring(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc)
    pres = cox_presentation(fan)
    out = {
        "cl": group_json(pres.cl),
        "degrees": [list(d) for d in pres.variable_degrees()],
        "variables": fan.num_rays,
    }
    if args.format == "text":
        return 0, f"Cox ring: {fan.num_rays} variables, Cl = {pres.cl!r}\n"
    return 0, dumps(out)


def _cmd_kspec(doc, args) -> tuple[int, str]:
    algebra = parse_algebra(doc)
    spectrum = k_spectrum(algebra)
    points = sorted(spectrum, key=lambda p: (len(p.face.indices), p.face.indices))
    if args.format == "dot":
        return 0, emit_dot(spectrum, lambda p: f"p<{','.join(map(str, p.ideal_generators))}>")
    doc_out = {
        "points": [
            {"face": list(p.face.indices), "ideal_generators": list(p.ideal_generators)} for p in points
        ]
    }
    if args.format == "text":
        lines = [f"face {list(p.face.indices)} ideal <{list(p.ideal_generators)}>" for p in points]
        return 0, "\n".join(lines) + "\n"
    return 0, dumps(doc_out)


def _cmd_orbits(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc)
    out = []
    dots = []
    for ci, cone_rays in enumerate(fan.max_cones):
        lattice = orbit_face_lattice(fan.cone_of(cone_rays))
        if args.format == "dot":
            dots.append(emit_dot(lattice, lambda n: f"tau={list(n.face_indices)} p={list(n.ideal_generators)}"))
            continue
        out.append(
            {
                "cone": list(cone_rays),
                "orbits": [
                    {
                        "face": list(n.face_indices),
                        "ideal_generators": list(n.ideal_generators),
                        "degree_generators": [list(d) for d in n.degree_generators],
                    }
                    for n in sorted(lattice, key=lambda n: (len(n.face_indices), n.face_indices))
                ],
            }
        )
    if args.format == "dot":
        return 0, "".join(dots)
    if args.format == "text":
        lines = []
        for entry in out:
            lines.append(f"cone {entry['cone']}: {len(entry['orbits'])} orbits")
        return 0, "\n".join(lines) + "\n"
    return 0, dumps(out)


def _cmd_charspace(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc)
    pres = cox_presentation(fan)
    charts = characteristic_space(pres)
    out = [
        {
            "cone": list(c.sigma_rays),
            "inverted": list(c.inverted),
            "base_monoid": [list(g) for g in c.base_monoid.generators],
            "degree_zero": [list(g) for g in c.degree_zero_monoid.generators],
        }
        for c in charts
    ]
    if args.format == "text":
        return 0, "\n".join(f"chart {c['cone']}: invert {c['inverted']}" for c in out) + "\n"
    return 0, dumps(out)


def _cmd_verify(doc, args) -> tuple[int, str]:
    theorem = (args.theorem or "").upper()
    if theorem not in {"A", "B", "C", "D"}:
        _fail("verify requires --theorem A|B|C|D")
    if theorem == "D":
        algebra = parse_algebra(doc)
        report = verify_theorem_d(algebra)
    else:
        fan = parse_fan(doc)
        pres = cox_presentation(fan)
        if theorem == "A":
            report = verify_theorem_a(pres)
        elif theorem == "B":
            report = verify_theorem_b(pres)
        else:
            report = verify_theorem_c(pres)
    status = 0 if report.passed else 1
    if args.format == "text":
        return status, _report_text(report)
    return status, dumps(_report_json(report, args.witnesses))


def _cmd_reconstruct(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc)
    pres = cox_presentation(fan)
    same, result = reconstruction_round_trip(pres)
    out = {
        "fan": {
            "lattice_rank": result.fan.lattice_rank,
            "rays": [list(r) for r in result.fan.rays],
            "max_cones": [list(c) for c in result.fan.max_cones],
        },
        "report": _report_json(result.report, args.witnesses),
        "round_trip": same,
    }
    status = 0 if same and result.report.passed else 1
    if args.format == "text":
        return status, _report_text(result.report)
    return status, dumps(out)


def _cmd_sections(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc, extra_keys={"divisor"})
    divisor = parse_divisor(doc["divisor"], fan)
    box = None
    if args.box:
        box = _parse_box(args.box, fan.lattice_rank)
    try:
        points = global_sections(fan, divisor, box=box)
    except CoxKernelError as exc:
        _fail(str(exc))
    out = {"count": len(points), "points": [list(p) for p in points]}
    if args.format == "text":
        return 0, f"{len(points)} sections\n"
    return 0, dumps(out)


def _cmd_divisor(doc, args) -> tuple[int, str]:
    fan = parse_fan(doc, extra_keys={"polynomial"})
    pres = cox_presentation(fan)
    poly = parse_polynomial(doc["polynomial"], pres.ring)
    kdiv = invariant_kdivisor(fan, poly)
    cls = pres.deg(kdiv.coeffs)
    matches = cls == pres.cl.canonical(poly.degree)
    out = {
        "coeffs": list(kdiv.coeffs),
        "class": list(cls),
        "degree": list(poly.degree),
        "matches_degree": matches,
    }
    if not matches:
        out["note"] = "non-invariant divisor present"
    if args.format == "text":
        return 0, f"div_K = {list(kdiv.coeffs)} class = {list(cls)}\n"
    return 0, dumps(out)


_COMMANDS = {
    "clgroup": _cmd_clgroup,
    "coxring": _cmd_coxring,
    "kspec": _cmd_kspec,
    "orbits": _cmd_orbits,
    "charspace": _cmd_charspace,
    "verify": _cmd_verify,
    "reconstruct": _cmd_reconstruct,
    "sections": _cmd_sections,
    "divisor": _cmd_divisor,
}


def _parse_box(text: str, rank: int) -> tuple[tuple, tuple]:
    try:
        lo_text, hi_text = text.split(":")
        lo = tuple(int(x) for x in lo_text.split(","))
        hi = tuple(int(x) for x in hi_text.split(","))
    except ValueError:
        _fail("box must look like x1,y1:x2,y2")
    if len(lo) != rank or len(hi) != rank:
        _fail(f"box must have {rank} coordinates on each side")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxkernel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="path to the JSON input file")
        p.add_argument("--format", choices=["json", "dot", "text"], default="json")
        p.add_argument("--theorem", choices=["A", "B", "C", "D"], default=None)
        p.add_argument("--box", default=None, help="enumeration box x1,y1:x2,y2")
        p.add_argument("--witnesses", action="store_true", help="include witnesses in reports")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stdout.write(dumps({"error": {"message": str(exc)}}))
        return 2
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        sys.stdout.write(
            dumps({"error": {"message": exc.msg, "line": exc.lineno, "column": exc.colno}})
        )
        return 2
    try:
        status, output = _COMMANDS[args.command](doc, args)
    except InputError as exc:
        payload = {"message": str(exc)}
        if exc.path:
            payload["path"] = exc.path
        sys.stdout.write(dumps({"error": payload}))
        return 2
    except CoxKernelError as exc:
        sys.stdout.write(dumps({"error": {"message": str(exc)}}))
        return 2
    sys.stdout.write(output)
    return status


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
