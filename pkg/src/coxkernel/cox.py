"""Cox presentations of fans, characteristic-space charts and the verifier suites.

A Cox presentation carries the polynomial ring on the rays with its class
grading (coarse, usually non-faithful) alongside the finely graded copy.
The verifier suites A-D run the theorem-level conditions at the invariant
(monomial) level and return structured reports; mathematical failures are
report entries with witnesses, never exceptions, so counterexample
fixtures are first-class test data.

"K-factorial" is always checked through the invariant proxy (monomial
monoid free modulo units, plus a vanishing invariant class semigroup when
a divisorial origin is supplied); the full statement over arbitrary
homogeneous elements would need polynomial factorization and stays out of
computational scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Optional, Sequence

from .errors import ConstructionError, TorusFactorError
from .lattice import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Vec,
    cokernel,
    free_group,
    is_zero_vec,
    kernel,
    lattice_contains,
    lattice_equal,
    primitive_oriented,
    solve_integer,
    subgroup_generates,
    subgroups_equal,
    vdot,
    vneg,
)
from .cones import (
    AffineMonoid,
    Cone,
    Fan,
    Poset,
    fans_equal_up_to_ray_permutation,
    monoid_generators_of_cone,
    saturated_monoid_from_cone,
)
from .divisors import DivisorialAlgebraSpec, class_group, divisorial_class_semigroup, invariant_kdivisor, ray_map
from .spectra import (
    GradedMonoidAlgebra,
    good_quotient_affine,
    homogeneous_units,
    monomial_valuation,
    polynomial_ring,
    unit_exponent_basis,
)


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class CheckResult:
    id: str
    statement: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        out = {"id": self.id, "statement": self.statement, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class VerificationReport:
    """Ordered list of condition checks; failures carry concrete witnesses."""

    def __init__(self, entries: Iterable[CheckResult] = ()):
        self.entries = list(entries)

    def add(self, id: str, statement: str, passed: bool, witness: object = None):
        self.entries.append(CheckResult(id, statement, bool(passed), witness))

    def extend(self, other: "VerificationReport"):
        self.entries.extend(other.entries)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failed_ids(self) -> list[str]:
        return [e.id for e in self.entries if not e.passed]

    def failed_conditions(self, prefixes: Sequence[str]) -> list[str]:
        """Which of the given condition prefixes (e.g. "D.ii") have a failing entry."""
        failed = self.failed_ids()
        return [p for p in prefixes if any(f == p or f.startswith(p + ".") for f in failed)]

    def entry(self, id: str) -> CheckResult:
        for e in self.entries:
            if e.id == id:
                return e
        raise KeyError(id)

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    def __repr__(self):
        ok = sum(1 for e in self.entries if e.passed)
        return f"VerificationReport({ok}/{len(self.entries)} passed)"


# ---------------------------------------------------------------------------
# Cox presentations and characteristic-space charts


@dataclass
class CoxPresentation:
    fan: Fan
    cl: FgAbelianGroup
    deg: GroupHom  # Z^{rays} -> Cl
    ring: GradedMonoidAlgebra  # N^{rays} with the class grading (coarse)
    fine_ring: GradedMonoidAlgebra  # N^{rays} with the identity grading (faithful)

    def variable(self, rho: int):
        n = self.fan.num_rays
        return self.ring.monomial(tuple(1 if i == rho else 0 for i in range(n)))

    def variable_degrees(self) -> list[Vec]:
        n = self.fan.num_rays
        return [self.deg(tuple(1 if i == rho else 0 for i in range(n))) for rho in range(n)]


def cox_presentation(fan: Fan) -> CoxPresentation:
    """Polynomial ring on the rays with its class grading.

    Refused when the rays do not span the ambient lattice rationally: a
    torus factor would put homogeneous units of nonzero degree into every
    chart, so no class grading of this shape can work.
    """
    violations = fan.validate()
    if violations:
        raise ConstructionError("invalid fan: " + "; ".join(violations))
    if not fan.rays_span():
        raise TorusFactorError("torus factor: Cox presentation refused (rays do not span the lattice)")
    cl, deg = class_group(fan)
    ring = polynomial_ring(fan.num_rays, deg)
    fine = polynomial_ring(fan.num_rays, GroupHom.identity(free_group(fan.num_rays)))
    return CoxPresentation(fan, cl, deg, ring, fine)


@dataclass
class CharSpaceChart:
    """One chart of the graded characteristic space, per maximal cone."""

    cone_index: int
    sigma_rays: tuple[int, ...]
    inverted: tuple[int, ...]
    ring: GradedMonoidAlgebra  # localized Cox ring
    base_monoid: AffineMonoid  # sigma^vee cap M
    degree_zero_monoid: AffineMonoid
    pairing_images: dict  # base monoid generator -> its ray-pairing vector


def characteristic_space(pres: CoxPresentation) -> list[CharSpaceChart]:
    """Charts of the relative spectrum: one per maximal cone.

    The degree-zero monoid of each localized ring is identified with
    sigma^vee cap M through the ray pairing m -> (<m, v_rho>)_rho; the
    identification is exhibited generator by generator and certified by
    `chart_isomorphism_report`.
    """
    fan = pres.fan
    rm = ray_map(fan)
    charts = []
    for ci, cone_rays in enumerate(fan.max_cones):
        inverted = tuple(sorted(set(range(fan.num_rays)) - set(cone_rays)))
        ring = pres.ring.localize_generators(inverted)
        quotient = good_quotient_affine(ring)
        sigma = fan.cone_of(cone_rays)
        base = saturated_monoid_from_cone(sigma.dual())
        images = {g: rm(g) for g in base.generators}
        charts.append(
            CharSpaceChart(ci, tuple(cone_rays), inverted, ring, base, quotient.degree_zero_monoid, images)
        )
    return charts


def chart_isomorphism_report(charts: Sequence[CharSpaceChart]) -> VerificationReport:
    """Certify the degree-zero isomorphism on each chart.

    The pairing must carry the pointed generators of sigma^vee cap M
    bijectively onto those of the degree-zero monoid and identify the two
    unit lattices.
    """
    report = VerificationReport()
    for chart in charts:
        base, m0 = chart.base_monoid, chart.degree_zero_monoid
        base_pointed = {g for i, g in enumerate(base.generators) if i not in base.inverted}
        m0_pointed = {g for i, g in enumerate(m0.generators) if i not in m0.inverted}
        images = {chart.pairing_images[g] for g in base_pointed}
        pointed_ok = images == m0_pointed and len(images) == len(base_pointed)
        unit_images = [chart.pairing_images.get(u) for u in base.unit_basis]
        units_ok = all(u is not None for u in unit_images) if base.unit_basis else True
        if base.unit_basis:
            mapped = [chart.pairing_images[u] if u in chart.pairing_images else None for u in base.unit_basis]
            if any(v is None for v in mapped):
                units_ok = False
            else:
                units_ok = lattice_equal(mapped, list(m0.unit_basis))
        else:
            units_ok = not m0.unit_basis
        ok = pointed_ok and units_ok
        report.add(
            f"chart.{chart.cone_index}.degree-zero-iso",
            "ray pairing identifies the base chart monoid with the degree-zero monoid",
            ok,
            witness=None
            if ok
            else {
                "base_pointed": sorted(map(list, base_pointed)),
                "m0_pointed": sorted(map(list, m0_pointed)),
                "images": sorted(map(list, images)),
            },
        )
    return report


# ---------------------------------------------------------------------------
# helpers shared by the verifiers


def _standard_basis(n: int) -> list[Vec]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def _monoid_mod_units_free(ring: GradedMonoidAlgebra) -> tuple[bool, Optional[dict]]:
    """Invariant factoriality proxy: monomial monoid free modulo units."""
    monoid = ring.monoid
    units = list(monoid.unit_basis)
    d = monoid.ambient_rank
    if units:
        h = GroupHom.from_columns(free_group(len(units)), free_group(d), units)
        quotient, proj = cokernel(h)
    else:
        quotient = free_group(d)
        proj = GroupHom.identity(quotient)
    images = [proj(g) for g in monoid.generators]
    live = [img for img in images if not is_zero_vec(img)]
    if not live:
        return True, None
    h2 = GroupHom.from_columns(free_group(len(live)), quotient, live)
    relations = kernel(h2)
    if relations:
        return False, {"relation_among_prime_generators": [list(r) for r in relations[:1]]}
    return True, None


def _degree_coverage(ring: GradedMonoidAlgebra, group: FgAbelianGroup) -> tuple[bool, Optional[dict]]:
    """Whether deg(sections) equals the whole group as a set.

    The degree image is a submonoid of the group; it covers iff the monoid
    presented by the degree vectors, the unit degrees (invertible) and the
    group relations (invertible) is all of the ambient presentation
    lattice, which the unit-lattice computation decides exactly.
    """
    if group.dim == 0:
        return True, None
    gens: list[Vec] = []
    inverted: list[int] = []
    for i, g in enumerate(ring.monoid.generators):
        gens.append(group.canonical(ring.degree(g)))
        if i in ring.monoid.inverted:
            inverted.append(len(gens) - 1)
    for u in ring.monoid.unit_basis:
        gens.append(group.canonical(ring.degree(u)))
        inverted.append(len(gens) - 1)
    for rel in group.relation_columns():
        gens.append(rel)
        inverted.append(len(gens) - 1)
    if not gens:
        return False, {"reason": "no homogeneous sections"}
    presented = AffineMonoid(gens, ambient_rank=group.dim, inverted=inverted)
    full = lattice_equal(list(presented.unit_basis), _standard_basis(group.dim))
    if full:
        return True, None
    return False, {"degree_monoid_units_rank": len(presented.unit_basis)}


def _prime_variable_indices(ring: GradedMonoidAlgebra) -> list[int]:
    """Generators that are invariant primes: the non-unit variables."""
    monoid = ring.monoid
    out = []
    for i, g in enumerate(monoid.generators):
        if i in monoid.inverted:
            continue
        if lattice_contains(monoid.unit_basis, g):
            continue
        out.append(i)
    return out


# ---------------------------------------------------------------------------
# suite A: the global ring


def verify_theorem_a(pres: CoxPresentation) -> VerificationReport:
    """Suite A, at the invariant level.

    (i) fraction degrees fill the class group and the degree-zero
    fractions are exactly the character lattice; (ii) the ray valuations
    restrict to the fan valuations along the pairing; (iii) monomial
    div_K covers the invariant divisor lattice with only degree-zero
    units in its kernel; supplement: deg and [div_K] agree on the
    class group.
    """
    fan, deg, cl = pres.fan, pres.deg, pres.cl
    n = fan.num_rays
    report = VerificationReport()

    var_degs = pres.variable_degrees()
    full, idx = subgroup_generates(var_degs, cl)
    report.add(
        "A.i.fraction-degrees",
        "degrees of the monomial fractions generate the class group",
        full,
        witness=None if full else {"index": idx},
    )
    ker_deg = kernel(pres.deg)
    rm = ray_map(fan)
    ray_image = [rm(m) for m in _standard_basis(fan.lattice_rank)]
    lattices_match = lattice_equal(ker_deg, ray_image)
    report.add(
        "A.i.degree-zero-lattice",
        "degree-zero monomial fractions are exactly the character lattice",
        lattices_match,
        witness=None
        if lattices_match
        else {"kernel": [list(v) for v in ker_deg], "ray_image": [list(v) for v in ray_image]},
    )
    restriction_ok = all(
        rm(m)[rho] == vdot(m, fan.rays[rho])
        for m in _standard_basis(fan.lattice_rank)
        for rho in range(n)
    )
    report.add(
        "A.ii.restriction",
        "each ray valuation restricts to the fan valuation on character monomials",
        restriction_ok,
    )
    # div_K of the variables through the valuation machinery
    div_vectors = [invariant_kdivisor(fan, pres.variable(rho)).coeffs for rho in range(n)]
    surjective = set(div_vectors) == set(_standard_basis(n)) and subgroup_generates(div_vectors, free_group(n))[0]
    report.add(
        "A.iii.surjective",
        "monomial div_K covers the invariant divisor lattice",
        surjective,
        witness=None if surjective else {"divisors": [list(v) for v in div_vectors]},
    )
    units = unit_exponent_basis(pres.ring)
    report.add(
        "A.iii.kernel",
        "kernel of div_K consists of the degree-zero units only",
        not units,
        witness=None if not units else {"unit_exponents": [list(u) for u in units]},
    )
    supplement = all(deg(v) == d for v, d in zip(div_vectors, var_degs))
    report.add(
        "A.supp.class-identity",
        "deg_K(f) -> [div_K(f)] is the identity on the class group for the variables",
        supplement,
    )
    return report


# ---------------------------------------------------------------------------
# suite B: sections and stalks


def verify_theorem_b(pres: CoxPresentation, charts: Optional[list[CharSpaceChart]] = None) -> VerificationReport:
    """Suite B, chart by chart.

    Per chart: invariant factoriality proxy and full degree coverage of
    the sections; per distinguished point: the stalk monoid is cut out by
    the cone's ray conditions and its unit degrees are the classes
    principal nearby; per ray stalk: units in every degree.
    """
    fan, cl, deg = pres.fan, pres.cl, pres.deg
    n = fan.num_rays
    report = VerificationReport()
    charts = charts if charts is not None else characteristic_space(pres)
    basis = _standard_basis(n)

    for chart in charts:
        free, witness = _monoid_mod_units_free(chart.ring)
        report.add(
            f"B.i.factorial-proxy.chart{chart.cone_index}",
            "chart monomial monoid is free modulo units (invariant factoriality proxy)",
            free,
            witness,
        )
        covered, cover_witness = _degree_coverage(chart.ring, cl)
        report.add(
            f"B.i.affine-degrees.chart{chart.cone_index}",
            "degrees of the chart sections equal the whole class group",
            covered,
            cover_witness,
        )
        stalk_ok, stalk_witness = _distinguished_stalk_check(chart)
        report.add(
            f"B.iii.stalk-monoid.chart{chart.cone_index}",
            "stalk monomials at the distinguished point are exactly the cone's ray conditions",
            stalk_ok,
            stalk_witness,
        )
        unit_degs = homogeneous_units(chart.ring)
        principal_near = [deg(b) for i, b in enumerate(basis) if i in chart.inverted]
        same = subgroups_equal(unit_degs, principal_near, cl)
        report.add(
            f"B.iii.units-subgroup.chart{chart.cone_index}",
            "unit degrees at the distinguished point equal the classes principal near it",
            same,
            witness=None
            if same
            else {
                "unit_degrees": [list(u) for u in unit_degs],
                "principal_near": [list(p) for p in principal_near],
            },
        )
    for rho in range(n):
        others = [deg(b) for i, b in enumerate(basis) if i != rho]
        full, idx = subgroup_generates(others, cl)
        report.add(
            f"B.iv.ray-units.ray{rho}",
            "the stalk at the ray's prime has units in every degree",
            full,
            witness=None if full else {"index": idx},
        )
    return report


def _distinguished_stalk_check(chart: CharSpaceChart) -> tuple[bool, Optional[dict]]:
    """Stalk at the distinguished point == intersection of sigma(1) ray conditions.

    The distinguished face of the chart spectrum has exactly the inverted
    variables; localizing there must leave precisely the sigma(1)
    positivity conditions, which is sampled on a small exponent box.
    """
    monoid = chart.ring.monoid
    faces = {f.indices: f for f in monoid.faces()}
    dist = faces.get(tuple(sorted(chart.inverted)))
    if dist is None:
        return False, {"missing_face": sorted(chart.inverted)}
    stalk = monoid.localize(dist)
    n = monoid.ambient_rank
    for point in _cartesian(*([-1, 0, 1] for _ in range(n))):
        expected = all(point[rho] >= 0 for rho in chart.sigma_rays)
        if stalk.contains(point) != expected:
            return False, {"exponent": list(point)}
    return True, None


# ---------------------------------------------------------------------------
# suite C: the characteristic space


def verify_theorem_c(pres: CoxPresentation, charts: Optional[list[CharSpaceChart]] = None) -> VerificationReport:
    """Suite C on the chart system.

    (i) fraction degrees fill the class group per chart; (ii) the quotient
    is good (degree-zero isomorphism certified) and the divisor diagram
    commutes on character monomials; (iii) the invariant graded class
    group vanishes and global homogeneous units sit in degree zero;
    supplement: single invariant prime over each ray, with the closure
    incidences of the distinguished points.
    """
    fan, cl, deg = pres.fan, pres.cl, pres.deg
    n = fan.num_rays
    charts = charts if charts is not None else characteristic_space(pres)
    report = VerificationReport()
    var_degs = pres.variable_degrees()

    for chart in charts:
        full, idx = subgroup_generates(var_degs, cl)
        report.add(
            f"C.i.fraction-degrees.chart{chart.cone_index}",
            "degrees of the chart's monomial fractions equal the class group",
            full,
            witness=None if full else {"index": idx},
        )
    iso_report = chart_isomorphism_report(charts)
    for entry in iso_report.entries:
        chart_tag = entry.id.split(".")[1]
        report.add(f"C.ii.quotient-iso.chart{chart_tag}", entry.statement, entry.passed, entry.witness)
    for chart in charts:
        ok, witness = _divisor_diagram_check(pres, chart)
        report.add(
            f"C.ii.divisor-diagram.chart{chart.cone_index}",
            "div of a character equals the identified graded divisor of its pullback",
            ok,
            witness,
        )
    div_vectors = [invariant_kdivisor(fan, pres.variable(rho)).coeffs for rho in range(n)]
    kdiv_principal = set(div_vectors) == set(_standard_basis(n))
    report.add(
        "C.iii.invariant-class-trivial",
        "every invariant graded divisor is a monomial divisor (invariant graded class group = 0)",
        kdiv_principal,
        witness=None if kdiv_principal else {"divisors": [list(v) for v in div_vectors]},
    )
    units = unit_exponent_basis(pres.ring)
    units_ok = not units or all(cl.is_zero(deg(u)) for u in units)
    report.add(
        "C.iii.global-units",
        "global homogeneous units have degree zero",
        units_ok,
        witness=None if units_ok else {"unit_exponents": [list(u) for u in units]},
    )
    for rho in range(n):
        hosting = [chart for chart in charts if rho in chart.sigma_rays]
        ok = bool(hosting)
        witnesses = []
        for chart in hosting:
            faces = {f.indices: f for f in chart.ring.monoid.faces()}
            prime_face = tuple(sorted(set(range(n)) - {rho}))
            if prime_face not in faces:
                ok = False
                witnesses.append({"chart": chart.cone_index, "missing_prime_face": rho})
        report.add(
            f"C.supp.ray-preimage.ray{rho}",
            "the preimage of the ray divisor is the single invariant prime of its variable",
            ok,
            witness=witnesses or None,
        )
    incidence_ok, bad = _incidence_check(charts, n)
    report.add(
        "C.supp.incidence",
        "a distinguished point lies on the ray's prime iff the ray belongs to its cone",
        incidence_ok,
        bad,
    )
    return report


def _divisor_diagram_check(pres: CoxPresentation, chart: CharSpaceChart) -> tuple[bool, Optional[dict]]:
    """alpha(div^K(q* chi^m)) == div(chi^m) on the chart's character monoid.

    The left side goes through the polynomial valuation machinery on the
    localized ring; the right side is the fan pairing.
    """
    chart_ring = chart.ring
    for m in chart.base_monoid.generators:
        exponent = chart.pairing_images[m]
        poly = chart_ring.monomial(exponent)
        for rho in chart.sigma_rays:
            left = monomial_valuation(poly, rho)
            right = vdot(m, pres.fan.rays[rho])
            if left != right:
                return False, {"character": list(m), "ray": rho, "left": left, "right": right}
    return True, None


def _incidence_check(charts: Sequence[CharSpaceChart], n: int) -> tuple[bool, Optional[dict]]:
    """p_sigma lies in the closure of <x_rho> iff rho is a ray of sigma."""
    for chart in charts:
        faces = {f.indices for f in chart.ring.monoid.faces()}
        dist = tuple(sorted(chart.inverted))
        if dist not in faces:
            return False, {"chart": chart.cone_index, "missing_distinguished_face": dist}
        for rho in chart.sigma_rays:
            prime_face = tuple(sorted(set(range(n)) - {rho}))
            if prime_face not in faces:
                return False, {"chart": chart.cone_index, "ray": rho}
            # closure incidence: dist face must be a subset of the prime's face
            if not set(dist) <= set(prime_face):
                return False, {"chart": chart.cone_index, "ray": rho, "incidence": "missing"}
        for rho in chart.inverted:
            prime_face = tuple(sorted(set(range(n)) - {rho}))
            if prime_face in faces and set(dist) <= set(prime_face):
                return False, {"chart": chart.cone_index, "ray": rho, "incidence": "spurious"}
    return True, None


# ---------------------------------------------------------------------------
# suite D on raw graded ring data


def verify_theorem_d(
    ring: GradedMonoidAlgebra,
    origin: Optional[DivisorialAlgebraSpec] = None,
) -> VerificationReport:
    """Suite D: the four Cox-ring conditions on a graded polynomial ring.

    (i) invariant factoriality proxy, plus a vanishing class semigroup
    when a divisorial origin is given; (ii) homogeneous units only in
    degree zero; (iii) degrees generate the grading group; (iv) for each
    prime variable, the degrees of everything else still generate.  The
    irredundancy fixtures read conditions (i), (ii) and (iv).
    """
    group = ring.group
    report = VerificationReport()
    free, witness = _monoid_mod_units_free(ring)
    report.add(
        "D.i.factorial-proxy",
        "monomial monoid is free modulo units (invariant factoriality proxy)",
        free,
        witness,
    )
    if origin is not None:
        semi = divisorial_class_semigroup(origin)
        report.add(
            "D.i.class-semigroup",
            "the invariant class semigroup of the divisorial origin vanishes",
            semi.is_trivial(),
            witness=None if semi.is_trivial() else {"class_semigroup": repr(semi)},
        )
    unit_degs = homogeneous_units(ring)
    units_zero = all(group.is_zero(u) for u in unit_degs)
    report.add(
        "D.ii.units-degree-zero",
        "homogeneous units have degree zero",
        units_zero,
        witness=None if units_zero else {"unit_degrees": [list(u) for u in unit_degs]},
    )
    all_degs = [ring.degree(g) for g in ring.monoid.generators]
    gen_full, idx = subgroup_generates(all_degs, group)
    report.add(
        "D.iii.degrees-generate",
        "degrees of the homogeneous elements generate the grading group",
        gen_full,
        witness=None if gen_full else {"index": idx},
    )
    for j in _prime_variable_indices(ring):
        rest = [ring.degree(g) for i, g in enumerate(ring.monoid.generators) if i != j]
        full, idx = subgroup_generates(rest, group)
        report.add(
            f"D.iv.leave-one-out.var{j}",
            "the localization at the prime variable has units in every degree",
            full,
            witness=None if full else {"variable": j, "index": idx},
        )
    return report


def find_prime_system(ring: GradedMonoidAlgebra) -> list[int]:
    """A set of prime variables whose leave-one-out degrees generate K.

    Follows the constructive enlargement argument restricted to monomial
    primes: the non-unit variables are the only candidates, so failure is
    reported when they do not suffice.
    """
    report = verify_theorem_d(ring)
    failed = report.failed_conditions(["D.i", "D.ii", "D.iii", "D.iv"])
    if failed:
        raise ConstructionError(f"prime system requires the ring conditions; failing: {failed}")
    candidates = _prime_variable_indices(ring)
    group = ring.group
    unit_degs = homogeneous_units(ring)
    for j in candidates:
        rest = [ring.degree(ring.monoid.generators[i]) for i in candidates if i != j] + unit_degs
        full, _ = subgroup_generates(rest, group)
        if not full:
            raise ConstructionError(
                f"monomial primes do not suffice: removing variable {j} loses generation"
            )
    return candidates


# ---------------------------------------------------------------------------
# reconstruction of the base


@dataclass
class ReconstructionResult:
    fan: Fan
    chart_monoids: list[AffineMonoid]
    report: VerificationReport


def reconstruct_base(
    ring: GradedMonoidAlgebra,
    system: Sequence[int],
    charts: Optional[Sequence[Sequence[int]]] = None,
) -> ReconstructionResult:
    """Rebuild a fan from a graded polynomial ring and a prime system.

    Each chart keeps a subset of the system non-inverted and inverts all
    other variables; its degree-zero monomials live in the character
    lattice ker(deg) and dualize to a cone of the recovered fan.  The
    default charts keep one prime each (the constructive converse yields
    ray charts then); callers rebuilding a known fan pass the ray sets of
    its maximal cones.
    """
    monoid = ring.monoid
    n = monoid.ambient_rank
    system = [int(j) for j in system]
    if charts is None:
        charts = [[j] for j in system]
    ker = kernel(ring.grading)
    if not ker:
        raise ConstructionError("trivial character lattice: nothing to reconstruct")
    k = len(ker)
    b = IntMatrix.from_columns(ker)
    report = VerificationReport()
    chart_monoids = []
    sub_cones = []
    for chart in charts:
        keep = {int(j) for j in chart}
        if not keep <= set(system):
            raise ConstructionError("chart variables must belong to the prime system")
        ineqs = [tuple(ker[t][j] for t in range(k)) for j in sorted(keep)]
        sub = Cone.from_hrep(ineqs, [], k)
        gens_k, units_k = monoid_generators_of_cone(sub)
        lifted = [b.apply(y) for y in gens_k + units_k]
        inverted = range(len(gens_k), len(lifted))
        chart_monoids.append(AffineMonoid(lifted, ambient_rank=n, inverted=inverted, saturated=True))
        sub_cones.append(sub)
    rays: list[Vec] = []
    max_cones: list[tuple[int, ...]] = []
    for sub in sub_cones:
        dual = sub.dual()
        indices = []
        for r in dual.extreme_rays:
            if r not in rays:
                rays.append(r)
            indices.append(rays.index(r))
        max_cones.append(tuple(sorted(indices)))
    fan = Fan(k, rays, max_cones)
    violations = fan.validate()
    report.add(
        "reconstruct.fan-valid",
        "the reconstructed charts glue to a valid fan",
        not violations,
        witness=None if not violations else {"violations": violations},
    )
    return ReconstructionResult(fan, chart_monoids, report)


def reconstruction_round_trip(pres: CoxPresentation) -> tuple[bool, ReconstructionResult]:
    """Rebuild the fan of a presentation from its ring and compare.

    Uses the canonical variable system with the maximal-cone ray sets as
    charts; the recovered rays, living in the dual of ker(deg), are pulled
    back to the original lattice along the ray pairing.
    """
    system = find_prime_system(pres.ring)
    result = reconstruct_base(pres.ring, system, charts=[list(c) for c in pres.fan.max_cones])
    ker = kernel(pres.ring.grading)
    rm = ray_map(pres.fan)
    ker_matrix = IntMatrix.from_columns(ker)
    pulled_rays = []
    for r in result.fan.rays:
        functional = []
        for m in _standard_basis(pres.fan.lattice_rank):
            coords = solve_integer(ker_matrix, rm(m))
            if coords is None:
                raise ConstructionError("character lattice does not match the degree kernel")
            functional.append(vdot(r, coords))
        pulled_rays.append(primitive_oriented(tuple(functional)))
    candidate = Fan(pres.fan.lattice_rank, pulled_rays, result.fan.max_cones)
    same = fans_equal_up_to_ray_permutation(candidate, pres.fan)
    result.report.add(
        "reconstruct.round-trip",
        "the reconstructed fan equals the input fan up to ray permutation",
        same,
        witness=None if same else {"reconstructed": repr(candidate), "input": repr(pres.fan)},
    )
    return same, result


# ---------------------------------------------------------------------------
# orbit lattices and F1 points


@dataclass(frozen=True)
class OrbitNode:
    face_indices: tuple[int, ...]
    ideal_generators: tuple[int, ...]
    degree_generators: tuple[Vec, ...]


def orbit_face_lattice(sigma: Cone) -> Poset:
    """Triple-labelled orbit lattice of the affine chart of a pointed cone.

    Nodes are the faces tau of the chart's Cox coordinate monoid, labelled
    by the monomial prime p_tau (generators outside tau) and by the class
    degrees of the face generators.  Face order, reverse ideal order and
    the degree labelling coincide by the order-reversing correspondence.
    """
    if not sigma.is_pointed():
        raise ConstructionError("orbit lattice requires a pointed cone")
    rays = list(sigma.extreme_rays)
    n = len(rays)
    rank_amb = sigma.ambient_rank
    pairing = GroupHom(
        free_group(rank_amb),
        free_group(n),
        IntMatrix.from_rows(rays, cols=rank_amb) if n else IntMatrix.zero(0, rank_amb),
    )
    cl, deg = cokernel(pairing)
    ring = polynomial_ring(n, deg)
    nodes = []
    for f in ring.monoid.faces():
        ideal = tuple(i for i in range(n) if i not in f.indices)
        degree_gens = tuple(deg(ring.monoid.generators[i]) for i in f.indices)
        nodes.append(OrbitNode(f.indices, ideal, degree_gens))
    return Poset(nodes, lambda a, b: set(a.face_indices) <= set(b.face_indices))


@dataclass
class F1Result:
    fan: Fan
    points: Poset  # the fan's cones as ray-index sets, ordered by face inclusion
    report: VerificationReport

    @property
    def point_count(self) -> int:
        return len(self.points)


def toric_f1_points(fan: Fan) -> F1Result:
    """Bijection between the fan's cones and the points of its monoid scheme.

    One point per cone, with specialization order opposite to the face
    order; per chart the section degrees must generate the full character
    lattice (effective grading), and every point must recover its cone by
    dualizing the stalk's degree monoid.
    """
    violations = fan.validate()
    if violations:
        raise ConstructionError("invalid fan: " + "; ".join(violations))
    cone_sets = fan.all_cone_index_sets()
    points = Poset(cone_sets, lambda a, b: set(a) <= set(b))
    report = VerificationReport()
    for idx, cone_rays in enumerate(fan.max_cones):
        sv = fan.cone_of(cone_rays).dual()
        gens, units = monoid_generators_of_cone(sv)
        full, _ = subgroup_generates(gens + units, free_group(fan.lattice_rank))
        report.add(
            f"f1.effective.chart{idx}",
            "the section degrees of the chart generate the character lattice",
            full,
        )
    inverse_ok = True
    bad = None
    for cone_rays in cone_sets:
        sigma = fan.cone_of(cone_rays)
        sv = sigma.dual()
        gens, units = monoid_generators_of_cone(sv)
        # the stalk at the point inverts the face sigma^perp cap sigma^vee of
        # the chart monoid; its degree monoid is sv + span(sigma^perp)
        perp = [g for g in gens if all(vdot(g, fan.rays[i]) == 0 for i in cone_rays)]
        stalk_gens = (
            list(gens)
            + list(units)
            + [vneg(u) for u in units]
            + [vneg(p) for p in perp]
        )
        stalk_cone = (
            Cone(stalk_gens, ambient_rank=fan.lattice_rank)
            if stalk_gens
            else Cone([], ambient_rank=fan.lattice_rank)
        )
        recovered = stalk_cone.dual()
        if not recovered.same_cone(sigma):
            inverse_ok = False
            bad = {"cone": list(cone_rays)}
            break
    report.add(
        "f1.inverse",
        "each point recovers its cone as the dual of its stalk degree monoid",
        inverse_ok,
        bad,
    )
    return F1Result(fan, points, report)
