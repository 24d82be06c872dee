"""K-graded monoid algebras and their combinatorial spectra.

The algebra k[M] of an affine monoid M in Z^d carries a grading through a
group homomorphism Z^d -> K.  For faithful gradings the K-prime spectrum
is the face poset of M in order-reversing bijection; good quotients,
graded localization, coarsening along surjections K' -> K and the
Proj-style quotient are all realized on that combinatorial data.
Coefficients are exact rationals throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import ConstructionError, EnumerationBoundError, FaithfulnessError
from .lattice import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Vec,
    cokernel,
    free_group,
    is_zero_vec,
    kernel,
    lattice_basis,
    lattice_contains,
    lattice_equal,
    lattice_intersection,
    reduce_mod_lattice,
    solve_integer,
    subgroup_generates,
    vadd,
    vdot,
    vec,
    vneg,
    vsub,
)
from .cones import AffineMonoid, Cone, Face, Poset, monoid_generators_of_cone

_NONSATURATED_RADIUS = 3


class GradedMonoidAlgebra:
    """Monoid algebra k[M] with a grading deg: Z^d -> K.

    The coefficient field is the exact rationals.  Localization data lives
    on the monoid (its `inverted` generators).  Monoid algebras over a
    field have no homogeneous zero divisors, so the algebra is K-integral
    for every grading.
    """

    __slots__ = ("monoid", "grading", "_faithful")

    def __init__(self, monoid: AffineMonoid, grading: GroupHom):
        if grading.source != free_group(monoid.ambient_rank):
            raise ConstructionError("grading source must be the ambient lattice of the monoid")
        object.__setattr__(self, "monoid", monoid)
        object.__setattr__(self, "grading", grading)
        object.__setattr__(self, "_faithful", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("GradedMonoidAlgebra is immutable")

    @property
    def group(self) -> FgAbelianGroup:
        return self.grading.target

    def degree(self, exponent: Sequence[int]) -> Vec:
        return self.grading(exponent)

    def is_faithful(self) -> bool:
        """Whether the grading is injective on the monoid's group of differences."""
        if self._faithful is None:
            ker = kernel(self.grading)
            diff = self.monoid.difference_lattice_basis()
            inter = lattice_intersection(ker, diff, self.monoid.ambient_rank)
            object.__setattr__(self, "_faithful", not inter)
        return self._faithful

    def localize(self, face: Face) -> "GradedMonoidAlgebra":
        return GradedMonoidAlgebra(self.monoid.localize(face), self.grading)

    def localize_generators(self, indices: Iterable[int]) -> "GradedMonoidAlgebra":
        inv = set(self.monoid.inverted) | set(int(i) for i in indices)
        mon = AffineMonoid(
            self.monoid.generators,
            ambient_rank=self.monoid.ambient_rank,
            inverted=inv,
            saturated=self.monoid._saturated,
        )
        return GradedMonoidAlgebra(mon, self.grading)

    def monomial(self, exponent: Sequence[int], coeff: Fraction | int = 1) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(self, {vec(exponent): Fraction(coeff)})

    def __repr__(self):
        return f"GradedMonoidAlgebra({self.monoid!r}, K={self.group!r})"


def polynomial_ring(num_vars: int, grading: GroupHom, inverted: Iterable[int] = ()) -> GradedMonoidAlgebra:
    """k[x_1..x_n] (optionally localized) with the given grading of Z^n."""
    gens = [tuple(1 if i == j else 0 for j in range(num_vars)) for i in range(num_vars)]
    monoid = AffineMonoid(gens, ambient_rank=num_vars, inverted=inverted, saturated=True)
    return GradedMonoidAlgebra(monoid, grading)


class HomogeneousPolynomial:
    """Finite rational combination of monomials sharing one degree."""

    __slots__ = ("parent", "terms", "degree")

    def __init__(self, parent: GradedMonoidAlgebra, terms: Mapping[Vec, Fraction]):
        cleaned = {vec(e): Fraction(c) for e, c in terms.items() if c != 0}
        if not cleaned:
            raise ConstructionError("zero polynomial disallowed; use None at call sites")
        degrees = {parent.degree(e) for e in cleaned}
        if len(degrees) != 1:
            raise ConstructionError(f"terms of mixed degree: {sorted(degrees)}")
        for e in cleaned:
            if not parent.monoid.contains(e):
                raise ConstructionError(f"exponent {e} outside the monoid")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "terms", dict(cleaned))
        object.__setattr__(self, "degree", degrees.pop())

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("HomogeneousPolynomial is immutable")

    def exponents(self) -> list[Vec]:
        return sorted(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __mul__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        if self.parent is not other.parent:
            raise ConstructionError("mixed parents")
        out: dict[Vec, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = vadd(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return HomogeneousPolynomial(self.parent, out)

    def add(self, other: "HomogeneousPolynomial") -> Optional["HomogeneousPolynomial"]:
        """Sum, or None when the polynomials cancel."""
        if self.parent is not other.parent:
            raise ConstructionError("mixed parents")
        if self.degree != other.degree:
            raise ConstructionError("sum of different degrees is not homogeneous")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        cleaned = {e: c for e, c in out.items() if c != 0}
        if not cleaned:
            return None
        return HomogeneousPolynomial(self.parent, cleaned)

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousPolynomial)
            and self.parent is other.parent
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.parent), tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return "Poly(" + " + ".join(f"{c}*x^{list(e)}" for e, c in sorted(self.terms.items())) + ")"


# ---------------------------------------------------------------------------
# K-spectrum


@dataclass(frozen=True)
class SpectrumPoint:
    """A monomial K-prime, carried by its face and its ideal generators."""

    face: Face
    ideal_generators: tuple[int, ...]  # indices of monoid generators outside the face

    def __repr__(self):
        return f"Point(face={self.face.indices}, ideal=<{self.ideal_generators}>)"


def k_spectrum(algebra: GradedMonoidAlgebra) -> Poset:
    """The poset of monomial K-primes, ordered by ideal inclusion.

    This is the full K-spectrum exactly when the grading is faithful
    (graded primes are then monomial); coarser gradings are refused.
    """
    if not algebra.is_faithful():
        raise FaithfulnessError("K-spectrum exceeds monomial ideals; faithful grading required")
    return invariant_spectrum(algebra)


def invariant_spectrum(algebra: GradedMonoidAlgebra) -> Poset:
    """The monomial sub-spectrum, available for every grading."""
    faces = algebra.monoid.faces()
    points = []
    n = len(algebra.monoid.generators)
    for f in faces:
        outside = tuple(i for i in range(n) if i not in f.indices)
        points.append(SpectrumPoint(f, outside))
    # ideal inclusion is reverse face inclusion
    return Poset(points, lambda p, q: set(q.face.indices) <= set(p.face.indices))


def stalk_monoid(algebra: GradedMonoidAlgebra, point: SpectrumPoint) -> AffineMonoid:
    """The monoid M - tau of the stalk at a spectrum point."""
    faces = algebra.monoid.faces()
    if point.face not in faces:
        raise ConstructionError("point does not belong to this spectrum")
    return algebra.monoid.localize(point.face)


# ---------------------------------------------------------------------------
# degree-zero part and good quotients


def _degree_zero_monoid(algebra: GradedMonoidAlgebra) -> AffineMonoid:
    monoid = algebra.monoid
    d = monoid.ambient_rank
    ker = kernel(algebra.grading)
    if not ker:
        return AffineMonoid([], ambient_rank=d, saturated=True)
    if len(ker) == d and lattice_equal(ker, [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]):
        return monoid  # trivial grading: the degree-zero part is everything
    b = IntMatrix.from_columns(ker)
    pulled_ineqs = [tuple(vdot(u, col) for col in ker) for u in monoid.cone.facet_normals]
    pulled_eqs = [tuple(vdot(s, col) for col in ker) for s in monoid.cone.span_equations]
    sub = Cone.from_hrep(pulled_ineqs, pulled_eqs, len(ker))
    gens, units = monoid_generators_of_cone(sub)
    lifted = [b.apply(y) for y in gens]
    lifted_units = [b.apply(y) for y in units]
    if monoid.is_saturated():
        all_gens = lifted + lifted_units
        inverted = range(len(lifted), len(all_gens))
        return AffineMonoid(all_gens, ambient_rank=d, inverted=inverted, saturated=True)
    return _degree_zero_monoid_bounded(algebra, sub, b)


def _degree_zero_monoid_bounded(algebra: GradedMonoidAlgebra, sub: Cone, b: IntMatrix) -> AffineMonoid:
    """Degree-zero part of a non-saturated monoid by bounded enumeration.

    Enumerates lattice points of the kernel-coordinate cone in a box that
    is _NONSATURATED_RADIUS times the saturated Hilbert box, filters by
    monoid membership and minimalizes; if a minimal generator touches the
    boundary shell, completeness is not certified and we refuse.
    """
    monoid = algebra.monoid
    if not sub.is_pointed():
        raise EnumerationBoundError(
            "degree-zero monoid of a non-saturated monoid with units: increase enumeration bound"
        )
    rays = sub.extreme_rays
    if not rays:
        return AffineMonoid([], ambient_rank=monoid.ambient_rank, saturated=True)
    k = sub.ambient_rank
    lo = [_NONSATURATED_RADIUS * sum(min(0, r[j]) for r in rays) for j in range(k)]
    hi = [_NONSATURATED_RADIUS * sum(max(0, r[j]) for r in rays) for j in range(k)]
    members = []
    for point in _cartesian(*(range(a, b2 + 1) for a, b2 in zip(lo, hi))):
        if is_zero_vec(point) or not sub.contains(point):
            continue
        lifted = b.apply(point)
        if monoid.contains(lifted):
            members.append(point)
    minimal = []
    for x in members:
        if not any(
            y != x and sub.contains(vsub(x, y)) and not is_zero_vec(vsub(x, y)) and vsub(x, y) in set(members)
            for y in members
        ):
            minimal.append(x)
    shell = [
        x
        for x in minimal
        if any(x[j] in (lo[j], hi[j]) and hi[j] != lo[j] for j in range(k))
    ]
    if shell:
        raise EnumerationBoundError("degree-zero monoid not certified complete: increase enumeration bound")
    return AffineMonoid([b.apply(x) for x in minimal], ambient_rank=monoid.ambient_rank, saturated=None)


@dataclass
class GoodQuotientResult:
    """Good quotient of an affine graded spectrum onto its degree-zero part."""

    algebra: GradedMonoidAlgebra
    degree_zero_monoid: AffineMonoid
    point_map: dict  # Face of M -> Face of M0
    surjective: bool

    def fibers(self) -> dict:
        out: dict = {}
        for src, dst in self.point_map.items():
            out.setdefault(dst, []).append(src)
        return out


def good_quotient_affine(algebra: GradedMonoidAlgebra) -> GoodQuotientResult:
    """The quotient face map onto the degree-zero monoid's spectrum.

    point_map sends the face tau of M to tau cap M0, a face of M0; it is
    surjective onto the faces of M0.  Operates on the monomial (invariant)
    spectrum, so coarse gradings are allowed.
    """
    m0 = _degree_zero_monoid(algebra)
    m_faces = algebra.monoid.faces()
    m0_faces = m0.faces()
    by_indices = {f.indices: f for f in m0_faces}
    point_map = {}
    for f in m_faces:
        selected = tuple(
            i for i, g in enumerate(m0.generators) if vdot(f.normal, g) == 0
        )
        target = by_indices.get(selected)
        if target is None:  # pragma: no cover - faces of M0 are closed under support cuts
            raise ConstructionError("face image is not a face of the degree-zero monoid")
        point_map[f] = target
    surjective = set(point_map.values()) == set(m0_faces.elements())
    return GoodQuotientResult(algebra, m0, point_map, surjective)


def distinguished_point(algebra: GradedMonoidAlgebra, fiber: Sequence[Face]) -> Face:
    """The unique fiber point lying in the closure of every other one.

    In face terms: the smallest face of the fiber (largest ideal); it must
    be the full preimage of one base point.
    """
    quotient = good_quotient_affine(algebra)
    fiber_set = set(fiber)
    if not fiber_set:
        raise ConstructionError("empty fiber")
    images = {quotient.point_map[f] for f in fiber_set}
    if len(images) != 1:
        raise ConstructionError("fiber maps to several base points")
    base = images.pop()
    full = {f for f, img in quotient.point_map.items() if img == base}
    if full != fiber_set:
        raise ConstructionError("fiber is not a full preimage")
    minimal = [f for f in fiber_set if all(set(f.indices) <= set(g.indices) for g in fiber_set)]
    if len(minimal) != 1:
        raise ConstructionError("fiber has no unique distinguished point")
    return minimal[0]


# ---------------------------------------------------------------------------
# homogeneous units and valuations


def homogeneous_units(algebra: GradedMonoidAlgebra) -> list[Vec]:
    """Generators of the degree subgroup of the homogeneous units.

    The monomial units are exactly the monoid elements m with -m also in
    the monoid; their degrees generate the returned subgroup of K.
    """
    return [algebra.degree(u) for u in algebra.monoid.unit_basis]


def unit_exponent_basis(algebra: GradedMonoidAlgebra) -> list[Vec]:
    return list(algebra.monoid.unit_basis)


def monomial_valuation(poly: HomogeneousPolynomial, coordinate: int) -> int:
    """min over terms of the exponent at the given ambient coordinate.

    Requires the coordinate to define a discrete valuation of the monoid
    algebra: non-negative on the monoid generators, zero on units, and
    attaining 1.
    """
    monoid = poly.parent.monoid
    d = monoid.ambient_rank
    if coordinate < 0 or coordinate >= d:
        raise ConstructionError("coordinate out of range")
    for u in monoid.unit_basis:
        if u[coordinate] != 0:
            raise ConstructionError(f"valuation not discrete at coordinate {coordinate}: unit has nonzero exponent")
    values = []
    for i, g in enumerate(monoid.generators):
        if i in monoid.inverted:
            continue
        if g[coordinate] < 0:
            raise ConstructionError(f"valuation not discrete at coordinate {coordinate}: negative generator exponent")
        values.append(g[coordinate])
    from math import gcd as _gcd

    g = 0
    for x in values:
        g = _gcd(g, x)
    if g != 1:
        raise ConstructionError(f"valuation not discrete at coordinate {coordinate}: values generate {g}Z")
    return min(e[coordinate] for e in poly.terms)


# ---------------------------------------------------------------------------
# monomial graded ideals and coarsening


class MonomialIdeal:
    """Graded ideal generated by monomials, in normalized form.

    Generators are reduced to canonical representatives modulo the unit
    lattice and minimalized with respect to monomial divisibility.
    """

    __slots__ = ("algebra", "gens")

    def __init__(self, algebra: GradedMonoidAlgebra, generators: Iterable[Sequence[int]]):
        monoid = algebra.monoid
        exps = []
        for e in generators:
            x = vec(e)
            if not monoid.contains(x):
                raise ConstructionError(f"ideal generator {x} outside the monoid")
            exps.append(reduce_mod_lattice(x, monoid.unit_basis))
        exps = sorted(set(exps))
        # distinct unit-reduced exponents cannot divide each other mutually,
        # so dropping every dominated generator is safe
        minimal = []
        for x in exps:
            if not any(y != x and monoid.contains(vsub(x, y)) for y in exps):
                minimal.append(x)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "gens", tuple(minimal))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MonomialIdeal is immutable")

    def contains_exponent(self, e: Sequence[int]) -> bool:
        x = vec(e)
        return any(self.algebra.monoid.contains(vsub(x, g)) for g in self.gens)

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.algebra, [vadd(a, b) for a in self.gens for b in other.gens])

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.algebra, list(self.gens) + list(other.gens))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.algebra is other.algebra
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((id(self.algebra), self.gens))

    def __repr__(self):
        return f"MonomialIdeal({[list(g) for g in self.gens]})"


@dataclass(frozen=True)
class CoarseningData:
    """Surjection psi: K' -> K with a kernel character into homogeneous units.

    kernel_character maps each basis element w' of ker(psi) to the exponent
    of a monomial unit of degree w'.
    """

    psi: GroupHom
    kernel_character: tuple[tuple[Vec, Vec], ...]  # (kernel element of K', unit exponent)

    @classmethod
    def build(cls, psi: GroupHom, character: Mapping[Vec, Sequence[int]]) -> "CoarseningData":
        return cls(psi, tuple(sorted((vec(k), vec(v)) for k, v in character.items())))


@dataclass
class CoarseningResult:
    fine: GradedMonoidAlgebra
    coarse: GradedMonoidAlgebra
    data: CoarseningData

    def ideal_forward(self, ideal: MonomialIdeal) -> MonomialIdeal:
        if ideal.algebra is not self.fine:
            raise ConstructionError("ideal does not belong to the fine algebra")
        return MonomialIdeal(self.coarse, ideal.gens)

    def ideal_backward(self, ideal: MonomialIdeal) -> MonomialIdeal:
        if ideal.algebra is not self.coarse:
            raise ConstructionError("ideal does not belong to the coarse algebra")
        return MonomialIdeal(self.fine, ideal.gens)


def coarsen_cie(algebra: GradedMonoidAlgebra, data: CoarseningData) -> CoarseningResult:
    """Coarsen the grading along psi, checking the kernel character.

    Mirrors the quotient by the ideal <1 - chi(w')>: because every chi(w')
    is a homogeneous unit, monomial graded ideals correspond bijectively
    (and exactly, not just up to saturation) under the coarsening.
    """
    psi = data.psi
    if psi.source != algebra.group:
        raise ConstructionError("psi source must be the fine grading group")
    q, _ = cokernel(psi)
    if not q.is_trivial():
        raise ConstructionError("psi must be surjective")
    kernel_gens = kernel(psi)
    given = [k for k, _ in data.kernel_character]
    kprime = algebra.group
    if not _subgroup_equal_in(kprime, given, kernel_gens):
        raise ConstructionError("kernel character keys do not generate ker(psi)")
    monoid = algebra.monoid
    for w, exponent in data.kernel_character:
        if not lattice_contains(monoid.unit_basis, exponent):
            raise ConstructionError(f"character value {exponent} is not a homogeneous unit")
        if algebra.degree(exponent) != kprime.canonical(w):
            raise ConstructionError(f"character value {exponent} has degree {algebra.degree(exponent)}, expected {w}")
    coarse_grading = psi.compose(algebra.grading)
    coarse = GradedMonoidAlgebra(monoid, coarse_grading)
    return CoarseningResult(algebra, coarse, data)


def _subgroup_equal_in(group: FgAbelianGroup, gens1: Sequence[Vec], gens2: Sequence[Vec]) -> bool:
    from .lattice import subgroups_equal

    return subgroups_equal([group.canonical(g) for g in gens1], [group.canonical(g) for g in gens2], group)


def unit_degree_correspondence(result: CoarseningResult) -> bool:
    """Check that units map onto units with kernel exactly im(chi).

    On monomial units: the sublattice of unit exponents whose coarse degree
    vanishes must equal the character lattice plus the fine-degree-zero
    unit lattice.
    """
    fine = result.fine
    units = list(fine.monoid.unit_basis)
    d = fine.monoid.ambient_rank
    if not units:
        return not result.data.kernel_character or all(
            is_zero_vec(v) for _, v in result.data.kernel_character
        )
    b = IntMatrix.from_columns(units)
    coarse_on_units = GroupHom(free_group(len(units)), result.coarse.group, result.coarse.grading.matrix.mul(b))
    fine_on_units = GroupHom(free_group(len(units)), fine.group, fine.grading.matrix.mul(b))
    lat1 = [b.apply(z) for z in kernel(coarse_on_units)]
    chi_lattice = [v for _, v in result.data.kernel_character]
    lat2 = chi_lattice + [b.apply(z) for z in kernel(fine_on_units)]
    return lattice_equal(
        lattice_basis(lat1, d),
        lattice_basis(lat2, d),
    )


# ---------------------------------------------------------------------------
# Proj

@dataclass
class ProjChart:
    generator_index: int
    localized: GradedMonoidAlgebra
    degree_zero_monoid: AffineMonoid
    face_bijection: dict  # Face of localized monoid -> Face of degree-zero monoid


@dataclass
class ProjResult:
    charts: list[ProjChart]
    geometric: bool
    glued_points: list[tuple[int, ...]]  # faces of the ambient monoid, as index sets

    @property
    def point_count(self) -> int:
        return len(self.glued_points)


def proj_quotient(algebra: GradedMonoidAlgebra) -> ProjResult:
    """Charts of the Proj-style quotient of a non-negatively Z-graded algebra.

    One chart per positive-degree monoid generator f: the degree-zero
    monoid of the localization at f.  The quotient is geometric iff the
    face map is bijective on every chart; chart points glue along the
    faces of the ambient monoid that contain a positive-degree generator.
    """
    if algebra.group != free_group(1):
        raise ConstructionError("Proj requires a Z-grading")
    monoid = algebra.monoid
    degrees = [algebra.degree(g)[0] for g in monoid.generators]
    if any(dg < 0 for dg in degrees):
        raise ConstructionError("negative degrees")
    charts = []
    geometric = True
    glued: set[tuple[int, ...]] = set()
    for i, dg in enumerate(degrees):
        if dg <= 0 or i in monoid.inverted:
            continue
        localized = algebra.localize_generators([i])
        quotient = good_quotient_affine(localized)
        bij: dict = dict(quotient.point_map)
        chart_geometric = quotient.surjective and len(set(bij.values())) == len(bij)
        geometric = geometric and chart_geometric
        charts.append(ProjChart(i, localized, quotient.degree_zero_monoid, bij))
        for f in localized.monoid.faces():
            glued.add(f.indices)
    return ProjResult(charts, geometric, sorted(glued, key=lambda s: (len(s), s)))


# ---------------------------------------------------------------------------
# spectrum morphisms


def spec_morphism(
    algebra_from: GradedMonoidAlgebra,
    algebra_to: GradedMonoidAlgebra,
    psi: GroupHom,
    lattice_map: IntMatrix,
) -> dict:
    """Spectrum map Spec k[M] -> Spec k[M'] of a graded ring map k[M'] -> k[M].

    algebra_from is k[M'] and algebra_to is k[M]; lattice_map theta sends
    the ambient lattice of M' into that of M with deg o theta = psi o deg',
    and must map M' into M.  Returns {face tau of M: face psi^-1(tau) cap M'}.
    """
    src, dst = algebra_from, algebra_to
    if psi.source != src.group or psi.target != dst.group:
        raise ConstructionError("psi must map the source grading group to the target one")
    if lattice_map.rows != dst.monoid.ambient_rank or lattice_map.cols != src.monoid.ambient_rank:
        raise ConstructionError("lattice map shape mismatch")
    expected = psi.compose(src.grading)
    actual = GroupHom(free_group(src.monoid.ambient_rank), dst.group, dst.grading.matrix.mul(lattice_map))
    basis = [tuple(1 if i == j else 0 for j in range(src.monoid.ambient_rank)) for i in range(src.monoid.ambient_rank)]
    if any(expected(e) != actual(e) for e in basis):
        raise ConstructionError("lattice map is not compatible with psi")
    images = [lattice_map.apply(g) for g in src.monoid.generators]
    for g, img in zip(src.monoid.generators, images):
        if not dst.monoid.contains(img):
            raise ConstructionError(f"monoid not mapped into target monoid: generator {g}")
    src_faces = {f.indices: f for f in src.monoid.faces()}
    out = {}
    for f in dst.monoid.faces():
        pulled = tuple(
            i for i, img in enumerate(images) if vdot(f.normal, img) == 0
        )
        target = src_faces.get(pulled)
        if target is None:  # pragma: no cover - preimages of faces are faces
            raise ConstructionError("preimage is not a face")
        out[f] = target
    return out
