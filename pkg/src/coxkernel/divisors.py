"""Invariant Weil divisors on fans, class groups, and divisorial algebras.

Divisors are integer vectors indexed by the rays of a fan.  The class
group is the cokernel of the ray-pairing map m -> (<m, v_rho>)_rho, and
all divisor arithmetic happens over the invariant basis: every class has
an invariant representative, so class-level checks are complete here.
Graded-valuation vectors over the rays add componentwise, matching the
reflexive-hull sum on divisorial ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as _cartesian
from math import ceil, floor
from typing import Iterable, Optional, Sequence

from .errors import ConstructionError
from .lattice import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Vec,
    cokernel,
    free_group,
    is_zero_vec,
    subgroup_generates,
    vadd,
    vdot,
    vec,
    vneg,
)
from .cones import AffineMonoid, Cone, Fan, saturated_monoid_from_cone
from .spectra import (
    CoarseningData,
    GradedMonoidAlgebra,
    HomogeneousPolynomial,
    _degree_zero_monoid,
    coarsen_cie,
    monomial_valuation,
)


@dataclass(frozen=True)
class WeilDivisor:
    """Invariant Weil divisor: one integer coefficient per ray."""

    fan: Fan
    coeffs: Vec

    def __post_init__(self):
        if len(self.coeffs) != self.fan.num_rays:
            raise ConstructionError("coefficient count must match the number of rays")
        object.__setattr__(self, "coeffs", vec(self.coeffs))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def add(self, other: "WeilDivisor") -> "WeilDivisor":
        return WeilDivisor(self.fan, vadd(self.coeffs, other.coeffs))

    def neg(self) -> "WeilDivisor":
        return WeilDivisor(self.fan, vneg(self.coeffs))


@dataclass(frozen=True)
class KWeilDivisor:
    """Graded-divisor vector over the invariant height-one primes <x_rho>.

    These vectors form a basis picture of the graded divisor group, so the
    reflexive sum is componentwise addition.
    """

    fan: Fan
    coeffs: Vec

    def __post_init__(self):
        if len(self.coeffs) != self.fan.num_rays:
            raise ConstructionError("coefficient count must match the number of rays")
        object.__setattr__(self, "coeffs", vec(self.coeffs))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)


@dataclass(frozen=True)
class DivisorClass:
    group: FgAbelianGroup
    value: Vec

    def __post_init__(self):
        object.__setattr__(self, "value", self.group.canonical(self.value))

    def is_zero(self) -> bool:
        return self.group.is_zero(self.value)


def ray_map(fan: Fan) -> GroupHom:
    """m -> (<m, v_rho>)_rho from the character lattice to the divisor lattice."""
    return GroupHom(
        free_group(fan.lattice_rank),
        free_group(fan.num_rays),
        IntMatrix.from_rows(list(fan.rays), cols=fan.lattice_rank),
    )


def class_group(fan: Fan) -> tuple[FgAbelianGroup, GroupHom]:
    """Class group of the fan and the degree map on the divisor lattice."""
    violations = fan.validate()
    if violations:
        raise ConstructionError("invalid fan: " + "; ".join(violations))
    return cokernel(ray_map(fan))


def principal_divisor(fan: Fan, m: Sequence[int]) -> WeilDivisor:
    return WeilDivisor(fan, ray_map(fan)(m))


def divisor_class(fan: Fan, deg: GroupHom, divisor: WeilDivisor | KWeilDivisor) -> DivisorClass:
    return DivisorClass(deg.target, deg(divisor.coeffs))


# ---------------------------------------------------------------------------
# global sections


def _section_vertices(fan: Fan, coeffs: Vec) -> list[tuple[Fraction, ...]]:
    n = fan.lattice_rank
    verts = []
    for subset in combinations(range(fan.num_rays), n):
        mat = [[Fraction(fan.rays[i][j]) for j in range(n)] for i in subset]
        rhs = [Fraction(-coeffs[i]) for i in subset]
        sol = _solve_fraction(mat, rhs)
        if sol is None:
            continue
        if all(vdot_fraction(fan.rays[i], sol) >= -coeffs[i] for i in range(fan.num_rays)):
            verts.append(tuple(sol))
    return verts


def vdot_fraction(u: Sequence[int], v: Sequence[Fraction]) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(u, v))


def _solve_fraction(mat: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        a[col] = [x / a[col][col] for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def global_sections(
    fan: Fan, divisor: WeilDivisor, box: Optional[tuple[Vec, Vec]] = None
) -> list[Vec]:
    """Lattice points m with div(chi^m) + D >= 0.

    The section polyhedron must be bounded (complete ray support), unless
    an explicit enumeration box (lo, hi) is supplied.
    """
    n = fan.lattice_rank
    if box is None:
        if not fan.is_complete_support():
            raise ConstructionError("unbounded section polyhedron: supply enumeration box")
        verts = _section_vertices(fan, divisor.coeffs)
        if not verts:
            return []
        lo = tuple(floor(min(v[j] for v in verts)) for j in range(n))
        hi = tuple(ceil(max(v[j] for v in verts)) for j in range(n))
    else:
        lo, hi = vec(box[0]), vec(box[1])
    out = []
    for point in _cartesian(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(vdot(fan.rays[i], point) >= -divisor.coeffs[i] for i in range(fan.num_rays)):
            out.append(point)
    return sorted(out)


# ---------------------------------------------------------------------------
# divisorial algebras A = k[sigma^vee cap M], R_w = {a : div(a) + phi(w) >= 0}


class DivisorialAlgebraSpec:
    """Base ring A = k[sigma^vee cap M] with a twist phi: K -> Div(A).

    Div(A) is the invariant divisor lattice Z^{rays(sigma)}; the graded
    piece of degree w consists of the monomial fractions a with
    div(a) + phi(w) >= 0.
    """

    __slots__ = ("sigma", "group", "phi", "rays", "base_monoid")

    def __init__(self, sigma: Cone, group: FgAbelianGroup, phi: GroupHom):
        if not sigma.is_pointed():
            raise ConstructionError("base cone must be pointed")
        rays = sigma.extreme_rays
        if phi.source != group or phi.target != free_group(len(rays)):
            raise ConstructionError("phi must map K to the ray divisor lattice")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "base_monoid", saturated_monoid_from_cone(sigma.dual()))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("DivisorialAlgebraSpec is immutable")

    @property
    def ambient_rank(self) -> int:
        return self.sigma.ambient_rank

    def base_fan(self) -> Fan:
        return Fan(self.ambient_rank, list(self.rays), [tuple(range(len(self.rays)))])


def mu_valuation(spec: DivisorialAlgebraSpec, ray_index: int, a: Sequence[int], w: Sequence[int]) -> int:
    """nu_p(a) + nu_p(phi(w)) at the invariant prime of the given ray.

    `a` is the exponent of a monomial fraction chi^a; the zero element of
    the function field has no valuation and must not be encoded here.
    """
    if ray_index < 0 or ray_index >= len(spec.rays):
        raise ConstructionError("ray index out of range")
    exponent = vec(a)
    if len(exponent) != spec.ambient_rank:
        raise ConstructionError("monomial exponent length mismatch")
    tw = spec.phi(w)
    return vdot(spec.rays[ray_index], exponent) + tw[ray_index]


def component_membership(spec: DivisorialAlgebraSpec, a: Sequence[int], w: Sequence[int]) -> bool:
    """Whether chi^a lies in the degree-w component, i.e. div(a) + phi(w) >= 0."""
    return all(mu_valuation(spec, p, a, w) >= 0 for p in range(len(spec.rays)))


def divisorial_class_semigroup(spec: DivisorialAlgebraSpec) -> FgAbelianGroup:
    """Cl(A) / im([phi]); the graded ring is K-factorial iff this vanishes."""
    cl, deg = class_group(spec.base_fan())
    composite = deg.compose(spec.phi)
    quotient, _ = cokernel(composite)
    return quotient


@dataclass
class DivisorialPresentation:
    spec: DivisorialAlgebraSpec
    algebra: GradedMonoidAlgebra
    degree_zero_matches_base: bool
    degrees_surject: bool


def divisorial_algebra_presentation(spec: DivisorialAlgebraSpec) -> DivisorialPresentation:
    """Present the graded algebra as a monoid algebra on {(m, w): div + phi >= 0}.

    Needs a free twist group; reach torsion gradings by presenting over a
    free cover and coarsening along the projection afterwards.
    """
    if spec.group.torsion:
        raise ConstructionError(
            "torsion grading group: present over a free cover and coarsen along the projection"
        )
    n = spec.ambient_rank
    rk = spec.group.free_rank
    rows = []
    for p, ray in enumerate(spec.rays):
        rows.append(tuple(ray) + spec.phi.matrix.row(p))
    cone = Cone.from_hrep(rows, [], n + rk)
    monoid = saturated_monoid_from_cone(cone)
    proj_rows = [
        tuple(0 for _ in range(n)) + tuple(1 if j == i else 0 for j in range(rk)) for i in range(rk)
    ]
    grading = GroupHom(free_group(n + rk), spec.group, IntMatrix.from_rows(proj_rows, cols=n + rk))
    algebra = GradedMonoidAlgebra(monoid, grading)
    # degree-zero slice must be the base monoid sigma^vee cap M, embedded as (m, 0)
    zero_part = _degree_zero_monoid(algebra)
    embedded_base = [tuple(g) + (0,) * rk for g in spec.base_monoid.generators]
    slice_ok = all(zero_part.contains(g) for g in embedded_base) and all(
        spec.base_monoid.contains(g[:n]) and is_zero_vec(g[n:]) for g in zero_part.generators
    )
    degree_vectors = [algebra.degree(g) for g in monoid.generators]
    surject, _ = subgroup_generates(degree_vectors, spec.group)
    return DivisorialPresentation(spec, algebra, slice_ok, surject)


def cox_ring_of_chart_via_free_cover(spec: DivisorialAlgebraSpec, psi: GroupHom, character) -> "GradedMonoidAlgebra":
    """Coarsen a free-cover presentation along psi using the given character."""
    pres = divisorial_algebra_presentation(spec)
    data = CoarseningData.build(psi, character)
    return coarsen_cie(pres.algebra, data).coarse


# ---------------------------------------------------------------------------
# graded divisors of Cox-presented polynomial rings


def invariant_kdivisor(fan: Fan, poly: HomogeneousPolynomial) -> KWeilDivisor:
    """Ray-wise minimal exponents of a homogeneous element of a Cox-type ring.

    The parent must be a polynomial ring with one variable per ray of the
    fan.  For monomials the class of the result is the degree.
    """
    if poly.parent.monoid.ambient_rank != fan.num_rays:
        raise ConstructionError("polynomial ring does not match the fan's ray count")
    coeffs = tuple(monomial_valuation(poly, rho) for rho in range(fan.num_rays))
    return KWeilDivisor(fan, coeffs)


def invariant_class_matches_degree(fan: Fan, deg: GroupHom, poly: HomogeneousPolynomial) -> bool:
    """[invariant part of div_K(f)] == deg_K(f); fails iff a non-invariant
    divisor is present (the invariant vector then misses part of div)."""
    kdiv = invariant_kdivisor(fan, poly)
    return deg(kdiv.coeffs) == deg.target.canonical(poly.degree)


def reflexive_vector(fan: Fan, generators: Sequence[HomogeneousPolynomial]) -> KWeilDivisor:
    """Divisor vector of the reflexive hull of a monomially/polynomially
    generated graded ideal: componentwise min of the generator vectors."""
    if not generators:
        raise ConstructionError("empty generator list")
    vectors = [invariant_kdivisor(fan, g).coeffs for g in generators]
    coeffs = tuple(min(v[i] for v in vectors) for i in range(fan.num_rays))
    return KWeilDivisor(fan, coeffs)


def box_plus(a: KWeilDivisor, b: KWeilDivisor) -> KWeilDivisor:
    """Reflexive sum of graded divisors: componentwise over the ray basis."""
    if a.fan is not b.fan and a.fan != b.fan:
        raise ConstructionError("divisors on different fans")
    return KWeilDivisor(a.fan, vadd(a.coeffs, b.coeffs))
