"""Rational polyhedral cones, affine monoids and fans, all in exact arithmetic.

Conversion between generator and inequality descriptions runs a subset
enumeration sized for desk-scale inputs (rank <= 6, <= 20 generators);
no output-sensitive machinery is attempted.  Cones cache their facet
normals and extreme rays eagerly and are immutable afterwards.
"""

from __future__ import annotations

from itertools import combinations, product as _cartesian
from typing import Callable, Iterable, Optional, Sequence

from .errors import ConstructionError, EnumerationBoundError, NotPointedError
from .lattice import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Vec,
    cokernel,
    free_group,
    is_zero_vec,
    kernel_lattice,
    lattice_basis,
    lattice_contains,
    lattice_equal,
    primitive,
    primitive_oriented,
    rank,
    solve_integer,
    vadd,
    vdot,
    vec,
    vneg,
    vsub,
)

_HILBERT_BOX_LIMIT = 4_000_000


def _hrep_to_extreme(ineqs: Sequence[Vec], eqs: Sequence[Vec], dim: int) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and lineality basis of {x : A x >= 0, E x = 0}.

    The returned rays are primitive, lie in the orthogonal complement of
    the lineality space, and together with +-(lineality basis) generate
    the cone.
    """
    stacked = list(ineqs) + list(eqs)
    lineality = kernel_lattice(IntMatrix.from_rows(stacked, cols=dim)) if stacked else kernel_lattice(
        IntMatrix.zero(0, dim)
    )
    eq_rows = list(eqs) + list(lineality)
    rank_eq = rank(IntMatrix.from_rows(eq_rows, cols=dim)) if eq_rows else 0
    need = dim - 1 - rank_eq
    if need < 0:
        return [], lineality
    rays: set[Vec] = set()
    for subset in combinations(range(len(ineqs)), need):
        rows = [ineqs[i] for i in subset] + eq_rows
        ker = kernel_lattice(IntMatrix.from_rows(rows, cols=dim)) if rows else kernel_lattice(
            IntMatrix.zero(0, dim)
        )
        if len(ker) != 1:
            continue
        r = primitive_oriented(ker[0])
        vals = [vdot(a, r) for a in ineqs]
        if all(x >= 0 for x in vals):
            rays.add(r)
        elif all(x <= 0 for x in vals):
            rays.add(vneg(r))
    return sorted(rays), lineality


class Cone:
    """Rational polyhedral cone given by integer generators.

    Non-pointed and non-full-dimensional cones are supported; the minimal
    face is the lineality space C cap -C.
    """

    __slots__ = ("ambient_rank", "generators", "facet_normals", "span_equations", "extreme_rays", "lineality_basis")

    def __init__(self, generators: Sequence[Sequence[int]], ambient_rank: Optional[int] = None):
        gens = tuple(vec(g) for g in generators)
        if ambient_rank is None:
            if not gens:
                raise ConstructionError("ambient rank required for a cone without generators")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise ConstructionError("generator length mismatch")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "generators", gens)
        dual_rays, dual_lin = _hrep_to_extreme(gens, [], ambient_rank)
        object.__setattr__(self, "facet_normals", tuple(dual_rays))
        object.__setattr__(self, "span_equations", tuple(dual_lin))
        rays, lin = _hrep_to_extreme(self.facet_normals, self.span_equations, ambient_rank)
        object.__setattr__(self, "extreme_rays", tuple(rays))
        object.__setattr__(self, "lineality_basis", tuple(lin))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Cone is immutable")

    @classmethod
    def from_hrep(cls, ineqs: Sequence[Vec], eqs: Sequence[Vec], dim: int) -> "Cone":
        rays, lin = _hrep_to_extreme(list(ineqs), list(eqs), dim)
        gens = list(rays) + list(lin) + [vneg(b) for b in lin]
        return cls(gens, ambient_rank=dim)

    def contains(self, x: Sequence[int]) -> bool:
        v = vec(x)
        return all(vdot(u, v) >= 0 for u in self.facet_normals) and all(
            vdot(s, v) == 0 for s in self.span_equations
        )

    def is_pointed(self) -> bool:
        return not self.lineality_basis

    def is_zero(self) -> bool:
        return not self.extreme_rays and not self.lineality_basis

    @property
    def dim(self) -> int:
        span = list(self.extreme_rays) + list(self.lineality_basis)
        if not span:
            return 0
        return rank(IntMatrix.from_rows(span, cols=self.ambient_rank))

    def dual(self) -> "Cone":
        gens = list(self.facet_normals) + list(self.span_equations) + [vneg(s) for s in self.span_equations]
        return Cone(gens, ambient_rank=self.ambient_rank)

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient_rank != other.ambient_rank:
            raise ConstructionError("ambient rank mismatch")
        return Cone.from_hrep(
            list(self.facet_normals) + list(other.facet_normals),
            list(self.span_equations) + list(other.span_equations),
            self.ambient_rank,
        )

    def generator_subset_in(self, normal: Vec) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.generators) if vdot(normal, g) == 0)

    def face_lattice(self) -> "Poset":
        """All faces, as generator-index subsets closed under intersection."""
        zero = (0,) * self.ambient_rank
        found: dict[tuple[int, ...], Vec] = {tuple(range(len(self.generators))): zero}
        for u in self.facet_normals:
            key = self.generator_subset_in(u)
            found.setdefault(key, u)
        changed = True
        while changed:
            changed = False
            keys = list(found)
            for a, b in combinations(keys, 2):
                inter = tuple(sorted(set(a) & set(b)))
                if inter not in found:
                    found[inter] = vadd(found[a], found[b])
                    changed = True
        faces = [Face(self, found[k], k) for k in sorted(found, key=lambda k: (len(k), k))]
        return Poset(faces, lambda f, g: set(f.indices) <= set(g.indices))

    def minimal_face(self) -> "Face":
        lattice = self.face_lattice()
        bottoms = lattice.minimal()
        assert len(bottoms) == 1
        return bottoms[0]

    def __eq__(self, other):
        if not isinstance(other, Cone) or self.ambient_rank != other.ambient_rank:
            return NotImplemented if not isinstance(other, Cone) else False
        return set(self.extreme_rays) == set(other.extreme_rays) and lattice_equal(
            self.lineality_basis, other.lineality_basis
        )

    def same_cone(self, other: "Cone") -> bool:
        """Equality as point sets."""
        return self == other

    def __hash__(self):
        return hash((self.ambient_rank, frozenset(self.extreme_rays), len(self.lineality_basis)))

    def __repr__(self):
        return f"Cone({[list(g) for g in self.generators]!r})"


class Face:
    """Face of a cone or affine monoid: supporting normal plus generator subset.

    Equality is subset equality within the same parent.
    """

    __slots__ = ("parent", "normal", "indices")

    def __init__(self, parent, normal: Vec, indices: Sequence[int]):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "normal", vec(normal))
        object.__setattr__(self, "indices", tuple(sorted(indices)))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Face is immutable")

    def generators(self) -> tuple[Vec, ...]:
        return tuple(self.parent.generators[i] for i in self.indices)

    def contains_point(self, x: Sequence[int]) -> bool:
        v = vec(x)
        return vdot(self.normal, v) == 0 and _parent_contains(self.parent, v)

    def __eq__(self, other):
        return isinstance(other, Face) and self.parent is other.parent and self.indices == other.indices

    def __hash__(self):
        return hash((id(self.parent), self.indices))

    def __repr__(self):
        return f"Face(indices={self.indices})"


def _parent_contains(parent, v: Vec) -> bool:
    if isinstance(parent, Cone):
        return parent.contains(v)
    return parent.cone.contains(v)


class Poset:
    """Finite poset with a materialized order relation."""

    def __init__(self, elements: Sequence, leq: Callable):
        self._elements = list(elements)
        n = len(self._elements)
        self._leq = [[bool(leq(self._elements[i], self._elements[j])) for j in range(n)] for i in range(n)]
        self._index = {}
        for i, e in enumerate(self._elements):
            if e in self._index:
                raise ConstructionError("duplicate poset element")
            self._index[e] = i

    def elements(self) -> list:
        return list(self._elements)

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, e):
        return e in self._index

    def leq(self, a, b) -> bool:
        return self._leq[self._index[a]][self._index[b]]

    def covers(self) -> list[tuple]:
        """Covering relations (a, b): a < b with nothing strictly between."""
        out = []
        n = len(self._elements)
        for i in range(n):
            for j in range(n):
                if i == j or not self._leq[i][j]:
                    continue
                if self._leq[j][i]:
                    continue
                if any(
                    k not in (i, j)
                    and self._leq[i][k]
                    and self._leq[k][j]
                    and not self._leq[k][i]
                    and not self._leq[j][k]
                    for k in range(n)
                ):
                    continue
                out.append((self._elements[i], self._elements[j]))
        return out

    def minimal(self) -> list:
        return [
            e
            for i, e in enumerate(self._elements)
            if not any(self._leq[j][i] and not self._leq[i][j] for j in range(len(self._elements)))
        ]

    def maximal(self) -> list:
        return [
            e
            for i, e in enumerate(self._elements)
            if not any(self._leq[i][j] and not self._leq[j][i] for j in range(len(self._elements)))
        ]

    def reversed(self) -> "Poset":
        elems = list(self._elements)
        return Poset(elems, lambda a, b: self.leq(b, a))


# ---------------------------------------------------------------------------
# Hilbert bases


def hilbert_basis(cone: Cone) -> list[Vec]:
    """Minimal generating set of the monoid of lattice points of a pointed cone."""
    if not cone.is_pointed():
        raise NotPointedError("hilbert basis requires pointed cone")
    rays = cone.extreme_rays
    if not rays:
        return []
    d = cone.ambient_rank
    lo = [sum(min(0, r[j]) for r in rays) for j in range(d)]
    hi = [sum(max(0, r[j]) for r in rays) for j in range(d)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
        if size > _HILBERT_BOX_LIMIT:
            raise EnumerationBoundError("hilbert basis enumeration box too large; increase enumeration bound")
    candidates = []
    for point in _cartesian(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not is_zero_vec(point) and cone.contains(point):
            candidates.append(point)
    basis = []
    for x in candidates:
        decomposable = False
        for y in candidates:
            if y == x:
                continue
            z = vsub(x, y)
            if not is_zero_vec(z) and cone.contains(z):
                decomposable = True
                break
        if not decomposable:
            basis.append(x)
    return sorted(basis)


def monoid_generators_of_cone(cone: Cone) -> tuple[list[Vec], list[Vec]]:
    """Generators of the saturated monoid C cap Z^d.

    Returns (pointed_generators, unit_basis): the monoid is generated by
    the pointed generators together with +-(unit basis).
    """
    if cone.is_pointed():
        return hilbert_basis(cone), []
    lin = list(cone.lineality_basis)
    d = cone.ambient_rank
    h = GroupHom.from_columns(free_group(len(lin)), free_group(d), lin)
    quotient, proj = cokernel(h)
    assert not quotient.torsion  # lineality basis spans a saturated sublattice
    images = [proj(g) for g in cone.generators if not is_zero_vec(proj(g))]
    image_cone = Cone(images, ambient_rank=quotient.dim) if images else Cone([], ambient_rank=quotient.dim)
    lifted = []
    for hb in hilbert_basis(image_cone):
        x = solve_integer(proj.matrix, hb)
        assert x is not None
        lifted.append(x)
    return lifted, lin


# ---------------------------------------------------------------------------
# affine monoids


class AffineMonoid:
    """Finitely generated submonoid of Z^d, with optional inverted generators.

    Membership is exact: a vector belongs to the monoid iff it is a
    non-negative integer combination of the generators, where inverted
    generators may occur with any sign.
    """

    __slots__ = ("ambient_rank", "generators", "inverted", "_saturated", "cone", "unit_basis", "_faces", "_diff_basis", "_membership_cache")

    def __init__(
        self,
        generators: Sequence[Sequence[int]],
        ambient_rank: Optional[int] = None,
        inverted: Iterable[int] = (),
        saturated: Optional[bool] = None,
    ):
        gens = tuple(vec(g) for g in generators)
        if ambient_rank is None:
            if not gens:
                raise ConstructionError("ambient rank required for an empty monoid")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise ConstructionError("generator length mismatch")
        inv = frozenset(int(i) for i in inverted)
        if any(i < 0 or i >= len(gens) for i in inv):
            raise ConstructionError("inverted index out of range")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "inverted", inv)
        object.__setattr__(self, "_saturated", saturated)
        cone_gens = list(gens) + [vneg(gens[i]) for i in sorted(inv)]
        object.__setattr__(self, "cone", Cone(cone_gens, ambient_rank=ambient_rank))
        object.__setattr__(self, "unit_basis", tuple(self._compute_unit_basis()))
        object.__setattr__(self, "_faces", None)
        object.__setattr__(self, "_diff_basis", tuple(lattice_basis(list(gens), ambient_rank)))
        object.__setattr__(self, "_membership_cache", {})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("AffineMonoid is immutable")

    def _compute_unit_basis(self) -> list[Vec]:
        # Iterate: a generator is invertible once its image in the quotient by
        # the units found so far has finite order, or has free part inside the
        # lineality of the cone spanned by all image free parts (a finitely
        # generated monoid positively spanning a linear space is a group).
        units: list[Vec] = [self.generators[i] for i in sorted(self.inverted)]
        basis = lattice_basis(units, self.ambient_rank)
        while True:
            if basis:
                h = GroupHom.from_columns(free_group(len(basis)), free_group(self.ambient_rank), basis)
                quotient, proj = cokernel(h)
            else:
                quotient = free_group(self.ambient_rank)
                proj = GroupHom.identity(quotient)
            fr = quotient.free_rank
            images = [proj(g) for g in self.generators]
            free_parts = [img[:fr] for img in images]
            live = [f for f in free_parts if not is_zero_vec(f)]
            if live:
                lin = Cone(live, ambient_rank=fr).lineality_basis
            else:
                lin = []
            new = [
                self.generators[i]
                for i, img in enumerate(images)
                if not is_zero_vec(img)
                and (is_zero_vec(free_parts[i]) or lattice_contains_rational(lin, free_parts[i]))
            ]
            basis2 = lattice_basis(units + new, self.ambient_rank)
            if lattice_equal(basis, basis2):
                return basis2
            units = units + new
            basis = basis2

    def is_pointed(self) -> bool:
        return not self.unit_basis

    def is_saturated(self) -> bool:
        if self._saturated is not None:
            return self._saturated
        sat = self._check_saturated()
        object.__setattr__(self, "_saturated", sat)
        return sat

    def _check_saturated(self) -> bool:
        # saturated means: every lattice point of cone(M) inside the group of
        # differences already lies in M
        diff = list(self._diff_basis)
        if not diff:
            return True
        b = IntMatrix.from_columns(diff)
        # saturation generators, expressed in difference-lattice coordinates
        pulled_ineqs = [_pullback_functional(u, diff) for u in self.cone.facet_normals]
        pulled_eqs = [_pullback_functional(s, diff) for s in self.cone.span_equations]
        sat_cone = Cone.from_hrep(pulled_ineqs, pulled_eqs, len(diff))
        gens, units = monoid_generators_of_cone(sat_cone)
        for y in gens + units + [vneg(u) for u in units]:
            x = b.apply(y)
            if not self._contains_generated(x):
                return False
        return True

    def contains(self, x: Sequence[int]) -> bool:
        v = vec(x)
        if len(v) != self.ambient_rank:
            raise ConstructionError("vector length mismatch")
        if not self.cone.contains(v):
            return False
        if not lattice_contains(list(self._diff_basis), v):
            return False
        if self._saturated is True:
            return True
        return self._contains_generated(v)

    def _contains_generated(self, v: Vec) -> bool:
        cached = self._membership_cache.get(v)
        if cached is not None:
            return cached
        result = self._decompose(v)
        self._membership_cache[v] = result
        return result

    def _decompose(self, v: Vec) -> bool:
        units = list(self.unit_basis)
        if units:
            h = GroupHom.from_columns(free_group(len(units)), free_group(self.ambient_rank), units)
            quotient, proj = cokernel(h)
        else:
            quotient = free_group(self.ambient_rank)
            proj = GroupHom.identity(quotient)
        target = proj(v)
        gens = []
        for g in self.generators:
            img = proj(g)
            if not is_zero_vec(img):
                gens.append(img)
        if is_zero_vec(target):
            return True
        free_rank = quotient.free_rank
        free_parts = [g[:free_rank] for g in gens]
        live = [f for f in free_parts if not is_zero_vec(f)]
        if live:
            fc = Cone(live, ambient_rank=free_rank)
            if not fc.is_pointed():
                raise EnumerationBoundError(
                    "monoid membership requires a pointed monoid modulo its units"
                )
            u0 = tuple(sum(col) for col in zip(*fc.facet_normals)) if fc.facet_normals else (0,) * free_rank
        else:
            u0 = (0,) * free_rank
        torsion = quotient.torsion

        def level(w: Vec) -> int:
            return vdot(u0, w[:free_rank]) if free_rank else 0

        order = sorted(range(len(gens)), key=lambda i: -level(gens[i]))
        gens_sorted = [gens[i] for i in order]
        memo: set[tuple[Vec, int]] = set()

        def rec(t: Vec, i: int) -> bool:
            if quotient.is_zero(t):
                return True
            if i >= len(gens_sorted):
                return False
            key = (t, i)
            if key in memo:
                return False
            g = gens_sorted[i]
            lg = level(g)
            lt = level(t)
            if lg > 0:
                cmax = lt // lg
            else:
                cmax = 1
                for dorder in torsion:
                    cmax = max(cmax, dorder)
                cmax -= 1
                if free_rank and lt < 0:
                    memo.add(key)
                    return False
            current = t
            for c in range(cmax + 1):
                if rec(current, i + 1):
                    return True
                current = quotient.sub(current, g)
                if free_rank and level(current) < 0:
                    break
            memo.add(key)
            return False

        if free_rank and level(target) < 0:
            return False
        return rec(target, 0)

    def faces(self) -> Poset:
        """Faces of the monoid, ordered by inclusion (de-duplicated)."""
        if self._faces is not None:
            return self._faces
        seen: dict[tuple[int, ...], Vec] = {}
        for f in self.cone.face_lattice():
            indices = tuple(i for i, g in enumerate(self.generators) if vdot(f.normal, g) == 0)
            seen.setdefault(indices, f.normal)
        faces = [Face(self, seen[k], k) for k in sorted(seen, key=lambda k: (len(k), k))]
        poset = Poset(faces, lambda a, b: set(a.indices) <= set(b.indices))
        object.__setattr__(self, "_faces", poset)
        return poset

    def face_submonoid(self, face: Face) -> "AffineMonoid":
        gens = [self.generators[i] for i in face.indices]
        inv = [k for k, i in enumerate(face.indices) if i in self.inverted]
        return AffineMonoid(gens, ambient_rank=self.ambient_rank, inverted=inv, saturated=None)

    def localize(self, face: Face) -> "AffineMonoid":
        """The monoid M - tau with the face generators marked invertible."""
        inv = set(self.inverted) | set(face.indices)
        return AffineMonoid(self.generators, ambient_rank=self.ambient_rank, inverted=inv, saturated=self._saturated)

    def difference_lattice_basis(self) -> list[Vec]:
        return list(self._diff_basis)

    def __repr__(self):
        inv = f", inverted={sorted(self.inverted)}" if self.inverted else ""
        return f"AffineMonoid({[list(g) for g in self.generators]!r}{inv})"


def lattice_contains_rational(basis: Sequence[Vec], x: Vec) -> bool:
    """Whether x lies in the rational span of the basis vectors."""
    if is_zero_vec(x):
        return True
    if not basis:
        return False
    rows = list(basis)
    m = IntMatrix.from_rows(rows, cols=len(x))
    return rank(m) == rank(IntMatrix.from_rows(rows + [x], cols=len(x)))


def _pullback_functional(u: Vec, basis_cols: Sequence[Vec]) -> Vec:
    """The functional y -> <u, B y> for the matrix B with the given columns."""
    return tuple(vdot(u, col) for col in basis_cols)


def saturated_monoid_from_cone(cone: Cone) -> AffineMonoid:
    gens, units = monoid_generators_of_cone(cone)
    all_gens = gens + units
    inverted = range(len(gens), len(all_gens))
    return AffineMonoid(all_gens, ambient_rank=cone.ambient_rank, inverted=inverted, saturated=True)


# ---------------------------------------------------------------------------
# fans


class Fan:
    """Fan given by primitive rays and maximal cones as ray-index sets."""

    __slots__ = ("lattice_rank", "rays", "max_cones", "_cone_cache")

    def __init__(self, lattice_rank: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]):
        rys = tuple(vec(r) for r in rays)
        if any(len(r) != lattice_rank for r in rys):
            raise ConstructionError("ray length mismatch")
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in max_cones)
        object.__setattr__(self, "lattice_rank", lattice_rank)
        object.__setattr__(self, "rays", rys)
        object.__setattr__(self, "max_cones", cones)
        object.__setattr__(self, "_cone_cache", {})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Fan is immutable")

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    def cone_of(self, indices: Sequence[int]) -> Cone:
        key = tuple(sorted(indices))
        cached = self._cone_cache.get(key)
        if cached is None:
            cached = Cone([self.rays[i] for i in key], ambient_rank=self.lattice_rank)
            self._cone_cache[key] = cached
        return cached

    def all_cone_index_sets(self) -> list[tuple[int, ...]]:
        """Every cone of the fan (all faces of maximal cones) as ray-index sets."""
        out: set[tuple[int, ...]] = set()
        for c in self.max_cones:
            cone = self.cone_of(c)
            for face in cone.face_lattice():
                out.add(tuple(sorted(c[i] for i in face.indices)))
        return sorted(out, key=lambda s: (len(s), s))

    def validate(self) -> list[str]:
        """Violation messages; an empty list means the fan is valid."""
        violations: list[str] = []
        for i, r in enumerate(self.rays):
            if is_zero_vec(r):
                violations.append(f"ray {i} is zero")
            elif primitive_oriented(r) != r:
                violations.append(f"ray {i} not primitive")
        for i, j in combinations(range(len(self.rays)), 2):
            if self.rays[i] == self.rays[j]:
                violations.append(f"rays {i} and {j} coincide")
        for ci, c in enumerate(self.max_cones):
            if any(i < 0 or i >= len(self.rays) for i in c):
                violations.append(f"cone {ci} references a missing ray")
                continue
            cone = self.cone_of(c)
            if not cone.is_pointed():
                violations.append(f"cone {ci} not pointed")
                continue
            extremes = {primitive(r) for r in cone.extreme_rays}
            for i in c:
                if primitive(self.rays[i]) not in extremes:
                    violations.append(f"ray {i} not extreme in cone {ci}")
        covered = {i for c in self.max_cones for i in c}
        for i in range(len(self.rays)):
            if i not in covered:
                violations.append(f"ray {i} not in any maximal cone")
        if violations:
            return violations
        for a, b in combinations(range(len(self.max_cones)), 2):
            ca, cb = self.cone_of(self.max_cones[a]), self.cone_of(self.max_cones[b])
            inter = ca.intersect(cb)
            common = tuple(sorted(set(self.max_cones[a]) & set(self.max_cones[b])))
            spanned = self.cone_of(common) if common else Cone([], ambient_rank=self.lattice_rank)
            if not inter.same_cone(spanned):
                violations.append(f"cones {a} and {b} intersect outside their common rays")
                continue
            for ci, cone, idx in ((a, ca, self.max_cones[a]), (b, cb, self.max_cones[b])):
                local = tuple(sorted(k for k, i in enumerate(idx) if i in common))
                if not any(f.indices == local for f in cone.face_lattice()):
                    violations.append(f"intersection of cones {a} and {b} is not a face of cone {ci}")
        return violations

    def is_valid(self) -> bool:
        return not self.validate()

    def rays_span(self) -> bool:
        if not self.rays:
            return self.lattice_rank == 0
        return rank(IntMatrix.from_rows(list(self.rays), cols=self.lattice_rank)) == self.lattice_rank

    def is_complete_support(self) -> bool:
        """Whether cone(rays) is all of Q^n (support bounds every section polytope)."""
        return Cone(list(self.rays), ambient_rank=self.lattice_rank).dual().is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.lattice_rank == other.lattice_rank
            and self.rays == other.rays
            and sorted(self.max_cones) == sorted(other.max_cones)
        )

    def __hash__(self):
        return hash((self.lattice_rank, self.rays, tuple(sorted(self.max_cones))))

    def __repr__(self):
        return f"Fan(rank={self.lattice_rank}, rays={[list(r) for r in self.rays]}, max_cones={[list(c) for c in self.max_cones]})"


def fans_equal_up_to_ray_permutation(f: Fan, g: Fan) -> bool:
    """Ray sets and maximal-cone sets equal up to a permutation of rays."""
    if f.lattice_rank != g.lattice_rank or f.num_rays != g.num_rays:
        return False
    try:
        perm = {i: g.rays.index(r) for i, r in enumerate(f.rays)}
    except ValueError:
        return False
    if len(set(perm.values())) != f.num_rays:
        return False
    fc = {tuple(sorted(perm[i] for i in c)) for c in f.max_cones}
    return fc == set(g.max_cones)
