"""Exact integer linear algebra over finitely generated abelian groups.

Everything here is arbitrary-precision: matrices are tuples of tuples of
Python ints, groups are kept in invariant-factor normal form, and all
operations (Smith normal form, kernels, cokernels, Diophantine solving)
are exact.  Values are immutable after construction and safe to share.
"""

from __future__ import annotations

from itertools import product as _cartesian
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import ConstructionError

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vec(values: Iterable[int]) -> Vec:
    return tuple(int(x) for x in values)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c: int, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def vdot(u: Vec, v: Vec) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def vec_gcd(u: Vec) -> int:
    g = 0
    for a in u:
        g = gcd(g, abs(a))
    return g


def primitive(u: Vec) -> Vec:
    """Divide by the gcd and normalize the sign of the first nonzero entry."""
    g = vec_gcd(u)
    if g == 0:
        return u
    w = tuple(a // g for a in u)
    for a in w:
        if a != 0:
            return w if a > 0 else vneg(w)
    return w


def primitive_oriented(u: Vec) -> Vec:
    """Divide by the gcd, keeping the original orientation."""
    g = vec_gcd(u)
    if g == 0:
        return u
    return tuple(a // g for a in u)


# ---------------------------------------------------------------------------
# matrices


class IntMatrix:
    """Immutable integer matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], rows: Optional[int] = None, cols: Optional[int] = None):
        ents = tuple(tuple(int(x) for x in row) for row in entries)
        if ents:
            r, c = len(ents), len(ents[0])
            if any(len(row) != c for row in ents):
                raise ConstructionError("ragged matrix rows")
        else:
            r, c = rows or 0, cols or 0
            if r:
                ents = tuple(tuple(0 for _ in range(c)) for _ in range(r))
        object.__setattr__(self, "rows", rows if rows is not None else r)
        object.__setattr__(self, "cols", cols if cols is not None else c)
        if self.rows != len(ents) and ents:
            raise ConstructionError("row count mismatch")
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], rows=n, cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows=rows, cols=cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Vec], cols: Optional[int] = None) -> "IntMatrix":
        if not rows:
            return cls([], rows=0, cols=cols or 0)
        return cls(rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Vec], dim: Optional[int] = None) -> "IntMatrix":
        if not columns:
            return cls.zero(dim or 0, 0)
        d = len(columns[0])
        if d == 0:
            return cls.zero(0, len(columns))
        return cls([[col[i] for col in columns] for i in range(d)])

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def column(self, j: int) -> Vec:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(list(self.entries), dim=self.cols) if self.rows else IntMatrix.zero(self.cols, 0)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ConstructionError("matrix dimension mismatch in product")
        cols = other.columns()
        return IntMatrix(
            [[vdot(self.entries[i], col) for col in cols] for i in range(self.rows)],
            rows=self.rows,
            cols=other.cols,
        )

    def apply(self, v: Sequence[int]) -> Vec:
        """Matrix times column vector."""
        x = vec(v)
        if len(x) != self.cols:
            raise ConstructionError("vector length mismatch")
        return tuple(vdot(row, x) for row in self.entries)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ConstructionError("row count mismatch in hstack")
        return IntMatrix(
            [self.entries[i] + other.entries[i] for i in range(self.rows)],
            rows=self.rows,
            cols=self.cols + other.cols,
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ConstructionError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]!r})"


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_core(a: IntMatrix, want_inverses: bool):
    m, n = a.rows, a.cols
    d = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    uinv = [row[:] for row in u] if want_inverses else None
    vinv = [row[:] for row in v] if want_inverses else None

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        if uinv is not None:
            for r in uinv:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        if vinv is not None:
            vinv[i], vinv[j] = vinv[j], vinv[i]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        if uinv is not None:
            for r in uinv:
                r[i] = -r[i]

    def row_addmul(dst, src, q):
        # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]
        if uinv is not None:
            for r in uinv:
                r[src] -= q * r[dst]

    def col_addmul(dst, src, q):
        # col dst += q * col src
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]
        if vinv is not None:
            vinv[src] = [x - q * y for x, y in zip(vinv[src], vinv[dst])]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value, ties at lowest (row, col)
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if d[t][t] < 0:
            negate_row(t)
        p = d[t][t]
        dirty = False
        for i in range(t + 1, m):
            if d[i][t] != 0:
                q = d[i][t] // p
                if q:
                    row_addmul(i, t, -q)
                if d[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if d[t][j] != 0:
                q = d[t][j] // p
                if q:
                    col_addmul(j, t, -q)
                if d[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot row/col clear; enforce divisibility of the remaining block
        offender = None
        for i in range(t + 1, m):
            if any(x % p for x in d[i][t + 1 :]):
                offender = i
                break
        if offender is not None:
            row_addmul(t, offender, 1)
            continue
        t += 1

    U = IntMatrix(u, rows=m, cols=m)
    D = IntMatrix(d, rows=m, cols=n)
    V = IntMatrix(v, rows=n, cols=n)
    if want_inverses:
        return U, D, V, IntMatrix(uinv, rows=m, cols=m), IntMatrix(vinv, rows=n, cols=n)
    return U, D, V


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular U, V and diagonal D with U*A*V = D and d1 | d2 | ...

    The pivot is always the entry of smallest nonzero absolute value in the
    active block (ties broken at the lowest row, then column), which keeps
    coefficient growth in check and makes the output deterministic.
    """
    return _snf_core(a, want_inverses=False)


def smith_normal_form_with_inverses(a: IntMatrix):
    """As smith_normal_form, additionally returning U^-1 and V^-1."""
    return _snf_core(a, want_inverses=True)


def diagonal_entries(d: IntMatrix) -> list[int]:
    return [d.entries[i][i] for i in range(min(d.rows, d.cols))]


def rank(a: IntMatrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    _, d, _ = smith_normal_form(a)
    return sum(1 for x in diagonal_entries(d) if x != 0)


def kernel_lattice(a: IntMatrix) -> list[Vec]:
    """Basis of the saturated lattice {x in Z^cols : A x = 0}."""
    if a.cols == 0:
        return []
    if a.rows == 0:
        return [tuple(1 if i == j else 0 for j in range(a.cols)) for i in range(a.cols)]
    _, d, v = smith_normal_form(a)
    diag = diagonal_entries(d)
    basis = []
    for j in range(a.cols):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            basis.append(v.column(j))
    return basis


def image_lattice_basis(a: IntMatrix) -> list[Vec]:
    """Basis of the lattice in Z^rows generated by the columns of A."""
    if a.rows == 0 or a.cols == 0:
        return []
    _, d, _, uinv, _ = smith_normal_form_with_inverses(a)
    diag = diagonal_entries(d)
    return [vscale(diag[i], uinv.column(i)) for i in range(len(diag)) if diag[i] != 0]


def lattice_basis(vectors: Sequence[Vec], dim: int) -> list[Vec]:
    """Basis of the lattice generated by the given vectors in Z^dim."""
    cols = [v for v in vectors if not is_zero_vec(v)]
    if not cols:
        return []
    return image_lattice_basis(IntMatrix.from_columns(cols))


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[Vec]:
    """Some integer solution x of A x = b, or None if there is none."""
    target = vec(b)
    if len(target) != a.rows:
        raise ConstructionError("target length mismatch")
    if a.cols == 0:
        return () if is_zero_vec(target) else None
    u, d, v = smith_normal_form(a)
    c = u.apply(target)
    diag = diagonal_entries(d)
    w = [0] * a.cols
    for i in range(a.rows):
        di = diag[i] if i < len(diag) else 0
        if di != 0:
            if c[i] % di:
                return None
            w[i] = c[i] // di
        elif c[i] != 0:
            return None
    return v.apply(w)


def lattice_contains(basis: Sequence[Vec], x: Vec) -> bool:
    """Whether x lies in the lattice spanned by the given basis vectors."""
    if is_zero_vec(x):
        return True
    if not basis:
        return False
    return solve_integer(IntMatrix.from_columns(list(basis)), x) is not None


def lattice_equal(basis1: Sequence[Vec], basis2: Sequence[Vec]) -> bool:
    return all(lattice_contains(basis2, v) for v in basis1) and all(
        lattice_contains(basis1, v) for v in basis2
    )


def lattice_intersection(basis1: Sequence[Vec], basis2: Sequence[Vec], dim: int) -> list[Vec]:
    """Basis of the intersection of two lattices in Z^dim."""
    if not basis1 or not basis2:
        return []
    cols = [v for v in basis1] + [vneg(v) for v in basis2]
    ker = kernel_lattice(IntMatrix.from_columns(cols))
    k1 = len(basis1)
    b1 = IntMatrix.from_columns(list(basis1))
    vectors = [b1.apply(k[:k1]) for k in ker]
    return lattice_basis(vectors, dim)


def reduce_mod_lattice(x: Vec, basis: Sequence[Vec]) -> Vec:
    """Canonical representative of the coset x + L for the given lattice L.

    Computed against a column Hermite form of L, so equal cosets reduce to
    equal representatives.
    """
    if not basis:
        return x
    dim = len(x)
    cols = [list(v) for v in basis]
    pivots = []  # (row, column index into cols)
    used = set()
    for r in range(dim):
        live = [ci for ci in range(len(cols)) if ci not in used and cols[ci][r] != 0]
        if not live:
            continue
        # gcd-reduce the live columns at row r down to a single pivot column
        while len(live) > 1:
            live.sort(key=lambda ci: abs(cols[ci][r]))
            small, nxt = live[0], live[1]
            q = cols[nxt][r] // cols[small][r]
            cols[nxt] = [a - q * b for a, b in zip(cols[nxt], cols[small])]
            if cols[nxt][r] == 0:
                live.pop(1)
        ci = live[0]
        if cols[ci][r] < 0:
            cols[ci] = [-a for a in cols[ci]]
        pivots.append((r, ci))
        used.add(ci)
    out = list(x)
    for r, ci in pivots:
        p = cols[ci][r]
        q = out[r] // p
        if q:
            out = [a - q * b for a, b in zip(out, cols[ci])]
    return tuple(out)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


class FgAbelianGroup:
    """Finitely generated abelian group in invariant-factor normal form.

    Elements are integer vectors of length free_rank + len(torsion); the
    free coordinates come first, torsion coordinate i is reduced modulo
    torsion[i].  The torsion orders form a divisibility chain, so two
    groups are isomorphic iff they are structurally equal.
    """

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank: int, torsion: Sequence[int] = ()):
        tors = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise ConstructionError("negative free rank")
        for d in tors:
            if d < 2:
                raise ConstructionError("torsion orders must be >= 2")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ConstructionError("torsion orders must form a divisibility chain")
        object.__setattr__(self, "free_rank", free_rank)
        object.__setattr__(self, "torsion", tors)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("FgAbelianGroup is immutable")

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion)

    def canonical(self, v: Sequence[int]) -> Vec:
        x = vec(v)
        if len(x) != self.dim:
            raise ConstructionError(f"element length {len(x)} != group dimension {self.dim}")
        free = x[: self.free_rank]
        tors = tuple(a % d for a, d in zip(x[self.free_rank :], self.torsion))
        return free + tors

    def zero(self) -> Vec:
        return (0,) * self.dim

    def is_zero(self, v: Sequence[int]) -> bool:
        return self.canonical(v) == self.zero()

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        return self.canonical(vadd(vec(u), vec(v)))

    def sub(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        return self.canonical(vsub(vec(u), vec(v)))

    def neg(self, u: Sequence[int]) -> Vec:
        return self.canonical(vneg(vec(u)))

    def scale(self, c: int, u: Sequence[int]) -> Vec:
        return self.canonical(vscale(c, vec(u)))

    def is_trivial(self) -> bool:
        return self.dim == 0

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def iter_elements(self):
        """All elements of a finite group, in lexicographic order."""
        if self.free_rank:
            raise ConstructionError("cannot enumerate an infinite group")
        for combo in _cartesian(*(range(d) for d in self.torsion)):
            yield combo

    def relation_columns(self) -> list[Vec]:
        """Columns presenting the group as Z^dim modulo these relations."""
        cols = []
        for j, d in enumerate(self.torsion):
            col = [0] * self.dim
            col[self.free_rank + j] = d
            cols.append(tuple(col))
        return cols

    def __eq__(self, other):
        return (
            isinstance(other, FgAbelianGroup)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def free_group(n: int) -> FgAbelianGroup:
    return FgAbelianGroup(n)


TRIVIAL_GROUP = FgAbelianGroup(0)


class GroupHom:
    """Homomorphism between f.g. abelian groups, given on canonical coordinates.

    The matrix acts on column vectors.  Well-definedness on torsion
    (matrix columns must kill the source relations inside the target)
    is checked at construction.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ConstructionError(
                f"matrix shape {matrix.rows}x{matrix.cols} does not match "
                f"target dim {target.dim} x source dim {source.dim}"
            )
        for j, d in enumerate(source.torsion):
            col = matrix.column(source.free_rank + j)
            if not target.is_zero(vscale(d, col)):
                raise ConstructionError("matrix does not respect source torsion orders")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("GroupHom is immutable")

    def __call__(self, v: Sequence[int]) -> Vec:
        x = self.source.canonical(v)
        return self.target.canonical(self.matrix.apply(x))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self after inner."""
        if inner.target != self.source:
            raise ConstructionError("composition mismatch")
        return GroupHom(inner.source, self.target, self.matrix.mul(inner.matrix))

    @classmethod
    def from_columns(cls, source: FgAbelianGroup, target: FgAbelianGroup, columns: Sequence[Vec]) -> "GroupHom":
        if len(columns) != source.dim:
            raise ConstructionError("column count mismatch")
        return cls(source, target, IntMatrix.from_columns(list(columns), dim=target.dim))

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.dim))

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"GroupHom({self.source!r} -> {self.target!r})"


def _presentation_matrix(h: GroupHom) -> IntMatrix:
    """[h.matrix | target relations], the presentation of target/im(h)."""
    rel = h.target.relation_columns()
    base = h.matrix
    if rel:
        base = base.hstack(IntMatrix.from_columns(rel, dim=h.target.dim))
    return base


def _normalize_free_row(row: Vec) -> Vec:
    for x in row:
        if x != 0:
            return row if x > 0 else vneg(row)
    return row


def cokernel(h: GroupHom) -> tuple[FgAbelianGroup, GroupHom]:
    """target/im(h) in invariant-factor form, with its projection map."""
    n = h.target.dim
    if n == 0:
        q = TRIVIAL_GROUP
        return q, GroupHom(h.target, q, IntMatrix.zero(0, 0))
    b = _presentation_matrix(h)
    u, d, _ = smith_normal_form(b)
    diag = diagonal_entries(d)
    free_rows = [i for i in range(n) if (diag[i] if i < len(diag) else 0) == 0]
    torsion_rows = [i for i in range(len(diag)) if diag[i] >= 2]
    q = FgAbelianGroup(len(free_rows), tuple(diag[i] for i in torsion_rows))
    rows = [_normalize_free_row(u.row(i)) for i in free_rows] + [u.row(i) for i in torsion_rows]
    proj_matrix = IntMatrix.from_rows(rows, cols=n) if rows else IntMatrix.zero(0, n)
    return q, GroupHom(h.target, q, proj_matrix)


def kernel(h: GroupHom) -> list[Vec]:
    """Generators of ker(h) in source coordinates (a basis for free sources)."""
    s = h.source.dim
    if s == 0:
        return []
    b = _presentation_matrix(h)
    ker = kernel_lattice(b)
    projected = [k[:s] for k in ker]
    if not h.source.torsion:
        return lattice_basis(projected, s)
    seen = []
    for g in projected:
        c = h.source.canonical(g)
        if not is_zero_vec(c) and c not in seen:
            seen.append(c)
    # torsion source generators of finite order may be missed by the lattice
    # picture only through their canonical reductions, which are included
    return seen


def subgroup_generates(elements: Sequence[Vec], group: FgAbelianGroup) -> tuple[bool, Optional[int]]:
    """Whether the elements generate the group, and the index of the subgroup.

    The index is None when infinite.  For the full group the index is 1.
    """
    h = GroupHom.from_columns(free_group(len(elements)), group, [group.canonical(e) for e in elements])
    q, _ = cokernel(h)
    if q.is_trivial():
        return True, 1
    return False, q.order()


def solve(h: GroupHom, target_element: Sequence[int]) -> Optional[Vec]:
    """Some x with h(x) = target_element, or None when no solution exists."""
    v = h.target.canonical(target_element)
    b = _presentation_matrix(h)
    z = solve_integer(b, v)
    if z is None:
        return None
    x = h.source.canonical(z[: h.source.dim])
    if h(x) != v:  # pragma: no cover - guards against internal errors
        raise ConstructionError("solve produced a non-solution")
    return x


def subgroup_contains(generators: Sequence[Vec], group: FgAbelianGroup, x: Sequence[int]) -> bool:
    """Whether x lies in the subgroup of `group` generated by the elements."""
    h = GroupHom.from_columns(free_group(len(generators)), group, [group.canonical(g) for g in generators])
    return solve(h, x) is not None


def subgroups_equal(gens1: Sequence[Vec], gens2: Sequence[Vec], group: FgAbelianGroup) -> bool:
    return all(subgroup_contains(gens2, group, g) for g in gens1) and all(
        subgroup_contains(gens1, group, g) for g in gens2
    )
