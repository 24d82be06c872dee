"""Independent brute-force oracles.

Nothing here may call into the code paths it checks: determinants are
Laplace expansions, invariant factors come from gcds of minors, cone
membership is a Caratheodory subset search over exact rationals, and the
face enumeration tests the defining property pointwise on sampled monoid
elements.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def laplace_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    sign = 1
    for j in range(n):
        if rows[0][j] != 0:
            minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
            total += sign * rows[0][j] * laplace_det(minor)
        sign = -sign
    return total


def gcd_of_minors(rows, k):
    """gcd of all k x k minors; 0 when every minor vanishes."""
    m, n = len(rows), len(rows[0]) if rows else 0
    g = 0
    for rsel in combinations(range(m), k):
        for csel in combinations(range(n), k):
            minor = [[rows[i][j] for j in csel] for i in rsel]
            g = gcd(g, abs(laplace_det(minor)))
            if g == 1:
                return 1
    return g


def invariant_factors_by_minors(rows):
    """Invariant factors d_1 | d_2 | ... of an integer matrix, via d_k = g_k/g_{k-1}."""
    if not rows or not rows[0]:
        return []
    m, n = len(rows), len(rows[0])
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = gcd_of_minors(rows, k)
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def cokernel_structure_by_minors(rows):
    """(free_rank, torsion_orders) of Z^m / column-span, from minors only."""
    if not rows:
        return 0, ()
    m = len(rows)
    factors = invariant_factors_by_minors(rows)
    free_rank = m - len(factors)
    torsion = tuple(d for d in factors if d >= 2)
    return free_rank, torsion


def solve_rational(rows, rhs):
    """One exact solution of an (overdetermined) linear system, or None."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = a[i][n]
    return sol


def cone_contains(generators, x):
    """x in cone(generators), by Caratheodory subset search over rationals."""
    d = len(x)
    if all(v == 0 for v in x):
        return True
    gens = [g for g in generators if any(v != 0 for v in g)]
    for size in range(1, min(d, len(gens)) + 1):
        for subset in combinations(gens, size):
            cols = [[subset[j][i] for j in range(size)] for i in range(d)]
            sol = solve_rational(cols, list(x))
            if sol is not None and all(c >= 0 for c in sol):
                return True
    return False


def sample_monoid_points(generators, coeff_range):
    points = set()
    for coeffs in product(coeff_range, repeat=len(generators)):
        point = tuple(sum(c * g[i] for c, g in zip(coeffs, generators)) for i in range(len(generators[0])))
        points.add(point)
    return sorted(points)


def brute_force_face_subsets(generators):
    """Index subsets cutting out faces, by the pointwise face property.

    A closed subset S is kept iff for all sampled x, y in the cone,
    x + y in cone(S) forces x and y into cone(S).
    """
    k = len(generators)
    if k == 0:
        return {()}
    reach = range(3) if k <= 4 else range(2)
    samples = sample_monoid_points(generators, reach)
    closures = {}
    for raw in product([0, 1], repeat=k):
        subset = tuple(i for i in range(k) if raw[i])
        sel = [generators[i] for i in subset]
        closure = tuple(i for i in range(k) if cone_contains(sel, generators[i]))
        closures.setdefault(closure, sel if closure == subset else [generators[i] for i in closure])
    faces = set()
    for closure, sel in closures.items():
        member = {x: cone_contains(sel, x) for x in samples}
        ok = True
        for x in samples:
            for y in samples:
                s = tuple(a + b for a, b in zip(x, y))
                inside = member.get(s)
                if inside is None:
                    inside = cone_contains(sel, s)
                    member[s] = inside
                if inside and not (member[x] and member[y]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            faces.add(closure)
    return faces


def parallelepiped_points_2d(r1, r2):
    """Integer points a*r1 + b*r2 with 0 <= a, b <= 1, for independent r1, r2."""
    lo = [min(0, r1[i]) + min(0, r2[i]) for i in range(2)]
    hi = [max(0, r1[i]) + max(0, r2[i]) for i in range(2)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        sol = solve_rational([[r1[0], r2[0]], [r1[1], r2[1]]], list(x))
        if sol is not None and all(0 <= c <= 1 for c in sol):
            out.append(x)
    return out
