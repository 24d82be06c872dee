import random
from math import gcd

import pytest

from coxkernel import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    cokernel,
    free_group,
    kernel,
    smith_normal_form,
    solve,
    subgroup_generates,
)
from coxkernel.lattice import (
    lattice_basis,
    lattice_contains,
    lattice_equal,
    lattice_intersection,
    reduce_mod_lattice,
    solve_integer,
)

from oracles import invariant_factors_by_minors


def test_snf_identity():
    a = IntMatrix.identity(2)
    u, d, v = smith_normal_form(a)
    assert d == a and u == a and v == a


def test_snf_spec_example():
    a = IntMatrix([[2, 4], [6, 8]])
    u, d, v = smith_normal_form(a)
    assert [d.entries[i][i] for i in range(2)] == [2, 4]
    assert u.mul(a).mul(v) == d


def test_snf_ray_matrix_p2():
    a = IntMatrix([[1, 0], [0, 1], [-1, -1]])
    u, d, v = smith_normal_form(a)
    assert [d.entries[0][0], d.entries[1][1]] == [1, 1]
    assert all(d.entries[2][j] == 0 for j in range(2))


def test_snf_random_properties():
    rng = random.Random(20250810)
    for _ in range(1000):
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        a = IntMatrix([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
        u, d, v = smith_normal_form(a)
        assert u.mul(a).mul(v) == d
        assert abs(u.det()) == 1
        assert abs(v.det()) == 1
        diag = [d.entries[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d.entries[i][j] == 0
        nz = [x for x in diag if x != 0]
        assert all(x > 0 for x in nz)
        for x, y in zip(nz, nz[1:]):
            assert y % x == 0
        assert diag[len(nz):] == [0] * (len(diag) - len(nz))
        # diagonal equals the gcds of k x k minors
        expected = invariant_factors_by_minors([list(r) for r in a.entries])
        assert nz == [x for x in expected if x != 0] or expected == nz


def test_cokernel_spec_examples():
    h = GroupHom(free_group(2), free_group(2), IntMatrix([[1, 0], [1, 2]]))
    q, proj = cokernel(h)
    assert q == FgAbelianGroup(0, (2,))
    ident = GroupHom.identity(free_group(3))
    q2, _ = cokernel(ident)
    assert q2.is_trivial()
    h3 = GroupHom(free_group(2), free_group(3), IntMatrix([[1, 0], [0, 1], [-1, -2]]))
    q3, proj3 = cokernel(h3)
    assert q3 == free_group(1)
    assert [proj3(e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]] == [(1,), (2,), (1,)]


def test_cokernel_projection_properties():
    rng = random.Random(7)
    h = GroupHom(free_group(3), free_group(3), IntMatrix([[2, 0, 1], [0, 3, 1], [0, 0, 5]]))
    q, proj = cokernel(h)
    # projection kills the image
    for _ in range(100):
        x = tuple(rng.randint(-8, 8) for _ in range(3))
        assert q.is_zero(proj(h(x)))
    # surjectivity: every generator of the quotient has a preimage
    for i in range(q.dim):
        target = q.canonical(tuple(1 if j == i else 0 for j in range(q.dim)))
        assert solve(proj, target) is not None


def test_kernel_examples():
    assert kernel(GroupHom.identity(free_group(2))) == []
    k = kernel(GroupHom(free_group(2), free_group(1), IntMatrix([[1, 1]])))
    assert len(k) == 1 and k[0] in ((1, -1), (-1, 1))
    p2 = GroupHom(free_group(2), free_group(3), IntMatrix([[1, 0], [0, 1], [-1, -1]]))
    assert kernel(p2) == []


def test_kernel_torsion_target():
    # Z -> Z/2 has kernel 2Z
    h = GroupHom(free_group(1), FgAbelianGroup(0, (2,)), IntMatrix([[1]]))
    k = kernel(h)
    assert lattice_equal(k, [(2,)])


def test_canonical_idempotent():
    g = FgAbelianGroup(1, (2, 4))
    rng = random.Random(3)
    for _ in range(200):
        v = tuple(rng.randint(-10, 10) for _ in range(3))
        assert g.canonical(g.canonical(v)) == g.canonical(v)


def test_group_validation():
    with pytest.raises(Exception):
        FgAbelianGroup(0, (3, 2))  # not a divisibility chain
    with pytest.raises(Exception):
        FgAbelianGroup(0, (1,))
    FgAbelianGroup(2, (2, 4, 8))


def test_hom_torsion_welldefined():
    src = FgAbelianGroup(0, (2,))
    with pytest.raises(Exception):
        GroupHom(src, free_group(1), IntMatrix([[1]]))  # 2*1 != 0 in Z
    GroupHom(src, FgAbelianGroup(0, (2,)), IntMatrix([[1]]))


def test_subgroup_generates():
    assert subgroup_generates([(1,)], free_group(1)) == (True, 1)
    assert subgroup_generates([(2,)], free_group(1)) == (False, 2)
    assert subgroup_generates([(1,), (1,)], free_group(1)) == (True, 1)
    full, idx = subgroup_generates([(2, 0)], free_group(2))
    assert not full and idx is None  # infinite index as a distinguished value
    g = FgAbelianGroup(0, (2,))
    assert subgroup_generates([(1,)], g) == (True, 1)
    assert subgroup_generates([], g) == (False, 2)


def test_solve():
    ident = GroupHom.identity(free_group(2))
    assert solve(ident, (3, -4)) == (3, -4)
    double = GroupHom(free_group(1), free_group(1), IntMatrix([[2]]))
    assert solve(double, (3,)) is None
    assert solve(double, (4,)) == (2,)
    p2 = GroupHom(free_group(2), free_group(3), IntMatrix([[1, 0], [0, 1], [-1, -1]]))
    x = solve(p2, (1, 1, -2))
    assert x == (1, 1)
    rng = random.Random(11)
    h = GroupHom(free_group(2), FgAbelianGroup(1, (3,)), IntMatrix([[1, 2], [0, 3]]))
    for _ in range(50):
        target = h((rng.randint(-5, 5), rng.randint(-5, 5)))
        x = solve(h, target)
        assert x is not None and h(x) == target


def test_lattice_utilities():
    assert lattice_contains([(2, 0), (0, 1)], (4, -3))
    assert not lattice_contains([(2, 0), (0, 1)], (3, 0))
    inter = lattice_intersection([(2, 0), (0, 1)], [(1, 0)], 2)
    assert lattice_equal(inter, [(2, 0)])
    basis = lattice_basis([(2, 2), (4, 4), (2, -2)], 2)
    assert len(basis) == 2
    r = reduce_mod_lattice((7, 5), [(3, 0), (0, 1)])
    assert r == (1, 0)
    # coset representatives are canonical
    assert reduce_mod_lattice((4, 9), [(3, 0), (0, 1)]) == reduce_mod_lattice((1, 0), [(3, 0), (0, 1)])


def test_solve_integer_edges():
    assert solve_integer(IntMatrix.zero(2, 0), (0, 0)) == ()
    assert solve_integer(IntMatrix.zero(2, 0), (1, 0)) is None
