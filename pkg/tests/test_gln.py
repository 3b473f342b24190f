import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relfrob.battery import builtin_group
from relfrob.chartable import character_table
from relfrob.errors import NonPolynomial
from relfrob.fock_goncharov import SurfaceType, framed_count, groupoid_volume
from relfrob.gln import (
    FiniteField,
    Partition,
    build_gl_flag,
    fg_epoly,
    fg_vol_closed,
    gl_order,
    hook_lengths,
    partitions,
    specht_dim,
    unipotent_dim,
    unipotent_multiplicity_check,
)
from relfrob.numerics import LaurentPoly

DISK, ANNULUS, TORUS1 = SurfaceType(0, 1), SurfaceType(0, 2), SurfaceType(1, 1)
t = LaurentPoly.monomial(1, var="t")
q = LaurentPoly.monomial(1)


def _partition_count(n):
    # p(n) by the standard coin-counting recurrence
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for s in range(part, n + 1):
            ways[s] += ways[s - part]
    return ways[n]


def test_partitions():
    assert [p.parts for p in partitions(2)] == [(2,), (1, 1)]
    assert [p.parts for p in partitions(3)] == [(3,), (2, 1), (1, 1, 1)]
    assert all(len(partitions(n)) == _partition_count(n) for n in range(1, 13))
    assert len(partitions(6)) == 11


def test_hooks_and_specht():
    assert sorted(hook_lengths(Partition((2,)))) == [1, 2]
    assert sorted(hook_lengths(Partition((2, 1)))) == [1, 1, 3]
    assert sorted(hook_lengths(Partition((1, 1, 1)))) == [1, 2, 3]
    assert specht_dim(Partition((2, 1))) == 2
    assert all(specht_dim(Partition((n,))) == 1 for n in range(1, 8))


@pytest.mark.parametrize("n", range(1, 11))
def test_hook_identity_and_sum_of_squares(n):
    for lam in partitions(n):
        assert sum(hook_lengths(lam)) == lam.n_statistic() + lam.conjugate().n_statistic() + n
    assert sum(specht_dim(lam) ** 2 for lam in partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_q_to_one(n):
    for lam in partitions(n):
        d = unipotent_dim(lam)
        assert d(1) == specht_dim(lam)
        assert all(c >= 0 and c.denominator == 1 for c in d.terms.values())
        assert d.is_polynomial()


def test_unipotent_examples():
    assert unipotent_dim(Partition((2,))) == LaurentPoly.constant(1)
    assert unipotent_dim(Partition((1, 1))) == q
    assert unipotent_dim(Partition((1, 1))) (2) == 2
    assert unipotent_dim(Partition((1, 1, 1))) == q**3
    assert unipotent_dim(Partition((1, 1, 1)))(2) == 8


def _count_invertible(n, q):
    F = FiniteField(q)
    count = 0
    for entries in itertools.product(range(q), repeat=n * n):
        rows = [entries[i * n:(i + 1) * n] for i in range(n)]
        if len(F.rref(rows)) == n:
            count += 1
    return count


@pytest.mark.parametrize("n,q,order,flags", [(2, 2, 6, 3), (2, 3, 48, 4), (3, 2, 168, 21), (2, 4, 180, 5)])
def test_build_gl_flag(n, q, order, flags):
    G, X = build_gl_flag(n, q)
    assert G.order == order == gl_order(n, q)
    assert X.size == flags
    assert len(X.orbits()) == 1
    if q ** (n * n) <= 10**5:
        assert _count_invertible(n, q) == order


def test_vol_examples():
    assert fg_vol_closed(2, DISK, q=2) == Fraction(1, 2)
    assert fg_vol_closed(2, TORUS1) == (q**2 - 1) ** 2
    assert fg_vol_closed(2, TORUS1, q=2) == 9
    assert fg_vol_closed(2, TORUS1, "paper", q=2) == Fraction(9, 2)
    with pytest.raises(NonPolynomial):
        fg_vol_closed(2, DISK)


def test_epoly_examples():
    e = fg_epoly(2, TORUS1)
    assert e == (t**2 - 1) ** 3 * (t**2 - t)
    assert e(2) == 54
    a = fg_epoly(2, ANNULUS)
    assert a == 2 * (t**2 - 1) * (t**2 - t)
    assert a(2) == 12


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_groups_match_closed_form(n, q):
    G, X = builtin_group(f"GL{n}(F{q})")
    T = character_table(G)
    for S in (DISK, ANNULUS, TORUS1, SurfaceType(0, 3)):
        assert groupoid_volume(S, G, X, T) == fg_vol_closed(n, S, q=q)
        if S.euler_char <= 0:
            assert fg_epoly(n, S)(q) == framed_count(S, G, X, T)
            assert fg_vol_closed(n, S)(q) == fg_vol_closed(n, S, q=q)
        ratio = fg_vol_closed(n, S, q=q) / fg_vol_closed(n, S, "paper", q=q)
        assert ratio == Fraction(q) ** (-S.euler_char * n * (n - 1) // 2)


@pytest.mark.parametrize("n,q,expect", [
    (2, 2, [(1, 1), (2, 1)]),
    (2, 3, [(1, 1), (3, 1)]),
    (3, 2, [(1, 1), (6, 2), (8, 1)]),
])
def test_flag_decomposition(n, q, expect):
    rep = unipotent_multiplicity_check(n, q)
    assert rep["ok"]
    assert [(o["dim"], o["multiplicity"]) for o in rep["observed"]] == expect
    assert rep["dimension_total"] == rep["flags"]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2), st.integers(1, 3))
def test_symbolic_volume_evaluates_consistently(qv, k, m):
    S = SurfaceType(k, m)
    if S.euler_char > 0:
        return
    for n in (2, 3):
        assert fg_vol_closed(n, S)(qv) == fg_vol_closed(n, S, q=qv)
