from fractions import Fraction

import numpy as np
import pytest

from relfrob.battery import BATTERY, battery_gsets, builtin_group, element_from_cycles
from relfrob.chartable import (
    ClassFunction,
    character_table,
    class_structure_constants,
    convolve,
    multiplicities,
    multiplicity,
    permutation_character,
)
from relfrob.groups import regular_gset
from relfrob.numerics import Cyclotomic


def _row(T, i):
    return [v.to_rational() for v in T.values[i]]


def test_c2():
    T = character_table(builtin_group("C2")[0])
    assert [_row(T, i) for i in range(2)] == [[1, 1], [1, -1]]


def test_s3(s3):
    G, X, T = s3
    assert T.dims == (1, 1, 2)
    cd = G.conjugacy
    three_cycle = cd.class_of[element_from_cycles(G, "(1 2 3)")]
    transposition = cd.class_of[element_from_cycles(G, "(1 2)")]
    std = T.values[2]
    assert (std[0], std[three_cycle], std[transposition]) == (2, -1, 0)


def test_a4_needs_cube_roots():
    T = character_table(builtin_group("A4")[0])
    assert sorted(T.dims) == [1, 1, 1, 3]
    assert T.conductor % 3 == 0
    assert not all(v.is_rational() for row in T.values for v in row)
    T.check()


@pytest.mark.parametrize("name", BATTERY)
def test_orthogonality(name):
    G, _ = builtin_group(name)
    T = character_table(G)
    assert T.check()
    assert sum(d * d for d in T.dims) == G.order
    assert len(T) == len(G.conjugacy.reps)
    # orthogonality recomputed here, independent of check()
    sizes = G.conjugacy.sizes
    for i in range(len(T)):
        for j in range(len(T)):
            s = sum((T.values[i][c] * T.values[j][c].conj() * sizes[c] for c in range(len(sizes))),
                    Cyclotomic.rational(0))
            assert s == (G.order if i == j else 0)


def test_gl3_f2_dims():
    T = character_table(builtin_group("GL3(F2)")[0])
    assert sorted(T.dims) == [1, 3, 3, 6, 7, 8]


@pytest.mark.parametrize("name", ["C4", "S3", "D4", "Q8", "A4", "S4", "GL2(F2)"])
def test_structure_constants_by_definition(name):
    G, _ = builtin_group(name)
    cd = G.conjugacy
    a = class_structure_constants(G)
    n = len(cd.reps)
    direct = np.zeros((n, n, n), dtype=np.int64)
    for x in range(G.order):
        for y in range(G.order):
            z = G.mul(x, y)
            if z in cd.reps:
                direct[cd.class_of[x], cd.class_of[y], cd.reps.index(z)] += 1
    assert np.array_equal(a, direct)


def test_permutation_characters(s3):
    G, X, T = s3
    cd = G.conjugacy
    reg = permutation_character(regular_gset(G))
    assert [v.to_rational() for v in reg.values] == [6, 0, 0]
    nat = permutation_character(X)
    t3 = cd.class_of[element_from_cycles(G, "(1 2 3)")]
    t2 = cd.class_of[element_from_cycles(G, "(1 2)")]
    assert (nat.values[0], nat.values[t3], nat.values[t2]) == (3, 0, 1)
    GL, flags = builtin_group("GL2(F3)")
    chi = permutation_character(flags)
    vals = [v.to_rational() for v in chi.values]
    assert set(vals) <= set(range(5)) and vals[0] == 4
    assert sum(v * s for v, s in zip(vals, GL.conjugacy.sizes)) == GL.order  # one orbit


def test_multiplicity_examples(s3):
    G, X, T = s3
    assert multiplicities(T, X) == (1, 0, 1)
    assert multiplicities(T, regular_gset(G)) == T.dims
    for name in ("S4", "D4", "GL2(F3)"):
        H, _ = builtin_group(name)
        TH = character_table(H)
        for _, Y in battery_gsets(name):
            assert multiplicity(TH, 0, Y) == len(Y.orbits())


def _convolve_direct(G, f, g):
    fv = [f.at(x) for x in range(G.order)]
    gv = [g.at(x) for x in range(G.order)]
    return [sum((fv[y] * gv[G.mul(G.inv(y), x)] for y in range(G.order)), Cyclotomic.rational(0))
            for x in range(G.order)]


def test_c2_regular_convolution():
    G, _ = builtin_group("C2")
    chi = permutation_character(regular_gset(G))
    direct = _convolve_direct(G, chi, chi)
    conv = convolve(chi, chi)
    assert [v.to_rational() for v in conv.values] == [4, 0]
    assert [conv.at(x) for x in range(2)] == direct


@pytest.mark.parametrize("name", ["S3", "Q8", "A4"])
def test_convolution_matches_direct_sum(name):
    G, X = builtin_group(name)
    T = character_table(G)
    f = T.character(len(T) - 1)
    g = permutation_character(X) if X is not None else T.character(0)
    conv = convolve(f, g, T)
    assert [conv.at(x) for x in range(G.order)] == _convolve_direct(G, f, g)


@pytest.mark.parametrize("name", [n for n in BATTERY if builtin_group(n)[0].order <= 48])
def test_irreducible_self_convolution(name):
    G, _ = builtin_group(name)
    T = character_table(G)
    for i in range(len(T)):
        for j in range(len(T)):
            expect = T.character(i).scale(Fraction(G.order, T.dims[i])) if i == j \
                else ClassFunction(G, (Cyclotomic.rational(0),) * len(T))
            assert convolve(T.character(i), T.character(j), T) == expect


@pytest.mark.parametrize("name", BATTERY)
def test_permutation_character_decomposition(name):
    G, _ = builtin_group(name)
    T = character_table(G)
    for _, X in battery_gsets(name):
        mult = multiplicities(T, X)
        assert all(isinstance(x, int) and x >= 0 for x in mult)
        for c, rep in enumerate(G.conjugacy.reps):
            s = sum((T.values[i][c] * mult[i] for i in range(len(T))), Cyclotomic.rational(0))
            assert s == int(X.fixed_point_counts[rep])
