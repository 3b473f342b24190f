import pytest

from relfrob.battery import BATTERY, battery_gsets, builtin_group, element_from_cycles
from relfrob.chartable import character_table
from relfrob.gelfand import (
    commutator_criterion,
    commutator_criterion_naive,
    f_equivalence_check,
    f_stat,
    gelfand_report,
    is_multiplicity_free,
)
from relfrob.groups import coset_gset, point_gset, regular_gset

PAIRS = [
    ("S3", ["(1 2)"], True),
    ("S3", [], False),
    ("S4", ["(1 2)", "(1 2 3)"], True),
    ("D4", ["(1 3)(2 4)"], True),
    ("Q8", ["(1 2)(3 4)(5 6)(7 8)"], True),
]


def _gens(G, cycles):
    return [element_from_cycles(G, c) for c in cycles]


def test_multiplicity_free_examples(s3):
    G, X, T = s3
    assert is_multiplicity_free(G, X, T) == (True, (1, 0, 1))
    mf, mult = is_multiplicity_free(G, regular_gset(G), T)
    assert not mf and max(mult) == 2
    for name in BATTERY:
        H, _ = builtin_group(name)
        assert is_multiplicity_free(H, point_gset(H))[0]


def test_commutator_criterion_examples(s3):
    G, _, _ = s3
    t = _gens(G, ["(1 2)"])
    assert commutator_criterion(G, t) == (54, 54, True)
    assert commutator_criterion_naive(G, coset_gset(G, t)) == (54, 54)
    assert commutator_criterion(G, []) == (108, 216, False)
    assert commutator_criterion_naive(G, coset_gset(G, [])) == (108, 216)


@pytest.mark.parametrize("name", ["D4", "Q8", "A4", "S4"])
def test_class_aggregation_matches_double_loop(name):
    G, _ = builtin_group(name)
    for _, X in battery_gsets(name):
        lhs, rhs, _ = commutator_criterion(G, None, X=X)
        assert (lhs, rhs) == commutator_criterion_naive(G, X)


def test_f_examples(s3):
    G, X, T = s3
    t = _gens(G, ["(1 2)"])
    assert f_stat(G, t, 1, 0) == 54
    assert f_stat(G, t, 0, 1) == 12
    assert f_stat(G, t, 0, 0) == 3
    assert f_stat(G, [], 0, 0) == 6


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "GL2(F2)"])
def test_f_routes_agree(name):
    G, _ = builtin_group(name)
    T = character_table(G)
    for _, X in battery_gsets(name):
        for k in range(3):
            for m in range(3):
                a = f_stat(G, None, k, m, route="enumerate", X=X)
                b = f_stat(G, None, k, m, route="chars", T=T, X=X)
                assert a == b


def test_f_equivalence_examples(s3):
    G, _, T = s3
    t = _gens(G, ["(1 2)"])
    assert f_equivalence_check(G, t, 1, 0, 1, T=T)[2]
    assert not f_equivalence_check(G, [], 1, 0, 1, T=T)[2]
    C6, _ = builtin_group("C6")
    for gens in ([], ["(1 4)(2 5)(3 6)"]):
        for k, m, l in ((1, 0, 1), (2, 1, 1), (2, 0, 2)):
            assert f_equivalence_check(C6, _gens(C6, gens), k, m, l)[2]


@pytest.mark.parametrize("name,cycles,expect", PAIRS)
def test_routes_agree(name, cycles, expect):
    G, _ = builtin_group(name)
    rep = gelfand_report(G, _gens(G, cycles))
    assert rep.agree
    assert rep.gelfand == expect
    assert (rep.commutator_lhs == rep.commutator_rhs) == expect
    assert all(s["equal"] == expect for s in rep.f_samples)


def test_conjugate_subgroup_invariance():
    G, _ = builtin_group("S4")
    H = _gens(G, ["(1 2)", "(3 4)"])
    for h in range(G.order):
        conj = [G.conjugate(x, h) for x in H]
        assert commutator_criterion(G, conj) == commutator_criterion(G, H)
