import numpy as np
import pytest

from relfrob._enumerate import check_work, commutator_counts, literal_product_counts, word_distribution
from relfrob.battery import builtin_group
from relfrob.errors import WorkBoundExceeded
from relfrob.frobenius import classic_commutator_count


@pytest.mark.parametrize("name", ["S4", "GL2(F3)"])
def test_threads_do_not_change_results(name):
    G, X = builtin_group(name)
    letters = [X.fixed_point_counts, commutator_counts(G), X.fixed_point_counts]
    one = word_distribution(G, letters, threads=1)
    many = word_distribution(G, letters, threads=4)
    assert [int(v) for v in one] == [int(v) for v in many]


def test_matches_literal_enumeration():
    G, X = builtin_group("S3")
    stab = np.nonzero(X.action == np.arange(X.size))[0]
    comm = G.commutator_table.ravel()
    dist = word_distribution(G, [X.fixed_point_counts, commutator_counts(G)])
    lit = literal_product_counts(G, [stab, comm])
    assert [int(v) for v in dist] == [int(v) for v in lit]


def test_large_counts_stay_exact():
    # |S4|^(2*12) overflows int64; totals must still be exact
    G, _ = builtin_group("S4")
    dist = word_distribution(G, [commutator_counts(G)] * 12)
    assert sum(int(v) for v in dist) == G.order ** 24
    assert int(dist[0]) == classic_commutator_count(G, 0, 12)


def test_check_work():
    check_work(10, 10)
    with pytest.raises(WorkBoundExceeded):
        check_work(11, 10)
