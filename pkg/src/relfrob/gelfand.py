"""Multiplicity-freeness and Gelfand pairs, decided along three independent routes.

With X = G/H and

    f(k, m) = sum over h_1..h_m, a_1..a_k, b_1..b_k in G of
              #X^{h_1...h_m [a_1,b_1]...[a_k,b_k]} * prod_i #X^{h_i},

the character side gives f(k, m) = |G|^(m+2k) sum_pi mult^(m+1) / dim^(m+2k-1).
Trading a handle for two punctures keeps the dimension exponent fixed, so
f(k - l, m + 2l) == f(k, m) for some (equivalently all) 0 < l <= k exactly
when every multiplicity is at most one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from ._enumerate import check_work, commutator_counts, word_distribution
from .chartable import CharacterTable, character_table, multiplicities
from .errors import InternalInconsistency
from .groups import FiniteGroup, GSet, coset_gset

__all__ = [
    "GelfandReport",
    "is_multiplicity_free",
    "commutator_criterion",
    "commutator_criterion_naive",
    "f_stat",
    "f_equivalence_check",
    "gelfand_report",
]


def is_multiplicity_free(G: FiniteGroup, X: GSet, T: CharacterTable | None = None):
    """Returns ``(verdict, multiplicity vector)``."""
    mult = multiplicities(T or character_table(G), X)
    return all(x <= 1 for x in mult), mult


def _sides_by_class(G: FiniteGroup, fix: np.ndarray) -> tuple[int, int]:
    # both summands are invariant under simultaneous conjugation of (g, h),
    # so g can be restricted to class representatives weighted by class size
    cd = G.conjugacy
    T = G.table
    C = G.commutator_table
    lhs = rhs = 0
    for g, size in zip(cd.reps, cd.sizes):
        lhs += size * int(fix[C[g]].sum())
        rhs += size * int(fix[g]) * int((fix * fix[T[g]]).sum())
    return lhs, rhs


def commutator_criterion_naive(G: FiniteGroup, X: GSet) -> tuple[int, int]:
    fix = X.fixed_point_counts
    lhs = rhs = 0
    for g in range(G.order):
        for h in range(G.order):
            lhs += int(fix[G.commutator(g, h)])
            rhs += int(fix[g]) * int(fix[h]) * int(fix[G.mul(g, h)])
    return lhs, rhs


def commutator_criterion(G: FiniteGroup, subgroup_generators, work_bound=None,
                         X: GSet | None = None) -> tuple[int, int, bool]:
    """``(sum #X^[g,h], sum #X^g #X^h #X^gh, equal)`` for X = G/H."""
    check_work(G.order**2, config.work_bound(work_bound))
    X = X if X is not None else coset_gset(G, subgroup_generators)
    lhs, rhs = _sides_by_class(G, X.fixed_point_counts)
    return lhs, rhs, lhs == rhs


def f_stat_enumerate(G: FiniteGroup, X: GSet, k: int, m: int, work_bound=None, threads: int = 1) -> int:
    check_work(G.order ** (m + 2 * k), config.work_bound(work_bound))
    fix = X.fixed_point_counts
    dist = word_distribution(G, [fix] * m + [commutator_counts(G)] * k, threads=threads)
    return int(sum(int(a) * int(b) for a, b in zip(dist, fix) if a))


def f_stat_chars(G: FiniteGroup, X: GSet, k: int, m: int, T: CharacterTable | None = None) -> int:
    T = T or character_table(G)
    mult = multiplicities(T, X)
    e = m + 2 * k - 1
    val = Fraction(G.order) ** (m + 2 * k) * sum(
        (Fraction(x) ** (m + 1) / Fraction(d) ** e for x, d in zip(mult, T.dims) if x),
        Fraction(0),
    )
    if val.denominator != 1:
        raise InternalInconsistency(f"f({k}, {m}) = {val} is not an integer")
    return int(val)


def f_stat(G: FiniteGroup, subgroup_generators, k: int, m: int, route: str = "auto",
           work_bound=None, T: CharacterTable | None = None, X: GSet | None = None) -> int:
    """f(k, m) for X = G/H.

    ``route`` is ``"enumerate"``, ``"chars"`` or ``"auto"``; the latter
    enumerates when feasible, compares with the character formula and
    falls back to the character formula otherwise.
    """
    if k < 0 or m < 0:
        raise ValueError("need k, m >= 0")
    X = X if X is not None else coset_gset(G, subgroup_generators)
    if route == "enumerate":
        return f_stat_enumerate(G, X, k, m, work_bound)
    chars = f_stat_chars(G, X, k, m, T)
    if route == "chars":
        return chars
    if G.order ** (m + 2 * k) <= config.work_bound(work_bound):
        direct = f_stat_enumerate(G, X, k, m, work_bound)
        if direct != chars:
            raise InternalInconsistency(f"f({k}, {m}): enumeration {direct} != characters {chars}")
    return chars


def f_equivalence_check(G: FiniteGroup, subgroup_generators, k: int, m: int, l: int,
                        route: str = "auto", work_bound=None, T=None, X=None):
    """``(f(k - l, m + 2l), f(k, m), equal)``."""
    if not 0 < l <= k:
        raise ValueError("need 0 < l <= k")
    X = X if X is not None else coset_gset(G, subgroup_generators)
    a = f_stat(G, None, k - l, m + 2 * l, route, work_bound, T, X)
    b = f_stat(G, None, k, m, route, work_bound, T, X)
    return a, b, a == b


@dataclass
class GelfandReport:
    multiplicities: tuple[int, ...]
    is_multiplicity_free: bool
    commutator_lhs: int
    commutator_rhs: int
    f_samples: list[dict] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) == 1

    @property
    def gelfand(self) -> bool:
        return self.is_multiplicity_free


def gelfand_report(G: FiniteGroup, subgroup_generators, max_k: int = 2, max_m: int = 2,
                   route: str = "auto", work_bound=None, T: CharacterTable | None = None) -> GelfandReport:
    """Run every route on (G, H); raises if the verdicts disagree."""
    T = T or character_table(G)
    X = coset_gset(G, subgroup_generators)
    mf, mult = is_multiplicity_free(G, X, T)
    lhs, rhs, comm_ok = commutator_criterion(G, subgroup_generators, work_bound, X=X)
    samples = []
    for k in range(1, max_k + 1):
        for m in range(0, max_m + 1):
            for l in range(1, k + 1):
                a, b, eq = f_equivalence_check(G, None, k, m, l, route, work_bound, T, X)
                samples.append({"k": k, "m": m, "l": l, "f_traded": a, "f": b, "equal": eq})
    f_verdicts = {s["equal"] for s in samples}
    verdicts = {"multiplicity": mf, "commutator": comm_ok}
    if len(f_verdicts) > 1:
        raise InternalInconsistency("f-equivalence samples disagree among themselves")
    if samples:
        verdicts["f_equivalence"] = samples[0]["equal"]
    report = GelfandReport(mult, mf, lhs, rhs, samples, verdicts)
    if not report.agree:
        raise InternalInconsistency(f"Gelfand routes disagree: {verdicts}")
    return report
