"""Classical and relative Frobenius counting formulas, with enumeration oracles.

For a finite group G acting on a finite set X, an element g and integers
k >= 0, m >= 1, the relative count is the number of tuples

    (p_1..p_m in X, h_1..h_m, a_1..a_k, b_1..b_k in G)
    with h_i fixing p_i and h_1...h_m [a_1,b_1]...[a_k,b_k] = g,

which the character side evaluates as

    |G|^(m+2k-1) * sum_pi mult(pi, X)^m chi_pi(g) / dim(pi)^(m+2k-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config
from ._enumerate import check_work, commutator_counts, literal_product_counts, word_distribution
from .chartable import CharacterTable, ClassFunction, character_table, multiplicities
from .errors import InternalInconsistency
from .groups import FiniteGroup, GSet, direct_product, point_gset, regular_gset, two_sided_gset
from .numerics import Cyclotomic

__all__ = [
    "RelativeInstance",
    "SphericalCharacter",
    "classic_commutator_count",
    "classic_commutator_count_brute",
    "hom_count_closed_surface",
    "relative_count_chars",
    "relative_count_brute",
    "relative_count_tuples",
    "relative_counts_brute_all",
    "spherical_character",
    "spherical_from_class_function",
    "main_sph_check",
    "main_sph_table",
    "sp_char_lemma_check",
]


def _as_count(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise InternalInconsistency(f"{what} = {value} is not a nonnegative integer")
    return int(value)


def _char_sum(T: CharacterTable, g: int, weights, exponent: int) -> Fraction:
    """sum_pi weights[pi] * chi_pi(g) / dim(pi)^exponent, which must be rational."""
    c = int(T.group.conjugacy.class_of[g])
    acc = Cyclotomic.rational(0)
    for i, w in enumerate(weights):
        if w:
            acc = acc + T.values[i][c] * (Fraction(w) / Fraction(T.dims[i]) ** exponent)
    if not acc.is_rational():
        raise InternalInconsistency("character sum is not rational")
    return acc.to_rational()


@dataclass(frozen=True)
class RelativeInstance:
    group: FiniteGroup
    gset: GSet
    g: int = 0
    k: int = 0
    m: int = 1

    def __post_init__(self):
        if self.k < 0 or self.m < 1:
            raise ValueError("need k >= 0 and m >= 1")
        if self.gset.group is not self.group:
            raise ValueError("G-set belongs to a different group")
        if not 0 <= self.g < self.group.order:
            raise ValueError("element index out of range")


# -- classical Frobenius ----------------------------------------------------


def classic_commutator_count(G: FiniteGroup, g: int, k: int, T: CharacterTable | None = None) -> int:
    """#{(x_1, y_1, ..., x_k, y_k) : [x_1, y_1]...[x_k, y_k] = g} by characters."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    T = T or character_table(G)
    val = Fraction(G.order) ** (2 * k - 1) * _char_sum(T, g, [1] * T.num_irreps, 2 * k - 1)
    return _as_count(val, "commutator count")


def classic_commutator_count_brute(G: FiniteGroup, g: int, k: int, work_bound=None, threads=1) -> int:
    check_work(G.order ** (2 * k), config.work_bound(work_bound))
    dist = word_distribution(G, [commutator_counts(G)] * k, threads=threads)
    return int(dist[g])


def hom_count_closed_surface(G: FiniteGroup, k: int, T: CharacterTable | None = None) -> int:
    """|Hom(pi_1(closed genus-k surface), G)|."""
    if k == 0:
        return 1
    return classic_commutator_count(G, 0, k, T)


# -- relative Frobenius -----------------------------------------------------


def relative_count_chars(inst: RelativeInstance, T: CharacterTable | None = None) -> int:
    G, X, k, m = inst.group, inst.gset, inst.k, inst.m
    T = T or character_table(G)
    mult = multiplicities(T, X)
    e = m + 2 * k - 1
    val = Fraction(G.order) ** e * _char_sum(T, inst.g, [x**m for x in mult], e)
    return _as_count(val, "relative count")


def _third_form_distribution(G, X, k, m, threads=1):
    # running product of h_2..h_m [a_1,b_1]..[a_k,b_k], weighted by prod #X^{h_i}
    fix = X.fixed_point_counts
    return word_distribution(G, [fix] * (m - 1) + [commutator_counts(G)] * k, threads=threads)


def relative_counts_brute_all(G: FiniteGroup, X: GSet, k: int, m: int, elements=None,
                              work_bound=None, threads: int = 1) -> dict[int, int]:
    """Enumeration value of the relative count for each element in ``elements``.

    Uses sum over (h_2..h_m, a, b) of #X^{g^-1 h_2...h_m [a_1,b_1]...} prod_{i>=2} #X^{h_i}.
    """
    check_work(G.order ** (m + 2 * k - 1), config.work_bound(work_bound))
    dist = _third_form_distribution(G, X, k, m, threads)
    fix = X.fixed_point_counts
    elements = range(G.order) if elements is None else elements
    out = {}
    for g in elements:
        shifted = fix[G.table[G.inverse[g]]]  # z -> #X^{g^-1 z}
        out[int(g)] = int(sum(int(a) * int(b) for a, b in zip(dist, shifted) if a and b))
    return out


def relative_count_tuples(inst: RelativeInstance) -> int:
    """Literal count over stabilizer pairs (p_i, h_i) and commutator pairs (a_j, b_j)."""
    G, X = inst.group, inst.gset
    stab_pairs = np.nonzero(X.action == np.arange(X.size))[0]  # h repeated once per fixed point
    comm = G.commutator_table.ravel()
    counts = literal_product_counts(G, [stab_pairs] * inst.m + [comm] * inst.k)
    return int(counts[inst.g])


def relative_count_brute(inst: RelativeInstance, work_bound=None, threads: int = 1,
                         tuple_bound: int = config.DEFAULT_TUPLE_BOUND) -> int:
    """Character-free evaluation of the relative count.

    When |G|^(m+2k) |X|^m <= ``tuple_bound`` the literal stabilizer-tuple count
    is run as well and the two must agree.
    """
    G, X, k, m = inst.group, inst.gset, inst.k, inst.m
    value = relative_counts_brute_all(G, X, k, m, [inst.g], work_bound, threads)[inst.g]
    if G.order ** (m + 2 * k) * X.size**m <= tuple_bound:
        literal = relative_count_tuples(inst)
        if literal != value:
            raise InternalInconsistency(
                f"fixed-point form gives {value} but tuple enumeration gives {literal}")
    return value


# -- spherical characters ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class SphericalCharacter:
    irrep: int | None
    values: tuple  # values[x][y]

    def __getitem__(self, xy):
        x, y = xy
        return self.values[x][y]

    def trace(self) -> Cyclotomic:
        acc = Cyclotomic.rational(0)
        for x in range(len(self.values)):
            acc = acc + self.values[x][x]
        return acc


def spherical_from_class_function(f: ClassFunction, X: GSet, points=None) -> SphericalCharacter:
    """(x, y) -> (1/|G|) sum_{h : h x = y} f(h), for x in ``points`` (default all)."""
    G = X.group
    cd = G.conjugacy
    r = cd.num_classes
    points = range(X.size) if points is None else points
    rows = []
    for x in range(X.size):
        if x not in points:
            rows.append(None)
            continue
        cnt = np.zeros((X.size, r), dtype=np.int64)
        np.add.at(cnt, (X.action[:, x], cd.class_of), 1)
        row = []
        for y in range(X.size):
            acc = Cyclotomic.rational(0)
            for c in np.nonzero(cnt[y])[0]:
                acc = acc + f.values[c] * int(cnt[y, c])
            row.append(acc / G.order)
        rows.append(tuple(row))
    return SphericalCharacter(None, tuple(rows))


def spherical_character(T: CharacterTable, i: int, X: GSet) -> SphericalCharacter:
    sph = spherical_from_class_function(T.character(i), X)
    return SphericalCharacter(i, sph.values)


def _full_product_distribution(G, X, k, m, threads=1):
    # weighted count of tuples by their product h_1...h_m [a_1,b_1]...[a_k,b_k]
    fix = X.fixed_point_counts
    return word_distribution(G, [fix] * m + [commutator_counts(G)] * k, threads=threads)


def main_sph_table(G: FiniteGroup, X: GSet, k: int, m: int, T: CharacterTable | None = None,
                   work_bound=None, threads: int = 1) -> list[dict]:
    """Both sides of the spherical-character form of the relative count for all point pairs."""
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    check_work(G.order ** (m + 2 * k - 1), config.work_bound(work_bound))
    T = T or character_table(G)
    mult = multiplicities(T, X)
    e = m + 2 * k - 1
    sph = [spherical_character(T, i, X) if mult[i] else None for i in range(T.num_irreps)]
    dist = _full_product_distribution(G, X, k, m, threads)
    norm = Fraction(G.order) ** (m + 2 * k)
    out = []
    for x1 in range(X.size):
        hits = X.action[:, x1]
        for x2 in range(X.size):
            lhs = Cyclotomic.rational(0)
            for i, s in enumerate(sph):
                if s is not None:
                    lhs = lhs + s[x1, x2] * (Fraction(mult[i]) ** m / Fraction(T.dims[i]) ** e)
            tuples = sum(int(v) for v in dist[hits == x2])
            rhs = Fraction(tuples) / norm
            lhs_val = lhs.to_rational() if lhs.is_rational() else lhs
            equal = lhs == rhs
            ratio = (lhs_val / rhs) if (rhs and lhs.is_rational()) else None
            out.append({"x1": x1, "x2": x2, "lhs": lhs_val, "rhs": rhs, "tuples": tuples,
                        "equal": equal, "ratio": ratio})
    return out


def main_sph_check(inst: RelativeInstance, x1: int, x2: int, T: CharacterTable | None = None,
                   work_bound=None):
    """(lhs, rhs, equal) of the spherical form at the point pair (x1, x2)."""
    rows = main_sph_table(inst.group, inst.gset, inst.k, inst.m, T, work_bound)
    row = rows[x1 * inst.gset.size + x2]
    return row["lhs"], row["rhs"], row["equal"]


def sp_char_lemma_check(G: FiniteGroup, T: CharacterTable | None = None) -> list[bool]:
    """For each irrep pi: spherical character of pi (x) pi* for G x G acting on G,
    evaluated at (1, g), equals chi_pi(g) / (|G| dim pi) for every g."""
    T = T or character_table(G)
    GG = direct_product(G, G)
    GG, X = two_sided_gset(G, GG)
    cdG = G.conjugacy
    cdGG = GG.conjugacy
    n = G.order
    results = []
    for i in range(T.num_irreps):
        chi = T.values[i]
        vals = []
        for rep in cdGG.reps:
            h1, h2 = divmod(rep, n)
            vals.append(chi[cdG.class_of[h1]] * chi[cdG.class_of[h2]].conj())
        sph = spherical_from_class_function(ClassFunction(GG, tuple(vals)), X, points={0})
        ok = all(
            sph[0, g] == chi[cdG.class_of[g]] / (n * T.dims[i]) for g in range(n)
        )
        results.append(ok)
    return results


def classical_reductions(G: FiniteGroup, g: int, k: int, T: CharacterTable | None = None) -> dict:
    """Relative counts with m = 1 that collapse to closed-form or classical values.

    One-point X leaves h_1 free, so the count is |G|^(2k).  The regular
    G-set forces h_1 = e with |G| choices of p_1, giving |G| times the
    classical commutator count.
    """
    T = T or character_table(G)
    classic = classic_commutator_count(G, g, k, T)
    point = relative_count_chars(RelativeInstance(G, point_gset(G), g, k, 1), T)
    regular = relative_count_chars(RelativeInstance(G, regular_gset(G), g, k, 1), T)
    return {"classic": classic, "one_point": point, "regular": regular,
            "ok": point == G.order ** (2 * k) and regular == G.order * classic}
