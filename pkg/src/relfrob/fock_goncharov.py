"""Framed representations of punctured surfaces into a finite group.

A surface of finite type has genus k and m >= 1 punctures.  Its fundamental
group is free on a_1, b_1, ..., a_k, b_k, tau_1, ..., tau_{m-1}, with tau_m
determined by [a_1,b_1]...[a_k,b_k] tau_1...tau_m = 1.  An X-framing attaches
to each tau_j a point of X fixed by its image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from ._enumerate import check_work, commutator_counts, word_distribution
from .chartable import CharacterTable, character_table, multiplicities
from .errors import InternalInconsistency
from .frobenius import RelativeInstance, relative_count_chars
from .groups import FiniteGroup, GSet
from .gelfand import is_multiplicity_free

__all__ = [
    "SurfaceType",
    "framed_count",
    "framed_count_brute",
    "groupoid_volume",
    "topology_invariance_check",
    "surfaces_with_euler_char",
]


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    punctures: int
    euler_char: int = field(init=False)

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 1:
            raise ValueError("need genus >= 0 and at least one puncture")
        object.__setattr__(self, "euler_char", 2 - 2 * self.genus - self.punctures)

    @property
    def k(self) -> int:
        return self.genus

    @property
    def m(self) -> int:
        return self.punctures

    def __str__(self):
        return f"S(genus={self.genus}, punctures={self.punctures})"


def surfaces_with_euler_char(chi: int) -> list[SurfaceType]:
    """All (k, m) with 2 - 2k - m = chi, m >= 1, in increasing genus."""
    out = []
    k = 0
    while 2 - 2 * k - 1 >= chi:
        out.append(SurfaceType(k, 2 - 2 * k - chi))
        k += 1
    return out


def framed_count(S: SurfaceType, G: FiniteGroup, X: GSet, T: CharacterTable | None = None) -> int:
    """Number of X-framed representations, by characters."""
    T = T or character_table(G)
    mult = multiplicities(T, X)
    chi = S.euler_char
    val = Fraction(G.order) ** (1 - chi) * sum(
        (Fraction(x) ** S.m * Fraction(d) ** chi for x, d in zip(mult, T.dims) if x),
        Fraction(0),
    )
    if val.denominator != 1 or val < 0:
        raise InternalInconsistency(f"framed count {val} is not a nonnegative integer")
    count = int(val)
    # the same number read off the relative count at g = e
    rel = relative_count_chars(RelativeInstance(G, X, 0, S.k, S.m), T)
    if rel != count:
        raise InternalInconsistency("framed count disagrees with the relative count at g = e")
    return count


def framed_count_brute(S: SurfaceType, G: FiniteGroup, X: GSet, work_bound=None, threads: int = 1) -> int:
    """Enumerate homomorphisms from the free group on 2k + m - 1 generators,
    solving the surface relation for tau_m, weighted by prod_j #X^{rho(tau_j)}."""
    check_work(G.order ** (2 * S.k + S.m - 1), config.work_bound(work_bound))
    fix = X.fixed_point_counts
    # running product P = [a_1,b_1]...[a_k,b_k] tau_1...tau_{m-1}; tau_m = P^-1
    dist = word_distribution(G, [commutator_counts(G)] * S.k + [fix] * (S.m - 1), threads=threads)
    tau_last = fix[G.inverse]
    return int(sum(int(a) * int(b) for a, b in zip(dist, tau_last) if a))


def groupoid_volume(S: SurfaceType, G: FiniteGroup, X: GSet, T: CharacterTable | None = None) -> Fraction:
    """Sum over isomorphism classes of 1/#Aut, i.e. framed count / |G|."""
    return Fraction(framed_count(S, G, X, T), G.order)


def topology_invariance_check(G: FiniteGroup, X: GSet, chi: int, T: CharacterTable | None = None) -> dict:
    """Compare groupoid volumes over all surfaces with Euler characteristic ``chi``."""
    if chi > -1:
        raise ValueError("need chi <= -1 for two distinct surfaces")
    T = T or character_table(G)
    surfaces = surfaces_with_euler_char(chi)
    volumes = [(S, groupoid_volume(S, G, X, T)) for S in surfaces]
    all_equal = len({v for _, v in volumes}) == 1
    mf, mult = is_multiplicity_free(G, X, T)
    return {
        "chi": chi,
        "volumes": [{"genus": S.k, "punctures": S.m, "volume": v} for S, v in volumes],
        "all_equal": all_equal,
        "multiplicity_free": mf,
        "multiplicities": list(mult),
        "consistent": all_equal == mf,
    }
