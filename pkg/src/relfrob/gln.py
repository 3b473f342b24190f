"""GL_n over small finite fields, its complete flags, and the closed-form volumes.

Two normalisations of the unipotent dimension polynomial are available:

``corrected``
    q^{n(lambda)} prod_{c=1}^{n} (q^c - 1) / prod_boxes (q^h - 1), with
    n(lambda) = sum_k (k-1) lambda_k.  This gives the trivial representation
    for lambda = (n) and the Steinberg representation for lambda = (1^n).
``paper``
    the same polynomial multiplied by q^{n(n-1)/2}, i.e. the group-order
    factor read as the full order of GL_n(F_q).

The volumes differ accordingly by the monomial q^{-chi n(n-1)/2}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chartable import CharacterTable, character_table, multiplicities
from .errors import InternalInconsistency, NonPolynomial, TooLarge, ZeroBase
from .fock_goncharov import SurfaceType
from .groups import DEFAULT_MAX_ORDER, FiniteGroup, GSet
from .numerics import LaurentPoly

CONVENTIONS = ("corrected", "paper")

__all__ = [
    "Partition",
    "FiniteField",
    "partitions",
    "hook_lengths",
    "specht_dim",
    "unipotent_dim",
    "gl_order",
    "gl_order_poly",
    "build_gl_flag",
    "fg_vol_closed",
    "fg_epoly",
    "unipotent_multiplicity_check",
]


def _convention(name: str) -> str:
    aliases = {"paper_literal": "paper", "literal": "paper"}
    name = aliases.get(name, name)
    if name not in CONVENTIONS:
        raise ValueError(f"unknown convention {name!r}; expected one of {CONVENTIONS}")
    return name


# -- partitions -------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def n_statistic(self) -> int:
        """sum_k (k - 1) lambda_k."""
        return sum(k * p for k, p in enumerate(self.parts))

    def boxes(self):
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield i, j

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int) -> list[Partition]:
    """Partitions of n in reverse lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")

    def gen(rem, cap):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(n, n)]


def hook_lengths(lam: Partition) -> list[int]:
    """Hook length of every box (i, j), j <= lambda_i, in row-major order."""
    conj = lam.conjugate().parts
    return [lam.parts[i - 1] - j + conj[j - 1] - i + 1 for i, j in lam.boxes()]


def specht_dim(lam: Partition) -> int:
    num = math.factorial(lam.n)
    den = math.prod(hook_lengths(lam))
    if num % den:
        raise InternalInconsistency(f"hook formula not integral for {lam}")
    return num // den


def _q_minus_one(h: int, var: str) -> LaurentPoly:
    return LaurentPoly({h: 1, 0: -1}, var)


def unipotent_dim(lam: Partition, convention: str = "corrected", var: str = "q") -> LaurentPoly:
    convention = _convention(convention)
    n = lam.n
    num = LaurentPoly.monomial(lam.n_statistic(), 1, var)
    for c in range(1, n + 1):
        num = num * _q_minus_one(c, var)
    den = LaurentPoly.constant(1, var)
    for h in hook_lengths(lam):
        den = den * _q_minus_one(h, var)
    try:
        out = num.divexact(den)
    except ArithmeticError:
        raise InternalInconsistency(f"q-hook formula not polynomial for {lam}") from None
    if convention == "paper":
        out = out * LaurentPoly.monomial(n * (n - 1) // 2, 1, var)
    return out


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**c for c in range(n))


def gl_order_poly(n: int, var: str = "t") -> LaurentPoly:
    out = LaurentPoly.constant(1, var)
    for c in range(n):
        out = out * LaurentPoly({n: 1, c: -1}, var)
    return out


# -- finite fields and flags ------------------------------------------------


class FiniteField:
    """F_q for q prime, or q = 4 as F_2[x]/(x^2 + x + 1) with elements 0..3 as bit vectors."""

    def __init__(self, q: int):
        self.q = q
        if q == 4:
            add = [[a ^ b for b in range(4)] for a in range(4)]

            def gf4_mul(a, b):
                # carry-less product, then reduce x^2 -> x + 1
                r = 0
                for i in range(2):
                    if b >> i & 1:
                        r ^= a << i
                if r & 4:
                    r ^= 0b111
                return r

            mul = [[gf4_mul(a, b) for b in range(4)] for a in range(4)]
        elif q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1)):
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            raise ValueError(f"F_{q} is not supported (primes and 4 only)")
        self.add = add
        self.mul = mul
        self.neg = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q)]

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def dot(self, u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = self.add[acc][self.mul[a][b]]
        return acc

    def rref(self, rows):
        rows = [list(r) for r in rows]
        out = []
        ncols = len(rows[0]) if rows else 0
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = self.inv[rows[r][c]]
            rows[r] = [self.mul[inv][x] for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [self.sub(x, self.mul[f][y]) for x, y in zip(rows[i], rows[r])]
            r += 1
        out = tuple(tuple(row) for row in rows[:r])
        return out


def build_gl_flag(n: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> tuple[FiniteGroup, GSet]:
    """GL_n(F_q) as a permutation group on nonzero vectors, with its action on complete flags.

    Group elements are the invertible matrices: identity first, then in
    row-major lexicographic order of entries.  Flags are ordered
    lexicographically by the reduced row-echelon bases of their subspaces.
    """
    order = gl_order(n, q)
    if order > max_order:
        raise TooLarge(f"|GL_{n}(F_{q})| = {order} exceeds {max_order}")
    F = FiniteField(q)
    vectors = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    vindex = {v: i for i, v in enumerate(vectors)}
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    mats = [ident]
    perms = [list(range(len(vectors)))]
    for entries in itertools.product(range(q), repeat=n * n):
        M = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if M == ident or len(F.rref(M)) < n:
            continue
        mats.append(M)
        perms.append([vindex[tuple(F.dot(row, v) for row in M)] for v in vectors])
    if len(mats) != order:
        raise InternalInconsistency("wrong number of invertible matrices")

    def label(M):
        return "[" + ";".join(" ".join(map(str, row)) for row in M) + "]"

    G = FiniteGroup.from_permutations(np.array(perms, dtype=np.int64),
                                      labels=[label(M) for M in mats], name=f"GL{n}(F{q})")
    G.matrices = mats
    G.field = F

    def flag_of(M):
        cols = [tuple(M[i][j] for i in range(n)) for j in range(n)]
        return tuple(F.rref(cols[: d + 1]) for d in range(n - 1))

    keys = [flag_of(M) for M in mats]
    flags = sorted(set(keys))
    findex = {f: i for i, f in enumerate(flags)}
    point_of = np.array([findex[kk] for kk in keys], dtype=np.int64)
    # any element mapping the standard flag to flag p represents the coset gB for p
    reps = np.empty(len(flags), dtype=np.int64)
    for g in range(len(mats) - 1, -1, -1):
        reps[point_of[g]] = g
    action = point_of[G.table[:, reps]]
    labels = [" < ".join("<" + ",".join("".join(map(str, v)) for v in sub) + ">" for sub in f)
              for f in flags]
    X = GSet(G, action, labels=labels, name="flags")
    return G, X


# -- closed forms -----------------------------------------------------------


def _vol_terms(n: int, S: SurfaceType):
    for lam in partitions(n):
        hooks = hook_lengths(lam)
        yield lam, hooks, Fraction(math.factorial(n) ** S.m, math.prod(hooks) ** S.m)


def fg_vol_closed(n: int, S: SurfaceType, convention: str = "corrected", q=None, var: str = "q"):
    """Groupoid volume of framed GL_n flag local systems over F_q.

    With ``q=None`` a Laurent polynomial is returned (requires chi <= 0);
    otherwise the exact value at ``q``.
    """
    convention = _convention(convention)
    chi = S.euler_char
    shift = -chi * n * (n - 1) // 2 if convention == "corrected" else 0
    if q is None:
        if chi > 0:
            raise NonPolynomial("the volume is not a Laurent polynomial for chi > 0")
        total = LaurentPoly({}, var)
        for lam, hooks, coeff in _vol_terms(n, S):
            term = LaurentPoly.monomial(lam.n_statistic() * chi + shift, coeff, var)
            for h in hooks:
                term = term * _q_minus_one(h, var) ** (-chi)
            total = total + term
        return total
    q = Fraction(q)
    if q == 0:
        raise ZeroBase("q must be nonzero")
    total = Fraction(0)
    for lam, hooks, coeff in _vol_terms(n, S):
        term = coeff * q ** (lam.n_statistic() * chi + shift)
        for h in hooks:
            term *= (q**h - 1) ** (-chi)
        total += term
    return total


def fg_epoly(n: int, S: SurfaceType, convention: str = "corrected", var: str = "t") -> LaurentPoly:
    """E-polynomial in t = xy: #GL_n times the volume polynomial."""
    if S.euler_char > 0:
        raise NonPolynomial("the E-polynomial formula needs chi <= 0")
    return gl_order_poly(n, var) * fg_vol_closed(n, S, convention, var=var)


def unipotent_multiplicity_check(n: int, q: int, G: FiniteGroup | None = None, X: GSet | None = None,
                                 T: CharacterTable | None = None) -> dict:
    """Decompose C[flags] and match constituents with (unipotent dim, Specht dim) pairs."""
    if G is None or X is None:
        G, X = build_gl_flag(n, q)
    T = T or character_table(G)
    mult = multiplicities(T, X)
    observed = sorted((T.dims[i], mult[i]) for i in range(T.num_irreps) if mult[i])
    expected = []
    for lam in partitions(n):
        d = unipotent_dim(lam, "corrected")(q)
        if d.denominator != 1:
            raise InternalInconsistency("unipotent dimension is not an integer")
        expected.append({"partition": str(lam), "dim": int(d), "multiplicity": specht_dim(lam)})
    exp_pairs = sorted((e["dim"], e["multiplicity"]) for e in expected)
    total = sum(e["dim"] * e["multiplicity"] for e in expected)
    return {
        "n": n,
        "q": q,
        "flags": X.size,
        "observed": [{"dim": d, "multiplicity": m} for d, m in observed],
        "expected": expected,
        "decomposition_matches": observed == exp_pairs,
        "dimension_total": total,
        "total_matches": total == X.size,
        "ok": observed == exp_pairs and total == X.size,
    }
