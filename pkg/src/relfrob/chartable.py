"""Exact character tables (Dixon-Schneider) and class-function calculus."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InternalInconsistency, TooLarge
from .groups import FiniteGroup, GSet
from .numerics import Cyclotomic

DEFAULT_MAX_TABLE_ORDER = 20000

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "character_table",
    "class_structure_constants",
    "permutation_character",
    "multiplicity",
    "convolve",
    "dixon_prime",
]


# -- modular helpers --------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2 sqrt(order)."""
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * order):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    m = p - 1
    factors = set()
    f = 2
    while f * f <= m:
        while m % f == 0:
            factors.add(f)
            m //= f
        f += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def _rref(rows, p):
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(M, p):
    """Basis of {v : M v = 0} over F_p (M given as a list of rows)."""
    n = len(M[0])
    R, pivots = _rref(M, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


def _charpoly(M, p):
    """Characteristic polynomial det(xI - M) over F_p, lowest degree first."""
    n = len(M)
    H = [list(r) for r in M]
    # similarity reduction to upper Hessenberg form
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1] % p), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                H[i] = [(x - u * y) % p for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    # Hessenberg recurrence
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev  # x * p_{m-1}
        for k, c in enumerate(prev):
            cur[k] = (cur[k] - H[m - 1][m - 1] * c) % p
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * H[i][i - 1] % p
            coef = H[i - 1][m - 1] * t % p
            if coef:
                for k, c in enumerate(polys[i - 1]):
                    cur[k] = (cur[k] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly, p):
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def _split(space, A, p):
    """Split an A-invariant subspace (RREF row basis) into eigenspaces of A."""
    basis, pivots = space
    s = len(basis)
    # restricted operator: A b_t = sum_u M[u][t] b_u, read off at pivot columns
    images = [[sum(a * b for a, b in zip(row, bt)) % p for row in A] for bt in basis]
    M = [[images[t][pivots[u]] for t in range(s)] for u in range(s)]
    pieces = []
    total = 0
    for lam in _roots(_charpoly(M, p), p):
        shifted = [[(M[u][t] - (lam if u == t else 0)) % p for t in range(s)] for u in range(s)]
        for_lam = _nullspace(shifted, p)
        vecs = [[sum(c[u] * basis[u][k] for u in range(s)) % p for k in range(len(basis[0]))]
                for c in for_lam]
        rows, piv = _rref(vecs, p)
        pieces.append((rows, piv))
        total += len(rows)
    if total != s:
        raise InternalInconsistency("class operator is not split-semisimple modulo p")
    return pieces


# -- structure constants ----------------------------------------------------


def class_structure_constants(G: FiniteGroup) -> np.ndarray:
    """``a[i, j, l] = #{(x, y) in C_i x C_j : x y = z}`` for a fixed z in C_l."""
    cd = G.conjugacy
    r = cd.num_classes
    a = np.zeros((r, r, r), dtype=np.int64)
    xs = np.arange(G.order)
    cx = cd.class_of[xs]
    for l, z in enumerate(cd.reps):
        ys = G.table[G.inverse, z]
        np.add.at(a[:, :, l], (cx, cd.class_of[ys]), 1)
    return a


# -- tables -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """A class function stored by its value on each conjugacy class."""

    group: FiniteGroup
    values: tuple

    def __post_init__(self):
        vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in self.values)
        if len(vals) != self.group.conjugacy.num_classes:
            raise ValueError("need one value per conjugacy class")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, c):
        return self.values[c]

    def __len__(self):
        return len(self.values)

    def at(self, g: int) -> Cyclotomic:
        return self.values[int(self.group.conjugacy.class_of[g])]

    def __add__(self, other):
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v * c for v in self.values))

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.conj() for v in self.values))

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def inner(self, other: "ClassFunction") -> Cyclotomic:
        """(1/|G|) sum_g self(g) conj(other(g))."""
        sizes = self.group.conjugacy.sizes
        acc = Cyclotomic.rational(0)
        for s, a, b in zip(sizes, self.values, other.values):
            acc = acc + a * b.conj() * s
        return acc / self.group.order

    @classmethod
    def delta_identity(cls, G: FiniteGroup) -> "ClassFunction":
        r = G.conjugacy.num_classes
        return cls(G, (1,) + (0,) * (r - 1))


class CharacterTable:
    """Irreducible characters (rows) by conjugacy classes (columns)."""

    def __init__(self, group: FiniteGroup, values, check: bool = True):
        self.group = group
        self.values = tuple(tuple(row) for row in values)
        self.conductor = math.lcm(1, *(v.conductor for row in self.values for v in row))
        self.dims = tuple(int(row[0].to_rational()) for row in self.values)
        self.class_sizes = group.conjugacy.sizes
        if check:
            self.check()

    @property
    def num_irreps(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def character(self, i: int) -> ClassFunction:
        return ClassFunction(self.group, self.values[i])

    def __getitem__(self, i):
        return self.values[i]

    @cached_property
    def structure_constants(self) -> np.ndarray:
        return class_structure_constants(self.group)

    def check(self):
        """Verify orthogonality, dimension and counting identities exactly."""
        G = self.group
        r = G.conjugacy.num_classes
        n = G.order
        if self.num_irreps != r:
            raise InternalInconsistency("number of irreducible characters != number of classes")
        if sum(d * d for d in self.dims) != n:
            raise InternalInconsistency("sum of squared dimensions != |G|")
        conj = [[v.conj() for v in row] for row in self.values]
        for i in range(r):
            for j in range(i, r):
                acc = Cyclotomic.rational(0)
                for c in range(r):
                    acc = acc + self.values[i][c] * conj[j][c] * self.class_sizes[c]
                if acc != (n if i == j else 0):
                    raise InternalInconsistency(f"row orthogonality fails for ({i}, {j})")
        for c in range(r):
            for c2 in range(c, r):
                acc = Cyclotomic.rational(0)
                for i in range(r):
                    acc = acc + self.values[i][c] * conj[i][c2]
                if acc != (n // self.class_sizes[c] if c == c2 else 0):
                    raise InternalInconsistency(f"column orthogonality fails for ({c}, {c2})")
        return True

    def __repr__(self):
        return f"CharacterTable({self.group.name}, dims={self.dims})"


def _dixon_schneider(G: FiniteGroup) -> list[list[Cyclotomic]]:
    cd = G.conjugacy
    r = cd.num_classes
    n = G.order
    e = G.exponent
    p = dixon_prime(n, e)
    a = class_structure_constants(G)
    sizes = cd.sizes

    space = ([[int(i == j) for j in range(r)] for i in range(r)], list(range(r)))
    spaces = [space]
    for j in range(r):
        if all(len(s[0]) == 1 for s in spaces):
            break
        A = [[int(a[j, k, l]) % p for l in range(r)] for k in range(r)]
        nxt = []
        for s in spaces:
            nxt.extend([s] if len(s[0]) == 1 else _split(s, A, p))
        spaces = nxt
    if len(spaces) != r or any(len(s[0]) != 1 for s in spaces):
        raise InternalInconsistency("class algebra did not split into one-dimensional pieces")

    z = pow(_primitive_root(p), (p - 1) // e, p)
    inv_class = cd.inverse_class
    rows = []
    for (vec,), _ in spaces:
        v0 = vec[0] % p
        omega = [x * pow(v0, -1, p) % p for x in vec]
        denom = sum(omega[k] * omega[inv_class[k]] * pow(sizes[k], -1, p) for k in range(r)) % p
        d2 = n * pow(denom, -1, p) % p
        dim = next((d for d in range(1, math.isqrt(n) + 1) if d * d % p == d2), None)
        if dim is None:
            raise InternalInconsistency("no admissible degree for a character")
        chi_p = [omega[k] * dim * pow(sizes[k], -1, p) % p for k in range(r)]
        row = []
        for k in range(r):
            o = cd.element_orders[k]
            zo = pow(z, e // o, p)
            inv_o = pow(o, -1, p)
            terms = []
            for l in range(o):
                mu = sum(chi_p[cd.power_map[k, j]] * pow(zo, (-j * l) % o, p) for j in range(o))
                mu = mu * inv_o % p
                if mu > dim:
                    raise InternalInconsistency("eigenvalue multiplicity out of range")
                if mu:
                    terms.append((l * (e // o), mu))
            row.append(Cyclotomic.from_exponents(e, terms))
        rows.append(row)

    rows.sort(key=lambda row: (int(row[0].to_rational()),
                               tuple(tuple(-c for c in v.coeffs) for v in row)))
    return rows


def character_table(G: FiniteGroup, cache=None, max_order: int = DEFAULT_MAX_TABLE_ORDER,
                    check: bool = True) -> CharacterTable:
    """Exact character table; rows sorted by dimension, trivial character first.

    Rows of equal dimension are ordered by decreasing coefficient sequences.
    ``cache`` may be a :class:`relfrob.cache.TableCache`.
    """
    if G.order > max_order:
        raise TooLarge(f"group order {G.order} exceeds character-table bound {max_order}")
    memo = getattr(G, "_character_table", None)
    if memo is not None:
        return memo
    table = cache.load(G) if cache is not None else None
    if table is None:
        table = CharacterTable(G, _dixon_schneider(G), check=check)
        if cache is not None:
            cache.store(table)
    G._character_table = table
    return table


def permutation_character(X: GSet) -> ClassFunction:
    fix = X.fixed_point_counts
    return ClassFunction(X.group, tuple(int(fix[g]) for g in X.group.conjugacy.reps))


def multiplicity(T: CharacterTable, i: int, X: GSet) -> int:
    """dim Hom_G(pi_i, C[X])."""
    fix = X.fixed_point_counts
    reps = T.group.conjugacy.reps
    acc = Cyclotomic.rational(0)
    for c, s in enumerate(T.class_sizes):
        f = int(fix[reps[c]])
        if f:
            acc = acc + T.values[i][c].conj() * (s * f)
    val = (acc / T.group.order)
    if not val.is_rational():
        raise InternalInconsistency("multiplicity is not rational")
    q = val.to_rational()
    if q.denominator != 1 or q < 0:
        raise InternalInconsistency(f"multiplicity {q} is not a nonnegative integer")
    return int(q)


def multiplicities(T: CharacterTable, X: GSet) -> tuple[int, ...]:
    return tuple(multiplicity(T, i, X) for i in range(T.num_irreps))


def convolve(f: ClassFunction, g: ClassFunction, T: CharacterTable | None = None) -> ClassFunction:
    """(f * g)(w) = sum_u f(u) g(u^-1 w), via class-algebra structure constants."""
    G = f.group
    if g.group is not G:
        raise ValueError("class functions live on different groups")
    a = T.structure_constants if T is not None else class_structure_constants(G)
    r = len(f)
    out = []
    for l in range(r):
        acc = Cyclotomic.rational(0)
        for i in range(r):
            if f.values[i].is_zero():
                continue
            for j in range(r):
                n_ijl = int(a[i, j, l])
                if n_ijl and not g.values[j].is_zero():
                    acc = acc + f.values[i] * g.values[j] * n_ijl
        out.append(acc)
    return ClassFunction(G, tuple(out))


def rational_sum(terms) -> Fraction:
    """Sum cyclotomic terms whose total must be rational."""
    acc = Cyclotomic.rational(0)
    for t in terms:
        acc = acc + t
    if not acc.is_rational():
        raise InternalInconsistency(f"expected a rational total, got {acc}")
    return acc.to_rational()
