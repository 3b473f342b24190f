"""Finite groups given by multiplication tables, conjugacy data and finite G-sets.

Elements are indexed ``0..n-1`` with ``0`` the identity.  Permutations are
0-based image arrays and compose right-to-left, ``(g*h)(x) = g(h(x))``, so the
natural action of a permutation group is a left action.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InternalInconsistency, ParseError, TooLarge

DEFAULT_MAX_ORDER = 20000

__all__ = [
    "FiniteGroup",
    "ConjugacyData",
    "GSet",
    "group_from_perm_generators",
    "conjugacy",
    "commutator",
    "coset_gset",
    "fixed_points",
    "parse_cycles",
    "format_cycles",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "dihedral_group",
    "quaternion_group",
    "direct_product",
    "two_sided_gset",
]


def parse_cycles(text: str, degree: int) -> list[int]:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4 5)"`` into images."""
    text = text.strip()
    img = list(range(degree))
    if text in ("", "()", "e"):
        return img
    pos = 0
    seen: set[int] = set()
    for m in re.finditer(r"\(([^()]*)\)|(\S)", text):
        if m.start() != pos and text[pos : m.start()].strip():
            raise ParseError(f"malformed cycle notation {text!r}")
        pos = m.end()
        if m.group(2) is not None:
            raise ParseError(f"malformed cycle notation {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(tok) - 1 for tok in body]
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}") from None
        for p in pts:
            if not 0 <= p < degree:
                raise ParseError(f"point {p + 1} out of range 1..{degree}")
            if p in seen:
                raise ParseError(f"point {p + 1} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if text[pos:].strip():
        raise ParseError(f"malformed cycle notation {text!r}")
    return img


def format_cycles(perm) -> str:
    perm = list(perm)
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = perm[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def _row_keys(rows: np.ndarray, weights: np.ndarray) -> np.ndarray:
    # int64 wraparound is intended: the keys are only used as hash values
    with np.errstate(over="ignore"):
        return rows.astype(np.int64) @ weights


def _table_from_permutations(perms: np.ndarray) -> np.ndarray:
    n, d = perms.shape
    rng = np.random.default_rng(0x5EED)
    for _ in range(8):
        weights = rng.integers(1, 2**62, size=d, dtype=np.int64)
        keys = _row_keys(perms, weights)
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        if n < 2 or np.all(sorted_keys[1:] != sorted_keys[:-1]):
            break
    else:  # pragma: no cover - astronomically unlikely
        raise InternalInconsistency("could not find collision-free element keys")
    table = np.empty((n, n), dtype=np.int32 if n < 2**31 else np.int64)
    for i in range(n):
        prod_keys = _row_keys(perms[i][perms], weights)
        pos = np.searchsorted(sorted_keys, prod_keys)
        if np.any(pos >= n) or np.any(sorted_keys[np.minimum(pos, n - 1)] != prod_keys):
            raise InternalInconsistency("permutation set is not closed under composition")
        table[i] = order[pos]
    return table


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    """Conjugacy classes ordered by (size, least member index)."""

    class_of: np.ndarray
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    centralizer_orders: tuple[int, ...]
    element_orders: tuple[int, ...]
    inverse_class: tuple[int, ...]
    power_map: np.ndarray  # power_map[c, j] = class of rep(c)**j, 0 <= j < exponent

    @property
    def num_classes(self) -> int:
        return len(self.reps)

    def __len__(self):
        return len(self.reps)


class FiniteGroup:
    """A finite group stored as a full multiplication table."""

    def __init__(self, table, labels=None, perms=None, generators=None, name=None,
                 validate=True):
        table = np.asarray(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("multiplication table must be square")
        self.table = table
        self.table.setflags(write=False)
        self.order = table.shape[0]
        self.name = name or f"G{self.order}"
        if perms is not None:
            perms = np.asarray(perms)
            perms.setflags(write=False)
        self.perms = perms
        self.labels = list(labels) if labels is not None else (
            [format_cycles(p) for p in perms] if perms is not None
            else [str(i) for i in range(self.order)]
        )
        if validate:
            self.validate()
        idx = np.arange(self.order)
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        self.inverse = inv
        self.inverse.setflags(write=False)
        self._generators = tuple(generators) if generators is not None else None
        if not np.array_equal(self.table[idx, inv], np.zeros(self.order, dtype=self.table.dtype)):
            raise InternalInconsistency("inverse table inconsistent")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_permutations(cls, perms, **kwargs) -> "FiniteGroup":
        """Group whose elements are exactly ``perms`` (identity first), in that order."""
        perms = np.asarray(perms, dtype=np.int64)
        if perms.ndim != 2:
            raise ValueError("expected a 2-d array of permutations")
        if not np.array_equal(perms[0], np.arange(perms.shape[1])):
            raise ValueError("the first permutation must be the identity")
        table = _table_from_permutations(perms)
        kwargs.setdefault("validate", False)
        G = cls(table, perms=perms, **kwargs)
        if kwargs["validate"] is False:
            G._validate_latin_identity()
        return G

    # -- validation --------------------------------------------------------

    def _validate_latin_identity(self):
        n = self.order
        T = self.table
        if T.min() < 0 or T.max() >= n:
            raise InternalInconsistency("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(T[0], idx) and np.array_equal(T[:, 0], idx)):
            raise InternalInconsistency("element 0 is not a two-sided identity")
        srt = np.sort(T, axis=1)
        if not np.all(srt == idx):
            raise InternalInconsistency("table rows are not permutations")
        if not np.all(np.sort(T, axis=0) == idx[:, None]):
            raise InternalInconsistency("table columns are not permutations")

    def validate(self, exhaustive_limit: int = 512, samples: int = 10**6):
        self._validate_latin_identity()
        n = self.order
        T = self.table
        if n <= exhaustive_limit:
            for a in range(n):
                # (a*b)*c == a*(b*c) for all b, c
                if not np.array_equal(T[T[a]], T[a][T]):
                    raise InternalInconsistency("multiplication is not associative")
        else:
            rng = np.random.default_rng(12345)
            a, b, c = rng.integers(0, n, size=(3, samples))
            if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
                raise InternalInconsistency("multiplication is not associative")

    # -- element arithmetic ------------------------------------------------

    def mul(self, *elems: int) -> int:
        out = 0
        for e in elems:
            out = int(self.table[out, e])
        return out

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, g])
        return out

    def commutator(self, a: int, b: int) -> int:
        return self.mul(a, b, self.inv(a), self.inv(b))

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.mul(h, g, self.inv(h))

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """``C[a, b] = [a, b] = a b a^-1 b^-1`` for all pairs."""
        T = self.table
        ab = T
        ba_inv = self.inverse[T.T]  # (b a)^-1 = a^-1 b^-1
        return T[ab, ba_inv]

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        idx = np.arange(n)
        while np.any(orders == 0):
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, idx]
            k += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.element_orders)))

    def subgroup_closure(self, gens) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``gens``."""
        members = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.table[x, s])
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return np.array(sorted(members), dtype=np.int64)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            gens: list[int] = []
            sub = {0}
            for g in range(1, self.order):
                if g not in sub:
                    gens.append(g)
                    sub = set(self.subgroup_closure(gens).tolist())
                    if len(sub) == self.order:
                        break
            self._generators = tuple(gens)
        return self._generators

    @cached_property
    def conjugacy(self) -> ConjugacyData:
        return _compute_conjugacy(self)

    @cached_property
    def content_hash(self) -> str:
        import hashlib

        h = hashlib.sha256()
        h.update(str(self.order).encode())
        h.update(np.ascontiguousarray(self.table, dtype="<i8").tobytes())
        return h.hexdigest()

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _compute_conjugacy(G: FiniteGroup) -> ConjugacyData:
    n = G.order
    T = G.table
    inv = G.inverse
    class_raw = np.full(n, -1, dtype=np.int64)
    classes = []
    for x in range(n):
        if class_raw[x] >= 0:
            continue
        orbit = np.unique(T[T[:, x], inv])
        class_raw[orbit] = len(classes)
        classes.append(orbit)
    order = sorted(range(len(classes)), key=lambda c: (len(classes[c]), int(classes[c][0])))
    members = tuple(tuple(int(v) for v in classes[c]) for c in order)
    class_of = np.empty(n, dtype=np.int64)
    for c, mem in enumerate(members):
        class_of[list(mem)] = c
    class_of.setflags(write=False)
    reps = tuple(mem[0] for mem in members)
    sizes = tuple(len(mem) for mem in members)
    if sum(sizes) != n or members[0] != (0,):
        raise InternalInconsistency("bad conjugacy partition")
    exponent = G.exponent
    power_map = np.zeros((len(reps), exponent), dtype=np.int64)
    for c, g in enumerate(reps):
        cur = 0
        for j in range(exponent):
            power_map[c, j] = class_of[cur]
            cur = int(T[cur, g])
    power_map.setflags(write=False)
    orders = G.element_orders
    return ConjugacyData(
        class_of=class_of,
        reps=reps,
        sizes=sizes,
        members=members,
        centralizer_orders=tuple(n // s for s in sizes),
        element_orders=tuple(int(orders[g]) for g in reps),
        inverse_class=tuple(int(class_of[inv[g]]) for g in reps),
        power_map=power_map,
    )


def conjugacy(G: FiniteGroup) -> ConjugacyData:
    return G.conjugacy


def commutator(G: FiniteGroup, a: int, b: int) -> int:
    return G.commutator(a, b)


@dataclass(eq=False)
class GSet:
    """A finite left G-set given by its action table ``action[g, x] = g.x``."""

    group: FiniteGroup
    action: np.ndarray
    labels: list[str] | None = None
    name: str = "X"
    _fix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.action = np.asarray(self.action, dtype=np.int64)
        self.action.setflags(write=False)
        if self.action.shape[0] != self.group.order:
            raise ValueError("action table must have one row per group element")
        if self.labels is None:
            self.labels = [str(i) for i in range(self.size)]

    @property
    def size(self) -> int:
        return self.action.shape[1]

    def __len__(self):
        return self.size

    def validate(self, exhaustive_limit: int = 10**6, samples: int = 10**5):
        A = self.action
        n, s = A.shape
        pts = np.arange(s)
        if s == 0:
            raise InternalInconsistency("empty G-set")
        if not np.array_equal(A[0], pts):
            raise InternalInconsistency("identity does not act trivially")
        if not np.all(np.sort(A, axis=1) == pts):
            raise InternalInconsistency("action rows are not permutations")
        T = self.group.table
        if n * s <= exhaustive_limit:
            for a in range(n):
                # (a b).x == a.(b.x) for all b, x
                if not np.array_equal(A[T[a]], A[a][A]):
                    raise InternalInconsistency("action is not compatible with multiplication")
        else:
            rng = np.random.default_rng(54321)
            a, b = rng.integers(0, n, size=(2, samples))
            x = rng.integers(0, s, size=samples)
            if not np.array_equal(A[T[a, b], x], A[a, A[b, x]]):
                raise InternalInconsistency("action is not compatible with multiplication")
        return self

    @property
    def fixed_point_counts(self) -> np.ndarray:
        """``#X^g`` for every element g."""
        if self._fix is None:
            fix = (self.action == np.arange(self.size)).sum(axis=1).astype(np.int64)
            fix.setflags(write=False)
            self._fix = fix
        return self._fix

    def fixed_points(self, g: int) -> int:
        return int(self.fixed_point_counts[g])

    def stabilizer(self, x: int) -> np.ndarray:
        return np.nonzero(self.action[:, x] == x)[0]

    def orbits(self) -> list[list[int]]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if not seen[x]:
                orb = np.unique(self.action[:, x])
                seen[orb] = True
                out.append(orb.tolist())
        return out

    def transporter(self, x: int, y: int) -> np.ndarray:
        return np.nonzero(self.action[:, x] == y)[0]


def fixed_points(X: GSet, g: int) -> int:
    return X.fixed_points(g)


def natural_gset(G: FiniteGroup) -> GSet:
    if G.perms is None:
        raise ValueError("group has no permutation representation")
    return GSet(G, G.perms, labels=[str(i + 1) for i in range(G.perms.shape[1])], name="natural")


def regular_gset(G: FiniteGroup) -> GSet:
    return GSet(G, G.table, labels=list(G.labels), name="regular")


def point_gset(G: FiniteGroup) -> GSet:
    return GSet(G, np.zeros((G.order, 1), dtype=np.int64), labels=["*"], name="point")


def coset_gset(G: FiniteGroup, subgroup_generators) -> GSet:
    """Left cosets gH with the left action; the coset H itself is point 0."""
    H = G.subgroup_closure(subgroup_generators)
    n = G.order
    coset_id = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset_id[g] < 0:
            coset_id[G.table[g, H]] = len(reps)
            reps.append(g)
    reps = np.array(reps, dtype=np.int64)
    action = coset_id[G.table[:, reps]]
    labels = [f"{G.labels[r]}H" for r in reps]
    return GSet(G, action, labels=labels, name=f"cosets[{len(H)}]")


def group_from_perm_generators(degree: int, generators, max_order: int = DEFAULT_MAX_ORDER,
                               name: str | None = None):
    """Close ``generators`` under composition; returns ``(G, natural G-set)``.

    Elements are listed identity first, then in breadth-first discovery order
    (right multiplication by generators, in generator order).
    """
    gens = []
    for g in generators:
        g = tuple(parse_cycles(g, degree) if isinstance(g, str) else (int(v) for v in g))
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a permutation of {degree} points")
        gens.append(g)
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for s in gens:
            new = tuple(cur[s[x]] for x in range(degree))
            if new not in index:
                if len(elems) >= max_order:
                    raise TooLarge(f"group exceeds {max_order} elements")
                index[new] = len(elems)
                elems.append(new)
                queue.append(new)
    gen_idx = tuple(index[s] for s in gens if s != ident)
    G = FiniteGroup.from_permutations(np.array(elems, dtype=np.int64).reshape(len(elems), degree),
                                      generators=gen_idx, name=name)
    return G, natural_gset(G)


# -- builtin families -------------------------------------------------------


def symmetric_group(n: int):
    if n == 1:
        return group_from_perm_generators(1, [[0]], name="S1")
    gens = ["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"]
    return group_from_perm_generators(n, gens, name=f"S{n}")


def alternating_group(n: int):
    if n < 3:
        return group_from_perm_generators(max(n, 1), [list(range(max(n, 1)))], name=f"A{n}")
    gens = [f"(1 2 {i})" for i in range(3, n + 1)]
    return group_from_perm_generators(n, gens, name=f"A{n}")


def cyclic_group(n: int):
    gen = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")" if n > 1 else "()"
    return group_from_perm_generators(n, [gen], name=f"C{n}")


def dihedral_group(n: int):
    """Symmetries of the regular n-gon (order 2n) acting on its vertices."""
    rot = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    refl = [(-i) % n for i in range(n)]
    return group_from_perm_generators(n, [rot, refl], name=f"D{n}")


def quaternion_group():
    """Q8 in its regular representation on 8 points."""
    # points 1..8 are 1,-1,i,-i,j,-j,k,-k; generators are left multiplication by i, j
    return group_from_perm_generators(
        8, ["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"], name="Q8"
    )


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """G x H with element (g, h) stored at index g * |H| + h."""
    m = H.order
    gi = np.repeat(np.arange(G.order), m)
    hi = np.tile(np.arange(m), G.order)
    table = G.table[gi[:, None], gi[None, :]] * m + H.table[hi[:, None], hi[None, :]]
    labels = [f"({G.labels[a]},{H.labels[b]})" for a, b in zip(gi, hi)]
    return FiniteGroup(table.astype(np.int64), labels=labels, validate=False,
                       name=name or f"{G.name}x{G.name if G is H else H.name}")


def two_sided_gset(G: FiniteGroup, GG: FiniteGroup | None = None) -> tuple[FiniteGroup, GSet]:
    """G x G acting on G by ``(h1, h2).x = h1 x h2^-1``."""
    GG = GG or direct_product(G, G)
    n = G.order
    h1 = np.repeat(np.arange(n), n)
    h2 = np.tile(np.arange(n), n)
    T = G.table
    action = T[T[h1[:, None], np.arange(n)[None, :]], G.inverse[h2][:, None]]
    return GG, GSet(GG, action, labels=list(G.labels), name="two-sided")
