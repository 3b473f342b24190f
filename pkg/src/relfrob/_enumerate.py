"""Character-free enumeration kernels used as oracles.

Two flavours are provided.  :func:`word_distribution` walks a word letter by
letter and keeps, for every group element z, the weighted number of partial
tuples whose running product is z; this enumerates every tuple exactly once
while collapsing tuples with equal prefixes.  :func:`literal_product_counts`
materialises every tuple and is only meant for tiny inputs.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import WorkBoundExceeded
from .groups import FiniteGroup

_INT64_SAFE = 2**62


def check_work(work: int, bound: int) -> None:
    if work > bound:
        raise WorkBoundExceeded(work, bound)


def commutator_counts(G: FiniteGroup) -> np.ndarray:
    """c[z] = #{(a, b) in G^2 : [a, b] = z}."""
    return np.bincount(G.commutator_table.ravel(), minlength=G.order).astype(np.int64)


def _step(G: FiniteGroup, state: np.ndarray, weights: np.ndarray, threads: int) -> np.ndarray:
    """new[x y] += state[x] * weights[y] over all x, y."""
    T = G.table
    ys = np.nonzero(weights)[0]

    def partial(chunk):
        out = np.zeros_like(state)
        for y in chunk:
            # x -> x y is a bijection, so no index collisions within one y
            out[T[:, y]] += state * weights[y]
        return out

    if threads <= 1 or len(ys) < 2 * threads:
        return partial(ys)
    chunks = np.array_split(ys, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(partial, chunks))
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def word_distribution(G: FiniteGroup, letters, start: int = 0, threads: int = 1) -> np.ndarray:
    """Weighted distribution of ``start * l_1 * l_2 * ...`` over G.

    Each letter is a weight vector w over G: the letter ranges over all
    elements y with multiplicity ``w[y]``.
    """
    letters = [np.asarray(w, dtype=np.int64) for w in letters]
    bound = 1
    for w in letters:
        bound *= int(w.sum())
    dtype = np.int64 if bound < _INT64_SAFE else object
    state = np.zeros(G.order, dtype=dtype)
    state[start] = 1
    for w in letters:
        state = _step(G, state, w.astype(dtype), threads)
    return state


def literal_product_counts(G: FiniteGroup, factor_lists, chunk: int = 2_000_000) -> np.ndarray:
    """Count, for each z, the tuples (f_1, ..., f_r) in the given lists with f_1...f_r = z.

    Every tuple is materialised; the first factor is looped over in Python
    whenever the full product array would exceed ``chunk`` entries.
    """
    lists = [np.asarray(L, dtype=np.int64) for L in factor_lists]
    T = G.table
    counts = np.zeros(G.order, dtype=np.int64)

    def expand(prefix: np.ndarray, rest):
        for L in rest:
            prefix = T[prefix[:, None], L[None, :]].ravel()
        return prefix

    def rec(prefix: np.ndarray, rest):
        size = len(prefix)
        for L in rest:
            size *= len(L)
        if size <= chunk or not rest:
            counts[:] += np.bincount(expand(prefix, rest), minlength=G.order)
            return
        head, tail = rest[0], rest[1:]
        for y in head:
            rec(T[prefix, y], tail)

    rec(np.zeros(1, dtype=np.int64), lists)
    return counts
