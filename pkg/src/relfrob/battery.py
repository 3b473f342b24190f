"""Named groups and G-sets used by the self-test and the acceptance suite."""

from __future__ import annotations

from functools import lru_cache

from .groups import (
    FiniteGroup,
    GSet,
    alternating_group,
    coset_gset,
    cyclic_group,
    dihedral_group,
    natural_gset,
    parse_cycles,
    point_gset,
    quaternion_group,
    regular_gset,
    symmetric_group,
)
from .gln import build_gl_flag

# subgroup generators (cycle notation on the natural points) for coset G-sets
_COSETS = {
    "C2": [["(1 2)"]],
    "C4": [["(1 3)(2 4)"]],
    "C6": [["(1 3 5)(2 4 6)"], ["(1 4)(2 5)(3 6)"]],
    "S3": [["(1 2)"], ["(1 2 3)"]],
    "D4": [["(1 3)(2 4)"], ["(2 4)"]],
    "Q8": [["(1 2)(3 4)(5 6)(7 8)"], ["(1 3 2 4)(5 7 6 8)"]],
    "A4": [["(1 2)(3 4)"], ["(1 2 3)"]],
    "S4": [["(1 2)", "(1 2 3)"], ["(1 2 3 4)", "(1 3)"]],
}

BATTERY = ("C2", "C4", "C6", "S3", "D4", "Q8", "A4", "S4",
           "GL2(F3)", "GL2(F2)", "GL3(F2)", "GL2(F4)")


@lru_cache(maxsize=None)
def builtin_group(name: str) -> tuple[FiniteGroup, GSet]:
    """Group and natural G-set for names like ``S4``, ``D4``, ``Q8``, ``GL2(F3)``."""
    if name.startswith("GL"):
        n, q = name[2:].replace("(F", " ").rstrip(")").split()
        return build_gl_flag(int(n), int(q))
    family, num = name[0], name[1:]
    if name == "Q8":
        return quaternion_group()
    builders = {"S": symmetric_group, "A": alternating_group, "C": cyclic_group, "D": dihedral_group}
    if family not in builders or not num.isdigit():
        raise KeyError(f"unknown builtin group {name!r}")
    return builders[family](int(num))


def element_from_cycles(G: FiniteGroup, text: str) -> int:
    perm = tuple(parse_cycles(text, G.perms.shape[1]))
    index = getattr(G, "_perm_index", None)
    if index is None:
        index = {tuple(int(v) for v in row): i for i, row in enumerate(G.perms)}
        G._perm_index = index
    try:
        return index[perm]
    except KeyError:
        raise ValueError(f"{text} is not an element of {G.name}") from None


def battery_gsets(name: str) -> list[tuple[str, GSet]]:
    """Natural, regular, one-point and coset G-sets for a battery group.

    For GL_n(F_q) the built-in G-set is the flag variety (itself a coset
    space G/B) and the natural one is the action on nonzero vectors.
    """
    G, X = builtin_group(name)
    if name.startswith("GL"):
        out = [("flags", X), ("vectors", natural_gset(G))]
    else:
        out = [("natural", X)]
    out += [("regular", regular_gset(G)), ("point", point_gset(G))]
    for gens in _COSETS.get(name, []):
        elems = [element_from_cycles(G, g) for g in gens]
        out.append((f"cosets:{';'.join(gens)}", coset_gset(G, elems)))
    return out
