"""A quick deterministic battery exercising every module; used by ``relfrob selftest``."""

from __future__ import annotations

from fractions import Fraction

from .battery import battery_gsets, builtin_group, element_from_cycles
from .chartable import character_table, convolve, multiplicities
from .fock_goncharov import (
    SurfaceType,
    framed_count,
    framed_count_brute,
    groupoid_volume,
    topology_invariance_check,
)
from .frobenius import (
    classic_commutator_count,
    classic_commutator_count_brute,
    main_sph_table,
    RelativeInstance,
    relative_count_chars,
    relative_counts_brute_all,
    sp_char_lemma_check,
)
from .gelfand import gelfand_report
from .gln import fg_epoly, fg_vol_closed, partitions, specht_dim, unipotent_dim, unipotent_multiplicity_check
from .numerics import Cyclotomic

GROUPS = ("C2", "C4", "S3", "D4", "Q8", "A4", "S4", "GL2(F2)", "GL2(F3)")


def _check(name, ok, **detail):
    return {"name": name, "ok": bool(ok), **detail}


def run_selftest(cache=None, threads: int = 1) -> list[dict]:
    out = []
    for name in GROUPS:
        G, _ = builtin_group(name)
        T = character_table(G, cache=cache)
        out.append(_check(f"chartable[{name}]", T.check(), dims=list(T.dims)))
        hom = classic_commutator_count(G, 0, 1, T)
        out.append(_check(f"frobenius-k1[{name}]", hom == G.order * len(T)
                          == classic_commutator_count_brute(G, 0, 1, threads=threads), value=hom))
        # convolution of irreducible characters
        conv_ok = True
        for i in range(len(T)):
            chi = T.character(i)
            conv_ok &= convolve(chi, chi, T) == chi.scale(Fraction(G.order, T.dims[i]))
        out.append(_check(f"convolution[{name}]", conv_ok))
        reps = G.conjugacy.reps
        for label, X in battery_gsets(name):
            mult = multiplicities(T, X)
            for k, m in ((0, 1), (0, 2), (1, 1)):
                brute = relative_counts_brute_all(G, X, k, m, reps, threads=threads)
                chars = {g: relative_count_chars(RelativeInstance(G, X, g, k, m), T) for g in reps}
                out.append(_check(f"relative[{name},{label},k={k},m={m}]", brute == chars,
                                  values=[chars[g] for g in reps]))
            key_ok = all(
                sum((T.values[i][c] * mult[i] for i in range(len(T))), Cyclotomic.rational(0))
                == int(X.fixed_point_counts[reps[c]])
                for c in range(len(reps))
            )
            out.append(_check(f"permutation-character[{name},{label}]", key_ok, multiplicities=list(mult)))

    for name, gens, expect in (("S3", ["(1 2)"], True), ("S3", ["e"], False), ("S4", ["(1 2)", "(1 2 3)"], True),
                               ("D4", ["(1 3)(2 4)"], None), ("Q8", ["(1 2)(3 4)(5 6)(7 8)"], None)):
        G, _ = builtin_group(name)
        H = [0 if g == "e" else element_from_cycles(G, g) for g in gens]
        rep = gelfand_report(G, H, T=character_table(G, cache=cache))
        ok = rep.agree and (expect is None or rep.gelfand == expect)
        out.append(_check(f"gelfand[{name},{';'.join(gens)}]", ok, gelfand=rep.gelfand,
                          commutator=[rep.commutator_lhs, rep.commutator_rhs]))

    G, X = builtin_group("S3")
    T = character_table(G, cache=cache)
    for chi in (-1, -2):
        for label, Y in (("natural", X), ("regular", battery_gsets("S3")[1][1])):
            rep = topology_invariance_check(G, Y, chi, T)
            out.append(_check(f"topology[S3,{label},chi={chi}]", rep["consistent"], equal=rep["all_equal"]))
    out.append(_check("spherical-lemma[S3]", all(sp_char_lemma_check(G, T))))
    for k, m in ((0, 1), (1, 1)):
        rows = main_sph_table(G, X, k, m, T)
        out.append(_check(f"spherical-main[S3,k={k},m={m}]", all(r["equal"] for r in rows)))

    for n, q in ((2, 2), (2, 3)):
        G, X = builtin_group(f"GL{n}(F{q})")
        T = character_table(G, cache=cache)
        out.append(_check(f"flag-decomposition[GL{n}(F{q})]", unipotent_multiplicity_check(n, q, G, X, T)["ok"]))
        for k, m in ((0, 1), (0, 2), (1, 1)):
            S = SurfaceType(k, m)
            vol = groupoid_volume(S, G, X, T)
            ok = vol == fg_vol_closed(n, S, "corrected", q=q)
            count = framed_count(S, G, X, T)
            ok &= count == framed_count_brute(S, G, X, threads=threads)
            if S.euler_char <= 0:
                ok &= fg_epoly(n, S)(q) == count
            out.append(_check(f"fg-volume[GL{n}(F{q}),k={k},m={m}]", ok, volume=vol, count=count))
    ok = all(unipotent_dim(lam)(1) == specht_dim(lam) for n in range(1, 7) for lam in partitions(n))
    out.append(_check("q-to-1-degeneration[n<=6]", ok))
    return out
