"""Acceptance criteria 1-12; each prints a single PASS/FAIL line."""

import json
import os
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from relfrob.battery import BATTERY, battery_gsets, builtin_group, element_from_cycles
from relfrob.chartable import ClassFunction, character_table, convolve, multiplicities
from relfrob.cli import main
from relfrob.fock_goncharov import (
    SurfaceType,
    framed_count,
    framed_count_brute,
    groupoid_volume,
    topology_invariance_check,
)
from relfrob.frobenius import (
    RelativeInstance,
    classic_commutator_count,
    classic_commutator_count_brute,
    hom_count_closed_surface,
    main_sph_table,
    relative_count_brute,
    relative_count_chars,
    relative_count_tuples,
    relative_counts_brute_all,
    sp_char_lemma_check,
)
from relfrob.gelfand import gelfand_report
from relfrob.gln import (
    fg_epoly,
    fg_vol_closed,
    partitions,
    specht_dim,
    unipotent_dim,
    unipotent_multiplicity_check,
)
from relfrob.groups import regular_gset
from relfrob.numerics import Cyclotomic, LaurentPoly


def report(number, ok, detail=""):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def small(bound):
    return [n for n in BATTERY if builtin_group(n)[0].order <= bound]


def test_criterion_01_character_tables():
    failures = []
    for name in BATTERY:
        G, _ = builtin_group(name)
        T = character_table(G)
        if not (T.check() and sum(d * d for d in T.dims) == G.order
                and len(T) == G.conjugacy.num_classes):
            failures.append(name)
    gl3 = sorted(character_table(builtin_group("GL3(F2)")[0]).dims)
    ok = not failures and gl3 == [1, 3, 3, 6, 7, 8]
    report(1, ok, f"{len(BATTERY)} groups, GL3(F2) dims {gl3}, failures {failures}")


def test_criterion_02_permutation_character_decomposition():
    checked, bad = 0, []
    for name in BATTERY:
        G, _ = builtin_group(name)
        T = character_table(G)
        for label, X in battery_gsets(name):
            mult = multiplicities(T, X)
            for c, rep in enumerate(G.conjugacy.reps):
                s = sum((T.values[i][c] * mult[i] for i in range(len(T))), Cyclotomic.rational(0))
                checked += 1
                if s != int(X.fixed_point_counts[rep]):
                    bad.append((name, label, c))
    report(2, not bad, f"{checked} (group, G-set, class) triples, mismatches {bad}")


def test_criterion_03_convolution():
    checked, bad = 0, []
    for name in small(48):
        G, _ = builtin_group(name)
        T = character_table(G)
        zero = ClassFunction(G, (Cyclotomic.rational(0),) * len(T))
        for i in range(len(T)):
            for j in range(len(T)):
                expect = T.character(i).scale(Fraction(G.order, T.dims[i])) if i == j else zero
                checked += 1
                if convolve(T.character(i), T.character(j), T) != expect:
                    bad.append((name, i, j))
    report(3, not bad, f"{checked} irrep pairs over {len(small(48))} groups, mismatches {bad}")


def test_criterion_04_classical_frobenius():
    G, _ = builtin_group("S3")
    vals = (classic_commutator_count(G, 0, 1), classic_commutator_count(G, 0, 2))
    brute = (classic_commutator_count_brute(G, 0, 1), classic_commutator_count_brute(G, 0, 2))
    ok = vals == brute == (18, 486)
    bad = []
    for name in BATTERY:
        H, _ = builtin_group(name)
        chars = hom_count_closed_surface(H, 1)
        if not chars == classic_commutator_count_brute(H, 0, 1) == H.order * H.conjugacy.num_classes:
            bad.append(name)
    report(4, ok and not bad, f"S3: {vals} (brute {brute}); torus counts |G|*#classes, failures {bad}")


MAIN_KM = [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (2, 1)]


def test_criterion_05_relative_frobenius():
    instances, literal, bad = 0, 0, []
    start = time.perf_counter()
    cases = [(n, km) for n in small(48) for km in MAIN_KM]
    cases += [("GL3(F2)", km) for km in [(0, 1), (0, 2), (1, 1)]]
    for name, (k, m) in cases:
        G, _ = builtin_group(name)
        T = character_table(G)
        reps = G.conjugacy.reps
        for label, X in battery_gsets(name):
            brute = relative_counts_brute_all(G, X, k, m, reps)
            for g in reps:
                instances += 1
                inst = RelativeInstance(G, X, g, k, m)
                value = relative_count_chars(inst, T)
                if value != brute[g]:
                    bad.append((name, label, k, m, g))
                if G.order ** (m + 2 * k) * X.size**m <= 10**5:
                    literal += 1
                    if relative_count_tuples(inst) != value:
                        bad.append((name, label, k, m, g, "literal"))
    G, X = builtin_group("S3")
    spot = (relative_count_brute(RelativeInstance(G, X, 0, 0, 2)),
            relative_count_brute(RelativeInstance(G, X, 0, 1, 1)))
    elapsed = time.perf_counter() - start
    report(5, not bad and spot == (12, 54),
           f"{instances} instances ({literal} also by literal tuples) in {elapsed:.1f}s, S3 spot values {spot}, mismatches {bad[:5]}")


GELFAND_PAIRS = [
    ("S3", ["(1 2)"], True, (54, 54)),
    ("S3", [], False, (108, 216)),
    ("S4", ["(1 2)", "(1 2 3)"], True, None),
    ("D4", ["(1 3)(2 4)"], None, None),
    ("Q8", ["(1 2)(3 4)(5 6)(7 8)"], None, None),
]


def test_criterion_06_gelfand_routes():
    bad, summary = [], []
    for name, cycles, expect, sides in GELFAND_PAIRS:
        G, _ = builtin_group(name)
        rep = gelfand_report(G, [element_from_cycles(G, c) for c in cycles], max_k=2, max_m=2)
        ok = rep.agree and (expect is None or rep.gelfand == expect)
        ok &= sides is None or (rep.commutator_lhs, rep.commutator_rhs) == sides
        summary.append(f"{name}/<{','.join(cycles) or 'e'}>:{rep.gelfand}")
        if not ok:
            bad.append(name)
    report(6, not bad, "; ".join(summary))


SURFACES = [SurfaceType(0, 1), SurfaceType(0, 2), SurfaceType(1, 1)]


def test_criterion_07_framed_counts():
    checked, bad = 0, []
    for name in BATTERY:
        G, _ = builtin_group(name)
        T = character_table(G)
        for label, X in battery_gsets(name):
            for S in SURFACES:
                count = framed_count(S, G, X, T)
                checked += 1
                ok = count == framed_count_brute(S, G, X)
                ok &= groupoid_volume(S, G, X, T) * G.order == count
                ok &= S.k > 0 or S.m > 1 or count == X.size
                if not ok:
                    bad.append((name, label, S.k, S.m))
    report(7, not bad, f"{checked} (group, G-set, surface) instances, mismatches {bad}")


def test_criterion_08_topology_invariance():
    G, X = builtin_group("S3")
    T = character_table(G)
    results = []
    for label, Y, mf in (("natural", X, True), ("regular", regular_gset(G), False)):
        for chi in (-1, -2):
            rep = topology_invariance_check(G, Y, chi, T)
            results.append((label, chi, rep["all_equal"], rep["multiplicity_free"] == mf and rep["consistent"]))
    ok = all(r[3] for r in results) and results[0][2] and not results[2][2]
    report(8, ok, ", ".join(f"{l} chi={c}: equal={e}" for l, c, e, _ in results))


def test_criterion_09_gl_flag_volumes():
    bad = []
    start = time.perf_counter()
    for n, q in ((2, 2), (2, 3), (2, 4), (3, 2)):
        G, X = builtin_group(f"GL{n}(F{q})")
        T = character_table(G)
        for S in SURFACES:
            vol = groupoid_volume(S, G, X, T)
            ok = vol == fg_vol_closed(n, S, "corrected", q=q)
            if S.euler_char <= 0:
                ok &= fg_epoly(n, S, "corrected")(q) == framed_count(S, G, X, T)
            literal = fg_vol_closed(n, S, "paper", q=q)
            ok &= vol / literal == Fraction(q) ** (-S.euler_char * n * (n - 1) // 2)
            if not ok:
                bad.append((n, q, S.k, S.m))
    qq = LaurentPoly.monomial(1)
    torus = SurfaceType(1, 1)
    G, X = builtin_group("GL2(F2)")
    spot = (int(groupoid_volume(torus, G, X)), framed_count(torus, G, X))
    symbolic = fg_vol_closed(2, torus) == (qq**2 - 1) ** 2
    elapsed = time.perf_counter() - start
    report(9, not bad and spot == (9, 54) and symbolic,
           f"vol/count at n=2,q=2 torus-minus-point {spot}, symbolic (q^2-1)^2 {symbolic}, "
           f"{elapsed:.1f}s, mismatches {bad}")


def test_criterion_10_unipotent_specht():
    reps = {(n, q): unipotent_multiplicity_check(n, q) for n, q in ((3, 2), (2, 3), (2, 2))}
    ok = all(r["ok"] for r in reps.values())
    obs = {k: [(o["dim"], o["multiplicity"]) for o in r["observed"]] for k, r in reps.items()}
    ok &= obs[(3, 2)] == [(1, 1), (6, 2), (8, 1)] and obs[(2, 3)] == [(1, 1), (3, 1)]
    degenerate = all(unipotent_dim(lam)(1) == specht_dim(lam) for n in range(1, 9) for lam in partitions(n))
    report(10, ok and degenerate,
           f"n=3,q=2: {obs[(3, 2)]}; n=2,q=3: {obs[(2, 3)]}; q->1 limit for n<=8: {degenerate}")


def test_criterion_11_spherical():
    lemma_bad = []
    for name in small(24):
        G, _ = builtin_group(name)
        if not all(sp_char_lemma_check(G)):
            lemma_bad.append(name)
    ratios, main_bad = set(), []
    for name in ("S3", "D4"):
        G, X = builtin_group(name)
        for k, m in ((0, 1), (1, 1)):
            rows = main_sph_table(G, X, k, m)
            ratios |= {r["ratio"] for r in rows if r["ratio"] is not None}
            if not all(r["equal"] for r in rows):
                main_bad.append((name, k, m))
    report(11, not lemma_bad and not main_bad and ratios == {1},
           f"lemma on {len(small(24))} groups, failures {lemma_bad}; main identity failures {main_bad}; "
           f"normalization |G|^-(m+2k) ratios {sorted(str(r) for r in ratios)}")


def test_criterion_12_determinism(tmp_path, capsys):
    cache = str(tmp_path / "cache")
    outputs = []
    for threads in ("1", "1", str(max(2, os.cpu_count() or 2))):
        builtin_group.cache_clear()
        code = main(["selftest", "--cache-dir", cache, "--threads", threads])
        outputs.append((code, capsys.readouterr().out))
    cold, warm, threaded = (o for _, o in outputs)
    passed = json.loads(cold)["results"]["passed"]
    ok = all(c == 0 for c, _ in outputs) and cold == warm == threaded
    report(12, ok, f"selftest cold/warm/threaded byte-identical={cold == warm == threaded}, {passed} checks")
