"""Acceptance suite. Each criterion prints one PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the summary alone, or
through pytest, where the lines are printed even when output is captured.
"""

from __future__ import annotations

import itertools
import random
import sys

import pytest

from torquiv import (
    cohomology_oracle,
    do_higher_self_exts_vanish,
    do_higher_self_exts_vanish_chain,
    do_higher_self_exts_vanish_twisted,
    forbidden_sets,
    full_str_exc_coll,
    higher_cohomology_vanishes,
    hom_dimension,
    quiver_of_sections,
    smooth_fano,
)
from torquiv import fanodb, lattice
from torquiv.positivity import bundles_nef_check
from torquiv.quiver import label, source, target
from torquiv.sections import format_monomial

RESULTS: dict[int, bool] = {}


def report(request, number: int, title: str, ok: bool, detail: str = "") -> None:
    RESULTS[number] = ok
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    capman = request.config.pluginmanager.getplugin("capturemanager") if request else None
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print("\n" + line)
    else:
        print(line)


@pytest.fixture(scope="module")
def dp6_quiver():
    X = smooth_fano(2, 4)
    return quiver_of_sections(X, full_str_exc_coll(2, 4))


# -- 1 ------------------------------------------------------------------------


def test_dp6_quiver_reproduction(request, dp6_quiver):
    Q = dp6_quiver
    got = {j: [format_monomial(label(a)) for a in arrows] for j, arrows in Q.arrows_from(0).items()}
    want = {1: ["x_0x_1", "x_3x_4"], 2: ["x_1x_2", "x_4x_5"], 3: ["x_2x_3", "x_0x_5"]}
    first = Q.arrows[0]
    first_triple = (source(first), target(first), format_monomial(label(first)))
    ok = got == want and first_triple == (0, 1, "x_0x_1")
    report(request, 1, "dP6 quiver reproduction", ok, f"vertex 0 arrows {got}, first arrow {first_triple}")
    assert ok


# -- 2 ------------------------------------------------------------------------


def test_dp6_forbidden_sets(request):
    fs = forbidden_sets(smooth_fano(2, 4))
    deg1 = {f.rays for f in fs.get(1, [])}
    deg2 = [f.rays for f in fs.get(2, [])]
    required = {(0, 2), (0, 3), (1, 3), (0, 1, 3), (0, 2, 3), (0, 4), (1, 4)}
    adjacent = {tuple(sorted((i, (i + 1) % 6))) for i in range(6)}
    missing = required - deg1
    bad_adjacent = adjacent & deg1
    ok = deg2 == [(0, 1, 2, 3, 4, 5)] and not missing and not bad_adjacent
    report(request, 2, "dP6 forbidden sets", ok,
           f"degree 2 {deg2}, {len(deg1)} degree-1 sets, missing {sorted(missing)}, adjacent {sorted(bad_adjacent)}")
    assert ok


# -- 3 ------------------------------------------------------------------------


def test_boolean_pipeline(request, dp6_quiver):
    Q = dp6_quiver
    values = {
        "self exts": do_higher_self_exts_vanish(Q),
        "chain 4,3,2,0": do_higher_self_exts_vanish_chain(Q, [4, 3, 2, 0]),
        "nef n=2": bundles_nef_check(Q, 2),
        "twist p=1": do_higher_self_exts_vanish_twisted(Q, 1),
        "chain + twist": do_higher_self_exts_vanish_chain(Q, [4, 3, 2, 0], 1),
    }
    ok = all(v is True for v in values.values())
    report(request, 3, "boolean pipeline", ok, ", ".join(f"{k}={v}" for k, v in values.items()))
    assert ok


# -- 4 and 5 ------------------------------------------------------------------

SWEEP_CAP = 10_000


def _sweep_classes(X, cap=None, seed=0):
    box = list(itertools.product(range(-5, 6), repeat=X.cl_rank))
    if cap is not None and len(box) > cap:
        box = random.Random(seed).sample(box, cap)
    return box


@pytest.fixture(scope="module")
def sweep():
    """Per variety: (checked, equivalence mismatches, duality mismatches)."""
    out = {}
    for name, key, cap in (("P2", (2, 0), None), ("P1xP1", (2, 1), None), ("dP6", (2, 4), SWEEP_CAP)):
        X = smooth_fano(*key)
        n = X.dim
        eq_bad, dual_bad = [], []
        classes = _sweep_classes(X, cap)
        for d in classes:
            D = X.lift(d)
            h = cohomology_oracle(X, D)
            if higher_cohomology_vanishes(X, d) != (not any(h[1:])) or h[0] != hom_dimension(X, d):
                eq_bad.append(d)
            dual = cohomology_oracle(X, [-1 - x for x in D])
            if any(h[i] != dual[n - i] for i in range(n + 1)):
                dual_bad.append(d)
        out[name] = (len(classes), eq_bad, dual_bad)
    return out


def test_oracle_equivalence_sweep(request, sweep):
    ok = all(not eq for _, eq, _ in sweep.values())
    detail = ", ".join(f"{k}: {len(eq)}/{n} mismatches" for k, (n, eq, _) in sweep.items())
    report(request, 4, "oracle equivalence sweep", ok, detail)
    assert ok


def test_serre_duality_sweep(request, sweep):
    ok = all(not dual for _, _, dual in sweep.values())
    detail = ", ".join(f"{k}: {len(dual)}/{n} mismatches" for k, (n, _, dual) in sweep.items())
    report(request, 5, "Serre duality", ok, detail)
    assert ok


# -- 6 ------------------------------------------------------------------------


def test_classical_p2_values(request):
    X = smooth_fano(2, 0)
    h_2 = cohomology_oracle(X, [2, 0, 0])
    h_m3 = cohomology_oracle(X, [-3, 0, 0])
    Q = quiver_of_sections(X, [(0,), (1,), (2,)])
    counts = (len(Q.arrows_between(0, 1)), len(Q.arrows_between(1, 2)), len(Q.arrows_between(0, 2)))
    se = do_higher_self_exts_vanish(Q)
    ok = h_2[0] == 6 and h_m3[2] == 1 and se and counts == (3, 3, 0)
    report(request, 6, "classical P2 values", ok,
           f"h0(O(2))={h_2[0]}, h2(O(-3))={h_m3[2]}, strong exceptional={se}, arrows={counts}")
    assert ok


# -- 7 ------------------------------------------------------------------------


def _snf_ok(A, m, n) -> bool:
    S = lattice.smith_normal_form(A, n)
    if lattice.matmul(lattice.matmul(S.P, A, n), S.Q, n) != S.D:
        return False
    if abs(lattice.determinant(S.P)) != 1 or abs(lattice.determinant(S.Q)) != 1:
        return False
    for i in range(m):
        for j in range(n):
            if i != j and S.D[i][j] != 0:
                return False
    d = S.diagonal
    if any(x < 0 for x in d):
        return False
    nz = [x for x in d if x]
    if d[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_snf_reassembly(request):
    rng = random.Random(12345)
    failures = 0
    for _ in range(1000):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        if rng.random() < 0.2 and m > 1:
            # force rank deficiency now and then
            A[-1] = [x + y for x, y in zip(A[0], A[-2])]
        if not _snf_ok(A, m, n):
            failures += 1
    ok = failures == 0
    report(request, 7, "randomized SNF reassembly", ok, f"{failures}/1000 failures")
    assert ok


# -- 8 ------------------------------------------------------------------------


def test_contraction_squares(request):
    db = fanodb.load_database(self_test=True)
    bad, edges = [], 0
    for (dim, s), entry in sorted(db.entries.items()):
        for t in entry.contractions:
            edges += 1
            Xs, Xt = db.smooth_fano(dim, s), db.smooth_fano(dim, t)
            maps = db.contraction_maps((dim, s), (dim, t))
            lhs = lattice.matmul(Xt.deg, maps.divisor_map, Xs.n_rays)
            rhs = lattice.matmul(maps.picard_map, Xs.deg, Xs.n_rays)
            if lhs != rhs:
                bad.append((dim, s, t))
    ok = edges > 0 and not bad
    report(request, 8, "contraction squares and database self-test", ok, f"{edges} edges, failing {bad}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
