"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or directly
with ``python3 tests/test_acceptance.py``.  Criteria that the implementation
cannot meet as stated are marked strict xfail; their FAIL line still prints.
"""

from __future__ import annotations

import json
import math
import os
import random
import sys
import time
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from braidkit.braiding import (  # noqa: E402
    BraidingMatrix,
    DynkinDiagram,
    braiding_from_diagram,
    cartan_type,
    groupoid_points,
    is_standard,
    positive_roots,
)
from braidkit.cli import main  # noqa: E402
from braidkit.cyclotomic import MINUS_ONE, CycNumber, RootOfUnity  # noqa: E402
from braidkit.lifting import CASE_IDS, LIFTABLE, MISMATCH, lemma_distinct, lifting_case, realize, scan_liftable  # noqa: E402
from braidkit.relations import presentation, quantum_serre, quotient_dimensions  # noqa: E402
from braidkit.tensoralgebra import (  # noqa: E402
    NCPoly,
    braid_swap,
    coproduct,
    hilbert_series,
    letter,
    nichols_algebra,
    words_of_length,
)


def report(number: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


def B(text: str) -> BraidingMatrix:
    return BraidingMatrix.parse_inline(text)


@lru_cache(maxsize=1)
def scan24():
    t = time.perf_counter()
    res = scan_liftable(24)
    return res, time.perf_counter() - t


# ---------------------------------------------------------------------------


def check_1():
    import contextlib
    import io

    t = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["enumerate", "--order", "5", "--filter", "standard-A2", "--format", "json"])
    elapsed = time.perf_counter() - t
    diagrams = json.loads(buf.getvalue())["diagrams"]
    families = [d["family"] for d in diagrams]
    ok = code == 0 and None not in families and set(families) == {"D1", "D2", "D3", "D4"} and elapsed < 5
    return ok, f"standard A_2 over G_5: {len(diagrams)} diagrams in classes {sorted(set(map(str, families)))} ({elapsed:.2f}s)"


def check_2():
    t = time.perf_counter()
    bad = []
    for N in range(2, 7):
        for k in range(1, N):
            if math.gcd(k, N) != 1:
                continue
            got = hilbert_series(BraidingMatrix([[RootOfUnity(k, N)]]), N + 3)
            if got != oracles.rank1_hilbert(k, N, N + 3) or got != [1] * N + [0] * 4:
                bad.append((k, N))
    elapsed = time.perf_counter() - t
    return not bad and elapsed < 1, f"rank-1 truncation for N=2..6, mismatches {bad} ({elapsed:.2f}s)"


def check_3():
    t = time.perf_counter()
    M = B("1/3,2/3;1,1/3")
    series = hilbert_series(M, 12)
    total = sum(series)
    top = max(n for n, d in enumerate(series) if d)
    rels = [r.element for r in presentation(M) if r.applicable and r.degree <= 7]
    quot = quotient_dimensions(M, rels, 7)
    elapsed = time.perf_counter() - t
    ok = total == 27 and top == 6 and series[top] == 1 and quot == series[:8] and elapsed < 60
    detail = f"A_2 at G_3: total {total}, top degree {top} (expected 6), top dim {series[top]}, quotient dims match through 7: {quot == series[:8]} ({elapsed:.1f}s)"
    return ok, detail


def check_4():
    t = time.perf_counter()
    labels = sorted({RootOfUnity(k, n) for n in range(1, 9) for k in range(n) if math.gcd(k, n) == 1})
    seen = set()
    braidings = pairs = 0
    failures = []
    for a in labels:
        for b in labels:
            for e in labels:
                d = DynkinDiagram((a, b), frozenset() if e.is_one() else frozenset({(0, 1, e)}))
                key = d.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                M = braiding_from_diagram(d)
                std, C = is_standard(M)
                if not std or cartan_type(C) == "NotFinite":
                    continue
                braidings += 1
                na = nichols_algebra(M)
                for i, j in ((0, 1), (1, 0)):
                    r = quantum_serre(M, i, j)
                    if not r.applicable:
                        continue
                    pairs += 1
                    if not na.contains(r.element):
                        failures.append((M.to_inline(), i, j))
    elapsed = time.perf_counter() - t
    ok = not failures and braidings > 0 and elapsed < 600
    return ok, f"quantum Serre in I(V): {braidings} standard finite-type braidings, {pairs} pairs, {len(failures)} failures ({elapsed:.1f}s)"


def check_5():
    samples = {"A2": "1/3,2/3;1,1/3", "B2": "1/3,1/3;1,2/3", "G2": "1/4,1/4;1,3/4"}
    t = time.perf_counter()
    failures = []
    counted = 0
    for kind, text in samples.items():
        M = B(text)
        std, C = is_standard(M)
        assert std and cartan_type(C) == kind
        na = nichols_algebra(M)
        for r in presentation(M, C):
            if r.applicable and r.degree <= 8:
                counted += 1
                if not na.contains(r.element):
                    failures.append(f"{kind}:{r.label}")
    elapsed = time.perf_counter() - t
    return not failures, f"{counted} relations of degree <= 8 for A_2, B_2, G_2; outside I(V): {failures or 'none'} ({elapsed:.1f}s)"


def _braid_equation_holds(M: BraidingMatrix) -> bool:
    rank = M.rank
    words = [w for n in range(7) for w in words_of_length(rank, n)]
    for u in words:
        for v in words:
            if len(u) + len(v) > 6:
                continue
            for w in words:
                if len(u) + len(v) + len(w) > 6:
                    continue
                s1, (a, b) = braid_swap(M, u, v)
                s2, (c, d) = braid_swap(M, b, w)
                s3, (e, f) = braid_swap(M, a, c)
                left = (s1 * s2 * s3, (e, f, d))
                t1, (a2, b2) = braid_swap(M, v, w)
                t2, (c2, d2) = braid_swap(M, u, a2)
                t3, (e2, f2) = braid_swap(M, d2, b2)
                right = (t1 * t2 * t3, (c2, e2, f2))
                if left != right:
                    return False
    return True


def _coassociative(M: BraidingMatrix, n_max: int) -> bool:
    zero = CycNumber.zero(M.conductor)
    for n in range(n_max + 1):
        for w in words_of_length(M.rank, n):
            d = coproduct(NCPoly.word(M, w))
            left, right = {}, {}
            for (a, b), x in d.terms.items():
                for (a1, a2), y in coproduct(NCPoly.word(M, a)).terms.items():
                    left[(a1, a2, b)] = left.get((a1, a2, b), zero) + x * y
                for (b1, b2), y in coproduct(NCPoly.word(M, b)).terms.items():
                    right[(a, b1, b2)] = right.get((a, b1, b2), zero) + x * y
            if {k: v for k, v in left.items() if not v.is_zero()} != {k: v for k, v in right.items() if not v.is_zero()}:
                return False
    return True


def _multiplicative(M: BraidingMatrix, rng: random.Random, trials: int) -> bool:
    for _ in range(trials):
        u = tuple(rng.randrange(M.rank) for _ in range(rng.randint(0, 3)))
        v = tuple(rng.randrange(M.rank) for _ in range(rng.randint(0, 3)))
        pu, pv = NCPoly.word(M, u), NCPoly.word(M, v)
        if coproduct(pu * pv) != coproduct(pu) * coproduct(pv):
            return False
    return True


def _ideal_closed(M: BraidingMatrix, D: int) -> bool:
    na = nichols_algebra(M)
    for n in range(2, D):
        for r in na.ideal_basis(n):
            for i in range(M.rank):
                x = letter(M, i)
                if not (na.contains(x * r) and na.contains(r * x)):
                    return False
    return True


def check_6():
    t = time.perf_counter()
    rng = random.Random(20240611)
    samples = ["1/3,2/3;1,1/3", "1/7,2/5;3/4,1/9", "1/5,4/5;1,1/2", "1/4,1/4;1,3/4", "1/2,1/3;1/6,1/2"]
    braid = all(_braid_equation_holds(B(s)) for s in samples)
    coassoc = all(_coassociative(B(s), 5) for s in samples[:3])
    mult = all(_multiplicative(B(s), rng, 10) for s in samples)
    closed = all(_ideal_closed(B(s), 5) for s in samples if B(s).conductor <= 24)
    elapsed = time.perf_counter() - t
    ok = braid and coassoc and mult and closed and elapsed < 120
    return ok, f"braid equation {braid}, coassociativity {coassoc}, multiplicativity {mult}, ideal closure {closed} ({elapsed:.1f}s)"


def check_7():
    samples = {"A2": ("1/5,4/5;1,1/2", 3), "B2": ("1/5,3/5;1,2/5", 4), "G2": ("1/4,1/4;1,3/4", 6)}
    found = {}
    ok = True
    for kind, (text, count) in samples.items():
        M = B(text)
        res = groupoid_points(M)
        std, C = is_standard(M)
        n = len(positive_roots(C)) if std else None
        found[kind] = n
        ok &= not res.overflow and std is True and cartan_type(C) == kind and n == count
    undefined = is_standard(B("1,1/3;1,1/5"))
    ok &= undefined == (False, None)
    return ok, f"|Δ_+| = {found}; undefined-m fixture standard: {undefined[0]}"


def _verbatim_fixtures():
    q7, x8, q5, q6 = RootOfUnity(1, 7), RootOfUnity(1, 8), RootOfUnity(1, 5), RootOfUnity(1, 6)
    q5b, q4, xi, q8 = RootOfUnity(1, 5), RootOfUnity(1, 4), RootOfUnity(1, 3), RootOfUnity(1, 8)
    q9 = RootOfUnity(1, 9)

    def Q(a, b):
        return BraidingMatrix([[a, b], [a, b]])

    return [
        ("1i", Q(q7, q7**3)),
        ("1ii", Q(x8, MINUS_ONE)),
        ("2i", Q(q5, q5**2)),
        ("2ii", Q(q6, MINUS_ONE)),
        ("3i", Q(q9**4, q9)),
        ("3i", Q(q5b**2, q5b)),
        ("3ii", Q(q4, MINUS_ONE)),
        ("3iii", Q(-xi, xi)),
        ("3iv", Q(q8, q8**2)),
        ("4i", Q(q6, q6.inverse())),
    ]


def check_8():
    t = time.perf_counter()
    wrong = []
    for case, M in _verbatim_fixtures():
        v = lifting_case(realize(M), 0, 1)
        if v.status != LIFTABLE or v.case_id != case:
            wrong.append(f"{case}->{v.status}(m={v.m})")
    res, scan_time = scan24()
    mismatches = [r for r in res.rows if r.verdict.status == MISMATCH]
    unlisted = [r for r in res.liftable if r.verdict.case_id not in CASE_IDS]
    elapsed = time.perf_counter() - t
    ok = not wrong and not mismatches and not unlisted and scan_time < 300
    detail = (
        f"verbatim fixtures wrong: {wrong or 'none'}; scan --nmax 24: {len(res.liftable)} liftable rows, "
        f"{len(mismatches)} mismatches, {len(unlisted)} unlisted ({scan_time:.1f}s scan, {elapsed:.1f}s total)"
    )
    return ok, detail


def check_9():
    res, _ = scan24()
    failures = list(res.lemma_failures)
    # also on the datum level for every classified row
    for r in res.rows:
        D = realize(r.braiding)
        c = lemma_distinct(D, r.verdict.i, r.verdict.j)
        if c.applicable and c.holds is False:
            failures.append((r.braiding, r.verdict.i, r.verdict.j, c.witness))
    return not failures, f"distinctness checked on {res.lemma_checked} pairs over {res.braidings} braidings; failures {len(failures)}"


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8, 9: check_9}

UNATTAINABLE = {
    3: "the A_2 Nichols algebra at q in G_3 has top degree 8, not 6",
    5: "the G_2 relation [x_k,[x_k^2 x_j x_k x_j]_c]_c is not in I(V)",
    8: "the printed (3)(iv) matrix gives m = 5, so the verbatim fixture is not liftable for m = 1",
}


def _run(number: int):
    ok, detail = CHECKS[number]()
    report(number, ok, detail)
    assert ok, detail


def _param(n):
    if n in UNATTAINABLE:
        return pytest.param(n, marks=pytest.mark.xfail(strict=True, reason=UNATTAINABLE[n]))
    return n


@pytest.mark.parametrize("number", [_param(n) for n in sorted(CHECKS)])
def test_criterion(number):
    _run(number)


if __name__ == "__main__":
    failed = 0
    for n in sorted(CHECKS):
        ok, detail = CHECKS[n]()
        report(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
