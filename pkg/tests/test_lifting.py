import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidkit.braiding import BraidingMatrix, cartan_type, is_standard, m_entry, positive_roots, root_scalar
from braidkit.cyclotomic import MINUS_ONE, RootOfUnity
from braidkit.errors import InvalidArgument, ParseError
from braidkit.lifting import (
    FORCED_ZERO,
    LIFTABLE,
    MISMATCH,
    NOT_APPLICABLE,
    AbelianGroup,
    Character,
    YDDatum,
    _m_exp,
    _rank2_finite_standard,
    braiding_collision,
    chi_g_pair,
    lemma_distinct,
    lifting_case,
    lifting_table,
    realize,
    scan_liftable,
)
from strategies import braidings

A2_G3 = "1/3,2/3;1,1/3"
D3 = "1/2,1/2;1,1/2"
B2_G5 = "1/5,3/5;1,2/5"


def B(text):
    return BraidingMatrix.parse_inline(text)


def test_realize_rank1():
    D = realize(B("-1"))
    assert D.group.factors == (2,)
    assert D.g == ((1,),)
    assert D.chi[0](D.g[0]) == MINUS_ONE


def test_realize_a2():
    M = B(A2_G3)
    D = realize(M)
    assert D.group.factors == (3, 3)
    for i in range(2):
        for j in range(2):
            assert D.chi[j](D.g[i]) == M[i, j]


@given(braidings(1, 4, 12))
def test_realize_round_trip(M):
    assert realize(M).braiding() == M


def test_group_and_character_validation():
    G = AbelianGroup((4, 6))
    assert G.mul((3, 5), (2, 2)) == (1, 1)
    assert G.pow((1, 5), 3) == (3, 3)
    assert G.order == 24
    with pytest.raises(InvalidArgument):
        AbelianGroup((0,))
    with pytest.raises(InvalidArgument):
        Character(G, (RootOfUnity(1, 3), RootOfUnity(1, 3)))
    with pytest.raises(InvalidArgument):
        G.element((1,))


def test_datum_parse_and_json():
    text = '{factors: [4], g: [[1], [1]], chi: [["1/4"], ["1/2"]]}'
    D = YDDatum.parse(text)
    assert D.braiding() == B("1/4,1/2;1/4,1/2")
    assert YDDatum.from_json(D.to_json()) == D
    with pytest.raises(ParseError):
        YDDatum.parse("{factors: [4]}")
    with pytest.raises(ParseError):
        YDDatum.parse("[1, 2]")


def test_chi_g_pair_examples():
    D = realize(B("1/5,1;1,4/5"))
    chi, g = chi_g_pair(D, 0, 1)
    assert g == D.group.mul(D.g[0], D.g[1])
    assert chi == D.chi[0] * D.chi[1]
    D = realize(B(A2_G3))
    chi, g = chi_g_pair(D, 0, 1)
    assert g == (2, 1)
    assert chi == (D.chi[0] ** 2) * D.chi[1]


@given(braidings(2, 3, 8))
def test_chi_g_evaluation_identity(M):
    D = realize(M)
    for i in range(M.rank):
        for j in range(M.rank):
            if i == j or m_entry(M, i, j) is None:
                continue
            m = m_entry(M, i, j)
            chi, _ = chi_g_pair(D, i, j)
            assert chi(D.g[i]) == M[i, i] ** (m + 1) * M[i, j]


def test_lemma_distinct_examples():
    assert lemma_distinct(realize(B(A2_G3)), 0, 1).holds is True
    check = lemma_distinct(realize(B(D3)), 0, 1)
    assert not check.applicable and check.holds is None
    assert lemma_distinct(realize(B(B2_G5)), 0, 1).holds is True


@given(braidings(2, 3, 8))
def test_lemma_distinct_on_random_braidings(M):
    D = realize(M)
    for i in range(M.rank):
        for j in range(M.rank):
            if i == j:
                continue
            check = lemma_distinct(D, i, j)
            if check.applicable:
                assert check.holds is True


def test_collision_outside_finite_type():
    # q_11 = 1: the datum g_1 = 1, chi_1 = trivial realizes this braiding and
    # then (chi_21, g_21) = (chi_2, g_2); the canonical realization separates them
    M = B("1,1;1,1/2")
    assert braiding_collision(M, 1, 0) == 1
    G = AbelianGroup((2,))
    D = YDDatum(G, ((0,), (1,)), (Character(G, (RootOfUnity(0, 1),)), Character(G, (MINUS_ONE,))))
    assert D.braiding() == M
    check = lemma_distinct(D, 1, 0)
    assert check.holds is False and check.witness == 1
    assert lemma_distinct(realize(M), 1, 0).holds is True
    assert braiding_collision(B(A2_G3), 0, 1) is None


def _Q(a, b, c, d):
    return BraidingMatrix([[a, b], [c, d]])


def fixtures():
    out = []
    for k in (1, 2, 3, 4, 5, 6):
        q = RootOfUnity(k, 7)
        out.append(("1i", _Q(q, q**3, q, q**3)))
    for k in (1, 3, 5, 7):
        x = RootOfUnity(k, 8)
        out.append(("1ii", _Q(x, MINUS_ONE, x, MINUS_ONE)))
    for k in (1, 2, 3, 4):
        q = RootOfUnity(k, 5)
        out.append(("2i", _Q(q, q**2, q, q**2)))
    for k in (1, 5):
        q = RootOfUnity(k, 6)
        out.append(("2ii", _Q(q, MINUS_ONE, q, MINUS_ONE)))
    for mp in (1, 2, 3, 4):
        n = 2 * mp + 1
        for k in range(1, n):
            if math.gcd(k, n) == 1:
                q = RootOfUnity(k, n)
                out.append(("3i", _Q(q**mp, q, q**mp, q)))
    for k in (1, 3):
        q = RootOfUnity(k, 4)
        out.append(("3ii", _Q(q, MINUS_ONE, q, MINUS_ONE)))
    for k in (1, 2):
        x = RootOfUnity(k, 3)
        out.append(("3iii", _Q(-x, x, -x, x)))
    for N in range(2, 13):
        for k in range(1, N):
            if math.gcd(k, N) == 1:
                q = RootOfUnity(k, N)
                out.append(("4i", _Q(q, q.inverse(), q, q.inverse())))
    return out


@pytest.mark.parametrize("case,M", fixtures(), ids=lambda x: x if isinstance(x, str) else x.to_inline())
def test_listed_patterns_are_liftable(case, M):
    v = lifting_case(realize(M), 0, 1)
    assert v.status == LIFTABLE
    assert v.case_id == case


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_corrected_g8_pattern_is_liftable(k):
    q = RootOfUnity(k, 8)
    M = _Q(q, q**6, q, q**6)
    v = lifting_case(realize(M), 0, 1)
    assert (v.status, v.case_id, v.m) == (LIFTABLE, "3iv", 1)
    std, C = is_standard(M)
    assert std and cartan_type(C) == "G2"


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_printed_g8_pattern_has_m_five(k):
    # the printed second column q^2 forces m = 5, outside the m = 1 case
    q = RootOfUnity(k, 8)
    v = lifting_case(realize(_Q(q, q**2, q, q**2)), 0, 1)
    assert v.m == 5
    assert v.status == MISMATCH


def test_forced_zero_example():
    q = RootOfUnity(1, 4)
    M = _Q(q, MINUS_ONE, q, q)
    assert M[0, 1] * M[1, 0] == q.inverse()
    v = lifting_case(realize(M), 0, 1)
    assert v.status == FORCED_ZERO
    chi, _ = chi_g_pair(realize(M), 0, 1)
    D = realize(M)
    assert chi(D.g[1]) == RootOfUnity(3, 4)


def test_not_applicable_cases():
    v = lifting_case(realize(B(D3)), 0, 1)
    assert v.status == NOT_APPLICABLE
    v = lifting_case(realize(B("1,1/3;1,1/5")), 0, 1)
    assert v.status == NOT_APPLICABLE and v.m is None
    with pytest.raises(InvalidArgument):
        lifting_case(realize(B(A2_G3)), 0, 0)


def test_liftability_depends_on_the_realization():
    q = RootOfUnity(1, 5)
    M = _Q(q, q**2, q, q**2)
    assert lifting_case(realize(M), 0, 1).status == LIFTABLE
    G = AbelianGroup((5, 5))
    # same braiding, realized with g_2 = g_1^2 h for an extra generator h
    D = YDDatum(G, ((1, 0), (1, 1)), (Character(G, (q, RootOfUnity(0, 1))), Character(G, (q**2, RootOfUnity(0, 1)))))
    assert D.braiding() == _Q(q, q**2, q, q**2)
    assert lifting_case(D, 0, 1).status == LIFTABLE


@given(braidings(2, 3, 8))
def test_liftable_only_with_trivial_character(M):
    D = realize(M)
    for v in lifting_table(D):
        if v.status == LIFTABLE:
            chi, _ = chi_g_pair(D, v.i, v.j)
            assert all(chi(gen).is_one() for gen in (D.group.generator(t) for t in range(len(D.group.factors))))


def test_table_covers_all_ordered_pairs():
    D = realize(B("1/2,1/3,1;1,1/2,2/3;1,1,1/3"))
    assert [(v.i, v.j) for v in lifting_table(D)] == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]


def test_scan_small_orders():
    res = scan_liftable(2)
    assert res.rows
    assert {r.verdict.case_id for r in res.rows} == {"4i"}
    assert all(r.braiding[0, 0] == MINUS_ONE and r.verdict.m == 0 for r in res.rows)
    with pytest.raises(InvalidArgument):
        scan_liftable(1)


def test_scan_seven_contains_first_case():
    res = scan_liftable(7)
    assert "1i" in {r.verdict.case_id for r in res.liftable}
    assert not res.mismatches


def test_scan_six_contains_g3_case():
    res = scan_liftable(6)
    assert "3iii" in {r.verdict.case_id for r in res.liftable}


def test_scan_eight_covers_all_cases():
    res = scan_liftable(8)
    assert {r.verdict.case_id for r in res.liftable} == {"1i", "1ii", "2i", "2ii", "3i", "3ii", "3iii", "3iv", "4i"}
    assert not res.mismatches
    assert not res.lemma_failures
    csv_text = res.to_csv()
    assert csv_text.splitlines()[0] == "q11,q12,q21,q22,i,j,m,verdict,case_id"
    assert res.to_csv() == scan_liftable(8).to_csv()


def _generic_finite_standard(M):
    std, C = is_standard(M)
    if not std or cartan_type(C) == "NotFinite":
        return False
    return all(not root_scalar(M, a).is_one() for a in positive_roots(C))


EXPONENTS = sorted({(k * (840 // n)) % 840 for n in range(1, 9) for k in range(n)})


@given(st.sampled_from(EXPONENTS[1:]), st.sampled_from(EXPONENTS[1:]), st.sampled_from(EXPONENTS))
def test_fast_standardness_agrees_with_groupoid(a, b, p):
    M = BraidingMatrix([[RootOfUnity(a, 840), RootOfUnity(p, 840)], [RootOfUnity(0, 1), RootOfUnity(b, 840)]])
    m12, m21 = _m_exp(a, p, 840), _m_exp(b, p, 840)
    if m12 is None or m21 is None or m12 * m21 > 3 or (m12 == 0) != (m21 == 0):
        assert not _generic_finite_standard(M)
        return
    assert _rank2_finite_standard(a, b, p, 840) == _generic_finite_standard(M)
