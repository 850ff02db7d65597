"""Yetter-Drinfeld data over finite abelian groups and liftings of quantum Serre relations.

For i != j put chi_ij = chi_i^(m_ij+1) chi_j and g_ij = g_i^(m_ij+1) g_j.  In a
lifting H, ad(a_i)^(m_ij+1)(a_j) = lambda (1 - g_ij) and lambda can be nonzero
only when chi_ij is the trivial character.  ``lifting_case`` decides that
condition for a given datum and names the matching entry of the case table.
A ``liftable`` verdict means "not forced to zero", nothing more.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional, Sequence

import yaml

from .braiding import BraidingMatrix, cartan_type, m_entry, positive_roots
from .cyclotomic import MINUS_ONE, ONE, RootOfUnity, lcm
from .errors import InvalidArgument, ParseError

FORCED_ZERO = "forced-zero"
LIFTABLE = "liftable"
NOT_APPLICABLE = "not-applicable"
MISMATCH = "mismatch"

CASE_IDS = ("1i", "1ii", "2i", "2ii", "3i", "3ii", "3iii", "3iv", "4i")


# ---------------------------------------------------------------------------
# groups, characters, data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """Z/n_1 x ... x Z/n_k; elements are tuples of residues."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if not self.factors or any(n < 1 for n in self.factors):
            raise InvalidArgument(f"invalid cyclic factor orders {self.factors}")

    def element(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != len(self.factors):
            raise InvalidArgument(f"element {tuple(coords)} has wrong length for group {self.factors}")
        return tuple(int(c) % n for c, n in zip(coords, self.factors))

    def identity(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.factors)

    def generator(self, k: int) -> tuple[int, ...]:
        return self.element([int(t == k) for t in range(len(self.factors))])

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.element([x + y for x, y in zip(a, b)])

    def pow(self, a: Sequence[int], n: int) -> tuple[int, ...]:
        return self.element([n * x for x in a])

    @property
    def order(self) -> int:
        return math.prod(self.factors)


@dataclass(frozen=True)
class Character:
    """A character given by its values on the cyclic generators of its group."""

    group: AbelianGroup
    values: tuple[RootOfUnity, ...]

    def __post_init__(self):
        if len(self.values) != len(self.group.factors):
            raise InvalidArgument("character needs one value per cyclic factor")
        for v, n in zip(self.values, self.group.factors):
            if n % v.order:
                raise InvalidArgument(f"value {v} has order {v.order}, which does not divide the factor order {n}")

    def __call__(self, g: Sequence[int]) -> RootOfUnity:
        out = ONE
        for v, c in zip(self.values, g):
            out = out * v**c
        return out

    def __mul__(self, other: Character) -> Character:
        return Character(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def __pow__(self, n: int) -> Character:
        return Character(self.group, tuple(v**n for v in self.values))

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)


@dataclass(frozen=True)
class YDDatum:
    group: AbelianGroup
    g: tuple[tuple[int, ...], ...]
    chi: tuple[Character, ...]

    def __post_init__(self):
        if len(self.g) != len(self.chi) or not self.g:
            raise InvalidArgument("a datum needs the same positive number of group elements and characters")
        object.__setattr__(self, "g", tuple(self.group.element(x) for x in self.g))

    @property
    def rank(self) -> int:
        return len(self.g)

    def braiding(self) -> BraidingMatrix:
        n = self.rank
        return BraidingMatrix([[self.chi[j](self.g[i]) for j in range(n)] for i in range(n)])

    def to_json(self) -> dict:
        return {
            "factors": list(self.group.factors),
            "g": [list(x) for x in self.g],
            "chi": [[str(v) for v in c.values] for c in self.chi],
        }

    @classmethod
    def from_json(cls, data) -> YDDatum:
        try:
            group = AbelianGroup(tuple(data["factors"]))
            g = tuple(tuple(int(x) for x in row) for row in data["g"])
            chi = tuple(Character(group, tuple(RootOfUnity.parse(str(v)) for v in row)) for row in data["chi"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed datum: {exc}") from None
        return cls(group, g, chi)

    @classmethod
    def parse(cls, text: str) -> YDDatum:
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ParseError(f"cannot parse datum: {exc}") from None
        if not isinstance(data, dict):
            raise ParseError("datum must be a mapping with keys factors, g, chi")
        return cls.from_json(data)


def realize(B: BraidingMatrix) -> YDDatum:
    """Gamma = (Z/L)^theta, g_i the i-th generator and chi_j(g_i) = q_ij."""
    n = B.rank
    L = B.conductor
    group = AbelianGroup(tuple([L] * n))
    g = tuple(group.generator(i) for i in range(n))
    chi = tuple(Character(group, tuple(B[i, j] for i in range(n))) for j in range(n))
    return YDDatum(group, g, chi)


def chi_g_pair(D: YDDatum, i: int, j: int, m: Optional[int] = None) -> tuple[Character, tuple[int, ...]]:
    _check_pair(D.rank, i, j)
    if m is None:
        m = m_entry(D.braiding(), i, j)
        if m is None:
            raise InvalidArgument(f"m_{i + 1}{j + 1} is undefined")
    chi = (D.chi[i] ** (m + 1)) * D.chi[j]
    g = D.group.mul(D.group.pow(D.g[i], m + 1), D.g[j])
    return chi, g


def _check_pair(n: int, i: int, j: int):
    if i == j:
        raise InvalidArgument("the pair must have i != j")
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidArgument(f"pair ({i}, {j}) out of range for rank {n}")


# ---------------------------------------------------------------------------
# distinctness of (chi_ij, g_ij)
# ---------------------------------------------------------------------------


@dataclass
class LemmaCheck:
    applicable: bool
    holds: Optional[bool]
    witness: Optional[int] = None
    reason: str = ""


def lemma_distinct(D: YDDatum, i: int, j: int) -> LemmaCheck:
    """(chi_ij, g_ij) differs from every (chi_l, g_l); ``witness`` is a colliding l."""
    _check_pair(D.rank, i, j)
    B = D.braiding()
    m = m_entry(B, i, j)
    if m is None:
        return LemmaCheck(False, None, reason=f"m_{i + 1}{j + 1} is undefined")
    if (B[i, i] ** (m + 1)).is_one():
        return LemmaCheck(False, None, reason=f"q_{i + 1}{i + 1}^{m + 1} = 1")
    chi, g = chi_g_pair(D, i, j, m)
    for l in range(D.rank):
        if g == D.g[l] and chi.values == D.chi[l].values:
            return LemmaCheck(True, False, l, f"(chi_ij, g_ij) = (chi_{l + 1}, g_{l + 1})")
    return LemmaCheck(True, True)


def braiding_collision(B: BraidingMatrix, i: int, j: int) -> Optional[int]:
    """An index l whose row and column of B agree with those of (chi_ij, g_ij).

    This is necessary for (chi_ij, g_ij) = (chi_l, g_l) in any realization of B
    and sufficient in one where the characters are separated by the g's, so it
    tests distinctness independently of the chosen datum.
    """
    m = m_entry(B, i, j)
    if m is None:
        return None
    e = B.exps
    L = B.conductor
    n = B.rank
    for l in range(n):
        if all(((m + 1) * e[k][i] + e[k][j] - e[k][l]) % L == 0 for k in range(n)) and all(
            ((m + 1) * e[i][k] + e[j][k] - e[l][k]) % L == 0 for k in range(n)
        ):
            return l
    return None


# ---------------------------------------------------------------------------
# the case table
# ---------------------------------------------------------------------------


def _Q(a, b, c, d):
    return ((a, b), (c, d))


def _case_patterns(m: int, Q) -> list[str]:
    """Case ids whose pattern matches the 2x2 submatrix Q = ((q_ii, q_ij), (q_ji, q_jj))."""
    q, qj = Q[0][0], Q[1][1]
    hits = []
    if m == 3:
        if q.order == 7 and Q == _Q(q, q**3, q, q**3):
            hits.append("1i")
        if q.order == 8 and Q == _Q(q, MINUS_ONE, q, MINUS_ONE):
            hits.append("1ii")
    elif m == 2:
        if q.order == 5 and Q == _Q(q, q**2, q, q**2):
            hits.append("2i")
        if q.order == 6 and Q == _Q(q, MINUS_ONE, q, MINUS_ONE):
            hits.append("2ii")
    elif m == 1:
        mp = 1
        while 2 * mp + 1 <= qj.order:
            if qj.order == 2 * mp + 1 and Q == _Q(qj**mp, qj, qj**mp, qj):
                hits.append("3i")
            mp += 1
        if q.order == 4 and Q == _Q(q, MINUS_ONE, q, MINUS_ONE):
            hits.append("3ii")
        xi = qj
        if xi.order == 3 and Q == _Q(-xi, xi, -xi, xi):
            hits.append("3iii")
        # the second column is q^-2 = q^6 here; it is the only pattern compatible with m = 1
        if q.order == 8 and Q == _Q(q, q**6, q, q**6):
            hits.append("3iv")
    elif m == 0:
        if q.order > 1 and Q == _Q(q, q.inverse(), q, q.inverse()):
            hits.append("4i")
    return hits


@dataclass
class LiftVerdict:
    i: int
    j: int
    m: Optional[int]
    status: str
    case_id: Optional[str] = None
    Q: Optional[tuple] = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "i": self.i + 1,
            "j": self.j + 1,
            "m": self.m,
            "status": self.status,
            "case_id": self.case_id,
            "Q": [[str(x) for x in row] for row in self.Q] if self.Q else None,
            "reason": self.reason,
        }


def lifting_case(D: YDDatum, i: int, j: int) -> LiftVerdict:
    _check_pair(D.rank, i, j)
    B = D.braiding()
    Q = _Q(B[i, i], B[i, j], B[j, i], B[j, j])
    m = m_entry(B, i, j)
    if m is None:
        return LiftVerdict(i, j, None, NOT_APPLICABLE, Q=Q, reason=f"m_{i + 1}{j + 1} is undefined")
    if (B[i, i] ** (m + 1)).is_one():
        return LiftVerdict(i, j, m, NOT_APPLICABLE, Q=Q, reason=f"q_{i + 1}{i + 1}^{m + 1} = 1")
    chi, _ = chi_g_pair(D, i, j, m)
    if not chi.is_trivial():
        return LiftVerdict(i, j, m, FORCED_ZERO, Q=Q, reason="chi_ij is not trivial")
    hits = _case_patterns(m, Q)
    if len(hits) == 1:
        return LiftVerdict(i, j, m, LIFTABLE, hits[0], Q, "chi_ij is trivial")
    if not hits:
        return LiftVerdict(i, j, m, MISMATCH, None, Q, "chi_ij is trivial but no case of the table matches")
    return LiftVerdict(i, j, m, MISMATCH, "/".join(hits), Q, "several cases match")


def lifting_table(D: YDDatum) -> list[LiftVerdict]:
    return [lifting_case(D, i, j) for i in range(D.rank) for j in range(D.rank) if i != j]


# ---------------------------------------------------------------------------
# desk-scale scan over rank 2
# ---------------------------------------------------------------------------


@dataclass
class ScanRow:
    braiding: BraidingMatrix
    verdict: LiftVerdict

    def csv_fields(self) -> list[str]:
        B = self.braiding
        v = self.verdict
        return [str(B[0, 0]), str(B[0, 1]), str(B[1, 0]), str(B[1, 1]), str(v.i + 1), str(v.j + 1), str(v.m), v.status, v.case_id or ""]


@dataclass
class ScanResult:
    n_max: int
    rows: list[ScanRow] = field(default_factory=list)
    diagrams: int = 0
    standard_diagrams: int = 0
    braidings: int = 0
    pairs: int = 0
    lemma_checked: int = 0
    lemma_failures: list[tuple[BraidingMatrix, int, int, int]] = field(default_factory=list)

    @property
    def mismatches(self) -> list[ScanRow]:
        return [r for r in self.rows if r.verdict.status == MISMATCH]

    @property
    def liftable(self) -> list[ScanRow]:
        return [r for r in self.rows if r.verdict.status == LIFTABLE]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q11", "q12", "q21", "q22", "i", "j", "m", "verdict", "case_id"])
        for r in self.rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()


def _order(e: int, M: int) -> int:
    return M // math.gcd(e, M)


def _m_exp(a: int, p: int, M: int) -> Optional[int]:
    if a == 0:
        return 0 if p == 0 else None
    n = _order(a, M)
    for m in range(n):
        if (m * a + p) % M == 0 or (m + 1) % n == 0:
            return m
    return None


_RANK2_ROOTS: dict = {}


def _rank2_finite_standard(a: int, b: int, p: int, M: int, cap: int = 64) -> bool:
    """Standard of finite type with all q_alpha != 1, for the rank-2 diagram (a, b, p).

    Exponents are taken modulo M.  Reflections act on (q11, q22, q12 q21) by
    s_1: (x, y, r) -> (x, y r^m x^(m^2), (r x^(2m))^-1) and symmetrically for s_2.
    """
    m0 = (_m_exp(a, p, M), _m_exp(b, p, M))
    if None in m0:
        return False
    start = (a % M, b % M, p % M)
    seen = {start}
    stack = [start]
    while stack:
        x, y, r = stack.pop()
        m1, m2 = _m_exp(x, r, M), _m_exp(y, r, M)
        if (m1, m2) != m0:
            return False
        for nxt in (
            (x, (y + m1 * r + m1 * m1 * x) % M, (-(r + 2 * m1 * x)) % M),
            ((x + m2 * r + m2 * m2 * y) % M, y, (-(r + 2 * m2 * y)) % M),
        ):
            if nxt not in seen:
                if len(seen) >= cap:
                    return False
                seen.add(nxt)
                stack.append(nxt)
    if m0 not in _RANK2_ROOTS:
        C = ((2, -m0[0]), (-m0[1], 2))
        _RANK2_ROOTS[m0] = positive_roots(C) if cartan_type(C) != "NotFinite" else None
    roots = _RANK2_ROOTS[m0]
    if roots is None:
        return False
    return all((u * u * a + v * v * b + u * v * p) % M for u, v in roots)


def scan_liftable(n_max: int, check_lemma: bool = True) -> ScanResult:
    """Every rank-2 braiding with entries of order <= n_max that is standard of finite
    type with finite-dimensional Nichols algebra; rows with chi_ij trivial are reported.

    Diagrams are visited once up to swapping the vertices; all their realizations
    (q_12, q_21) with the same product are then classified pair by pair.
    """
    if n_max < 2:
        raise InvalidArgument("n_max must be at least 2")
    M = reduce(lcm, range(1, n_max + 1), 1)
    roots = sorted({(k * (M // n)) % M for n in range(1, n_max + 1) for k in range(n) if math.gcd(k, n) == 1})
    rootset = set(roots)
    sums = sorted({(x + y) % M for x in roots for y in roots})
    res = ScanResult(n_max)
    seen_rows = set()

    def rou(e):
        return RootOfUnity(e, M)

    for ia, a in enumerate(roots):
        if a == 0:
            continue
        oa = _order(a, M)
        for b in roots[ia:]:
            if b == 0:
                continue
            ob = _order(b, M)
            if oa <= 4 and ob <= 4:
                pcands = sums
            else:
                pa = {(-k * a) % M for k in range(4)} if oa > 4 else None
                pb = {(-k * b) % M for k in range(4)} if ob > 4 else None
                pcands = sorted(pa & pb if pa is not None and pb is not None else (pa if pb is None else pb))
            for p in pcands:
                m12 = _m_exp(a, p, M)
                m21 = _m_exp(b, p, M)
                if m12 is None or m21 is None or m12 * m21 > 3 or (m12 == 0) != (m21 == 0):
                    continue
                res.diagrams += 1
                if not _rank2_finite_standard(a, b, p, M):
                    continue
                res.standard_diagrams += 1
                ms = {(0, 1): m12, (1, 0): m21}
                for x in roots:
                    y = (p - x) % M
                    if y not in rootset:
                        continue
                    e = [[a, x], [y, b]]
                    res.braidings += 1
                    B = None
                    for i, j in ((0, 1), (1, 0)):
                        m = ms[(i, j)]
                        if ((m + 1) * e[i][i]) % M == 0:
                            continue
                        res.pairs += 1
                        if check_lemma:
                            res.lemma_checked += 1
                            # collision with l = i or l = j, on rows and columns
                            for l in (i, j):
                                if all(((m + 1) * e[k][i] + e[k][j] - e[k][l]) % M == 0 for k in (0, 1)) and all(
                                    ((m + 1) * e[i][k] + e[j][k] - e[l][k]) % M == 0 for k in (0, 1)
                                ):
                                    B = B or BraidingMatrix([[rou(v) for v in r] for r in e])
                                    res.lemma_failures.append((B, i, j, l))
                        trivial = ((m + 1) * e[i][i] + e[i][j]) % M == 0 and ((m + 1) * e[j][i] + e[j][j]) % M == 0
                        if not trivial:
                            continue
                        B = B or BraidingMatrix([[rou(v) for v in r] for r in e])
                        key = (B, i, j)
                        if key in seen_rows:
                            continue
                        seen_rows.add(key)
                        res.rows.append(ScanRow(B, lifting_case(realize(B), i, j)))
    res.rows.sort(key=lambda r: (r.verdict.case_id or "", r.verdict.status, r.braiding.to_inline(), r.verdict.i))
    return res
