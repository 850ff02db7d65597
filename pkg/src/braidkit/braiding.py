"""Diagonal braidings, generalized Dynkin diagrams and the Weyl groupoid.

A braiding matrix ``q`` defines the bicharacter chi on Z^theta with
chi(e_i, e_j) = q_ij.  Changing the basis F of Z^theta and reading chi on the
new basis gives the points of the Weyl groupoid; a braiding is *standard* when
the m-matrix is defined and identical at every point reached by reflections.

Vertices are 0-based in this module.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cyclotomic import ONE, RootOfUnity, lcm
from .errors import InvalidArgument, ParseError, ReflectionUndefined

CartanMatrix = tuple[tuple[int, ...], ...]
MMatrix = tuple[tuple[Optional[int], ...], ...]

DEFAULT_MAX_POINTS = 10000


class BraidingMatrix:
    """A theta x theta matrix (q_ij) of roots of unity.

    Besides the entries it caches the common conductor ``L`` and the integer
    exponents ``e_ij`` with q_ij = zeta_L^e_ij, which the tensor algebra uses
    for fast bicharacter evaluation.
    """

    __slots__ = ("q", "rank", "conductor", "exps")

    def __init__(self, entries: Iterable[Iterable[RootOfUnity | str]]):
        rows = []
        for r, row in enumerate(entries):
            cur = []
            for c, x in enumerate(row):
                if isinstance(x, RootOfUnity):
                    cur.append(x)
                else:
                    try:
                        cur.append(RootOfUnity.parse(x))
                    except ParseError as exc:
                        raise ParseError(f"entry at row {r + 1}, column {c + 1}: {exc}") from None
            rows.append(tuple(cur))
        n = len(rows)
        if n == 0:
            raise InvalidArgument("braiding matrix must have rank at least 1")
        for r, row in enumerate(rows):
            if len(row) != n:
                raise InvalidArgument(f"braiding matrix is not square: row {r + 1} has {len(row)} entries, expected {n}")
        self.q = tuple(rows)
        self.rank = n
        L = lcm(*(x.den for row in rows for x in row))
        self.conductor = L
        self.exps = tuple(tuple(x.num * (L // x.den) for x in row) for row in rows)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> BraidingMatrix:
        return cls(rows)

    @classmethod
    def parse_inline(cls, text: str) -> BraidingMatrix:
        """Parse the inline syntax ``"1/3,2/3;1/3,1/3"``."""
        rows = [[x for x in row.split(",")] for row in text.strip().split(";") if row.strip()]
        return cls(rows)

    def __getitem__(self, ij: tuple[int, int]) -> RootOfUnity:
        i, j = ij
        return self.q[i][j]

    def __eq__(self, other):
        return isinstance(other, BraidingMatrix) and self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __reduce__(self):
        return (BraidingMatrix, (self.q,))

    def __repr__(self) -> str:
        return f"BraidingMatrix({self.to_strings()})"

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.q]

    def to_inline(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.q)

    def chi(self, a: Sequence[int], b: Sequence[int]) -> RootOfUnity:
        """The bicharacter chi(a, b) = prod q_ij^(a_i b_j)."""
        return RootOfUnity(self.chi_exp(a, b), self.conductor)

    def chi_exp(self, a: Sequence[int], b: Sequence[int]) -> int:
        e = self.exps
        return sum(ai * bj * e[i][j] for i, ai in enumerate(a) if ai for j, bj in enumerate(b) if bj) % self.conductor

    def word_chi_exp(self, u: Sequence[int], v: Sequence[int]) -> int:
        e = self.exps
        return sum(e[a][b] for a in u for b in v) % self.conductor

    def submatrix(self, indices: Sequence[int]) -> BraidingMatrix:
        return BraidingMatrix([[self.q[i][j] for j in indices] for i in indices])

    def edge_label(self, i: int, j: int) -> RootOfUnity:
        return self.q[i][j] * self.q[j][i]


# ---------------------------------------------------------------------------
# generalized Dynkin diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DynkinDiagram:
    vertex_labels: tuple[RootOfUnity, ...]
    edges: frozenset = field(default_factory=frozenset)  # of (i, j, label), i < j

    @property
    def rank(self) -> int:
        return len(self.vertex_labels)

    def edge_map(self) -> dict[tuple[int, int], RootOfUnity]:
        return {(i, j): lab for i, j, lab in self.edges}

    def relabel(self, perm: Sequence[int]) -> DynkinDiagram:
        """Diagram with vertex ``v`` moved to position ``perm[v]``."""
        labels = [None] * self.rank
        for v, lab in enumerate(self.vertex_labels):
            labels[perm[v]] = lab
        edges = frozenset((min(perm[i], perm[j]), max(perm[i], perm[j]), lab) for i, j, lab in self.edges)
        return DynkinDiagram(tuple(labels), edges)

    def canonical_key(self):
        """A label-respecting isomorphism invariant that identifies the diagram up to relabelling."""
        best = None
        for perm in itertools.permutations(range(self.rank)):
            d = self.relabel(perm)
            key = (
                tuple((x.den, x.num) for x in d.vertex_labels),
                tuple(sorted((i, j, lab.den, lab.num) for i, j, lab in d.edges)),
            )
            if best is None or key < best:
                best = key
        return best

    def is_connected(self) -> bool:
        if self.rank <= 1:
            return True
        adj = {v: set() for v in range(self.rank)}
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.rank

    def render_text(self) -> str:
        labels = [x.label() for x in self.vertex_labels]
        if self.rank == 1:
            return f"∘_{labels[0]}"
        em = self.edge_map()
        if self.rank == 2:
            if (0, 1) in em:
                return f"∘_{labels[0]} —{em[0, 1].label()}— ∘_{labels[1]}"
            return f"∘_{labels[0]}   ∘_{labels[1]}"
        lines = ["  ".join(f"{v + 1}:∘_{lab}" for v, lab in enumerate(labels))]
        for (i, j), lab in sorted(em.items()):
            lines.append(f"{i + 1} —{lab.label()}— {j + 1}")
        return "\n".join(lines)

    def to_dot(self, name: str = "D") -> str:
        lines = [f"graph {name} {{"]
        for v, lab in enumerate(self.vertex_labels):
            lines.append(f'  v{v + 1} [label="{lab.label()}"];')
        for i, j, lab in sorted(self.edges, key=lambda e: (e[0], e[1])):
            lines.append(f'  v{i + 1} -- v{j + 1} [label="{lab.label()}"];')
        lines.append("}")
        return "\n".join(lines)


def dynkin_diagram(B: BraidingMatrix) -> DynkinDiagram:
    n = B.rank
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            lab = B.edge_label(i, j)
            if not lab.is_one():
                edges.add((i, j, lab))
    return DynkinDiagram(tuple(B.q[i][i] for i in range(n)), frozenset(edges))


def twist_equivalent(B1: BraidingMatrix, B2: BraidingMatrix) -> bool:
    """True iff the two braidings have isomorphic generalized Dynkin diagrams."""
    if B1.rank != B2.rank:
        raise InvalidArgument(f"rank mismatch: {B1.rank} vs {B2.rank}")
    d1, d2 = dynkin_diagram(B1), dynkin_diagram(B2)
    if sorted(d1.vertex_labels) != sorted(d2.vertex_labels):
        return False
    if sorted(e[2] for e in d1.edges) != sorted(e[2] for e in d2.edges):
        return False
    return any(d1.relabel(perm) == d2 for perm in itertools.permutations(range(B1.rank)))


def braiding_from_diagram(d: DynkinDiagram) -> BraidingMatrix:
    """The representative with q_ij = edge label and q_ji = 1 for i < j."""
    n = d.rank
    em = d.edge_map()
    rows = [[ONE] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = d.vertex_labels[i]
    for (i, j), lab in em.items():
        rows[i][j] = lab
    return BraidingMatrix(rows)


# ---------------------------------------------------------------------------
# m-entries and the Weyl groupoid
# ---------------------------------------------------------------------------


def _m_value(qii: RootOfUnity, prod: RootOfUnity) -> Optional[int]:
    # (m+1)_q vanishes iff q != 1 and ord(q) divides m+1
    n = qii.den
    bound = qii.den * prod.den
    for m in range(bound + 1):
        if n > 1 and (m + 1) % n == 0:
            return m
        if (qii**m * prod).is_one():
            return m
    return None


def m_entry(B: BraidingMatrix, i: int, j: int) -> Optional[int]:
    """Minimal m with (m+1)_{q_ii} (q_ii^m q_ij q_ji - 1) = 0, or None."""
    if i == j:
        raise InvalidArgument("m_entry is defined for i != j only (m_ii = 2 by convention)")
    return _m_value(B.q[i][i], B.edge_label(i, j))


def m_matrix(B: BraidingMatrix) -> MMatrix:
    n = B.rank
    return tuple(tuple(2 if i == j else m_entry(B, i, j) for j in range(n)) for i in range(n))


def m_defined(m: MMatrix) -> bool:
    return all(x is not None for row in m for x in row)


@dataclass(frozen=True)
class GroupoidPoint:
    """A basis F of Z^theta with the braiding read on it.

    ``basis[i]`` is the vector f_i in the canonical basis E; ``form`` is the
    original braiding (the bicharacter chi) and ``q`` its values on F.
    """

    basis: tuple[tuple[int, ...], ...]
    q: BraidingMatrix
    m: MMatrix
    form: BraidingMatrix

    @property
    def key(self):
        n = self.q.rank
        return (
            tuple(self.q.q[i][i] for i in range(n)),
            tuple(self.q.edge_label(i, j) for i in range(n) for j in range(i + 1, n)),
            self.m,
        )


def _point(form: BraidingMatrix, basis) -> GroupoidPoint:
    basis = tuple(tuple(v) for v in basis)
    L = form.conductor
    q = BraidingMatrix([[RootOfUnity(form.chi_exp(fi, fj), L) for fj in basis] for fi in basis])
    return GroupoidPoint(basis, q, m_matrix(q), form)


def canonical_point(B: BraidingMatrix) -> GroupoidPoint:
    n = B.rank
    return _point(B, [tuple(int(i == j) for j in range(n)) for i in range(n)])


def reflect(P: GroupoidPoint, k: int) -> GroupoidPoint:
    """Apply s_k: f_j -> f_j + m_kj f_k for j != k and f_k -> -f_k."""
    n = len(P.basis)
    if not 0 <= k < n:
        raise InvalidArgument(f"vertex {k} out of range")
    row = P.m[k]
    if any(row[j] is None for j in range(n) if j != k):
        raise ReflectionUndefined(f"m-entries in row {k} are not all defined")
    fk = P.basis[k]
    new = []
    for j in range(n):
        if j == k:
            new.append(tuple(-x for x in fk))
        else:
            new.append(tuple(x + row[j] * y for x, y in zip(P.basis[j], fk)))
    return _point(P.form, new)


@dataclass
class GroupoidResult:
    points: list[GroupoidPoint]
    overflow: bool = False
    undefined_at: Optional[GroupoidPoint] = None


def groupoid_points(B: BraidingMatrix, max_points: int = DEFAULT_MAX_POINTS) -> GroupoidResult:
    """Breadth-first closure of the canonical point under reflections.

    Points are identified by their diagram data and m-matrix.  The search stops
    at the first point whose m-matrix is not fully defined (it cannot be
    reflected further) and reports it in ``undefined_at``.
    """
    if max_points < 1:
        raise InvalidArgument("max_points must be positive")
    start = canonical_point(B)
    points = [start]
    seen = {start.key}
    queue = deque([start])
    while queue:
        P = queue.popleft()
        if not m_defined(P.m):
            return GroupoidResult(points, False, P)
        for k in range(B.rank):
            Q = reflect(P, k)
            if Q.key in seen:
                continue
            seen.add(Q.key)
            points.append(Q)
            if len(points) > max_points:
                return GroupoidResult(points, True)
            queue.append(Q)
    return GroupoidResult(points)


def is_standard(B: BraidingMatrix, max_points: int = DEFAULT_MAX_POINTS) -> tuple[Optional[bool], Optional[CartanMatrix]]:
    """Decide standardness.

    Returns ``(True, C)`` with the Cartan matrix, ``(False, None)``, or
    ``(None, None)`` when the groupoid exploration overflowed ``max_points``.
    """
    m0 = m_matrix(B)
    if not m_defined(m0):
        return False, None
    res = groupoid_points(B, max_points)
    if res.undefined_at is not None:
        return False, None
    if any(P.m != m0 for P in res.points):
        return False, None
    if res.overflow:
        return None, None
    return True, tuple(tuple(2 if i == j else -m0[i][j] for j in range(B.rank)) for i in range(B.rank))


# ---------------------------------------------------------------------------
# Cartan matrices
# ---------------------------------------------------------------------------


def _components(C: CartanMatrix) -> list[list[int]]:
    n = len(C)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if w != v and (C[v][w] or C[w][v]) and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _positive_definite_symmetrization(C: list[list[int]]) -> bool:
    n = len(C)
    # symmetrizer d with d_i c_ij = d_j c_ji, propagated along the (tree) graph
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and C[i][j]:
                val = d[i] * C[i][j] / C[j][i]
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    return False
    S = [[d[i] * C[i][j] for j in range(n)] for i in range(n)]
    # Sylvester: all leading principal minors positive
    for k in range(1, n + 1):
        if _det([row[:k] for row in S[:k]]) <= 0:
            return False
    return True


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [list(map(Fraction, row)) for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for t in range(c, n):
                    M[r][t] -= f * M[c][t]
    return det


def _classify_component(C: list[list[int]]) -> Optional[str]:
    n = len(C)
    if n == 1:
        return "A1"
    for i in range(n):
        for j in range(n):
            if i != j and ((C[i][j] == 0) != (C[j][i] == 0) or C[i][j] > 0):
                return None
    edges = [(i, j, C[i][j] * C[j][i]) for i in range(n) for j in range(i + 1, n) if C[i][j]]
    if len(edges) != n - 1:
        return None
    if not _positive_definite_symmetrization(C):
        return None
    deg = [0] * n
    for i, j, _ in edges:
        deg[i] += 1
        deg[j] += 1
    mults = sorted(w for _, _, w in edges)
    if mults[-1] == 3:
        return "G2" if n == 2 else None
    if mults[-1] == 2:
        if n == 2:
            return "B2"
        if mults.count(2) != 1 or max(deg) > 2:
            return None
        i, j, _ = next(e for e in edges if e[2] == 2)
        if n == 4 and deg[i] == 2 and deg[j] == 2:
            return "F4"
        end, other = (i, j) if deg[i] == 1 else (j, i)
        if deg[end] != 1:
            return None
        # the short root sits where the row carries the -2
        return f"B{n}" if C[end][other] == -2 else f"C{n}"
    if max(deg) <= 2:
        return f"A{n}"
    branch = deg.index(3)
    adj = {v: [w for w in range(n) if w != v and C[v][w]] for v in range(n)}
    legs = []
    for start in adj[branch]:
        length, prev, cur = 1, branch, start
        while deg[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return f"D{n}"
    if legs[:2] == [1, 2] and legs[2] in (2, 3, 4):
        return f"E{n}"
    return None


def cartan_components(C: CartanMatrix) -> list[tuple[str, tuple[int, ...]]]:
    out = []
    for comp in _components(C):
        sub = [[C[i][j] for j in comp] for i in comp]
        tag = _classify_component(sub)
        out.append((tag or "NotFinite", tuple(comp)))
    return out


def cartan_type(C: CartanMatrix) -> str:
    """Finite-type tag such as ``"A2"`` or ``"A1xB2"``; ``"NotFinite"`` otherwise."""
    n = len(C)
    if any(C[i][i] != 2 for i in range(n)) or any(C[i][j] > 0 for i in range(n) for j in range(n) if i != j):
        return "NotFinite"
    comps = cartan_components(C)
    if any(tag == "NotFinite" for tag, _ in comps):
        return "NotFinite"
    return "x".join(tag for tag, _ in comps)


def positive_roots(C: CartanMatrix) -> list[tuple[int, ...]]:
    """Positive roots, by increasing height, via root strings."""
    if cartan_type(C) == "NotFinite":
        raise InvalidArgument("positive roots requested for a Cartan matrix that is not of finite type")
    n = len(C)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                while True:
                    down = tuple(b - (p + 1) * (t == i) for t, b in enumerate(beta))
                    if down in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * C[i][j] for j in range(n))
                if p - pairing > 0:
                    up = tuple(b + (t == i) for t, b in enumerate(beta))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda a: (sum(a), tuple(-x for x in a)))


def root_scalar(B: BraidingMatrix, alpha: Sequence[int]) -> RootOfUnity:
    return B.chi(alpha, alpha)


def root_order(B: BraidingMatrix, alpha: Sequence[int]) -> int:
    return root_scalar(B, alpha).order


def cartan_label(tag: str) -> str:
    """``"A1xB2"`` -> ``"A_1xB_2"``."""
    if tag == "NotFinite":
        return tag
    return "x".join(part[0] + "_" + part[1:] for part in tag.split("x"))


# ---------------------------------------------------------------------------
# input documents
# ---------------------------------------------------------------------------


def load_braiding(text: str) -> BraidingMatrix:
    """Read ``{rank: n, q: [["k/N", ...], ...]}`` (YAML flow or JSON); a bare list of rows also works."""
    import yaml

    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"cannot parse braiding document: {exc}") from None
    if isinstance(data, dict):
        if "q" not in data:
            raise ParseError("braiding document has no 'q' entry")
        rows = data["q"]
        rank = data.get("rank")
    else:
        rows, rank = data, None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("'q' must be a list of rows")
    B = BraidingMatrix([[str(x) for x in row] for row in rows])
    if rank is not None and rank != B.rank:
        raise InvalidArgument(f"declared rank {rank} does not match the {B.rank} rows of q")
    return B


# ---------------------------------------------------------------------------
# rank-2 enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumeratedDiagram:
    diagram: DynkinDiagram
    standard: Optional[bool]
    cartan: Optional[str]
    family: Optional[str]

    @property
    def braiding(self) -> BraidingMatrix:
        return braiding_from_diagram(self.diagram)


def _a2_family(d: DynkinDiagram, N: int) -> Optional[str]:
    """Which of the four standard A_2 families (q in G_N) the rank-2 diagram belongs to."""
    em = d.edge_map()
    if (0, 1) not in em:
        return None
    a, b = d.vertex_labels
    e = em[0, 1]
    minus = RootOfUnity(1, 2)
    if a == minus and b == minus:
        if e == minus:
            return "D3"
        if e.order == N:
            return "D2"
        return None
    for x, y in ((a, b), (b, a)):
        if x.order == N and y == minus and e == x.inverse():
            return "D1"
    if a == b and a.order == N and e == a.inverse():
        return "D4"
    return None


def enumerate_rank2(N: int, max_points: int = DEFAULT_MAX_POINTS) -> list[EnumeratedDiagram]:
    """All rank-2 diagrams with labels in G_N, 1 and -1, up to swapping the vertices."""
    if N < 1:
        raise InvalidArgument("the order N must be positive")
    labels = sorted({RootOfUnity(k, N) for k in range(N) if math.gcd(k, N) == 1} | {ONE, RootOfUnity(1, 2)})
    out = []
    seen = set()
    for a in labels:
        for b in labels:
            for e in labels:
                edges = frozenset() if e.is_one() else frozenset({(0, 1, e)})
                d = DynkinDiagram((a, b), edges)
                key = d.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                std, C = is_standard(braiding_from_diagram(d), max_points)
                out.append(EnumeratedDiagram(d, std, cartan_type(C) if std else None, _a2_family(d, N)))
    return out

