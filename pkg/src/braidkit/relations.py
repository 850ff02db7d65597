"""Defining relations of Nichols algebras of standard type and their verification."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .braiding import (
    DEFAULT_MAX_POINTS,
    BraidingMatrix,
    cartan_components,
    cartan_label,
    cartan_type,
    is_standard,
    m_matrix,
    positive_roots,
    root_order,
    root_scalar,
)
from .cyclotomic import MINUS_ONE, CycNumber, RootOfUnity
from .errors import InvalidArgument, PreconditionError, ResourceOverflow
from .tensoralgebra import (
    DegreeOverflow,
    NCPoly,
    ad_c_power,
    braided_commutator,
    hyperletter,
    letter,
    lyndon_words,
    multidegrees_of_total,
    nichols_algebra,
    words_of_multidegree,
)

INFINITE = math.inf

SCHEMA_VERSION = 1


@dataclass
class RelationInstance:
    """One relation: its kind, the vertices it involves and a lazily built element.

    ``element`` is only expanded on first access; root vector powers of large
    degree are never built unless asked for.
    """

    kind: str
    vertices: tuple[int, ...]
    multidegree: tuple[int, ...]
    applicable: bool
    reason: str
    builder: Optional[Callable[[], NCPoly]] = field(default=None, repr=False)
    root: Optional[tuple[int, ...]] = None
    _element: Optional[NCPoly] = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return sum(self.multidegree)

    @property
    def element(self) -> Optional[NCPoly]:
        if self._element is None and self.builder is not None:
            self._element = self.builder()
        return self._element

    @property
    def label(self) -> str:
        if self.root is not None:
            return f"{self.kind}({_root_str(self.root)})"
        return f"{self.kind}({','.join(str(v + 1) for v in self.vertices)})"


def _root_str(alpha: Sequence[int]) -> str:
    return "alpha=(" + ",".join(str(a) for a in alpha) + ")"


def _unit(B: BraidingMatrix, i: int) -> tuple[int, ...]:
    return tuple(int(t == i) for t in range(B.rank))


def _add(*vs: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x) for x in zip(*vs))


def _scale(v: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(n * x for x in v)


def _in_G(q: RootOfUnity, n: int) -> bool:
    return q.order == n


# ---------------------------------------------------------------------------
# quantum Serre and root vector relations
# ---------------------------------------------------------------------------


def quantum_serre(B: BraidingMatrix, i: int, j: int) -> RelationInstance:
    if i == j:
        raise InvalidArgument("quantum Serre relations need i != j")
    for v in (i, j):
        if not 0 <= v < B.rank:
            raise InvalidArgument(f"vertex {v} out of range")
    m = m_matrix(B)[i][j]
    if m is None:
        return RelationInstance("QuantumSerre", (i, j), _add(_unit(B, j)), False, f"m_{i + 1}{j + 1} is undefined")
    qii = B[i, i]
    md = _add(_scale(_unit(B, i), m + 1), _unit(B, j))
    if (qii ** (m + 1)).is_one():
        reason = f"q_{i + 1}{i + 1}^{m + 1} = 1"
        applicable = False
    else:
        reason = f"m_{i + 1}{j + 1} = {m}, q_{i + 1}{i + 1}^{m + 1} != 1"
        applicable = True
    return RelationInstance(
        "QuantumSerre", (i, j), md, applicable, reason, lambda: ad_c_power(i, m + 1, letter(B, j))
    )


def root_vector_word(B: BraidingMatrix, alpha: Sequence[int]) -> tuple[int, ...]:
    """Smallest Lyndon word of multidegree alpha whose hyperletter survives in B(V)."""
    alpha = tuple(alpha)
    nich = nichols_algebra(B)
    candidates = lyndon_words(alpha)
    for w in candidates:
        if len(w) == 1 or not nich.contains(hyperletter(B, w)):
            return w
    raise InvalidArgument(f"no Lyndon word of multidegree {alpha} gives a nonzero hyperletter")


def root_vector(B: BraidingMatrix, alpha: Sequence[int]) -> NCPoly:
    return hyperletter(B, root_vector_word(B, alpha))


def _standard_cartan(B: BraidingMatrix, max_points: int = DEFAULT_MAX_POINTS):
    std, C = is_standard(B, max_points)
    if std is None:
        raise ResourceOverflow("Weyl groupoid exploration overflowed; standardness is indeterminate")
    if not std:
        raise PreconditionError("braiding is not of standard type")
    return C


def root_vector_power(B: BraidingMatrix, alpha: Sequence[int], C=None) -> RelationInstance:
    alpha = tuple(alpha)
    if C is None:
        C = _standard_cartan(B)
    if cartan_type(C) == "NotFinite" or alpha not in positive_roots(C):
        raise InvalidArgument(f"{alpha} is not a positive root")
    support = tuple(i for i, a in enumerate(alpha) if a)
    qa = root_scalar(B, alpha)
    if qa.is_one():
        return RelationInstance("RootVectorPower", support, alpha, False, "q_alpha = 1, no truncation", root=alpha)
    N = root_order(B, alpha)
    md = _scale(alpha, N)
    return RelationInstance(
        "RootVectorPower",
        support,
        md,
        True,
        f"N_alpha = ord(q_alpha) = {N}",
        lambda: root_vector(B, alpha) ** N,
        root=alpha,
    )


# ---------------------------------------------------------------------------
# the remaining relations of the presentation
# ---------------------------------------------------------------------------


def _ad(B, k, n, y):
    return ad_c_power(k, n, y)


def _a_type(B, k, j, l):
    return braided_commutator(_ad(B, k, 1, letter(B, j)), _ad(B, k, 1, letter(B, l)))


def _b_type(B, k, j):
    xj = letter(B, j)
    return braided_commutator(_ad(B, k, 2, xj), _ad(B, k, 1, xj))


def _b2_type(B, k, j, l):
    inner = _ad(B, k, 2, _ad(B, j, 1, letter(B, l)))
    return braided_commutator(inner, _ad(B, k, 1, letter(B, j)))


def _g2_order(B, k, j):
    order = [B.rank + 1] * B.rank
    order[k], order[j] = 0, 1
    return order


def _g2_word(k, j, pattern):
    return tuple(k if c == "k" else j for c in pattern)


def _g2_elements(B: BraidingMatrix, k: int, j: int) -> dict[str, Callable[[], NCPoly]]:
    order = _g2_order(B, k, j)

    def hw(p):
        return hyperletter(B, _g2_word(k, j, p), order)

    xj = letter(B, j)
    return {
        "G2-1": lambda: braided_commutator(_ad(B, k, 3, xj), _ad(B, k, 2, xj)),
        "G2-2": lambda: braided_commutator(letter(B, k), hw("kkjkj")),
        "G2-3": lambda: braided_commutator(hw("kkjkj"), hw("kj")),
        "G2-4": lambda: braided_commutator(hw("kkj"), hw("kkjkj")),
    }


_G2_DEGREES = {"G2-1": (5, 2), "G2-2": (4, 2), "G2-3": (4, 3), "G2-4": (5, 3)}


def special_relations(B: BraidingMatrix, C=None) -> list[RelationInstance]:
    if C is None:
        C = _standard_cartan(B)
    m = m_matrix(B)
    n = B.rank
    minus = MINUS_ONE
    out: list[RelationInstance] = []
    for k in range(n):
        qkk = B[k, k]
        for j, l in itertools.combinations([v for v in range(n) if v != k], 2):
            if m[k][j] == 1 and m[k][l] == 1 and qkk == minus:
                md = _add(_scale(_unit(B, k), 2), _unit(B, j), _unit(B, l))
                out.append(
                    RelationInstance(
                        "A-type",
                        (k, j, l),
                        md,
                        True,
                        f"m_{k + 1}{j + 1} = m_{k + 1}{l + 1} = 1, q_{k + 1}{k + 1} = -1",
                        lambda k=k, j=j, l=l: _a_type(B, k, j, l),
                    )
                )
    for k, j in itertools.permutations(range(n), 2):
        if m[k][j] == 2 and m[j][k] == 1 and (_in_G(B[k, k], 3) or B[j, j] == minus):
            md = _add(_scale(_unit(B, k), 3), _scale(_unit(B, j), 2))
            out.append(
                RelationInstance(
                    "B-type",
                    (k, j),
                    md,
                    True,
                    f"m_{k + 1}{j + 1} = 2, m_{j + 1}{k + 1} = 1, q_{k + 1}{k + 1} in G_3 or q_{j + 1}{j + 1} = -1",
                    lambda k=k, j=j: _b_type(B, k, j),
                )
            )
            for l in range(n):
                if l in (k, j) or m[j][l] != 1:
                    continue
                md = _add(_scale(_unit(B, k), 3), _scale(_unit(B, j), 2), _unit(B, l))
                out.append(
                    RelationInstance(
                        "B2-type",
                        (k, j, l),
                        md,
                        True,
                        f"m_{k + 1}{j + 1} = 2, m_{j + 1}{k + 1} = m_{j + 1}{l + 1} = 1",
                        lambda k=k, j=j, l=l: _b2_type(B, k, j, l),
                    )
                )
    for tag, comp in cartan_components(C):
        if tag != "G2":
            continue
        a, b = comp
        k, j = (a, b) if m[a][b] == 3 else (b, a)
        if not (_in_G(B[k, k], 4) or B[j, j] == minus):
            continue
        for kind, build in _g2_elements(B, k, j).items():
            nk, nj = _G2_DEGREES[kind]
            md = _add(_scale(_unit(B, k), nk), _scale(_unit(B, j), nj))
            out.append(
                RelationInstance(
                    kind, (k, j), md, True, f"G_2 component, q_{k + 1}{k + 1} in G_4 or q_{j + 1}{j + 1} = -1", build
                )
            )
    return out


def lemma_relations(B: BraidingMatrix, standard: Optional[bool] = None) -> list[RelationInstance]:
    """Extra relations valid in finite-dimensional pre-Nichols algebras under local hypotheses."""
    m = m_matrix(B)
    n = B.rank
    minus = MINUS_ONE
    out: list[RelationInstance] = []
    for k in range(n):
        if B[k, k] != minus:
            continue
        for j, l in itertools.permutations([v for v in range(n) if v != k], 2):
            pkj = B[k, j] * B[j, k]
            pkl = B[k, l] * B[l, k]
            pjl = B[j, l] * B[l, j]
            if pkj == pkl.inverse() and not pkj.is_one() and pjl.is_one():
                reason = f"q_{k + 1}{k + 1} = -1, q_{k + 1}{j + 1}q_{j + 1}{k + 1} = (q_{k + 1}{l + 1}q_{l + 1}{k + 1})^-1 != 1"
                out.append(
                    RelationInstance(
                        "A-square", (k,), _scale(_unit(B, k), 2), True, reason, lambda k=k: letter(B, k) ** 2
                    )
                )
                md = _add(_unit(B, j), _scale(_unit(B, k), 2), _unit(B, l))
                out.append(
                    RelationInstance(
                        "A-bracket",
                        (j, k, l),
                        md,
                        True,
                        reason,
                        lambda k=k, j=j, l=l: braided_commutator(
                            _ad(B, j, 1, _ad(B, k, 1, letter(B, l))), letter(B, k)
                        ),
                    )
                )
    for k, j in itertools.permutations(range(n), 2):
        if m[k][j] != 1 or m[j][k] != 2:
            continue
        qjj3 = _in_G(B[j, j], 3)
        qkk_m1 = B[k, k] == minus
        md = _add(_scale(_unit(B, j), 3), _scale(_unit(B, k), 2))
        if not qjj3 or not qkk_m1:
            out.append(
                RelationInstance(
                    "B-type-complement",
                    (j, k),
                    md,
                    True,
                    f"m_{k + 1}{j + 1} = 1, m_{j + 1}{k + 1} = 2, q_{j + 1}{j + 1} not in G_3 or q_{k + 1}{k + 1} != -1",
                    lambda k=k, j=j: _b_type(B, j, k),
                )
            )
        else:
            out.append(
                RelationInstance(
                    "B-type-G3",
                    (j, k),
                    md,
                    True,
                    f"m_{k + 1}{j + 1} = 1, m_{j + 1}{k + 1} = 2, q_{j + 1}{j + 1} in G_3, q_{k + 1}{k + 1} = -1",
                    lambda k=k, j=j: _b_type(B, j, k),
                )
            )
        if standard is None:
            standard = bool(is_standard(B)[0])
        if not standard:
            continue
        if not (qkk_m1 or (B[j, j] ** 3).is_one()):
            continue
        for l in range(n):
            if l in (j, k) or m[j][l] != 0 or m[l][j] != 0 or m[k][l] != 1:
                continue
            md2 = _add(_scale(_unit(B, k), 2), _scale(_unit(B, j), 2), _unit(B, l))
            out.append(
                RelationInstance(
                    "B2-type-bridge",
                    (k, j, l),
                    md2,
                    True,
                    f"m_{j + 1}{l + 1} = m_{l + 1}{j + 1} = 0, m_{k + 1}{l + 1} = 1, (1 + q_{k + 1}{k + 1})(1 - q_{j + 1}{j + 1}^3) = 0",
                    lambda k=k, j=j, l=l: braided_commutator(
                        _ad(B, k, 2, _ad(B, j, 1, letter(B, l))), _ad(B, j, 1, letter(B, k))
                    ),
                )
            )
    return out


def presentation(B: BraidingMatrix, C=None) -> list[RelationInstance]:
    """All relations of the presentation: root vector powers, quantum Serre, special relations."""
    if C is None:
        C = _standard_cartan(B)
    if cartan_type(C) == "NotFinite":
        raise PreconditionError("the Cartan matrix is not of finite type")
    rels = [root_vector_power(B, a, C) for a in positive_roots(C)]
    rels += [quantum_serre(B, i, j) for i, j in itertools.permutations(range(B.rank), 2)]
    rels += special_relations(B, C)
    return rels


def pbw_dimension(B: BraidingMatrix, max_points: int = DEFAULT_MAX_POINTS):
    """prod N_alpha over the positive roots; ``INFINITE`` if some q_alpha = 1 or C is not finite."""
    C = _standard_cartan(B, max_points)
    if cartan_type(C) == "NotFinite":
        return INFINITE
    total = 1
    for a in positive_roots(C):
        qa = root_scalar(B, a)
        if qa.is_one():
            return INFINITE
        total *= qa.order
    return total


# ---------------------------------------------------------------------------
# quotient by a set of relations
# ---------------------------------------------------------------------------


class _Echelon:
    """Incrementally maintained reduced basis of a subspace of k^ncols."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, CycNumber]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def full(self) -> bool:
        return self.rank == self.ncols

    def add(self, vec: dict[int, CycNumber]) -> bool:
        vec = {c: x for c, x in vec.items() if not x.is_zero()}
        for p in sorted(self.rows):
            x = vec.get(p)
            if x is None:
                continue
            for c, y in self.rows[p].items():
                t = vec.get(c)
                t = -(x * y) if t is None else t - x * y
                if t.is_zero():
                    vec.pop(c, None)
                else:
                    vec[c] = t
        if not vec:
            return False
        p = min(vec)
        inv = vec[p].inverse()
        self.rows[p] = {c: x * inv for c, x in vec.items()}
        return True


def quotient_dimensions(B: BraidingMatrix, relations: Sequence[NCPoly], D: int) -> list[int]:
    """dim of T(V)/(relations) in degrees 0..D by closing the ideal degreewise."""
    if D < 0:
        raise InvalidArgument("degree bound must be non-negative")
    rank = B.rank
    by_md: dict[tuple[int, ...], list[NCPoly]] = {}
    for r in relations:
        for d, comp in r.components().items():
            by_md.setdefault(d, []).append(comp)
    ideal: dict[tuple[int, ...], list[dict]] = {}
    dims = []
    for n in range(D + 1):
        total = 0
        for d in multidegrees_of_total(rank, n):
            words = words_of_multidegree(d)
            index = {w: k for k, w in enumerate(words)}
            ech = _Echelon(len(words))
            sources = []
            for r in by_md.get(d, []):
                sources.append({index[w]: c for w, c in r.terms.items()})
            for i in range(rank):
                if not d[i]:
                    continue
                prev_d = tuple(x - (t == i) for t, x in enumerate(d))
                for row in ideal.get(prev_d, []):
                    sources.append({index[(i,) + w]: c for w, c in row.items()})
                    sources.append({index[w + (i,)]: c for w, c in row.items()})
            for vec in sources:
                if ech.full():
                    break
                ech.add(vec)
            ideal[d] = [{words[c]: x for c, x in row.items()} for row in ech.rows.values()]
            total += len(words) - ech.rank
        dims.append(total)
    return dims


# ---------------------------------------------------------------------------
# verification report
# ---------------------------------------------------------------------------


@dataclass
class RelationVerdict:
    kind: str
    vertices: tuple[int, ...]
    degree: int
    applicable: bool
    reason: str
    in_ideal: Optional[bool]
    element: Optional[str]
    root: Optional[tuple[int, ...]] = None

    @property
    def where(self) -> str:
        if self.root is not None:
            return _root_str(self.root)
        return ",".join(str(v + 1) for v in self.vertices)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": [v + 1 for v in self.vertices],
            "root": list(self.root) if self.root is not None else None,
            "degree": self.degree,
            "applicable": self.applicable,
            "reason": self.reason,
            "in_ideal": self.in_ideal,
            "element": self.element,
        }


@dataclass
class PresentationReport:
    braiding: BraidingMatrix
    cartan_type: str
    max_degree: int
    relations: list[RelationVerdict]
    nichols_dims: Optional[list[int]]
    quotient_dims: Optional[list[int]]
    total_dimension: object
    overflow: Optional[str] = None

    @property
    def all_in_ideal(self) -> bool:
        return all(r.in_ideal is not False for r in self.relations)

    @property
    def dims_match(self) -> Optional[bool]:
        if self.nichols_dims is None or self.quotient_dims is None:
            return None
        return self.nichols_dims == self.quotient_dims

    def to_json(self) -> dict:
        total = self.total_dimension
        return {
            "schema_version": SCHEMA_VERSION,
            "braiding": self.braiding.to_strings(),
            "cartan_type": self.cartan_type,
            "max_degree": self.max_degree,
            "relations": [r.to_json() for r in self.relations],
            "nichols_dims": self.nichols_dims,
            "quotient_dims": self.quotient_dims,
            "dims_match": self.dims_match,
            "total_dimension": "infinite" if total == INFINITE else total,
            "overflow": self.overflow,
        }

    def to_text(self) -> str:
        lines = [
            f"braiding: {self.braiding.to_inline()}",
            f"Cartan: {cartan_label(self.cartan_type)}",
            f"total dimension: {'infinite' if self.total_dimension == INFINITE else self.total_dimension}",
            f"relations (degree <= {self.max_degree}):",
        ]
        for r in self.relations:
            if r.in_ideal is None:
                verdict = "skipped" if r.applicable else "n/a"
            else:
                verdict = "in I(V)" if r.in_ideal else "NOT in I(V)"
            lines.append(f"  {r.kind:<18} {r.where:<14} deg {r.degree:<3} {verdict}  [{r.reason}]")
        if self.nichols_dims is not None:
            lines.append("degree  nichols  quotient")
            for n, a in enumerate(self.nichols_dims):
                b = self.quotient_dims[n] if self.quotient_dims else "-"
                lines.append(f"{n:>6}  {a:>7}  {b:>8}")
            lines.append(f"dims match: {'yes' if self.dims_match else 'no'}")
        if self.overflow:
            lines.append(f"overflow: {self.overflow}")
        return "\n".join(lines)


def _dedupe(rels: list[RelationInstance]) -> list[RelationInstance]:
    out = []
    seen = set()
    for r in rels:
        el = r.element
        if el is None or el.is_zero():
            out.append(r)
            continue
        lead_w, lead_c = el.sorted_terms()[0]
        key = el.scale(lead_c.inverse()).canonical_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def verify_presentation(B: BraidingMatrix, D: int, max_points: int = DEFAULT_MAX_POINTS) -> PresentationReport:
    if D < 0:
        raise InvalidArgument("degree bound must be non-negative")
    C = _standard_cartan(B, max_points)
    ctype = cartan_type(C)
    if ctype == "NotFinite":
        raise PreconditionError("the Cartan matrix is not of finite type")
    rels = presentation(B, C)
    nich = nichols_algebra(B)
    verdicts = []
    elements = []
    overflow = None
    in_range = [r for r in rels if r.applicable and r.degree <= D]
    in_range = _dedupe(in_range)
    keep = {id(r) for r in in_range}
    for r in rels:
        if id(r) in keep:
            try:
                inside = nich.contains(r.element)
            except DegreeOverflow as exc:
                inside = None
                overflow = str(exc)
            elements.append(r.element)
            verdicts.append(
                RelationVerdict(r.kind, r.vertices, r.degree, True, r.reason, inside, r.element.serialize(), r.root)
            )
        else:
            verdicts.append(RelationVerdict(r.kind, r.vertices, r.degree, r.applicable, r.reason, None, None, r.root))
    try:
        ndims = nich.hilbert_series(D)
        qdims = quotient_dimensions(B, elements, D)
    except DegreeOverflow as exc:
        ndims = qdims = None
        overflow = str(exc)
    return PresentationReport(B, ctype, D, verdicts, ndims, qdims, pbw_dimension(B, max_points), overflow)
