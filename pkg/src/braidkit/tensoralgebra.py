"""The tensor algebra T(V) of a diagonal braiding and its Nichols quotient.

Words are tuples of 0-based letter indices; the textual form uses 1-based
names ``x1.x2``.  Words are ordered lexicographically with x1 < x2 < ... and
a proper prefix smaller than the word.

The Nichols ideal is computed one multidegree at a time through the right
skew derivations: ``p`` of degree >= 2 lies in I(V) iff every ``partial_i(p)``
does.  Each block stores a reduced row echelon matrix whose kernel is the
ideal component, so membership, dimensions and kernel bases all come from it.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .braiding import BraidingMatrix
from .cyclotomic import CycNumber, RootOfUnity, embed
from .errors import InvalidArgument, ParseError, ResourceOverflow

Word = tuple[int, ...]


def multidegree(w: Sequence[int], rank: int) -> tuple[int, ...]:
    d = [0] * rank
    for a in w:
        d[a] += 1
    return tuple(d)


def word_str(w: Sequence[int]) -> str:
    return ".".join(f"x{a + 1}" for a in w) if w else "1"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    try:
        return tuple(int(tok.strip()[1:]) - 1 for tok in text.split(".") if tok.strip().startswith("x"))
    except ValueError as exc:
        raise ParseError(f"bad word {text!r}") from exc


def _scalar(B: BraidingMatrix, c) -> CycNumber:
    L = B.conductor
    if isinstance(c, CycNumber):
        if L % c.conductor == 0:
            return c.lift(L)
        raise InvalidArgument(f"scalar of conductor {c.conductor} is outside Q(zeta_{L})")
    if isinstance(c, RootOfUnity):
        return embed(c, L) if L % c.den == 0 else _scalar(B, embed(c))
    return CycNumber.from_rational(c, L)


# ---------------------------------------------------------------------------
# braiding on words
# ---------------------------------------------------------------------------


def braid_swap(B: BraidingMatrix, u: Sequence[int], v: Sequence[int]) -> tuple[RootOfUnity, tuple[Word, Word]]:
    """c(u (x) v) = chi(deg u, deg v) v (x) u."""
    u, v = tuple(u), tuple(v)
    for a in u + v:
        if not 0 <= a < B.rank:
            raise InvalidArgument(f"letter x{a + 1} outside the braiding of rank {B.rank}")
    return RootOfUnity(B.word_chi_exp(u, v), B.conductor), (v, u)


# ---------------------------------------------------------------------------
# noncommutative polynomials
# ---------------------------------------------------------------------------


class NCPoly:
    """A finite linear combination of words with cyclotomic coefficients.

    Coefficients always live in Q(zeta_L) for the braiding's conductor L and
    zero coefficients are never stored.
    """

    __slots__ = ("braiding", "terms")

    def __init__(self, braiding: BraidingMatrix, terms: Optional[dict] = None):
        self.braiding = braiding
        clean = {}
        if terms:
            for w, c in terms.items():
                c = _scalar(braiding, c)
                if not c.is_zero():
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, braiding: BraidingMatrix, terms: dict) -> NCPoly:
        obj = cls.__new__(cls)
        obj.braiding = braiding
        obj.terms = {w: c for w, c in terms.items() if not c.is_zero()}
        return obj

    @classmethod
    def zero(cls, B: BraidingMatrix) -> NCPoly:
        return cls._raw(B, {})

    @classmethod
    def one(cls, B: BraidingMatrix) -> NCPoly:
        return cls(B, {(): 1})

    @classmethod
    def letter(cls, B: BraidingMatrix, i: int) -> NCPoly:
        if not 0 <= i < B.rank:
            raise InvalidArgument(f"letter index {i} out of range")
        return cls(B, {(i,): 1})

    @classmethod
    def word(cls, B: BraidingMatrix, w: Sequence[int], coeff=1) -> NCPoly:
        return cls(B, {tuple(w): coeff})

    # -- structure --------------------------------------------------------
    def _check(self, other: NCPoly):
        if other.braiding != self.braiding:
            raise InvalidArgument("polynomials over different braidings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, w: Sequence[int]) -> CycNumber:
        return self.terms.get(tuple(w), CycNumber.zero(self.braiding.conductor))

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {multidegree(w, self.braiding.rank) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def multidegree(self) -> tuple[int, ...]:
        ds = self.multidegrees()
        if len(ds) != 1:
            raise InvalidArgument("polynomial is not multidegree-homogeneous")
        return next(iter(ds))

    def components(self) -> dict[tuple[int, ...], NCPoly]:
        parts: dict = defaultdict(dict)
        for w, c in self.terms.items():
            parts[multidegree(w, self.braiding.rank)][w] = c
        return {d: NCPoly._raw(self.braiding, t) for d, t in parts.items()}

    def sorted_terms(self) -> list[tuple[Word, CycNumber]]:
        return sorted(self.terms.items())

    def canonical_key(self):
        return tuple((w, c.nums, c.den) for w, c in self.sorted_terms())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: NCPoly) -> NCPoly:
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly._raw(self.braiding, out)

    def __neg__(self) -> NCPoly:
        return NCPoly._raw(self.braiding, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: NCPoly) -> NCPoly:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> NCPoly:
        c = _scalar(self.braiding, c)
        return NCPoly._raw(self.braiding, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            out: dict = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    c = a * b
                    out[w] = out[w] + c if w in out else c
            return NCPoly._raw(self.braiding, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> NCPoly:
        if n < 0:
            raise InvalidArgument("negative power of a polynomial")
        result = NCPoly.one(self.braiding)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.braiding == other.braiding and self.terms == other.terms

    __hash__ = None

    # -- text -------------------------------------------------------------
    def serialize(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c.serialize()} * {word_str(w)}" for w, c in self.sorted_terms())

    @classmethod
    def parse(cls, B: BraidingMatrix, text: str) -> NCPoly:
        text = text.strip()
        if text == "0":
            return cls.zero(B)
        terms: dict = {}
        for chunk in text.split(" + "):
            m = _TERM_RE.fullmatch(chunk.strip())
            if not m:
                raise ParseError(f"bad polynomial term {chunk!r}")
            coeffs = [s.strip().strip('"') for s in m.group(2).split(",") if s.strip()]
            c = CycNumber(int(m.group(1)), coeffs)
            w = parse_word(m.group(3))
            terms[w] = terms[w] + c if w in terms else c
        return cls(B, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            cs = str(c)
            if cs == "1":
                parts.append(word_str(w))
            elif cs == "-1":
                parts.append(f"-{word_str(w)}")
            else:
                parts.append(f"({cs})*{word_str(w)}")
        return " + ".join(parts)

    __repr__ = __str__


_TERM_RE = re.compile(r"\{L:\s*(\d+),\s*c:\s*\[(.*)\]\}\s*\*\s*(\S+)")


def letter(B: BraidingMatrix, i: int) -> NCPoly:
    return NCPoly.letter(B, i)


def braided_commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    """[x, y]_c = xy - c(x (x) y) multiplied out, extended bilinearly over words."""
    x._check(y)
    B = x.braiding
    L = B.conductor
    out: dict = {}
    deg_cache: dict = {}

    def deg(w):
        d = deg_cache.get(w)
        if d is None:
            d = deg_cache[w] = multidegree(w, B.rank)
        return d

    for u, a in x.terms.items():
        du = deg(u)
        for v, b in y.terms.items():
            c = a * b
            w = u + v
            out[w] = out[w] + c if w in out else c
            e = B.chi_exp(du, deg(v))
            s = -(c.times_zeta(e)) if e % L else -c
            w2 = v + u
            out[w2] = out[w2] + s if w2 in out else s
    return NCPoly._raw(B, out)


def ad_c_power(i: int, n: int, y: NCPoly) -> NCPoly:
    """ad_c(x_i)^n (y)."""
    if n < 0:
        raise InvalidArgument("ad_c power must be non-negative")
    xi = NCPoly.letter(y.braiding, i)
    for _ in range(n):
        y = braided_commutator(xi, y)
    return y


# ---------------------------------------------------------------------------
# Lyndon words and hyperletters
# ---------------------------------------------------------------------------


def _key(u: Sequence[int], order: Optional[Sequence[int]]):
    return tuple(u) if order is None else tuple(order[a] for a in u)


def is_lyndon(u: Sequence[int], order: Optional[Sequence[int]] = None) -> bool:
    """Strictly smaller than each of its proper ends.

    ``order[a]`` is the rank of letter ``a`` in the alphabet (default x1 < x2 < ...).
    """
    u = tuple(u)
    if not u:
        return False
    ku = _key(u, order)
    return all(ku < ku[k:] for k in range(1, len(u)))


def shirshov(u: Sequence[int], order: Optional[Sequence[int]] = None) -> tuple[Word, Word]:
    u = tuple(u)
    if len(u) < 2 or not is_lyndon(u, order):
        raise InvalidArgument(f"Shirshov decomposition needs a Lyndon word of length >= 2, got {word_str(u)}")
    best = None
    for k in range(1, len(u)):
        v, w = u[:k], u[k:]
        if is_lyndon(v, order) and is_lyndon(w, order):
            if best is None or _key(w, order) < _key(best[1], order):
                best = (v, w)
    return best


def lyndon_words(d: Sequence[int], order: Optional[Sequence[int]] = None) -> list[Word]:
    """All Lyndon words of multidegree ``d``, in increasing order."""
    return sorted((w for w in words_of_multidegree(d) if is_lyndon(w, order)), key=lambda w: _key(w, order))


def hyperletter(B: BraidingMatrix, u: Sequence[int], order: Optional[Sequence[int]] = None) -> NCPoly:
    """[u]_c: letters for single-letter u, otherwise [[v]_c, [w]_c]_c along the Shirshov split."""
    u = tuple(u)
    if not is_lyndon(u, order):
        raise InvalidArgument(f"{word_str(u)} is not a Lyndon word")
    return _hyperletter(B, u, None if order is None else tuple(order))


@lru_cache(maxsize=4096)
def _hyperletter(B: BraidingMatrix, u: Word, order) -> NCPoly:
    if len(u) == 1:
        return NCPoly.letter(B, u[0])
    v, w = shirshov(u, order)
    return braided_commutator(_hyperletter(B, v, order), _hyperletter(B, w, order))


# ---------------------------------------------------------------------------
# coproduct
# ---------------------------------------------------------------------------


class TensorElement:
    """An element of T(V) (x) T(V), as a map (left word, right word) -> scalar."""

    __slots__ = ("braiding", "terms")

    def __init__(self, braiding: BraidingMatrix, terms: Optional[dict] = None):
        self.braiding = braiding
        self.terms = {}
        for k, c in (terms or {}).items():
            c = _scalar(braiding, c)
            if not c.is_zero():
                self.terms[(tuple(k[0]), tuple(k[1]))] = c

    @classmethod
    def _raw(cls, braiding, terms):
        obj = cls.__new__(cls)
        obj.braiding = braiding
        obj.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        return obj

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement._raw(self.braiding, out)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + TensorElement._raw(other.braiding, {k: -c for k, c in other.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        """(a (x) b)(c (x) d) = chi(deg b, deg c) ac (x) bd."""
        B = self.braiding
        out: dict = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                k = (a + c, b + d)
                s = (x * y).times_zeta(B.word_chi_exp(b, c))
                out[k] = out[k] + s if k in out else s
        return TensorElement._raw(B, out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    __hash__ = None

    def coefficient(self, left: Sequence[int], right: Sequence[int]) -> CycNumber:
        return self.terms.get((tuple(left), tuple(right)), CycNumber.zero(self.braiding.conductor))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{word_str(a)}⊗{word_str(b)}" for (a, b), c in sorted(self.terms.items()))

    __repr__ = __str__


def _letter_coproduct(B: BraidingMatrix, i: int) -> TensorElement:
    one = CycNumber.one(B.conductor)
    return TensorElement._raw(B, {((i,), ()): one, ((), (i,)): one})


@lru_cache(maxsize=4096)
def _word_coproduct(B: BraidingMatrix, w: Word) -> TensorElement:
    if not w:
        return TensorElement._raw(B, {((), ()): CycNumber.one(B.conductor)})
    return _word_coproduct(B, w[:-1]) * _letter_coproduct(B, w[-1])


def coproduct(p: NCPoly) -> TensorElement:
    """The braided coproduct: letters primitive, multiplicative for the braided product."""
    B = p.braiding
    out: dict = {}
    for w, c in p.terms.items():
        for k, x in _word_coproduct(B, w).terms.items():
            s = x * c
            out[k] = out[k] + s if k in out else s
    return TensorElement._raw(B, out)


# ---------------------------------------------------------------------------
# skew derivations and the Nichols ideal
# ---------------------------------------------------------------------------


def partial(p: NCPoly, i: int) -> NCPoly:
    """Right skew derivation: the coefficient of (-) (x) x_i in the coproduct."""
    B = p.braiding
    e = B.exps
    L = B.conductor
    out: dict = {}
    for w, c in p.terms.items():
        acc = 0
        for k in range(len(w) - 1, -1, -1):
            if w[k] == i:
                v = w[:k] + w[k + 1 :]
                s = c.times_zeta(acc) if acc % L else c
                out[v] = out[v] + s if v in out else s
            acc += e[i][w[k]]
    return NCPoly._raw(B, out)


def words_of_multidegree(d: Sequence[int]) -> list[Word]:
    """All words with letter counts ``d``, in lexicographic order."""
    d = list(d)
    n = sum(d)
    out: list[Word] = []
    cur: list[int] = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for a in range(len(d)):
            if d[a]:
                d[a] -= 1
                cur.append(a)
                rec()
                cur.pop()
                d[a] += 1

    rec()
    return out


def words_of_length(rank: int, n: int) -> Iterator[Word]:
    import itertools

    return itertools.product(range(rank), repeat=n)


def multidegrees_of_total(rank: int, n: int) -> list[tuple[int, ...]]:
    if rank == 1:
        return [(n,)]
    out = []
    for a in range(n, -1, -1):
        for rest in multidegrees_of_total(rank - 1, n - a):
            out.append((a,) + rest)
    return out


def rref(rows: list[list[CycNumber]], ncols: int) -> tuple[list[list[CycNumber]], list[int]]:
    """Reduced row echelon form over Q(zeta_L); returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for k in range(r, len(rows)):
            if not rows[k][col].is_zero():
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        prow = [x * inv if not x.is_zero() else x for x in rows[r]]
        rows[r] = prow
        nz = [t for t in range(col, ncols) if not prow[t].is_zero()]
        for k in range(len(rows)):
            if k != r:
                f = rows[k][col]
                if not f.is_zero():
                    row = rows[k]
                    for t in nz:
                        row[t] = row[t] - f * prow[t]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass
class _Block:
    words: list[Word]
    index: dict[Word, int]
    rows: list[list[CycNumber]]
    pivots: list[int]

    @property
    def dim(self) -> int:
        return len(self.rows)


class DegreeOverflow(ResourceOverflow):
    """A multidegree block would exceed the configured word budget."""


class NicholsAlgebra:
    """Degreewise data of B(V) = T(V)/I(V) for a diagonal braiding."""

    def __init__(self, braiding: BraidingMatrix, max_words: int = 50000):
        self.braiding = braiding
        self.max_words = max_words
        self._blocks: dict[tuple[int, ...], _Block] = {}

    def block(self, d: Sequence[int]) -> _Block:
        d = tuple(d)
        blk = self._blocks.get(d)
        if blk is None:
            blk = self._blocks[d] = self._compute(d)
        return blk

    def _compute(self, d: tuple[int, ...]) -> _Block:
        B = self.braiding
        n = sum(d)
        zero = CycNumber.zero(B.conductor)
        one = CycNumber.one(B.conductor)
        if n <= 1:
            words = words_of_multidegree(d)
            return _Block(words, {w: k for k, w in enumerate(words)}, [[one]], [0])
        prev = {}
        for i in range(B.rank):
            if d[i]:
                pd = tuple(x - (t == i) for t, x in enumerate(d))
                pb = self.block(pd)
                if pb.rows:
                    prev[i] = pb
        if not prev:
            return _Block([], {}, [], [])
        words = words_of_multidegree(d)
        if len(words) > self.max_words:
            raise DegreeOverflow(f"multidegree {d} has {len(words)} words (budget {self.max_words})")
        index = {w: k for k, w in enumerate(words)}
        e = B.exps
        L = B.conductor
        rows = []
        for i, pb in prev.items():
            # partial_i(w) = sum over positions k with w[k] = i of chi-scalar * (w minus k)
            stencil = []
            for w in words:
                terms = []
                acc = 0
                for k in range(len(w) - 1, -1, -1):
                    if w[k] == i:
                        terms.append((pb.index[w[:k] + w[k + 1 :]], acc % L))
                    acc += e[i][w[k]]
                stencil.append(terms)
            for r in pb.rows:
                new = []
                for terms in stencil:
                    acc_val = zero
                    for idx, ex in terms:
                        x = r[idx]
                        if not x.is_zero():
                            acc_val = acc_val + (x.times_zeta(ex) if ex else x)
                    new.append(acc_val)
                rows.append(new)
        red, piv = rref(rows, len(words))
        return _Block(words, index, red, piv)

    def dimension(self, d: Sequence[int]) -> int:
        return self.block(d).dim

    def hilbert_series(self, D: int) -> list[int]:
        if D < 0:
            raise InvalidArgument("degree bound must be non-negative")
        return [sum(self.dimension(d) for d in multidegrees_of_total(self.braiding.rank, n)) for n in range(D + 1)]

    def contains(self, p: NCPoly) -> bool:
        """Membership of a (total-degree homogeneous) polynomial in I(V)."""
        if p.braiding != self.braiding:
            raise InvalidArgument("polynomial belongs to another braiding")
        if len(p.degrees()) > 1:
            raise InvalidArgument("membership test needs a homogeneous polynomial")
        for d, comp in p.components().items():
            blk = self.block(d)
            if not blk.rows:
                continue
            vec = [(blk.index[w], c) for w, c in comp.terms.items()]
            for row in blk.rows:
                acc = None
                for k, c in vec:
                    x = row[k]
                    if not x.is_zero():
                        t = x * c
                        acc = t if acc is None else acc + t
                if acc is not None and not acc.is_zero():
                    return False
        return True

    def ideal_basis_multidegree(self, d: Sequence[int]) -> list[NCPoly]:
        B = self.braiding
        d = tuple(d)
        if sum(d) < 2:
            return []
        blk = self.block(d)
        words = blk.words or words_of_multidegree(d)
        one = CycNumber.one(B.conductor)
        pivset = set(blk.pivots)
        basis = []
        for f in range(len(words)):
            if f in pivset:
                continue
            terms = {words[f]: one}
            for row, pc in zip(blk.rows, blk.pivots):
                x = row[f]
                if not x.is_zero():
                    terms[words[pc]] = -x
            basis.append(NCPoly._raw(B, terms))
        return basis

    def ideal_basis(self, n: int) -> list[NCPoly]:
        if n < 2:
            raise InvalidArgument("the Nichols ideal lives in degrees >= 2")
        out = []
        for d in multidegrees_of_total(self.braiding.rank, n):
            out.extend(self.ideal_basis_multidegree(d))
        return out


@lru_cache(maxsize=64)
def nichols_algebra(B: BraidingMatrix) -> NicholsAlgebra:
    return NicholsAlgebra(B)


def nichols_ideal_basis(B: BraidingMatrix, n: int) -> list[NCPoly]:
    return nichols_algebra(B).ideal_basis(n)


def hilbert_series(B: BraidingMatrix, D: int) -> list[int]:
    return nichols_algebra(B).hilbert_series(D)


def in_nichols_ideal(p: NCPoly) -> bool:
    return nichols_algebra(p.braiding).contains(p)
