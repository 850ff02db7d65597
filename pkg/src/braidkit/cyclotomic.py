"""Exact arithmetic with roots of unity and elements of cyclotomic fields.

Roots of unity are kept as reduced exponents ``k/N`` in Q/Z, so that the
group law is plain fraction addition.  General scalars live in Q(zeta_L)
and are stored in the power basis ``1, z, ..., z^(phi(L)-1)`` reduced modulo
the L-th cyclotomic polynomial, which makes equality decidable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational

from .errors import InvalidArgument, ParseError, PreconditionError

__all__ = [
    "RootOfUnity",
    "CycNumber",
    "rou_make",
    "rou_mul",
    "rou_pow",
    "rou_order",
    "is_primitive_nth",
    "embed",
    "q_number",
    "q_factorial",
    "q_binomial",
    "cyclotomic_polynomial",
    "euler_phi",
]


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def lcm(*values: int) -> int:
    return reduce(math.lcm, values, 1)


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------


class RootOfUnity:
    """The root of unity exp(2 pi i num/den), canonically reduced.

    ``0 <= num < den`` and ``gcd(num, den) == 1``; the unit is ``0/1``.  The
    multiplicative order is therefore ``den``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise InvalidArgument("root of unity with zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("RootOfUnity is immutable")

    @classmethod
    def parse(cls, text: str) -> RootOfUnity:
        s = str(text).strip()
        if s == "1":
            return ONE
        if s == "-1":
            return MINUS_ONE
        try:
            a, b = s.split("/")
            return cls(int(a), int(b))
        except (ValueError, InvalidArgument) as exc:
            raise ParseError(f"cannot parse root of unity {text!r}; expected 'k/N'") from exc

    @property
    def order(self) -> int:
        return self.den

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_one(self) -> bool:
        return self.num == 0

    def is_primitive(self, n: int) -> bool:
        return self.den == n

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.num, self.den)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity(self.num * other.den + other.num * self.den, self.den * other.den)

    def __truediv__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity(self.num * other.den - other.num * self.den, self.den * other.den)

    def __pow__(self, n: int) -> RootOfUnity:
        return RootOfUnity(self.num * n, self.den)

    def __neg__(self) -> RootOfUnity:
        return self * MINUS_ONE

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other: RootOfUnity) -> bool:
        return (self.den, self.num) < (other.den, other.num)

    def __reduce__(self):
        return (RootOfUnity, (self.num, self.den))

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"RootOfUnity({self.num}, {self.den})"

    def label(self) -> str:
        """Human-readable label in the ``ζ_N^k`` style."""
        if self.den == 1:
            return "1"
        if self.den == 2:
            return "-1"
        if self.num == 1:
            return f"ζ_{self.den}"
        return f"ζ_{self.den}^{self.num}"

    def __complex__(self) -> complex:
        return complex(math.cos(2 * math.pi * self.num / self.den), math.sin(2 * math.pi * self.num / self.den))


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


def rou_make(num: int, den: int) -> RootOfUnity:
    return RootOfUnity(num, den)


def rou_mul(a: RootOfUnity, b: RootOfUnity) -> RootOfUnity:
    return a * b


def rou_pow(a: RootOfUnity, n: int) -> RootOfUnity:
    return a**n


def rou_order(a: RootOfUnity) -> int:
    return a.den


def is_primitive_nth(a: RootOfUnity, n: int) -> bool:
    if n < 1:
        raise InvalidArgument("N must be positive")
    return a.den == n


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise InvalidArgument("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for t in range(dd + 1):
                num[k + t] -= c * den[t]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


class _Field:
    """Tables for Q(zeta_L): reduced powers of zeta and normalized traces."""

    __slots__ = ("L", "phi", "powers", "trace_weights", "zero_vec", "galois")

    def __init__(self, L: int):
        self.L = L
        phi_poly = cyclotomic_polynomial(L)
        self.phi = len(phi_poly) - 1
        phi = self.phi
        powers = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(L):
            powers.append(tuple(vec))
            # multiply by x and reduce with x^phi = -sum(phi_poly[:phi] x^t)
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for t in range(phi):
                    vec[t] -= top * phi_poly[t]
        self.powers = tuple(powers)
        self.zero_vec = (0,) * phi
        weights = []
        for j in range(phi):
            g = math.gcd(j, L)
            weights.append(Fraction(_mobius(L // g), euler_phi(L // g)))
        self.trace_weights = tuple(weights)
        self.galois = tuple(k for k in range(1, L) if math.gcd(k, L) == 1) or (1,)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
        phi = self.phi
        if phi == 1:
            return [a[0] * b[0]]
        prod = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return self.reduce_poly(prod)

    def reduce_poly(self, poly) -> list[int]:
        phi, L, powers = self.phi, self.L, self.powers
        out = list(poly[:phi]) + [0] * max(0, phi - len(poly))
        for k in range(phi, len(poly)):
            c = poly[k]
            if c:
                row = powers[k % L]
                for t in range(phi):
                    if row[t]:
                        out[t] += c * row[t]
        return out

    def shift(self, a: tuple[int, ...], e: int) -> list[int]:
        """Multiply by zeta^e."""
        phi, L, powers = self.phi, self.L, self.powers
        out = [0] * phi
        for j, c in enumerate(a):
            if c:
                row = powers[(j + e) % L]
                for t in range(phi):
                    if row[t]:
                        out[t] += c * row[t]
        return out

    def conjugate(self, a: tuple[int, ...], k: int) -> list[int]:
        phi, L, powers = self.phi, self.L, self.powers
        out = [0] * phi
        for j, c in enumerate(a):
            if c:
                row = powers[(j * k) % L]
                for t in range(phi):
                    if row[t]:
                        out[t] += c * row[t]
        return out


@lru_cache(maxsize=None)
def _field(L: int) -> _Field:
    return _Field(L)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ParseError(f"bad rational {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class CycNumber:
    """An element of the cyclotomic field Q(zeta_L).

    Coordinates are integer numerators over one common positive denominator,
    kept in lowest terms.  Values with different conductors compare and
    combine after lifting to the lcm of the conductors.
    """

    __slots__ = ("conductor", "nums", "den", "_f")

    def __init__(self, conductor: int = 1, coeffs=(0,)):
        if conductor < 1:
            raise InvalidArgument("conductor must be positive")
        f = _field(conductor)
        fr = [_to_fraction(c) for c in coeffs]
        den = lcm(*(x.denominator for x in fr))
        # any polynomial in zeta is accepted and reduced
        self._init(f, f.reduce_poly([int(x * den) for x in fr]), den)

    def _init(self, f: _Field, nums, den: int):
        if den < 0:
            nums, den = [-n for n in nums], -den
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [n // g for n in nums]
            den //= g
        if not any(nums):
            den = 1
        self.conductor = f.L
        self.nums = tuple(nums)
        self.den = den
        self._f = f

    @classmethod
    def _raw(cls, f: _Field, nums, den: int = 1) -> CycNumber:
        obj = cls.__new__(cls)
        obj._init(f, nums, den)
        return obj

    @classmethod
    def zero(cls, conductor: int = 1) -> CycNumber:
        f = _field(conductor)
        return cls._raw(f, f.zero_vec, 1)

    @classmethod
    def one(cls, conductor: int = 1) -> CycNumber:
        return cls.from_rational(1, conductor)

    @classmethod
    def from_rational(cls, value, conductor: int = 1) -> CycNumber:
        f = _field(conductor)
        v = _to_fraction(value)
        nums = [0] * f.phi
        nums[0] = v.numerator
        return cls._raw(f, nums, v.denominator)

    @classmethod
    def zeta_power(cls, conductor: int, e: int) -> CycNumber:
        f = _field(conductor)
        return cls._raw(f, f.powers[e % conductor], 1)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> CycNumber | None:
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, RootOfUnity):
            return embed(other, self.conductor)
        if isinstance(other, (int, Rational)):
            return CycNumber.from_rational(other, self.conductor)
        return None

    def lift(self, conductor: int) -> CycNumber:
        """The same field element written in Q(zeta_conductor)."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise InvalidArgument(f"cannot lift conductor {self.conductor} to {conductor}")
        f = _field(conductor)
        step = conductor // self.conductor
        out = [0] * f.phi
        for j, c in enumerate(self.nums):
            if c:
                row = f.powers[(j * step) % conductor]
                for t in range(f.phi):
                    if row[t]:
                        out[t] += c * row[t]
        return CycNumber._raw(f, out, self.den)

    def _common(self, other: CycNumber) -> tuple[CycNumber, CycNumber]:
        if other.conductor == self.conductor:
            return self, other
        L = math.lcm(self.conductor, other.conductor)
        return self.lift(L), other.lift(L)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        if a.den == b.den:
            return CycNumber._raw(a._f, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return CycNumber._raw(
            a._f, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self) -> CycNumber:
        return CycNumber._raw(self._f, [-x for x in self.nums], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return CycNumber._raw(a._f, a._f.mul(a.nums, b.nums), a.den * b.den)

    __rmul__ = __mul__

    def times_zeta(self, e: int) -> CycNumber:
        """Multiply by zeta_L^e where L is this number's conductor."""
        if e % self.conductor == 0:
            return self
        return CycNumber._raw(self._f, self._f.shift(self.nums, e), self.den)

    def galois(self, k: int) -> CycNumber:
        """Image under the automorphism zeta -> zeta^k (k coprime to L)."""
        return CycNumber._raw(self._f, self._f.conjugate(self.nums, k), self.den)

    def inverse(self) -> CycNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        f = self._f
        if f.phi == 1:
            return CycNumber._raw(f, [self.den], self.nums[0])
        # x^-1 = prod_{sigma != id} sigma(x) / N(x)
        acc = None
        for k in f.galois:
            if k == 1:
                continue
            c = tuple(f.conjugate(self.nums, k))
            acc = c if acc is None else tuple(f.mul(acc, c))
        norm_vec = f.mul(self.nums, acc)
        norm = norm_vec[0]
        if any(norm_vec[1:]) or norm == 0:
            raise ArithmeticError("norm computation failed")
        # (acc / den^(r-1)) / (norm / den^r) = acc * den / norm
        return CycNumber._raw(f, [x * self.den for x in acc], norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> CycNumber:
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNumber.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return a.den == b.den and a.nums == b.nums

    def __hash__(self):
        # normalized trace does not depend on the conductor used
        w = self._f.trace_weights
        t = sum((c * w[j] for j, c in enumerate(self.nums) if c), Fraction(0)) / self.den
        return hash(t)

    # -- conversion -------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def __complex__(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.conductor), math.sin(2 * math.pi / self.conductor))
        return sum(c * z**j for j, c in enumerate(self.nums)) / self.den

    def to_json(self) -> dict:
        return {"L": self.conductor, "c": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CycNumber:
        try:
            return cls(int(data["L"]), [str(c) for c in data["c"]])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad cyclotomic number {data!r}") from exc

    def serialize(self) -> str:
        cs = ", ".join(f'"{c}"' for c in self.coeffs)
        return f"{{L: {self.conductor}, c: [{cs}]}}"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self) -> str:
        return f"CycNumber({self.conductor}, {[str(c) for c in self.coeffs]})"


def embed(r: RootOfUnity, conductor: int | None = None) -> CycNumber:
    """The root of unity ``r`` as an element of Q(zeta_conductor)."""
    L = r.den if conductor is None else conductor
    if L % r.den:
        raise InvalidArgument(f"order {r.den} does not divide conductor {L}")
    return CycNumber.zeta_power(L, r.num * (L // r.den))


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------


def q_number(k: int, q: RootOfUnity) -> CycNumber:
    """(k)_q = 1 + q + ... + q^(k-1)."""
    if k < 0:
        raise InvalidArgument("q-number index must be non-negative")
    L = q.den
    f = _field(L)
    out = [0] * f.phi
    for j in range(k):
        row = f.powers[(j * q.num) % L]
        for t in range(f.phi):
            out[t] += row[t]
    return CycNumber._raw(f, out, 1)


def q_factorial(n: int, q: RootOfUnity) -> CycNumber:
    result = CycNumber.one(q.den)
    for k in range(1, n + 1):
        result = result * q_number(k, q)
    return result


def q_binomial(n: int, j: int, q: RootOfUnity) -> CycNumber:
    if not 0 <= j <= n:
        raise InvalidArgument(f"q-binomial needs 0 <= j <= n, got n={n}, j={j}")
    if q.den <= n:
        raise PreconditionError(
            f"q lies in G_{q.den}, inside the excluded union of G_1..G_{n}; "
            "the q-binomial denominator may vanish"
        )
    return q_factorial(n, q) / (q_factorial(j, q) * q_factorial(n - j, q))
