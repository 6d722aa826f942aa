"""Exact arithmetic in the 2-power cyclotomic fields Q(zeta_n), n in {2, 4, ..., 64}.

An element of Q(zeta_n) is stored as a coefficient vector over Fraction with
respect to the power basis 1, zeta, ..., zeta^(n/2 - 1).  Reduction uses
zeta^(n/2) = -1: x^(n/2) + 1 is the minimal polynomial of a primitive n-th
root of unity when n is a power of two, so the quotient ring is a field and
every nonzero element is invertible.

Levels index the tower: level m holds Q(zeta_{2^m}), so level 1 is Q itself
(zeta_2 = -1) and level 6 is Q(zeta_64), the largest field needed for the
eigenvalues of order-8 monomial matrices with order-8 phases.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

MIN_LEVEL = 1
MAX_LEVEL = 6

#: Root-of-unity orders representable in the tower.
SUPPORTED_ORDERS = tuple(2 ** m for m in range(MIN_LEVEL, MAX_LEVEL + 1))

RationalLike = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def degree_at(level: int) -> int:
    """Extension degree of Q(zeta_{2^level}) over Q, i.e. the coefficient length."""
    return 1 << (level - 1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class CyclotomicNumber:
    """Immutable element of Q(zeta_{2^level}).

    Arithmetic promotes operands to a common level, reduces modulo
    x^(n/2) + 1, and stores the result at the smallest level that represents
    it, so equal values at different construction levels compare (and hash)
    equal and the hot loops stay at low degree.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Iterable[RationalLike], _demote: bool = True):
        if not MIN_LEVEL <= level <= MAX_LEVEL:
            raise ValueError(f"level must be in [{MIN_LEVEL}, {MAX_LEVEL}], got {level}")
        vec = tuple(_as_fraction(c) for c in coeffs)
        if len(vec) != degree_at(level):
            raise ValueError(
                f"level {level} needs {degree_at(level)} coefficients, got {len(vec)}"
            )
        if _demote:
            # Strip to the minimal level: a value lies in the subfield exactly
            # when every odd-index coefficient vanishes.
            while level > MIN_LEVEL and not any(vec[1::2]):
                vec = vec[0::2]
                level -= 1
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", vec)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "CyclotomicNumber":
        return cls(MIN_LEVEL, (_ZERO,))

    @classmethod
    def one(cls) -> "CyclotomicNumber":
        return cls(MIN_LEVEL, (_ONE,))

    @classmethod
    def from_rational(cls, value: RationalLike) -> "CyclotomicNumber":
        return cls(MIN_LEVEL, (_as_fraction(value),))

    # -- representation helpers --------------------------------------------

    def _minimal(self) -> "CyclotomicNumber":
        """Self at its smallest representing level (identity unless promoted)."""
        if self.level == MIN_LEVEL or any(self.coeffs[1::2]):
            return self
        return CyclotomicNumber(self.level, self.coeffs)

    def promote(self, level: int) -> "CyclotomicNumber":
        """The same field element written at a higher level.

        The embedding Q(zeta_n) -> Q(zeta_{2n}) sends zeta_n to zeta_{2n}^2,
        so coefficients move to indices strided by 2**(level difference).
        """
        if level < self.level:
            raise ValueError(f"cannot promote level {self.level} down to {level}")
        if level > MAX_LEVEL:
            raise ValueError(f"level must be at most {MAX_LEVEL}, got {level}")
        if level == self.level:
            return self
        stride = 1 << (level - self.level)
        vec = [_ZERO] * degree_at(level)
        for i, c in enumerate(self.coeffs):
            vec[i * stride] = c
        return CyclotomicNumber(level, vec, _demote=False)

    def _common(self, other: "CyclotomicNumber"):
        level = max(self.level, other.level)
        a = self.promote(level).coeffs if self.level < level else self.coeffs
        b = other.promote(level).coeffs if other.level < level else other.coeffs
        return level, a, b

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return self.level == MIN_LEVEL or not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        level, a, b = self._common(other)
        return CyclotomicNumber(level, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.level, tuple(-c for c in self.coeffs), _demote=False)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        level, a, b = self._common(other)
        d = len(a)
        acc = [_ZERO] * d
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                k = i + j
                if k < d:
                    acc[k] += ai * bj
                else:
                    acc[k - d] -= ai * bj  # zeta^d = -1
        return CyclotomicNumber(level, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm
        modulo x^d + 1 (irreducible, so the gcd with any nonzero element
        is a nonzero constant)."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic inverse of zero")
        me = self._minimal()
        d = len(me.coeffs)
        if d == 1:
            return CyclotomicNumber(MIN_LEVEL, (_ONE / me.coeffs[0],))
        modulus = [_ZERO] * (d + 1)
        modulus[0] = _ONE
        modulus[d] = _ONE
        g, s = _poly_half_xgcd(list(me.coeffs), modulus)
        # g is a nonzero constant; s / g is the inverse, already of degree < d.
        scale = _ONE / g[0]
        inv = [c * scale for c in s]
        inv.extend([_ZERO] * (d - len(inv)))
        return CyclotomicNumber(me.level, inv[:d])

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = CyclotomicNumber.one()
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.level == other.level:
            return self.coeffs == other.coeffs
        _, a, b = self._common(other)
        return a == b

    def __hash__(self):
        me = self._minimal()
        return hash((me.level, me.coeffs))

    def sort_key(self):
        """Deterministic total order key (by minimal level, then coefficients)."""
        me = self._minimal()
        return (me.level, tuple((c.numerator, c.denominator) for c in me.coeffs))

    # -- text form ----------------------------------------------------------

    def to_text(self) -> str:
        """Render as "[c0, c1, ...]@n" with rationals as "a/b" (or "a")."""
        body = ", ".join(str(c) for c in self.coeffs)
        return f"[{body}]@{1 << self.level}"

    @classmethod
    def from_text(cls, text: str) -> "CyclotomicNumber":
        text = text.strip()
        if not (text.startswith("[") and "@" in text):
            raise ValueError(f"malformed cyclotomic literal: {text!r}")
        body, _, order = text.rpartition("@")
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"malformed cyclotomic literal: {text!r}")
        n = int(order)
        if n not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported root-of-unity order {n}")
        inner = body[1:-1].strip()
        coeffs = [Fraction(part.strip()) for part in inner.split(",")] if inner else []
        return cls(n.bit_length() - 1, coeffs)

    def __repr__(self):
        return f"CyclotomicNumber({self.to_text()})"

    __str__ = __repr__


def _coerce(value):
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicNumber.from_rational(value)
    return NotImplemented


# -- dense rational polynomial helpers for the inverse ----------------------


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = _ONE / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        factor = a[k + len(b) - 1] * inv_lead
        if factor:
            q[k] = factor
            for i, bi in enumerate(b):
                a[k + i] -= factor * bi
    return q, _poly_trim(a)


def _poly_half_xgcd(a: list, b: list):
    """Return (g, s) with s*a = g modulo b and g = gcd(a, b) (b the modulus)."""
    r0, r1 = _poly_trim(list(b)), _poly_trim(list(a))
    s0, s1 = [], [_ONE]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s_next = _poly_sub(s0, _poly_mul(q, s1))
        s0, s1 = s1, s_next
    return r0, s0


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    if not a or not b:
        return []
    acc = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            acc[i + j] += ai * bj
    return _poly_trim(acc)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    out = list(a) + [_ZERO] * max(0, len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


# -- roots of unity ---------------------------------------------------------


def root_of_unity(n: int, k: int = 1) -> CyclotomicNumber:
    """zeta_n^k at the minimal sufficient level.

    Example: root_of_unity(8, 2) is the imaginary unit, root_of_unity(2, 1)
    is -1.  Only 2-power orders up to 64 are representable.
    """
    if n not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported root-of-unity order {n} (need one of {SUPPORTED_ORDERS})")
    level = n.bit_length() - 1
    d = degree_at(level)
    e = k % n
    coeffs = [_ZERO] * d
    if e < d:
        coeffs[e] = _ONE
    else:
        coeffs[e - d] = -_ONE
    return CyclotomicNumber(level, coeffs)


ZERO = CyclotomicNumber.zero()
ONE = CyclotomicNumber.one()
