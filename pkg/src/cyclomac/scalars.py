"""Exact scalars: rationals and cyclotomic numbers.

The ground field throughout the package is Q(zeta_e) where zeta_e is a
primitive e-th root of unity.  For e <= 2 this is just Q and every scalar
is a plain :class:`fractions.Fraction`; for e >= 3 irrational scalars are
:class:`CycloScalar` values.  Arithmetic results demote to ``Fraction``
whenever they happen to be rational, so consumers can treat the two types
uniformly through the module-level helpers :func:`conj`, :func:`scalar_str`
and :func:`is_rational`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Rational = Fraction
Scalar = Union[Fraction, "CycloScalar"]


def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # long division of integer polynomials, assumed exact; low-to-high coeffs
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Coefficients of the e-th cyclotomic polynomial, low degree first."""
    if e < 1:
        raise ValueError(f"order must be positive, got {e}")
    if e == 1:
        return (-1, 1)
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _int_poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _euler_phi(e: int) -> int:
    return sum(1 for k in range(1, e + 1) if gcd(k, e) == 1)


class CycloScalar:
    """Element of Q(zeta_e), stored as coordinates in the power basis
    1, zeta, ..., zeta^(phi(e)-1) modulo the e-th cyclotomic polynomial."""

    __slots__ = ("e", "coords")

    def __init__(self, e: int, coords: tuple[Fraction, ...]):
        self.e = e
        self.coords = coords

    @staticmethod
    def _reduce(e: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        phi = cyclotomic_polynomial(e)
        deg = len(phi) - 1
        coeffs = list(coeffs)
        if len(coeffs) < deg:
            coeffs += [Fraction(0)] * (deg - len(coeffs))
        for k in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[k]
            if c:
                for j in range(deg + 1):
                    coeffs[k - deg + j] -= c * phi[j]
        return tuple(coeffs[:deg])

    @classmethod
    def make(cls, e: int, coeffs: list[Fraction]) -> Scalar:
        """Build from zeta-power coefficients, demoting to Fraction if rational."""
        coords = cls._reduce(e, [Fraction(c) for c in coeffs])
        if all(c == 0 for c in coords[1:]):
            return coords[0]
        return cls(e, coords)

    @classmethod
    def zeta(cls, e: int, k: int = 1) -> Scalar:
        """zeta_e^k as a scalar (a Fraction when e <= 2 or the power is rational)."""
        k %= e
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return cls.make(e, coeffs)

    def _full(self) -> list[Fraction]:
        # coefficients padded to the e exponent classes of zeta
        out = [Fraction(0)] * self.e
        for j, c in enumerate(self.coords):
            out[j] = c
        return out

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloScalar):
            return self.e == other.e and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return False  # rational values are demoted at construction
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.e, self.coords))

    def _coerce(self, other: object) -> Union["CycloScalar", None]:
        if isinstance(other, CycloScalar):
            if other.e != self.e:
                raise ValueError(f"mixed cyclotomic orders {self.e} and {other.e}")
            return other
        if isinstance(other, (int, Fraction)):
            coords = [Fraction(other)] + [Fraction(0)] * (len(self.coords) - 1)
            return CycloScalar(self.e, tuple(coords))
        return None

    def __add__(self, other: object) -> Scalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar.make(self.e, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self) -> "CycloScalar":
        return CycloScalar(self.e, tuple(-c for c in self.coords))

    def __sub__(self, other: object) -> Scalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar.make(self.e, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other: object) -> Scalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar.make(self.e, [b - a for a, b in zip(self.coords, o.coords)])

    def __mul__(self, other: object) -> Scalar:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return CycloScalar.make(self.e, [c * other for c in self.coords])
        if isinstance(other, CycloScalar):
            if other.e != self.e:
                raise ValueError(f"mixed cyclotomic orders {self.e} and {other.e}")
            prod = [Fraction(0)] * (len(self.coords) + len(other.coords) - 1)
            for i, a in enumerate(self.coords):
                if a:
                    for j, b in enumerate(other.coords):
                        if b:
                            prod[i + j] += a * b
            return CycloScalar.make(self.e, prod)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        # invariant: s_i * self + (_) * phi == r_i, and gcd(self, phi) == 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.e)]
        r0, r1 = phi, list(self.coords)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                break
            q, rem = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        unit = r1[0]
        return CycloScalar.make(self.e, [c / unit for c in s1])

    def __truediv__(self, other: object) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, CycloScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: object) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def conjugate(self) -> Scalar:
        """Complex conjugate: substitutes zeta -> zeta^(e-1)."""
        out = [Fraction(0)] * self.e
        for j, c in enumerate(self.coords):
            out[(self.e - j) % self.e] += c
        return CycloScalar.make(self.e, out)

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coords):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = "z" if j == 1 else f"z^{j}"
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        text = terms[0]
        for term in terms[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text

    def __repr__(self) -> str:
        return f"CycloScalar(e={self.e}, {self})"


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    while den and not den[-1]:
        den = den[:-1]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, num[: len(den) - 1]


def conj(x: Scalar) -> Scalar:
    """Complex conjugation on any scalar; fixes rationals."""
    if isinstance(x, CycloScalar):
        return x.conjugate()
    return x


def is_rational(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction))


def scalar_str(x: Scalar) -> str:
    """Canonical text form; cyclotomic values are parenthesized."""
    if isinstance(x, CycloScalar):
        return f"({x})"
    return str(x)


def scalar_from_json(e: int, data: object) -> Scalar:
    """Inverse of :func:`scalar_to_json`."""
    if isinstance(data, str):
        return Fraction(data)
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, list):
        return CycloScalar.make(e, [Fraction(c) for c in data])
    raise ValueError(f"cannot parse scalar from {data!r}")


def scalar_to_json(x: Scalar) -> object:
    """JSON form: rationals as strings, cyclotomic values as coordinate lists."""
    if isinstance(x, CycloScalar):
        return [str(c) for c in x.coords]
    return str(Fraction(x))
