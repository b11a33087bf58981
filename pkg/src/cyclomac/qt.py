"""Sparse exact polynomials and rational functions in q and t.

:class:`QTPolynomial` stores finitely many terms ``(d_q, d_t) -> scalar``
over Q(zeta_e).  :class:`QTRational` is a quotient of such polynomials kept
in a factored normal form: a scalar prefactor, a (possibly negative) power
of q and t, and multisets of monic multi-term factors for numerator and
denominator.  Keeping denominators factored makes inversion O(1) and lets
sums cancel factor-by-factor instead of growing naive cross products,
which is what keeps Gaussian elimination over this field at minor size.

The externally visible normal form is still a plain (num, den) pair with
monic leading denominator, available as :meth:`QTRational.canonical_pair`.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Optional, Union

from .scalars import CycloScalar, Scalar, conj, is_rational, scalar_str

ScalarLike = Union[int, Fraction, CycloScalar]


class PoleError(ZeroDivisionError):
    """A substitution made a denominator vanish."""


def _grlex(key: tuple[int, int]) -> tuple[int, int, int]:
    dq, dt = key
    return (dq + dt, dq, dt)


def _as_scalar(x: ScalarLike) -> Scalar:
    return Fraction(x) if isinstance(x, int) else x


class QTPolynomial:
    """Polynomial in q, t with scalar coefficients; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[int, int], Scalar]):
        self._terms = terms

    @classmethod
    def from_terms(cls, items: Iterable[tuple[tuple[int, int], ScalarLike]]) -> "QTPolynomial":
        acc: dict[tuple[int, int], Scalar] = {}
        for key, c in items:
            c = _as_scalar(c)
            cur = acc.get(key)
            new = c if cur is None else cur + c
            if new:
                acc[key] = new
            elif cur is not None:
                del acc[key]
        return cls(acc)

    @classmethod
    def zero(cls) -> "QTPolynomial":
        return cls({})

    @classmethod
    def scalar(cls, c: ScalarLike) -> "QTPolynomial":
        c = _as_scalar(c)
        return cls({(0, 0): c} if c else {})

    @classmethod
    def one(cls) -> "QTPolynomial":
        return cls.scalar(1)

    @classmethod
    def monomial(cls, dq: int, dt: int, c: ScalarLike = 1) -> "QTPolynomial":
        c = _as_scalar(c)
        return cls({(dq, dt): c} if c else {})

    @classmethod
    def var_q(cls) -> "QTPolynomial":
        return cls.monomial(1, 0)

    @classmethod
    def var_t(cls) -> "QTPolynomial":
        return cls.monomial(0, 1)

    @property
    def terms(self) -> dict[tuple[int, int], Scalar]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(dq + dt for dq, dt in self._terms)

    def leading(self) -> tuple[tuple[int, int], Scalar]:
        key = max(self._terms, key=_grlex)
        return key, self._terms[key]

    def _coerce(self, other: object) -> Optional["QTPolynomial"]:
        if isinstance(other, QTPolynomial):
            return other
        if isinstance(other, (int, Fraction, CycloScalar)):
            return QTPolynomial.scalar(other)
        return None

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: object) -> "QTPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for key, c in o._terms.items():
            cur = acc.get(key)
            new = c if cur is None else cur + c
            if new:
                acc[key] = new
            elif cur is not None:
                del acc[key]
        return QTPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "QTPolynomial":
        return QTPolynomial({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: object) -> "QTPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "QTPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "QTPolynomial":
        if isinstance(other, (int, Fraction, CycloScalar)):
            c = _as_scalar(other)
            if not c:
                return QTPolynomial.zero()
            return QTPolynomial({key: v * c for key, v in self._terms.items()})
        if isinstance(other, QTPolynomial):
            acc: dict[tuple[int, int], Scalar] = {}
            for (aq, at), a in self._terms.items():
                for (bq, bt), b in other._terms.items():
                    key = (aq + bq, at + bt)
                    c = a * b
                    cur = acc.get(key)
                    new = c if cur is None else cur + c
                    if new:
                        acc[key] = new
                    elif cur is not None:
                        del acc[key]
            return QTPolynomial(acc)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QTPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial; use QTRational")
        out = QTPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "QTPolynomial":
        """Conjugates coefficients (zeta -> zeta^-1); q and t are fixed."""
        return QTPolynomial({key: conj(c) for key, c in self._terms.items()})

    def try_div(self, d: "QTPolynomial") -> Optional["QTPolynomial"]:
        """Exact quotient self/d, or None when the division is not exact."""
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        if not self._terms:
            return QTPolynomial.zero()
        (lq, lt), lc = d.leading()
        rem = dict(self._terms)
        quot: dict[tuple[int, int], Scalar] = {}
        while rem:
            (rq, rt) = max(rem, key=_grlex)
            if rq < lq or rt < lt:
                return None
            c = rem[(rq, rt)] / lc
            key = (rq - lq, rt - lt)
            quot[key] = c
            for (dq, dt), dc in d._terms.items():
                tkey = (key[0] + dq, key[1] + dt)
                cur = rem.get(tkey)
                new = -(c * dc) if cur is None else cur - c * dc
                if new:
                    rem[tkey] = new
                elif cur is not None:
                    del rem[tkey]
        return QTPolynomial(quot)

    def divexact(self, d: "QTPolynomial") -> "QTPolynomial":
        out = self.try_div(d)
        if out is None:
            raise ArithmeticError("polynomial division is not exact")
        return out

    def monomial_content(self) -> tuple[int, int]:
        """Largest (a, b) with q^a*t^b dividing every term."""
        if not self._terms:
            return (0, 0)
        return (min(k[0] for k in self._terms), min(k[1] for k in self._terms))

    def shift(self, dq: int, dt: int) -> "QTPolynomial":
        """Multiplies by q^dq*t^dt; exponents must stay nonnegative."""
        return QTPolynomial({(a + dq, b + dt): c for (a, b), c in self._terms.items()})

    def subst(self, q_to: object = None, t_to: object = None) -> "QTPolynomial":
        """Composition: substitutes polynomials or scalars for q and/or t."""
        qv = QTPolynomial.var_q() if q_to is None else self._coerce(q_to)
        tv = QTPolynomial.var_t() if t_to is None else self._coerce(t_to)
        if qv is None or tv is None:
            raise TypeError("substitution values must be scalars or polynomials")
        qpow: dict[int, QTPolynomial] = {0: QTPolynomial.one()}
        tpow: dict[int, QTPolynomial] = {0: QTPolynomial.one()}
        out = QTPolynomial.zero()
        for (dq, dt), c in sorted(self._terms.items()):
            while dq not in qpow:
                m = max(qpow)
                qpow[m + 1] = qpow[m] * qv
            while dt not in tpow:
                m = max(tpow)
                tpow[m + 1] = tpow[m] * tv
            out = out + qpow[dq] * tpow[dt] * c
        return out

    def evaluate(self, qv: ScalarLike, tv: ScalarLike) -> Scalar:
        qv, tv = _as_scalar(qv), _as_scalar(tv)
        acc: Scalar = Fraction(0)
        for (dq, dt), c in self._terms.items():
            acc = acc + c * qv**dq * tv**dt
        return acc

    def sorted_terms(self) -> list[tuple[tuple[int, int], Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (dq, dt), c in self.sorted_terms():
            factors = []
            if dt:
                factors.append("t" if dt == 1 else f"t^{dt}")
            if dq:
                factors.append("q" if dq == 1 else f"q^{dq}")
            mono = "*".join(factors)
            if not mono:
                parts.append(scalar_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{scalar_str(c)}*{mono}")
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self) -> str:
        return f"QTPolynomial({self})"

    def to_json(self) -> list:
        """Terms as [d_q, d_t, [coords...]] in canonical order."""
        out = []
        for (dq, dt), c in self.sorted_terms():
            coords = [str(x) for x in c.coords] if isinstance(c, CycloScalar) else [str(Fraction(c))]
            out.append([dq, dt, coords])
        return out

    @classmethod
    def from_json(cls, e: int, data: list) -> "QTPolynomial":
        items = []
        for dq, dt, coords in data:
            c = CycloScalar.make(e, [Fraction(x) for x in coords])
            items.append(((dq, dt), c))
        return cls.from_terms(items)


def _factor_key(f: QTPolynomial):
    items = sorted(f.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)
    flat = []
    for (dq, dt), c in items:
        if isinstance(c, CycloScalar):
            flat.append((dq, dt, 1, tuple((x.numerator, x.denominator) for x in c.coords)))
        else:
            c = Fraction(c)
            flat.append((dq, dt, 0, ((c.numerator, c.denominator),)))
    return tuple(flat)


def _normalize_factor(f: QTPolynomial) -> tuple[int, int, Scalar, QTPolynomial]:
    """Splits f as q^a * t^b * c * monic with monomial content stripped."""
    a, b = f.monomial_content()
    if (a, b) != (0, 0):
        f = QTPolynomial({(dq - a, dt - b): c for (dq, dt), c in f.terms.items()})
    _, lead = f.leading()
    if lead != 1:
        f = f * (Fraction(1) / lead if is_rational(lead) else lead.inverse())
    return a, b, lead, f


def _scalar_inv(c: Scalar) -> Scalar:
    return Fraction(1) / c if is_rational(c) else c.inverse()


def _q_degree(p: QTPolynomial) -> int:
    return max(k[0] for k in p.terms)


def _q_coeff(p: QTPolynomial, d: int) -> QTPolynomial:
    return QTPolynomial({(0, dt): c for (dq, dt), c in p.terms.items()
                         if dq == d})


def _monic_t(p: QTPolynomial) -> QTPolynomial:
    """Normalizes a polynomial in t alone by its top coefficient."""
    top = max(k[1] for k in p.terms)
    lead = p.terms[(0, top)]
    return p if lead == 1 else p * _scalar_inv(lead)


def _rem_t(a: QTPolynomial, b: QTPolynomial) -> QTPolynomial:
    """Euclidean remainder for polynomials in t alone."""
    db = max(k[1] for k in b.terms)
    lb = b.terms[(0, db)]
    while a:
        da = max(k[1] for k in a.terms)
        if da < db:
            break
        la = a.terms[(0, da)]
        a = a - b.shift(0, da - db) * (la * _scalar_inv(lb))
    return a


def _gcd_t(a: QTPolynomial, b: QTPolynomial) -> QTPolynomial:
    """Monic gcd of two polynomials in t alone (either may be zero)."""
    while b:
        a, b = b, _rem_t(a, b)
    if not a:
        return QTPolynomial.zero()
    return _monic_t(a)


def _content_q(p: QTPolynomial) -> QTPolynomial:
    """Gcd over t of the coefficients of p viewed as a polynomial in q."""
    acc = QTPolynomial.zero()
    for d in {k[0] for k in p.terms}:
        acc = _gcd_t(acc, _q_coeff(p, d))
        if len(acc) == 1 and max(k[1] for k in acc.terms) == 0:
            break
    return acc


def _prem_q(a: QTPolynomial, b: QTPolynomial) -> QTPolynomial:
    """Pseudo-remainder of a by b in the variable q (coefficients are
    polynomials in t); a is scaled by powers of b's leading coefficient
    as needed, which a later primitive-part pass washes out."""
    db = _q_degree(b)
    lb = _q_coeff(b, db)
    r = a
    while r and _q_degree(r) >= db:
        dr = _q_degree(r)
        lr = _q_coeff(r, dr)
        r = r * lb - b.shift(dr - db, 0) * lr
    return r


def _prim_q(p: QTPolynomial) -> QTPolynomial:
    """Primitive part: p divided by the t-content of its q-coefficients."""
    c = _content_q(p)
    if len(c) == 1 and max(k[1] for k in c.terms) == 0:
        return p
    return p.divexact(c)


def qt_gcd(a: QTPolynomial, b: QTPolynomial) -> QTPolynomial:
    """Monic gcd in both variables, by the primitive remainder sequence
    in q over exact t-polynomial arithmetic.  Returns 1 for coprime
    inputs and the zero polynomial only when both inputs are zero."""
    if not a:
        return _normalize_factor(b)[3].shift(*b.monomial_content()) if b else b
    if not b:
        return _normalize_factor(a)[3].shift(*a.monomial_content())
    aq, at = a.monomial_content()
    bq, bt = b.monomial_content()
    mono = (min(aq, bq), min(at, bt))
    a = QTPolynomial({(dq - aq, dt - at): c for (dq, dt), c in a.terms.items()})
    b = QTPolynomial({(dq - bq, dt - bt): c for (dq, dt), c in b.terms.items()})
    da = _q_degree(a)
    db = _q_degree(b)
    if da == 0 and db == 0:
        g = _gcd_t(a, b)
    elif da == 0:
        g = _gcd_t(a, _content_q(b))
    elif db == 0:
        g = _gcd_t(b, _content_q(a))
    else:
        cg = _gcd_t(_content_q(a), _content_q(b))
        pa = _prim_q(a)
        pb = _prim_q(b)
        if _q_degree(pa) < _q_degree(pb):
            pa, pb = pb, pa
        while pb:
            r = _prem_q(pa, pb)
            if r:
                r = _prim_q(r)
            pa, pb = pb, r
        g = pa if _q_degree(pa) > 0 else QTPolynomial.one()
        if not (len(cg) == 1 and max(k[1] for k in cg.terms) == 0):
            g = g * cg
    g = _normalize_factor(g)[3]
    if mono != (0, 0):
        g = g.shift(*mono)
    return g


class QTRational:
    """Element of the field of rational functions in q, t over Q(zeta_e).

    Stored as scalar * q^mq * t^mt * prod(num) / prod(den) with num and den
    multisets of monic multi-term polynomial factors and no factor shared
    between the two sides.  mq and mt may be negative.
    """

    __slots__ = ("_scalar", "_mq", "_mt", "_num", "_den")

    def __init__(self, scalar: Scalar, mq: int, mt: int,
                 num: tuple[QTPolynomial, ...], den: tuple[QTPolynomial, ...]):
        self._scalar = scalar
        self._mq = mq
        self._mt = mt
        self._num = num
        self._den = den

    @classmethod
    def _make(cls, scalar: Scalar, mq: int, mt: int,
              num: Counter, den: Counter) -> "QTRational":
        if not scalar:
            return cls(Fraction(0), 0, 0, (), ())
        # reduce numerator factors by denominator factors that divide exactly
        changed = True
        while changed:
            shared = num & den
            if shared:
                num = num - shared
                den = den - shared
            if not den:
                break
            changed = False
            for g in list(den):
                if not den[g]:
                    continue
                for f in list(num):
                    if not num[f] or f == g:
                        continue
                    h = f.try_div(g)
                    if h is not None:
                        num[f] -= 1
                        a, b, c, h = _normalize_factor(h)
                        mq += a
                        mt += b
                        scalar = scalar * c
                        if len(h) > 1:
                            num[h] += 1
                        den[g] -= 1
                        changed = True
                        break
                if changed:
                    break
        num_t = tuple(sorted(num.elements(), key=_factor_key))
        den_t = tuple(sorted(den.elements(), key=_factor_key))
        return cls(scalar, mq, mt, num_t, den_t)

    @classmethod
    def from_scalar(cls, c: ScalarLike) -> "QTRational":
        c = _as_scalar(c)
        if not c:
            return cls(Fraction(0), 0, 0, (), ())
        return cls(c, 0, 0, (), ())

    @classmethod
    def zero(cls) -> "QTRational":
        return cls(Fraction(0), 0, 0, (), ())

    @classmethod
    def one(cls) -> "QTRational":
        return cls(Fraction(1), 0, 0, (), ())

    @classmethod
    def from_poly(cls, p: QTPolynomial) -> "QTRational":
        if not p:
            return cls.zero()
        a, b, c, monic = _normalize_factor(p)
        num: Counter = Counter()
        if len(monic) > 1:
            num[monic] += 1
        return cls(c, a, b, tuple(sorted(num.elements(), key=_factor_key)), ())

    @classmethod
    def from_pair(cls, num: QTPolynomial, den: QTPolynomial) -> "QTRational":
        if not den:
            raise ZeroDivisionError("zero denominator")
        return cls.from_poly(num) / cls.from_poly(den)

    def is_zero(self) -> bool:
        return not self._scalar

    def __bool__(self) -> bool:
        return bool(self._scalar)

    def size(self) -> int:
        """Structural weight (term counts over stored factors); cheap proxy
        for how expensive this value is to compute with."""
        return (1 + abs(self._mq) + abs(self._mt)
                + sum(len(f) for f in self._num)
                + sum(len(f) for f in self._den))

    @property
    def num(self) -> QTPolynomial:
        return self.canonical_pair()[0]

    @property
    def den(self) -> QTPolynomial:
        return self.canonical_pair()[1]

    def denominator_parts(self) -> tuple[int, int, tuple[QTPolynomial, ...]]:
        """Monomial exponents (possibly negative) and the monic factor
        multiset of the stored denominator; a polynomial multiple of this
        element must cover all three."""
        return self._mq, self._mt, self._den

    def _expand(self, factors: Iterable[QTPolynomial]) -> QTPolynomial:
        out = QTPolynomial.one()
        for f in factors:
            out = out * f
        return out

    def canonical_pair(self) -> tuple[QTPolynomial, QTPolynomial]:
        """Expanded (num, den) with den monic-leading; den divides exactly."""
        if not self._scalar:
            return QTPolynomial.zero(), QTPolynomial.one()
        num = self._expand(self._num) * self._scalar
        den = self._expand(self._den)
        num = num.shift(max(self._mq, 0), max(self._mt, 0))
        den = den.shift(max(-self._mq, 0), max(-self._mt, 0))
        return num, den

    def __neg__(self) -> "QTRational":
        return QTRational(-self._scalar, self._mq, self._mt, self._num, self._den)

    def inverse(self) -> "QTRational":
        if not self._scalar:
            raise ZeroDivisionError("inverse of zero rational function")
        inv = Fraction(1) / self._scalar if is_rational(self._scalar) else self._scalar.inverse()
        return QTRational(inv, -self._mq, -self._mt, self._den, self._num)

    @staticmethod
    def _coerce(other: object) -> Optional["QTRational"]:
        if isinstance(other, QTRational):
            return other
        if isinstance(other, (int, Fraction, CycloScalar)):
            return QTRational.from_scalar(other)
        if isinstance(other, QTPolynomial):
            return QTRational.from_poly(other)
        return None

    def __mul__(self, other: object) -> "QTRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._scalar or not o._scalar:
            return QTRational.zero()
        return QTRational._make(self._scalar * o._scalar,
                                self._mq + o._mq, self._mt + o._mt,
                                Counter(self._num) + Counter(o._num),
                                Counter(self._den) + Counter(o._den))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QTRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "QTRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __add__(self, other: object) -> "QTRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._scalar:
            return o
        if not o._scalar:
            return self
        den_a, den_b = Counter(self._den), Counter(o._den)
        den_l = den_a | den_b
        mq = min(self._mq, o._mq)
        mt = min(self._mt, o._mt)
        pa = self._expand(Counter(self._num).elements()) * self._scalar
        pa = pa * self._expand((den_l - den_a).elements())
        pa = pa.shift(self._mq - mq, self._mt - mt)
        pb = self._expand(Counter(o._num).elements()) * o._scalar
        pb = pb * self._expand((den_l - den_b).elements())
        pb = pb.shift(o._mq - mq, o._mt - mt)
        s = pa + pb
        if not s:
            return QTRational.zero()
        a, b, c, monic = _normalize_factor(s)
        num: Counter = Counter()
        if len(monic) > 1:
            num[monic] += 1
        return QTRational._make(c, mq + a, mt + b, num, den_l)

    __radd__ = __add__

    def __sub__(self, other: object) -> "QTRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "QTRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __pow__(self, n: int) -> "QTRational":
        base = self.inverse() if n < 0 else self
        out = QTRational.one()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if (self._scalar == o._scalar and self._mq == o._mq and self._mt == o._mt
                and self._num == o._num and self._den == o._den):
            return True
        return not (self - o)

    def conjugate(self) -> "QTRational":
        num = Counter()
        den = Counter()
        scalar = conj(self._scalar)
        mq, mt = self._mq, self._mt
        for f in self._num:
            a, b, c, monic = _normalize_factor(f.conjugate())
            mq += a
            mt += b
            scalar = scalar * c
            if len(monic) > 1:
                num[monic] += 1
        for f in self._den:
            a, b, c, monic = _normalize_factor(f.conjugate())
            mq -= a
            mt -= b
            scalar = scalar / c if is_rational(c) else scalar * c.inverse()
            if len(monic) > 1:
                den[monic] += 1
        return QTRational._make(scalar, mq, mt, num, den)

    def is_polynomial(self) -> bool:
        return not self._den and self._mq >= 0 and self._mt >= 0

    def as_polynomial(self) -> QTPolynomial:
        if not self.is_polynomial():
            raise ArithmeticError(f"not a polynomial: {self}")
        return self.canonical_pair()[0]

    def as_scalar(self) -> Scalar:
        num, den = self.canonical_pair()
        nc = num.terms.get((0, 0), Fraction(0))
        dc = den.terms.get((0, 0), Fraction(0))
        if len(num) > (1 if nc else 0) or len(den) != 1 or not dc:
            raise ArithmeticError(f"not a scalar: {self}")
        return nc / dc if is_rational(dc) else nc * dc.inverse()

    def specialize(self, q_to: object = None, t_to: object = None) -> "QTRational":
        """Substitutes for q and/or t; raises PoleError on a vanishing denominator.

        Values may be scalars or polynomials (pass ``QTPolynomial.var_t()``
        for the substitution q := t)."""
        if not self._scalar:
            return QTRational.zero()
        num_c = Counter(self._num)
        den_c = Counter(self._den)
        scalar = self._scalar
        mq, mt = self._mq, self._mt

        def sub(p: QTPolynomial) -> QTPolynomial:
            return p.subst(q_to, t_to)

        # cancel denominator factors killed by the substitution against the
        # expanded numerator before substituting
        dead = [f for f in den_c if not sub(f)]
        if dead:
            n_exp = self._expand(num_c.elements())
            for f in dead:
                for _ in range(den_c[f]):
                    h = n_exp.try_div(f)
                    if h is None:
                        raise PoleError(f"substitution makes denominator factor vanish: {f}")
                    n_exp = h
                del den_c[f]
            a, b, c, monic = _normalize_factor(n_exp) if n_exp else (0, 0, Fraction(0), n_exp)
            if not n_exp:
                return QTRational.zero()
            mq += a
            mt += b
            scalar = scalar * c
            num_c = Counter()
            if len(monic) > 1:
                num_c[monic] += 1
        qv = QTPolynomial.var_q() if q_to is None else QTPolynomial.scalar(q_to) if isinstance(q_to, (int, Fraction, CycloScalar)) else q_to
        tv = QTPolynomial.var_t() if t_to is None else QTPolynomial.scalar(t_to) if isinstance(t_to, (int, Fraction, CycloScalar)) else t_to
        for name, base, m in (("q", qv, mq), ("t", tv, mt)):
            if m < 0 and not base:
                raise PoleError(f"substitution sends {name}^{m} to a pole")
        out = QTRational.from_scalar(scalar)
        out = out * QTRational.from_poly(qv) ** mq
        out = out * QTRational.from_poly(tv) ** mt
        for f in num_c.elements():
            out = out * QTRational.from_poly(sub(f))
        for f in den_c.elements():
            fs = sub(f)
            if not fs:
                raise PoleError(f"substitution makes denominator factor vanish: {f}")
            out = out / QTRational.from_poly(fs)
        return out

    def evaluate(self, qv: ScalarLike, tv: ScalarLike) -> Scalar:
        """Exact value at scalar q, t; raises PoleError at poles."""
        return self.specialize(q_to=_as_scalar(qv), t_to=_as_scalar(tv)).as_scalar()

    def __str__(self) -> str:
        num, den = self.canonical_pair()
        if den == QTPolynomial.one():
            return str(num)
        num_s = str(num)
        if len(num) > 1:
            num_s = f"({num_s})"
        den_s = str(den)
        if len(den) > 1:
            den_s = f"({den_s})"
        return f"{num_s} / {den_s}"

    def __repr__(self) -> str:
        return f"QTRational({self})"

    def to_json(self) -> dict:
        num, den = self.canonical_pair()
        return {"num": num.to_json(), "den": den.to_json()}

    @classmethod
    def from_json(cls, e: int, data: dict) -> "QTRational":
        return cls.from_pair(QTPolynomial.from_json(e, data["num"]),
                             QTPolynomial.from_json(e, data["den"]))


def ratfun(x: object) -> QTRational:
    """Coerces ints, scalars and polynomials to QTRational."""
    out = QTRational._coerce(x)
    if out is None:
        raise TypeError(f"cannot coerce {type(x).__name__} to QTRational")
    return out


def rat_sum(values: Iterable[QTRational]) -> QTRational:
    """Exact sum over a shared least common denominator.

    Equivalent to repeated addition, but each numerator is expanded once
    against the combined denominator and a single normal-form reduction
    runs at the end; pairwise addition instead re-reduces after every
    step, which gets expensive when many terms share structured
    denominators."""
    vals = [v for v in values if v]
    if not vals:
        return QTRational.zero()
    if len(vals) == 1:
        return vals[0]
    need: Counter = Counter()
    mq = 0
    mt = 0
    for v in vals:
        mq = min(mq, v._mq)
        mt = min(mt, v._mt)
        for f, m in Counter(v._den).items():
            if need[f] < m:
                need[f] = m
    total = QTPolynomial.zero()
    for v in vals:
        p = QTPolynomial.monomial(v._mq - mq, v._mt - mt, v._scalar)
        for f in v._num:
            p = p * f
        for f, m in (need - Counter(v._den)).items():
            for _ in range(m):
                p = p * f
        total = total + p
    if not total:
        return QTRational.zero()
    a, b, c, monic = _normalize_factor(total)
    num: Counter = Counter()
    if len(monic) > 1:
        num[monic] += 1
    return QTRational._make(c, mq + a, mt + b, num, Counter(need))


Q_VAR = QTPolynomial.var_q()
T_VAR = QTPolynomial.var_t()
