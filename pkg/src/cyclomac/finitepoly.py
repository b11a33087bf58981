"""Finite-variable symmetric polynomials and the dual-basis family g.

Work here happens in a polynomial ring with shape[k] variables in family
k; an exponent array (one row per family) indexes each monomial.  Rows
beyond a family's length simply do not exist: formulas referring to a
missing variable substitute zero for it, which is exactly the truncation
the infinite-variable identities restrict to.

The g family is built from the generating-function product formula; its
q = 0 specialization has an independent symmetrized expression used as a
cross-check."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterator

from .partitions import (EPartition, MShape, enum_epartitions,
                         enum_partitions, epartition_str, fits_shape,
                         partition)
from .qt import QTPolynomial, QTRational, ratfun
from .report import Report
from .scalars import CycloScalar, conj
from .symfunc import SymFunc, scalar_product, to_basis, z_weight

Rows = tuple[tuple[int, ...], ...]


class SymmetryError(ValueError):
    """A polynomial claimed symmetric is not invariant under row-wise
    variable permutations."""


class FinitePoly:
    """Sparse polynomial in row-grouped variables with QTRational
    coefficients."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: MShape, terms: dict[Rows, QTRational]):
        self.shape = tuple(shape)
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def zero(cls, shape: MShape) -> "FinitePoly":
        return cls(shape, {})

    @classmethod
    def constant(cls, shape: MShape, c: object) -> "FinitePoly":
        c = ratfun(c)
        key = tuple((0,) * m for m in shape)
        return cls(shape, {key: c} if c else {})

    @classmethod
    def one(cls, shape: MShape) -> "FinitePoly":
        return cls.constant(shape, 1)

    @classmethod
    def variable(cls, shape: MShape, row: int, idx: int, power: int = 1) -> "FinitePoly":
        """x_idx^(row) (1-based idx), or zero when idx exceeds the row."""
        if idx > shape[row]:
            return cls.zero(shape)
        rows = [[0] * m for m in shape]
        rows[row][idx - 1] = power
        key = tuple(tuple(r) for r in rows)
        return cls(shape, {key: QTRational.one()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoly):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __add__(self, other: "FinitePoly") -> "FinitePoly":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            new = v if cur is None else cur + v
            if new:
                out[k] = new
            elif cur is not None:
                del out[k]
        return FinitePoly(self.shape, out)

    def __neg__(self) -> "FinitePoly":
        return FinitePoly(self.shape, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "FinitePoly") -> "FinitePoly":
        return self + (-other)

    def __mul__(self, other: object) -> "FinitePoly":
        if isinstance(other, FinitePoly):
            if self.shape != other.shape:
                raise ValueError("shape mismatch")
            out: dict[Rows, QTRational] = {}
            for ka, va in self.terms.items():
                for kb, vb in other.terms.items():
                    key = tuple(tuple(x + y for x, y in zip(ra, rb))
                                for ra, rb in zip(ka, kb))
                    add = va * vb
                    cur = out.get(key)
                    new = add if cur is None else cur + add
                    if new:
                        out[key] = new
                    elif cur is not None:
                        del out[key]
            return FinitePoly(self.shape, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: object) -> "FinitePoly":
        c = ratfun(c)
        if not c:
            return FinitePoly.zero(self.shape)
        return FinitePoly(self.shape, {k: v * c for k, v in self.terms.items()})

    def conjugate(self) -> "FinitePoly":
        return FinitePoly(self.shape, {k: v.conjugate() for k, v in self.terms.items()})

    def specialize(self, q_to: object = None, t_to: object = None) -> "FinitePoly":
        return FinitePoly(self.shape,
                          {k: v.specialize(q_to, t_to) for k, v in self.terms.items()})

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(x for row in k for x in row) for k in self.terms)

    def embed(self, full_shape: MShape, row_offset: int) -> "FinitePoly":
        """Reinterprets in a larger ring whose rows [row_offset:...] are
        this polynomial's rows."""
        out: dict[Rows, QTRational] = {}
        for k, v in self.terms.items():
            rows = [tuple([0] * m) for m in full_shape]
            for i, row in enumerate(k):
                rows[row_offset + i] = row
            out[tuple(rows)] = v
        return FinitePoly(full_shape, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            factors = []
            for row_i, row in enumerate(key):
                for var_i, p in enumerate(row):
                    if p:
                        name = f"x{var_i + 1}^({row_i})"
                        factors.append(name if p == 1 else f"{name}^{p}")
            body = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[key]})*{body}")
        return " + ".join(parts)


def _row_orbit_size(row: tuple[int, ...]) -> int:
    counts: dict[int, int] = {}
    for x in row:
        counts[x] = counts.get(x, 0) + 1
    out = factorial(len(row))
    for c in counts.values():
        out //= factorial(c)
    return out


def _orbit_size(key: Rows) -> int:
    out = 1
    for row in key:
        out *= _row_orbit_size(row)
    return out


def monomial_sum(a: EPartition, shape: MShape) -> FinitePoly:
    """The orbit-sum basis element for a label: in each variable family,
    the sum over distinct permutations of the padded exponent row.  Zero
    when the label does not fit the shape."""
    if not fits_shape(a, shape):
        return FinitePoly.zero(shape)
    per_row = []
    for comp, m in zip(a, shape):
        padded = tuple(comp) + (0,) * (m - len(comp))
        per_row.append(sorted(set(permutations(padded))))
    out: dict[Rows, QTRational] = {}
    for combo in product(*per_row):
        out[tuple(combo)] = QTRational.one()
    return FinitePoly(shape, out)


def power_sum_plain(r: int, j: int, shape: MShape) -> FinitePoly:
    """Ordinary degree-r power sum in the j-th variable family."""
    out = FinitePoly.zero(shape)
    for idx in range(1, shape[j] + 1):
        out = out + FinitePoly.variable(shape, j, idx, r)
    return out


def power_sum_twisted(r: int, i: int, shape: MShape, conjugate: bool = False) -> FinitePoly:
    """Twist-slot power sum: sum_j zeta^(i*j) p_r(family j); the conjugate
    flag flips the root of unity."""
    e = len(shape)
    out = FinitePoly.zero(shape)
    for j in range(e):
        w = CycloScalar.zeta(e, (-i * j) % e if conjugate else (i * j) % e)
        out = out + power_sum_plain(r, j, shape).scale(w)
    return out


def power_sum_label(c: EPartition, shape: MShape, conjugate: bool = False) -> FinitePoly:
    out = FinitePoly.one(shape)
    for i, comp in enumerate(c):
        for r in comp:
            out = out * power_sum_twisted(r, i, shape, conjugate)
    return out


def schur_finite(a: EPartition, shape: MShape) -> FinitePoly:
    """Product-of-Schur basis element in finite variables, via the
    monomial expansion."""
    from .symfunc import _schur_to_monomial_table
    out = FinitePoly.zero(shape)
    for b, w in _schur_to_monomial_table(a, len(shape)):
        if fits_shape(b, shape):
            out = out + monomial_sum(b, shape).scale(w)
    return out


def finite_to_basis(f: FinitePoly, target: str) -> SymFunc:
    """Reads a symmetric polynomial off as an exact combination of orbit
    sums (target "m") or products of Schur functions (target "s").

    Raises SymmetryError when f is not symmetric under permuting
    variables within each family.  The s-output is only faithful when
    every row length is at least the degree."""
    e = len(f.shape)
    reps: dict[Rows, QTRational] = {}
    degree = f.degree()
    for key, v in f.terms.items():
        rep = tuple(tuple(sorted(row, reverse=True)) for row in key)
        if rep == key:
            reps[rep] = v
    orbit_counts: dict[Rows, int] = {}
    for key, v in f.terms.items():
        rep = tuple(tuple(sorted(row, reverse=True)) for row in key)
        if rep not in reps or reps[rep] != v:
            raise SymmetryError(f"coefficient mismatch in orbit of {rep}")
        orbit_counts[rep] = orbit_counts.get(rep, 0) + 1
    for rep, count in orbit_counts.items():
        if count != _orbit_size(rep):
            raise SymmetryError(f"orbit of {rep} is incomplete")
    coeffs = {}
    for rep, v in reps.items():
        label = tuple(partition(row) for row in rep)
        coeffs[label] = v
    out = SymFunc("m", e, max(degree, 0), coeffs)
    return out if target == "m" else to_basis(out, target)


# -- the dual family g ---------------------------------------------------

def _vectors_of_weight(e: int, w: int) -> Iterator[tuple[int, ...]]:
    if e == 1:
        yield (w,)
        return
    for first in range(w, -1, -1):
        for rest in _vectors_of_weight(e - 1, w - first):
            yield (first,) + rest


def _g_factor(k: int, i: int, mu: tuple[int, ...], sign: str,
              shape: MShape) -> FinitePoly:
    # f^(k,i): product over slots a and j = 1..mu_a of
    # (x_i^(k -/+ a) - t x_i^(k -/+ a -/+ 1) q^(e(j-1))) / (1 - q^(e j))
    e = len(shape)
    step = -1 if sign == "+" else 1
    out = FinitePoly.one(shape)
    T = QTPolynomial.var_t()
    for a in range(e):
        row1 = (k + step * a) % e
        row2 = (k + step * a + step) % e
        x1 = FinitePoly.variable(shape, row1, i)
        x2 = FinitePoly.variable(shape, row2, i)
        for j in range(1, mu[a] + 1):
            num = x1 - x2.scale(ratfun(T) * QTPolynomial.monomial(e * (j - 1), 0))
            den = QTRational.from_pair(QTPolynomial.one(),
                                       QTPolynomial.one() - QTPolynomial.monomial(e * j, 0))
            out = out * num.scale(den)
    return out


def g_function(k: int, m: int, sign: str, shape: MShape) -> FinitePoly:
    """Degree-m generator of the dual family for row k, from the
    generating-function expansion; m = 0 gives 1."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if m < 0:
        raise ValueError("negative degree")
    e = len(shape)
    n_vars = max(shape)
    out = FinitePoly.zero(shape)

    @lru_cache(maxsize=None)
    def factor(i: int, mu: tuple[int, ...]) -> FinitePoly:
        base = _g_factor(k, i, mu, sign, shape)
        n_mu = sum(a * mu[a] for a in range(e))
        if n_mu:
            base = base.scale(QTPolynomial.monomial(n_mu, 0))
        return base

    def rec(i: int, rem: int, acc: FinitePoly) -> None:
        nonlocal out
        if not acc:
            return
        if i > n_vars:
            if rem == 0:
                out = out + acc
            return
        for w in range(rem, -1, -1):
            if w == 0:
                rec(i + 1, rem, acc)
                continue
            for mu in _vectors_of_weight(e, w):
                rec(i + 1, rem - w, acc * factor(i, mu))

    rec(1, m, FinitePoly.one(shape))
    return out


def g_epartition(a: EPartition, sign: str, shape: MShape) -> FinitePoly:
    """Product of g generators over all parts of the label."""
    out = FinitePoly.one(shape)
    for k, comp in enumerate(a):
        for r in comp:
            out = out * g_function(k, r, sign, shape)
    return out


def hall_littlewood_q(k: int, m: int, sign: str, shape: MShape) -> FinitePoly:
    """One-parameter analogue of the degree-m generator, via the
    symmetrized product formula; equals g_function at q := 0.

    The symmetrization runs over all indices up to the longer of the two
    rows touched; indices past a row's end read as zero, which matches
    setting the surplus variables of a larger alphabet to zero."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    e = len(shape)
    step = -1 if sign == "+" else 1
    row2 = (k + step) % e
    if m == 0:
        return FinitePoly.one(shape)
    width = max(shape[k % e], shape[row2])
    T = ratfun(QTPolynomial.var_t())
    out = FinitePoly.zero(shape)
    for mu in enum_partitions(m):
        if len(mu) > width:
            continue
        padded = tuple(mu) + (0,) * (width - len(mu))
        stab = 1
        counts: dict[int, int] = {}
        for v in padded:
            counts[v] = counts.get(v, 0) + 1
        for c in counts.values():
            stab *= factorial(c)
        acc = FinitePoly.zero(shape)
        for w in permutations(range(1, width + 1)):
            term = FinitePoly.one(shape)
            for pos in range(len(mu)):
                idx = w[pos]
                x1 = FinitePoly.variable(shape, k, idx)
                x2 = FinitePoly.variable(shape, row2, idx)
                term = term * (x1 - x2.scale(T))
                if mu[pos] > 1:
                    term = term * FinitePoly.variable(shape, k, idx, mu[pos] - 1)
                if not term:
                    break
            acc = acc + term
        out = out + acc.scale(Fraction(1, stab))
    return out


# -- duality and kernel checks ------------------------------------------

def verify_duality(n: int, e: int, shape: MShape) -> Report:
    """Checks that the g family and the orbit sums are dual bases under
    the form, in both pairing orders, for all labels of size n."""
    shape = tuple(shape)
    if min(shape) < n:
        raise ValueError(f"shape {shape} not faithful for degree {n}")
    labels = enum_epartitions(n, shape)
    witnesses = []
    g_plus = {a: finite_to_basis(g_epartition(a, "+", shape), "m") for a in labels}
    g_minus = {a: finite_to_basis(g_epartition(a, "-", shape), "m") for a in labels}
    for a in labels:
        for b in labels:
            want = QTRational.one() if a == b else QTRational.zero()
            got1 = scalar_product(g_plus[a], SymFunc.unit("m", e, b))
            if got1 != want:
                witnesses.append({"pairing": "g+ vs m",
                                  "a": epartition_str(a), "b": epartition_str(b),
                                  "got": str(got1)})
            got2 = scalar_product(SymFunc.unit("m", e, a), g_minus[b])
            if got2 != want:
                witnesses.append({"pairing": "m vs g-",
                                  "a": epartition_str(a), "b": epartition_str(b),
                                  "got": str(got2)})
    return Report("duality", {"n": n, "e": e, "shape": shape},
                  not witnesses, witnesses)


def verify_kernel(n_max: int, e: int, shape: MShape) -> Report:
    """Compares the two expansions of the reproducing kernel in each
    diagonal bidegree d <= n_max: the weighted power-sum sum against the
    g-times-orbit-sum sum, in a doubled variable ring."""
    shape = tuple(shape)
    xy_shape = shape + shape
    witnesses = []
    for d in range(n_max + 1):
        p_side = FinitePoly.zero(xy_shape)
        for c in enum_epartitions(d, (d if d else 1,) * e):
            px = power_sum_label(c, shape).embed(xy_shape, 0)
            py = power_sum_label(c, shape, conjugate=True).embed(xy_shape, e)
            zc = z_weight(c, e)
            p_side = p_side + (px * py).scale(zc.inverse())
        g_side = FinitePoly.zero(xy_shape)
        for a in enum_epartitions(d, shape):
            gx = g_epartition(a, "+", shape).embed(xy_shape, 0)
            my = monomial_sum(a, shape).embed(xy_shape, e)
            g_side = g_side + gx * my
        if p_side != g_side:
            diff = p_side - g_side
            witnesses.append({"d": d, "terms_differ": len(diff.terms)})
    return Report("kernel", {"n_max": n_max, "e": e, "shape": shape},
                  not witnesses, witnesses)
