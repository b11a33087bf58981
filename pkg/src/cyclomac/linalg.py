"""Exact linear algebra over the rational-function field in q, t.

Everything here is pivoted Gaussian elimination over :class:`QTRational`,
whose factored normal form keeps intermediate entries at minor size, plus
the small amount of polynomial machinery needed to compare spectra:
characteristic polynomials (division-free Faddeev-LeVerrier), resultants
(Sylvester determinant), and a Sylvester-equation solver by dense
linearization.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .qt import PoleError, QTPolynomial, QTRational, rat_sum, ratfun
from .scalars import Scalar


class SingularMatrixError(ArithmeticError):
    """Elimination found no usable pivot: the matrix is singular."""


class SylvesterSingularError(SingularMatrixError):
    """The Sylvester linearization is singular: the two diagonal blocks
    share an eigenvalue."""


class RatMatrix:
    """Dense matrix of QTRational entries; immutable by convention."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[object]]):
        self.entries = [[ratfun(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[QTRational.zero()] * n for _ in range(m)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[QTRational.one() if i == j else QTRational.zero()
                     for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> QTRational:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> list[QTRational]:
        return list(self.entries[i])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c: object) -> "RatMatrix":
        c = ratfun(c)
        return RatMatrix([[a * c for a in row] for row in self.entries])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                out_row.append(rat_sum(a * b for a, b in zip(row, col)
                                       if a and b))
            out.append(out_row)
        return RatMatrix(out)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(col) for col in zip(*self.entries)]) if self.entries else self

    def conjugate(self) -> "RatMatrix":
        return RatMatrix([[a.conjugate() for a in row] for row in self.entries])

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def specialize(self, q_to: object = None, t_to: object = None) -> "RatMatrix":
        return RatMatrix([[a.specialize(q_to, t_to) for a in row] for row in self.entries])

    def __str__(self) -> str:
        return "[" + ",\n ".join("[" + ", ".join(str(a) for a in row) + "]"
                                 for row in self.entries) + "]"

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols})"

    def to_json(self) -> list:
        return [[a.to_json() for a in row] for row in self.entries]


def _entry_size(x: QTRational) -> int:
    return x.size()


def solve_linear(a: RatMatrix, rhs: RatMatrix, pivot: str = "light") -> RatMatrix:
    """Exact X with a @ X == rhs, by Gaussian elimination.

    pivot="light" picks the structurally smallest nonzero pivot in each
    column; pivot="first" takes the first nonzero row.  Both must give the
    same X, which the tests use as a uniqueness check."""
    if a.rows != a.cols:
        raise ValueError("coefficient matrix must be square")
    if rhs.rows != a.rows:
        raise ValueError("rhs row count mismatch")
    n = a.rows
    m = rhs.cols
    work = [a.row(i) + rhs.row(i) for i in range(n)]
    for col in range(n):
        cand = [i for i in range(col, n) if work[i][col]]
        if not cand:
            raise SingularMatrixError(f"no pivot in column {col}")
        if pivot == "light":
            best = min(cand, key=lambda i: _entry_size(work[i][col]))
        else:
            best = cand[0]
        if best != col:
            work[col], work[best] = work[best], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv if x else x for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                c = work[i][col]
                work[i] = [x - c * y if y else x for x, y in zip(work[i], work[col])]
    return RatMatrix([row[n:] for row in work])


def inverse(a: RatMatrix, pivot: str = "light") -> RatMatrix:
    return solve_linear(a, RatMatrix.identity(a.rows), pivot=pivot)


def _row_clearer(row) -> QTPolynomial:
    """Smallest monomial-times-factors polynomial whose product with every
    entry of the row is a polynomial."""
    need: Counter = Counter()
    mq = 0
    mt = 0
    for x in row:
        if not x:
            continue
        xmq, xmt, factors = x.denominator_parts()
        mq = min(mq, xmq)
        mt = min(mt, xmt)
        cnt = Counter(factors)
        for f, m in cnt.items():
            if need[f] < m:
                need[f] = m
    out = QTPolynomial.monomial(-mq, -mt)
    for f, m in need.items():
        for _ in range(m):
            out = out * f
    return out


def solve_fraction_free(a: RatMatrix, rhs: RatMatrix) -> RatMatrix:
    """Exact X with a @ X == rhs, keeping intermediates polynomial.

    Each augmented row is scaled to clear its denominators, forward
    elimination runs fraction-free (every step divides exactly by the
    previous pivot), and only the final back substitution returns to
    rational arithmetic.  Much better behaved than plain elimination
    when the entries are rational functions with structured
    denominators."""
    if a.rows != a.cols:
        raise ValueError("coefficient matrix must be square")
    if rhs.rows != a.rows:
        raise ValueError("rhs row count mismatch")
    n = a.rows
    m = rhs.cols
    work: list[list[QTPolynomial]] = []
    for i in range(n):
        row = a.row(i) + rhs.row(i)
        c = ratfun(_row_clearer(row))
        cleared = []
        for x in row:
            y = x * c
            if not y.is_polynomial():
                raise ArithmeticError("row clearing failed")
            cleared.append(y.as_polynomial())
        work.append(cleared)
    prev = QTPolynomial.one()
    for col in range(n):
        cand = [i for i in range(col, n) if work[i][col]]
        if not cand:
            raise SingularMatrixError(f"no pivot in column {col}")
        best = min(cand, key=lambda i: len(work[i][col]))
        if best != col:
            work[col], work[best] = work[best], work[col]
        p = work[col][col]
        for i in range(col + 1, n):
            fac = work[i][col]
            work[i] = (
                [QTPolynomial.zero()] * (col + 1)
                + [((p * work[i][j] - fac * work[col][j]).divexact(prev)
                    if fac else (p * work[i][j]).divexact(prev))
                   for j in range(col + 1, n + m)])
        prev = p
    xs: list[list[QTRational]] = [[QTRational.zero()] * m for _ in range(n)]
    for i in reversed(range(n)):
        dinv = ratfun(work[i][i]).inverse()
        for jm in range(m):
            acc = ratfun(work[i][n + jm])
            for k in range(i + 1, n):
                if work[i][k] and xs[k][jm]:
                    acc = acc - ratfun(work[i][k]) * xs[k][jm]
            xs[i][jm] = acc * dinv
    return RatMatrix(xs)


def determinant(a: RatMatrix) -> QTRational:
    """Exact determinant by fraction-field elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    work = [a.row(i) for i in range(n)]
    det = QTRational.one()
    for col in range(n):
        cand = [i for i in range(col, n) if work[i][col]]
        if not cand:
            return QTRational.zero()
        best = min(cand, key=lambda i: _entry_size(work[i][col]))
        if best != col:
            work[col], work[best] = work[best], work[col]
            det = -det
        pivot_val = work[col][col]
        det = det * pivot_val
        inv = pivot_val.inverse()
        for i in range(col + 1, n):
            if work[i][col]:
                c = work[i][col] * inv
                work[i] = [x - c * y if y else x
                           for x, y in zip(work[i], work[col])]
    return det


class LambdaPoly:
    """Univariate polynomial in an eigenvalue variable, coefficients in the
    q,t function field; constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[object]):
        cs = [ratfun(c) for c in coeffs]
        while len(cs) > 1 and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    def degree(self) -> int:
        if len(self.coeffs) == 1 and not self.coeffs[0]:
            return -1
        return len(self.coeffs) - 1

    def leading(self) -> QTRational:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __call__(self, x: object) -> QTRational:
        x = ratfun(x)
        acc = QTRational.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_matrix(self, a: RatMatrix) -> RatMatrix:
        acc = RatMatrix.zeros(a.rows, a.cols)
        for c in reversed(self.coeffs):
            acc = (acc @ a) + RatMatrix.identity(a.rows).scale(c)
        return acc

    def __str__(self) -> str:
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c and self.degree() >= 0:
                continue
            lam = "" if k == 0 else ("lam" if k == 1 else f"lam^{k}")
            if not lam:
                parts.append(str(c))
            elif c == 1:
                parts.append(lam)
            else:
                cs = str(c)
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{lam}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"LambdaPoly({self})"


def char_poly(a: RatMatrix) -> LambdaPoly:
    """det(lam*I - a) by the Faddeev-LeVerrier recurrence (monic; only
    divisions by integers occur)."""
    if a.rows != a.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs = [QTRational.zero()] * n + [QTRational.one()]
    m = RatMatrix.identity(n)
    for k in range(1, n + 1):
        am = a @ m
        tr = QTRational.zero()
        for i in range(n):
            tr = tr + am[i, i]
        c = -(tr / Fraction(k))
        coeffs[n - k] = c
        if k < n:
            m = am + RatMatrix.identity(n).scale(c)
    return LambdaPoly(coeffs)


def resultant(p: LambdaPoly, r: LambdaPoly) -> QTRational:
    """Resultant of two eigenvalue polynomials, via the Sylvester matrix."""
    dp, dr = p.degree(), r.degree()
    if dp < 0 or dr < 0:
        raise ValueError("resultant of the zero polynomial")
    if dp == 0:
        return p.coeffs[0] ** dr
    if dr == 0:
        return r.coeffs[0] ** dp
    n = dp + dr
    rows = []
    for i in range(dr):
        row = [QTRational.zero()] * n
        for k, c in enumerate(reversed(p.coeffs)):
            row[i + k] = c
        rows.append(row)
    for i in range(dp):
        row = [QTRational.zero()] * n
        for k, c in enumerate(reversed(r.coeffs)):
            row[i + k] = c
        rows.append(row)
    return determinant(RatMatrix(rows))


def _frac_resultant(p: list[Fraction], r: list[Fraction]) -> Fraction:
    # numeric Sylvester determinant over plain rationals, constant term first
    dp, dr = len(p) - 1, len(r) - 1
    if dp == 0:
        return p[0] ** dr
    if dr == 0:
        return r[0] ** dp
    n = dp + dr
    rows = []
    for i in range(dr):
        row = [Fraction(0)] * n
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(dp):
        row = [Fraction(0)] * n
        for k, c in enumerate(reversed(r)):
            row[i + k] = c
        rows.append(row)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col]:
                c = rows[i][col] * inv
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[col])]
    return det


_SAMPLE_POINTS = [(Fraction(2), Fraction(3)), (Fraction(3), Fraction(5)),
                  (Fraction(5), Fraction(7)), (Fraction(2, 3), Fraction(7, 5)),
                  (Fraction(11), Fraction(13))]


def lambda_gcd_trivial(p: LambdaPoly, r: LambdaPoly) -> bool:
    """True iff p and r share no root over any extension of the function
    field, i.e. their resultant is nonzero.

    A nonzero resultant at one rational (q,t) sample certifies the symbolic
    resultant is nonzero, provided both leading coefficients survive the
    specialization (degrees preserved).  Zero samples are inconclusive and
    fall back to the full symbolic resultant."""
    if p.degree() < 0 or r.degree() < 0:
        raise ValueError("gcd test on the zero polynomial")
    for qv, tv in _SAMPLE_POINTS:
        try:
            pc = [c.evaluate(qv, tv) for c in p.coeffs]
            rc = [c.evaluate(qv, tv) for c in r.coeffs]
        except PoleError:
            continue
        if not (_is_rat_list(pc) and _is_rat_list(rc)):
            continue
        if not pc[-1] or not rc[-1]:
            continue
        if _frac_resultant(pc, rc):
            return True
    return bool(resultant(p, r))


def _is_rat_list(cs: list[Scalar]) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in cs)


def solve_sylvester(a: RatMatrix, b: RatMatrix, c: RatMatrix) -> RatMatrix:
    """Unique X with a @ X - X @ b == c, via the dense linearization.

    Solvability for every c is exactly eigenvalue-disjointness of a and b;
    a singular linearization therefore raises SylvesterSingularError."""
    if a.rows != a.cols or b.rows != b.cols:
        raise ValueError("diagonal blocks must be square")
    m, n = a.rows, b.rows
    if (c.rows, c.cols) != (m, n):
        raise ValueError("rhs shape mismatch")
    big = RatMatrix.zeros(m * n, m * n).entries
    for i in range(m):
        for j in range(n):
            eq = i * n + j
            for k in range(m):
                if a[i, k]:
                    big[eq][k * n + j] = big[eq][k * n + j] + a[i, k]
            for l in range(n):
                if b[l, j]:
                    big[eq][i * n + l] = big[eq][i * n + l] - b[l, j]
    rhs = RatMatrix([[c[i, j]] for i in range(m) for j in range(n)])
    try:
        flat = solve_fraction_free(RatMatrix(big), rhs)
    except SingularMatrixError as exc:
        raise SylvesterSingularError(
            "Sylvester system is singular: the blocks share an eigenvalue") from exc
    return RatMatrix([[flat[i * n + j, 0] for j in range(n)] for i in range(m)])
