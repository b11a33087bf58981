from fractions import Fraction
from random import Random

import pytest

from cyclomac.linalg import (LambdaPoly, RatMatrix, SingularMatrixError,
                             SylvesterSingularError, char_poly, determinant,
                             inverse, lambda_gcd_trivial, resultant,
                             solve_linear, solve_sylvester)
from cyclomac.qt import QTPolynomial, QTRational, ratfun

Q = QTPolynomial.var_q()
T = QTPolynomial.var_t()
ONE = QTRational.one()


def test_solve_identity():
    rhs = RatMatrix([[Q], [T]])
    assert solve_linear(RatMatrix.identity(2), rhs) == rhs


def test_solve_diagonal():
    a = RatMatrix([[1 - Q, 0], [0, 1 - T]])
    x = solve_linear(a, RatMatrix([[1], [1]]))
    assert x[0, 0] == QTRational.from_pair(QTPolynomial.one(), 1 - Q)
    assert x[1, 0] == QTRational.from_pair(QTPolynomial.one(), 1 - T)


def _frac_det(m: list[list[Fraction]]) -> Fraction:
    if len(m) == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _frac_det(minor)
    return total


def test_solve_matches_cramer_oracle():
    rnd = Random(1234)
    for _ in range(8):
        a = [[Fraction(rnd.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        det = _frac_det(a)
        if not det:
            continue
        rhs = [[Fraction(rnd.randint(-5, 5))] for _ in range(3)]
        x = solve_linear(RatMatrix(a), RatMatrix(rhs))
        for i in range(3):
            col = [[a[r][c] if c != i else rhs[r][0] for c in range(3)]
                   for r in range(3)]
            assert x[i, 0] == ratfun(_frac_det(col) / det)


def _rand_sym_matrix(rnd: Random, n: int) -> RatMatrix:
    def entry():
        p = QTPolynomial.from_terms(
            [((rnd.randint(0, 2), rnd.randint(0, 2)), Fraction(rnd.randint(-3, 3)))
             for _ in range(rnd.randint(1, 3))])
        return ratfun(p)
    return RatMatrix([[entry() for _ in range(n)] for _ in range(n)])


def test_solve_reverify_and_pivot_independence():
    rnd = Random(77)
    done = 0
    while done < 4:
        a = _rand_sym_matrix(rnd, 3)
        rhs = _rand_sym_matrix(rnd, 3)
        try:
            x1 = solve_linear(a, rhs, pivot="light")
            x2 = solve_linear(a, rhs, pivot="first")
        except SingularMatrixError:
            continue
        assert a @ x1 == rhs
        assert x1 == x2
        done += 1


def test_solve_singular_raises():
    a = RatMatrix([[1, 1], [1, 1]])
    with pytest.raises(SingularMatrixError):
        solve_linear(a, RatMatrix([[1], [1]]))


def test_inverse():
    a = RatMatrix([[1, Q], [0, 1 - T]])
    assert a @ inverse(a) == RatMatrix.identity(2)


def test_determinant():
    a = RatMatrix([[1 - Q, T], [T, 1]])
    assert determinant(a) == ratfun(1 - Q) - ratfun(T) * T
    assert determinant(RatMatrix([[1, 1], [1, 1]])) == 0
    rnd = Random(55)
    for _ in range(6):
        m = [[Fraction(rnd.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
        assert determinant(RatMatrix(m)) == ratfun(_frac_det(m))


def test_char_poly_small():
    p = char_poly(RatMatrix([[1]]))
    assert p.coeffs == [ratfun(-1), ONE]
    b2 = ratfun(T**3 * Q + T * Q)
    p2 = char_poly(RatMatrix([[b2]]))
    assert p2.coeffs == [-b2, ONE]
    # companion matrix of lam^2 - c1*lam - c0
    c0, c1 = ratfun(Q), ratfun(1 - T)
    comp = RatMatrix([[0, c0], [1, c1]])
    p3 = char_poly(comp)
    assert p3.coeffs == [-c0, -c1, ONE]


def test_cayley_hamilton():
    rnd = Random(99)
    for n in (2, 3, 4):
        a = RatMatrix([[Fraction(rnd.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        assert char_poly(a).at_matrix(a).is_zero()
    a = RatMatrix([[ratfun(Q), ratfun(T)], [ONE, ratfun(1 - Q)]])
    assert char_poly(a).at_matrix(a).is_zero()


def test_resultant_and_gcd_trivial():
    lam_minus_1 = LambdaPoly([-1, 1])
    b2 = ratfun(T**3 * Q + T * Q)
    p = LambdaPoly([-b2, 1])
    assert resultant(lam_minus_1, p) == 1 - b2
    assert lambda_gcd_trivial(lam_minus_1, p)
    assert not lambda_gcd_trivial(lam_minus_1, lam_minus_1)
    p2 = LambdaPoly([-ratfun(Q * T), 0, 1])
    r2 = LambdaPoly([-ratfun(Q), 1])
    assert resultant(p2, r2) == ratfun(Q**2) - Q * T
    assert lambda_gcd_trivial(p2, r2)


def test_gcd_trivial_agrees_with_resultant():
    rnd = Random(42)
    fs = [ratfun(Q), ratfun(T), ratfun(1 - Q), ratfun(Q * T + 1), ratfun(2)]
    for _ in range(10):
        f, g, h = rnd.choice(fs), rnd.choice(fs), rnd.choice(fs)
        # (lam - f)(lam - g) vs (lam - h)
        p = LambdaPoly([f * g, -(f + g), 1])
        r = LambdaPoly([-h, 1])
        assert lambda_gcd_trivial(p, r) == bool(resultant(p, r))
        shared = LambdaPoly([f * h, -(f + h), 1])
        assert not lambda_gcd_trivial(p, LambdaPoly([-f, 1]))
        assert lambda_gcd_trivial(shared, LambdaPoly([-g, 1])) == (g != f and g != h)


def test_sylvester_scalar():
    x = solve_sylvester(RatMatrix([[2]]), RatMatrix([[1]]), RatMatrix([[1]]))
    assert x == RatMatrix([[1]])


def test_sylvester_zero_rhs_gives_zero():
    a = RatMatrix([[ratfun(Q), 0], [1, ratfun(T)]])
    b = RatMatrix([[ratfun(1 + Q * T)]])
    x = solve_sylvester(a, b, RatMatrix.zeros(2, 1))
    assert x.is_zero()


def test_sylvester_reverify():
    a = RatMatrix([[ratfun(Q), ratfun(T)], [0, ratfun(Q + 1)]])
    b = RatMatrix([[ratfun(T + 1)]])
    c = RatMatrix([[ratfun(1 - T)], [ratfun(Q * T)]])
    x = solve_sylvester(a, b, c)
    assert (a @ x) - (x @ b) == c


def test_sylvester_shared_eigenvalue_raises():
    with pytest.raises(SylvesterSingularError):
        solve_sylvester(RatMatrix([[1]]), RatMatrix([[1]]), RatMatrix([[1]]))
    a = RatMatrix([[ratfun(Q), 0], [0, ratfun(T)]])
    b = RatMatrix([[ratfun(T)]])
    with pytest.raises(SylvesterSingularError):
        solve_sylvester(a, b, RatMatrix([[1], [1]]))


def test_matrix_ops():
    a = RatMatrix([[1, Q], [T, 0]])
    assert a.transpose() == RatMatrix([[1, T], [Q, 0]])
    assert (a @ RatMatrix.identity(2)) == a
    assert a.submatrix([0], [1]) == RatMatrix([[Q]])
    assert (a - a).is_zero()
    assert a.specialize(q_to=Fraction(1))[0, 1] == 1
