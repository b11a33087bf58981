"""Difference operators on multi-alphabet symmetric polynomials and the
two-parameter orthogonal bases they characterize.

The degree-r operator acts on a monomial function by shuffling staircase
exponent arrays through cyclic index moves; its matrix over the monomial
basis is block lower triangular with respect to the family grading.  The
orthogonal bases come out of two independent routes: a block LDU sweep of
the Schur Gram matrix, and a block-diagonalization of the operator matrix
solved family pair by family pair.  Both are implemented here, together
with report-producing cross-checks (adjointness, family action, shift
stability, commutation, eigenvalue disjointness of the diagonal blocks).
"""

from fractions import Fraction
from dataclasses import dataclass
from itertools import permutations
from functools import lru_cache

from .linalg import (LambdaPoly, RatMatrix, SingularMatrixError, char_poly,
                     inverse, lambda_gcd_trivial, solve_sylvester)
from .partitions import EPartition, MShape, epartition_str, partition
from .qt import QTPolynomial, QTRational, rat_sum, ratfun
from .report import Report
from .symbols import (Family, OrderConsistencyError, apply_J, default_shape,
                      delta_rows, enum_index_sets, ordered_families, pairing,
                      straighten)
from .symfunc import SymFunc, gram_monomial, gram_schur, to_basis

T_VAR = QTPolynomial.var_t()


class DegeneracyError(ArithmeticError):
    """A diagonal Gram block was singular, so the triangular orthogonal
    basis does not exist at this parameter point."""


# -- the difference operator on the monomial basis ----------------------

def _distinct_row_perms(row: tuple[int, ...]) -> list[tuple[int, ...]]:
    return sorted(set(permutations(row)), reverse=True)


def _padded_rows(a: EPartition, shape: MShape) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(comp) + (0,) * (m - len(comp))
                 for comp, m in zip(a, shape))


def apply_difference(a: EPartition, r: int, sign: str,
                     shape: MShape) -> SymFunc:
    """Image of the monomial function of `a` under the degree-r operator,
    expanded over Schur functions.

    Each row rearrangement of `a` is pushed through every admissible
    index move; the moved staircase array straightens to a signed Schur
    label or dies on a repeat."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    e = len(shape)
    delta = delta_rows(shape)
    moves = enum_index_sets(r, shape)
    acc: dict[EPartition, dict[tuple[int, int], int]] = {}
    for b in _row_perm_product(_padded_rows(a, shape)):
        gamma = tuple(tuple(x + d for x, d in zip(row, drow))
                      for row, drow in zip(b, delta))
        for J in moves:
            texp = pairing(delta, J)
            qexp = pairing(b, J)
            sgn, srt = straighten(apply_J(gamma, J, sign))
            if sgn == 0:
                continue
            label = tuple(partition(x - d for x, d in zip(row, drow))
                          for row, drow in zip(srt, delta))
            bucket = acc.setdefault(label, {})
            bucket[(qexp, texp)] = bucket.get((qexp, texp), 0) + sgn
    coeffs = {}
    for label, bucket in acc.items():
        poly = QTPolynomial.from_terms(
            (k, Fraction(v)) for k, v in bucket.items() if v)
        if poly:
            coeffs[label] = QTRational.from_poly(poly)
    return SymFunc("s", e, sum(sum(p) for p in a), coeffs)


def _row_perm_product(rows):
    if not rows:
        yield ()
        return
    for head in _distinct_row_perms(rows[0]):
        for tail in _row_perm_product(rows[1:]):
            yield (head,) + tail


# -- operator matrices over an ordered label list -----------------------

@dataclass(frozen=True)
class FamilyLayout:
    """Ordered families of one degree at one shape, flattened to a label
    list with the half-open index range of every family."""
    n: int
    shape: MShape
    tie_break: int
    families: tuple[Family, ...]
    labels: tuple[EPartition, ...]
    spans: tuple[tuple[int, int], ...]

    def index(self, a: EPartition) -> int:
        return self.labels.index(a)

    def family_of(self, a: EPartition) -> int:
        i = self.index(a)
        for f, (lo, hi) in enumerate(self.spans):
            if lo <= i < hi:
                return f
        raise ValueError(a)


@lru_cache(maxsize=None)
def family_layout(n: int, shape: MShape, tie_break: int = 0) -> FamilyLayout:
    fams = tuple(ordered_families(n, shape, (1, 0), tie_break))
    labels = []
    spans = []
    for fam in fams:
        lo = len(labels)
        labels.extend(fam.labels())
        spans.append((lo, len(labels)))
    return FamilyLayout(n, tuple(shape), tie_break, fams,
                        tuple(labels), tuple(spans))


@dataclass(frozen=True)
class OperatorMatrix:
    layout: FamilyLayout
    r: int
    sign: str
    entries: RatMatrix

    def block(self, i: int, j: int) -> RatMatrix:
        li, hi = self.layout.spans[i]
        lj, hj = self.layout.spans[j]
        return self.entries.submatrix(range(li, hi), range(lj, hj))

    def diagonal_block(self, i: int) -> RatMatrix:
        return self.block(i, i)


def operator_matrix(n: int, shape: MShape, r: int = 1, sign: str = "+",
                    tie_break: int = 0) -> OperatorMatrix:
    """Matrix of the degree-r operator on the monomial basis, rows indexed
    by source label.  Support outside the weak lower block triangle is a
    hard error: it would mean the family grading is broken."""
    layout = family_layout(n, tuple(shape), tie_break)
    size = len(layout.labels)
    pos = {a: i for i, a in enumerate(layout.labels)}
    fam_of = {}
    for f, (lo, hi) in enumerate(layout.spans):
        for i in range(lo, hi):
            fam_of[i] = f
    rows = []
    for i, a in enumerate(layout.labels):
        image = to_basis(apply_difference(a, r, sign, shape), "m")
        row = [QTRational.zero()] * size
        for b, c in image.coeffs.items():
            if any(len(comp) > m for comp, m in zip(b, shape)):
                continue
            j = pos[b]
            if fam_of[j] > fam_of[i]:
                raise OrderConsistencyError(
                    f"support of {epartition_str(a)} leaks above its family")
            row[j] = c
        rows.append(row)
    return OperatorMatrix(layout, r, sign, RatMatrix(rows))


def family_block(fam: Family, shape: MShape, r: int = 1,
                 sign: str = "+") -> RatMatrix:
    """Diagonal block of the operator matrix for one family, computed
    directly on its symbols: only index moves that keep the entry multiset
    of the member contribute, with a straightening sign."""
    delta = delta_rows(shape)
    moves = enum_index_sets(r, shape)
    rows_of = [m.rows for m in fam.members]
    pos = {rows: i for i, rows in enumerate(rows_of)}
    size = len(fam.members)
    block = [[QTRational.zero()] * size for _ in range(size)]
    for i, rows in enumerate(rows_of):
        a_pad = tuple(tuple(x - d for x, d in zip(row, drow))
                      for row, drow in zip(rows, delta))
        acc: dict[int, dict[tuple[int, int], int]] = {}
        for J in moves:
            sgn, srt = straighten(apply_J(rows, J, sign))
            if sgn == 0 or srt not in pos:
                continue
            key = (pairing(a_pad, J), pairing(delta, J))
            bucket = acc.setdefault(pos[srt], {})
            bucket[key] = bucket.get(key, 0) + sgn
        for j, bucket in acc.items():
            poly = QTPolynomial.from_terms(
                (k, Fraction(v)) for k, v in bucket.items() if v)
            if poly:
                block[i][j] = QTRational.from_poly(poly)
    return RatMatrix(block)


def delta_weight_sum(shape: MShape) -> QTPolynomial:
    """Sum of t to the staircase pairing over all single index vectors;
    factors as a product of truncated geometric series, one per row."""
    total = QTPolynomial.one()
    for m in shape:
        total = total * QTPolynomial.from_terms(
            ((0, j), Fraction(1)) for j in range(m))
    return total


def normalized_operator_matrix(n: int, shape: MShape, sign: str = "+",
                               tie_break: int = 0) -> OperatorMatrix:
    """Degree-1 operator matrix rescaled by t^-M (M the total variable
    count) and recentered by the staircase weight sum, so that diagonal
    blocks carry the spectral data used downstream."""
    base = operator_matrix(n, tuple(shape), 1, sign, tie_break)
    m_total = sum(shape)
    t_neg = ratfun(T_VAR).inverse() ** m_total
    center = t_neg * ratfun(delta_weight_sum(shape))
    ident = RatMatrix.identity(len(base.layout.labels))
    entries = base.entries.scale(t_neg) - ident.scale(center)
    return OperatorMatrix(base.layout, 1, sign, entries)


def stable_family_blocks(n: int, shape: MShape, sign: str = "+",
                         tie_break: int = 0) -> dict[frozenset, RatMatrix]:
    """Shift-invariant diagonal blocks: t^-M times the difference between
    the degree-1 block and its own value at q := 1.  Keyed by the family's
    label set so blocks can be matched across shapes."""
    layout = family_layout(n, tuple(shape), tie_break)
    m_total = sum(shape)
    t_neg = ratfun(T_VAR).inverse() ** m_total
    out = {}
    for fam in layout.families:
        blk = family_block(fam, shape, 1, sign)
        stable = (blk - blk.specialize(q_to=Fraction(1))).scale(t_neg)
        out[frozenset(fam.labels())] = stable
    return out


# -- the orthogonal bases -----------------------------------------------

def schur_to_monomial_matrix(labels, e: int) -> RatMatrix:
    from .symfunc import _schur_to_monomial_table
    pos = {a: i for i, a in enumerate(labels)}
    size = len(labels)
    rows = [[QTRational.zero()] * size for _ in range(size)]
    for i, a in enumerate(labels):
        for b, c in _schur_to_monomial_table(a, e):
            if b in pos:
                rows[i][pos[b]] = ratfun(c)
    return RatMatrix(rows)


@dataclass(frozen=True)
class MacdonaldBasis:
    """Triangular orthogonal bases of one degree, over the ordered Schur
    labels.  Rows of `xplus`/`xminus` expand the primary functions over
    Schur functions; `qplus`/`qminus` hold the dual normalizations; the
    diagonal Gram blocks are kept for reference."""
    n: int
    e: int
    tie_break: int
    layout: FamilyLayout
    xplus: RatMatrix
    xminus: RatMatrix
    qplus: RatMatrix
    qminus: RatMatrix
    dblocks: tuple[RatMatrix, ...]

    def labels(self) -> tuple[EPartition, ...]:
        return self.layout.labels

    def function(self, kind: str, sign: str, a: EPartition) -> SymFunc:
        mat = {("P", "+"): self.xplus, ("P", "-"): self.xminus,
               ("Q", "+"): self.qplus, ("Q", "-"): self.qminus}[(kind, sign)]
        i = self.layout.index(a)
        coeffs = {b: mat[(i, j)] for j, b in enumerate(self.layout.labels)
                  if mat[(i, j)]}
        return SymFunc("s", self.e, self.n, coeffs)


def build_macdonald(n: int, e: int, tie_break: int = 0) -> MacdonaldBasis:
    """Both signed families of triangular orthogonal functions from the
    Schur Gram matrix.

    Sequential biorthogonal Gram-Schmidt over families: each new plus
    function is its Schur function minus its pairings with the finished
    minus functions of dominance-lower families, resolved through the
    small pairing blocks; the minus functions get the mirror treatment
    through the conjugate slot of the form.  No elimination ever touches
    more than one family's block, so intermediate expressions stay the
    size of the answer."""
    gm = gram_schur(n, e, tie_break)
    layout = family_layout(n, default_shape(n, e), tie_break)
    if tuple(gm.labels) != layout.labels:
        raise OrderConsistencyError("Gram label order disagrees with layout")
    g = gm.entries
    size = len(layout.labels)
    zero = QTRational.zero()
    one = QTRational.one()
    xplus = [[one if i == j else zero for j in range(size)]
             for i in range(size)]
    xminus = [[one if i == j else zero for j in range(size)]
              for i in range(size)]
    qplus = [[zero] * size for _ in range(size)]
    qminus = [[zero] * size for _ in range(size)]
    dblocks: list[RatMatrix] = []
    dinvs: list[RatMatrix] = []
    for f, (lo, hi) in enumerate(layout.spans):
        k = hi - lo
        for g0, (lo0, hi0) in enumerate(layout.spans[:f]):
            k0 = hi0 - lo0
            # pairing of raw Schur rows with the finished lower family
            vplus = [[_dot_conj_row(g, a, xminus[b]) for b in range(lo0, hi0)]
                     for a in range(lo, hi)]
            uminus = [[_dot_row(xplus[b], g, a) for a in range(lo, hi)]
                      for b in range(lo0, hi0)]
            dinv = dinvs[g0]
            for ai, a in enumerate(range(lo, hi)):
                mu = [rat_sum(vplus[ai][b1] * dinv[(b1, b2)]
                              for b1 in range(k0) if vplus[ai][b1])
                      for b2 in range(k0)]
                nu = [rat_sum(dinv[(b2, b1)] * uminus[b1][ai]
                              for b1 in range(k0)
                              if uminus[b1][ai]).conjugate()
                      for b2 in range(k0)]
                for j in range(hi0):
                    cp = rat_sum(mu[b2] * xplus[lo0 + b2][j]
                                 for b2 in range(k0)
                                 if mu[b2] and xplus[lo0 + b2][j])
                    if cp:
                        xplus[a][j] = xplus[a][j] - cp
                    cm = rat_sum(nu[b2] * xminus[lo0 + b2][j]
                                 for b2 in range(k0)
                                 if nu[b2] and xminus[lo0 + b2][j])
                    if cm:
                        xminus[a][j] = xminus[a][j] - cm
        dblk = RatMatrix([[_dot_row(xplus[a], g, b) for b in range(lo, hi)]
                          for a in range(lo, hi)])
        try:
            dinv = inverse(dblk)
        except SingularMatrixError as err:
            raise DegeneracyError(
                f"diagonal pairing block {f} is singular") from err
        dblocks.append(dblk)
        dinvs.append(dinv)
        dinv_bar_t = dinv.transpose().conjugate()
        for bi in range(k):
            for j in range(size):
                qplus[lo + bi][j] = rat_sum(
                    dinv[(bi, bj)] * xplus[lo + bj][j]
                    for bj in range(k) if xplus[lo + bj][j])
                qminus[lo + bi][j] = rat_sum(
                    dinv_bar_t[(bi, bj)] * xminus[lo + bj][j]
                    for bj in range(k) if xminus[lo + bj][j])
    return MacdonaldBasis(n, e, tie_break, layout,
                          RatMatrix(xplus), RatMatrix(xminus),
                          RatMatrix(qplus), RatMatrix(qminus),
                          tuple(dblocks))


def _dot_row(xrow, g: RatMatrix, b: int) -> QTRational:
    """Pairing of a coefficient row with one Schur function: row . G[:, b]."""
    return rat_sum(c * g[(j, b)] for j, c in enumerate(xrow) if c)


def _dot_conj_row(g: RatMatrix, a: int, yrow) -> QTRational:
    """Pairing of one Schur function with a conjugated coefficient row:
    G[a, :] . conj(row)."""
    return rat_sum(g[(a, j)] * c.conjugate()
                   for j, c in enumerate(yrow) if c)


def monomial_transition(basis: MacdonaldBasis, sign: str) -> RatMatrix:
    """Transition matrix from the primary functions to monomials: unit
    block triangular with identity diagonal blocks."""
    x = basis.xplus if sign == "+" else basis.xminus
    return x @ schur_to_monomial_matrix(basis.layout.labels, basis.e)


def transition_from_operator(n: int, e: int, sign: str = "+",
                             tie_break: int = 0) -> RatMatrix:
    """Monomial-basis transition matrix recovered from the degree-1
    operator alone: conjugating the operator matrix to block diagonal
    form fixes every off-diagonal block through a two-sided linear
    equation, solvable exactly when no two diagonal blocks share an
    eigenvalue.  Rescaling and recentering the operator shifts both
    sides of each equation identically, so the plain matrix serves."""
    shape = default_shape(n, e)
    op = operator_matrix(n, shape, 1, sign, tie_break)
    layout = op.layout
    nfam = len(layout.spans)
    blocks: dict[tuple[int, int], RatMatrix] = {}
    for i in range(nfam):
        for j in range(nfam):
            blocks[(i, j)] = op.block(i, j)
    x: dict[tuple[int, int], RatMatrix] = {}
    for i in range(nfam):
        li, hi = layout.spans[i]
        x[(i, i)] = RatMatrix.identity(hi - li)
        for j in range(i - 1, -1, -1):
            rhs = blocks[(i, j)]
            for k in range(j + 1, i):
                rhs = rhs + x[(i, k)] @ blocks[(k, j)]
            x[(i, j)] = solve_sylvester(blocks[(i, i)], blocks[(j, j)], rhs)
    size = len(layout.labels)
    out = RatMatrix.zeros(size, size)
    for (i, j), blk in x.items():
        li, _ = layout.spans[i]
        lj, _ = layout.spans[j]
        for bi in range(blk.rows):
            for bj in range(blk.cols):
                out.entries[li + bi][lj + bj] = blk[(bi, bj)]
    return out


# -- report-producing checks --------------------------------------------

def verify_adjoint(n: int, e: int, r: int = 1) -> Report:
    """The plus and minus operators are adjoint for the sesquilinear
    form: B+ G = G conj(B-)^T over the monomial basis."""
    shape = default_shape(n, e)
    bplus = operator_matrix(n, shape, r, "+").entries
    bminus = operator_matrix(n, shape, r, "-").entries
    gm = gram_monomial(n, e).entries
    lhs = bplus @ gm
    rhs = gm @ bminus.conjugate().transpose()
    witnesses = []
    if lhs != rhs:
        diff = lhs - rhs
        bad = [(i, j) for i in range(diff.rows) for j in range(diff.cols)
               if diff[(i, j)]]
        witnesses.append({"entries_differ": bad[:5], "size": gm.rows})
    return Report("adjoint", {"n": n, "e": e, "r": r},
                  not witnesses, witnesses)


def verify_family_action(n: int, e: int, r: int = 1, sign: str = "+",
                         tie_break: int = 0) -> Report:
    """The operator sends each primary function into the span of its own
    family, with coefficients read off the family's diagonal block:
    checked multiplicatively as W B == blockdiag(B) W, which needs no
    inversion."""
    basis = build_macdonald(n, e, tie_break)
    w = monomial_transition(basis, sign)
    op = operator_matrix(n, default_shape(n, e), r, sign, tie_break)
    spans = basis.layout.spans
    size = len(basis.layout.labels)
    bdiag = RatMatrix.zeros(size, size)
    for f, (lo, hi) in enumerate(spans):
        blk = op.diagonal_block(f)
        for i in range(lo, hi):
            for j in range(lo, hi):
                bdiag.entries[i][j] = blk[(i - lo, j - lo)]
    lhs = w @ op.entries
    rhs = bdiag @ w
    witnesses = []
    if lhs != rhs:
        diff = lhs - rhs
        bad = [(i, j) for i in range(size) for j in range(size)
               if diff[(i, j)]]
        witnesses.append({"entries_differ": bad[:5]})
    return Report("family-action",
                  {"n": n, "e": e, "r": r, "sign": sign},
                  not witnesses, witnesses)


def verify_specialization(n: int, e: int) -> Report:
    """At q := t the Gram matrix is the identity, so both transitions
    collapse to the identity and all four bases coincide with Schur
    functions."""
    basis = build_macdonald(n, e)
    size = len(basis.layout.labels)
    ident = RatMatrix.identity(size)
    witnesses = []
    for name, mat in (("P+", basis.xplus), ("P-", basis.xminus),
                      ("Q+", basis.qplus), ("Q-", basis.qminus)):
        if mat.specialize(q_to=T_VAR) != ident:
            witnesses.append({"matrix": name, "not_identity": True})
    return Report("specialization-q-t", {"n": n, "e": e},
                  not witnesses, witnesses)


def verify_recursion_agreement(n: int, e: int, tie_break: int = 0) -> Report:
    """The operator route and the Gram route produce the same monomial
    transition matrices for both signs."""
    basis = build_macdonald(n, e, tie_break)
    witnesses = []
    for sign in ("+", "-"):
        via_gram = monomial_transition(basis, sign)
        via_op = transition_from_operator(n, e, sign, tie_break)
        if via_gram != via_op:
            witnesses.append({"sign": sign, "transitions_differ": True})
    return Report("recursion-agreement",
                  {"n": n, "e": e, "tie_break": tie_break},
                  not witnesses, witnesses)


def verify_order_independence(n: int, e: int) -> Report:
    """Two admissible total orders (opposite tie-break rules inside
    families) produce identical functions label by label."""
    b0 = build_macdonald(n, e, 0)
    b1 = build_macdonald(n, e, 1)
    witnesses = []
    for sign in ("+", "-"):
        for a in b0.labels():
            f0 = b0.function("P", sign, a)
            f1 = b1.function("P", sign, a)
            if f0.coeffs != f1.coeffs:
                witnesses.append({"sign": sign, "a": epartition_str(a)})
    return Report("order-independence", {"n": n, "e": e},
                  not witnesses, witnesses)


def verify_commutation(n: int, e: int, rmax: int = 2) -> Report:
    """At q := t the operator matrices of all admissible degrees commute
    pairwise."""
    shape = default_shape(n, e)
    top = min(rmax, min(shape))
    mats = [operator_matrix(n, shape, r).entries.specialize(q_to=T_VAR)
            for r in range(1, top + 1)]
    witnesses = []
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] @ mats[j] != mats[j] @ mats[i]:
                witnesses.append({"degrees": (i + 1, j + 1)})
    return Report("commutation-q-t", {"n": n, "e": e, "rmax": top},
                  not witnesses, witnesses)


def verify_shift_stability(n: int, shapes) -> Report:
    """The stabilized diagonal blocks agree across successively larger
    shapes, matched by the family's label set."""
    shapes = [tuple(s) for s in shapes]
    per_shape = [stable_family_blocks(n, s) for s in shapes]
    witnesses = []
    compared = 0
    for prev, cur, s0, s1 in zip(per_shape, per_shape[1:],
                                 shapes, shapes[1:]):
        for key, blk in prev.items():
            if key in cur:
                compared += 1
                if cur[key] != blk:
                    witnesses.append(
                        {"shapes": (s0, s1),
                         "labels": sorted(epartition_str(a) for a in key)})
    if not compared:
        witnesses.append({"no_families_compared": shapes})
    return Report("shift-stability", {"n": n, "shapes": shapes},
                  not witnesses, witnesses)


def eigenvalue_disjointness(n: int, e: int = 2, r: int = 1,
                            sign: str = "+") -> Report:
    """No two families share an eigenvalue of their diagonal operator
    blocks.  Certified through resultants of characteristic polynomials
    (a nonzero resultant at a random rational point suffices; zero falls
    back to the full symbolic computation)."""
    shape = default_shape(n, e)
    layout = family_layout(n, shape)
    m_total = sum(shape)
    t_neg = ratfun(T_VAR).inverse() ** m_total
    center = t_neg * ratfun(delta_weight_sum(shape))
    polys: list[LambdaPoly] = []
    for fam in layout.families:
        blk = family_block(fam, shape, r, sign)
        ident = RatMatrix.identity(len(fam.members))
        polys.append(char_poly(blk.scale(t_neg) - ident.scale(center)))
    witnesses = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not lambda_gcd_trivial(polys[i], polys[j]):
                witnesses.append(
                    {"families": (i, j),
                     "labels": (sorted(epartition_str(a) for a in
                                       layout.families[i].labels()),
                                sorted(epartition_str(a) for a in
                                       layout.families[j].labels()))})
    return Report("eigenvalue-disjointness",
                  {"n": n, "e": e, "r": r, "families": len(polys)},
                  not witnesses, witnesses)
