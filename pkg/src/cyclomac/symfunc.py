"""Symmetric functions for the wreath product: bases, conversions, and the
two-parameter sesquilinear form.

Bases are indexed by e-component labels.  The power-sum basis here is the
twisted one: the degree-r generator in slot i is sum_j zeta^(i*j) times
the ordinary power sum in the j-th variable family, which is what makes
the form diagonal.  Conversions go through the classical character and
Kostka tables componentwise."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

from .linalg import RatMatrix
from .partitions import (EPartition, Partition, classical_partitions,
                         epartition_str, epartition_weight,
                         epartition_length, epartition_from_json,
                         epartition_to_json, inverse_kostka, kostka,
                         mn_character, z_weight_classical)
from .qt import QTPolynomial, QTRational, ratfun
from .scalars import CycloScalar, Scalar, conj
from .symbols import default_shape, ordered_labels

Label = EPartition
Coeffs = dict[Label, QTRational]

_BASES = ("m", "s", "p")


class SymFunc:
    """Finitely supported expansion in one of the bases m, s, p."""

    __slots__ = ("basis", "e", "degree", "coeffs")

    def __init__(self, basis: str, e: int, degree: int, coeffs: Coeffs):
        if basis not in _BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.e = e
        self.degree = degree
        self.coeffs = {a: c for a, c in coeffs.items() if c}
        for a in self.coeffs:
            if len(a) != e or epartition_weight(a) != degree:
                raise ValueError(f"label {a} has wrong shape or size")

    @classmethod
    def unit(cls, basis: str, e: int, a: Label) -> "SymFunc":
        return cls(basis, e, epartition_weight(a), {a: QTRational.one()})

    @classmethod
    def zero(cls, basis: str, e: int, degree: int) -> "SymFunc":
        return cls(basis, e, degree, {})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if (self.basis, self.e, self.degree) != (other.basis, other.e, other.degree):
            return False
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(self.coeffs[a] == other.coeffs[a] for a in self.coeffs)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if (self.basis, self.e, self.degree) != (other.basis, other.e, other.degree):
            raise ValueError("cannot add expansions in different bases or degrees")
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            cur = out.get(a)
            new = c if cur is None else cur + c
            if new:
                out[a] = new
            elif cur is not None:
                del out[a]
        return SymFunc(self.basis, self.e, self.degree, out)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.basis, self.e, self.degree,
                       {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, c: object) -> "SymFunc":
        c = ratfun(c)
        return SymFunc(self.basis, self.e, self.degree,
                       {a: v * c for a, v in self.coeffs.items()})

    def map_coeffs(self, fn: Callable[[QTRational], QTRational]) -> "SymFunc":
        return SymFunc(self.basis, self.e, self.degree,
                       {a: fn(c) for a, c in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for a in sorted(self.coeffs):
            c = self.coeffs[a]
            head = f"{self.basis}[{epartition_str(a)}]"
            if c == 1:
                parts.append(head)
            elif c == -1:
                parts.append(f"-{head}")
            else:
                cs = str(c)
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{head}")
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def to_json(self) -> dict:
        terms = [[epartition_to_json(a), self.coeffs[a].to_json()]
                 for a in sorted(self.coeffs)]
        return {"basis": self.basis, "e": self.e, "degree": self.degree,
                "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "SymFunc":
        e = data["e"]
        coeffs = {epartition_from_json(lab): QTRational.from_json(e, c)
                  for lab, c in data["terms"]}
        return cls(data["basis"], e, data["degree"], coeffs)


# -- scalar-level conversion tables --------------------------------------

def _zeta(e: int, k: int) -> Scalar:
    return CycloScalar.zeta(e, k)


@lru_cache(maxsize=None)
def _component_char_expansion(lam: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    # s_lam = sum_mu z_mu^-1 chi^lam(mu) p_mu, classically, per component
    n = sum(lam)
    out = []
    for mu in classical_partitions(n):
        chi = mn_character(lam, mu)
        if chi:
            out.append((mu, Fraction(chi, z_weight_classical(mu))))
    return tuple(out)


@lru_cache(maxsize=None)
def _schur_to_power_table(a: Label, e: int) -> tuple[tuple[Label, Scalar], ...]:
    """Coefficients of the twisted power sums in the expansion of the
    product-of-Schur basis element with label a."""
    # per component: s -> classical p; then each degree-r factor from
    # component j spreads over twist slots i with weight zeta^(-i*j)/e
    acc: dict[Label, Scalar] = {tuple(() for _ in range(e)): Fraction(1)}
    for j, comp in enumerate(a):
        if not comp:
            continue
        new_acc: dict[Label, Scalar] = {}
        for mu, coeff in _component_char_expansion(comp):
            for assign in product(range(e), repeat=len(mu)):
                w: Scalar = coeff
                for i in assign:
                    w = w * _zeta(e, (-i * j) % e) * Fraction(1, e)
                for base_label, base_c in acc.items():
                    bins = [list(c) for c in base_label]
                    for r, i in zip(mu, assign):
                        bins[i].append(r)
                    label = tuple(tuple(sorted(b, reverse=True)) for b in bins)
                    cur = new_acc.get(label)
                    add = base_c * w
                    new = add if cur is None else cur + add
                    if new:
                        new_acc[label] = new
                    elif cur is not None:
                        del new_acc[label]
        acc = new_acc
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _power_to_schur_table(c: Label, e: int) -> tuple[tuple[Label, Scalar], ...]:
    """Expansion of a twisted power-sum basis element into products of
    Schur functions."""
    # slot i, degree r: p_r^(i) = sum_j zeta^(i*j) p_r(x^(j)); assign each
    # part to a source component, then classical p -> s per component
    parts = [(i, r) for i in range(e) for r in c[i]]
    acc: dict[tuple[Partition, ...], Scalar] = {tuple(() for _ in range(e)): Fraction(1)}
    for i, r in parts:
        new_acc: dict[tuple[Partition, ...], Scalar] = {}
        for j in range(e):
            w = _zeta(e, (i * j) % e)
            for comps, base_c in acc.items():
                mult = list(comps)
                mult[j] = tuple(sorted(mult[j] + (r,), reverse=True))
                key = tuple(mult)
                cur = new_acc.get(key)
                add = base_c * w
                new = add if cur is None else cur + add
                if new:
                    new_acc[key] = new
                elif cur is not None:
                    del new_acc[key]
        acc = new_acc
    out: dict[Label, Scalar] = {}
    for comps, coeff in acc.items():
        # comps holds the classical cycle types per component
        per_comp: list[list[tuple[Partition, int]]] = []
        for mu in comps:
            opts = []
            for lam in classical_partitions(sum(mu)):
                chi = mn_character(lam, mu)
                if chi:
                    opts.append((lam, chi))
            per_comp.append(opts)
        for choice in product(*per_comp):
            label = tuple(lam for lam, _ in choice)
            w: Scalar = coeff
            for _, chi in choice:
                w = w * chi
            cur = out.get(label)
            new = w if cur is None else cur + w
            if new:
                out[label] = new
            elif cur is not None:
                del out[label]
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _schur_to_monomial_table(a: Label, e: int) -> tuple[tuple[Label, int], ...]:
    per_comp = []
    for comp in a:
        opts = []
        for mu in classical_partitions(sum(comp)):
            k = kostka(comp, mu)
            if k:
                opts.append((mu, k))
        per_comp.append(opts)
    out = []
    for choice in product(*per_comp):
        label = tuple(mu for mu, _ in choice)
        w = 1
        for _, k in choice:
            w *= k
        out.append((label, w))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _monomial_to_schur_table(a: Label, e: int) -> tuple[tuple[Label, Fraction], ...]:
    per_comp = []
    for comp in a:
        inv = inverse_kostka(sum(comp))
        opts = []
        for lam in classical_partitions(sum(comp)):
            v = inv.get((comp, lam))
            if v:
                opts.append((lam, v))
        per_comp.append(opts)
    out = []
    for choice in product(*per_comp):
        label = tuple(lam for lam, _ in choice)
        w = Fraction(1)
        for _, v in choice:
            w *= v
        out.append((label, w))
    return tuple(sorted(out))


def _apply_table(f: SymFunc, table, target: str) -> SymFunc:
    out: Coeffs = {}
    for a, c in f.coeffs.items():
        for b, w in table(a, f.e):
            cur = out.get(b)
            add = c * w
            new = add if cur is None else cur + add
            if new:
                out[b] = new
            elif cur is not None:
                del out[b]
    return SymFunc(target, f.e, f.degree, out)


def to_basis(f: SymFunc, target: str) -> SymFunc:
    """Exact change of basis between m, s and p."""
    if target not in _BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    if f.basis == "s" and target == "p":
        return _apply_table(f, _schur_to_power_table, "p")
    if f.basis == "p" and target == "s":
        return _apply_table(f, _power_to_schur_table, "s")
    if f.basis == "s" and target == "m":
        return _apply_table(f, _schur_to_monomial_table, "m")
    if f.basis == "m" and target == "s":
        return _apply_table(f, _monomial_to_schur_table, "s")
    # remaining routes go through s
    return to_basis(to_basis(f, "s"), target)


def schur_to_power(a: Label, e: int) -> SymFunc:
    return to_basis(SymFunc.unit("s", e, a), "p")


# -- the sesquilinear form ----------------------------------------------

@lru_cache(maxsize=None)
def z_weight(a: Label, e: int) -> QTRational:
    """Weight of a twisted power-sum label in the diagonal form:
    e^length * prod(classical centralizer orders) *
    prod over slot k, part r of (1 - zeta^k q^r)/(1 - zeta^k t^r)."""
    out = QTRational.from_scalar(Fraction(e) ** epartition_length(a))
    for k, comp in enumerate(a):
        if not comp:
            continue
        out = out * z_weight_classical(comp)
        zk = _zeta(e, k)
        for r in comp:
            num = QTPolynomial.from_terms([((0, 0), Fraction(1)), ((r, 0), -zk)])
            den = QTPolynomial.from_terms([((0, 0), Fraction(1)), ((0, r), -zk)])
            out = out * QTRational.from_pair(num, den)
    return out


def scalar_product(f: SymFunc, g: SymFunc) -> QTRational:
    """The (q,t) form: linear in the first slot, conjugate-linear in the
    second, with the twisted power sums orthogonal."""
    if (f.e, f.degree) != (g.e, g.degree):
        raise ValueError("scalar product needs equal e and degree")
    fp = to_basis(f, "p")
    gp = to_basis(g, "p")
    out = QTRational.zero()
    for a, c in fp.coeffs.items():
        d = gp.coeffs.get(a)
        if d is not None:
            out = out + c * d.conjugate() * z_weight(a, f.e)
    return out


class GramMatrix:
    """Gram matrix of the product-of-Schur basis in assembly order."""

    __slots__ = ("labels", "entries")

    def __init__(self, labels: list[Label], entries: RatMatrix):
        self.labels = labels
        self.entries = entries


@lru_cache(maxsize=None)
def gram_schur(n: int, e: int, tie_break: int = 0) -> GramMatrix:
    labels = ordered_labels(n, default_shape(n, e), tie_break)
    tables = {a: dict(_schur_to_power_table(a, e)) for a in labels}
    zcache: dict[Label, QTRational] = {}
    rows = []
    for a in labels:
        row = []
        ta = tables[a]
        for b in labels:
            tb = tables[b]
            acc = QTRational.zero()
            for c, ca in ta.items():
                cb = tb.get(c)
                if cb is None:
                    continue
                if c not in zcache:
                    zcache[c] = z_weight(c, e)
                acc = acc + ratfun(ca * conj(cb)) * zcache[c]
            row.append(acc)
        rows.append(row)
    return GramMatrix(labels, RatMatrix(rows))


@lru_cache(maxsize=None)
def gram_monomial(n: int, e: int, tie_break: int = 0) -> GramMatrix:
    gs = gram_schur(n, e, tie_break)
    labels = gs.labels
    k = len(labels)
    idx = {a: i for i, a in enumerate(labels)}
    conv = RatMatrix.zeros(k, k).entries
    for i, a in enumerate(labels):
        for b, w in _monomial_to_schur_table(a, e):
            conv[i][idx[b]] = ratfun(w)
    m2s = RatMatrix(conv)
    # the table is rational, so the conjugate transpose is just the transpose
    return GramMatrix(labels, m2s @ gs.entries @ m2s.transpose())
