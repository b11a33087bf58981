"""Partitions, multi-component partitions, and the classical symmetric-group
tables (Murnaghan-Nakayama characters, Kostka numbers) the basis
conversions are built on.

A partition is a tuple of weakly decreasing positive integers (trailing
zeros are stripped on normalization).  A label for the wreath-product
setting is a tuple of e partitions, one per cyclic-group slot."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

Partition = tuple[int, ...]
EPartition = tuple[Partition, ...]
MShape = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Normalizes to a canonical partition tuple; validates monotonicity."""
    ps = tuple(p for p in parts if p != 0)
    if any(p < 0 for p in ps):
        raise ValueError(f"negative part in {ps}")
    if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
        raise ValueError(f"parts not weakly decreasing: {ps}")
    return ps


def partition_weight(lam: Partition) -> int:
    return sum(lam)


def partition_n_stat(lam: Partition) -> int:
    """n(lam) = sum (i-1)*lam_i over rows, rows counted from 1."""
    return sum(i * part for i, part in enumerate(lam))


def z_weight_classical(mu: Partition) -> int:
    """Centralizer order of a permutation of cycle type mu."""
    out = 1
    counts: dict[int, int] = {}
    for part in mu:
        counts[part] = counts.get(part, 0) + 1
    for part, k in counts.items():
        fact = 1
        for i in range(2, k + 1):
            fact *= i
        out *= part**k * fact
    return out


def enum_partitions(n: int, max_len: int | None = None,
                    max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n, largest-part-first recursive order."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n

    def rec(rem: int, bound: int, slots: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rem, bound), 0, -1):
            for rest in rec(rem - first, first, slots - 1):
                yield (first,) + rest

    yield from rec(n, max_part, max_len)


def epartition(components: Iterable[Iterable[int]]) -> EPartition:
    return tuple(partition(c) for c in components)


def epartition_weight(a: EPartition) -> int:
    return sum(sum(c) for c in a)


def epartition_length(a: EPartition) -> int:
    return sum(len(c) for c in a)


def enum_epartitions(n: int, shape: MShape) -> list[EPartition]:
    """All e-component labels of total size n with component k fitting in
    shape[k] rows; deterministic order."""
    e = len(shape)
    if any(m < 1 for m in shape):
        raise ValueError(f"shape entries must be positive: {shape}")

    def rec(k: int, rem: int) -> Iterator[EPartition]:
        if k == e:
            if rem == 0:
                yield ()
            return
        for nk in range(rem, -1, -1):
            for lam in enum_partitions(nk, max_len=shape[k]):
                for rest in rec(k + 1, rem - nk):
                    yield (lam,) + rest

    return list(rec(0, n))


def fits_shape(a: EPartition, shape: MShape) -> bool:
    return len(a) == len(shape) and all(len(c) <= m for c, m in zip(a, shape))


def epartition_str(a: EPartition) -> str:
    """Compact label text, e.g. "(21;1)" or "(-;33)"; commas appear only
    when some part needs more than one digit."""
    comps = []
    for c in a:
        if not c:
            comps.append("-")
        elif all(p <= 9 for p in c):
            comps.append("".join(str(p) for p in c))
        else:
            comps.append(",".join(str(p) for p in c))
    return "(" + ";".join(comps) + ")"


def parse_epartition(text: str) -> EPartition:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    comps = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk in ("", "-"):
            comps.append(())
        elif "," in chunk:
            comps.append(partition(int(x) for x in chunk.split(",")))
        else:
            comps.append(partition(int(ch) for ch in chunk))
    return tuple(comps)


def epartition_to_json(a: EPartition) -> list:
    return [list(c) for c in a]


def epartition_from_json(data: list) -> EPartition:
    return tuple(partition(c) for c in data)


# -- Murnaghan-Nakayama characters --------------------------------------

def _beta_set(lam: Partition, length: int) -> tuple[int, ...]:
    padded = list(lam) + [0] * (length - len(lam))
    return tuple(sorted(padded[i] + (length - 1 - i) for i in range(length)))


@lru_cache(maxsize=None)
def _mn_rec(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r = mu[0]
    rest = mu[1:]
    total = 0
    bset = set(beta)
    for pos, b in enumerate(beta):
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        between = sum(1 for x in beta if nb < x < b)
        nbeta = tuple(sorted(beta[:pos] + beta[pos + 1:] + (nb,)))
        total += (-1) ** between * _mn_rec(nbeta, rest)
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """Symmetric-group character chi^lam at cycle type mu."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    if not lam:
        return 1
    # removing a strip strips one bead; beads never go negative, so the
    # partition's own length suffices
    beta = _beta_set(lam, len(lam))
    return _mn_rec(beta, tuple(sorted(mu, reverse=True)))


# -- Kostka numbers ------------------------------------------------------

def _is_horizontal_strip(outer: Partition, inner: Partition) -> bool:
    # inner subseteq outer, skew has at most one cell per column:
    # outer_1 >= inner_1 >= outer_2 >= inner_2 >= ...
    oi = list(outer) + [0]
    ii = list(inner) + [0] * (len(outer) + 1 - len(inner))
    return all(oi[k] >= ii[k] >= oi[k + 1] for k in range(len(outer)))


@lru_cache(maxsize=None)
def _kostka_rec(lam: Partition, mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    last = mu[-1]
    rest = mu[:-1]
    total = 0
    for nu in enum_partitions(sum(lam) - last, max_part=lam[0] if lam else 0):
        if len(nu) <= len(lam) and _is_horizontal_strip(lam, nu):
            total += _kostka_rec(nu, rest)
    return total


def kostka(lam: Partition, mu: Partition) -> int:
    """Count of semistandard tableaux of shape lam and content mu."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return _kostka_rec(lam, tuple(mu))


@lru_cache(maxsize=None)
def classical_partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in the fixed enumeration order used by the cached
    conversion tables."""
    return tuple(enum_partitions(n))


@lru_cache(maxsize=None)
def inverse_kostka(n: int) -> dict[tuple[Partition, Partition], Fraction]:
    """Entries of the inverse of the Kostka matrix for partitions of n,
    keyed (lam, mu); integer-valued in fact."""
    parts = classical_partitions(n)
    k = len(parts)
    mat = [[Fraction(kostka(parts[i], parts[j])) for j in range(k)] for i in range(k)]
    aug = [row + [Fraction(1) if i == j else Fraction(0) for j in range(k)]
           for i, row in enumerate(mat)]
    for col in range(k):
        piv = next(i for i in range(col, k) if aug[i][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(k):
            if i != col and aug[i][col]:
                c = aug[i][col]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
    out = {}
    for i in range(k):
        for j in range(k):
            v = aug[i][j + k]
            if v:
                out[(parts[i], parts[j])] = v
    return out


def index_vectors(shape: MShape) -> list[tuple[int, ...]]:
    """All 1-based coordinate vectors (i_0, ..., i_{e-1}), i_k in 1..m_k."""
    return [tuple(v) for v in product(*[range(1, m + 1) for m in shape])]
