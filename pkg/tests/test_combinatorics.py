from itertools import permutations
from random import Random

import pytest

from cyclomac.partitions import (enum_epartitions, enum_partitions,
                                 epartition_str, inverse_kostka, kostka,
                                 classical_partitions, mn_character,
                                 parse_epartition, partition,
                                 partition_n_stat, z_weight_classical)
from cyclomac.symbols import (Family, IndexRangeError, OrderConsistencyError,
                              Symbol, a_value, apply_J, count_index_sets,
                              default_shape, delta_rows, dominance_less,
                              enum_index_sets, families, is_special,
                              ordered_families, pairing, shift, straighten,
                              symbol_of, total_order)


def test_partition_normalization():
    assert partition([3, 2, 0, 0]) == (3, 2)
    assert partition([]) == ()
    with pytest.raises(ValueError):
        partition([1, 2])
    assert partition_n_stat((3, 2, 1)) == 0 * 3 + 1 * 2 + 2 * 1


def test_enum_partitions():
    assert list(enum_partitions(4, max_len=2)) == [(4,), (3, 1), (2, 2)]
    assert len(list(enum_partitions(6))) == 11
    assert list(enum_partitions(0)) == [()]


def test_enum_epartitions():
    got = set(enum_epartitions(2, (2, 1)))
    assert got == {((2,), ()), ((1, 1), ()), ((1,), (1,)), ((), (2,))}
    got5 = set(enum_epartitions(2, (3, 2)))
    assert got5 == got | {((), (1, 1))}
    assert enum_epartitions(0, (2, 1)) == [((), ())]


def test_epartition_text_round_trip():
    for a in enum_epartitions(3, (3, 2)):
        assert parse_epartition(epartition_str(a)) == a
    assert epartition_str(((2,), ())) == "(2;-)"
    assert epartition_str(((), (3, 3))) == "(-;33)"
    assert parse_epartition("(21;1)") == ((2, 1), (1,))
    assert parse_epartition("(10,2;-)") == ((10, 2), ())


def test_symbol_of_examples():
    sym = symbol_of(((2,), ()), (2, 1), (1, 0))
    assert sym.rows == ((3, 0), (0,))
    sym2 = symbol_of(((1,), (1,)), (2, 1), (1, 0))
    assert sym2.rows == ((2, 0), (1,))
    zero = symbol_of(((), ()), (2, 1), (1, 0))
    assert zero.rows == delta_rows((2, 1), (1, 0)) == ((1, 0), (0,))
    with pytest.raises(ValueError):
        symbol_of(((1, 1, 1), ()), (2, 1), (1, 0))


def test_symbol_round_trip():
    for n in range(5):
        for shape in ((2, 1), (3, 2), (3, 3, 3)):
            for a in enum_epartitions(n, shape):
                sym = symbol_of(a, shape, (1, 0))
                assert sym.epartition() == a
                assert all(row[i] > row[i + 1] for row in sym.rows
                           for i in range(len(row) - 1))


def test_shift_examples():
    sym = Symbol((2, 1), (1, 0), ((3, 0), (0,)))
    assert shift(sym).rows == ((4, 1, 0), (1, 0))
    sym2 = Symbol((2, 1), (1, 0), ((2, 0), (1,)))
    assert shift(sym2).rows == ((3, 1, 0), (2, 0))
    zero = symbol_of(((), ()), (2, 1), (1, 0))
    assert shift(zero).rows == delta_rows((3, 2), (1, 0))
    assert shift(sym).epartition() == sym.epartition()


def test_a_value_examples():
    assert a_value(Symbol((2, 1), (1, 0), ((2, 0), (1,)))) == 1
    assert a_value(Symbol((3, 2), (1, 0), ((2, 1, 0), (2, 1)))) == 4
    assert a_value(symbol_of(((), ()), (3, 2), (1, 0))) == 0


def test_a_value_shift_invariant():
    for n in range(5):
        for shape in ((2, 1), (3, 2), (2, 2, 2)):
            for a in enum_epartitions(n, shape):
                sym = symbol_of(a, shape, (1, 0))
                assert a_value(shift(sym)) == a_value(sym)


def test_families_n2():
    fams = ordered_families(2, (3, 2))
    assert sorted(len(f) for f in fams) == [1, 1, 3]
    assert [len(f) for f in fams] == [1, 3, 1]
    assert [f.a for f in fams] == [4, 1, 0]
    specials = [f.special.rows for f in fams]
    assert specials[0] == ((2, 1, 0), (2, 1))
    assert specials[2] == ((4, 1, 0), (1, 0))
    labels0 = fams[0].labels()
    assert labels0 == (((), (1, 1)),)


def test_family_constant_a():
    for n in range(5):
        for shape in ((3, 2), (2, 2, 2)):
            for fam in families(n, shape):
                assert {a_value(s) for s in fam.members} == {fam.a}
                assert sum(1 for s in fam.members if is_special(s)) == 1


def test_ten_element_family():
    fams = families(6, (3, 2))
    big = [f for f in fams if len(f) == 10]
    assert len(big) == 1
    assert big[0].special.rows == ((4, 2, 0), (3, 1))


def test_families_n0():
    fams = families(0, (2, 1))
    assert len(fams) == 1 and len(fams[0]) == 1


def test_dominance():
    fams = ordered_families(2, (3, 2))
    f2, f3, f1 = fams
    assert dominance_less(f2, f3)
    assert dominance_less(f3, f1)
    assert dominance_less(f2, f1)
    assert not dominance_less(f1, f2)
    assert not dominance_less(f1, f1)


def test_total_order_families_contiguous():
    syms = total_order(2, (3, 2))
    keys = [s.entry_multiset() for s in syms]
    seen = []
    for k in keys:
        if not seen or seen[-1] != k:
            assert k not in seen
            seen.append(k)


def test_tie_break_rules_differ_only_inside_families():
    a0 = total_order(3, (4, 3), tie_break=0)
    a1 = total_order(3, (4, 3), tie_break=1)
    assert {s.rows for s in a0} == {s.rows for s in a1}
    m0 = [s.entry_multiset() for s in a0]
    m1 = [s.entry_multiset() for s in a1]
    assert sorted(map(tuple, m0)) == sorted(map(tuple, m1))


def test_straighten():
    sign, rows = straighten(((0, 1), (2,)))
    assert sign == -1 and rows == ((1, 0), (2,))
    sign2, _ = straighten(((2, 2), (1,)))
    assert sign2 == 0
    sign3, rows3 = straighten(((3, 1, 0), (2,)))
    assert sign3 == 1 and rows3 == ((3, 1, 0), (2,))
    rnd = Random(7)
    for _ in range(20):
        vals = rnd.sample(range(10), 4)
        sign, _ = straighten((tuple(vals),))
        par = 1
        arr = list(vals)
        # bubble-sort parity oracle
        for i in range(len(arr)):
            for j in range(len(arr) - 1):
                if arr[j] < arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    par = -par
        assert sign == par


def test_enum_index_sets_counts():
    assert len(enum_index_sets(1, (2, 1))) == 2
    assert len(enum_index_sets(1, (3, 2))) == 6
    pairs = enum_index_sets(2, (2, 2))
    brute = []
    from itertools import combinations, product
    vecs = [v for v in product((1, 2), repeat=2)]
    for v1, v2 in combinations(vecs, 2):
        if v1[0] != v2[0] and v1[1] != v2[1]:
            brute.append((v1, v2))
    assert len(pairs) == len(brute) == count_index_sets(2, (2, 2))
    for r in (1, 2, 3):
        assert len(enum_index_sets(r, (4, 3))) == count_index_sets(r, (4, 3))
    with pytest.raises(IndexRangeError):
        enum_index_sets(3, (3, 2))
    with pytest.raises(IndexRangeError):
        enum_index_sets(0, (3, 2))


def test_apply_J_examples():
    beta = ((2, 1, 0), (2, 1))
    J = ((1, 1),)
    assert pairing(beta, J) == 4
    moved = apply_J(beta, J, "+")
    assert moved == ((2, 1, 0), (2, 1))
    beta2 = ((2, 0), (1,))
    J2 = ((2, 1),)
    assert pairing(beta2, J2) == 1
    assert apply_J(beta2, J2, "+") == ((2, 1), (0,))
    assert pairing(beta2, ()) == 0
    assert apply_J(beta2, (), "+") == beta2


def test_apply_J_involution():
    rnd = Random(11)
    for _ in range(20):
        beta = (tuple(rnd.randint(0, 5) for _ in range(3)),
                tuple(rnd.randint(0, 5) for _ in range(2)))
        for J in enum_index_sets(2, (3, 2)):
            assert apply_J(apply_J(beta, J, "+"), J, "+") == beta
    beta3 = ((4, 1), (3,), (2, 0))
    for J in enum_index_sets(1, (2, 1, 2)):
        assert apply_J(apply_J(beta3, J, "+"), J, "-") == beta3


def test_default_shape():
    assert default_shape(2, 2) == (3, 2)
    assert default_shape(3, 3) == (4, 3, 3)
    assert default_shape(0, 2) == (2, 1)
    assert default_shape(2, 1) == (2,)


def test_families_have_distinguished_member_beyond_e2():
    # shapes with row 0 one longer admit a unique distinguished member
    # in every family; a strict staircase such as (4, 3, 2) does not
    for n in (1, 2, 3):
        for fam in families(n, default_shape(n, 3)):
            assert fam.special is not None
    with pytest.raises(OrderConsistencyError):
        families(2, (4, 3, 2))


def test_mn_character_values():
    for mu in enum_partitions(4):
        assert mn_character((4,), mu) == 1
    assert mn_character((1, 1), (2,)) == -1
    assert mn_character((2, 1), (1, 1, 1)) == 2
    assert mn_character((2, 2), (2, 2)) == 2
    with pytest.raises(ValueError):
        mn_character((2,), (1, 1, 1))


def test_mn_column_orthogonality():
    for n in range(1, 6):
        parts = classical_partitions(n)
        for mu in parts:
            for nu in parts:
                s = sum(mn_character(lam, mu) * mn_character(lam, nu)
                        for lam in parts)
                assert s == (z_weight_classical(mu) if mu == nu else 0)


def test_kostka_values():
    assert kostka((2, 1), (2, 1)) == 1
    assert kostka((2,), (1, 1)) == 1
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((3, 2, 1), (3, 2, 1)) == 1
    # standard tableaux count equals the character degree
    for n in range(1, 6):
        ones = tuple([1] * n)
        for lam in classical_partitions(n):
            assert kostka(lam, ones) == mn_character(lam, ones)


def test_inverse_kostka():
    for n in range(1, 6):
        parts = classical_partitions(n)
        inv = inverse_kostka(n)
        for lam in parts:
            for nu in parts:
                s = sum(kostka(lam, mu) * inv.get((mu, nu), 0) for mu in parts)
                assert s == (1 if lam == nu else 0)
