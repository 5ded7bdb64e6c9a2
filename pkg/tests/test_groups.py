import pytest
from hypothesis import given, strategies as st

from grpd.corpus import S3_TRANSPOSITION, group_catalog, transpose_inverse, v4_swap
from grpd.groups import (
    GroupAction,
    conjugation_automorphism,
    cyclic_group,
    dihedral_group,
    direct_product,
    gl2_f2,
    gl2_f2_upper_triangular,
    identity_automorphism,
    induced_subgroup,
    inversion_automorphism,
    is_automorphism,
    is_involutive_automorphism,
    is_normal,
    is_subgroup,
    left_multiplication_action,
    orbits_under,
    quotient_group,
    subgroup_closure,
    symmetric_group,
    trivial_group,
    trivial_point_action,
    validate_action,
    validate_group,
)


def test_catalog_groups_are_valid():
    cat = group_catalog()
    assert {k: v.order for k, v in cat.items()} == {
        "1": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Z6": 6,
        "V4": 4, "S3": 6, "D4": 8, "GL2F2": 6,
    }
    for g in cat.values():
        assert validate_group(g) == []


def test_validate_group_catches_broken_associativity():
    g = cyclic_group(3)
    table = [list(row) for row in g.table]
    table[1][2] = 1
    broken = type(g)(table=tuple(tuple(r) for r in table),
                     identity=g.identity, inv_table=g.inv_table)
    assert validate_group(broken) != []


def test_s3_transposition_is_where_the_corpus_says():
    s3 = symmetric_group(3)
    t = S3_TRANSPOSITION
    assert s3.mul(t, t) == s3.identity
    assert t != s3.identity
    # conjugating by it permutes the other transpositions
    conj = conjugation_automorphism(s3, t)
    assert is_involutive_automorphism(s3, conj)


def test_s3_inversion_is_not_a_homomorphism():
    s3 = symmetric_group(3)
    assert not is_automorphism(s3, inversion_automorphism(s3))
    assert is_automorphism(s3, identity_automorphism(s3))


def test_subgroup_closure_a3():
    s3 = symmetric_group(3)
    three_cycle = next(x for x in s3.elements()
                       if x != s3.identity and s3.mul(x, x) != s3.identity)
    a3 = subgroup_closure(s3, [three_cycle])
    assert len(a3) == 3
    assert is_subgroup(s3, a3)
    assert is_normal(s3, a3)
    assert not is_normal(s3, (s3.identity, S3_TRANSPOSITION))


def test_induced_subgroup_embedding_is_a_homomorphism():
    s3 = symmetric_group(3)
    sub, emb = induced_subgroup(s3, subgroup_closure(s3, [S3_TRANSPOSITION]))
    assert sub.order == 2
    for a in sub.elements():
        for b in sub.elements():
            assert emb[sub.mul(a, b)] == s3.mul(emb[a], emb[b])


def test_quotient_s3_by_a3():
    s3 = symmetric_group(3)
    a3 = subgroup_closure(
        s3, [next(x for x in s3.elements()
                  if x != s3.identity and s3.mul(x, x) != s3.identity)])
    q, proj = quotient_group(s3, a3)
    assert q.order == 2
    for g in s3.elements():
        for h in s3.elements():
            assert proj[s3.mul(g, h)] == q.mul(proj[g], proj[h])
    with pytest.raises(ValueError):
        quotient_group(s3, (s3.identity, S3_TRANSPOSITION))


def test_dihedral_center():
    d4 = dihedral_group(4)
    center = [x for x in d4.elements()
              if all(d4.mul(x, y) == d4.mul(y, x) for y in d4.elements())]
    assert center == [0, 4]


def test_v4_swap_is_an_involutive_automorphism():
    assert is_involutive_automorphism(direct_product(cyclic_group(2),
                                                     cyclic_group(2)),
                                      v4_swap())


def test_gl2_f2():
    g = gl2_f2()
    assert g.order == 6
    assert not all(g.mul(a, b) == g.mul(b, a)
                   for a in g.elements() for b in g.elements())
    theta = transpose_inverse(g)
    assert is_involutive_automorphism(g, theta)
    upper = gl2_f2_upper_triangular(g)
    assert len(upper) == 2
    assert is_subgroup(g, upper)
    # transpose-inverse does not preserve the upper triangular subgroup
    assert any(theta[u] not in set(upper) for u in upper)


def test_left_multiplication_action():
    s3 = symmetric_group(3)
    a = left_multiplication_action(s3)
    assert validate_action(a) == []
    assert len(orbits_under(a)) == 1


def test_trivial_point_action_orbits():
    a = trivial_point_action(cyclic_group(4))
    assert validate_action(a) == []
    assert orbits_under(a) == [[0]]


def test_validate_action_catches_non_action():
    g = cyclic_group(2)
    bad = GroupAction(group=g, n_points=2, act_table=((0, 1), (0, 1)))
    # element 1 acts as the identity but 1*1=0 must then also act trivially;
    # here the table is fine as functions but the action law g.(h.x)=(gh).x
    # still holds, so corrupt it properly: send 1 to a non-permutation
    worse = GroupAction(group=g, n_points=2, act_table=((0, 1), (0, 0)))
    assert validate_action(worse) != []
    assert validate_action(bad) == []


@given(st.integers(min_value=1, max_value=12))
def test_cyclic_inversion_is_involutive(n):
    g = cyclic_group(n)
    assert validate_group(g) == []
    assert is_involutive_automorphism(g, inversion_automorphism(g))


@given(st.integers(min_value=1, max_value=10), st.data())
def test_conjugation_in_abelian_groups_is_trivial(n, data):
    g = cyclic_group(n)
    s = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert conjugation_automorphism(g, s) == tuple(g.elements())


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=2, max_value=5))
def test_direct_product_order_and_commutativity(n, m):
    g = direct_product(cyclic_group(n), cyclic_group(m))
    assert g.order == n * m
    assert validate_group(g) == []
    assert all(g.mul(a, b) == g.mul(b, a)
               for a in g.elements() for b in g.elements())


def test_trivial_group():
    g = trivial_group()
    assert g.order == 1 and g.identity == 0
