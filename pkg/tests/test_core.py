from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grpd.core import (
    NotFreeError,
    NotNormalError,
    automorphism_group,
    build_action_groupoid,
    build_bg,
    build_eg,
    components,
    discrete_groupoid,
    disjoint_union,
    disjoint_union_map,
    empty_groupoid,
    groupoid_cardinality,
    identity_map,
    is_fibration,
    is_weak_equivalence,
    product,
    quotient_comparison,
    relabel,
    terminal_groupoid,
    validate_functor,
    validate_groupoid,
    GroupoidMap,
)
from grpd.corpus import corrupted_bg_z2, small_groupoid_catalog
from grpd.groups import (
    cyclic_group,
    left_multiplication_action,
    symmetric_group,
    trivial_point_action,
)
from grpd.suites import naive_is_fibration, naive_is_weak_equivalence


def test_small_catalog_is_valid():
    for g in small_groupoid_catalog():
        assert validate_groupoid(g) == []
        assert g.n_morphisms <= 12


def test_corrupted_composition_is_rejected():
    report = validate_groupoid(corrupted_bg_z2())
    assert report != []
    assert any("inverse" in line for line in report)


def test_builders_shapes():
    s3 = symmetric_group(3)
    eg = build_eg(s3)
    bg = build_bg(s3)
    assert (eg.n_objects, eg.n_morphisms) == (6, 36)
    assert (bg.n_objects, bg.n_morphisms) == (1, 6)
    assert len(components(eg)) == 1
    assert validate_groupoid(eg) == []
    assert validate_groupoid(bg) == []


def test_action_groupoid_of_left_multiplication_is_eg():
    g = cyclic_group(4)
    assert build_action_groupoid(left_multiplication_action(g)) == build_eg(g)


def test_hom_and_aut():
    bg = build_bg(symmetric_group(3))
    assert len(bg.aut(0)) == 6
    d = discrete_groupoid(3)
    assert d.hom(0, 1) == ()
    assert d.hom(2, 2) == (d.id_of[2],)


def test_cardinality_frozen_values():
    z3 = cyclic_group(3)
    assert groupoid_cardinality(terminal_groupoid()) == 1
    assert groupoid_cardinality(empty_groupoid()) == 0
    assert groupoid_cardinality(discrete_groupoid(3)) == 3
    assert groupoid_cardinality(build_bg(z3)) == Fraction(1, 3)
    assert groupoid_cardinality(build_eg(symmetric_group(3))) == 1
    both = disjoint_union([terminal_groupoid(), build_bg(z3)])
    assert groupoid_cardinality(both) == Fraction(4, 3)


def test_identity_map_is_fibration_and_weq():
    g = build_bg(symmetric_group(3))
    f = identity_map(g)
    assert validate_functor(f) == []
    assert is_fibration(f) and is_weak_equivalence(f)


def test_point_into_bz2_is_neither():
    cod = build_bg(cyclic_group(2))
    f = GroupoidMap(terminal_groupoid(), cod, (0,), (cod.id_of[0],))
    assert validate_functor(f) == []
    assert not is_fibration(f)
    assert not is_weak_equivalence(f)


def test_point_into_ez2_is_weq_but_not_fibration():
    cod = build_eg(cyclic_group(2))
    f = GroupoidMap(terminal_groupoid(), cod, (0,), (cod.id_of[0],))
    assert is_weak_equivalence(f)
    assert not is_fibration(f)


def test_eg_collapse_is_acyclic():
    dom = build_eg(cyclic_group(3))
    t = terminal_groupoid()
    f = GroupoidMap(dom, t, (0,) * dom.n_objects, (0,) * dom.n_morphisms)
    assert validate_functor(f) == []
    assert is_fibration(f) and is_weak_equivalence(f)


def test_codiagonal_is_fibration_but_not_weq():
    bg = build_bg(cyclic_group(2))
    dom = disjoint_union([bg, bg])
    f = disjoint_union_map([identity_map(bg), identity_map(bg)])
    fold = GroupoidMap(dom, bg, (0, 0), (0, 1, 0, 1))
    assert validate_functor(fold) == []
    assert is_fibration(fold)
    assert not is_weak_equivalence(fold)
    assert f.dom.n_objects == 2 and f.cod.n_objects == 2


def test_fast_predicates_agree_with_quantifier_oracle():
    bg = build_bg(cyclic_group(2))
    cases = [
        identity_map(bg),
        GroupoidMap(terminal_groupoid(), bg, (0,), (0,)),
        GroupoidMap(disjoint_union([bg, bg]), bg, (0, 0), (0, 1, 0, 1)),
    ]
    for f in cases:
        assert is_fibration(f) == naive_is_fibration(f)
        assert is_weak_equivalence(f) == naive_is_weak_equivalence(f)


def test_quotient_comparison_free_normal():
    a = left_multiplication_action(cyclic_group(4))
    q = quotient_comparison(a, (0, 2))
    assert q.is_fibration and q.is_weak_equivalence and q.is_acyclic_fibration
    assert validate_functor(q.map) == []
    assert q.map.cod.n_objects == 2


def test_quotient_comparison_rejects_non_normal():
    a = left_multiplication_action(symmetric_group(3))
    with pytest.raises(NotNormalError) as exc:
        quotient_comparison(a, (0, 2))
    assert exc.value.witness is not None


def test_quotient_comparison_rejects_non_subgroup():
    a = left_multiplication_action(cyclic_group(4))
    with pytest.raises(NotNormalError):
        quotient_comparison(a, (1, 3))


def test_quotient_comparison_rejects_non_free():
    a = trivial_point_action(cyclic_group(2))
    with pytest.raises(NotFreeError) as exc:
        quotient_comparison(a, (0, 1))
    assert exc.value.element == 1 and exc.value.point == 0


def test_disjoint_union_map_of_identities():
    g, h = build_bg(cyclic_group(2)), discrete_groupoid(2)
    f = disjoint_union_map([identity_map(g), identity_map(h)])
    assert validate_functor(f) == []
    assert f.obj_map == tuple(range(f.dom.n_objects))
    assert f.mor_map == tuple(range(f.dom.n_morphisms))


def test_product_of_one_object_groupoids():
    p = product(build_bg(cyclic_group(2)), build_bg(cyclic_group(3)))
    assert validate_groupoid(p) == []
    assert (p.n_objects, p.n_morphisms) == (1, 6)
    assert groupoid_cardinality(p) == Fraction(1, 6)


def test_relabel_preserves_structure():
    g = disjoint_union([build_bg(cyclic_group(2)), terminal_groupoid()])
    obj_perm = (1, 0)
    mor_perm = (2, 0, 1)
    h = relabel(g, obj_perm, mor_perm)
    assert validate_groupoid(h) == []
    assert groupoid_cardinality(h) == groupoid_cardinality(g)
    f = GroupoidMap(g, h, obj_perm, mor_perm)
    assert validate_functor(f) == []
    assert is_weak_equivalence(f) and is_fibration(f)


def test_automorphism_group_of_bg_object():
    grp, mors = automorphism_group(build_bg(symmetric_group(3)), 0)
    assert grp.order == 6
    assert len(mors) == 6
    eg = build_eg(cyclic_group(3))
    assert automorphism_group(eg, 1)[0].order == 1


@given(st.integers(min_value=1, max_value=8))
def test_bg_cardinality_is_one_over_order(n):
    assert groupoid_cardinality(build_bg(cyclic_group(n))) == Fraction(1, n)


@given(st.integers(min_value=0, max_value=5), st.integers(min_value=1, max_value=5))
def test_union_adds_cardinalities(n, m):
    a = discrete_groupoid(n)
    b = build_bg(cyclic_group(m))
    assert (groupoid_cardinality(disjoint_union([a, b]))
            == groupoid_cardinality(a) + groupoid_cardinality(b))
