
import pytest

from chukit.category import (SETOID_PRODUCTS, CategoryPresentation, FunctorPresentation,
                             NatTransPresentation, NotProductPreserving, canonical_product_iso,
                             compose_functors, finsetoid_category, finsetoid_cartesian, invert,
                             is_embedding, is_epi, is_faithful, is_full, is_full_embedding,
                             is_injective_on_arrows, is_injective_on_objects, is_mono,
                             is_strict_representation, opposite, product_category,
                             verify_category_laws, verify_functor_laws, verify_naturality)
from chukit.generalized import IDENTITY, SQUARE, constant_functor
from chukit.setoid import TWO, SetoidFn, all_setoids, fn_compose, identity, is_injection, is_surjection

from conftest import brute_maps


def monoid(table, name="M"):
    """One-object category from a multiplication table on 0..n-1, unit 0."""
    n = len(table)
    return CategoryPresentation(name, ["*"], lambda a, b: range(n),
                                lambda g, f: table[g][f], lambda a: 0)


def test_finsetoid_counts_match_brute_force():
    C = finsetoid_category(2)
    objs = all_setoids(2)
    assert list(C.objects) == list(objs)
    expected = sum(len(brute_maps(a, b)) for a in objs for b in objs)
    assert sum(1 for _ in C.arrows()) == expected == 18


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_finsetoid_laws(n):
    assert verify_category_laws(finsetoid_category(n))


def test_cyclic_monoid_is_a_category():
    z3 = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    assert verify_category_laws(monoid(z3))


def test_non_associative_table_is_caught():
    # a quasigroup with unit 0 that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    v = verify_category_laws(monoid(t))
    assert v.reason == "associativity"
    f, g, h = v.witness
    assert t[h][t[g][f]] != t[t[h][g]][f]


def test_broken_unit_is_caught():
    t = [[1, 1], [1, 1]]
    v = verify_category_laws(monoid(t))
    assert "unit" in v.reason


def test_composite_outside_the_category_is_caught():
    objs = all_setoids(1)
    C = CategoryPresentation("bad", objs, lambda a, b: (0,), lambda g, f: 1, lambda a: 0)
    assert not verify_category_laws(C)


def test_opposite_and_product_categories():
    C = finsetoid_category(1)
    assert verify_category_laws(opposite(C))
    P = product_category(C, opposite(C))
    assert verify_category_laws(P)
    n = sum(1 for _ in C.arrows())
    assert len(P.objects) == len(C.objects) ** 2
    arrows = {(a, b): len(C.hom(a, b)) for a in C.objects for b in C.objects}
    assert sum(1 for _ in P.arrows()) == sum(arrows[a, b] * arrows[d, c] for a, b in arrows
                                             for c, d in arrows)
    assert n == 3


def identity_functor(C):
    return FunctorPresentation("1", C, C, lambda a: a, lambda f: f)


def test_identity_functor_is_a_strict_representation():
    C = finsetoid_category(2)
    F = identity_functor(C)
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


def test_discrete_inclusion_is_a_full_embedding():
    D, C = finsetoid_category(2, discrete_only=True), finsetoid_category(2)
    F = FunctorPresentation("incl", D, C, lambda a: a, lambda f: f)
    assert verify_functor_laws(F)
    assert is_full_embedding(F)


def test_collapse_to_terminal():
    C = finsetoid_category(2)
    T = finsetoid_category(0)
    pt = T.objects[0]
    F = FunctorPresentation("!", C, T, lambda a: pt, lambda f: T.identity(pt))
    assert verify_functor_laws(F)
    # nothing maps 1 -> 0, but the terminal category has an identity there
    a, b, g = is_full(F).witness
    assert not C.hom(a, b) and g == T.identity(pt)
    v = is_injective_on_objects(F)
    a, b = v.witness
    assert a != b and F.obj(a) == F.obj(b)
    assert not is_faithful(F)
    assert not is_embedding(F)
    assert not is_injective_on_arrows(F)


def test_broken_functor_is_caught():
    C = finsetoid_category(2)
    swap = lambda f: f if f.dom != TWO or f.cod != TWO else fn_compose(f, f)
    F = FunctorPresentation("sq", C, C, lambda a: a, swap)
    v = verify_functor_laws(F)
    assert v.reason == "composition not preserved"


def test_composed_functors():
    C = finsetoid_category(2)
    F = compose_functors(identity_functor(C), identity_functor(C))
    assert verify_functor_laws(F)


def test_identity_transformation_is_natural():
    C = finsetoid_category(2)
    F = identity_functor(C)
    assert verify_naturality(NatTransPresentation("1", F, F, lambda a: identity(a)))


def test_unnatural_transformation_is_caught():
    C = finsetoid_category(2)
    F = identity_functor(C)
    # swap on two, identity elsewhere: fails against the constant maps
    def comp(a):
        return SetoidFn(TWO, TWO, [1, 0]) if a == TWO else identity(a)
    v = verify_naturality(NatTransPresentation("swap", F, F, comp))
    assert v.reason == "naturality square fails"


@pytest.mark.parametrize("a", all_setoids(2), ids=repr)
@pytest.mark.parametrize("b", all_setoids(2), ids=repr)
def test_monos_and_epis_are_injections_and_surjections(a, b):
    C = finsetoid_category(2)
    for f in C.hom(a, b):
        assert bool(is_mono(f, C)) == is_injection(f)
        assert bool(is_epi(f, C)) == is_surjection(f)


def test_invert():
    f = SetoidFn(TWO, TWO, [1, 0])
    assert fn_compose(invert(f), f) == identity(TWO)


@pytest.mark.parametrize("a", all_setoids(2), ids=repr)
@pytest.mark.parametrize("b", all_setoids(2), ids=repr)
def test_product_preserving_canonical_maps(a, b):
    for F in (IDENTITY, SQUARE):
        iso = canonical_product_iso(F, a, b)
        assert iso.dom.size == F.obj(a).size * F.obj(b).size
        assert fn_compose(invert(iso), iso) == identity(iso.dom)


def test_constant_functor_is_not_product_preserving():
    with pytest.raises(NotProductPreserving) as e:
        canonical_product_iso(constant_functor(TWO), TWO, TWO)
    assert e.value.witness is not None


def test_cartesian_structure():
    cart = finsetoid_cartesian(2)
    assert verify_category_laws(cart.category)
    p, pl, pr = cart.product(TWO, TWO)
    assert p.size == 4
    f = SetoidFn(TWO, TWO, [1, 0])
    h = SETOID_PRODUCTS.mediator(f, identity(TWO))
    assert fn_compose(pl, h) == f and fn_compose(pr, h) == identity(TWO)
