import itertools

import pytest
from hypothesis import given, strategies as st

from chukit.category import (is_full_embedding, is_injective_on_objects, is_strict_representation,
                             verify_category_laws, verify_functor_laws)
from chukit.chu import (ChuSpace, ChuTransform, aff_representation, ccc_representation,
                        chu_category, chu_compose, chu_enumerate_hom, chu_identity, chu_spaces,
                        classify, evaluation_space, is_chu_transform, local_pushforward,
                        pushforward_space)
from chukit.setoid import (EMPTY, ONE, THREE, TWO, SetoidError, SetoidFn, all_maps, all_setoids,
                           is_injection, mk_setoid)

from conftest import setoids


def brute_transforms(s, t):
    """Every (fwd, bwd) pair of extensional tables satisfying adjointness,
    by trying all tables."""
    out = set()
    for fwd in itertools.product(range(t.left.size), repeat=s.left.size):
        if any(t.left.rep[fwd[x]] != t.left.rep[fwd[s.left.rep[x]]] for x in s.left):
            continue
        for bwd in itertools.product(range(s.right.size), repeat=t.right.size):
            if any(s.right.rep[bwd[d]] != s.right.rep[bwd[t.right.rep[d]]] for d in t.right):
                continue
            if all(s.value(a, bwd[d]) == t.value(fwd[a], d) for a in s.left for d in t.right):
                out.add((tuple(t.left.rep[v] for v in fwd), tuple(s.right.rep[v] for v in bwd)))
    return out


@st.composite
def spaces(draw, gamma=TWO, max_size=2):
    a = draw(setoids(max_size))
    b = draw(setoids(max_size))
    vals = {(x, y): draw(st.integers(0, gamma.size - 1)) for x in set(a.rep) for y in set(b.rep)}
    rows = [[vals[a.rep[x], b.rep[y]] for y in b] for x in a]
    return ChuSpace.from_rows(gamma, a, b, rows)


def test_object_count_matches_formula():
    # an extensional pairing is a free choice per pair of classes
    C = chu_category(TWO, max_size=2)
    carriers = all_setoids(2)
    expected = sum(2 ** (a.n_classes * b.n_classes) for a in carriers for b in carriers)
    assert len(C.objects) == expected == 47


def test_hom_sets_agree_with_brute_force_on_the_whole_fragment():
    C = chu_category(TWO, max_size=2)
    total = 0
    for s in C.objects:
        for t in C.objects:
            found = {(f.fwd.table, f.bwd.table) for f in chu_enumerate_hom(s, t)}
            assert found == brute_transforms(s, t)
            total += len(found)
    assert total == 1972


@given(spaces(max_size=3), spaces(max_size=3))
def test_hom_sets_agree_with_brute_force_on_random_spaces(s, t):
    found = [(f.fwd.table, f.bwd.table) for f in chu_enumerate_hom(s, t)]
    assert len(found) == len(set(found))
    assert set(found) == brute_transforms(s, t)


def test_chu_category_laws():
    assert verify_category_laws(chu_category(TWO, max_size=2))
    assert verify_category_laws(chu_category(THREE, max_size=1))


@given(spaces(), spaces(), spaces(), st.data())
def test_composites_are_transforms(s, t, u, data):
    first, second = chu_enumerate_hom(s, t), chu_enumerate_hom(t, u)
    if not first or not second:
        return
    f = data.draw(st.sampled_from(first))
    g = data.draw(st.sampled_from(second))
    h = chu_compose(g, f)
    assert is_chu_transform(h.fwd, h.bwd, s, u)
    assert chu_compose(chu_identity(u), h) == h == chu_compose(h, chu_identity(s))


def test_adjointness_failure_names_the_coordinates():
    s = ChuSpace.from_rows(TWO, TWO, TWO, [[0, 1], [1, 0]])
    t = ChuSpace.from_rows(TWO, TWO, TWO, [[0, 0], [1, 1]])
    fwd = SetoidFn(TWO, TWO, [0, 1])
    bwd = SetoidFn(TWO, TWO, [1, 1])
    v = is_chu_transform(fwd, bwd, s, t)
    a, d = v.witness
    assert s.value(a, bwd.table[d]) != t.value(fwd.table[a], d)
    with pytest.raises(SetoidError):
        ChuTransform(s, t, fwd, bwd)


def test_transforms_from_an_empty_left_carrier_are_the_backward_maps():
    # adjointness quantifies over the empty left carrier, so it holds vacuously
    s = ChuSpace.from_rows(TWO, EMPTY, THREE, [])
    t = ChuSpace.from_rows(TWO, TWO, TWO, [[0, 1], [1, 0]])
    assert len(chu_enumerate_hom(s, t)) == len(all_maps(TWO, THREE)) == 9


def brute_classify(s):
    rows = [tuple(s.value(x, y) for y in s.right) for x in s.left]
    cols = [tuple(s.value(x, y) for x in s.left) for y in s.right]
    sep = all(rows[x] != rows[y] for x in s.left for y in s.left if not s.left.eq(x, y))
    ext = all(cols[x] != cols[y] for x in s.right for y in s.right if not s.right.eq(x, y))
    return sep, ext


@given(spaces(max_size=3))
def test_classification_against_brute_force(s):
    c = classify(s)
    assert (c.separable, c.extensional) == brute_classify(s)
    assert c.biextensional == (c.separable and c.extensional)


@pytest.mark.parametrize("a", all_setoids(2), ids=repr)
def test_evaluation_spaces_are_normal_and_extensional(a):
    for gamma in (ONE, TWO):
        c = classify(evaluation_space(a, gamma))
        assert c.normal and c.extensional


def test_local_pushforward_of_spaces():
    u = SetoidFn(TWO, THREE, [2, 0])
    s = ChuSpace.from_rows(TWO, TWO, ONE, [[0], [1]])
    assert pushforward_space(u, s).rows == ((2,), (0,))


@pytest.mark.parametrize("u", [u for g in all_setoids(2) for d in all_setoids(2) if g.size and d.size
                               for u in all_maps(g, d)], ids=repr)
def test_local_pushforward_full_embedding_iff_injective(u):
    F = local_pushforward(u, max_size=1)
    assert verify_functor_laws(F)
    assert bool(is_full_embedding(F)) == is_injection(u)


def test_non_injective_pushforward_collapses_a_witnessed_pair():
    u = SetoidFn(TWO, ONE, [0, 0])
    F = local_pushforward(u, max_size=2)
    a, b = is_injective_on_objects(F).witness
    assert a != b and F.obj(a) == F.obj(b)


def test_injection_into_a_non_discrete_value():
    # injective up to equality of the value setoid, where 1 = 2
    gamma = mk_setoid(3, [(1, 2)])
    u = SetoidFn(TWO, gamma, [0, 1])
    assert is_injection(u)
    assert is_full_embedding(local_pushforward(u, max_size=1))


@pytest.mark.parametrize("gamma", [ONE, TWO], ids=repr)
def test_ccc_representation_is_strict(gamma):
    F = ccc_representation(gamma, max_size=2)
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


def test_aff_representation_is_strict():
    F = aff_representation(TWO, max_size=2)
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


def test_chu_spaces_generator_counts():
    assert sum(1 for _ in chu_spaces(TWO, [ONE, TWO])) == 2 + 4 + 4 + 16
