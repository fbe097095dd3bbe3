import itertools

import pytest
from hypothesis import given, strategies as st

from chukit import representations as rep
from chukit.category import (finsetoid_cartesian, is_embedding, is_full, is_strict_representation,
                             verify_category_laws, verify_functor_laws)
from chukit.chu import classify
from chukit.setoid import (THREE, TWO, Apartness, SetoidError, SetoidFn, all_maps, all_setoids,
                           canonical_subsets, denial, discrete, mk_setoid)


def brute_topologies(n):
    """Families of subsets of n points containing 0 and everything, closed
    under binary union and intersection."""
    subsets = range(1 << n)
    full = (1 << n) - 1
    out = []
    for bits in range(1 << (1 << n)):
        fam = {s for s in subsets if bits >> s & 1}
        if 0 in fam and full in fam and all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.append(frozenset(fam))
    return out


def brute_t0(T):
    return all(any((u >> x & 1) != (u >> y & 1) for u in T.opens)
               for x in T.points for y in T.points if not T.points.eq(x, y))


def test_topology_counts_match_brute_force():
    assert [len(brute_topologies(n)) for n in range(4)] == [1, 1, 4, 29]
    for n in range(4):
        found = {frozenset(T.opens) for T in rep.all_topologies(discrete(n))}
        assert found == set(brute_topologies(n))


def test_topologies_on_setoids_use_extensional_opens():
    # on a setoid the opens are unions of classes, so count by classes
    counts = {0: 1, 1: 1, 2: 4, 3: 29}
    for X in all_setoids(3):
        assert len(rep.all_topologies(X)) == counts[X.n_classes]
    assert len(rep.top_category(3).objects) == 49


def test_non_topology_is_rejected_with_witness():
    v = rep.is_topology(THREE, [0, 0b001, 0b010, 0b111])
    assert not v and "union" in v.reason
    with pytest.raises(SetoidError):
        rep.FiniteTopology(THREE, [[], [0], [1], [0, 1, 2]])


def brute_continuous(T, S):
    out = set()
    for f in all_maps(T.points, S.points):
        if all(rep.to_mask([x for x in T.points if v >> f.table[x] & 1]) in T.opens for v in S.opens):
            out.add(f.table)
    return out


@pytest.mark.parametrize("n", [2, 3])
def test_continuous_maps_agree_with_brute_force(n):
    tops = rep.all_topologies(discrete(n))
    for T, S in itertools.product(tops[::3], tops[::4]):
        assert {f.table for f in rep.continuous_maps(T, S)} == brute_continuous(T, S)


def test_sierpinski_membership_space():
    T = rep.FiniteTopology(TWO, [[], [1], [0, 1]])
    s = rep.e_top_space(T)
    assert s.rows == ((0, 0, 1), (0, 1, 1))
    assert classify(s).separable and T.is_t0()
    I = rep.FiniteTopology(TWO, [[], [0, 1]])
    assert not classify(rep.e_top_space(I)).separable and not I.is_t0()


def test_e_top_is_a_strict_representation():
    F = rep.e_top(3)
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


def test_separable_iff_t0_on_the_universe():
    for T in rep.top_category(3).objects:
        assert classify(rep.e_top_space(T)).separable == T.is_t0() == brute_t0(T)


@given(st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1))
def test_separable_iff_t0_on_four_points(a, b):
    # topology generated by two random families on 4 points
    X = discrete(4)
    opens = {0, 15} | {a & 15, a >> 4 & 15, b & 15, b >> 4 & 15}
    while True:
        more = {u | v for u in opens for v in opens} | {u & v for u in opens for v in opens}
        if more <= opens:
            break
        opens |= more
    T = rep.FiniteTopology(X, sorted(opens))
    assert classify(rep.e_top_space(T)).separable == brute_t0(T)


def test_triangle_with_sets():
    assert rep.verify_triangle(rep.e_top(3), rep.delta(3), rep.e_set(3))


@pytest.mark.parametrize("X", all_setoids(3), ids=repr)
def test_subsets_representation(X):
    F = rep.subsets_representation(X)
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


@pytest.mark.parametrize("gamma", all_setoids(2), ids=repr)
def test_monos_representation(gamma):
    F = rep.sub_representation(finsetoid_cartesian(2), gamma)
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


def test_monos_from_canonical_subsets():
    # one mono per canonical subset of 3: the eight subsets of three points
    monos = [A.inj for A in canonical_subsets(THREE)]
    F = rep.sub_representation(finsetoid_cartesian(3), THREE, monos)
    assert len(F.src.objects) == 8
    assert verify_functor_laws(F)
    assert is_strict_representation(F)


# complemented subsets


def brute_compl_arrows(ax):
    """Pairs of complemented subsets (as class-state tuples) with A1 in B1
    and B0 in A0, under denial."""
    X = ax.base
    states = list(itertools.product("10-", repeat=X.n_classes))
    ok = {("1", "1"), ("0", "0"), ("0", "-"), ("-", "-"), ("0", "1"), ("-", "1")}
    return len(states), sum(all(p in ok for p in zip(a, b)) for a in states for b in states)


@pytest.mark.parametrize("X", all_setoids(3), ids=repr)
def test_compl_category_counts(X):
    ax = denial(X)
    C = rep.compl_powerset_category(ax)
    assert verify_category_laws(C)
    assert (len(C.objects), sum(1 for _ in C.arrows())) == brute_compl_arrows(ax)


APARTNESSES = [denial(X) for X in all_setoids(3)] + [
    Apartness(THREE, [(0, 2), (2, 0), (1, 2), (2, 1)])]


@pytest.mark.parametrize("ax", APARTNESSES, ids=repr)
def test_compl_representation_is_an_embedding(ax):
    F = rep.compl_representation(ax)
    assert verify_functor_laws(F)
    assert is_embedding(F)


@pytest.mark.parametrize("ax", APARTNESSES, ids=repr)
def test_compl_representation_is_full_on_inhabited_parts(ax):
    assert is_strict_representation(rep.compl_representation(ax, inhabited_only=True))


def test_compl_representation_is_not_full_when_a_part_is_empty():
    # (empty, {0}) and (empty, {1}) have no inclusion between them, but their
    # spaces have an empty left carrier, so any backward map is a transform
    ax = denial(TWO)
    F = rep.compl_representation(ax)
    v = is_full(F)
    a, b, g = v.witness
    assert a.one.sub.size == 0 and b.one.sub.size == 0
    assert list(a.zero.inj.table) == [0] and list(b.zero.inj.table) == [1]
    assert g.fwd.table == () and g.bwd.table == (0,)
    assert not F.src.hom(a, b)


def test_diagonal_space_is_not_in_the_image():
    for ax in APARTNESSES:
        if ax.base.size == 0:
            continue
        space, reason = rep.image_nonsurjectivity_witness(ax)
        assert rep.in_compl_image(space, ax) is None
        assert space.left == space.right == ax.base
    # and a complemented subset's space is found again
    ax = denial(TWO)
    C = rep.compl_powerset_category(ax)
    F = rep.compl_representation(ax)
    for A in C.objects:
        assert rep.in_compl_image(F.obj(A), ax) == A


def test_compl_space_values_index_the_square():
    ax = denial(mk_setoid(2))
    A = rep.compl_powerset_category(ax).objects[0]
    s = rep.compl_space(A)
    assert s.gamma.size == ax.base.size ** 2


def test_mask_helpers():
    assert rep.to_mask([0, 2]) == 5
    assert list(rep.mask_members(5)) == [0, 2]
    assert rep.is_eq_closed(mk_setoid(3, [(0, 1)]), 0b011)
    assert not rep.is_eq_closed(mk_setoid(3, [(0, 1)]), 0b001)
    assert rep.preimage(SetoidFn(TWO, TWO, [1, 0]), 0b01) == 0b10
