import itertools

import pytest

from chukit import infosys as inf
from chukit.category import is_full_embedding, is_strict_representation, verify_functor_laws
from chukit.representations import mask_members
from chukit.setoid import fn_compose


def subsets(mask):
    return [s for s in range(mask + 1) if s & mask == s]


def brute_systems(n):
    """Con downward closed with all singletons; entailment reflexive, from
    consistent sets only, consistent with its premise, and closed under cut
    (which includes weakening through reflexivity)."""
    full = (1 << n) - 1
    out = []
    for bits in range(1 << (1 << n)):
        con = {m for m in range(full + 1) if bits >> m & 1}
        if 0 not in con or any(1 << a not in con for a in range(n)):
            continue
        if any(s not in con for A in con for s in subsets(A)):
            continue
        pairs = [(A, a) for A in sorted(con) for a in range(n)]
        for ebits in range(1 << len(pairs)):
            ent = {p for k, p in enumerate(pairs) if ebits >> k & 1}
            if any((A, a) not in ent for A in con for a in mask_members(A)):
                continue
            if any(A | 1 << a not in con for A, a in ent):
                continue
            def all_of(A, B):
                return all((A, b) in ent for b in mask_members(B))
            if any(all_of(A, B) and (B, c) in ent and (A, c) not in ent
                   for A in con for B in con for c in range(n)):
                continue
            out.append((frozenset(con), frozenset(ent)))
    return out


def brute_ideals(sys):
    return {J for J in range(sys.full + 1)
            if J in sys.con and all(J >> a & 1 for A in subsets(J) for a in range(sys.size)
                                    if (A, a) in sys.entails)}


def brute_mappings(X, Y):
    """Relations A r B between consistent sets with the three Scott axioms,
    recorded as the largest B for each A."""
    cons = sorted(X.con)
    out = set()
    for images in itertools.product(sorted(Y.con), repeat=len(cons)):
        img = dict(zip(cons, images))
        ok = True
        for A in cons:
            # tokens entailed by part of the image are in the image
            closed = all(img[A] >> c & 1 for B in subsets(img[A]) if B in Y.con
                         for c in range(Y.size) if (B, c) in Y.entails)
            mono = all(img[A] & img[A2] == img[A] for A2 in cons
                       if all((A2, a) in X.entails for a in mask_members(A)))
            ok = ok and closed and mono
        if ok:
            out.add(tuple(img[A] for A in cons))
    return out


@pytest.mark.parametrize("n", [0, 1, 2])
def test_systems_agree_with_brute_force(n):
    found = {(s.con, s.entails) for s in inf.all_info_systems(n)}
    assert found == set(brute_systems(n))
    assert all(inf.check_info_system(s) for s in inf.all_info_systems(n))


def test_system_counts():
    assert [len(inf.all_info_systems(n)) for n in range(3)] == [len(brute_systems(n)) for n in range(3)]


SYSTEMS = [s for n in range(3) for s in inf.all_info_systems(n)] + list(inf.spot_systems())


@pytest.mark.parametrize("sys", SYSTEMS, ids=repr)
def test_ideals_agree_with_brute_force(sys):
    assert set(inf.ideal_masks(sys)) == brute_ideals(sys)


def test_minimal_system_has_two_ideals():
    assert len(inf.ideals(inf.info_system(1))) == 2


@pytest.mark.parametrize("X", inf.all_info_systems(1) + inf.all_info_systems(2)[::5], ids=repr)
@pytest.mark.parametrize("Y", inf.all_info_systems(1) + inf.all_info_systems(2)[::4], ids=repr)
def test_mappings_agree_with_brute_force(X, Y):
    cons = sorted(X.con)
    found = {tuple(r.image(A) for A in cons) for r in inf.approximable_mappings(X, Y)}
    assert found == brute_mappings(X, Y)


def test_faulty_systems_are_rejected():
    bad = inf.InfoSystem(2, {0, 1, 2}, {(1, 0), (2, 1), (1, 1)})
    v = inf.check_info_system(bad)
    assert v.reason == "entailed token is not consistent with its premise"
    no_refl = inf.InfoSystem(1, {0, 1}, set())
    assert inf.check_info_system(no_refl).reason == "reflexivity"


def test_realization_and_reconstruction_on_the_fragment():
    C = inf.inf_fragment(2, spot=True)
    assert inf.check_realization(C)
    assert inf.check_reconstruction(C)


def test_realization_of_identity_and_composition():
    sys = inf.info_system(2, entails=[((1,), 0)])
    ident = inf.identity_mapping(sys)
    assert inf.approx_compose(ident, ident) == ident
    rs = inf.approximable_mappings(sys, sys)
    for r in rs:
        for s in rs:
            assert inf.realize(inf.approx_compose(s, r)) == fn_compose(inf.realize(s), inf.realize(r))


def test_scott_topology_is_the_specialization_order():
    # the Scott topology on ideals of a finite system is the Alexandrov
    # topology of inclusion: opens are the up-closed families
    for sys in SYSTEMS:
        I = inf.ideals(sys).ideals
        T = inf.scott_topology(sys)
        up_closed = {m for m in range(1 << len(I))
                     if all(m >> k & 1 == 0 or m >> j & 1
                            for k, J in enumerate(I) for j, K in enumerate(I) if J & K == J)}
        assert set(T.opens) == up_closed


def test_scott_functor_is_a_full_embedding():
    S = inf.s_functor(inf.inf_fragment(2, spot=True))
    assert verify_functor_laws(S)
    assert is_full_embedding(S)


def test_membership_spaces_are_a_strict_representation():
    assert is_strict_representation(inf.inf_chu_representation(inf.inf_fragment(2)))


@pytest.mark.parametrize("sys", inf.large_spot_systems(), ids=repr)
def test_reconstruction_on_large_three_token_systems(sys):
    assert inf.check_reconstruction(inf.inf_category([sys]))


def test_non_mapping_is_rejected():
    X = inf.info_system(1)
    Y = inf.info_system(2, con=[(0,), (1,)])
    r = inf.ApproximableMapping(X, Y, [(0, 0), (0, 1)])
    assert inf.check_approximable(r).reason == "related tokens are not consistent"
