import itertools

import pytest

from chukit import grothendieck as groth
from chukit.category import (FunctorPresentation, is_full_embedding, verify_category_laws,
                             verify_functor_laws)
from chukit.chu import chu_category
from chukit.generalized import IDENTITY, SQUARE, constant_functor, diagonal, genchu_category
from chukit.setoid import (ONE, THREE, TWO, SetoidFn, all_maps, all_setoids, fn_compose,
                           identity, product)


@pytest.mark.parametrize("F", [IDENTITY, SQUARE, groth.TERMINAL], ids=repr)
def test_product_preserving(F):
    assert groth.check_product_preserving(groth.PPFunctor(F))


def test_constant_two_is_not_product_preserving():
    v = groth.check_product_preserving(groth.PPFunctor(constant_functor(TWO)))
    assert v.reason == "not product preserving" and v.witness is not None


def test_groth_morphism_count():
    # Id: 2 -> 2, Sq: 4 -> 2, terminal: 1 -> 2
    assert len(groth.groth_morphisms(TWO, TWO)) == 2 ** 2 + 2 ** 4 + 2 ** 1 == 22


@pytest.fixture(scope="module")
def chu2():
    return chu_category(TWO, max_size=2)


def test_pushforward_along_a_composite(chu2):
    ms = groth.groth_morphisms(TWO, TWO)
    for g, f in itertools.product(ms[::5], ms[::3]):
        assert groth.verify_global_composition(g, f, source=chu2)


def test_pushforward_is_a_functor(chu2):
    for m in groth.groth_morphisms(TWO, TWO)[::4]:
        assert verify_functor_laws(groth.pushforward_star(m, source=chu2))


def test_wrong_canonical_iso_is_detected(chu2):
    # swap the factors of F_ab at a = b = 2 for the square
    sq = groth.PPFunctor(SQUARE)

    def bad_iso(a, b):
        iso = sq.iso(a, b)
        if a == b == TWO:
            pw = product(SQUARE.obj(a), SQUARE.obj(b))
            table = [iso.table[pw.index(*reversed(pw.split(k)))] for k in range(pw.prod.size)]
            return SetoidFn(iso.dom, iso.cod, table)
        return iso

    faulty = groth.GrothMorphism(groth.PPFunctor(SQUARE, bad_iso), identity(SQUARE.obj(TWO)), TWO)
    v = groth.same_functor_tables(groth.pushforward_star(faulty, source=chu2),
                                  groth.pushforward_star(groth.GrothMorphism(sq, identity(SQUARE.obj(TWO)), TWO),
                                                         source=chu2))
    assert not v


def test_identity_and_composition_of_groth_morphisms():
    ms = groth.groth_morphisms(TWO, TWO)
    ident = groth.groth_identity(TWO)
    for m in ms:
        assert groth.groth_compose(ident, m) == m == groth.groth_compose(m, ident)


@pytest.mark.parametrize("u", [u for g in (ONE, TWO) for d in (ONE, TWO, THREE)
                               for u in all_maps(g, d)], ids=repr)
def test_identity_functor_pushforward_is_local(u):
    assert groth.agrees_with_local(u, max_size=1)


def test_full_embedding_criterion():
    ms = groth.full_embedding_instances(1)
    assert len(ms) >= 3
    for m in ms:
        assert groth.star_full_embedding(m, max_size=1)


def test_non_mono_phi_is_not_a_full_embedding():
    m = groth.GrothMorphism(groth.PPFunctor(IDENTITY), SetoidFn(TWO, ONE, [0, 0]), TWO)
    assert not is_full_embedding(groth.pushforward_star(m, max_size=1))


# power morphisms and pasting


def test_power_morphism_count():
    # sum over F, S, T of (|F||S|) ** (|T||F|) with |Id| = 1, |Sq| = 2
    sizes = {IDENTITY: 1, SQUARE: 2}
    expected = sum((sizes[F] * sizes[S]) ** (sizes[T] * sizes[F])
                   for F, S, T in itertools.product(sizes, repeat=3))
    assert len(groth.power_morphisms()) == expected == 300


def test_power_morphisms_are_natural():
    for m in groth.power_morphisms()[::7]:
        assert groth.verify_gen_naturality(m, 2)


def test_power_morphism_validates_its_index():
    with pytest.raises(ValueError):
        groth.power_morphism(groth.PPFunctor(IDENTITY), IDENTITY, SQUARE, (0,))
    with pytest.raises(ValueError):
        groth.power_morphism(groth.PPFunctor(IDENTITY), IDENTITY, SQUARE, (0, 1))


def test_coordinates_of_powers():
    sq2 = groth.compose_endofunctors(SQUARE, SQUARE)
    assert len(groth.coordinates(sq2, TWO)) == 4
    assert groth.compose_endofunctors(IDENTITY, SQUARE) == SQUARE
    with pytest.raises(ValueError):
        groth.coordinates(constant_functor(TWO), TWO)


def test_diagonal_as_power_morphism_matches_local_pushforward():
    diag = groth.power_morphism(groth.PPFunctor(IDENTITY), IDENTITY, SQUARE, (0, 0))
    d = diagonal(2)
    assert groth.agrees_with_gen_local(d, max_size=1)
    for x in all_setoids(2):
        assert diag.at(x) == d.at(x)


def test_star_product_units_and_associativity():
    ms = groth.power_morphisms()[::11]
    for m in ms:
        assert groth.same_components(groth.star_product(groth.gen_groth_identity(m.target), m), m)
        assert groth.same_components(groth.star_product(m, groth.gen_groth_identity(m.source)), m)
    for a, b, c in itertools.product(ms[:6], repeat=3):
        if a.target == b.source and b.target == c.source:
            left = groth.star_product(c, groth.star_product(b, a))
            right = groth.star_product(groth.star_product(c, b), a)
            assert groth.same_components(left, right)


def test_pasted_square_diagonal():
    diag = groth.power_morphism(groth.PPFunctor(IDENTITY), IDENTITY, SQUARE, (0, 0))
    sq = groth.GenGrothMorphism(groth.PPFunctor(SQUARE), SQUARE, SQUARE,
                                lambda x: identity(SQUARE.obj(SQUARE.obj(x))), "1")
    pasted = groth.star_product(sq, diag)
    # Sq(diag): (i, j) -> ((i, i), (j, j)) in (2 x 2) x (2 x 2)
    assert list(pasted.at(TWO).table) == [0, 3, 12, 15]


def test_generalized_pushforward_along_composites():
    src = genchu_category(IDENTITY, max_size=1)
    ms = [m for m in groth.power_morphisms()[::13] if m.source == IDENTITY]
    pairs = 0
    for eta in ms:
        for theta in groth.power_morphisms()[::17]:
            if eta.target == theta.source:
                pairs += 1
                assert groth.verify_gen_composition(theta, eta, source=src)
    assert pairs > 0


# antiparallel construction


@pytest.mark.parametrize("gamma", [ONE, TWO, THREE], ids=repr)
def test_hom_pairing_is_a_functor(gamma):
    assert verify_functor_laws(groth.hom_pairing_functor(gamma, 2))


def test_hom_pairing_values():
    S = groth.hom_pairing_functor(TWO, 2)
    assert S.obj((TWO, ONE)).size == 4
    assert S.obj((TWO, TWO)).size == 16


def test_antiparallel_category_and_identification():
    S = groth.hom_pairing_functor(TWO, 2)
    C = groth.antipar_category(S)
    assert verify_category_laws(C)
    v, counts = groth.chu_groth_identification(TWO, 2)
    assert v
    # the Chu side was checked against a brute-force oracle
    assert counts == {"objects": (47, 47), "arrows": (1972, 1972)}


def faulty_pairing(gamma):
    """Hom(_ x _, gamma) with one reindexing table replaced by the identity."""
    S = groth.hom_pairing_functor(gamma, 2)
    swap = SetoidFn(TWO, TWO, [1, 0])

    def mor(fg):
        f, g = fg
        out = S.mor(fg)
        if f == swap and g == identity(ONE):
            return identity(out.dom)
        return out

    return FunctorPresentation("faulty", S.src, S.dst, S.obj, mor)


def test_faulty_pairing_is_detected():
    S = faulty_pairing(TWO)
    v = verify_functor_laws(S)
    assert not v
    phi = groth.chu_to_antipar(TWO, 2, S)
    psi = groth.antipar_to_chu(TWO, 2, S)
    assert not groth.verify_isomorphism(phi, psi)
    v = verify_category_laws(groth.antipar_category(S))
    assert v.reason == "composite is not a morphism"


def test_fibred_reconstruction():
    v, counts = groth.fibred_chu(TWO, 2)
    assert v
    assert counts == {"objects": (47, 47), "arrows": (1972, 1972)}


def test_reindexing_composes_strictly():
    carriers = all_setoids(1)
    for h in all_maps(TWO, ONE):
        R = groth.reindexing(h, TWO, carriers)
        assert verify_functor_laws(R)


def test_sigma_embeds_values_into_functors():
    _, v = groth.sigma_hom_embedding()
    assert v


def test_separating_elements():
    f, g = SetoidFn(TWO, TWO, [0, 1]), SetoidFn(TWO, TWO, [1, 0])
    a, b, h = groth.separating_element(f, g)
    assert fn_compose(f, h) != fn_compose(g, h)
