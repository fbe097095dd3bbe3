"""Changing the ambient category and the value object together.

A product-preserving endofunctor F of finite setoids with a map
phi : F(gamma) -> delta pushes Chu spaces over gamma to Chu spaces over
delta; with a natural transformation eta : F.G => D.F in place of phi the
same works for endofunctor-valued Chu spaces. The second half realises
Chu(FinSetoid, gamma) as an antiparallel Grothendieck category of the
functor (a, b) -> Hom(a x b, gamma), and as the total category of the
fibration x -> Chu_x.
"""

import itertools

from .category import (CategoryPresentation, FunctorPresentation, NatTransPresentation,
                       NotProductPreserving, canonical_product_iso, finsetoid_category, invert,
                       is_full_embedding, is_injective_on_objects, opposite, product_category,
                       setoid_universe, verify_category_laws, verify_functor_laws,
                       verify_naturality)
from .chu import (ChuSpace, ChuTransform, chu_category, chu_identity, chu_universe,
                  local_pushforward)
from .generalized import (IDENTITY, SQUARE, GenChuSpace, GenChuTransform, composite,
                          constant_functor, gen_local_pushforward, genchu_category,
                          genchu_universe)
from .setoid import (ONE, THREE, TWO, SetoidError, SetoidFn, all_maps, all_setoids, exponential,
                     fn_compose, fn_product, identity, is_injection, product)
from .verdict import PASS, Verdict

TERMINAL = constant_functor(ONE)


def compose_endofunctors(G, F):
    """G after F, with the identity functor as a strict unit."""
    if G == IDENTITY:
        return F
    if F == IDENTITY:
        return G
    return composite(G, F)


class PPFunctor:
    """A product-preserving endofunctor with its canonical isomorphisms
    F_ab : F a x F b -> F(a x b).

    ``iso`` overrides the computed isomorphisms; used to inject faults.
    """

    def __init__(self, functor, iso=None):
        self.functor = functor
        self.name = functor.name
        self._iso = iso
        self._memo = {}

    def obj(self, a):
        return self.functor.obj(a)

    def mor(self, f):
        return self.functor.mor(f)

    def iso(self, a, b):
        key = (a, b)
        m = self._memo.get(key)
        if m is None:
            m = self._iso(a, b) if self._iso else canonical_product_iso(self.functor, a, b)
            self._memo[key] = m
        return m

    def __eq__(self, other):
        return isinstance(other, PPFunctor) and self.functor == other.functor

    def __hash__(self):
        return hash(("PP", self.functor))

    def __repr__(self):
        return f"PPFunctor({self.name})"


def check_product_preserving(F, max_size=2):
    """Each F_ab is invertible and natural:
    F(f x g) . F_ab = F_a'b' . (F f x F g)."""
    objs = all_setoids(max_size)
    try:
        for a, b in itertools.product(objs, objs):
            if invert(F.iso(a, b)) is None:
                return Verdict.fail("canonical map is not invertible", (a, b))
    except NotProductPreserving as e:
        return Verdict.fail("not product preserving", e.witness)
    C = finsetoid_category(max_size)
    arrows = list(C.arrows())
    for (a, a2, f), (b, b2, g) in itertools.product(arrows, arrows):
        left = fn_compose(F.mor(fn_product(f, g)), F.iso(a, b))
        right = fn_compose(F.iso(a2, b2), fn_product(F.mor(f), F.mor(g)))
        if left != right:
            return Verdict.fail("canonical isomorphism is not natural", (f, g))
    return PASS


def pp_compose(G, F):
    """The composite, with its own canonical isomorphisms computed afresh."""
    return PPFunctor(compose_endofunctors(G.functor, F.functor))


class GrothMorphism:
    """(F, phi) : (FinSetoid, gamma) -> (FinSetoid, delta), phi : F(gamma) -> delta."""

    def __init__(self, functor, phi, gamma):
        if phi.dom != functor.obj(gamma):
            raise SetoidError("phi must start at F(gamma)", (phi.dom, functor.obj(gamma)))
        self.functor = functor
        self.phi = phi
        self.gamma = gamma
        self.delta = phi.cod

    def __eq__(self, other):
        return (isinstance(other, GrothMorphism) and self.functor == other.functor
                and self.gamma == other.gamma and self.phi == other.phi)

    def __hash__(self):
        return hash((self.functor, self.gamma, self.phi.table))

    def __repr__(self):
        return f"GrothMorphism({self.functor.name}, {list(self.phi.table)})"


def groth_identity(gamma):
    return GrothMorphism(PPFunctor(IDENTITY), identity(gamma), gamma)


def groth_compose(g, f):
    """(G, theta) . (F, phi) = (G.F, theta . G(phi))."""
    if f.delta != g.gamma:
        raise SetoidError("morphisms are not composable", (f.delta, g.gamma))
    return GrothMorphism(pp_compose(g.functor, f.functor),
                         fn_compose(g.phi, g.functor.mor(f.phi)), f.gamma)


def _star_space(m, s):
    F = m.functor
    pairing = fn_compose(m.phi, fn_compose(F.mor(s.pairing), F.iso(s.left, s.right)))
    return ChuSpace(m.delta, F.obj(s.left), F.obj(s.right), pairing)


def _star_functor(m, src, name):
    F = m.functor
    P = FunctorPresentation(name, src, chu_universe(m.delta), lambda s: _star_space(m, s), None)
    P._mor = lambda t: ChuTransform(P.obj(t.src), P.obj(t.dst), F.mor(t.fwd), F.mor(t.bwd),
                                    check=False)
    return P


def pushforward_star(m, carriers=None, max_size=2, source=None):
    """F_* : (a, f, b) -> (F a, phi . F(f) . F_ab, F b), transforms mapped
    componentwise by F. ``source`` may pass a prebuilt Chu category over
    gamma."""
    src = source or chu_category(m.gamma, carriers, max_size)
    return _star_functor(m, src, f"{m.functor.name}_*{list(m.phi.table)}")


def same_functor_tables(P, Q):
    """P and Q agree on every object and arrow of their common source."""
    for a in P.src.objects:
        if P.obj(a) != Q.obj(a):
            return Verdict.fail("object images differ", (a, P.obj(a), Q.obj(a)))
    for a, b, f in P.src.arrows():
        if P.mor(f) != Q.mor(f):
            return Verdict.fail("arrow images differ", (a, b, f, P.mor(f), Q.mor(f)))
    return PASS


def verify_global_composition(g, f, carriers=None, max_size=2, source=None):
    """(G.F)_* = G_* . F_* on every space and transform of the fragment.

    G_* is applied to F_* images directly, so its source is whatever
    spaces F produces.
    """
    src = source or chu_category(f.gamma, carriers, max_size)
    GF = pushforward_star(groth_compose(g, f), source=src)
    Fs = pushforward_star(f, source=src)
    Gs = _star_functor(g, None, "G_*")
    both = FunctorPresentation("G_*.F_*", src, GF.dst, lambda s: Gs.obj(Fs.obj(s)),
                               lambda t: Gs.mor(Fs.mor(t)))
    return same_functor_tables(GF, both)


def _product_preserving_functors():
    return (PPFunctor(IDENTITY), PPFunctor(SQUARE), PPFunctor(TERMINAL))


def groth_morphisms(gamma, delta):
    """Every (F, phi) : (FinSetoid, gamma) -> (FinSetoid, delta) with F among
    the identity, the square and the functor to the terminal setoid."""
    out = []
    for F in _product_preserving_functors():
        for phi in all_maps(F.obj(gamma), delta):
            out.append(GrothMorphism(F, phi, gamma))
    return out


# Generalized values


class GenGrothMorphism:
    """(F, eta) : (FinSetoid, G) -> (FinSetoid, D) with
    eta_x : F(G x) -> D(F x) natural in x."""

    def __init__(self, functor, source, target, component, name="eta"):
        self.functor = functor
        self.source = source
        self.target = target
        self.name = name
        self._component = component
        self._memo = {}

    def at(self, x):
        m = self._memo.get(x)
        if m is None:
            m = self._memo[x] = self._component(x)
        return m

    def transformation(self, max_size=2):
        F, S, T = self.functor.functor, self.source, self.target
        left = compose_endofunctors(F, S).presentation(max_size)
        right = compose_endofunctors(T, F).presentation(max_size)
        return NatTransPresentation(self.name, left, right, self.at)

    def __repr__(self):
        return f"GenGrothMorphism({self.functor.name}, {self.source}=>{self.target}, {self.name})"


def verify_gen_naturality(m, max_size=2):
    return verify_naturality(m.transformation(max_size))


def gen_groth_identity(G):
    return GenGrothMorphism(PPFunctor(IDENTITY), G, G, lambda x: identity(G.obj(x)), "1")


def star_product(theta, eta):
    """(G, theta) after (F, eta): (G.F, theta * eta) with
    (theta * eta)_x = theta_{F x} . G(eta_x)."""
    if eta.target != theta.source:
        raise SetoidError("morphisms are not composable", (eta.target, theta.source))
    F, G = eta.functor, theta.functor
    return GenGrothMorphism(pp_compose(G, F), eta.source, theta.target,
                            lambda x: fn_compose(theta.at(F.obj(x)), G.mor(eta.at(x))),
                            f"{theta.name}*{eta.name}")


def same_components(m, n, max_size=2):
    for x in all_setoids(max_size):
        if m.at(x) != n.at(x):
            return Verdict.fail("components differ", (x, m.at(x), n.at(x)))
    return PASS


def _gen_star_space(m, s):
    F = m.functor
    pairing = fn_compose(m.at(s.anchor), fn_compose(F.mor(s.pairing), F.iso(s.left, s.right)))
    return GenChuSpace(m.target, F.obj(s.anchor), F.obj(s.left), F.obj(s.right), pairing)


def _gen_star_functor(m, src, name):
    F = m.functor
    P = FunctorPresentation(name, src, genchu_universe(m.target),
                            lambda s: _gen_star_space(m, s), None)
    P._mor = lambda t: GenChuTransform(P.obj(t.src), P.obj(t.dst), F.mor(t.zero), F.mor(t.fwd),
                                       F.mor(t.bwd), check=False)
    return P


def gen_pushforward(m, anchors=None, carriers=None, max_size=2, source=None):
    """F_* : (x; a, f, b) -> (F x; F a, eta_x . F(f) . F_ab, F b)."""
    src = source or genchu_category(m.source, anchors, carriers, max_size)
    return _gen_star_functor(m, src, f"{m.functor.name}_*[{m.name}]")


def verify_gen_composition(theta, eta, anchors=None, carriers=None, max_size=2, source=None):
    """(G.F, theta * eta)_* = G_* . F_* on the fragment of eta's source."""
    src = source or genchu_category(eta.source, anchors, carriers, max_size)
    P = gen_pushforward(star_product(theta, eta), source=src)
    Fs = gen_pushforward(eta, source=src)
    Gs = _gen_star_functor(theta, None, "G_*")
    Q = FunctorPresentation("G_*.F_*", src, P.dst, lambda s: Gs.obj(Fs.obj(s)),
                            lambda t: Gs.mor(Fs.mor(t)))
    return same_functor_tables(P, Q)


def _factors(F):
    if F.tag == "composite":
        return F.rebuild[1]
    return None


def coordinates(F, x):
    """Projections F(x) -> x for F built from the identity and the square
    by composition, outer coordinates first."""
    if F == IDENTITY:
        return [identity(x)]
    if F == SQUARE:
        pw = product(x, x)
        return [pw.proj_left, pw.proj_right]
    parts = _factors(F)
    if parts is None:
        raise ValueError(f"{F.name} is not a power of the identity")
    G, H = parts
    inner = coordinates(H, x)
    return [fn_compose(d, c) for c in coordinates(G, H.obj(x)) for d in inner]


def coordinate_map(src_coords, dst_coords, index):
    """The map sending e to the element whose j-th coordinate is the
    index[j]-th coordinate of e."""
    dst = dst_coords[0].dom
    by_coords = {}
    for e in dst.classes:
        by_coords.setdefault(tuple(c.table[e] for c in dst_coords), e)
    src = src_coords[0].dom
    table = [by_coords[tuple(src_coords[i].table[e] for i in index)] for e in src]
    return SetoidFn(src, dst, table, check=False)


def power_morphism(F, source, target, index):
    """(F, eta) where eta rearranges coordinates: the j-th coordinate of
    eta_x(e) is coordinate index[j] of e. Such eta are always natural."""
    FS = compose_endofunctors(F.functor, source)
    TF = compose_endofunctors(target, F.functor)
    n, m = len(coordinates(FS, ONE)), len(coordinates(TF, ONE))
    if len(index) != m or not all(0 <= i < n for i in index):
        raise ValueError(f"index must pick {m} of {n} coordinates", index)

    def component(x):
        return coordinate_map(coordinates(FS, x), coordinates(TF, x), index)

    return GenGrothMorphism(F, source, target, component, f"pi{list(index)}")


def power_morphisms(functors=(IDENTITY, SQUARE), x=None):
    """Every coordinate-rearranging (F, eta) with F, source and target drawn
    from ``functors``."""
    x = x or ONE
    out = []
    for F, S, T in itertools.product(functors, repeat=3):
        n = len(coordinates(compose_endofunctors(F, S), x))
        m = len(coordinates(compose_endofunctors(T, F), x))
        for index in itertools.product(range(n), repeat=m):
            out.append(power_morphism(PPFunctor(F), S, T, index))
    return out


# The antiparallel Grothendieck construction


def hom_pairing_functor(gamma, max_size=2):
    """S(a, b) = Hom(a x b, gamma), contravariant in both places:
    S(f, g)(h) = h . (f x g). A covariant functor on (C x C)^op."""
    C = finsetoid_category(max_size)
    src = opposite(product_category(C, C))

    def obj(p):
        return exponential(product(*p).prod, gamma).expo

    def mor(fg):
        f, g = fg
        inner = fn_product(f, g)
        big = exponential(inner.cod, gamma)
        small = exponential(inner.dom, gamma)
        table = [small.index([big.tables[k][i] for i in inner.table]) for k in big.expo]
        return SetoidFn(big.expo, small.expo, table, check=False)

    return FunctorPresentation(f"Hom(_x_,{gamma!r})", src, setoid_universe(), obj, mor)


def left_partial(S, a, g):
    """S_a(g) = S(1_a, g)."""
    return S.mor((identity(a), g))


def right_partial(S, b, f):
    """_bS(f) = S(f, 1_b)."""
    return S.mor((f, identity(b)))


class AntiparObject:
    """(a, x, u) with u an element of S(a, x)."""
    __slots__ = ("a", "x", "u", "_hash")

    def __init__(self, a, x, u):
        self.a = a
        self.x = x
        self.u = u
        self._hash = hash((a, x, u))

    def __eq__(self, other):
        return (isinstance(other, AntiparObject) and self.u == other.u and self.a == other.a
                and self.x == other.x)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AntiparObject({self.a!r}, {self.x!r}, {self.u})"


class AntiparArrow:
    """(plus : a -> b, minus : y -> x)."""
    __slots__ = ("src", "dst", "plus", "minus", "_hash")

    def __init__(self, src, dst, plus, minus):
        self.src = src
        self.dst = dst
        self.plus = plus
        self.minus = minus
        self._hash = hash((src, dst, plus.table, minus.table))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        return (isinstance(other, AntiparArrow) and self.plus == other.plus
                and self.minus == other.minus and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AntiparArrow(plus={list(self.plus.table)}, minus={list(self.minus.table)})"


def antipar_condition(S, src, dst, plus, minus):
    """[S_a(minus)](u) = [_yS(plus)](v) in S(a, y)."""
    target = S.obj((src.a, dst.x))
    left = left_partial(S, src.a, minus).table[src.u]
    right = right_partial(S, dst.x, plus).table[dst.u]
    return target.eq(left, right)


def antipar_category(S, carriers=None):
    """Objects (a, x, u), arrows (plus, minus) satisfying the condition."""
    carriers = tuple(all_setoids(2)) if carriers is None else tuple(carriers)

    def objects():
        return [AntiparObject(a, x, u) for a in carriers for x in carriers
                for u in S.obj((a, x)).classes]

    def hom(p, q):
        return [AntiparArrow(p, q, f, g) for f in all_maps(p.a, q.a) for g in all_maps(q.x, p.x)
                if antipar_condition(S, p, q, f, g)]

    def compose(t, s):
        return AntiparArrow(s.src, t.dst, fn_compose(t.plus, s.plus), fn_compose(s.minus, t.minus))

    def contains(p, q, t):
        return (isinstance(t, AntiparArrow) and t.src == p and t.dst == q
                and antipar_condition(S, p, q, t.plus, t.minus))

    return CategoryPresentation(
        f"Groth({S.name})", objects, hom, compose,
        lambda p: AntiparArrow(p, p, identity(p.a), identity(p.x)), contains=contains,
        tables=lambda t: ((t.plus.table,), (t.minus.table,)))


def chu_to_antipar(gamma, max_size=2, S=None):
    """(a, f, b) -> (a, b, f) and (fwd, bwd) -> (fwd, bwd)."""
    S = S or hom_pairing_functor(gamma, max_size)
    carriers = all_setoids(max_size)
    src = chu_category(gamma, carriers)
    dst = antipar_category(S, carriers)

    def obj(s):
        ew = exponential(product(s.left, s.right).prod, gamma)
        return AntiparObject(s.left, s.right, ew.index(s.pairing.table))

    return FunctorPresentation("chu->groth", src, dst, obj,
                               lambda t: AntiparArrow(obj(t.src), obj(t.dst), t.fwd, t.bwd))


def antipar_to_chu(gamma, max_size=2, S=None):
    S = S or hom_pairing_functor(gamma, max_size)
    carriers = all_setoids(max_size)
    src = antipar_category(S, carriers)

    def obj(p):
        ew = exponential(product(p.a, p.x).prod, gamma)
        return ChuSpace(gamma, p.a, p.x, ew.element(p.u))

    return FunctorPresentation("groth->chu", src, chu_category(gamma, carriers), obj,
                               lambda t: ChuTransform(obj(t.src), obj(t.dst), t.plus, t.minus,
                                                      check=False))


def verify_isomorphism(Phi, Psi):
    """Phi and Psi are mutually inverse functors: laws, then both round
    trips are the identity on objects and arrows."""
    for F in (Phi, Psi):
        v = verify_functor_laws(F)
        if not v:
            return v
    for F, G in ((Phi, Psi), (Psi, Phi)):
        for a in F.src.objects:
            if G.obj(F.obj(a)) != a:
                return Verdict.fail("round trip moves an object", (F.name, a))
        for a, b, f in F.src.arrows():
            if G.mor(F.mor(f)) != f:
                return Verdict.fail("round trip moves an arrow", (F.name, f))
    return PASS


def chu_groth_identification(gamma, max_size=2):
    """Chu(FinSetoid, gamma) and the antiparallel Grothendieck category of
    Hom(_ x _, gamma) are isomorphic on the fragment."""
    S = hom_pairing_functor(gamma, max_size)
    Phi = chu_to_antipar(gamma, max_size, S)
    Psi = antipar_to_chu(gamma, max_size, S)
    counts = {"objects": (len(Phi.src.objects), len(Phi.dst.objects)),
              "arrows": (sum(1 for _ in Phi.src.arrows()), sum(1 for _ in Phi.dst.arrows()))}
    for a in Phi.src.objects:
        for b in Phi.src.objects:
            n, m = len(Phi.src.hom(a, b)), len(Phi.dst.hom(Phi.obj(a), Phi.obj(b)))
            if n != m:
                return Verdict.fail("hom-set sizes differ", (a, b, n, m)), counts
    return verify_isomorphism(Phi, Psi), counts


# The fibration x -> Chu_x


def fibre_category(gamma, x, carriers):
    """Chu_x: spaces (a, f, x), arrows (plus, 1_x)."""
    one = identity(x)

    def objects():
        return [ChuSpace(gamma, a, x, f) for a in carriers
                for f in all_maps(product(a, x).prod, gamma)]

    def hom(s, t):
        return [ChuTransform(s, t, f, one, check=False) for f in all_maps(s.left, t.left)
                if _fibre_arrow(s, t, f)]

    def contains(s, t, h):
        return (isinstance(h, ChuTransform) and h.src == s and h.dst == t and h.bwd == one
                and _fibre_arrow(s, t, h.fwd))

    return CategoryPresentation(f"Chu_{x!r}", objects, hom,
                                lambda g, f: ChuTransform(f.src, g.dst, fn_compose(g.fwd, f.fwd),
                                                          one, check=False),
                                chu_identity, contains=contains,
                                tables=lambda h: ((h.fwd.table,), ()))


def _fibre_arrow(s, t, f):
    return all(s.value(p, y) == t.value(f.table[p], y) for p in s.left for y in s.right)


def reindex_space(h, s):
    """h* (a, f, x) = (a, f . (1 x h), x')."""
    return ChuSpace(s.gamma, s.left, h.dom, fn_compose(s.pairing, fn_product(identity(s.left), h)))


def reindexing(h, gamma, carriers):
    """h* : Chu_x -> Chu_x' for h : x' -> x."""
    src = fibre_category(gamma, h.cod, carriers)
    dst = fibre_category(gamma, h.dom, carriers)
    one = identity(h.dom)
    return FunctorPresentation(
        f"{list(h.table)}*", src, dst, lambda s: reindex_space(h, s),
        lambda t: ChuTransform(reindex_space(h, t.src), reindex_space(h, t.dst), t.fwd, one,
                               check=False))


class TotalObject:
    __slots__ = ("base", "space", "_hash")

    def __init__(self, base, space):
        self.base = base
        self.space = space
        self._hash = hash((base, space))

    def __eq__(self, other):
        return isinstance(other, TotalObject) and self.base == other.base and self.space == other.space

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TotalObject({self.base!r}, {self.space!r})"


class TotalArrow:
    """Over h : y -> x, a fibre arrow h*(A) -> B; reversed with respect to h."""
    __slots__ = ("src", "dst", "base", "fibre", "_hash")

    def __init__(self, src, dst, base, fibre):
        self.src = src
        self.dst = dst
        self.base = base
        self.fibre = fibre
        self._hash = hash((src, dst, base.table, fibre.fwd.table))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        return (isinstance(other, TotalArrow) and self.base == other.base
                and self.fibre.fwd == other.fibre.fwd and self.src == other.src
                and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TotalArrow(base={list(self.base.table)}, fibre={list(self.fibre.fwd.table)})"


def total_category(gamma, carriers):
    """Objects (x, A) with A in Chu_x; an arrow (x, A) -> (y, B) is a base
    map h : y -> x with a fibre arrow h*(A) -> B. Composition is
    (k, b) . (h, a) = (h . k, b . k*(a))."""
    fibres = {x: fibre_category(gamma, x, carriers) for x in carriers}

    def objects():
        return [TotalObject(x, s) for x in carriers for s in fibres[x].objects]

    def hom(p, q):
        out = []
        for h in all_maps(q.base, p.base):
            moved = reindex_space(h, p.space)
            for a in fibres[q.base].hom(moved, q.space):
                out.append(TotalArrow(p, q, h, a))
        return out

    def compose(t, s):
        k, h = t.base, s.base
        moved = ChuTransform(reindex_space(k, s.fibre.src), reindex_space(k, s.fibre.dst),
                             s.fibre.fwd, identity(k.dom), check=False)
        fibre = fibres[t.dst.base].compose(t.fibre, moved)
        return TotalArrow(s.src, t.dst, fn_compose(h, k), fibre)

    def identity_arrow(p):
        return TotalArrow(p, p, identity(p.base), chu_identity(p.space))

    def contains(p, q, t):
        return (isinstance(t, TotalArrow) and t.src == p and t.dst == q and t.base.dom == q.base
                and t.base.cod == p.base
                and fibres[q.base].contains(reindex_space(t.base, p.space), q.space, t.fibre))

    C = CategoryPresentation(f"Total({gamma!r})", objects, hom, compose, identity_arrow,
                             contains=contains,
                             tables=lambda t: ((t.fibre.fwd.table,), (t.base.table,)))
    C.fibres = fibres
    return C


def fibred_chu(gamma, max_size=2):
    """Build the fibres and reindexing functors, check x -> Chu_x is a
    strict contravariant functor, and compare its total category with
    Chu(FinSetoid, gamma). Returns (verdict, counts)."""
    carriers = tuple(all_setoids(max_size))
    counts = {}
    base = finsetoid_category(max_size)
    for x in carriers:
        v = verify_category_laws(fibre_category(gamma, x, carriers))
        if not v:
            return v, counts
    for x, y, h in base.arrows():
        v = verify_functor_laws(reindexing(h, gamma, carriers))
        if not v:
            return v, counts
    for x in carriers:
        v = same_functor_tables(reindexing(identity(x), gamma, carriers),
                                _identity_functor(fibre_category(gamma, x, carriers)))
        if not v:
            return Verdict.fail("reindexing along an identity is not the identity", v.witness), counts
    for x, y, h in base.arrows():
        for z in carriers:
            for k in all_maps(z, x):
                hk = reindexing(fn_compose(h, k), gamma, carriers)
                both = FunctorPresentation("k*.h*", hk.src, hk.dst,
                                           lambda s, h=h, k=k: reindex_space(k, reindex_space(h, s)),
                                           lambda t, h=h, k=k: _reindex_arrow(k, _reindex_arrow(h, t)))
                v = same_functor_tables(hk, both)
                if not v:
                    return Verdict.fail("reindexing is not strictly functorial", (h, k)), counts
    T = total_category(gamma, carriers)
    v = verify_category_laws(T)
    if not v:
        return v, counts
    v = _fibres_embed(T)
    if not v:
        return v, counts
    Phi = chu_to_total(gamma, carriers, T)
    Psi = total_to_chu(gamma, carriers, T)
    counts["objects"] = (len(Phi.src.objects), len(T.objects))
    counts["arrows"] = (sum(1 for _ in Phi.src.arrows()), sum(1 for _ in T.arrows()))
    return verify_isomorphism(Phi, Psi), counts


def _reindex_arrow(h, t):
    return ChuTransform(reindex_space(h, t.src), reindex_space(h, t.dst), t.fwd, identity(h.dom),
                        check=False)


def _identity_functor(C):
    return FunctorPresentation("1", C, C, lambda a: a, lambda f: f)


def _fibres_embed(T):
    """alpha -> (1_x, alpha) sends each fibre hom-set injectively into the
    total hom-set."""
    for x, fibre in T.fibres.items():
        for s in fibre.objects:
            for t in fibre.objects:
                p, q = TotalObject(x, s), TotalObject(x, t)
                images = set()
                for a in fibre.hom(s, t):
                    img = TotalArrow(p, q, identity(x), a)
                    if not T.contains(p, q, img):
                        return Verdict.fail("fibre arrow is not a total arrow", (s, t, a))
                    images.add(img)
                if len(images) != len(fibre.hom(s, t)):
                    return Verdict.fail("fibre arrows collide in the total category", (s, t))
    return PASS


def chu_to_total(gamma, carriers, T):
    """(a, f, x) -> (x, (a, f, x)), (fwd, bwd) -> (bwd, (fwd, 1))."""
    def mor(t):
        p, q = TotalObject(t.src.right, t.src), TotalObject(t.dst.right, t.dst)
        fibre = ChuTransform(reindex_space(t.bwd, t.src), t.dst, t.fwd, identity(t.dst.right),
                             check=False)
        return TotalArrow(p, q, t.bwd, fibre)

    return FunctorPresentation("chu->total", chu_category(gamma, carriers), T,
                               lambda s: TotalObject(s.right, s), mor)


def total_to_chu(gamma, carriers, T):
    return FunctorPresentation(
        "total->chu", T, chu_category(gamma, carriers), lambda p: p.space,
        lambda t: ChuTransform(t.src.space, t.dst.space, t.fibre.fwd, t.base, check=False))


# gamma -> Hom(_ x _, gamma)


class FunctorTable:
    """A functor on a fixed enumerated category, frozen as tables: the
    object images in order, then the arrow images in order."""
    __slots__ = ("objects", "arrows", "_hash")

    def __init__(self, objects, arrows):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self._hash = hash((self.objects, self.arrows))

    def __eq__(self, other):
        return (isinstance(other, FunctorTable) and self.objects == other.objects
                and self.arrows == other.arrows)

    def __hash__(self):
        return self._hash


class NatTable:
    __slots__ = ("src", "dst", "components", "_hash")

    def __init__(self, src, dst, components):
        self.src = src
        self.dst = dst
        self.components = tuple(components)
        self._hash = hash((src, dst, self.components))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        return (isinstance(other, NatTable) and self.components == other.components
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash


def functor_category(domain):
    """Functors domain -> FinSetoid as FunctorTables, natural
    transformations as component tables. Not enumerable; a functor target."""
    objs = tuple(domain.objects)
    arrows = list(domain.arrows())
    pos = {a: k for k, a in enumerate(objs)}

    def natural(F, G, comps):
        for k, a in enumerate(objs):
            c = comps[k]
            if len(c) != F.objects[k].size or any(not (0 <= v < G.objects[k].size) for v in c):
                return False
        for i, (a, b, _) in enumerate(arrows):
            fa, ga = F.arrows[i], G.arrows[i]
            ca, cb = comps[pos[a]], comps[pos[b]]
            tb = G.objects[pos[b]]
            if any(not tb.eq(cb[fa[e]], ga[ca[e]]) for e in range(F.objects[pos[a]].size)):
                return False
        return True

    def no_objects():
        raise TypeError("functor categories are not enumerable")

    return CategoryPresentation(
        f"[{domain.name}, FinSetoid]", no_objects, lambda F, G: [],
        lambda n, m: NatTable(m.src, n.dst, [tuple(nc[v] for v in mc)
                                             for nc, mc in zip(n.components, m.components)]),
        lambda F: NatTable(F, F, [tuple(range(s.size)) for s in F.objects]),
        contains=lambda F, G, n: (isinstance(n, NatTable) and n.src == F and n.dst == G
                                  and natural(F, G, n.components)),
        tables=lambda n: (n.components, ()))


def freeze(S):
    objs = S.src.objects
    return FunctorTable([S.obj(p) for p in objs], [S.mor(f).table for _, _, f in S.src.arrows()])


def postcompose_transformation(f, S_src, S_dst):
    """eta^f_(a, b)(h) = f . h."""
    comps = []
    for p in S_src.src.objects:
        small = exponential(product(*p).prod, f.dom)
        big = exponential(product(*p).prod, f.cod)
        comps.append(tuple(big.index([f.table[v] for v in small.tables[k]]) for k in small.expo))
    return comps


def sigma_hom_embedding(values=None, max_size=2):
    """gamma -> Hom(_ x _, gamma), f -> eta^f as a functor from the values
    (with all maps between them) into functors (C x C)^op -> FinSetoid.
    Returns (functor, verdict): laws, naturality of each eta^f, injective
    on objects and on arrows."""
    values = tuple(values or (ONE, TWO, THREE))
    src = CategoryPresentation("Values", values, all_maps, fn_compose, identity,
                               contains=lambda a, b, f: f.dom == a and f.cod == b)
    pairings = {g: hom_pairing_functor(g, max_size) for g in values}
    frozen = {g: freeze(S) for g, S in pairings.items()}
    domain = pairings[values[0]].src
    dst = functor_category(domain)

    def mor(f):
        return NatTable(frozen[f.dom], frozen[f.cod],
                        postcompose_transformation(f, pairings[f.dom], pairings[f.cod]))

    Sigma = FunctorPresentation("Sigma", src, dst, lambda g: frozen[g], mor)
    v = verify_functor_laws(Sigma)
    if v:
        v = is_injective_on_objects(Sigma)
    if v:
        v = _separated(Sigma, pairings)
    return Sigma, v


def separating_element(f, g, max_size=2):
    """Some (a, b, h) with f . h != g . h, searched in order."""
    for a in all_setoids(max_size):
        for b in all_setoids(max_size):
            for h in all_maps(product(a, b).prod, f.dom):
                if fn_compose(f, h) != fn_compose(g, h):
                    return a, b, h
    return None


def _separated(Sigma, pairings):
    for a in Sigma.src.objects:
        for b in Sigma.src.objects:
            fs = Sigma.src.hom(a, b)
            for f, g in itertools.combinations(fs, 2):
                if Sigma.mor(f) == Sigma.mor(g):
                    return Verdict.fail("two arrows with the same image", (f, g))
                if separating_element(f, g) is None:
                    return Verdict.fail("no separating element", (f, g))
    return PASS


def full_embedding_instances(max_size=2):
    """(Id, u)_* for monos u between small value setoids."""
    out = []
    for gamma in all_setoids(max_size):
        if gamma.size == 0:
            continue
        for delta in all_setoids(max_size + 1):
            for u in all_maps(gamma, delta):
                if is_injection(u):
                    out.append(GrothMorphism(PPFunctor(IDENTITY), u, gamma))
    return out


def star_full_embedding(m, carriers=None, max_size=2):
    return is_full_embedding(pushforward_star(m, carriers, max_size))


def agrees_with_local(u, carriers=None, max_size=2):
    """(Id, u)_* and u_* have equal tables."""
    return same_functor_tables(pushforward_star(GrothMorphism(PPFunctor(IDENTITY), u, u.dom),
                                                carriers, max_size),
                               local_pushforward(u, carriers, max_size))


def agrees_with_gen_local(eta, anchors=None, carriers=None, max_size=2):
    """(Id, eta)_* and the pushforward along eta have equal tables."""
    src, dst = eta.endofunctors
    m = GenGrothMorphism(PPFunctor(IDENTITY), src, dst, eta.at, eta.name)
    return same_functor_tables(gen_pushforward(m, anchors, carriers, max_size),
                               gen_local_pushforward(eta, anchors, carriers, max_size))

