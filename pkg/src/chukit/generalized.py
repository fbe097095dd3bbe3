"""Chu spaces anchored at an object and valued in an endofunctor.

A space (x; a, f, b) has f : a x b -> G(x); a transform
(phi0, phi+, phi-) must make the pentagon

    G(phi0) . f . (1 x phi-) = g . (phi+ x 1)

commute. Over the identity this gives predicates, over the square
complemented predicates, and over a constant functor plain Chu spaces.
"""

from functools import lru_cache

import numpy as np

from . import chu, kernels
from .category import (CategoryPresentation, FunctorPresentation, NatTransPresentation,
                       finsetoid_category, is_mono, setoid_universe, verify_functor_laws,
                       verify_naturality)
from .chu import ChuSpace, chu_category, extensional_choices, map_array
from .setoid import (ONE, Apartness, SetoidError, SetoidFn, all_maps, all_setoids,
                     canonical_complemented_subsets, canonical_subsets, denial, fn_compose,
                     fn_product, identity, is_injection, is_strongly_extensional, product,
                     subset_of)
from .verdict import PASS, Verdict


class Endofunctor:
    """An endofunctor of finite setoids, given by its action on objects and
    maps. Instances compare by name."""
    __slots__ = ("name", "tag", "obj", "mor", "rebuild")

    def __init__(self, name, tag, obj, mor, rebuild=None):
        self.name = name
        self.tag = tag
        self.obj = lru_cache(maxsize=None)(obj)
        self.mor = lru_cache(maxsize=None)(mor)
        self.rebuild = rebuild

    def __eq__(self, other):
        return isinstance(other, Endofunctor) and self.name == other.name

    def __hash__(self):
        return hash(("Endofunctor", self.name))

    def __reduce__(self):
        return self.rebuild or (endofunctor_named, (self.name,))

    def __repr__(self):
        return self.name

    def presentation(self, max_size=2):
        return FunctorPresentation(self.name, finsetoid_category(max_size), setoid_universe(),
                                   self.obj, self.mor)


IDENTITY = Endofunctor("Id", "identity", lambda x: x, lambda f: f)
SQUARE = Endofunctor("Id2", "square", lambda x: product(x, x).prod, lambda f: fn_product(f, f))


@lru_cache(maxsize=None)
def constant_functor(value):
    return Endofunctor(f"Const[{value.canonical()}]", "constant",
                       lambda x: value, lambda f: identity(value), (constant_functor, (value,)))


_custom = {}


def custom(name, obj, mor):
    """A user-supplied endofunctor; check it with ``verify_endofunctor``.
    Registered by name, so only usable in the process that made it."""
    F = Endofunctor(name, "custom", obj, mor)
    _custom[name] = F
    return F


def composite(G, F):
    """G after F."""
    return Endofunctor(f"{G.name}.{F.name}", "composite",
                       lambda x: G.obj(F.obj(x)), lambda f: G.mor(F.mor(f)), (composite, (G, F)))


def endofunctor_named(name):
    if name == "Id":
        return IDENTITY
    if name == "Id2":
        return SQUARE
    if name in _custom:
        return _custom[name]
    raise KeyError(f"unknown endofunctor {name}")


def verify_endofunctor(F, max_size=2):
    return verify_functor_laws(F.presentation(max_size))


class GenChuSpace:
    """(anchor; left, pairing, right) over ``functor``."""
    __slots__ = ("functor", "anchor", "left", "right", "pairing", "_hash", "_matrix")

    def __init__(self, functor, anchor, left, right, pairing):
        if pairing.dom != product(left, right).prod or pairing.cod != functor.obj(anchor):
            raise SetoidError("pairing is not a map left x right -> G(anchor)",
                              (pairing.dom, pairing.cod))
        self.functor = functor
        self.anchor = anchor
        self.left = left
        self.right = right
        self.pairing = pairing
        self._hash = hash((functor, anchor, left, right, pairing.table))
        self._matrix = None

    @property
    def value(self):
        return self.functor.obj(self.anchor)

    @property
    def rows(self):
        n = self.right.size
        t = self.pairing.table
        return tuple(t[x * n:(x + 1) * n] for x in range(self.left.size))

    @property
    def matrix(self):
        if self._matrix is None:
            m = np.array(self.pairing.table, dtype=np.int64)
            self._matrix = m.reshape(self.left.size, self.right.size)
        return self._matrix

    def forget(self):
        """The plain Chu space valued in G(anchor)."""
        return ChuSpace(self.value, self.left, self.right, self.pairing)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GenChuSpace):
            return NotImplemented
        return (self._hash == other._hash and self.functor == other.functor
                and self.anchor == other.anchor and self.left == other.left
                and self.right == other.right and self.pairing == other.pairing)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return GenChuSpace, (self.functor, self.anchor, self.left, self.right, self.pairing)

    def __repr__(self):
        return (f"GenChuSpace({self.functor.name}; {self.anchor!r}; {self.left!r}, "
                f"{[list(r) for r in self.rows]}, {self.right!r})")


def pentagon_violation(src, dst, zero, fwd, bwd):
    """First (a, d) where the pentagon fails, or None."""
    post = np.asarray(src.functor.mor(zero).table, dtype=np.int64)
    lhs = post[src.matrix] if src.matrix.size else src.matrix
    w = kernels.first_violation(lhs, dst.matrix, np.asarray(fwd.table, dtype=np.int64),
                                np.asarray(bwd.table, dtype=np.int64))
    return None if w is None else tuple(int(v) for v in w)


class GenChuTransform:
    """(zero, fwd, bwd) = (phi0, phi+, phi-)."""
    __slots__ = ("src", "dst", "zero", "fwd", "bwd", "_hash")

    def __init__(self, src, dst, zero, fwd, bwd, check=True):
        if src.functor != dst.functor:
            raise SetoidError("spaces over different endofunctors", (src.functor, dst.functor))
        if check:
            v = is_genchu_transform(src, dst, zero, fwd, bwd)
            if not v:
                raise SetoidError(v.reason, v.witness)
        self.src = src
        self.dst = dst
        self.zero = zero
        self.fwd = fwd
        self.bwd = bwd
        self._hash = hash((src, dst, zero.table, fwd.table, bwd.table))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GenChuTransform):
            return NotImplemented
        return (self._hash == other._hash and self.zero == other.zero and self.fwd == other.fwd
                and self.bwd == other.bwd and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return GenChuTransform, (self.src, self.dst, self.zero, self.fwd, self.bwd, False)

    def __repr__(self):
        return (f"GenChuTransform(zero={list(self.zero.table)}, fwd={list(self.fwd.table)}, "
                f"bwd={list(self.bwd.table)})")


def is_genchu_transform(src, dst, zero, fwd, bwd):
    if src.functor != dst.functor:
        raise SetoidError("spaces over different endofunctors", (src.functor, dst.functor))
    if ((zero.dom, zero.cod) != (src.anchor, dst.anchor)
            or (fwd.dom, fwd.cod) != (src.left, dst.left)
            or (bwd.dom, bwd.cod) != (dst.right, src.right)):
        return Verdict.fail("transform components are mistyped")
    w = pentagon_violation(src, dst, zero, fwd, bwd)
    if w is not None:
        return Verdict.fail("pentagon fails", w)
    return PASS


def genchu_identity(space):
    return GenChuTransform(space, space, identity(space.anchor), identity(space.left),
                           identity(space.right), check=False)


def genchu_compose(theta, phi):
    """(theta0 . phi0, theta+ . phi+, phi- . theta-)."""
    if phi.dst != theta.src:
        raise SetoidError("transforms are not composable", (phi.dst, theta.src))
    return GenChuTransform(phi.src, theta.dst, fn_compose(theta.zero, phi.zero),
                           fn_compose(theta.fwd, phi.fwd), fn_compose(phi.bwd, theta.bwd),
                           check=chu.DEBUG)


def genchu_enumerate_hom(src, dst):
    """Every transform, ordered by anchor map, then forward map, then
    backward map, each lexicographically."""
    if src.functor != dst.functor:
        raise SetoidError("spaces over different endofunctors", (src.functor, dst.functor))
    out = []
    fwds = all_maps(src.left, dst.left)
    for zero in all_maps(src.anchor, dst.anchor):
        post = np.asarray(src.functor.mor(zero).table, dtype=np.int64)
        lhs = post[src.matrix] if src.matrix.size else src.matrix
        allowed = kernels.allowed_matrix(lhs, dst.matrix, map_array(src.left, dst.left))
        for k, fwd in enumerate(fwds):
            for t in extensional_choices(allowed[k].tolist(), dst.right, src.right):
                bwd = SetoidFn(dst.right, src.right, t, check=False)
                out.append(GenChuTransform(src, dst, zero, fwd, bwd, check=False))
    return out


def transform_tables(t):
    return (t.zero.table, t.fwd.table), (t.bwd.table,)


def _contains(a, b, t):
    return (isinstance(t, GenChuTransform) and t.src == a and t.dst == b
            and bool(is_genchu_transform(a, b, t.zero, t.fwd, t.bwd)))


def genchu_spaces(functor, anchors, carriers):
    for x in anchors:
        gx = functor.obj(x)
        for left in carriers:
            for right in carriers:
                for f in all_maps(product(left, right).prod, gx):
                    yield GenChuSpace(functor, x, left, right, f)


def genchu_category(functor, anchors=None, carriers=None, max_size=2):
    """Chu(FinSetoid, functor) on every space with anchor and carriers drawn
    from the given setoids (default: all of size <= max_size)."""
    anchors = all_setoids(max_size) if anchors is None else tuple(anchors)
    carriers = all_setoids(max_size) if carriers is None else tuple(carriers)
    return CategoryPresentation(
        f"Chu({functor.name})", lambda: genchu_spaces(functor, anchors, carriers),
        genchu_enumerate_hom, genchu_compose, genchu_identity, contains=_contains,
        tables=transform_tables)


def genchu_universe(functor):
    def no_objects():
        raise TypeError("the generalized Chu universe is not enumerable")

    return CategoryPresentation(f"Chu({functor.name})", no_objects, genchu_enumerate_hom,
                                genchu_compose, genchu_identity, contains=_contains,
                                tables=transform_tables)


def embed_constant(value, max_size=2):
    """(a, f, b) -> (value; a, f, b) and (phi+, phi-) -> (1, phi+, phi-)."""
    G = constant_functor(value)
    one = identity(value)

    def obj(s):
        return GenChuSpace(G, value, s.left, s.right, s.pairing)

    return FunctorPresentation(
        f"E[{value!r}]", chu_category(value, max_size=max_size), genchu_universe(G), obj,
        lambda t: GenChuTransform(obj(t.src), obj(t.dst), one, t.fwd, t.bwd, check=False))


def endofunctor_transformation(name, src, dst, component, max_size=2):
    """A natural transformation src => dst between endofunctors, on the
    FinSetoid fragment of size <= max_size."""
    eta = NatTransPresentation(name, src.presentation(max_size), dst.presentation(max_size),
                               component)
    eta.endofunctors = (src, dst)
    return eta


def diagonal(max_size=2):
    """Id => Id2, x -> (x, x)."""
    def component(x):
        pw = product(x, x)
        return SetoidFn(x, pw.prod, [pw.index(i, i) for i in x])
    return endofunctor_transformation("diag", IDENTITY, SQUARE, component, max_size)


def first_projection(max_size=2):
    """Id2 => Id, (x, x') -> x."""
    return endofunctor_transformation("pr1", SQUARE, IDENTITY,
                                      lambda x: product(x, x).proj_left, max_size)


def identity_transformation(F, max_size=2):
    return endofunctor_transformation(f"1[{F.name}]", F, F, lambda x: identity(F.obj(x)), max_size)


def vertical_compose(mu, eta):
    out = NatTransPresentation(f"{mu.name}.{eta.name}", eta.F, mu.G,
                               lambda x: fn_compose(mu.at(x), eta.at(x)))
    out.endofunctors = (eta.endofunctors[0], mu.endofunctors[1])
    return out


def gen_local_pushforward(eta, anchors=None, carriers=None, max_size=2):
    """(x; a, f, b) -> (x; a, eta_x . f, b), transforms unchanged.

    The transformation must be natural on the fragment.
    """
    v = verify_naturality(eta)
    if not v:
        raise SetoidError(f"not natural: {v.reason}", v.witness)
    src_f, dst_f = eta.endofunctors

    def obj(s):
        return GenChuSpace(dst_f, s.anchor, s.left, s.right, fn_compose(eta.at(s.anchor), s.pairing))

    return FunctorPresentation(
        f"{eta.name}_*", genchu_category(src_f, anchors, carriers, max_size),
        genchu_universe(dst_f), obj,
        lambda t: GenChuTransform(obj(t.src), obj(t.dst), t.zero, t.fwd, t.bwd, check=False))


# Predicates


class PredObject:
    """(X, i_A, A) for a canonical subset A of X."""
    __slots__ = ("ambient", "subset", "_hash")

    def __init__(self, subset):
        self.ambient = subset.ambient
        self.subset = subset
        self._hash = hash(("Pred", subset))

    @property
    def carrier(self):
        return self.ambient

    def __eq__(self, other):
        return isinstance(other, PredObject) and self.subset == other.subset

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PredObject({self.ambient!r}, {list(self.subset.inj.table)})"


class PredArrow:
    """(u0, u+) with i_B . u+ = u0 . i_A."""
    __slots__ = ("src", "dst", "zero", "plus", "_hash")

    def __init__(self, src, dst, zero, plus):
        self.src = src
        self.dst = dst
        self.zero = zero
        self.plus = plus
        self._hash = hash((src, dst, zero.table, plus.table))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        return (isinstance(other, PredArrow) and self.zero == other.zero
                and self.plus == other.plus and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PredArrow(zero={list(self.zero.table)}, plus={list(self.plus.table)})"


def is_pred_arrow(src, dst, zero, plus):
    A, B = src.subset, dst.subset
    for a in A.sub:
        if B.inj.table[plus.table[a]] != zero.table[A.inj.table[a]] and \
                not dst.ambient.eq(B.inj.table[plus.table[a]], zero.table[A.inj.table[a]]):
            return Verdict.fail("square fails", (a,))
    return PASS


def pred_objects(max_size=2):
    return tuple(PredObject(A) for X in all_setoids(max_size) for A in canonical_subsets(X))


def pred_category(max_size=2):
    def hom(a, b):
        return [PredArrow(a, b, z, p) for z in all_maps(a.ambient, b.ambient)
                for p in all_maps(a.subset.sub, b.subset.sub) if is_pred_arrow(a, b, z, p)]

    def contains(a, b, u):
        return (isinstance(u, PredArrow) and u.src == a and u.dst == b
                and bool(is_pred_arrow(a, b, u.zero, u.plus)))

    return CategoryPresentation(
        f"Pred<={max_size}", pred_objects(max_size), hom,
        lambda v, u: PredArrow(u.src, v.dst, fn_compose(v.zero, u.zero), fn_compose(v.plus, u.plus)),
        lambda a: PredArrow(a, a, identity(a.ambient), identity(a.subset.sub)), contains=contains,
        tables=lambda u: ((u.zero.table, u.plus.table), ()))


def pred_space(obj):
    """(X; A, I_A, 1)."""
    A = obj.subset
    return GenChuSpace(IDENTITY, obj.ambient, A.sub, ONE,
                       SetoidFn(product(A.sub, ONE).prod, obj.ambient, A.inj.table, check=False))


def pred_representation(max_size=2):
    one = identity(ONE)
    return FunctorPresentation(
        "E[Pred]", pred_category(max_size), genchu_universe(IDENTITY), pred_space,
        lambda u: GenChuTransform(pred_space(u.src), pred_space(u.dst), u.zero, u.plus, one,
                                  check=False))


def set_to_pred(max_size=2):
    """X -> (X, id, X), f -> (f, f)."""
    def obj(X):
        return PredObject(subset_of(X, range(X.size)))

    return FunctorPresentation("F", finsetoid_category(max_size), pred_category(max_size), obj,
                               lambda f: PredArrow(obj(f.dom), obj(f.cod), f, f))


def set_representation(max_size=2):
    """X -> (X; X, I_X, 1), f -> (f, f, 1)."""
    one = identity(ONE)

    def obj(X):
        return GenChuSpace(IDENTITY, X, X, ONE,
                           SetoidFn(product(X, ONE).prod, X, list(range(X.size))))

    return FunctorPresentation(
        "E[Set]", finsetoid_category(max_size), genchu_universe(IDENTITY), obj,
        lambda f: GenChuTransform(obj(f.dom), obj(f.cod), f, f, one, check=False))


def pred_triangle(max_size=2):
    """E^Pred . F = E^Set on objects and arrows."""
    E, F, S = pred_representation(max_size), set_to_pred(max_size), set_representation(max_size)
    for X in S.src.objects:
        if E.obj(F.obj(X)) != S.obj(X):
            return Verdict.fail("object images differ", (X,))
    for a, b, f in S.src.arrows():
        if E.mor(F.mor(f)) != S.mor(f):
            return Verdict.fail("arrow images differ", (a, b, f))
    return PASS


def check_pred_derived(C):
    """u0 injective gives u+ injective; u0 strongly extensional (denial)
    gives u+ strongly extensional for the induced inequalities."""
    for a, b, u in C.arrows():
        if is_injection(u.zero) and not is_injection(u.plus):
            return Verdict.fail("u+ is not injective", (u,))
        ax, ay = denial(a.ambient), denial(b.ambient)
        if is_strongly_extensional(u.zero, ax, ay):
            if not is_strongly_extensional(u.plus, induced_apartness(ax, a.subset),
                                           induced_apartness(ay, b.subset)):
                return Verdict.fail("u+ is not strongly extensional", (u,))
    return PASS


def induced_apartness(ax, subset):
    """a # a' on the subset iff their images are apart."""
    t = subset.inj.table
    return Apartness(subset.sub, [(p, q) for p in subset.sub for q in subset.sub
                                  if ax.apart(t[p], t[q])])


# Predicates in a cartesian category


class CGenSpace:
    """(x; a, f, b) with f : a x b -> x a morphism of a cartesian category."""
    __slots__ = ("anchor", "left", "right", "pairing", "_hash")

    def __init__(self, anchor, left, right, pairing):
        self.anchor = anchor
        self.left = left
        self.right = right
        self.pairing = pairing
        self._hash = hash((anchor, left, right, pairing))

    def __eq__(self, other):
        return (isinstance(other, CGenSpace) and self.anchor == other.anchor
                and self.left == other.left and self.right == other.right
                and self.pairing == other.pairing)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CGenSpace({self.anchor!r}; {self.left!r}, {self.pairing!r}, {self.right!r})"


class CGenTransform:
    __slots__ = ("src", "dst", "zero", "fwd", "bwd", "_hash")

    def __init__(self, src, dst, zero, fwd, bwd):
        self.src = src
        self.dst = dst
        self.zero = zero
        self.fwd = fwd
        self.bwd = bwd
        self._hash = hash((src, dst, zero, fwd, bwd))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        return (isinstance(other, CGenTransform) and self.zero == other.zero
                and self.fwd == other.fwd and self.bwd == other.bwd
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CGenTransform({self.zero!r}, {self.fwd!r}, {self.bwd!r})"


def cgen_pentagon(cart, src, dst, zero, fwd, bwd):
    C = cart.category
    lhs = C.compose(zero, C.compose(src.pairing, cart.arrow_product(C.identity(src.left), bwd)))
    rhs = C.compose(dst.pairing, cart.arrow_product(fwd, C.identity(dst.right)))
    return C.mor_key(lhs) == C.mor_key(rhs)


def cgen_universe(cart):
    """Chu(C, Id) over a cartesian category, not enumerable."""
    C = cart.category

    def hom(s, t):
        return [CGenTransform(s, t, z, f, b) for z in C.hom(s.anchor, t.anchor)
                for f in C.hom(s.left, t.left) for b in C.hom(t.right, s.right)
                if cgen_pentagon(cart, s, t, z, f, b)]

    def contains(s, t, u):
        return (isinstance(u, CGenTransform) and u.src == s and u.dst == t
                and cgen_pentagon(cart, s, t, u.zero, u.fwd, u.bwd))

    def no_objects():
        raise TypeError("the generalized Chu universe is not enumerable")

    def encode(u):
        zc, zn = C.tables(u.zero)
        fc, fn = C.tables(u.fwd)
        bc, bn = C.tables(u.bwd)
        return zc + fc + bn, zn + fn + bc

    return CategoryPresentation(
        f"Chu({C.name}, Id)", no_objects, hom,
        lambda v, u: CGenTransform(u.src, v.dst, C.compose(v.zero, u.zero),
                                   C.compose(v.fwd, u.fwd), C.compose(u.bwd, v.bwd)),
        lambda s: CGenTransform(s, s, C.identity(s.anchor), C.identity(s.left),
                                C.identity(s.right)),
        contains=contains, tables=encode if C.tables is not None else None)


class PredCObject:
    """(x, i : a -> x) with i a mono."""
    __slots__ = ("mono", "_hash")

    def __init__(self, mono):
        self.mono = mono
        self._hash = hash(("PredC", mono))

    @property
    def anchor(self):
        return self.mono.cod

    @property
    def sub(self):
        return self.mono.dom

    def __eq__(self, other):
        return isinstance(other, PredCObject) and self.mono == other.mono

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PredCObject({self.mono!r})"


def predc_category(cart):
    """Pred(C): monos of C, and pairs (f0, f+) with j . f+ = f0 . i."""
    C = cart.category

    def objects():
        return tuple(PredCObject(i) for x in C.objects for a in C.objects
                     for i in C.hom(a, x) if is_mono(i, C))

    def square(p, q, z, f):
        return C.mor_key(C.compose(q.mono, f)) == C.mor_key(C.compose(z, p.mono))

    def hom(p, q):
        return [PredArrow(p, q, z, f) for z in C.hom(p.anchor, q.anchor)
                for f in C.hom(p.sub, q.sub) if square(p, q, z, f)]

    def contains(p, q, u):
        return isinstance(u, PredArrow) and u.src == p and u.dst == q and square(p, q, u.zero, u.plus)

    def encode(u):
        zc, zn = C.tables(u.zero)
        pc, pn = C.tables(u.plus)
        return zc + pc, zn + pn

    return CategoryPresentation(
        f"Pred({C.name})", objects, hom,
        lambda v, u: PredArrow(u.src, v.dst, C.compose(v.zero, u.zero), C.compose(v.plus, u.plus)),
        lambda p: PredArrow(p, p, C.identity(p.anchor), C.identity(p.sub)),
        contains=contains, tables=encode if C.tables is not None else None)


def predc_space(cart, p):
    """(x; a, i . pr_a, 1)."""
    _, pr_a, _ = cart.product(p.sub, cart.terminal)
    return CGenSpace(p.anchor, p.sub, cart.terminal, cart.category.compose(p.mono, pr_a))


def predc_representation(cart):
    one = cart.category.identity(cart.terminal)
    return FunctorPresentation(
        "E[Pred(C)]", predc_category(cart), cgen_universe(cart), lambda p: predc_space(cart, p),
        lambda u: CGenTransform(predc_space(cart, u.src), predc_space(cart, u.dst), u.zero,
                                u.plus, one))


def predc_agrees_with_pred(cart, max_size=2):
    """On canonical subsets both object maps give the same data."""
    for obj in pred_objects(max_size):
        g = pred_space(obj)
        c = predc_space(cart, PredCObject(obj.subset.inj))
        if (c.anchor, c.left, c.right, c.pairing.table) != (g.anchor, g.left, g.right,
                                                            g.pairing.table):
            return Verdict.fail("object images differ", (obj,))
    return PASS


# Complemented predicates


class ComplPredObject:
    """(X, A) with A complemented for the fixed inequality of X."""
    __slots__ = ("apartness", "compl", "_hash")

    def __init__(self, compl):
        self.apartness = compl.apartness
        self.compl = compl
        self._hash = hash(("Pred#", compl))

    @property
    def ambient(self):
        return self.apartness.base

    def __eq__(self, other):
        return isinstance(other, ComplPredObject) and self.compl == other.compl

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"ComplPredObject({self.ambient!r}, 1={list(self.compl.one.inj.table)}, "
                f"0={list(self.compl.zero.inj.table)})")


class ComplPredArrow:
    """(u0, u+, u-)."""
    __slots__ = ("src", "dst", "zero", "plus", "minus", "_hash")

    def __init__(self, src, dst, zero, plus, minus):
        self.src = src
        self.dst = dst
        self.zero = zero
        self.plus = plus
        self.minus = minus
        self._hash = hash((src, dst, zero.table, plus.table, minus.table))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        return (isinstance(other, ComplPredArrow) and self.zero == other.zero
                and self.plus == other.plus and self.minus == other.minus
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"ComplPredArrow(zero={list(self.zero.table)}, plus={list(self.plus.table)}, "
                f"minus={list(self.minus.table)})")


def is_compl_pred_arrow(src, dst, zero, plus, minus):
    v = is_strongly_extensional(zero, src.apartness, dst.apartness)
    if not v:
        return Verdict.fail("u0 is not strongly extensional", v.witness)
    A, B = src.compl, dst.compl
    Y = dst.ambient
    for a in A.one.sub:
        if not Y.eq(B.one.inj.table[plus.table[a]], zero.table[A.one.inj.table[a]]):
            return Verdict.fail("positive rectangle fails", (a,))
    for b in B.zero.sub:
        if not Y.eq(zero.table[A.zero.inj.table[minus.table[b]]], B.zero.inj.table[b]):
            return Verdict.fail("negative rectangle fails", (b,))
    return PASS


def default_apartnesses(max_size=2):
    return tuple(denial(X) for X in all_setoids(max_size))


def compl_pred_category(apartnesses=None, max_size=2, inhabited_only=False):
    """Pred with complemented subsets over the given setoids-with-inequality
    (default: every setoid of size <= max_size under denial). With
    ``inhabited_only`` both components must be inhabited."""
    apartnesses = default_apartnesses(max_size) if apartnesses is None else tuple(apartnesses)
    objects = [ComplPredObject(A) for ax in apartnesses for A in canonical_complemented_subsets(ax)]
    if inhabited_only:
        objects = [o for o in objects if o.compl.one.sub.size and o.compl.zero.sub.size]

    def hom(p, q):
        A, B = p.compl, q.compl
        return [ComplPredArrow(p, q, z, u, m) for z in all_maps(p.ambient, q.ambient)
                for u in all_maps(A.one.sub, B.one.sub) for m in all_maps(B.zero.sub, A.zero.sub)
                if is_compl_pred_arrow(p, q, z, u, m)]

    def contains(p, q, u):
        return (isinstance(u, ComplPredArrow) and u.src == p and u.dst == q
                and bool(is_compl_pred_arrow(p, q, u.zero, u.plus, u.minus)))

    return CategoryPresentation(
        "Pred#", tuple(objects), hom,
        lambda v, u: ComplPredArrow(u.src, v.dst, fn_compose(v.zero, u.zero),
                                    fn_compose(v.plus, u.plus), fn_compose(u.minus, v.minus)),
        lambda p: ComplPredArrow(p, p, identity(p.ambient), identity(p.compl.one.sub),
                                 identity(p.compl.zero.sub)),
        contains=contains, tables=lambda u: ((u.zero.table, u.plus.table), (u.minus.table,)))


def compl_pred_space(obj):
    """(X; A1, i1 x i0, A0) over Id2."""
    A, X = obj.compl, obj.ambient
    pw = product(X, X)
    i1, i0 = A.one.inj.table, A.zero.inj.table
    table = [pw.index(i1[p], i0[q]) for p in A.one.sub for q in A.zero.sub]
    return GenChuSpace(SQUARE, X, A.one.sub, A.zero.sub,
                       SetoidFn(product(A.one.sub, A.zero.sub).prod, pw.prod, table))


def compl_pred_representation(apartnesses=None, max_size=2, inhabited_only=False):
    return FunctorPresentation(
        "E[Pred#]", compl_pred_category(apartnesses, max_size, inhabited_only),
        genchu_universe(SQUARE), compl_pred_space,
        lambda u: GenChuTransform(compl_pred_space(u.src), compl_pred_space(u.dst), u.zero,
                                  u.plus, u.minus, check=False))


def check_compl_pred_derived(C):
    """u+ and u- are strongly extensional for the induced inequalities on
    every morphism."""
    for p, q, u in C.arrows():
        A, B = p.compl, q.compl
        if not is_strongly_extensional(u.plus, induced_apartness(p.apartness, A.one),
                                       induced_apartness(q.apartness, B.one)):
            return Verdict.fail("u+ is not strongly extensional", (u,))
        if not is_strongly_extensional(u.minus, induced_apartness(q.apartness, B.zero),
                                       induced_apartness(p.apartness, A.zero)):
            return Verdict.fail("u- is not strongly extensional", (u,))
    return PASS


def _pad(rows, width, fill=0):
    out = np.full((len(rows), width), fill, dtype=np.int64)
    for k, r in enumerate(rows):
        out[k, :len(r)] = r
    return out


class _MapIndex:
    """Global index of every map between anchors, with the endofunctor's
    table for each, so composite anchor maps can be looked up in bulk."""

    def __init__(self, functor, anchors):
        self.anchors = list(anchors)
        self.pos = {x: k for k, x in enumerate(self.anchors)}
        self.width = max([x.size for x in self.anchors] + [1])
        self.base = self.width + 1
        codes, gamma = [], []
        for i, x in enumerate(self.anchors):
            for j, y in enumerate(self.anchors):
                for f in all_maps(x, y):
                    codes.append(self.code(i, j, f.table))
                    gamma.append(functor.mor(f).table)
        order = np.argsort(codes)
        self.codes = np.asarray(codes, dtype=np.int64)[order]
        self.order = order
        vmax = max([functor.obj(x).size for x in self.anchors] + [1])
        self.gamma = _pad(gamma, vmax) if gamma else np.zeros((0, vmax), dtype=np.int64)

    def code(self, i, j, table):
        c = i * len(self.anchors) + j
        for v in table:
            c = c * self.base + v + 1
        return c * self.base ** (self.width - len(table))

    def codes_of(self, src_ids, dst_ids, tables, valid):
        """Codes for stacked tables (..., width); ``valid`` masks padding."""
        c = src_ids * len(self.anchors) + dst_ids
        for k in range(self.width):
            digit = np.where(valid[..., k], tables[..., k] + 1, 0)
            c = c * self.base + digit
        return c

    def lookup(self, codes):
        pos = np.searchsorted(self.codes, codes)
        pos = pos.clip(max=len(self.codes) - 1)
        if not (self.codes[pos] == codes).all():
            raise ValueError("composite anchor map missing from the index")
        return self.order[pos]


def verify_pentagon_closure(C):
    """Every composite of two enumerated transforms satisfies the pentagon.

    Works one middle space at a time on padded arrays; the endofunctor's
    action on each composite anchor map is taken from a table of all maps
    between anchors, computed directly rather than by functoriality.
    """
    spaces = C.objects
    if not spaces:
        return PASS
    functor = spaces[0].functor
    anchors = sorted({s.anchor for s in spaces}, key=lambda x: x.canonical())
    index = _MapIndex(functor, anchors)
    L = max(max(s.left.size, s.right.size) for s in spaces) or 1
    mats = {}
    for s in spaces:
        m = np.zeros((L, L), dtype=np.int64)
        m[:s.left.size, :s.right.size] = s.matrix
        mats[s] = m
    ins = {s: [] for s in spaces}
    outs = {s: [] for s in spaces}
    for a, b, t in C.arrows():
        outs[a].append(t)
        ins[b].append(t)
    W = index.width
    for c in spaces:
        if not ins[c] or not outs[c]:
            continue
        I, O = ins[c], outs[c]
        Zi = _pad([t.zero.table for t in I], W)
        Pi = _pad([t.fwd.table for t in I], L)
        Mi = _pad([t.bwd.table for t in I], L)
        Zo = _pad([t.zero.table for t in O], W)
        Po = _pad([t.fwd.table for t in O], L)
        Mo = _pad([t.bwd.table for t in O], L)
        FA = np.stack([mats[t.src] for t in I])
        GD = np.stack([mats[t.dst] for t in O])
        a_left = np.array([t.src.left.size for t in I])
        d_right = np.array([t.dst.right.size for t in O])
        xa = np.array([index.pos[t.src.anchor] for t in I])
        xd = np.array([index.pos[t.dst.anchor] for t in O])
        xa_size = np.array([t.src.anchor.size for t in I])
        zero = Zo[:, Zi]                              # (out, in, W)
        codes = index.codes_of(xa[None, :], xd[:, None], zero, np.arange(W)[None, None, :]
                               < xa_size[None, :, None])
        post = index.gamma[index.lookup(codes)]       # (out, in, V)
        fwd = Po[:, Pi]                               # (out, in, L)
        bwd = Mi[:, Mo].transpose(1, 0, 2)            # (out, in, L)
        ii = np.arange(len(I))[None, :, None, None]
        jj = np.arange(len(O))[:, None, None, None]
        p = np.arange(L)[None, None, :, None]
        q = np.arange(L)[None, None, None, :]
        raw = FA[ii, p, bwd[:, :, None, :]]           # (out, in, L, L)
        lhs = np.take_along_axis(post[:, :, None, :], raw.reshape(len(O), len(I), 1, L * L),
                                 axis=3).reshape(raw.shape)
        rhs = GD[jj, fwd[:, :, :, None], q]
        valid = (p < a_left[None, :, None, None]) & (q < d_right[:, None, None, None])
        bad = np.argwhere((lhs != rhs) & valid)
        if len(bad):
            j, i, pp, qq = (int(v) for v in bad[0])
            return Verdict.fail("composite breaks the pentagon", (I[i], O[j], (pp, qq)))
    return PASS
