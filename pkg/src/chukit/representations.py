"""Boolean and subset representations into Chu categories.

Finite topologies and E^Top, powersets and E^Set, the powerset category
P(X) and its representation into Chu(FinSetoid, X), subobjects of a value
object in a cartesian category, and complemented subsets into
Chu(FinSetoid, X x X).

Opens and subsets are eq-closed and stored as bitmasks over element
indices, kept in numerical order. Membership of a point in such a set is a
table lookup, which is why the two-valued membership pairing needs no case
distinction beyond evaluation here.
"""

from functools import lru_cache

from .category import (Arrow, CategoryPresentation, FunctorPresentation,
                       concrete_category, finsetoid_category, is_mono)
from .chu import ChuSpace, ChuTransform, chu_universe
from .setoid import (ONE, TWO, SetoidError, SetoidFn, all_setoids,
                     canonical_complemented_subsets, canonical_subsets, discrete,
                     fn_compose, identity, product)
from .verdict import PASS, Verdict


def to_mask(members):
    if isinstance(members, int):
        return members
    m = 0
    for x in members:
        m |= 1 << x
    return m


def mask_members(mask):
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def is_eq_closed(X, mask):
    return all((mask >> x & 1) == (mask >> X.rep[x] & 1) for x in X)


def full_mask(X):
    return (1 << X.size) - 1


def is_topology(X, opens):
    opens = [to_mask(u) for u in opens]
    full = full_mask(X)
    for u in opens:
        if u & ~full:
            return Verdict.fail("open mentions a missing point", mask_members(u))
        if not is_eq_closed(X, u):
            return Verdict.fail("open is not closed under equality", mask_members(u))
    seen = set()
    for u in opens:
        if u in seen:
            return Verdict.fail("open listed twice", mask_members(u))
        seen.add(u)
    if 0 not in seen:
        return Verdict.fail("missing the empty set", ())
    if full not in seen:
        return Verdict.fail("missing the whole space", mask_members(full))
    for u in opens:
        for v in opens:
            if u & v not in seen:
                return Verdict.fail("not closed under intersection",
                                    (mask_members(u), mask_members(v)))
            if u | v not in seen:
                return Verdict.fail("not closed under union",
                                    (mask_members(u), mask_members(v)))
    return PASS


class FiniteTopology:
    __slots__ = ("points", "opens", "_hash")

    def __init__(self, points, opens):
        opens = sorted(to_mask(u) for u in opens)
        v = is_topology(points, opens)
        if not v:
            raise SetoidError(f"not a topology: {v.reason}", v.witness)
        self.points = points
        self.opens = tuple(opens)
        self._hash = hash((points, self.opens))

    @property
    def carrier(self):
        return self.points

    @property
    def open_setoid(self):
        """The opens as a discrete setoid labelled by member tuples."""
        return discrete(len(self.opens), [mask_members(u) for u in self.opens])

    def is_t0(self):
        for x in self.points:
            for y in self.points:
                if not self.points.eq(x, y) and all((u >> x & 1) == (u >> y & 1) for u in self.opens):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteTopology({self.points!r}, {[list(mask_members(u)) for u in self.opens]})"


def preimage(h, mask):
    return sum(1 << x for x in h.dom if mask >> h.table[x] & 1)


def is_continuous(h, T, S):
    opens = set(T.opens)
    for u in S.opens:
        if preimage(h, u) not in opens:
            return Verdict.fail("preimage of an open is not open", mask_members(u))
    return PASS


def specialization(T):
    """leq[x] = mask of the points y with x <= y, i.e. every open holding x
    holds y."""
    full = full_mask(T.points)
    leq = []
    for x in T.points:
        m = full
        for u in T.opens:
            if u >> x & 1:
                m &= u
        leq.append(m)
    return leq


def continuous_maps(T, S):
    """Continuous maps T -> S in the order of ``all_maps``.

    Continuous maps preserve the specialization order, so candidates are
    built point by point keeping it, then checked against every open.
    """
    X, Y = T.points, S.points
    lt, ls = specialization(T), specialization(S)
    table = [0] * X.size
    out = []

    def extend(x):
        if x == X.size:
            f = SetoidFn(X, Y, table)
            if is_continuous(f, T, S):
                out.append(f)
            return
        r = X.rep[x]
        for y in (Y.classes if r == x else (table[r],)):
            if all((not lt[z] >> x & 1 or ls[table[z]] >> y & 1)
                   and (not lt[x] >> z & 1 or ls[y] >> table[z] & 1) for z in range(x)):
                table[x] = y
                extend(x + 1)

    extend(0)
    return out


@lru_cache(maxsize=None)
def all_topologies(X):
    """Every topology on X, ordered by their sorted open lists."""
    subs = [s.mask for s in canonical_subsets(X)]
    full = full_mask(X)
    middle = [m for m in subs if m not in (0, full)]
    out = []
    for bits in range(1 << len(middle)):
        opens = {0, full} | {m for k, m in enumerate(middle) if bits >> k & 1}
        if is_topology(X, opens):
            out.append(FiniteTopology(X, opens))
    return tuple(sorted(out, key=lambda t: (len(t.opens), t.opens)))


def top_category(max_size=3, discrete_only=False):
    """Finite Top on all point setoids of size at most ``max_size``."""
    def objects():
        for X in all_setoids(max_size, discrete_only):
            yield from all_topologies(X)

    return concrete_category(
        f"Top<={max_size}", objects, continuous_maps,
        lambda T, S, h: bool(is_continuous(h, T, S)))


def top_universe():
    """Finite topological spaces and continuous maps, not enumerable."""
    def no_objects():
        raise TypeError("the universe of finite spaces is not enumerable")

    return concrete_category("Top", no_objects, continuous_maps,
                             lambda T, S, h: bool(is_continuous(h, T, S)))


def membership_space(X, masks, labels):
    """(X, membership, opens) over 2."""
    right = discrete(len(masks), labels)
    pw = product(X, right)
    table = [masks[k] >> x & 1 for x in X for k in range(len(masks))]
    return ChuSpace(TWO, X, right, SetoidFn(pw.prod, TWO, table))


def e_top_space(T):
    return membership_space(T.points, T.opens, [mask_members(u) for u in T.opens])


def _inverse_image_transform(h, src, dst, src_masks, dst_masks):
    pos = {m: k for k, m in enumerate(src_masks)}
    bwd = SetoidFn(dst.right, src.right, [pos[preimage(h, u)] for u in dst_masks], check=False)
    return ChuTransform(src, dst, h, bwd, check=False)


def e_top_transform(t):
    """(f, U -> f^-1(U))."""
    return _inverse_image_transform(t.map, e_top_space(t.src), e_top_space(t.dst),
                                    t.src.opens, t.dst.opens)


def e_top(max_size=3, discrete_only=False):
    return FunctorPresentation("E[Top]", top_category(max_size, discrete_only),
                               chu_universe(TWO), e_top_space, e_top_transform)


def powerset_masks(X):
    return tuple(s.mask for s in canonical_subsets(X))


def e_set_space(X):
    masks = powerset_masks(X)
    return membership_space(X, masks, [mask_members(m) for m in masks])


def e_set_transform(f):
    return _inverse_image_transform(f, e_set_space(f.dom), e_set_space(f.cod),
                                    powerset_masks(f.dom), powerset_masks(f.cod))


def e_set(max_size=3, discrete_only=False):
    return FunctorPresentation("E[Set]", finsetoid_category(max_size, discrete_only),
                               chu_universe(TWO), e_set_space, e_set_transform)


def discrete_topology(X):
    return FiniteTopology(X, powerset_masks(X))


def delta(max_size=3, discrete_only=False):
    """X -> (X, P(X))."""
    return FunctorPresentation(
        "Delta", finsetoid_category(max_size, discrete_only), top_category(max_size, discrete_only),
        discrete_topology, lambda f: Arrow(f, discrete_topology(f.dom), discrete_topology(f.cod)))


def verify_triangle(top_functor, delta_functor, set_functor):
    """E^Top . Delta = E^Set on objects and arrows, strictly."""
    src = set_functor.src
    for X in src.objects:
        if top_functor.obj(delta_functor.obj(X)) != set_functor.obj(X):
            return Verdict.fail("object images differ", (X,))
    for a, b, f in src.arrows():
        if top_functor.mor(delta_functor.mor(f)) != set_functor.mor(f):
            return Verdict.fail("arrow images differ", (a, b, f))
    return PASS


def inclusion_map(A, B):
    """The unique f with i_B . f = i_A, or None when A is not inside B."""
    table = []
    for a in A.sub:
        b = B.preimage(A.inj.table[a])
        if b is None:
            return None
        table.append(b)
    return SetoidFn(A.sub, B.sub, table)


def powerset_category(X):
    def hom(A, B):
        f = inclusion_map(A, B)
        return [] if f is None else [Arrow(f, A, B)]

    def contains(A, B, t):
        return (isinstance(t, Arrow) and t.src == A and t.dst == B
                and fn_compose(B.inj, t.map) == A.inj)

    return CategoryPresentation(
        f"P({X!r})", canonical_subsets(X), hom,
        lambda g, f: Arrow(fn_compose(g.map, f.map), f.src, g.dst),
        lambda A: Arrow(identity(A.sub), A, A), contains=contains,
        tables=lambda t: ((t.map.table,), ()))


def subset_space(A):
    """(A, I_A, 1) with I_A(a, 0) = i_A(a)."""
    pw = product(A.sub, ONE)
    return ChuSpace(A.ambient, A.sub, ONE, SetoidFn(pw.prod, A.ambient, A.inj.table, check=False))


def subsets_representation(X):
    return FunctorPresentation(
        "E[P]", powerset_category(X), chu_universe(X), subset_space,
        lambda t: ChuTransform(subset_space(t.src), subset_space(t.dst), t.map, identity(ONE),
                               check=False))


class CChuSpace:
    """A Chu space over a cartesian category: pairing is a morphism
    left x right -> gamma of that category."""
    __slots__ = ("gamma", "left", "right", "pairing", "_hash")

    def __init__(self, gamma, left, right, pairing):
        self.gamma = gamma
        self.left = left
        self.right = right
        self.pairing = pairing
        self._hash = hash((gamma, left, right, pairing))

    def __eq__(self, other):
        if not isinstance(other, CChuSpace):
            return NotImplemented
        return (self.gamma == other.gamma and self.left == other.left
                and self.right == other.right and self.pairing == other.pairing)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CChuSpace({self.left!r}, {self.pairing!r}, {self.right!r})"


class CChuTransform:
    __slots__ = ("src", "dst", "fwd", "bwd", "_hash")

    def __init__(self, src, dst, fwd, bwd):
        self.src = src
        self.dst = dst
        self.fwd = fwd
        self.bwd = bwd
        self._hash = hash((src, dst, fwd, bwd))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        if not isinstance(other, CChuTransform):
            return NotImplemented
        return (self.src == other.src and self.dst == other.dst
                and self.fwd == other.fwd and self.bwd == other.bwd)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CChuTransform({self.fwd!r}, {self.bwd!r})"


def cchu_adjoint(cart, src, dst, fwd, bwd):
    """f . (1 x bwd) = g . (fwd x 1) as morphisms of the base category."""
    C = cart.category
    lhs = C.compose(src.pairing, cart.arrow_product(C.identity(src.left), bwd))
    rhs = C.compose(dst.pairing, cart.arrow_product(fwd, C.identity(dst.right)))
    return C.mor_key(lhs) == C.mor_key(rhs)


def cchu_universe(cart):
    C = cart.category

    def hom(src, dst):
        return [CChuTransform(src, dst, f, b)
                for f in C.hom(src.left, dst.left) for b in C.hom(dst.right, src.right)
                if cchu_adjoint(cart, src, dst, f, b)]

    def compose(theta, phi):
        return CChuTransform(phi.src, theta.dst, C.compose(theta.fwd, phi.fwd),
                             C.compose(phi.bwd, theta.bwd))

    def contains(src, dst, t):
        return (isinstance(t, CChuTransform) and t.src == src and t.dst == dst
                and cchu_adjoint(cart, src, dst, t.fwd, t.bwd))

    def no_objects():
        raise TypeError("the Chu universe is not enumerable")

    def encode(t):
        fc, fn = C.tables(t.fwd)
        bc, bn = C.tables(t.bwd)
        return fc + bn, fn + bc

    return CategoryPresentation(
        f"Chu({C.name})", no_objects, hom, compose,
        lambda s: CChuTransform(s, s, C.identity(s.left), C.identity(s.right)),
        contains=contains, tables=encode if C.tables is not None else None)


def sub_category(cart, gamma, monos=None):
    """Sub(C, gamma): monos into gamma, with f : i -> j when j . f = i.

    By default the objects are every mono from an object of C; ``monos``
    may list them explicitly.
    """
    C = cart.category

    def objects():
        if monos is not None:
            return tuple(monos)
        return tuple(i for a in C.objects for i in C.hom(a, gamma) if is_mono(i, C))

    return concrete_category(
        f"Sub({gamma!r})", objects, lambda i, j: C.hom(i.dom, j.dom),
        lambda i, j, f: C.mor_key(C.compose(j, f)) == C.mor_key(i),
        compose_maps=C.compose, identity_map=lambda i: C.identity(i.dom), map_encoding=C.tables)


def sub_space(cart, i):
    """(a, i . pr_a, 1)."""
    a = i.dom
    _, pr_a, _ = cart.product(a, cart.terminal)
    return CChuSpace(i.cod, a, cart.terminal, cart.category.compose(i, pr_a))


def sub_representation(cart, gamma, monos=None):
    C = cart.category
    one = C.identity(cart.terminal)
    return FunctorPresentation(
        "E[Sub]", sub_category(cart, gamma, monos), cchu_universe(cart),
        lambda i: sub_space(cart, i),
        lambda t: CChuTransform(sub_space(cart, t.src), sub_space(cart, t.dst), t.map, one))


class ComplArrow:
    """(f1 : A1 -> B1, f0 : B0 -> A0) between complemented subsets."""
    __slots__ = ("one", "zero", "src", "dst", "_hash")

    def __init__(self, one, zero, src, dst):
        self.one = one
        self.zero = zero
        self.src = src
        self.dst = dst
        self._hash = hash((one, zero, src, dst))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        if not isinstance(other, ComplArrow):
            return NotImplemented
        return (self.one == other.one and self.zero == other.zero
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ComplArrow({list(self.one.table)}, {list(self.zero.table)})"


def compl_powerset_category(ax, inhabited_only=False):
    """Complemented subsets ordered by A1 inside B1 and B0 inside A0.

    With ``inhabited_only`` only those with both components inhabited are
    kept.
    """
    objects = canonical_complemented_subsets(ax)
    if inhabited_only:
        objects = tuple(A for A in objects if A.one.sub.size and A.zero.sub.size)

    def hom(A, B):
        f1 = inclusion_map(A.one, B.one)
        f0 = inclusion_map(B.zero, A.zero)
        return [] if f1 is None or f0 is None else [ComplArrow(f1, f0, A, B)]

    def contains(A, B, t):
        return (isinstance(t, ComplArrow) and t.src == A and t.dst == B
                and fn_compose(B.one.inj, t.one) == A.one.inj
                and fn_compose(A.zero.inj, t.zero) == B.zero.inj)

    return CategoryPresentation(
        f"Pc({ax!r})", objects, hom,
        lambda g, f: ComplArrow(fn_compose(g.one, f.one), fn_compose(f.zero, g.zero), f.src, g.dst),
        lambda A: ComplArrow(identity(A.one.sub), identity(A.zero.sub), A, A), contains=contains,
        tables=lambda t: ((t.one.table,), (t.zero.table,)))


def compl_space(A):
    """(A1, i1 x i0, A0) over X x X."""
    X = A.ambient
    pw = product(X, X)
    src = product(A.one.sub, A.zero.sub)
    i1, i0 = A.one.inj.table, A.zero.inj.table
    table = [pw.index(i1[p], i0[q]) for p in A.one.sub for q in A.zero.sub]
    return ChuSpace(pw.prod, A.one.sub, A.zero.sub, SetoidFn(src.prod, pw.prod, table))


def compl_representation(ax, inhabited_only=False):
    X = ax.base
    return FunctorPresentation(
        "E[Pc]", compl_powerset_category(ax, inhabited_only), chu_universe(product(X, X).prod), compl_space,
        lambda t: ChuTransform(compl_space(t.src), compl_space(t.dst), t.one, t.zero, check=False))


def image_nonsurjectivity_witness(ax):
    """(X, id, X) over X x X, with the reason it is no complemented-subset
    image: its carriers share the point 0, which would have to be apart
    from itself."""
    X = ax.base
    if X.size == 0:
        raise ValueError("needs an inhabited setoid")
    pw = product(X, X)
    space = ChuSpace(pw.prod, X, X, identity(pw.prod))
    reason = {"element": 0, "apart_from_itself": ax.apart(0, 0)}
    return space, reason


def in_compl_image(space, ax):
    """Some complemented subset whose image is ``space``, or None."""
    for A in canonical_complemented_subsets(ax):
        if compl_space(A) == space:
            return A
    return None
