"""Chu spaces over finite setoids, Chu transforms, and the basic Chu
representations: local pushforward along a map of values, evaluation
spaces of the ambient cartesian closed category, and affine families.
"""

import itertools
import os
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .category import (CategoryPresentation, FunctorPresentation, concrete_category,
                       finsetoid_category)
from .setoid import (SetoidError, SetoidFn, all_maps, all_setoids, curry, discrete,
                     exponential, fn_compose, fn_product, identity, product)
from .verdict import PASS, Verdict

# re-verify adjointness of every composite when set
DEBUG = bool(os.environ.get("CHUKIT_DEBUG"))


class ChuSpace:
    """(a, f, b) with f : a x b -> gamma."""
    __slots__ = ("gamma", "left", "right", "pairing", "_hash", "_rows", "_matrix")

    def __init__(self, gamma, left, right, pairing):
        if pairing.dom != product(left, right).prod or pairing.cod != gamma:
            raise SetoidError("pairing is not a map left x right -> gamma",
                              (pairing.dom, pairing.cod))
        self.gamma = gamma
        self.left = left
        self.right = right
        self.pairing = pairing
        self._hash = hash((gamma, left, right, pairing.table))
        self._rows = None
        self._matrix = None

    @classmethod
    def from_rows(cls, gamma, left, right, rows):
        pw = product(left, right)
        table = [rows[x][y] for x in left for y in right]
        return cls(gamma, left, right, SetoidFn(pw.prod, gamma, table))

    def value(self, x, y):
        return self.pairing.table[x * self.right.size + y]

    @property
    def rows(self):
        if self._rows is None:
            n = self.right.size
            t = self.pairing.table
            self._rows = tuple(t[x * n:(x + 1) * n] for x in range(self.left.size))
        return self._rows

    @property
    def matrix(self):
        if self._matrix is None:
            m = np.array(self.pairing.table, dtype=np.int64)
            self._matrix = m.reshape(self.left.size, self.right.size)
        return self._matrix

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ChuSpace):
            return NotImplemented
        return (self._hash == other._hash and self.pairing.table == other.pairing.table
                and self.left == other.left and self.right == other.right
                and self.gamma == other.gamma)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return ChuSpace, (self.gamma, self.left, self.right, self.pairing)

    def __repr__(self):
        return f"ChuSpace({self.left!r}, {[list(r) for r in self.rows]}, {self.right!r})"


def _violation(src_rows, dst_rows, ft, bt):
    for a, c in enumerate(ft):
        row, grow = src_rows[a], dst_rows[c]
        for d, b in enumerate(bt):
            if row[b] != grow[d]:
                return (a, d)
    return None


class ChuTransform:
    """(fwd, bwd) : src -> dst with fwd on left carriers, bwd on right
    carriers in the opposite direction."""
    __slots__ = ("src", "dst", "fwd", "bwd", "_hash")

    @classmethod
    def raw(cls, src, dst, fwd, bwd):
        self = object.__new__(cls)
        self.src = src
        self.dst = dst
        self.fwd = fwd
        self.bwd = bwd
        self._hash = hash((src._hash, dst._hash, fwd.table, bwd.table))
        return self

    def __init__(self, src, dst, fwd, bwd, check=True):
        if check:
            v = is_chu_transform(fwd, bwd, src, dst)
            if not v:
                raise SetoidError(f"not a Chu transform: {v.reason}", v.witness)
        self.src = src
        self.dst = dst
        self.fwd = fwd
        self.bwd = bwd
        self._hash = hash((src._hash, dst._hash, fwd.table, bwd.table))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ChuTransform):
            return NotImplemented
        return (self._hash == other._hash and self.fwd.table == other.fwd.table
                and self.bwd.table == other.bwd.table
                and (self.src is other.src or self.src == other.src)
                and (self.dst is other.dst or self.dst == other.dst))

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return ChuTransform, (self.src, self.dst, self.fwd, self.bwd, False)

    def __repr__(self):
        return f"ChuTransform(fwd={list(self.fwd.table)}, bwd={list(self.bwd.table)})"


def is_chu_transform(fwd, bwd, src, dst):
    """f(a, bwd d) = g(fwd a, d) for all a in src.left, d in dst.right."""
    if src.gamma != dst.gamma:
        raise SetoidError("spaces have different value setoids", (src.gamma, dst.gamma))
    if (fwd.dom, fwd.cod) != (src.left, dst.left) or (bwd.dom, bwd.cod) != (dst.right, src.right):
        raise SetoidError("transform components are mistyped")
    w = _violation(src.rows, dst.rows, fwd.table, bwd.table)
    if w is not None:
        return Verdict.fail("adjointness fails", w)
    return PASS


def chu_identity(space):
    return ChuTransform(space, space, identity(space.left), identity(space.right), check=False)


def chu_compose(theta, phi):
    """theta after phi: (theta+ . phi+, phi- . theta-)."""
    if phi.dst is not theta.src and phi.dst != theta.src:
        raise SetoidError("transforms are not composable", (phi.dst, theta.src))
    fwd = SetoidFn.raw(phi.src.left, theta.dst.left,
                       tuple(map(theta.fwd.table.__getitem__, phi.fwd.table)))
    bwd = SetoidFn.raw(theta.dst.right, phi.src.right,
                       tuple(map(phi.bwd.table.__getitem__, theta.bwd.table)))
    if DEBUG:
        return ChuTransform(phi.src, theta.dst, fwd, bwd)
    return ChuTransform.raw(phi.src, theta.dst, fwd, bwd)


@lru_cache(maxsize=None)
def map_array(a, b):
    """All maps a -> b as an int64 array of tables, shape (K, |a|)."""
    tables = [f.table for f in all_maps(a, b)]
    return np.array(tables, dtype=np.int64).reshape(len(tables), a.size)


@lru_cache(maxsize=None)
def class_slots(s):
    pos = {r: k for k, r in enumerate(s.classes)}
    return tuple(pos[r] for r in s.rep)


def extensional_choices(allowed, dom, cod):
    """Canonical tables dom -> cod with allowed[x][y] at every x.

    ``allowed`` must be constant along classes of dom and of cod.
    """
    choices = []
    for x in dom.classes:
        row = allowed[x]
        c = [y for y in cod.classes if row[y]]
        if not c:
            return []
        choices.append(c)
    slots = class_slots(dom)
    return [tuple(combo[s] for s in slots) for combo in itertools.product(*choices)]


def chu_enumerate_hom(src, dst):
    """Every Chu transform src -> dst, forward map major, tables in
    lexicographic order."""
    if src.gamma != dst.gamma:
        raise SetoidError("spaces have different value setoids", (src.gamma, dst.gamma))
    fwds = all_maps(src.left, dst.left)
    allowed = kernels.allowed_matrix(src.matrix, dst.matrix, map_array(src.left, dst.left))
    out = []
    for k, fwd in enumerate(fwds):
        for t in extensional_choices(allowed[k].tolist(), dst.right, src.right):
            bwd = SetoidFn(dst.right, src.right, t, check=False)
            out.append(ChuTransform(src, dst, fwd, bwd, check=False))
    return out


@dataclass(frozen=True)
class Classification:
    separable: bool
    extensional: bool
    biextensional: bool
    normal: bool
    boolean: bool

    def as_dict(self):
        return asdict(self)


def _injective_rows(rows, s):
    seen = {}
    for x, row in enumerate(rows):
        if seen.setdefault(row, s.rep[x]) != s.rep[x]:
            return False
    return True


def is_normal(space):
    """The right carrier is literally a sub-enumeration of the canonical
    exponential gamma^left (same tables, same order, discrete) and the
    pairing is evaluation."""
    right = space.right
    if right.labels is None or not right.is_discrete:
        return False
    tables = exponential(space.left, space.gamma).tables
    pos = {t: k for k, t in enumerate(tables)}
    try:
        idx = [pos[t] for t in right.labels]
    except (KeyError, TypeError):
        return False
    if idx != sorted(set(idx)):
        return False
    return all(space.value(x, k) == right.labels[k][x]
               for x in space.left for k in right)


def classify(space):
    cols = tuple(zip(*space.rows)) if space.left.size else tuple(() for _ in space.right)
    sep = _injective_rows(space.rows, space.left)
    ext = _injective_rows(cols, space.right)
    return Classification(sep, ext, sep and ext, is_normal(space),
                          space.gamma.n_classes == 2)


def chu_spaces(gamma, carriers):
    for left in carriers:
        for right in carriers:
            for f in all_maps(product(left, right).prod, gamma):
                yield ChuSpace(gamma, left, right, f)


def _contains_transform(a, b, t):
    return (isinstance(t, ChuTransform) and t.src == a and t.dst == b
            and _violation(a.rows, b.rows, t.fwd.table, t.bwd.table) is None)


def transform_tables(t):
    return (t.fwd.table,), (t.bwd.table,)


def chu_category(gamma, carriers=None, max_size=2):
    """Chu(FinSetoid, gamma) on all spaces whose carriers are drawn from
    ``carriers`` (default: every setoid of size <= max_size)."""
    carriers = all_setoids(max_size) if carriers is None else tuple(carriers)
    return CategoryPresentation(
        f"Chu({gamma!r})", lambda: chu_spaces(gamma, carriers), chu_enumerate_hom,
        chu_compose, chu_identity, contains=_contains_transform, tables=transform_tables)


def chu_universe(gamma):
    """Chu(FinSetoid, gamma) as a functor target: homs enumerable between
    any two spaces, objects not enumerable."""
    def no_objects():
        raise TypeError("the Chu universe is not enumerable")
    return CategoryPresentation(f"Chu({gamma!r})", no_objects, chu_enumerate_hom,
                                chu_compose, chu_identity, contains=_contains_transform,
                                tables=transform_tables)


def pushforward_space(u, space):
    return ChuSpace(u.cod, space.left, space.right, fn_compose(u, space.pairing))


def local_pushforward(u, carriers=None, max_size=2):
    """u_* : (a, f, b) -> (a, u . f, b), identity on transform components."""
    src = chu_category(u.dom, carriers, max_size)
    dst = chu_category(u.cod, carriers, max_size)

    def mor(t):
        return ChuTransform(pushforward_space(u, t.src), pushforward_space(u, t.dst),
                            t.fwd, t.bwd, check=False)

    return FunctorPresentation(f"pushforward{list(u.table)}", src, dst,
                               lambda s: pushforward_space(u, s), mor)


def evaluation_space(a, gamma):
    """(a, ev, gamma^a)."""
    ew = exponential(a, gamma)
    return ChuSpace(gamma, a, ew.expo, ew.ev)


def evaluation_transform(f, gamma):
    """(f, curry(ev_b . (f x 1))) : E(a) -> E(b)."""
    a, b = f.dom, f.cod
    eb = exponential(b, gamma)
    h = fn_compose(eb.ev, fn_product(f, identity(eb.expo)))
    return ChuTransform(evaluation_space(a, gamma), evaluation_space(b, gamma), f,
                        curry(h, a, eb.expo), check=False)


def ccc_representation(gamma, max_size=2, discrete_only=False):
    src = finsetoid_category(max_size, discrete_only)
    return FunctorPresentation(
        f"E[{gamma!r}]", src, chu_universe(gamma),
        lambda a: evaluation_space(a, gamma), lambda f: evaluation_transform(f, gamma))


class AffObject:
    """(A, F): a carrier with a duplicate-free family of maps into X."""
    __slots__ = ("carrier", "value", "functions", "_hash")

    def __init__(self, carrier, value, functions):
        functions = tuple(functions)
        for g in functions:
            if g.dom != carrier or g.cod != value:
                raise SetoidError("family member is mistyped", g)
        if len({g.table for g in functions}) != len(functions):
            raise SetoidError("family lists a map twice")
        self.carrier = carrier
        self.value = value
        self.functions = functions
        self._hash = hash((carrier, value, tuple(g.table for g in functions)))

    @property
    def family(self):
        """The family as a discrete setoid labelled by the tables."""
        return discrete(len(self.functions), [g.table for g in self.functions])

    def index(self, g):
        for k, h in enumerate(self.functions):
            if h.table == g.table:
                return k
        return None

    def __eq__(self, other):
        if not isinstance(other, AffObject):
            return NotImplemented
        return (self.carrier == other.carrier and self.value == other.value
                and [g.table for g in self.functions] == [g.table for g in other.functions])

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AffObject({self.carrier!r}, {[list(g.table) for g in self.functions]})"


def is_aff_morphism(src, dst, h):
    """g . h lies in the source family for every g in the target family."""
    return all(src.index(fn_compose(g, h)) is not None for g in dst.functions)


def aff_objects(value, max_size=2):
    for a in all_setoids(max_size):
        maps = all_maps(a, value)
        for bits in range(1 << len(maps)):
            yield AffObject(a, value, [g for k, g in enumerate(maps) if bits >> k & 1])


def aff_category(value, max_size=2):
    return concrete_category(
        f"Aff({value!r})", lambda: aff_objects(value, max_size),
        lambda a, b: all_maps(a.carrier, b.carrier), is_aff_morphism)


def aff_space(obj):
    """(A, ev, F)."""
    fam = obj.family
    pw = product(obj.carrier, fam)
    table = [g.table[x] for x in obj.carrier for g in obj.functions]
    return ChuSpace(obj.value, obj.carrier, fam, SetoidFn(pw.prod, obj.value, table))


def aff_transform(t):
    """(h, h*) with h*(g) = g . h, which must land in the source family."""
    h, src, dst = t.map, t.src, t.dst
    table = []
    for g in dst.functions:
        k = src.index(fn_compose(g, h))
        if k is None:
            raise SetoidError("not an Aff morphism", (list(h.table), list(g.table)))
        table.append(k)
    bwd = SetoidFn(dst.family, src.family, table, check=False)
    return ChuTransform(aff_space(src), aff_space(dst), h, bwd, check=False)


def aff_representation(value, max_size=2):
    return FunctorPresentation("E[Aff]", aff_category(value, max_size), chu_universe(value),
                               aff_space, aff_transform)
