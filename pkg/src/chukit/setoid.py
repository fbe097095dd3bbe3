"""Finite setoids, extensional maps, products, exponentials and subsets.

A setoid is stored by its canonical-representative table: ``rep[i]`` is the
least index equal to ``i``. Map tables are normalised to representatives at
construction, so two maps are pointwise equal exactly when their tables
are equal.

Elements may carry ``labels`` (any hashable, repr-stable values). Labels
are part of object identity: the subset {1} of a three-element set and the
one-element set itself have the same shape but different labels, which is
what keeps subset, ideal and open-set carriers apart when functors are
checked for injectivity on objects.
"""

import hashlib
import itertools
from functools import lru_cache

from .verdict import PASS, Verdict


class SetoidError(ValueError):
    """Raised when a table violates a setoid-level invariant.

    ``witness`` holds the offending coordinates.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Setoid:
    __slots__ = ("size", "rep", "labels", "_hash", "_classes")

    def __init__(self, size, rep=None, labels=None):
        rep = tuple(range(size)) if rep is None else tuple(rep)
        if len(rep) != size:
            raise SetoidError("representative table has wrong length", (len(rep), size))
        for i, r in enumerate(rep):
            if not 0 <= r <= i or rep[r] != r:
                raise SetoidError("not a canonical representative table", (i, r))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != size:
                raise SetoidError("label count differs from size", (len(labels), size))
            if labels == tuple(range(size)):
                labels = None
        self.size = size
        self.rep = rep
        self.labels = labels
        self._hash = hash((size, rep, labels))
        self._classes = None

    def eq(self, x, y):
        return self.rep[x] == self.rep[y]

    def label(self, i):
        return i if self.labels is None else self.labels[i]

    @property
    def classes(self):
        """Class representatives in increasing order."""
        if self._classes is None:
            self._classes = tuple(i for i, r in enumerate(self.rep) if i == r)
        return self._classes

    @property
    def n_classes(self):
        return len(self.classes)

    @property
    def is_discrete(self):
        return self.n_classes == self.size

    def members(self, x):
        r = self.rep[x]
        return tuple(i for i in range(self.size) if self.rep[i] == r)

    def canonical(self):
        return f"Setoid({self.size};{self.rep};{self.labels!r})"

    @property
    def fingerprint(self):
        return hashlib.sha1(self.canonical().encode()).hexdigest()[:16]

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Setoid):
            return NotImplemented
        return (self._hash == other._hash and self.size == other.size
                and self.rep == other.rep and self.labels == other.labels)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return Setoid, (self.size, self.rep, self.labels)

    def __repr__(self):
        if self.labels is None and self.is_discrete:
            return f"Setoid({self.size})"
        parts = [str(self.size)]
        if not self.is_discrete:
            parts.append(f"rep={self.rep}")
        if self.labels is not None:
            parts.append(f"labels={self.labels!r}")
        return f"Setoid({', '.join(parts)})"


def discrete(size, labels=None):
    return Setoid(size, None, labels)


EMPTY = discrete(0)
ONE = discrete(1)
TWO = discrete(2)
THREE = discrete(3)


def mk_setoid(size, eq_pairs=(), labels=None):
    """Setoid whose equality is the equivalence closure of ``eq_pairs``."""
    parent = list(range(size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x, y in eq_pairs:
        if not (0 <= x < size and 0 <= y < size):
            raise SetoidError("pair index out of range", (x, y))
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    return Setoid(size, [find(i) for i in range(size)], labels)


def setoid_from_relation(size, related, labels=None):
    """Setoid from an explicit equality table, which must already be an
    equivalence. ``related`` is a collection of index pairs."""
    rel = set(map(tuple, related))
    for x, y in rel:
        if not (0 <= x < size and 0 <= y < size):
            raise SetoidError("pair index out of range", (x, y))
    for x in range(size):
        if (x, x) not in rel:
            raise SetoidError("equality is not reflexive", (x, x))
    for x, y in sorted(rel):
        if (y, x) not in rel:
            raise SetoidError("equality is not symmetric", (x, y))
    for x, y in sorted(rel):
        for z in range(size):
            if (y, z) in rel and (x, z) not in rel:
                raise SetoidError("equality is not transitive", (x, y, z))
    return mk_setoid(size, rel, labels)


@lru_cache(maxsize=None)
def all_setoids(max_size, discrete_only=False):
    """Every setoid on 0..n-1 for n <= max_size, by size then partition."""
    out = []
    for n in range(max_size + 1):
        if discrete_only:
            out.append(discrete(n))
            continue
        for rep in _rep_tables(n):
            out.append(Setoid(n, rep))
    return tuple(out)


def _rep_tables(n):
    # restricted growth: each index joins an earlier class or opens its own
    def go(i, rep):
        if i == n:
            yield tuple(rep)
            return
        yield from go(i + 1, rep + [i])
        for r in sorted(set(rep)):
            yield from go(i + 1, rep + [r])
    yield from go(0, [])


class SetoidFn:
    __slots__ = ("dom", "cod", "table", "_hash")

    def __init__(self, dom, cod, table, check=True):
        table = tuple(table)
        if check:
            if len(table) != dom.size:
                raise SetoidError("table is not total", (len(table), dom.size))
            for x, y in enumerate(table):
                if not 0 <= y < cod.size:
                    raise SetoidError("table value out of range", (x, y))
            crep = cod.rep
            table = tuple(crep[y] for y in table)
            for x, r in enumerate(dom.rep):
                if table[x] != table[r]:
                    raise SetoidError("map is not extensional", (r, x))
        self.dom = dom
        self.cod = cod
        self.table = table
        self._hash = hash((dom._hash, cod._hash, table))

    @classmethod
    def raw(cls, dom, cod, table):
        """Trusted constructor: ``table`` is a canonical, extensional tuple."""
        self = object.__new__(cls)
        self.dom = dom
        self.cod = cod
        self.table = table
        self._hash = hash((dom._hash, cod._hash, table))
        return self

    def __call__(self, x):
        return self.table[x]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SetoidFn):
            return NotImplemented
        return self.table == other.table and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return SetoidFn, (self.dom, self.cod, self.table, False)

    def __repr__(self):
        return f"SetoidFn({list(self.table)}: {self.dom!r} -> {self.cod!r})"


def identity(a):
    return SetoidFn(a, a, a.rep, check=False)


def fn_compose(g, f):
    """g after f."""
    if f.cod is not g.dom and f.cod != g.dom:
        raise SetoidError("domain mismatch in composition", (f.cod, g.dom))
    return SetoidFn.raw(f.dom, g.cod, tuple(map(g.table.__getitem__, f.table)))


def constant(dom, cod, value):
    return SetoidFn(dom, cod, [value] * dom.size)


def is_injection(e):
    seen = {}
    for x, y in enumerate(e.table):
        r = seen.setdefault(y, e.dom.rep[x])
        if r != e.dom.rep[x]:
            return False
    return True


def is_surjection(e):
    return set(e.table) == set(e.cod.classes)


@lru_cache(maxsize=None)
def all_maps(a, b):
    """Every extensional map a -> b, one per pointwise class, in
    lexicographic order of tables."""
    where = [a.classes.index(r) for r in a.rep]
    out = []
    for choice in itertools.product(b.classes, repeat=a.n_classes):
        out.append(SetoidFn(a, b, [choice[k] for k in where], check=False))
    return tuple(out)


class ProductWitness:
    __slots__ = ("left", "right", "prod", "proj_left", "proj_right")

    def __init__(self, left, right):
        n = right.size
        labels = [(left.label(x), right.label(y))
                  for x in range(left.size) for y in range(n)]
        rep = [left.rep[x] * n + right.rep[y]
               for x in range(left.size) for y in range(n)]
        self.left = left
        self.right = right
        self.prod = Setoid(left.size * n, rep, labels)
        self.proj_left = SetoidFn(self.prod, left,
                                  [left.rep[p // n] for p in range(self.prod.size)], check=False)
        self.proj_right = SetoidFn(self.prod, right,
                                   [right.rep[p % n] for p in range(self.prod.size)], check=False)

    def index(self, x, y):
        return x * self.right.size + y

    def split(self, p):
        return divmod(p, self.right.size)


@lru_cache(maxsize=None)
def product(left, right):
    return ProductWitness(left, right)


def fn_product(f, g):
    """f x g : dom f x dom g -> cod f x cod g."""
    src = product(f.dom, g.dom)
    dst = product(f.cod, g.cod)
    m = g.dom.size
    n = g.cod.size
    ft, gt = f.table, g.table
    table = [ft[p // m] * n + gt[p % m] for p in range(src.prod.size)]
    return SetoidFn(src.prod, dst.prod, table, check=False)


def tupling(f, g):
    """The pairing <f, g> : c -> cod f x cod g."""
    if f.dom != g.dom:
        raise SetoidError("tupling needs a common domain", (f.dom, g.dom))
    pw = product(f.cod, g.cod)
    return SetoidFn(f.dom, pw.prod, [pw.index(x, y) for x, y in zip(f.table, g.table)], check=False)


class ExponentialWitness:
    __slots__ = ("base", "value", "expo", "ev", "tables", "_index")

    def __init__(self, base, value):
        maps = all_maps(base, value)
        self.base = base
        self.value = value
        self.tables = tuple(m.table for m in maps)
        self._index = {t: k for k, t in enumerate(self.tables)}
        self.expo = discrete(len(self.tables), self.tables)
        pw = product(base, self.expo)
        k = self.expo.size
        self.ev = SetoidFn(pw.prod, value,
                           [self.tables[p % k][p // k] for p in range(pw.prod.size)], check=False)

    def index(self, table):
        return self._index[tuple(table)]

    def element(self, k):
        return SetoidFn(self.base, self.value, self.tables[k], check=False)


@lru_cache(maxsize=None)
def exponential(a, v):
    return ExponentialWitness(a, v)


def curry(f, left, right):
    """The unique b -> gamma^a with ev . (1 x curry f) = f."""
    pw = product(left, right)
    if f.dom != pw.prod:
        raise SetoidError("curry needs a map out of left x right", f.dom)
    ew = exponential(left, f.cod)
    n = right.size
    table = [ew.index([f.table[x * n + y] for x in range(left.size)]) for y in range(n)]
    return SetoidFn(right, ew.expo, table, check=False)


def uncurry(g, left, value):
    """Inverse of curry: from b -> value^left back to left x b -> value."""
    ew = exponential(left, value)
    if g.cod != ew.expo:
        raise SetoidError("uncurry needs a map into an exponential", g.cod)
    b = g.dom
    pw = product(left, b)
    table = [ew.tables[g.table[y]][x] for x in range(left.size) for y in range(b.size)]
    return SetoidFn(pw.prod, value, table, check=False)


class Apartness:
    __slots__ = ("base", "neq", "_hash")

    def __init__(self, base, neq):
        self.base = base
        self.neq = frozenset(map(tuple, neq))
        for x, y in self.neq:
            if not (0 <= x < base.size and 0 <= y < base.size):
                raise SetoidError("apartness index out of range", (x, y))
        self._hash = hash((base, self.neq))

    def apart(self, x, y):
        return (x, y) in self.neq

    @property
    def is_denial(self):
        return self == denial(self.base)

    def __eq__(self, other):
        if not isinstance(other, Apartness):
            return NotImplemented
        return self.base == other.base and self.neq == other.neq

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Apartness({self.base!r}, {sorted(self.neq)})"


@lru_cache(maxsize=None)
def denial(base):
    """The inequality x != y :<=> not (x = y)."""
    return Apartness(base, [(x, y) for x in base for y in base if not base.eq(x, y)])


def check_apartness(r):
    s = r.base
    pts = range(s.size)
    for x in pts:
        for y in pts:
            if s.eq(x, y) and r.apart(x, y):
                return Verdict.fail("Ap1", (x, y))
    for x, y in sorted(r.neq):
        if not r.apart(y, x):
            return Verdict.fail("Ap2", (x, y))
    for x, y in sorted(r.neq):
        for z in pts:
            if not r.apart(z, x) and not r.apart(z, y):
                return Verdict.fail("Ap3", (x, y, z))
    for x, y in sorted(r.neq):
        for x2 in s.members(x):
            for y2 in s.members(y):
                if not r.apart(x2, y2):
                    return Verdict.fail("extensionality", (x, y, x2, y2))
    return PASS


def is_strongly_extensional(f, ax, ay):
    """f reflects apartness: f x # f x' implies x # x'."""
    if ax.base != f.dom or ay.base != f.cod:
        raise SetoidError("apartness does not match the map", (ax.base, ay.base))
    t = f.table
    for x in f.dom:
        for x2 in f.dom:
            if ay.apart(t[x], t[x2]) and not ax.apart(x, x2):
                return Verdict.fail("not strongly extensional", (x, x2))
    return PASS


class SubsetEmbedding:
    __slots__ = ("sub", "ambient", "inj", "_hash")

    def __init__(self, sub, ambient, inj):
        if inj.dom != sub or inj.cod != ambient:
            raise SetoidError("embedding is mistyped", (inj.dom, inj.cod))
        if not is_injection(inj):
            raise SetoidError("embedding is not an injection", inj.table)
        self.sub = sub
        self.ambient = ambient
        self.inj = inj
        self._hash = hash((sub, ambient, inj.table))

    @property
    def mask(self):
        """Bitmask of the eq-closed image in the ambient setoid."""
        image = {self.inj.table[a] for a in self.sub}
        return sum(1 << x for x in self.ambient if self.ambient.rep[x] in image)

    def contains(self, x):
        return bool(self.mask >> x & 1)

    def preimage(self, x):
        """Some a with i(a) = x, or None."""
        r = self.ambient.rep[x]
        for a, y in enumerate(self.inj.table):
            if y == r:
                return a
        return None

    def __eq__(self, other):
        if not isinstance(other, SubsetEmbedding):
            return NotImplemented
        return self.sub == other.sub and self.ambient == other.ambient and self.inj == other.inj

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SubsetEmbedding({list(self.inj.table)} in {self.ambient!r})"


def subset_of(ambient, members):
    """Canonical embedding of the eq-closure of ``members``: the subsetoid
    on those ambient indices, in increasing order, with the identity rule
    as injection."""
    bad = [x for x in members if not 0 <= x < ambient.size]
    if bad:
        raise SetoidError("member out of range", bad[0])
    keep = {ambient.rep[x] for x in members}
    elems = [x for x in ambient if ambient.rep[x] in keep]
    pos = {x: k for k, x in enumerate(elems)}
    rep = [pos[ambient.rep[x]] for x in elems]
    sub = Setoid(len(elems), rep, [ambient.label(x) for x in elems])
    return SubsetEmbedding(sub, ambient, SetoidFn(sub, ambient, elems))


@lru_cache(maxsize=None)
def canonical_subsets(ambient):
    """One canonical embedding per eq-closed subset, in bitmask order."""
    cls = ambient.classes
    subs = [subset_of(ambient, [cls[k] for k in range(len(cls)) if bits >> k & 1])
            for bits in range(1 << len(cls))]
    return tuple(sorted(subs, key=lambda s: s.mask))


def is_disjoint(a, b, ax):
    ia, ib = a.inj.table, b.inj.table
    return all(ax.apart(x, y) for x in ia for y in ib)


def canonical_inequality(a, ax):
    """Apartness on a.sub induced by the ambient one."""
    i = a.inj.table
    return Apartness(a.sub, [(p, q) for p in a.sub for q in a.sub if ax.apart(i[p], i[q])])


class ComplementedSubset:
    __slots__ = ("one", "zero", "apartness", "_hash")

    def __init__(self, one, zero, apartness):
        if one.ambient != apartness.base or zero.ambient != apartness.base:
            raise SetoidError("complemented subset parts live in different setoids")
        if not is_disjoint(one, zero, apartness):
            for p in one.sub:
                for q in zero.sub:
                    if not apartness.apart(one.inj(p), zero.inj(q)):
                        raise SetoidError("components are not disjoint", (p, q))
        self.one = one
        self.zero = zero
        self.apartness = apartness
        self._hash = hash((one, zero, apartness))

    @property
    def ambient(self):
        return self.apartness.base

    def __eq__(self, other):
        if not isinstance(other, ComplementedSubset):
            return NotImplemented
        return self.one == other.one and self.zero == other.zero and self.apartness == other.apartness

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ComplementedSubset(1={list(self.one.inj.table)}, 0={list(self.zero.inj.table)})"


@lru_cache(maxsize=None)
def canonical_complemented_subsets(ax):
    subs = canonical_subsets(ax.base)
    return tuple(ComplementedSubset(a1, a0, ax) for a1 in subs for a0 in subs
                 if is_disjoint(a1, a0, ax))


def indicator(a, x):
    """1 on the image of A1, 0 on the image of A0."""
    if a.one.contains(x):
        return 1
    if a.zero.contains(x):
        return 0
    raise ValueError(f"indicator is undefined for this argument: {x}")
