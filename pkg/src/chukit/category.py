"""Enumerable finite categories, functors and natural transformations, with
exhaustive verifiers for the usual laws and for (full) embeddings.

Morphism handles are hashable and expose ``dom`` and ``cod``. Objects are
hashable values whose equality is structural.
"""

import numpy as np

from .setoid import (SetoidError, SetoidFn, all_maps, all_setoids, fn_compose,
                     identity, is_injection, product, tupling)
from .verdict import PASS, Verdict


class CategoryPresentation:
    """A finite category given by enumeration.

    ``objects`` may be a sequence or a zero-argument callable (evaluated on
    first use). ``hom(a, b)`` results are memoised per pair. ``contains``
    decides whether a handle is a morphism a -> b without enumerating the
    hom-set; it defaults to a scan of ``hom(a, b)``. ``mor_key`` maps a
    handle to a hashable key deciding morphism equality.

    ``tables``, when given, maps a handle to ``(covariant, contravariant)``
    tuples of integer tables such that morphism equality within a hom-set
    is equality of tables, and composition is g[f] on covariant components
    and f[g] on contravariant ones. The verifiers then work on whole
    hom-sets at once.
    """

    def __init__(self, name, objects, hom, compose, identity, contains=None, mor_key=None,
                 tables=None):
        self.name = name
        self._objects = objects
        self._hom = hom
        self._memo = {}
        self.compose = compose
        self.identity = identity
        self._contains = contains
        self.mor_key = mor_key or _same
        self.tables = tables

    @property
    def objects(self):
        if callable(self._objects):
            self._objects = tuple(self._objects())
        return self._objects

    def hom(self, a, b):
        key = (a, b)
        hs = self._memo.get(key)
        if hs is None:
            hs = self._memo[key] = tuple(self._hom(a, b))
        return hs

    def contains(self, a, b, f):
        if self._contains is not None:
            return self._contains(a, b, f)
        k = self.mor_key(f)
        return any(self.mor_key(g) == k for g in self.hom(a, b))

    def mor_eq(self, f, g):
        return self.mor_key(f) == self.mor_key(g)

    def arrows(self):
        for a in self.objects:
            for b in self.objects:
                for f in self.hom(a, b):
                    yield a, b, f

    def __repr__(self):
        return f"CategoryPresentation({self.name})"


def _same(f):
    return f


class FunctorPresentation:
    __slots__ = ("name", "src", "dst", "_obj", "_mor", "_omemo", "_mmemo")

    def __init__(self, name, src, dst, obj, mor):
        self.name = name
        self.src = src
        self.dst = dst
        self._obj = obj
        self._mor = mor
        self._omemo = {}
        self._mmemo = {}

    def obj(self, a):
        r = self._omemo.get(a)
        if r is None:
            r = self._omemo[a] = self._obj(a)
        return r

    def mor(self, f):
        r = self._mmemo.get(f)
        if r is None:
            r = self._mmemo[f] = self._mor(f)
        return r

    def __repr__(self):
        return f"FunctorPresentation({self.name})"


def compose_functors(G, F, name=None):
    """G after F."""
    return FunctorPresentation(name or f"{G.name}.{F.name}", F.src, G.dst,
                               lambda a: G.obj(F.obj(a)), lambda f: G.mor(F.mor(f)))


class Arrow:
    """A bare map together with its source and target objects.

    Concrete categories whose objects are structured setoids (topologies,
    subsets, affine families) use these, so that the same map between
    different structures gives different arrows.
    """
    __slots__ = ("map", "src", "dst", "_hash")

    def __init__(self, m, src, dst):
        self.map = m
        self.src = src
        self.dst = dst
        self._hash = hash((m, src, dst))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Arrow):
            return NotImplemented
        return self.map == other.map and self.src == other.src and self.dst == other.dst

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return Arrow, (self.map, self.src, self.dst)

    def __repr__(self):
        m = self.map
        return f"Arrow({list(m.table) if isinstance(m, SetoidFn) else m!r})"


def map_tables(f):
    return (f.table,), ()


def concrete_category(name, objects, maps, is_morphism, compose_maps=None, identity_map=None,
                      map_encoding=None):
    """Category of structured objects whose arrows are the maps between
    underlying carriers satisfying ``is_morphism(src, dst, m)``.

    ``maps(src, dst)`` lists candidate maps; composition and identities
    default to those of FinSetoid on ``.map``. ``map_encoding`` gives table
    encodings of the maps (see CategoryPresentation), and defaults to the
    map's own table when composition is the default.
    """
    if map_encoding is None and compose_maps is None:
        map_encoding = map_tables
    compose_maps = compose_maps or fn_compose
    identity_map = identity_map or (lambda a: identity(a.carrier))

    def hom(a, b):
        return [Arrow(m, a, b) for m in maps(a, b) if is_morphism(a, b, m)]

    def compose(g, f):
        return Arrow(compose_maps(g.map, f.map), f.src, g.dst)

    def contains(a, b, t):
        return isinstance(t, Arrow) and t.src == a and t.dst == b and is_morphism(a, b, t.map)

    tables = None if map_encoding is None else (lambda t: map_encoding(t.map))
    return CategoryPresentation(name, objects, hom, compose,
                                lambda a: Arrow(identity_map(a), a, a), contains=contains,
                                tables=tables)


class NatTransPresentation:
    """Components ``component(a) : F a -> G a`` for every source object."""

    def __init__(self, name, F, G, component):
        self.name = name
        self.F = F
        self.G = G
        self._component = component
        self._memo = {}

    def at(self, a):
        r = self._memo.get(a)
        if r is None:
            r = self._memo[a] = self._component(a)
        return r


def _in_out(C):
    ins = {a: [] for a in C.objects}
    outs = {a: [] for a in C.objects}
    for a, b, f in C.arrows():
        outs[a].append((b, f))
        ins[b].append((a, f))
    return ins, outs


class CompositionTable:
    """Every composable pair of C composed once, as integer ids.

    Arrows get global ids. For each object c, ``table[c][i, j]`` is the id
    of out[c][i] after in[c][j]. Building the table checks that every
    composite is an enumerated arrow between the right objects.
    """

    def __init__(self, C):
        self.C = C
        self.arrows = []
        self.ids = {}
        self.ins = {a: [] for a in C.objects}
        self.outs = {a: [] for a in C.objects}
        self.homs = {}
        for a, b, f in C.arrows():
            i = len(self.arrows)
            self.arrows.append((a, b, f))
            self.ids[a, b, C.mor_key(f)] = i
            self.outs[a].append(i)
            self.ins[b].append(i)
            self.homs.setdefault((a, b), []).append(i)
        # an arrow is in exactly one ins list and one outs list
        self.in_pos = np.zeros(len(self.arrows), dtype=np.int64)
        self.out_pos = np.zeros(len(self.arrows), dtype=np.int64)
        for v in self.ins.values():
            self.in_pos[v] = np.arange(len(v))
        for v in self.outs.values():
            self.out_pos[v] = np.arange(len(v))
        self.hom_pos = np.zeros(len(self.arrows), dtype=np.int64)
        for v in self.homs.values():
            self.hom_pos[v] = np.arange(len(v))
        self.table = {}
        self.failure = None
        if C.tables is None:
            self._fill_by_composing()
            return
        enc = [C.tables(f) for _, _, f in self.arrows]
        self.padded = PaddedEncoding(enc) if enc else None
        obj_id = {a: k for k, a in enumerate(C.objects)}
        self.src_id = np.array([obj_id[a] for a, _, _ in self.arrows], dtype=np.int64)
        self.dst_id = np.array([obj_id[b] for _, b, _ in self.arrows], dtype=np.int64)
        if self.padded is not None and self.padded.packable(len(obj_id)):
            self._fill_packed(enc)
        else:
            self._fill_from_tables(enc)

    def _fill_by_composing(self):
        C = self.C
        for c in C.objects:
            m = np.empty((len(self.outs[c]), len(self.ins[c])), dtype=np.int64)
            for r, hi in enumerate(self.outs[c]):
                _, d, h = self.arrows[hi]
                for k, fi in enumerate(self.ins[c]):
                    a, _, f = self.arrows[fi]
                    j = self.ids.get((a, d, C.mor_key(C.compose(h, f))))
                    if j is None:
                        self.failure = Verdict.fail("composite is not a morphism", (a, c, d, f, h))
                        return
                    m[r, k] = j
            self.table[c] = m

    def groups(self, c):
        """In- and out-arrows of c grouped by their far end, as
        (object, positions in ins/outs, arrow ids)."""
        def group(ids, end):
            out = {}
            for k, i in enumerate(ids):
                out.setdefault(self.arrows[i][end], []).append(k)
            return [(o, np.array(ks), np.array([ids[k] for k in ks])) for o, ks in out.items()]
        return group(self.ins[c], 0), group(self.outs[c], 1)

    def _fill_packed(self, enc):
        P = self.padded
        n = len(self.C.objects)
        keys = P.keys(self.src_id, self.dst_id, P.rows(), n)
        if len(np.unique(keys)) != len(keys):
            raise ValueError("table encoding does not separate arrows")
        order = np.argsort(keys)
        sorted_keys = keys[order]
        for c in self.C.objects:
            ins = np.array(self.ins[c], dtype=np.int64)
            outs = np.array(self.outs[c], dtype=np.int64)
            if not len(ins) or not len(outs):
                self.table[c] = np.empty((len(outs), len(ins)), dtype=np.int64)
                continue
            comp = P.compose(outs, ins)
            k = P.keys(self.src_id[ins][None, :], self.dst_id[outs][:, None], comp, n)
            pos = np.searchsorted(sorted_keys, k).clip(max=len(keys) - 1)
            hit = sorted_keys[pos] == k
            if not hit.all():
                r, q = np.argwhere(~hit)[0]
                a, _, f = self.arrows[ins[q]]
                _, d, h = self.arrows[outs[r]]
                self.failure = Verdict.fail("composite is not a morphism", (a, c, d, f, h))
                return
            self.table[c] = order[pos]

    def _fill_from_tables(self, enc):
        C = self.C
        hom_rows = {}
        for k, v in self.homs.items():
            rows = encode_rows(stack_encodings([enc[i] for i in v]))
            if len(np.unique(rows, axis=0)) != len(rows):
                raise ValueError("table encoding does not separate arrows")
            hom_rows[k] = RowIndex(rows)
        for c in C.objects:
            m = np.empty((len(self.outs[c]), len(self.ins[c])), dtype=np.int64)
            ins, outs = self.groups(c)
            outs = [(d, k, ids, stack_encodings([enc[i] for i in ids])) for d, k, ids in outs]
            for a, in_k, in_ids in ins:
                inner = stack_encodings([enc[i] for i in in_ids])
                for d, out_k, out_ids, outer in outs:
                    comp = compose_encodings(outer, inner)
                    index = hom_rows.get((a, d))
                    found = index.locate(comp) if index else np.full(comp.shape[:2], -1)
                    if (found < 0).any():
                        r, k = np.argwhere(found < 0)[0]
                        f, h = self.arrows[in_ids[k]][2], self.arrows[out_ids[r]][2]
                        self.failure = Verdict.fail("composite is not a morphism", (a, c, d, f, h))
                        return
                    m[np.ix_(out_k, in_k)] = np.asarray(self.homs[a, d], dtype=np.int64)[found]
            self.table[c] = m


class PaddedEncoding:
    """Table encodings of many arrows, each component padded with -1 to a
    common width, so composites of whole families compute at once."""

    def __init__(self, encs):
        ncov, ncon = len(encs[0][0]), len(encs[0][1])
        self.cov = [_pad([e[0][k] for e in encs]) for k in range(ncov)]
        self.con = [_pad([e[1][k] for e in encs]) for k in range(ncon)]
        parts = self.cov + self.con
        self.width = sum(p.shape[1] for p in parts)
        self.base = max([int(p.max()) for p in parts if p.size] + [0]) + 2

    def rows(self, ids=None):
        parts = self.cov + self.con
        if ids is not None:
            parts = [p[ids] for p in parts]
        if not parts:
            n = len(self.cov[0]) if ids is None else len(ids)
            return np.zeros((n, 0), dtype=np.int64)
        return np.concatenate(parts, axis=-1)

    def compose(self, outer, inner):
        """Padded encodings of h . f for h in ``outer``, f in ``inner`` (ids),
        shape (len(outer), len(inner), width)."""
        parts = []
        for T in self.cov:
            H, F = T[outer], T[inner]
            parts.append(np.where(F >= 0, H[:, F.clip(0)], -1))
        for T in self.con:
            H, F = T[outer], T[inner]
            parts.append(np.where(H >= 0, F[:, H.clip(0)], -1).transpose(1, 0, 2))
        if not parts:
            return np.zeros((len(outer), len(inner), 0), dtype=np.int64)
        return np.concatenate(parts, axis=2)

    def packable(self, n_objects):
        bits = 2 * max(n_objects, 1).bit_length() + self.width * self.base.bit_length()
        return bits < 62

    def keys(self, src, dst, rows, n_objects):
        """One int per row: the two object ids, then the padded digits."""
        k = src * n_objects + dst
        for j in range(rows.shape[-1]):
            k = k * self.base + rows[..., j] + 1
        return k


def _pad(tables):
    width = max((len(t) for t in tables), default=0)
    out = np.full((len(tables), width), -1, dtype=np.int64)
    for k, t in enumerate(tables):
        out[k, :len(t)] = t
    return out


def _stack(tables):
    return np.array(tables, dtype=np.int64).reshape(len(tables), len(tables[0]))


def stack_encodings(encs):
    """Table encodings of same-typed arrows as (covariant, contravariant)
    lists of 2-d arrays, one row per arrow."""
    cov0, con0 = encs[0]
    return ([_stack([e[0][k] for e in encs]) for k in range(len(cov0))],
            [_stack([e[1][k] for e in encs]) for k in range(len(con0))])


def encode_rows(stacked):
    parts = stacked[0] + stacked[1]
    if not parts:
        return np.zeros((0, 0), dtype=np.int64)
    return np.concatenate(parts, axis=1)


def compose_encodings(outer, inner):
    """Encodings of h . f for h in ``outer``, f in ``inner``, as an array of
    shape (len(outer), len(inner), width)."""
    parts = [H[:, F] for H, F in zip(outer[0], inner[0])]
    parts += [F[:, H].transpose(1, 0, 2) for H, F in zip(outer[1], inner[1])]
    if not parts:
        n = len(outer[0][0]) if outer[0] else len(outer[1][0]) if outer[1] else 0
        return np.zeros((n, 0, 0), dtype=np.int64)
    return np.concatenate(parts, axis=2)


class RowIndex:
    """Positions of the rows of a small int array, looked up in bulk.

    Rows are packed into single integers when they fit, otherwise matched
    through np.unique.
    """

    def __init__(self, rows):
        self.rows = rows
        width = rows.shape[1]
        base = int(rows.max()) + 2 if rows.size else 2
        self.packed = width == 0 or width * base.bit_length() < 62
        if self.packed:
            self.weights = base ** np.arange(width, dtype=np.int64)
            self.base = base
            codes = rows @ self.weights
            self.order = np.argsort(codes)
            self.codes = codes[self.order]

    def locate(self, comp):
        """Index of every row of ``comp`` (last axis) in the rows, or -1."""
        shape = comp.shape[:-1]
        width = comp.shape[-1]
        if len(self.rows) == 0:
            return np.full(shape, -1, dtype=np.int64)
        if width == 0:
            return np.zeros(shape, dtype=np.int64)
        flat = comp.reshape(-1, width)
        if self.packed:
            if flat.max() >= self.base - 1:
                ok = (flat < self.base - 1).all(axis=1)
                flat = np.where(ok[:, None], flat, 0)
            else:
                ok = None
            codes = flat @ self.weights
            pos = np.searchsorted(self.codes, codes).clip(max=len(self.codes) - 1)
            hit = self.codes[pos] == codes
            if ok is not None:
                hit &= ok
            return np.where(hit, self.order[pos], -1).reshape(shape)
        both = np.concatenate([self.rows, flat])
        _, inverse = np.unique(both, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        lookup = np.full(inverse.max() + 1, -1, dtype=np.int64)
        lookup[inverse[:len(self.rows)]] = np.arange(len(self.rows))
        return lookup[inverse[len(self.rows):]].reshape(shape)


def verify_category_laws(C, table=None):
    """Identity, closure of composition, unit and associativity laws, checked
    over every composable configuration. ``table`` may pass a prebuilt
    CompositionTable of C."""
    key = C.mor_key
    for a in C.objects:
        if not C.contains(a, a, C.identity(a)):
            return Verdict.fail("identity is not an endomorphism", (a,))
    for a, b, f in C.arrows():
        if key(C.compose(C.identity(b), f)) != key(f):
            return Verdict.fail("left unit law", (a, b, f))
        if key(C.compose(f, C.identity(a))) != key(f):
            return Verdict.fail("right unit law", (a, b, f))
    T = table or CompositionTable(C)
    if T.failure is not None:
        return T.failure
    for gi, (b, c, g) in enumerate(T.arrows):
        Mb, Mc = T.table[b], T.table[c]
        if Mb.size == 0 or Mc.size == 0:
            continue
        left = Mc[:, T.in_pos[Mb[T.out_pos[gi], :]]]
        right = Mb[T.out_pos[Mc[:, T.in_pos[gi]]], :]
        neq = left != right
        if neq.any():
            r, k = np.argwhere(neq)[0]
            f = T.arrows[T.ins[b][k]][2]
            h = T.arrows[T.outs[c][r]][2]
            return Verdict.fail("associativity", (f, g, h))
    return PASS


def verify_functor_laws(F, table=None):
    """F preserves identities, typing and composition, checked on every
    composable pair of the source. ``table`` may pass a prebuilt
    CompositionTable of F.src."""
    src, dst = F.src, F.dst
    for a in src.objects:
        if not dst.mor_eq(F.mor(src.identity(a)), dst.identity(F.obj(a))):
            return Verdict.fail("identity not preserved", (a,))
    for a, b, f in src.arrows():
        if not dst.contains(F.obj(a), F.obj(b), F.mor(f)):
            return Verdict.fail("image is not a morphism between images", (a, b, f))
    T = table or CompositionTable(src)
    if T.failure is not None:
        return T.failure
    if dst.tables is not None:
        return _composition_from_tables(F, T)
    image = [dst.mor_key(F.mor(f)) for _, _, f in T.arrows]
    Fmor = [F.mor(f) for _, _, f in T.arrows]
    key, compose = dst.mor_key, dst.compose
    for c in src.objects:
        M = T.table[c].tolist()
        ins = T.ins[c]
        for r, hi in enumerate(T.outs[c]):
            Fh = Fmor[hi]
            row = M[r]
            for k, fi in enumerate(ins):
                if key(compose(Fh, Fmor[fi])) != image[row[k]]:
                    return Verdict.fail("composition not preserved",
                                        (T.arrows[fi][2], T.arrows[hi][2]))
    return PASS


def _composition_from_tables(F, T):
    enc = [F.dst.tables(F.mor(f)) for _, _, f in T.arrows]
    if not enc:
        return PASS
    P = PaddedEncoding(enc)
    images = P.rows()
    for c in F.src.objects:
        ins = np.array(T.ins[c], dtype=np.int64)
        outs = np.array(T.outs[c], dtype=np.int64)
        if not len(ins) or not len(outs):
            continue
        comp = P.compose(outs, ins)
        expected = images[T.table[c]]
        bad = np.argwhere((comp != expected).any(axis=2))
        if len(bad):
            r, k = bad[0]
            return Verdict.fail("composition not preserved",
                                (T.arrows[ins[k]][2], T.arrows[outs[r]][2]))
    return PASS


def verify_naturality(eta):
    F, G = eta.F, eta.G
    C, D = F.src, F.dst
    for a in C.objects:
        if not D.contains(F.obj(a), G.obj(a), eta.at(a)):
            return Verdict.fail("component is mistyped", (a,))
    for a, b, f in C.arrows():
        left = D.compose(G.mor(f), eta.at(a))
        right = D.compose(eta.at(b), F.mor(f))
        if not D.mor_eq(left, right):
            return Verdict.fail("naturality square fails", (a, b, f))
    return PASS


def is_injective_on_objects(F):
    seen = {}
    for a in F.src.objects:
        b = seen.setdefault(F.obj(a), a)
        if b != a:
            return Verdict.fail("two objects with the same image", (b, a))
    return PASS


def is_faithful(F):
    objs = F.src.objects
    for a in objs:
        for b in objs:
            seen = {}
            for f in F.src.hom(a, b):
                g = seen.setdefault(F.mor(f), f)
                if g != f:
                    return Verdict.fail("two arrows with the same image", (a, b, g, f))
    return PASS


def is_embedding(F):
    return is_injective_on_objects(F) and is_faithful(F)


def is_full(F):
    objs = F.src.objects
    for a in objs:
        for b in objs:
            images = {F.mor(f) for f in F.src.hom(a, b)}
            for g in F.dst.hom(F.obj(a), F.obj(b)):
                if g not in images:
                    return Verdict.fail("target arrow not in the image", (a, b, g))
    return PASS


def is_injective_on_arrows(F):
    seen = {}
    for a, b, f in F.src.arrows():
        g = seen.setdefault(F.mor(f), f)
        if g != f:
            return Verdict.fail("two arrows with the same image", (g, f))
    return PASS


def is_full_embedding(F):
    return is_embedding(F) and is_full(F)


def is_strict_representation(F):
    return is_full_embedding(F) and is_injective_on_arrows(F)


def is_mono(f, C):
    """f . g = f . h implies g = h, over every parallel pair into dom f."""
    a = f.dom
    for c in C.objects:
        seen = {}
        for g in C.hom(c, a):
            h = seen.setdefault(C.compose(f, g), g)
            if not C.mor_eq(h, g):
                return Verdict.fail("not left-cancellable", (h, g))
    return PASS


def is_epi(f, C):
    b = f.cod
    for c in C.objects:
        seen = {}
        for g in C.hom(b, c):
            h = seen.setdefault(C.compose(g, f), g)
            if not C.mor_eq(h, g):
                return Verdict.fail("not right-cancellable", (h, g))
    return PASS


def _typed(a, b, f):
    return isinstance(f, SetoidFn) and f.dom == a and f.cod == b


def finsetoid_category(max_size=3, discrete_only=False):
    """The FinSetoid fragment on carriers of size at most ``max_size``."""
    return CategoryPresentation(
        f"FinSetoid<={max_size}",
        all_setoids(max_size, discrete_only),
        all_maps, fn_compose, identity, contains=_typed, tables=map_tables)


def setoid_universe():
    """All finite setoids; usable as a functor target, not enumerable."""
    def no_objects():
        raise TypeError("the universe of finite setoids is not enumerable")
    return CategoryPresentation("FinSetoid", no_objects, all_maps, fn_compose, identity,
                                contains=_typed, tables=map_tables)


class NotProductPreserving(SetoidError):
    pass


class SetoidProducts:
    """Chosen binary products in FinSetoid."""

    def pairing(self, a, b):
        pw = product(a, b)
        return pw.prod, pw.proj_left, pw.proj_right

    def mediator(self, f, g, cone=None):
        """The unique m with p . m = f and q . m = g, where ``cone`` is
        (apex, p, q) and defaults to the chosen product of the codomains.

        For a cone that is not a product the search fails, naming the
        element with no or with several candidates.
        """
        if cone is None:
            return tupling(f, g)
        apex, p, q = cone
        by_legs = {}
        for z in apex.classes:
            by_legs.setdefault((p.table[z], q.table[z]), []).append(z)
        table = []
        for x in f.dom:
            hits = by_legs.get((f.table[x], g.table[x]), [])
            if len(hits) != 1:
                raise NotProductPreserving(
                    "no unique mediating element" if hits else "no mediating element",
                    (x, f.table[x], g.table[x], hits))
            table.append(hits[0])
        return SetoidFn(f.dom, apex, table)


SETOID_PRODUCTS = SetoidProducts()


def canonical_product_iso(F, a, b, products=SETOID_PRODUCTS):
    """F_ab : F a x F b -> F(a x b), the mediator into the image cone
    (F(a x b), F pr_a, F pr_b) of the projections of F a x F b.

    F is anything with ``obj`` and ``mor``. Raises NotProductPreserving when
    the image cone is not a product.
    """
    ab, pa, pb = products.pairing(a, b)
    Fab = F.obj(ab)
    cone = (Fab, F.mor(pa), F.mor(pb))
    P, p1, p2 = products.pairing(F.obj(a), F.obj(b))
    m = products.mediator(p1, p2, cone)
    inverse = tupling(F.mor(pa), F.mor(pb))
    if fn_compose(inverse, m) != identity(P) or fn_compose(m, inverse) != identity(Fab):
        raise NotProductPreserving("mediator is not invertible", (a, b))
    return m


def invert(f):
    """Two-sided inverse found by search, or None."""
    if not is_injection(f):
        return None
    table = []
    for y in f.cod:
        hits = [x for x in f.dom if f.table[x] == f.cod.rep[y]]
        if not hits:
            return None
        table.append(f.dom.rep[hits[0]])
    g = SetoidFn(f.cod, f.dom, table)
    if fn_compose(g, f) != identity(f.dom) or fn_compose(f, g) != identity(f.cod):
        return None
    return g


class CartesianStructure:
    """A category with chosen binary products and a terminal object."""

    def __init__(self, category, products, terminal):
        self.category = category
        self.products = products
        self.terminal = terminal

    def product(self, a, b):
        return self.products.pairing(a, b)

    def arrow_product(self, f, g):
        """f x g = <f . pr_1, g . pr_2>."""
        C = self.category
        _, pl, pr = self.product(f.dom, g.dom)
        return self.products.mediator(C.compose(f, pl), C.compose(g, pr))

    def to_terminal(self, a):
        (t,) = self.category.hom(a, self.terminal)
        return t


def finsetoid_cartesian(max_size=3, discrete_only=False):
    from .setoid import ONE
    return CartesianStructure(finsetoid_category(max_size, discrete_only), SETOID_PRODUCTS, ONE)


def opposite(C):
    """C with every arrow reversed; handles are shared with C."""
    tables = None
    if C.tables is not None:
        def tables(f):
            cov, con = C.tables(f)
            return con, cov
    contains = C._contains and (lambda a, b, f: C.contains(b, a, f))
    return CategoryPresentation(f"{C.name}^op", lambda: C.objects, lambda a, b: C.hom(b, a),
                                lambda g, f: C.compose(f, g), C.identity, contains=contains,
                                mor_key=C.mor_key, tables=tables)


def product_category(C, D):
    """Objects and arrows are pairs, composed componentwise."""
    def hom(p, q):
        return [(f, g) for f in C.hom(p[0], q[0]) for g in D.hom(p[1], q[1])]

    def contains(p, q, fg):
        return C.contains(p[0], q[0], fg[0]) and D.contains(p[1], q[1], fg[1])

    tables = None
    if C.tables is not None and D.tables is not None:
        def tables(fg):
            (c1, k1), (c2, k2) = C.tables(fg[0]), D.tables(fg[1])
            return c1 + c2, k1 + k2
    return CategoryPresentation(
        f"{C.name}x{D.name}", lambda: [(a, b) for a in C.objects for b in D.objects], hom,
        lambda g, f: (C.compose(g[0], f[0]), D.compose(g[1], f[1])),
        lambda p: (C.identity(p[0]), D.identity(p[1])), contains=contains,
        mor_key=lambda fg: (C.mor_key(fg[0]), D.mor_key(fg[1])), tables=tables)
