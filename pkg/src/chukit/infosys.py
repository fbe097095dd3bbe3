"""Scott information systems over finite token sets.

Tokens are the points of a discrete setoid; token subsets are bitmasks.
An information system carries its consistent sets ``con`` (masks) and its
entailment ``entails`` (pairs (mask, token)). Systems are plain values and
are checked with ``check_info_system``; the other operations assume a
system that passes.
"""

from functools import lru_cache

from .category import (Arrow, CategoryPresentation, FunctorPresentation, compose_functors,
                       verify_functor_laws)
from .chu import chu_universe
from .representations import (FiniteTopology, e_top_space, e_top_transform, mask_members,
                              top_universe, to_mask)
from .setoid import TWO, SetoidFn, discrete, identity
from .verdict import PASS, Verdict


def submasks(mask):
    """Every submask of ``mask``, smallest first."""
    out = [0]
    m = mask
    sub = m
    while sub:
        out.append(sub)
        sub = (sub - 1) & m
    return sorted(out)


class InfoSystem:
    __slots__ = ("tokens", "con", "entails", "_hash", "_below")

    def __init__(self, tokens, con, entails):
        if isinstance(tokens, int):
            tokens = discrete(tokens)
        if not tokens.is_discrete:
            raise ValueError("tokens must form a discrete setoid")
        self.tokens = tokens
        self.con = frozenset(to_mask(A) for A in con)
        self.entails = frozenset((to_mask(A), a) for A, a in entails)
        self._hash = hash((tokens, self.con, self.entails))
        self._below = {}

    @property
    def size(self):
        return self.tokens.size

    @property
    def full(self):
        return (1 << self.tokens.size) - 1

    def consistent(self, mask):
        return mask in self.con

    def consistent_below(self, mask):
        """Consistent subsets of ``mask``."""
        r = self._below.get(mask)
        if r is None:
            r = self._below[mask] = tuple(B for B in submasks(mask) if B in self.con)
        return r

    def entail(self, mask, a):
        return (mask, a) in self.entails

    def entails_all(self, A, B):
        """A entails every token of B."""
        return all((A, b) in self.entails for b in mask_members(B))

    def closure(self, A):
        """Tokens entailed by A, iterated until nothing new appears."""
        cur = to_mask(A)
        while True:
            nxt = cur
            if cur in self.con:
                for a in self.tokens:
                    if (cur, a) in self.entails:
                        nxt |= 1 << a
            if nxt == cur:
                return cur
            cur = nxt

    def named(self, mask):
        return tuple(self.tokens.label(i) for i in mask_members(mask))

    def __eq__(self, other):
        if not isinstance(other, InfoSystem):
            return NotImplemented
        return (self.tokens == other.tokens and self.con == other.con
                and self.entails == other.entails)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return InfoSystem, (self.tokens, self.con, self.entails)

    def __repr__(self):
        con = sorted(self.named(A) for A in self.con)
        ent = sorted((self.named(A), self.tokens.label(a)) for A, a in self.entails)
        return f"InfoSystem({self.size}, con={con}, entails={ent})"


def check_info_system(sys):
    """The first failing axiom, with a witness, or PASS."""
    n, full = sys.size, sys.full
    for A in sys.con:
        if A & ~full:
            return Verdict.fail("consistent set mentions a missing token", (sys.named(A),))
    for A, a in sys.entails:
        if A & ~full or not 0 <= a < n:
            return Verdict.fail("entailment mentions a missing token", (A, a))
    if 0 not in sys.con:
        return Verdict.fail("empty set is not consistent")
    for A in sorted(sys.con):
        for B in submasks(A):
            if B not in sys.con:
                return Verdict.fail("consistent sets are not closed under subsets",
                                    (sys.named(A), sys.named(B)))
    for a in range(n):
        if 1 << a not in sys.con:
            return Verdict.fail("singleton is not consistent", (sys.tokens.label(a),))
    for A, a in sorted(sys.entails):
        if A not in sys.con:
            return Verdict.fail("entailment from an inconsistent set", (sys.named(A), a))
        if A | 1 << a not in sys.con:
            return Verdict.fail("entailed token is not consistent with its premise",
                                (sys.named(A), sys.tokens.label(a)))
    for A in sorted(sys.con):
        for a in mask_members(A):
            if (A, a) not in sys.entails:
                return Verdict.fail("reflexivity", (sys.named(A), sys.tokens.label(a)))
    for A in sorted(sys.con):
        for B in sorted(sys.con):
            if not sys.entails_all(A, B):
                continue
            for c in range(n):
                if (B, c) in sys.entails and (A, c) not in sys.entails:
                    return Verdict.fail("cut", (sys.named(A), sys.named(B), sys.tokens.label(c)))
    return PASS


def is_ideal(sys, J):
    """Every finite subset consistent, closed under entailment."""
    if J not in sys.con:
        return False
    for A in submasks(J):
        for a in range(sys.size):
            if (A, a) in sys.entails and not J >> a & 1:
                return False
    return True


@lru_cache(maxsize=None)
def ideal_masks(sys):
    return tuple(J for J in range(sys.full + 1) if is_ideal(sys, J))


class IdealSet:
    """The ideals of a system in bitmask order, and their setoid."""
    __slots__ = ("system", "ideals", "setoid", "index")

    def __init__(self, sys):
        self.system = sys
        self.ideals = ideal_masks(sys)
        self.setoid = discrete(len(self.ideals), [sys.named(J) for J in self.ideals])
        self.index = {J: k for k, J in enumerate(self.ideals)}

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)


@lru_cache(maxsize=None)
def ideals(sys):
    return IdealSet(sys)


def scott_base(sys):
    """(A, O_A) for each consistent A, with O_A a mask over ideal positions."""
    I = ideals(sys)
    out = []
    for A in sorted(sys.con):
        O = sum(1 << k for k, J in enumerate(I.ideals) if J & A == A)
        out.append((A, O))
    return out


@lru_cache(maxsize=None)
def scott_topology(sys):
    """The topology on the ideals generated by the Scott base."""
    I = ideals(sys)
    opens = {0, (1 << len(I)) - 1}
    base = {O for _, O in scott_base(sys)}
    frontier = set(base)
    while frontier:
        new = set()
        for u in frontier:
            for v in base:
                new.add(u & v)
        new -= base
        base |= new
        frontier = new
    opens |= base
    changed = True
    while changed:
        changed = False
        for u in list(opens):
            for v in list(opens):
                if u | v not in opens:
                    opens.add(u | v)
                    changed = True
    return FiniteTopology(I.setoid, opens)


class ApproximableMapping:
    """A relation between consistent sets of ``src`` and tokens of ``dst``,
    stored as the mask of tokens related to each premise."""
    __slots__ = ("src", "dst", "images", "_hash")

    def __init__(self, src, dst, rel):
        images = {}
        for A, b in rel:
            A = to_mask(A)
            images[A] = images.get(A, 0) | 1 << b
        self._set(src, dst, images)

    @classmethod
    def from_images(cls, src, dst, images):
        self = object.__new__(cls)
        self._set(src, dst, {A: m for A, m in images.items() if m})
        return self

    def _set(self, src, dst, images):
        self.src = src
        self.dst = dst
        self.images = images
        self._hash = hash((src, dst, frozenset(images.items())))

    @property
    def rel(self):
        return frozenset((A, b) for A, m in self.images.items() for b in mask_members(m))

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.dst

    def image(self, A):
        """Tokens related to A, as a mask."""
        return self.images.get(A, 0)

    def __eq__(self, other):
        if not isinstance(other, ApproximableMapping):
            return NotImplemented
        return (self._hash == other._hash and self.images == other.images
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return ApproximableMapping, (self.src, self.dst, self.rel)

    def __repr__(self):
        pairs = sorted((self.src.named(A), self.dst.tokens.label(b)) for A, b in self.rel)
        return f"ApproximableMapping({pairs})"


def check_approximable(r):
    X, Y = r.src, r.dst
    for A, m in r.images.items():
        if A not in X.con or m & ~Y.full:
            return Verdict.fail("relation leaves Con x tokens", (A, m))
    for A in sorted(X.con):
        out = r.image(A)
        if out not in Y.con:
            return Verdict.fail("related tokens are not consistent", (X.named(A), Y.named(out)))
        for B in submasks(out):
            if B not in Y.con:
                continue
            for c in range(Y.size):
                if (B, c) in Y.entails and not out >> c & 1:
                    return Verdict.fail("not closed under target entailment",
                                        (X.named(A), Y.named(B), Y.tokens.label(c)))
        for A2 in sorted(X.con):
            if X.entails_all(A2, A) and out & ~r.image(A2):
                return Verdict.fail("a stronger premise loses a conclusion",
                                    (X.named(A), X.named(A2)))
    return PASS


def identity_mapping(sys):
    """Entailment itself."""
    return ApproximableMapping(sys, sys, sys.entails)


def approx_compose(s, r):
    """A (s . r) z iff A r B and B s z for some consistent B."""
    if r.dst != s.src:
        raise ValueError("mappings do not compose")
    below = r.dst.consistent_below
    rimg, simg = r.images, s.images
    images = {}
    for A in r.src.con:
        z = 0
        for B in below(rimg.get(A, 0)):
            z |= simg.get(B, 0)
        images[A] = z
    return ApproximableMapping.from_images(r.src, s.dst, images)


def realize(r):
    """|r|(J) = tokens y with J' r y for some finite J' inside J."""
    IX, IY = ideals(r.src), ideals(r.dst)
    table = []
    for J in IX.ideals:
        out = 0
        for J2 in submasks(J):
            out |= r.image(J2)
        if out not in IY.index:
            raise ValueError(f"image {r.dst.named(out)} is not an ideal")
        table.append(IY.index[out])
    return SetoidFn(IX.setoid, IY.setoid, table)


def mapping_of(f, src, dst):
    """r_f: A r_f y iff y lies in f of the closure of A."""
    IX, IY = ideals(src), ideals(dst)
    rel = []
    for A in src.con:
        img = IY.ideals[f.table[IX.index[src.closure(A)]]]
        rel.extend((A, y) for y in mask_members(img))
    return ApproximableMapping(src, dst, rel)


def all_relations(src, dst):
    """Every approximable mapping, by filtering every relation."""
    pairs = [(A, b) for A in sorted(src.con) for b in range(dst.size)]
    out = []
    for bits in range(1 << len(pairs)):
        r = ApproximableMapping(src, dst, [p for k, p in enumerate(pairs) if bits >> k & 1])
        if check_approximable(r):
            out.append(r)
    return out


def approximable_mappings(src, dst):
    """Every approximable mapping src -> dst.

    Each A is sent to the tokens it relates to, which must be an ideal of
    dst, and premises that entail A must reach at least as far. Candidates
    are assigned in that order with pruning, then checked in full.
    """
    cons = sorted(src.con)
    targets = ideal_masks(dst)
    above = [[j for j in range(len(cons)) if src.entails_all(cons[j], cons[i])]
             for i in range(len(cons))]
    out = []
    choice = [0] * len(cons)

    def extend(i):
        if i == len(cons):
            rel = [(cons[k], b) for k in range(len(cons)) for b in mask_members(choice[k])]
            r = ApproximableMapping(src, dst, rel)
            if check_approximable(r):
                out.append(r)
            return
        for T in targets:
            if all(choice[k] & T == choice[k] for k in range(i) if i in above[k]) and \
                    all(T & choice[k] == T for k in above[i] if k < i):
                choice[i] = T
                extend(i + 1)

    extend(0)
    return out


def all_info_systems(n):
    """Every valid system on n unlabelled tokens, by exhaustive filtering.
    Practical for n <= 2."""
    tokens = discrete(n)
    full = (1 << n) - 1
    required = {0} | {1 << a for a in range(n)}
    optional = [m for m in range(full + 1) if m not in required]
    out = []
    for bits in range(1 << len(optional)):
        con = required | {m for k, m in enumerate(optional) if bits >> k & 1}
        if any(B not in con for A in con for B in submasks(A)):
            continue
        refl = {(A, a) for A in con for a in mask_members(A)}
        extra = [(A, a) for A in sorted(con) for a in range(n) if (A, a) not in refl]
        for ebits in range(1 << len(extra)):
            ent = refl | {p for k, p in enumerate(extra) if ebits >> k & 1}
            sys = InfoSystem(tokens, con, ent)
            if check_info_system(sys):
                out.append(sys)
    return out


def info_system(n, con=None, entails=(), labels=None):
    """A system from its non-trivial data: ``con`` lists the consistent sets
    (default: every subset), ``entails`` the entailments beyond reflexivity.
    Entailments are closed under weakening and cut."""
    tokens = discrete(n, labels)
    full = (1 << n) - 1
    con = set(range(full + 1)) if con is None else {to_mask(A) for A in con}
    for A in list(con):
        con.update(submasks(A))
    con |= {0} | {1 << a for a in range(n)}
    base = {(to_mask(A), a) for A, a in entails}
    ent = set()
    for A in con:
        cur = A
        while True:
            nxt = cur
            for B, b in base:
                if B & cur == B:
                    nxt |= 1 << b
            if nxt == cur:
                break
            cur = nxt
        ent.update((A, a) for a in mask_members(cur))
    return InfoSystem(tokens, con, ent)


def spot_systems():
    """Three-token systems small enough for the exhaustive universe: a
    chain, a fork, a join, pairwise inconsistency and a two-token premise."""
    return (
        info_system(3, entails=[((0,), 1), ((1,), 2)]),
        info_system(3, con=[(0, 1), (0, 2)], entails=[((1,), 0)]),
        info_system(3, con=[(0, 1), (1, 2)], entails=[((0,), 1), ((2,), 1)]),
        info_system(3, con=[(0,), (1,), (2,)]),
        info_system(3, entails=[((0, 1), 2), ((2,), 0)]),
    )


def large_spot_systems():
    """Three-token systems with thousands of endomorphisms."""
    return (info_system(3), info_system(3, entails=[((0, 1), 2)]))


def inf_category(systems):
    return CategoryPresentation(
        "Inf", tuple(systems), approximable_mappings, approx_compose, identity_mapping,
        contains=lambda a, b, r: (isinstance(r, ApproximableMapping) and r.src == a
                                  and r.dst == b and bool(check_approximable(r))))


def inf_fragment(max_tokens=2, spot=False):
    """Every system on at most ``max_tokens`` tokens, plus the three-token
    spot systems when asked."""
    systems = [s for n in range(max_tokens + 1) for s in all_info_systems(n)]
    if spot:
        systems.extend(spot_systems())
    return inf_category(systems)


def s_functor(category=None):
    """Ideals with the Scott topology; r goes to |r|."""
    category = category or inf_fragment()
    return FunctorPresentation(
        "S", category, top_universe(), scott_topology,
        lambda r: Arrow(realize(r), scott_topology(r.src), scott_topology(r.dst)))


def inf_chu_representation(category=None):
    S = s_functor(category)
    E = FunctorPresentation("E[Top]", top_universe(), chu_universe(TWO), e_top_space,
                            e_top_transform)
    return compose_functors(E, S, "E[Top].S")


def check_reconstruction(C):
    """r = r_{|r|} for every mapping, and |r_g| = g for every continuous g
    between ideal spaces."""
    T = top_universe()
    for a in C.objects:
        for b in C.objects:
            for r in C.hom(a, b):
                if mapping_of(realize(r), a, b) != r:
                    return Verdict.fail("r differs from r_|r|", (a, b, r))
            for g in T.hom(scott_topology(a), scott_topology(b)):
                if realize(mapping_of(g.map, a, b)) != g.map:
                    return Verdict.fail("|r_g| differs from g", (a, b, g))
    return PASS


def check_realization(C, table=None):
    """|identity| = id, |r| lands in ideals, and |s . r| = |s| . |r| (the
    last through the functor laws of S)."""
    for a in C.objects:
        if realize(identity_mapping(a)) != identity(ideals(a).setoid):
            return Verdict.fail("identity realizes to a non-identity", (a,))
    for a, b, r in C.arrows():
        try:
            realize(r)
        except ValueError as exc:
            return Verdict.fail(str(exc), (r,))
    return verify_functor_laws(s_functor(C), table)
