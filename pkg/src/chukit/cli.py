"""Command line harness: load structure documents, run verification suites,
enumerate hom-sets and ideals.

    chukit verify --suite chu-laws --max-size 2 --report json
    chukit enumerate --kind transforms --input doc.json --src A --dst B
    chukit check --what transform --input doc.json
"""

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import chu, generalized as gen, grothendieck as groth, infosys, representations as rep
from .category import (finsetoid_cartesian, is_embedding, is_full,
                       is_full_embedding, is_injective_on_arrows, is_injective_on_objects,
                       is_strict_representation, verify_category_laws, verify_functor_laws)
from .setoid import (ONE, THREE, TWO, Apartness, SetoidError, SetoidFn, all_maps, all_setoids,
                     check_apartness, curry, denial, discrete, is_injection, product,
                     setoid_from_relation, subset_of, uncurry)
from .verdict import PASS, Verdict

# Structure documents


class LoadError(Exception):
    """A document that does not parse or type-check; ``where`` is a dotted
    path into the document."""

    def __init__(self, message, where="", witness=None):
        super().__init__(message)
        self.where = where
        self.witness = witness

    def __str__(self):
        text = f"{self.where}: {self.args[0]}" if self.where else self.args[0]
        return text if self.witness is None else f"{text} at {self.witness}"


SECTIONS = ("setoids", "apartness", "maps", "topologies", "chu_spaces", "transforms",
            "info_systems", "endofunctors", "predicates", "complemented")


class Registry:
    """Everything a document declares, by section and name. Semantic
    properties (topology axioms, adjointness, ...) are left to the checks;
    loading only enforces shapes, ranges and extensionality."""

    def __init__(self):
        for s in SECTIONS:
            setattr(self, s, {})

    def __len__(self):
        return sum(len(getattr(self, s)) for s in SECTIONS)


class RawTransform:
    def __init__(self, src, dst, fwd, bwd):
        self.src, self.dst, self.fwd, self.bwd = src, dst, fwd, bwd


class RawComplemented:
    def __init__(self, apartness, one, zero):
        self.apartness, self.one, self.zero = apartness, one, zero


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise LoadError(f"not JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None
    except OSError as e:
        raise LoadError(f"cannot read: {e.strerror}", str(path)) from None
    return load_document(doc)


def load_document(doc):
    if not isinstance(doc, dict):
        raise LoadError("a document is a JSON object")
    unknown = sorted(set(doc) - set(SECTIONS))
    if unknown:
        raise LoadError("unknown section", unknown[0])
    reg = Registry()
    for section in SECTIONS:
        entries = doc.get(section, {})
        if not isinstance(entries, dict):
            raise LoadError("a section maps names to declarations", section)
        for name, spec in entries.items():
            where = f"{section}.{name}"
            if not isinstance(spec, dict):
                raise LoadError("a declaration is a JSON object", where)
            try:
                getattr(reg, section)[name] = _LOADERS[section](reg, spec, where)
            except SetoidError as e:
                raise LoadError(str(e), where, e.witness) from None
            except (KeyError, TypeError, ValueError) as e:
                raise LoadError(f"malformed declaration ({e})", where) from None
    return reg


def _ref(reg, section, name, where):
    table = getattr(reg, section)
    if name not in table:
        raise LoadError(f"unknown {section} reference {name!r}", where)
    return table[name]


def _pairs(value, where):
    if not all(isinstance(p, list) and len(p) == 2 for p in value):
        raise LoadError("expected a list of index pairs", where)
    return [tuple(p) for p in value]


def _load_setoid(reg, spec, where):
    n = spec["size"]
    if "eq" not in spec:
        return discrete(n, spec.get("labels"))
    related = _pairs(spec["eq"], f"{where}.eq") + [(x, x) for x in range(n)]
    try:
        return setoid_from_relation(n, related, spec.get("labels"))
    except SetoidError as e:
        raise LoadError(str(e), f"{where}.eq", e.witness) from None


def _load_apartness(reg, spec, where):
    X = _ref(reg, "setoids", spec["setoid"], where)
    if spec.get("denial"):
        return denial(X)
    return Apartness(X, _pairs(spec["pairs"], f"{where}.pairs"))


def _load_map(reg, spec, where):
    dom = _ref(reg, "setoids", spec["dom"], where)
    cod = _ref(reg, "setoids", spec["cod"], where)
    return SetoidFn(dom, cod, spec["table"])


def _load_topology(reg, spec, where):
    X = _ref(reg, "setoids", spec["points"], where)
    for k, u in enumerate(spec["opens"]):
        if any(not 0 <= p < X.size for p in u):
            raise LoadError("point out of range", f"{where}.opens[{k}]")
    return X, [rep.to_mask(u) for u in spec["opens"]]


def _load_chu_space(reg, spec, where):
    value = _ref(reg, "setoids", spec["value"], where)
    left = _ref(reg, "setoids", spec["left"], where)
    right = _ref(reg, "setoids", spec["right"], where)
    rows = spec["rows"]
    if len(rows) != left.size or any(len(r) != right.size for r in rows):
        raise LoadError("rows do not match the carriers", f"{where}.rows")
    return chu.ChuSpace.from_rows(value, left, right, rows)


def _load_transform(reg, spec, where):
    src = _ref(reg, "chu_spaces", spec["src"], where)
    dst = _ref(reg, "chu_spaces", spec["dst"], where)
    try:
        fwd = SetoidFn(src.left, dst.left, spec["fwd"])
    except SetoidError as e:
        raise LoadError(str(e), f"{where}.fwd", e.witness) from None
    try:
        bwd = SetoidFn(dst.right, src.right, spec["bwd"])
    except SetoidError as e:
        raise LoadError(str(e), f"{where}.bwd", e.witness) from None
    return RawTransform(src, dst, fwd, bwd)


def _load_info_system(reg, spec, where):
    """``con`` lists consistent sets beyond the empty set and singletons;
    ``entails`` lists [premise, token] beyond reflexivity."""
    n = spec["tokens"]
    con = {0} | {1 << a for a in range(n)} | {rep.to_mask(A) for A in spec.get("con", [])}
    ent = {(A, a) for A in con for a in rep.mask_members(A)}
    for k, e in enumerate(spec.get("entails", [])):
        if not (isinstance(e, list) and len(e) == 2 and isinstance(e[0], list)):
            raise LoadError("an entailment is [premise, token]", f"{where}.entails[{k}]")
        ent.add((rep.to_mask(e[0]), e[1]))
    return infosys.InfoSystem(discrete(n, spec.get("labels")), con, ent)


def _load_endofunctor(reg, spec, where):
    if "composite" in spec:
        G, F = (_ref(reg, "endofunctors", n, where) for n in spec["composite"])
        return groth.compose_endofunctors(G, F)
    kind = spec["builtin"]
    if kind == "identity":
        return gen.IDENTITY
    if kind == "square":
        return gen.SQUARE
    if kind == "constant":
        return gen.constant_functor(_ref(reg, "setoids", spec["value"], where))
    raise LoadError(f"unknown builtin endofunctor {kind!r}", where)


def _load_predicate(reg, spec, where):
    X = _ref(reg, "setoids", spec["setoid"], where)
    members = spec["members"]
    if any(not 0 <= x < X.size for x in members):
        raise LoadError("member out of range", f"{where}.members")
    return X, members


def _load_complemented(reg, spec, where):
    ax = _ref(reg, "apartness", spec["apartness"], where)
    for part in ("one", "zero"):
        if any(not 0 <= x < ax.base.size for x in spec[part]):
            raise LoadError("member out of range", f"{where}.{part}")
    return RawComplemented(ax, subset_of(ax.base, spec["one"]), subset_of(ax.base, spec["zero"]))


_LOADERS = {
    "setoids": _load_setoid, "apartness": _load_apartness, "maps": _load_map,
    "topologies": _load_topology, "chu_spaces": _load_chu_space, "transforms": _load_transform,
    "info_systems": _load_info_system, "endofunctors": _load_endofunctor,
    "predicates": _load_predicate, "complemented": _load_complemented,
}


# Checks on declared structures. Each returns a Verdict whose witness
# replays through the named core operation.


def check_declared_apartness(ax):
    return check_apartness(ax)


def check_declared_topology(decl):
    X, opens = decl
    v = rep.is_topology(X, opens)
    if not v:
        return v
    T = rep.FiniteTopology(X, opens)
    sep = chu.classify(rep.e_top_space(T)).separable
    if sep != T.is_t0():
        return Verdict.fail("separability of the membership space disagrees with T0",
                            {"separable": sep, "t0": T.is_t0()})
    return PASS


def check_declared_transform(t):
    return chu.is_chu_transform(t.fwd, t.bwd, t.src, t.dst)


def check_declared_predicate(decl):
    X, members = decl
    mask = rep.to_mask(members)
    if not rep.is_eq_closed(X, mask):
        bad = next(x for x in X if (mask >> x & 1) != (mask >> X.rep[x] & 1))
        return Verdict.fail("members are not closed under equality", (bad, X.rep[bad]))
    return PASS


def check_declared_complemented(c):
    for p in c.one.sub:
        for q in c.zero.sub:
            x, y = c.one.inj.table[p], c.zero.inj.table[q]
            if not c.apartness.apart(x, y):
                return Verdict.fail("components are not apart", (x, y))
    return PASS


DOCUMENT_CHECKS = {
    # kind: (section, checker, citation, suites that include it)
    "apartness": ("apartness", check_declared_apartness,
                  "declared inequality is an apartness: irreflexive, symmetric, cotransitive "
                  "and extensional",
                  ("compl-repr", "predneq-repr")),
    "topology": ("topologies", check_declared_topology,
                 "declared opens form a topology whose membership Chu space is separable "
                 "exactly when it is T0",
                 ("top-repr",)),
    "transform": ("transforms", check_declared_transform,
                  "declared pair satisfies the adjointness condition f(a, bwd d) = g(fwd a, d)",
                  ("chu-laws",)),
    "infosystem": ("info_systems", infosys.check_info_system,
                   "declared consistency and entailment satisfy the information system axioms",
                   ("inf-repr",)),
    "endofunctor": ("endofunctors", gen.verify_endofunctor,
                    "declared endofunctor preserves identities and composition on setoids of "
                    "size at most 2",
                    ("genchu-laws",)),
    "predicate": ("predicates", check_declared_predicate,
                  "declared predicate is an extensional subset",
                  ("subsets-repr", "pred-repr")),
    "complemented": ("complemented", check_declared_complemented,
                     "declared complemented subset has apart components",
                     ("compl-repr", "predneq-repr")),
}


def document_checks(reg, suite=None, kinds=None):
    out = []
    for kind, (section, fn, citation, suites) in DOCUMENT_CHECKS.items():
        if kinds is not None and kind not in kinds:
            continue
        if suite not in (None, "all") and suite not in suites:
            continue
        for name, decl in getattr(reg, section).items():
            out.append(Check(f"document/{kind}/{name}", citation,
                             lambda cap, seed, fn=fn, decl=decl: fn(decl)))
    return out


# Suites


class Check:
    def __init__(self, id, citation, run):
        self.id = id
        self.citation = citation
        self.run = run


def _first_failure(results):
    """The first failing verdict of (label, verdict) pairs, with the label
    prefixed to its witness; PASS when all pass."""
    for label, v in results:
        if not v:
            return Verdict.fail(f"{label}: {v.reason}", v.witness)
    return PASS


def _count(C):
    return {"objects": len(C.objects), "arrows": sum(1 for _ in C.arrows())}


def _strict(F):
    return _first_failure([("laws", verify_functor_laws(F)),
                           ("strict", is_strict_representation(F))])


# chu-laws

def chu_category_laws(cap, seed):
    C = chu.chu_category(TWO, max_size=min(cap, 2))
    return verify_category_laws(C), _count(C)


def chu_sampled_composition(cap, seed, trials=12):
    """Random spaces with carriers of size cap + 1 (at most 3): every
    composite of enumerated transforms is enumerated."""
    rng = np.random.default_rng(seed)
    carriers = [s for s in all_setoids(min(cap + 1, 3)) if s.size]
    pairs = 0
    for _ in range(trials):
        spaces = []
        for _ in range(3):
            a, b = (carriers[k] for k in rng.integers(len(carriers), size=2))
            rows = rng.integers(2, size=(a.size, b.size))
            rows = [[int(rows[a.rep[x], b.rep[y]]) for y in b] for x in a]
            spaces.append(chu.ChuSpace.from_rows(TWO, a, b, rows))
        s, t, u = spaces
        first, second = chu.chu_enumerate_hom(s, t), chu.chu_enumerate_hom(t, u)
        allowed = set(chu.chu_enumerate_hom(s, u))
        for f in first:
            for g in second:
                pairs += 1
                if chu.chu_compose(g, f) not in allowed:
                    return Verdict.fail("composite is not a transform", (s, t, u, f, g)), {}
    return PASS, {"pairs": pairs}


def ccc_strict(cap, seed):
    results = []
    for gamma in (ONE, TWO):
        results.append((f"gamma={gamma.size}", _strict(chu.ccc_representation(gamma, min(cap, 2)))))
    return _first_failure(results), {}


def curry_bijection(cap, seed):
    n = 0
    for a in all_setoids(min(cap, 2)):
        for b in all_setoids(min(cap, 2)):
            for gamma in (ONE, TWO):
                maps = all_maps(product(a, b).prod, gamma)
                seen = set()
                for f in maps:
                    n += 1
                    g = curry(f, a, b)
                    if uncurry(g, a, gamma) != f:
                        return Verdict.fail("uncurry does not invert curry", (a, b, f)), {}
                    seen.add(g)
                if len(seen) != len(maps) or len(seen) != len(all_maps(b, chu.exponential(a, gamma).expo)):
                    return Verdict.fail("curry is not a bijection", (a, b, gamma)), {}
    return PASS, {"maps": n}


def aff_strict(cap, seed):
    return _strict(chu.aff_representation(TWO, min(cap, 2))), {}


# local-functor

def local_injections(cap, seed):
    """u_* is a full embedding for every injection u between value setoids
    of size at most 3, on Chu spaces with carriers of size at most 1 for
    three-element values and 2 otherwise."""
    n = 0
    values = [s for s in all_setoids(3) if s.size]
    for gamma in values:
        for delta in values:
            for u in all_maps(gamma, delta):
                if not is_injection(u):
                    continue
                size = min(cap, 2 if max(gamma.size, delta.size) < 3 else 1)
                F = chu.local_pushforward(u, max_size=size)
                v = _first_failure([("laws", verify_functor_laws(F)),
                                    ("full embedding", is_full_embedding(F))])
                n += 1
                if not v:
                    return Verdict.fail(v.reason, (u, v.witness)), {}
    return PASS, {"injections": n}


def local_noninjective(cap, seed):
    """Some non-injective u collapses two spaces; the witness is the pair."""
    u = SetoidFn(TWO, ONE, [0, 0])
    v = is_injective_on_objects(chu.local_pushforward(u, max_size=min(cap, 2)))
    if v:
        return Verdict.fail("expected two spaces with the same image", (u,)), {}
    return PASS, {"u": list(u.table), "collapsed": v.witness}


# global-functor

def global_composition(cap, seed):
    src = chu.chu_category(TWO, max_size=min(cap, 2))
    ms = groth.groth_morphisms(TWO, TWO)
    n = 0
    for g in ms:
        for f in ms:
            n += 1
            v = groth.verify_global_composition(g, f, source=src)
            if not v:
                return Verdict.fail(v.reason, (g, f, v.witness)), {}
    return PASS, {"pairs": n}


def global_product_preserving(cap, seed):
    return _first_failure([(F.name, groth.check_product_preserving(F, min(cap, 2)))
                           for F in groth._product_preserving_functors()]), {}


def global_full_embedding(cap, seed):
    ms = groth.full_embedding_instances(min(cap, 2))
    for m in ms:
        v = groth.star_full_embedding(m, max_size=min(cap, 2))
        if not v:
            return Verdict.fail(v.reason, (m, v.witness)), {}
    return PASS, {"instances": len(ms)}


def global_local_agreement(cap, seed):
    n = 0
    for gamma in (ONE, TWO):
        for delta in (ONE, TWO, THREE):
            for u in all_maps(gamma, delta):
                n += 1
                v = groth.agrees_with_local(u, max_size=min(cap, 2))
                if not v:
                    return Verdict.fail(v.reason, (u, v.witness)), {}
    return PASS, {"maps": n}


# top-repr

def top_strict(cap, seed):
    F = rep.e_top(min(cap, 3))
    return _strict(F), {"topologies": len(F.src.objects)}


def top_t0(cap, seed):
    F = rep.e_top(min(cap, 3))
    for T in F.src.objects:
        if chu.classify(F.obj(T)).separable != T.is_t0():
            return Verdict.fail("separability disagrees with T0", (T,)), {}
    return PASS, {"topologies": len(F.src.objects)}


def top_triangle(cap, seed):
    size = min(cap, 3)
    return rep.verify_triangle(rep.e_top(size), rep.delta(size), rep.e_set(size)), {}


def random_topology(X, rng, generators=3):
    """The topology generated by a few random subsets."""
    base = [int(m) for m in rng.integers(1 << X.size, size=generators)]
    opens = {0, rep.full_mask(X)}
    inter = set(base)
    changed = True
    while changed:
        new = {a & b for a in inter for b in inter} | inter
        changed = new != inter
        inter = new
    opens |= inter
    changed = True
    while changed:
        new = {a | b for a in opens for b in opens} | opens
        changed = new != opens
        opens = new
    return rep.FiniteTopology(X, sorted(opens))


def top_sampled_t0(cap, seed, trials=20):
    rng = np.random.default_rng(seed)
    X = discrete(cap + 1)
    for _ in range(trials):
        T = random_topology(X, rng)
        if chu.classify(rep.e_top_space(T)).separable != T.is_t0():
            return Verdict.fail("separability disagrees with T0", (T,)), {}
    return PASS, {"topologies": trials, "points": X.size}


# inf-repr

def _inf_universe(cap):
    return infosys.inf_fragment(min(cap, 2), spot=cap >= 2)


def inf_realization(cap, seed):
    C = _inf_universe(cap)
    return infosys.check_realization(C), _count(C)


def inf_reconstruction(cap, seed):
    C = _inf_universe(cap)
    results = [("universe", infosys.check_reconstruction(C))]
    if cap >= 2:
        for k, s in enumerate(infosys.large_spot_systems()):
            results.append((f"large spot {k}",
                            infosys.check_reconstruction(infosys.inf_category([s]))))
    return _first_failure(results), {}


def inf_s_full(cap, seed):
    S = infosys.s_functor(_inf_universe(cap))
    return _first_failure([("laws", verify_functor_laws(S)),
                           ("full embedding", is_full_embedding(S))]), {}


def inf_chu_strict(cap, seed):
    return _strict(infosys.inf_chu_representation(_inf_universe(cap))), {}


# subsets-repr

def subsets_strict(cap, seed):
    n = 0
    for X in all_setoids(min(cap, 3)):
        n += 1
        v = _strict(rep.subsets_representation(X))
        if not v:
            return Verdict.fail(v.reason, (X, v.witness)), {}
    return PASS, {"ambients": n}


def sub_strict(cap, seed):
    cart = finsetoid_cartesian(min(cap, 3))
    for gamma in all_setoids(min(cap, 3)):
        v = _strict(rep.sub_representation(cart, gamma))
        if not v:
            return Verdict.fail(v.reason, (gamma, v.witness)), {}
    return PASS, {}


# compl-repr

def compl_apartnesses(cap):
    """Denial on every setoid of size <= cap (at most 3), plus the
    apartness on three points separating {0, 1} from {2}."""
    out = [denial(X) for X in all_setoids(min(cap, 3))]
    if cap >= 3:
        out.append(Apartness(THREE, [(0, 2), (2, 0), (1, 2), (2, 1)]))
    return out


def _compl_sweep(cap, check, inhabited_only=False):
    for ax in compl_apartnesses(cap):
        F = rep.compl_representation(ax, inhabited_only)
        v = check(F)
        if not v:
            return Verdict.fail(v.reason, (ax, v.witness)), {}
    return PASS, {"apartnesses": len(compl_apartnesses(cap))}


def compl_embedding(cap, seed):
    return _compl_sweep(cap, lambda F: _first_failure([("laws", verify_functor_laws(F)),
                                                        ("embedding", is_embedding(F))]))


def compl_strict(cap, seed):
    return _compl_sweep(cap, is_strict_representation)


def compl_strict_inhabited(cap, seed):
    return _compl_sweep(cap, is_strict_representation, inhabited_only=True)


def compl_nonsurjective(cap, seed):
    for ax in compl_apartnesses(cap):
        if ax.base.size == 0:
            continue
        space, reason = rep.image_nonsurjectivity_witness(ax)
        if rep.in_compl_image(space, ax) is not None:
            return Verdict.fail("(X, id, X) is in the image", (ax,)), {}
    return PASS, {}


# genchu-laws

def _closure(functor):
    def run(cap, seed):
        C = gen.genchu_category(functor, max_size=min(cap, 2))
        return gen.verify_pentagon_closure(C), _count(C)
    run.__name__ = f"closure_{functor.name}"
    return run


def genchu_id_laws(cap, seed):
    C = gen.genchu_category(gen.IDENTITY, max_size=min(cap, 2))
    return verify_category_laws(C), _count(C)


def genchu_constant_embedding(cap, seed):
    E = gen.embed_constant(TWO, min(cap, 2))
    return _first_failure([("laws", verify_functor_laws(E)), ("embedding", is_embedding(E))]), {}


def genchu_diagonal(cap, seed):
    P = gen.gen_local_pushforward(gen.diagonal(min(cap, 2)), max_size=min(cap, 2))
    return _first_failure([("laws", verify_functor_laws(P)),
                           ("full embedding", is_full_embedding(P))]), {}


def thm_universe():
    """Coordinate-rearranging morphisms over the identity and the square:
    for each choice of functor, source and target, the first, middle and
    last rearrangement."""
    out = []
    functors = (gen.IDENTITY, gen.SQUARE)
    for F in functors:
        for S in functors:
            for T in functors:
                n = len(groth.coordinates(groth.compose_endofunctors(F, S), ONE))
                m = len(groth.coordinates(groth.compose_endofunctors(T, F), ONE))
                idx = list(itertools.product(range(n), repeat=m))
                for k in sorted({0, len(idx) // 2, len(idx) - 1}):
                    out.append(groth.power_morphism(groth.PPFunctor(F), S, T, idx[k]))
    return out


def genchu_composite(cap, seed):
    """(G.F, theta * eta)_* = G_* . F_* for composable pairs of the sample
    universe, on spaces with anchors and carriers of size <= 2 (carriers
    <= 1 over the square)."""
    ms = thm_universe()
    size = min(cap, 2)
    sources = {gen.IDENTITY: gen.genchu_category(gen.IDENTITY, max_size=size),
               gen.SQUARE: gen.genchu_category(gen.SQUARE, anchors=all_setoids(size),
                                               carriers=all_setoids(min(size, 1)))}
    n = 0
    for eta in ms:
        for theta in ms:
            if eta.target != theta.source:
                continue
            n += 1
            v = groth.verify_gen_composition(theta, eta, source=sources[eta.source])
            if not v:
                return Verdict.fail(v.reason, (theta, eta, v.witness)), {}
    return PASS, {"pairs": n, "morphisms": len(ms)}


def genchu_star_laws(cap, seed):
    ms = thm_universe()
    size = min(cap, 2)
    n = 0
    for m in ms:
        v = groth.verify_gen_naturality(m, size)
        if not v:
            return Verdict.fail(v.reason, (m, v.witness)), {}
        for unit, other in ((groth.gen_groth_identity(m.target), m),
                            (m, groth.gen_groth_identity(m.source))):
            v = groth.same_components(groth.star_product(unit, other), m, size)
            if not v:
                return Verdict.fail("unit law", (m, v.witness)), {}
    for a in ms:
        for b in ms:
            if a.target != b.source:
                continue
            for c in ms:
                if b.target != c.source:
                    continue
                n += 1
                left = groth.star_product(c, groth.star_product(b, a))
                right = groth.star_product(groth.star_product(c, b), a)
                v = groth.same_components(left, right, size)
                if not v:
                    return Verdict.fail("associativity", (a, b, c, v.witness)), {}
    return PASS, {"triples": n}


# pred-repr

def pred_strict(cap, seed):
    R = gen.pred_representation(min(cap, 2))
    return _first_failure([("strict", _strict(R)),
                           ("triangle", gen.pred_triangle(min(cap, 2))),
                           ("derived", gen.check_pred_derived(R.src))]), _count(R.src)


def predc_strict(cap, seed):
    cart = finsetoid_cartesian(min(cap, 2))
    R = gen.predc_representation(cart)
    return _first_failure([("strict", _strict(R)),
                           ("agrees with Pred", gen.predc_agrees_with_pred(cart, min(cap, 2)))]), {}


# predneq-repr

def predneq_embedding(cap, seed):
    R = gen.compl_pred_representation(max_size=min(cap, 2))
    return _first_failure([("laws", verify_functor_laws(R)), ("embedding", is_embedding(R)),
                           ("derived", gen.check_compl_pred_derived(R.src))]), _count(R.src)


def predneq_strict(cap, seed):
    R = gen.compl_pred_representation(max_size=min(cap, 2))
    return _first_failure([("full", is_full(R)), ("injective", is_injective_on_arrows(R))]), {}


def predneq_strict_inhabited(cap, seed):
    R = gen.compl_pred_representation(max_size=min(cap, 2), inhabited_only=True)
    return _strict(R), _count(R.src)


# groth-identification

def groth_hom_pairing(cap, seed):
    return _first_failure([(f"gamma={g.size}",
                            verify_functor_laws(groth.hom_pairing_functor(g, min(cap, 2))))
                           for g in (ONE, TWO, THREE)]), {}


def groth_antipar(cap, seed):
    C = groth.antipar_category(groth.hom_pairing_functor(TWO, min(cap, 2)),
                               all_setoids(min(cap, 2)))
    return verify_category_laws(C), _count(C)


def groth_iso(cap, seed):
    return groth.chu_groth_identification(TWO, min(cap, 2))


def groth_sigma(cap, seed):
    _, v = groth.sigma_hom_embedding(max_size=min(cap, 2))
    return v, {}


# fibred

def fibred_total(cap, seed):
    return groth.fibred_chu(TWO, min(cap, 2))


SUITES = {
    "chu-laws": [
        Check("chu-laws/category", "Chu spaces over 2 with their transforms satisfy the "
              "category laws; composites are again transforms", chu_category_laws),
        Check("chu-laws/sampled", "composites of transforms between random spaces are "
              "transforms (seeded)", chu_sampled_composition),
        Check("chu-laws/ccc", "evaluation spaces give a strict representation of finite "
              "setoids for gamma 1 and 2", ccc_strict),
        Check("chu-laws/curry", "curry and uncurry are inverse bijections on Hom(a x b, gamma)",
              curry_bijection),
        Check("chu-laws/aff", "affine families give a strict representation", aff_strict),
    ],
    "local-functor": [
        Check("local-functor/injective", "pushforward along an injection of values is a full "
              "embedding", local_injections),
        Check("local-functor/non-injective", "pushforward along a non-injective map is not "
              "injective on objects", local_noninjective),
    ],
    "global-functor": [
        Check("global-functor/composition", "pushforward along a composite is the composite of "
              "the pushforwards, with the composite canonical isomorphism", global_composition),
        Check("global-functor/product-preserving", "canonical maps F a x F b -> F(a x b) are "
              "natural isomorphisms", global_product_preserving),
        Check("global-functor/full-embedding", "a full embedding with a mono on values pushes "
              "forward to a full embedding", global_full_embedding),
        Check("global-functor/local", "pushforward along (Id, u) is the local pushforward along "
              "u", global_local_agreement),
    ],
    "top-repr": [
        Check("top-repr/strict", "membership spaces give a strict representation of finite "
              "topologies", top_strict),
        Check("top-repr/t0", "a membership space is separable exactly when the topology is T0",
              top_t0),
        Check("top-repr/triangle", "the representation of sets factors through discrete "
              "topologies", top_triangle),
        Check("top-repr/sampled-t0", "separability agrees with T0 on random topologies "
              "(seeded)", top_sampled_t0),
    ],
    "inf-repr": [
        Check("inf-repr/realization", "realization preserves identities and composition",
              inf_realization),
        Check("inf-repr/reconstruction", "a mapping is recovered from its realization, and a "
              "continuous map from its mapping", inf_reconstruction),
        Check("inf-repr/scott-full", "ideal spaces with the Scott topology form a full "
              "embedding into topologies", inf_s_full),
        Check("inf-repr/chu-strict", "membership spaces of ideal spaces give a strict "
              "representation", inf_chu_strict),
    ],
    "subsets-repr": [
        Check("subsets-repr/subsets", "subsets with inclusions have a strict representation",
              subsets_strict),
        Check("subsets-repr/monos", "monos into gamma have a strict representation",
              sub_strict),
    ],
    "compl-repr": [
        Check("compl-repr/embedding", "complemented subsets embed into Chu(X x X)",
              compl_embedding),
        Check("compl-repr/strict", "complemented subsets have a strict representation",
              compl_strict),
        Check("compl-repr/strict-inhabited", "complemented subsets with inhabited components "
              "have a strict representation", compl_strict_inhabited),
        Check("compl-repr/non-surjective", "(X, id, X) is not the image of a complemented "
              "subset", compl_nonsurjective),
    ],
    "aff-repr": [
        Check("aff-repr/strict", "affine families give a strict representation", aff_strict),
    ],
    "genchu-laws": [
        Check("genchu-laws/closure-identity", "pentagon transforms are closed under "
              "composition over the identity", _closure(gen.IDENTITY)),
        Check("genchu-laws/closure-square", "pentagon transforms are closed under "
              "composition over the square", _closure(gen.SQUARE)),
        Check("genchu-laws/closure-constant", "pentagon transforms are closed under "
              "composition over the constant functor at 2", _closure(gen.constant_functor(TWO))),
        Check("genchu-laws/identity-category", "spaces over the identity form a category",
              genchu_id_laws),
        Check("genchu-laws/constant-embedding", "Chu spaces over 2 embed as spaces over the "
              "constant functor", genchu_constant_embedding),
        Check("genchu-laws/diagonal", "pushforward along the componentwise injective diagonal "
              "is a full embedding", genchu_diagonal),
        Check("genchu-laws/composite", "pushforward along a pasted composite is the composite "
              "of pushforwards", genchu_composite),
        Check("genchu-laws/star", "pasting is natural, unital and associative",
              genchu_star_laws),
    ],
    "pred-repr": [
        Check("pred-repr/strict", "predicates give a strict representation over the identity, "
              "commuting with the representation of sets", pred_strict),
        Check("pred-repr/cartesian", "the representation over monos agrees with predicates",
              predc_strict),
    ],
    "predneq-repr": [
        Check("predneq-repr/embedding", "complemented predicates embed over the square, with "
              "strongly extensional components", predneq_embedding),
        Check("predneq-repr/strict", "complemented predicates have a strict representation",
              predneq_strict),
        Check("predneq-repr/strict-inhabited", "complemented predicates with inhabited "
              "components have a strict representation", predneq_strict_inhabited),
    ],
    "groth-identification": [
        Check("groth-identification/hom-pairing", "Hom(_ x _, gamma) is a functor, "
              "contravariant in both places", groth_hom_pairing),
        Check("groth-identification/antiparallel", "the antiparallel Grothendieck category "
              "satisfies the category laws", groth_antipar),
        Check("groth-identification/chu", "Chu(2) is isomorphic to the antiparallel "
              "Grothendieck category of Hom(_ x _, 2)", groth_iso),
        Check("groth-identification/sigma", "gamma -> Hom(_ x _, gamma) is an embedding into "
              "functors", groth_sigma),
    ],
    "fibred": [
        Check("fibred/total", "the total category of x -> Chu_x is isomorphic to Chu(2)",
              fibred_total),
    ],
}


def suite_checks(name):
    if name == "all":
        seen = {}
        for checks in SUITES.values():
            for c in checks:
                seen.setdefault(c.id, c)
        return list(seen.values())
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return list(SUITES[name])


def _find_check(check_id):
    for checks in SUITES.values():
        for c in checks:
            if c.id == check_id:
                return c
    raise KeyError(check_id)


def run_check(check, cap, seed):
    try:
        out = check.run(cap, seed)
    except Exception as e:  # a crashing check is a failing check
        return {"id": check.id, "citation": check.citation, "status": "fail",
                "witness": {"error": type(e).__name__, "message": str(e)}}
    v, counts = out if isinstance(out, tuple) else (out, {})
    entry = {"id": check.id, "citation": check.citation, "status": "pass" if v else "fail"}
    if not v:
        entry["reason"] = v.reason
        entry["witness"] = jsonable(v.witness)
    if counts:
        entry["instances"] = jsonable(counts)
    return entry


def _run_by_id(args):
    check_id, cap, seed = args
    return run_check(_find_check(check_id), cap, seed)


def run_suite(name, cap=3, seed=0, registry=None, jobs=1, timing=False):
    """Run every check of the suite (and of the document, if given);
    checks are emitted sorted by id."""
    start = time.perf_counter()
    checks = suite_checks(name)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            entries = list(pool.map(_run_by_id, [(c.id, cap, seed) for c in checks]))
    else:
        entries = [run_check(c, cap, seed) for c in checks]
    if registry is not None:
        entries += [run_check(c, cap, seed) for c in document_checks(registry, name)]
    entries.sort(key=lambda e: e["id"])
    elapsed = round((time.perf_counter() - start) * 1000) if timing else None
    return {"suite": name, "cap": cap, "seed": seed, "checks": entries, "elapsed_ms": elapsed}


# JSON rendering of witnesses


def jsonable(x):
    """Plain JSON data for witnesses: setoids as sizes and class tables,
    maps as tables, structures through their public fields."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Verdict):
        return {"ok": x.ok, "reason": x.reason, "witness": jsonable(x.witness)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=json.dumps)
    if isinstance(x, SetoidFn):
        return {"dom": jsonable(x.dom), "cod": jsonable(x.cod), "table": list(x.table)}
    if type(x).__name__ == "Setoid":
        return {"size": x.size, "rep": list(x.rep)}
    if isinstance(x, chu.ChuSpace):
        return {"value": jsonable(x.gamma), "left": jsonable(x.left),
                "right": jsonable(x.right), "rows": [list(r) for r in x.rows]}
    if isinstance(x, (gen.Endofunctor, groth.PPFunctor)):
        return x.name
    fields = [s for cls in type(x).__mro__ for s in getattr(cls, "__slots__", ())
              if not s.startswith("_")]
    if fields:
        out = {"type": type(x).__name__}
        out.update((f, jsonable(getattr(x, f))) for f in fields)
        return out
    return repr(x)


def render_text(report):
    lines = [f"suite {report['suite']} (cap {report['cap']}, seed {report['seed']})"]
    for c in report["checks"]:
        line = f"{c['status'].upper():4}  {c['id']}  {c['citation']}"
        if c["status"] == "fail":
            line += f"\n      {c.get('reason', '')}: {json.dumps(c.get('witness'))}"
        lines.append(line)
    passed = sum(c["status"] == "pass" for c in report["checks"])
    lines.append(f"{passed}/{len(report['checks'])} checks pass")
    if report["elapsed_ms"] is not None:
        lines.append(f"{report['elapsed_ms']} ms")
    return "\n".join(lines)


def _emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(render_text(report) + "\n")


# Enumeration


def enumerate_items(reg, kind, src=None, dst=None, name=None):
    """Deterministic listings: transforms between Chu spaces, homs between
    setoids, topologies or information systems, ideals of a system."""
    if kind == "ideals":
        sys_ = _lookup(reg, "info_systems", name)
        return [list(rep.mask_members(J)) for J in infosys.ideal_masks(sys_)]
    if kind == "transforms":
        a, b = _lookup(reg, "chu_spaces", src), _lookup(reg, "chu_spaces", dst)
        return [{"fwd": list(t.fwd.table), "bwd": list(t.bwd.table)}
                for t in chu.chu_enumerate_hom(a, b)]
    for section in ("chu_spaces", "setoids", "topologies", "info_systems"):
        table = getattr(reg, section)
        if src in table and dst in table:
            return _hom(section, table[src], table[dst])
    raise LoadError("hom needs two declarations of the same section", f"{src}, {dst}")


def _hom(section, a, b):
    if section == "chu_spaces":
        return [{"fwd": list(t.fwd.table), "bwd": list(t.bwd.table)}
                for t in chu.chu_enumerate_hom(a, b)]
    if section == "setoids":
        return [list(f.table) for f in all_maps(a, b)]
    if section == "topologies":
        T, S = (rep.FiniteTopology(*d) for d in (a, b))
        return [list(f.table) for f in rep.continuous_maps(T, S)]
    return [sorted([list(rep.mask_members(A)), b_]
                   for A, bits in r.images.items() for b_ in rep.mask_members(bits))
            for r in infosys.approximable_mappings(a, b)]


def _lookup(reg, section, name):
    table = getattr(reg, section)
    if name not in table:
        raise LoadError(f"unknown {section} name {name!r}", section)
    return table[name]


# Entry point


def build_parser():
    p = argparse.ArgumentParser(prog="chukit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    v.add_argument("--input", help="structure document whose declarations are checked too")
    v.add_argument("--max-size", type=int, default=3, help="carrier size cap (default 3)")
    v.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    v.add_argument("--report", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    v.add_argument("--timing", action="store_true",
                   help="record elapsed_ms; without it reports are byte-identical across runs")

    e = sub.add_parser("enumerate", help="list homs, transforms or ideals")
    e.add_argument("--kind", required=True, choices=("hom", "ideals", "transforms"))
    e.add_argument("--input", required=True)
    e.add_argument("--src")
    e.add_argument("--dst")
    e.add_argument("--name", help="information system, for --kind ideals")
    e.add_argument("--report", choices=("text", "json"), default="text")

    c = sub.add_parser("check", help="check declared structures of one kind")
    c.add_argument("--what", required=True, choices=sorted(DOCUMENT_CHECKS))
    c.add_argument("--input", required=True)
    c.add_argument("--name", help="only this declaration")
    c.add_argument("--report", choices=("text", "json"), default="text")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        reg = load(args.input) if getattr(args, "input", None) else None
        if args.command == "verify":
            if args.max_size < 0 or args.jobs < 1:
                raise LoadError("--max-size must be >= 0 and --jobs >= 1")
            report = run_suite(args.suite, args.max_size, args.seed, reg, args.jobs, args.timing)
            _emit(report, args.report, out)
            return 0 if all(c["status"] == "pass" for c in report["checks"]) else 1
        if args.command == "enumerate":
            items = enumerate_items(reg, args.kind, args.src, args.dst, args.name)
            if args.report == "json":
                out.write(json.dumps({"kind": args.kind, "count": len(items), "items": items},
                                     indent=2) + "\n")
            else:
                out.write(f"{len(items)} {args.kind}\n")
                out.writelines(json.dumps(i) + "\n" for i in items)
            return 0
        checks = document_checks(reg, kinds=(args.what,))
        if args.name:
            checks = [c for c in checks if c.id.rsplit("/", 1)[1] == args.name]
            if not checks:
                raise LoadError(f"no {args.what} named {args.name!r}")
        entries = sorted((run_check(c, 0, 0) for c in checks), key=lambda e: e["id"])
        report = {"suite": f"check-{args.what}", "cap": None, "seed": None, "checks": entries,
                  "elapsed_ms": None}
        _emit(report, args.report, out)
        return 0 if all(c["status"] == "pass" for c in entries) else 1
    except LoadError as e:
        sys.stderr.write(f"chukit: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
