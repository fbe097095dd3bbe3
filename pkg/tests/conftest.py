import itertools

from hypothesis import settings, strategies as st

from chukit.setoid import Setoid, SetoidFn

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def partitions(n):
    """Canonical class tables (first element of each class) by brute force."""
    out = []
    for labels in itertools.product(range(n), repeat=n):
        rep = tuple(labels.index(labels[x]) for x in range(n))
        if rep not in out:
            out.append(rep)
    return out


@st.composite
def setoids(draw, max_size=3, min_size=0):
    n = draw(st.integers(min_size, max_size))
    return Setoid(n, draw(st.sampled_from(partitions(n))))


@st.composite
def maps(draw, dom, cod):
    """Random extensional map: pick an image per class."""
    if cod.size == 0:
        return None if dom.size else SetoidFn(dom, cod, [])
    img = {r: draw(st.integers(0, cod.size - 1)) for r in set(dom.rep)}
    return SetoidFn(dom, cod, [img[dom.rep[x]] for x in dom])


def brute_maps(dom, cod):
    """Every extensional table dom -> cod, compared up to cod's equality."""
    seen = set()
    for t in itertools.product(range(cod.size), repeat=dom.size):
        if all(cod.rep[t[x]] == cod.rep[t[y]] for x in dom for y in dom if dom.rep[x] == dom.rep[y]):
            seen.add(tuple(cod.rep[v] for v in t))
    return seen
