"""Hypothesis strategies for small weighted complexes."""

import random

from hypothesis import strategies as st

from blowup_ih.complex_core import WeightedComplex


@st.composite
def weighted_complexes(draw, max_vertices: int = 8, max_n: int = 3, max_facet: int = 4):
    # Shape parameters come from a seeded Random: hypothesis' own draws
    # cluster near their minimum, which gives trivial blow-ups.
    rnd = random.Random(draw(st.integers(0, 2**32)))
    n = rnd.randint(0, max_n)
    nv = rnd.randint(1, max_vertices)
    weights = [rnd.choice(list(range(n + 1)) + [n]) for _ in range(nv)]
    weights[rnd.randrange(nv)] = n
    names = [f"v{i}" for i in range(nv)]
    top = min(max_facet, nv)
    facets = [rnd.sample(range(nv), rnd.randint(max(1, top - 2), top)) for _ in range(rnd.randint(1, 8))]
    covered = {v for f in facets for v in f}
    facets += [[v] for v in range(nv) if v not in covered]
    return WeightedComplex.build(n, list(zip(names, weights)), [[names[v] for v in f] for f in facets])
