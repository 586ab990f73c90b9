"""Tame intersection chains: perverse degree of simplices, the regular-part
boundary, and the tame chain and cochain complexes."""

from __future__ import annotations

from functools import lru_cache

from .algebra import ZZ, ChainComplexPresentation, Ring, SparseMatrix, preimage_subcomplex
from .complex_core import NEG_INF, Perversity, Stratum, WeightedComplex, ext_add


def simplex_perverse_degree(cx: WeightedComplex, sigma: tuple, st: Stratum):
    """-inf if sigma misses the stratum, else the dimension of its part of weight <= index."""
    if not cx.meets(sigma, st):
        return NEG_INF
    prefix = [v for v in sigma if cx.weights[v] <= st.index]
    return len(prefix) - 1 if prefix else NEG_INF


def is_allowable(cx: WeightedComplex, sigma: tuple, p: Perversity) -> bool:
    dim = len(sigma) - 1
    for st in cx.singular_strata:
        if simplex_perverse_degree(cx, sigma, st) > ext_add(dim - st.codim, p(st)):
            return False
    return True


def is_tame(cx: WeightedComplex, sigma: tuple, p: Perversity) -> bool:
    return cx.is_regular(sigma) and is_allowable(cx, sigma, p)


def is_allowable_chain(cx: WeightedComplex, chain: dict, p: Perversity) -> bool:
    return all(is_allowable(cx, s, p) for s, x in chain.items() if x)


def gd(cx: WeightedComplex, sigma: tuple) -> dict:
    """Regular part of the boundary: faces losing the last top-weight vertex are dropped."""
    if not cx.is_regular(sigma):
        raise ValueError(f"{cx.label(sigma)} is not regular")
    if len(sigma) == 1:
        return {}
    out = {}
    for j in range(len(sigma)):
        face = sigma[:j] + sigma[j + 1:]
        if cx.is_regular(face):
            out[face] = (-1) ** j
    return out


def gd_join(cx: WeightedComplex, sigma: tuple) -> dict:
    """Same operator from the join rule d(A*B) = dA*B + (-1)^{dim A + 1} A*dB.

    B is the top-weight block.  The boundary of A is augmented (a point
    bounds the empty simplex and the empty simplex joined with B is B),
    while the boundary of B drops its empty face, which is not regular.
    """
    if not cx.is_regular(sigma):
        raise ValueError(f"{cx.label(sigma)} is not regular")
    A = tuple(v for v in sigma if cx.weights[v] < cx.n)
    B = tuple(v for v in sigma if cx.weights[v] == cx.n)
    out: dict = {}
    for j in range(len(A)):
        out[A[:j] + A[j + 1:] + B] = (-1) ** j
    if len(B) > 1:
        s = (-1) ** (len(A) % 2)
        for j in range(len(B)):
            out[A + B[:j] + B[j + 1:]] = s * (-1) ** j
    return out


def gd_chain(cx: WeightedComplex, chain: dict) -> dict:
    out: dict = {}
    for s, x in chain.items():
        for f, y in gd(cx, s).items():
            out[f] = out.get(f, 0) + x * y
    return {f: v for f, v in out.items() if v}


@lru_cache(maxsize=64)
def regular_chain_complex(cx: WeightedComplex):
    """Ambient regular simplices by dimension and the matrices of the regular boundary."""
    basis: dict[int, list] = {}
    for s in cx.regular_simplices:
        basis.setdefault(len(s) - 1, []).append(s)
    top = max(basis) if basis else 0
    basis = {k: sorted(basis.get(k, [])) for k in range(top + 1)}
    index = {s: j for k in basis for j, s in enumerate(basis[k])}
    d = {}
    for k in range(1, top + 1):
        cols = [{index[f]: x for f, x in gd(cx, s).items()} for s in basis[k]]
        d[k] = SparseMatrix(len(basis[k - 1]), len(basis[k]), cols)
    return basis, d


def tame_complex(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ) -> ChainComplexPresentation:
    """Tame p-intersection chains: allowable regular chains whose regular boundary is allowable."""
    basis, d = regular_chain_complex(cx)
    dims = {k: len(v) for k, v in basis.items()}
    sel = {k: [j for j, s in enumerate(v) if is_allowable(cx, s, p)] for k, v in basis.items()}
    return preimage_subcomplex(dims, d, sel, -1, ring, dict(basis))


def tame_homology(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ):
    return tame_complex(cx, p, ring).homology_table()


def dual_complex(C: ChainComplexPresentation) -> ChainComplexPresentation:
    """Cochains Hom(C, R) with (d f)(v) = -(-1)^{|f|} f(dv), in dual coordinates."""
    d = {}
    for k in C.degrees:
        if k + 1 in C.dims and (k + 1) in C.d:
            d[k] = C.d[k + 1].T.scale(-((-1) ** (k % 2)))
    out = ChainComplexPresentation(C.ring, +1, dict(C.dims), d, dict(C.labels))
    if C.inclusion is not None:
        out.extra["chain_inclusion"] = C.inclusion
    else:
        out.extra["chain_inclusion"] = {k: SparseMatrix.identity(C.dim(k)) for k in C.degrees}
    return out


def tame_cochains(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ) -> ChainComplexPresentation:
    return dual_complex(tame_complex(cx, p, ring))
