"""The blown-up cochain complex of a weighted simplicial complex.

A cell (F, eps) of the blow-up is stored as the pair ``(F, eps)``: F a
regular simplex (sorted vertex ids) and ``eps`` a 0/1 tuple of length n.
Factor i < n of the cell is the ordered simplex F_i of the cone c(L_i),
followed by the virtual apex when eps_i = 1.  The apex always sorts last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from .algebra import (
    ZZ,
    ChainComplexPresentation,
    Ring,
    SparseMatrix,
    full_presentation,
    preimage_subcomplex,
)
from .complex_core import (
    NEG_INF,
    Perversity,
    Stratum,
    WeightedComplex,
    sorted_sign,
)

APEX = 1 << 62  # virtual cone vertex, larger than every real vertex id

Cell = tuple  # (F, eps)


@dataclass(frozen=True)
class Virtual:
    """The virtual vertex v_l, apex of the cone on the weight-l block."""

    level: int


# ---------------------------------------------------------------------------
# cell bookkeeping


def cell_blocks(cx: WeightedComplex, cell: Cell) -> tuple:
    return cx.blocks(cell[0])


def factor_dims(cx: WeightedComplex, cell: Cell) -> list[int]:
    """|(F_i, eps_i)| for i = 0..n, with eps_n = 0."""
    F, eps = cell
    blocks = cx.blocks(F)
    out = [len(blocks[i]) - 1 + eps[i] for i in range(cx.n)]
    out.append(len(blocks[cx.n]) - 1)
    return out


def cell_dim(cx: WeightedComplex, cell: Cell) -> int:
    return sum(factor_dims(cx, cell))


def partial_dim(cx: WeightedComplex, cell: Cell, lo: int = 0, hi: int | None = None) -> int:
    """Sum of factor dimensions over positions lo <= i < hi."""
    fd = factor_dims(cx, cell)
    return sum(fd[lo:hi])


def factor_list(blocks: tuple, eps: tuple, i: int) -> list:
    """Ordered vertex list of factor i, virtual apex last."""
    if i < len(eps) and eps[i]:
        return list(blocks[i]) + [APEX]
    return list(blocks[i])


def is_cell(cx: WeightedComplex, cell: Cell) -> bool:
    F, eps = cell
    if len(eps) != cx.n or F not in cx.simplices or not cx.is_regular(F):
        return False
    blocks = cx.blocks(F)
    return all(e in (0, 1) for e in eps) and all(eps[i] == 1 for i in range(cx.n) if not blocks[i])


def cells_of_simplex(cx: WeightedComplex, F: tuple) -> list[Cell]:
    """All cells whose underlying simplex is exactly F."""
    blocks = cx.blocks(F)
    choices = [(1,) if not blocks[i] else (0, 1) for i in range(cx.n)]
    return [(F, eps) for eps in product(*choices)]


def format_cell(cx: WeightedComplex, cell: Cell) -> str:
    F, eps = cell
    blocks = cx.blocks(F)
    parts = []
    for i in range(cx.n):
        inner = ",".join(cx.names[v] for v in blocks[i])
        parts.append(f"({inner};{eps[i]})")
    parts.append("[" + ",".join(cx.names[v] for v in blocks[cx.n]) + "]")
    return "x".join(parts)


# ---------------------------------------------------------------------------
# the complex


class BlowupComplex:
    """Basis, differential and perverse degrees of the blown-up complex."""

    def __init__(self, cx: WeightedComplex):
        self.cx = cx
        cells: list[Cell] = []
        for F in sorted(cx.regular_simplices):
            cells.extend(cells_of_simplex(cx, F))
        by_deg: dict[int, list[Cell]] = {}
        for c in cells:
            by_deg.setdefault(cell_dim(cx, c), []).append(c)
        top = max(by_deg) if by_deg else 0
        self.basis: dict[int, list[Cell]] = {k: sorted(by_deg.get(k, [])) for k in range(top + 1)}
        self.index: dict[Cell, int] = {}
        for k, cs in self.basis.items():
            for j, c in enumerate(cs):
                self.index[c] = j
        self._d_cache: dict = {}

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dims(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.basis.items()}

    def degree_of(self, cell: Cell) -> int:
        return cell_dim(self.cx, cell)

    def matrix(self, k: int, formula: str = "adjunction") -> SparseMatrix:
        """Differential from degree k to k + 1."""
        key = (k, formula)
        if key in self._d_cache:
            return self._d_cache[key]
        src = self.basis.get(k, [])
        tgt = self.basis.get(k + 1, [])
        fn = differential_by_adjunction if formula == "adjunction" else differential_factorwise
        cols = []
        for c in src:
            col = {}
            for cell, x in fn(self.cx, c).items():
                col[self.index[cell]] = x
            cols.append(col)
        M = SparseMatrix(len(tgt), len(src), cols)
        self._d_cache[key] = M
        return M

    def differentials(self, formula: str = "adjunction") -> dict[int, SparseMatrix]:
        return {k: self.matrix(k, formula) for k in self.degrees}

    def presentation(self, ring: Ring = ZZ) -> ChainComplexPresentation:
        return full_presentation(self.dims(), self.differentials(), +1, ring, dict(self.basis))

    def allowable_indices(self, p: Perversity) -> dict[int, list[int]]:
        out = {}
        for k, cs in self.basis.items():
            out[k] = [j for j, c in enumerate(cs) if cell_is_allowable(self.cx, c, p)]
        return out

    def intersection_subcomplex(self, p: Perversity, ring: Ring = ZZ) -> ChainComplexPresentation:
        return preimage_subcomplex(self.dims(), self.differentials(), self.allowable_indices(p), +1, ring,
                                   dict(self.basis))

    def unit(self) -> dict:
        """The unit 0-cochain: 1 on every degree-0 cell."""
        return {c: 1 for c in self.basis.get(0, [])}

    def vector(self, k: int, cochain: dict) -> dict:
        return {self.index[c]: x for c, x in cochain.items() if x}

    def cochain(self, k: int, vec: dict) -> dict:
        cs = self.basis[k]
        return {cs[j]: x for j, x in vec.items() if x}


@lru_cache(maxsize=64)
def blowup_complex(cx: WeightedComplex) -> BlowupComplex:
    return BlowupComplex(cx)


def enumerate_basis(cx: WeightedComplex, k: int) -> list[Cell]:
    return list(blowup_complex(cx).basis.get(k, []))


# ---------------------------------------------------------------------------
# adjunction of a vertex


def _vertex_weight(cx: WeightedComplex, e) -> int:
    return e.level if isinstance(e, Virtual) else cx.weights[e]


def adjoin(cx: WeightedComplex, cell: Cell, e, position: int | None = None) -> tuple[int, Cell | None]:
    """``1_cell * e`` as (sign, cell); sign 0 when the result vanishes.

    ``e`` is a vertex id or a :class:`Virtual`.  The global sign is
    (-1)^{|cell|_{>l}} times the factor-level star (-1)^{|G|} and the
    reordering sign of the enlarged factor.
    """
    n = cx.n
    level = _vertex_weight(cx, e)
    if position is not None and position != level:
        raise ValueError(f"vertex of weight {level} cannot be adjoined at position {position}")
    if isinstance(e, Virtual) and not (0 <= level < n):
        raise ValueError(f"no virtual vertex at level {level}")
    F, eps = cell
    blocks = cx.blocks(F)
    G = factor_list(blocks, eps, level)
    sign, _ = sorted_sign(G + [APEX if isinstance(e, Virtual) else e])
    if not sign:
        return 0, None
    fd = factor_dims(cx, cell)
    sign *= (-1) ** (sum(fd[level + 1:]) + (len(G) - 1))
    if isinstance(e, Virtual):
        new = (F, eps[:level] + (1,) + eps[level + 1:])
    else:
        F2 = tuple(sorted(F + (e,)))
        if F2 not in cx.simplices:
            return 0, None
        new = (F2, eps)
    return sign, new


def adjoin_cochain(cx: WeightedComplex, cochain: dict, e) -> dict:
    out: dict = {}
    for c, x in cochain.items():
        s, new = adjoin(cx, c, e)
        if s:
            v = out.get(new, 0) + s * x
            if v:
                out[new] = v
            else:
                out.pop(new, None)
    return out


def differential_by_adjunction(cx: WeightedComplex, cell: Cell) -> dict:
    """(-1)^{|cell|} (sum over real vertices of 1*e + sum over i<n of 1*v_i)."""
    k = cell_dim(cx, cell)
    out: dict = {}
    targets: list = list(range(cx.num_vertices)) + [Virtual(i) for i in range(cx.n)]
    for e in targets:
        s, new = adjoin(cx, cell, e)
        if s:
            out[new] = out.get(new, 0) + s * (-1) ** k
    return {c: x for c, x in out.items() if x}


def differential_factorwise(cx: WeightedComplex, cell: Cell) -> dict:
    """Tensor-product differential: Koszul sign (-1)^{|cell|_{<i}} times the factor coboundary."""
    F, eps = cell
    blocks = cx.blocks(F)
    fd = factor_dims(cx, cell)
    out: dict = {}
    for i in range(cx.n + 1):
        koszul = (-1) ** sum(fd[:i])
        G = factor_list(blocks, eps, i)
        new_vertices = list(cx.vertices_by_weight[i])
        if i < cx.n:
            new_vertices.append(APEX)
        for x in new_vertices:
            sign, _ = sorted_sign(G + [x])
            if not sign:
                continue
            if x == APEX:
                new = (F, eps[:i] + (1,) + eps[i + 1:])
            else:
                F2 = tuple(sorted(F + (x,)))
                if F2 not in cx.simplices:
                    continue
                new = (F2, eps)
            out[new] = out.get(new, 0) + koszul * sign
    return {c: x for c, x in out.items() if x}


def differential(cx: WeightedComplex, cochain: dict) -> dict:
    out: dict = {}
    for c, x in cochain.items():
        for t, y in differential_by_adjunction(cx, c).items():
            v = out.get(t, 0) + x * y
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# perverse degrees


def perverse_degree_local(cx: WeightedComplex, cell: Cell, ell: int):
    """l-perverse degree of a basis cochain: -inf if eps_{n-l} = 1, else |cell|_{>n-l}."""
    n = cx.n
    if not (1 <= ell <= n):
        raise ValueError(f"perverse degree index {ell} outside 1..{n}")
    pos = n - ell
    if cell[1][pos]:
        return NEG_INF
    return sum(factor_dims(cx, cell)[pos + 1:])


def cell_perverse_degree(cx: WeightedComplex, cell: Cell, st: Stratum):
    """Perverse degree of a basis cochain along a stratum.

    A regular simplex containing F meets S exactly when F's prefix up to
    the stratum index lies in S and is nonempty, so the maximum over
    witnessing simplices collapses to one local computation.
    """
    if not st.is_singular:
        return 0
    i = st.index
    if cell[1][i]:
        return NEG_INF
    if not cx.meets(cell[0], st):
        return NEG_INF
    return perverse_degree_local(cx, cell, st.codim)


def cell_perverse_degree_by_witnesses(cx: WeightedComplex, cell: Cell, st: Stratum):
    """Same quantity computed from maximal regular simplices containing the cell."""
    if not st.is_singular:
        return 0
    best = NEG_INF
    F = set(cell[0])
    for D in cx.facets:
        if not cx.is_regular(D) or not F <= set(D) or not cx.meets(D, st):
            continue
        best = max(best, perverse_degree_local(cx, cell, st.codim))
    return best


def perverse_degree(cx: WeightedComplex, cochain: dict, st: Stratum):
    best = NEG_INF
    for c, x in cochain.items():
        if x:
            best = max(best, cell_perverse_degree(cx, c, st))
    return best


def cell_is_allowable(cx: WeightedComplex, cell: Cell, p: Perversity) -> bool:
    return all(cell_perverse_degree(cx, cell, st) <= p(st) for st in cx.singular_strata)


def is_allowable(cx: WeightedComplex, cochain: dict, p: Perversity) -> bool:
    return all(cell_is_allowable(cx, c, p) for c, x in cochain.items() if x)


def is_intersection_cochain(cx: WeightedComplex, cochain: dict, p: Perversity) -> bool:
    return is_allowable(cx, cochain, p) and is_allowable(cx, differential(cx, cochain), p)


def intersection_subcomplex(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ) -> ChainComplexPresentation:
    return blowup_complex(cx).intersection_subcomplex(p, ring)


def intersection_cohomology(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ):
    """Group table of the blown-up intersection cohomology."""
    return intersection_subcomplex(cx, p, ring).homology_table()


def restrict_to_simplex(cochain: dict, simplex: Iterable[int]) -> dict:
    """The part of a cochain supported on faces of the given simplex."""
    s = set(simplex)
    return {c: x for c, x in cochain.items() if set(c[0]) <= s}
