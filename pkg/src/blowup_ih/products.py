"""Cup and cap products on the blow-up, the projection mu_*, and chi.

Local computations use *block cells*: a tuple of factors ``(F_i, e_i)``,
one per filtration index, the last factor carrying ``e = 0``.  The same
tuple codes a cochain basis element of the prism or one of its chain
cells, depending on context.  A factor's ordered vertex list is F_i with
the cone apex appended when e_i = 1.
"""

from __future__ import annotations

from .algebra import ZZ, ChainMap, Ring, SparseMatrix
from .blowup import APEX, blowup_complex
from .complex_core import WeightedComplex

BlockCell = tuple


# ---------------------------------------------------------------------------
# block cells


def to_block_cell(cx: WeightedComplex, cell) -> BlockCell:
    F, eps = cell
    blocks = cx.blocks(F)
    return tuple((blocks[i], eps[i]) for i in range(cx.n)) + ((blocks[cx.n], 0),)


def from_block_cell(bc: BlockCell):
    F = tuple(sorted(v for f, _ in bc for v in f))
    return F, tuple(e for _, e in bc[:-1])


def factor_vertices(factor) -> list:
    f, e = factor
    return list(f) + [APEX] if e else list(f)


def _as_factor(lst: list, cone: bool):
    if cone and lst and lst[-1] == APEX:
        return tuple(lst[:-1]), 1
    return tuple(lst), 0


def factor_dim(factor) -> int:
    return len(factor[0]) - 1 + factor[1]


def block_dim(bc: BlockCell) -> int:
    return sum(factor_dim(f) for f in bc)


def prism_cells(blocks: tuple) -> list[BlockCell]:
    """All cells of the prism c(D_0) x ... x c(D_{n-1}) x D_n."""
    from itertools import combinations, product

    def subsets(b):
        return [s for r in range(len(b) + 1) for s in combinations(b, r)]

    per = []
    n = len(blocks) - 1
    for i, b in enumerate(blocks):
        if i < n:
            per.append([(s, 1) for s in subsets(b)] + [(s, 0) for s in subsets(b) if s])
        else:
            per.append([(s, 0) for s in subsets(b) if s])
    return [tuple(c) for c in product(*per)]


def top_cell(blocks: tuple) -> BlockCell:
    n = len(blocks) - 1
    return tuple((tuple(b), 1) for b in blocks[:n]) + ((tuple(blocks[n]), 0),)


# ---------------------------------------------------------------------------
# cup


def cup_local(a: BlockCell, b: BlockCell) -> tuple[int, BlockCell | None]:
    """Factorwise front/back cup with the Koszul sign of the tensor product."""
    n = len(a) - 1
    da = [factor_dim(f) for f in a]
    db = [factor_dim(f) for f in b]
    sign = 1
    out = []
    for i in range(n + 1):
        A, B = factor_vertices(a[i]), factor_vertices(b[i])
        if A[-1] != B[0]:
            return 0, None
        if (da[i] * db[i]) % 2:
            sign = -sign
        out.append(_as_factor(A + B[1:], i < n))
    koszul = sum(da[i] * db[j] for i in range(n + 1) for j in range(i))
    if koszul % 2:
        sign = -sign
    return sign, tuple(out)


def cup_cells(cx: WeightedComplex, c1, c2) -> tuple[int, tuple | None]:
    s, bc = cup_local(to_block_cell(cx, c1), to_block_cell(cx, c2))
    if not s:
        return 0, None
    cell = from_block_cell(bc)
    if cell[0] not in cx.simplices:
        return 0, None
    return s, cell


def cup(cx: WeightedComplex, omega: dict, eta: dict, ring: Ring = ZZ) -> dict:
    out: dict = {}
    for c1, x in omega.items():
        for c2, y in eta.items():
            s, cell = cup_cells(cx, c1, c2)
            if s:
                out[cell] = out.get(cell, 0) + s * x * y
    return {c: v for c, v in ((c, ring.coerce(v)) for c, v in out.items()) if v}


# ---------------------------------------------------------------------------
# cap against the prism and the projection mu_*


def cap_blowup(a: BlockCell, blocks: tuple) -> tuple[int, BlockCell | None]:
    """``a`` capped with the fundamental cell of the prism of ``blocks``.

    Each factor is capped classically (front face F, back face from its
    last vertex), followed by the sign (-1)^nu with
    nu = sum_{j<n} (dim D_j + 1) * |a|_{>j}.
    """
    n = len(blocks) - 1
    out = []
    for i in range(n + 1):
        full = list(blocks[i]) + ([APEX] if i < n else [])
        A = factor_vertices(a[i])
        if A != full[:len(A)]:
            return 0, None
        out.append(_as_factor(full[len(A) - 1:], i < n))
    d = [factor_dim(f) for f in a]
    nu = sum(len(blocks[j]) * sum(d[j + 1:]) for j in range(n))
    return (-1) ** (nu % 2), tuple(out)


def mu_push(c: BlockCell) -> tuple | None:
    """Projection of a prism chain cell to the simplex: F_0 * ... * F_l or None."""
    n = len(c) - 1
    ell = next(i for i in range(n + 1) if i == n or c[i][1] == 0)
    if any(factor_dim(f) for f in c[ell + 1:]):
        return None
    return tuple(sorted(v for f, _ in c[:ell + 1] for v in f))


def prism_boundary(c: BlockCell) -> dict:
    """Boundary of a prism chain cell in the tensor product of simplicial chains."""
    n = len(c) - 1
    out: dict = {}
    pre = 0
    for i in range(n + 1):
        L = factor_vertices(c[i])
        if len(L) > 1:
            for j in range(len(L)):
                face = _as_factor(L[:j] + L[j + 1:], i < n)
                new = c[:i] + (face,) + c[i + 1:]
                out[new] = out.get(new, 0) + (-1) ** ((pre + j) % 2)
        pre += factor_dim(c[i])
    return {k: v for k, v in out.items() if v}


def simplex_boundary(s: tuple) -> dict:
    return {s[:j] + s[j + 1:]: (-1) ** j for j in range(len(s)) if len(s) > 1}


def hidden_faces(blocks: tuple) -> list[tuple[int, BlockCell]]:
    """Signed hidden faces: the cone factor i < n replaced by its base."""
    n = len(blocks) - 1
    out = []
    top = top_cell(blocks)
    for i in range(n):
        if not blocks[i]:
            continue
        lead = sum(len(b) for b in blocks[: i + 1]) - 1  # |Delta|_{<=i}
        cell = top[:i] + ((tuple(blocks[i]), 0),) + top[i + 1:]
        out.append(((-1) ** ((lead + 1) % 2), cell))
    return out


def face_blowups(blocks: tuple) -> dict:
    """The blow-up of the regular part of the boundary of the simplex, as a prism chain."""
    n = len(blocks) - 1
    out: dict = {}
    pos = 0
    for i in range(n + 1):
        for j, v in enumerate(blocks[i]):
            sub = tuple(blocks[:i]) + (tuple(w for w in blocks[i] if w != v),) + tuple(blocks[i + 1:])
            if sub[n]:
                out[top_cell(sub)] = (-1) ** ((pos + j) % 2)
        pos += len(blocks[i])
    return out


def check_hidden_faces(blocks: tuple) -> bool:
    """Boundary of the fundamental prism cell equals face blow-ups plus signed hidden faces."""
    expected = dict(face_blowups(blocks))
    for s, c in hidden_faces(blocks):
        expected[c] = expected.get(c, 0) + s
    expected = {k: v for k, v in expected.items() if v}
    return prism_boundary(top_cell(blocks)) == expected


def cap_local(a: BlockCell, blocks: tuple) -> tuple[int, tuple | None]:
    """``mu_*(a cap prism)`` as (sign, simplex)."""
    s, c = cap_blowup(a, blocks)
    if not s:
        return 0, None
    g = mu_push(c)
    return (s, g) if g is not None else (0, None)


def cap_simplex(cx: WeightedComplex, omega: dict, sigma: tuple) -> dict:
    """omega cap sigma for one regular simplex sigma of cx."""
    blocks = cx.blocks(sigma)
    S = set(sigma)
    out: dict = {}
    for cell, x in omega.items():
        if not S.issuperset(cell[0]):
            continue
        s, g = cap_local(to_block_cell(cx, cell), blocks)
        if s:
            out[g] = out.get(g, 0) + s * x
    return {g: v for g, v in out.items() if v}


def cap(cx: WeightedComplex, omega: dict, xi: dict, ring: Ring = ZZ) -> dict:
    """Intersection cap product of a blown-up cochain with a chain of regular simplices."""
    out: dict = {}
    for sigma, y in xi.items():
        if not cx.is_regular(sigma):
            raise ValueError(f"cap needs regular simplices, got {cx.label(sigma)}")
        for g, v in cap_simplex(cx, omega, sigma).items():
            out[g] = out.get(g, 0) + v * y
    return {g: v for g, v in ((g, ring.coerce(v)) for g, v in out.items()) if v}


# ---------------------------------------------------------------------------
# chi


def evaluation_sign(bc: BlockCell) -> int:
    """Koszul sign of evaluating a tensor cochain on the same tensor chain cell.

    <w_0 x ... x w_n, c_0 x ... x c_n> = (-1)^{sum_{i<j} |w_j||c_i|} prod <w_i, c_i>.
    With this pairing the blown-up differential is the transpose of the
    prism boundary with the sign -(-1)^{|w|}.
    """
    d = [factor_dim(f) for f in bc]
    s = sum(d[i] * d[j] for j in range(len(d)) for i in range(j))
    return -1 if s % 2 else 1


def fundamental_sign(cx: WeightedComplex, sigma: tuple) -> int:
    return evaluation_sign(top_cell(cx.blocks(sigma)))


def chi_cochain(cx: WeightedComplex, omega: dict) -> dict:
    """chi(omega)(sigma) = omega evaluated on the fundamental prism cell of sigma."""
    out = {}
    for (F, eps), x in omega.items():
        if x and all(eps):
            out[F] = out.get(F, 0) + fundamental_sign(cx, F) * x
    return {s: v for s, v in out.items() if v}


def chi_ambient(cx: WeightedComplex, k: int, simplices: list) -> SparseMatrix:
    """Matrix from degree-k blow-up cochains to functions on the given k-simplices."""
    B = blowup_complex(cx)
    row = {s: i for i, s in enumerate(simplices)}
    cols = []
    for F, eps in B.basis.get(k, []):
        cols.append({row[F]: fundamental_sign(cx, F)} if all(eps) and F in row else {})
    return SparseMatrix(len(simplices), len(cols), cols)


def chi_map(cx: WeightedComplex, p, ring: Ring = ZZ) -> ChainMap:
    """chi as a chain map from the p-intersection cochains to the dual tame cochains of Dp."""
    from .chains import tame_cochains

    B = blowup_complex(cx)
    source = B.intersection_subcomplex(p, ring)
    target = tame_cochains(cx, p.dual(), ring)
    f = {}
    for k in source.degrees:
        if target.dim(k) == 0 or source.dim(k) == 0:
            continue
        simplices = target.labels[k]
        T = chi_ambient(cx, k, simplices)
        f[k] = target.extra["chain_inclusion"][k].T @ (T @ source.inclusion[k])
    return ChainMap(source, target, f)
