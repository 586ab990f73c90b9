"""Amalgamation of filtration blocks and the maps built from it.

theta and Xi act on a pair of consecutive factors of a block cell (see
:mod:`products` for the encoding).  Merging factors j and j+1 of an
(n+1)-factor cell gives an n-factor cell; for the simplex this means two
consecutive filtration blocks become one.  Chains are pushed forward with
theta, cochains are pulled back with Xi.

Global maps:

* :func:`refinement_pullback` for a weight recoding of one simplicial complex,
* :func:`ordinary_comparison` from ordinary cochains to the 0-perversity complex,
* :func:`regular_restriction` to the cochains of the top-weight subcomplex.
"""

from __future__ import annotations

from .algebra import ZZ, ChainComplexPresentation, ChainMap, Ring, SparseMatrix, chain_map_from_ambient, full_presentation
from .blowup import APEX, blowup_complex
from .complex_core import NEG_INF, InputError, Perversity, WeightedComplex, check_recoding, sorted_sign
from .products import BlockCell, evaluation_sign, factor_dim, factor_vertices, from_block_cell, mu_push, prism_cells, to_block_cell


# ---------------------------------------------------------------------------
# two factors


def theta(x0, x1) -> tuple | None:
    """Merge two factors of a prism chain cell, or None when theta kills them.

    theta((F0,1) x (F1,e)) = (F0*F1, e); theta((F0,0) x y) = (F0,0) when y
    is a point, else 0.  The sign is always +1.
    """
    (F0, e0), (F1, e1) = x0, x1
    if e0:
        return tuple(F0) + tuple(F1), e1
    if factor_dim(x1) == 0:
        return tuple(F0), 0
    return None


def xi(z, E0: tuple, E1: tuple, last: bool = False) -> list[tuple[int, tuple, tuple]]:
    """Split a cochain factor on c(E0*E1) (or E0*E1 if ``last``) into signed pairs.

    1_(F0*F1, e) goes to (-1)^{|(F0,1)||(F1,e)|} 1_(F0,1) x 1_(F1,e) unless
    (F1, e) is (empty, 0); 1_(F0,0) goes to 1_(F0,0) x lambda where lambda
    is the sum of the vertex cochains of the second factor, plus the apex
    when the second factor is a cone.
    """
    G, e = z
    s1 = set(E1)
    F0 = tuple(v for v in G if v not in s1)
    F1 = tuple(v for v in G if v in s1)
    if F1 or e:
        if last and e:
            raise ValueError("the last factor has no cone coordinate")
        s = -1 if (len(F0) * (len(F1) - 1 + e)) % 2 else 1
        return [(s, (F0, 1), (F1, e))]
    lam = [((v,), 0) for v in E1]
    if not last:
        lam = [((), 1)] + lam
    return [(1, (F0, 0), y) for y in lam]


# ---------------------------------------------------------------------------
# elementary amalgamations on one filtered simplex


def merge_blocks(blocks: tuple, j: int) -> tuple:
    return tuple(blocks[:j]) + (tuple(blocks[j]) + tuple(blocks[j + 1]),) + tuple(blocks[j + 2:])


def _position(k: int, n: int) -> int:
    if not (0 <= k <= n - 1):
        raise ValueError(f"amalgamation index {k} outside 0..{n - 1}")
    return n - k - 1


def elementary_push(c: BlockCell, k: int) -> BlockCell | None:
    """The k-th elementary amalgamation on a prism chain cell (theta at n-k-1)."""
    j = _position(k, len(c) - 1)
    m = theta(c[j], c[j + 1])
    return None if m is None else c[:j] + (m,) + c[j + 2:]


def elementary_pullback(w: BlockCell, k: int, blocks: tuple) -> dict:
    """Xi at position n-k-1 applied to a coarse cochain cell; ``blocks`` is the fine decomposition."""
    n = len(blocks) - 1
    j = _position(k, n)
    out: dict = {}
    for s, a, b in xi(w[j], tuple(blocks[j]), tuple(blocks[j + 1]), last=(j + 1 == n)):
        key = w[:j] + (a, b) + w[j + 1:]
        out[key] = out.get(key, 0) + s
    return {c: x for c, x in out.items() if x}


def push_chain(chain: dict, k: int) -> dict:
    out: dict = {}
    for c, x in chain.items():
        m = elementary_push(c, k)
        if m is not None:
            out[m] = out.get(m, 0) + x
    return {c: x for c, x in out.items() if x}


def pull_cochain(cochain: dict, k: int, blocks: tuple) -> dict:
    out: dict = {}
    for w, x in cochain.items():
        for c, y in elementary_pullback(w, k, blocks).items():
            out[c] = out.get(c, 0) + x * y
    return {c: x for c, x in out.items() if x}


def is_simple(blocks: tuple, k: int) -> bool:
    """The k-th amalgamation is simple when the block it absorbs is empty."""
    return not blocks[_position(k, len(blocks) - 1)]


def index_map(k: int, ell: int) -> int:
    """a_k: perverse-degree index on the fine simplex to index on the coarse one."""
    return ell if ell <= k else ell - 1


def local_coboundary(w: BlockCell, blocks: tuple) -> dict:
    """Coboundary of a cochain basis element of the prism of ``blocks``."""
    n = len(blocks) - 1
    out: dict = {}
    pre = 0
    for i in range(n + 1):
        G = factor_vertices(w[i])
        extra = list(blocks[i]) + ([APEX] if i < n else [])
        for x in extra:
            s, lst = sorted_sign(G + [x])
            if not s:
                continue
            new = w[:i] + ((tuple(v for v in lst if v != APEX), 1 if APEX in lst else 0),) + w[i + 1:]
            out[new] = out.get(new, 0) + s * (-1) ** (pre % 2)
        pre += factor_dim(w[i])
    return {c: x for c, x in out.items() if x}


def local_coboundary_cochain(cochain: dict, blocks: tuple) -> dict:
    out: dict = {}
    for w, x in cochain.items():
        for c, y in local_coboundary(w, blocks).items():
            out[c] = out.get(c, 0) + x * y
    return {c: x for c, x in out.items() if x}


def local_perverse_degree(cochain: dict, ell: int):
    """||cochain||_ell on one prism: -inf for cells with a cone coordinate at n-ell."""
    best = NEG_INF
    for w, x in cochain.items():
        if not x:
            continue
        n = len(w) - 1
        if ell == 0:
            v = 0
        else:
            pos = n - ell
            v = NEG_INF if w[pos][1] else sum(factor_dim(f) for f in w[pos + 1:])
        best = max(best, v)
    return best


# ---------------------------------------------------------------------------
# mu


def mu_pullback_local(G: tuple, blocks: tuple) -> dict:
    """mu^*(1_G) on the prism of ``blocks``: the transpose of mu_* under the evaluation pairing."""
    out = {}
    for c in prism_cells(blocks):
        if mu_push(c) == tuple(G):
            out[c] = evaluation_sign(c)
    return out


def mu_pullback_by_merging(G: tuple, blocks: tuple) -> dict:
    """mu^*(1_G) as the composite of elementary pullbacks merging all blocks into one."""
    n = len(blocks) - 1
    # pulling back along k = 0 merges the last two blocks; repeat from the top down
    stages = [tuple(blocks)]
    while len(stages[-1]) > 1:
        stages.append(merge_blocks(stages[-1], len(stages[-1]) - 2))
    cochain = {((tuple(G), 0),): 1}
    for m in range(n, 0, -1):
        cochain = pull_cochain(cochain, 0, stages[m - 1])
    return cochain


def simplex_coboundary_local(G: tuple, sigma: tuple) -> dict:
    out = {}
    for x in sigma:
        if x in G:
            continue
        s, lst = sorted_sign(list(G) + [x])
        out[tuple(lst)] = s
    return out


# ---------------------------------------------------------------------------
# global maps: ordinary cochains


def ordinary_cochains(cx: WeightedComplex, ring: Ring = ZZ, simplices=None) -> ChainComplexPresentation:
    """Simplicial cochains on the given simplices (default: all).

    Same sign as the blown-up complex: (df)(v) = -(-1)^{|f|} f(dv).
    """
    S = sorted(simplices if simplices is not None else cx.simplices)
    basis: dict[int, list] = {}
    for s in S:
        basis.setdefault(len(s) - 1, []).append(s)
    top = max(basis) if basis else -1
    basis = {k: basis.get(k, []) for k in range(top + 1)}
    index = {s: j for k in basis for j, s in enumerate(basis[k])}
    cols: dict[int, list] = {k: [{} for _ in basis[k]] for k in basis}
    for k in range(1, top + 1):
        for H in basis[k]:
            for pos in range(len(H)):
                face = H[:pos] + H[pos + 1:]
                if face in index:
                    cols[k - 1][index[face]][index[H]] = (-1) ** ((pos + k) % 2)
    d = {k: SparseMatrix(len(basis[k + 1]), len(basis[k]), cols[k]) for k in range(top)}
    return full_presentation({k: len(v) for k, v in basis.items()}, d, +1, ring, basis)


def ordinary_comparison_matrix(cx: WeightedComplex, k: int) -> SparseMatrix:
    """Matrix of Phi in degree k: ordinary k-cochains to blown-up k-cochains."""
    B = blowup_complex(cx)
    simplices = sorted(s for s in cx.simplices if len(s) == k + 1)
    row = {c: i for i, c in enumerate(B.basis.get(k, []))}
    col = {s: j for j, s in enumerate(simplices)}
    entries = []
    for c, i in row.items():
        bc = to_block_cell(cx, c)
        G = mu_push(bc)
        if G is not None and G in col:
            entries.append((i, col[G], evaluation_sign(bc)))
    return SparseMatrix.from_entries(len(row), len(simplices), entries)


def ordinary_comparison(cx: WeightedComplex, ring: Ring = ZZ) -> ChainMap:
    """Phi: ordinary simplicial cochains to the intersection cochains of the zero perversity."""
    if not cx.is_normal():
        raise InputError("ordinary comparison needs a normal complex (connected transverse links)")
    source = ordinary_cochains(cx, ring)
    target = blowup_complex(cx).intersection_subcomplex(Perversity.zero(cx), ring)
    F = {k: ordinary_comparison_matrix(cx, k) for k in source.degrees}
    return chain_map_from_ambient(source, target, F)


def top_subcomplex_simplices(cx: WeightedComplex) -> list:
    """Simplices all of whose vertices have the top weight."""
    return sorted(s for s in cx.simplices if all(cx.weights[v] == cx.n for v in s))


def lower_subcomplex_simplices(cx: WeightedComplex) -> list:
    """Simplices of the singular part: no vertex of top weight."""
    return sorted(s for s in cx.simplices if not cx.is_regular(s))


def regular_restriction(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ) -> ChainMap:
    """gamma: intersection cochains of p to the cochains of the top-weight subcomplex.

    Needs p(S) > codim S - 2 on every singular stratum.
    """
    top = Perversity.top(cx)
    for st in cx.singular_strata:
        if not p(st) > top(st):
            raise InputError(f"regular restriction needs p > t; stratum {st.id} has p = {p(st)}")
    source = blowup_complex(cx).intersection_subcomplex(p, ring)
    target = ordinary_cochains(cx, ring, top_subcomplex_simplices(cx))
    B = blowup_complex(cx)
    F = {}
    for k in source.degrees:
        row = {s: i for i, s in enumerate(target.labels.get(k, []))}
        cols = []
        for F_, eps in B.basis[k]:
            cols.append({row[F_]: 1} if F_ in row else {})
        F[k] = SparseMatrix(len(row), len(cols), cols)
    return chain_map_from_ambient(source, target, F)


# ---------------------------------------------------------------------------
# weight recodings


def check_same_complex(fine: WeightedComplex, coarse: WeightedComplex, phi) -> None:
    """The two complexes must share vertex order and simplices, with coarse weights phi(fine)."""
    check_recoding(phi, fine.n)
    if phi[fine.n] != coarse.n:
        raise InputError("recoding must send the top weight to the coarse top weight")
    if fine.names != coarse.names or fine.simplices != coarse.simplices:
        raise InputError("fine and coarse complexes differ as simplicial complexes")
    if any(phi[w] != cw for w, cw in zip(fine.weights, coarse.weights)):
        raise InputError("coarse weights are not the recoded fine weights")
    # the identity must be stratified: codimension may only drop
    for w in set(fine.weights):
        if fine.n - w < coarse.n - phi[w]:
            raise InputError(f"recoding raises the codimension of weight {w}")


def _groups(phi, n: int) -> list[tuple[int, int]]:
    """Consecutive fine index ranges [a, b] with a common coarse value, in order."""
    out = []
    a = 0
    for i in range(1, n + 2):
        if i == n + 1 or phi[i] != phi[a]:
            out.append((a, i - 1))
            a = i
    return out


def recoding_pullback_local(w: BlockCell, fine_blocks: tuple, phi) -> dict:
    """Pull a coarse cochain cell back to the prism of the fine decomposition.

    Coarse factors at values missed by phi are (empty, 1) and are dropped
    (inverse simple amalgamations).  Each coarse factor is then split by
    repeated Xi: first off its last fine block, then the next, and so on.
    """
    n = len(fine_blocks) - 1
    groups = _groups(phi, n)
    image = [phi[a] for a, _ in groups]
    kept = []
    for v, f in enumerate(w):
        if v in image:
            kept.append(f)
        elif f != ((), 1):
            return {}
    terms = {(): 1}
    for (a, b), f in zip(groups, kept):
        # split f into factors a..b
        pieces = {(f,): 1}
        for top in range(b, a, -1):
            E0 = tuple(v for i in range(a, top) for v in fine_blocks[i])
            E1 = tuple(fine_blocks[top])
            nxt: dict = {}
            for pc, x in pieces.items():
                for s, y0, y1 in xi(pc[0], E0, E1, last=(top == n)):
                    key = (y0, y1) + pc[1:]
                    nxt[key] = nxt.get(key, 0) + s * x
            pieces = {k: x for k, x in nxt.items() if x}
        terms = {t + pc: x * y for t, x in terms.items() for pc, y in pieces.items()}
    return {c: x for c, x in terms.items() if x}


def recoding_pullback_matrix(fine: WeightedComplex, coarse: WeightedComplex, phi, k: int) -> SparseMatrix:
    """Degree-k matrix of the induced map on blown-up cochains, coarse to fine."""
    check_same_complex(fine, coarse, phi)
    Bf, Bc = blowup_complex(fine), blowup_complex(coarse)
    rows = {c: i for i, c in enumerate(Bf.basis.get(k, []))}
    cols = {c: j for j, c in enumerate(Bc.basis.get(k, []))}
    entries = []
    for cell, i in rows.items():
        F = cell[0]
        blocks = fine.blocks(F)
        bc = to_block_cell(fine, cell)
        S = set(F)
        for ccell, j in cols.items():
            if not S.issuperset(ccell[0]):
                continue
            x = recoding_pullback_local(to_block_cell(coarse, ccell), blocks, phi).get(bc)
            if x:
                entries.append((i, j, x))
    return SparseMatrix.from_entries(len(rows), len(cols), entries)


def refinement_pullback(fine: WeightedComplex, coarse: WeightedComplex, phi, p_coarse: Perversity,
                        p_fine: Perversity | None = None, ring: Ring = ZZ) -> ChainMap:
    """Induced chain map from p_coarse-intersection cochains of ``coarse`` to p_fine ones of ``fine``."""
    check_same_complex(fine, coarse, phi)
    pulled = p_coarse.pullback(fine, phi)
    if p_fine is None:
        p_fine = pulled
    if not pulled <= p_fine:
        raise InputError("fine perversity must dominate the pulled-back coarse perversity")
    source = blowup_complex(coarse).intersection_subcomplex(p_coarse, ring)
    target = blowup_complex(fine).intersection_subcomplex(p_fine, ring)
    F = {k: recoding_pullback_matrix(fine, coarse, phi, k) for k in source.degrees}
    return chain_map_from_ambient(source, target, F)


def pullback_cochain(fine: WeightedComplex, coarse: WeightedComplex, phi, omega: dict) -> dict:
    """Pull back a coarse blown-up cochain given as {cell: coefficient}."""
    check_same_complex(fine, coarse, phi)
    out: dict = {}
    for F in fine.regular_simplices:
        blocks = fine.blocks(F)
        S = set(F)
        for ccell, x in omega.items():
            if not x or not S.issuperset(ccell[0]):
                continue
            for bc, y in recoding_pullback_local(to_block_cell(coarse, ccell), blocks, phi).items():
                cell = from_block_cell(bc)
                if cell[0] == F:
                    out[cell] = out.get(cell, 0) + x * y
    return {c: v for c, v in out.items() if v}


# ---------------------------------------------------------------------------
# relative comparison and restriction to subcomplexes


def relative_comparison(cx: WeightedComplex, p: Perversity, ring: Ring = ZZ) -> ChainMap:
    """Phi on cochains vanishing on the singular part, for p < 0 on every singular stratum.

    Such cochains are sums of 1_G with G regular; Phi sends them to cells
    whose cone coordinates are all collapsed, which every perversity allows.
    """
    for st in cx.singular_strata:
        if not p(st) < 0:
            raise InputError(f"relative comparison needs p < 0; stratum {st.id} has p = {p(st)}")
    source = ordinary_cochains(cx, ring, sorted(cx.regular_simplices))
    target = blowup_complex(cx).intersection_subcomplex(p, ring)
    F = {}
    for k in source.degrees:
        full = ordinary_comparison_matrix(cx, k)
        simplices = sorted(s for s in cx.simplices if len(s) == k + 1)
        pos = {s: j for j, s in enumerate(simplices)}
        F[k] = full.select_columns([pos[s] for s in source.labels[k]])
    return chain_map_from_ambient(source, target, F)


def restriction_map(cx: WeightedComplex, sub: WeightedComplex, p: Perversity, p_sub: Perversity,
                    ring: Ring = ZZ) -> ChainMap:
    """Restriction of intersection cochains from ``cx`` to a subcomplex with the same weights."""
    if sub.n != cx.n:
        raise InputError("subcomplex must keep the formal dimension")
    vid = {}
    for v, name in enumerate(sub.names):
        u = cx.vertex_id(name)
        if cx.weights[u] != sub.weights[v]:
            raise InputError(f"vertex {name} changes weight in the subcomplex")
        vid[v] = u
    Bs, B = blowup_complex(sub), blowup_complex(cx)
    source = B.intersection_subcomplex(p, ring)
    target = Bs.intersection_subcomplex(p_sub, ring)
    F = {}
    for k in source.degrees:
        rows = [(tuple(vid[v] for v in F_), eps) for F_, eps in Bs.basis.get(k, [])]
        cols: list[dict] = [{} for _ in B.basis.get(k, [])]
        for i, cell in enumerate(rows):
            if cell not in B.index:
                raise InputError("not a subcomplex")
            cols[B.index[cell]][i] = 1
        F[k] = SparseMatrix(len(rows), len(cols), cols)
    return chain_map_from_ambient(source, target, F)
