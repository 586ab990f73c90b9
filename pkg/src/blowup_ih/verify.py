"""Property suites run by ``blowup-ih verify``.

Each check returns a :class:`CheckResult` with the number of cases it
examined and, on failure, a description of the first failing input.
Suites walk inputs in increasing size, so the first witness is a small one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import fixtures
from .algebra import QQ, ZZ, Ring, difference_map, paired_map
from .amalgam import (
    elementary_pullback, elementary_push, index_map, is_simple, local_coboundary, local_coboundary_cochain,
    local_perverse_degree, merge_blocks, mu_pullback_by_merging, mu_pullback_local, ordinary_comparison,
    pullback_cochain, recoding_pullback_matrix, refinement_pullback, regular_restriction, relative_comparison,
    restriction_map, simplex_coboundary_local,
)
from .blowup import blowup_complex, cell_dim, differential, format_cell, is_intersection_cochain
from .chains import gd, gd_chain, gd_join, is_allowable_chain, tame_complex
from .complex_core import (
    INF, NEG_INF, Perversity, WeightedComplex, cone, gm_perversities, pad, recode,
)
from .products import (
    cap, cap_blowup, check_hidden_faces, chi_map, cup, cup_local, mu_push, prism_boundary, prism_cells,
    simplex_boundary,
)


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    cases: int
    witness: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.suite}: {self.name} ({self.cases} cases)"
        if self.witness:
            out += f"\n       counterexample: {self.witness}"
        return out


class _Check:
    """Counts cases and keeps the first failure."""

    def __init__(self, suite: str, name: str):
        self.suite, self.name = suite, name
        self.cases = 0
        self.witness: str | None = None

    def case(self, ok: bool, describe: Callable[[], str]) -> bool:
        self.cases += 1
        if not ok and self.witness is None:
            self.witness = describe()
        return ok

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def result(self) -> CheckResult:
        return CheckResult(self.suite, self.name, self.witness is None, self.cases, self.witness)


def _add(a: dict, b: dict, s: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def _lin(f: Callable[[object], dict], chain: dict) -> dict:
    out: dict = {}
    for c, x in chain.items():
        for d, y in f(c).items():
            out[d] = out.get(d, 0) + x * y
    return {k: v for k, v in out.items() if v}


def small_fixtures(max_vertices: int = 6) -> list[str]:
    return [n for n in fixtures.names() if fixtures.build(n).num_vertices <= max_vertices]


def filtered_simplices(max_vertices: int, max_n: int) -> Iterator[tuple]:
    """Block decompositions with consecutive vertex ids, smallest first."""
    for total in range(1, max_vertices + 1):
        for n in range(max_n + 1):
            for sizes in itertools.product(range(total + 1), repeat=n + 1):
                if sizes[-1] == 0 or sum(sizes) != total:
                    continue
                blocks, v = [], 0
                for s in sizes:
                    blocks.append(tuple(range(v, v + s)))
                    v += s
                yield tuple(blocks)


def perversities(cx: WeightedComplex) -> list[Perversity]:
    """GM perversities plus zero, top and their duals, deduplicated."""
    out = [Perversity.gm(cx, v) for v in gm_perversities(cx.n)]
    out += [Perversity.zero(cx), Perversity.top(cx)]
    out += [p.dual() for p in list(out)]
    seen, uniq = set(), []
    for p in out:
        if p.values not in seen:
            seen.add(p.values)
            uniq.append(p)
    return uniq


def _fmt_blocks(blocks: tuple) -> str:
    return "|".join("".join(chr(97 + v) for v in b) or "-" for b in blocks)


# ---------------------------------------------------------------------------
# signs


def suite_signs(names: Iterable[str] | None = None, max_vertices: int = 5) -> list[CheckResult]:
    names = list(names) if names is not None else fixtures.names()
    sq = _Check("signs", "blown-up differential squares to zero")
    agree = _Check("signs", "adjunction and factorwise differentials agree")
    gsq = _Check("signs", "regular-part boundary squares to zero")
    gjoin = _Check("signs", "regular-part boundary matches the join rule")
    tame = _Check("signs", "intersection and tame complexes square to zero")
    for name in names:
        cx = fixtures.build(name)
        B = blowup_complex(cx)
        for k in B.degrees:
            D = B.matrix(k)
            if k + 1 in B.basis:
                M = B.matrix(k + 1) @ D
                bad = next((j for j, c in enumerate(M.cols) if c), None)
                sq.case(bad is None, lambda: f"{name}: d(d x) != 0 in degree {k + 2}, x = {format_cell(cx, B.basis[k][bad])}")
            agree.case(D == B.matrix(k, "factorwise"),
                       lambda: f"{name}: degree {k} matrices differ")
        for s in cx.regular_simplices:
            gsq.case(not gd_chain(cx, gd(cx, s)), lambda: f"{name}: {cx.label(s)}")
            gjoin.case(gd(cx, s) == gd_join(cx, s), lambda: f"{name}: {cx.label(s)}")
        for p in perversities(cx):
            tame.case(B.intersection_subcomplex(p).check_square_zero() and tame_complex(cx, p).check_square_zero(),
                      lambda: f"{name}: perversity {p.spec()}")
    prism = _Check("signs", "prism boundary squares to zero")
    hidden = _Check("signs", "boundary of the fundamental cell is face blow-ups plus hidden faces")
    for blocks in filtered_simplices(max_vertices, 3):
        for c in prism_cells(blocks):
            if prism.failed:
                break
            prism.case(not _lin(prism_boundary, prism_boundary(c)), lambda: f"{_fmt_blocks(blocks)}: {c}")
        hidden.case(check_hidden_faces(blocks), lambda: _fmt_blocks(blocks))
    return [c.result() for c in (sq, agree, gsq, gjoin, tame, prism, hidden)]


# ---------------------------------------------------------------------------
# cup


def suite_cup(names: Iterable[str] | None = None, witnesses: Iterable[str] = ("sphere", "susp_torus")) -> list[CheckResult]:
    names = list(names) if names is not None else small_fixtures()
    leib = _Check("cup", "Leibniz rule")
    unit = _Check("cup", "unit")
    assoc = _Check("cup", "associativity")
    for name in names:
        cx = fixtures.build(name)
        B = blowup_complex(cx)
        cells = [c for k in B.degrees for c in B.basis[k]]
        d1 = {c: differential(cx, {c: 1}) for c in cells}
        one = B.unit()
        products: dict = {}
        for a in cells:
            unit.case(cup(cx, one, {a: 1}) == {a: 1} == cup(cx, {a: 1}, one), lambda: f"{name}: {format_cell(cx, a)}")
            ka = cell_dim(cx, a)
            for b in cells:
                ab = cup(cx, {a: 1}, {b: 1})
                if ab:
                    products[a, b] = ab
                lhs = differential(cx, ab)
                rhs = _add(cup(cx, d1[a], {b: 1}), cup(cx, {a: 1}, d1[b]), (-1) ** ka)
                leib.case(lhs == rhs, lambda: f"{name}: {format_cell(cx, a)} , {format_cell(cx, b)}")
        for (a, b), ab in products.items():
            for c in cells:
                bc = products.get((b, c), {})
                assoc.case(cup(cx, ab, {c: 1}) == cup(cx, {a: 1}, bc),
                           lambda: f"{name}: {format_cell(cx, a)}, {format_cell(cx, b)}, {format_cell(cx, c)}")
    comm = _Check("cup", "graded commutativity up to a coboundary")
    for name in witnesses:
        cx = fixtures.build(name)
        for p in (Perversity.zero(cx),):
            C = blowup_complex(cx).intersection_subcomplex(p, QQ)
            reps = {k: [C.to_coordinates(k, v) for v in C.homology(k, representatives=True).representatives]
                    for k in C.degrees}
            B = blowup_complex(cx)
            for k1, k2 in itertools.product(C.degrees, repeat=2):
                for u in reps[k1]:
                    for v in reps[k2]:
                        w = B.cochain(k1, C.from_coordinates(k1, u))
                        z = B.cochain(k2, C.from_coordinates(k2, v))
                        diff = _add(cup(cx, w, z, QQ), cup(cx, z, w, QQ), -((-1) ** (k1 * k2)))
                        k = k1 + k2
                        if not diff:
                            comm.case(True, str)
                            continue
                        x = C.coboundary_witness(k, C.to_coordinates(k, B.vector(k, diff)))
                        comm.case(x is not None, lambda: f"{name}: degrees {k1},{k2}: no witness")
    return [c.result() for c in (leib, unit, assoc, comm)]


# ---------------------------------------------------------------------------
# cap


def suite_cap(names: Iterable[str] | None = None, max_vertices: int = 5) -> list[CheckResult]:
    names = list(names) if names is not None else small_fixtures()
    leib = _Check("cap", "Leibniz rule with the regular-part boundary")
    cupcap = _Check("cap", "cup-cap associativity with the Koszul sign")
    for name in names:
        cx = fixtures.build(name)
        B = blowup_complex(cx)
        cells = [c for k in B.degrees for c in B.basis[k]]
        sims = cx.regular_simplices
        for a in cells:
            w, k = {a: 1}, cell_dim(cx, a)
            dw = differential(cx, w)
            for s in sims:
                lhs = gd_chain(cx, cap(cx, w, {s: 1}))
                rhs = _add(cap(cx, dw, {s: 1}), cap(cx, w, gd_chain(cx, {s: 1})), (-1) ** k)
                leib.case(lhs == rhs, lambda: f"{name}: {format_cell(cx, a)} cap {cx.label(s)}")
        for a in cells:
            ka = cell_dim(cx, a)
            for b in cells:
                ab = cup(cx, {a: 1}, {b: 1})
                kb = cell_dim(cx, b)
                for s in sims:
                    inner = cap(cx, {a: 1}, {s: 1})
                    rhs = {g: (-1) ** (ka * kb) * v for g, v in cap(cx, {b: 1}, inner).items()}
                    cupcap.case(cap(cx, ab, {s: 1}) == rhs,
                                lambda: f"{name}: {format_cell(cx, a)}, {format_cell(cx, b)}, {cx.label(s)}")
    mu = _Check("cap", "mu_* commutes with boundaries")
    for blocks in filtered_simplices(max_vertices, 3):
        for c in prism_cells(blocks):
            g = mu_push(c)
            lhs = simplex_boundary(g) if g is not None else {}
            rhs: dict = {}
            for f, x in prism_boundary(c).items():
                h = mu_push(f)
                if h is not None:
                    rhs[h] = rhs.get(h, 0) + x
            rhs = {h: v for h, v in rhs.items() if v}
            mu.case(lhs == rhs, lambda: f"{_fmt_blocks(blocks)}: {c}")
    return [c.result() for c in (leib, cupcap, mu)]


# ---------------------------------------------------------------------------
# amalgamation


def _restrict_local(cochain: dict, keep: set) -> dict:
    return {w: x for w, x in cochain.items() if all(set(f) <= keep for f, _ in w)}


def suite_amalgam(max_vertices: int = 6, max_n: int = 3, cup_limit: int | None = None) -> list[CheckResult]:
    push = _Check("amalgam", "theta commutes with boundaries")
    pull = _Check("amalgam", "Xi commutes with coboundaries")
    cupc = _Check("amalgam", "pullback respects cup products")
    capc = _Check("amalgam", "push(pull(w) cap fine prism) = w cap coarse prism")
    pdeg = _Check("amalgam", "perverse degree inequality")
    pdeq = _Check("amalgam", "perverse degree equality for simple amalgamations")
    simple = _Check("amalgam", "simple amalgamations are bijective on bases")
    face = _Check("amalgam", "pullback commutes with restriction to regular faces")
    mu_routes = _Check("amalgam", "mu^* as transpose equals mu^* as merged pullbacks")
    mu_chain = _Check("amalgam", "mu^* commutes with coboundaries")

    for blocks in filtered_simplices(max_vertices, max_n):
        n = len(blocks) - 1
        tag = _fmt_blocks(blocks)
        fine = prism_cells(blocks)
        for k in range(n):
            j = n - k - 1
            cb = merge_blocks(blocks, j)
            coarse = prism_cells(cb)

            def pu(w, k=k, blocks=blocks):
                return elementary_pullback(w, k, blocks)

            def ps(c, k=k):
                m = elementary_push(c, k)
                return {m: 1} if m is not None else {}

            for c in fine:
                push.case(_lin(ps, prism_boundary(c)) == _lin(prism_boundary, ps(c)), lambda: f"{tag}, k={k}: {c}")
            for w in coarse:
                pull.case(_lin(pu, local_coboundary(w, cb)) == local_coboundary_cochain(pu(w), blocks),
                          lambda: f"{tag}, k={k}: {w}")
                s, c = cap_blowup(w, cb)
                rhs = {c: s} if s else {}
                capped: dict = {}
                for x, u in pu(w).items():
                    s2, c2 = cap_blowup(x, blocks)
                    if s2:
                        capped[c2] = capped.get(c2, 0) + s2 * u
                capc.case(_lin(ps, {q: v for q, v in capped.items() if v}) == rhs, lambda: f"{tag}, k={k}: {w}")
            if cup_limit is None or len(coarse) <= cup_limit:
                pulled = {w: pu(w) for w in coarse}
                for a in coarse:
                    for b in coarse:
                        s, ab = cup_local(a, b)
                        lhs = _lin(pu, {ab: s}) if s else {}
                        rhs: dict = {}
                        for x, u in pulled[a].items():
                            for y, v in pulled[b].items():
                                s2, xy = cup_local(x, y)
                                if s2:
                                    rhs[xy] = rhs.get(xy, 0) + s2 * u * v
                        rhs = {q: v for q, v in rhs.items() if v}
                        cupc.case(lhs == rhs, lambda: f"{tag}, k={k}: {a} cup {b}")
            simp = is_simple(blocks, k)
            levels = [ell for ell in range(n + 1) if blocks[n - ell]]
            for w in coarse:
                pw = pu(w)
                for ell in levels:
                    lo = local_perverse_degree(pw, ell)
                    hi = local_perverse_degree({w: 1}, index_map(k, ell))
                    pdeg.case(lo <= hi, lambda: f"{tag}, k={k}, l={ell}: {w}: {lo} > {hi}")
                    if simp:
                        pdeq.case(lo == hi, lambda: f"{tag}, k={k}, l={ell}: {w}: {lo} != {hi}")
            if simp:
                imgs = [pu(w) for w in coarse]
                ok = all(len(i) == 1 and abs(next(iter(i.values()))) == 1 for i in imgs)
                ok = ok and sorted(next(iter(i)) for i in imgs) == sorted(fine)
                simple.case(ok, lambda: f"{tag}, k={k}")
            # faces: drop one vertex, keeping the last block nonempty
            for v in (x for b in blocks for x in b):
                sub = tuple(tuple(x for x in b if x != v) for b in blocks)
                if not sub[n]:
                    continue
                keep = {x for b in sub for x in b}
                for w in prism_cells(cb):
                    lhs = _restrict_local(pu(w), keep)
                    rw = _restrict_local({w: 1}, keep)
                    rhs = _lin(lambda x: elementary_pullback(x, k, sub), rw) if rw else {}
                    face.case(lhs == rhs, lambda: f"{tag}, k={k}, face without {chr(97 + v)}: {w}")
        allv = tuple(v for b in blocks for v in b)
        for r in range(1, len(allv) + 1):
            for G in itertools.combinations(allv, r):
                a = mu_pullback_local(G, blocks)
                mu_routes.case(a == mu_pullback_by_merging(G, blocks), lambda: f"{tag}: {G}")
                rhs = _lin(lambda H: mu_pullback_local(H, blocks), simplex_coboundary_local(G, allv))
                mu_chain.case(local_coboundary_cochain(a, blocks) == rhs, lambda: f"{tag}: {G}")
    return [c.result() for c in (push, pull, cupc, capc, pdeg, pdeq, simple, face, mu_routes, mu_chain)]


def recoding_examples() -> list[tuple[str, WeightedComplex, tuple]]:
    """(label, fine complex, recoding) pairs used by the global recoding checks."""
    out = []
    for dim, name in ((2, "fake_sphere"), (3, "fake_sphere3")):
        out.append((name, fixtures.build(name), fixtures.FAKE_SPHERE_RECODING[dim]))
    cc = cone(cone(fixtures.circle()))
    for phi in ((0, 1, 1, 2), (0, 0, 1, 1), (1, 1, 2, 2), (0, 2, 2, 2), (0, 0, 0, 1)):
        out.append(("cone of cone_circle", cc, phi))
    return out


def suite_recoding(rings: Iterable[Ring] = (QQ, ZZ), samples: int = 40, seed: int = 0) -> list[CheckResult]:
    chain = _Check("recoding", "refinement pullback is a chain map")
    iso = _Check("recoding", "fake-sphere pullback is an isomorphism for GM perversities")
    func = _Check("recoding", "pullback along a composite recoding is the composite pullback")
    cupc = _Check("recoding", "pullback respects cup products")
    capc = _Check("recoding", "f_*(f^* w cap x) = w cap f_* x")
    rnd = random.Random(seed)
    for label, fine, phi in recoding_examples():
        coarse = recode(fine, phi)
        Bf, Bc = blowup_complex(fine), blowup_complex(coarse)
        for k in Bc.degrees:
            if k + 1 not in Bc.basis:
                continue
            M0 = recoding_pullback_matrix(fine, coarse, phi, k)
            M1 = recoding_pullback_matrix(fine, coarse, phi, k + 1)
            chain.case(Bf.matrix(k) @ M0 == M1 @ Bc.matrix(k), lambda: f"{label} {phi}: degree {k}")
        if label.startswith("fake_sphere"):
            for vals in gm_perversities(coarse.n):
                for ring in rings:
                    m = refinement_pullback(fine, coarse, phi, Perversity.gm(coarse, vals),
                                            Perversity.gm(fine, vals), ring)
                    rep = m.degreewise_iso()
                    iso.case(m.is_chain_map() and all(rep.values()),
                             lambda: f"{label} gm {vals} over {ring.spec}: {rep}")
        cells = [c for k in Bc.degrees for c in Bc.basis[k]]
        for _ in range(samples):
            om = {c: rnd.choice((-2, -1, 1, 2)) for c in rnd.sample(cells, min(3, len(cells)))}
            et = {c: rnd.choice((-2, -1, 1, 2)) for c in rnd.sample(cells, min(3, len(cells)))}
            lhs = pullback_cochain(fine, coarse, phi, cup(coarse, om, et))
            rhs = cup(fine, pullback_cochain(fine, coarse, phi, om), pullback_cochain(fine, coarse, phi, et))
            cupc.case(lhs == rhs, lambda: f"{label} {phi}: {om} cup {et}")
            regs = fine.regular_simplices
            x = {s: rnd.choice((-1, 1)) for s in rnd.sample(regs, min(4, len(regs)))}
            capc.case(cap(coarse, om, x) == cap(fine, pullback_cochain(fine, coarse, phi, om), x),
                      lambda: f"{label} {phi}: {om} cap {x}")
    cc = cone(cone(fixtures.circle()))
    for phi1, phi2 in (((0, 1, 1, 2), (0, 0, 1)), ((0, 1, 2, 2), (1, 1, 2)), ((0, 0, 1, 1), (1, 1))):
        mid = recode(cc, phi1)
        coarse = recode(mid, phi2)
        phi = tuple(phi2[x] for x in phi1)
        for k in blowup_complex(coarse).degrees:
            A = recoding_pullback_matrix(cc, mid, phi1, k) @ recoding_pullback_matrix(mid, coarse, phi2, k)
            func.case(A == recoding_pullback_matrix(cc, coarse, phi, k), lambda: f"{phi1} then {phi2}: degree {k}")
    return [c.result() for c in (chain, iso, func, cupc, capc)]


# ---------------------------------------------------------------------------
# chi and comparisons


CHI_FIXTURES = ("cone_circle", "cone_sphere", "susp_torus", "cone_interval", "susp_circle", "fake_sphere")


def suite_chi(names: Iterable[str] = CHI_FIXTURES, ring: Ring = QQ) -> list[CheckResult]:
    chain = _Check("chi", "chi is a chain map")
    iso = _Check("chi", "chi is a quasi-isomorphism")
    for name in names:
        cx = fixtures.build(name)
        for p in perversities(cx):
            m = chi_map(cx, p, ring)
            ok = m.is_chain_map()
            chain.case(ok, lambda: f"{name}: {p.spec()}")
            if ok:
                rep = m.degreewise_iso()
                iso.case(all(rep.values()), lambda: f"{name}: {p.spec()}: {rep}")
    return [chain.result(), iso.result()]


def suite_comparison(ring: Ring = QQ) -> list[CheckResult]:
    ordinary = _Check("comparison", "Phi: ordinary cochains to the zero perversity")
    regular = _Check("comparison", "gamma: restriction to the top-weight part for p > t")
    relative = _Check("comparison", "relative cochains to p < 0")
    for name in ("cone_circle", "susp_torus", "cone_sphere", "susp_circle", "torus", "fake_sphere", "cone_torus"):
        cx = fixtures.build(name)
        if cx.is_normal():
            m = ordinary_comparison(cx, ring)
            rep = m.degreewise_iso()
            ordinary.case(m.is_chain_map() and all(rep.values()), lambda: f"{name}: {rep}")
        if not cx.singular_strata:
            continue
        for v in (cx.n - 1, INF):
            p = Perversity.constant(cx, v)
            m = regular_restriction(cx, p, ring)
            rep = m.degreewise_iso()
            regular.case(m.is_chain_map() and all(rep.values()), lambda: f"{name}: p = {v}: {rep}")
        for v in (-1, NEG_INF):
            p = Perversity.constant(cx, v)
            m = relative_comparison(cx, p, ring)
            rep = m.degreewise_iso()
            relative.case(m.is_chain_map() and all(rep.values()), lambda: f"{name}: p = {v}: {rep}")
    return [ordinary.result(), regular.result(), relative.result()]


def suspension_cover(cx: WeightedComplex, north: str = "N", south: str = "S"):
    """The two closed cone halves of a suspension and their intersection."""
    N, S = cx.vertex_id(north), cx.vertex_id(south)
    U = cx.subcomplex([f for f in cx.facets if S not in f])
    V = cx.subcomplex([f for f in cx.facets if N not in f])
    W = cx.subcomplex([tuple(v for v in f if v not in (N, S)) for f in cx.facets])
    return U, V, W


def mayer_vietoris_ranks(cx: WeightedComplex, codim_values, ring: Ring = QQ) -> dict:
    """Ranks in the long exact sequence of the cone-half cover of a suspension."""
    U, V, W = suspension_cover(cx)

    def P(c):
        return Perversity.from_codim(c, codim_values)

    a = paired_map(restriction_map(cx, U, P(cx), P(U), ring), restriction_map(cx, V, P(cx), P(V), ring))
    b = difference_map(restriction_map(U, W, P(U), P(W), ring), restriction_map(V, W, P(V), P(W), ring))
    degs = sorted(set(a.source.degrees) | set(b.target.degrees))
    out = {"X": {}, "UV": {}, "W": {}, "a": {}, "b": {}, "zero_composite": True}
    for k in degs:
        out["X"][k] = a.source.homology(k).rank
        out["UV"][k] = a.target.homology(k).rank
        out["W"][k] = b.target.homology(k).rank
        out["a"][k] = a.induced_rank(k) if k in a.source.dims else 0
        out["b"][k] = b.induced_rank(k) if k in b.source.dims else 0
        if not (b.at(k) @ a.at(k)).over(ring).is_zero():
            out["zero_composite"] = False
    return out


def mayer_vietoris_exact(r: dict) -> tuple[bool, str]:
    """Exactness of the long exact sequence, degree by degree, from ranks."""
    degs = sorted(r["X"])
    for k in degs:
        if r["UV"][k] - r["b"][k] != r["a"][k]:
            return False, f"not exact at H^{k}(U)+H^{k}(V)"
        nxt = r["X"].get(k + 1, 0) - r["a"].get(k + 1, 0)
        if r["W"][k] - r["b"][k] != nxt:
            return False, f"connecting map in degree {k} has the wrong rank"
    if not r["zero_composite"]:
        return False, "restriction composite is nonzero"
    return True, ""


def suite_mayer_vietoris(ring: Ring = QQ) -> list[CheckResult]:
    mv = _Check("mayer-vietoris", "long exact sequence of the suspended torus")
    cx = fixtures.build("susp_torus")
    for vals in ([0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]):
        ok, why = mayer_vietoris_exact(mayer_vietoris_ranks(cx, vals, ring))
        mv.case(ok, lambda: f"codim values {vals}: {why}")
    return [mv.result()]


# ---------------------------------------------------------------------------
# closure and shifted filtrations


def _random_perversity(cx: WeightedComplex, rnd: random.Random) -> Perversity:
    choices = [NEG_INF, -1, 0, 1, 2, 3, INF]
    return Perversity(cx, [rnd.choice(choices) if s.is_singular else 0 for s in cx.strata])


def _random_element(C, k: int, rnd: random.Random) -> dict:
    m = C.dim(k)
    if m == 0:
        return {}
    idx = rnd.sample(range(m), min(m, rnd.randint(1, 3)))
    return C.from_coordinates(k, {i: rnd.choice((-2, -1, 1, 2)) for i in idx})


def suite_closure(names: Iterable[str] | None = None, samples: int = 500, seed: int = 0) -> list[CheckResult]:
    names = list(names) if names is not None else small_fixtures()
    cupc = _Check("closure", "p-cochain cup q-cochain is a (p+q)-intersection cochain")
    capc = _Check("closure", "p-cochain cap tame q-chain is a tame (p+q)-chain")
    for name in names:
        cx = fixtures.build(name)
        B = blowup_complex(cx)
        rnd = random.Random(f"{seed}:{name}")
        cache: dict = {}

        def sub(p):
            if p.values not in cache:
                cache[p.values] = (B.intersection_subcomplex(p), tame_complex(cx, p))
            return cache[p.values]

        for _ in range(samples):
            p, q = _random_perversity(cx, rnd), _random_perversity(cx, rnd)
            Cp, _ = sub(p)
            Cq, Tq = sub(q)
            k1, k2, m = rnd.choice(Cp.degrees), rnd.choice(Cq.degrees), rnd.choice(Tq.degrees)
            w = B.cochain(k1, _random_element(Cp, k1, rnd))
            z = B.cochain(k2, _random_element(Cq, k2, rnd))
            vec = _random_element(Tq, m, rnd)
            x = {Tq.labels[m][i]: v for i, v in vec.items() if v}
            pq = p + q
            cupc.case(is_intersection_cochain(cx, cup(cx, w, z), pq),
                      lambda: f"{name}: p={p.spec()} q={q.spec()} w={w} z={z}")
            wx = cap(cx, w, x)
            ok = all(cx.is_regular(s) for s in wx) and is_allowable_chain(cx, wx, pq) \
                and is_allowable_chain(cx, gd_chain(cx, wx), pq)
            capc.case(ok, lambda: f"{name}: p={p.spec()} q={q.spec()} w={w} x={x}")
    return [cupc.result(), capc.result()]


def group_tables(cx: WeightedComplex, ring: Ring) -> dict:
    """Every computed table of a fixture, keyed by what was computed."""
    out = {}
    for vals in gm_perversities(cx.n) + [[0] + [c - 2 for c in range(1, cx.n + 1)]]:
        p = Perversity.from_codim(cx, vals)
        key = " ".join(map(str, vals))
        out["H " + key] = tuple(str(g) for g in blowup_complex(cx).intersection_subcomplex(p, ring).homology_table())
        out["h " + key] = tuple(str(g) for g in tame_complex(cx, p, ring).homology_table())
    return out


def suite_shift(names: Iterable[str] | None = None, ring: Ring = ZZ, shifts: Iterable[int] = (1, 2)) -> list[CheckResult]:
    """Padding every weight by m leaves each group table unchanged."""
    names = list(names) if names is not None else small_fixtures()
    chk = _Check("shift", "weight padding leaves group tables unchanged")
    for name in names:
        cx = fixtures.build(name)
        base = group_tables(cx, ring)
        for m in shifts:
            padded = pad(cx, m)
            # codimensions are unchanged; extend each codimension function to n + m
            got = {}
            for key, val in base.items():
                kind, *vals = key.split()
                vals = [int(v) for v in vals]
                pv = vals + [vals[-1]] * m
                p = Perversity.from_codim(padded, pv)
                if kind == "H":
                    C = blowup_complex(padded).intersection_subcomplex(p, ring)
                else:
                    C = tame_complex(padded, p, ring)
                got[key] = tuple(str(g) for g in C.homology_table())
            chk.case(got == base, lambda: f"{name} padded by {m}")
    return [chk.result()]


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "signs": suite_signs,
    "cup": suite_cup,
    "cap": suite_cap,
    "amalgam": suite_amalgam,
    "recoding": suite_recoding,
    "chi": suite_chi,
    "comparison": suite_comparison,
    "mayer-vietoris": suite_mayer_vietoris,
    "closure": suite_closure,
    "shift": suite_shift,
}


def run(selector: str = "all") -> list[CheckResult]:
    if selector == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn())
        return out
    if selector not in SUITES:
        raise KeyError(selector)
    return SUITES[selector]()
