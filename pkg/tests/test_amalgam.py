import random

import pytest

from blowup_ih import fixtures, verify
from blowup_ih.algebra import QQ, ZZ, SparseMatrix
from blowup_ih.amalgam import (
    check_same_complex,
    elementary_pullback,
    elementary_push,
    is_simple,
    merge_blocks,
    mu_pullback_by_merging,
    mu_pullback_local,
    ordinary_comparison,
    ordinary_comparison_matrix,
    push_chain,
    recoding_pullback_matrix,
    refinement_pullback,
    regular_restriction,
    relative_comparison,
    theta,
    xi,
)
from blowup_ih.blowup import blowup_complex
from blowup_ih.complex_core import InputError, Perversity, cone, recode
from blowup_ih.io import load_complex
from blowup_ih.products import mu_push, prism_boundary, prism_cells

PINCHED = ("dim 2\nvertex o 0\nvertex a 2\nvertex b 2\nvertex c 2\nvertex d 2\nvertex e 2\nvertex f 2\n"
           "simplex o a b\nsimplex o b c\nsimplex o a c\nsimplex o d e\nsimplex o e f\nsimplex o d f\n")

BLOCK_SHAPES = [((0,), (1, 2)), ((), (1, 2)), ((0, 1), (), (2,)), ((0,), (1,), (2, 3)), ((), (0, 1), (2,))]


def ids(shapes):
    return ["|".join(",".join(map(str, b)) or "-" for b in s) for s in shapes]


class TestTwoFactors:
    def test_theta_with_an_apex_first(self):
        assert theta(((), 1), ((1, 2), 0)) == ((1, 2), 0)
        assert theta(((), 1), ((1,), 1)) == ((1,), 1)

    def test_theta_on_a_base_factor(self):
        assert theta(((0,), 0), ((2,), 0)) == ((0,), 0)
        assert theta(((0,), 0), ((1, 2), 0)) is None

    def test_xi_is_a_bijection_when_the_first_block_is_empty(self):
        E1 = (1, 2)
        images = []
        for z in [(G, e) for G in ((), (1,), (2,), (1, 2)) for e in (0, 1) if G or e]:
            terms = xi(z, (), E1)
            assert len(terms) == 1 and terms[0][0] == 1 and terms[0][1] == ((), 1)
            images.append(terms[0][2])
        assert len(set(images)) == len(images)

    def test_xi_tail(self):
        assert xi(((0,), 0), (0,), (1, 2)) == [
            (1, ((0,), 0), ((), 1)), (1, ((0,), 0), ((1,), 0)), (1, ((0,), 0), ((2,), 0))]
        assert xi(((0,), 0), (0,), (1, 2), last=True) == [(1, ((0,), 0), ((1,), 0)), (1, ((0,), 0), ((2,), 0))]

    def test_last_factor_has_no_cone(self):
        with pytest.raises(ValueError):
            xi(((0, 1), 1), (0,), (1,), last=True)


@pytest.mark.parametrize("blocks", BLOCK_SHAPES, ids=ids(BLOCK_SHAPES))
class TestElementary:
    def test_push_commutes_with_boundary(self, blocks):
        n = len(blocks) - 1
        for k in range(n):
            for c in prism_cells(blocks):
                m = elementary_push(c, k)
                rhs = prism_boundary(m) if m is not None else {}
                assert push_chain(prism_boundary(c), k) == rhs

    def test_pullback_is_the_transpose_of_push(self, blocks):
        """<Xi(w), c> = <w, theta(c)> up to the evaluation signs on each side."""
        from blowup_ih.products import evaluation_sign

        n = len(blocks) - 1
        for k in range(n):
            merged = merge_blocks(blocks, n - k - 1)
            for w in prism_cells(merged):
                pulled = elementary_pullback(w, k, blocks)
                for c in prism_cells(blocks):
                    lhs = pulled.get(c, 0) * evaluation_sign(c)
                    rhs = evaluation_sign(w) if elementary_push(c, k) == w else 0
                    assert lhs == rhs

    def test_simple_amalgamations_are_bijective(self, blocks):
        n = len(blocks) - 1
        for k in range(n):
            if not is_simple(blocks, k):
                continue
            merged = merge_blocks(blocks, n - k - 1)
            images = set()
            for w in prism_cells(merged):
                pulled = elementary_pullback(w, k, blocks)
                assert len(pulled) == 1 and abs(next(iter(pulled.values()))) == 1
                images.update(pulled)
            assert len(images) == len(prism_cells(blocks))


class TestMu:
    def test_unstratified_simplex(self):
        sigma = (0, 1, 2)
        for G in ((0,), (1, 2), (0, 1, 2)):
            assert mu_pullback_local(G, (sigma,)) == {((G, 0),): 1}

    def test_regular_vertex(self):
        blocks = ((0,), (1, 2))
        got = mu_pullback_local((1,), blocks)
        zero_cells = [c for c in prism_cells(blocks) if sum(len(f) - 1 + e for f, e in c) == 0]
        assert got == {c: 1 for c in zero_cells if mu_push(c) == (1,)}
        assert got

    @pytest.mark.parametrize("blocks", BLOCK_SHAPES, ids=ids(BLOCK_SHAPES))
    def test_two_routes(self, blocks):
        sigma = tuple(v for b in blocks for v in b)
        from itertools import combinations

        for r in range(1, len(sigma) + 1):
            for G in combinations(sigma, r):
                assert mu_pullback_local(G, blocks) == mu_pullback_by_merging(G, blocks)


class TestRecoding:
    def test_identity_recoding(self):
        cx = fixtures.build("fake_sphere3")
        phi = tuple(range(cx.n + 1))
        m = refinement_pullback(cx, cx, phi, Perversity.zero(cx), ring=ZZ)
        for k in m.source.degrees:
            assert m.at(k) == SparseMatrix.identity(m.source.dim(k))

    def test_functoriality(self):
        fine = cone(cone(fixtures.circle()))  # weights 0, 1, 3
        for phi1, phi2 in [((0, 1, 1, 2), (0, 1, 1)), ((0, 0, 1, 1), (1, 1)), ((0, 1, 2, 2), (1, 1, 2))]:
            mid = recode(fine, phi1)
            coarse = recode(mid, phi2)
            both = tuple(phi2[phi1[w]] for w in range(fine.n + 1))
            for k in blowup_complex(coarse).degrees:
                direct = recoding_pullback_matrix(fine, coarse, both, k)
                steps = recoding_pullback_matrix(fine, mid, phi1, k) @ recoding_pullback_matrix(mid, coarse, phi2, k)
                assert direct == steps, (phi1, phi2, k)

    def test_suite(self):
        bad = [r.line() for r in verify.suite_recoding(samples=15) if not r.passed]
        assert not bad, bad

    def test_fine_perversity_must_dominate(self):
        fine = fixtures.build("fake_sphere3")
        phi = fixtures.FAKE_SPHERE_RECODING[3]
        coarse = recode(fine, phi)
        with pytest.raises(InputError, match="dominate"):
            refinement_pullback(fine, coarse, phi, Perversity.zero(coarse), Perversity.constant(fine, -1))

    def test_mismatched_complexes(self):
        fine = fixtures.build("fake_sphere")
        # recoding everything to the top weight gives the plain sphere fixture
        check_same_complex(fine, fixtures.build("sphere"), (2, 2, 2))
        with pytest.raises(InputError, match="differ"):
            check_same_complex(fine, fixtures.build("torus").with_weights([2] * 7, 2), (2, 2, 2))
        with pytest.raises(InputError, match="recoded"):
            check_same_complex(fine, recode(fine, (2, 2, 2)), (1, 2, 2))

    def test_codimension_may_not_grow(self):
        fine = cone(cone(fixtures.circle()))
        with pytest.raises(InputError, match="codimension"):
            check_same_complex(fine, recode(fine, (0, 0, 2, 3)), (0, 0, 2, 3))


class TestComparisons:
    def test_unstratified_sphere_is_a_basis_bijection(self):
        cx = fixtures.build("sphere")
        for k in range(3):
            M = ordinary_comparison_matrix(cx, k)
            assert M.nrows == M.ncols
            assert all(len(c) == 1 and abs(next(iter(c.values()))) == 1 for c in M.cols)
            assert len({next(iter(c)) for c in M.cols}) == M.ncols

    def test_cone_on_a_circle(self):
        m = ordinary_comparison(fixtures.build("cone_circle"), QQ)
        assert m.source.ranks() == m.target.ranks() == (1, 0, 0)

    def test_non_normal_refused(self):
        with pytest.raises(InputError, match="normal"):
            ordinary_comparison(load_complex(PINCHED))

    def test_restriction_above_top(self):
        cx = fixtures.build("cone_circle")
        m = regular_restriction(cx, Perversity.constant(cx, 1), QQ)
        assert m.source.ranks()[:2] == m.target.ranks() == (1, 1)
        assert all(m.degreewise_iso().values())

    def test_restriction_on_an_unstratified_complex_is_the_identity(self):
        cx = fixtures.build("torus")
        m = regular_restriction(cx, Perversity.zero(cx), ZZ)
        Phi = {k: ordinary_comparison_matrix(cx, k) for k in range(3)}
        for k in m.source.degrees:
            # gamma composed with Phi is the identity on ordinary cochains
            assert (m.source.retraction[k] @ Phi[k]).nrows == m.source.dim(k)
            assert m.at(k) @ (m.source.retraction[k] @ Phi[k]) == SparseMatrix.identity(m.target.dim(k))

    def test_relative_on_the_cone(self):
        cx = fixtures.build("cone_circle")
        m = relative_comparison(cx, Perversity.constant(cx, -1), QQ)
        assert m.source.ranks() == (0, 0, 0) == m.target.ranks()

    @pytest.mark.parametrize("value, fn", [(0, regular_restriction), (0, relative_comparison)])
    def test_sign_preconditions(self, value, fn):
        cx = fixtures.build("cone_circle")
        with pytest.raises(InputError):
            fn(cx, Perversity.constant(cx, value))

    def test_random_phi_images_are_zero_perversity_cochains(self):
        from blowup_ih.blowup import is_intersection_cochain

        cx = fixtures.build("susp_torus")
        B = blowup_complex(cx)
        rnd = random.Random(2)
        for k in range(4):
            M = ordinary_comparison_matrix(cx, k)
            for _ in range(10):
                v = {rnd.randrange(M.ncols): rnd.choice((-1, 1))}
                assert is_intersection_cochain(cx, B.cochain(k, M.apply(v)), Perversity.zero(cx))
