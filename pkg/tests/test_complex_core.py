import pytest
from hypothesis import given, settings

from blowup_ih import fixtures
from blowup_ih.complex_core import (
    INF,
    NEG_INF,
    InputError,
    Perversity,
    boundary,
    boundary_terms,
    cone,
    ext_add,
    gm_perversities,
    join,
    join_decomposition,
    pad,
    parse_perversity,
    prism,
    recode,
    sorted_sign,
    subdivide,
    suspension,
)
from blowup_ih.io import load_complex
from strategies import weighted_complexes

TRIANGLE = "dim 1\nvertex a 0\nvertex b 1\nvertex c 1\nsimplex a b c\n"


def euler(cx):
    return sum((-1) ** (len(s) - 1) for s in cx.simplices)


def named(cx, chain):
    return {tuple(cx.names[v] for v in fs.vertices): x for fs, x in chain.items()}


class TestLoading:
    def test_blocks_of_example_triangle(self):
        cx = load_complex(TRIANGLE)
        fs = join_decomposition(["a", "b", "c"], cx)
        assert [[cx.names[v] for v in b] for b in fs.blocks] == [["a"], ["b", "c"]]
        assert fs.is_regular

    def test_point(self):
        cx = load_complex("dim 0\nvertex p 0\nsimplex p\n")
        assert cx.n == 0 and cx.dimension == 0 and len(cx.strata) == 1

    def test_repeated_vertex_rejected(self):
        with pytest.raises(InputError, match="repeats a vertex"):
            load_complex("dim 1\nvertex a 0\nvertex b 1\nsimplex a a b\n")

    @pytest.mark.parametrize("text, msg", [
        ("vertex a 0\nsimplex a\n", "missing 'dim'"),
        ("dim 1\nvertex a 0\nsimplex a\n", "no regular simplex"),
        ("dim 1\nvertex a 3\nsimplex a\n", "outside"),
        ("dim 1\nvertex a 1\nsimplex a b\n", "unknown vertex"),
        ("dim 1\nvertex a 1\nvertex a 1\nsimplex a\n", "duplicate vertex"),
        ("dim 1\nvertx a 1\n", "line 2: unknown keyword"),
    ])
    def test_malformed_input(self, text, msg):
        with pytest.raises(InputError, match=msg):
            load_complex(text)

    def test_vertices_reordered_by_weight(self):
        cx = load_complex("dim 2\nvertex z 2\nvertex y 0\nvertex x 1\nsimplex x y z\n")
        assert cx.names == ("y", "x", "z")
        assert list(cx.weights) == sorted(cx.weights)


class TestJoinDecomposition:
    def test_all_regular(self):
        cx = load_complex("dim 1\nvertex b 1\nvertex c 1\nsimplex b c\n")
        fs = join_decomposition(["b", "c"], cx)
        assert fs.blocks[0] == () and len(fs.blocks[1]) == 2

    def test_low_vertex_is_not_regular(self):
        cx = fixtures.build("cone_circle")
        fs = join_decomposition(["c1"], cx)
        assert fs.blocks == ((0,), (), ()) and not fs.is_regular


class TestBoundary:
    def test_edge_and_triangle(self):
        cx = load_complex(TRIANGLE)
        assert named(cx, boundary(join_decomposition(["a", "b"], cx), cx)) == {("b",): 1, ("a",): -1}
        assert named(cx, boundary(join_decomposition(["a", "b", "c"], cx), cx)) == \
            {("b", "c"): 1, ("a", "c"): -1, ("a", "b"): 1}

    @pytest.mark.parametrize("name", fixtures.names())
    def test_boundary_squares_to_zero(self, name):
        cx = fixtures.build(name)
        for s in cx.simplices:
            acc: dict = {}
            for f, a in boundary_terms(s):
                for g, b in boundary_terms(f):
                    acc[g] = acc.get(g, 0) + a * b
            assert not any(acc.values())

    def test_sorted_sign(self):
        assert sorted_sign([2, 1]) == (-1, (1, 2))
        assert sorted_sign([3, 1, 2]) == (1, (1, 2, 3))
        assert sorted_sign([1, 1])[0] == 0


class TestStrata:
    def test_unstratified_sphere(self):
        cx = fixtures.build("sphere")
        assert len(cx.strata) == 1 and not cx.singular_strata

    def test_cone_apex(self):
        cx = fixtures.build("cone_circle")
        (apex,) = cx.singular_strata
        assert apex.codim == 2 and [cx.names[v] for v in apex.vertices] == ["c1"]
        assert len(cx.strata) == 2

    def test_suspension_apexes(self):
        cx = fixtures.build("susp_torus")
        assert sorted((s.codim, cx.names[min(s.vertices)]) for s in cx.singular_strata) == [(3, "N"), (3, "S")]

    def test_meets(self):
        cx = fixtures.build("cone_circle")
        apex = cx.singular_strata[0]
        regular = next(s for s in cx.strata if not s.is_singular)
        assert cx.meets(cx.simplex(["c1", "a", "b"]), apex)
        assert not cx.meets(cx.simplex(["a", "b"]), apex)
        assert not cx.meets(cx.simplex(["c1"]), regular)

    @pytest.mark.parametrize("name", fixtures.names())
    def test_strata_partition_simplices(self, name):
        cx = fixtures.build(name)
        for s in cx.simplices:
            st = cx.stratum_of(s)
            assert cx.top_weight(s) == st.index
            for other in cx.strata:
                if cx.meets(s, other):
                    assert cx.blocks(s)[other.index]

    def test_stratum_of_another_complex_rejected(self):
        a, b = fixtures.build("cone_circle"), fixtures.build("cone_sphere")
        with pytest.raises(ValueError):
            a.meets(a.simplex(["a"]), b.strata[0])

    def test_normality(self):
        assert fixtures.build("susp_torus").is_normal()
        # two circles glued at a cone point: the transverse link is disconnected
        pinched = load_complex("dim 2\nvertex o 0\nvertex a 2\nvertex b 2\nvertex c 2\nvertex d 2\n"
                               "vertex e 2\nvertex f 2\nsimplex o a b\nsimplex o b c\nsimplex o a c\n"
                               "simplex o d e\nsimplex o e f\nsimplex o d f\n")
        assert not pinched.is_normal()


class TestBuilders:
    def test_cone_of_circle(self):
        cx = cone(fixtures.build("circle"))
        assert cx.n == 2 and cx.weights[0] == 0 and set(cx.weights[1:]) == {2}

    def test_suspension_of_point(self):
        cx = suspension(fixtures.build("point"))
        assert cx.n == 1 and cx.num_vertices == 3 and len(cx.facets) == 2
        assert [cx.weights[cx.vertex_id(v)] for v in ("N", "S")] == [0, 0]

    def test_prism_of_circle_is_an_annulus(self):
        cx = prism(fixtures.build("circle"))
        assert euler(cx) == 0 and cx.dimension == 2
        assert sorted(cx.weights) == sorted(fixtures.build("circle").weights * 2)

    def test_join_shifts_the_second_factor(self):
        cx = join(fixtures.build("point"), fixtures.build("circle"))
        assert cx.n == 2 and euler(cx) == 1
        assert sorted(cx.weights) == [0, 2, 2, 2]

    def test_join_with_point_matches_cone(self):
        a = join(fixtures.build("point"), fixtures.build("circle"))
        b = cone(fixtures.build("circle"))
        assert sorted(len(s) for s in a.simplices) == sorted(len(s) for s in b.simplices)

    def test_subdivision_keeps_euler_characteristic(self):
        for name in ("cone_circle", "torus", "rp2"):
            cx = fixtures.build(name)
            assert euler(subdivide(cx)) == euler(cx)

    def test_pad_and_recode(self):
        cx = fixtures.build("cone_circle")
        p = pad(cx, 2)
        assert p.n == 4 and [w - 2 for w in p.weights] == list(cx.weights)
        assert [s.codim for s in p.strata] == [s.codim for s in cx.strata]
        r = recode(cx, (2, 2, 2))
        assert not r.singular_strata
        with pytest.raises(InputError, match="non-decreasing"):
            recode(cx, (2, 1, 2))
        with pytest.raises(InputError):
            recode(cx, (0, 1))


class TestPerversities:
    def test_top_on_codim_two(self):
        cx = fixtures.build("cone_circle")
        assert Perversity.top(cx)(cx.singular_strata[0]) == 0

    def test_dual_of_zero_in_codim_three(self):
        cx = fixtures.build("cone_sphere")
        assert Perversity.zero(cx).dual()(cx.singular_strata[0]) == 1

    def test_saturating_addition(self):
        assert ext_add(NEG_INF, 5) == NEG_INF
        assert ext_add(5, NEG_INF) == NEG_INF
        assert ext_add(INF, 2) == INF
        assert ext_add(2, 3) == 5

    def test_dual_is_an_involution(self):
        cx = fixtures.build("susp_torus")
        for vals in ([0, 0, 0, 0], [0, 0, 0, 1], [0, 0, INF, INF], [0, NEG_INF, -3, 7]):
            p = Perversity.from_codim(cx, vals)
            assert p.dual().dual() == p

    def test_sum(self):
        cx = fixtures.build("cone_sphere")
        p = Perversity.from_codim(cx, [0, 0, 0, 1]) + Perversity.from_codim(cx, [0, 0, 0, NEG_INF])
        assert p.on_singular() == [NEG_INF]

    def test_gm_growth(self):
        for n in range(7):
            for vals in gm_perversities(n):
                assert vals[:3] == [0] * min(n + 1, 3)
                assert all(vals[i] <= vals[i + 1] <= vals[i] + 1 for i in range(n))
        assert len(gm_perversities(5)) == 8

    def test_gm_rejects_bad_growth(self):
        cx = fixtures.build("cone_sphere")
        with pytest.raises(InputError):
            Perversity.gm(cx, [0, 0, 0, 2])

    def test_regular_strata_stay_zero(self):
        cx = fixtures.build("cone_circle")
        with pytest.raises(InputError):
            Perversity(cx, [0, 1])

    @pytest.mark.parametrize("text", ["gm 0 0 0", "codim 0 -1 inf", "stratum 0:-inf", "zero", "top"])
    def test_spec_round_trip(self, text):
        cx = fixtures.build("cone_circle")
        p = parse_perversity(cx, text)
        assert parse_perversity(cx, p.spec()) == p

    @pytest.mark.parametrize("text", ["", "gm 0 0", "gm a b c", "codim 1 0 0", "stratum 7:1", "stratum x", "wavy"])
    def test_bad_specs(self, text):
        with pytest.raises(InputError):
            parse_perversity(fixtures.build("cone_circle"), text)

    def test_pullback_along_recoding(self):
        fine = fixtures.build("fake_sphere")
        coarse = recode(fine, (2, 2, 2))
        p = Perversity.zero(coarse).pullback(fine, (2, 2, 2))
        assert p == Perversity.zero(fine)


@settings(max_examples=60)
@given(weighted_complexes(max_vertices=7))
def test_ordering_and_strata_on_random_complexes(cx):
    assert list(cx.weights) == sorted(cx.weights)
    for s in cx.simplices:
        assert list(s) == sorted(s)
        for f, _ in boundary_terms(s):
            assert f in cx.simplices or not f
    assert sum(1 for s in cx.simplices for st in cx.strata if cx.stratum_of(s) is st) == len(cx.simplices)
    assert any(cx.is_regular(s) for s in cx.simplices)
