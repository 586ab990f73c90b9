import pytest

from blowup_ih import fixtures
from blowup_ih.complex_core import InputError, Perversity
from blowup_ih.io import (
    SCHEMA_VERSION,
    complex_json,
    dump_chain,
    dump_complex,
    format_group_table,
    load_chain,
    load_complex,
    load_document,
)


def signature(cx):
    return cx.n, list(zip(cx.names, cx.weights)), sorted(tuple(cx.names[v] for v in f) for f in cx.facets)


@pytest.mark.parametrize("name", fixtures.names())
def test_round_trip(name):
    cx = fixtures.build(name)
    again = load_complex(dump_complex(cx))
    assert signature(again) == signature(cx)
    assert dump_complex(again) == dump_complex(cx)


@pytest.mark.parametrize("name", fixtures.names())
def test_shipped_files_match_the_builders(name):
    assert signature(fixtures.load(name)) == signature(fixtures.build(name))


def test_comments_and_blank_lines():
    doc = load_document("# a cone\n\ndim 1   # formal\nvertex a 0\nvertex b 1\nsimplex a b\n")
    assert doc.complex.num_vertices == 2 and doc.perversity is None


def test_perversity_line():
    doc = load_document(fixtures.data_text("cone_circle") + "perversity gm 0 0 0\n")
    assert doc.perversity_text == "gm 0 0 0"
    assert doc.perversity == Perversity.gm(doc.complex, [0, 0, 0])
    text = dump_complex(doc.complex, doc.perversity)
    assert load_document(text).perversity == doc.perversity


@pytest.mark.parametrize("text, where", [
    ("vertex a 0\n", "dim"),
    ("dim 1\ndim 1\n", "line 2"),
    ("dim x\n", "line 1"),
    ("dim 1\nvertex a\n", "line 2"),
    ("dim 1\nvertex a one\n", "line 2"),
    ("dim 1\nvertex a 1\nsimplex\n", "line 3"),
    ("dim 1\nvertex a 1\nface a\n", "line 3"),
    ("dim 1\nvertex a 1\nsimplex a\nperversity zero\nperversity zero\n", "line 5"),
])
def test_errors_name_the_line(text, where):
    with pytest.raises(InputError, match=where):
        load_document(text)


def test_json_schema():
    data = complex_json(fixtures.build("cone_circle"))
    assert data["schema"] == SCHEMA_VERSION and data["kind"] == "complex"
    singular = [s for s in data["strata"] if s["singular"]]
    assert len(singular) == 1 and singular[0]["codim"] == 2 and singular[0]["vertices"] == ["c1"]


def test_chain_round_trip():
    cx = fixtures.build("torus")
    chain = {s: (i % 5) - 2 for i, s in enumerate(cx.simplices) if len(s) == 2}
    chain = {s: v for s, v in chain.items() if v}
    assert load_chain(cx, dump_chain(cx, chain)) == chain


def test_chain_errors():
    cx = fixtures.build("circle")
    with pytest.raises(InputError, match="coefficient"):
        load_chain(cx, "x a b\n")
    names = cx.names
    with pytest.raises(InputError):
        load_chain(cx, f"1 {names[0]} nowhere\n")


def test_group_table_format():
    from blowup_ih.blowup import intersection_subcomplex

    cx = fixtures.build("sphere")
    groups = intersection_subcomplex(cx, Perversity.zero(cx)).homology_table()
    assert format_group_table(groups) == "H^0=Z^1, H^1=0, H^2=Z^1"
