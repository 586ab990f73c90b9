"""Line-oriented space format and JSON export.

Format::

    # comment
    dim 2
    vertex a 0
    vertex b 2
    simplex a b c
    perversity gm 0 0 0

Facets only; faces are implied.  The perversity line is optional and may
also be ``perversity stratum <id>:<value> ...`` with ``inf``/``-inf``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex_core import InputError, Perversity, WeightedComplex, parse_perversity

SCHEMA_VERSION = "blowup-ih/1"


@dataclass
class SpaceDocument:
    complex: WeightedComplex
    perversity: Perversity | None
    perversity_text: str | None = None


def load_document(text: str) -> SpaceDocument:
    n = None
    vertices: list[tuple[str, int]] = []
    facets: list[list[str]] = []
    pspec = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].lower()
        if key == "dim":
            if len(parts) != 2 or n is not None:
                raise InputError(f"line {lineno}: expected a single 'dim <n>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad dimension {parts[1]!r}") from None
        elif key == "vertex":
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected 'vertex <name> <weight>'")
            try:
                w = int(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: bad weight {parts[2]!r}") from None
            vertices.append((parts[1], w))
        elif key == "simplex":
            if len(parts) < 2:
                raise InputError(f"line {lineno}: empty simplex")
            facets.append(parts[1:])
        elif key == "perversity":
            if pspec is not None:
                raise InputError(f"line {lineno}: perversity given twice")
            pspec = " ".join(parts[1:])
        else:
            raise InputError(f"line {lineno}: unknown keyword {parts[0]!r}")
    if n is None:
        raise InputError("missing 'dim' line")
    cx = WeightedComplex.build(n, vertices, facets)
    p = parse_perversity(cx, pspec) if pspec else None
    return SpaceDocument(cx, p, pspec)


def load_complex(text: str) -> WeightedComplex:
    return load_document(text).complex


def dump_complex(cx: WeightedComplex, perversity: Perversity | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"dim {cx.n}")
    lines.extend(f"vertex {cx.names[v]} {cx.weights[v]}" for v in range(cx.num_vertices))
    lines.extend("simplex " + " ".join(cx.names[v] for v in f) for f in cx.facets)
    if perversity is not None:
        lines.append("perversity " + perversity.spec())
    return "\n".join(lines) + "\n"


def complex_json(cx: WeightedComplex) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "complex",
        "dim": cx.n,
        "vertices": [{"name": cx.names[v], "weight": cx.weights[v]} for v in range(cx.num_vertices)],
        "facets": [[cx.names[v] for v in f] for f in cx.facets],
        "strata": strata_json(cx),
    }


def strata_json(cx: WeightedComplex) -> list[dict]:
    return [
        {
            "id": s.id,
            "index": s.index,
            "codim": s.codim,
            "singular": s.is_singular,
            "vertices": sorted(cx.names[v] for v in s.vertices),
        }
        for s in cx.strata
    ]


def group_table_json(groups, *, what: str, perversity: Perversity | None, ring) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": what,
        "ring": ring.spec,
        "perversity": perversity.spec() if perversity is not None else None,
        "groups": [g.as_dict() for g in groups],
    }


def format_group_table(groups, symbol: str = "H^") -> str:
    return ", ".join(f"{symbol}{g.degree}={g}" for g in groups)


def dump_chain(cx: WeightedComplex, chain: dict) -> str:
    """Chains as ``coeff v0 v1 ...`` lines, sorted by simplex."""
    return "".join(f"{chain[s]} " + " ".join(cx.names[v] for v in s) + "\n"
                   for s in sorted(chain, key=lambda s: (len(s), s)) if chain[s])


def load_chain(cx: WeightedComplex, text: str) -> dict:
    out: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            coeff = int(parts[0])
        except ValueError:
            raise InputError(f"bad coefficient {parts[0]!r}") from None
        s = cx.simplex(parts[1:])
        if s not in cx.simplices:
            raise InputError(f"{' '.join(parts[1:])} is not a simplex")
        out[s] = out.get(s, 0) + coeff
    return {s: x for s, x in out.items() if x}
