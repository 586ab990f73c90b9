"""The fixture corpus: small weighted complexes with known answers."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations

from .complex_core import InputError, WeightedComplex, cone, prism, suspension
from .io import dump_complex, load_complex


def point() -> WeightedComplex:
    return WeightedComplex.build(0, [("a", 0)], [["a"]])


def interval() -> WeightedComplex:
    return WeightedComplex.build(1, [("a", 1), ("b", 1)], [["a", "b"]])


def simplex_boundary(d: int) -> WeightedComplex:
    """Boundary of the d-simplex, unstratified, formal dimension d - 1."""
    names = [chr(ord("a") + i) for i in range(d + 1)]
    return WeightedComplex.build(d - 1, [(x, d - 1) for x in names],
                                 [list(f) for f in combinations(names, d)])


def circle() -> WeightedComplex:
    return simplex_boundary(2)


def sphere() -> WeightedComplex:
    return simplex_boundary(3)


def torus() -> WeightedComplex:
    """Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    names = [f"t{i}" for i in range(7)]
    facets = []
    for i in range(7):
        facets.append([names[i], names[(i + 1) % 7], names[(i + 3) % 7]])
        facets.append([names[i], names[(i + 2) % 7], names[(i + 3) % 7]])
    return WeightedComplex.build(2, [(x, 2) for x in names], facets)


def rp2() -> WeightedComplex:
    """Six-vertex real projective plane."""
    tris = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
    return WeightedComplex.build(2, [(f"r{i}", 2) for i in range(1, 7)],
                                 [[f"r{c}" for c in t] for t in tris])


def fake_sphere(dim: int = 2) -> WeightedComplex:
    """Boundary of a simplex with one vertex declared a point stratum."""
    base = simplex_boundary(dim + 1)
    weights = [0] + [dim] * (base.num_vertices - 1)
    return base.with_weights(weights, dim)


def fake_sphere_coarse(dim: int = 2) -> WeightedComplex:
    return simplex_boundary(dim + 1)


FAKE_SPHERE_RECODING = {2: (2, 2, 2), 3: (3, 3, 3, 3)}


BUILDERS = {
    "point": point,
    "interval": interval,
    "circle": circle,
    "sphere": sphere,
    "cone_point": lambda: cone(point()),
    "cone_interval": lambda: cone(interval()),
    "cone_circle": lambda: cone(circle()),
    "cone_sphere": lambda: cone(sphere()),
    "susp_point": lambda: suspension(point()),
    "susp_interval": lambda: suspension(interval()),
    "susp_circle": lambda: suspension(circle()),
    "susp_sphere": lambda: suspension(sphere()),
    "torus": torus,
    "susp_torus": lambda: suspension(torus()),
    "cone_torus": lambda: cone(torus()),
    "rp2": rp2,
    "cone_rp2": lambda: cone(rp2()),
    "fake_sphere": fake_sphere,
    "fake_sphere_coarse": fake_sphere_coarse,
    "fake_sphere3": lambda: fake_sphere(3),
    "fake_sphere3_coarse": lambda: fake_sphere_coarse(3),
    "prism_circle": lambda: prism(circle()),
    "prism_cone_circle": lambda: prism(cone(circle())),
}

DESCRIPTIONS = {
    "point": "a single point",
    "interval": "closed interval, unstratified",
    "circle": "boundary of a triangle",
    "sphere": "boundary of a tetrahedron",
    "cone_point": "interval with one endpoint a codimension-one stratum",
    "cone_interval": "cone on an interval",
    "cone_circle": "cone on a circle, apex is a codimension-two stratum",
    "cone_sphere": "cone on a 2-sphere, apex of codimension three",
    "susp_point": "suspension of a point",
    "susp_interval": "suspension of an interval",
    "susp_circle": "suspension of a circle",
    "susp_sphere": "suspension of a 2-sphere",
    "torus": "seven-vertex torus",
    "susp_torus": "suspension of the seven-vertex torus, two codimension-three points",
    "cone_torus": "cone on the seven-vertex torus",
    "rp2": "six-vertex real projective plane",
    "cone_rp2": "cone on the six-vertex projective plane",
    "fake_sphere": "2-sphere with one vertex declared a point stratum",
    "fake_sphere_coarse": "the same 2-sphere, unstratified",
    "fake_sphere3": "3-sphere with one vertex declared a point stratum",
    "fake_sphere3_coarse": "the same 3-sphere, unstratified",
    "prism_circle": "annulus: circle times an interval, staircase triangulation",
    "prism_cone_circle": "cone on a circle times an interval",
}


@lru_cache(maxsize=None)
def build(name: str) -> WeightedComplex:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise InputError(f"unknown fixture {name!r}") from None


def data_text(name: str) -> str:
    """Shipped text file for a fixture."""
    return resources.files("blowup_ih").joinpath("data", f"{name}.wc").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> WeightedComplex:
    if name not in BUILDERS:
        raise InputError(f"unknown fixture {name!r}")
    return load_complex(data_text(name))


def names() -> list[str]:
    return list(BUILDERS)


def write_data_files(directory) -> None:
    """Regenerate the shipped ``.wc`` files from the builders."""
    from pathlib import Path

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name in BUILDERS:
        (d / f"{name}.wc").write_text(dump_complex(build(name), comment=DESCRIPTIONS[name]), encoding="utf-8")
