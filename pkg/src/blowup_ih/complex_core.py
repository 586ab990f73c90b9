"""Weighted simplicial complexes, their strata, and perversities.

A simplex is stored as a sorted tuple of vertex ids.  Vertex ids are assigned
at load time so that weights are non-decreasing along the id order; every
sign in the package is computed with respect to this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

Simplex = tuple  # sorted tuple of vertex ids


class InputError(ValueError):
    """Malformed or inconsistent input."""


# ---------------------------------------------------------------------------
# extended integers


class _Infinity:
    """Signed infinity with saturating arithmetic: -inf + x = -inf for every x."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def _key(self, other):
        if isinstance(other, _Infinity):
            return other.sign
        return 0

    def __lt__(self, other):
        return self.sign < self._key(other) if isinstance(other, _Infinity) else self.sign < 0

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return self.sign > self._key(other) if isinstance(other, _Infinity) else self.sign > 0

    def __ge__(self, other):
        return self == other or self > other

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __add__(self, other):
        if self.sign < 0 or (isinstance(other, _Infinity) and other.sign < 0):
            return NEG_INF
        return INF

    __radd__ = __add__

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __sub__(self, other):
        if isinstance(other, _Infinity):
            return self + (-other)
        return self

    def __rsub__(self, other):
        return other + (-self)

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def ext_add(a, b):
    """Saturating sum on Z with +-inf, where -inf absorbs everything."""
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    if a is INF or b is INF:
        return INF
    return a + b


def parse_ext(text: str):
    t = text.strip().lower()
    if t in ("inf", "+inf"):
        return INF
    if t == "-inf":
        return NEG_INF
    try:
        return int(t)
    except ValueError:
        raise InputError(f"bad perversity value {text!r}") from None


def format_ext(x) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# simplices


def sorted_sign(seq: Sequence) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple.

    Returns sign 0 when an entry repeats.  This is the one place where
    reordering signs are computed; every star, cup and cap sign uses it.
    """
    items = list(seq)
    sign = 1
    # insertion sort counts transpositions; lists are tiny
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and items[j - 1] == items[j]:
            return 0, ()
    return sign, tuple(items)


def faces_of(s: Simplex) -> Iterable[Simplex]:
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def boundary_terms(s: Simplex) -> list[tuple[Simplex, int]]:
    """Alternating-sign codimension-one faces; the empty face is omitted."""
    if len(s) <= 1:
        return []
    return [(s[:k] + s[k + 1:], -1 if k % 2 else 1) for k in range(len(s))]


@dataclass(frozen=True)
class FilteredSimplex:
    """A simplex with its join decomposition Δ0 * ... * Δn by vertex weight."""

    vertices: tuple
    blocks: tuple

    @property
    def n(self) -> int:
        return len(self.blocks) - 1

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_regular(self) -> bool:
        return bool(self.blocks[-1])

    def block_dim(self, i: int) -> int:
        return len(self.blocks[i]) - 1

    def prefix(self, i: int) -> tuple:
        """Vertices of Δ0 * ... * Δi."""
        return tuple(v for b in self.blocks[: i + 1] for v in b)


@dataclass(frozen=True)
class Stratum:
    """Connected component of |L_i| minus |L_{i-1}|."""

    id: int
    index: int
    codim: int
    vertices: frozenset
    owner: object

    @property
    def is_singular(self) -> bool:
        return self.codim >= 1

    def __repr__(self):
        return f"Stratum(id={self.id}, index={self.index}, codim={self.codim})"


class WeightedComplex:
    """Finite simplicial complex with vertex weights in 0..n.

    Build with :meth:`build`, which reorders vertices so that weights are
    non-decreasing.  Instances are treated as immutable.
    """

    def __init__(self, n: int, names: Sequence[str], weights: Sequence[int],
                 facets: Iterable[Simplex], permutation: Sequence[int] | None = None):
        self.n = n
        self.names = tuple(names)
        self.weights = tuple(weights)
        if any(self.weights[i] > self.weights[i + 1] for i in range(len(self.weights) - 1)):
            raise InputError("vertex ids must have non-decreasing weights")
        fs = set()
        for f in facets:
            t = tuple(sorted(f))
            if len(set(t)) != len(t):
                raise InputError("simplex repeats a vertex")
            fs.add(t)
        for v in range(len(self.names)):
            fs.add((v,))
        self._generators = fs
        self.permutation = tuple(permutation) if permutation is not None else tuple(range(len(self.names)))
        self._validate()

    @classmethod
    def build(cls, n: int, vertices: Sequence[tuple[str, int]], facets: Iterable[Sequence[str]]) -> "WeightedComplex":
        """Construct from named vertices and facets given by vertex names."""
        if n < 0:
            raise InputError("formal dimension must be non-negative")
        seen = {}
        for k, (name, w) in enumerate(vertices):
            if name in seen:
                raise InputError(f"duplicate vertex {name!r}")
            if not (0 <= w <= n):
                raise InputError(f"weight {w} of vertex {name!r} outside 0..{n}")
            seen[name] = k
        if not vertices:
            raise InputError("empty complex")
        order = sorted(range(len(vertices)), key=lambda k: (vertices[k][1], k))
        new_id = {old: new for new, old in enumerate(order)}
        names = [vertices[k][0] for k in order]
        weights = [vertices[k][1] for k in order]
        fs = []
        for f in facets:
            ids = []
            for name in f:
                if name not in seen:
                    raise InputError(f"facet references unknown vertex {name!r}")
                ids.append(new_id[seen[name]])
            if len(set(ids)) != len(ids):
                raise InputError(f"facet {' '.join(f)} repeats a vertex")
            if not ids:
                raise InputError("empty facet")
            fs.append(tuple(sorted(ids)))
        perm = [new_id[k] for k in range(len(vertices))]
        return cls(n, names, weights, fs, perm)

    def _validate(self) -> None:
        if not self.names:
            raise InputError("empty complex")
        if len(set(self.names)) != len(self.names):
            raise InputError("duplicate vertex name")
        for w in self.weights:
            if not (0 <= w <= self.n):
                raise InputError(f"weight {w} outside 0..{self.n}")
        for f in self._generators:
            for v in f:
                if not (0 <= v < len(self.names)):
                    raise InputError("facet references unknown vertex")
        if self.n not in self.weights:
            raise InputError("no regular simplex: no vertex has the top weight")

    # -- basic structure ---------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.names)

    @cached_property
    def simplices(self) -> frozenset:
        out = set()
        for f in self._generators:
            out.update(faces_of(f))
        return frozenset(out)

    @cached_property
    def facets(self) -> tuple:
        """Maximal simplices, sorted."""
        gens = sorted(self._generators, key=lambda s: (-len(s), s))
        maximal: list = []
        for s in gens:
            ss = set(s)
            if not any(ss < set(m) for m in maximal):
                maximal.append(s)
        return tuple(sorted(maximal))

    @cached_property
    def simplices_by_dim(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for v in out.values():
            v.sort()
        return out

    @property
    def dimension(self) -> int:
        return max(self.simplices_by_dim)

    def contains(self, s: Sequence[int]) -> bool:
        return tuple(s) in self.simplices

    def weight(self, v: int) -> int:
        return self.weights[v]

    def is_regular(self, s: Simplex) -> bool:
        return bool(s) and self.weights[s[-1]] == self.n

    @cached_property
    def regular_simplices(self) -> list:
        return sorted((s for s in self.simplices if self.is_regular(s)), key=lambda s: (len(s), s))

    @cached_property
    def vertices_by_weight(self) -> tuple:
        out = [[] for _ in range(self.n + 1)]
        for v, w in enumerate(self.weights):
            out[w].append(v)
        return tuple(tuple(x) for x in out)

    def blocks(self, s: Simplex) -> tuple:
        out = [[] for _ in range(self.n + 1)]
        for v in s:
            out[self.weights[v]].append(v)
        return tuple(tuple(b) for b in out)

    def vertex_id(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown vertex {name!r}") from None

    def simplex(self, names: Sequence) -> Simplex:
        """Sorted id tuple from vertex names or ids."""
        ids = [v if isinstance(v, int) else self.vertex_id(v) for v in names]
        if len(set(ids)) != len(ids):
            raise InputError("simplex repeats a vertex")
        return tuple(sorted(ids))

    def label(self, s: Simplex) -> str:
        return "[" + ",".join(self.names[v] for v in s) + "]"

    @cached_property
    def signature(self) -> tuple:
        return (self.n, self.names, self.weights, self.facets)

    def __eq__(self, other):
        return isinstance(other, WeightedComplex) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"WeightedComplex(n={self.n}, vertices={self.num_vertices}, facets={len(self.facets)})"

    def with_weights(self, weights: Sequence[int], n: int) -> "WeightedComplex":
        """Same simplicial complex with new weights, vertices re-sorted."""
        verts = [(self.names[v], weights[v]) for v in range(self.num_vertices)]
        facets = [[self.names[v] for v in f] for f in self.facets]
        return WeightedComplex.build(n, verts, facets)

    # -- strata ------------------------------------------------------------

    def top_weight(self, s: Simplex) -> int:
        return self.weights[s[-1]]

    @cached_property
    def _strata_data(self):
        parent = {s: s for s in self.simplices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.simplices:
            if len(s) < 2:
                continue
            w = self.top_weight(s)
            for f, _ in boundary_terms(s):
                if self.top_weight(f) == w:
                    a, b = find(s), find(f)
                    if a != b:
                        parent[a] = b
        groups: dict = {}
        for s in self.simplices:
            groups.setdefault(find(s), []).append(s)
        comps = []
        for members in groups.values():
            i = self.top_weight(members[0])
            verts = frozenset(v for s in members for v in s if self.weights[v] == i)
            comps.append((i, min(verts), verts, members))
        comps.sort(key=lambda c: (c[0], c[1]))
        strata = []
        node = {}
        for sid, (i, _, verts, members) in enumerate(comps):
            st = Stratum(sid, i, self.n - i, verts, self.signature)
            strata.append(st)
            for s in members:
                node[s] = st
        return tuple(strata), node

    @property
    def strata(self) -> tuple:
        return self._strata_data[0]

    @property
    def singular_strata(self) -> tuple:
        return tuple(s for s in self.strata if s.is_singular)

    def stratum_of(self, s: Simplex) -> Stratum:
        """The stratum containing the open cell of ``s``."""
        return self._strata_data[1][tuple(s)]

    def meets(self, s: Simplex, st: Stratum) -> bool:
        """Whether the simplex meets the stratum: its prefix up to weight i lies in it."""
        self._check_owner(st)
        i = st.index
        prefix = tuple(v for v in s if self.weights[v] <= i)
        if not prefix or self.weights[prefix[-1]] != i:
            return False
        return self.stratum_of(prefix) is st

    def _check_owner(self, st: Stratum) -> None:
        if st.owner != self.signature:
            raise ValueError("stratum belongs to a different complex")

    def has_codim_one_strata(self) -> bool:
        return any(s.codim == 1 for s in self.strata)

    def is_normal(self) -> bool:
        """Every singular vertex has a connected, nonempty transverse link.

        The transverse link of a vertex v of weight i is the part of its link
        spanned by vertices of weight greater than i.
        """
        for v in range(self.num_vertices):
            i = self.weights[v]
            if i == self.n:
                continue
            link = [tuple(u for u in s if u != v) for s in self.simplices if v in s and len(s) > 1]
            trans = [tuple(u for u in s if self.weights[u] > i) for s in link]
            trans = [t for t in trans if t]
            verts = {u for t in trans for u in t}
            if not verts:
                return False
            parent = {u: u for u in verts}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for t in trans:
                for a in t[1:]:
                    parent[find(a)] = find(t[0])
            if len({find(u) for u in verts}) != 1:
                return False
        return True

    def subcomplex(self, simplices: Iterable[Simplex]) -> "WeightedComplex":
        """Face closure of the given simplices, same weights and formal dimension."""
        gens = [tuple(s) for s in simplices]
        used = sorted({v for s in gens for v in s})
        verts = [(self.names[v], self.weights[v]) for v in used]
        facets = [[self.names[v] for v in s] for s in gens]
        return WeightedComplex.build(self.n, verts, facets)


def join_decomposition(simplex: Sequence, cx: WeightedComplex) -> FilteredSimplex:
    s = cx.simplex(simplex)
    if s not in cx.simplices:
        raise InputError(f"{cx.label(s)} is not a simplex of the complex")
    return FilteredSimplex(s, cx.blocks(s))


def boundary(fs: FilteredSimplex, cx: WeightedComplex) -> dict:
    """Alternating boundary of a filtered simplex; faces re-decomposed by weight."""
    out = {}
    for f, sign in boundary_terms(fs.vertices):
        out[FilteredSimplex(f, cx.blocks(f))] = sign
    return out


# ---------------------------------------------------------------------------
# perversities


class Perversity:
    """Values on the strata of one complex, zero on regular strata.

    ``values[s.id]`` is an int, INF or NEG_INF.
    """

    def __init__(self, cx: WeightedComplex, values: Sequence, mode: str = "stratum"):
        strata = cx.strata
        if len(values) != len(strata):
            raise InputError("perversity needs one value per stratum")
        for st, v in zip(strata, values):
            if not st.is_singular and v != 0:
                raise InputError("perversity must vanish on regular strata")
        self.cx = cx
        self.values = tuple(values)
        self.mode = mode
        self.codim_function: tuple | None = None

    # constructors

    @classmethod
    def from_codim(cls, cx: WeightedComplex, f: Callable[[int], object] | Sequence, mode: str = "codim") -> "Perversity":
        if not callable(f):
            seq = list(f)
            if len(seq) < cx.n + 1:
                raise InputError(f"codimension perversity needs {cx.n + 1} values")
            f = seq.__getitem__
        p = cls(cx, [f(s.codim) if s.is_singular else 0 for s in cx.strata], mode)
        p.codim_function = (0,) + tuple(f(c) for c in range(1, cx.n + 1))
        return p

    @classmethod
    def gm(cls, cx: WeightedComplex, values: Sequence[int]) -> "Perversity":
        """Goresky-MacPherson perversity given by its values on codim 0..n."""
        vals = list(values)
        if len(vals) != cx.n + 1:
            raise InputError(f"gm perversity needs {cx.n + 1} values, got {len(vals)}")
        if not is_gm(vals):
            raise InputError(f"{vals} is not a Goresky-MacPherson perversity")
        return cls.from_codim(cx, vals, "gm")

    @classmethod
    def zero(cls, cx: WeightedComplex) -> "Perversity":
        return cls.from_codim(cx, lambda c: 0, "gm")

    @classmethod
    def top(cls, cx: WeightedComplex) -> "Perversity":
        return cls.from_codim(cx, lambda c: c - 2, "codim")

    @classmethod
    def constant(cls, cx: WeightedComplex, value) -> "Perversity":
        return cls.from_codim(cx, lambda c: value, "codim")

    @classmethod
    def per_stratum(cls, cx: WeightedComplex, assignment: Mapping[int, object], default=0) -> "Perversity":
        vals = []
        known = {s.id for s in cx.strata}
        for k in assignment:
            if k not in known:
                raise InputError(f"no stratum with id {k}")
        for st in cx.strata:
            vals.append(assignment.get(st.id, default if st.is_singular else 0))
        return cls(cx, vals, "stratum")

    # evaluation and arithmetic

    def __call__(self, st: Stratum):
        self.cx._check_owner(st)
        return self.values[st.id]

    value = __call__

    def dual(self) -> "Perversity":
        """Complementary perversity t - p."""
        vals = []
        for st, v in zip(self.cx.strata, self.values):
            if not st.is_singular:
                vals.append(0)
            elif isinstance(v, _Infinity):
                vals.append(-v)
            else:
                vals.append(st.codim - 2 - v)
        out = Perversity(self.cx, vals, self.mode)
        if self.codim_function is not None:
            out.codim_function = (0,) + tuple(-v if isinstance(v, _Infinity) else c - 2 - v
                                              for c, v in enumerate(self.codim_function) if c > 0)
            out.mode = "gm" if is_gm(out.codim_function) else "codim"
        return out

    def __add__(self, other: "Perversity") -> "Perversity":
        if other.cx != self.cx:
            raise ValueError("perversities live on different complexes")
        out = Perversity(self.cx, [ext_add(a, b) for a, b in zip(self.values, other.values)],
                         "codim" if self.codim_function and other.codim_function else "stratum")
        if out.mode == "codim":
            out.codim_function = tuple(ext_add(a, b) for a, b in zip(self.codim_function, other.codim_function))
        return out

    def __le__(self, other: "Perversity") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __eq__(self, other):
        return isinstance(other, Perversity) and self.cx == other.cx and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def on_singular(self) -> list:
        return [self.values[s.id] for s in self.cx.singular_strata]

    def codim_values(self) -> dict[int, object] | None:
        """The codimension function if the perversity depends only on codim."""
        out: dict[int, object] = {}
        for st, v in zip(self.cx.strata, self.values):
            if out.setdefault(st.codim, v) != v:
                return None
        return out

    def is_gm(self) -> bool:
        cv = self.codim_values()
        if cv is None:
            return False
        vals = [cv.get(c) for c in range(self.cx.n + 1)]
        # fill unused codimensions with the smallest admissible continuation
        filled = []
        for c, v in enumerate(vals):
            if v is None:
                v = 0 if c <= 2 else filled[-1]
            filled.append(v)
        return is_gm(filled)

    def pullback(self, fine: WeightedComplex, recoding: Sequence[int]) -> "Perversity":
        """Perversity on ``fine`` taking the value of the coarse stratum containing each fine stratum."""
        coarse = self.cx
        vals = []
        for st in fine.strata:
            v = min(st.vertices)
            name = fine.names[v]
            cst = coarse.stratum_of((coarse.vertex_id(name),))
            if recoding[st.index] != cst.index:
                raise ValueError("complexes are not related by the recoding")
            vals.append(self.values[cst.id] if st.is_singular else 0)
        return Perversity(fine, vals, "stratum")

    def spec(self) -> str:
        if self.codim_function is not None and self.mode in ("gm", "codim"):
            vals = [format_ext(v) for v in self.codim_function]
            return ("gm " if self.mode == "gm" else "codim ") + " ".join(vals)
        return "stratum " + " ".join(f"{s.id}:{format_ext(self.values[s.id])}" for s in self.cx.singular_strata)

    def __repr__(self):
        return f"Perversity({self.spec()})"


def is_gm(vals: Sequence) -> bool:
    if any(isinstance(v, _Infinity) for v in vals):
        return False
    if any(v != 0 for v in vals[:3]):
        return False
    return all(vals[i] <= vals[i + 1] <= vals[i] + 1 for i in range(len(vals) - 1))


def gm_perversities(n: int) -> list[list[int]]:
    """All GM perversities on codimensions 0..n."""
    out = [[0] * min(n + 1, 3)]
    for _ in range(3, n + 1):
        out = [p + [p[-1] + d] for p in out for d in (0, 1)]
    return out


def parse_perversity(cx: WeightedComplex, text: str) -> Perversity:
    """Parse ``gm v0 .. vn``, ``codim v0 .. vn``, ``stratum id:v ...``, ``zero`` or ``top``."""
    parts = text.split()
    if not parts:
        raise InputError("empty perversity spec")
    kind, args = parts[0].lower(), parts[1:]
    if kind == "zero" and not args:
        return Perversity.zero(cx)
    if kind == "top" and not args:
        return Perversity.top(cx)
    if kind == "gm":
        try:
            vals = [int(a) for a in args]
        except ValueError:
            raise InputError(f"gm values must be integers: {text!r}") from None
        return Perversity.gm(cx, vals)
    if kind == "codim":
        vals = [parse_ext(a) for a in args]
        if len(vals) != cx.n + 1:
            raise InputError(f"codim perversity needs {cx.n + 1} values")
        if vals[0] != 0:
            raise InputError("perversity must vanish in codimension 0")
        return Perversity.from_codim(cx, vals)
    if kind == "stratum":
        assign = {}
        for a in args:
            if ":" not in a:
                raise InputError(f"bad stratum assignment {a!r}")
            k, v = a.split(":", 1)
            try:
                sid = int(k)
            except ValueError:
                raise InputError(f"bad stratum id {k!r}") from None
            assign[sid] = parse_ext(v)
        return Perversity.per_stratum(cx, assign)
    raise InputError(f"unknown perversity kind {kind!r}")


# ---------------------------------------------------------------------------
# builders


def _fresh(names: Sequence[str], base: str) -> str:
    name = base
    k = 0
    while name in names:
        k += 1
        name = f"{base}{k}"
    return name


def cone(cx: WeightedComplex, apex: str = "c") -> WeightedComplex:
    """Cone with a weight-0 apex; existing weights shift up by one."""
    a = _fresh(cx.names, apex)
    verts = [(a, 0)] + [(cx.names[v], cx.weights[v] + 1) for v in range(cx.num_vertices)]
    facets = [[a] + [cx.names[v] for v in f] for f in cx.facets]
    return WeightedComplex.build(cx.n + 1, verts, facets)


def suspension(cx: WeightedComplex, apexes: tuple[str, str] = ("N", "S")) -> WeightedComplex:
    a = _fresh(cx.names, apexes[0])
    b = _fresh(list(cx.names) + [a], apexes[1])
    verts = [(a, 0), (b, 0)] + [(cx.names[v], cx.weights[v] + 1) for v in range(cx.num_vertices)]
    facets = [[p] + [cx.names[v] for v in f] for p in (a, b) for f in cx.facets]
    return WeightedComplex.build(cx.n + 1, verts, facets)


def join(cx1: WeightedComplex, cx2: WeightedComplex) -> WeightedComplex:
    """Join with cx1's weights below cx2's: cx2 weights shift by cx1.n + 1."""
    names1 = [f"{x}" for x in cx1.names]
    names2 = [x if x not in names1 else f"{x}'" for x in cx2.names]
    if len(set(names1 + names2)) != len(names1) + len(names2):
        raise InputError("cannot disambiguate vertex names for the join")
    shift = cx1.n + 1
    verts = [(names1[v], cx1.weights[v]) for v in range(cx1.num_vertices)]
    verts += [(names2[v], cx2.weights[v] + shift) for v in range(cx2.num_vertices)]
    facets = [[names1[v] for v in f] + [names2[v] for v in g] for f in cx1.facets for g in cx2.facets]
    return WeightedComplex.build(cx1.n + cx2.n + 1, verts, facets)


def prism(cx: WeightedComplex) -> WeightedComplex:
    """cx x [0,1], staircase triangulation of each facet, weights copied to both ends."""
    verts = []
    for t in (0, 1):
        verts += [(f"{cx.names[v]}.{t}", cx.weights[v]) for v in range(cx.num_vertices)]
    facets = []
    for f in cx.facets:
        for i in range(len(f)):
            facets.append([f"{cx.names[v]}.0" for v in f[: i + 1]] + [f"{cx.names[v]}.1" for v in f[i:]])
    return WeightedComplex.build(cx.n, verts, facets)


def pad(cx: WeightedComplex, m: int) -> WeightedComplex:
    """Shift every weight and the formal dimension up by m."""
    return cx.with_weights([w + m for w in cx.weights], cx.n + m)


def recode(cx: WeightedComplex, phi: Sequence[int]) -> WeightedComplex:
    """Apply a weight recoding phi: {0..n} -> {0..n'} with n' = phi(n)."""
    check_recoding(phi, cx.n)
    return cx.with_weights([phi[w] for w in cx.weights], phi[cx.n])


def check_recoding(phi: Sequence[int], n: int) -> None:
    if len(phi) != n + 1:
        raise InputError(f"recoding must give a value for every weight 0..{n}")
    if any(phi[i] > phi[i + 1] for i in range(n)):
        raise InputError("recoding must be non-decreasing")
    if any(x < 0 for x in phi):
        raise InputError("recoding values must be non-negative")


def subdivide(cx: WeightedComplex) -> WeightedComplex:
    """Barycentric subdivision; a barycenter inherits the top weight of its simplex."""
    simplices = sorted(cx.simplices, key=lambda s: (len(s), s))
    name = {s: "b(" + ",".join(cx.names[v] for v in s) + ")" for s in simplices}
    verts = [(name[s], cx.top_weight(s)) for s in simplices]
    facets = []

    def chains(s):
        if len(s) == 1:
            return [[s]]
        out = []
        for f, _ in boundary_terms(s):
            for c in chains(f):
                out.append(c + [s])
        return out

    for f in cx.facets:
        for c in chains(f):
            facets.append([name[s] for s in c])
    return WeightedComplex.build(cx.n, verts, facets)
