"""Exact linear algebra over Z, Q and Z/p.

Matrices are sparse and column oriented.  Every routine works with Python
integers (or ``Fraction`` over Q); nothing here ever touches floating point.

The workhorse is :func:`column_reduce`, a unimodular column reduction that
returns the reduced matrix together with the transform ``V`` and its inverse.
Kernels read off from ``V`` are saturated lattice bases, and the matching
rows of ``V^{-1}`` give a left inverse for free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# rings


class Ring:
    """Coefficient ring: ``Z``, ``Q`` or ``Z/p``."""

    def __init__(self, name: str, characteristic: int = 0):
        self.name = name
        self.characteristic = characteristic

    @property
    def is_field(self) -> bool:
        return self.name != "Z"

    def coerce(self, x):
        if self.characteristic:
            if isinstance(x, Fraction):
                x = x.numerator * pow(x.denominator, -1, self.characteristic)
            return int(x) % self.characteristic
        if self.name == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def divide(self, a, b):
        """Exact quotient a/b, or None when it does not exist in the ring."""
        if self.characteristic:
            return a * pow(b, -1, self.characteristic) % self.characteristic
        if self.name == "Q":
            return Fraction(a) / b
        if a % b:
            return None
        return a // b

    @property
    def spec(self) -> str:
        if self.characteristic:
            return f"zp:{self.characteristic}"
        return self.name.lower()

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.name, self.characteristic) == (
            other.name,
            other.characteristic,
        )

    def __hash__(self):
        return hash((self.name, self.characteristic))

    def __repr__(self):
        return self.name


ZZ = Ring("Z")
QQ = Ring("Q")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def GF(p: int) -> Ring:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return Ring(f"Z/{p}", p)


def parse_ring(text: str) -> Ring:
    """Parse ``z``, ``q`` or ``zp:<p>``."""
    t = text.strip().lower()
    if t == "z":
        return ZZ
    if t == "q":
        return QQ
    if t.startswith("zp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ValueError(f"bad ring spec {text!r}") from None
        return GF(p)
    raise ValueError(f"bad ring spec {text!r}")


# ---------------------------------------------------------------------------
# sparse matrices


class SparseMatrix:
    """Column-major sparse matrix: ``cols[j]`` maps row index to a nonzero entry."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        self.cols = cols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{j: 1} for j in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[dict]) -> "SparseMatrix":
        cols = [{i: x for i, x in c.items() if x} for c in columns]
        return cls(nrows, len(cols), cols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]):
        cols = [{} for _ in range(ncols)]
        for i, j, x in entries:
            v = cols[j].get(i, 0) + x
            if v:
                cols[j][i] = v
            else:
                cols[j].pop(i, None)
        return cls(nrows, ncols, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])

    def entries(self):
        for j, c in enumerate(self.cols):
            for i in sorted(c):
                yield i, j, c[i]

    def get(self, i: int, j: int):
        return self.cols[j].get(i, 0)

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, x in self.entries():
            out[i][j] = x
        return out

    def transpose(self) -> "SparseMatrix":
        cols = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse vector given as ``{index: value}``."""
        out: dict = {}
        for j, a in vec.items():
            for i, x in self.cols[j].items():
                v = out.get(i, 0) + a * x
                if v:
                    out[i] = v
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, x in b.items():
                v = c.get(i, 0) + sign * x
                if v:
                    c[i] = v
                else:
                    c.pop(i, None)
            cols.append(c)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a) -> "SparseMatrix":
        if not a:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, [{i: a * x for i, x in c.items()} for c in self.cols])

    def over(self, ring: Ring) -> "SparseMatrix":
        """Entries coerced into ``ring`` with zeros dropped."""
        cols = []
        for c in self.cols:
            d = {}
            for i, x in c.items():
                y = ring.coerce(x)
                if y:
                    d[i] = y
            cols.append(d)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def select_columns(self, idx: Sequence[int]) -> "SparseMatrix":
        return SparseMatrix(self.nrows, len(idx), [dict(self.cols[j]) for j in idx])

    def select_rows(self, idx: Sequence[int]) -> "SparseMatrix":
        pos = {r: k for k, r in enumerate(idx)}
        cols = [{pos[i]: x for i, x in c.items() if i in pos} for c in self.cols]
        return SparseMatrix(len(idx), self.ncols, cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def hstack(mats: Sequence[SparseMatrix], nrows: int | None = None) -> SparseMatrix:
    if not mats:
        return SparseMatrix(nrows or 0, 0)
    n = mats[0].nrows
    cols = []
    for m in mats:
        if m.nrows != n:
            raise ValueError("row count mismatch")
        cols.extend(dict(c) for c in m.cols)
    return SparseMatrix(n, len(cols), cols)


def block_matrix(blocks: Sequence[Sequence[SparseMatrix | None]], row_sizes, col_sizes) -> SparseMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    row_off = [0]
    for r in row_sizes:
        row_off.append(row_off[-1] + r)
    cols = []
    for bj, w in enumerate(col_sizes):
        for j in range(w):
            col = {}
            for bi in range(len(row_sizes)):
                blk = blocks[bi][bj]
                if blk is None:
                    continue
                if blk.shape != (row_sizes[bi], w):
                    raise ValueError("block shape mismatch")
                for i, x in blk.cols[j].items():
                    col[row_off[bi] + i] = x
            cols.append(col)
    return SparseMatrix(row_off[-1], len(cols), cols)


def write_triplets(m: SparseMatrix) -> str:
    """Sparse triplet text: a ``rows cols`` header then ``row col value`` lines."""
    lines = [f"{m.nrows} {m.ncols}"]
    lines.extend(f"{i} {j} {x}" for i, j, x in m.entries())
    return "\n".join(lines) + "\n"


def read_triplets(text: str) -> SparseMatrix:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty triplet document")
    nrows, ncols = int(rows[0][0]), int(rows[0][1])
    entries = []
    for parts in rows[1:]:
        if len(parts) != 3:
            raise ValueError(f"bad triplet line {' '.join(parts)!r}")
        i, j = int(parts[0]), int(parts[1])
        x = Fraction(parts[2])
        if x.denominator == 1:
            x = x.numerator
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise ValueError(f"triplet index out of range: {i} {j}")
        entries.append((i, j, x))
    return SparseMatrix.from_entries(nrows, ncols, entries)


# ---------------------------------------------------------------------------
# column reduction


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _axpy(target: dict, a, source: dict, mod: int = 0) -> None:
    """target += a * source, in place."""
    for i, x in source.items():
        v = target.get(i, 0) + a * x
        if mod:
            v %= mod
        if v:
            target[i] = v
        else:
            target.pop(i, None)


def _lincomb(a, u: dict, b, v: dict, mod: int = 0) -> dict:
    out: dict = {}
    if a:
        for i, x in u.items():
            out[i] = a * x
    for i, x in v.items():
        out[i] = out.get(i, 0) + b * x
    if mod:
        return {i: x % mod for i, x in out.items() if x % mod}
    return {i: x for i, x in out.items() if x}


@dataclass
class Reduction:
    """Result of a column reduction ``M V = H``.

    ``pivots`` maps a pivot row to the column of ``H`` whose lowest nonzero
    entry sits in that row; ``kernel_columns`` are the zero columns of ``H``.
    """

    ring: Ring
    H: SparseMatrix
    V: SparseMatrix | None
    Vinv_rows: list[dict] | None
    pivots: dict[int, int]
    kernel_columns: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def column_reduce(M: SparseMatrix, ring: Ring = ZZ, transforms: bool = True) -> Reduction:
    """Reduce the columns of ``M`` so their lowest nonzero rows are distinct.

    Over Z only unimodular column operations are used (including 2x2 Bezout
    steps), so ``V`` has determinant +-1 and its inverse is tracked alongside.
    Over Q the reduction still runs with integer steps when the input is
    integral; Z/p uses field inverses.
    """
    mod = ring.characteristic
    field_mode = ring.is_field and not (ring.name == "Q" and _integral(M))
    if mod:
        cols = [dict(c) for c in M.over(ring).cols]
    elif ring.name == "Q" and field_mode:
        cols = [{i: Fraction(x) for i, x in c.items()} for c in M.cols]
    else:
        cols = [dict(c) for c in M.cols]
    n = M.ncols
    V = [{j: 1} for j in range(n)] if transforms else None
    Vi = [{j: 1} for j in range(n)] if transforms else None
    pivots: dict[int, int] = {}
    for j in range(n):
        cj = cols[j]
        while cj:
            r = max(cj)
            i = pivots.get(r)
            if i is None:
                pivots[r] = j
                break
            ci = cols[i]
            a, b = ci[r], cj[r]
            if field_mode:
                q = ring.divide(b, a)
                _axpy(cj, -q, ci, mod)
                if transforms:
                    _axpy(V[j], -q, V[i], mod)
                    _axpy(Vi[i], q, Vi[j], mod)
            elif b % a == 0:
                q = b // a
                _axpy(cj, -q, ci)
                if transforms:
                    _axpy(V[j], -q, V[i])
                    _axpy(Vi[i], q, Vi[j])
            else:
                g, s, t = _xgcd(a, b)
                ag, bg = a // g, b // g
                new_i = _lincomb(s, ci, t, cj)
                new_j = _lincomb(-bg, ci, ag, cj)
                cols[i], cols[j] = new_i, new_j
                cj = new_j
                if transforms:
                    V[i], V[j] = _lincomb(s, V[i], t, V[j]), _lincomb(-bg, V[i], ag, V[j])
                    Vi[i], Vi[j] = _lincomb(ag, Vi[i], bg, Vi[j]), _lincomb(-t, Vi[i], s, Vi[j])
    kernel = [j for j in range(n) if not cols[j]]
    H = SparseMatrix(M.nrows, n, cols)
    Vm = SparseMatrix(n, n, V) if transforms else None
    return Reduction(ring, H, Vm, Vi, pivots, kernel)


def _integral(M: SparseMatrix) -> bool:
    return all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
               for c in M.cols for x in c.values())


def rank(M: SparseMatrix, ring: Ring = QQ) -> int:
    return column_reduce(M, ring, transforms=False).rank


@dataclass
class Kernel:
    """A basis of ``ker M`` (columns of ``basis``) and a left inverse ``coords``.

    ``coords @ basis`` is the identity; over Z the basis is saturated.
    """

    basis: SparseMatrix
    coords: SparseMatrix


def kernel(M: SparseMatrix, ring: Ring = ZZ) -> Kernel:
    red = column_reduce(M, ring)
    ks = red.kernel_columns
    basis = SparseMatrix(M.ncols, len(ks), [dict(red.V.cols[j]) for j in ks])
    rows = [red.Vinv_rows[j] for j in ks]
    coords = SparseMatrix(len(ks), M.ncols, [{} for _ in range(M.ncols)])
    for r, row in enumerate(rows):
        for c, x in row.items():
            coords.cols[c][r] = x
    return Kernel(basis, coords)


def solve(M: SparseMatrix, v: dict, ring: Ring = ZZ, red: Reduction | None = None) -> dict | None:
    """Return x with ``M x = v`` over ``ring``, or None when no solution exists."""
    if red is None:
        red = column_reduce(M, ring)
    mod = ring.characteristic
    if mod:
        res = {i: ring.coerce(x) for i, x in v.items() if ring.coerce(x)}
    elif ring.name == "Q":
        res = {i: Fraction(x) for i, x in v.items() if x}
    else:
        res = {i: ring.coerce(x) for i, x in v.items() if x}
    y: dict = {}
    H = red.H
    while res:
        r = max(res)
        j = red.pivots.get(r)
        if j is None:
            return None
        q = ring.divide(res[r], H.cols[j][r])
        if q is None:
            return None
        y[j] = q
        _axpy(res, -q, H.cols[j], mod)
    x = red.V.apply(y)
    if mod:
        x = {i: a % mod for i, a in x.items() if a % mod}
    return x


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """``U M V = S`` with S diagonal; ``U_inv`` and ``V_inv`` are the inverses."""

    S: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    U_inv: list[list[int]]
    V_inv: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: SparseMatrix | Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form over Z with transforms.

    Pivots are chosen by minimal absolute value with ties broken by
    (row, column) index, so the output is deterministic.
    """
    A = M.to_dense() if isinstance(M, SparseMatrix) else [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else (M.ncols if isinstance(M, SparseMatrix) else 0)
    U, Ui = _identity(m), _identity(m)
    V, Vi = _identity(n), _identity(n)

    def row_add(dst, src, q):  # row_dst += q * row_src
        if not q:
            return
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if not q:
            return
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def row_swap(a, b):
        if a != b:
            A[a], A[b] = A[b], A[a]
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def col_swap(a, b):
        if a != b:
            for row in A:
                row[a], row[b] = row[b], row[a]
            for row in V:
                row[a], row[b] = row[b], row[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def row_neg(a):
        A[a] = [-x for x in A[a]]
        U[a] = [-x for x in U[a]]
        for row in Ui:
            row[a] = -row[a]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if A[t][t] < 0:
            row_neg(t)
    return SmithForm(A, U, V, Ui, Vi)


def invariant_factors(M: SparseMatrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    Unit pivots are eliminated sparsely first; only the remaining core goes
    through the dense Smith form.
    """
    rows: dict[int, dict[int, int]] = {}
    for j, c in enumerate(M.cols):
        for i, x in c.items():
            rows.setdefault(i, {})[j] = x
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in enumerate(M.cols) if c}
    units = 0
    while True:
        pick = None
        for j in sorted(cols):
            for i in sorted(cols[j]):
                if abs(cols[j][i]) == 1:
                    pick = (i, j)
                    break
            if pick:
                break
        if pick is None:
            break
        r, c = pick
        p = cols[c][r]
        prow = rows[r]
        for i in [i for i in cols[c] if i != r]:
            q = cols[c][i] * p  # p = +-1 so dividing equals multiplying
            for j, x in prow.items():
                v = rows[i].get(j, 0) - q * x
                if v:
                    rows[i][j] = v
                    cols[j][i] = v
                else:
                    rows[i].pop(j, None)
                    cols[j].pop(i, None)
        for j in list(prow):
            cols[j].pop(r, None)
            if not cols[j]:
                del cols[j]
        del rows[r]
        cols.pop(c, None)
        units += 1
    rows = {i: rw for i, rw in rows.items() if rw}
    out = [1] * units
    if rows:
        ri = sorted(rows)
        ci = sorted(cols)
        cpos = {j: k for k, j in enumerate(ci)}
        dense = [[0] * len(ci) for _ in ri]
        for a, i in enumerate(ri):
            for j, x in rows[i].items():
                dense[a][cpos[j]] = x
        d = smith_normal_form(dense).diagonal
        out.extend(x for x in d if x)
    return _normalize_invariants(out)


def _normalize_invariants(ds: list[int]) -> list[int]:
    """Rewrite any diagonal list as the divisibility chain of invariant factors."""
    from math import gcd

    ds = [abs(x) for x in ds if x]
    ds.sort()
    changed = True
    while changed:
        changed = False
        for a in range(len(ds)):
            for b in range(a + 1, len(ds)):
                x, y = ds[a], ds[b]
                if y % x:
                    g = gcd(x, y)
                    ds[a], ds[b] = g, x * y // g
                    changed = True
        ds.sort()
    return ds


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class HomologyGroup:
    """A (co)homology group: free rank plus torsion invariant factors."""

    degree: int
    ring: Ring
    rank: int
    torsion: tuple[int, ...] = ()
    representatives: list[dict] | None = None

    def __str__(self):
        parts = []
        base = {"Z": "Z", "Q": "Q"}.get(self.ring.name, self.ring.name)
        if self.rank:
            parts.append(f"{base}^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}


@dataclass
class ChainComplexPresentation:
    """Free graded module with differential matrices in its own coordinates.

    ``direction`` is +1 for cochain complexes and -1 for chain complexes;
    ``d[k]`` maps degree k to degree ``k + direction``.  When the complex is
    a subcomplex of an ambient one, ``inclusion[k]`` holds its basis as
    columns in ambient coordinates and ``retraction[k]`` a left inverse.
    """

    ring: Ring
    direction: int
    dims: dict[int, int]
    d: dict[int, SparseMatrix]
    labels: dict[int, list] = field(default_factory=dict)
    inclusion: dict[int, SparseMatrix] | None = None
    retraction: dict[int, SparseMatrix] | None = None
    extra: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def outgoing(self, k: int) -> SparseMatrix:
        if k in self.d:
            return self.d[k]
        return SparseMatrix(self.dim(k + self.direction), self.dim(k))

    def incoming(self, k: int) -> SparseMatrix:
        return self.outgoing(k - self.direction)

    def check_square_zero(self) -> bool:
        return all((self.outgoing(k + self.direction) @ self.outgoing(k)).over(self.ring).is_zero()
                   for k in self.degrees)

    def _rank(self, k: int) -> int:
        key = ("rank", k)
        if key not in self._cache:
            self._cache[key] = rank(self.outgoing(k), self.ring)
        return self._cache[key]

    def homology(self, k: int, representatives: bool = False) -> HomologyGroup:
        n = self.dim(k)
        free = n - self._rank(k) - self._rank(k - self.direction)
        torsion: tuple[int, ...] = ()
        if self.ring == ZZ:
            torsion = tuple(x for x in invariant_factors(self.incoming(k)) if x > 1)
        reps = self._representatives(k) if representatives else None
        return HomologyGroup(k, self.ring, free, torsion, reps)

    def homology_table(self) -> list[HomologyGroup]:
        return [self.homology(k) for k in self.degrees]

    def ranks(self) -> tuple[int, ...]:
        return tuple(h.rank for h in self.homology_table())

    def _representatives(self, k: int) -> list[dict]:
        """Cycle representatives, mapped into ambient coordinates when known."""
        Z = kernel(self.outgoing(k), self.ring)
        B = self.incoming(k)
        reps: list[dict] = []
        if self.ring.is_field:
            red = column_reduce(hstack([B.over(self.ring), Z.basis.over(self.ring)]), self.ring, transforms=False)
            start = B.ncols
            for row, col in sorted(red.pivots.items(), key=lambda rc: rc[1]):
                if col >= start:
                    reps.append(dict(Z.basis.cols[col - start]))
        else:
            coords = Z.coords @ B
            snf = smith_normal_form(coords)
            diag = snf.diagonal
            Uinv = snf.U_inv
            for t in range(Z.basis.ncols):
                s = diag[t] if t < len(diag) else 0
                if s == 1:
                    continue
                gen = {r: Uinv[r][t] for r in range(len(Uinv)) if Uinv[r][t]}
                reps.append(Z.basis.apply(gen))
        if self.inclusion is not None:
            reps = [self.inclusion[k].apply(v) if k in self.inclusion else v for v in reps]
        return reps

    def coboundary_witness(self, k: int, v: dict) -> dict | None:
        """Solve ``d x = v`` for x in degree ``k - direction`` (own coordinates)."""
        return solve(self.incoming(k), v, self.ring)

    def to_coordinates(self, k: int, ambient_vec: dict) -> dict:
        """Coordinates of an ambient vector lying in the subcomplex."""
        if self.retraction is None:
            return dict(ambient_vec)
        x = self.retraction[k].apply(ambient_vec)
        if self.inclusion[k].apply(x) != {i: a for i, a in ambient_vec.items() if a}:
            raise ValueError("vector does not lie in the subcomplex")
        return x

    def from_coordinates(self, k: int, vec: dict) -> dict:
        if self.inclusion is None:
            return dict(vec)
        return self.inclusion[k].apply(vec)


def _mod(v: dict, ring: Ring) -> dict:
    out = {}
    for i, x in v.items():
        y = ring.coerce(x)
        if y:
            out[i] = y
    return out


def preimage_subcomplex(
    ambient_dims: dict[int, int],
    ambient_d: dict[int, SparseMatrix],
    selectors: dict[int, Sequence[int]],
    direction: int,
    ring: Ring,
    labels: dict[int, list] | None = None,
) -> ChainComplexPresentation:
    """Presentation of ``{x in A_k : d x in A_{k+direction}}``.

    ``selectors[k]`` lists the ambient coordinates spanning ``A_k``.  The
    basis in each degree is the kernel of (project off ``A_{k+direction}``)
    composed with d restricted to ``A_k``.
    """
    kring = ZZ if ring == QQ else ring
    inc: dict[int, SparseMatrix] = {}
    ret: dict[int, SparseMatrix] = {}
    for k, N in ambient_dims.items():
        sel = list(selectors.get(k, []))
        nxt = set(selectors.get(k + direction, []))
        dk = ambient_d.get(k)
        if dk is None:
            dk = SparseMatrix(ambient_dims.get(k + direction, 0), N)
        sub = dk.select_columns(sel)
        off = [i for i in range(dk.nrows) if i not in nxt]
        K = kernel(sub.select_rows(off), kring)
        # embed into ambient coordinates
        inc[k] = SparseMatrix(N, K.basis.ncols, [{sel[i]: x for i, x in c.items()} for c in K.basis.cols])
        pos = {a: t for t, a in enumerate(sel)}
        ret[k] = SparseMatrix(K.coords.nrows, N, [dict(K.coords.cols[pos[a]]) if a in pos else {} for a in range(N)])
    dims = {k: inc[k].ncols for k in ambient_dims}
    d = {}
    for k in ambient_dims:
        tgt = k + direction
        if tgt not in ambient_dims:
            continue
        dk = ambient_d.get(k)
        if dk is None:
            continue
        d[k] = ret[tgt] @ (dk @ inc[k])
    lab = {}
    if labels is not None:
        lab = labels
    return ChainComplexPresentation(ring, direction, dims, d, lab, inc, ret)


def full_presentation(dims: dict[int, int], d: dict[int, SparseMatrix], direction: int, ring: Ring,
                      labels: dict[int, list] | None = None) -> ChainComplexPresentation:
    return ChainComplexPresentation(ring, direction, dict(dims), dict(d), labels or {})


@dataclass
class ChainMap:
    """Degree-preserving map between two presentations, in their coordinates."""

    source: ChainComplexPresentation
    target: ChainComplexPresentation
    f: dict[int, SparseMatrix]

    def at(self, k: int) -> SparseMatrix:
        if k in self.f:
            return self.f[k]
        return SparseMatrix(self.target.dim(k), self.source.dim(k))

    def is_chain_map(self) -> bool:
        ring = self.source.ring
        dirn = self.source.direction
        for k in set(self.source.degrees) | set(self.target.degrees):
            lhs = self.target.outgoing(k) @ self.at(k)
            rhs = self.at(k + dirn) @ self.source.outgoing(k)
            if not (lhs - rhs).over(ring).is_zero():
                return False
        return True

    def mapping_cone(self) -> ChainComplexPresentation:
        C, D = self.source, self.target
        dirn = C.direction
        degs = set(D.degrees) | {k - dirn for k in C.degrees}
        dims = {k: C.dim(k + dirn) + D.dim(k) for k in degs}
        d = {}
        for k in degs:
            t = k + dirn
            if t not in degs:
                continue
            blocks = [[-C.outgoing(k + dirn), None], [self.at(k + dirn), D.outgoing(k)]]
            d[k] = block_matrix(blocks, [C.dim(t + dirn), D.dim(t)], [C.dim(k + dirn), D.dim(k)])
        return ChainComplexPresentation(C.ring, dirn, dims, d)

    def is_quasi_isomorphism(self) -> bool:
        cone = self.mapping_cone()
        return all(cone.homology(k).is_zero for k in cone.degrees)

    def induced_rank(self, k: int) -> int:
        """Rank of the induced map on degree-k homology (field coefficients)."""
        ring = self.source.ring
        if not ring.is_field:
            raise ValueError("induced_rank needs field coefficients")
        Z = kernel(self.source.outgoing(k), ring)
        img = self.at(k) @ Z.basis
        B = self.target.incoming(k)
        return rank(hstack([B, img], self.target.dim(k)), ring) - rank(B, ring)

    def degreewise_iso(self) -> dict[int, bool]:
        """Per-degree isomorphism report.

        Over a field this is exact.  Over Z it reports whether the mapping
        cone vanishes in the two degrees that flank k, which is sufficient
        for an isomorphism in degree k.
        """
        out = {}
        degs = sorted(set(self.source.degrees) | set(self.target.degrees))
        if self.source.ring.is_field:
            for k in degs:
                r = self.induced_rank(k)
                out[k] = r == self.source.homology(k).rank == self.target.homology(k).rank
            return out
        cone = self.mapping_cone()
        dirn = self.source.direction
        for k in degs:
            out[k] = cone.homology(k).is_zero and cone.homology(k - dirn).is_zero
        return out


def chain_map_from_ambient(source: ChainComplexPresentation, target: ChainComplexPresentation,
                           F: dict[int, SparseMatrix]) -> ChainMap:
    """Express ambient matrices ``F[k]`` as a map between subcomplex coordinates.

    Raises ValueError if the image of the source subcomplex is not contained
    in the target subcomplex.
    """
    f = {}
    for k in source.degrees:
        if k not in F or k not in target.dims:
            continue
        M = F[k]
        if source.inclusion is not None:
            M = M @ source.inclusion[k]
        if target.inclusion is not None:
            coords = target.retraction[k] @ M
            if not (target.inclusion[k] @ coords - M).over(source.ring).is_zero():
                raise ValueError(f"map leaves the target subcomplex in degree {k}")
            M = coords
        f[k] = M
    return ChainMap(source, target, f)


def direct_sum(C: ChainComplexPresentation, D: ChainComplexPresentation) -> ChainComplexPresentation:
    if C.direction != D.direction or C.ring != D.ring:
        raise ValueError("direct sum of incompatible presentations")
    degs = set(C.degrees) | set(D.degrees)
    dims = {k: C.dim(k) + D.dim(k) for k in degs}
    d = {}
    for k in degs:
        t = k + C.direction
        if t in degs:
            d[k] = block_matrix([[C.outgoing(k), None], [None, D.outgoing(k)]],
                                [C.dim(t), D.dim(t)], [C.dim(k), D.dim(k)])
    return ChainComplexPresentation(C.ring, C.direction, dims, d)


def paired_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """(f, g): C -> A + B for maps with a common source."""
    T = direct_sum(f.target, g.target)
    out = {k: block_matrix([[f.at(k)], [g.at(k)]], [f.target.dim(k), g.target.dim(k)], [f.source.dim(k)])
           for k in f.source.degrees}
    return ChainMap(f.source, T, out)


def difference_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """f - g: A + B -> C for maps with a common target."""
    S = direct_sum(f.source, g.source)
    out = {k: block_matrix([[f.at(k), -g.at(k)]], [f.target.dim(k)], [f.source.dim(k), g.source.dim(k)])
           for k in S.degrees}
    return ChainMap(S, f.target, out)
