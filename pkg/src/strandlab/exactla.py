"""Exact linear algebra over Q.

Vectors are sparse dicts ``{index: value}``. Elimination is fraction-free:
rows are kept as primitive integer vectors (content divided out after every
combination), so denominators never appear until a caller asks for
coordinates. Pivot choice is deterministic (smallest column index).

:class:`Echelon` is the workhorse: an incremental, fully reduced echelon
basis whose rows are canonical (reduced, primitive, positive pivot), so two
spanning sets of the same space produce identical row sets.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm


class AmbientMismatch(ValueError):
    pass


class NotContained(ValueError):
    pass


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def integral(vec: dict) -> tuple[dict, int]:
    """Scale a rational sparse vector to integers: returns (ints, denom)."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    if den == 1:
        return {k: int(v) for k, v in vec.items() if v}, 1
    return {k: int(v * den) for k, v in vec.items() if v}, den


def _combine(a: dict, ca: int, b: dict, cb: int) -> dict:
    """ca*a + cb*b, dropping zeros."""
    out = {k: ca * v for k, v in a.items()} if ca != 1 else dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + cb * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form of integer rows."""

    __slots__ = ("rows",)

    def __init__(self, vectors=()):
        self.rows: dict[int, dict] = {}  # pivot column -> primitive row
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = dict(self.rows)
        return e

    def reduce(self, vec: dict) -> dict:
        """Remainder of an integer vector modulo the span (integer multiple)."""
        v = {k: x for k, x in vec.items() if x}
        rows = self.rows
        for p in sorted(k for k in v if k in rows):
            x = v.get(p)
            if not x:
                continue
            row = rows[p]
            piv = row[p]
            g = gcd(piv, x)
            v = _combine(v, piv // g, row, -(x // g))
        return _primitive(v) if v else v

    def add(self, vec) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        if any(isinstance(x, Fraction) for x in vec.values()):
            vec, _ = integral(vec)
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        if v[p] < 0:
            v = {k: -x for k, x in v.items()}
        piv = v[p]
        for q, row in list(self.rows.items()):
            x = row.get(p)
            if x:
                g = gcd(piv, x)
                new = _combine(row, piv // g, v, -(x // g))
                new = _primitive(new)
                if new[q] < 0:
                    new = {k: -y for k, y in new.items()}
                self.rows[q] = new
        self.rows[p] = v
        return True

    def contains(self, vec) -> bool:
        if any(isinstance(x, Fraction) for x in vec.values()):
            vec, _ = integral(vec)
        return not self.reduce(vec)

    def coords(self, vec) -> dict:
        """Coordinates of a vector in the span, keyed by pivot column."""
        out = {}
        for p, row in self.rows.items():
            x = vec.get(p)
            if x:
                out[p] = Fraction(x) / row[p]
        return out

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank_of_rows(rows) -> int:
    return len(Echelon(rows))


def nullspace(columns: list[dict]) -> list[dict]:
    """Integer basis of {x : sum_j x_j columns[j] = 0}.

    ``columns`` are sparse vectors (the columns of a matrix); the result is a
    list of sparse vectors over column indices 0..len(columns)-1.
    """
    # transpose: rows of A indexed by the row labels of the columns
    rows: dict = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            if x:
                rows.setdefault(i, {})[j] = x
    ech = Echelon()
    for i in sorted(rows, key=_order_key):
        r = rows[i]
        if any(isinstance(x, Fraction) for x in r.values()):
            r, _ = integral(r)
        ech.add(r)
    pivots = set(ech.rows)
    out = []
    for f in range(len(columns)):
        if f in pivots:
            continue
        # x_f = L, x_p = -row_p[f] * L / row_p[p]
        den = 1
        for p, row in ech.rows.items():
            if row.get(f):
                den = lcm(den, row[p])
        vec = {f: den}
        for p, row in ech.rows.items():
            x = row.get(f)
            if x:
                vec[p] = -x * (den // row[p])
        out.append(_primitive(vec))
    return out


def _order_key(k):
    return (0, k) if isinstance(k, int) else (1, repr(k))


# ---------------------------------------------------------------- matrices

class RationalMatrix:
    """Sparse rows x cols matrix with Fraction entries; immutable by convention."""

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows, self.cols = rows, cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            x = Fraction(x)
            if x:
                self.entries[(i, j)] = x

    @classmethod
    def from_dense(cls, data) -> "RationalMatrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): x for i, r in enumerate(data) for j, x in enumerate(r) if x})

    @classmethod
    def from_columns(cls, nrows: int, columns: list[dict]) -> "RationalMatrix":
        return cls(nrows, len(columns), {(i, j): x for j, c in enumerate(columns) for i, x in c.items()})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def column_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), x in self.entries.items():
            out[j][i] = x
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): x for (i, j), x in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        orows = other.row_dicts()
        out: dict = {}
        for (i, k), x in self.entries.items():
            for j, y in orows[k].items():
                out[(i, j)] = out.get((i, j), 0) + x * y
        return RationalMatrix(self.rows, other.cols, out)

    def __add__(self, other):
        e = dict(self.entries)
        for k, x in other.entries.items():
            e[k] = e.get(k, 0) + x
        return RationalMatrix(self.rows, self.cols, e)

    def __sub__(self, other):
        e = dict(self.entries)
        for k, x in other.entries.items():
            e[k] = e.get(k, 0) - x
        return RationalMatrix(self.rows, self.cols, e)

    def __neg__(self):
        return RationalMatrix(self.rows, self.cols, {k: -x for k, x in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def apply(self, vec: dict) -> dict:
        cols = {}
        for (i, j), x in self.entries.items():
            cols.setdefault(j, []).append((i, x))
        out: dict = {}
        for j, y in vec.items():
            for i, x in cols.get(j, ()):
                out[i] = out.get(i, 0) + x * y
        return {i: x for i, x in out.items() if x}

    def to_json(self) -> str:
        ents = [[i, j, str(x)] for (i, j), x in sorted(self.entries.items())]
        return json.dumps({"rows": self.rows, "cols": self.cols, "entries": ents})

    @classmethod
    def from_json(cls, text: str) -> "RationalMatrix":
        d = json.loads(text)
        return cls(d["rows"], d["cols"], {(i, j): Fraction(x) for i, j, x in d["entries"]})

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def rank(A: RationalMatrix) -> int:
    return rank_of_rows(A.row_dicts())


def kernel(A: RationalMatrix) -> "Subspace":
    return Subspace(A.cols, nullspace(A.column_dicts()))


def image(A: RationalMatrix) -> "Subspace":
    return Subspace(A.rows, A.column_dicts())


# ---------------------------------------------------------------- subspaces

class Subspace:
    """A subspace of Q^ambient_dim held in canonical reduced echelon form."""

    def __init__(self, ambient_dim: int, vectors=()):
        self.ambient_dim = ambient_dim
        self.ech = vectors if isinstance(vectors, Echelon) else Echelon()
        if not isinstance(vectors, Echelon):
            for v in vectors:
                if any(not 0 <= k < ambient_dim for k in v):
                    raise IndexError("vector outside ambient")
                self.ech.add(v)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [{i: 1} for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.ech)

    def basis_vectors(self) -> list[dict]:
        return self.ech.basis()

    @property
    def basis(self) -> RationalMatrix:
        """Columns are the canonical basis vectors."""
        return RationalMatrix.from_columns(self.ambient_dim, self.basis_vectors())

    def canonical(self) -> tuple:
        return tuple(tuple(sorted(r.items())) for r in self.ech.basis())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.ambient_dim, self.canonical()))

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"{self.ambient_dim} != {other.ambient_dim}")

    def contains(self, v) -> bool:
        if isinstance(v, Subspace):
            self._check(v)
            return all(self.ech.contains(b) for b in v.basis_vectors())
        return self.ech.contains(v)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        e = self.ech.copy()
        for b in other.basis_vectors():
            e.add(b)
        return Subspace(self.ambient_dim, e)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """U cap W from the kernel of [U | -W]."""
        self._check(other)
        U, W = self.basis_vectors(), other.basis_vectors()
        if not U or not W:
            return Subspace(self.ambient_dim)
        cols = U + [{k: -x for k, x in w.items()} for w in W]
        out = []
        for x in nullspace(cols):
            v: dict = {}
            for j, c in x.items():
                if j < len(U):
                    for k, y in U[j].items():
                        v[k] = v.get(k, 0) + c * y
            out.append({k: y for k, y in v.items() if y})
        return Subspace(self.ambient_dim, out)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"


def intersect(U: Subspace, W: Subspace) -> Subspace:
    return U.intersect(W)


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    return U.sum(W)


def contains(U: Subspace, v) -> bool:
    return U.contains(v)


def quotient_map(U: Subspace, W: Subspace) -> tuple[RationalMatrix, int]:
    """Surjection from U-coordinates onto U/W.

    Source coordinates are those of U's canonical basis. The target basis is
    the set of U-basis vectors that stay independent modulo W, taken in
    order. Returns (matrix, dim U - dim W).
    """
    U._check(W)
    if not U.contains(W):
        raise NotContained("quotient_map requires W inside U")
    ub = U.basis_vectors()
    wb = W.basis_vectors()
    ech = W.ech.copy()
    comp = [b for b in ub if ech.add(b)]
    cols = wb + comp
    rows: dict = {}
    for j, c in enumerate(cols):
        for i, x in c.items():
            rows.setdefault(i, {})[j] = x
    entries = {}
    for j, u in enumerate(ub):
        sol = _solve(rows, len(cols), u)
        for t in range(len(comp)):
            x = sol.get(len(wb) + t)
            if x:
                entries[(t, j)] = x
    return RationalMatrix(len(comp), len(ub), entries), len(comp)


def _solve(rows: dict, ncols: int, rhs: dict) -> dict:
    """Solve A x = rhs for a full-column-rank sparse A (rows: i -> {j: a_ij})."""
    keys = sorted(set(rows) | set(rhs), key=_order_key)
    aug = []
    for i in keys:
        r = {j: Fraction(x) for j, x in rows.get(i, {}).items() if x}
        b = Fraction(rhs.get(i, 0))
        if r or b:
            aug.append((r, b))
    piv: dict[int, tuple[dict, Fraction]] = {}
    for r, b in aug:
        r = dict(r)
        for j in sorted(r):
            if j in piv and r.get(j):
                pr, pb = piv[j]
                f = r[j]
                for k, y in pr.items():
                    z = r.get(k, 0) - f * y
                    if z:
                        r[k] = z
                    else:
                        r.pop(k, None)
                b -= f * pb
        if not r:
            if b:
                raise NotContained("system is inconsistent")
            continue
        j0 = min(r)
        f = r[j0]
        r = {k: y / f for k, y in r.items()}
        b = b / f
        for j, (pr, pb) in list(piv.items()):
            g = pr.get(j0)
            if g:
                for k, y in r.items():
                    z = pr.get(k, 0) - g * y
                    if z:
                        pr[k] = z
                    else:
                        pr.pop(k, None)
                piv[j] = (pr, pb - g * b)
        piv[j0] = (r, b)
    return {j: b for j, (r, b) in piv.items() if b}
