"""Schur-basis characters and the combinatorics behind them.

Characters of gl(E)-modules are stored as :class:`SchurSum` (shape ->
multiplicity), characters of gl(E) x gl(F)-modules as :class:`PairSchurSum`.
Littlewood-Richardson coefficients come from direct enumeration of LR skew
tableaux with the lattice-word condition; nothing is tabulated.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product as iproduct

from .partitions import (Partition, SkewShape, enumerate_partitions,
                         pq_rs, p_rs, transpose)


class SchurSum:
    """Finite integer combination of Schur labels."""

    def __init__(self, terms=None):
        self.terms: dict[Partition, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for lam, c in items:
                self._add(Partition(lam), c)

    def _add(self, lam, c):
        c = self.terms.get(lam, 0) + c
        if c:
            self.terms[lam] = c
        else:
            self.terms.pop(lam, None)

    @classmethod
    def single(cls, lam, coeff=1):
        return cls({Partition(lam): coeff})

    def __getitem__(self, lam):
        return self.terms.get(Partition(lam), 0)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=_sort_key))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SchurSum):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = SchurSum(self.terms)
        for lam, c in other.terms.items():
            out._add(lam, c)
        return out

    def __sub__(self, other):
        out = SchurSum(self.terms)
        for lam, c in other.terms.items():
            out._add(lam, -c)
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            return SchurSum({k: v * other for k, v in self.terms.items()})
        out = SchurSum()
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                for lam, c in lr_product(mu, nu).items():
                    out._add(lam, a * b * c)
        return out

    __rmul__ = __mul__

    def truncate(self, n: int) -> "SchurSum":
        """Drop labels with more than n rows (they vanish on an n-dim space)."""
        return SchurSum({k: v for k, v in self.terms.items() if len(k) <= n})

    def dim(self, n: int) -> int:
        return sum(c * dim_schur(lam, n) for lam, c in self.terms.items())

    def contains(self, other: "SchurSum") -> bool:
        """Coefficientwise >=."""
        return all(self[lam] >= c for lam, c in other.terms.items())

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def to_json(self):
        return [{"shape": list(lam), "coeff": c} for lam, c in self]

    @classmethod
    def from_json(cls, data):
        return cls({Partition(d["shape"]): d["coeff"] for d in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join((f"{c}*" if c != 1 else "") + str(lam) for lam, c in self)


class PairSchurSum:
    """Finite integer combination of pairs (E*-label, F-label)."""

    def __init__(self, terms=None):
        self.terms: dict[tuple[Partition, Partition], int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (a, b), c in items:
                self._add((Partition(a), Partition(b)), c)

    def _add(self, key, c):
        c = self.terms.get(key, 0) + c
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def __getitem__(self, key):
        a, b = key
        return self.terms.get((Partition(a), Partition(b)), 0)

    def __iter__(self):
        return iter(sorted(self.terms.items(),
                           key=lambda kv: (_sort_key((kv[0][0], 0)), _sort_key((kv[0][1], 0)))))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PairSchurSum):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        out = PairSchurSum(self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __sub__(self, other):
        out = PairSchurSum(self.terms)
        for k, c in other.terms.items():
            out._add(k, -c)
        return out

    def dim(self, n: int, m: int) -> int:
        return sum(c * dim_schur(a, n) * dim_schur(b, m) for (a, b), c in self.terms.items())

    def contains(self, other: "PairSchurSum") -> bool:
        return all(self[k] >= c for k, c in other.terms.items())

    def to_json(self):
        return [{"shapeE": list(a), "shapeF": list(b), "coeff": c} for (a, b), c in self]

    @classmethod
    def from_json(cls, data):
        return cls({(Partition(d["shapeE"]), Partition(d["shapeF"])): d["coeff"] for d in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join((f"{c}*" if c != 1 else "") + f"({a};{b})" for (a, b), c in self)


def _sort_key(item):
    lam = item[0]
    # larger partitions first, then reverse-lex
    return (lam.size, tuple(-p for p in lam))


# ---------------------------------------------------------------- dimensions

def dim_schur(lam, n: int) -> int:
    """Dimension of S_lam of an n-dimensional space (hook-content formula)."""
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    lt = transpose(lam)
    num, den = 1, 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= (row - j) + (lt[j] - i) - 1
    return num // den


def ssyt(lam, n: int):
    """Yield semistandard tableaux of shape lam with entries 1..n (as row lists)."""
    lam = Partition(lam)
    boxes = lam.boxes()
    grid = [[0] * row for row in lam]

    def rec(k):
        if k == len(boxes):
            yield [row[:] for row in grid]
            return
        i, j = boxes[k]
        lo = 1
        if j > 0:
            lo = max(lo, grid[i][j - 1])
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        for v in range(lo, n + 1):
            grid[i][j] = v
            yield from rec(k + 1)
        grid[i][j] = 0

    yield from rec(0)


def count_ssyt(lam, n: int) -> int:
    return sum(1 for _ in ssyt(lam, n))


def kostka_weights(lam, n: int) -> Counter:
    """Weight multiplicities of S_lam on C^n: content vector -> count."""
    out = Counter()
    for t in ssyt(lam, n):
        c = [0] * n
        for row in t:
            for v in row:
                c[v - 1] += 1
        out[tuple(c)] += 1
    return out


# ---------------------------------------------------------------- LR rule

@lru_cache(maxsize=None)
def _lr(lam: tuple, mu: tuple, nu: tuple) -> int:
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size or not lam.contains(mu) or not lam.contains(nu):
        return 0
    if not nu:
        return 1
    # reading order: rows top to bottom, each row right to left
    boxes = [(i, j) for i in range(len(lam))
             for j in reversed(range(mu.part(i), lam[i]))]
    fill = {}
    counts = [0] * (len(nu) + 1)
    total = 0

    def rec(k):
        nonlocal total
        if k == len(boxes):
            total += 1
            return
        i, j = boxes[k]
        hi = len(nu)
        right = fill.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        above = fill.get((i - 1, j))
        lo = 1 if above is None else above + 1
        # a box above inside mu is fine; column strictness only among filled boxes
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            fill[(i, j)] = v
            rec(k + 1)
            del fill[(i, j)]
            counts[v] -= 1

    rec(0)
    return total


def lr_coeff(lam, mu, nu) -> int:
    """Multiplicity of S_lam in S_mu (x) S_nu."""
    return _lr(tuple(Partition(lam)), tuple(Partition(mu)), tuple(Partition(nu)))


@lru_cache(maxsize=None)
def _lr_product(mu: tuple, nu: tuple) -> tuple:
    mu, nu = Partition(mu), Partition(nu)
    size = mu.size + nu.size
    out = []
    for lam in enumerate_partitions(size, len(mu) + len(nu), mu.part(0) + nu.part(0)):
        if lam.contains(mu) and lam.contains(nu):
            c = lr_coeff(lam, mu, nu)
            if c:
                out.append((lam, c))
    return tuple(out)


def lr_product(mu, nu) -> dict:
    return dict(_lr_product(tuple(Partition(mu)), tuple(Partition(nu))))


def pieri(mu, k: int, kind: str = "row") -> SchurSum:
    """S_mu (x) S^k (kind='row', horizontal strips) or S_mu (x) wedge^k ('column')."""
    mu = Partition(mu)
    out = SchurSum()
    if kind == "row":
        rows = len(mu) + 1

        def rec(i, left, parts):
            if i == rows:
                if left == 0:
                    out._add(Partition(parts), 1)
                return
            cap = left if i == 0 else min(left, mu.part(i - 1) - mu.part(i))
            for a in range(cap, -1, -1):
                rec(i + 1, left - a, parts + [mu.part(i) + a])

        rec(0, k, [])
    elif kind == "column":
        rows = len(mu) + k
        for bits in iproduct((0, 1), repeat=rows):
            if sum(bits) != k:
                continue
            parts = [mu.part(i) + bits[i] for i in range(rows)]
            if all(a >= b for a, b in zip(parts, parts[1:])):
                out._add(Partition(parts), 1)
    else:
        raise ValueError("kind must be 'row' or 'column'")
    return out


def skew_expand(sh: SkewShape) -> SchurSum:
    """S_{outer/inner} = sum_nu c^{outer}_{inner,nu} S_nu."""
    out = SchurSum()
    for nu in enumerate_partitions(sh.size, len(sh.outer), sh.outer.part(0)):
        c = lr_coeff(sh.outer, sh.inner, nu)
        if c:
            out._add(nu, c)
    return out


def schur_complex_terms(mu, i: int) -> list[tuple[SkewShape, Partition]]:
    """Degree-i summands S_{mu/nu} W0 (x) S_{nu^T} W1 of S_mu(W0 + W1)."""
    mu = Partition(mu)
    out = []
    for nu in enumerate_partitions(i, len(mu), mu.part(0)):
        if mu.contains(nu):
            out.append((SkewShape(mu, nu), transpose(nu)))
    return out


def schur_complex_dim(mu, n: int, m: int, i: int | None = None) -> int:
    """Dimension of S_mu of an (n|m) superspace, optionally in one degree."""
    mu = Partition(mu)
    degrees = range(mu.size + 1) if i is None else [i]
    total = 0
    for d in degrees:
        for sh, nut in schur_complex_terms(mu, d):
            total += skew_expand(sh).dim(n) * dim_schur(nut, m)
    return total


def dualize(eta, n: int, twist: int) -> Partition:
    """E*-label of S_eta E (x) (det E*)^twist on an n-dim E."""
    eta = Partition(eta)
    if len(eta) > n or eta.part(0) > twist:
        raise ValueError(f"S_{eta}E (x) (det E*)^{twist} is not polynomial in E*")
    return Partition([twist - eta.part(n - 1 - k) for k in range(n)])


def twisted_schur_complex_character(lam, n: int, i: int, twist: int) -> SchurSum:
    """Degree-i character of S_lam(E + E*) (x) (det E*)^twist, in E*-labels."""
    out = SchurSum()
    for sh, nut in schur_complex_terms(lam, i):
        even = SchurSum({dualize(eta, n, twist): c
                         for eta, c in skew_expand(sh).truncate(n).terms.items()})
        out = out + (even * SchurSum.single(nut)).truncate(n)
    return out


# ---------------------------------------------------------------- strands

def jpw_character(r: int, s: int, i: int, n: int) -> SchurSum:
    """sum over |alpha| = i, len(alpha) <= s, s+r+alpha_1 <= n of S_{P_{r,s}(alpha)}."""
    if n <= s + r:
        raise ValueError(f"requires dim E > s+r ({n} <= {s + r})")
    out = SchurSum()
    for alpha in enumerate_partitions(i, s, n - s - r):
        out._add(p_rs(alpha, r, s), 1)
    return out


def lascoux_character(r: int, s: int, i: int, n: int, m: int) -> PairSchurSum:
    """sum over |alpha|+|beta| = i of (S_P E*, S_Q F) with the row bounds n, m."""
    if r < 1:
        raise ValueError("requires r >= 1 (r = 0 is the Koszul complex)")
    if n < s + r or m < s + r:
        raise ValueError("requires dim E >= s+r and dim F >= s+r")
    out = PairSchurSum()
    for a in range(i + 1):
        for alpha in enumerate_partitions(a, s, m - s - r):
            for beta in enumerate_partitions(i - a, n - s - r, s):
                P, Q = pq_rs(alpha, beta, r, s)
                if len(P) <= n and len(Q) <= m:
                    out._add((P, Q), 1)
    return out


def strand_length(r: int, s: int, n: int) -> int:
    """Top homological degree with a nonzero JPW term."""
    return s * (n - s - r)
