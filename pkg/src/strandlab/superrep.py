"""Signed tensor machinery for gl(E|F) and pe(E).

Conventions (fixed once, used everywhere):

* Transposing adjacent letters v, w costs (-1)^(p(v) p(w)).
* An odd operator acting in slot k costs (-1)^(odd letters in slots < k).
* Torus weights of gl(E) are written in E*-coordinates (e_i has weight
  -eps_i, e_i* has +eps_i), so S_alpha E* has highest weight alpha. For gl(F)
  the F-coordinates are used (f_j has +delta_j).
* Schur modules are images of c = A o S (row symmetrizer first, then the
  signed column antisymmetrizer) for the row-reading filling of the shape.

Everything a module needs is organised by weight block: a block is the set
of basis vectors of one torus weight (which also fixes the homological
degree). Operators are weight-homogeneous, so they map blocks to blocks.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels as K
from .exactla import Echelon, RationalMatrix, nullspace
from .partitions import Partition, transpose
from .symfunc import PairSchurSum, SchurSum

DEFAULT_AMBIENT_CAP = 25000


class ResourceCapExceeded(RuntimeError):
    pass


class ClosureError(RuntimeError):
    """An operator left the subspace it was supposed to preserve."""


class DecompositionMismatch(RuntimeError):
    pass


def ambient_cap() -> int:
    return int(os.environ.get("STRAND_AMBIENT_CAP", DEFAULT_AMBIENT_CAP))


# ---------------------------------------------------------------- spaces

@dataclass(frozen=True)
class SuperSpace:
    """An alphabet of homogeneous basis letters.

    ``hdeg`` is the homological degree of a letter and ``weights`` its torus
    weight. For gl the alphabet holds both V and V*[1]; ``region`` says which.
    """
    kind: str
    n: int
    m: int
    labels: tuple
    parity: tuple
    hdeg: tuple
    weights: tuple
    region: tuple

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def even_labels(self):
        return [l for l, p in zip(self.labels, self.parity) if not p]

    @property
    def odd_labels(self):
        return [l for l, p in zip(self.labels, self.parity) if p]

    def letters(self, region=0):
        return [i for i, r in enumerate(self.region) if r == region]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @property
    def parity_array(self):
        return np.array(self.parity, dtype=np.int64)


def _unit(k, i, sign=1):
    w = [0] * k
    w[i] = sign
    return tuple(w)


def pe_space(n: int) -> SuperSpace:
    """V = E + E* with V_0 = E, V_1 = E* (homological degree 1)."""
    labels = tuple(f"e{i + 1}" for i in range(n)) + tuple(f"e{i + 1}*" for i in range(n))
    weights = tuple(_unit(n, i, -1) for i in range(n)) + tuple(_unit(n, i, 1) for i in range(n))
    return SuperSpace("pe", n, n, labels, (0,) * n + (1,) * n, (0,) * n + (1,) * n,
                      weights, (0,) * (2 * n))


def gl_space(n: int, m: int) -> SuperSpace:
    """V = E + F (F odd) together with V*[1] = E* (odd) + F* (even).

    Homological degree counts F-letters and E*-letters.
    """
    k = n + m
    labels = (tuple(f"e{i + 1}" for i in range(n)) + tuple(f"f{j + 1}" for j in range(m))
              + tuple(f"e{i + 1}*" for i in range(n)) + tuple(f"f{j + 1}*" for j in range(m)))
    parity = (0,) * n + (1,) * m + (1,) * n + (0,) * m
    weights = (tuple(_unit(k, i, -1) for i in range(n)) + tuple(_unit(k, n + j, 1) for j in range(m))
               + tuple(_unit(k, i, 1) for i in range(n)) + tuple(_unit(k, n + j, -1) for j in range(m)))
    region = (0,) * k + (1,) * k
    return SuperSpace("gl", n, m, labels, parity, parity, weights, region)


def plain_space(p: int, q: int) -> SuperSpace:
    """A (p|q) superspace with weights given by letter position."""
    k = p + q
    labels = tuple(f"v{i + 1}" for i in range(p)) + tuple(f"w{j + 1}" for j in range(q))
    parity = (0,) * p + (1,) * q
    return SuperSpace("plain", p, q, labels, parity, parity,
                      tuple(_unit(k, i) for i in range(k)), (0,) * k)


# ---------------------------------------------------------------- letter ops

@dataclass(frozen=True)
class LetterOp:
    """A homogeneous linear map on the alphabet: entries (src, dst, coeff)."""
    name: str
    parity: int
    entries: tuple
    space: SuperSpace = field(repr=False, compare=False)

    def csr(self):
        L = self.space.size
        ptr = np.zeros(L + 1, dtype=np.int64)
        ents = sorted(self.entries)
        for s, _, _ in ents:
            ptr[s + 1] += 1
        ptr = np.cumsum(ptr)
        dst = np.array([d for _, d, _ in ents], dtype=np.int64)
        val = np.array([c for _, _, c in ents], dtype=np.int64)
        return ptr, dst, val

    @property
    def shift(self):
        """(hdeg shift, weight shift); None for the zero operator."""
        if not self.entries:
            return None
        sp = self.space
        s, d, _ = self.entries[0]
        return (sp.hdeg[d] - sp.hdeg[s],
                tuple(a - b for a, b in zip(sp.weights[d], sp.weights[s])))

    def matrix(self) -> RationalMatrix:
        L = self.space.size
        e = {}
        for s, d, c in self.entries:
            e[(d, s)] = e.get((d, s), 0) + c
        return RationalMatrix(L, L, e)

    def apply_letter(self, l: int) -> dict:
        return {d: c for s, d, c in self.entries if s == l}

    def __mul__(self, other: "LetterOp") -> "LetterOp":
        """Composition self o other."""
        out = {}
        for s, d, c in other.entries:
            for s2, d2, c2 in self.entries:
                if s2 == d:
                    out[(s, d2)] = out.get((s, d2), 0) + c * c2
        return LetterOp(f"({self.name})({other.name})", (self.parity + other.parity) % 2,
                        tuple((s, d, c) for (s, d), c in sorted(out.items()) if c), self.space)


def combine_ops(name: str, terms, space) -> LetterOp:
    """Integer linear combination sum c * op of ops of equal parity."""
    out = {}
    parity = None
    for c, op in terms:
        if not c:
            continue
        parity = op.parity if parity is None else parity
        if op.parity != parity:
            raise ValueError("mixed parity")
        for s, d, x in op.entries:
            out[(s, d)] = out.get((s, d), 0) + c * x
    return LetterOp(name, parity or 0,
                    tuple((s, d, x) for (s, d), x in sorted(out.items()) if x), space)


def pe_even(space: SuperSpace, a: int, b: int) -> LetterOp:
    """E_ab in gl(E): e_b -> e_a and the dual action e_a* -> -e_b*."""
    n = space.n
    return LetterOp(f"E{a + 1}{b + 1}", 0, tuple(sorted([(b, a, 1), (n + a, n + b, -1)])), space)


def pe_phi(space: SuperSpace, i: int, j: int) -> LetterOp:
    """Phi(X) for the basis element X = e_i e_j of S^2 E (i <= j)."""
    n = space.n
    if i == j:
        ents = [(n + i, i, 1)]
    else:
        ents = [(n + j, i, 1), (n + i, j, 1)]
    return LetterOp(f"X{i + 1}{j + 1}", 1, tuple(sorted(ents)), space)


def pe_phi_prime(space: SuperSpace, i: int, j: int) -> LetterOp:
    """Phi'(Y) for Y = e_i* ^ e_j* (i < j): e_i -> e_j*, e_j -> -e_i*."""
    n = space.n
    return LetterOp(f"Y{i + 1}{j + 1}", 1, tuple(sorted([(i, n + j, 1), (j, n + i, -1)])), space)


def pe_even_from_matrix(space: SuperSpace, A) -> LetterOp:
    """The gl(E) element with matrix A (acting on E by A, on E* by -A^T)."""
    n = space.n
    terms = [(int(A[a][b]), pe_even(space, a, b)) for a in range(n) for b in range(n) if A[a][b]]
    return combine_ops("g", terms, space)


def gl_elementary(space: SuperSpace, a: int, b: int) -> LetterOp:
    """E_ab of gl(V), V-indices 0..n+m-1, acting on V and on V*[1].

    On V*[1] the action is the dual one, (g.phi)(v) = -(-1)^{|g||phi|} phi(g v),
    with odd elements picking up one more sign for the parity shift; this is
    the choice under which the trace and evaluation are invariant.
    """
    k = space.n + space.m
    par = space.parity
    p = par[a] ^ par[b]
    s = -((-1) ** (p * par[a]))
    if p:
        s = -s
    ents = sorted([(b, a, 1), (k + a, k + b, s)])
    return LetterOp(f"E{a + 1},{b + 1}", p, tuple(ents), space)


def gl_phi(space: SuperSpace, i: int, j: int) -> LetterOp:
    """Phi(X) for the elementary X in hom(F, E) with f_j -> e_i."""
    op = gl_elementary(space, i, space.n + j)
    return LetterOp(f"X{i + 1},{j + 1}", 1, op.entries, space)


def gl_phi_prime(space: SuperSpace, j: int, i: int) -> LetterOp:
    """Phi'(Y) for the elementary Y in hom(E, F) with e_i -> f_j."""
    op = gl_elementary(space, space.n + j, i)
    return LetterOp(f"Y{j + 1},{i + 1}", 1, op.entries, space)


def gl_even_from_matrices(space: SuperSpace, A, D) -> LetterOp:
    n, m = space.n, space.m
    terms = [(int(A[a][b]), gl_elementary(space, a, b)) for a in range(n) for b in range(n) if A[a][b]]
    terms += [(int(D[a][b]), gl_elementary(space, n + a, n + b))
              for a in range(m) for b in range(m) if D[a][b]]
    return combine_ops("g", terms, space)


@dataclass
class OddOperatorFamily:
    """Phi or Phi' on a parameter-space basis, with its homological shift."""
    ops: list
    degree_shift: int
    param_matrices: list = field(default_factory=list)

    @property
    def param_space_dim(self):
        return len(self.ops)


def pe_phi_families(space: SuperSpace):
    n = space.n
    phi, xs = [], []
    for i in range(n):
        for j in range(i, n):
            phi.append(pe_phi(space, i, j))
            X = [[0] * n for _ in range(n)]
            X[i][j] = 1
            X[j][i] = 1
            xs.append(X)
    phip, ys = [], []
    for i in range(n):
        for j in range(i + 1, n):
            phip.append(pe_phi_prime(space, i, j))
            Y = [[0] * n for _ in range(n)]
            Y[j][i] = 1     # column i (e_i) -> row j (e_j*)
            Y[i][j] = -1
            ys.append(Y)
    return OddOperatorFamily(phi, -1, xs), OddOperatorFamily(phip, 1, ys)


def gl_phi_families(space: SuperSpace):
    n, m = space.n, space.m
    phi, xs = [], []
    for i in range(n):
        for j in range(m):
            phi.append(gl_phi(space, i, j))
            X = [[0] * m for _ in range(n)]
            X[i][j] = 1
            xs.append(X)
    phip, ys = [], []
    for j in range(m):
        for i in range(n):
            phip.append(gl_phi_prime(space, j, i))
            Y = [[0] * n for _ in range(m)]
            Y[j][i] = 1
            ys.append(Y)
    return OddOperatorFamily(phi, -1, xs), OddOperatorFamily(phip, 1, ys)


def even_basis(space: SuperSpace) -> list:
    if space.kind == "pe":
        return [pe_even(space, a, b) for a in range(space.n) for b in range(space.n)]
    if space.kind == "gl":
        n, m = space.n, space.m
        return ([gl_elementary(space, a, b) for a in range(n) for b in range(n)]
                + [gl_elementary(space, n + a, n + b) for a in range(m) for b in range(m)])
    raise ValueError(space.kind)


def raising_ops(space: SuperSpace) -> list:
    """Simple raising operators for the weight conventions above."""
    if space.kind == "pe":
        return [pe_even(space, i + 1, i) for i in range(space.n - 1)]
    n, m = space.n, space.m
    return ([gl_elementary(space, i + 1, i) for i in range(n - 1)]
            + [gl_elementary(space, n + j, n + j + 1) for j in range(m - 1)])


def lowering_ops(space: SuperSpace) -> list:
    if space.kind == "pe":
        return [pe_even(space, i, i + 1) for i in range(space.n - 1)]
    n, m = space.n, space.m
    return ([gl_elementary(space, i, i + 1) for i in range(n - 1)]
            + [gl_elementary(space, n + j + 1, n + j) for j in range(m - 1)])


def is_dominant(space: SuperSpace, weight) -> bool:
    n = space.n
    a = weight[:n]
    b = weight[n:] if space.kind == "gl" else ()
    return all(x >= y for x, y in zip(a, a[1:])) and all(x >= y for x, y in zip(b, b[1:]))


# ---------------------------------------------------------------- signs

def koszul_sign(perm, word, parity) -> int:
    """Sign of moving the letter in slot k to slot perm[k]."""
    if len(perm) != len(word):
        raise ValueError("permutation and word lengths differ")
    inv = 0
    d = len(word)
    for k in range(d):
        if parity[word[k]]:
            for l in range(k + 1, d):
                if parity[word[l]] and perm[k] > perm[l]:
                    inv += 1
    return -1 if inv % 2 else 1


def permute_word(perm, word):
    out = [None] * len(word)
    for k, l in enumerate(word):
        out[perm[k]] = l
    return tuple(out)


def perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


# reference (pure Python) versions, used as oracles and overflow fallback
def apply_perm_py(vec: dict, perm, parity, sign=1) -> dict:
    out = {}
    for w, c in vec.items():
        w2 = permute_word(perm, w)
        out[w2] = out.get(w2, 0) + sign * koszul_sign(perm, w, parity) * c
    return {w: c for w, c in out.items() if c}


def derive_py(op: LetterOp, vec: dict) -> dict:
    parity = op.space.parity
    table = {}
    for s, d, c in op.entries:
        table.setdefault(s, []).append((d, c))
    out = {}
    for w, c in vec.items():
        odd = 0
        for k, l in enumerate(w):
            for d, x in table.get(l, ()):
                sg = -1 if (op.parity and odd % 2) else 1
                w2 = w[:k] + (d,) + w[k + 1:]
                out[w2] = out.get(w2, 0) + sg * c * x
            odd += parity[l]
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------- ambients

class TensorAmbient:
    """Words of length d with a per-slot allowed alphabet.

    Homological degree of a word is the sum of its letters' degrees (for pe,
    the number of odd letters).
    """

    def __init__(self, space: SuperSpace, slot_letters, cap: int | None = None):
        self.space = space
        self.slot_letters = [tuple(s) for s in slot_letters]
        self.degree = len(self.slot_letters)
        self.base = space.size
        self.size = int(np.prod([len(s) for s in self.slot_letters])) if self.slot_letters else 1
        cap = ambient_cap() if cap is None else cap
        if self.size > cap:
            raise ResourceCapExceeded(
                f"ambient dimension {self.size} exceeds the cap {cap} (set STRAND_AMBIENT_CAP)")
        self._weights = np.array(space.weights, dtype=np.int64).reshape(space.size, -1)
        self._hdeg = np.array(space.hdeg, dtype=np.int64)

    @classmethod
    def power(cls, space, d, cap=None):
        return cls(space, [range(space.size)] * d, cap)

    def words(self, letters_per_slot=None) -> np.ndarray:
        slots = letters_per_slot or self.slot_letters
        if not slots:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.array(s, dtype=np.int64) for s in slots], indexing="ij")
        return np.stack([g.reshape(-1) for g in grids], axis=1)

    def keys_of(self, words):
        sp = self.space
        if words.shape[1] == 0:
            return [(0,) + (0,) * len(sp.weights[0])] * len(words)
        w = self._weights[words].sum(axis=1)
        h = self._hdeg[words].sum(axis=1)
        return [(int(a),) + tuple(int(x) for x in row) for a, row in zip(h, w)]

    def key_of_word(self, word) -> tuple:
        return self.keys_of(np.array([word], dtype=np.int64).reshape(1, -1))[0]

    def decode(self, keys):
        return K.decode(keys, self.base, self.degree)

    def encode_word(self, word) -> int:
        k = 0
        for l in word:
            k = k * self.base + l
        return k

    def word_of(self, key: int) -> tuple:
        return tuple(int(x) for x in K.decode([key], self.base, self.degree)[0])


# ---------------------------------------------------------------- batches

def rows_to_batch(rows, ambient: TensorAmbient):
    """list of {encoded word: int} -> (ids, words, coeffs)."""
    ids, keys, coeffs = [], [], []
    for a, row in enumerate(rows):
        for k, c in row.items():
            ids.append(a)
            keys.append(k)
            coeffs.append(c)
    ids = np.array(ids, dtype=np.int64)
    words = ambient.decode(np.array(keys, dtype=np.int64)) if keys else \
        np.zeros((0, ambient.degree), dtype=np.int64)
    return ids, words, np.array(coeffs, dtype=np.int64)


def batch_to_rows(ids, keys, coeffs, count: int) -> list[dict]:
    out = [dict() for _ in range(count)]
    for a, k, c in zip(ids.tolist(), keys.tolist(), coeffs.tolist()):
        out[a][k] = c
    return out


def _stage_perms(batch, perms, signs, ambient):
    ids, words, coeffs = batch
    ids, words, coeffs = K.apply_perms(ids, words, coeffs, perms, signs, ambient.space.parity_array)
    ids, keys, coeffs = K.merge(ids, words, coeffs, ambient.base)
    return ids, ambient.decode(keys), coeffs


def _stage_op(batch, op: LetterOp, ambient):
    ids, words, coeffs = batch
    ptr, dst, val = op.csr()
    ids, words, coeffs = K.apply_letter_op(ids, words, coeffs, ptr, dst, val, op.parity,
                                           ambient.space.parity_array)
    ids, keys, coeffs = K.merge(ids, words, coeffs, ambient.base)
    return ids, ambient.decode(keys), coeffs


def _finish(batch, ambient, count):
    ids, words, coeffs = batch
    keys = K.encode(words, ambient.base) if len(words) else np.zeros(0, dtype=np.int64)
    return batch_to_rows(ids, keys, coeffs, count)


def apply_op_rows(op: LetterOp, rows, ambient: TensorAmbient) -> list[dict]:
    """Derivation extension of ``op`` applied to each sparse row."""
    if not rows:
        return []
    batch = rows_to_batch(rows, ambient)
    try:
        out = _stage_op(batch, op, ambient)
    except OverflowError:
        return [_py_rows(derive_py(op, _py_vec(r, ambient)), ambient) for r in rows]
    return _finish(out, ambient, len(rows))


def _py_vec(row, ambient):
    return {ambient.word_of(k): c for k, c in row.items()}


def _py_rows(vec, ambient):
    return {ambient.encode_word(w): c for w, c in vec.items()}


def derivation_extend(op: LetterOp, ambient: TensorAmbient) -> RationalMatrix:
    """Matrix of the derivation extension on the whole ambient (by word index)."""
    words = ambient.words()
    index = {k: i for i, k in enumerate(K.encode(words, ambient.base).tolist())}
    rows = [{k: 1} for k in index]
    out = apply_op_rows(op, rows, ambient)
    ents = {}
    for j, vec in enumerate(out):
        for k, c in vec.items():
            ents[(index[k], j)] = c
    return RationalMatrix(len(index), len(index), ents)


# ---------------------------------------------------------------- symmetrizers

def shape_slots(lam, offset=0):
    """Row-reading slot of each box (i, j) of lam."""
    lam = Partition(lam)
    slots, k = {}, offset
    for i, row in enumerate(lam):
        for j in range(row):
            slots[(i, j)] = k
            k += 1
    return slots


def _group_perms(blocks, d):
    """All permutations of range(d) permuting each block among itself."""
    per_block = [list(itertools.permutations(b)) for b in blocks]
    out = []
    for choice in itertools.product(*per_block):
        perm = list(range(d))
        sign = 1
        for b, img in zip(blocks, choice):
            for src, dst in zip(b, img):
                perm[src] = dst
            sign *= perm_sign([b.index(x) for x in img])
        out.append((perm, sign))
    return out


def young_groups(shapes, d):
    """Row and column groups of the product shape (list of (shape, offset))."""
    rows, cols = [], []
    for lam, off in shapes:
        lam = Partition(lam)
        slots = shape_slots(lam, off)
        for i, r in enumerate(lam):
            if r > 1:
                rows.append([slots[(i, j)] for j in range(r)])
        for j, c in enumerate(transpose(lam)):
            if c > 1:
                cols.append([slots[(i, j)] for i in range(c)])
    R = _group_perms(rows, d)
    C = _group_perms(cols, d)
    to_arr = lambda G: (np.array([p for p, _ in G], dtype=np.int64).reshape(len(G), d),
                        np.array([s for _, s in G], dtype=np.int64))
    Rp, _ = to_arr(R)
    Cp, Cs = to_arr(C)
    return (Rp, np.ones(len(R), dtype=np.int64)), (Cp, Cs)


class Symmetrizer:
    """c = A o S for a product of shapes laid out on consecutive slots."""

    def __init__(self, shapes, d):
        self.shapes = [(Partition(l), o) for l, o in shapes]
        self.d = d
        (self.Rp, self.Rs), (self.Cp, self.Cs) = young_groups(self.shapes, d)

    def row(self, batch, ambient):
        return _stage_perms(batch, self.Rp, self.Rs, ambient)

    def col(self, batch, ambient):
        return _stage_perms(batch, self.Cp, self.Cs, ambient)

    def apply(self, batch, ambient):
        return self.col(self.row(batch, ambient), ambient)


# ---------------------------------------------------------------- modules

@dataclass
class Block:
    key: tuple
    basis: Echelon
    kill: Echelon = field(default_factory=Echelon)

    def __post_init__(self):
        self.order = sorted(self.basis.rows)
        self.pos = {p: i for i, p in enumerate(self.order)}

    @property
    def hdeg(self):
        return self.key[0]

    @property
    def weight(self):
        return self.key[1:]

    @property
    def dim(self):
        return len(self.order)

    def rows(self):
        return [self.basis.rows[p] for p in self.order]


@dataclass
class InducedBlock:
    """Matrix N / den from a source block to a target block (None if zero)."""
    target: tuple | None
    N: np.ndarray
    den: int


class GradedSubmodule:
    """A subquotient of a tensor ambient, stored weight block by weight block.

    Each block holds ``kill`` (the subspace divided out, possibly empty) and
    ``basis`` (representatives of a complement, reduced modulo ``kill``).
    """

    def __init__(self, ambient: TensorAmbient, blocks, twist=0, name="", kind=None):
        self.ambient = ambient
        self.space = ambient.space
        self.blocks: dict[tuple, Block] = {}
        for key, b in blocks.items():
            if b.dim:
                self.blocks[key] = b
        self.twist = twist
        self.name = name
        self.kind = kind or self.space.kind
        self._induced: dict[str, dict] = {}

    # -- sizes
    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks.values())

    def degrees(self):
        return sorted({k[0] for k in self.blocks})

    def dims_by_degree(self) -> dict[int, int]:
        out = {}
        for k, b in self.blocks.items():
            out[k[0]] = out.get(k[0], 0) + b.dim
        return dict(sorted(out.items()))

    def keys(self, hdeg=None):
        return sorted(k for k in self.blocks if hdeg is None or k[0] == hdeg)

    # -- coordinates
    def coords(self, key, vec: dict, verify=True) -> dict:
        """Quotient coordinates (block position -> Fraction) of an ambient vector."""
        blk = self.blocks.get(key)
        if blk is None:
            if vec and verify:
                raise ClosureError(f"nonzero vector in absent block {key}")
            return {}
        v = {k: Fraction(x) for k, x in vec.items()}
        for p, row in blk.kill.rows.items():
            x = v.get(p)
            if x:
                f = x / row[p]
                for k, y in row.items():
                    z = v.get(k, 0) - f * y
                    if z:
                        v[k] = z
                    else:
                        v.pop(k, None)
        out = {}
        for p, row in blk.basis.rows.items():
            x = v.get(p)
            if x:
                f = x / row[p]
                out[blk.pos[p]] = f
                if verify:
                    for k, y in row.items():
                        z = v.get(k, 0) - f * y
                        if z:
                            v[k] = z
                        else:
                            v.pop(k, None)
        if verify and v:
            raise ClosureError(f"vector not in block {key} of {self.name}")
        return out

    def vector(self, key, coords) -> dict:
        """Ambient representative of a coordinate vector (integral, up to scale)."""
        blk = self.blocks[key]
        rows = blk.rows()
        out = {}
        for i, c in (coords.items() if isinstance(coords, dict) else enumerate(coords)):
            if c:
                for k, y in rows[i].items():
                    out[k] = out.get(k, 0) + c * y
        return {k: x for k, x in out.items() if x}

    # -- operators
    def target_key(self, key, op: LetterOp):
        sh = op.shift
        if sh is None:
            return None
        return (key[0] + sh[0],) + tuple(a + b for a, b in zip(key[1:], sh[1]))

    def induced(self, op: LetterOp, verify=True) -> dict:
        """Induced matrices of the derivation of ``op`` on every block."""
        cache_key = (op.name, op.entries)
        if cache_key in self._induced:
            return self._induced[cache_key]
        keys = self.keys()
        rows, owner = [], []
        for key in keys:
            for r in self.blocks[key].rows():
                rows.append(r)
                owner.append(key)
        images = apply_op_rows(op, rows, self.ambient)
        out = {}
        at = 0
        for key in keys:
            blk = self.blocks[key]
            tkey = self.target_key(key, op)
            cols = []
            for _ in range(blk.dim):
                img = images[at]
                at += 1
                if tkey is None or tkey not in self.blocks:
                    if img and verify:
                        # the image must vanish modulo nothing: no block there
                        raise ClosureError(f"{op.name} leaves {self.name} at block {key}")
                    cols.append({})
                else:
                    cols.append(self.coords(tkey, img, verify))
            tdim = self.blocks[tkey].dim if tkey in self.blocks else 0
            out[key] = _to_induced(tkey if tdim else None, cols, tdim)
        self._induced[cache_key] = out
        return out

    def induced_linear(self, terms) -> dict:
        """Induced matrices of sum c * op (ops must share a weight shift)."""
        out = {}
        for key in self.keys():
            acc, tgt = None, None
            for c, op in terms:
                ib = self.induced(op)[key]
                if ib.target is None:
                    continue
                M = ib.N * Fraction(c, ib.den)
                acc = M if acc is None else acc + M
                tgt = ib.target
            if acc is None:
                out[key] = InducedBlock(None, np.zeros((0, self.blocks[key].dim), dtype=object), 1)
            else:
                out[key] = _frac_block(tgt, acc)
        return out

    def to_summary(self, character_fn=None) -> dict:
        degs = []
        for h, d in self.dims_by_degree().items():
            entry = {"h": h, "dim": d}
            if character_fn is not None:
                entry["character"] = character_fn(h).to_json()
            degs.append(entry)
        return {"degrees": degs, "ambient": {"dim": self.ambient.size,
                                              "tensor_degree": self.ambient.degree}}


def _to_induced(tkey, cols, tdim) -> InducedBlock:
    den = 1
    for c in cols:
        for x in c.values():
            den = lcm(den, x.denominator)
    N = np.zeros((tdim, len(cols)), dtype=object)
    N[:] = 0
    for j, c in enumerate(cols):
        for i, x in c.items():
            N[i, j] = int(x * den)
    return InducedBlock(tkey, N, den)


def _frac_block(tkey, M) -> InducedBlock:
    den = 1
    for x in M.flat:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    N = np.zeros(M.shape, dtype=object)
    N[:] = 0
    for idx, x in np.ndenumerate(M):
        N[idx] = int(Fraction(x) * den)
    return InducedBlock(tkey, N, den)


# ---------------------------------------------------------------- construction

def _content_groups(ambient: TensorAmbient, words, regions):
    """Group word indices by letter content within each slot region."""
    parts = []
    for lo, hi in regions:
        parts.append(np.sort(words[:, lo:hi], axis=1))
    sorted_words = np.concatenate(parts, axis=1) if parts else words
    ckeys = K.encode(sorted_words, ambient.base)
    groups = {}
    for i, c in enumerate(ckeys.tolist()):
        groups.setdefault(c, []).append(i)
    return groups


def symmetrizer_image(ambient: TensorAmbient, sym: Symmetrizer, regions, name="", twist=0):
    """Image of the symmetrizer on the ambient, as blocks of canonical rows."""
    words = ambient.words()
    n = len(words)
    ids = np.arange(n, dtype=np.int64)
    batch = (ids, words, np.ones(n, dtype=np.int64))
    out = sym.apply(batch, ambient)
    rows = _finish(out, ambient, n)
    keys = ambient.keys_of(words)
    groups = _content_groups(ambient, words, regions)
    blocks: dict[tuple, Echelon] = {}
    for members in groups.values():
        ech = Echelon()
        for i in members:
            if rows[i]:
                ech.add(rows[i])
        if len(ech):
            key = keys[members[0]]
            tgt = blocks.setdefault(key, Echelon())
            # contents are disjoint, so canonical rows just merge
            tgt.rows.update(ech.rows)
    return GradedSubmodule(ambient, {k: Block(k, e) for k, e in blocks.items()},
                           twist=twist, name=name)


def young_symmetrizer_image(lam, space: SuperSpace, cap=None, twist=0) -> GradedSubmodule:
    """S_lam V as the image of c_lam on the |lam|-th tensor power."""
    lam = Partition(lam)
    d = lam.size
    ambient = TensorAmbient(space, [space.letters(0)] * d, cap)
    sym = Symmetrizer([(lam, 0)], d)
    return symmetrizer_image(ambient, sym, [(0, d)], name=f"S_{lam}V", twist=twist)


def mixed_symmetrizer_image(lam, mu, space: SuperSpace, cap=None, twist=0) -> GradedSubmodule:
    """S_lam V (x) S_mu (V*[1]) inside V^{|lam|} (x) (V*[1])^{|mu|}."""
    lam, mu = Partition(lam), Partition(mu)
    a, b = lam.size, mu.size
    ambient = TensorAmbient(space, [space.letters(0)] * a + [space.letters(1)] * b, cap)
    sym = Symmetrizer([(lam, 0), (mu, a)], a + b)
    return symmetrizer_image(ambient, sym, [(0, a), (a, a + b)],
                             name=f"S_{lam}V(x)S_{mu}V*[1]", twist=twist)


# ---------------------------------------------------------------- characters

def highest_weight_space(module: GradedSubmodule, key) -> list[dict]:
    """Basis (block coordinates) of the joint kernel of the raising operators."""
    blk = module.blocks[key]
    cols = [dict() for _ in range(blk.dim)]
    for r, op in enumerate(raising_ops(module.space)):
        ib = module.induced(op)[key]
        if ib.target is None:
            continue
        for j in range(blk.dim):
            for i in range(ib.N.shape[0]):
                x = ib.N[i, j]
                if x:
                    cols[j][(r, i)] = int(x)
    return nullspace(cols)


def _label(module, weight, t):
    sp = module.space
    n = sp.n
    if sp.kind == "gl":
        a = [x + t for x in weight[:n]]
        b = [x + t for x in weight[n:]]
        if min(a + b, default=0) < 0:
            raise DecompositionMismatch(f"weight {weight} is not polynomial after the twist")
        return (Partition(a), Partition(b))
    a = [x + t for x in weight]
    if min(a, default=0) < 0:
        raise DecompositionMismatch(f"weight {weight} is not polynomial after the twist")
    return Partition(a)


def character_of(module: GradedSubmodule, degree: int, twist=None):
    """Schur-basis character of one homological degree.

    Labels are weights shifted by ``twist`` (default: the module's own twist),
    i.e. the character of the module tensored with the twist-th power of
    det E* (and det F for gl).
    """
    sp = module.space
    twist = module.twist if twist is None else twist
    out = SchurSum() if sp.kind != "gl" else PairSchurSum()
    for key in module.keys(degree):
        w = key[1:]
        if not is_dominant(sp, w):
            continue
        mult = len(highest_weight_space(module, key))
        if mult:
            out = out + type(out)({_label(module, w, twist): mult})
    total = sum(b.dim for k, b in module.blocks.items() if k[0] == degree)
    got = out.dim(sp.n, sp.m) if sp.kind == "gl" else out.dim(sp.n)
    if got != total:
        raise DecompositionMismatch(f"degree {degree}: character has dim {got}, subspace {total}")
    return out


def weight_multiplicities(module: GradedSubmodule, degree: int) -> dict:
    return {k[1:]: b.dim for k, b in module.blocks.items() if k[0] == degree}


# ---------------------------------------------------------------- invariants

def pe_omega(space: SuperSpace):
    """Invariant 2-tensor of pe: sum_i e_i (x) e_i* - e_i* (x) e_i."""
    n = space.n
    return [(i, n + i, 1) for i in range(n)] + [(n + i, i, -1) for i in range(n)]


def pe_pairing(space: SuperSpace):
    """Invariant odd pairing <e_i, e_i*> = <e_i*, e_i> = 1."""
    n = space.n
    P = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        P[i, n + i] = P[n + i, i] = 1
    return P


def gl_trace_element(space: SuperSpace):
    """t = sum_i e_i (x) e_i* - sum_j f_j (x) f_j*  (V letter first)."""
    n, m = space.n, space.m
    k = n + m
    return [(i, k + i, 1) for i in range(n)] + [(n + j, k + n + j, -1) for j in range(m)]


def gl_pairing(space: SuperSpace):
    """<x, x*> = 1 for every V letter x (V slot first)."""
    k = space.n + space.m
    P = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for i in range(k):
        P[i, k + i] = 1
    return P


def insert_batch(src_words, element, a: int, b: int, space: SuperSpace):
    """Tensors element (x) y with the element moved to slots a < b (Koszul signed)."""
    N, d2 = src_words.shape
    d = d2 + 2
    E = len(element)
    words = np.empty((N * E, d), dtype=np.int64)
    coeffs = np.empty(N * E, dtype=np.int64)
    ids = np.repeat(np.arange(N, dtype=np.int64), E)
    for t, (l1, l2, c) in enumerate(element):
        words[t::E, 0] = l1
        words[t::E, 1] = l2
        words[t::E, 2:] = src_words
        coeffs[t::E] = c
    rest = [k for k in range(d) if k not in (a, b)]
    perm = np.array([[a, b] + rest], dtype=np.int64)
    return K.apply_perms(ids, words, coeffs, perm, np.ones(1, dtype=np.int64), space.parity_array)


def contract_batch(batch, a: int, b: int, pairing, space: SuperSpace, base: int):
    """Contract slots a < b: the letter in slot b is first moved next to slot a."""
    ids, words, coeffs = batch
    if len(words) == 0:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e
    par = space.parity_array
    val = pairing[words[:, a], words[:, b]]
    passes = par[words[:, a + 1:b]].sum(axis=1) * par[words[:, b]]
    val = val * (1 - 2 * (passes & 1))
    mask = val != 0
    rest = np.delete(words[mask], [a, b], axis=1)
    return K.merge(ids[mask], rest, coeffs[mask] * val[mask], base)


@dataclass
class InvariantMaps:
    """Where the trace is inserted and the evaluation contracts."""
    trace_slots: tuple | None
    trace_element: list | None
    eval_slots: tuple | None
    pairing: np.ndarray | None


def pe_invariant_maps(lam, space) -> InvariantMaps:
    lam = Partition(lam)
    slots = shape_slots(lam)
    tr = (slots[(0, 0)], slots[(1, 0)]) if lam.length >= 2 else None
    ev = (slots[(0, 0)], slots[(0, 1)]) if lam.part(0) >= 2 else None
    return InvariantMaps(tr, pe_omega(space) if tr else None, ev, pe_pairing(space) if ev else None)


def gl_invariant_maps(lam, mu, space) -> InvariantMaps:
    a = Partition(lam).size
    slots = (0, a)
    return InvariantMaps(slots, gl_trace_element(space), slots, gl_pairing(space))


def eval_images(module: GradedSubmodule, sym: Symmetrizer, maps: InvariantMaps, key):
    """Images (in the degree d-2 ambient, encoded) of the block's basis under x -> contract(S x)."""
    amb = module.ambient
    rows = module.blocks[key].rows()
    batch = rows_to_batch(rows, amb)
    batch = sym.row(batch, amb)
    a, b = maps.eval_slots
    ids, keys, coeffs = contract_batch(batch, a, b, maps.pairing, amb.space, amb.base)
    return batch_to_rows(ids, keys, coeffs, len(rows))


def trace_images(ambient: TensorAmbient, sym: Symmetrizer, maps: InvariantMaps, src_words):
    """A S A (element inserted) for each source word; rows in the ambient encoding."""
    a, b = maps.trace_slots
    batch = insert_batch(src_words, maps.trace_element, a, b, ambient.space)
    ids, keys, coeffs = K.merge(*batch, ambient.base)
    batch = (ids, ambient.decode(keys), coeffs)
    batch = sym.col(batch, ambient)
    batch = sym.apply(batch, ambient)
    return _finish(batch, ambient, len(src_words))


def reduced_ambient(ambient: TensorAmbient, slots) -> TensorAmbient:
    letters = [l for k, l in enumerate(ambient.slot_letters) if k not in slots]
    return TensorAmbient(ambient.space, letters, cap=max(ambient.size, 1))


def subquotient(module: GradedSubmodule, sym: Symmetrizer, maps: InvariantMaps, name=""):
    """k / (k cap i) with k = ker(eval-induced map), i = im(trace-induced map).

    Returns (quotient module, info) where info records per-degree dims of
    S, k, i and k cap i plus whether the evaluation/trace maps were nonzero.
    """
    amb = module.ambient
    info = {"S": module.dims_by_degree(), "k": {}, "i": {}, "k_cap_i": {},
            "eval_nonzero_degrees": [], "trace_nonzero_degrees": []}
    trace_by_key = {}
    if maps.trace_slots is not None:
        small = reduced_ambient(amb, maps.trace_slots)
        src = small.words()
        images = trace_images(amb, sym, maps, src)
        for row in images:
            if row:
                k = amb.key_of_word(amb.word_of(next(iter(row))))
                trace_by_key.setdefault(k, []).append(row)
    blocks = {}
    for key in module.keys():
        blk = module.blocks[key]
        h = key[0]
        # k: block coordinates killed by evaluation
        if maps.eval_slots is not None:
            imgs = eval_images(module, sym, maps, key)
            if any(imgs):
                if h not in info["eval_nonzero_degrees"]:
                    info["eval_nonzero_degrees"].append(h)
            kvecs = nullspace(imgs)
        else:
            kvecs = [{j: 1} for j in range(blk.dim)]
        kspace = Echelon(kvecs)
        # i: block coordinates of the trace image
        ispace = Echelon()
        for row in trace_by_key.get(key, ()):
            c = module.coords(key, row)
            if c:
                ispace.add(c)
        if len(ispace) and h not in info["trace_nonzero_degrees"]:
            info["trace_nonzero_degrees"].append(h)
        cap = _intersect_echelons(kspace, ispace, blk.dim)
        for label, val in (("k", len(kspace)), ("i", len(ispace)), ("k_cap_i", len(cap))):
            info[label][h] = info[label].get(h, 0) + val
        kill = Echelon(module.vector(key, v) for v in cap.basis())
        basis = Echelon()
        for v in kspace.basis():
            r = kill.reduce(module.vector(key, v))
            if r:
                basis.add(r)
        if len(basis):
            blocks[key] = Block(key, basis, kill)
    for label in ("k", "i", "k_cap_i"):
        info[label] = dict(sorted(info[label].items()))
    info["eval_nonzero_degrees"].sort()
    info["trace_nonzero_degrees"].sort()
    return GradedSubmodule(amb, blocks, twist=module.twist, name=name), info


def _intersect_echelons(U: Echelon, W: Echelon, dim: int) -> Echelon:
    if not len(U) or not len(W):
        return Echelon()
    from .exactla import Subspace
    return Subspace(dim, U).intersect(Subspace(dim, W)).ech


# ---------------------------------------------------------------- two-sided complexes

@dataclass
class TwoSidedComplex:
    """A graded module with even generators and the odd families Phi, Phi'."""
    module: GradedSubmodule
    even: list
    phi: OddOperatorFamily
    phi_prime: OddOperatorFamily
    info: dict = field(default_factory=dict)

    @property
    def space(self):
        return self.module.space

    def bracket_element(self, X, Y) -> LetterOp:
        """Even element whose derivation should equal {Phi(X), Phi'(Y)}."""
        return combine_ops("g", self.bracket_terms(X, Y), self.space)

    def bracket_terms(self, X, Y):
        """The bracket element as a combination of gl(E) (x gl(F)) basis elements."""
        sp = self.space
        n = sp.n
        A = _matmul(X, Y)
        terms = [(A[a][b], op) for a in range(n) for b in range(n)
                 for op in [self.even[a * n + b]] if A[a][b]]
        if sp.kind == "gl":
            m = sp.m
            D = _matmul(Y, X)
            terms += [(D[a][b], self.even[n * n + a * m + b]) for a in range(m) for b in range(m)
                      if D[a][b]]
        return terms


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def _block_matrix(ib: InducedBlock):
    return ib.N, ib.den


def compose_blocks(module: GradedSubmodule, first: dict, second: dict, key):
    """Matrix (as Fractions, object dtype) of second o first on block key, with its target."""
    ib1 = first[key]
    if ib1.target is None:
        return None, None
    ib2 = second[ib1.target]
    if ib2.target is None:
        return None, None
    M = (ib2.N.dot(ib1.N)) * Fraction(1, ib1.den * ib2.den)
    return ib2.target, M


def _is_zero(M) -> bool:
    return M is None or not any(x != 0 for x in M.flat)


def anticommutator_zero(module, A: dict, B: dict) -> bool:
    for key in module.keys():
        t1, M1 = compose_blocks(module, A, B, key)
        t2, M2 = compose_blocks(module, B, A, key)
        if M1 is None and M2 is None:
            continue
        if M1 is None:
            if not _is_zero(M2):
                return False
        elif M2 is None:
            if not _is_zero(M1):
                return False
        elif not _is_zero(M1 + M2):
            return False
    return True


def bracket_matches(module, A: dict, B: dict, G: dict, sign=1) -> bool:
    """A o B + sign * B o A == G (as induced block matrices)."""
    for key in module.keys():
        t1, M1 = compose_blocks(module, B, A, key)   # A after B
        t2, M2 = compose_blocks(module, A, B, key)   # B after A
        gb = G[key]
        lhs = None
        tgt = None
        for t, M, c in ((t1, M1, 1), (t2, M2, sign)):
            if M is not None:
                lhs = M * c if lhs is None else lhs + M * c
                tgt = t
        rhs = gb.N * Fraction(1, gb.den) if gb.target is not None else None
        if lhs is None and rhs is None:
            continue
        if lhs is None:
            if not _is_zero(rhs):
                return False
            continue
        if rhs is None:
            if not _is_zero(lhs):
                return False
            continue
        if gb.target != tgt or lhs.shape != rhs.shape or not _is_zero(lhs - rhs):
            return False
    return True


def verify_two_sided_axioms(cx: TwoSidedComplex) -> dict:
    """Exact checks of square-zero (polarized) and the bracket relation."""
    M = cx.module
    phis = [M.induced(op) for op in cx.phi.ops]
    phips = [M.induced(op) for op in cx.phi_prime.ops]
    sq_phi = all(anticommutator_zero(M, phis[a], phis[b])
                 for a in range(len(phis)) for b in range(a, len(phis)))
    sq_phip = all(anticommutator_zero(M, phips[a], phips[b])
                  for a in range(len(phips)) for b in range(a, len(phips)))
    bracket, commutator = True, True
    for a, X in enumerate(cx.phi.param_matrices):
        for b, Y in enumerate(cx.phi_prime.param_matrices):
            G = M.induced_linear(cx.bracket_terms(X, Y))
            if bracket and not bracket_matches(M, phis[a], phips[b], G, 1):
                bracket = False
            if commutator and not bracket_matches(M, phis[a], phips[b], G, -1):
                commutator = False
    degree_shift = _degree_shifts_ok(cx)
    return {"sq_zero_phi": sq_phi, "sq_zero_phi_prime": sq_phip, "bracket": bracket,
            "commutator_form": commutator, "degree_shift": degree_shift}


def _degree_shifts_ok(cx) -> bool:
    for fam in (cx.phi, cx.phi_prime):
        for op in fam.ops:
            sh = op.shift
            if sh is not None and sh[0] != fam.degree_shift:
                return False
    return True


def corrupt_phi_prime(cx: TwoSidedComplex, mode="negate") -> TwoSidedComplex:
    """Test fixture: Phi' with a deliberately wrong sign.

    ``negate`` flips the whole family; ``symmetric`` drops the minus sign in
    each skew form (so Phi'(Y) is no longer a periplectic element).
    """
    ops = []
    for op in cx.phi_prime.ops:
        if mode == "negate":
            ents = tuple((s, d, -c) for s, d, c in op.entries)
        else:
            ents = tuple((s, d, abs(c)) for s, d, c in op.entries)
        ops.append(LetterOp(op.name + "~", op.parity, ents, op.space))
    fam = OddOperatorFamily(ops, cx.phi_prime.degree_shift, cx.phi_prime.param_matrices)
    return TwoSidedComplex(cx.module, cx.even, cx.phi, fam, dict(cx.info))


# ---------------------------------------------------------------- orbit closures

def _apply_block(ib: InducedBlock, v):
    if ib.target is None:
        return None, None
    w = ib.N.dot(v)
    if not any(x != 0 for x in w):
        return None, None
    return ib.target, w


def span_closure(module: GradedSubmodule, ops, seeds) -> dict:
    """Smallest subspace containing ``seeds`` and stable under ``ops``.

    Seeds are (key, integer coordinate array). Returns key -> Echelon.
    """
    mats = [module.induced(op) for op in ops]
    spans: dict[tuple, Echelon] = {}
    queue = []

    def push(key, v):
        ech = spans.setdefault(key, Echelon())
        d = {i: int(x) for i, x in enumerate(v) if x != 0}
        if ech.add(d):
            queue.append((key, v))

    for key, v in seeds:
        push(key, np.asarray(v, dtype=object))
    while queue:
        key, v = queue.pop()
        for m in mats:
            tgt, w = _apply_block(m[key], v)
            if tgt is not None:
                g = 0
                for x in w:
                    g = np.gcd(g, int(x)) if x else g
                push(tgt, w // g if g > 1 else w)
    return spans


def _dense(vec: dict, dim: int):
    v = np.zeros(dim, dtype=object)
    v[:] = 0
    for i, x in vec.items():
        v[i] = x
    return v


def highest_weight_vectors(module: GradedSubmodule, degree=None):
    """(key, coords) for a basis of each dominant highest-weight space."""
    out = []
    for key in module.keys(degree):
        if not is_dominant(module.space, key[1:]):
            continue
        for v in highest_weight_space(module, key):
            out.append((key, _dense(v, module.blocks[key].dim)))
    return out


def closure_generators(cx: TwoSidedComplex, which="minimal") -> list:
    """Generators for orbit closures.

    ``minimal`` uses simple root vectors plus one Phi and one Phi': block
    vectors are torus weight vectors, and each odd parameter space is an
    irreducible gl(E) (x gl(F)) module, so these generate the same closure.
    """
    sp = cx.space
    if which == "full":
        return list(cx.even) + list(cx.phi.ops) + list(cx.phi_prime.ops)
    gens = raising_ops(sp) + lowering_ops(sp)
    if cx.phi.ops:
        gens.append(cx.phi.ops[0])
    if cx.phi_prime.ops:
        gens.append(cx.phi_prime.ops[0])
    return gens


def check_irreducible(cx: TwoSidedComplex, which="minimal") -> dict:
    """Every highest-weight vector must generate the whole module.

    ``exact`` is True when all highest-weight spaces are one-dimensional, in
    which case the verdict is a proof; otherwise only basis vectors are tried.
    """
    M = cx.module
    total = M.dim
    if total == 0:
        return {"irreducible": False, "exact": True, "generated": []}
    gens = closure_generators(cx, which)
    hws = highest_weight_vectors(M)
    per_key = {}
    for key, _ in hws:
        per_key[key] = per_key.get(key, 0) + 1
    generated = []
    ok = True
    for key, v in hws:
        spans = span_closure(M, gens, [(key, v)])
        dim = sum(len(e) for e in spans.values())
        generated.append({"h": key[0], "weight": list(key[1:]), "closure_dim": dim})
        if dim != total:
            ok = False
    return {"irreducible": ok, "exact": all(c == 1 for c in per_key.values()),
            "generated": generated}


def isotypic_component(module: GradedSubmodule, key) -> dict:
    """gl(E) (x gl(F)) isotypic component of highest weight ``key``."""
    hw = [(key, _dense(v, module.blocks[key].dim)) for v in highest_weight_space(module, key)]
    return span_closure(module, lowering_ops(module.space), hw)


def image_spans(module: GradedSubmodule, ops, spans: dict) -> dict:
    """Span of op(v) over ops and the vectors of ``spans``."""
    mats = [module.induced(op) for op in ops]
    out: dict[tuple, Echelon] = {}
    for key, ech in spans.items():
        dim = module.blocks[key].dim
        for row in ech.basis():
            v = _dense(row, dim)
            for m in mats:
                tgt, w = _apply_block(m[key], v)
                if tgt is not None:
                    out.setdefault(tgt, Echelon()).add({i: int(x) for i, x in enumerate(w) if x != 0})
    return out


def has_highest_weight_in(module: GradedSubmodule, spans: dict, key) -> bool:
    """Does the subspace spans[key] contain a nonzero highest-weight vector?"""
    ech = spans.get(key)
    if ech is None or not len(ech):
        return False
    basis = ech.basis()
    cols = []
    for row in basis:
        v = _dense(row, module.blocks[key].dim)
        col = {}
        for r, op in enumerate(raising_ops(module.space)):
            tgt, w = _apply_block(module.induced(op)[key], v)
            if tgt is not None:
                for i, x in enumerate(w):
                    if x != 0:
                        col[(r, i)] = int(x)
        cols.append(col)
    return bool(nullspace(cols))
