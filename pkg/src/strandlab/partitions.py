"""Partitions, skew shapes and the strand shape constructors."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition([2, 1, 0])``
    equals ``Partition([2, 1])`` and both hash the same.
    """

    def __new__(cls, parts=()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"not weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return "Partition(%s)" % list(self)

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def transpose(self) -> "Partition":
        return transpose(self)

    def contains(self, other) -> bool:
        other = Partition(other)
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def boxes(self):
        """Boxes (row, col), 0-based, in row reading order."""
        return [(i, j) for i, row in enumerate(self) for j in range(row)]

    def to_json(self) -> list:
        return list(self)

    @classmethod
    def from_json(cls, data) -> "Partition":
        return cls(json.loads(data) if isinstance(data, str) else data)


EMPTY = Partition()


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = EMPTY

    def __post_init__(self):
        object.__setattr__(self, "outer", Partition(self.outer))
        object.__setattr__(self, "inner", Partition(self.inner))
        if not self.outer.contains(self.inner):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def boxes(self):
        return [(i, j) for i, row in enumerate(self.outer)
                for j in range(self.inner.part(i), row)]

    def __str__(self):
        return f"{self.outer}/{self.inner}"


@lru_cache(maxsize=None)
def _transpose(parts: tuple) -> tuple:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > j) for j in range(parts[0]))


def transpose(lam) -> Partition:
    """Column lengths of the Young diagram."""
    return Partition(_transpose(tuple(Partition(lam))))


def rectangle(a: int, b: int) -> Partition:
    """The partition (a^b): b rows of length a."""
    return Partition([a] * b) if a > 0 else EMPTY


def p_rs(alpha, r: int, s: int) -> Partition:
    """(s+alpha_1, ..., s+alpha_s, s^r, alpha^T_1, ..., alpha^T_{alpha_1})."""
    alpha = Partition(alpha)
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    if len(alpha) > s:
        raise ValueError(f"p_rs requires len(alpha) <= s, got alpha={alpha}, s={s}")
    top = [s + alpha.part(i) for i in range(s)]
    return Partition(top + [s] * r + list(transpose(alpha)))


def pq_rs(alpha, beta, r: int, s: int) -> tuple[Partition, Partition]:
    """The pair of shapes labelling a Lascoux strand summand.

    P = (s+alpha_1..s+alpha_s, s^r, beta) and
    Q = (s+beta^T_1..s+beta^T_s, s^r, alpha^T).
    """
    alpha, beta = Partition(alpha), Partition(beta)
    if r < 1 or s < 0:
        raise ValueError("pq_rs requires r >= 1 and s >= 0")
    if len(alpha) > s:
        raise ValueError(f"pq_rs requires len(alpha) <= s, got alpha={alpha}, s={s}")
    if beta.part(0) > s:
        raise ValueError(f"pq_rs requires beta_1 <= s, got beta={beta}, s={s}")
    bt = transpose(beta)
    P = [s + alpha.part(i) for i in range(s)] + [s] * r + list(beta)
    Q = [s + bt.part(i) for i in range(s)] + [s] * r + list(transpose(alpha))
    return Partition(P), Partition(Q)


def rect_complement(a: int, b: int, nu) -> Partition:
    """eta with S_{(a^b)/nu} = S_eta: eta = (a - nu_b, ..., a - nu_1)."""
    nu = Partition(nu)
    if not rectangle(a, b).contains(nu):
        raise ValueError(f"{nu} is not contained in the {b}x{a} rectangle")
    return Partition([a - nu.part(i) for i in reversed(range(b))])


def is_horizontal_strip(sh: SkewShape) -> bool:
    # at most one box per column <=> inner interlaces outer
    o, i = sh.outer, sh.inner
    return all(o.part(k + 1) <= i.part(k) for k in range(len(o)))


def is_vertical_strip(sh: SkewShape) -> bool:
    return all(sh.outer.part(k) - sh.inner.part(k) <= 1 for k in range(len(sh.outer)))


def enumerate_partitions(size: int, max_len: int | None = None,
                         max_part: int | None = None) -> list[Partition]:
    """All partitions of ``size`` inside the box, reverse-lexicographic order."""
    if size < 0:
        return []
    max_len = size if max_len is None else max_len
    max_part = size if max_part is None else max_part
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if len(prefix) >= max_len:
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(size, max_part, [])
    return out


def partitions_inside(outer) -> list[Partition]:
    """All partitions contained in ``outer``, by size then reverse-lex."""
    outer = Partition(outer)
    out = []
    for k in range(outer.size + 1):
        for p in enumerate_partitions(k, len(outer), outer.part(0)):
            if outer.contains(p):
                out.append(p)
    return out


def covered_by(alpha) -> list[Partition]:
    """Partitions obtained by removing one corner box."""
    alpha = Partition(alpha)
    out = []
    for i in range(len(alpha)):
        if alpha.part(i) > alpha.part(i + 1):
            parts = list(alpha)
            parts[i] -= 1
            out.append(Partition(parts))
    return out
