"""The reflection matrix behind the invariance argument for sliceness.

Rows and columns are indexed by subsets H of [n] minus {i0}, encoded as
bitmasks (bit i-1 for index i).  Row H carries weight alpha_i = k_i / sum(k)
on the column reached by flipping i; flipping i0 leaves the index set, and
the conjugation-invariance folds that column onto the complement.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Report


@dataclass(frozen=True)
class ReflectionMatrix:
    n: int
    i0: int
    alphas: tuple[Fraction, ...]
    subsets: tuple[int, ...]  # row labels as bitmasks over [n]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return len(self.subsets)

    def label(self, r: int) -> tuple[int, ...]:
        mask = self.subsets[r]
        return tuple(i for i in range(1, self.n + 1) if mask >> (i - 1) & 1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "i0": self.i0,
            "alphas": [str(a) for a in self.alphas],
            "rows": [list(self.label(r)) for r in range(self.order)],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


def _alphas(k: Sequence) -> tuple[Fraction, ...]:
    k = tuple(Fraction(x) for x in k)
    total = sum(k)
    if total == 0:
        raise ValueError("sum of multiplicities must be nonzero")
    return tuple(x / total for x in k)


def valid_i0(k: Sequence) -> list[int]:
    """Indices i0 with alpha_i > 0 for every i != i0."""
    alphas = _alphas(k)
    return [i0 for i0 in range(1, len(alphas) + 1)
            if all(a > 0 for i, a in enumerate(alphas, start=1) if i != i0)]


def build_reflection_matrix(k: Sequence, i0: int | None = None) -> ReflectionMatrix:
    k = tuple(Fraction(x) for x in k)
    n = len(k)
    if n < 3:
        raise ValueError("the reflection matrix is defined for n >= 3")
    if any(x > 0 for x in k) or sum(1 for x in k if x == 0) > 1:
        raise ValueError("multiplicities must be nonpositive with at most one zero")
    alphas = _alphas(k)
    if i0 is None:
        i0 = n
    if not 1 <= i0 <= n:
        raise ValueError(f"i0 = {i0} outside 1..{n}")
    if i0 not in valid_i0(k):
        raise ValueError(f"i0 = {i0} leaves a nonpositive weight on another index")

    others = [i for i in range(1, n + 1) if i != i0]
    full = 0
    for i in others:
        full |= 1 << (i - 1)
    # canonical binary order over the n-1 remaining indices
    subsets = []
    for code in range(1 << (n - 1)):
        mask = 0
        for b, i in enumerate(others):
            if code >> b & 1:
                mask |= 1 << (i - 1)
        subsets.append(mask)
    pos = {m: r for r, m in enumerate(subsets)}
    size = len(subsets)
    rows = [[Fraction(0)] * size for _ in range(size)]
    bit0 = 1 << (i0 - 1)
    for r, H in enumerate(subsets):
        for i in range(1, n + 1):
            target = H ^ (1 << (i - 1))
            if target & bit0:
                # the image at H + {i0} equals the image at the complementary point
                target = full & ~(target & ~bit0)
            rows[r][pos[target]] += alphas[i - 1]
    return ReflectionMatrix(n, i0, alphas, tuple(subsets), tuple(tuple(r) for r in rows))


def exact_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free (Bareiss) elimination on a common-denominator integer copy."""
    if not matrix:
        return 0
    from math import lcm

    den = 1
    for row in matrix:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    a = [[int(Fraction(x) * den) for x in row] for row in matrix]
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, rows):
            for cc in range(c + 1, cols):
                a[r][cc] = (a[r][cc] * p - a[r][c] * a[rank][cc]) // prev
            a[r][c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def _connected(entries) -> bool:
    size = len(entries)
    seen = {0}
    queue = deque([0])
    while queue:
        r = queue.popleft()
        for c in range(size):
            if entries[r][c] and c not in seen:
                seen.add(c)
                queue.append(c)
    return len(seen) == size


@dataclass
class PerronReport(Report):
    rank: int = -1
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "rank": self.rank, "checked": self.checked,
                "failures": list(self.failures), **self.details}


def verify_perron(m: ReflectionMatrix) -> PerronReport:
    """Symmetry, double stochasticity, irreducibility and rank(I - A) = order - 1."""
    rep = PerronReport()
    a = m.entries
    size = m.order
    rep.checked += 1
    sym = all(a[r][c] == a[c][r] for r in range(size) for c in range(r + 1, size))
    if not sym:
        rep.fail("matrix is not symmetric")
    rep.checked += 1
    if any(sum(row) != 1 for row in a) or any(sum(a[r][c] for r in range(size)) != 1 for c in range(size)):
        rep.fail("matrix is not doubly stochastic")
    rep.checked += 1
    conn = _connected(a)
    if not conn:
        rep.fail("nonzero pattern graph is disconnected")
    ima = [[(1 if r == c else 0) - a[r][c] for c in range(size)] for r in range(size)]
    rep.rank = exact_rank(ima)
    rep.checked += 1
    if rep.rank != size - 1:
        rep.fail(f"rank(I - A) = {rep.rank}, expected {size - 1}")
    rep.checked += 1
    if any(sum(row) != 0 for row in ima):
        rep.fail("(I - A) 1 != 0")
    rep.details = {"order": size, "symmetric": sym, "connected": conn}
    return rep
