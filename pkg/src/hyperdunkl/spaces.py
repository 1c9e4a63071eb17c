"""Partitions, admissible multiplicities and membership tests for the
Dunkl-regular function spaces, restricted to polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence

from .algebra import Element, Frame
from .errors import InvariantViolation, PreconditionError
from .operators import (
    casimir_A,
    dunkl_CR_A,
    dunkl_CR_P,
    dunkl_dirac,
    gamma_tilde_A,
    script_S_A,
)
from .polynomial import (
    Poly,
    add,
    evaluate,
    homogeneous_components,
    imag_mul,
    imaginary_poly,
    norm_poly,
    partial,
    real_mul,
    relabel,
    right_scale,
    slice_power_parts,
    slice_power_poly,
    spherical_value_A,
)

Block = tuple  # tuple[int, ...]


# ---------------------------------------------------------------------------
# partitions


def canonical_blocks(blocks: Iterable[Iterable[int]]) -> tuple[Block, ...]:
    out = [tuple(sorted(set(b))) for b in blocks]
    if any(not b for b in out):
        raise ValueError("partition blocks must be nonempty")
    return tuple(sorted(out, key=min))


def check_partition(blocks: Iterable[Iterable[int]], n: int) -> tuple[Block, ...]:
    blocks = canonical_blocks(blocks)
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(1, n + 1)):
        raise ValueError(f"blocks {blocks} do not partition 1..{n}")
    return blocks


def parse_partition(text: str, n: int | None = None) -> tuple[Block, ...]:
    """Parse ``{1,2|3}`` into ((1, 2), (3,))."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError(f"partition must look like {{1,2|3}}, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError("empty partition")
    blocks = []
    for part in body.split("|"):
        items = [p.strip() for p in part.split(",")]
        if not all(re.fullmatch(r"\d+", p) for p in items):
            raise ValueError(f"bad block {part!r} in partition {text!r}")
        blocks.append([int(p) for p in items])
    if n is None:
        n = max(max(b) for b in blocks)
    return check_partition(blocks, n)


def format_partition(blocks: Iterable[Iterable[int]]) -> str:
    return "{" + "|".join(",".join(str(i) for i in b) for b in canonical_blocks(blocks)) + "}"


def profile(blocks: Iterable[Iterable[int]]) -> tuple[int, ...]:
    """Integer partition of n given by the block sizes (descending)."""
    return tuple(sorted((len(tuple(b)) for b in blocks), reverse=True))


def default_multiplicities(P, n: int | None = None) -> tuple[Fraction, ...]:
    """k_i = -1/2 + 1/(2|A_j|) for i in A_j."""
    blocks = P.blocks if isinstance(P, PartitionSpec) else canonical_blocks(P)
    n = n or max(max(b) for b in blocks)
    k = [Fraction(0)] * n
    for b in blocks:
        for i in b:
            k[i - 1] = Fraction(-1, 2) + Fraction(1, 2 * len(b))
    return tuple(k)


def alternate_multiplicities(P, n: int | None = None) -> tuple[Fraction, ...]:
    """Second admissible choice: 0 on each block minimum, -1/2 elsewhere."""
    blocks = P.blocks if isinstance(P, PartitionSpec) else canonical_blocks(P)
    n = n or max(max(b) for b in blocks)
    k = [Fraction(0)] * n
    for b in blocks:
        for i in b[1:]:
            k[i - 1] = Fraction(-1, 2)
    return tuple(k)


def block_admissible(block: Iterable[int], k: Sequence[Fraction]) -> bool:
    block = tuple(block)
    vals = [Fraction(k[i - 1]) for i in block]
    return (
        all(v <= 0 for v in vals)
        and 2 * sum(vals) == 1 - len(block)
        and sum(1 for v in vals if v == 0) <= 1
    )


def is_admissible(P, k: Sequence) -> bool:
    blocks = P.blocks if isinstance(P, PartitionSpec) else canonical_blocks(P)
    return all(block_admissible(b, k) for b in blocks)


@dataclass(frozen=True)
class PartitionSpec:
    n: int
    blocks: tuple[Block, ...]
    k: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", check_partition(self.blocks, self.n))
        k = tuple(Fraction(x) for x in self.k)
        if len(k) != self.n:
            raise ValueError(f"expected {self.n} multiplicities")
        object.__setattr__(self, "k", k)

    @classmethod
    def make(cls, n: int, blocks, k=None) -> "PartitionSpec":
        blocks = check_partition(blocks, n)
        if k is None:
            k = default_multiplicities(blocks, n)
        return cls(n, blocks, tuple(k))

    @property
    def admissible(self) -> bool:
        return is_admissible(self.blocks, self.k)

    def __str__(self):
        return format_partition(self.blocks)


def enumerate_partitions(n: int) -> Iterator[tuple[Block, ...]]:
    """All set partitions of 1..n via restricted-growth strings (lexicographic)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    a = [0] * n
    while True:
        blocks: dict[int, list[int]] = {}
        for i, b in enumerate(a, start=1):
            blocks.setdefault(b, []).append(i)
        yield tuple(tuple(blocks[b]) for b in sorted(blocks))
        # next restricted-growth string
        i = n - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0


def bell_triangle(n: int) -> int:
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def partition_number(n: int) -> int:
    """p(n) by the standard coin-change recurrence."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def census(n: int) -> tuple[int, int, int]:
    """(Bell(n), p(n), 2^n - n), each cross-checked by enumeration."""
    parts = list(enumerate_partitions(n))
    bell = len(parts)
    if bell != bell_triangle(n):
        raise InvariantViolation(f"enumeration gave {bell} partitions, Bell triangle {bell_triangle(n)}")
    profiles = {profile(p) for p in parts}
    pn = partition_number(n)
    if len(profiles) != pn:
        raise InvariantViolation(f"{len(profiles)} block-size profiles but p({n}) = {pn}")
    return bell, pn, 2**n - n


def partition_from_fan(T: Sequence[int]) -> tuple[Block, ...]:
    """Partition attached to a fan T = (t0 < t1 < ... < t_tau = n)."""
    T = list(T)
    if len(T) < 2 or T[0] < 0 or any(a >= b for a, b in zip(T, T[1:])):
        raise ValueError(f"{T} is not a fan")
    blocks = [tuple(range(a + 1, b + 1)) for a, b in zip(T, T[1:])]
    blocks += [(i,) for i in range(1, T[0] + 1)]
    return check_partition(blocks, T[-1])


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    member: bool
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Poly] = field(default_factory=dict)

    def __bool__(self):
        return self.member

    @classmethod
    def from_outputs(cls, outputs: dict[str, Poly]) -> "Verdict":
        checks = {name: p.is_zero() for name, p in outputs.items()}
        wit = {name: p for name, p in outputs.items() if not p.is_zero()}
        return cls(all(checks.values()), checks, wit)


def _full(frame: Frame) -> tuple[int, ...]:
    return tuple(range(1, frame.n + 1))


def is_slice_poly(frame: Frame, f: Poly, k=None) -> Verdict:
    """Casimir-kernel test; the reflected variant must agree."""
    A = _full(frame)
    k = default_multiplicities([A]) if k is None else tuple(k)
    s = casimir_A(frame, k, A, f)
    g = gamma_tilde_A(frame, k, A, f)
    if s.is_zero() != g.is_zero():
        raise InvariantViolation("Casimir and reflected Casimir kernels disagree")
    v = Verdict.from_outputs({"casimir": s})
    v.checks["gamma_tilde"] = g.is_zero()
    return v


def is_slice_regular_poly(frame: Frame, f: Poly, k=None) -> Verdict:
    A = _full(frame)
    k = default_multiplicities([A]) if k is None else tuple(k)
    return Verdict.from_outputs({
        "dunkl_CR": dunkl_CR_A(frame, k, A, f),
        "casimir": casimir_A(frame, k, A, f),
    })


def slice_regular_coefficients(frame: Frame, f: Poly) -> list[Element]:
    """a_j with f = sum_j x^j a_j; raises if f is not of that form."""
    origin = [0] * (frame.n + 1)
    coeffs = []
    g = f
    deg = f.degree()
    for j in range(deg + 1):
        coeffs.append(evaluate(g, origin) / factorial(j))
        g = partial(0, g)
    rebuilt = Poly.zero(frame)
    for j, a in enumerate(coeffs):
        if not a.is_zero():
            rebuilt = add(rebuilt, right_scale(slice_power_poly(frame, j), a))
    if rebuilt != f:
        raise PreconditionError("polynomial is not a right combination of powers of x")
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# slice decomposition


@dataclass
class SliceDecomposition:
    frame: Frame
    # (m, l, a): summand x0^m x_imag^l a
    terms: list[tuple[int, int, Element]]

    def by_degree(self) -> dict[int, list[tuple[int, int, Element]]]:
        out: dict[int, list] = {}
        for m, l, a in self.terms:
            out.setdefault(m + l, []).append((m, l, a))
        return out

    def rebuild(self) -> Poly:
        out = Poly.zero(self.frame)
        for m, l, a in self.terms:
            out = add(out, imag_power_times(self.frame, m, l, a))
        return out

    def xxc_expansion(self) -> dict[tuple[int, int], Element]:
        """Coefficients a_{alpha,beta} of x^alpha (x^c)^beta, via x0=(x+x^c)/2, x_imag=(x-x^c)/2."""
        alg = self.frame.algebra
        out: dict[tuple[int, int], Element] = {}
        for m, l, a in self.terms:
            scale = Fraction(1, 2 ** (m + l))
            for (alpha, beta), c in _binomial_mix(m, l).items():
                key = (alpha, beta)
                out[key] = out.get(key, alg.zero()) + a * (c * scale)
        return {key: v for key, v in sorted(out.items()) if not v.is_zero()}


def _binomial_mix(m: int, l: int) -> dict[tuple[int, int], int]:
    """Coefficients of u^alpha w^beta in (u + w)^m (u - w)^l."""
    from math import comb

    out: dict[tuple[int, int], int] = {}
    for i in range(m + 1):
        for j in range(l + 1):
            c = comb(m, i) * comb(l, j) * (-1) ** (l - j)
            key = (i + j, m + l - i - j)
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def imag_power_times(frame: Frame, m: int, l: int, a: Element) -> Poly:
    """x0^m x_imag^l a using x_imag^(2p) = (-q)^p and x_imag^(2p+1) = (-q)^p x_imag."""
    q = norm_poly(frame)
    p, odd = divmod(l, 2)
    real = Poly.constant(frame, 1)
    for _ in range(p):
        real = real_mul(q, real) * -1
    for _ in range(m):
        real = real_mul(Poly.variable(frame, 0), real)
    base = Poly.constant(frame, a)
    if odd:
        base = imag_mul(_full(frame), base)
    return real_mul(real, base)


def xxc_poly(frame: Frame, alpha: int, beta: int, a: Element) -> Poly:
    """x^alpha (x^c)^beta a as a coordinate polynomial."""
    p1, s1 = slice_power_parts(frame, alpha)
    p2, s2 = slice_power_parts(frame, beta)
    q = norm_poly(frame)
    # (p1 + s1 x)(p2 - s2 x) with x^2 = -q
    real = add(real_mul(p1, p2), real_mul(q, real_mul(s1, s2)))
    imag = add(real_mul(s1, p2), -real_mul(p1, s2))
    c = Poly.constant(frame, a)
    return add(real_mul(real, c), imag_mul(_full(frame), real_mul(imag, c)))


def slice_decompose(frame: Frame, f: Poly, k=None) -> SliceDecomposition:
    """Write a slice polynomial as sum x0^m x_imag^l a_{m,l}."""
    A = _full(frame)
    k = default_multiplicities([A]) if k is None else tuple(k)
    terms = []
    for comp in homogeneous_components(f):
        deg = comp.degree()
        by_m: dict[int, dict] = {}
        for e, c in comp.terms.items():
            by_m.setdefault(e[0], {})[(0,) + e[1:]] = c
        for m in sorted(by_m):
            Q = Poly(frame, by_m[m])
            l = deg - m
            c = Q
            for _ in range(l):
                c = dunkl_dirac(frame, k, c)
            if any(sum(e) for e in c.terms):
                raise PreconditionError("iterated Dunkl-Dirac image is not constant; input is not slice")
            const = evaluate(c, [0] * (frame.n + 1))
            a = const * Fraction((-1) ** l, factorial(l))
            if imag_power_times(frame, 0, l, a) != Q:
                raise PreconditionError("x0-graded part is not a power of the imaginary part")
            terms.append((m, l, a))
    dec = SliceDecomposition(frame, terms)
    if dec.rebuild() != f:
        raise InvariantViolation("slice decomposition does not reassemble the input")
    return dec


# ---------------------------------------------------------------------------
# memberships


def a_default_multiplicities(frame: Frame, A: Iterable[int]) -> tuple[Fraction, ...]:
    """A-admissible default: the block rule on A, zero outside."""
    A = tuple(sorted(set(A)))
    k = [Fraction(0)] * frame.n
    for i in A:
        k[i - 1] = Fraction(-1, 2) + Fraction(1, 2 * len(A))
    return tuple(k)


def _triple(name: str, trip) -> dict[str, Poly]:
    return {f"S[{name}]": trip[0], f"S'[{name}]": trip[1], f"S''[{name}]": trip[2]}


def _label(A) -> str:
    return ",".join(str(i) for i in sorted(A))


def membership_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Verdict:
    A = tuple(sorted(set(A)))
    k = a_default_multiplicities(frame, A) if k is None else tuple(k)
    if A and not block_admissible(A, k):
        raise PreconditionError(f"multiplicities {k} are not admissible on {set(A)}")
    outs = {f"D[{_label(A)}]": dunkl_CR_A(frame, k, A, f)}
    outs.update(_triple(_label(A), script_S_A(frame, k, A, f)))
    return Verdict.from_outputs(outs)


def membership_AB(frame: Frame, k, A: Iterable[int], B: Iterable[int], f: Poly) -> Verdict:
    """D_A f = 0 and the B-triple vanishes.

    ``k`` may be one sequence used for both operators, or a pair (k_A, k_B).
    """
    A = tuple(sorted(set(A)))
    B = tuple(sorted(set(B)))
    if k is None:
        kA, kB = a_default_multiplicities(frame, A), a_default_multiplicities(frame, B)
    elif len(k) == 2 and not isinstance(k[0], (int, Fraction)):
        kA, kB = tuple(k[0]), tuple(k[1])
    else:
        kA = kB = tuple(k)
    outs = {f"D[{_label(A)}]": dunkl_CR_A(frame, kA, A, f)}
    outs.update(_triple(_label(B), script_S_A(frame, kB, B, f)))
    return Verdict.from_outputs(outs)


def membership_P(frame: Frame, P: PartitionSpec, f: Poly) -> Verdict:
    if P.n != frame.n:
        raise PreconditionError("partition size does not match the frame")
    if not P.admissible:
        raise PreconditionError(f"multiplicities {P.k} are not admissible for {P}")
    outs = {f"D{{{format_partition(P.blocks)[1:-1]}}}": dunkl_CR_P(frame, P.k, P.blocks, f)}
    for b in P.blocks:
        outs.update(_triple(_label(b), script_S_A(frame, P.k, b, f)))
    return Verdict.from_outputs(outs)


@dataclass
class IndependenceResult:
    ok: bool
    counterexamples: list[Poly]

    def __bool__(self):
        return self.ok


def multiplicity_independence(frame: Frame, P, k1, k2, suite: Iterable[Poly]) -> IndependenceResult:
    blocks = P.blocks if isinstance(P, PartitionSpec) else check_partition(P, frame.n)
    s1 = PartitionSpec.make(frame.n, blocks, k1)
    s2 = PartitionSpec.make(frame.n, blocks, k2)
    for s in (s1, s2):
        if not s.admissible:
            raise PreconditionError(f"multiplicities {s.k} are not admissible for {s}")
    bad = [f for f in suite if membership_P(frame, s1, f).member != membership_P(frame, s2, f).member]
    return IndependenceResult(not bad, bad)


def x_block(frame: Frame, B: Iterable[int]) -> Poly:
    """x_B = x0 + sum_{i in B} v_i x_i."""
    return add(Poly.variable(frame, 0), imaginary_poly(frame, B))


def separating_witness(frame: Frame, P, P2) -> Poly:
    """A linear x_B lying in exactly one of the two spaces."""
    b1 = P.blocks if isinstance(P, PartitionSpec) else check_partition(P, frame.n)
    b2 = P2.blocks if isinstance(P2, PartitionSpec) else check_partition(P2, frame.n)
    if set(b1) == set(b2):
        raise PreconditionError("the two partitions coincide")
    if all(a in b2 for a in b1):
        b1, b2 = b2, b1  # some block of the second partition is missing from the first
    # largest missing block, then the block of the other partition meeting it most
    Ai = max((a for a in b1 if a not in b2), key=len)
    Bj = max((b for b in b2 if set(Ai) & set(b)), key=lambda b: len(set(Ai) & set(b)))
    w = x_block(frame, Bj) if set(Ai) - set(Bj) else x_block(frame, Ai)
    s1 = PartitionSpec.make(frame.n, b1)
    s2 = PartitionSpec.make(frame.n, b2)
    if membership_P(frame, s1, w).member == membership_P(frame, s2, w).member:
        raise InvariantViolation(f"witness {w} does not separate {s1} and {s2}")
    return w


def permute_partition(blocks, sigma: Sequence[int]) -> tuple[Block, ...]:
    """P_sigma: blocks sigma^{-1}(A)."""
    inv = {s: i for i, s in enumerate(sigma, start=1)}
    return canonical_blocks([[inv[a] for a in b] for b in blocks])


def permuted_equivalence(frame: Frame, P, sigma: Sequence[int], f: Poly) -> bool:
    """Membership of f in F_P agrees with membership of f_sigma in the permuted setting.

    Also checks that every operator output is transported by the relabeling.
    """
    spec = P if isinstance(P, PartitionSpec) else PartitionSpec.make(frame.n, P)
    sigma = tuple(sigma)
    frame2 = frame.permuted(sigma)
    blocks2 = permute_partition(spec.blocks, sigma)
    k2 = tuple(spec.k[s - 1] for s in sigma)
    spec2 = PartitionSpec.make(frame.n, blocks2, k2)
    f2 = relabel(f, frame2, sigma)
    v1 = membership_P(frame, spec, f)
    v2 = membership_P(frame2, spec2, f2)
    d1 = relabel(dunkl_CR_P(frame, spec.k, spec.blocks, f), frame2, sigma)
    d2 = dunkl_CR_P(frame2, spec2.k, spec2.blocks, f2)
    if d1 != d2:
        raise InvariantViolation("D_P output is not transported by the relabeling")
    return v1.member == v2.member


# ---------------------------------------------------------------------------
# P-slice components


def p_slice_levels(frame: Frame, P, f: Poly) -> list[dict[tuple[int, ...], Poly]]:
    """All levels m = 0..l of the recursion; level m maps K (subset of 1..m) to S^m_K(f)."""
    blocks = P.blocks if isinstance(P, PartitionSpec) else check_partition(P, frame.n)
    levels = [{(): f}]
    for m, A in enumerate(blocks, start=1):
        prev = levels[-1]
        cur = {}
        for K, g in prev.items():
            cur[K] = spherical_value_A(A, g)
            cur[K + (m,)] = spherical_value_A(A, imag_mul(A, g))
        # x_A S^{m-1}_K = x_A S^m_K + S^m_{K+m}
        for K, g in prev.items():
            lhs = imag_mul(A, g)
            rhs = add(imag_mul(A, cur[K]), cur[K + (m,)])
            if lhs != rhs:
                raise InvariantViolation(f"level identity fails at m={m}, K={K}")
        levels.append(cur)
    return levels


def p_slice_components(frame: Frame, P, f: Poly) -> dict[tuple[int, ...], Poly]:
    """Final level of the P-slice recursion keyed by K (block numbers, ascending)."""
    return p_slice_levels(frame, P, f)[-1]
