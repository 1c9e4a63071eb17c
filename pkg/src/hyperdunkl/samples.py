"""Seeded generators for the polynomial families used by tests and acceptance."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import Frame
from .polynomial import (
    Poly,
    add,
    imag_mul,
    left_scale,
    norm_poly,
    random_element,
    random_poly,
    real_mul,
    right_scale,
    slice_power_poly,
)
from .spaces import imag_power_times


def _power(p: Poly, m: int) -> Poly:
    out = Poly.constant(p.frame, 1)
    for _ in range(m):
        out = real_mul(p, out)
    return out


def slice_poly(frame: Frame, rng: random.Random, max_degree: int = 4, terms: int = 3) -> Poly:
    """Sum of x0^m x_imag^l a with random (m, l, a)."""
    out = Poly.zero(frame)
    for _ in range(terms):
        m = rng.randint(0, max_degree)
        l = rng.randint(0, max_degree - m)
        out = add(out, imag_power_times(frame, m, l, random_element(frame.algebra, rng)))
    return out


def nonslice_poly(frame: Frame, rng: random.Random, max_degree: int = 4) -> Poly:
    """Random polynomial plus x_1 a, with no other x0-free linear terms (n >= 2)."""
    if frame.n < 2:
        raise ValueError("needs at least two imaginary units")
    g = random_poly(frame, rng, max_degree=max_degree, terms=5)
    g = Poly(frame, {e: c for e, c in g.terms.items() if not (e[0] == 0 and sum(e) == 1)})
    a = random_element(frame.algebra, rng)
    while a.is_zero():
        a = random_element(frame.algebra, rng)
    return add(g, right_scale(Poly.variable(frame, 1), a))


def slice_regular_poly(frame: Frame, rng: random.Random, max_degree: int = 5,
                       A: Iterable[int] | None = None) -> Poly:
    out = Poly.zero(frame)
    for j in range(max_degree + 1):
        if rng.random() < 0.6:
            out = add(out, right_scale(slice_power_poly(frame, j, A), random_element(frame.algebra, rng)))
    return out


def generic_suite(frame: Frame, seed: int, count: int, max_degree: int = 4, terms: int = 5) -> list[Poly]:
    rng = random.Random(seed)
    return [random_poly(frame, rng, max_degree=max_degree, terms=terms) for _ in range(count)]


# ---------------------------------------------------------------------------
# A-slice forms and partition-kernel samples


def _even_poly(frame: Frame, rng: random.Random, norms: Sequence[Poly], extra: Sequence[int],
               max_degree: int = 2, terms: int = 3) -> Poly:
    """Random polynomial in x0, the given norm polynomials and the extra coordinates."""
    gens = [Poly.variable(frame, 0)] + list(norms) + [Poly.variable(frame, j) for j in extra]
    out = Poly.zero(frame)
    for _ in range(terms):
        mono = Poly.constant(frame, 1)
        for _ in range(rng.randint(0, max_degree)):
            mono = real_mul(rng.choice(gens), mono)
        out = add(out, right_scale(mono, random_element(frame.algebra, rng)))
    return out


def a_slice_form(frame: Frame, A: Iterable[int], rng: random.Random, max_degree: int = 2) -> Poly:
    """G0 + x_A G1 with G0, G1 polynomials in x0, q_A and the coordinates outside A."""
    A = tuple(sorted(set(A)))
    rest = [j for j in range(1, frame.n + 1) if j not in A]
    q = norm_poly(frame, A)
    g0 = _even_poly(frame, rng, [q], rest, max_degree)
    g1 = _even_poly(frame, rng, [q], rest, max_degree)
    return add(g0, imag_mul(A, g1))


def kernel_sp_sample(frame: Frame, blocks: Sequence[Sequence[int]], rng: random.Random,
                     max_degree: int = 2) -> Poly:
    """sum_K x_{A_k1}(x_{A_k2}(... G_K)) with G_K in x0 and the block norms."""
    blocks = [tuple(b) for b in blocks]
    norms = [norm_poly(frame, b) for b in blocks]
    out = Poly.zero(frame)
    for r in range(len(blocks) + 1):
        for K in combinations(range(len(blocks)), r):
            g = _even_poly(frame, rng, norms, (), max_degree, terms=2)
            for i in reversed(K):
                g = imag_mul(blocks[i], g)
            out = add(out, g)
    return out


# ---------------------------------------------------------------------------
# members of F_A


def fueter_variable(frame: Frame, j: int) -> Poly:
    """z_j = x_j - x0 v_j, monogenic in the coordinates x0, x_j."""
    return add(Poly.variable(frame, j), -left_scale(frame.units[j - 1], Poly.variable(frame, 0)))


def fa_member_pool(frame: Frame, A: Iterable[int], max_power: int = 3) -> list[Poly]:
    """Basic members of F_A: powers of x0 + x_A and Fueter variables outside A."""
    A = tuple(sorted(set(A)))
    pool = [slice_power_poly(frame, j, A) for j in range(max_power + 1)]
    pool += [fueter_variable(frame, j) for j in range(1, frame.n + 1) if j not in A]
    return pool


def fa_member(frame: Frame, A: Iterable[int], rng: random.Random, max_power: int = 3,
              real_only: bool = False) -> Poly:
    """Random combination of the pool with right coefficients (real ones if ``real_only``)."""
    pool = fa_member_pool(frame, A, max_power)
    out = Poly.zero(frame)
    for p in pool:
        if rng.random() < 0.6:
            if real_only:
                out = add(out, p * (rng.randint(-4, 4) or 1))
            else:
                out = add(out, right_scale(p, random_element(frame.algebra, rng)))
    return out
