"""Exact pointwise checks for statements that involve the inverse of the
imaginary part, unit directions J, or restriction to slices."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .algebra import Element, Frame, inverse, mul
from .errors import PreconditionError
from .operators import cauchy_riemann, gamma_spherical, script_S_A, script_S_P
from .polynomial import Poly, add, euler, evaluate, imag_mul, left_scale, partial, spherical_value_A
from .spaces import check_partition, default_multiplicities, p_slice_components


@dataclass(frozen=True)
class RationalSpherePoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(c * c for c in self.coords) != 1:
            raise ValueError("coordinates are not on the unit sphere")

    @property
    def dim(self) -> int:
        return len(self.coords)


def _rand_frac(rng: random.Random, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def stereographic(u: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Inverse stereographic projection of u in Q^(d-1) onto the unit sphere in Q^d."""
    s = sum(x * x for x in u)
    return ((1 - s) / (1 + s),) + tuple(2 * x / (1 + s) for x in u)


def rational_sphere_point(dim: int, seed: int | random.Random) -> RationalSpherePoint:
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if dim == 1:
        return RationalSpherePoint((Fraction(rng.choice((-1, 1))),))
    u = [_rand_frac(rng) for _ in range(dim - 1)]
    pt = stereographic(u)
    # shuffle which axis plays the pole so no coordinate is privileged
    order = list(range(dim))
    rng.shuffle(order)
    return RationalSpherePoint(tuple(pt[i] for i in order))


def rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def off_axis_point(frame: Frame, rng: random.Random) -> tuple[Fraction, ...]:
    while True:
        pt = tuple(_rand_frac(rng) for _ in range(frame.n + 1))
        if any(pt[1:]):
            return pt


# ---------------------------------------------------------------------------
# difference formula


def check_difference_at(frame: Frame, f: Poly, point: Sequence) -> bool:
    """dbar f - thetabar f == -x_imag^{-1} Gamma f at an off-axis point."""
    point = tuple(Fraction(p) for p in point)
    ximag = frame.vector((0,) + point[1:])
    if ximag.is_zero():
        raise PreconditionError("point lies on the real axis")
    xinv = inverse(frame, ximag)
    dbar = evaluate(cauchy_riemann(frame, f), point)
    theta = evaluate(partial(0, f), point) - mul(xinv, evaluate(euler(f), point))
    rhs = -mul(xinv, evaluate(gamma_spherical(frame, f), point))
    return dbar - theta == rhs


# ---------------------------------------------------------------------------
# slice restriction


@dataclass(frozen=True)
class SliceRestriction:
    """f restricted to x_i = J_i beta (i in A); beta lives in variable slot ``slot``."""

    poly: Poly
    A: tuple[int, ...]
    J: RationalSpherePoint
    slot: int

    def direction(self) -> Element:
        frame = self.poly.frame
        coords = [Fraction(0)] * (frame.n + 1)
        for i, c in zip(self.A, self.J.coords):
            coords[i] = c
        return frame.vector(coords)


def restrict_to_slice(frame: Frame, f: Poly, A: Iterable[int], J: RationalSpherePoint) -> SliceRestriction:
    A = tuple(sorted(set(A)))
    if not A:
        raise ValueError("A must be nonempty")
    if J.dim != len(A):
        raise ValueError(f"J has dimension {J.dim}, expected {len(A)}")
    if sum(c * c for c in J.coords) != 1:
        raise ValueError("J is not a unit vector")
    slot = A[0]
    weights = dict(zip(A, J.coords))
    acc: dict = {}
    for e, c in f.terms.items():
        w = Fraction(1)
        total = 0
        for i in A:
            if e[i]:
                w *= weights[i] ** e[i]
                total += e[i]
        if not w:
            continue
        e2 = list(e)
        for i in A:
            e2[i] = 0
        e2[slot] = total
        key = tuple(e2)
        scaled = tuple(w * x for x in c)
        old = acc.get(key)
        acc[key] = scaled if old is None else tuple(a + b for a, b in zip(old, scaled))
    return SliceRestriction(Poly(frame, acc), A, J, slot)


def dbar_J(frame: Frame, r: SliceRestriction) -> Poly:
    """d0 + sum_{j not in A} v_j d_j + J d_beta on a slice restriction."""
    g = r.poly
    out = partial(0, g)
    for j in range(1, frame.n + 1):
        if j not in r.A:
            out = add(out, left_scale(frame.units[j - 1], partial(j, g)))
    return add(out, left_scale(r.direction(), partial(r.slot, g)))


# ---------------------------------------------------------------------------
# P-slice reconstruction


def nested(Js: Sequence[Element], a: Element) -> Element:
    """[J, a]_K = J_{k1}(J_{k2}(... (J_{km} a)))."""
    out = a
    for J in reversed(Js):
        out = mul(J, out)
    return out


def block_point(frame: Frame, blocks, x0, betas: Sequence[Fraction], dirs: Sequence[RationalSpherePoint]):
    """Point x0 + sum beta_i J_i with J_i built from the block directions."""
    coords = [Fraction(0)] * (frame.n + 1)
    coords[0] = Fraction(x0)
    for b, beta, J in zip(blocks, betas, dirs):
        for i, c in zip(b, J.coords):
            coords[i] = beta * c
    return tuple(coords)


def constructed_point(frame: Frame, blocks, rng: random.Random):
    """Rational point whose block norms are exact rationals; returns (point, betas, dirs)."""
    betas = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in blocks]
    dirs = [rational_sphere_point(len(b), rng) for b in blocks]
    x0 = _rand_frac(rng)
    return block_point(frame, blocks, x0, betas, dirs), betas, dirs


def _block_data(frame: Frame, blocks, point):
    betas, Js = [], []
    for b in blocks:
        sq = sum(point[i] ** 2 for i in b)
        beta = rational_sqrt(sq)
        if beta is None or beta == 0:
            raise PreconditionError(f"block {b} norm is zero or not a rational square at the point")
        betas.append(beta)
        coords = [Fraction(0)] * (frame.n + 1)
        for i in b:
            coords[i] = point[i] / beta
        Js.append(frame.vector(coords))
    return betas, Js


def _stem_values(comps, blocks, point, betas):
    out = {}
    for K, S in comps.items():
        val = evaluate(S, point)
        for i in K:
            val = val / (-betas[i - 1])
        out[K] = val
    return out


def reconstruct_p_slice_at(frame: Frame, P, f: Poly, point: Sequence, k=None,
                           rng: random.Random | None = None) -> bool:
    """f(point) = sum_K [J, F_K]_K, plus the parity and direction-independence of F_K.

    The direction check re-evaluates F_K at a point with the same (x0, beta)
    and freshly drawn unit directions; it is skipped for singleton blocks.
    """
    blocks = P.blocks if hasattr(P, "blocks") else check_partition(P, frame.n)
    if k is None:
        k = getattr(P, "k", None) or default_multiplicities(blocks, frame.n)
    if any(not p.is_zero() for trip in script_S_P(frame, k, blocks, f) for p in trip):
        raise PreconditionError("f is not in the kernel of the partition spherical operators")
    point = tuple(Fraction(p) for p in point)
    betas, Js = _block_data(frame, blocks, point)
    comps = p_slice_components(frame, blocks, f)
    F = _stem_values(comps, blocks, point, betas)
    total = frame.algebra.zero()
    for K, val in F.items():
        total = total + nested([Js[i - 1] for i in K], val)
    if total != evaluate(f, point):
        return False
    # parity in each beta_h: reflect block h, keep J fixed, so beta_h -> -beta_h
    for h, b in enumerate(blocks, start=1):
        refl = tuple(-c if i in b else c for i, c in enumerate(point))
        betas_h = [(-bt if i == h else bt) for i, bt in enumerate(betas, start=1)]
        Fh = _stem_values(comps, blocks, refl, betas_h)
        for K in F:
            sign = -1 if h in K else 1
            if Fh[K] != F[K] * sign:
                return False
    # F_K depends on the block directions only through beta
    rng = rng or random.Random(0)
    dirs = [rational_sphere_point(len(b), rng) if len(b) > 1 else
            RationalSpherePoint(tuple(point[i] / bt for i in b)) for b, bt in zip(blocks, betas)]
    other = block_point(frame, blocks, point[0], betas, dirs)
    F2 = _stem_values(comps, blocks, other, betas)
    return all(F2[K] == F[K] for K in F)


def a_slice_decompose_at(frame: Frame, k, A: Iterable[int], f: Poly, point: Sequence,
                         rng: random.Random | None = None) -> tuple[Element, Element]:
    """(F_0, F_1) with f = F_0 + J F_1 at the point; checks parity and direction independence."""
    A = tuple(sorted(set(A)))
    if any(not p.is_zero() for p in script_S_A(frame, k, A, f)):
        raise PreconditionError("f is not in the kernel of the A spherical operators")
    point = tuple(Fraction(p) for p in point)
    (beta,), (J,) = _block_data(frame, [A], point)
    even = spherical_value_A(A, f)
    odd = spherical_value_A(A, imag_mul(A, f))

    def stem(pt, bt):
        return evaluate(even, pt), evaluate(odd, pt) / (-bt)

    F0, F1 = stem(point, beta)
    if F0 + mul(J, F1) != evaluate(f, point):
        raise AssertionError("A-slice decomposition does not reproduce f")
    refl = tuple(-c if i in A else c for i, c in enumerate(point))
    G0, G1 = stem(refl, -beta)
    if G0 != F0 or G1 != -F1:
        raise AssertionError("stem components lack the even/odd symmetry in beta")
    rng = rng or random.Random(0)
    if len(A) > 1:
        d = rational_sphere_point(len(A), rng)
        other = list(point)
        for i, c in zip(A, d.coords):
            other[i] = beta * c
        H0, H1 = stem(tuple(other), beta)
        if H0 != F0 or H1 != F1:
            raise AssertionError("stem components depend on the direction in the block")
    return F0, F1
