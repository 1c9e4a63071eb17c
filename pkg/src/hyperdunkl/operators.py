"""Differential and Dunkl differential-difference operators on :class:`Poly`.

Every operator takes the frame explicitly (it must match ``f.frame``) and
returns a new polynomial.  Multiplicities are tuples ``k = (k_1, ..., k_n)``
of Fractions; index sets ``A`` are iterables of integers in 1..n.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import Frame, as_fraction
from .polynomial import (
    Poly,
    add,
    divide_by_xi,
    euler_A,
    format_poly,
    imag_mul,
    left_scale,
    partial,
    reflect,
    reflect_set,
    shift,
    spherical_value_A,
)

Multiplicities = tuple  # tuple[Fraction, ...]


def multiplicities(values: Iterable, n: int | None = None) -> Multiplicities:
    k = tuple(as_fraction(v) for v in values)
    if n is not None and len(k) != n:
        raise ValueError(f"expected {n} multiplicities, got {len(k)}")
    return k


def kappa(k: Multiplicities, A: Iterable[int] | None = None) -> Fraction:
    if A is None:
        return sum(k, Fraction(0))
    return sum((k[i - 1] for i in set(A)), Fraction(0))


def gamma_A(k: Multiplicities, A: Iterable[int]) -> Fraction:
    A = set(A)
    return Fraction(len(A), 2) + kappa(k, A)


def _frame(frame: Frame, f: Poly):
    if frame is not f.frame and frame != f.frame:
        raise ValueError("polynomial does not belong to the given frame")


def _k(frame: Frame, k) -> Multiplicities:
    k = multiplicities(k)
    if len(k) != frame.n:
        raise ValueError(f"expected {frame.n} multiplicities, got {len(k)}")
    return k


def _set(frame: Frame, A) -> tuple[int, ...]:
    A = tuple(sorted(set(A)))
    for i in A:
        if not 1 <= i <= frame.n:
            raise IndexError(f"index {i} outside 1..{frame.n}")
    return A


def full(frame: Frame) -> tuple[int, ...]:
    return tuple(range(1, frame.n + 1))


def _vsum(frame: Frame, idx: Iterable[int], op, f: Poly, sign: int = 1) -> Poly:
    """sum_i sign * v_i (op(i, f))."""
    out = Poly.zero(frame)
    for i in idx:
        term = left_scale(frame.units[i - 1], op(i, f))
        out = add(out, term if sign > 0 else -term)
    return out


# ---------------------------------------------------------------------------
# classical operators


def cauchy_riemann(frame: Frame, f: Poly) -> Poly:
    """d0 f + sum v_i d_i f."""
    _frame(frame, f)
    return add(partial(0, f), _vsum(frame, full(frame), partial, f))


def conj_cauchy_riemann(frame: Frame, f: Poly) -> Poly:
    _frame(frame, f)
    return add(partial(0, f), _vsum(frame, full(frame), partial, f, sign=-1))


def laplacian(frame: Frame, f: Poly) -> Poly:
    _frame(frame, f)
    out = Poly.zero(frame)
    for i in range(frame.n + 1):
        out = add(out, partial(i, partial(i, f)))
    return out


def x_imag(frame: Frame, f: Poly, A: Iterable[int] | None = None) -> Poly:
    """Left multiplication by x_A (all imaginary units when A is None)."""
    _frame(frame, f)
    return imag_mul(full(frame) if A is None else _set(frame, A), f)


def gamma_spherical(frame: Frame, f: Poly, A: Iterable[int] | None = None) -> Poly:
    """-sum_{i<j} v_i(v_j (x_i d_j - x_j d_i) f), optionally restricted to i, j in A."""
    _frame(frame, f)
    idx = full(frame) if A is None else _set(frame, A)
    out = Poly.zero(frame)
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            L = add(shift(i, partial(j, f)), -shift(j, partial(i, f)))
            inner = left_scale(frame.units[j - 1], L)
            out = add(out, left_scale(frame.units[i - 1], inner))
    return -out


def thetabar_mult(frame: Frame, f: Poly) -> Poly:
    """x * d0 f - E f (the imaginary-part-multiplied form of the slice anti-derivative operator)."""
    _frame(frame, f)
    return add(imag_mul(full(frame), partial(0, f)), -euler_A(full(frame), f))


def theta_mult(frame: Frame, f: Poly) -> Poly:
    _frame(frame, f)
    return add(imag_mul(full(frame), partial(0, f)), euler_A(full(frame), f))


# ---------------------------------------------------------------------------
# Dunkl operators


def dunkl_T(frame: Frame, k, i: int, f: Poly) -> Poly:
    """T_i f = d_i f + k_i (f - r_i f) / x_i."""
    _frame(frame, f)
    k = _k(frame, k)
    if not 1 <= i <= frame.n:
        raise IndexError(f"Dunkl operator index {i} outside 1..{frame.n}")
    d = partial(i, f)
    if k[i - 1] == 0:
        return d
    diff = add(f, -reflect(i, f))
    return add(d, divide_by_xi(i, diff) * k[i - 1])


def dunkl_dirac_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Poly:
    """sum_{i in A} v_i T_i f."""
    _frame(frame, f)
    k = _k(frame, k)
    A = _set(frame, A)
    return _vsum(frame, A, lambda i, g: dunkl_T(frame, k, i, g), f)


def dunkl_dirac(frame: Frame, k, f: Poly) -> Poly:
    return dunkl_dirac_A(frame, k, full(frame), f)


def dunkl_CR_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Poly:
    """d0 + sum_{j not in A} v_j d_j + D_A."""
    _frame(frame, f)
    A = _set(frame, A)
    rest = [j for j in full(frame) if j not in A]
    return add(partial(0, f), _vsum(frame, rest, partial, f), dunkl_dirac_A(frame, k, A, f))


def dunkl_CR(frame: Frame, k, f: Poly) -> Poly:
    return dunkl_CR_A(frame, k, full(frame), f)


def dunkl_laplacian_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Poly:
    """sum_{i in A} T_i T_i f."""
    _frame(frame, f)
    k = _k(frame, k)
    out = Poly.zero(frame)
    for i in _set(frame, A):
        out = add(out, dunkl_T(frame, k, i, dunkl_T(frame, k, i, f)))
    return out


def dunkl_laplacian(frame: Frame, k, f: Poly) -> Poly:
    """d0^2 f + sum_i T_i T_i f."""
    return add(partial(0, partial(0, f)), dunkl_laplacian_A(frame, k, full(frame), f))


def casimir_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Poly:
    """(x_A D_A f - D_A(x_A f) - f) / 2; for empty A this is -f/2."""
    _frame(frame, f)
    k = _k(frame, k)
    A = _set(frame, A)
    if not A:
        return f * Fraction(-1, 2)
    a = imag_mul(A, dunkl_dirac_A(frame, k, A, f))
    b = dunkl_dirac_A(frame, k, A, imag_mul(A, f))
    return add(a, -b, -f) * Fraction(1, 2)


def casimir(frame: Frame, k, f: Poly) -> Poly:
    return casimir_A(frame, k, full(frame), f)


def gamma_tilde_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Poly:
    """Casimir applied after the reflection r_A."""
    A = _set(frame, A)
    return casimir_A(frame, k, A, reflect_set(A, f))


def s_tilde_A(k, A: Iterable[int], f: Poly) -> Poly:
    """sum_{i in A} k_i (f - r_i f)."""
    k = _k(f.frame, k)
    out = Poly.zero(f.frame)
    for i in _set(f.frame, A):
        if k[i - 1]:
            out = add(out, add(f, -reflect(i, f)) * k[i - 1])
    return out


def s_prime_A(k, A: Iterable[int], f: Poly) -> Poly:
    A = _set(f.frame, A)
    if not A:
        return Poly.zero(f.frame)
    return s_tilde_A(k, A, spherical_value_A(A, f))


def s_dprime_A(frame: Frame, k, A: Iterable[int], f: Poly) -> Poly:
    _frame(frame, f)
    A = _set(frame, A)
    if not A:
        return Poly.zero(frame)
    return s_prime_A(k, A, imag_mul(A, f))


def script_S_A(frame: Frame, k, A: Iterable[int], f: Poly) -> tuple[Poly, Poly, Poly]:
    return (casimir_A(frame, k, A, f), s_prime_A(k, A, f), s_dprime_A(frame, k, A, f))


def _blocks(frame: Frame, P) -> list[tuple[int, ...]]:
    blocks = [tuple(sorted(set(b))) for b in P]
    seen = sorted(i for b in blocks for i in b)
    if seen != list(full(frame)) or any(not b for b in blocks):
        raise ValueError(f"{P!r} is not a partition of 1..{frame.n}")
    return sorted(blocks, key=min)


def dunkl_CR_P(frame: Frame, k, P, f: Poly) -> Poly:
    """d0 + sum over blocks of D_{A_j}."""
    _frame(frame, f)
    out = partial(0, f)
    for b in _blocks(frame, P):
        out = add(out, dunkl_dirac_A(frame, k, b, f))
    return out


def script_S_P(frame: Frame, k, P, f: Poly) -> list[tuple[Poly, Poly, Poly]]:
    return [script_S_A(frame, k, b, f) for b in _blocks(frame, P)]


def integral_form_D(frame: Frame, k, f: Poly) -> Poly:
    """dbar f + 2 sum_i k_i v_i int_0^1 d_i f(x - 2 t x_i v_i) dt, integrated monomial-wise.

    The substitution replaces x_i by (1 - 2t) x_i in d_i f; the monomial with
    x_i^m picks up int_0^1 (1-2t)^m dt = (1 - (-1)^(m+1)) / (2(m+1)).
    """
    _frame(frame, f)
    k = _k(frame, k)
    out = cauchy_riemann(frame, f)
    for i in full(frame):
        if not k[i - 1]:
            continue
        g = partial(i, f)
        terms = {}
        for e, c in g.terms.items():
            m = e[i]
            w = Fraction(1 - (-1) ** (m + 1), 2 * (m + 1))
            if w:
                terms[e] = tuple(w * x for x in c)
        integrated = Poly(frame, terms)
        out = add(out, left_scale(frame.units[i - 1], integrated) * (2 * k[i - 1]))
    return out


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class OperatorReport:
    input_digest: str
    operator: str
    output: Poly

    @property
    def is_zero(self) -> bool:
        return self.output.is_zero()

    def to_dict(self) -> dict:
        return {
            "input_digest": self.input_digest,
            "operator": self.operator,
            "output": format_poly(self.output),
            "is_zero": self.is_zero,
        }


def digest(f: Poly) -> str:
    return hashlib.sha256(format_poly(f).encode()).hexdigest()[:16]


def report(name: str, f: Poly, out: Poly) -> OperatorReport:
    return OperatorReport(digest(f), name, out)
