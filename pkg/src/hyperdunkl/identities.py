"""Operator identities evaluated on concrete polynomials.

Each family returns ``{relation name: bool}`` for one input polynomial; a
relation is checked by computing both sides exactly and comparing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .algebra import Frame
from .operators import (
    casimir_A,
    cauchy_riemann,
    dunkl_CR,
    dunkl_dirac_A,
    dunkl_laplacian,
    dunkl_laplacian_A,
    full,
    gamma_A,
    gamma_spherical,
    gamma_tilde_A,
    s_dprime_A,
    s_prime_A,
    s_tilde_A,
    script_S_A,
    thetabar_mult,
)
from .polynomial import (
    Poly,
    add,
    euler_A,
    imag_mul,
    norm_poly,
    partial,
    real_mul,
    reflect_set,
)


def _ops(frame: Frame, k, A):
    A = tuple(sorted(set(A)))
    X = lambda g: imag_mul(A, g)
    D = lambda g: dunkl_dirac_A(frame, k, A, g)
    E = lambda g: euler_A(A, g)
    L = lambda g: dunkl_laplacian_A(frame, k, A, g)
    q = norm_poly(frame, A)
    Q = lambda g: real_mul(q, g)
    return A, X, D, E, L, Q


def osp_relations(frame: Frame, k, A: Iterable[int], f: Poly) -> dict[str, bool]:
    """The seven (anti)commutator relations for x_A and D_A, with gamma_A from k."""
    A, X, D, E, L, Q = _ops(frame, k, A)
    g = gamma_A(k, A)
    Xf, Df = X(f), D(f)
    return {
        "{x,x}=-2|x|^2": add(X(Xf), X(Xf)) == Q(f) * -2,
        "{D,D}=-2Lap": add(D(Df), D(Df)) == L(f) * -2,
        "[E,x]=x": add(E(Xf), -X(E(f))) == Xf,
        "{x,D}=-2(E+gamma)": add(X(Df), D(Xf)) == add(E(f), f * g) * -2,
        "[D,E]=D": add(D(E(f)), -E(Df)) == Df,
        "[Lap,x]=2D": add(L(Xf), -X(L(f))) == Df * 2,
        "[D,|x|^2]=2x": add(D(Q(f)), -Q(Df)) == Xf * 2,
    }


def casimir_relations(frame: Frame, k, A: Iterable[int], f: Poly) -> dict[str, bool]:
    """Casimir, reflected Casimir and reflection relations on the block A."""
    A, X, D, E, L, Q = _ops(frame, k, A)
    S = lambda g: casimir_A(frame, k, A, g)
    G = lambda g: gamma_tilde_A(frame, k, A, g)
    R = lambda g: reflect_set(A, g)
    Sf, Gf, Df, Xf = S(f), G(f), D(f), X(f)
    out = {
        "{S,D}=0": add(S(Df), D(Sf)).is_zero(),
        "{S,x}=0": add(S(Xf), X(Sf)).is_zero(),
        "[G,D]=0": add(G(Df), -D(Gf)).is_zero(),
        "[G,x]=0": add(G(Xf), -X(Gf)).is_zero(),
        "{D,r}=0": add(D(R(f)), R(Df)).is_zero(),
        "[S,r]=0": add(S(R(f)), -R(Sf)).is_zero(),
        "{x,r}=0": add(X(R(f)), R(Xf)).is_zero(),
        "[E,r]=0": add(E(R(f)), -R(E(f))).is_zero(),
    }
    if gamma_A(k, A) == Fraction(1, 2):
        out["S=xD+E"] = Sf == add(X(Df), E(f))
    return out


def disjoint_relations(frame: Frame, k, A: Iterable[int], B: Iterable[int], f: Poly) -> dict[str, bool]:
    """The eleven relations between the A-operators and x_B, D_B, r_B for disjoint A, B."""
    A = tuple(sorted(set(A)))
    B = tuple(sorted(set(B)))
    if set(A) & set(B):
        raise ValueError("A and B must be disjoint")
    XA = lambda g: imag_mul(A, g)
    XB = lambda g: imag_mul(B, g)
    DA = lambda g: dunkl_dirac_A(frame, k, A, g)
    DB = lambda g: dunkl_dirac_A(frame, k, B, g)
    EA = lambda g: euler_A(A, g)
    SA = lambda g: casimir_A(frame, k, A, g)
    St = lambda g: s_tilde_A(k, A, g)
    StR = lambda g: s_tilde_A(k, A, reflect_set(A, g))
    Sp = lambda g: s_prime_A(k, A, g)
    Spp = lambda g: s_dprime_A(frame, k, A, g)
    RB = lambda g: reflect_set(B, g)

    def comm(P, Q, sign=-1):
        return add(P(Q(f)), Q(P(f)) * sign).is_zero()

    triple_f = script_S_A(frame, k, A, RB(f))
    triple_r = tuple(RB(p) for p in script_S_A(frame, k, A, f))
    return {
        "{xA,xB}=0": comm(XA, XB, 1),
        "[EA,xB]=0": comm(EA, XB),
        "{DA,xB}=0": comm(DA, XB, 1),
        "[SA,xB]=0": comm(SA, XB),
        "{DA,DB}=0": comm(DA, DB, 1),
        "[SA,DB]=0": comm(SA, DB),
        "[S~A,xB]=0": comm(St, XB),
        "[S~A rA,xB]=0": comm(StR, XB),
        "[S'A,xB]=0": comm(Sp, XB),
        "{S''A,xB}=0": comm(Spp, XB, 1),
        "[SA,rB]=0": triple_f == triple_r,
    }


def difference_multiplied(frame: Frame, f: Poly) -> bool:
    """x (dbar f) - thetabar_mult(f) == -Gamma f."""
    lhs = add(imag_mul(full(frame), cauchy_riemann(frame, f)), -thetabar_mult(frame, f))
    return lhs == -gamma_spherical(frame, f)


def factorization(frame: Frame, k, f: Poly) -> bool:
    """D (d0 - D_imag) f equals the Dunkl-Laplace operator."""
    inner = add(partial(0, f), -dunkl_dirac_A(frame, k, full(frame), f))
    return dunkl_CR(frame, k, inner) == dunkl_laplacian(frame, k, f)


def dbar_spherical_derivative(frame: Frame, f: Poly) -> bool:
    """x (dbar f) == (1 - n) (f - r f) / 2."""
    n = frame.n
    lhs = imag_mul(full(frame), cauchy_riemann(frame, f))
    rhs = add(f, -reflect_set(full(frame), f)) * Fraction(1 - n, 2)
    return lhs == rhs
