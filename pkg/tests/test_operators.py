import random
from fractions import Fraction as F

import pytest

from hyperdunkl.algebra import make_algebra
from hyperdunkl.identities import (
    casimir_relations, dbar_spherical_derivative, difference_multiplied, disjoint_relations,
    factorization, osp_relations,
)
from hyperdunkl.operators import (
    casimir, casimir_A, cauchy_riemann, conj_cauchy_riemann, dunkl_CR, dunkl_CR_A, dunkl_CR_P,
    dunkl_dirac_A, dunkl_laplacian, dunkl_T, full, gamma_A, gamma_spherical, gamma_tilde_A,
    integral_form_D, laplacian, report, s_dprime_A, s_prime_A, s_tilde_A, script_S_A, script_S_P,
    theta_mult, thetabar_mult,
)
from hyperdunkl.polynomial import (
    Poly, add, euler, evaluate, imag_mul, left_scale, parse_element, parse_poly, random_poly,
    reflect, slice_power_poly,
)
from hyperdunkl.samples import nonslice_poly, slice_poly, slice_regular_poly
from hyperdunkl.spaces import a_default_multiplicities, default_multiplicities
from oracles import dual_eval, dunkl_T_at, lmul

H = make_algebra("H")[1]
CL4 = make_algebra("Cl(0,4)")[1]
O = make_algebra("O")[1]
# (frame, max degree) for the identity sweeps
SWEEP = [(H, 4), (CL4, 4), (O, 2)]
SWEEP_IDS = ["H", "Cl(0,4)", "O"]


def kfull(frame):
    """Multiplicities with kappa = (1 - n)/2."""
    return default_multiplicities([full(frame)], frame.n)


def randk(frame, rng):
    return tuple(F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(frame.n))


def suite(frame, deg, seed, count=4):
    rng = random.Random(seed)
    return [random_poly(frame, rng, max_degree=deg, terms=5) for _ in range(count)]


def zero(frame):
    return Poly.zero(frame)


# -- pointwise oracle for T_i --------------------------------------------------------

@pytest.mark.parametrize("frame", [H, CL4, O], ids=SWEEP_IDS)
def test_dunkl_T_matches_pointwise_difference_quotient(frame):
    rng = random.Random(5)
    for _ in range(4):
        f = random_poly(frame, rng, max_degree=4)
        k = randk(frame, rng)
        pt = [F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(frame.n + 1)]
        for i in range(1, frame.n + 1):
            assert evaluate(dunkl_T(frame, k, i, f), pt).coords == dunkl_T_at(f, k, i, pt)


def test_cauchy_riemann_matches_pointwise_oracle():
    rng = random.Random(8)
    table = H.algebra
    for _ in range(5):
        f = random_poly(H, rng)
        pt = [F(rng.randint(-3, 3), 2) for _ in range(4)]
        total = list(dual_eval(f, pt, 0)[1])
        for i, u in enumerate(H.units, start=1):
            for t, x in enumerate(lmul(table, u, dual_eval(f, pt, i)[1])):
                total[t] += x
        assert evaluate(cauchy_riemann(H, f), pt).coords == tuple(total)


# -- worked examples ---------------------------------------------------------------

def test_dbar_of_slice_powers():
    for frame in (H, CL4):
        n = frame.n
        assert cauchy_riemann(frame, slice_power_poly(frame, 1)) == Poly.constant(frame, 1 - n)
        assert cauchy_riemann(frame, slice_power_poly(frame, 2)) == Poly.variable(frame, 0) * (2 * (1 - n))


def test_laplace_and_conjugate_operator():
    assert laplacian(H, parse_poly("x0^2", H)) == Poly.constant(H, 2)
    f = random_poly(H, random.Random(2))
    assert conj_cauchy_riemann(H, cauchy_riemann(H, f)) == laplacian(H, f)
    assert cauchy_riemann(H, conj_cauchy_riemann(H, f)) == laplacian(H, f)


def test_gamma_spherical_examples():
    a = parse_element("1 + j", H)
    assert gamma_spherical(H, Poly.constant(H, a)).is_zero()
    assert gamma_spherical(H, parse_poly("(1 + j)*x0^3", H)).is_zero()
    f = parse_poly("(1 + j)*x1", H)
    i, j, k = (H.unit(m) for m in (1, 2, 3))
    from hyperdunkl.algebra import mul
    expected = add(
        Poly.monomial(H, (0, 0, 1, 0), mul(i, mul(j, a))),
        Poly.monomial(H, (0, 0, 0, 1), mul(i, mul(k, a))),
    )
    assert gamma_spherical(H, f) == expected


def test_thetabar_examples():
    for m in range(6):
        assert thetabar_mult(H, slice_power_poly(H, m)).is_zero()
    x1 = parse_poly("(1 + k)*x1", H)
    assert thetabar_mult(H, x1) == -x1
    assert thetabar_mult(H, Poly.constant(H, 3)).is_zero()
    assert theta_mult(H, x1) == x1


def test_dunkl_T_examples():
    k = (F(-1, 3), F(1, 5), F(2))
    a = parse_element("1 - 2*k", H)
    for i in (1, 2, 3):
        xi = Poly.monomial(H, [1 if t == i else 0 for t in range(4)], a)
        assert dunkl_T(H, k, i, xi) == Poly.constant(H, a) * (1 + 2 * k[i - 1])
        sq = Poly.monomial(H, [2 if t == i else 0 for t in range(4)], a)
        assert dunkl_T(H, k, i, sq) == xi * 2
        other = Poly.monomial(H, [1 if t == (i % 3) + 1 else 0 for t in range(4)], a)
        assert dunkl_T(H, k, i, other).is_zero()


def test_linear_example_dirac():
    f2 = parse_poly("x0 + j*x2 + k*x3", H)
    k = (F(0), F(-1, 4), F(-1, 4))
    assert dunkl_CR_A(H, k, (2, 3), f2).is_zero()
    g = parse_poly("j*x2", H)
    assert dunkl_CR_A(H, k, (2, 3), g) == Poly.constant(H, F(-1, 2))


def test_zero_multiplicity_reductions():
    rng = random.Random(4)
    k0 = (0, 0, 0)
    for _ in range(5):
        f = random_poly(H, rng)
        assert dunkl_CR(H, k0, f) == cauchy_riemann(H, f)
        assert dunkl_CR_A(H, randk(H, rng), (), f) == cauchy_riemann(H, f)
        assert dunkl_CR_P(H, k0, [(1,), (2,), (3,)], f) == cauchy_riemann(H, f)
        assert dunkl_laplacian(H, k0, f) == laplacian(H, f)
        k = randk(H, rng)
        assert dunkl_CR_P(H, k, [(1, 2, 3)], f) == dunkl_CR_A(H, k, (1, 2, 3), f)


def test_singleton_values():
    rng = random.Random(6)
    k = randk(CL4, rng)
    for _ in range(4):
        f = random_poly(CL4, rng)
        for i in range(1, 5):
            assert casimir_A(CL4, k, (i,), f) == reflect(i, f) * k[i - 1]
            assert gamma_tilde_A(CL4, k, (i,), f) == f * k[i - 1]
            assert s_prime_A(k, (i,), f).is_zero()
            assert s_dprime_A(CL4, k, (i,), f).is_zero()
        assert gamma_tilde_A(CL4, k, (), f) == f * F(-1, 2)
        assert casimir_A(CL4, k, (), f) == f * F(-1, 2)


def test_frozen_casimir_value():
    # default multiplicities on one block of three: k_i = -1/3
    k = default_multiplicities([(1, 2, 3)], 3)
    out = casimir_A(H, k, (1, 2, 3), parse_poly("i*x1", H))
    assert out == parse_poly("(2/3*i)*x1 + (-1/3*j)*x2 + (-1/3*k)*x3", H)


def test_casimir_on_constants_and_euler_form():
    for frame in (H, CL4):
        k = kfull(frame)
        assert casimir(frame, k, Poly.constant(frame, 1)).is_zero()
        for f in suite(frame, 4, 13, 3):
            xD = imag_mul(full(frame), dunkl_dirac_A(frame, k, full(frame), f))
            assert casimir(frame, k, f) == add(xD, euler(f))


def test_s_operators_on_slice_power():
    k = kfull(H)
    f = slice_power_poly(H, 3)
    assert all(p.is_zero() for p in script_S_A(H, k, full(H), f))
    assert gamma_tilde_A(H, k, full(H), f).is_zero()
    a = parse_element("2 + i", H)
    x1a = Poly.monomial(H, (0, 1, 0, 0), a)
    assert s_tilde_A(k, full(H), x1a) == x1a * (2 * k[0])


def test_script_S_P_linear_example():
    f2 = parse_poly("x0 + j*x2 + k*x3", H)
    P = [(1,), (2, 3)]
    k = default_multiplicities(P, 3)
    assert all(p.is_zero() for trip in script_S_P(H, k, P, f2) for p in trip)


def test_dunkl_laplacian_examples():
    k = (F(1, 3), F(-1, 2), F(2))
    a = parse_element("i - k", H)
    f = Poly.monomial(H, (0, 2, 0, 0), a)
    assert dunkl_laplacian(H, k, f) == Poly.constant(H, a) * (2 * (1 + 2 * k[0]))
    kk = kfull(H)
    for m in range(6):
        assert dunkl_laplacian(H, kk, slice_power_poly(H, m)).is_zero()


@pytest.mark.parametrize("frame,deg", SWEEP, ids=SWEEP_IDS)
def test_integral_form_equals_dunkl_cr(frame, deg):
    rng = random.Random(21)
    for f in suite(frame, deg, 22, 6):
        k = randk(frame, rng)
        assert integral_form_D(frame, k, f) == dunkl_CR(frame, k, f)
    assert integral_form_D(frame, randk(frame, rng), Poly.constant(frame, 5)).is_zero()


def test_integral_form_on_linear_monomial():
    k = (F(3, 7), 0, 0)
    f = parse_poly("(1 + j)*x1", H)
    expected = add(Poly.zero(H), left_scale(H.unit(1), parse_poly("1 + j", H)) * (1 + 2 * k[0]))
    assert integral_form_D(H, k, f) == expected


# -- identity sweeps ---------------------------------------------------------------

@pytest.mark.parametrize("frame,deg", SWEEP, ids=SWEEP_IDS)
def test_osp_relations_full_block(frame, deg):
    k = kfull(frame)
    assert gamma_A(k, full(frame)) == F(1, 2)
    for f in suite(frame, deg, 31):
        rel = osp_relations(frame, k, full(frame), f)
        assert all(rel.values()), rel


@pytest.mark.parametrize("frame,deg", SWEEP, ids=SWEEP_IDS)
def test_osp_relations_intermediate(frame, deg):
    n = frame.n
    for A in [(1,), (2, 3), tuple(range(1, n))]:
        k = a_default_multiplicities(frame, A)
        assert gamma_A(k, A) == F(1, 2)
        for f in suite(frame, deg, 32, 2):
            rel = osp_relations(frame, k, A, f)
            assert all(rel.values()), (A, rel)


@pytest.mark.parametrize("frame,deg", SWEEP, ids=SWEEP_IDS)
def test_casimir_relations(frame, deg):
    k = kfull(frame)
    for f in suite(frame, deg, 33, 3):
        rel = casimir_relations(frame, k, full(frame), f)
        assert rel.pop("S=xD+E")
        assert all(rel.values()), rel


def test_casimir_relations_hold_for_arbitrary_multiplicities():
    rng = random.Random(34)
    for f in suite(H, 4, 35, 3):
        rel = casimir_relations(H, randk(H, rng), (1, 3), f)
        assert all(rel.values()), rel


def test_reflection_commutes_with_casimir_not_anticommutes():
    k = kfull(H)
    f = parse_poly("x1 x2 + i*x3 + j", H)
    S = casimir(H, k, f)
    from hyperdunkl.polynomial import reflect_set
    rS = reflect_set(full(H), S)
    Sr = casimir(H, k, reflect_set(full(H), f))
    assert Sr == rS
    assert add(Sr, rS) != zero(H)


@pytest.mark.parametrize("frame,deg", SWEEP, ids=SWEEP_IDS)
@pytest.mark.parametrize("A,B", [((1,), (2,)), ((1,), (2, 3))])
def test_disjoint_relations(frame, deg, A, B):
    rng = random.Random(36)
    for f in suite(frame, deg, 37, 2):
        rel = disjoint_relations(frame, randk(frame, rng), A, B, f)
        assert len(rel) == 11
        assert all(rel.values()), rel


def test_disjoint_relations_reject_overlap():
    with pytest.raises(ValueError):
        disjoint_relations(H, (0, 0, 0), (1, 2), (2,), Poly.zero(H))


@pytest.mark.parametrize("frame,deg", SWEEP, ids=SWEEP_IDS)
def test_difference_and_factorization(frame, deg):
    rng = random.Random(38)
    for f in suite(frame, deg, 39, 3):
        assert difference_multiplied(frame, f)
        assert factorization(frame, randk(frame, rng), f)


@pytest.mark.parametrize("frame", [H, CL4], ids=SWEEP_IDS[:2])
def test_dbar_is_spherical_derivative_on_slice_regular_polys(frame):
    rng = random.Random(40)
    for _ in range(4):
        assert dbar_spherical_derivative(frame, slice_regular_poly(frame, rng))
    assert not dbar_spherical_derivative(frame, parse_poly("x0 x1", frame))


@pytest.mark.parametrize("frame,deg", SWEEP[:2], ids=SWEEP_IDS[:2])
def test_casimir_and_gamma_tilde_share_kernel(frame, deg):
    rng = random.Random(41)
    k = kfull(frame)
    polys = [slice_poly(frame, rng) for _ in range(3)] + [nonslice_poly(frame, rng) for _ in range(3)]
    for f in polys:
        a = casimir(frame, k, f).is_zero()
        b = gamma_tilde_A(frame, k, full(frame), f).is_zero()
        assert a == b
    assert sum(casimir(frame, k, f).is_zero() for f in polys) == 3


def test_slice_polys_in_every_block_kernel():
    rng = random.Random(42)
    for _ in range(3):
        f = slice_poly(H, rng)
        for A in [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]:
            k = default_multiplicities([A] + [(i,) for i in range(1, 4) if i not in A], 3)
            assert all(p.is_zero() for p in script_S_A(H, k, A, f)), A


def test_report_shape():
    r = report("dbar", parse_poly("x0", H), Poly.zero(H))
    assert r.is_zero
    d = r.to_dict()
    assert d["operator"] == "dbar" and d["is_zero"] is True


def test_multiplicity_length_checked():
    with pytest.raises(ValueError):
        dunkl_T(H, (0, 0), 1, Poly.zero(H))
    with pytest.raises(IndexError):
        dunkl_dirac_A(H, (0, 0, 0), (4,), Poly.zero(H))
