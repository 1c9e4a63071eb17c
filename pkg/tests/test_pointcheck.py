import random
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from hyperdunkl.algebra import make_algebra, mul
from hyperdunkl.errors import PreconditionError
from hyperdunkl.polynomial import Poly, add, evaluate, parse_element, parse_poly, right_scale, slice_power_poly
from hyperdunkl.pointcheck import (
    RationalSpherePoint, a_slice_decompose_at, block_point, check_difference_at, constructed_point,
    dbar_J, nested, off_axis_point, rational_sphere_point, rational_sqrt, reconstruct_p_slice_at,
    restrict_to_slice, stereographic,
)
from hyperdunkl.samples import fa_member, kernel_sp_sample, slice_regular_poly
from hyperdunkl.spaces import PartitionSpec, a_default_multiplicities, default_multiplicities

H = make_algebra("H")[1]
CL4 = make_algebra("Cl(0,4)")[1]
O = make_algebra("O")[1]
f1 = parse_poly("x0 + i*x1", H)
f2 = parse_poly("x0 + j*x2 + k*x3", H)


def test_sphere_point_examples():
    assert stereographic([F(1, 2)]) == (F(3, 5), F(4, 5))
    assert rational_sphere_point(1, 3).coords in ((1,), (-1,))
    with pytest.raises(ValueError):
        RationalSpherePoint((F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        rational_sphere_point(0, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6))
def test_sphere_points_are_exact_units_and_seeded(dim, seed):
    p = rational_sphere_point(dim, seed)
    assert p.dim == dim
    assert sum(c * c for c in p.coords) == 1
    assert rational_sphere_point(dim, seed) == p


@settings(max_examples=80, deadline=None)
@given(st.fractions(min_value=0, max_value=50, max_denominator=30))
def test_rational_sqrt(x):
    r = rational_sqrt(x * x)
    assert r == x
    s = rational_sqrt(x)
    assert s is None or s * s == x
    assert rational_sqrt(F(-1)) is None


# -- difference formula at points --------------------------------------------------

@pytest.mark.parametrize("frame", [H, CL4, O], ids=["H", "Cl(0,4)", "O"])
def test_difference_formula_pointwise(frame):
    rng = random.Random(1)
    from hyperdunkl.polynomial import random_poly
    polys = [random_poly(frame, rng, max_degree=3) for _ in range(3)]
    polys.append(slice_regular_poly(frame, rng, max_degree=3))
    for f in polys:
        for _ in range(5):
            assert check_difference_at(frame, f, off_axis_point(frame, rng))


def test_difference_examples():
    a = parse_element("1 + k", H)
    x1a = Poly.monomial(H, (0, 1, 0, 0), a)
    assert check_difference_at(H, x1a, (0, 1, 0, 0))
    assert check_difference_at(H, Poly.constant(H, a), (1, 2, 3, 4))
    with pytest.raises(PreconditionError):
        check_difference_at(H, x1a, (3, 0, 0, 0))


# -- slice restriction --------------------------------------------------------------

def test_restriction_linear_example():
    J = RationalSpherePoint((F(3, 5), F(4, 5)))
    r = restrict_to_slice(H, f2, (2, 3), J)
    assert r.slot == 2
    assert r.poly == parse_poly("x0 + (3/5*j + 4/5*k)*x2", H)
    assert dbar_J(H, r).is_zero()
    g = restrict_to_slice(H, parse_poly("j*x2", H), (2, 3), J)
    # J d_beta (3/5 j beta) = (3/5 j + 4/5 k)(3/5 j) = -9/25 + (12/25) kj = -9/25 - 12/25 i
    assert dbar_J(H, g) == Poly.constant(H, parse_element("-9/25 - 12/25*i", H))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_restriction_agrees_with_evaluation(seed):
    rng = random.Random(seed)
    from hyperdunkl.polynomial import random_poly
    f = random_poly(CL4, rng, max_degree=4)
    A = (2, 3, 4)
    J = rational_sphere_point(3, rng)
    r = restrict_to_slice(CL4, f, A, J)
    x0, x1, beta = (F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3))
    reduced = [x0, x1, beta, 0, 0]
    full_pt = [x0, x1] + [beta * c for c in J.coords]
    assert evaluate(r.poly, reduced) == evaluate(f, full_pt)


def test_restriction_rejects_bad_directions():
    with pytest.raises(ValueError):
        restrict_to_slice(H, f2, (2, 3), RationalSpherePoint((F(1),)))
    with pytest.raises(ValueError):
        restrict_to_slice(H, f2, (), RationalSpherePoint((F(1),)))


@pytest.mark.parametrize("spec,A", [("H", (2, 3)), ("Cl(0,4)", (3, 4)), ("O", (3, 4, 5, 6, 7))])
def test_members_restrict_to_monogenic_slices(spec, A):
    _, frame = make_algebra(spec)
    rng = random.Random(2)
    for _ in range(3):
        f = fa_member(frame, A, rng, max_power=2 if spec == "O" else 3)
        for _ in range(4):
            J = rational_sphere_point(len(A), rng)
            assert dbar_J(frame, restrict_to_slice(frame, f, A, J)).is_zero()


# -- reconstruction -----------------------------------------------------------------

def test_nested_products_and_signs():
    rng = random.Random(3)
    blocks = [(1, 2), (3, 4, 5), (6, 7)]
    pt, betas, dirs = constructed_point(O, blocks, rng)
    Js = []
    for b, d in zip(blocks, dirs):
        coords = [F(0)] * 8
        for i, c in zip(b, d.coords):
            coords[i] = c
        Js.append(O.vector(coords))
    from hyperdunkl.polynomial import random_element
    a = random_element(O.algebra, rng)
    base = nested(Js, a)
    assert base == mul(Js[0], mul(Js[1], mul(Js[2], a)))
    for perm in permutations(range(3)):
        inversions = sum(1 for s in range(3) for t in range(s + 1, 3) if perm[s] > perm[t])
        assert nested([Js[p] for p in perm], a) == base * (-1) ** inversions


def test_block_point_norms():
    rng = random.Random(4)
    blocks = [(1,), (2, 3)]
    pt, betas, dirs = constructed_point(H, blocks, rng)
    for b, beta in zip(blocks, betas):
        assert sum(pt[i] ** 2 for i in b) == beta ** 2
    assert block_point(H, blocks, pt[0], betas, dirs) == pt


def test_reconstruct_slice_power():
    rng = random.Random(5)
    a = parse_element("2 - i + k", H)
    f = right_scale(slice_power_poly(H, 3), a)
    for _ in range(10):
        pt, _, _ = constructed_point(H, [(1, 2, 3)], rng)
        assert reconstruct_p_slice_at(H, [(1, 2, 3)], f, pt, rng=rng)


def test_reconstruct_linear_example_and_refusal():
    rng = random.Random(6)
    P = PartitionSpec.make(3, [(1,), (2, 3)])
    for _ in range(5):
        pt, _, _ = constructed_point(H, P.blocks, rng)
        assert reconstruct_p_slice_at(H, P, add(f1, f2), pt, rng=rng)
    with pytest.raises(PreconditionError):
        reconstruct_p_slice_at(H, P, parse_poly("x1 x2", H), pt)


@pytest.mark.parametrize("spec,blocks", [
    ("H", [(1, 2, 3)]), ("H", [(1,), (2, 3)]), ("Cl(0,4)", [(1, 2), (3, 4)]), ("O", [(1, 2, 3), (4, 5, 6, 7)]),
])
def test_reconstruct_converse_samples(spec, blocks):
    _, frame = make_algebra(spec)
    rng = random.Random(7)
    k = default_multiplicities(blocks, frame.n)
    for _ in range(3 if spec != "O" else 1):
        f = kernel_sp_sample(frame, blocks, rng, max_degree=2 if spec != "O" else 1)
        for _ in range(3):
            pt, _, _ = constructed_point(frame, blocks, rng)
            assert reconstruct_p_slice_at(frame, blocks, f, pt, k=k, rng=rng)


def test_reconstruct_needs_rational_block_norm():
    f = slice_power_poly(H, 2)
    with pytest.raises(PreconditionError):
        reconstruct_p_slice_at(H, [(1, 2, 3)], f, (0, 1, 1, 0))


def test_a_slice_decomposition_at_points():
    rng = random.Random(8)
    A = (2, 3)
    k = a_default_multiplicities(H, A)
    for _ in range(4):
        f = fa_member(H, A, rng)
        pt, betas, dirs = constructed_point(H, [A, (1,)], rng)
        F0, F1 = a_slice_decompose_at(H, k, A, f, pt, rng)
        J = H.vector([0, 0] + list(dirs[0].coords))
        assert F0 + mul(J, F1) == evaluate(f, pt)
    with pytest.raises(PreconditionError):
        a_slice_decompose_at(H, k, A, parse_poly("j*x2", H), pt)
