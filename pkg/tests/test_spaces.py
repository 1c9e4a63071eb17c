import random
from fractions import Fraction as F
from itertools import combinations, permutations

import pytest

from hyperdunkl.algebra import make_algebra
from hyperdunkl.errors import PreconditionError
from hyperdunkl.operators import dunkl_laplacian, full, script_S_A
from hyperdunkl.polynomial import (
    Poly, add, imag_mul, imaginary_poly, norm_poly, parse_element, parse_poly,
    right_scale, slice_power_poly, spherical_value_A,
)
from hyperdunkl.samples import (
    a_slice_form, fa_member, fueter_variable, generic_suite, nonslice_poly, slice_poly,
    slice_regular_poly,
)
from hyperdunkl.spaces import (
    PartitionSpec, a_default_multiplicities, alternate_multiplicities, census, default_multiplicities, enumerate_partitions,
    format_partition, imag_power_times, is_admissible, is_slice_poly, is_slice_regular_poly,
    membership_A, membership_AB, membership_P, multiplicity_independence, p_slice_components,
    parse_partition, partition_from_fan, permuted_equivalence, separating_witness,
    slice_decompose, slice_regular_coefficients, x_block, xxc_poly,
)

H = make_algebra("H")[1]
CL4 = make_algebra("Cl(0,4)")[1]
O = make_algebra("O")[1]
f1 = parse_poly("x0 + i*x1", H)
f2 = parse_poly("x0 + j*x2 + k*x3", H)
K_LIN = (F(0), F(-1, 4), F(-1, 4))


def bell_oracle(n):
    """Bell numbers from the recurrence B(m+1) = sum C(m, j) B(j)."""
    from math import comb
    b = [1]
    for m in range(n):
        b.append(sum(comb(m, j) * b[j] for j in range(m + 1)))
    return b[n]


# -- partitions and admissibility ---------------------------------------------------

def test_default_multiplicities_examples():
    assert default_multiplicities([(1, 2, 3)]) == (F(-1, 3),) * 3
    assert default_multiplicities([(1,)]) == (F(0),)
    assert not is_admissible([(1, 2, 3)], (F(-1), F(0), F(0)))
    assert is_admissible([(1,), (2, 3)], K_LIN)
    assert is_admissible([(1,), (2, 3)], (0, 0, F(-1, 2)))
    assert not is_admissible([(1, 2)], (F(1, 4), F(-3, 4)))


@pytest.mark.parametrize("n", range(1, 7))
def test_default_and_alternate_are_admissible_everywhere(n):
    for P in enumerate_partitions(n):
        assert is_admissible(P, default_multiplicities(P, n))
        assert is_admissible(P, alternate_multiplicities(P, n))


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_counts_and_uniqueness(n):
    parts = list(enumerate_partitions(n))
    assert len(parts) == bell_oracle(n)
    assert len({frozenset(p) for p in parts}) == len(parts)


@pytest.mark.parametrize("n,row", [
    (1, (1, 1, 1)), (2, (2, 2, 2)), (3, (5, 3, 5)), (4, (15, 5, 12)),
    (5, (52, 7, 27)), (6, (203, 11, 58)), (7, (877, 15, 121)),
])
def test_census_rows(n, row):
    assert census(n) == row


def test_partition_text_round_trip():
    P = parse_partition("{3|1,2}")
    assert P == ((1, 2), (3,))
    assert format_partition(P) == "{1,2|3}"
    for bad in ["1,2|3", "{1,2|2}", "{1,a}", "{}"]:
        with pytest.raises(ValueError):
            parse_partition(bad)


def test_partition_from_fan():
    assert partition_from_fan((0, 3)) == ((1, 2, 3),)
    assert partition_from_fan((1, 3, 4)) == ((1,), (2, 3), (4,))
    assert partition_from_fan((2, 4)) == ((1,), (2,), (3, 4))
    with pytest.raises(ValueError):
        partition_from_fan((2, 2))


# -- sliceness ----------------------------------------------------------------------

def test_slice_poly_examples():
    a, b = parse_element("1 + i", H), parse_element("j - k", H)
    x = imaginary_poly(H)
    x3 = imag_mul(full(H), imag_mul(full(H), x))
    f = add(imag_power_times(H, 2, 1, a), right_scale(x3, b))
    assert is_slice_poly(H, f)
    assert is_slice_poly(H, Poly.constant(H, a))
    v = is_slice_poly(H, Poly.monomial(H, (0, 1, 0, 0), a))
    assert not v and not v.witnesses["casimir"].is_zero()


def test_slice_regular_examples():
    coeffs = [parse_element(t, H) for t in ("1", "i", "0", "2*j - k", "3")]
    f = add(Poly.zero(H), *[right_scale(slice_power_poly(H, j), a) for j, a in enumerate(coeffs)])
    assert is_slice_regular_poly(H, f)
    assert slice_regular_coefficients(H, f) == coeffs
    xa = right_scale(imaginary_poly(H), parse_element("k", H))
    assert is_slice_poly(H, xa) and not is_slice_regular_poly(H, xa)
    assert is_slice_regular_poly(H, Poly.zero(H))
    with pytest.raises(PreconditionError):
        slice_regular_coefficients(H, xa)


@pytest.mark.parametrize("frame", [H, CL4, O], ids=["H", "Cl(0,4)", "O"])
def test_slice_regular_coefficient_round_trip(frame):
    rng = random.Random(2)
    for _ in range(15 if frame is not O else 4):
        f = slice_regular_poly(frame, rng, max_degree=5 if frame is not O else 3)
        cs = slice_regular_coefficients(frame, f)
        back = add(Poly.zero(frame), *[right_scale(slice_power_poly(frame, j), a) for j, a in enumerate(cs)])
        assert back == f
        assert dunkl_laplacian(frame, default_multiplicities([full(frame)]), f).is_zero()


def test_slice_decompose_examples():
    a = parse_element("2 - j", H)
    dec = slice_decompose(H, imag_power_times(H, 0, 2, a))
    assert dec.terms == [(0, 2, a)]
    assert imag_power_times(H, 0, 2, a) == right_scale(-norm_poly(H), a)
    assert slice_decompose(H, Poly.monomial(H, (1, 0, 0, 0), a)).terms == [(1, 0, a)]
    dec = slice_decompose(H, right_scale(slice_power_poly(H, 2), a))
    assert sorted(dec.terms) == sorted([(2, 0, a), (1, 1, a * 2), (0, 2, a)])
    assert dec.xxc_expansion() == {(2, 0): a}
    with pytest.raises(PreconditionError):
        slice_decompose(H, parse_poly("x1", H))


@pytest.mark.parametrize("frame", [H, CL4], ids=["H", "Cl(0,4)"])
def test_slice_decompose_round_trip(frame):
    rng = random.Random(3)
    for _ in range(8):
        f = slice_poly(frame, rng)
        dec = slice_decompose(frame, f)
        assert dec.rebuild() == f
        rebuilt = add(Poly.zero(frame), *[xxc_poly(frame, al, be, c) for (al, be), c in dec.xxc_expansion().items()])
        assert rebuilt == f


def test_nonslice_samples_are_rejected():
    rng = random.Random(4)
    for _ in range(8):
        assert not is_slice_poly(H, nonslice_poly(H, rng))


def test_slice_polys_lie_in_every_script_S_kernel():
    rng = random.Random(5)
    subsets = [A for r in range(1, 4) for A in combinations((1, 2, 3), r)]
    for _ in range(4):
        f = slice_poly(H, rng)
        for A in subsets:
            k = default_multiplicities([A] + [(i,) for i in (1, 2, 3) if i not in A], 3)
            assert all(p.is_zero() for p in script_S_A(H, k, A, f))


def test_script_S_kernel_nesting():
    rng = random.Random(6)
    for frame in (H, CL4):
        n = frame.n
        for A in [(1, 2), (1, 2, 3), tuple(range(1, n + 1))]:
            kA = default_multiplicities([A] + [(i,) for i in range(1, n + 1) if i not in A], n)
            for _ in range(4):
                f = a_slice_form(frame, A, rng)
                assert all(p.is_zero() for p in script_S_A(frame, kA, A, f))
                for r in range(1, len(A)):
                    for B in combinations(A, r):
                        kB = a_default_multiplicities(frame, B)
                        assert all(p.is_zero() for p in script_S_A(frame, kB, B, f)), (A, B)


def test_singleton_script_S_needs_zero_multiplicity():
    f = parse_poly("x0 + j*x2 + k*x3", H)
    assert not script_S_A(H, K_LIN, (2,), f)[0].is_zero()
    assert script_S_A(H, (0, 0, 0), (2,), f)[0].is_zero()


# -- memberships ----------------------------------------------------------------------

def test_linear_example_memberships():
    assert membership_A(H, K_LIN, (2, 3), f1)
    assert membership_A(H, K_LIN, (2, 3), f2)
    g = parse_poly("j*x2", H)
    v = membership_A(H, K_LIN, (2, 3), g)
    assert not v
    assert v.witnesses["D[2,3]"] == Poly.constant(H, -(1 + 2 * K_LIN[1]))
    with pytest.raises(PreconditionError):
        membership_A(H, (0, 0, 0), (2, 3), f2)


def test_singleton_membership_is_monogenicity():
    fueter = parse_poly("i*x1 - j*x2", H)
    for i in (1, 2, 3):
        assert membership_A(H, (0, 0, 0), (i,), fueter)
    assert not membership_A(H, (0, 0, 0), (1,), parse_poly("i*x0 + x1", H))


def test_membership_AB_separate_multiplicities():
    kA = default_multiplicities([(2, 3), (1,)], 3)
    kB = default_multiplicities([(1, 2, 3)], 3)
    f = slice_power_poly(H, 2)
    assert membership_AB(H, (kA, kB), (2, 3), (1, 2, 3), slice_power_poly(H, 2, (2, 3))) is not None
    assert membership_AB(H, (kB, kB), (1, 2, 3), (1, 2, 3), f)


@pytest.mark.parametrize("frame", [H, CL4, O], ids=["H", "Cl(0,4)", "O"])
def test_restrictions_to_subspaces_are_members(frame):
    rng = random.Random(7)
    n = frame.n
    for A in [(1,), (1, 2), tuple(range(2, n + 1))]:
        for _ in range(3 if frame is not O else 1):
            assert membership_A(frame, None, A, fa_member(frame, A, rng, max_power=3 if frame is not O else 2))
        # slice regular in M_A alone, and monogenic in the complement alone
        assert membership_A(frame, None, A, slice_power_poly(frame, 3, A))
        rest = [j for j in range(1, n + 1) if j not in A]
        for j in rest:
            assert membership_A(frame, None, A, fueter_variable(frame, j))


def test_p_membership_linear_example():
    P = PartitionSpec.make(3, [(1,), (2, 3)])
    assert P.admissible and P.k == K_LIN
    assert membership_P(H, P, f1) and membership_P(H, P, f2)
    assert not membership_P(H, P, parse_poly("j*x2", H))
    with pytest.raises(PreconditionError):
        membership_P(H, PartitionSpec(3, ((1,), (2, 3)), (0, 0, 0)), f1)


def test_multiplicity_independence_examples():
    rng = random.Random(8)
    suite = [slice_regular_poly(H, rng) for _ in range(4)] + [nonslice_poly(H, rng) for _ in range(3)]
    suite += [f1, f2, slice_power_poly(H, 2, (2, 3))]
    assert multiplicity_independence(H, [(1, 2, 3)], default_multiplicities([(1, 2, 3)]), (0, F(-1, 2), F(-1, 2)), suite)
    assert multiplicity_independence(H, [(1,), (2, 3)], K_LIN, (0, 0, F(-1, 2)), suite)
    assert multiplicity_independence(H, [(1,), (2, 3)], K_LIN, K_LIN, suite)
    with pytest.raises(PreconditionError):
        multiplicity_independence(H, [(1, 2, 3)], (0, 0, 0), K_LIN, suite)


def test_separating_witness_examples():
    w = separating_witness(H, [(1, 2, 3)], [(1,), (2, 3)])
    assert w == x_block(H, (2, 3))
    assert membership_P(H, PartitionSpec.make(3, [(1,), (2, 3)]), w)
    assert not membership_P(H, PartitionSpec.make(3, [(1, 2, 3)]), w)
    assert separating_witness(H, [(1,), (2, 3)], [(1, 2, 3)]) == w
    with pytest.raises(PreconditionError):
        separating_witness(H, [(1, 2, 3)], [(1, 2, 3)])


def test_separating_witness_n4_profiles():
    P, P2 = [(1,), (2, 3, 4)], [(1, 2), (3, 4)]
    w = separating_witness(CL4, P, P2)
    assert w == x_block(CL4, (3, 4))
    s1, s2 = PartitionSpec.make(4, P), PartitionSpec.make(4, P2)
    assert not membership_P(CL4, s1, w) and membership_P(CL4, s2, w)
    # one multiplicity vector admissible for both partitions
    k = (0, F(-1, 2), F(-1, 4), F(-1, 4))
    assert is_admissible(P, k) and is_admissible(P2, k)
    assert not membership_P(CL4, PartitionSpec(4, P, k), w)
    assert membership_P(CL4, PartitionSpec(4, P2, k), w)


@pytest.mark.parametrize("frame", [H, CL4], ids=["H", "Cl(0,4)"])
def test_all_pairs_separated(frame):
    n = frame.n
    parts = list(enumerate_partitions(n))
    for P, P2 in combinations(parts, 2):
        w = separating_witness(frame, P, P2)
        a = membership_P(frame, PartitionSpec.make(n, P), w).member
        b = membership_P(frame, PartitionSpec.make(n, P2), w).member
        assert a != b


def test_permuted_equivalence():
    for f in (f1, f2, parse_poly("j*x2", H)):
        assert permuted_equivalence(H, [(1,), (2, 3)], (1, 2, 3), f)
        assert permuted_equivalence(H, [(1,), (2, 3)], (2, 1, 3), f)
    suite = generic_suite(CL4, 10, 2, max_degree=2) + [x_block(CL4, (2, 3, 4)), slice_power_poly(CL4, 2, (1, 2, 3))]
    for sigma in list(permutations((1, 2, 3, 4)))[::5]:
        for f in suite:
            assert permuted_equivalence(CL4, [(1,), (2, 3, 4)], sigma, f)


# -- P-slice components ------------------------------------------------------------

def test_p_slice_components_linear_example():
    comps = p_slice_components(H, [(1,), (2, 3)], f2)
    assert comps[()] == Poly.variable(H, 0)
    assert comps[(2,)] == -norm_poly(H, (2, 3))
    assert comps[(1,)].is_zero() and comps[(1, 2)].is_zero()


def test_p_slice_components_full_block():
    rng = random.Random(11)
    for _ in range(4):
        f = slice_poly(H, rng)
        comps = p_slice_components(H, [(1, 2, 3)], f)
        assert comps[()] == spherical_value_A(full(H), f)
        # x f = x f_s + (x f)_s
        assert imag_mul(full(H), f) == add(imag_mul(full(H), comps[()]), comps[(1,)])


def test_p_slice_components_of_even_function():
    f = parse_poly("x0 x1^2 + i*x2^2 x3^2", H)
    comps = p_slice_components(H, [(1,), (2, 3)], f)
    assert comps[()] == f
    assert all(g.is_zero() for K, g in comps.items() if K)
