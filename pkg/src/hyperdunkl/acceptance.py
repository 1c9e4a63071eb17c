"""The fifteen acceptance criteria as runnable checks.

Every criterion is a function returning ``(ok, detail)``; :func:`run`
times them and wraps the outcome.  All randomness is seeded.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .algebra import make_algebra, verify_frame, verify_table
from .errors import InvariantViolation, PreconditionError
from .identities import (
    dbar_spherical_derivative,
    difference_multiplied,
    osp_relations,
)
from .operators import (
    dunkl_CR,
    dunkl_CR_A,
    dunkl_laplacian,
    integral_form_D,
    script_S_A,
    script_S_P,
)
from .pointcheck import (
    a_slice_decompose_at,
    check_difference_at,
    constructed_point,
    dbar_J,
    off_axis_point,
    rational_sphere_point,
    reconstruct_p_slice_at,
    restrict_to_slice,
)
from .polynomial import (
    Poly,
    add,
    imaginary_poly,
    parse_element,
    parse_poly,
    random_element,
    random_poly,
    right_scale,
    slice_power_poly,
)
from .samples import (
    a_slice_form,
    fa_member,
    generic_suite,
    kernel_sp_sample,
    nonslice_poly,
    slice_poly,
    slice_regular_poly,
)
from .spaces import (
    PartitionSpec,
    a_default_multiplicities,
    alternate_multiplicities,
    census,
    default_multiplicities,
    enumerate_partitions,
    is_slice_poly,
    is_slice_regular_poly,
    membership_A,
    membership_P,
    multiplicity_independence,
    p_slice_levels,
    permuted_equivalence,
    separating_witness,
    slice_regular_coefficients,
    x_block,
)
from .spectral import build_reflection_matrix, valid_i0, verify_perron

F = Fraction

# (spec, max degree) for the operator suites
OPERATOR_ALGEBRAS = (("H", 4), ("Cl(0,4)", 4), ("O", 2))


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def _full(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def _sabotaged(table):
    """Copy of a structure table with the sign of e_1 e_2 flipped."""
    rows = [list(r) for r in table.product]
    rows[1][2] = tuple((k, -c) for k, c in rows[1][2])
    return replace(table, name=table.name + "-sabotaged", product=tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# 1


def criterion_1(sabotage: bool = False):
    specs = ["C", "H", "Hr", "O"] + [f"Cl(0,{n})" for n in range(1, 6)]
    checked, bad = 0, []
    for spec in specs:
        table, frame = make_algebra(spec)
        if sabotage and spec == "H":
            table = _sabotaged(table)
            frame = replace(frame, algebra=table)
        rt = verify_table(table, associative=spec != "O")
        rf = verify_frame(frame)
        checked += rt.checked + rf.checked
        bad += [f"{spec}: {m}" for m in rt.failures + rf.failures]
    return not bad, f"{checked} basis-level checks, {len(bad)} violations" + (f": {bad[0]}" if bad else "")


# ---------------------------------------------------------------------------
# 2, 3


def criterion_2(count: int = 100):
    failures = []
    total = 0
    for spec, deg in OPERATOR_ALGEBRAS:
        _, frame = make_algebra(spec)
        n = frame.n
        k = default_multiplicities([_full(n)])
        suite = generic_suite(frame, 2000 + n, count, max_degree=deg)
        sets = [((_full(n)), k)] + [(A, a_default_multiplicities(frame, A))
                                    for A in ((1,), (2, 3), tuple(range(1, n)))]
        for A, kA in sets:
            for f in suite:
                for name, ok in osp_relations(frame, kA, A, f).items():
                    total += 1
                    if not ok:
                        failures.append(f"{spec} A={A} {name}")
    return not failures, f"{total} relation instances, {len(failures)} failures" + (
        f": {failures[0]}" if failures else "")


def criterion_3(count: int = 100, points: int = 50):
    failures = []
    total = 0
    for spec, deg in OPERATOR_ALGEBRAS:
        _, frame = make_algebra(spec)
        suite = generic_suite(frame, 3000 + frame.n, count, max_degree=deg)
        for f in suite:
            total += 1
            if not difference_multiplied(frame, f):
                failures.append(f"{spec} multiplied form")
        rng = random.Random(3100 + frame.n)
        regular = [slice_regular_poly(frame, rng, max_degree=min(deg + 1, 5)) for _ in range(5)]
        pool = suite[:10] + regular
        for p in range(points):
            f = pool[p % len(pool)]
            total += 1
            if not check_difference_at(frame, f, off_axis_point(frame, rng)):
                failures.append(f"{spec} pointwise")
    return not failures, f"{total} exact checks, {len(failures)} failures"


# ---------------------------------------------------------------------------
# 4, 5, 6, 7


def criterion_4(count: int = 100):
    _, frame = make_algebra("H")
    rng = random.Random(4000)
    bad = []
    try:
        for _ in range(count):
            f = slice_poly(frame, rng)
            v = is_slice_poly(frame, f)
            if not (v.member and v.checks["gamma_tilde"]):
                bad.append("slice sample rejected")
        for _ in range(count):
            f = nonslice_poly(frame, rng)
            v = is_slice_poly(frame, f)
            if v.member or v.checks["gamma_tilde"] or not v.witnesses or v.witnesses["casimir"].is_zero():
                bad.append("non-slice sample accepted or missing witness")
    except InvariantViolation as exc:
        bad.append(str(exc))
    return not bad, f"{2 * count} verdicts, {len(bad)} wrong"


def criterion_5(count: int = 100):
    _, frame = make_algebra("H")
    rng = random.Random(5000)
    bad = []
    for _ in range(count):
        coeffs = [random_element(frame.algebra, rng) for _ in range(rng.randint(1, 6))]
        f = Poly.zero(frame)
        for j, a in enumerate(coeffs):
            f = add(f, right_scale(slice_power_poly(frame, j), a))
        if not is_slice_regular_poly(frame, f).member:
            bad.append("regular sample rejected")
            continue
        back = slice_regular_coefficients(frame, f)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if back != coeffs:
            bad.append("coefficient round-trip mismatch")
    a = parse_element("(1)*1 + (2)*i + (-1/2)*k", frame)
    xa = right_scale(imaginary_poly(frame), a)
    if is_slice_regular_poly(frame, xa).member or not is_slice_poly(frame, xa).member:
        bad.append("x_imag a misclassified")
    return not bad, f"{count} regular samples plus x_imag a, {len(bad)} wrong"


def _regular_suites(count):
    for spec, deg in OPERATOR_ALGEBRAS:
        _, frame = make_algebra(spec)
        rng = random.Random(6000 + frame.n)
        yield spec, frame, [slice_regular_poly(frame, rng, max_degree=5 if deg > 2 else 3)
                            for _ in range(count)]


def criterion_6(count: int = 40):
    bad = []
    total = 0
    for spec, frame, suite in _regular_suites(count):
        k = default_multiplicities([_full(frame.n)])
        for f in suite:
            total += 1
            if not dunkl_laplacian(frame, k, f).is_zero():
                bad.append(f"{spec} not Dunkl harmonic")
            if not dbar_spherical_derivative(frame, f):
                bad.append(f"{spec} dbar identity")
    return not bad, f"{total} slice-regular samples, {len(bad)} failures"


def criterion_7(count: int = 50):
    bad = []
    total = 0
    for spec, deg in (("C", 4),) + OPERATOR_ALGEBRAS:
        _, frame = make_algebra(spec)
        rng = random.Random(7000 + frame.n)
        for f in generic_suite(frame, 7100 + frame.n, count, max_degree=deg):
            k = tuple(F(-rng.randint(0, 6), rng.randint(1, 4)) for _ in range(frame.n))
            total += 1
            if integral_form_D(frame, k, f) != dunkl_CR(frame, k, f):
                bad.append(spec)
    return not bad, f"{total} polynomials over 4 algebras, {len(bad)} mismatches"


# ---------------------------------------------------------------------------
# 8 worked linear example on the quaternions


def linear_closed_form(frame, k, a):
    """(a0 + i a1) + j a2 (1 + 2k2) + k a3 (1 + 2k3) with a = (a0, a1, a2, a3)."""
    i, j, kk = (frame.unit(t) for t in (1, 2, 3))
    return a[0] + i * a[1] + (j * a[2]) * (1 + 2 * k[1]) + (kk * a[3]) * (1 + 2 * k[2])


def criterion_8():
    _, frame = make_algebra("H")
    k = (F(0), F(-1, 4), F(-1, 4))
    A = (2, 3)
    f1 = parse_poly("(1)*x0 + (i)*x1", frame)
    f2 = parse_poly("(1)*x0 + (j)*x2 + (k)*x3", frame)
    bad = []
    for f in (f1, f2):
        if not membership_A(frame, k, A, f).member:
            bad.append(f"{f} not a member")
    combos = [("(1)*1", "(1)*1"), ("(2)*i + (-1)*k", "(1/2)*1 + (3)*j"),
              ("(-1)*j", "(1)*i + (1)*k"), ("(1/3)*1 + (1)*i + (-2)*j + (1)*k", "(-5/2)*k")]
    for sa, sb in combos:
        a, b = parse_element(sa, frame), parse_element(sb, frame)
        g = add(right_scale(f1, a), right_scale(f2, b))
        if not membership_A(frame, k, A, g).member:
            bad.append(f"f1*({sa}) + f2*({sb}) not a member")
    for t in (2, 3):
        g = parse_poly(f"({'jk'[t - 2]})*x{t}", frame)
        v = membership_A(frame, k, A, g)
        if v.member:
            bad.append(f"{g} wrongly a member")
        elif dunkl_CR_A(frame, k, A, g) != Poly.constant(frame, F(-1, 2)):
            bad.append(f"D-witness of {g} is not -(1 + 2k)")
    rng = random.Random(8000)
    closed = 0
    for kk in (k, (F(0), F(0), F(-1, 2)), (F(0), F(-1, 8), F(-3, 8)), (F(-1), F(2), F(-5, 3))):
        for _ in range(10):
            a = [random_element(frame.algebra, rng) for _ in range(4)]
            f = add(*(right_scale(Poly.variable(frame, t), a[t]) for t in range(4)))
            d = dunkl_CR_A(frame, kk, A, f)
            closed += 1
            if d != Poly.constant(frame, linear_closed_form(frame, kk, a)):
                bad.append("closed form mismatch")
    # the converse: a random linear f is a member only in the stated form
    for _ in range(10):
        a = [random_element(frame.algebra, rng) for _ in range(4)]
        f = add(*(right_scale(Poly.variable(frame, t), a[t]) for t in range(4)))
        base = a[0] + frame.unit(1) * a[1]
        expected = a[2] == frame.unit(2) * base and a[3] == frame.unit(3) * base
        if membership_A(frame, k, A, f).member != expected:
            bad.append("random linear membership disagrees with the stated form")
    return not bad, f"6 members, 2 non-members, {closed} closed-form values, {len(bad)} failures"


# ---------------------------------------------------------------------------
# 9, 10, 11, 12


def _classification_suite(frame, blocks_list, seed: int, size: int = 40):
    rng = random.Random(seed)
    n = frame.n
    suite = [x_block(frame, b) for blocks in blocks_list for b in blocks]
    suite += [slice_regular_poly(frame, rng, max_degree=3) for _ in range(6)]
    suite += [slice_poly(frame, rng, max_degree=3) for _ in range(6)]
    suite += [fa_member(frame, (2, 3), rng, max_power=2) for _ in range(4)]
    suite += [kernel_sp_sample(frame, [(1,), tuple(range(2, n + 1))], rng, max_degree=1) for _ in range(4)]
    while len(suite) < size:
        suite.append(random_poly(frame, rng, max_degree=3, terms=4))
    return suite[:size]


N4_PARTITIONS = [((1, 2, 3, 4),), ((1,), (2, 3, 4)), ((1, 2), (3, 4)), ((1, 3), (2,), (4,)),
                 ((1,), (2,), (3,), (4,))]


def criterion_9():
    bad = []
    checks = 0
    members = 0
    for spec, parts in (("H", list(enumerate_partitions(3))), ("Cl(0,4)", N4_PARTITIONS)):
        _, frame = make_algebra(spec)
        suite = _classification_suite(frame, parts, 9000 + frame.n)
        for P in parts:
            k1 = default_multiplicities(P, frame.n)
            k2 = alternate_multiplicities(P, frame.n)
            res = multiplicity_independence(frame, P, k1, k2, suite)
            checks += len(suite)
            if not res.ok:
                bad.append(f"{spec} {P}: {len(res.counterexamples)} disagreements")
            spec1 = PartitionSpec.make(frame.n, P, k1)
            members += sum(membership_P(frame, spec1, f).member for f in suite)
    _, frame = make_algebra("H")
    pairs = 0
    for P, Q in combinations(list(enumerate_partitions(3)), 2):
        pairs += 1
        try:
            separating_witness(frame, P, Q)
        except (InvariantViolation, PreconditionError) as exc:
            bad.append(f"no witness for {P} vs {Q}: {exc}")
    ok = not bad and members > 0
    return ok, f"{checks} paired verdicts ({members} memberships), {pairs} separated pairs, {len(bad)} failures"


def criterion_10(count: int = 20):
    cases = [
        ("H", ((1,), (2, 3)), (2, 1, 3)),
        ("H", ((1, 2, 3),), (3, 1, 2)),
        ("H", ((1, 2), (3,)), (3, 2, 1)),
        ("Cl(0,4)", ((1,), (2, 3, 4)), (2, 1, 4, 3)),
        ("Cl(0,4)", ((1, 2), (3, 4)), (3, 1, 4, 2)),
        ("Cl(0,4)", ((1,), (2,), (3, 4)), (4, 3, 2, 1)),
    ]
    bad = []
    total = 0
    for spec, P, sigma in cases:
        _, frame = make_algebra(spec)
        suite = _classification_suite(frame, [P], 10000 + len(P), size=count)
        for f in suite:
            total += 1
            try:
                if not permuted_equivalence(frame, P, sigma, f):
                    bad.append(f"{spec} {P} {sigma}")
            except InvariantViolation as exc:
                bad.append(str(exc))
    return not bad, f"{total} transported verdicts over {len(cases)} (P, sigma) pairs, {len(bad)} failures"


TABLE_1 = {
    "bell": (1, 2, 5, 15, 52, 203, 877, 4140),
    "partitions": (1, 2, 3, 5, 7, 11, 15, 22),
    "subsets": (1, 2, 5, 12, 27, 58, 121, 248),
}


def criterion_11():
    got = [census(n) for n in range(1, 9)]
    cols = tuple(zip(*got))
    ok = cols == (TABLE_1["bell"], TABLE_1["partitions"], TABLE_1["subsets"])
    return ok, "n = 1..8: " + "; ".join(f"{b}/{p}/{s}" for b, p, s in got)


PERRON_CASES = {
    3: [(F(-1, 3),) * 3, (F(0), F(-1, 2), F(-1, 2)), (F(-1, 6), F(-1, 3), F(-1, 2))],
    4: [(F(-3, 8),) * 4, (F(0), F(-1, 2), F(-1, 2), F(-1, 2)), (F(-1, 4), F(-1, 4), F(-1, 2), F(-1, 2))],
    5: [(F(-2, 5),) * 5, (F(-1, 2), F(-1, 2), F(0), F(-1, 2), F(-1, 2)),
        (F(-1, 5), F(-1, 5), F(-3, 5), F(-1, 2), F(-1, 2))],
}


def criterion_12():
    bad = []
    total = 0
    for n, ks in PERRON_CASES.items():
        for k in ks:
            for i0 in valid_i0(k):
                total += 1
                rep = verify_perron(build_reflection_matrix(k, i0))
                if not rep.ok or rep.rank != 2 ** (n - 1) - 1:
                    bad.append(f"n={n} k={k} i0={i0}: {rep.failures}")
    return not bad, f"{total} matrices (all valid i0), {len(bad)} failures"


# ---------------------------------------------------------------------------
# 13, 14, 15


def _point_with_block(frame, A, rng):
    rest = [(j,) for j in range(1, frame.n + 1) if j not in A]
    pt, _, _ = constructed_point(frame, [tuple(A)] + rest, rng)
    return pt


def criterion_13(count: int = 30):
    bad = []
    cases = [("H", (2, 3), [(2,), (3,)]), ("Cl(0,4)", (2, 3, 4), [(2, 3), (3, 4), (2,)])]
    for spec, A, subs in cases:
        _, frame = make_algebra(spec)
        k = a_default_multiplicities(frame, A)
        rng = random.Random(13000 + frame.n)
        forward = []
        for _ in range(count):
            f = fa_member(frame, A, rng, max_power=3)
            if not membership_A(frame, k, A, f).member:
                bad.append(f"{spec} generated F_A sample is not a member")
                continue
            forward.append(f)
            try:
                a_slice_decompose_at(frame, k, A, f, _point_with_block(frame, A, rng), rng)
            except (AssertionError, PreconditionError) as exc:
                bad.append(f"{spec} forward: {exc}")
        converse = [a_slice_form(frame, A, rng) for _ in range(count)]
        for f in converse:
            if any(not p.is_zero() for p in script_S_A(frame, k, A, f)):
                bad.append(f"{spec} synthesized form outside ker S_A")
        for f in forward + converse:
            for B in subs:
                kB = a_default_multiplicities(frame, B)
                if any(not p.is_zero() for p in script_S_A(frame, kB, B, f)):
                    bad.append(f"{spec} nesting fails for B={B}")
    return not bad, f"{2 * count * len(cases)} samples over 2 (algebra, A) pairs, {len(bad)} failures"


KERSP_CASES = [("H", ((1, 2, 3),)), ("H", ((1,), (2, 3))), ("Cl(0,4)", ((1, 2), (3, 4)))]


def criterion_14(points: int = 20):
    bad = []
    total = 0
    for spec, P in KERSP_CASES:
        _, frame = make_algebra(spec)
        k = default_multiplicities(P, frame.n)
        rng = random.Random(14000 + 10 * frame.n + len(P))
        pool = [kernel_sp_sample(frame, P, rng) for _ in range(4)]
        pool.append(right_scale(slice_power_poly(frame, 3), random_element(frame.algebra, rng)))
        if spec == "H" and len(P) == 2:
            pool.append(parse_poly("(2)*x0 + (i)*x1 + (j)*x2 + (k)*x3", frame))
        for f in pool:
            if any(not p.is_zero() for trip in script_S_P(frame, k, P, f) for p in trip):
                bad.append(f"{spec} {P}: sample outside ker S_P")
            try:
                p_slice_levels(frame, P, f)
            except InvariantViolation as exc:
                bad.append(str(exc))
        for t in range(points):
            f = pool[t % len(pool)]
            pt, _, _ = constructed_point(frame, P, rng)
            total += 1
            try:
                if not reconstruct_p_slice_at(frame, P, f, pt, k, rng):
                    bad.append(f"{spec} {P}: reconstruction mismatch")
            except PreconditionError as exc:
                bad.append(f"{spec} {P}: {exc}")
    return not bad, f"{total} reconstructions over {len(KERSP_CASES)} (algebra, P) pairs, {len(bad)} failures"


RESTRICTION_CASES = [("H", (2, 3)), ("Cl(0,4)", (3, 4)), ("O", (3, 4, 5, 6, 7))]


def criterion_15(directions: int = 10, members: int = 3):
    bad = []
    total = 0
    for spec, A in RESTRICTION_CASES:
        _, frame = make_algebra(spec)
        k = a_default_multiplicities(frame, A)
        rng = random.Random(15000 + frame.n)
        pool = []
        while len(pool) < members:
            f = fa_member(frame, A, rng, max_power=3)
            if f.is_zero():
                continue
            if not membership_A(frame, k, A, f).member:
                bad.append(f"{spec} sample not a member")
                break
            pool.append(f)
        for f in pool:
            for _ in range(directions):
                J = rational_sphere_point(len(A), rng)
                total += 1
                if not dbar_J(frame, restrict_to_slice(frame, f, A, J)).is_zero():
                    bad.append(f"{spec} restriction not monogenic")
    return not bad, f"{total} restrictions over 3 algebras, {len(bad)} failures"


# ---------------------------------------------------------------------------
# runner


CRITERIA: list[tuple[int, str, tuple[str, ...], Callable]] = [
    (1, "algebra axioms", ("algebra",), criterion_1),
    (2, "osp(1|2) relations", ("osp", "operators"), criterion_2),
    (3, "difference formula", ("difference", "operators", "pointcheck"), criterion_3),
    (4, "sliceness", ("slice", "spaces"), criterion_4),
    (5, "slice-regularity", ("regular", "spaces"), criterion_5),
    (6, "Dunkl harmonicity", ("harmonic", "operators"), criterion_6),
    (7, "integral form of D", ("integral", "operators"), criterion_7),
    (8, "linear quaternion example", ("example", "spaces"), criterion_8),
    (9, "classification invariance", ("classification", "spaces"), criterion_9),
    (10, "permutation equivalence", ("permutation", "spaces"), criterion_10),
    (11, "census", ("census", "spaces"), criterion_11),
    (12, "Perron engine", ("perron", "spectral"), criterion_12),
    (13, "A-kernel structure", ("kernel", "spaces", "pointcheck"), criterion_13),
    (14, "P-slice reconstruction", ("kerSP", "pointcheck"), criterion_14),
    (15, "slice-restriction monogenicity", ("restriction", "pointcheck"), criterion_15),
]


def select(filter_: str | None = None) -> list[tuple[int, str, tuple[str, ...], Callable]]:
    if not filter_:
        return list(CRITERIA)
    keys = {s.strip() for s in filter_.split(",") if s.strip()}
    out = []
    for entry in CRITERIA:
        num, title, tags, _ = entry
        if str(num) in keys or keys & set(tags):
            out.append(entry)
    return out


def run_one(number: int, sabotage: bool = False) -> CriterionResult:
    num, title, _, fn = next(e for e in CRITERIA if e[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn(sabotage=True) if (sabotage and num == 1) else fn()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(num, title, ok, detail, time.perf_counter() - t0)


def run(filter_: str | None = None, sabotage: bool = False,
        report: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    results = []
    for num, _, _, _ in select(filter_):
        res = run_one(num, sabotage)
        if report:
            report(res)
        results.append(res)
    return results
