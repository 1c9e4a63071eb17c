"""Exact arithmetic in real alternative *-algebras.

Algebras are stored as structure-constant tables over a fixed real basis whose
element 0 is the unit.  Conjugation acts diagonally on the basis.  Every
scalar is a :class:`fractions.Fraction`, so identities are checked as exact
zeros.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point scalars are not accepted; use Fraction or a string")
    return Fraction(value)


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    """Finite-dimensional real algebra given by structure constants.

    ``product[i][j]`` is a tuple of ``(k, c)`` pairs meaning
    ``e_i e_j = sum c e_k``.  ``conj_signs[i]`` is the sign of ``e_i`` under
    conjugation.
    """

    name: str
    basis_names: tuple[str, ...]
    product: tuple[tuple[tuple[tuple[int, Fraction], ...], ...], ...]
    conj_signs: tuple[int, ...]
    _signed: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def __post_init__(self):
        d = len(self.basis_names)
        if len(self.product) != d or any(len(row) != d for row in self.product):
            raise ValueError("structure table must be d x d")
        if len(self.conj_signs) != d:
            raise ValueError("conj_signs must have length d")
        # signed-monomial fast path: e_i e_j = +-e_k for every pair
        signed = []
        for row in self.product:
            srow = []
            for entry in row:
                if len(entry) == 1 and entry[0][1] in (1, -1):
                    srow.append((entry[0][0], int(entry[0][1])))
                else:
                    srow = None
                    break
            if srow is None:
                signed = None
                break
            signed.append(tuple(srow))
        object.__setattr__(self, "_signed", tuple(signed) if signed is not None else None)

    @property
    def is_signed_monomial(self) -> bool:
        return self._signed is not None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return (
            self.basis_names == other.basis_names
            and self.product == other.product
            and self.conj_signs == other.conj_signs
        )

    def __hash__(self):
        return hash((self.name, self.basis_names))

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis name {name!r} for algebra {self.name}") from None

    # -- raw coordinate-tuple arithmetic (hot path for polynomials) --

    def zero_coords(self) -> tuple[Fraction, ...]:
        return (ZERO,) * self.dim

    def mul_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        acc = [ZERO] * self.dim
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        if self._signed is not None:
            for i, ai in enumerate(a):
                if not ai:
                    continue
                row = self._signed[i]
                for j, bj in nz_b:
                    k, s = row[j]
                    if s > 0:
                        acc[k] += ai * bj
                    else:
                        acc[k] -= ai * bj
            return tuple(acc)
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.product[i]
            for j, bj in nz_b:
                for k, c in row[j]:
                    acc[k] += ai * bj * c
        return tuple(acc)

    def lmul_basis_coords(self, u: int, b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Left product ``e_u * b``."""
        if self._signed is not None:
            acc = [ZERO] * self.dim
            row = self._signed[u]
            for j, bj in enumerate(b):
                if bj:
                    k, s = row[j]
                    acc[k] = bj if s > 0 else -bj
            return tuple(acc)
        unit = [ZERO] * self.dim
        unit[u] = ONE
        return self.mul_coords(unit, b)

    def conj_coords(self, a: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(x if s > 0 else -x for x, s in zip(a, self.conj_signs))

    def basis_coords(self, i: int) -> tuple[Fraction, ...]:
        c = [ZERO] * self.dim
        c[i] = ONE
        return tuple(c)

    # -- Element constructors --

    def element(self, coords: Iterable) -> "Element":
        coords = tuple(as_fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(self, coords)

    def basis(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.index(i)
        return Element(self, self.basis_coords(i))

    def scalar(self, r) -> "Element":
        c = [ZERO] * self.dim
        c[0] = as_fraction(r)
        return Element(self, tuple(c))

    def zero(self) -> "Element":
        return Element(self, self.zero_coords())

    def one(self) -> "Element":
        return self.scalar(1)


@dataclass(frozen=True)
class Element:
    """Exact rational coordinate vector over an algebra basis."""

    algebra: AlgebraTable = field(repr=False, compare=False)
    coords: tuple[Fraction, ...]

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        r = as_fraction(other)
        return Element(self.algebra, tuple(a * r for a in self.coords))

    def __rmul__(self, other):
        r = as_fraction(other)
        return Element(self.algebra, tuple(r * a for a in self.coords))

    def __truediv__(self, other):
        r = as_fraction(other)
        return Element(self.algebra, tuple(a / r for a in self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_real(self) -> bool:
        return not any(self.coords[1:])

    @property
    def real(self) -> Fraction:
        return self.coords[0]

    def __str__(self):
        return format_element(self)


def mul(a: Element, b: Element) -> Element:
    a._check(b)
    return Element(a.algebra, a.algebra.mul_coords(a.coords, b.coords))


def conjugate(a: Element) -> Element:
    return Element(a.algebra, a.algebra.conj_coords(a.coords))


def trace(a: Element) -> Element:
    return a + conjugate(a)


def norm_form(a: Element) -> Element:
    return mul(a, conjugate(a))


def associator(a: Element, b: Element, c: Element) -> Element:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def format_element(a: Element) -> str:
    """Canonical text: ``(1/2)*1 + (-1)*e12``; zero is ``(0)*1``."""
    parts = [f"({c})*{name}" for c, name in zip(a.coords, a.algebra.basis_names) if c]
    return " + ".join(parts) if parts else "(0)*1"


# ---------------------------------------------------------------------------
# constructors


def _table_from_function(name, names, mult, conj_signs) -> AlgebraTable:
    d = len(names)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            vec = mult(i, j)
            row.append(tuple((k, Fraction(c)) for k, c in enumerate(vec) if c))
        rows.append(tuple(row))
    return AlgebraTable(name, tuple(names), tuple(rows), tuple(conj_signs))


# quaternion multiplication on basis indices (1, i, j, k)
_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def _quat_mul(p, q):
    out = [0] * 4
    for i, pi in enumerate(p):
        if not pi:
            continue
        for j, qj in enumerate(q):
            if not qj:
                continue
            s, k = _QUAT[i, j]
            out[k] += s * pi * qj
    return out


def _quat_conj(p):
    return [p[0], -p[1], -p[2], -p[3]]


def _complex_table():
    def mult(i, j):
        out = [0, 0]
        if i == 1 and j == 1:
            out[0] = -1
        else:
            out[i + j] = 1
        return out

    return _table_from_function("C", ["1", "i"], mult, [1, -1])


def _quaternion_table():
    def mult(i, j):
        s, k = _QUAT[i, j]
        out = [0] * 4
        out[k] = s
        return out

    return _table_from_function("H", ["1", "i", "j", "k"], mult, [1, -1, -1, -1])


def _octonion_table():
    # Cayley-Dickson doubling of H: (q1,q1')(q2,q2') = (q1 q2 - conj(q2') q1', q2' q1 + q1' conj(q2))
    def split(h):
        q, qp = [0] * 4, [0] * 4
        if h < 4:
            q[h] = 1
        else:
            qp[h - 4] = 1
        return q, qp

    def mult(i, j):
        q1, q1p = split(i)
        q2, q2p = split(j)
        a = [x - y for x, y in zip(_quat_mul(q1, q2), _quat_mul(_quat_conj(q2p), q1p))]
        b = [x + y for x, y in zip(_quat_mul(q2p, q1), _quat_mul(q1p, _quat_conj(q2)))]
        return a + b

    names = ["1"] + [f"e{h}" for h in range(1, 8)]
    return _table_from_function("O", names, mult, [1] + [-1] * 7)


def _blade_sign(a: int, b: int) -> int:
    """Sign of e_A e_B for bitmask blades in Cl(0,n) (e_i^2 = -1)."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    squares = bin(a & b).count("1")
    return -1 if (swaps + squares) % 2 else 1


def _blade_name(mask: int, n: int) -> str:
    if mask == 0:
        return "1"
    idx = [str(i + 1) for i in range(n) if mask >> i & 1]
    sep = "" if n < 10 else "_"
    return "e" + sep.join(idx)


def _clifford_table(n: int):
    d = 1 << n
    names = [_blade_name(m, n) for m in range(d)]

    def mult(i, j):
        out = [0] * d
        out[i ^ j] = _blade_sign(i, j)
        return out

    signs = []
    for m in range(d):
        r = bin(m).count("1")
        signs.append(-1 if (r * (r + 1) // 2) % 2 else 1)
    return _table_from_function(f"Cl(0,{n})", names, mult, signs)


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class Frame:
    """Hypercomplex basis (1, v_1, ..., v_n) given by basis-element indices."""

    algebra: AlgebraTable
    units: tuple[int, ...]
    label: str = ""

    @property
    def n(self) -> int:
        return len(self.units)

    def unit(self, i: int) -> Element:
        """v_i for 1 <= i <= n (v_0 is the algebra unit)."""
        if i == 0:
            return self.algebra.one()
        return self.algebra.basis(self.units[i - 1])

    def vector(self, coords: Sequence) -> Element:
        """x_0 + sum x_i v_i for a coordinate list of length n+1."""
        if len(coords) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coordinates")
        c = [ZERO] * self.algebra.dim
        c[0] = as_fraction(coords[0])
        for i, u in enumerate(self.units, start=1):
            c[u] += as_fraction(coords[i])
        return Element(self.algebra, tuple(c))

    def coordinates(self, x: Element) -> tuple[Fraction, ...]:
        """Inverse of :meth:`vector`; raises if x is outside the frame span."""
        if not in_span(self, x):
            raise ValueError("element is outside the frame span")
        return (x.coords[0],) + tuple(x.coords[u] for u in self.units)

    def permuted(self, sigma: Sequence[int]) -> "Frame":
        """Frame with v'_i = v_{sigma(i)}; ``sigma`` lists sigma(1..n)."""
        if sorted(sigma) != list(range(1, self.n + 1)):
            raise ValueError("sigma must be a permutation of 1..n")
        return Frame(self.algebra, tuple(self.units[s - 1] for s in sigma), self.label)


def in_span(frame: Frame, x: Element) -> bool:
    allowed = {0, *frame.units}
    return all(not c for i, c in enumerate(x.coords) if i not in allowed)


_SPEC_RE = re.compile(r"^\s*Cl\(\s*0\s*,\s*(\d+)\s*\)\s*$")


@lru_cache(maxsize=None)
def make_algebra(spec: str) -> tuple[AlgebraTable, Frame]:
    """Build an algebra and its standard hypercomplex frame.

    ``spec`` is one of ``C``, ``H``, ``Hr`` (reduced quaternions), ``O`` or
    ``Cl(0,n)``.  Long names ``complex``, ``quaternions``,
    ``reduced_quaternions_frame``, ``octonions`` and ``clifford(n)`` are
    accepted as aliases.
    """
    key = spec.strip()
    aliases = {
        "complex": "C",
        "quaternions": "H",
        "reduced_quaternions_frame": "Hr",
        "octonions": "O",
    }
    key = aliases.get(key, key)
    m = re.match(r"^clifford\((\d+)\)$", key)
    if m:
        key = f"Cl(0,{m.group(1)})"
    if key == "C":
        t = _complex_table()
        return t, Frame(t, (1,), "C")
    if key == "H":
        t = _quaternion_table()
        return t, Frame(t, (1, 2, 3), "H")
    if key == "Hr":
        t = make_algebra("H")[0]
        return t, Frame(t, (1, 2), "Hr")
    if key == "O":
        t = _octonion_table()
        return t, Frame(t, tuple(range(1, 8)), "O")
    m = _SPEC_RE.match(key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("Clifford algebra Cl(0,n) needs n >= 1")
        t = _clifford_table(n)
        return t, Frame(t, tuple(1 << i for i in range(n)), f"Cl(0,{n})")
    raise ValueError(f"unknown algebra spec {spec!r}")


# ---------------------------------------------------------------------------
# verification


@dataclass
class Report:
    """Outcome of an exhaustive identity check; ``failures`` lists violations."""

    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)


def verify_table(table: AlgebraTable, *, associative: bool = False, limit: int = 20) -> Report:
    """Unit law, anti-involution and basis-level alternativity (or associativity)."""
    rep = Report()
    d = table.dim
    names = table.basis_names
    e = [table.basis_coords(i) for i in range(d)]
    prod = [[table.mul_coords(e[i], e[j]) for j in range(d)] for i in range(d)]

    def record(msg):
        # the list is bounded; later violations are dropped once it is full
        if len(rep.failures) < limit:
            rep.fail(msg)

    if table.conj_signs[0] != 1:
        record("conjugation does not fix the unit")
    for j in range(d):
        rep.checked += 2
        if prod[0][j] != e[j] or prod[j][0] != e[j]:
            record(f"unit law fails for {names[j]}")
    for i in range(d):
        for j in range(d):
            rep.checked += 1
            lhs = table.conj_coords(prod[i][j])
            rhs = table.mul_coords(table.conj_coords(e[j]), table.conj_coords(e[i]))
            if lhs != rhs:
                record(f"(e_{names[i]} e_{names[j]})^c != e_{names[j]}^c e_{names[i]}^c")

    assoc = {}
    for i, j, k in iproduct(range(d), repeat=3):
        left = table.mul_coords(prod[i][j], e[k])
        right = table.mul_coords(e[i], prod[j][k])
        assoc[i, j, k] = tuple(x - y for x, y in zip(left, right))
    for (i, j, k), a in assoc.items():
        rep.checked += 1
        if associative:
            if any(a):
                record(f"associator [{names[i]},{names[j]},{names[k]}] != 0")
            continue
        b = assoc[j, i, k]
        c = assoc[i, k, j]
        if any(x + y for x, y in zip(a, b)) or any(x + y for x, y in zip(a, c)):
            record(f"associator not alternating at ({names[i]},{names[j]},{names[k]})")
    return rep


def verify_frame(frame: Frame) -> Report:
    """Check t(v_i)=0, n(v_i)=1, anticommutation and v_i(v_j a) = -v_j(v_i a)."""
    rep = Report()
    alg = frame.algebra
    one = alg.one()
    for i in range(1, frame.n + 1):
        v = frame.unit(i)
        rep.checked += 2
        if not trace(v).is_zero():
            rep.fail(f"t(v_{i}) != 0")
        if norm_form(v) != one:
            rep.fail(f"n(v_{i}) != 1")
        for a in range(alg.dim):
            ea = alg.basis(a)
            rep.checked += 1
            if mul(v, mul(v, ea)) != -ea:
                rep.fail(f"v_{i}(v_{i} {alg.basis_names[a]}) != -{alg.basis_names[a]}")
    for i in range(1, frame.n + 1):
        for j in range(1, frame.n + 1):
            if i == j:
                continue
            vi, vj = frame.unit(i), frame.unit(j)
            rep.checked += 1
            if not (mul(vi, vj) + mul(vj, vi)).is_zero():
                rep.fail(f"v_{i} v_{j} != -v_{j} v_{i}")
            for a in range(alg.dim):
                ea = alg.basis(a)
                rep.checked += 1
                if not (mul(vi, mul(vj, ea)) + mul(vj, mul(vi, ea))).is_zero():
                    rep.fail(f"v_{i}(v_{j} {alg.basis_names[a]}) != -v_{j}(v_{i} {alg.basis_names[a]})")
    return rep


def verify_frame_units(algebra: AlgebraTable, units: Sequence[int]) -> Report:
    """Convenience wrapper for candidate unit lists such as (i, 1)."""
    return verify_frame(Frame(algebra, tuple(units)))


# ---------------------------------------------------------------------------
# quadratic-cone helpers on a frame span


def _trace_norm(frame: Frame, x: Element) -> tuple[Fraction, Fraction]:
    if not in_span(frame, x):
        raise ValueError("element is outside the frame span")
    t = trace(x)
    nx = norm_form(x)
    if not (t.is_real() and nx.is_real()):
        raise ValueError("trace or norm is not real; frame invariants are broken")
    return t.real, nx.real


def power(frame: Frame, x: Element, k: int) -> Element:
    """x^k via x^2 = t(x) x - n(x); no associativity is assumed."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    t, nx = _trace_norm(frame, x)
    prev, cur = x.algebra.one(), x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, cur * t - prev * nx
    return cur


def inverse(frame: Frame, x: Element) -> Element:
    """x^c / n(x) for x in the frame span."""
    _, nx = _trace_norm(frame, x)
    if nx == 0:
        raise ZeroDivisionError("element has zero norm")
    return conjugate(x) / nx
