"""Sparse polynomials in x0..xn with algebra-valued coefficients.

A polynomial is a map from exponent tuples to coefficient coordinate tuples.
Coefficients sit to the right of the (real) monomials, so left multiplication
by an algebra element acts on coefficients only.  Zero coefficients are never
stored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import ONE, ZERO, Element, Frame, as_fraction, format_element

Exps = tuple  # tuple[int, ...] of length n+1
Coords = tuple  # tuple[Fraction, ...] of length dim


class Poly:
    """Immutable sparse polynomial over a frame."""

    __slots__ = ("frame", "terms")

    def __init__(self, frame: Frame, terms: Mapping[Exps, Coords] | None = None):
        self.frame = frame
        clean = {}
        if terms:
            nv = frame.n + 1
            d = frame.algebra.dim
            for e, c in terms.items():
                if len(e) != nv or len(c) != d:
                    raise ValueError("term shape does not match the frame")
                if any(c):
                    clean[tuple(e)] = tuple(c)
        self.terms = clean

    @classmethod
    def _raw(cls, frame: Frame, terms: dict) -> "Poly":
        # trusted constructor: terms already pruned and well shaped
        p = object.__new__(cls)
        p.frame = frame
        p.terms = terms
        return p

    # -- constructors --

    @classmethod
    def zero(cls, frame: Frame) -> "Poly":
        return cls._raw(frame, {})

    @classmethod
    def constant(cls, frame: Frame, a: Element | int | Fraction = 1) -> "Poly":
        return cls.monomial(frame, (0,) * (frame.n + 1), a)

    @classmethod
    def monomial(cls, frame: Frame, exps: Sequence[int], a: Element | int | Fraction = 1) -> "Poly":
        exps = tuple(int(e) for e in exps)
        if len(exps) != frame.n + 1 or min(exps) < 0:
            raise ValueError(f"exponent vector must have {frame.n + 1} nonnegative entries")
        if isinstance(a, Element):
            coords = a.coords
        else:
            coords = frame.algebra.scalar(a).coords
        return cls(frame, {exps: coords})

    @classmethod
    def variable(cls, frame: Frame, i: int) -> "Poly":
        """The real coordinate function x_i."""
        _check_var(frame, i, allow_zero=True)
        e = [0] * (frame.n + 1)
        e[i] = 1
        return cls.monomial(frame, e)

    # -- views --

    @property
    def n(self) -> int:
        return self.frame.n

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self) -> Iterator[tuple[Exps, Element]]:
        alg = self.frame.algebra
        for e in sorted(self.terms):
            yield e, Element(alg, self.terms[e])

    def coefficient(self, exps: Sequence[int]) -> Element:
        alg = self.frame.algebra
        return Element(alg, self.terms.get(tuple(exps), alg.zero_coords()))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_real(self) -> bool:
        return all(not any(c[1:]) for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.frame == other.frame and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    # -- ring-ish operators --

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __neg__(self):
        return Poly._raw(self.frame, {e: tuple(-x for x in c) for e, c in self.terms.items()})

    def __mul__(self, r):
        """Scalar multiplication by a real number."""
        if isinstance(r, (Poly, Element)):
            raise TypeError("use real_mul, left_scale or right_scale for products")
        r = as_fraction(r)
        if r == 0:
            return Poly.zero(self.frame)
        return Poly._raw(self.frame, {e: tuple(x * r for x in c) for e, c in self.terms.items()})

    __rmul__ = __mul__


def _check_same(f: Poly, g: Poly):
    if f.frame is not g.frame and f.frame != g.frame:
        raise ValueError("polynomials live over different frames")


def _check_var(frame: Frame, i: int, allow_zero: bool):
    lo = 0 if allow_zero else 1
    if not (lo <= i <= frame.n):
        raise IndexError(f"variable index {i} outside {lo}..{frame.n}")


def _prune(acc: dict) -> dict:
    return {e: c for e, c in acc.items() if any(c)}


def _acc_add(acc: dict, e, c, d):
    old = acc.get(e)
    if old is None:
        acc[e] = c
    else:
        acc[e] = tuple(a + b for a, b in zip(old, c))


def add(*polys: Poly) -> Poly:
    """Sum of one or more polynomials over a common frame."""
    if not polys:
        raise ValueError("add needs at least one polynomial")
    first = polys[0]
    d = first.frame.algebra.dim
    acc = dict(first.terms)
    for g in polys[1:]:
        _check_same(first, g)
        for e, c in g.terms.items():
            _acc_add(acc, e, c, d)
    return Poly._raw(first.frame, _prune(acc))


def _unit_index(frame: Frame, v) -> int | None:
    """Basis index when v is a signed-free basis element, else None."""
    if isinstance(v, int):
        return v
    nz = [i for i, c in enumerate(v.coords) if c]
    if len(nz) == 1 and v.coords[nz[0]] == 1:
        return nz[0]
    return None


def left_scale(v: Element | int, f: Poly) -> Poly:
    """Multiply every coefficient of f on the left by v.

    ``v`` may be an Element or a basis index of the frame's algebra.
    """
    alg = f.frame.algebra
    u = _unit_index(f.frame, v)
    if u is not None:
        mul = alg.lmul_basis_coords
        return Poly._raw(f.frame, {e: mul(u, c) for e, c in f.terms.items()})
    if v.algebra != alg:
        raise ValueError("scalar belongs to a different algebra")
    vc = v.coords
    out = {}
    for e, c in f.terms.items():
        p = alg.mul_coords(vc, c)
        if any(p):
            out[e] = p
    return Poly._raw(f.frame, out)


def right_scale(f: Poly, a: Element) -> Poly:
    """Multiply every coefficient of f on the right by a."""
    alg = f.frame.algebra
    if a.algebra != alg:
        raise ValueError("scalar belongs to a different algebra")
    out = {}
    for e, c in f.terms.items():
        p = alg.mul_coords(c, a.coords)
        if any(p):
            out[e] = p
    return Poly._raw(f.frame, out)


def real_mul(p: Poly, f: Poly) -> Poly:
    """Product of a real-coefficient polynomial p with f."""
    _check_same(p, f)
    if not p.is_real():
        raise ValueError("real_mul needs a real-coefficient left factor")
    d = f.frame.algebra.dim
    acc: dict = {}
    for e1, c1 in p.terms.items():
        r = c1[0]
        for e2, c2 in f.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            _acc_add(acc, e, tuple(r * x for x in c2), d)
    return Poly._raw(f.frame, _prune(acc))


def shift(i: int, f: Poly, power: int = 1) -> Poly:
    """x_i^power * f (monomial shift, no algebra product involved)."""
    _check_var(f.frame, i, allow_zero=True)
    out = {}
    for e, c in f.terms.items():
        e2 = list(e)
        e2[i] += power
        out[tuple(e2)] = c
    return Poly._raw(f.frame, out)


def partial(i: int, f: Poly) -> Poly:
    """Formal derivative with respect to x_i (0 <= i <= n)."""
    _check_var(f.frame, i, allow_zero=True)
    out = {}
    for e, c in f.terms.items():
        m = e[i]
        if m:
            e2 = e[:i] + (m - 1,) + e[i + 1:]
            out[e2] = tuple(m * x for x in c)
    return Poly._raw(f.frame, out)


def reflect(i: int, f: Poly) -> Poly:
    """r_i f: the substitution x_i -> -x_i (1 <= i <= n)."""
    _check_var(f.frame, i, allow_zero=False)
    out = {}
    for e, c in f.terms.items():
        out[e] = tuple(-x for x in c) if e[i] & 1 else c
    return Poly._raw(f.frame, out)


def reflect_set(A: Iterable[int], f: Poly) -> Poly:
    """Composition of r_i over i in A."""
    A = tuple(sorted(set(A)))
    for i in A:
        _check_var(f.frame, i, allow_zero=False)
    out = {}
    for e, c in f.terms.items():
        odd = sum(e[i] for i in A) & 1
        out[e] = tuple(-x for x in c) if odd else c
    return Poly._raw(f.frame, out)


def euler_A(A: Iterable[int], f: Poly) -> Poly:
    """Partial Euler operator: sum over i in A of x_i d_i f."""
    A = tuple(sorted(set(A)))
    for i in A:
        _check_var(f.frame, i, allow_zero=False)
    out = {}
    for e, c in f.terms.items():
        w = sum(e[i] for i in A)
        if w:
            out[e] = tuple(w * x for x in c)
    return Poly._raw(f.frame, out)


def euler(f: Poly) -> Poly:
    return euler_A(range(1, f.frame.n + 1), f)


class NotDivisibleError(ArithmeticError):
    pass


def divide_by_xi(i: int, f: Poly) -> Poly:
    """Exact quotient f / x_i; raises NotDivisibleError otherwise."""
    _check_var(f.frame, i, allow_zero=True)
    out = {}
    for e, c in f.terms.items():
        if e[i] == 0:
            raise NotDivisibleError(f"term with exponents {e} is not divisible by x{i}")
        out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c
    return Poly._raw(f.frame, out)


def evaluate(f: Poly, point: Sequence) -> Element:
    """Value of f at a real point (x0, ..., xn)."""
    pt = [as_fraction(p) for p in point]
    if len(pt) != f.frame.n + 1:
        raise ValueError(f"point must have {f.frame.n + 1} coordinates")
    alg = f.frame.algebra
    acc = [ZERO] * alg.dim
    for e, c in f.terms.items():
        w = ONE
        for x, m in zip(pt, e):
            if m:
                w *= x**m
        if w:
            for k, ck in enumerate(c):
                if ck:
                    acc[k] += w * ck
    return Element(alg, tuple(acc))


eval = evaluate  # noqa: A001  (operation name used throughout the docs)


def _check_subset(frame: Frame, A) -> tuple[int, ...]:
    A = tuple(sorted(set(A)))
    for i in A:
        _check_var(frame, i, allow_zero=False)
    return A


def imag_mul(A: Iterable[int], f: Poly) -> Poly:
    """Left multiplication by the imaginary part x_A = sum_{i in A} x_i v_i."""
    A = _check_subset(f.frame, A)
    frame = f.frame
    alg = frame.algebra
    d = alg.dim
    acc: dict = {}
    for i in A:
        u = frame.units[i - 1]
        for e, c in f.terms.items():
            e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
            _acc_add(acc, e2, alg.lmul_basis_coords(u, c), d)
    return Poly._raw(frame, _prune(acc))


def imaginary_poly(frame: Frame, A: Iterable[int] | None = None) -> Poly:
    """x_A = sum_{i in A} x_i v_i; A defaults to all of 1..n."""
    if A is None:
        A = range(1, frame.n + 1)
    return imag_mul(A, Poly.constant(frame, 1))


def spherical_value_A(A: Iterable[int], f: Poly) -> Poly:
    """(f + r_A f) / 2."""
    A = _check_subset(f.frame, A)
    if not A:
        raise ValueError("spherical value needs a nonempty index set")
    out = {}
    for e, c in f.terms.items():
        if not sum(e[i] for i in A) & 1:
            out[e] = c
    return Poly._raw(f.frame, out)


def odd_part_A(A: Iterable[int], f: Poly) -> Poly:
    """(f - r_A f) / 2."""
    A = _check_subset(f.frame, A)
    out = {}
    for e, c in f.terms.items():
        if sum(e[i] for i in A) & 1:
            out[e] = c
    return Poly._raw(f.frame, out)


def imag_weighted_value_A(A: Iterable[int], f: Poly) -> Poly:
    """A-spherical value of x_A f."""
    return spherical_value_A(A, imag_mul(A, f))


def norm_poly(frame: Frame, A: Iterable[int] | None = None) -> Poly:
    """q_A = sum_{i in A} x_i^2 as a real polynomial."""
    if A is None:
        A = range(1, frame.n + 1)
    A = _check_subset(frame, A)
    out = {}
    one = frame.algebra.scalar(1).coords
    for i in A:
        e = [0] * (frame.n + 1)
        e[i] = 2
        out[tuple(e)] = one
    return Poly._raw(frame, out)


def slice_power_parts(frame: Frame, k: int, A: Iterable[int] | None = None) -> tuple[Poly, Poly]:
    """Real polynomials (p_k, s_k) with x_A^k = p_k + s_k x_A, x_A = x0 + sum_{i in A} x_i v_i.

    Uses x^{j+1} = 2 x0 x^j - (x0^2 + q_A) x^{j-1}.
    """
    if k < 0:
        raise ValueError("power must be nonnegative")
    x0 = Poly.variable(frame, 0)
    N = add(real_mul(x0, x0), norm_poly(frame, A))
    one = Poly.constant(frame, 1)
    zero = Poly.zero(frame)
    if k == 0:
        return one, zero
    p_prev, s_prev = one, zero
    p, s = x0, one
    for _ in range(k - 1):
        p, p_prev = add(real_mul(x0, p) * 2, -real_mul(N, p_prev)), p
        s, s_prev = add(real_mul(x0, s) * 2, -real_mul(N, s_prev)), s
    return p, s


def slice_power_poly(frame: Frame, k: int, A: Iterable[int] | None = None) -> Poly:
    """The polynomial x^k (x = x0 + x_A) written in the coordinates."""
    if A is None:
        A = range(1, frame.n + 1)
    p, s = slice_power_parts(frame, k, A)
    return add(p, imag_mul(A, s))


def homogeneous_components(f: Poly) -> list[Poly]:
    """Components by total degree, in increasing degree (zero parts omitted)."""
    by_deg: dict[int, dict] = {}
    for e, c in f.terms.items():
        by_deg.setdefault(sum(e), {})[e] = c
    return [Poly._raw(f.frame, by_deg[d]) for d in sorted(by_deg)]


def x0_graded_parts(f: Poly) -> dict[int, Poly]:
    """Map m -> P_m where f = sum x0^m P_m and P_m is free of x0."""
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        out.setdefault(e[0], {})[(0,) + e[1:]] = c
    return {m: Poly._raw(f.frame, t) for m, t in sorted(out.items())}


def relabel(f: Poly, new_frame: Frame, sigma: Sequence[int]) -> Poly:
    """f_sigma: the exponent of x_i in the new polynomial is the old exponent of x_{sigma(i)}."""
    n = f.frame.n
    if new_frame.n != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..n matching the frame")
    out = {}
    for e, c in f.terms.items():
        out[(e[0],) + tuple(e[s] for s in sigma)] = c
    return Poly._raw(new_frame, out)


def random_poly(frame: Frame, rng, *, max_degree: int = 4, terms: int = 6,
                max_num: int = 3, max_den: int = 2, support: Iterable[int] | None = None) -> Poly:
    """Seeded random polynomial with small rational coefficients.

    ``rng`` is a :class:`random.Random`; ``support`` restricts the variables
    that may appear (index 0 is x0).
    """
    nv = frame.n + 1
    vars_ = list(range(nv)) if support is None else sorted(set(support))
    d = frame.algebra.dim
    acc: dict = {}
    for _ in range(terms):
        deg = rng.randint(0, max_degree)
        e = [0] * nv
        for _ in range(deg):
            e[rng.choice(vars_)] += 1
        c = [ZERO] * d
        for _ in range(rng.randint(1, 3)):
            num = rng.randint(-max_num, max_num) or 1
            c[rng.randrange(d)] += Fraction(num, rng.randint(1, max_den))
        _acc_add(acc, tuple(e), tuple(c), d)
    return Poly._raw(frame, _prune(acc))


def random_element(algebra, rng, *, max_num: int = 3, max_den: int = 2, density: int = 3) -> Element:
    c = [ZERO] * algebra.dim
    for _ in range(density):
        num = rng.randint(-max_num, max_num) or 1
        c[rng.randrange(algebra.dim)] += Fraction(num, rng.randint(1, max_den))
    return Element(algebra, tuple(c))


# ---------------------------------------------------------------------------
# canonical text form


def format_monomial(e: Sequence[int]) -> str:
    parts = []
    for i, m in enumerate(e):
        if m == 1:
            parts.append(f"x{i}")
        elif m > 1:
            parts.append(f"x{i}^{m}")
    return " ".join(parts) if parts else "1"


def format_poly(f: Poly) -> str:
    """Canonical text: terms ordered by degree then exponents, ``(coeff)*monomial``."""
    if not f.terms:
        return "0"
    alg = f.frame.algebra
    keys = sorted(f.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    out = []
    for e in keys:
        coeff = format_element(Element(alg, f.terms[e]))
        out.append(f"({coeff})*{format_monomial(e)}")
    return " + ".join(out)


class PolySyntaxError(ValueError):
    """Parse failure with a 1-based column (and line when known)."""

    def __init__(self, msg: str, col: int, line: int | None = None):
        self.msg = msg
        self.col = col
        self.line = line
        where = f"line {line}, column {col}" if line is not None else f"column {col}"
        super().__init__(f"{where}: {msg}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start + 1))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, frame: Frame):
        self.toks = _tokenize(text)
        self.i = 0
        self.frame = frame
        self.alg = frame.algebra

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise PolySyntaxError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2])

    # poly := ['-'|'+'] term (('+'|'-') term)*  |  '0'
    def poly(self) -> Poly:
        acc = Poly.zero(self.frame)
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = add(acc, self.term() * sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            acc = add(acc, self.term() * sign)
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return acc

    # term := factor ('*'? factor)*   where factor is a coefficient group, number or variable power
    def term(self) -> Poly:
        coeff = self.alg.scalar(1)
        exps = [0] * (self.frame.n + 1)
        seen = False
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val == "(":
                coeff = coeff * self.group() if coeff.is_real() else _right_real(coeff, self.group())
            elif kind == "num":
                self.take()
                coeff = coeff * _frac(val)
            elif kind == "var":
                self.take()
                idx = int(val[1:])
                if idx > self.frame.n:
                    raise PolySyntaxError(f"variable {val} exceeds x{self.frame.n}", col)
                power = 1
                if self.peek()[1] == "^":
                    self.take()
                    t = self.take()
                    if t[0] != "num" or "/" in t[1]:
                        raise PolySyntaxError("exponent must be a nonnegative integer", t[2])
                    power = int(t[1])
                exps[idx] += power
            elif kind == "name":
                self.take()
                coeff = _right_real(coeff, self.basis(val, col))
            else:
                break
            seen = True
            if self.peek()[1] == "*":
                self.take()
                nxt = self.peek()
                if nxt[0] in ("end",) or (nxt[0] == "op" and nxt[1] in "+-*)"):
                    self.error("dangling '*'")
        if not seen:
            self.error("expected a term")
        return Poly.monomial(self.frame, exps, coeff)

    def basis(self, name, col) -> Element:
        try:
            return self.alg.basis(name)
        except KeyError:
            raise PolySyntaxError(
                f"unknown basis name {name!r} for algebra {self.alg.name}", col
            ) from None

    # group := '(' combo ')' ; combo := ['+'|'-'] item (('+'|'-') item)*
    def group(self) -> Element:
        self.expect("(")
        total = self.alg.zero()
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        total = total + self.item() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.item() * sign
        self.expect(")")
        return total

    # item := factor ('*' factor)*  with factors numbers, basis names or nested groups
    def item(self) -> Element:
        val = self.ifactor()
        while self.peek()[1] == "*" and self.peek(1)[0] in ("num", "name") or (
            self.peek()[1] == "*" and self.peek(1)[1] == "("
        ):
            self.take()
            val = _right_real(val, self.ifactor())
        return val

    def ifactor(self) -> Element:
        kind, val, col = self.peek()
        if kind == "num":
            self.take()
            return self.alg.scalar(_frac(val))
        if kind == "name":
            self.take()
            return self.basis(val, col)
        if kind == "op" and val == "(":
            return self.group()
        if kind == "op" and val == "-":
            self.take()
            return -self.ifactor()
        self.error(f"expected a number, basis name or '(' but found {val or 'end of input'!r}")


def _frac(s: str) -> Fraction:
    return Fraction(s)


def _right_real(a: Element, b: Element) -> Element:
    """Product where at least one side is real (no algebra product needed)."""
    if a.is_real():
        return b * a.real
    if b.is_real():
        return a * b.real
    from .algebra import mul

    return mul(a, b)


def parse_poly(text: str, frame: Frame) -> Poly:
    """Parse the canonical text form (also accepts looser spellings such as ``(i)*x1``)."""
    if text.strip() == "0":
        return Poly.zero(frame)
    return _Parser(text, frame).poly()


def parse_element(text: str, frame: Frame) -> Element:
    p = _Parser(f"({text})", frame)
    val = p.group()
    if p.peek()[0] != "end":
        p.error("trailing input after coefficient")
    return val


__all__ = [
    "Poly", "add", "left_scale", "right_scale", "real_mul", "shift", "partial", "reflect",
    "reflect_set", "euler_A", "euler", "divide_by_xi", "NotDivisibleError", "evaluate",
    "imag_mul", "imaginary_poly", "spherical_value_A", "odd_part_A", "imag_weighted_value_A",
    "norm_poly", "slice_power_parts", "slice_power_poly", "homogeneous_components",
    "x0_graded_parts", "relabel", "random_poly", "random_element", "format_poly",
    "format_monomial", "parse_poly", "parse_element", "PolySyntaxError",
]
