"""Command-line front end.

Machine-readable JSON goes to stdout, a short human summary to stderr.
Exit codes: 0 success, 1 negative verdicts, 2 input error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .algebra import Frame, make_algebra
from .errors import InvariantViolation, PreconditionError
from .operators import (
    casimir_A,
    cauchy_riemann,
    dunkl_CR_A,
    dunkl_CR_P,
    dunkl_laplacian,
    dunkl_T,
    gamma_spherical,
    gamma_tilde_A,
    laplacian,
    report,
    s_dprime_A,
    s_prime_A,
    thetabar_mult,
)
from .polynomial import Poly, PolySyntaxError, format_poly, parse_poly
from .spaces import (
    PartitionSpec,
    Verdict,
    a_default_multiplicities,
    block_admissible,
    census,
    check_partition,
    default_multiplicities,
    enumerate_partitions,
    format_partition,
    is_slice_poly,
    is_slice_regular_poly,
    membership_A,
    membership_P,
    parse_partition,
    profile,
    slice_regular_coefficients,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class DocumentError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"line {line}, column {col}: {msg}")


# ---------------------------------------------------------------------------
# input documents


@dataclass
class InputDocument:
    algebra: str
    frame: Frame
    k: tuple[Fraction, ...] | None = None
    partition: tuple[tuple[int, ...], ...] | None = None
    polys: list[tuple[str, Poly]] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, InputDocument):
            return NotImplemented
        return (self.frame == other.frame and self.k == other.k
                and self.partition == other.partition and self.polys == other.polys)


def parse_fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad multiplicity list {text!r}: {exc}") from None


_POLY_LINE = re.compile(r"^poly\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*")


def parse_document(text: str) -> InputDocument:
    """Parse ``algebra:``, optional ``k:`` and ``partition:`` headers and ``poly name = ...`` lines."""
    doc = None
    k = partition = None
    polys: list[tuple[str, Poly]] = []
    seen: set[str] = set()
    pending = []  # header lines that need the frame
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("algebra", "k", "partition"):
            key = key.strip()
            value = rest.strip()
            if key == "algebra":
                if doc is not None:
                    raise DocumentError("algebra declared twice", lineno)
                try:
                    _, frame = make_algebra(value)
                except ValueError as exc:
                    raise DocumentError(str(exc), lineno, indent + line.index(value) + 1) from None
                doc = InputDocument(value, frame)
            else:
                pending.append((lineno, key, value))
            continue
        m = _POLY_LINE.match(line)
        if not m:
            raise DocumentError("expected 'algebra:', 'k:', 'partition:' or 'poly NAME = ...'", lineno, indent + 1)
        if doc is None:
            raise DocumentError("poly before algebra declaration", lineno, indent + 1)
        name = m.group(1)
        if name in seen:
            raise DocumentError(f"duplicate polynomial name {name!r}", lineno, indent + m.start(1) + 1)
        seen.add(name)
        body = line[m.end():]
        try:
            polys.append((name, parse_poly(body, doc.frame)))
        except (PolySyntaxError,) as exc:
            raise DocumentError(exc.msg, lineno, indent + m.end() + exc.col) from None
        except (ValueError, IndexError) as exc:
            raise DocumentError(str(exc), lineno, indent + m.end() + 1) from None
    if doc is None:
        raise DocumentError("missing 'algebra:' declaration", max(1, len(text.splitlines())))
    n = doc.frame.n
    for lineno, key, value in pending:
        try:
            if key == "k":
                k = parse_fractions(value)
                if len(k) != n:
                    raise ValueError(f"expected {n} multiplicities, got {len(k)}")
            else:
                partition = parse_partition(value, n)
        except ValueError as exc:
            raise DocumentError(str(exc), lineno) from None
    doc.k, doc.partition, doc.polys = k, partition, polys
    return doc


def serialize_document(doc: InputDocument) -> str:
    lines = [f"algebra: {doc.algebra}"]
    if doc.k is not None:
        lines.append("k: " + ",".join(str(x) for x in doc.k))
    if doc.partition is not None:
        lines.append("partition: " + format_partition(doc.partition))
    lines += [f"poly {name} = {format_poly(p)}" for name, p in doc.polys]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# classification


def verdict_json(v: Verdict) -> dict:
    return {
        "member": v.member,
        "checks": dict(v.checks),
        "witnesses": {name: format_poly(p) for name, p in v.witnesses.items()},
    }


def _parse_set(text: str, n: int) -> tuple[int, ...]:
    A = tuple(sorted({int(s) for s in text.replace("{", "").replace("}", "").split(",") if s.strip()}))
    if not A or any(not 1 <= i <= n for i in A):
        raise ValueError(f"index set {text!r} must be a nonempty subset of 1..{n}")
    return A


def classify(doc: InputDocument, A=None, P=None, k=None, all_partitions: bool = False) -> dict:
    frame = doc.frame
    n = frame.n
    k = k if k is not None else doc.k
    P = P if P is not None else doc.partition
    if A is not None and k is not None and not block_admissible(A, k):
        raise PreconditionError(f"multiplicities {k} are not admissible on {set(A)}")
    if P is not None and k is not None:
        spec = PartitionSpec.make(n, P, k)
        if not spec.admissible:
            raise PreconditionError(f"multiplicities {k} are not admissible for {spec}")
    parts = list(enumerate_partitions(n)) if all_partitions else []
    results = []
    for name, f in doc.polys:
        entry: dict = {"name": name}
        sv = is_slice_poly(frame, f)
        rv = is_slice_regular_poly(frame, f)
        entry["slice"] = verdict_json(sv)
        entry["slice_regular"] = verdict_json(rv)
        if rv.member:
            entry["slice_regular"]["coefficients"] = [str(a) for a in slice_regular_coefficients(frame, f)]
        if A is not None:
            entry["A"] = {"A": list(A), **verdict_json(membership_A(frame, k, A, f))}
        if P is not None:
            spec = PartitionSpec.make(n, P, k)
            entry["P"] = {"P": format_partition(spec.blocks), **verdict_json(membership_P(frame, spec, f))}
        if all_partitions:
            sweep = []
            for blocks in parts:
                v = membership_P(frame, PartitionSpec.make(n, blocks), f)
                sweep.append({
                    "P": format_partition(blocks),
                    "profile": list(profile(blocks)),
                    "member": v.member,
                })
            entry["partitions"] = sweep
        results.append(entry)
    out = {"schema_version": SCHEMA_VERSION, "command": "classify", "algebra": doc.algebra, "n": n,
           "polys": results}
    if all_partitions:
        out["partition_count"] = len(parts)
    return out


def _negative(result: dict) -> bool:
    for entry in result["polys"]:
        keys = ["slice", "slice_regular", "A", "P"]
        if any(key in entry and not entry[key]["member"] for key in keys):
            return True
        if any(not s["member"] for s in entry.get("partitions", [])):
            return True
    return False


# ---------------------------------------------------------------------------
# operators by name


_OP = re.compile(r"^(?P<name>[A-Za-z-]+?)(?P<idx>\d+)?(?:\[(?P<A>[\d,\s]*)\]|\{(?P<P>[\d,|\s]*)\})?$")


def apply_operator(frame: Frame, spec: str, f: Poly, k=None) -> Poly:
    m = _OP.match(spec.strip())
    if not m:
        raise ValueError(f"unknown operator {spec!r}")
    name, n = m.group("name"), frame.n
    full = tuple(range(1, n + 1))
    A = _parse_set(m.group("A"), n) if m.group("A") is not None else None
    if name in ("dbar", "laplace", "gamma", "thetabar-mult") and not (A or m.group("idx") or m.group("P")):
        return {"dbar": cauchy_riemann, "laplace": laplacian, "gamma": gamma_spherical,
                "thetabar-mult": thetabar_mult}[name](frame, f)
    if name == "T" and m.group("idx"):
        return dunkl_T(frame, k or default_multiplicities([full]), int(m.group("idx")), f)
    if name == "DunklLaplace" and not A:
        return dunkl_laplacian(frame, k or default_multiplicities([full]), f)
    if name == "D" and m.group("P") is not None:
        blocks = check_partition(parse_partition("{" + m.group("P") + "}", n), n)
        return dunkl_CR_P(frame, k or default_multiplicities(blocks, n), blocks, f)
    if A is not None:
        kA = k or a_default_multiplicities(frame, A)
        table = {
            "D": lambda: dunkl_CR_A(frame, kA, A, f),
            "S": lambda: casimir_A(frame, kA, A, f),
            "Sprime": lambda: s_prime_A(kA, A, f),
            "Sdprime": lambda: s_dprime_A(frame, kA, A, f),
            "GammaTilde": lambda: gamma_tilde_A(frame, kA, A, f),
        }
        if name in table:
            return table[name]()
    raise ValueError(f"unknown operator {spec!r}")


# ---------------------------------------------------------------------------
# pointwise sweeps


DEFAULT_RESTRICTION_SETS = {"H": (2, 3), "Cl(0,4)": (3, 4), "O": (3, 4, 5, 6, 7)}


def run_pointcheck(theorem: str, algebra: str, samples: int, seed: int, A=None, P=None) -> dict:
    from .pointcheck import (
        check_difference_at,
        constructed_point,
        dbar_J,
        off_axis_point,
        rational_sphere_point,
        reconstruct_p_slice_at,
        restrict_to_slice,
    )
    from .samples import fa_member, kernel_sp_sample, slice_regular_poly
    from .polynomial import random_poly

    _, frame = make_algebra(algebra)
    n = frame.n
    rng = random.Random(seed)
    passed = 0
    failures = []
    extra: dict = {}
    if theorem == "difference":
        for s in range(samples):
            f = (slice_regular_poly(frame, rng, max_degree=3) if s % 2
                 else random_poly(frame, rng, max_degree=3, terms=4))
            ok = check_difference_at(frame, f, off_axis_point(frame, rng))
            passed += ok
            if not ok:
                failures.append(format_poly(f))
    elif theorem == "kerSP":
        blocks = check_partition(P, n) if P else (((1,), tuple(range(2, n + 1))) if n > 1 else ((1,),))
        extra["P"] = format_partition(blocks)
        k = default_multiplicities(blocks, n)
        for _ in range(samples):
            f = kernel_sp_sample(frame, blocks, rng)
            pt, _, _ = constructed_point(frame, blocks, rng)
            ok = reconstruct_p_slice_at(frame, blocks, f, pt, k, rng)
            passed += ok
            if not ok:
                failures.append(format_poly(f))
    elif theorem == "slice-restriction":
        A = A or DEFAULT_RESTRICTION_SETS.get(frame.label, tuple(range(1, n + 1)))
        extra["A"] = list(A)
        k = a_default_multiplicities(frame, A)
        f = fa_member(frame, A, rng)
        v = membership_A(frame, k, A, f)
        if not v.member:
            raise InvariantViolation("generated sample is not a member of F_A")
        for _ in range(samples):
            J = rational_sphere_point(len(A), rng)
            ok = dbar_J(frame, restrict_to_slice(frame, f, A, J)).is_zero()
            passed += ok
            if not ok:
                failures.append(",".join(str(c) for c in J.coords))
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    return {"schema_version": SCHEMA_VERSION, "command": "pointcheck", "theorem": theorem,
            "algebra": algebra, "seed": seed, "samples": samples, **extra,
            "passed": passed, "failures": failures}


# ---------------------------------------------------------------------------
# main


def _emit(payload: dict, summary: str, quiet: bool):
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    if not quiet and summary:
        sys.stderr.write(summary.rstrip() + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperdunkl", description="Slice and Dunkl-regular polynomial toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine report only (no stderr summary)")
    common.add_argument("--k", help="multiplicity override, e.g. -1/3,-1/3,-1/3")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify the polynomials of a document")
    c.add_argument("file", help="input document ('-' for stdin)")
    c.add_argument("--A", help="index set for F_A membership, e.g. 2,3")
    c.add_argument("--P", help="partition for F_P membership, e.g. {1|2,3}")
    c.add_argument("--all-partitions", action="store_true")

    a = sub.add_parser("apply", parents=[common], help="apply a named operator")
    a.add_argument("file")
    a.add_argument("--op", required=True, help="dbar, laplace, gamma, thetabar-mult, T<i>, D[A], D{P}, "
                                               "S[A], Sprime[A], Sdprime[A], GammaTilde[A], DunklLaplace")

    e = sub.add_parser("enumerate", parents=[common], help="list the partitions of [n]")
    e.add_argument("--n", type=int, required=True)

    pr = sub.add_parser("perron", parents=[common], help="build and verify the reflection matrix")
    pr.add_argument("--n", type=int)
    pr.add_argument("--i0", type=int)

    pc = sub.add_parser("pointcheck", parents=[common], help="exact pointwise checks")
    pc.add_argument("--theorem", required=True, choices=["difference", "kerSP", "slice-restriction"])
    pc.add_argument("--algebra", default="H")
    pc.add_argument("--samples", type=int, default=10)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--A")
    pc.add_argument("--P")

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument("--filter", help="criterion numbers or tags, comma separated (e.g. osp)")
    st.add_argument("--sabotage", choices=["table"], help=argparse.SUPPRESS)
    return p


def _cmd_classify(args) -> int:
    doc = parse_document(_read(args.file))
    n = doc.frame.n
    k = parse_fractions(args.k) if args.k else None
    if k is not None and len(k) != n:
        raise ValueError(f"expected {n} multiplicities, got {len(k)}")
    A = _parse_set(args.A, n) if args.A else None
    P = parse_partition(args.P, n) if args.P else None
    res = classify(doc, A, P, k, args.all_partitions)
    lines = []
    for e in res["polys"]:
        bits = [f"slice={e['slice']['member']}", f"regular={e['slice_regular']['member']}"]
        if "A" in e:
            bits.append(f"F_A={e['A']['member']}")
        if "P" in e:
            bits.append(f"F_P={e['P']['member']}")
        if "partitions" in e:
            bits.append(f"member of {sum(s['member'] for s in e['partitions'])}/{len(e['partitions'])} F_P")
        lines.append(f"{e['name']}: " + " ".join(bits))
    _emit(res, "\n".join(lines), args.json)
    return EXIT_NEGATIVE if _negative(res) else EXIT_OK


def _cmd_apply(args) -> int:
    doc = parse_document(_read(args.file))
    k = parse_fractions(args.k) if args.k else doc.k
    if k is not None and len(k) != doc.frame.n:
        raise ValueError(f"expected {doc.frame.n} multiplicities, got {len(k)}")
    out = []
    for name, f in doc.polys:
        rep = report(args.op, f, apply_operator(doc.frame, args.op, f, k))
        out.append({"name": name, **rep.to_dict()})
    summary = "\n".join(f"{o['name']}: {o['operator']} -> {o['output']}" for o in out)
    _emit({"schema_version": SCHEMA_VERSION, "command": "apply", "algebra": doc.algebra, "results": out},
          summary, args.json)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    if args.n < 1:
        raise ValueError("n must be at least 1")
    parts = [{"P": format_partition(b), "profile": list(profile(b)),
              "default_k": [str(x) for x in default_multiplicities(b, args.n)]}
             for b in enumerate_partitions(args.n)]
    bell, pn, subsets = census(args.n)
    _emit({"schema_version": SCHEMA_VERSION, "command": "enumerate", "n": args.n, "partitions": parts,
           "census": {"bell": bell, "integer_partitions": pn, "subsets": subsets}},
          f"n={args.n}: {bell} set partitions, {pn} profiles, 2^n-n = {subsets}", args.json)
    return EXIT_OK


def _cmd_perron(args) -> int:
    from .spectral import build_reflection_matrix, verify_perron

    if args.k:
        k = parse_fractions(args.k)
        if args.n is not None and args.n != len(k):
            raise ValueError(f"--n {args.n} does not match {len(k)} multiplicities")
    elif args.n:
        k = default_multiplicities([tuple(range(1, args.n + 1))])
    else:
        raise ValueError("give --n or --k")
    m = build_reflection_matrix(k, args.i0)
    rep = verify_perron(m)
    _emit({"schema_version": SCHEMA_VERSION, "command": "perron", "matrix": m.to_dict(),
           "report": rep.to_dict()},
          f"order {m.order}, rank(I-A) = {rep.rank}, {'ok' if rep.ok else 'FAILED'}", args.json)
    return EXIT_OK if rep.ok else EXIT_INVARIANT


def _cmd_pointcheck(args) -> int:
    _, frame = make_algebra(args.algebra)
    A = _parse_set(args.A, frame.n) if args.A else None
    P = parse_partition(args.P, frame.n) if args.P else None
    res = run_pointcheck(args.theorem, args.algebra, args.samples, args.seed, A, P)
    _emit(res, f"{args.theorem}: {res['passed']}/{args.samples} exact checks passed", args.json)
    return EXIT_OK if not res["failures"] else EXIT_INVARIANT


def _cmd_selftest(args) -> int:
    from .acceptance import run

    def show(r):
        if not args.json:
            sys.stderr.write(r.line() + "\n")
            sys.stderr.flush()

    results = run(args.filter, sabotage=args.sabotage == "table", report=show)
    payload = {"schema_version": SCHEMA_VERSION, "command": "selftest",
               "criteria": [{"number": r.number, "title": r.title, "ok": r.ok, "detail": r.detail}
                            for r in results]}
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    if not results:
        sys.stderr.write("no criteria matched the filter\n")
        return EXIT_INPUT
    return EXIT_OK if all(r.ok for r in results) else EXIT_NEGATIVE


COMMANDS = {
    "classify": _cmd_classify,
    "apply": _cmd_apply,
    "enumerate": _cmd_enumerate,
    "perron": _cmd_perron,
    "pointcheck": _cmd_pointcheck,
    "selftest": _cmd_selftest,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except (DocumentError, PreconditionError, ValueError, IndexError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
