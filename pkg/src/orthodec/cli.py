"""``orthodec`` command line.

Exit codes: 0 success / valid, 1 verification or necessary condition
failed, 2 usage or parse error (with a reason slug on stderr).
"""

from __future__ import annotations

import argparse
import sys

from . import certificate
from .errors import CertificateError, OrthodecError
from .finring import decompose_local, parse_ring
from .gf2m import (DEFAULT_MAX_M, INFINITY, build_symp_basis, enumerate_Q, field_alphas,
                   omega_index, omega_sizes_expected)
from .odac import construct, necessary_check_sl


def _fail(reason: str, msg: str) -> int:
    print(f"error: {reason}: {msg}", file=sys.stderr)
    return 2


def cmd_construct(args) -> int:
    R = parse_ring(args.ring)
    D = construct(args.algebra, args.size, R)
    text = certificate.dumps(D)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {args.out}: {D.algebra}, {len(D.components)} components of ranks {D.ranks}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CertificateError(f"cannot read {args.cert}: {exc.strerror}") from exc
    cert = certificate.loads(text)
    report = certificate.verify_certificate(cert, killing=args.killing)
    if report.is_odac:
        print(f"valid: {cert.algebra} = " + " + ".join(cert.names) + f" ({len(cert.names)} components)")
        return 0
    print(f"invalid: {cert.algebra}")
    for line in report.lines(cert.algebra.ring):
        print(line)
    return 1


def cmd_ring(args) -> int:
    R = parse_ring(args.descriptor)
    fac = decompose_local(R)
    print(f"ring: {R.descriptor()}")
    print(f"size: {R.size}")
    print(f"char: {R.char}")
    print("factors: " + ", ".join(f.descriptor() for f in fac.factors))
    for i, f in enumerate(fac.factors):
        kind = "field" if f.is_field else "local"
        print(f"  [{i}] {f.descriptor()}  {kind}, char {f.char}, size {f.size}")
    return 0


def cmd_check_sl(args) -> int:
    R = parse_ring(args.ring)
    res = necessary_check_sl(args.n, R)
    print(res.describe())
    if res.passed:
        return 0
    f = res.factor
    x = f.format_elem(int(res.witness.data[0, 0]))
    print(f"witness: diagonal entries {x}, off-diagonal 0, over {f.descriptor()}; "
          f"trace {f.format_elem(int(res.witness.trace()))}")
    return 1


def _line_of(field, w) -> object:
    if w.alpha == 0:
        return INFINITY
    return next(a for a in range(field.order) if field.mul(a, w.alpha) == w.beta)


def cmd_enumq(args) -> int:
    m = args.m
    if m < 0 or m > DEFAULT_MAX_M:
        return _fail("unsupported-size", f"m must be in 0..{DEFAULT_MAX_M}")
    basis = build_symp_basis(m)
    F = basis.field
    d = F.degree
    Q = enumerate_Q(m, basis)
    print("# coords(a;b)  vector(alpha;beta)  omega  line")
    per_omega = [0] * (m + 2)
    per_line = {a: 0 for a in field_alphas(m)}
    for w in Q:
        a, b = basis.coords(w)
        j = omega_index(w, basis)
        line = _line_of(F, w)
        per_omega[j] += 1
        per_line[line] += 1
        coord = "".join(map(str, a)) + ";" + "".join(map(str, b))
        print(f"{coord}  {w.text(d)}  {j}  {line}")
    formula = 2**m * (2 ** (m + 1) + 1)
    print(f"|Q| = {len(Q)} = 2^{m}(2^{m + 1}+1)" if len(Q) == formula
          else f"|Q| = {len(Q)} != 2^{m}(2^{m + 1}+1) = {formula}")
    print("Omega sizes: " + " ".join(str(c) for c in per_omega)
          + f"  (expected {' '.join(map(str, omega_sizes_expected(m)))})")
    print("Q_alpha sizes: " + " ".join(f"{a}:{c}" for a, c in per_line.items()) + f"  (expected {2**m} each)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthodec", description="Orthogonal decompositions of classical Lie algebras over finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a decomposition and emit its certificate")
    c.add_argument("--algebra", choices=["sl", "sp", "so"], required=True)
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--ring", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a certificate")
    v.add_argument("cert")
    v.add_argument("--killing", choices=["generic", "closed"], default="generic")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("ring", help="local factorization of a ring")
    r.add_argument("descriptor")
    r.set_defaults(func=cmd_ring)

    s = sub.add_parser("check-sl", help="gcd necessary condition for sl_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ring", required=True)
    s.set_defaults(func=cmd_check_sl)

    q = sub.add_parser("enumq", help="list Q with its partition counts")
    q.add_argument("--m", type=int, required=True)
    q.set_defaults(func=cmd_enumq)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OrthodecError as exc:
        return _fail(exc.reason, str(exc))
    except ValueError as exc:
        return _fail("invalid-argument", str(exc))


if __name__ == "__main__":
    sys.exit(main())
