"""Command-line front end.

Exit codes: 0 success, 1 domain failure (non-unitary input, bad dimension,
index out of range), 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import _backend, decomposer, qudit, sigperm
from .matcore import (
    DEFAULT_TOL,
    MatrixFormatError,
    haar_random,
    is_unitary,
    parse_matrix,
    serialize_matrix,
    trace,
)

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class CliIOError(Exception):
    pass


def _read(path: str | None) -> str:
    try:
        if path is None or path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliIOError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(document: str, args, summary: dict, text_lines: list[str]) -> None:
    """Write the output document, then the summary.

    With ``--out`` the summary goes to stdout; otherwise the document owns
    stdout and the summary moves to stderr.
    """
    if args.out:
        try:
            Path(args.out).write_text(document + "\n", encoding="utf-8")
        except OSError as exc:
            raise CliIOError(f"cannot write {args.out}: {exc.strerror or exc}") from None
        stream = sys.stdout
    else:
        sys.stdout.write(document + "\n")
        stream = sys.stderr
    _summary(stream, args, summary, text_lines)


def _summary(stream, args, summary: dict, text_lines: list[str]) -> None:
    if args.json:
        stream.write(json.dumps(summary) + "\n")
    else:
        for line in text_lines:
            stream.write(line + "\n")


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _fmt(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _width(n: int, p: int, w: int | None) -> int:
    inferred = decomposer.width_of(n, p)
    if w is not None and w != inferred:
        raise ValueError(f"--w {w} does not match matrix side {n} = {p}^{inferred}")
    return inferred


def cmd_decompose(args) -> int:
    U = parse_matrix(_read(args.input))
    w = _width(U.shape[0], args.p, args.w)
    ok, unit_res = is_unitary(U, args.tol)
    if not ok:
        if not args.force:
            print(f"error: input is not unitary (residual {unit_res:.3g} > {args.tol:.3g})", file=sys.stderr)
            return EXIT_DOMAIN
        print(f"warning: input is not unitary (residual {unit_res:.3g}); normalization identities will not hold", file=sys.stderr)
    opts = dict(tol=args.tol, check_unitary=False, residual=args.check)
    if args.p == 2:
        fn = decomposer.decompose_projective if args.scheme == "projective" else decomposer.decompose_group
        dec = fn(U, w, fast=True if args.fast else None, **opts)
    else:
        fn = qudit.prime_decompose_projective if args.scheme == "projective" else qudit.prime_decompose_group
        dec = fn(U, args.p, w, **opts)
    summary = {
        "command": "decompose",
        "scheme": dec.scheme,
        "p": dec.p,
        "w": dec.w,
        "weights": len(dec.weights),
        "weight_sum": _cplx(dec.weight_sum),
        "norm_sq": dec.norm_sq,
        "row0_sum": _cplx(complex(np.sum(U[0]))),
        "unitarity_residual": unit_res,
        "backend": "compiled" if _backend.COMPILED else "numpy",
    }
    lines = [
        f"{dec.scheme} decomposition, p={dec.p}, w={dec.w}, {len(dec.weights)} weights",
        f"sum of weights     = {_fmt(dec.weight_sum)}",
        f"sum of |weights|^2 = {dec.norm_sq:.17g}",
    ]
    if args.check:
        summary["residual"] = dec.residual
        lines.append(f"reconstruction residual = {dec.residual:.3g}")
    _emit(decomposer.serialize_decomposition(dec, args.prune), args, summary, lines)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    dec = decomposer.parse_decomposition(_read(args.input))
    U = decomposer.reconstruct(dec)
    _, res = is_unitary(U)
    summary = {"command": "reconstruct", "scheme": dec.scheme, "p": dec.p, "w": dec.w, "n": int(U.shape[0]), "unitarity_residual": res}
    _emit(serialize_matrix(U), args, summary, [f"reconstructed {U.shape[0]}x{U.shape[0]} matrix from {dec.scheme} weights (unitarity residual {res:.3g})"])
    return EXIT_OK


def cmd_element(args) -> int:
    if args.w is None or args.j is None:
        raise ValueError("element needs --w and --j")
    if args.p == 2:
        g = sigperm.GroupIndex.from_index(args.w, args.j)
        tr = complex(sigperm.group_trace(g))
        S = sigperm.dense(g) if args.w <= sigperm.DENSE_CAP else None
        det = complex(sigperm.determinant(g)) if S is not None else None
        info = g.to_json()
        info["p"] = 2
    else:
        qudit.check_prime(args.p, args.w)
        g = qudit.PrimeGroupIndex.from_index(args.p, args.w, args.j)
        S = qudit.prime_dense(g)
        tr = trace(S)
        det = complex(np.linalg.det(S))
        info = g.to_json()
    summary = {"command": "element", **info, "trace": _cplx(tr), "determinant": None if det is None else _cplx(det)}
    lines = [
        f"p={info['p']} w={info['w']} j={info['j']}",
        f"b={info['b']} a={info['a']} d={info['d']}",
        f"trace = {_fmt(tr)}",
        f"determinant = {'n/a' if det is None else _fmt(det)}",
    ]
    if args.dense:
        if S is None:
            raise ValueError(f"width {args.w} exceeds the dense cap {sigperm.DENSE_CAP}")
        summary["dense"] = json.loads(serialize_matrix(S))
        lines.append(serialize_matrix(S))
    _summary(sys.stdout, args, summary, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    U = parse_matrix(_read(args.input))
    ok, res = is_unitary(U, args.tol)
    _summary(
        sys.stdout,
        args,
        {"command": "verify", "n": int(U.shape[0]), "unitary": ok, "residual": res, "tol": args.tol},
        [f"{'unitary' if ok else 'NOT unitary'}: residual {res:.3g} (tol {args.tol:.3g})"],
    )
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_random(args) -> int:
    if args.w is None or args.seed is None:
        raise ValueError("random needs --w and --seed")
    if args.p != 2:
        qudit.check_prime(args.p, args.w)
    if args.seed < 0:
        raise ValueError("--seed must be non-negative")
    n = args.p**args.w
    U = haar_random(n, args.seed)
    _, res = is_unitary(U)
    _emit(
        serialize_matrix(U),
        args,
        {"command": "random", "n": n, "seed": args.seed, "unitarity_residual": res},
        [f"Haar-random {n}x{n} unitary, seed {args.seed} (unitarity residual {res:.3g})"],
    )
    return EXIT_OK


GRAM_CAP = 5


def cmd_table(args) -> int:
    if args.w is None:
        raise ValueError("table needs --w")
    p, w = args.p, args.w
    n = p**w
    summary = {"command": "table", "p": p, "w": w}
    if p == 2:
        c = sigperm.census(w)
        summary.update(
            order=c.order,
            buckets={"all_plus": c.all_plus, "all_minus": c.all_minus, "half_half": c.half_half},
            trace_sq_sum=c.trace_sq_sum,
            all_unit_determinant=c.all_unit_determinant,
        )
        evens = [sigperm.dense(g).real.ravel() for g in sigperm.elements(w) if g.d == 0] if w <= GRAM_CAP else None
    else:
        qudit.check_prime(p, w)
        if w > 2:
            raise ValueError("table for p > 2 supports w <= 2")
        mats = [qudit.prime_dense(qudit.PrimeGroupIndex.from_index(p, w, j)) for j in range(p ** (2 * w + 1))]
        distinct = {np.round(M, 12).tobytes() for M in mats}
        summary.update(order=len(distinct), trace_sq_sum=float(sum(abs(np.trace(M)) ** 2 for M in mats)))
        evens = [M.ravel() for M, j in zip(mats, range(len(mats))) if j % p == 0]
    if evens is not None:
        V = np.array(evens)
        G = V.conj() @ V.T
        summary["gram_is_scaled_identity"] = bool(np.max(np.abs(G - n * np.eye(len(evens)))) <= 1e-12)
        summary["gram_scale"] = n
    else:
        summary["gram_is_scaled_identity"] = None
    lines = [f"p={p} w={w}: order {summary['order']}, sum |Tr|^2 = {summary['trace_sq_sum']:g}"]
    if p == 2:
        b = summary["buckets"]
        lines.append(f"sign buckets: all +1 {b['all_plus']}, all -1 {b['all_minus']}, half/half {b['half_half']}")
        lines.append(f"all determinants +1: {summary['all_unit_determinant']}")
    if summary["gram_is_scaled_identity"] is None:
        lines.append(f"Gram check skipped above w={GRAM_CAP}")
    else:
        lines.append(f"Gram matrix over d=0 elements == {n}*I: {summary['gram_is_scaled_identity']}")
    _summary(sys.stdout, args, summary, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spdecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, io_in=True, io_out=True):
        if io_in:
            sp.add_argument("--in", dest="input", metavar="PATH", help="input file (default: stdin)")
        if io_out:
            sp.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        sp.add_argument("--p", type=int, default=2, help="prime local dimension (default 2)")
        sp.add_argument("--w", type=int, help="width; inferred from the input when omitted")
        sp.add_argument("--json", action="store_true", help="print a JSON summary object")

    sp = sub.add_parser("decompose", help="decompose a unitary matrix")
    common(sp)
    sp.add_argument("--scheme", choices=decomposer.SCHEMES, default="group")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--prune", type=float, help="drop weights with |weight| <= PRUNE from the output")
    sp.add_argument("--check", action="store_true", help="report the reconstruction residual")
    sp.add_argument("--fast", action="store_true", help="force the Walsh-Hadamard weight path")
    sp.add_argument("--force", action="store_true", help="decompose even if the input is not unitary")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("reconstruct", help="rebuild a matrix from a decomposition file")
    common(sp)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("element", help="describe one group element")
    common(sp, io_in=False, io_out=False)
    sp.add_argument("--j", type=int, help="element label")
    sp.add_argument("--dense", action="store_true", help="include the dense matrix")
    sp.set_defaults(func=cmd_element)

    sp = sub.add_parser("verify", help="check unitarity (exit 1 if not unitary)")
    common(sp, io_out=False)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("random", help="write a Haar-random unitary")
    common(sp, io_in=False)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("table", help="group census and Gram summary")
    common(sp, io_in=False, io_out=False)
    sp.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_DOMAIN
    if args.p != 2 and not qudit.is_prime(args.p):
        print(f"error: p={args.p} is not prime", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return args.func(args)
    except (CliIOError, MatrixFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
