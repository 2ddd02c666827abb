"""Command line front end.

    bcscan scan --q 3 --max-degree 4
    bcscan classify --q 2 --prime "t^4 + t + 1"
    bcscan bc --q 2 --prime "t^4 + t + 1"

Exit codes: 0 clean, 1 usage or input error, 2 internal consistency
failure (a dual-route check or validator tripped; the output cannot be
trusted and the bug is in this package, not in the input).
"""

from __future__ import annotations

import argparse
import sys

from .carlitz import bc_numbers
from .fields import BaseField, ConsistencyError, FieldError, fq_make
from .emit import emit
from .herbrand import ScanOptions, ScanResult, classify_prime, scan, validate_report
from .poly import Poly, PolyParseError, parse_poly, poly_to_str, residue_field, residue_to_str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for
    # consistency failures here, so route usage problems through 1
    def error(self, message):
        raise _UsageError(message)


def _q_to_base(q: int, fq_modulus: str | None) -> BaseField:
    if q < 2:
        raise FieldError("q must be a prime power >= 2")
    p = 2
    while p * p <= q and q % p != 0:
        p += 1
    if q % p != 0:
        p = q
    r = 0
    m = q
    while m % p == 0:
        m //= p
        r += 1
    if m != 1:
        raise FieldError(f"q = {q} is not a prime power")
    modulus = None
    if fq_modulus is not None:
        if r == 1:
            raise FieldError("--fq-modulus only applies to non-prime q")
        fp = fq_make(p, 1)
        modulus = parse_poly(fq_modulus, fp, var="x").coeffs
    return fq_make(p, r, modulus)


def _fq_modulus_str(base: BaseField) -> str | None:
    if base.r == 1:
        return None
    fp = fq_make(base.p, 1)
    return poly_to_str(Poly.make(fp, base.modulus), var="x")


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--q", type=int, required=True, help="base field size, a prime power")
    sp.add_argument("--fq-modulus", help="modulus of F_q over F_p, a polynomial in x")
    sp.add_argument("--precision", type=int, default=12, help="Witt vector length (default 12)")
    sp.add_argument("--check-local", action="store_true",
                    help="cross-check Bernoulli-Carlitz residues against the local model")
    sp.add_argument("--cross-check", action="store_true",
                    help="recompute L-values along the graded route as well")
    sp.add_argument("--threads", type=int, help="worker processes (default 1 or BCSCAN_THREADS)")
    sp.add_argument("--timings", action="store_true", help="print per-prime timings to stderr")
    sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
    sp.add_argument("--out", help="write output to a file instead of stdout")


def _options(args) -> ScanOptions:
    return ScanOptions(
        precision=args.precision,
        check_local=args.check_local,
        cross_check=args.cross_check,
        threads=args.threads,
        include_timings=args.timings,
    )


def _print_timings(result: ScanResult) -> None:
    for rep in result.reports:
        if rep.timings:
            parts = " ".join(f"{k}={v:.3f}s" for k, v in rep.timings.items())
            print(f"timing {rep.prime}: {parts}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bcscan", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scan", help="classify all primes up to a degree bound")
    _add_common(sp)
    sp.add_argument("--max-degree", type=int, required=True)

    cp = sub.add_parser("classify", help="full per-index report for one prime")
    _add_common(cp)
    cp.add_argument("--prime", required=True, help="monic irreducible polynomial in t")

    bp = sub.add_parser("bc", help="print Bernoulli-Carlitz residues at one prime")
    bp.add_argument("--q", type=int, required=True)
    bp.add_argument("--fq-modulus")
    bp.add_argument("--prime", required=True)
    bp.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        base = _q_to_base(args.q, args.fq_modulus)
        if args.command == "scan":
            result = scan(base, args.max_degree, _options(args))
            validate_report(result)
            if args.timings:
                _print_timings(result)
            text = emit(result, args.format, args.out)
        elif args.command == "classify":
            prime = parse_poly(args.prime, base)
            report = classify_prime(prime, _options(args))
            result = ScanResult(
                q=base.size,
                fq_modulus=_fq_modulus_str(base),
                max_degree=prime.degree,
                precision=args.precision,
                primes_scanned=1,
                reports=(report,),
            )
            validate_report(result)
            if args.timings:
                _print_timings(result)
            text = emit(result, args.format, args.out, detail=True)
        else:
            prime = parse_poly(args.prime, base)
            rf = residue_field(prime)
            bc = bc_numbers(rf)
            lines = [
                f"{n}\t{residue_to_str(rf, int(bc.values[n]))}"
                for n in range(1, len(bc.values))
            ]
            text = "\n".join(lines) + "\n" if lines else ""
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
        if not getattr(args, "out", None):
            sys.stdout.write(text)
        return 0
    except _UsageError as exc:
        print(f"bcscan: {exc}", file=sys.stderr)
        return 1
    except (FieldError, PolyParseError, OSError) as exc:
        print(f"bcscan: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"bcscan: consistency failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
