"""Command line entry point: ``dihedral-hamilton {decompose,verify,sweep}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .cayley import InvalidConnectionSet, build_graph, parse_connection_set
from .certificate import Certificate, CertificateFormatError, render_dot, render_text
from .decomp import DecompositionError, PreconditionError, decompose, decompose_tetravalent
from .dihedral import ElementParseError, is_prime
from .oracle import MAX_EDGES, MAX_VERTICES, InstanceSweep, brute_force_decomposition
from .verify import verify_decomposition

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-hamilton",
        description="Construct and check Hamilton decompositions of Cayley graphs on dihedral groups.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="construct a certificate for Cay(D_2n, S)")
    dec.add_argument("--n", type=int, required=True)
    dec.add_argument("--set", dest="set", help="connection set, e.g. r1,r6,s0")
    dec.add_argument("--format", choices=["json", "text", "dot"], default="json")
    dec.add_argument(
        "--tetravalent",
        action="store_true",
        help="use S = {r<i>, r<-i>, s<j>, s<k>} on any n >= 3",
    )
    dec.add_argument("--i", type=int)
    dec.add_argument("--j", type=int)
    dec.add_argument("--k", type=int)

    ver = sub.add_parser("verify", help="check a JSON certificate")
    ver.add_argument("--certificate", required=True, help="path to the certificate, or - for stdin")

    sw = sub.add_parser("sweep", help="decompose and verify every connection set on D_2p")
    sw.add_argument("--p", type=int, required=True)
    sw.add_argument("--oracle", action="store_true", help="also cross-check with exhaustive search")
    sw.add_argument("--jobs", type=int, default=1)
    return parser


def cmd_decompose(args: argparse.Namespace) -> int:
    if args.tetravalent:
        if None in (args.i, args.j, args.k):
            raise UsageError("--tetravalent needs --i, --j and --k")
        d = decompose_tetravalent(args.n, args.i, args.j, args.k)
        n = args.n
        i, j, k = args.i % n, args.j, args.k
        S = parse_connection_set(f"r{i},r{-i % n},s{j},s{k}", n)
    else:
        if args.set is None:
            raise UsageError("--set is required unless --tetravalent is given")
        if not is_prime(args.n):
            raise UsageError(f"n={args.n} is not prime; only --tetravalent handles composite n")
        S = parse_connection_set(args.set, args.n)
        d = decompose(args.n, S)

    graph = build_graph(S)
    report = verify_decomposition(graph, d)
    if not report.ok:
        json.dump(report.to_json(), sys.stderr, indent=2)
        print("\nself-verification failed; this is a bug", file=sys.stderr)
        return EXIT_FAILED

    cert = Certificate.from_decomposition(S, d)
    if args.format == "json":
        print(cert.dumps())
    elif args.format == "text":
        sys.stdout.write(render_text(cert))
    else:
        sys.stdout.write(render_dot(graph, d))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.certificate == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.certificate).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.certificate}: {exc}") from exc
    cert = Certificate.loads(text)
    graph = build_graph(cert.connection())
    report = verify_decomposition(graph, cert.to_decomposition())
    print(json.dumps(report.to_json(), indent=2))
    return EXIT_OK if report.ok else EXIT_FAILED


def _route_key(routes: tuple[str, ...], matching_route: str | None) -> str:
    seen = dict.fromkeys(routes + ((matching_route,) if matching_route else ()))
    return "+".join(seen) or "-"


def sweep_instance(p: int, tokens: tuple[str, ...], oracle: bool) -> tuple[str, bool, str | None, str]:
    """Decompose and verify one instance; returns (route, ok, oracle status, message)."""
    S = parse_connection_set(",".join(tokens), p)
    graph = build_graph(S)
    try:
        d = decompose(p, S, graph)
    except DecompositionError as exc:
        return "error", False, None, str(exc)
    report = verify_decomposition(graph, d)
    route = _route_key(d.routes, d.matching_route)
    message = "" if report.ok else "; ".join(f"{f.kind}: {f.detail}" for f in report.failures[:3])
    status = None
    if oracle:
        if len(graph.edges) > MAX_EDGES:
            status = "skipped"
        else:
            found = brute_force_decomposition(graph)
            if found is None:
                status = "not_found"
            elif verify_decomposition(graph, found).ok:
                status = "agree"
            else:
                status = "invalid"
    return route, report.ok, status, message


def _sweep_star(job):
    return sweep_instance(*job)


def cmd_sweep(args: argparse.Namespace) -> int:
    p = args.p
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if args.oracle and 2 * p > MAX_VERTICES:
        raise UsageError(f"--oracle is limited to 2p <= {MAX_VERTICES}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")

    start = time.perf_counter()
    jobs = [(p, tuple(S.tokens()), args.oracle) for S in InstanceSweep(p)]
    if args.jobs == 1:
        results = map(_sweep_star, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=args.jobs)
        results = pool.map(_sweep_star, jobs, chunksize=max(1, len(jobs) // (8 * args.jobs)))

    routes: Counter = Counter()
    oracle: Counter = Counter()
    failures = []
    for (_, tokens, _), (route, ok, status, message) in zip(jobs, results):
        routes[route] += 1
        if status is not None:
            oracle[status] += 1
        if not ok or status in ("not_found", "invalid"):
            failures.append((tokens, route, message or f"oracle {status}"))
    if args.jobs != 1:
        pool.shutdown()
    elapsed = time.perf_counter() - start

    print(f"D_{2 * p}: {len(jobs)} instances, {len(jobs) - len(failures)} passed, "
          f"{len(failures)} failed ({elapsed:.1f}s)")
    print("route histogram:")
    for route, count in sorted(routes.items()):
        print(f"  {route:<40} {count}")
    if args.oracle:
        print("oracle:")
        for status, count in sorted(oracle.items()):
            print(f"  {status:<40} {count}")
    for tokens, route, message in failures[:20]:
        print(f"FAIL {','.join(tokens)} [{route}]: {message}")
    return EXIT_FAILED if failures else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    handlers = {"decompose": cmd_decompose, "verify": cmd_verify, "sweep": cmd_sweep}
    try:
        return handlers[args.command](args)
    except (
        UsageError,
        ElementParseError,
        InvalidConnectionSet,
        PreconditionError,
        CertificateFormatError,
    ) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
