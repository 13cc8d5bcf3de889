"""Command-line front end for the experiment harness.

Subcommands: region, trajectory, quadbench, autoencoder, selfcheck.
Every file-writing command is deterministic given its full flag set and
writes a `<stem>.meta` sidecar next to the CSV.
"""

import argparse
import sys

from . import harness
from .optimizers import Method
from .spectral import RegionPredicate

_METHODS = {m.value: m for m in Method}
_PREDICATES = {p.value: p for p in RegionPredicate}


def _parse_methods(spec: str):
    methods = []
    for name in spec.split(","):
        name = name.strip()
        if name not in _METHODS:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r}; choose from {', '.join(_METHODS)}"
            )
        methods.append(_METHODS[name])
    return methods


def _parse_vector(spec: str):
    return [float(x) for x in spec.split(",")]


def _parse_layers(spec: str):
    return [int(x) for x in spec.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rudopt",
        description="Regularised update descent toolkit: runs, regions, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", help="rasterize a convergence/pace region to CSV")
    p.add_argument("--predicate", required=True, choices=sorted(_PREDICATES))
    p.add_argument("--resolution", type=int, default=200,
                   help="grid cells per axis (default 200)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("trajectory", help="iterate one method on the quadratic objective")
    p.add_argument("--method", required=True, type=_parse_methods)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mu", type=float, default=0.9)
    p.add_argument("--theta1", type=_parse_vector, default=[1.0],
                   help="comma-separated start point (default 1.0)")
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("quadbench", help="seeded high-dimensional quadratic benchmark")
    p.add_argument("--dim", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--alpha", type=float, default=0.2)
    p.add_argument("--iters", type=int, default=300)
    p.add_argument("--methods", type=_parse_methods,
                   default=[Method.GD, Method.MOM, Method.NAG, Method.RUD],
                   help="comma-separated (default gd,mom,nag,rud)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("autoencoder", help="train the autoencoder benchmark")
    p.add_argument("--data", default=None,
                   help="IDX image file; omit to use seeded synthetic images")
    p.add_argument("--count", type=int, default=2000,
                   help="synthetic image count when --data is omitted")
    p.add_argument("--layers", type=_parse_layers, default=[784, 64, 16, 64, 784])
    p.add_argument("--batch-size", type=int, default=200)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--methods", type=_parse_methods,
                   default=[Method.GD, Method.NAG, Method.RUD])
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)

    sub.add_parser("selfcheck", help="run the library invariant suites")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "region":
        if args.resolution < 2:
            print("error: --resolution must be >= 2", file=sys.stderr)
            return 2
        harness.region_csv(_PREDICATES[args.predicate], args.resolution, args.out)
        print(f"wrote {args.out}")
        return 0

    if args.command == "trajectory":
        if len(args.method) != 1:
            print("error: trajectory takes exactly one --method", file=sys.stderr)
            return 2
        if args.iters < 1:
            print("error: --iters must be >= 1", file=sys.stderr)
            return 2
        status = harness.trajectory_csv(
            args.method[0], args.alpha, args.mu, args.theta1, args.iters, args.out)
        print(f"wrote {args.out} (status={status})")
        return 0

    if args.command == "quadbench":
        if args.iters < 1:
            print("error: --iters must be >= 1", file=sys.stderr)
            return 2
        status = harness.quadbench_csv(
            args.dim, args.seed, args.alpha, args.iters, args.methods, args.out)
        print(f"wrote {args.out} (status={status})")
        return 0

    if args.command == "autoencoder":
        if args.epochs < 1:
            print("error: --epochs must be >= 1", file=sys.stderr)
            return 2
        status = harness.autoencoder_csv(
            args.data, args.layers, args.batch_size, args.alpha, args.epochs,
            args.methods, args.seed, args.out, synthetic_count=args.count)
        print(f"wrote {args.out} (status={status})")
        return 0

    if args.command == "selfcheck":
        results = harness.selfcheck()
        for result in results:
            mark = "PASS" if result.passed else "FAIL"
            print(f"{mark}  {result.name}: {result.detail}")
        return 0 if all(r.passed for r in results) else 1

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
