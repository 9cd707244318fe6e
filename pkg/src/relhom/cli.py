"""Command line interface.

Exit codes: 0 success, 1 failed verification checks, 2 bad input,
3 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from math import inf

from .bench import run_benchmark
from .complexes import (
    DEFAULT_CAP,
    dowker_filtration,
    dowker_rips_filtration,
    kflag_filtration,
)
from .diagrams import bottleneck, diagrams_equal
from .errors import InputError, ResourceLimitError
from .images import (
    PersistenceImageParams,
    default_image_params,
    image_to_csv,
    persistence_image,
)
from .oracles import verify_theorems
from .persistence import (
    compute_persistence,
    diagram_to_csv,
    diagram_to_json,
    load_diagram,
)
from .relations import (
    METRICS,
    cross_distances,
    load_matrix,
    load_points,
    transpose,
)

COMPLEXES = ("dowker", "dowker-rips", "kflag")


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _write_out(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--points", help="labeled point CSV (header label,c1,...,cp)")
    p.add_argument("--x-label", default="x", help="label of the vertex-side points")
    p.add_argument("--y-label", default="y", help="label of the witness-side points")
    p.add_argument("--matrix", help="headerless CSV of cross distances")
    p.add_argument(
        "--metric", default="euclidean", choices=METRICS, help="metric for --points"
    )


def _load_relation(args):
    if (args.points is None) == (args.matrix is None):
        raise InputError("provide exactly one of --points or --matrix")
    if args.matrix is not None:
        return load_matrix(args.matrix), {"matrix": args.matrix}
    X, Y = load_points(args.points, args.x_label, args.y_label)
    R = cross_distances(X, Y, metric=args.metric)
    return R, {
        "points": args.points,
        "x_label": args.x_label,
        "y_label": args.y_label,
        "metric": args.metric,
    }


def cmd_ph(args) -> int:
    R, source = _load_relation(args)
    kind = args.complex
    max_dim = args.max_dim
    max_hom_dim = args.max_hom_dim
    if max_hom_dim is None:
        max_hom_dim = max(0, max_dim - 1)
    if not (0 <= max_hom_dim <= max_dim):
        raise InputError(
            f"need 0 <= max_hom_dim <= max_dim, got {max_hom_dim} and {max_dim}"
        )
    if kind == "kflag" and args.k < 2:
        raise InputError(f"kflag needs k >= 2, got {args.k}")

    # duality guarantees: dowker swaps freely, flag constructions only in
    # dimensions below the flagification degree
    dual_dims = {"dowker": inf, "dowker-rips": 1, "kflag": args.k - 1}[kind]
    applied = False
    if args.swap == "always":
        applied = True
    elif args.swap == "auto":
        if max_hom_dim > dual_dims:
            _warn(
                f"swap=auto degraded to never: {kind} diagrams are only "
                f"transpose-invariant up to dimension {dual_dims}, "
                f"requested {max_hom_dim}"
            )
        elif R.m < R.n:
            applied = True
    if applied:
        R = transpose(R)

    t0 = time.perf_counter()
    if kind == "dowker":
        filt = dowker_filtration(R, max_dim, args.threshold, cap=args.cap)
    elif kind == "dowker-rips":
        filt = dowker_rips_filtration(R, max_dim, args.threshold, cap=args.cap)
    else:
        filt = kflag_filtration(R, args.k, max_dim, args.threshold, cap=args.cap)
    t1 = time.perf_counter()
    dgm = compute_persistence(filt, max_hom_dim)
    t2 = time.perf_counter()
    dgm.metadata.update(
        {
            "complex": kind,
            "source": source,
            "swap_policy": args.swap,
            "swap_applied": applied,
            "stored_simplices": len(filt),
            "build_seconds": t1 - t0,
            "reduce_seconds": t2 - t1,
        }
    )
    if kind == "kflag":
        dgm.metadata["k"] = args.k
    text = diagram_to_json(dgm) if args.format == "json" else diagram_to_csv(dgm)
    _write_out(text, args.out)
    return 0


def _parse_floats(spec: str | None) -> list[float] | None:
    if spec is None:
        return None
    try:
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError as e:
        raise InputError(f"bad float list {spec!r}: {e}") from None


def cmd_verify(args) -> int:
    R, source = _load_relation(args)
    report = verify_theorems(
        R,
        max_dim=args.max_dim,
        thresholds=_parse_floats(args.thresholds),
        tol=args.tol,
        sharpness_constants=_parse_floats(args.sharpness) or (),
        instance={"source": source, "n": R.n, "m": R.m},
    )
    _write_out(json.dumps(report, indent=2), args.out)
    for c in report["checks"]:
        status = "pass" if c["pass"] else "FAIL"
        print(f"{status}  {c['name']}", file=sys.stderr)
    return 0 if report["pass"] else 1


def cmd_bench(args) -> int:
    R, source = _load_relation(args)
    result = run_benchmark(
        R,
        max_dim=args.max_dim,
        max_hom_dim=args.max_hom_dim,
        threshold=args.threshold,
        percentile=args.percentile,
        repeats=args.repeats,
        cap=args.cap,
    )
    result["config"]["source"] = source
    _write_out(json.dumps(result, indent=2), args.out)
    return 0


def _json_safe(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def cmd_compare(args) -> int:
    A = load_diagram(args.diagram_a)
    B = load_diagram(args.diagram_b)
    dims = sorted(
        {d for d, v in A.points.items() if v} | {d for d, v in B.points.items() if v}
    )
    per_dim = []
    for d in dims:
        sub_a = type(A)({d: A.in_dim(d)})
        sub_b = type(B)({d: B.in_dim(d)})
        eq, witness = diagrams_equal(sub_a, sub_b, args.tol)
        dist = bottleneck(A, B, d)
        per_dim.append(
            {
                "dim": d,
                "equal": eq,
                "bottleneck": _json_safe(dist),
                "witness": (
                    {**witness, "point": [_json_safe(v) for v in witness["point"]]}
                    if witness
                    else None
                ),
            }
        )
    verdict = {
        "equal": all(e["equal"] for e in per_dim),
        "tol": args.tol,
        "per_dim": per_dim,
    }
    _write_out(json.dumps(verdict, indent=2), args.out)
    return 0


def _parse_range(spec: str | None, name: str) -> tuple[float, float] | None:
    if spec is None:
        return None
    parts = spec.split(",")
    if len(parts) != 2:
        raise InputError(f"{name} must be 'lo,hi', got {spec!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as e:
        raise InputError(f"bad {name} {spec!r}: {e}") from None
    return lo, hi


def cmd_image(args) -> int:
    dgm = load_diagram(args.diagram)
    defaults = default_image_params(dgm, dim=args.dim)
    weight = {"linear": "linear_in_persistence", "constant": "constant"}[args.weight]
    params = PersistenceImageParams(
        resolution=(args.rows, args.cols),
        bandwidth=args.bandwidth if args.bandwidth is not None else defaults.bandwidth,
        birth_range=_parse_range(args.birth_range, "--birth-range")
        or defaults.birth_range,
        pers_range=_parse_range(args.pers_range, "--pers-range")
        or defaults.pers_range,
        weight=weight,
    )
    img = persistence_image(dgm, args.dim, params, essential=args.essential)
    _write_out(image_to_csv(img), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relhom",
        description=(
            "Persistent homology of relations between two point sets: "
            "Dowker, Dowker-Rips and k-flagified Dowker filtrations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ph", help="compute a persistence diagram")
    _add_input_args(p)
    p.add_argument("--complex", default="dowker-rips", choices=COMPLEXES)
    p.add_argument("--k", type=int, default=3, help="flagification degree for kflag")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument(
        "--max-hom-dim",
        type=int,
        default=None,
        help="top homology dimension (default max_dim - 1)",
    )
    p.add_argument("--threshold", type=float, default=inf)
    p.add_argument(
        "--swap",
        default="auto",
        choices=("auto", "never", "always"),
        help="transpose the relation when duality makes it cheaper",
    )
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_ph)

    p = sub.add_parser("verify", help="run theorem checks on an instance")
    _add_input_args(p)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--thresholds", help="comma-separated scales for inclusion checks")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument(
        "--sharpness",
        help="comma-separated constants c; check that factor c is violated",
    )
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time Dowker vs Dowker-Rips pipelines")
    _add_input_args(p)
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--max-hom-dim", type=int, default=1)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument(
        "--percentile",
        type=float,
        default=30.0,
        help="distance percentile used when --threshold is not given",
    )
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="compare two diagram files")
    p.add_argument("diagram_a")
    p.add_argument("diagram_b")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("image", help="rasterize a diagram to a persistence image")
    p.add_argument("diagram")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rows", type=int, default=20)
    p.add_argument("--cols", type=int, default=20)
    p.add_argument("--bandwidth", type=float, default=None)
    p.add_argument("--birth-range", help="lo,hi (default: fitted to the diagram)")
    p.add_argument("--pers-range", help="lo,hi (default: fitted to the diagram)")
    p.add_argument("--weight", default="linear", choices=("linear", "constant"))
    p.add_argument("--essential", default="drop", choices=("drop", "clamp"))
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_image)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
