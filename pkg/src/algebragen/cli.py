"""Command line front end.

Reports are machine-readable JSON on stdout; a one-line human summary goes
to stderr.  Exit codes are a stable contract:

    0  success (member, for the member command)
    1  non-member
    2  parse or validation failure
    3  norm bound failed with rescaling disabled
    4  numeric failure
    5  instance too large for the deterministic primality range
    6  the two methods disagreed on an exact backend (a bug, not data)
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

EXIT_OK = 0
EXIT_NONMEMBER = 1
EXIT_PARSE = 2
EXIT_NORM_BOUND = 3
EXIT_NUMERIC = 4
EXIT_RANGE = 5
EXIT_DISAGREE = 6


def _apply_thread_cap():
    """Best-effort cap on BLAS parallelism; must run before numpy loads."""
    cap = os.environ.get("ALGEBRAGEN_THREADS")
    if cap:
        for var in (
            "OMP_NUM_THREADS",
            "OPENBLAS_NUM_THREADS",
            "MKL_NUM_THREADS",
            "NUMEXPR_NUM_THREADS",
        ):
            os.environ.setdefault(var, cap)


def _emit(report: dict, summary: str) -> None:
    print(json.dumps(report, indent=2))
    print(summary, file=sys.stderr)


def _scalar_str(x) -> str:
    return x if isinstance(x, str) else str(x)


def _entropy_seed() -> int:
    import numpy as np

    return int(np.random.SeedSequence().entropy) % (1 << 63)


def _load(args, path, field=None, unital=None):
    from .instances import load_instance

    return load_instance(path, field=field, unital=unital)


def _variant_and_scale(args, n):
    from . import resolvent

    variant = None
    if getattr(args, "power", None) is not None:
        k = args.power if args.power > 0 else resolvent.default_power_exponent(n)
        variant = resolvent.power(k)
    scale = None if getattr(args, "no_rescale", False) else "auto"
    return variant, scale


def _report_base(args, inst, started) -> dict:
    return {
        "command": args.command,
        "argv": list(getattr(args, "_argv", [])),
        "instance": inst.path,
        "n": inst.n,
        "d": inst.d,
        "field": inst.field,
        "unital": inst.gs.unital,
        "seconds": round(time.perf_counter() - started, 6),
    }


def cmd_dim(args) -> int:
    from .resolvent import span_matrix

    started = time.perf_counter()
    inst = _load(args, args.instance, field=args.field, unital=False if args.nonunital else None)
    variant, scale = _variant_and_scale(args, inst.n)
    if variant is not None and not inst.gs.unital:
        raise argparse.ArgumentTypeError("--power computes the unital algebra; drop --nonunital")
    rep = span_matrix(inst.gs, variant=variant, scale=scale, tol=args.tol)
    report = _report_base(args, inst, started)
    report.update(
        {
            "dimension": rep.rank,
            "variant": rep.variant.tag + (f":{rep.variant.k}" if rep.variant.k else ""),
            "scale": _scalar_str(rep.scale),
            "rank_tolerance": rep.tol,
            "conditioning_flag": rep.ill_conditioned,
        }
    )
    _emit(report, f"dimension {rep.rank} ({inst.field}, {'unital' if inst.gs.unital else 'non-unital'})")
    return EXIT_OK


def cmd_member(args) -> int:
    from .algebra import membership
    from .instances import ParseError, grid_of
    from .resolvent import span_matrix

    started = time.perf_counter()
    inst = _load(args, args.generators, field=args.field, unital=False if args.nonunital else None)
    cand = _load(args, args.candidate, field=inst.field)
    if cand.d != 1:
        raise ParseError("candidate file must hold exactly one matrix")
    if cand.n != inst.n:
        raise ParseError(f"candidate is {cand.n}x{cand.n}, generators are {inst.n}x{inst.n}")
    z = cand.gs.gens[0]
    rep = span_matrix(inst.gs, tol=None)
    result = membership(inst.gs, z, want_certificate=args.certificate, tol=args.tol, report=rep)
    report = _report_base(args, inst, started)
    report.update(
        {
            "candidate": args.candidate,
            "member": result.member,
            "residual": _scalar_str(result.residual),
            "tolerance": args.tol,
            "certificate": None
            if result.certificate is None
            else [
                {"word": list(word), "coeff": _scalar_str(c)}
                for word, c in result.certificate
            ],
        }
    )
    verdict = "member" if result.member else "non-member"
    _emit(report, f"{verdict} (residual {result.residual})")
    return EXIT_OK if result.member else EXIT_NONMEMBER


def cmd_basis(args) -> int:
    from .algebra import basis
    from .instances import grid_of

    started = time.perf_counter()
    inst = _load(args, args.instance, field=args.field, unital=False if args.nonunital else None)
    ab = basis(inst.gs, tol=args.tol)
    report = _report_base(args, inst, started)
    report.update(
        {
            "dimension": ab.dim,
            "source": ab.source,
            "basis": [grid_of(m) for m in ab.mats],
        }
    )
    _emit(report, f"basis of dimension {ab.dim}")
    return EXIT_OK


def cmd_intersect(args) -> int:
    from .algebra import intersect
    from .instances import ParseError, grid_of

    started = time.perf_counter()
    a = _load(args, args.instance_a, field=args.field)
    b = _load(args, args.instance_b, field=args.field)
    if a.n != b.n or a.field != b.field or a.gs.unital != b.gs.unital:
        raise ParseError("intersection needs equal n, field and unital flag")
    ab = intersect(a.gs, b.gs, tol=args.tol)
    report = _report_base(args, a, started)
    report.update(
        {
            "instance_b": b.path,
            "dimension": ab.dim,
            "basis": [grid_of(m) for m in ab.mats],
        }
    )
    _emit(report, f"intersection dimension {ab.dim}")
    return EXIT_OK


def cmd_modp_dim(args) -> int:
    from .instances import ParseError
    from .modp import certified_dimension, clear_denominators

    started = time.perf_counter()
    inst = _load(args, args.instance, field=args.field)
    if inst.gs.kind.tag != "rational":
        raise ParseError("modp-dim needs exact integer or rational data")
    gens = clear_denominators(inst.gs.gens)
    seed = args.seed if args.seed is not None else _entropy_seed()
    dim, plan = certified_dimension(
        gens, trials=args.trials, seed=seed, n=inst.n, forced_prime=args.prime
    )
    report = _report_base(args, inst, started)
    report.update(
        {
            "dimension": dim,
            "seed": seed,
            "trials": args.trials,
            "prime_plan": {
                "B": plan.B,
                "bad_prime_bound": plan.bad_prime_bound,
                "ceiling": plan.ceiling,
                "failure_probability_bound": plan.failure_probability_bound,
                "primes": [
                    {"p": o.p, "outcome": "singular-skip" if o.singular else "rank", "rank": o.rank}
                    for o in plan.outcomes
                ],
            },
        }
    )
    _emit(report, f"dimension {dim} (mod-p certified, {args.trials} trials)")
    return EXIT_OK


def cmd_bench(args) -> int:
    from .algebra import dimension
    from .instances import ParseError, random_generator_set
    from . import wordspan

    started = time.perf_counter()
    import numpy as np

    seed = args.seed if args.seed is not None else _entropy_seed()
    instances = []
    if args.random is not None:
        n, d, count = args.random
        rng = np.random.default_rng(seed)
        for _ in range(count):
            instances.append((f"random-{n}x{n}-d{d}", random_generator_set(n, d, rng)))
    elif args.instance is not None:
        inst = _load(args, args.instance)
        instances.append((inst.path, inst.gs))
    else:
        raise ParseError("bench needs an instance path or --random N D COUNT")

    rows = []
    disagreement = False
    for label, gs in instances:
        t0 = time.perf_counter()
        dim_fast = dimension(gs)
        t_fast = time.perf_counter() - t0
        t0 = time.perf_counter()
        dim_oracle = wordspan.dimension(gs)
        t_oracle = time.perf_counter() - t0
        agrees = dim_fast == dim_oracle
        if not agrees and gs.kind.exact:
            disagreement = True
        rows.append({"label": label, "n": gs.n, "d": gs.d, "method": "resolvent", "dim": dim_fast, "seconds": round(t_fast, 6), "agrees": agrees})
        rows.append({"label": label, "n": gs.n, "d": gs.d, "method": "wordspan", "dim": dim_oracle, "seconds": round(t_oracle, 6), "agrees": agrees})

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "d", "method", "dim", "seconds", "agrees"])
            for row in rows:
                writer.writerow([row["n"], row["d"], row["method"], row["dim"], row["seconds"], str(row["agrees"]).lower()])

    report = {
        "command": "bench",
        "argv": list(getattr(args, "_argv", [])),
        "seed": seed,
        "csv": args.csv,
        "rows": rows,
        "seconds": round(time.perf_counter() - started, 6),
    }
    agree_count = sum(1 for r in rows if r["agrees"]) // 2
    _emit(report, f"bench: {len(rows) // 2} instances, {agree_count} agreeing")
    if disagreement:
        print("methods disagreed on an exact backend", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algebragen",
        description="Dimension, membership and bases of matrix algebras given generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True, field=True, unital=False):
        if tol:
            p.add_argument("--tol", type=float, default=None, help="numeric tolerance override")
        if field:
            p.add_argument("--field", default=None, help="force field: f64|c64|rational|gfp:<p>")
        if unital:
            p.add_argument("--nonunital", action="store_true", help="use the non-unital algebra")

    p = sub.add_parser("dim", help="dimension of the generated algebra")
    p.add_argument("instance")
    common(p, unital=True)
    p.add_argument("--no-rescale", action="store_true", help="fail instead of rescaling when norms are >= 1")
    p.add_argument("--power", nargs="?", type=int, const=0, default=None, metavar="K",
                   help="use the powering form, exponent K (default: saturation exponent)")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("member", help="is a candidate matrix in the algebra?")
    p.add_argument("generators")
    p.add_argument("candidate")
    common(p, unital=True)
    p.add_argument("--certificate", action="store_true", help="also produce a word combination")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("basis", help="basis matrices of the generated algebra")
    p.add_argument("instance")
    common(p, unital=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("intersect", help="basis of the intersection of two algebras")
    p.add_argument("instance_a")
    p.add_argument("instance_b")
    common(p)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("modp-dim", help="certified dimension via random primes (integer data)")
    p.add_argument("instance")
    common(p, tol=False)
    p.add_argument("--trials", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--prime", type=int, default=None, help="try this prime first")
    p.set_defaults(func=cmd_modp_dim)

    p = sub.add_parser("bench", help="compare the resolvent method against the word-span baseline")
    p.add_argument("instance", nargs="?", default=None)
    p.add_argument("--random", nargs=3, type=int, metavar=("N", "D", "COUNT"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--csv", default=None, help="write rows to this CSV file")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(sys.argv[1:] if argv is None else argv)

    from .instances import ParseError
    from .matrix import SingularMatrixError
    from .modp import PrimeRangeError
    from .resolvent import NormBoundError

    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except argparse.ArgumentTypeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except NormBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NORM_BOUND
    except PrimeRangeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RANGE
    except (SingularMatrixError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
