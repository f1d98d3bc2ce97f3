"""Command-line front end: ``primeapprox <command> [options]``.

Exit codes: 0 success, 2 bad arguments, 3 a certificate failed (the witness
is still written), 1 any other library error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from fractions import Fraction

from . import __version__, bohr, cantor, contfrac, hits, measure, primes, sequences, trace
from .errors import InvalidArgument, OutOfRange, PrimeApproxError
from .exact import fmt_q, parse_q

SCHEMA = 1
# keys that never change results and are left out of the embedded config
_PLUMBING = {"out", "config", "no_timestamp", "threads", "func", "command"}


class CertificateFailed(Exception):
    def __init__(self, payload):
        super().__init__("certificate failed")
        self.payload = payload


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in str(text).replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text) -> Fraction:
    try:
        return parse_q(text)
    except InvalidArgument as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _real(text):
    try:
        return contfrac.parse_real(str(text))
    except PrimeApproxError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt_q(v)
    if isinstance(v, (contfrac.Rational, contfrac.QuadraticSurd, contfrac.ExplicitCF, contfrac.LiouvilleCF)):
        return contfrac.format_real(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _config_of(args) -> dict:
    return {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in _PLUMBING}


def _document(args, result: dict) -> dict:
    doc = {"schema": SCHEMA, "command": args.command, "version": __version__,
           "config": _config_of(args)}
    if not args.no_timestamp:
        doc["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    doc["result"] = result
    return doc


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, result: dict):
    _emit(args, json.dumps(_document(args, result), indent=2) + "\n")


# ---------------------------------------------------------------- commands


def cmd_greedy(args):
    seq = sequences.greedy_sequence(args.iterations)
    cov = sequences.greedy_coverings(seq)
    if args.format == "tsv":
        _emit(args, seq.dumps())
        return
    _emit_json(args, {
        "coverings": [list(c) for c in cov],
        "boundary_primes": [c[1] for c in cov],
        "count": len(seq),
        "first_pairs": [[p, a] for p, a in list(seq.items())[:64]],
    })


def cmd_seq(args):
    seq = sequences.make_sequence(args.gen, args.limit, seed=args.seed, beta=args.beta)
    if args.format == "json":
        _emit_json(args, {"primes": seq.primes.tolist(), "values": seq.values.tolist(),
                          "provenance": seq.provenance})
    else:
        _emit(args, seq.dumps())


def _sequence(args, limit: int):
    return sequences.make_sequence(args.gen, limit, seed=args.seed, beta=args.beta)


def cmd_hits(args):
    cps = args.checkpoints
    seq = _sequence(args, max(cps))
    if args.samples:
        reps = [hits.mc_mean_hits(seq, X, args.c, args.samples, args.seed, args.threads).to_dict()
                for X in cps]
        if args.format == "csv":
            lines = ["X,samples,mean,se,psi_num/psi_den,z"]
            lines += [f"{r['X']},{r['samples']},{r['mean']:.12g},{r['se']:.12g},{r['psi']},{r['z']:.6g}"
                      for r in reps]
            _emit(args, "\n".join(lines) + "\n")
        else:
            _emit_json(args, {"monte_carlo": reps})
        return
    alpha = args.alpha if args.alpha is not None else contfrac.Rational(0, 1)
    rep = hits.growth_table(alpha, seq, args.c, cps)
    if args.format == "csv":
        _emit(args, rep.to_csv())
    else:
        _emit_json(args, rep.to_dict())


def cmd_overlap(args):
    val = measure.overlap_integral(args.p, args.q, args.c)
    if args.format == "json":
        bound = 4 * args.c ** 2 + 2 * args.c / max(args.p, args.q)
        _emit_json(args, {"overlap": fmt_q(val), "bound": fmt_q(bound), "within_bound": val <= bound})
    else:
        _emit(args, fmt_q(val).removesuffix("/1") + "\n")


def cmd_sieve_avg(args):
    rep = measure.sieve_average_experiment(args.X, args.Y, args.c, args.trials, args.seed, args.threads)
    _emit_json(args, rep.to_dict())


def cmd_blocks(args):
    rep = measure.dyadic_block_overlap(args.beta, args.B, args.c, args.U, args.V)
    _emit_json(args, rep.to_dict())


def cmd_bohr(args):
    bs = bohr.bohr_enumerate(args.beta, args.i, args.j)
    spec = bohr.gap_params(args.beta, args.i, args.j, args.B)
    inside = bohr.gap_contains_many(spec, bs.members)
    res = {
        "size": len(bs),
        "members": list(bs.members[: args.max_members]),
        "truncated": len(bs) > args.max_members,
        "gap": {"x": spec.x, "y": spec.y, "z": spec.z},
        "all_in_gap": bool(inside.all()),
        "phi_average": fmt_q(bohr.gap_phi_average(spec)),
        "phi_reference": bohr.phi_reference(spec),
    }
    _emit_json(args, res)
    if not res["all_in_gap"]:
        raise CertificateFailed(res)


def cmd_cantor(args):
    if args.schedule == "middle-third":
        sch = cantor.middle_third(args.depth)
        tree = cantor.build_survivors(sch, args.depth, cantor.middle_third_rule)
        res = {"dimension": cantor.dimension_lower_bound(sch).to_dict(), "counts": tree.counts(),
               "survivors": tree.to_json_dict(args.max_intervals)}
        _emit_json(args, res)
        return
    if args.schedule == "hd-badly":
        if args.beta is None:
            raise InvalidArgument("hd-badly needs --beta")
        sch, cert, tree = cantor.hd_badly_schedule(args.beta, args.R, args.depth, args.rule)
    else:
        sch, cert, tree = cantor.greedy_schedule(args.c, args.iterations)
    res = {"schedule": sch.to_dict(), "certificate": cert.to_dict(), "counts": tree.counts()}
    _emit_json(args, res)
    if not cert.passed:
        raise CertificateFailed(res)


def cmd_trace(args):
    if args.p is not None:
        if args.a is None:
            raise InvalidArgument("--p needs --a")
        x = args.x if args.x is not None else Fraction(0)
        d = trace.s_direct(args.p, args.a, x, args.y) if args.p <= trace.DIRECT_CAP else None
        cl = trace.s_closed(args.p, args.a, x, args.y)
        res = {"p": args.p, "a": args.a, "closed": [cl.real, cl.imag], "abs": trace.abs_s(args.p, args.a, args.y),
               "direct": None if d is None else [d.real, d.imag]}
        _emit_json(args, res)
        return
    seq = _sequence(args, args.X)
    scan = trace.divergence_scan(seq, args.y, args.X, float(args.threshold))
    if args.format == "csv":
        _emit(args, scan.to_csv())
    else:
        _emit_json(args, scan.to_dict())


def cmd_counterexample(args):
    beta = contfrac.LiouvilleCF(args.depth)
    rows = []
    for k in args.k:
        try:
            rows.append(measure.counterexample_block_measure(beta, k, args.c).to_dict())
        except OutOfRange:
            rows.append(measure.counterexample_block_bound(beta, k, args.c).to_dict())
    fitted = max((r.get("upper") / r["reference"]) for r in rows)
    _emit_json(args, {"beta": contfrac.format_real(beta), "blocks": rows, "fitted_C": fitted})


# ------------------------------------------------------------------ parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--out", help="write the artifact here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--config", help="JSON file with option defaults")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")


def _seq_opts(p, default_gen="greedy"):
    p.add_argument("--gen", choices=sequences.GENERATORS, default=default_gen)
    p.add_argument("--beta", type=_real, help="real for rotation generators, e.g. sqrt:2")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primeapprox", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("greedy", help="replay the greedy covering algorithm")
    p.add_argument("--iterations", type=int, default=5)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("seq", help="generate a numerator sequence")
    _seq_opts(p, "random")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("hits", help="hit counts N_X(alpha) or their Monte-Carlo mean")
    _seq_opts(p)
    p.add_argument("--alpha", type=_real)
    p.add_argument("--c", type=_rational, default=Fraction(1, 4))
    p.add_argument("--checkpoints", type=_int_list, default=[1000, 10000, 100000])
    p.add_argument("--samples", type=int, default=0, help="Monte-Carlo sample count (0: single alpha)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_hits)

    p = sub.add_parser("overlap", help="exact overlap integral for two primes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("sieve-avg", help="average sifted measure over random sequences")
    p.add_argument("--X", type=int, default=10)
    p.add_argument("--Y", type=_int_list, default=[1000, 10000, 100000])
    p.add_argument("--c", type=_rational, default=Fraction(1, 4))
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_sieve_avg)

    p = sub.add_parser("blocks", help="dyadic blocks E_i for a badly approximable beta")
    p.add_argument("--beta", type=_real, default=contfrac.GOLDEN)
    p.add_argument("--B", type=int, default=1)
    p.add_argument("--c", type=_rational, default=Fraction(1, 20))
    p.add_argument("--U", type=int, default=4)
    p.add_argument("--V", type=int, default=8)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("bohr", help="Bohr set and its progression cover")
    p.add_argument("--beta", type=_real, default=contfrac.sqrt_spec(2))
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--B", type=int, default=None)
    p.add_argument("--max-members", type=int, default=1000)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_bohr)

    p = sub.add_parser("cantor", help="Cantor schedules and their certificates")
    p.add_argument("--schedule", choices=("middle-third", "hd-badly", "greedy"), default="middle-third")
    p.add_argument("--beta", type=_real)
    p.add_argument("--R", type=int, default=64)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--rule", choices=("a", "b"), default="b")
    p.add_argument("--c", type=_rational, default=Fraction(1, 100))
    p.add_argument("--iterations", type=int, default=4)
    p.add_argument("--max-intervals", type=int, default=1000)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_cantor)

    p = sub.add_parser("trace", help="ergodic averages s_p and divergence scans")
    _seq_opts(p)
    p.add_argument("--y", type=_rational, required=True)
    p.add_argument("--x", type=_rational)
    p.add_argument("--p", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--X", type=int, default=10 ** 6)
    p.add_argument("--threshold", type=_rational, default=Fraction(1, 2))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("counterexample", help="Liouville block measures")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--k", type=_int_list, default=[1, 2])
    p.add_argument("--c", type=_rational, default=Fraction(1, 2))
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_counterexample)

    for sp in sub.choices.values():
        _common(sp)
    return ap


def _apply_config(parser, argv):
    """Pre-read --config and install its keys as subcommand defaults."""
    if "--config" not in " ".join(argv):
        return
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise InvalidArgument("config must be a JSON object")
    cmd = next((a for a in argv if not a.startswith("-")), None)
    sub = parser._subparsers._group_actions[0].choices.get(cmd)
    if sub is None:
        return
    dests = {a.dest: a for a in sub._actions}
    conv = {}
    for key, val in cfg.items():
        dest = key.replace("-", "_")
        if dest not in dests or dest in ("config", "help"):
            raise InvalidArgument(f"unknown config key {key!r} for {cmd}")
        act = dests[dest]
        act.required = False  # supplied by the config
        conv[dest] = act.type(val) if act.type and isinstance(val, str) else val
        if dest in ("checkpoints", "Y", "k") and isinstance(val, list):
            conv[dest] = [int(v) for v in val]
    sub.set_defaults(**conv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (InvalidArgument, OSError, json.JSONDecodeError) as exc:
        print(f"primeapprox: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "threads", 1) < 1:
        print("primeapprox: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        args.func(args)
    except CertificateFailed:
        print("primeapprox: certificate failed (witness written)", file=sys.stderr)
        return 3
    except InvalidArgument as exc:
        print(f"primeapprox: {exc}", file=sys.stderr)
        return 2
    except PrimeApproxError as exc:
        print(f"primeapprox: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
