"""Command-line verification harness.

    tamesymbol verify reciprocity --curve fixtures/p1_f5.curve --samples 200 --seed 7
    tamesymbol verify theorem-finite --curve fixtures/e_x3_minus_x_f5.curve --seed 1
    tamesymbol verify abelian --models 1000 --max-order 4096 --seed 3
    tamesymbol witness separate --curve fixtures/p1_f5.curve --idele fixtures/deg1.idele
    tamesymbol verify kappa --replay report.json

Exit codes: 0 when every check is PASS or VACUOUS (INDETERMINATE too, unless
``--strict``), 1 on any FAIL or on a replay mismatch, 2 on fixture or usage
errors.
"""

import argparse
import logging
import sys

from . import campaigns, mutations
from .errors import CapExceeded, FixtureError
from .reports import VerificationReport, body_text_of, load_report

log = logging.getLogger("tamesymbol")

LOCAL_QS = (3, 4, 5, 7, 9)
LOCAL_DS = (1, 2, 3)

# flags that define a run; anything else (output path, replay) is excluded from the config
CONFIG_KEYS = ("curve", "idele", "models", "samples", "seed", "precision", "degree_bound",
               "max_order", "strict")


class UsageError(Exception):
    pass


def _curves(args):
    from .curves import load_curve
    if not args.curve:
        raise UsageError("--curve is required for this command")
    return [(path, load_curve(path)) for path in args.curve]


def _samples(args, default):
    return default if args.samples is None else args.samples


def run_reciprocity(args, rep):
    for path, curve in _curves(args):
        rep.timed(f"reciprocity {path}", campaigns.reciprocity, curve,
                  samples=_samples(args, 200), seed=args.seed)


def run_local_laws(args, rep):
    for q, d in _local_grid(args):
        rep.timed(f"symbol laws q={q} d={d}", campaigns.symbol_laws, q, d,
                  samples=_samples(args, 10000), seed=args.seed,
                  precision=args.precision or 6)


def run_local_kernel(args, rep):
    for q, d in _local_grid(args):
        rep.timed(f"local kernel q={q} d={d}", campaigns.local_kernel, q, d,
                  samples=_samples(args, 500), seed=args.seed, precision=args.precision or 8)
    if not args.curve:
        rep.timed("local kernel exhaustive q=3 d=1", campaigns.local_kernel_exhaustive, 3, 3)


def _local_grid(args):
    if args.curve:
        qs = sorted({c.q for _, c in _curves(args)})
    else:
        qs = LOCAL_QS
    return [(q, d) for q in qs for d in LOCAL_DS]


def run_kappa(args, rep):
    for path, curve in _curves(args):
        rep.timed(f"kappa {path}", campaigns.kappa_campaign, curve, seed=args.seed)


def run_theorem(args, rep):
    rep.notes.append("split-completely finiteness is consumed as a trusted fact, not certified")
    for path, curve in _curves(args):
        rep.timed(f"theorem-finite {path}", campaigns.theorem, curve,
                  degree_bound=args.degree_bound or 1, seed=args.seed)
        rep.timed(f"place-degree gcd {path}", campaigns.place_degree_gcd, curve, 1)


def run_abelian(args, rep):
    rep.timed("abelian models", campaigns.abelian, models=args.models or 1000,
              max_order=args.max_order or 4096, seed=args.seed)


def run_separate(args, rep):
    from .ideles import load_idele
    if not args.idele:
        raise UsageError("--idele is required for witness separate")
    curve = _curves(args)[0][1] if args.curve else None
    f = load_idele(args.idele, curve)
    rep.timed(f"separate {args.idele}", campaigns.separate, f, seed=args.seed)


def run_witness_campaign(args, rep):
    for path, curve in _curves(args):
        n = _samples(args, 100)
        rep.timed(f"witnesses {path}", campaigns.witnesses, curve, count=n, seed=args.seed,
                  degree_bound=args.degree_bound or 2, members=n)


COMMANDS = {
    ("verify", "reciprocity"): run_reciprocity,
    ("verify", "local-laws"): run_local_laws,
    ("verify", "local-kernel"): run_local_kernel,
    ("verify", "kappa"): run_kappa,
    ("verify", "theorem-finite"): run_theorem,
    ("verify", "abelian"): run_abelian,
    ("witness", "separate"): run_separate,
    ("witness", "campaign"): run_witness_campaign,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="tamesymbol", description="Tame-symbol verification harness")
    sub = parser.add_subparsers(dest="group", required=True)
    groups = {}
    for group, action in COMMANDS:
        if group not in groups:
            groups[group] = sub.add_parser(group).add_subparsers(dest="action", required=True)
        p = groups[group].add_parser(action)
        p.add_argument("--curve", action="append", help="curve fixture (repeatable)")
        p.add_argument("--idele", help="idele fixture")
        p.add_argument("--models", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--precision", type=int)
        p.add_argument("--degree-bound", type=int)
        p.add_argument("--max-order", type=int)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--strict", action="store_true", help="INDETERMINATE results exit 1")
        p.add_argument("--replay", help="rerun the config of a saved report and compare bodies")
    return parser


def config_of(args):
    return {"command": [args.group, args.action],
            **{k: getattr(args, k) for k in CONFIG_KEYS}}


def execute(config):
    """Run a config dict; returns the report."""
    ns = argparse.Namespace(**{k: config.get(k) for k in CONFIG_KEYS})
    ns.group, ns.action = config["command"]
    ns.seed = ns.seed or 0
    rep = VerificationReport("-".join(config["command"]), config, ns.seed)
    mutations.check_env()
    if mutations.any_active():
        rep.notes.append("mutations active: " + ", ".join(mutations.active_names()))
    COMMANDS[tuple(config["command"])](ns, rep)
    return rep


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.replay:
            saved = load_report(args.replay)
            rep = execute(saved["config"])
            same = rep.body_text() == body_text_of(saved)
            print(f"replay {'identical' if same else 'DIFFERS'}: {args.replay}")
            if not same:
                return 1
        else:
            rep = execute(config_of(args))
    except (FixtureError, OSError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: size cap exceeded: {exc}", file=sys.stderr)
        return 2
    text = rep.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print("\n".join(rep.summary_lines()))
    elif not args.replay:
        sys.stdout.write(text)
    if rep.verdict == "FAIL":
        for r in rep.results:
            if r["verdict"] == "FAIL":
                log.error("FAIL in %s", r["check"])
        return 1
    if rep.indeterminate:
        log.warning("%d indeterminate result(s)", rep.indeterminate)
        if args.strict:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
