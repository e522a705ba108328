"""Command-line front end: ``sirmine {mine,batch,significance,anomalies,associated,bench}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

from .bench import HEADER, run_bench
from .core import MEASURES, MinerConfig, SirError, SirResult
from .ingest import PRESETS, Dataset, load_csv, preprocess
from .measures import build_engine
from .pdp import solve_pdp
from .pipeline import find_associated_sirs, mine_all, prune_redundant, score_anomalous_intervals, select_candidates
from .significance import significance_test

log = logging.getLogger("sirmine")

PRESET_LMIN = {"climate": 6, "fmri": 10}


def _parent_io() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--input", required=True, help="CSV table, header row of series ids, one row per timestamp")
    p.add_argument("--sidecar", help="JSON metadata with 'period' and/or 'segments' (default: none)")
    p.add_argument("--preset", choices=sorted(PRESETS), default="zscore",
                   help="preprocessing applied after loading (default: %(default)s)")
    p.add_argument("--output", help="write results here instead of stdout")
    return p


def _parent_mining() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--measure", choices=MEASURES, default="ap", help="relationship measure (default: %(default)s)")
    p.add_argument("--tau", type=float, default=1.0, help="strength threshold (default: %(default)s)")
    p.add_argument("--lmin", type=int, default=None,
                   help="minimum interval length (default: 10 for the fmri preset, else 6)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="worker processes (default: available CPUs, %(default)s here)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    return p


def _parent_candidates() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--max-corr", type=float, default=0.25,
                   help="keep pairs with |full-length corr| below this (default: %(default)s)")
    p.add_argument("--redundancy", type=float, default=0.7,
                   help="prune pairs whose endpoints match a kept pair with AP >= this (default: %(default)s)")
    p.add_argument("--records", help="reuse SIR records from a previous batch run instead of re-mining")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sirmine", description="Mine sub-interval relationships between time series.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    io, mining, cand = _parent_io(), _parent_mining(), _parent_candidates()

    p = sub.add_parser("mine", parents=[io, mining, cand], help="optimal SIR for one pair (or all candidates)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pair", nargs=2, metavar=("A", "B"), help="series ids to mine")
    group.add_argument("--all", action="store_true", help="mine every candidate pair (same as 'batch')")

    sub.add_parser("batch", parents=[io, mining, cand], help="select candidate pairs, prune redundant ones, mine all")

    p = sub.add_parser("significance", parents=[io, mining], help="randomization p-value for one pair")
    p.add_argument("--pair", nargs=2, metavar=("A", "B"), required=True, help="series ids")
    p.add_argument("--randomizations", type=int, default=1000, help="number of null series (default: %(default)s)")
    p.add_argument("--swap", action="store_true", help="randomize B instead of A")
    p.add_argument("--nulls", action="store_true", help="include the null sum-length distribution in the record")

    p = sub.add_parser("anomalies", parents=[io, mining, cand], help="fraction of SIRs covering each window")
    p.add_argument("--window", type=int, default=6, help="window length in timestamps (default: %(default)s)")

    p = sub.add_parser("associated", parents=[io, mining, cand], help="sets of pairs with co-active SIRs")
    p.add_argument("--min-support", type=int, required=True, help="minimum number of shared active timestamps")
    p.add_argument("--min-size", type=int, default=2, help="minimum number of pairs per set (default: %(default)s)")
    p.add_argument("--all-itemsets", action="store_true", help="report every frequent set, not only maximal ones")

    p = sub.add_parser("bench", help="DP vs PDP cost on synthetic noise pairs")
    p.add_argument("--lengths", type=int, nargs="+", default=[120, 240, 480, 960, 1920],
                   help="series lengths, ascending (default: %(default)s)")
    p.add_argument("--pairs-per-length", type=int, default=10, help="pairs per length (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    p.add_argument("--measure", choices=MEASURES, default="ap", help="relationship measure (default: %(default)s)")
    p.add_argument("--tau", type=float, default=1.0, help="strength threshold (default: %(default)s)")
    p.add_argument("--lmin", type=int, default=6, help="minimum interval length (default: %(default)s)")
    p.add_argument("--output", help="write the table here instead of stdout")
    return parser


@contextmanager
def _out(path):
    if path:
        with open(path, "w") as fh:
            yield fh
    else:
        yield sys.stdout


def _config(args) -> MinerConfig:
    lmin = args.lmin if args.lmin is not None else PRESET_LMIN.get(getattr(args, "preset", None), 6)
    return MinerConfig(
        tau=args.tau,
        l_min=lmin,
        measure=args.measure,
        num_randomizations=getattr(args, "randomizations", 1000),
        rng_seed=args.seed,
        max_abs_full_corr=getattr(args, "max_corr", 0.25),
        redundancy_threshold=getattr(args, "redundancy", 0.7),
    )


def _dataset(args) -> Dataset:
    data = preprocess(load_csv(args.input, sidecar=args.sidecar), args.preset)
    log.info("loaded %d series of length %d", len(data), data.n)
    return data


def _batch(args, data: Dataset, config: MinerConfig) -> list[SirResult]:
    if getattr(args, "records", None):
        with open(args.records) as fh:
            return [SirResult.from_record(json.loads(line)) for line in fh if line.strip()]
    pairs = select_candidates(data.series, config.max_abs_full_corr)
    log.info("%d candidate pairs", len(pairs))
    pairs = prune_redundant(pairs, data.series, config.redundancy_threshold)
    log.info("%d pairs after redundancy pruning", len(pairs))
    return mine_all(pairs, data.series, config, workers=args.workers)


def cmd_mine(args) -> None:
    config = _config(args)
    data = _dataset(args)
    if args.command == "batch" or args.all:
        results = _batch(args, data, config)
    else:
        a, b = (data[i] for i in args.pair)
        results = [solve_pdp(build_engine(a, b, config.measure), config.tau, config.l_min, pair=(a.id, b.id))]
    with _out(args.output) as fh:
        for r in results:
            fh.write(r.to_json() + "\n")


def cmd_significance(args) -> None:
    config = _config(args)
    data = _dataset(args)
    a, b = (data[i] for i in args.pair)
    report = significance_test(a, b, config, swap=args.swap, workers=args.workers)
    with _out(args.output) as fh:
        fh.write(report.to_json(verbose=args.nulls) + "\n")


def cmd_anomalies(args) -> None:
    config = _config(args)
    data = _dataset(args)
    scores = score_anomalous_intervals(_batch(args, data, config), args.window, data.n)
    with _out(args.output) as fh:
        fh.write("start\tscore\n")
        for s, v in enumerate(scores, 1):
            fh.write(f"{s}\t{v:.6f}\n")


def cmd_associated(args) -> None:
    config = _config(args)
    data = _dataset(args)
    sets = find_associated_sirs(
        _batch(args, data, config), args.min_support, args.min_size, maximal=not args.all_itemsets, n=data.n
    )
    with _out(args.output) as fh:
        for s in sets:
            fh.write(json.dumps(s.to_record()) + "\n")


def cmd_bench(args) -> None:
    if list(args.lengths) != sorted(args.lengths):
        raise SirError("--lengths must be ascending")
    rows = run_bench(args.lengths, args.pairs_per_length, args.seed, args.tau, args.lmin, kind=args.measure)
    with _out(args.output) as fh:
        fh.write(HEADER + "\n")
        for row in rows:
            fh.write(row.to_line() + "\n")


COMMANDS = {
    "mine": cmd_mine,
    "batch": cmd_mine,
    "significance": cmd_significance,
    "anomalies": cmd_anomalies,
    "associated": cmd_associated,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except SirError as exc:
        print(f"sirmine {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
