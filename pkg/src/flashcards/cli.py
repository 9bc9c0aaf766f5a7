"""Command-line entry point: ``flashcards <subcommand> ...``.

Exit codes: 0 success, 1 a proved bound was violated, 2 usage or
configuration error, 3 materialization cap or step budget reached,
4 I/O error.  Probes never change the exit code.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, TextIO

from . import analysis, codec, tableau, variants
from .deck import DEFAULT_CAP, DeckCapacityError
from .engine import GameState, StepBudgetExceeded, simulate
from .schedules import Schedule, ScheduleError, schedule_from_spec

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _schedule(args) -> Schedule:
    sched = schedule_from_spec(args.schedule)
    if sched.is_random and getattr(args, "seed", None) is not None:
        sched = Schedule(sched.kind, sched.params, args.seed)
    return sched


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _interval(text: str):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("interval must look like LO:HI")
    return int(lo), int(hi)


# -- subcommands -------------------------------------------------------------

def cmd_simulate(args) -> int:
    state = GameState(_schedule(args), cap=args.cap)
    state.run_until_time(args.steps)
    with _output(args.out) as out:
        state.timetable.write_csv(out)
    return EXIT_OK


def cmd_sequences(args) -> int:
    if args.convert:
        which, path = args.convert
        with open(path, encoding="utf-8") as fh:
            seq = codec.read_sequence(fh)
        result = (codec.viewing_to_counting(seq) if which == "viewing"
                  else codec.counting_to_viewing(seq))
    else:
        state = simulate(_schedule(args), args.length, cap=args.cap)
        tt = state.timetable
        result = tt.viewing(args.length) if args.which == "viewing" else tt.counting(args.length)
    with _output(args.out) as out:
        codec.write_sequence(result, out)
    return EXIT_OK


def cmd_deck(args) -> int:
    state = simulate(_schedule(args), args.time, cap=args.cap)
    times = codec.deck_to_times(state)
    cards = state.deck.prefix(max(len(times), args.show))
    with _output(args.out) as out:
        out.write(f"t={state.t}\n")
        out.write("deck=" + ",".join(map(str, cards)) + "\n")
        out.write("times=" + codec.format_times(times) + "\n")
    return EXIT_OK


def cmd_decode_times(args) -> int:
    t, deck = codec.times_to_deck(codec.parse_times(args.input))
    with _output(args.out) as out:
        out.write(f"t={t}; deck={','.join(map(str, deck))}\n")
    return EXIT_OK


def cmd_tableau(args) -> int:
    sched = _schedule(args)
    state = simulate(sched, args.tmax, cap=args.cap)
    if args.rsk:
        seq = (state.timetable.viewing(args.tmax) if args.rsk == "viewing"
               else state.timetable.counting(args.tmax))
        pair = tableau.rsk_reversed(seq, max_len=max(args.tmax, tableau.RSK_MAX_LEN))
        rows = pair.P if args.insertion else pair.Q
    else:
        tab = tableau.build_staircase(state.timetable, args.tmax)
        rows = (tableau.transpose(tab) if args.transpose else tab).rows
    with _output(args.out) as out:
        tableau.write_rows(rows, out)
    return EXIT_OK


def _write_report(args, rep: "analysis.CheckReport", probes: List["analysis.ProbeReport"]) -> None:
    text = rep.to_text() + "".join(p.to_text() for p in probes)
    with _output(args.report) as out:
        out.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(rep.to_csv())


def cmd_check(args) -> int:
    n = args.n_max
    rep = analysis.CheckReport()
    suites = ["slow", "root2k", "min-gap", "cloud", "general", "variants"] if args.suite == "all" else [args.suite]
    slow_state = None
    if any(s in ("slow", "root2k", "min-gap", "cloud") for s in suites):
        slow_state = GameState("slow", cap=args.cap)
    for suite in suites:
        if suite == "slow":
            rep = rep.merge(analysis.check_slow_theorems(n, slow_state, budget=args.budget))
        elif suite == "root2k":
            rep = rep.merge(analysis.check_root2k(n, args.c0, slow_state, budget=args.budget))
        elif suite == "min-gap":
            rep = rep.merge(analysis.check_min_gap(n, slow_state, budget=args.budget))
        elif suite == "cloud":
            pc = analysis.point_cloud((max(1, n), 10 * n), slow_state)
            rep = rep.merge(analysis.check_cloud_bounds(pc, args.epsilon))
        elif suite == "general":
            rep = rep.merge(analysis.check_general(
                _schedule(args), n, budget=args.budget, cap=args.cap, truncate=args.truncate))
        elif suite == "variants":
            rep = rep.merge(variants.variant_gap_check(min(n, 50), min(n, 50)))
    _write_report(args, rep, [])
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_probe(args) -> int:
    state = GameState("slow", cap=args.cap)
    probes = []
    if args.suite in ("c", "all"):
        probes.append(analysis.estimate_c(args.n_lo, args.n_hi, state))
    if args.suite in ("gap", "all"):
        probes.extend(analysis.gap_probe(i, args.gap_n, state) for i in range(1, args.cards + 1))
    if args.suite in ("stable", "all"):
        probes.append(analysis.stabilization_report(range(1, args.cards + 1), args.budget, state))
    if args.suite in ("intercept", "all"):
        probes.append(analysis.curve_intercept_probe(args.n_lo, args.n_hi, state))
    with _output(args.report) as out:
        for p in probes:
            out.write(p.to_text())
    return EXIT_OK


def cmd_curve(args) -> int:
    lo, hi = args.interval
    pc = analysis.point_cloud((lo, hi), GameState("slow", cap=args.cap))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{args.name}.csv").write_text(pc.to_csv(), encoding="utf-8")
    (out_dir / f"{args.name}.svg").write_text(pc.to_svg(), encoding="utf-8")
    rep = analysis.check_cloud_bounds(pc, args.epsilon)
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_variants(args) -> int:
    if args.family == "cycle":
        family = variants.SigmaFamily("cycle", schedule=_schedule(args))
    else:
        family = variants.SigmaFamily(args.family)
    game = variants.SigmaGame(family, cap=args.cap)
    game.run_until_time(args.steps)
    with _output(args.out) as out:
        game.timetable.write_csv(out)
    return EXIT_OK


def cmd_stats(args) -> int:
    series = variants.stats_timeseries(_schedule(args), args.steps)
    with _output(args.out) as out:
        out.write(variants.stats_to_csv(series))
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flashcards", description="Flashcard game simulator and checks.")
    parser.add_argument("--config", help="JSON file with default values for any flag")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, schedule=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help=argparse.SUPPRESS)
        p.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                       help="materialization cap on deck positions")
        if schedule:
            p.add_argument("--schedule", default="slow",
                           help="slow | recap | constant:C | affine:A:B | power:B | table:V1,V2,... | "
                                "uniform[:SEED] | poisson[:SEED] | JSON descriptor")
            p.add_argument("--seed", type=int, default=None, help="seed for random schedules")
        return p

    p = add("simulate", cmd_simulate, "write the event log t,card,k")
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--out")

    p = add("sequences", cmd_sequences, "viewing/counting sequences and conversions")
    p.add_argument("--length", type=_positive, default=30)
    p.add_argument("--which", choices=("viewing", "counting"), default="viewing")
    p.add_argument("--convert", nargs=2, metavar=("FROM", "FILE"),
                   help="convert a sequence file: FROM is 'viewing' or 'counting'")
    p.add_argument("--out")

    p = add("deck", cmd_deck, "deck of cards and deck of times at a given time")
    p.add_argument("--time", type=_positive, required=True)
    p.add_argument("--show", type=int, default=15, help="minimum number of deck positions to print")
    p.add_argument("--out")

    p = add("decode-times", cmd_decode_times, "recover t and the deck from a deck of times",
            schedule=False)
    p.add_argument("--input", required=True, help="comma-separated view counts")
    p.add_argument("--out")

    p = add("tableau", cmd_tableau, "staircase tableau or RSK tableaux, one row per line")
    p.add_argument("--tmax", type=_positive, required=True)
    p.add_argument("--transpose", action="store_true")
    p.add_argument("--rsk", choices=("viewing", "counting"))
    p.add_argument("--insertion", action="store_true", help="with --rsk, print P instead of Q")
    p.add_argument("--out")

    p = add("check", cmd_check, "verify proved bounds; exit 1 on any violation")
    p.add_argument("--suite", choices=("slow", "root2k", "min-gap", "cloud", "general", "variants", "all"),
                   default="slow")
    p.add_argument("--n-max", type=_positive, default=500)
    p.add_argument("--c0", type=int, default=analysis.ROOT2K_C0)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--budget", type=_positive, default=10 ** 8)
    p.add_argument("--truncate", action="store_true",
                   help="general suite: check what was reached if the cap or budget stops the run")
    p.add_argument("--report", help="text report path (default stdout)")
    p.add_argument("--csv", help="also write the report as CSV")

    p = add("probe", cmd_probe, "soft probes of open questions (never fail)", schedule=False)
    p.add_argument("--suite", choices=("c", "gap", "stable", "intercept", "all"), default="all")
    p.add_argument("--n-lo", type=_positive, default=1000)
    p.add_argument("--n-hi", type=_positive, default=2000)
    p.add_argument("--gap-n", type=_positive, default=500)
    p.add_argument("--cards", type=_positive, default=10)
    p.add_argument("--budget", type=_positive, default=10 ** 7)
    p.add_argument("--report")

    p = add("curve", cmd_curve, "rescaled point cloud as CSV and SVG", schedule=False)
    p.add_argument("--interval", type=_interval, default=(100, 10000))
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--name", default="curve")

    p = add("variants", cmd_variants, "event log of a permutation-multiplication game")
    p.add_argument("--family", choices=variants.SIGMA_KINDS, required=True)
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--out")

    p = add("stats", cmd_stats, "inversion/descent time series t,inv,des")
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--out")
    return parser


def _load_config(argv: List[str], parser: argparse.ArgumentParser) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        config = json.loads(Path(known.config).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {known.config}: {exc}") from None
    if not isinstance(config, dict):
        raise UsageError("config must be a JSON object")
    if isinstance(config.get("schedule"), dict):
        config["schedule"] = json.dumps(config["schedule"])
    config = {k.replace("-", "_"): v for k, v in config.items()}
    for group in parser._subparsers._group_actions:
        for sp in group.choices.values():
            for action in sp._actions:
                if action.dest in config:
                    # A value from the file satisfies a required flag.
                    action.default = config[action.dest]
                    action.required = False


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        _load_config(argv, parser)
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, ScheduleError, codec.DecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DeckCapacityError, StepBudgetExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
