"""Command line interface.

One subcommand per operation: count, unrank, rank, enumerate, random,
typecheck, experiment, validate.  Terms are read and written in the
printable syntax by default (λ or backslash binders) and as JSON objects
with --format json, so the commands compose over pipes:

    lamenum unrank --size 10 --free-vars 0 --rank 12345 | lamenum typecheck
    lamenum random --size 8 --count 100 --seed 7 | lamenum rank

Exit status: 0 on success (including "untypable", which is an answer, not
an error), 1 on domain errors (bad rank, open term, empty family), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import secrets
import sys

from . import __version__
from .counting import FAMILIES, count_family, validate_relations
from .experiments import KINDS, ExperimentSpec, run_experiment
from .ranking import (enumerate_nf, enumerate_terms, rank_nf, rank_term,
                      unrank_nf, unrank_term)
from .sampling import SamplerConfig, make_rng, random_nf, random_term, random_typable
from .terms import (LamenumError, Term, parse_term, print_term,
                    term_from_json_text, term_to_json_text)
from .typecheck import format_type, is_typable, principal_type


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BrokenPipeError:
        # Downstream closed the pipe (e.g. | head); not our error.
        try:
            sys.stdout.close()
        except Exception:
            pass
        return 0
    except LamenumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lamenum",
        description="Count, rank, sample and type-check de Bruijn lambda terms.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count a family at (size, free-vars)")
    p.add_argument("--size", "-n", type=int, required=True)
    p.add_argument("--free-vars", "-m", type=int, default=0,
                   help="free-variable budget (hole count for context families)")
    p.add_argument("--family", choices=FAMILIES, default="terms")
    p.add_argument("--table", action="store_true",
                   help="dump CSV rows family,n,m,value for the whole grid "
                        "up to (--size, --free-vars)")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("unrank", help="term at a given rank")
    p.add_argument("--size", "-n", type=int, required=True)
    p.add_argument("--free-vars", "-m", type=int, default=0)
    p.add_argument("--rank", "-k", type=int, required=True)
    _family_flag(p)
    _term_output_flags(p)
    p.set_defaults(handler=_cmd_unrank)

    p = sub.add_parser("rank", help="rank of a term (argument or stdin lines)")
    p.add_argument("term", nargs="?", help="term text or JSON; stdin if omitted")
    p.add_argument("--free-vars", "-m", type=int, default=0)
    _family_flag(p)
    p.set_defaults(handler=_cmd_rank)

    p = sub.add_parser("enumerate", help="all terms of a family, in rank order")
    p.add_argument("--size", "-n", type=int, required=True)
    p.add_argument("--free-vars", "-m", type=int, default=0)
    p.add_argument("--limit", type=int, default=None,
                   help="stop after this many terms")
    _family_flag(p)
    _term_output_flags(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("random", help="uniform random terms")
    p.add_argument("--size", "-n", type=int, required=True)
    p.add_argument("--free-vars", "-m", type=int, default=0)
    p.add_argument("--count", "-c", type=int, default=1)
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed; a fresh one is drawn and logged if omitted")
    p.add_argument("--typable", action="store_true",
                   help="sieve draws through the typability test")
    p.add_argument("--max-attempts", type=int, default=1_000_000,
                   help="give up on the sieve after this many draws per term")
    p.add_argument("--log-attempts", action="store_true",
                   help="with --typable, log the sieve attempt count of each "
                        "draw to stderr")
    _family_flag(p)
    _term_output_flags(p)
    p.set_defaults(handler=_cmd_random)

    p = sub.add_parser("typecheck",
                       help="principal type of a closed term, or 'untypable'")
    p.add_argument("term", nargs="?", help="term text or JSON; stdin if omitted")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--style", choices=("unicode", "ascii"), default="unicode")
    p.set_defaults(handler=_cmd_typecheck)

    p = sub.add_parser("experiment", help="run a reproducible experiment")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--sizes", default=None,
                   help="comma list (4,5,6) or inclusive range start:stop[:step]")
    p.add_argument("--size", type=int, default=None,
                   help="shorthand for a single size")
    p.add_argument("--samples", type=int, default=100,
                   help="samples per size or per segment")
    p.add_argument("--segments", type=int, default=0,
                   help="segment count for segment-histogram")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("montecarlo", "exhaustive"),
                   default="montecarlo")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="stdout format when --out is not given")
    p.add_argument("--out", default=None, metavar="BASE",
                   help="write BASE.csv and BASE.json instead of stdout")
    p.add_argument("--plot", nargs="?", const="", default=None, metavar="PATH",
                   help="also render a figure (default BASE.png with --out)")
    _family_flag(p)
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("validate", help="self-checks; exit 1 on any failure")
    p.add_argument("--relations-size", type=int, default=12,
                   help="max size for the count relation checks")
    p.add_argument("--relations-budget", type=int, default=6,
                   help="max budget for the count relation checks")
    p.add_argument("--bijection-size", type=int, default=5,
                   help="max size for rank/unrank round-trip checks")
    p.add_argument("--bijection-budget", type=int, default=2,
                   help="max budget for rank/unrank round-trip checks")
    p.set_defaults(handler=_cmd_validate)

    return parser


def _family_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nf", action="store_true",
                   help="use the beta-normal-form family")


def _term_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--style", choices=("unicode", "ascii"), default="unicode")


def _emit_term(t: Term, args) -> None:
    if args.format == "json":
        print(term_to_json_text(t))
    else:
        print(print_term(t, args.style))


def _read_term(text: str) -> Term:
    if text.lstrip().startswith("{"):
        return term_from_json_text(text)
    return parse_term(text)


def _input_terms(args):
    """The positional term if given, else nonempty stdin lines."""
    if args.term is not None:
        yield _read_term(args.term)
        return
    for line in sys.stdin:
        line = line.strip()
        if line:
            yield _read_term(line)


def _cmd_count(args) -> int:
    if args.size < 0 or args.free_vars < 0:
        raise ValueError("size and free-vars must be nonnegative")
    if args.table:
        print("family,n,m,value")
        for n in range(args.size + 1):
            for m in range(args.free_vars + 1):
                print(f"{args.family},{n},{m},{count_family(args.family, n, m)}")
    else:
        print(count_family(args.family, args.size, args.free_vars))
    return 0


def _cmd_unrank(args) -> int:
    unrank = unrank_nf if args.nf else unrank_term
    _emit_term(unrank(args.size, args.free_vars, args.rank), args)
    return 0


def _cmd_rank(args) -> int:
    rank = rank_nf if args.nf else rank_term
    for t in _input_terms(args):
        print(rank(t, args.free_vars))
    return 0


def _cmd_enumerate(args) -> int:
    gen = (enumerate_nf if args.nf else enumerate_terms)(args.size, args.free_vars)
    for i, t in enumerate(gen):
        if args.limit is not None and i >= args.limit:
            break
        _emit_term(t, args)
    return 0


def _cmd_random(args) -> int:
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed: {seed}", file=sys.stderr)
    cfg = SamplerConfig(size=args.size, budget=args.free_vars,
                        family="nf" if args.nf else "terms", seed=seed,
                        max_attempts=args.max_attempts)
    rng = make_rng(seed)
    for _ in range(args.count):
        if args.typable:
            t, attempts = random_typable(cfg, rng)
            if args.log_attempts:
                print(f"attempts: {attempts}", file=sys.stderr)
        elif args.nf:
            t = random_nf(cfg, rng)
        else:
            t = random_term(cfg, rng)
        _emit_term(t, args)
    return 0


def _cmd_typecheck(args) -> int:
    import json as _json
    for t in _input_terms(args):
        if is_typable(t):
            rendered = format_type(principal_type(t), args.style)
            if args.format == "json":
                print(_json.dumps({"typable": True, "principalType": rendered}))
            else:
                print(f"typable {rendered}")
        else:
            if args.format == "json":
                print(_json.dumps({"typable": False, "principalType": None}))
            else:
                print("untypable")
    return 0


def _parse_sizes(args) -> tuple[int, ...]:
    if (args.sizes is None) == (args.size is None):
        raise ValueError("give exactly one of --sizes or --size")
    if args.size is not None:
        return (args.size,)
    text = args.sizes
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) == 2:
            start, stop, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            start, stop, step = parts
        else:
            raise ValueError(f"bad range {text!r}, want start:stop[:step]")
        if step < 1:
            raise ValueError("range step must be positive")
        return tuple(range(start, stop + 1, step))
    return tuple(int(x) for x in text.split(","))


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec(
        kind=args.kind,
        family="nf" if args.nf else "terms",
        sizes=_parse_sizes(args),
        samples_per_point=args.samples,
        segments=args.segments,
        seed=args.seed,
        mode=args.mode,
    )
    report = run_experiment(spec)

    plot_path = args.plot
    if args.out:
        with open(args.out + ".csv", "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
        with open(args.out + ".json", "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        if plot_path == "":
            plot_path = args.out + ".png"
    else:
        sys.stdout.write(report.to_csv() if args.format == "csv"
                         else report.to_json())
        if plot_path == "":
            raise ValueError("--plot needs a path when --out is not given")

    if plot_path:
        from .plots import render_report
        render_report(report, plot_path)
    return 0


def _cmd_validate(args) -> int:
    failures = 0

    def report(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"{status} {name}{suffix}")
        if not ok:
            failures += 1

    rel = validate_relations(args.relations_size, args.relations_budget)
    report(f"count relations up to size {args.relations_size}, "
           f"budget {args.relations_budget}", rel.ok,
           f"{rel.checked} identities" if rel.ok
           else f"{len(rel.violations)} violations, first: {rel.violations[0]}")

    for family, enum, rank, unrank in (
            ("terms", enumerate_terms, rank_term, unrank_term),
            ("nf", enumerate_nf, rank_nf, unrank_nf)):
        ok = True
        detail = ""
        checked = 0
        for n in range(args.bijection_size + 1):
            for m in range(args.bijection_budget + 1):
                for k, t in enumerate(enum(n, m), 1):
                    checked += 1
                    if rank(t, m) != k or unrank(n, m, k) != t:
                        ok = False
                        detail = f"first failure at n={n} m={m} k={k}"
                        break
                if not ok:
                    break
            if not ok:
                break
        report(f"{family} rank/unrank bijection up to size "
               f"{args.bijection_size}, budget {args.bijection_budget}",
               ok, detail or f"{checked} terms")

    ok = True
    detail = ""
    for t in enumerate_terms(min(args.bijection_size, 5), 1):
        for style in ("unicode", "ascii"):
            if parse_term(print_term(t, style)) != t:
                ok = False
                detail = f"{print_term(t)} ({style})"
                break
        if not ok:
            break
    report("print/parse round-trip", ok, detail)

    return 1 if failures else 0
