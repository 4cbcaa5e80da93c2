"""Command-line entry point.

Exit codes: 0 success/ok, 1 verified negative (violations, no extension,
failed experimental extension), 2 invalid input, 3 search budget exhausted,
4 internal error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .core import InternalError, InvalidParameters, retarget
from .detach import SearchExhausted
from .extend import (
    extend_generic,
    extend_k4,
    extend_k5,
    extend_outside,
    extend_pieces,
    factorize,
)
from .hf import ParseError, ValidationError, format_hf, read_hf
from .oracle import SearchConfig, oracle_extend
from .verify import check_conditions, check_full, check_partial, check_pieces_conditions

log = logging.getLogger("hyperfact")

OK, NEGATIVE, INVALID, EXHAUSTED, INTERNAL = 0, 1, 2, 3, 4


def _emit(pf, path) -> None:
    text = format_hf(pf)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_gen(args) -> int:
    res = factorize(args.n, args.h, args.r, seed=args.seed)
    _emit(res.factorization, args.output)
    return OK


def _default_mode(pf) -> str:
    if pf.kind == "pieces":
        return "pieces"
    if pf.kind == "restrict":
        return "outside"
    return {4: "k4", 5: "k5"}.get(pf.params.h, "generic")


def _cmd_extend(args) -> int:
    pf = read_hf(args.input)
    mode = args.mode or _default_mode(pf)
    if mode in ("pieces", "outside"):
        if args.n is not None and args.n != pf.params.n:
            raise InvalidParameters(f"--n must match the header for mode {mode}")
        run = extend_pieces if mode == "pieces" else extend_outside
        res = run(pf, seed=args.seed or 0)
    elif mode == "k4":
        res = extend_k4(pf, args.n, seed=args.seed)
    elif mode == "k5":
        res = extend_k5(pf, args.n, seed=args.seed)
    else:
        res = extend_generic(pf, args.n, seed=args.seed, budget=args.budget)
        if not res.ok:
            print(f"extension failed at stage {res.stage}: {res.reason}", file=sys.stderr)
            return NEGATIVE
    _emit(res.factorization, args.output)
    return OK


def _cmd_verify(args) -> int:
    pf = read_hf(args.input)
    report = check_partial(pf) if args.partial else check_full(pf)
    print(report.summary(), file=sys.stderr)
    return OK if report.ok else NEGATIVE


def _cmd_conditions(args) -> int:
    pf = read_hf(args.input)
    if pf.kind == "restrict":
        report = check_conditions(pf)
    elif pf.kind == "pieces":
        report = check_pieces_conditions(pf)
    else:
        print(f"no extension conditions for kind={pf.kind}", file=sys.stderr)
        return INVALID
    print(report.summary(), file=sys.stderr)
    return OK if report.ok else NEGATIVE


def _cmd_oracle(args) -> int:
    pf = read_hf(args.input)
    if args.n is not None:
        pf = retarget(pf, args.n)
    res = oracle_extend(pf, cfg=SearchConfig(node_budget=args.node_budget,
                                             time_budget=args.time_budget))
    if res.status == "found":
        _emit(res.factorization, args.output)
        return OK
    print(f"{res.status}: {res.reason} ({res.nodes} nodes)", file=sys.stderr)
    return NEGATIVE if res.status == "none" else EXHAUSTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperfact", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="r-factorization of K_n^h")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("extend", help="extend a partial r-factorization")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=["k4", "k5", "pieces", "outside", "generic"])
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, default=1, help="attempts for generic mode")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("verify", help="check an (partial) r-factorization")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--partial", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("conditions", help="check the extension conditions of a restrict/pieces file")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=_cmd_conditions)

    p = sub.add_parser("oracle-extend", help="exhaustive extension search")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--node-budget", type=int, default=1_000_000)
    p.add_argument("--time-budget", type=float, default=60.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, ValidationError, InvalidParameters, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXHAUSTED
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
