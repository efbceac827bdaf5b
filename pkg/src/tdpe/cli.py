"""Command-line front end: ``tdpe check|normalize|disjunct|rewrite|corpus|gen``.

Exit status is 0 on success, 1 when a term fails to check or a corpus
expectation is not met, and 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import equational as eq
from .corpus import CorpusError, builtin_corpus, run_corpus, run_entries
from .generate import GenConfig, GenerationFailed, gen_typed_term
from .normalizer import Left, NormalizationError, OpenTermError, extract_disjunct, tdpe
from .semantics import Strategy
from .syntax import (
    ParseError,
    ScopeError,
    parse_context,
    parse_formula,
    parse_term,
    print_term,
    show_formula,
    to_debruijn,
)
from .syntax.formula import Formula, Sum
from .syntax.printer import default_names
from .typecheck import TypeCheckError, check, synth

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _source(args: argparse.Namespace) -> str:
    if args.expr is not None:
        return args.expr
    if args.file is None:
        raise UsageError("give a FILE or --expr TEXT")
    try:
        return Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc


def _context(args: argparse.Namespace) -> list[tuple[str, Formula]]:
    """Named context entries, outermost first; unnamed entries get ``_i``."""
    entries = parse_context(args.ctx) if args.ctx else []
    return [(name or f"_{i}", ty) for i, (name, ty) in enumerate(entries)]


class _Input:
    """A parsed term together with the judgment it is read at."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.entries = _context(args)
        self.names = tuple(name for name, _ in reversed(self.entries))
        self.ctx = tuple(ty for _, ty in reversed(self.entries))
        self.annot = args.annot
        self.surface = parse_term(_source(args))
        self.term = to_debruijn(self.surface, self.names)
        given = getattr(args, "type", None)
        self.type = parse_formula(given) if given else synth(self.ctx, self.annot, self.term).type


def _judgment_args(p: argparse.ArgumentParser, *, ctx: bool = True) -> None:
    if ctx:
        p.add_argument("--ctx", default="", help='typing context, outermost first, e.g. "x:a, y:a -> bot"')
    p.add_argument("--annot", type=int, choices=(0, 1), default=0, help="judgment annotation (1 = below a reset)")
    p.add_argument("--type", help="expected type; inferred when omitted")


def _term_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("file", nargs="?", help="file holding the term")
    src.add_argument("--expr", help="the term itself")


def cmd_check(args: argparse.Namespace) -> int:
    record: dict = {"annot": args.annot}
    try:
        inp = _Input(args)
        check(inp.ctx, inp.annot, inp.term, inp.type)
    except TypeCheckError as exc:
        record.update(ok=False, type=args.type, error=str(exc), kind=exc.kind)
        if args.json:
            print(json.dumps(record))
        else:
            print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_FAIL
    record.update(ok=True, type=show_formula(inp.type))
    print(json.dumps(record) if args.json else f"ok: {show_formula(inp.type)}")
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    inp = _Input(args)
    result = tdpe(Strategy(args.strategy), inp.ctx, inp.annot, inp.term, inp.type)
    print(print_term(result.term, default_names(len(inp.ctx))))
    return EXIT_OK


def cmd_disjunct(args: argparse.Namespace) -> int:
    ty = parse_formula(args.type)
    if not isinstance(ty, Sum):
        raise UsageError(f"--type must be a sum, got {show_formula(ty)}")
    term = to_debruijn(parse_term(_source(args)))
    out = extract_disjunct(term, ty.left, ty.right, Strategy(args.strategy))
    side = "inl" if isinstance(out, Left) else "inr"
    print(f"{side} {print_term(out.term)}")
    return EXIT_OK


def cmd_rewrite(args: argparse.Namespace) -> int:
    inp = _Input(args)
    theory = eq.Theory(args.theory)
    start = eq.prepare(theory, inp.surface, inp.entries, inp.annot, inp.type)
    result = eq.rewrite_search(theory, start, args.max_steps)
    for trace in result.traces:
        rules = ",".join(str(step.rule) for step in trace.steps) or "-"
        print(f"[{rules}] {trace.term}")
        if args.trace:
            for step in trace.steps:
                path = ".".join(map(str, step.path)) or "root"
                print(f"    rule {step.rule} at {path}: {step.term}")
    print(
        f"# {len(result.traces)} terms; normal form reached: "
        f"{'yes' if result.reached_normal_form else 'no'}; "
        f"budget exhausted: {'yes' if result.budget_exhausted else 'no'}"
    )
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.action == "paper":
        report = run_entries(builtin_corpus())
    else:
        if not args.path:
            raise UsageError("corpus run needs a path")
        try:
            report = run_corpus(args.path)
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc}") from exc
    print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(
        seed=args.seed,
        max_depth=args.depth,
        target_type=parse_formula(args.type),
        allow_control=args.control,
        annot=args.annot,
    )
    entries = _context(args)
    ctx = tuple(ty for _, ty in reversed(entries))
    names = tuple(name for name, _ in reversed(entries))
    try:
        term = gen_typed_term(cfg, ctx)
    except GenerationFailed as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(print_term(term, names))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdpe", description="Type-directed partial evaluation with shift and reset."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="type-check a term")
    _judgment_args(p)
    _term_args(p)
    p.add_argument("--json", action="store_true", help="print a JSON record")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("normalize", help="print the normal form of a term")
    p.add_argument("--strategy", choices=("cbv", "cbn"), default="cbv")
    _judgment_args(p)
    _term_args(p)
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("disjunct", help="extract the injection of a closed proof of a sum")
    p.add_argument("--type", required=True, help='a sum type, e.g. "(a -> a) + bot"')
    p.add_argument("--strategy", choices=("cbv", "cbn"), default="cbv")
    _term_args(p)
    p.set_defaults(run=cmd_disjunct)

    p = sub.add_parser("rewrite", help="explore the equational theory from a term")
    p.add_argument("--theory", choices=("cbv", "cbn"), default="cbv")
    p.add_argument("--max-steps", type=int, default=10)
    p.add_argument("--trace", action="store_true", help="show every step of each trace")
    _judgment_args(p)
    _term_args(p)
    p.set_defaults(run=cmd_rewrite)

    p = sub.add_parser("corpus", help="run a golden corpus")
    p.add_argument("action", choices=("run", "paper"))
    p.add_argument("path", nargs="?")
    p.set_defaults(run=cmd_corpus)

    p = sub.add_parser("gen", help="generate a random well-typed term")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--type", required=True)
    p.add_argument("--control", action="store_true", help="allow shift and reset")
    p.add_argument("--annot", type=int, choices=(0, 1), default=0)
    p.add_argument("--ctx", default="")
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (ParseError, ScopeError, CorpusError, UsageError, OpenTermError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TypeCheckError as exc:
        print(f"type error ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NormalizationError, eq.RewriteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
