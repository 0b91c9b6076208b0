"""Command line entry point.

Exit codes: 0 success, 1 validation or domain error, 2 parse, I/O or usage
error, 3 invariant violation found by ``verify``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .barcode import INF, Barcode, BarcodeError, bottleneck_distance
from .beta_map import compute_B, explain
from .foliation import GenerationError, GeneratorParams, default_seed, generate_full
from .generic import (GenericError, compute_B_gen, d_squared_defects, generic_violations,
                      validate_generic)
from .graph import ActionGraph, GraphError, validate
from .persistence import ComplexError
from .plot import to_svg, to_text
from .verify import MUTANTS, run_verification

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno} "
                       f"(char {exc.pos}): {exc.msg}", EXIT_PARSE) from exc


def load_instance(path: str) -> ActionGraph:
    data = _read_json(path)
    try:
        return ActionGraph.from_dict(data)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def load_barcode(path: str) -> Barcode:
    data = _read_json(path)
    try:
        return Barcode.from_dict(data)
    except BarcodeError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _require_valid(g: ActionGraph):
    problems = validate(g)
    if problems:
        raise CliError("invalid instance:\n  " + "\n  ".join(problems), EXIT_DOMAIN)


def cmd_compute(args) -> int:
    g = load_instance(args.instance)
    _require_valid(g)
    if args.explain:
        print(json.dumps(explain(g), indent=2))
    else:
        print(compute_B(g).to_json())
    return EXIT_OK


def cmd_compute_gen(args) -> int:
    g = load_instance(args.instance)
    problems = generic_violations(g)
    if problems:
        raise CliError("not a generic instance:\n  " + "\n  ".join(problems), EXIT_DOMAIN)
    gi = validate_generic(g)
    defects = d_squared_defects(gi)
    if defects:
        raise CliError("chain complex is not a complex:\n  " + "\n  ".join(defects), EXIT_DOMAIN)
    print(compute_B_gen(gi).to_json())
    return EXIT_OK


def format_distance(d: float) -> str:
    return "inf" if d == INF else repr(d)


def cmd_compare(args) -> int:
    b1, b2 = load_barcode(args.first), load_barcode(args.second)
    print(format_distance(bottleneck_distance(b1, b2)))
    return EXIT_OK


def cmd_validate(args) -> int:
    g = load_instance(args.instance)
    problems = generic_violations(g) if args.generic else validate(g, strict=args.strict)
    print(json.dumps({"valid": not problems, "violations": problems}, indent=2))
    return EXIT_DOMAIN if problems else EXIT_OK


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    params = GeneratorParams(args.genus, args.sources, seed, args.max_attempts, args.sinks)
    try:
        gen = generate_full(params)
    except GenerationError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from exc
    text = gen.instance.graph.to_json(indent=2) + "\n"
    sidecar = json.dumps(gen.provenance, indent=2) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    out = Path(args.out)
    try:
        out.write_text(text)
        provenance_path(out).write_text(sidecar)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror}", EXIT_PARSE) from exc
    return EXIT_OK


def provenance_path(out: Path) -> Path:
    return out.with_name(out.stem + ".provenance.json")


def cmd_plot(args) -> int:
    b = load_barcode(args.barcode)
    rendered = to_svg(b, Path(args.barcode).name) if args.format == "svg" else to_text(b)
    if args.out:
        try:
            Path(args.out).write_text(rendered)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc.strerror}", EXIT_PARSE) from exc
    else:
        sys.stdout.write(rendered)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification(args.seeds, args.genus_max, args.seed_base,
                              args.inject_mutant, args.jobs, not args.no_oracle)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print("\n".join(report.lines()))
        for name, dumps in report.dumps.items():
            for d in dumps:
                print(f"counterexample [{name}] genus={d['genus']} seed={d['seed']}: {d['detail']}")
                print("  " + json.dumps(d["instance"]))
    return EXIT_OK if report.ok else EXIT_INVARIANT


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foliation-barcode",
        description="Barcodes of action-filtered graphs and gradient-like foliations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="barcode of an instance from its threshold components")
    p.add_argument("instance")
    p.add_argument("--explain", action="store_true", help="print per-threshold diagnostics")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("compute-gen", help="barcode of the graded chain complex of a generic instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_compute_gen)

    p = sub.add_parser("compare", help="bottleneck distance between two barcode files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("validate", help="list invariant violations of an instance")
    p.add_argument("instance")
    p.add_argument("--strict", action="store_true",
                   help="require index 1 at sinks/sources and index <= 0 at saddles")
    p.add_argument("--generic", action="store_true", help="check the generic hypotheses")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="write a random generic foliation instance")
    p.add_argument("--genus", type=_non_negative, default=0)
    p.add_argument("--seed", type=int, default=None, help="defaults to $BARCODE_SEED or 0")
    p.add_argument("--out", default=None)
    p.add_argument("--sources", type=_positive, default=None)
    p.add_argument("--sinks", type=_positive, default=None)
    p.add_argument("--max-attempts", type=_non_negative, default=50)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("plot", help="render a barcode file")
    p.add_argument("barcode")
    p.add_argument("--format", choices=("svg", "text"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="run the invariant suite on generated instances")
    p.add_argument("--seeds", type=_non_negative, default=20, help="instances per genus")
    p.add_argument("--genus-max", type=_non_negative, default=2)
    p.add_argument("--seed-base", type=int, default=None,
                   help="first seed; defaults to $BARCODE_SEED or 0")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--no-oracle", action="store_true", help="skip the rank-oracle cross-check")
    p.add_argument("--inject-mutant", choices=sorted(MUTANTS), default=None,
                   help="replace the graph barcode by a deliberately broken variant")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed_base", 0) is None:
        args.seed_base = default_seed()
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, GenericError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
