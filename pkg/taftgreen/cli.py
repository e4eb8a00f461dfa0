"""
The `gr` command line: build caches, multiply and normalize ring elements, decompose tensor
products and run verification suites.

Exit codes: 0 ok, 1 a check failed, 2 a check was inconclusive, 3 cache corruption,
4 parse or configuration error, 5 missing table entry, 6 the oracle could not decide.
"""

from colorama import Fore
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from typing import Sequence, Union
import argparse, json, sys

from .taftgreen_types import *
from .greenring import DerivedTables, RingElement, element_from_json, parse_element, presentation_for
from .verify import build_cache, cached_tables, catalog_for, run_suite, summary_exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ParseError(message)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="order of the root of unity q (3 to 5)")
    common.add_argument("--seed", type=int, default=0, help="seed for the coefficient sweeps")
    common.add_argument("--allow-large", action="store_true", help="permit n = 5")
    common.add_argument("--cache-dir", default=None, help="table cache directory (default: $GR_CACHE_DIR)")
    common.add_argument(
        "--format", dest="fmt", choices=[OutputFormat.Pretty, OutputFormat.Json], default=OutputFormat.Pretty
    )
    common.add_argument("--verbose", action="store_true", help="print progress")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="gr", description="Green ring of the Drinfeld double H_n(1,q) of a Taft algebra")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    commands.add_parser("build", parents=[common], help="write catalog fingerprints and derived tables")

    mul = commands.add_parser("mul", parents=[common], help="normal form of a product")
    mul.add_argument("left", help="ring element, element JSON, or module label")
    mul.add_argument("right", help="ring element, element JSON, or module label")
    mul.add_argument("--stable", action="store_true", help="reduce in the stable Green ring")

    tensor = commands.add_parser("tensor", parents=[common], help="decompose a tensor product of two modules")
    tensor.add_argument("left", help="module label, e.g. V(2,0) or M_1(1,0;eta=1)")
    tensor.add_argument("right", help="module label")

    verify = commands.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("--suite", choices=SuiteName.choices, default=SuiteName.All)
    verify.add_argument("--jobs", type=int, default=1, help="worker processes")
    verify.add_argument("--timing", action="store_true", help="include wall time in reports")
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    return Config(
        n=args.n,
        cache_dir=args.cache_dir,
        seed=args.seed,
        fmt=args.fmt,
        allow_large=args.allow_large,
        jobs=getattr(args, "jobs", 1),
        verbose=args.verbose,
        timing=getattr(args, "timing", False),
    ).validate()


def _optional_tables(config: Config) -> Union[DerivedTables, None]:
    try:
        return cached_tables(config, derive=False)
    except MissingTableEntry:
        return None


def parse_operand(text: str, config: Config, tables: DerivedTables = None) -> RingElement:
    """
    A `mul` operand: RingElement JSON, module label shorthand (mapped to its class), or
    monomial shorthand.

    Raises:
        ParseError: None of the three grammars matches.
        MissingTableEntry: A label needs a table entry that is not cached.
    """
    n = config.n
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise ParseError(f"Malformed element JSON {text!r}: {err}")
        return element_from_json(data, n)
    try:
        label = IndecLabel.parse(stripped, n)
    except ParseError:
        return parse_element(stripped, n)
    return presentation_for(n).class_of(label, tables)


def _emit_json(data) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n")


def cmd_build(config: Config, console: Console) -> int:
    path, up_to_date = build_cache(config)
    if config.fmt == OutputFormat.Json:
        _emit_json({"n": config.n, "path": path, "status": "up to date" if up_to_date else "written"})
    elif up_to_date:
        console.print(f"[green]up to date[/green] {escape(path)}")
    else:
        console.print(f"[cyan]wrote[/cyan] {escape(path)}")
    return 0


def cmd_mul(config: Config, console: Console, left: str, right: str, stable: bool = False) -> int:
    pres = presentation_for(config.n)
    tables = _optional_tables(config)
    product = parse_operand(left, config, tables) * parse_operand(right, config, tables)
    result = pres.stable_normal_form(product) if stable else pres.normal_form(product)
    if config.fmt == OutputFormat.Json:
        _emit_json(result.to_json())
    else:
        console.print(escape(str(result)), highlight=False, soft_wrap=True)
    return 0


def cmd_tensor(config: Config, console: Console, left: str, right: str) -> int:
    A, B = IndecLabel.parse(left, config.n), IndecLabel.parse(right, config.n)
    catalog = catalog_for(config.n, config.seed)
    catalog.verbose = config.verbose
    result = catalog.tensor_decomposition(A, B)
    if config.fmt == OutputFormat.Json:
        _emit_json(dict(result.to_json(), dims=result.dims_line()))
        return 0
    table = Table(title=escape(f"{A} (x) {B}"))
    table.add_column("summand")
    table.add_column("mult", justify="right")
    table.add_column("dim", justify="right")
    for label in sorted(result.summands):
        table.add_row(escape(str(label)), str(result.summands[label]), str(label.dim))
    console.print(table)
    console.print(f"dims: {result.dims_line()}", highlight=False)
    return 0


def cmd_verify(config: Config, console: Console, suite: str) -> int:
    reports = run_suite(suite, config, cached_tables(config))
    if config.fmt == OutputFormat.Json:
        for report in reports:
            sys.stdout.write(report.to_line(config.timing) + "\n")
    else:
        colors = {CheckStatus.Pass: "green", CheckStatus.Fail: "red", CheckStatus.Inconclusive: "yellow"}
        table = Table(title=f"{suite} (n={config.n})")
        table.add_column("check")
        table.add_column("status")
        table.add_column("detail", overflow="fold")
        if config.timing:
            table.add_column("seconds", justify="right")
        for report in reports:
            color = colors[report.status]
            row = [escape(report.check_id), f"[{color}]{report.status}[/{color}]", escape(report.detail)]
            if config.timing:
                row.append(f"{report.elapsed:.3f}")
            table.add_row(*row)
        console.print(table)
    return summary_exit_code(reports)


def error_text(err: TaftGreenError, fmt: str = OutputFormat.Pretty) -> str:
    """The message written to stderr; the tag is only colored for pretty output."""
    text = str(err)
    if fmt == OutputFormat.Pretty:
        text = text.replace("[Error]", f"[{Fore.RED}Error{Fore.RESET}]", 1)
    return text


def main(argv: Sequence[str] = None) -> int:
    console = Console()
    fmt = OutputFormat.Pretty
    try:
        args = build_parser().parse_args(argv)
        fmt = args.fmt
        config = config_from_args(args)
        if args.command == "build":
            return cmd_build(config, console)
        if args.command == "mul":
            return cmd_mul(config, console, args.left, args.right, args.stable)
        if args.command == "tensor":
            return cmd_tensor(config, console, args.left, args.right)
        return cmd_verify(config, console, args.suite)
    except TaftGreenError as err:
        sys.stderr.write(f"{error_text(err, fmt)}\n")
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
