"""Command-line entry point: every solver as a subcommand plus ``verify``."""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from collections.abc import Callable, Sequence
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import TextIO

from .. import __version__
from ..bipartite import (
    BipartiteGraph,
    enumerate_bipartite_graphs,
    parse_bipartite_rows,
    parse_bipartite_text,
)
from ..budget import Deadline
from ..const import DEFAULT_MINRANK_BUDGET, WitnessVariant
from ..exceptions import ArgumentError, InvariantViolation, ThetaKitError
from ..graph import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_graphs,
    parse_graph6,
    path_graph,
    star_graph,
)
from ..linalg import QQ, binomial_basis_coeffs, fermat_basis_coeffs, parse_field
from ..lspec import FiniteL, LSpec, ModularL, parse_lspec
from ..minrank import bipartite_minrank_gfp, minrank_gfp, minrank_real_closed_form
from ..set_systems import (
    SetFamily,
    all_k_subsets,
    fermat_rank_cap,
    inclusion_matrix,
    parse_family_text,
    parse_inline_family,
    product_rank_cap,
    t_intersection_matrix,
    witness_matrix_modular,
    witness_matrix_real,
)
from ..theta import ThetaResult, theta_bipartite_exact, theta_exact, theta_uniform_exact
from .const import (
    CONF_BUDGET_MS,
    CONF_BUNDLE_DIR,
    CONF_CORPUS,
    CONF_FORMAT,
    CONF_N_MAX,
    CONF_N_MIN,
    CONF_PARAMS,
    CONF_PARTS_MAX,
    CONF_THEOREM,
    CONF_TIMINGS,
    CONF_WORKERS,
    DEFAULT_GRID_L_MAX,
    DEFAULT_N_MAX,
    DEFAULT_PARTS_MAX,
    DEFAULT_S_MAX,
    DEFAULT_WORKERS,
    DEFAULT_X_MAX,
    ReportFormat,
    TheoremId,
    VerifyConfig,
)
from .runner import async_verify, resolve_budget_ms
from .theorems import TheoremParams

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNKNOWN = 1
EXIT_ARGUMENT = 2
EXIT_VIOLATION = 3

_FAMILIES: dict[str, Callable[[int], Graph]] = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "edgeless": empty_graph,
    "star": lambda n: star_graph(n - 1),
}
_FAMILY_MIN_N = {"cycle": 3, "star": 2}


def _int_list(text: str) -> list[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from err


def _add_lspec_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("intersection sizes")
    group.add_argument("--L", dest="lspec", help="finite:0,1 | mod:3:1,2 | threshold | cofinite-excl:0")
    group.add_argument("--p", type=int, help="prime modulus")
    group.add_argument("--R", type=_int_list, help="residues mod p, e.g. 1,2")


def _add_graph_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph6", required=True, help="graph in graph6 short form")


def _add_bipartite_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--rows", help="biadjacency rows, e.g. 10,01")
    group.add_argument("--bipartite", type=Path, help="file with one 'n1 n2' block")


def _lspec_from_args(args: argparse.Namespace, required: bool = True) -> LSpec | None:
    if args.lspec:
        if args.R is not None:
            raise ArgumentError("give either --L or --p/--R, not both")
        return parse_lspec(args.lspec)
    if args.R is not None:
        if args.p is None:
            raise ArgumentError("--R needs --p")
        return ModularL(args.p, frozenset(args.R))
    if required:
        raise ArgumentError("an L is required (--L or --p/--R)")
    return None


def _bipartite_from_args(args: argparse.Namespace) -> BipartiteGraph:
    if args.rows:
        return parse_bipartite_rows(args.rows)
    return parse_bipartite_text(args.bipartite.read_text(encoding="ascii"))


def _print_theta(result: ThetaResult, show_witness: bool, out: TextIO) -> int:
    print(result, file=out)
    if result.value is None:
        return EXIT_UNKNOWN
    if show_witness and result.witness is not None:
        print(result.witness.to_text(), file=out)
    return EXIT_OK


def _cmd_theta(args: argparse.Namespace, out: TextIO) -> int:
    lspec = _lspec_from_args(args)
    assert lspec is not None
    result = theta_exact(
        parse_graph6(args.graph6), lspec, args.l_max, deadline=Deadline.after_ms(args.budget_ms)
    )
    return _print_theta(result, args.witness, out)


def _cmd_theta_bip(args: argparse.Namespace, out: TextIO) -> int:
    lspec = _lspec_from_args(args)
    assert lspec is not None
    result = theta_bipartite_exact(
        _bipartite_from_args(args), lspec, args.l_max, deadline=Deadline.after_ms(args.budget_ms)
    )
    return _print_theta(result, args.witness, out)


def _cmd_theta_uniform(args: argparse.Namespace, out: TextIO) -> int:
    lspec = _lspec_from_args(args)
    assert lspec is not None
    result = theta_uniform_exact(
        parse_graph6(args.graph6),
        lspec,
        args.K,
        args.l_max,
        deadline=Deadline.after_ms(args.budget_ms),
    )
    return _print_theta(result, args.witness, out)


def _cmd_minrank(args: argparse.Namespace, out: TextIO) -> int:
    g = parse_graph6(args.graph6)
    if args.real:
        closed = minrank_real_closed_form(g)
        print(closed, file=out)
        return EXIT_OK if closed.known else EXIT_UNKNOWN
    if args.p is None:
        raise ArgumentError("minrank needs --p or --real")
    result = minrank_gfp(g, args.p, args.budget, deadline=Deadline.after_ms(args.budget_ms))
    print(result, file=out)
    if result.witness is not None and args.witness:
        print(result.witness.to_text(), file=out)
    return EXIT_OK if result.known else EXIT_UNKNOWN


def _cmd_bminrank(args: argparse.Namespace, out: TextIO) -> int:
    result = bipartite_minrank_gfp(
        _bipartite_from_args(args),
        args.p,
        args.budget,
        deadline=Deadline.after_ms(args.budget_ms),
    )
    print(result, file=out)
    if result.witness is not None and args.witness:
        print(result.witness.to_text(), file=out)
    return EXIT_OK if result.known else EXIT_UNKNOWN


def _cmd_coeffs(args: argparse.Namespace, out: TextIO) -> int:
    print(f"a: {binomial_basis_coeffs(args.R, args.p)}", file=out)
    if args.fermat:
        for r in sorted(set(args.R)):
            print(f"b[{r}]: {fermat_basis_coeffs(r, args.p)}", file=out)
    return EXIT_OK


def _family_from(path: Path | None, inline: str | None, universe: int | None) -> SetFamily | None:
    if path is not None:
        return parse_family_text(path.read_text(encoding="ascii"))
    if inline is not None:
        if universe is None:
            raise ArgumentError("inline sets need --l")
        return parse_inline_family(universe, inline)
    return None


def _cmd_incmat(args: argparse.Namespace, out: TextIO) -> int:
    family = _family_from(args.family, args.sets, args.l)
    if family is None:
        raise ArgumentError("incmat needs --family or --sets")
    field = parse_field(args.field)
    columns = _family_from(args.columns, args.column_sets, family.l)
    if args.intersection:
        matrix = t_intersection_matrix(family, columns or family, args.t, field)
    else:
        matrix = inclusion_matrix(family, columns or all_k_subsets(family.l, args.t), field)
    print(matrix.to_text(), file=out)
    return EXIT_OK


def _cmd_witness(args: argparse.Namespace, out: TextIO) -> int:
    lspec = _lspec_from_args(args)
    assert lspec is not None
    deadline = Deadline.after_ms(args.budget_ms)
    if args.rows or args.bipartite:
        g = _bipartite_from_args(args)
        result = theta_bipartite_exact(g, lspec, args.l_max, deadline=deadline)
        split = g.n1
    elif args.graph6:
        graph = parse_graph6(args.graph6)
        result = theta_exact(graph, lspec, args.l_max, deadline=deadline)
        split = None
    else:
        raise ArgumentError("witness needs --graph6, --rows or --bipartite")
    if result.witness is None:
        print(result, file=out)
        return EXIT_UNKNOWN
    family = result.witness.family
    rows = family if split is None else family.slice(0, split)
    columns = family if split is None else family.slice(split, len(family))
    if isinstance(lspec, ModularL):
        matrix = witness_matrix_modular(rows, columns, lspec.residues, lspec.p, args.variant)
        if args.variant is WitnessVariant.PRODUCT:
            cap = product_rank_cap(family.l, lspec.s)
        else:
            cap = fermat_rank_cap(family.l, lspec.p)
    elif isinstance(lspec, FiniteL):
        matrix = witness_matrix_real(rows, columns, lspec.values)
        cap = product_rank_cap(family.l, lspec.s)
    else:
        raise ArgumentError("witness matrices need a modular or finite L")
    print(result.witness.to_text(), file=out)
    print(matrix.to_text(), file=out)
    print(f"rank: {matrix.rank}", file=out)
    print(f"cap: {cap}", file=out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    params = TheoremParams(
        lspec=_lspec_from_args(args, required=False),
        p=args.p,
        k=args.k,
        sizes=frozenset(args.K) if args.K else None,
        l_max=args.l_max,
        budget=args.budget,
        x_max=args.x_max,
        s_max=args.s_max,
        grid_l_max=args.grid_l_max,
    )
    config: VerifyConfig = {
        CONF_THEOREM: TheoremId(args.theorem),
        CONF_PARAMS: params,
        CONF_CORPUS: str(args.corpus) if args.corpus else None,
        CONF_N_MIN: args.n_min,
        CONF_N_MAX: args.n_max,
        CONF_PARTS_MAX: args.parts_max,
        CONF_FORMAT: ReportFormat(args.format),
        CONF_WORKERS: args.workers,
        CONF_BUDGET_MS: resolve_budget_ms(args.budget_ms),
        CONF_TIMINGS: args.timings,
        CONF_BUNDLE_DIR: str(args.bundle_dir),
    }
    asyncio.run(async_verify(config, out))
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace, out: TextIO) -> int:
    if args.parts:
        n1, n2 = args.parts
        for g in enumerate_bipartite_graphs(n1, n2):
            print(g.to_text(), file=out)
            print(file=out)
        return EXIT_OK
    if args.family:
        n_max = args.n_max or args.n
        if n_max is None:
            raise ArgumentError("--family needs --n-max")
        for n in range(_FAMILY_MIN_N.get(args.family, 1), n_max + 1):
            print(_FAMILIES[args.family](n).graph6, file=out)
        return EXIT_OK
    if args.n is None:
        raise ArgumentError("corpus needs --n, --parts or --family")
    for g in enumerate_graphs(args.n, dedupe=args.dedupe):
        print(g.graph6, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetakit",
        description="Exact L-intersection numbers, minimum ranks and bound verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver(name: str, help_text: str, handler: Callable[..., int]) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        cmd.set_defaults(handler=handler)
        cmd.add_argument("--budget-ms", type=int, help="wall-clock budget (default: none)")
        return cmd

    cmd = solver("theta", "L-intersection number of a graph", _cmd_theta)
    _add_graph_args(cmd)
    _add_lspec_args(cmd)
    cmd.add_argument("--l-max", type=int, help="largest universe size to try")
    cmd.add_argument("--witness", action="store_true", help="print the representation")

    cmd = solver("theta-bip", "bipartite L-intersection number", _cmd_theta_bip)
    _add_bipartite_args(cmd)
    _add_lspec_args(cmd)
    cmd.add_argument("--l-max", type=int)
    cmd.add_argument("--witness", action="store_true")

    cmd = solver("theta-uniform", "L-intersection number with restricted set sizes", _cmd_theta_uniform)
    _add_graph_args(cmd)
    _add_lspec_args(cmd)
    cmd.add_argument("--K", type=_int_list, required=True, help="allowed set sizes, e.g. 2,3")
    cmd.add_argument("--l-max", type=int)
    cmd.add_argument("--witness", action="store_true")

    cmd = solver("minrank", "minimum rank over GF(p) or closed-form real", _cmd_minrank)
    _add_graph_args(cmd)
    cmd.add_argument("--p", type=int, help="prime field size")
    cmd.add_argument("--real", action="store_true", help="closed-form real minimum rank")
    cmd.add_argument("--budget", type=int, default=DEFAULT_MINRANK_BUDGET, help="node budget")
    cmd.add_argument("--witness", action="store_true")

    cmd = solver("bminrank", "bipartite minimum rank over GF(p)", _cmd_bminrank)
    _add_bipartite_args(cmd)
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--budget", type=int, default=DEFAULT_MINRANK_BUDGET)
    cmd.add_argument("--witness", action="store_true")

    cmd = sub.add_parser("coeffs", help="binomial-basis coefficients over GF(p)")
    cmd.set_defaults(handler=_cmd_coeffs)
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--R", type=_int_list, required=True)
    cmd.add_argument("--fermat", action="store_true", help="also print 1-(x-r)^(p-1) coefficients")

    cmd = sub.add_parser("incmat", help="inclusion or t-intersection matrix of a family")
    cmd.set_defaults(handler=_cmd_incmat)
    rows = cmd.add_mutually_exclusive_group()
    rows.add_argument("--family", type=Path, help="family file")
    rows.add_argument("--sets", help="inline family, e.g. '1,2;2,3;-'")
    cols = cmd.add_mutually_exclusive_group()
    cols.add_argument("--columns", type=Path, help="column family file (default: all t-subsets)")
    cols.add_argument("--column-sets", help="inline column family")
    cmd.add_argument("--l", type=int, help="universe size for inline sets")
    cmd.add_argument("--t", type=int, required=True)
    cmd.add_argument("--intersection", action="store_true", help="C(|F_i & T_j|, t) entries")
    cmd.add_argument("--field", default=QQ.tag, help="qq or gf:p")

    cmd = solver("witness", "representation and its witness matrix", _cmd_witness)
    cmd.add_argument("--graph6")
    cmd.add_argument("--rows")
    cmd.add_argument("--bipartite", type=Path)
    _add_lspec_args(cmd)
    cmd.add_argument(
        "--variant",
        type=WitnessVariant,
        choices=list(WitnessVariant),
        default=WitnessVariant.PRODUCT,
    )
    cmd.add_argument("--l-max", type=int)

    cmd = sub.add_parser("verify", help="check an inequality over a corpus")
    cmd.set_defaults(handler=_cmd_verify)
    cmd.add_argument("--theorem", required=True, choices=[str(t) for t in TheoremId])
    _add_lspec_args(cmd)
    cmd.add_argument("--k", type=int, help="set size (T1.1, T5.1)")
    cmd.add_argument("--K", type=_int_list, help="allowed set sizes (T5.2)")
    corpus = cmd.add_argument_group("corpus")
    corpus.add_argument("--corpus", type=Path, help="graph6 or bipartite corpus file")
    corpus.add_argument("--n-min", type=int, default=1)
    corpus.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    corpus.add_argument("--parts-max", type=int, default=DEFAULT_PARTS_MAX)
    corpus.add_argument("--x-max", type=int, default=DEFAULT_X_MAX)
    corpus.add_argument("--s-max", type=int, default=DEFAULT_S_MAX)
    corpus.add_argument("--grid-l-max", type=int, default=DEFAULT_GRID_L_MAX)
    run = cmd.add_argument_group("run")
    run.add_argument("--format", choices=[str(f) for f in ReportFormat], default="csv")
    run.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    run.add_argument("--budget-ms", type=int, help="per-graph budget (env THETAKIT_BUDGET_MS)")
    run.add_argument("--budget", type=int, default=DEFAULT_MINRANK_BUDGET, help="minrank node budget")
    run.add_argument("--l-max", type=int, help="largest universe size to try")
    run.add_argument("--timings", action="store_true", help="fill the millis column")
    run.add_argument("--bundle-dir", type=Path, default=Path())

    cmd = sub.add_parser("corpus", help="print a graph corpus")
    cmd.set_defaults(handler=_cmd_corpus)
    cmd.add_argument("--n", type=int, help="all labeled graphs on n vertices")
    cmd.add_argument("--dedupe", action="store_true", help="one graph per isomorphism class")
    cmd.add_argument("--parts", type=int, nargs=2, metavar=("N1", "N2"))
    cmd.add_argument("--family", choices=sorted(_FAMILIES))
    cmd.add_argument("--n-max", type=int)
    return parser


def run_subcommand(
    argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None
) -> int:
    """Run one command line and return its exit code."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ARGUMENT
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=err,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args, out)
    except InvariantViolation as exc:
        print(f"violation: {exc}", file=err)
        return EXIT_VIOLATION
    except ArgumentError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ARGUMENT
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ARGUMENT
    except ThetaKitError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_UNKNOWN


def main() -> None:
    sys.exit(run_subcommand(sys.argv[1:]))
