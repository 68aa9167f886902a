"""
Command Line Interface for the arc-character toolkit

    python cli.py ext -s fixtures/disk1.json p0:0-p0:2 p0:1-p0:3
    python cli.py character -t example1 gamma --expand 1,2,3,z
    python cli.py oracle -t fixtures/ex1.json p0:0-a0 --truncate 8
"""
import argparse
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.traceback import install

from src.character.cluster import check_exchange, check_multiplication, cluster_character
from src.character.series import FormalSeries, window_expand
from src.errors import ArgumentError, DomainError, ParseError, RealizationError, SchemaError, SeriesError
from src.formats import load_surface, load_tilting, resolve_object
from src.modules.presentation import approximation_triangle, coindex, index
from src.modules.submodules import enumerate_fp_submodules
from src.modules.thin import module_of
from src.oracle.graph import run_oracle
from src.render.formatter import ReportFormatter
from src.surface.hom import check_local_cy, exchange_triangles, ext1_case
from src.surface.model import Arc, SurfaceSpec, parse_arc, shift
from src.tilting.spec import CTVertex, TiltingSpec
from src.tilting.validate import validate_ct
from src.utils.log import setup_logging
from src.utils.settings import get_settings

# Install rich traceback handler
install(show_locals=True)

console = Console()
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERRUPT = 130


def _out(text: str) -> None:
    console.print(text, markup=False, highlight=False, soft_wrap=True)


def _emit(args: argparse.Namespace, text: str, payload: Dict[str, Any]) -> None:
    _out(ReportFormatter.to_json(payload) if args.json else text)


def _windows(t: TiltingSpec, radii: Optional[str]) -> List[Tuple[str, Tuple[CTVertex, ...]]]:
    """``--window``: comma separated radii; settings radii when omitted."""
    if not radii:
        values = list(get_settings().window_radii)
    else:
        try:
            values = [int(p) for p in radii.split(",") if p.strip()]
        except ValueError:
            raise ArgumentError(f"--window takes comma separated radii, got {radii!r}")
    if not values or min(values) < 1:
        raise ArgumentError(f"--window needs positive radii, got {radii!r}")
    return [(f"radius {r}", t.window(r)) for r in values]


def _labels(t: TiltingSpec, text: str) -> Tuple[CTVertex, ...]:
    """``--expand``: comma separated vertex labels."""
    return tuple(t.vertex_by_label(p) for p in text.split(",") if p.strip())


# ===== surface commands =====

def _two_arcs(args: argparse.Namespace) -> Tuple[SurfaceSpec, Arc, Arc]:
    surface = load_surface(args.surface)
    return surface, parse_arc(surface, args.x), parse_arc(surface, args.y)


def cmd_ext(args: argparse.Namespace) -> int:
    _, x, y = _two_arcs(args)
    dim, case = ext1_case(x, y)
    text = str(dim)
    if args.verbose:
        text += f" (case: {case})"
        text += f"\nlocal 2-CY: {'holds' if check_local_cy(x, y) else 'fails'}"
    _emit(args, text, {"dim": dim, "case": case, "local_cy": check_local_cy(x, y)})
    return EXIT_OK


def cmd_hom(args: argparse.Namespace) -> int:
    _, x, y = _two_arcs(args)
    dim, case = ext1_case(x, shift(y, -1))
    text = f"{dim} (case: {case})" if args.verbose else str(dim)
    _emit(args, text, {"dim": dim, "case": case})
    return EXIT_OK


def cmd_triangles(args: argparse.Namespace) -> int:
    _, x, y = _two_arcs(args)
    triangles = exchange_triangles(x, y)
    _emit(args, ReportFormatter.format_triangles(triangles), {"triangles": ReportFormatter.triangles_json(triangles)})
    return EXIT_OK


# ===== tilting commands =====

def cmd_check_ct(args: argparse.Namespace) -> int:
    t = load_tilting(args.tilting)
    report = validate_ct(t)
    _emit(args, ReportFormatter.format_ct_report(report), ReportFormatter.ct_report_json(report))
    return EXIT_OK if report.accepted else EXIT_FAIL


def cmd_module(args: argparse.Namespace) -> int:
    t = load_tilting(args.tilting)
    module = module_of(t, resolve_object(t, args.object))
    lines = [f"{arc}: {piece.support.format(t)}" for arc, piece in zip(module.origin, module.pieces)]
    if len(module.pieces) != 1:
        lines.append(f"dims: {module.dims.format(t)}")
    payload = {"dims": module.dims.format(t), "pieces": {str(p.origin): p.support.format(t) for p in module.pieces}}
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_submodules(args: argparse.Namespace) -> int:
    t = load_tilting(args.tilting)
    families = enumerate_fp_submodules(t, module_of(t, resolve_object(t, args.object)))
    payload = {
        str(arc): [fam.format(t) for fam in fams]
        for arc, fams in zip(families.module.origin, families.per_piece)
    }
    _emit(args, ReportFormatter.format_families(t, families), payload)
    return EXIT_OK


def _index_command(args: argparse.Namespace, label: str, compute: Callable) -> int:
    t = load_tilting(args.tilting)
    arcs = resolve_object(t, args.object)
    value = compute(t, arcs)
    lines = [value.format(t)]
    payload: Dict[str, Any] = {label: ReportFormatter.k0_json(t, value)}
    if getattr(args, "triangle", False):
        triangles = [approximation_triangle(t, a) for a in arcs]
        lines.extend(ReportFormatter.format_triangle(tri) for tri in triangles)
        payload["triangles"] = [ReportFormatter.format_triangle(tri) for tri in triangles]
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_index(args: argparse.Namespace) -> int:
    return _index_command(args, "index", index)


def cmd_coindex(args: argparse.Namespace) -> int:
    return _index_command(args, "coindex", coindex)


# ===== character commands =====

def cmd_character(args: argparse.Namespace) -> int:
    t = load_tilting(args.tilting)
    series = cluster_character(t, resolve_object(t, args.object))
    if args.expand or args.window or not isinstance(series, FormalSeries):
        if args.expand:
            windows = [("window " + args.expand, _labels(t, args.expand))]
        else:
            windows = _windows(t, args.window)
        results = [(name, window_expand(series, w)) for name, w in windows]
        if len(results) == 1:
            text = results[0][1].format(t)
        else:
            text = "\n".join(f"{name}: {poly.format(t)}" for name, poly in results)
        payload = {name: ReportFormatter.polynomial_json(t, poly) for name, poly in results}
        _emit(args, text, payload)
        return EXIT_OK
    text = series.format(t)
    _emit(args, text, {"series": text})
    return EXIT_OK


def _pair(args: argparse.Namespace) -> Tuple[TiltingSpec, List[Arc], List[Arc]]:
    t = load_tilting(args.tilting)
    return t, resolve_object(t, args.m), resolve_object(t, args.n)


def cmd_check_mult(args: argparse.Namespace) -> int:
    t, m, n = _pair(args)
    results = [(name, check_multiplication(t, m, n, w)) for name, w in _windows(t, args.window)]
    text = "\n".join(f"{name}: {'holds' if ok else 'fails'}" for name, ok in results)
    _emit(args, text, {name: ok for name, ok in results})
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


def cmd_check_exchange(args: argparse.Namespace) -> int:
    t, m, n = _pair(args)
    reports = [(name, check_exchange(t, m, n, w)) for name, w in _windows(t, args.window)]
    text = "\n\n".join(f"{name}: {ReportFormatter.format_exchange(t, r)}" for name, r in reports)
    _emit(args, text, {name: ReportFormatter.exchange_json(t, r) for name, r in reports})
    return EXIT_OK if all(r.holds for _, r in reports) else EXIT_FAIL


def cmd_oracle(args: argparse.Namespace) -> int:
    t = load_tilting(args.tilting)
    result = run_oracle(
        t,
        resolve_object(t, args.object),
        truncate=args.truncate,
        save=args.save,
        verbose=bool(args.verbose),
    )
    if args.json:
        _out(ReportFormatter.to_json({
            "verdict": result.verdict,
            "truncate": result.truncate,
            "checks": result.checks,
            "divergence": result.divergence,
            "output_path": result.output_path,
        }))
    else:
        _out(result.report.rstrip("\n"))
        colour = "green" if result.passed else "red"
        summary = f"[bold {colour}]oracle {result.verdict}[/bold {colour}] (L = {result.truncate})"
        if result.output_path:
            summary += f"\n\n报告已保存到: [cyan]{escape(result.output_path)}[/cyan]"
        err_console.print(Panel.fit(summary, border_style=colour))
    return EXIT_OK if result.passed else EXIT_FAIL


# ===== parser =====

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="Arc-character toolkit")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    sub = parser.add_subparsers(dest="command", required=True)

    def surface_cmd(name: str, func: Callable, help_text: str) -> None:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-s", "--surface", required=True, help="surface or tilting file, or example name")
        p.add_argument("x", help="arc literal, e.g. p0:0-a0")
        p.add_argument("y", help="arc literal")
        p.set_defaults(func=func)

    surface_cmd("ext", cmd_ext, "dim Hom(X, Y[1])")
    surface_cmd("hom", cmd_hom, "dim Hom(X, Y)")
    surface_cmd("triangles", cmd_triangles, "exchange triangles between X and Y")

    def tilting_cmd(name: str, func: Callable, help_text: str, objects: Sequence[str] = ("object",)):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-t", "--tilting", required=True, help="tilting file or example name")
        for obj in objects:
            p.add_argument(obj, help="object literal: arc+arc, arc[k], example arc names, or 0")
        p.set_defaults(func=func)
        return p

    p = sub.add_parser("check-ct", help="validate a cluster-tilting spec")
    p.add_argument("-t", "--tilting", required=True)
    p.set_defaults(func=cmd_check_ct)

    tilting_cmd("module", cmd_module, "dimension vector of Hom(-, M)")
    tilting_cmd("submodules", cmd_submodules, "finitely presented submodule families")
    p = tilting_cmd("index", cmd_index, "index of M")
    p.add_argument("--triangle", action="store_true", help="also print the approximation triangles")
    p = tilting_cmd("coindex", cmd_coindex, "coindex of M")
    p.add_argument("--triangle", action="store_true", help="also print the approximation triangles")

    p = tilting_cmd("character", cmd_character, "cluster character of M")
    p.add_argument("--expand", help="comma separated vertex labels to expand on")
    p.add_argument("--window", help="comma separated radii to expand on")

    for name, func in (("check-mult", cmd_check_mult), ("check-exchange", cmd_check_exchange)):
        p = tilting_cmd(name, func, name.replace("-", " "), objects=("m", "n"))
        p.add_argument("--window", help="comma separated radii")

    p = tilting_cmd("oracle", cmd_oracle, "brute-force truncation oracle")
    p.add_argument("--truncate", type=int, default=None, help="tail truncation L (>= 4)")
    p.add_argument("--save", action="store_true", help="save the report under the output directory")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI application."""
    try:
        parser = build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_USAGE if e.code else EXIT_OK

        level = {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
        setup_logging(level, err_console)
        return args.func(args)

    except KeyboardInterrupt:
        err_console.print("\n\n[yellow]⚠️  用户取消操作[/yellow]")
        return EXIT_INTERRUPT

    except (ParseError, SchemaError, ArgumentError, FileNotFoundError) as e:
        err_console.print(f"[red]❌ 输入错误:[/red] {escape(str(e))}")
        return EXIT_USAGE

    except (DomainError, RealizationError, SeriesError) as e:
        err_console.print(f"[red]❌ 计算失败:[/red] {escape(str(e))}")
        return EXIT_FAIL

    except Exception as e:
        err_console.print(f"\n\n[red]❌ 发生错误: {escape(str(e))}[/red]")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
