"""Command line front end: ``slitdisk eval | verify | render | config``.

Exit codes: 0 success, 1 a check failed, 2 usage or config error,
3 a point or parameter outside its domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, parse_complex
from .counterexample import VerificationReport, build, phi_eval
from .hyperbolic import BoundaryDeviation, DomainError
from .innerfn import SingularInner
from .slitmap import g, g_deviation, h, h_deviation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def parse_point(text: str):
    """``"re,im"`` gives a plain point, ``"dev:re,im"`` the point ``1 - (re + i im)``."""
    try:
        if text.startswith("dev:"):
            return BoundaryDeviation(parse_complex(text[4:]))
        return parse_complex(text)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(".."))
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected lo..hi") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def format_value(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.15g}"
    return f"{z.real:.15g},{z.imag:.15g}"


def load_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    if getattr(args, "seed", None) is not None:
        cfg = cfg.replace("run", seed=args.seed)
    return cfg


# -- eval ---------------------------------------------------------------------------


def cmd_eval(args) -> int:
    cfg = load_config(args)
    z = parse_point(args.point)
    fn = args.function
    if fn == "singular":
        S = SingularInner.atom(args.t, parse_complex(args.eta))
        value = S(z)
    elif fn == "map-g":
        value = g_deviation(z).value() if isinstance(z, BoundaryDeviation) else g(z)
    elif fn == "map-h":
        value = h_deviation(z).value() if isinstance(z, BoundaryDeviation) else h(z)
    else:
        c = cfg.construction
        cx = build(c.a, c.n_max, c.tol)
        value = cx.B.eval(z) if fn == "blaschke" else phi_eval(cx, z)
    print(format_value(value))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


def profile_csv(table) -> str:
    header, rows = table
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, complex):
        return format_value(v)
    if hasattr(v, "item"):  # numpy scalars
        v = v.item()
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    return v


def write_report(report: VerificationReport, cfg: RunConfig, out: Path,
                 figures: bool = True) -> list[Path]:
    out = Path(out)
    written = []
    config = cfg.to_dict()
    _atomic_write(out / "report.json", report.to_json(config))
    _atomic_write(out / "report.txt", report.to_text())
    written += [out / "report.json", out / "report.txt"]
    for name in sorted(report.profiles):
        path = out / f"{name}.csv"
        _atomic_write(path, profile_csv(report.profiles[name]))
        written.append(path)
    if figures:
        from .plotting import save_figures

        written += save_figures(report, out / "figures")
    return written


def cmd_verify(args) -> int:
    from .suite import run_group

    cfg = load_config(args)
    if args.c is not None:
        cfg = cfg.replace("thin", hoffman_c=args.c)
    if args.theta is not None:
        cfg = cfg.replace("slit", theta=args.theta)
    if args.m is not None:
        lo, hi = parse_range(args.m)
        cfg = cfg.replace("slit", m_min=lo, m_max=hi)
    cfg.validate()
    report = run_group(args.group, cfg)
    out = Path(args.out) if args.out else Path(cfg.output.directory)
    figures = cfg.output.figures and not args.no_figures
    write_report(report, cfg, out, figures)
    if not args.quiet:
        sys.stdout.write(report.to_text())
        if args.group == "hoffman":
            check = report.checks.get("hoffman-value")
            if check and check.values:
                print(f"hoffman_bound({cfg.thin.hoffman_c!r}) = {check.values[0]:.15g}")
        if args.group == "slit-floor":
            floors = [c.values[0] for n, c in sorted(report.checks.items())
                      if n.startswith("slit-floor") and c.values]
            if floors:
                print(f"slit floor = {min(floors):.15g}")
        print(f"reports written to {out}")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- render ---------------------------------------------------------------------------


def cmd_render(args) -> int:
    from .render import RegionError, parse_region, render, write_ppm

    cfg = load_config(args)
    if args.region:
        try:
            parse_region(args.region)
        except RegionError as exc:
            raise UsageError(str(exc)) from None
    cx = None
    if args.target in ("B", "phi"):
        c = cfg.construction
        cx = build(c.a, c.n_max, c.tol)
    rgb = render(args.target, args.res, args.region, cx)
    path = write_ppm(args.out or f"{args.target}.ppm", rgb)
    print(f"wrote {path} ({args.res}x{args.res})")
    return EXIT_OK


def cmd_config(args) -> int:
    sys.stdout.write(load_config(args).to_ini())
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


GROUP_NAMES = ("metric", "singular", "thin", "hoffman", "slit-floor", "products", "map",
               "counterexample", "finite-preimages", "sector-variant", "thin-general", "all")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slitdisk",
        description="Thin Blaschke product composed with the slit-disk map: "
                    "evaluation, verification reports and domain-coloring rasters.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI-style run configuration")

    p = sub.add_parser("eval", parents=[common], help="evaluate a function at one point")
    p.add_argument("function", choices=("blaschke", "singular", "map-g", "map-h", "phi"))
    p.add_argument("--point", required=True, help='"re,im" or "dev:re,im" for 1 - (re + i im)')
    p.add_argument("--t", type=float, default=1.0, help="singular mass (singular only)")
    p.add_argument("--eta", default="1,0", help="atom on the circle (singular only)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run a check group and write reports")
    p.add_argument("group", choices=GROUP_NAMES)
    p.add_argument("--out", help="report directory (default from config)")
    p.add_argument("--seed", type=int, help="override run.seed")
    p.add_argument("--c", type=float, help="ratio for the hoffman group")
    p.add_argument("--theta", type=float, help="slit angle theta1")
    p.add_argument("--m", help="index range lo..hi for slit-floor and products")
    p.add_argument("--no-figures", action="store_true", help="skip PNG figures")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="write a PPM domain coloring")
    p.add_argument("target", choices=("phi1", "phi2", "g", "h", "B", "phi"))
    p.add_argument("--res", type=int, default=256)
    p.add_argument("--region", help='"unit", "near-1", "w1" or "x0,x1,y0,y1"')
    p.add_argument("--out", help="output file (default <target>.ppm)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("config", parents=[common], help="print the resolved configuration")
    p.set_defaults(func=cmd_config)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"slitdisk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"slitdisk: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"slitdisk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
