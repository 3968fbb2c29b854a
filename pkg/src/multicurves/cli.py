"""Command-line entry point for reproducible experiments.

Subcommands wire enumeration, limit laws and statistics together:

  enumerate     raw orbit ball as CSV/JSON
  count-growth  |ball(L)| and |ball(L)|/L^2 over a cutoff grid
  length-dist   simplex + radial ECDFs with KS distances to the limit laws
  ratio-dist    ratio marginals + gap ECDF with KS distance to the ratio law
  ratio-law     the quadrature ratio law itself as a CDF table
  volume        lattice scaling-limit estimate of a Thurston volume
  density       pants-decomposition simplex density values
  verify        run the acceptance gates (exit 0 iff all pass)
  plot          render a CSV produced by the commands above as SVG

Every output embeds its configuration header; identical configurations
yield byte-identical files.  The partition count is an execution detail
(results are partition-independent by construction) and is deliberately
kept out of the headers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _svg
from .core import SurfaceType, TORUS11
from .kernel import BACKEND
from .measures import (
    pants_density,
    radial_law,
    ratio_distribution,
    thurston_volume_lattice,
)
from .orbits import OrbitQuery, count_growth, enumerate_orbit
from .stats import ks_statistic, record_lengths, record_ratios
from .torus import parse_functional

SCHEMA = "multicurves-csv v1"
ENV_OUT = "MULTICURVES_OUT"


def _flt(x) -> str:
    return repr(float(x))


def _frac(x: Fraction) -> str:
    return str(x)


def _config_lines(cmd: str, pairs) -> str:
    body = " ".join(f"{k}={v}" for k, v in pairs)
    return f"# {SCHEMA}\n# config {cmd} {body}\n"


def _parse_cutoff(text: str) -> Fraction:
    value = Fraction(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("cutoff must be positive")
    return value


def _out_dir(args) -> Path:
    base = args.out or os.environ.get(ENV_OUT) or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# report builders (shared with the acceptance suite)
# ---------------------------------------------------------------------------


def cdf_table_csv(header: str, grid, *columns) -> str:
    names, arrays = zip(*columns)
    lines = [header + "t," + ",".join(names)]
    for i, t in enumerate(grid):
        lines.append(_flt(t) + "," + ",".join(_flt(a[i]) for a in arrays))
    return "\n".join(lines) + "\n"


def length_dist_report(phi_spec: str, cutoff: Fraction, bins: int = 50,
                       grid_points: int = 513, partitions: int = 1,
                       seed: int = 0) -> dict:
    """File contents of the length-distribution experiment, keyed by name."""
    phi = parse_functional(phi_spec)
    stream = enumerate_orbit(OrbitQuery(phi, cutoff), partitions=partitions)
    rec = record_lengths(stream, bins=bins)
    radial = radial_law(TORUS11)
    # the pair law is uniform: the fraction CDF of the limit is the identity
    ks_fraction = ks_statistic(rec.fractions, lambda t: np.clip(t, 0.0, 1.0))
    ks_radius = ks_statistic(rec.radii, radial.cdf)

    config = [("phi", phi_spec), ("L", _frac(cutoff)), ("bins", str(bins)),
              ("grid", str(grid_points)), ("seed", str(seed))]
    grid = np.linspace(0.0, 1.0, grid_points)
    files = {}
    files["fraction-cdf.csv"] = cdf_table_csv(
        _config_lines("length-dist", config), grid,
        ("empirical", rec.fractions.evaluate(grid)),
        ("uniform", np.clip(grid, 0.0, 1.0)),
    )
    files["radius-cdf.csv"] = cdf_table_csv(
        _config_lines("length-dist", config), grid,
        ("empirical", rec.radii.evaluate(grid)),
        ("radial", radial.cdf(grid)),
    )
    hist_lines = [_config_lines("length-dist", config) + "a1,a2,count"]
    for row in rec.directions.rows():
        hist_lines.append(f"{_flt(row[0])},{_flt(row[1])},{row[2]}")
    files["directions.csv"] = "\n".join(hist_lines) + "\n"
    files["summary.json"] = json.dumps(
        {
            "schema": SCHEMA,
            "cmd": "length-dist",
            "config": dict(config),
            "count": rec.fractions.count,
            "ks_fraction_vs_uniform": ks_fraction,
            "ks_radius_vs_radial": ks_radius,
        },
        sort_keys=True,
        indent=2,
    ) + "\n"
    return files


def ratio_dist_report(psi_spec: str, phi_spec: str, cutoff: Fraction,
                      resolution: int = 100_000, grid_points: int = 513,
                      partitions: int = 1, seed: int = 0) -> dict:
    """File contents of the ratio-distribution experiment, keyed by name."""
    psi = parse_functional(psi_spec)
    phi = parse_functional(phi_spec)
    stream = enumerate_orbit(OrbitQuery(phi, cutoff), partitions=partitions)
    (r1, r2), gaps = record_ratios(stream, psi)
    law = ratio_distribution(psi, phi, resolution)
    ks_model = ks_statistic(r1, law.cdf)
    mean_gap = float(gaps.values.mean())

    config = [("psi", psi_spec), ("phi", phi_spec), ("L", _frac(cutoff)),
              ("resolution", str(resolution)), ("grid", str(grid_points)),
              ("seed", str(seed))]
    lo, hi = law.support
    pad = max((hi - lo) * 0.05, 1e-9)
    grid = np.linspace(lo - pad, hi + pad, grid_points)
    files = {}
    files["ratio-cdf.csv"] = cdf_table_csv(
        _config_lines("ratio-dist", config), grid,
        ("marginal1", r1.evaluate(grid)),
        ("marginal2", r2.evaluate(grid)),
        ("law", law.cdf(grid)),
    )
    gap_hi = float(gaps.values.max()) if gaps.count else 1.0
    gap_grid = np.linspace(0.0, max(gap_hi, 1e-12), grid_points)
    files["gap-cdf.csv"] = cdf_table_csv(
        _config_lines("ratio-dist", config), gap_grid,
        ("empirical", gaps.evaluate(gap_grid)),
    )
    files["summary.json"] = json.dumps(
        {
            "schema": SCHEMA,
            "cmd": "ratio-dist",
            "config": dict(config),
            "count": r1.count,
            "ks_marginal1_vs_law": ks_model,
            "mean_gap": mean_gap,
            "support": [lo, hi],
        },
        sort_keys=True,
        indent=2,
    ) + "\n"
    return files


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_enumerate(args) -> int:
    phi = parse_functional(args.phi)
    stream = enumerate_orbit(OrbitQuery(phi, args.L), partitions=args.partitions)
    config = [("phi", args.phi), ("L", _frac(args.L))]
    rows = []
    scaled_exact = phi.kind == "intersection"
    for gamma in stream.iter_multicurves():
        vals = phi.component_values(gamma)
        if scaled_exact:
            cells = [_frac(v) for v in vals] + [_frac(sum(vals))]
        else:
            fv = [float(v) for v in vals]
            cells = [_flt(v) for v in fv] + [_flt(sum(fv))]
        rows.append((gamma.serialize(), cells))
    if args.emit == "json":
        payload = {
            "schema": SCHEMA,
            "cmd": "enumerate",
            "config": dict(config),
            "rows": [
                {"multicurve": s, "lengths": c[:-1], "total": c[-1]}
                for s, c in rows
            ],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        k = stream.query.basepoint.k
        names = ",".join(f"phi{i + 1}" for i in range(k))
        lines = [_config_lines("enumerate", config) + f"multicurve,{names},total"]
        for s, cells in rows:
            lines.append(f"\"{s}\"," + ",".join(cells))
        text = "\n".join(lines) + "\n"
    _emit(args, text, f"enumerate.{args.emit}")
    return 0


def _cmd_count_growth(args) -> int:
    phi = parse_functional(args.phi)
    grid = [Fraction(v) for v in args.L_grid.split(",")]
    rows = count_growth(phi, grid, partitions=args.partitions)
    config = [("phi", args.phi), ("L-grid", args.L_grid)]
    lines = [_config_lines("count-growth", config) + "L,count,normalized"]
    for L, n, norm in rows:
        lines.append(f"{_frac(L)},{n},{_flt(norm)}")
    _emit(args, "\n".join(lines) + "\n", "count-growth.csv")
    return 0


def _cmd_length_dist(args) -> int:
    files = length_dist_report(args.phi, args.L, bins=args.bins,
                               partitions=args.partitions, seed=args.seed)
    out = _out_dir(args)
    for name, text in files.items():
        (out / f"length-dist-{name}").write_text(text)
    summary = json.loads(files["summary.json"])
    print(f"count={summary['count']} "
          f"ks_fraction={summary['ks_fraction_vs_uniform']:.6f} "
          f"ks_radius={summary['ks_radius_vs_radial']:.6f}")
    return 0


def _cmd_ratio_dist(args) -> int:
    files = ratio_dist_report(args.psi, args.phi, args.L,
                              resolution=args.resolution,
                              partitions=args.partitions, seed=args.seed)
    out = _out_dir(args)
    for name, text in files.items():
        (out / f"ratio-dist-{name}").write_text(text)
    summary = json.loads(files["summary.json"])
    print(f"count={summary['count']} "
          f"ks_marginal={summary['ks_marginal1_vs_law']:.6f} "
          f"mean_gap={summary['mean_gap']:.6f}")
    return 0


def _cmd_ratio_law(args) -> int:
    psi = parse_functional(args.psi)
    phi = parse_functional(args.phi)
    law = ratio_distribution(psi, phi, args.resolution)
    grid, cdf = law.table(args.grid)
    config = [("psi", args.psi), ("phi", args.phi),
              ("resolution", str(args.resolution)), ("grid", str(args.grid))]
    text = cdf_table_csv(_config_lines("ratio-law", config), grid, ("cdf", cdf))
    _emit(args, text, "ratio-law.csv")
    return 0


def _cmd_volume(args) -> int:
    phi = parse_functional(args.phi)
    value = thurston_volume_lattice(phi, args.L)
    config = [("phi", args.phi), ("L", str(args.L))]
    text = _config_lines("volume", config) + "L,estimate\n" \
        + f"{args.L},{_flt(value)}\n"
    if args.out:
        Path(args.out).write_text(text)
    print(_flt(value))
    return 0


def _cmd_density(args) -> int:
    g, r = (int(v) for v in args.pants.split(","))
    surface = SurfaceType(g, r)
    x = tuple(float(v) for v in args.at.split(","))
    value = pants_density(surface, x)
    config = [("pants", args.pants), ("at", args.at)]
    names = ",".join(f"x{i + 1}" for i in range(len(x)))
    text = _config_lines("density", config) + f"{names},density\n" \
        + ",".join(_flt(v) for v in x) + f",{_flt(value)}\n"
    if args.out:
        Path(args.out).write_text(text)
    print(_flt(value))
    return 0


def _cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all()
    failed = [r for r in results if not r.passed]
    for r in results:
        print(r.line())
    print(f"kernel backend: {BACKEND}")
    return 1 if failed else 0


def _read_csv(path: Path):
    header = {}
    rows = []
    columns = None
    for line in path.read_text().splitlines():
        if line.startswith("# config "):
            body = line[len("# config "):].split()
            header["cmd"] = body[0]
            for pair in body[1:]:
                k, _, v = pair.partition("=")
                header[k] = v
            continue
        if line.startswith("#") or not line.strip():
            continue
        if columns is None:
            columns = line.split(",")
            continue
        rows.append(line.split(","))
    return header, columns, rows


def _cmd_plot(args) -> int:
    path = Path(args.input)
    header, columns, rows = _read_csv(path)
    if columns is None or not rows:
        print("no data rows found", file=sys.stderr)
        return 2
    title = f"{header.get('cmd', 'multicurves')}"
    if columns[0] == "t":
        grid = [float(r[0]) for r in rows]
        series = []
        for idx in range(1, len(columns)):
            ys = [float(r[idx]) for r in rows]
            series.append((grid, ys, columns[idx]))
        svg = _svg.cdf_chart(series, title)
    elif columns[-1] == "count":
        agg = {}
        for r in rows:
            agg[float(r[0])] = agg.get(float(r[0]), 0) + int(r[-1])
        lefts = sorted(agg)
        width = min(
            (b - a for a, b in zip(lefts, lefts[1:])), default=1.0
        )
        heights = [agg[v] for v in lefts]
        svg = _svg.histogram_chart(lefts, [width] * len(lefts), heights, title)
    else:
        print(f"cannot plot schema with columns {columns}", file=sys.stderr)
        return 2
    Path(args.output).write_text(svg)
    return 0


def _emit(args, text: str, default_name: str):
    if args.out == "-" or (args.out is None and os.environ.get(ENV_OUT) is None):
        sys.stdout.write(text)
        return
    if args.out is None or Path(args.out).is_dir() or args.out.endswith(os.sep):
        out = _out_dir(args) / default_name
    else:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multicurves",
        description="Orbit enumeration and limit laws on the once-holed torus.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, partitions=True, seed=False):
        p.add_argument("--out", default=None,
                       help=f"output path (default: stdout or ${ENV_OUT})")
        if partitions:
            p.add_argument("--partitions", type=int, default=1,
                           help="data-parallel enumeration ranges")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("enumerate", help="raw orbit ball below a cutoff")
    p.add_argument("--phi", required=True, help="functional spec, e.g. i:a+b or flat")
    p.add_argument("--L", required=True, type=_parse_cutoff, help="cutoff (rational)")
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("count-growth", help="orbit ball counts over a cutoff grid")
    p.add_argument("--phi", required=True)
    p.add_argument("--L-grid", required=True, dest="L_grid",
                   help="comma separated ascending cutoffs")
    common(p)
    p.set_defaults(fn=_cmd_count_growth)

    p = sub.add_parser("length-dist", help="simplex and radial statistics")
    p.add_argument("--phi", required=True)
    p.add_argument("--L", required=True, type=_parse_cutoff)
    p.add_argument("--bins", type=int, default=50)
    common(p, seed=True)
    p.set_defaults(fn=_cmd_length_dist)

    p = sub.add_parser("ratio-dist", help="component ratio statistics")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--L", required=True, type=_parse_cutoff)
    p.add_argument("--resolution", type=int, default=100_000)
    common(p, seed=True)
    p.set_defaults(fn=_cmd_ratio_dist)

    p = sub.add_parser("ratio-law", help="quadrature ratio law CDF table")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--resolution", type=int, default=100_000)
    p.add_argument("--grid", type=int, default=513)
    common(p, partitions=False)
    p.set_defaults(fn=_cmd_ratio_law)

    p = sub.add_parser("volume", help="Thurston volume lattice estimate")
    p.add_argument("--phi", required=True)
    p.add_argument("--L", required=True, type=int)
    common(p, partitions=False)
    p.set_defaults(fn=_cmd_volume)

    p = sub.add_parser("density", help="pants simplex density values")
    p.add_argument("--pants", required=True, help="genus,boundary e.g. 1,2")
    p.add_argument("--at", required=True, help="simplex point x1,x2,...")
    common(p, partitions=False)
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("verify", help="run the acceptance gates")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("plot", help="render a produced CSV as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(fn=_cmd_plot)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
