#!/usr/bin/env python3
"""Render every view of the sin(2 Dec(b)) toy landscape on B^6.

Writes the census CSV, both LON variants, an optimizer trajectory network,
the hinged map, and the LON-over-map overlay into one directory.
"""

import argparse
from pathlib import Path

from bitscape.lon import build_basin_transition_lon, build_escape_lon, export_graph
from bitscape.optima import distance_stats, find_optima, hexbin, write_optima_csv
from bitscape.problems import make_sin2dec
from bitscape.stn import build_stn, export_stn, run_ensemble
from bitscape.viz import (
    render_svg,
    scene_hbm,
    scene_hexbin,
    scene_lon,
    scene_scatter,
    scene_stn,
    superimpose,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="gallery", help="output directory")
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    landscape = make_sin2dec(args.n)
    report = find_optima(landscape)
    print(f"{landscape.name}: {len(report.optima)} local optima, "
          f"{len(report.global_optima)} global")
    for o in report.optima:
        marker = " *" if o.is_global else ""
        print(f"  {o.bits}  f={o.fitness:+.6f}  basin={o.basin_size}{marker}")

    write_optima_csv(report, out / "optima.csv")

    basin_lon = build_basin_transition_lon(report)
    export_graph(basin_lon, out / "lon_basin.graphml", "graphml")
    export_graph(build_escape_lon(report, 2), out / "lon_escape_d2.graphml", "graphml")

    runs = run_ensemble(landscape, "rr_hillclimb", {"restarts": 2}, runs=3, seed=args.seed)
    runs += run_ensemble(landscape, "simulated_annealing", {"budget": 150}, runs=3, seed=args.seed + 1)
    stn = build_stn(runs)
    export_stn(stn, out / "stn.graphml", "graphml")

    render_svg(scene_hbm(landscape, report=report), out / "map.svg")
    render_svg(scene_lon(basin_lon, layout_seed=args.seed), out / "lon.svg")
    render_svg(scene_stn(stn, layout_seed=args.seed), out / "stn.svg")
    records = distance_stats(report)
    render_svg(scene_scatter(records, "avg_dist_lo"), out / "scatter.svg")
    render_svg(scene_hexbin(hexbin(records, "avg_dist_lo", 1.0)), out / "hexbin.svg")
    overlay = superimpose(
        scene_hbm(landscape, report=report),
        scene_lon(basin_lon, layout_seed=args.seed),
    )
    render_svg(overlay, out / "lon_over_map.svg")
    print(f"wrote {len(list(out.iterdir()))} files to {out}/")


if __name__ == "__main__":
    main()
