#!/usr/bin/env python3
"""Survey how NK ruggedness grows with k.

For each k, enumerate several seeded instances, count local optima, and
summarize basin concentration and the distance structure around the global
optimum. Optionally renders the distance/fitness hexbin of the roughest
instance per k.
"""

import argparse
import statistics
from pathlib import Path

from bitscape.optima import distance_stats, find_optima, hexbin
from bitscape.problems import make_nk
from bitscape.viz import render_svg, scene_hexbin


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10)
    parser.add_argument("--k-max", type=int, default=4)
    parser.add_argument("--instances", type=int, default=10)
    parser.add_argument("--plots", action="store_true", help="render one hexbin per k")
    parser.add_argument("--out", default="nk_survey")
    args = parser.parse_args()

    header = f"{'k':>3} {'optima (mean)':>14} {'min':>5} {'max':>5} {'largest basin %':>16} {'avg dist to glob':>17}"
    print(header)
    print("-" * len(header))
    for k in range(args.k_max + 1):
        counts = []
        top_basin_share = []
        dist_to_global = []
        roughest = None
        for seed in range(args.instances):
            report = find_optima(make_nk(args.n, k, seed))
            counts.append(len(report.optima))
            top = max(o.basin_size for o in report.optima)
            top_basin_share.append(100.0 * top / (1 << args.n))
            records = distance_stats(report)
            dist_to_global.extend(r.dist_to_global for r in records if r.dist_to_global > 0)
            if roughest is None or len(report.optima) > roughest[0]:
                roughest = (len(report.optima), seed, records)
        mean_dist = statistics.fmean(dist_to_global) if dist_to_global else 0.0
        print(
            f"{k:>3} {statistics.fmean(counts):>14.1f} {min(counts):>5} {max(counts):>5} "
            f"{statistics.fmean(top_basin_share):>16.1f} {mean_dist:>17.2f}"
        )
        if args.plots and roughest is not None:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            _, seed, records = roughest
            grid = hexbin(records, "dist_to_global", 1.0)
            render_svg(scene_hexbin(grid), out / f"hexbin_k{k}_seed{seed}.svg")


if __name__ == "__main__":
    main()
