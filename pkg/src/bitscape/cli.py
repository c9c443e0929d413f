"""Command-line pipeline: problems to census to graphs to SVG files.

One JSON config drives ``run``; the other subcommands expose single stages
behind flags. Exit codes: 0 success, 2 invalid configuration or values,
3 capacity exceeded, 4 I/O or unreadable input data, 5 composition
conflict. The BITSCAPE_OUTPUT_DIR environment variable redirects outputs:
it replaces the config output directory and is prepended to relative
``--out`` paths.

The global seed never feeds a stage directly: each stage derives its own
seed with a fixed offset, so adding a plot request to a config cannot
perturb analysis outputs.
"""

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from .bitspace import DEFAULT_SPACE_CAP, enumerate_space
from .errors import (
    CapacityError,
    CompositionConflictError,
    ConfigError,
    DimensionError,
    DomainError,
    DuplicateRowError,
    EmptySceneError,
    IncompleteTableError,
    TableFormatError,
)
from .lon import EXPORT_FORMATS, build_basin_transition_lon, build_escape_lon, compress_plateaus, export_graph, to_mlon
from .optima import HEX_AXES, distance_stats, find_optima, hexbin, write_optima_csv
from .problems import (
    FitnessLandscape,
    TabulatedLandscape,
    load_table,
    make_nk,
    make_onemax,
    make_sin2dec,
    make_two_trap,
    penalize,
    regularize,
    save_table,
    with_threshold_violation,
)
from .rng import derive_seed
from .stn import ALGORITHMS, build_stn, export_stn, run_ensemble, write_trajectories_csv
from .viz import juxtapose, render_svg, scene_hbm, scene_hexbin, scene_lon, scene_scatter, scene_stn, superimpose

OUTPUT_DIR_ENV = "BITSCAPE_OUTPUT_DIR"

PROBLEMS = ("sin2dec", "onemax", "two_trap", "nk", "table")
LON_KINDS = ("basin_transition", "escape")
PLOT_TYPES = ("hbm", "lon", "stn", "scatter", "hexbin")

STAGE_STN = 1
STAGE_LON_LAYOUT = 2
STAGE_STN_LAYOUT = 3

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAPACITY = 3
EXIT_IO = 4
EXIT_CONFLICT = 5


def _check(value, path: str, kind, low=None, high=None, choices=None):
    if isinstance(value, bool) and kind is not bool:
        raise ConfigError(path, f"expected {kind.__name__}, got {value!r}")
    if kind is float and isinstance(value, int):
        value = float(value)
    if not isinstance(value, kind):
        name = kind.__name__ if isinstance(kind, type) else "value"
        raise ConfigError(path, f"expected {name}, got {value!r}")
    if low is not None and value < low:
        raise ConfigError(path, f"must be >= {low}, got {value}")
    if high is not None and value > high:
        raise ConfigError(path, f"must be <= {high}, got {value}")
    if choices is not None and value not in choices:
        raise ConfigError(path, f"must be one of {tuple(choices)}, got {value!r}")
    return value


def _as_dict(value, path: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(path, f"expected an object, got {value!r}")
    return value


def _no_extra_keys(mapping: dict, path: str, allowed: tuple[str, ...]) -> None:
    for key in mapping:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise ConfigError(where, "unknown key")


def build_landscape(problem: dict, transforms: dict, cap: int, prefix: str = "problem") -> FitnessLandscape:
    """Construct the configured landscape, applying transforms in the
    order: regularization, violation threshold, penalty."""
    _no_extra_keys(problem, prefix, ("name", "n", "k", "seed", "path", "maximize"))
    name = _check(problem.get("name", "sin2dec"), f"{prefix}.name", str, choices=PROBLEMS)
    if name == "table":
        path = problem.get("path")
        if not isinstance(path, str) or not path:
            raise ConfigError(f"{prefix}.path", "table problems need a file path")
        maximize = _check(problem.get("maximize", False), f"{prefix}.maximize", bool)
        landscape = load_table(path, maximize=maximize).landscape()
    else:
        n = _check(problem.get("n", 6), f"{prefix}.n", int, low=1)
        if n > cap:
            raise CapacityError(
                f"problem dimension {n} exceeds enumeration cap {cap}; raise cap to proceed"
            )
        if name == "sin2dec":
            landscape = make_sin2dec(n)
        elif name == "onemax":
            landscape = make_onemax(n)
        elif name == "two_trap":
            landscape = make_two_trap(n)
        else:
            k = _check(problem.get("k", 1), f"{prefix}.k", int, low=0)
            if k >= n:
                raise ConfigError(f"{prefix}.k", f"must be < n = {n}, got {k}")
            seed = _check(problem.get("seed", 0), f"{prefix}.seed", int)
            landscape = make_nk(n, k, seed)

    _no_extra_keys(transforms, "transforms", ("epsilon", "lambda", "tau"))
    if "epsilon" in transforms:
        eps = _check(transforms["epsilon"], "transforms.epsilon", float, low=0.0)
        landscape = regularize(landscape, eps)
    if "tau" in transforms:
        tau = _check(transforms["tau"], "transforms.tau", float)
        landscape = with_threshold_violation(landscape, tau)
    if "lambda" in transforms:
        lam = _check(transforms["lambda"], "transforms.lambda", float, low=0.0)
        if landscape.violation is None:
            raise ConfigError(
                "transforms.lambda",
                "penalty needs a violation function; set transforms.tau or load a table with one",
            )
        landscape = penalize(landscape, lam)
    return landscape


def _validated_lon(lon_cfg: dict) -> dict:
    _no_extra_keys(lon_cfg, "lon", ("kind", "D", "mlon", "compress", "format"))
    out = {
        "kind": _check(lon_cfg.get("kind", "basin_transition"), "lon.kind", str, choices=LON_KINDS),
        "mlon": _check(lon_cfg.get("mlon", False), "lon.mlon", bool),
        "compress": _check(lon_cfg.get("compress", False), "lon.compress", bool),
        "format": _check(lon_cfg.get("format", "graphml"), "lon.format", str, choices=EXPORT_FORMATS),
    }
    if out["kind"] == "escape" or "D" in lon_cfg:
        out["D"] = _check(lon_cfg.get("D", 1), "lon.D", int, low=1)
    return out


def _build_lon(landscape: FitnessLandscape, lon_cfg: dict, cap: int):
    cfg = _validated_lon(lon_cfg)
    report = find_optima(landscape, cap=cap)
    if cfg["kind"] == "escape":
        graph = build_escape_lon(report, cfg["D"])
    else:
        graph = build_basin_transition_lon(report)
    if cfg["mlon"]:
        graph = to_mlon(graph)
    if cfg["compress"]:
        graph = compress_plateaus(graph, report)
    return graph, report


def _validated_stn(stn_cfg: dict) -> dict:
    _no_extra_keys(stn_cfg, "stn", ("algorithms", "runs", "params", "fitness_bucket", "format"))
    algos = stn_cfg.get("algorithms", ["rr_hillclimb"])
    if not isinstance(algos, list) or not algos:
        raise ConfigError("stn.algorithms", f"expected a nonempty list, got {algos!r}")
    for a in algos:
        _check(a, "stn.algorithms", str, choices=ALGORITHMS)
    params = _as_dict(stn_cfg.get("params"), "stn.params")
    _no_extra_keys(params, "stn.params", ALGORITHMS)
    bucket = stn_cfg.get("fitness_bucket")
    if bucket is not None:
        bucket = _check(bucket, "stn.fitness_bucket", float)
        if not bucket > 0:
            raise ConfigError("stn.fitness_bucket", f"must be > 0, got {bucket}")
    return {
        "algorithms": sorted(algos),
        "runs": _check(stn_cfg.get("runs", 5), "stn.runs", int, low=1),
        "params": params,
        "fitness_bucket": bucket,
        "format": _check(stn_cfg.get("format", "graphml"), "stn.format", str, choices=EXPORT_FORMATS),
    }


def _run_stn(landscape: FitnessLandscape, stn_cfg: dict, seed: int):
    cfg = _validated_stn(stn_cfg)
    trajectories = []
    for ai, algo in enumerate(cfg["algorithms"]):
        trajectories.extend(
            run_ensemble(
                landscape,
                algo,
                _as_dict(cfg["params"].get(algo), f"stn.params.{algo}"),
                runs=cfg["runs"],
                seed=derive_seed(seed, STAGE_STN, ai),
            )
        )
    return trajectories, build_stn(trajectories, fitness_bucket=cfg["fitness_bucket"])


def _plot_scene(plot_type: str, config: dict, landscape: FitnessLandscape, cap: int, seed: int):
    plots = _as_dict(config.get("plots"), "plots")
    if plot_type == "hbm":
        color = _check(plots.get("color", "fitness"), "plots.color", str, choices=("fitness", "feasibility"))
        report = find_optima(landscape, cap=cap) if plots.get("highlight_optima", True) else None
        return scene_hbm(landscape, report=report, color_feature=color, cap=cap)
    if plot_type == "lon":
        if "lon" not in config:
            raise ConfigError("plots.types", "lon plot requested but config has no lon section")
        graph, _ = _build_lon(landscape, _as_dict(config["lon"], "lon"), cap)
        return scene_lon(graph, layout_seed=derive_seed(seed, STAGE_LON_LAYOUT))
    if plot_type == "stn":
        if "stn" not in config:
            raise ConfigError("plots.types", "stn plot requested but config has no stn section")
        _, graph = _run_stn(landscape, _as_dict(config["stn"], "stn"), seed)
        return scene_stn(graph, layout_seed=derive_seed(seed, STAGE_STN_LAYOUT))
    axis = _check(plots.get("axis", "avg_dist_lo"), "plots.axis", str, choices=HEX_AXES)
    records = distance_stats(find_optima(landscape, cap=cap))
    if plot_type == "scatter":
        return scene_scatter(records, axis)
    bin_width = _check(plots.get("bin_width", 1.0), "plots.bin_width", float)
    if not bin_width > 0:
        raise ConfigError("plots.bin_width", f"must be > 0, got {bin_width}")
    return scene_hexbin(hexbin(records, axis, bin_width))


def write_manifest(out_dir: Path) -> Path:
    """List every file under out_dir (except the manifest itself) with its
    sha-256, one `path<TAB>digest` line per file, sorted by path."""
    lines = []
    for p in sorted(out_dir.rglob("*")):
        if p.is_file() and p.name != "manifest.tsv":
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
            lines.append(f"{p.relative_to(out_dir).as_posix()}\t{digest}")
    manifest = out_dir / "manifest.tsv"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


TOP_KEYS = ("problem", "transforms", "optima", "lon", "stn", "plots", "output_dir", "cap", "seed")
PLOTS_KEYS = ("types", "compose", "color", "highlight_optima", "axis", "bin_width", "width", "height")


def run_config(config: dict) -> Path:
    """Execute a validated config end to end; returns the manifest path."""
    _no_extra_keys(config, "", TOP_KEYS)
    cap = _check(config.get("cap", DEFAULT_SPACE_CAP), "cap", int, low=1)
    seed = _check(config.get("seed", 0), "seed", int)
    out_dir = Path(os.environ.get(OUTPUT_DIR_ENV) or _check(config.get("output_dir", "out"), "output_dir", str))
    landscape = build_landscape(
        _as_dict(config.get("problem"), "problem"),
        _as_dict(config.get("transforms"), "transforms"),
        cap,
    )
    plots = _as_dict(config.get("plots"), "plots")
    _no_extra_keys(plots, "plots", PLOTS_KEYS)
    plot_types = plots.get("types", [])
    if not isinstance(plot_types, list):
        raise ConfigError("plots.types", f"expected a list, got {plot_types!r}")
    for t in plot_types:
        _check(t, "plots.types", str, choices=PLOT_TYPES)
    directives = plots.get("compose", [])
    if not isinstance(directives, list):
        raise ConfigError("plots.compose", f"expected a list, got {directives!r}")
    for i, d in enumerate(directives):
        d = _as_dict(d, f"plots.compose[{i}]")
        _no_extra_keys(d, f"plots.compose[{i}]", ("op", "inputs", "orient"))
        _check(d.get("op"), f"plots.compose[{i}].op", str, choices=("juxtapose", "superimpose"))
        inputs = d.get("inputs")
        if not isinstance(inputs, list) or len(inputs) != 2:
            raise ConfigError(f"plots.compose[{i}].inputs", "expected a list of two plot types")
        for t in inputs:
            _check(t, f"plots.compose[{i}].inputs", str, choices=PLOT_TYPES)
            if t in ("lon", "stn") and t not in config:
                raise ConfigError(
                    f"plots.compose[{i}].inputs", f"{t} input requested but config has no {t} section"
                )
    width = _check(plots.get("width", 840.0), "plots.width", float)
    height = _check(plots.get("height", 600.0), "plots.height", float)
    if width <= 0 or height <= 0:
        raise ConfigError("plots.width", f"dimensions must be positive, got {width} x {height}")

    # validate every section up front so a bad stage fails before any file lands
    want_optima = _check(config.get("optima", False), "optima", bool)
    lon_cfg = _validated_lon(_as_dict(config["lon"], "lon")) if "lon" in config else None
    stn_cfg = _validated_stn(_as_dict(config["stn"], "stn")) if "stn" in config else None

    out_dir.mkdir(parents=True, exist_ok=True)

    if want_optima:
        write_optima_csv(find_optima(landscape, cap=cap), out_dir / "optima.csv")
    if lon_cfg is not None:
        graph, _ = _build_lon(landscape, lon_cfg, cap)
        export_graph(graph, out_dir / f"lon.{lon_cfg['format']}", lon_cfg["format"])
    if stn_cfg is not None:
        trajectories, graph = _run_stn(landscape, stn_cfg, seed)
        write_trajectories_csv(trajectories, out_dir / "trajectories.csv")
        export_stn(graph, out_dir / f"stn.{stn_cfg['format']}", stn_cfg["format"])
    for t in plot_types:
        scene = _plot_scene(t, config, landscape, cap, seed)
        render_svg(scene, out_dir / f"{t}.svg", width, height)
    for i, d in enumerate(directives):
        op = d["op"]
        scenes = []
        for t in d["inputs"]:
            fresh = build_landscape(
                _as_dict(config.get("problem"), "problem"),
                _as_dict(config.get("transforms"), "transforms"),
                cap,
            )
            scenes.append(_plot_scene(t, config, fresh, cap, seed))
        if op == "superimpose":
            combined = superimpose(scenes[0], scenes[1])
        else:
            orient = _check(d.get("orient", "horizontal"), f"plots.compose[{i}].orient", str,
                            choices=("horizontal", "vertical"))
            combined = juxtapose(scenes[0], scenes[1], orient)
        name = f"compose_{i + 1}_{op}_{'_'.join(d['inputs'])}.svg"
        render_svg(combined, out_dir / name, width, height)
    return write_manifest(out_dir)


def _out_path(raw: str) -> Path:
    override = os.environ.get(OUTPUT_DIR_ENV)
    path = Path(raw)
    if override and not path.is_absolute():
        path = Path(override) / path
    if path.parent != Path("."):
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _args_problem(args) -> dict:
    problem = {"name": args.problem, "n": args.n}
    if args.problem == "nk":
        problem.update(k=args.k, seed=args.problem_seed)
    if args.problem == "table":
        if not args.table:
            raise ConfigError("table", "problem 'table' needs --table PATH")
        problem.update(path=args.table, maximize=args.maximize)
        problem.pop("n")
    return problem


def _args_transforms(args) -> dict:
    transforms = {}
    if args.epsilon is not None:
        transforms["epsilon"] = args.epsilon
    if args.tau is not None:
        transforms["tau"] = args.tau
    if args.lam is not None:
        transforms["lambda"] = args.lam
    return transforms


def _args_landscape(args) -> FitnessLandscape:
    return build_landscape(_args_problem(args), _args_transforms(args), args.cap)


def _config_from_args(args) -> dict:
    """Synthesize the config sections that flag-driven subcommands need."""
    config: dict = {"problem": _args_problem(args), "transforms": _args_transforms(args)}
    plots: dict = {}
    if getattr(args, "color", None):
        plots["color"] = args.color
    if hasattr(args, "highlight_optima"):
        plots["highlight_optima"] = args.highlight_optima
    if getattr(args, "axis", None):
        plots["axis"] = args.axis
    if getattr(args, "bin_width", None) is not None:
        plots["bin_width"] = args.bin_width
    config["plots"] = plots
    if getattr(args, "edges", None):
        config["lon"] = {"kind": args.edges}
        if args.D is not None:
            config["lon"]["D"] = args.D
        config["lon"]["mlon"] = getattr(args, "mlon", False)
        config["lon"]["compress"] = getattr(args, "compress", False)
    if getattr(args, "algorithms", None):
        config["stn"] = {
            "algorithms": [a.strip() for a in args.algorithms.split(",") if a.strip()],
            "runs": args.runs,
        }
        if getattr(args, "params", None):
            try:
                config["stn"]["params"] = json.loads(args.params)
            except json.JSONDecodeError as e:
                raise ConfigError("params", f"not valid JSON: {e}") from None
        if getattr(args, "fitness_bucket", None) is not None:
            config["stn"]["fitness_bucket"] = args.fitness_bucket
    return config


def cmd_run(args) -> int:
    config_path = Path(args.config)
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: cannot read config: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        config = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(str(config_path), f"not valid JSON: {e}") from None
    if not isinstance(config, dict):
        raise ConfigError(str(config_path), "config must be a JSON object")
    manifest = run_config(config)
    print(manifest)
    return EXIT_OK


def cmd_optima(args) -> int:
    landscape = _args_landscape(args)
    report = find_optima(landscape, cap=args.cap)
    out = _out_path(args.out)
    write_optima_csv(report, out)
    print(out)
    return EXIT_OK


def cmd_lon(args) -> int:
    landscape = _args_landscape(args)
    lon_cfg = {"kind": args.edges, "mlon": args.mlon, "compress": args.compress}
    if args.D is not None:
        lon_cfg["D"] = args.D
    graph, _ = _build_lon(landscape, lon_cfg, args.cap)
    out = _out_path(args.out or f"lon.{args.format}")
    export_graph(graph, out, args.format)
    print(out)
    return EXIT_OK


def cmd_stn(args) -> int:
    landscape = _args_landscape(args)
    config = _config_from_args(args)
    trajectories, graph = _run_stn(landscape, config["stn"], args.seed)
    if args.csv:
        write_trajectories_csv(trajectories, _out_path(args.csv))
    out = _out_path(args.out or f"stn.{args.format}")
    export_stn(graph, out, args.format)
    print(out)
    return EXIT_OK


def cmd_plot(args) -> int:
    landscape = _args_landscape(args)
    config = _config_from_args(args)
    scene = _plot_scene(args.type, config, landscape, args.cap, args.seed)
    out = _out_path(args.out or f"{args.type}.svg")
    render_svg(scene, out, args.width, args.height)
    print(out)
    return EXIT_OK


def cmd_compose(args) -> int:
    config = _config_from_args(args)
    scenes = []
    for t in args.inputs:
        landscape = _args_landscape(args)
        scenes.append(_plot_scene(t, config, landscape, args.cap, args.seed))
    if args.op == "superimpose":
        combined = superimpose(scenes[0], scenes[1])
    else:
        combined = juxtapose(scenes[0], scenes[1], args.orient)
    out = _out_path(args.out or f"{args.op}_{'_'.join(args.inputs)}.svg")
    render_svg(combined, out, args.width, args.height)
    print(out)
    return EXIT_OK


def cmd_export(args) -> int:
    landscape = _args_landscape(args)
    fitness = []
    violation = [] if landscape.violation is not None else None
    for b in enumerate_space(landscape.n, cap=args.cap):
        fitness.append(landscape.f(b))
        if violation is not None:
            violation.append(landscape.violation(b))
    table = TabulatedLandscape(
        n=landscape.n,
        fitness=tuple(fitness),
        violation=tuple(violation) if violation is not None else None,
        name=landscape.name,
    )
    out = _out_path(args.out)
    save_table(table, out)
    print(out)
    return EXIT_OK


def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", choices=PROBLEMS, default="sin2dec")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--k", type=int, default=1, help="NK epistasis degree")
    p.add_argument("--problem-seed", type=int, default=0, help="NK instance seed")
    p.add_argument("--table", help="fitness table CSV for --problem table")
    p.add_argument("--maximize", action="store_true", help="negate table fitness on load")
    p.add_argument("--epsilon", type=float, help="regularization strength")
    p.add_argument("--tau", type=float, help="violation threshold on fitness")
    p.add_argument("--lam", "--lambda", dest="lam", type=float, help="violation penalty weight")
    p.add_argument("--cap", type=int, default=DEFAULT_SPACE_CAP)


def _add_lon_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--edges", choices=LON_KINDS, default="basin_transition")
    p.add_argument("--D", type=int, default=None, help="escape radius in bit flips")
    p.add_argument("--mlon", action="store_true", help="keep only non-deteriorating edges")
    p.add_argument("--compress", action="store_true", help="merge equal-fitness plateaus")


def _add_stn_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algorithms", default="rr_hillclimb", help="comma-separated runner names")
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--params", help="JSON object: per-algorithm runner parameters")
    p.add_argument("--fitness-bucket", type=float, default=None)


def _add_render_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--width", type=float, default=840.0)
    p.add_argument("--height", type=float, default=600.0)
    p.add_argument("--seed", type=int, default=0, help="global seed; stages derive their own")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitscape",
        description="Analyze pseudo-Boolean landscapes and render composable SVG views.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a JSON config end to end")
    p.add_argument("config")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("optima", help="exhaustive optima census to CSV")
    _add_problem_flags(p)
    p.add_argument("--out", default="optima.csv")
    p.set_defaults(func=cmd_optima)

    p = sub.add_parser("lon", help="build and export a local optima network")
    _add_problem_flags(p)
    _add_lon_flags(p)
    p.add_argument("--format", choices=EXPORT_FORMATS, default="graphml")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lon)

    p = sub.add_parser("stn", help="run optimizers and export the trajectory network")
    _add_problem_flags(p)
    _add_stn_flags(p)
    p.add_argument("--seed", type=int, default=0, help="global seed; stages derive their own")
    p.add_argument("--format", choices=EXPORT_FORMATS, default="graphml")
    p.add_argument("--csv", help="also write the trajectories CSV here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stn)

    p = sub.add_parser("plot", help="render one scene to SVG")
    p.add_argument("type", choices=PLOT_TYPES)
    _add_problem_flags(p)
    _add_lon_flags(p)
    _add_stn_flags(p)
    _add_render_flags(p)
    p.add_argument("--color", choices=("fitness", "feasibility"), default="fitness")
    p.add_argument("--highlight-optima", action="store_true")
    p.add_argument("--axis", choices=HEX_AXES, default="avg_dist_lo")
    p.add_argument("--bin-width", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("compose", help="juxtapose or superimpose two plots")
    p.add_argument("op", choices=("juxtapose", "superimpose"))
    p.add_argument("inputs", nargs=2, metavar="PLOT", choices=PLOT_TYPES)
    _add_problem_flags(p)
    _add_lon_flags(p)
    _add_stn_flags(p)
    _add_render_flags(p)
    p.add_argument("--color", choices=("fitness", "feasibility"), default="fitness")
    p.add_argument("--highlight-optima", action="store_true")
    p.add_argument("--axis", choices=HEX_AXES, default="avg_dist_lo")
    p.add_argument("--bin-width", type=float, default=1.0)
    p.add_argument("--orient", choices=("horizontal", "vertical"), default="horizontal")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("export", help="write the complete fitness table CSV")
    _add_problem_flags(p)
    p.add_argument("--out", default="table.csv")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: invalid config: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, DimensionError, EmptySceneError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except CompositionConflictError as e:
        print(f"composition conflict:\n{e}", file=sys.stderr)
        return EXIT_CONFLICT
    except (TableFormatError, IncompleteTableError, DuplicateRowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
