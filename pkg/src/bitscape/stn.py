"""Seeded stochastic optimizers and search trajectory networks.

Runners record the sequence of accepted states only (candidates that were
evaluated and rejected never appear), and every runner is a pure function
of (algorithm, params, seed) through the portable generator in
:mod:`bitscape.rng`, so trajectories are bit-identical across platforms.

Fitness is minimized throughout.
"""

import csv
import itertools
import math
from dataclasses import dataclass, field

from .bitspace import Bitstring
from .errors import ConfigError, DimensionError, DomainError
from .optima import hill_climb
from .problems import FitnessLandscape
from .rng import Xorshift64Star, derive_seed

ALGORITHMS = ("rr_hillclimb", "simulated_annealing", "genetic")

ROLE_START = "start"
ROLE_END = "end"
ROLE_BEST = "best"
ROLE_SHARED = "shared"


@dataclass(frozen=True)
class Trajectory:
    """Accepted-state sequence of one optimizer run."""

    algorithm: str
    run: int
    steps: tuple[tuple[Bitstring, float], ...]
    seed: int | None = None

    def __post_init__(self):
        if not self.steps:
            raise DomainError("trajectory must contain at least one state")
        for (a, _), (b, _) in zip(self.steps, self.steps[1:]):
            if a == b:
                raise DomainError("consecutive trajectory states must differ")

    @property
    def n(self) -> int:
        return self.steps[0][0].n

    @property
    def best_fitness(self) -> float:
        return min(f for _, f in self.steps)


class _StepRecorder:
    """Collects states, silently dropping consecutive repeats."""

    def __init__(self):
        self.steps: list[tuple[Bitstring, float]] = []

    def add(self, b: Bitstring, fitness: float) -> None:
        if self.steps and self.steps[-1][0] == b:
            return
        self.steps.append((b, fitness))


def _random_bits(rng: Xorshift64Star, n: int) -> Bitstring:
    value = 0
    remaining = n
    while remaining > 0:
        chunk = min(remaining, 48)
        value = (value << chunk) | rng.randrange(1 << chunk)
        remaining -= chunk
    return Bitstring.from_value(value, n)


def _require(params: dict, field: str, default, kind, low=None, high=None):
    value = params.get(field, default)
    if isinstance(value, bool) or not isinstance(value, kind):
        raise ConfigError(f"params.{field}", f"expected {kind.__name__}, got {value!r}")
    if low is not None and value < low:
        raise ConfigError(f"params.{field}", f"must be >= {low}, got {value}")
    if high is not None and value > high:
        raise ConfigError(f"params.{field}", f"must be <= {high}, got {value}")
    return value


def _check_unknown(params: dict, allowed: tuple[str, ...]) -> None:
    for key in params:
        if key not in allowed:
            raise ConfigError(f"params.{key}", "unknown parameter")


def _run_rr(landscape: FitnessLandscape, params: dict, rng: Xorshift64Star) -> _StepRecorder:
    _check_unknown(params, ("restarts", "start"))
    restarts = _require(params, "restarts", 1, int, low=1)
    start_text = params.get("start")
    if start_text is not None and (
        not isinstance(start_text, str)
        or len(start_text) != landscape.n
        or any(c not in "01" for c in start_text)
    ):
        raise ConfigError("params.start", f"expected a bitstring of length {landscape.n}")
    rec = _StepRecorder()
    for r in range(restarts):
        if r == 0 and start_text is not None:
            start = Bitstring(start_text)
        else:
            start = _random_bits(rng, landscape.n)
        result = hill_climb(start, landscape)
        for b in result.path:
            rec.add(b, landscape.f(b))
    return rec


def _run_sa(landscape: FitnessLandscape, params: dict, rng: Xorshift64Star) -> _StepRecorder:
    _check_unknown(params, ("budget", "t0", "cooling"))
    budget = _require(params, "budget", 1000, int, low=1)
    t0 = _require(params, "t0", 1.0, (int, float), low=0.0)
    cooling = _require(params, "cooling", 0.95, (int, float))
    if t0 <= 0:
        raise ConfigError("params.t0", f"must be > 0, got {t0}")
    if not 0 < cooling <= 1:
        raise ConfigError("params.cooling", f"must be in (0, 1], got {cooling}")
    rec = _StepRecorder()
    cur = _random_bits(rng, landscape.n)
    fcur = landscape.evaluate(cur)
    rec.add(cur, fcur)
    temp = float(t0)
    for _ in range(budget):
        cand = cur.flip(rng.randrange(landscape.n))
        fcand = landscape.f(cand)
        delta = fcand - fcur
        if delta <= 0:
            accept = True
        elif temp > 0.0:
            accept = rng.random() < math.exp(-delta / temp)
        else:
            accept = False
        if accept:
            cur, fcur = cand, fcand
            rec.add(cur, fcur)
        temp *= cooling
    return rec


def _tournament(rng: Xorshift64Star, fitnesses: list[float]) -> int:
    i = rng.randrange(len(fitnesses))
    j = rng.randrange(len(fitnesses))
    return j if fitnesses[j] < fitnesses[i] else i


def _run_ga(landscape: FitnessLandscape, params: dict, rng: Xorshift64Star) -> _StepRecorder:
    _check_unknown(params, ("pop_size", "generations", "mutation_rate", "crossover_rate"))
    pop_size = _require(params, "pop_size", 20, int, low=2)
    generations = _require(params, "generations", 50, int, low=1)
    mutation_rate = _require(
        params, "mutation_rate", 1.0 / landscape.n, (int, float), low=0.0, high=1.0
    )
    crossover_rate = _require(params, "crossover_rate", 0.9, (int, float), low=0.0, high=1.0)
    n = landscape.n

    pop = [_random_bits(rng, n) for _ in range(pop_size)]
    fits = [landscape.evaluate(b) for b in pop]

    def best_index() -> int:
        return min(range(pop_size), key=lambda i: (fits[i], pop[i].value))

    rec = _StepRecorder()
    bi = best_index()
    rec.add(pop[bi], fits[bi])
    for _ in range(generations):
        elite, felite = pop[bi], fits[bi]
        new_pop = [elite]
        new_fits = [felite]
        while len(new_pop) < pop_size:
            pa = pop[_tournament(rng, fits)]
            pb = pop[_tournament(rng, fits)]
            if rng.random() < crossover_rate:
                child_bits = [
                    pa[i] if rng.random() < 0.5 else pb[i] for i in range(n)
                ]
            else:
                child_bits = [pa[i] for i in range(n)]
            for i in range(n):
                if rng.random() < mutation_rate:
                    child_bits[i] = 1 - child_bits[i]
            child = Bitstring(child_bits)
            new_pop.append(child)
            new_fits.append(landscape.evaluate(child))
        pop, fits = new_pop, new_fits
        bi = best_index()
        rec.add(pop[bi], fits[bi])
    return rec


_RUNNERS = {
    "rr_hillclimb": _run_rr,
    "simulated_annealing": _run_sa,
    "genetic": _run_ga,
}


def run_algorithm(
    landscape: FitnessLandscape,
    algo: str,
    params: dict | None,
    seed: int,
    run: int = 0,
) -> Trajectory:
    """Run one seeded optimizer and record its accepted states."""
    if algo not in _RUNNERS:
        raise ConfigError("algo", f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")
    rec = _RUNNERS[algo](landscape, dict(params or {}), Xorshift64Star(seed))
    return Trajectory(algorithm=algo, run=run, steps=tuple(rec.steps), seed=seed)


def run_ensemble(
    landscape: FitnessLandscape,
    algo: str,
    params: dict | None,
    runs: int,
    seed: int,
) -> list[Trajectory]:
    """Run ``runs`` independent trajectories with per-run derived seeds."""
    if runs < 1:
        raise DomainError(f"need at least 1 run, got {runs}")
    return [
        run_algorithm(landscape, algo, params, seed=derive_seed(seed, r), run=r)
        for r in range(runs)
    ]


@dataclass(frozen=True)
class StnNode:
    """One merged state (or fitness bucket) of a trajectory network.

    ``visit_count`` is the total number of step occurrences and drives the
    size channel in plots; ``visitor_count`` is the number of distinct
    (algorithm, run) pairs and defines the shared role.
    """

    key: str
    bits: Bitstring | None
    fitness: float
    roles: frozenset[str]
    algorithms: tuple[str, ...]
    visit_count: int
    visitor_count: int


@dataclass(frozen=True)
class StnEdge:
    source: str
    target: str
    weight: int
    per_algorithm: tuple[tuple[str, int], ...]


_STN_SEQ = itertools.count()


@dataclass(frozen=True)
class StnGraph:
    """Merged trajectory network; ``source`` is a provenance token minted
    per graph so plots of independently built networks stay distinct."""

    n: int
    nodes: tuple[StnNode, ...]
    edges: tuple[StnEdge, ...]
    fitness_bucket: float | None = None
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.source:
            object.__setattr__(self, "source", f"stn#{next(_STN_SEQ)}")

    def node(self, key: str) -> StnNode:
        for node in self.nodes:
            if node.key == key:
                return node
        raise DomainError(f"no STN node with key {key!r}")


def build_stn(trajectories: list[Trajectory], fitness_bucket: float | None = None) -> StnGraph:
    """Merge trajectories into one network, assigning node roles.

    With ``fitness_bucket`` set, states collapse into fitness intervals of
    that width (bucket k covers [k*w, (k+1)*w)); otherwise nodes are exact
    states. Roles: start and end mark any trajectory's first and last node,
    best marks each algorithm's minimal-fitness node, shared marks nodes
    visited by at least two distinct (algorithm, run) pairs.
    """
    if not trajectories:
        raise DomainError("need at least one trajectory")
    n = trajectories[0].n
    for t in trajectories:
        if t.n != n:
            raise DimensionError(f"mixed trajectory dimensions: {t.n} != {n}")
    if fitness_bucket is not None and not fitness_bucket > 0:
        raise DomainError(f"fitness bucket width must be > 0, got {fitness_bucket}")

    if fitness_bucket is None:
        def key_of(b: Bitstring, fitness: float):
            return b.value
    else:
        def key_of(b: Bitstring, fitness: float):
            return math.floor(fitness / fitness_bucket)

    visits: dict[int, int] = {}
    visitors: dict[int, set[tuple[str, int]]] = {}
    node_fit: dict[int, float] = {}
    node_bits: dict[int, Bitstring | None] = {}
    roles: dict[int, set[str]] = {}
    edge_counts: dict[tuple[int, int], dict[str, int]] = {}
    best_by_algo: dict[str, float] = {}

    for t in trajectories:
        keys = []
        for b, f in t.steps:
            k = key_of(b, f)
            keys.append(k)
            visits[k] = visits.get(k, 0) + 1
            visitors.setdefault(k, set()).add((t.algorithm, t.run))
            if k not in node_fit or f < node_fit[k]:
                node_fit[k] = f
                node_bits[k] = b if fitness_bucket is None else None
            roles.setdefault(k, set())
        roles[keys[0]].add(ROLE_START)
        roles[keys[-1]].add(ROLE_END)
        fbest = t.best_fitness
        if t.algorithm not in best_by_algo or fbest < best_by_algo[t.algorithm]:
            best_by_algo[t.algorithm] = fbest
        for a, b in zip(keys, keys[1:]):
            if a == b:
                continue
            per = edge_counts.setdefault((a, b), {})
            per[t.algorithm] = per.get(t.algorithm, 0) + 1

    for t in trajectories:
        target = best_by_algo[t.algorithm]
        for b, f in t.steps:
            if f == target:
                roles[key_of(b, f)].add(ROLE_BEST)
    for k, pairs in visitors.items():
        if len(pairs) >= 2:
            roles[k].add(ROLE_SHARED)

    def label(k: int) -> str:
        if fitness_bucket is None:
            return str(Bitstring.from_value(k, n))
        return f"bucket{k}"

    nodes = tuple(
        StnNode(
            key=label(k),
            bits=node_bits[k],
            fitness=node_fit[k] if fitness_bucket is None else k * fitness_bucket,
            roles=frozenset(roles[k]),
            algorithms=tuple(sorted({a for a, _ in visitors[k]})),
            visit_count=visits[k],
            visitor_count=len(visitors[k]),
        )
        for k in sorted(visits)
    )
    edges = tuple(
        StnEdge(
            source=label(a),
            target=label(b),
            weight=sum(per.values()),
            per_algorithm=tuple(sorted(per.items())),
        )
        for (a, b), per in sorted(edge_counts.items())
    )
    return StnGraph(n=n, nodes=nodes, edges=edges, fitness_bucket=fitness_bucket)


@dataclass(frozen=True)
class StnMetrics:
    node_count: int
    edge_count: int
    shared_count: int
    cross_algorithm_shared_count: int
    best_fitness: dict[str, float]
    coverage: dict[str, int]


def stn_metrics(g: StnGraph) -> StnMetrics:
    """Summary tallies of one trajectory network.

    ``shared_count`` counts nodes visited by two or more (algorithm, run)
    pairs; ``cross_algorithm_shared_count`` restricts that to two or more
    distinct algorithms.
    """
    best: dict[str, float] = {}
    coverage: dict[str, int] = {}
    for node in g.nodes:
        for a in node.algorithms:
            coverage[a] = coverage.get(a, 0) + 1
            if a not in best or node.fitness < best[a]:
                best[a] = node.fitness
    return StnMetrics(
        node_count=len(g.nodes),
        edge_count=len(g.edges),
        shared_count=sum(1 for node in g.nodes if ROLE_SHARED in node.roles),
        cross_algorithm_shared_count=sum(1 for node in g.nodes if len(node.algorithms) >= 2),
        best_fitness=dict(sorted(best.items())),
        coverage=dict(sorted(coverage.items())),
    )


STN_NODE_SCHEMA = [
    ("bits", "string"),
    ("fitness", "double"),
    ("roles", "string"),
    ("algorithms", "string"),
    ("visit_count", "long"),
    ("visitor_count", "long"),
]
STN_EDGE_SCHEMA = [
    ("weight", "long"),
    ("per_algorithm", "string"),
]


def export_stn(g: StnGraph, path, format: str) -> None:
    """Write the network as GraphML or DOT with role and per-algorithm
    attributes; node ids are the state bitstrings (or bucket labels)."""
    from .graphio import write_dot, write_graphml

    if format not in ("graphml", "dot"):
        raise DomainError(f"format must be graphml or dot, got {format!r}")
    nodes = [
        (
            node.key,
            {
                "bits": str(node.bits) if node.bits is not None else "",
                "fitness": node.fitness,
                "roles": ",".join(sorted(node.roles)),
                "algorithms": ",".join(node.algorithms),
                "visit_count": node.visit_count,
                "visitor_count": node.visitor_count,
            },
        )
        for node in g.nodes
    ]
    edges = [
        (
            e.source,
            e.target,
            {
                "weight": e.weight,
                "per_algorithm": ";".join(f"{a}:{c}" for a, c in e.per_algorithm),
            },
        )
        for e in g.edges
    ]
    if format == "graphml":
        write_graphml(
            path,
            nodes,
            edges,
            node_schema=STN_NODE_SCHEMA,
            edge_schema=STN_EDGE_SCHEMA,
            directed=True,
        )
    else:
        write_dot(path, nodes, edges, directed=True, name="stn")


def write_trajectories_csv(trajectories: list[Trajectory], path) -> None:
    """Write runs as `algorithm,run,step,bits,fitness` rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["algorithm", "run", "step", "bits", "fitness"])
        for t in trajectories:
            for step, (b, f) in enumerate(t.steps):
                writer.writerow([t.algorithm, t.run, step, str(b), repr(f)])


def read_trajectories_csv(path) -> list[Trajectory]:
    """Read trajectories written by this module or injected by external
    optimizers."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["algorithm", "run", "step", "bits", "fitness"]:
        raise DomainError(f"{path}: expected header algorithm,run,step,bits,fitness")
    grouped: dict[tuple[str, int], list[tuple[int, Bitstring, float]]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 5:
            raise DomainError(f"{path}:{lineno}: expected 5 columns, got {len(row)}")
        algo, run_text, step_text, bits, fit_text = row
        try:
            run, step, fitness = int(run_text), int(step_text), float(fit_text)
        except ValueError:
            raise DomainError(f"{path}:{lineno}: unparsable numeric field") from None
        grouped.setdefault((algo, run), []).append((step, Bitstring(bits), fitness))
    out = []
    for (algo, run), items in sorted(grouped.items()):
        items.sort(key=lambda item: item[0])
        out.append(
            Trajectory(
                algorithm=algo,
                run=run,
                steps=tuple((b, f) for _, b, f in items),
            )
        )
    return out
