"""Exhaustive optima census, deterministic basins, and distance statistics.

The census enumerates the whole space, so everything here sits behind the
same capacity cap as ``enumerate_space``. Local optimality is non-strict:
a solution with no strictly better Hamming-1 neighbor qualifies, so every
member of a flat plateau is reported (plateau merging happens later, in
LON compression).
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .bitspace import DEFAULT_SPACE_CAP, Bitstring, enumerate_space, hamming, neighbors
from .errors import DomainError
from .problems import FitnessLandscape


def is_local_optimum(b: Bitstring, landscape: FitnessLandscape) -> bool:
    """True iff no Hamming-1 neighbor of b has strictly lower fitness."""
    fb = landscape.evaluate(b)
    return all(landscape.f(w) >= fb for w in neighbors(b))


@dataclass(frozen=True)
class ClimbResult:
    """Endpoint and visited path of one best-improvement descent."""

    optimum: Bitstring
    path: tuple[Bitstring, ...]

    @property
    def moves(self) -> int:
        return len(self.path) - 1


def hill_climb(b: Bitstring, landscape: FitnessLandscape) -> ClimbResult:
    """Best-improvement descent from b until no neighbor strictly improves.

    Ties among equally best strictly-improving neighbors go to the smallest
    decimal value, which makes every basin assignment deterministic. The
    returned path starts at b and ends at the optimum.
    """
    cur = b
    fcur = landscape.evaluate(b)
    path = [cur]
    while True:
        best = None
        fbest = fcur
        for w in neighbors(cur):
            fw = landscape.f(w)
            if fw < fbest or (fw == fbest and best is not None and w.value < best.value):
                best, fbest = w, fw
        if best is None:
            break
        cur, fcur = best, fbest
        path.append(cur)
    return ClimbResult(optimum=cur, path=tuple(path))


@dataclass(frozen=True)
class Optimum:
    """One local optimum with its basin size under deterministic descent."""

    bits: Bitstring
    fitness: float
    is_global: bool
    basin_size: int


@dataclass(frozen=True, eq=False)
class OptimaReport:
    """Complete census of the local optima of one landscape.

    ``optima`` is sorted by ascending decimal value. ``fitness_table`` and
    ``basin_table`` cover the whole space indexed by decimal value:
    ``basin_table[v]`` is the index into ``optima`` of the optimum that
    best-improvement descent reaches from v. Both arrays are treated as
    read-only after construction.
    """

    landscape: FitnessLandscape
    optima: tuple[Optimum, ...]
    fitness_table: np.ndarray = field(repr=False)
    basin_table: np.ndarray = field(repr=False)
    _index_by_value: dict[int, int] = field(repr=False)

    @property
    def n(self) -> int:
        return self.landscape.n

    @property
    def local_optima(self) -> tuple[Bitstring, ...]:
        return tuple(o.bits for o in self.optima)

    @property
    def global_optima(self) -> tuple[Optimum, ...]:
        return tuple(o for o in self.optima if o.is_global)

    @property
    def min_fitness(self) -> float:
        return min(o.fitness for o in self.optima)

    def basin_of(self, b: Bitstring) -> Optimum:
        return self.optima[int(self.basin_table[b.value])]

    def basin_sizes(self) -> dict[Bitstring, int]:
        return {o.bits: o.basin_size for o in self.optima}

    def index_of(self, b: Bitstring) -> int:
        """Index of a local optimum within ``optima``."""
        try:
            return self._index_by_value[b.value]
        except KeyError:
            raise DomainError(f"{b} is not a local optimum of {self.landscape.name}") from None


def find_optima(landscape: FitnessLandscape, cap: int = DEFAULT_SPACE_CAP) -> OptimaReport:
    """Exhaustive optima census with basins from every solution.

    Works on flat tables indexed by decimal value: one pass records each
    solution's best strictly-improving neighbor (smallest decimal on ties),
    then pointer doubling collapses those steps to basin endpoints.
    """
    n = landscape.n
    size = 1 << n
    fit = np.empty(size, dtype=np.float64)
    for b in enumerate_space(n, cap=cap):
        fit[b.value] = landscape.f(b)

    idx = np.arange(size, dtype=np.int64)
    best_w = idx.copy()
    best_f = fit.copy()
    for k in range(n):
        nb = idx ^ (1 << k)
        fnb = fit[nb]
        take = (fnb < best_f) | ((fnb == best_f) & (best_w != idx) & (nb < best_w))
        best_f = np.where(take, fnb, best_f)
        best_w = np.where(take, nb, best_w)

    basin = best_w
    while True:
        nxt = basin[basin]
        if np.array_equal(nxt, basin):
            break
        basin = nxt

    opt_values = np.flatnonzero(best_w == idx)
    index_lookup = np.full(size, -1, dtype=np.int64)
    index_lookup[opt_values] = np.arange(len(opt_values))
    basin_table = index_lookup[basin]
    sizes = np.bincount(basin_table, minlength=len(opt_values))
    fmin = float(fit[opt_values].min())

    optima = tuple(
        Optimum(
            bits=Bitstring.from_value(int(v), n),
            fitness=float(fit[v]),
            is_global=bool(fit[v] == fmin),
            basin_size=int(sizes[i]),
        )
        for i, v in enumerate(opt_values)
    )
    index_by_value = {int(v): i for i, v in enumerate(opt_values)}
    basin_table.setflags(write=False)
    fit.setflags(write=False)
    return OptimaReport(
        landscape=landscape,
        optima=optima,
        fitness_table=fit,
        basin_table=basin_table,
        _index_by_value=index_by_value,
    )


@dataclass(frozen=True)
class DistanceFitnessRecord:
    """Distance statistics of one local optimum.

    ``degenerate`` marks the single-optimum case, where the average distance
    to other optima has no meaning and is reported as 0 to keep the CSV
    numeric.
    """

    optimum: Bitstring
    fitness: float
    avg_dist_lo: float
    dist_to_global: int
    degenerate: bool = False


def distance_stats(report: OptimaReport) -> list[DistanceFitnessRecord]:
    """Per-optimum mean Hamming distance to the other optima and distance
    to the closest global optimum (0 exactly for global optima)."""
    opts = report.optima
    m = len(opts)
    global_bits = [o.bits for o in opts if o.is_global]
    records = []
    for o in opts:
        if m == 1:
            records.append(
                DistanceFitnessRecord(
                    optimum=o.bits,
                    fitness=o.fitness,
                    avg_dist_lo=0.0,
                    dist_to_global=0,
                    degenerate=True,
                )
            )
            continue
        total = sum(hamming(o.bits, other.bits) for other in opts if other.bits != o.bits)
        d_global = 0 if o.is_global else min(hamming(o.bits, g) for g in global_bits)
        records.append(
            DistanceFitnessRecord(
                optimum=o.bits,
                fitness=o.fitness,
                avg_dist_lo=total / (m - 1),
                dist_to_global=d_global,
            )
        )
    return records


_SQRT3 = 3.0**0.5

HEX_AXES = ("avg_dist_lo", "dist_to_global")


@dataclass(frozen=True)
class HexBinGrid:
    """Counts of (distance, fitness) points in a pointy-top hexagon grid.

    Bins are keyed by axial coordinates (q, r); ``bin_width`` is the
    horizontal pitch between adjacent centers in one row, so the
    center-to-vertex radius is bin_width / sqrt(3).
    """

    bin_width: float
    axis: str
    bins: dict[tuple[int, int], int]

    @property
    def radius(self) -> float:
        return self.bin_width / _SQRT3

    @property
    def total(self) -> int:
        return sum(self.bins.values())

    def center(self, q: int, r: int) -> tuple[float, float]:
        s = self.radius
        return (_SQRT3 * s * (q + r / 2.0), 1.5 * s * r)


def hexbin(
    records: list[DistanceFitnessRecord], axis: str, bin_width: float
) -> HexBinGrid:
    """Aggregate records into pointy-top hexagonal bins.

    x is the chosen distance statistic, y is fitness, both in data units.
    Each point goes to the nearest hex center; exact ties go to the center
    with the lexicographically smaller (r, q).
    """
    if axis not in HEX_AXES:
        raise DomainError(f"axis must be one of {HEX_AXES}, got {axis!r}")
    if not bin_width > 0:
        raise DomainError(f"bin width must be > 0, got {bin_width}")
    s = bin_width / _SQRT3
    bins: dict[tuple[int, int], int] = {}
    for rec in records:
        x = float(getattr(rec, axis))
        y = rec.fitness
        rf = y / (1.5 * s)
        qf = x / (_SQRT3 * s) - rf / 2.0
        q0, r0 = int(np.floor(qf)), int(np.floor(rf))
        best_key = None
        best_d2 = None
        for r in (r0 - 1, r0, r0 + 1):
            for q in (q0 - 1, q0, q0 + 1):
                cx = _SQRT3 * s * (q + r / 2.0)
                cy = 1.5 * s * r
                d2 = (x - cx) ** 2 + (y - cy) ** 2
                if best_d2 is None or d2 < best_d2 or (d2 == best_d2 and (r, q) < best_key[::-1]):
                    best_d2 = d2
                    best_key = (q, r)
        bins[best_key] = bins.get(best_key, 0) + 1
    return HexBinGrid(bin_width=bin_width, axis=axis, bins=bins)


def write_optima_csv(report: OptimaReport, path) -> None:
    """Write the census with distance statistics, one row per optimum in
    ascending decimal order."""
    records = distance_stats(report)
    by_value = {rec.optimum.value: rec for rec in records}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["bits", "fitness", "is_global", "basin_size", "avg_dist_lo", "dist_to_global", "degenerate"]
        )
        for o in report.optima:
            rec = by_value[o.bits.value]
            writer.writerow(
                [
                    str(o.bits),
                    repr(o.fitness),
                    "true" if o.is_global else "false",
                    o.basin_size,
                    repr(rec.avg_dist_lo),
                    rec.dist_to_global,
                    "true" if rec.degenerate else "false",
                ]
            )
