"""Pure fitness oracles, benchmark instances, and landscape transforms.

Everything is minimized. Oracles are deterministic and total over B^n;
repeated evaluation of the same bitstring is bit-identical. Maximization
problems are ingested by negating fitness at load time.
"""

import csv
import itertools
import math
from collections.abc import Callable
from dataclasses import dataclass, field

from .bitspace import Bitstring, dec
from .errors import (
    ConfigError,
    DimensionError,
    DomainError,
    DuplicateRowError,
    IncompleteTableError,
    TableFormatError,
)
from .rng import Xorshift64Star

_SOURCE_SEQ = itertools.count()


@dataclass(frozen=True)
class FitnessLandscape:
    """A search space of bitstrings with a fitness oracle to minimize.

    ``violation`` is an optional second channel: nonnegative, and zero
    exactly on feasible solutions. It is kept separate from fitness so
    feasibility plots never need to re-evaluate the objective.

    ``source`` is an identity token distinguishing independently built
    landscapes (used by the plot-composition conflict rule); it is assigned
    automatically and never serialized.
    """

    n: int
    f: Callable[[Bitstring], float]
    name: str = "landscape"
    violation: Callable[[Bitstring], float] | None = None
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"landscape dimension must be >= 1, got {self.n}")
        if not self.source:
            object.__setattr__(self, "source", f"{self.name}#{next(_SOURCE_SEQ)}")

    def evaluate(self, b: Bitstring) -> float:
        if b.n != self.n:
            raise DimensionError(f"bitstring length {b.n} != landscape dimension {self.n}")
        return self.f(b)

    def violation_of(self, b: Bitstring) -> float:
        if self.violation is None:
            raise ConfigError("violation", f"landscape {self.name!r} has no violation function")
        return self.violation(b)

    def is_feasible(self, b: Bitstring) -> bool:
        return self.violation_of(b) == 0.0


def eval_sin2dec(b: Bitstring) -> float:
    """sin(2 * Dec(b)), in radians."""
    return math.sin(2.0 * dec(b))


def eval_onemax(b: Bitstring) -> float:
    """n minus the number of ones: unique global minimum at all-ones."""
    return float(b.n - b.ones())


def eval_two_trap(b: Bitstring) -> float:
    """min(ones, n - ones + 0.5): global optimum at all-zeros, a second
    local optimum at all-ones."""
    c = b.ones()
    return min(float(c), b.n - c + 0.5)


@dataclass(frozen=True)
class NKModel:
    """An NK instance: per-locus lookup tables over the locus and its k
    epistatic neighbors.

    Neighbor lists are the adjacent loci (i+1 .. i+k, wrapping), and tables
    are drawn uniform [0,1) from the portable xorshift64* generator, so an
    instance is reconstructed bit-identically from (n, k, seed) on any
    platform. Table row i is indexed by the k+1 bits (b_i, b_{i+1}, ...,
    b_{i+k}) packed most-significant-first.
    """

    n: int
    k: int
    neighbor_lists: tuple[tuple[int, ...], ...]
    tables: tuple[tuple[float, ...], ...]
    seed: int | None = None

    def __post_init__(self):
        if not 0 <= self.k < self.n:
            raise DomainError(f"need 0 <= k < n, got k={self.k}, n={self.n}")
        if len(self.neighbor_lists) != self.n or len(self.tables) != self.n:
            raise DomainError("need one neighbor list and one table per locus")
        width = 1 << (self.k + 1)
        for i, (nbs, table) in enumerate(zip(self.neighbor_lists, self.tables)):
            if len(nbs) != self.k or len(set(nbs)) != self.k or i in nbs:
                raise DomainError(f"locus {i}: neighbor list must hold k distinct other loci")
            if len(table) != width:
                raise DomainError(f"locus {i}: table must have 2**(k+1) = {width} entries")

    @classmethod
    def generate(cls, n: int, k: int, seed: int) -> "NKModel":
        """Build the adjacent-neighborhood instance for (n, k, seed)."""
        if not 0 <= k < n:
            raise DomainError(f"need 0 <= k < n, got k={k}, n={n}")
        rng = Xorshift64Star(seed)
        neighbor_lists = tuple(
            tuple((i + j) % n for j in range(1, k + 1)) for i in range(n)
        )
        width = 1 << (k + 1)
        tables = tuple(
            tuple(rng.random() for _ in range(width)) for _ in range(n)
        )
        return cls(n=n, k=k, neighbor_lists=neighbor_lists, tables=tables, seed=seed)


def eval_nk(b: Bitstring, m: NKModel) -> float:
    """Mean of the per-locus table entries selected by b."""
    if b.n != m.n:
        raise DimensionError(f"bitstring length {b.n} != model dimension {m.n}")
    total = 0.0
    for i in range(m.n):
        idx = b[i]
        for j in m.neighbor_lists[i]:
            idx = (idx << 1) | b[j]
        total += m.tables[i][idx]
    return total / m.n


def make_sin2dec(n: int = 6) -> FitnessLandscape:
    return FitnessLandscape(n=n, f=eval_sin2dec, name=f"sin2dec_n{n}")


def make_onemax(n: int) -> FitnessLandscape:
    return FitnessLandscape(n=n, f=eval_onemax, name=f"onemax_n{n}")


def make_two_trap(n: int) -> FitnessLandscape:
    return FitnessLandscape(n=n, f=eval_two_trap, name=f"two_trap_n{n}")


def make_nk(n: int, k: int, seed: int) -> FitnessLandscape:
    model = NKModel.generate(n, k, seed)
    return FitnessLandscape(
        n=n, f=lambda b: eval_nk(b, model), name=f"nk_n{n}_k{k}_s{seed}"
    )


def regularize(landscape: FitnessLandscape, eps: float) -> FitnessLandscape:
    """Add the sparsity penalty eps * ones(b) / n to the objective.

    The penalized objective is recorded in the landscape name so it travels
    into every output header.
    """
    if eps < 0:
        raise DomainError(f"regularization strength must be >= 0, got {eps}")
    base = landscape.f
    n = landscape.n

    def regularized(b: Bitstring) -> float:
        return base(b) + eps * b.ones() / n

    return FitnessLandscape(
        n=n,
        f=regularized,
        name=f"{landscape.name}|f+{eps:g}*ones/n",
        violation=landscape.violation,
    )


def penalize(landscape: FitnessLandscape, lam: float) -> FitnessLandscape:
    """Fold the violation channel into fitness as a weighted penalty.

    Feasible solutions keep their fitness bit-identically; the violation
    channel itself is preserved so feasibility plots stay available.
    """
    if landscape.violation is None:
        raise ConfigError("violation", f"landscape {landscape.name!r} has no violation function")
    if lam < 0:
        raise DomainError(f"penalty weight must be >= 0, got {lam}")
    base = landscape.f
    viol = landscape.violation

    def penalized(b: Bitstring) -> float:
        v = viol(b)
        return base(b) if v == 0.0 else base(b) + lam * v

    return FitnessLandscape(
        n=landscape.n,
        f=penalized,
        name=f"{landscape.name}|f+{lam:g}*violation",
        violation=viol,
    )


def with_threshold_violation(landscape: FitnessLandscape, tau: float) -> FitnessLandscape:
    """Attach the constraint violation max(0, f(b) - tau)."""
    base = landscape.f

    def violation(b: Bitstring) -> float:
        return max(0.0, base(b) - tau)

    return FitnessLandscape(
        n=landscape.n,
        f=base,
        name=f"{landscape.name}|viol(f>{tau:g})",
        violation=violation,
    )


@dataclass(frozen=True)
class TabulatedLandscape:
    """A complete fitness table over B^n, indexed by decimal value."""

    n: int
    fitness: tuple[float, ...]
    violation: tuple[float, ...] | None = None
    name: str = "table"

    def __post_init__(self):
        if len(self.fitness) != (1 << self.n):
            raise DomainError(
                f"table must hold exactly 2**{self.n} entries, got {len(self.fitness)}"
            )
        if self.violation is not None and len(self.violation) != (1 << self.n):
            raise DomainError("violation column must cover the whole space")

    def landscape(self) -> FitnessLandscape:
        fitness = self.fitness
        violation = self.violation
        viol_fn = None
        if violation is not None:
            viol_fn = lambda b: violation[b.value]  # noqa: E731
        return FitnessLandscape(
            n=self.n, f=lambda b: fitness[b.value], name=self.name, violation=viol_fn
        )


def load_table(path, maximize: bool = False) -> TabulatedLandscape:
    """Read a fitness table CSV: header ``bits,fitness[,violation]``.

    The table must cover all of B^n with no duplicates; ``n`` is inferred
    from the first row. Lines starting with ``#`` are skipped. With
    ``maximize=True`` fitness is negated on load so the rest of the
    pipeline can keep minimizing.

    Raises
    ------
    IncompleteTableError
        if bitstrings are missing (lists up to 10 of them).
    DuplicateRowError
        if a bitstring appears twice.
    TableFormatError
        for a bad header, ragged bit lengths, or unparsable values.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    if not rows:
        raise TableFormatError(f"{path}: empty table file")
    header = [c.strip() for c in rows[0]]
    if header not in (["bits", "fitness"], ["bits", "fitness", "violation"]):
        raise TableFormatError(
            f"{path}: header must be bits,fitness[,violation], got {','.join(header)}"
        )
    has_violation = len(header) == 3
    body = rows[1:]
    if not body:
        raise TableFormatError(f"{path}: table has a header but no rows")

    n = len(body[0][0].strip())
    size = 1 << n
    fitness: list[float | None] = [None] * size
    violation: list[float] = [0.0] * size
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise TableFormatError(f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}")
        bits = row[0].strip()
        if len(bits) != n:
            raise TableFormatError(
                f"{path}:{lineno}: ragged bitstring length {len(bits)} (expected {n})"
            )
        if any(c not in "01" for c in bits):
            raise TableFormatError(f"{path}:{lineno}: invalid bitstring {bits!r}")
        value = int(bits, 2)
        if fitness[value] is not None:
            raise DuplicateRowError(bits)
        try:
            fit = float(row[1])
        except ValueError:
            raise TableFormatError(f"{path}:{lineno}: unparsable fitness {row[1]!r}") from None
        fitness[value] = -fit if maximize else fit
        if has_violation:
            try:
                v = float(row[2])
            except ValueError:
                raise TableFormatError(f"{path}:{lineno}: unparsable violation {row[2]!r}") from None
            if v < 0:
                raise TableFormatError(f"{path}:{lineno}: violation must be >= 0, got {v}")
            violation[value] = v

    missing = [format(v, f"0{n}b") for v in range(size) if fitness[v] is None]
    if missing:
        raise IncompleteTableError(n, missing[:10], len(missing))
    return TabulatedLandscape(
        n=n,
        fitness=tuple(fitness),  # type: ignore[arg-type]
        violation=tuple(violation) if has_violation else None,
        name=str(path),
    )


def save_table(table: TabulatedLandscape, path) -> None:
    """Write a table CSV in ascending decimal order, LF line endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if table.violation is None:
            fh.write("bits,fitness\n")
            for value, fit in enumerate(table.fitness):
                fh.write(f"{format(value, f'0{table.n}b')},{fit!r}\n")
        else:
            fh.write("bits,fitness,violation\n")
            for value, (fit, v) in enumerate(zip(table.fitness, table.violation)):
                fh.write(f"{format(value, f'0{table.n}b')},{fit!r},{v!r}\n")
