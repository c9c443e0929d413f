"""Exception types shared across the package."""


class LandscapeError(Exception):
    """Base class for every error raised by this library."""


class DimensionError(LandscapeError):
    """Operands disagree on bitstring length."""


class CapacityError(LandscapeError):
    """A full enumeration would exceed the configured cap."""


class DomainError(LandscapeError):
    """A parameter is outside its legal range."""


class ConfigError(LandscapeError):
    """Invalid run or algorithm configuration.

    ``field`` names the offending entry (dotted path for nested configs).
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class TableFormatError(LandscapeError):
    """A fitness table file violates the CSV schema."""


class IncompleteTableError(TableFormatError):
    """A fitness table is missing bitstrings; ``gaps`` holds up to 10 of them."""

    def __init__(self, n: int, gaps: list[str], missing_total: int):
        self.n = n
        self.gaps = gaps
        self.missing_total = missing_total
        shown = ", ".join(gaps)
        more = "" if missing_total <= len(gaps) else f" (+{missing_total - len(gaps)} more)"
        super().__init__(f"table for n={n} is missing {missing_total} bitstrings: {shown}{more}")


class DuplicateRowError(TableFormatError):
    """A fitness table lists the same bitstring more than once."""

    def __init__(self, bits: str):
        self.bits = bits
        super().__init__(f"duplicate table row for bitstring {bits}")


class EmptySceneError(LandscapeError):
    """A scene builder received no data to plot."""


class CompositionConflictError(LandscapeError):
    """Superimposition rejected: one or more aesthetic channels clash.

    ``conflicts`` maps channel name -> (features bound on the base side,
    features bound on the overlay side), each feature rendered as
    ``kind@source``.
    """

    def __init__(self, conflicts: dict[str, tuple[list[str], list[str]]]):
        self.conflicts = conflicts
        lines = []
        for channel in sorted(conflicts):
            left, right = conflicts[channel]
            lines.append(f"{channel}: {', '.join(left) or '-'} vs {', '.join(right) or '-'}")
        super().__init__("aesthetic channel conflict: " + "; ".join(lines))
