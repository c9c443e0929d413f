"""Bitstrings, Hamming geometry, and the hinged 2-D embedding of B^n.

A solution is a fixed-length binary string, most-significant bit first, so
``"101"`` reads as decimal 5. The hinged mapping slices a bitstring into two
halves and uses their decimal values as plot coordinates, which lays the
whole space out on a 2-D grid.
"""

from collections.abc import Iterable, Iterator
from typing import NamedTuple

from .errors import CapacityError, DimensionError, DomainError

DEFAULT_SPACE_CAP = 24  # full enumeration allowed up to 2**24 solutions


class Bitstring:
    """Immutable fixed-length binary string, most-significant bit first."""

    __slots__ = ("_n", "_value")

    def __init__(self, bits: "str | Iterable[int]"):
        if isinstance(bits, str):
            text = bits
        else:
            text = "".join(str(int(x)) for x in bits)
        if not text:
            raise DomainError("bitstring must have at least one bit")
        if any(c not in "01" for c in text):
            raise DomainError(f"bitstring may contain only 0 and 1, got {text!r}")
        self._n = len(text)
        self._value = int(text, 2)

    @classmethod
    def from_value(cls, value: int, n: int) -> "Bitstring":
        """Bitstring of length ``n`` with decimal value ``value``."""
        if n < 1:
            raise DomainError(f"bitstring length must be >= 1, got {n}")
        if not 0 <= value < (1 << n):
            raise DomainError(f"value {value} out of range for n={n}")
        b = object.__new__(cls)
        b._n = n
        b._value = value
        return b

    @property
    def n(self) -> int:
        return self._n

    @property
    def value(self) -> int:
        return self._value

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self._value >> (self._n - 1 - i)) & 1 for i in range(self._n))

    def ones(self) -> int:
        """Number of 1 bits."""
        return self._value.bit_count()

    def flip(self, i: int) -> "Bitstring":
        """New bitstring with position ``i`` flipped (0 = most significant)."""
        if not 0 <= i < self._n:
            raise DomainError(f"bit index {i} out of range for n={self._n}")
        return Bitstring.from_value(self._value ^ (1 << (self._n - 1 - i)), self._n)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise IndexError(i)
        return (self._value >> (self._n - 1 - i)) & 1

    def __len__(self) -> int:
        return self._n

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return format(self._value, f"0{self._n}b")

    def __repr__(self) -> str:
        return f"Bitstring({str(self)!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bitstring)
            and self._n == other._n
            and self._value == other._value
        )

    def __hash__(self) -> int:
        return hash((self._n, self._value))

    def __lt__(self, other: "Bitstring") -> bool:
        return (self._n, self._value) < (other._n, other._value)


class HingedCoord(NamedTuple):
    """Grid coordinate of a bitstring under the hinged mapping."""

    x: int
    y: int


def dec(b: Bitstring) -> int:
    """Decimal value of a bitstring, most-significant bit first."""
    return b.value


def hamming(a: Bitstring, b: Bitstring) -> int:
    """Number of positions at which two equal-length bitstrings differ."""
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")
    return (a.value ^ b.value).bit_count()


def neighbors(b: Bitstring) -> tuple[Bitstring, ...]:
    """All single-bit flips of ``b``, ordered by flipped position."""
    return tuple(b.flip(i) for i in range(b.n))


def hinge(b: Bitstring) -> HingedCoord:
    """Split ``b`` into halves; x is the decimal value of the first half.

    For odd lengths the first half takes the extra bit, so the x-axis never
    has less resolution than the y-axis.
    """
    if b.n < 2:
        raise DimensionError(f"hinge needs n >= 2, got n={b.n}")
    half = (b.n + 1) // 2
    low_bits = b.n - half
    return HingedCoord(b.value >> low_bits, b.value & ((1 << low_bits) - 1))


def hinge_shape(n: int) -> tuple[int, int]:
    """Grid extents of the hinged mapping: (2**ceil(n/2), 2**floor(n/2))."""
    if n < 2:
        raise DimensionError(f"hinge needs n >= 2, got n={n}")
    half = (n + 1) // 2
    return (1 << half, 1 << (n - half))


def unhinge(coord: HingedCoord, n: int) -> Bitstring:
    """Inverse of :func:`hinge` for bitstrings of length ``n``."""
    nx, ny = hinge_shape(n)
    x, y = coord
    if not (0 <= x < nx and 0 <= y < ny):
        raise DomainError(f"coordinate {coord} out of range for n={n}")
    low_bits = n - ((n + 1) // 2)
    return Bitstring.from_value((x << low_bits) | y, n)


def enumerate_space(n: int, cap: int = DEFAULT_SPACE_CAP) -> Iterator[Bitstring]:
    """Yield all 2**n bitstrings of length ``n`` in ascending decimal order."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if n > cap:
        need = (1 << n) * 8  # one 8-byte fitness slot per solution
        raise CapacityError(
            f"n={n} exceeds enumeration cap {cap}: full enumeration holds "
            f"2**{n} = {1 << n} solutions (~{need / (1 << 20):.1f} MiB of fitness values)"
        )
    for value in range(1 << n):
        yield Bitstring.from_value(value, n)
