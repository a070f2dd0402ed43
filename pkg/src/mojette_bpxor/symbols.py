"""Symbols, the source data grid and code parameters.

A symbol is an opaque run of ``w`` bytes; the only arithmetic ever applied to
symbols is bytewise XOR. Grids are stored as ``uint8`` arrays of shape
``(b, k, w)`` where ``z`` indexes rows and ``l`` indexes columns.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import CapacityError, ParameterError, StructuralError


@dataclass(frozen=True)
class SymbolBuf:
    data: bytes

    def __post_init__(self) -> None:
        if len(self.data) < 1:
            raise StructuralError("symbol width must be >= 1 byte")

    @property
    def width(self) -> int:
        return len(self.data)

    @classmethod
    def zeros(cls, width: int) -> SymbolBuf:
        return cls(bytes(width))

    def __xor__(self, other: SymbolBuf) -> SymbolBuf:
        return xor_into(self, other)


def xor_into(dst: SymbolBuf, src: SymbolBuf) -> SymbolBuf:
    """Return ``dst XOR src``; both symbols must share one width."""
    if dst.width != src.width:
        raise StructuralError(f"symbol width mismatch: {dst.width} != {src.width}")
    a = np.frombuffer(dst.data, dtype=np.uint8)
    b = np.frombuffer(src.data, dtype=np.uint8)
    return SymbolBuf(np.bitwise_xor(a, b).tobytes())


class DataGrid:
    """A ``b x k`` array of equal-width symbols, addressed as ``f(z, l)``."""

    def __init__(self, cells: NDArray[np.uint8]):
        cells = np.asarray(cells, dtype=np.uint8)
        if cells.ndim != 3 or min(cells.shape) < 1:
            raise StructuralError(f"grid cells must have shape (b, k, w) with all dims >= 1, got {cells.shape}")
        self.cells = cells

    @classmethod
    def zeros(cls, b: int, k: int, w: int) -> DataGrid:
        return cls(np.zeros((b, k, w), dtype=np.uint8))

    @classmethod
    def random(cls, b: int, k: int, w: int, rng: np.random.Generator) -> DataGrid:
        return cls(rng.integers(0, 256, size=(b, k, w), dtype=np.uint8))

    @property
    def b(self) -> int:
        return self.cells.shape[0]

    @property
    def k(self) -> int:
        return self.cells.shape[1]

    @property
    def width(self) -> int:
        return self.cells.shape[2]

    def cell(self, z: int, l: int) -> SymbolBuf:
        if not (0 <= z < self.b and 0 <= l < self.k):
            raise StructuralError(f"cell ({z}, {l}) outside {self.b}x{self.k} grid")
        return SymbolBuf(self.cells[z, l].tobytes())

    def to_bytes(self, length: int | None = None) -> bytes:
        raw = self.cells.tobytes()
        return raw if length is None else raw[:length]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DataGrid):
            return NotImplemented
        return self.cells.shape == other.cells.shape and bool(np.array_equal(self.cells, other.cells))

    def __repr__(self) -> str:
        return f"DataGrid(b={self.b}, k={self.k}, w={self.width})"


def grid_from_bytes(payload: bytes, b: int, k: int, w: int) -> DataGrid:
    """Fill a grid row-major (z outer, l inner), zero-padding the tail."""
    capacity = b * k * w
    if len(payload) > capacity:
        raise CapacityError(f"payload of {len(payload)} bytes exceeds grid capacity {capacity}")
    buf = np.zeros(capacity, dtype=np.uint8)
    buf[: len(payload)] = np.frombuffer(payload, dtype=np.uint8)
    return DataGrid(buf.reshape(b, k, w))


@dataclass(frozen=True, order=True)
class Direction:
    """A projection angle given by coprime integers ``(p, q)``.

    ``p`` multiplies the column index ``l`` and ``q`` the row index ``z``.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p == 0 and self.q == 0:
            raise ParameterError("direction (0, 0) is not a projection angle")
        if math.gcd(self.p, self.q) != 1:
            raise ParameterError(f"direction ({self.p}, {self.q}) is not coprime")

    def __iter__(self):
        return iter((self.p, self.q))

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


class Construction(enum.IntEnum):
    """Direction-set family; the value is the container header code."""

    C33 = 0
    C35 = 1
    CUSTOM = 2

    @classmethod
    def parse(cls, text: str) -> Construction:
        try:
            return cls[text.upper()]
        except KeyError:
            raise ParameterError(f"unknown construction {text!r}") from None


@dataclass(frozen=True)
class CodeSpec:
    """Parameters of one code instance.

    Use :func:`mojette_bpxor.constructions.make_spec` to build one from a
    construction; direct construction is for custom direction sets.
    """

    n: int
    k: int
    b: int
    width: int
    construction: Construction
    directions: tuple[Direction, ...]
    q_e: int = 0
    sigma: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.k < 1 or self.b < 1:
            raise ParameterError(f"need k >= 1 and b >= 1, got k={self.k}, b={self.b}")
        if self.width < 1:
            raise ParameterError(f"symbol width must be >= 1, got {self.width}")
        if len(self.directions) != self.n:
            raise ParameterError(f"{len(self.directions)} directions for n={self.n}")
        if self.sigma == 0:
            from .constructions import code_sigma

            object.__setattr__(self, "sigma", code_sigma(self.directions, self.b, self.k))

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def t(self) -> int:
        """Erasure tolerance at the construction's reconstruction size."""
        from .constructions import reconstruction_size

        return self.n - reconstruction_size(self)

    def projection_lengths(self) -> list[int]:
        from .encoder import projection_length

        return [projection_length(d, self.b, self.k) for d in self.directions]
