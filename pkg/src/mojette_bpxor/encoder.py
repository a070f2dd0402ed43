"""Mojette projections of a data grid.

Bin ``j`` of the projection at direction ``(p, q)`` is the XOR of every cell
``f(z, l)`` on the discrete line ``z*q + l*p = -m``, stored 0-based through
the shift ``j = m + (b-1)*q*u(q) + (k-1)*p*u(p)`` with ``u(s) = 1`` iff
``s > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from .errors import StructuralError
from .symbols import CodeSpec, DataGrid, Direction, SymbolBuf


def _step(s: int) -> int:
    return 1 if s > 0 else 0


def projection_length(direction: Direction, b: int, k: int) -> int:
    """Number of bins: ``|p|(k-1) + |q|(b-1) + 1``."""
    p, q = direction
    return abs(p) * (k - 1) + abs(q) * (b - 1) + 1


def bin_offset(direction: Direction, b: int, k: int) -> int:
    p, q = direction
    return (b - 1) * q * _step(q) + (k - 1) * p * _step(p)


def bin_index(direction: Direction, z: int, l: int, b: int, k: int) -> int:
    if not (0 <= z < b and 0 <= l < k):
        raise StructuralError(f"cell ({z}, {l}) outside {b}x{k} grid")
    p, q = direction
    return bin_offset(direction, b, k) - z * q - l * p


@lru_cache(maxsize=4096)
def _bin_map(p: int, q: int, b: int, k: int) -> NDArray[np.intp]:
    z = np.arange(b).reshape(b, 1)
    l = np.arange(k).reshape(1, k)
    idx = bin_offset(Direction(p, q), b, k) - z * q - l * p
    idx.setflags(write=False)
    return idx


def bin_index_map(direction: Direction, b: int, k: int) -> NDArray[np.intp]:
    """``(b, k)`` array holding the bin of every cell. Read-only, cached."""
    return _bin_map(direction.p, direction.q, b, k)


def bin_degree_map(direction: Direction, b: int, k: int) -> NDArray[np.intp]:
    """Number of cells feeding each bin."""
    return np.bincount(bin_index_map(direction, b, k).ravel(), minlength=projection_length(direction, b, k))


@dataclass(frozen=True, eq=False)
class Projection:
    index: int
    direction: Direction
    bins: NDArray[np.uint8]  # shape (b_i, w)

    def __len__(self) -> int:
        return self.bins.shape[0]

    @property
    def width(self) -> int:
        return self.bins.shape[1]

    def bin(self, j: int) -> SymbolBuf:
        return SymbolBuf(self.bins[j].tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Projection):
            return NotImplemented
        return (
            self.index == other.index
            and self.direction == other.direction
            and self.bins.shape == other.bins.shape
            and bool(np.array_equal(self.bins, other.bins))
        )


def project(grid: DataGrid, direction: Direction, index: int = 0) -> Projection:
    b, k, w = grid.cells.shape
    bins = np.zeros((projection_length(direction, b, k), w), dtype=np.uint8)
    np.bitwise_xor.at(bins, bin_index_map(direction, b, k).ravel(), grid.cells.reshape(b * k, w))
    return Projection(index, direction, bins)


def encode(grid: DataGrid, spec: CodeSpec) -> list[Projection]:
    """Compute all ``spec.n`` projections of ``grid``."""
    if (grid.b, grid.k) != (spec.b, spec.k):
        raise StructuralError(f"grid is {grid.b}x{grid.k}, spec wants {spec.b}x{spec.k}")
    if grid.width != spec.width:
        raise StructuralError(f"grid symbol width {grid.width} != spec width {spec.width}")
    return [project(grid, d, i) for i, d in enumerate(spec.directions)]
