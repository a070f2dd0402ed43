"""Iterative degree-one peeling over surviving projections."""
from __future__ import annotations

import enum
import heapq
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .constructions import katz_holds
from .encoder import Projection, bin_index_map, project, projection_length
from .errors import CorruptionError, StructuralError
from .symbols import CodeSpec, DataGrid, Direction


class DecodeStatus(enum.Enum):
    SUCCESS = "success"
    STALLED = "stalled"


@dataclass(frozen=True)
class PeelStep:
    projection: int
    bin: int
    cell: tuple[int, int]


@dataclass
class DecodeReport:
    status: DecodeStatus
    resolved_count: int
    residual_unresolved: int
    peel_trace: list[PeelStep] = field(repr=False)
    xor_count: int = 0
    resolved: NDArray[np.bool_] | None = field(default=None, repr=False)

    @property
    def success(self) -> bool:
        return self.status is DecodeStatus.SUCCESS


def _peel(
    keys: Sequence[int],
    cell_bins: Sequence[NDArray[np.intp]],
    lengths: Sequence[int],
    ncells: int,
    values: list[NDArray[np.uint8]] | None = None,
    out: NDArray[np.uint8] | None = None,
) -> tuple[list[tuple[int, int, int]], bytearray, int]:
    """Peel the bipartite graph given by ``cell_bins[i][c]`` (bin of cell ``c`` in projection ``i``).

    With ``values`` the residual bin contents are updated in place and
    resolved cells are written to ``out`` (flattened ``(b*k, w)``).
    """
    m = len(cell_bins)
    lookup = [cb.tolist() for cb in cell_bins]
    degree: list[list[int]] = []
    idsum: list[list[int]] = []
    cell_ids = np.arange(ncells, dtype=np.int64)
    for cb, length in zip(cell_bins, lengths):
        degree.append(np.bincount(cb, minlength=length).tolist())
        acc = np.zeros(length, dtype=np.int64)
        np.add.at(acc, cb, cell_ids)
        idsum.append(acc.tolist())

    position = {key: i for i, key in enumerate(keys)}
    heap = [(keys[i], j) for i in range(m) for j, d in enumerate(degree[i]) if d == 1]
    heapq.heapify(heap)
    resolved = bytearray(ncells)
    trace: list[tuple[int, int, int]] = []
    xors = 0
    while heap:
        key, j = heapq.heappop(heap)
        i = position[key]
        if degree[i][j] != 1:
            continue
        c = idsum[i][j]
        resolved[c] = 1
        trace.append((key, j, c))
        if values is not None:
            symbol = values[i][j].copy()
            out[c] = symbol
        for i2 in range(m):
            j2 = lookup[i2][c]
            degree[i2][j2] -= 1
            idsum[i2][j2] -= c
            if values is not None:
                values[i2][j2] ^= symbol
                xors += 1
            if degree[i2][j2] == 1:
                heapq.heappush(heap, (keys[i2], j2))
    return trace, resolved, xors


def peel_structure(directions: Sequence[Direction], b: int, k: int) -> tuple[int, list[tuple[int, int, int]]]:
    """Value-free peeling: ``(unresolved cell count, trace)`` for a direction set."""
    maps = [bin_index_map(d, b, k).ravel() for d in directions]
    lengths = [projection_length(d, b, k) for d in directions]
    trace, resolved, _ = _peel(list(range(len(directions))), maps, lengths, b * k)
    return b * k - sum(resolved), trace


def decode(
    spec: CodeSpec, available: Sequence[Projection], check: bool = True
) -> tuple[DataGrid, DecodeReport]:
    """Rebuild the grid from the surviving projections.

    Returns the (possibly partial) grid and a report; unresolved cells of a
    stalled session are zero and flagged in ``report.resolved``. With
    ``check`` a successful result is re-encoded and compared against every
    available projection.
    """
    b, k, w = spec.b, spec.k, spec.width
    seen: set[int] = set()
    for proj in available:
        if proj.index in seen:
            raise StructuralError(f"projection {proj.index} supplied twice")
        seen.add(proj.index)
        if 0 <= proj.index < spec.n and spec.directions[proj.index] != proj.direction:
            raise StructuralError(
                f"projection {proj.index} has direction {proj.direction}, spec says {spec.directions[proj.index]}"
            )
        expected = projection_length(proj.direction, b, k)
        if proj.bins.ndim != 2 or proj.bins.shape != (expected, w):
            raise StructuralError(f"projection {proj.index} has shape {proj.bins.shape}, expected {(expected, w)}")

    ncells = b * k
    out = np.zeros((ncells, w), dtype=np.uint8)
    values = [proj.bins.copy() for proj in available]
    trace, resolved, xors = _peel(
        [p.index for p in available],
        [bin_index_map(p.direction, b, k).ravel() for p in available],
        [len(p) for p in available],
        ncells,
        values,
        out,
    )
    grid = DataGrid(out.reshape(b, k, w))
    count = sum(resolved)
    mask = np.frombuffer(bytes(resolved), dtype=np.uint8).astype(bool).reshape(b, k)
    report = DecodeReport(
        status=DecodeStatus.SUCCESS if count == ncells else DecodeStatus.STALLED,
        resolved_count=count,
        residual_unresolved=ncells - count,
        peel_trace=[PeelStep(i, j, divmod(c, k)) for i, j, c in trace],
        xor_count=xors,
        resolved=mask,
    )
    if check and report.success:
        for proj in available:
            if not np.array_equal(project(grid, proj.direction, proj.index).bins, proj.bins):
                raise CorruptionError(f"projection {proj.index} disagrees with the decoded grid")
    return grid, report


def decodable(spec: CodeSpec, survivors: Sequence[Direction]) -> bool:
    """Katz criterion over the surviving directions."""
    known = set(spec.directions)
    for d in survivors:
        if d not in known:
            raise StructuralError(f"direction {d} is not part of the code")
    return katz_holds(survivors, spec.b, spec.k)
