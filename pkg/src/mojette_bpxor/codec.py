"""File-level encode/decode built on the container format."""
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from . import container
from .constructions import katz_holds, make_spec
from .decoder import DecodeReport, decode
from .encoder import encode
from .errors import CorruptionError, StructuralError
from .symbols import CodeSpec, Construction, DataGrid, Direction, grid_from_bytes

MANIFEST = "manifest.json"


def projection_filename(index: int) -> str:
    return f"proj_{index:04d}.ambx"


def encode_bytes(payload: bytes, spec: CodeSpec) -> tuple[list[bytes], dict]:
    """Containers for every projection of ``payload`` plus the manifest document."""
    grid = grid_from_bytes(payload, spec.b, spec.k, spec.width)
    blobs = []
    entries = []
    for proj in encode(grid, spec):
        header = container.ContainerHeader(
            construction=spec.construction, n=spec.n, k=spec.k, b=spec.b, q_e=spec.q_e,
            width=spec.width, payload_len=len(payload), index=proj.index,
            p=proj.direction.p, q=proj.direction.q, bin_count=len(proj),
        )
        blob = container.serialize(header, proj)
        blobs.append(blob)
        entries.append({
            "index": proj.index,
            "file": projection_filename(proj.index),
            "p": proj.direction.p,
            "q": proj.direction.q,
            "bins": len(proj),
            "body_crc32": container.body_crc(blob),
        })
    manifest = {
        "format": "ambx",
        "version": container.VERSION,
        "construction": spec.construction.name,
        "n": spec.n,
        "k": spec.k,
        "b": spec.b,
        "q_e": spec.q_e,
        "width": spec.width,
        "sigma": spec.sigma,
        "payload_len": len(payload),
        "projections": entries,
    }
    return blobs, manifest


def encode_file(src: Path, spec: CodeSpec, out_dir: Path) -> dict:
    payload = Path(src).read_bytes()
    blobs, manifest = encode_bytes(payload, spec)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for blob, entry in zip(blobs, manifest["projections"]):
        (out_dir / entry["file"]).write_bytes(blob)
    (out_dir / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


@dataclass
class DecodeOutcome:
    spec: CodeSpec
    payload: bytes | None
    grid: DataGrid
    report: DecodeReport
    katz: bool
    payload_len: int


def _spec_from(header: container.ContainerHeader, manifest: dict | None) -> CodeSpec:
    if header.construction is Construction.CUSTOM:
        if manifest is None:
            raise StructuralError("custom direction sets need manifest.json to rebuild the code")
        dirs = [Direction(e["p"], e["q"]) for e in sorted(manifest["projections"], key=lambda e: e["index"])]
        return make_spec(Construction.CUSTOM, header.n, header.k, header.b, header.width, directions=dirs)
    return make_spec(header.construction, header.n, header.k, header.b, header.width, q_e=header.q_e)


def decode_blobs(blobs: Sequence[bytes], manifest: dict | None = None) -> DecodeOutcome:
    """Decode from container bytes; ``manifest`` adds body CRC checks."""
    if not blobs:
        raise StructuralError("no projection containers supplied")
    body_crcs = {}
    if manifest is not None:
        body_crcs = {e["index"]: e["body_crc32"] for e in manifest["projections"]}
    headers, projections = [], []
    for blob in blobs:
        header, proj = container.parse(blob)
        expected = body_crcs.get(header.index)
        if expected is not None and container.body_crc(blob) != expected:
            raise CorruptionError(f"body CRC mismatch for projection {header.index}")
        headers.append(header)
        projections.append(proj)
    key = headers[0].code_key()
    for h in headers[1:]:
        if h.code_key() != key:
            raise CorruptionError(f"projection {h.index} belongs to a different code instance")
    spec = _spec_from(headers[0], manifest)
    for h in headers:
        if spec.directions[h.index] != h.direction:
            raise CorruptionError(f"projection {h.index} direction {h.direction} does not fit the code")
    grid, report = decode(spec, projections)
    payload_len = headers[0].payload_len
    payload = grid.to_bytes(payload_len) if report.success else None
    katz = katz_holds([p.direction for p in projections], spec.b, spec.k)
    return DecodeOutcome(spec, payload, grid, report, katz, payload_len)


def decode_paths(paths: Sequence[Path]) -> DecodeOutcome:
    """Decode from a directory of containers or an explicit list of files."""
    paths = [Path(p) for p in paths]
    from_dir = len(paths) == 1 and paths[0].is_dir()
    root = paths[0] if from_dir else (paths[0].parent if paths else Path("."))
    manifest_path = root / MANIFEST
    manifest = json.loads(manifest_path.read_text()) if manifest_path.exists() else None
    if not from_dir:
        files = paths
    elif manifest is not None:
        # only the containers this manifest describes; leftovers from older runs are ignored
        files = [root / e["file"] for e in manifest["projections"] if (root / e["file"]).exists()]
    else:
        files = sorted(root.glob("proj_*.ambx"))
    return decode_blobs([f.read_bytes() for f in files], manifest)
