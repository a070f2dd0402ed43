from __future__ import annotations

import json

import pytest

from mojette_bpxor import Construction, CorruptionError, Direction, StructuralError, make_spec
from mojette_bpxor.codec import MANIFEST, decode_blobs, decode_paths, encode_bytes, encode_file


def test_bytes_round_trip_with_erasures():
    payload = bytes(range(200))
    spec = make_spec("c33", 6, 3, 5, width=16)
    blobs, manifest = encode_bytes(payload, spec)
    out = decode_blobs([blobs[5], blobs[0], blobs[3]], manifest)
    assert out.report.success and out.payload == payload and out.katz


def test_stalled_decode_has_no_payload():
    spec = make_spec("c33", 6, 3, 5, width=16)
    blobs, manifest = encode_bytes(b"hello", spec)
    out = decode_blobs(blobs[:2], manifest)
    assert out.payload is None and not out.katz


def test_empty_file_encodes_to_zero_bins():
    spec = make_spec("c33", 4, 2, 3, width=4)
    blobs, manifest = encode_bytes(b"", spec)
    out = decode_blobs(blobs, manifest)
    assert out.payload == b"" and manifest["payload_len"] == 0


def test_body_crc_mismatch_reported():
    spec = make_spec("c33", 4, 2, 3, width=4)
    blobs, manifest = encode_bytes(b"abcdef", spec)
    manifest["projections"][1]["body_crc32"] ^= 1
    with pytest.raises(CorruptionError, match="body CRC"):
        decode_blobs(blobs, manifest)


def test_mixed_code_instances_rejected():
    a, _ = encode_bytes(b"one", make_spec("c33", 4, 2, 3, width=4))
    b, _ = encode_bytes(b"other", make_spec("c33", 4, 2, 3, width=4))
    with pytest.raises(CorruptionError, match="different code"):
        decode_blobs([a[0], b[1]])


def test_custom_code_needs_manifest(tmp_path):
    dirs = [Direction(-1, 1), Direction(1, 0), Direction(1, 1)]
    spec = make_spec(Construction.CUSTOM, 3, 4, 3, width=2, directions=dirs)
    blobs, manifest = encode_bytes(b"xyz", spec)
    with pytest.raises(StructuralError):
        decode_blobs(blobs)
    assert decode_blobs(blobs, manifest).payload == b"xyz"


def test_files_and_manifest(tmp_path):
    src = tmp_path / "data.bin"
    src.write_bytes(b"0123456789" * 10)
    spec = make_spec("c35", 5, 4, 4, width=8, q_e=2)
    encode_file(src, spec, tmp_path / "out")
    manifest = json.loads((tmp_path / "out" / MANIFEST).read_text())
    assert manifest["construction"] == "C35" and len(manifest["projections"]) == 5
    assert decode_paths([tmp_path / "out"]).payload == src.read_bytes()
    files = [tmp_path / "out" / "proj_0001.ambx", tmp_path / "out" / "proj_0004.ambx"]
    assert decode_paths(files).payload == src.read_bytes()


def test_directory_decode_ignores_stale_containers(tmp_path):
    out = tmp_path / "out"
    old = tmp_path / "old.bin"
    old.write_bytes(b"x" * 50)
    encode_file(old, make_spec("c33", 8, 4, 4, width=8), out)
    new = tmp_path / "new.bin"
    new.write_bytes(b"fresh data")
    encode_file(new, make_spec("c33", 5, 3, 4, width=8), out)
    (out / "proj_0002.ambx").unlink()
    assert (out / "proj_0007.ambx").exists()
    assert decode_paths([out]).payload == b"fresh data"
