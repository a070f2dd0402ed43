from __future__ import annotations

import json

from mojette_bpxor.cli import EXIT_CORRUPT, EXIT_OK, EXIT_PARAMS, EXIT_STALLED, main


def test_gen_params(tmp_path, capsys):
    assert main(["gen-params", "--construction", "c35", "--n", "4", "--k", "6", "--b", "100", "--qe", "2"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["sigma"] == 3 and doc["reconstruction_size"] == 3
    assert [d["p"] for d in doc["directions"]] == [-3, -1, 1, 3]
    assert doc["findings"] == [] and doc["katz_minimal_survivors"] is True


def test_gen_params_bad_qe():
    assert main(["gen-params", "--construction", "c35", "--n", "4", "--k", "6", "--b", "10", "--qe", "3"]) == EXIT_PARAMS


def test_encode_decode_and_stall(tmp_path):
    src = tmp_path / "f.bin"
    src.write_bytes(bytes(range(256)) * 4)
    out = tmp_path / "enc"
    assert main(["encode", str(src), "--n", "6", "--k", "4", "--b", "8", "--out", str(out)]) == EXIT_OK
    for name in ("proj_0000.ambx", "proj_0003.ambx"):
        (out / name).unlink()
    rebuilt = tmp_path / "r.bin"
    report = tmp_path / "rep.json"
    assert main(["decode", str(out), "--out", str(rebuilt), "--report", str(report)]) == EXIT_OK
    assert rebuilt.read_bytes() == src.read_bytes()
    assert json.loads(report.read_text())["status"] == "success"

    (out / "proj_0001.ambx").unlink()
    assert main(["decode", str(out), "--out", str(tmp_path / "x.bin"), "--report", str(report)]) == EXIT_STALLED
    doc = json.loads(report.read_text())
    assert doc["status"] == "stalled" and doc["katz"] is False and doc["residual_unresolved"] > 0


def test_encode_too_large_payload(tmp_path):
    src = tmp_path / "big.bin"
    src.write_bytes(bytes(1000))
    assert main(["encode", str(src), "--n", "4", "--k", "2", "--b", "2", "--width", "1", "--out", str(tmp_path / "o")]) == EXIT_PARAMS


def test_decode_corrupt(tmp_path):
    src = tmp_path / "f.bin"
    src.write_bytes(b"payload")
    out = tmp_path / "enc"
    main(["encode", str(src), "--n", "4", "--k", "2", "--b", "2", "--out", str(out)])
    blob = bytearray((out / "proj_0002.ambx").read_bytes())
    blob[-1] ^= 0xFF
    (out / "proj_0002.ambx").write_bytes(bytes(blob))
    assert main(["decode", str(out), "--out", str(tmp_path / "x")]) == EXIT_CORRUPT
    assert main(["decode", str(tmp_path / "missing.ambx"), "--out", str(tmp_path / "x")]) == EXIT_CORRUPT


def test_custom_directions(tmp_path, capsys):
    assert main(["gen-params", "--dirs=-1,1;1,0;1,1", "--k", "3", "--b", "4"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert [d["length"] for d in doc["directions"]] == [6, 3, 6]
    assert {f["code"] for f in doc["findings"]} == {"katz-unsatisfied"}


def test_simulate_and_bounds(tmp_path):
    csv_path = tmp_path / "s.csv"
    args = ["simulate", "--n", "6", "--k", "3", "--b", "4", "--erasures", "3", "--trials", "5", "--out", str(csv_path)]
    assert main(args) == EXIT_OK
    assert csv_path.read_text().splitlines()[-1].startswith("summary,,1.000000")
    bounds_path = tmp_path / "b.csv"
    assert main(["bounds", "--rate", "1/2", "--k-min", "3", "--k-max", "20", "--out", str(bounds_path)]) == EXIT_OK
    text = bounds_path.read_text()
    assert "rate,k,required_n,classical_bound" in text and "classical_below_from_k=5" in text
    assert main(["bounds", "--qe", "3"]) == EXIT_PARAMS


def test_verify_single_code(capsys):
    assert main(["verify", "--n", "5", "--k", "3", "--b", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["pass"] is True
    assert main(["verify", "--construction", "c33", "--n", "3", "--k", "3", "--b", "4"]) == 1
