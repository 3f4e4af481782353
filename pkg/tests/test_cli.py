import csv
import json

import pytest

from laurentgap.cli import run
from laurentgap.lattice import IntLaurentPoly, RealSummableArray
from laurentgap.parse import parse_poly
from laurentgap.quasi_inverse import QuasiInverse


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def xm2(tmp_path):
    path = tmp_path / "xm2.json"
    path.write_text(parse_poly("x-2").to_json())
    return str(path)


def test_classify(capsys):
    code, out, _ = call(capsys, "classify", "--f", "x^2-x-1")
    assert code == 0 and json.loads(out)["verdict"] == "atoral"
    code, out, _ = call(capsys, "classify", "--f", "x^4-x^3-x^2-x+1")
    assert json.loads(out)["verdict"] == "toral"
    code, out, _ = call(capsys, "classify", "--f", "3+x+y")
    assert json.loads(out)["verdict"] == "atoral"


def test_gapconst(capsys, xm2):
    code, out, _ = call(capsys, "gapconst", "--f", xm2, "--H", "1")
    obj = json.loads(out)
    assert code == 0 and (obj["R"], obj["M"]) == (3, 9)


def test_frobenius(capsys):
    code, out, _ = call(capsys, "lacunary", "frobenius", "--n", "2")
    obj = json.loads(out)
    assert code == 0 and obj["identity_verified"] and len(obj["witnesses"]) == 2


def test_usage_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "gapconst", "--f", str(bad), "--H", "1")[0] == 2
    assert call(capsys, "gapconst", "--f", str(tmp_path / "missing.json"), "--H", "1")[0] == 2
    assert call(capsys, "classify", "--f", "x+")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "lacunary", "frobenius", "--n", "40")[0] == 2
    assert call(capsys, "qinv", "--f", "1+x+y")[0] == 2
    assert call(capsys, "gapconst", "--f", "x-2")[0] == 2


def test_qinv_round_trip_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call(capsys, "qinv", "--f", "3+x+y", "--out", str(a), "--radius", "4")[0] == 0
    assert call(capsys, "qinv", "--f", "3+x+y", "--out", str(b), "--radius", "4")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    obj = json.loads(a.read_text())
    q = QuasiInverse.from_json_obj(obj)
    again = q.to_json_obj()
    assert all(again[k] == obj[k] for k in again)
    code, out, _ = call(capsys, "gapconst", "--f", "3+x+y", "--qinv", str(a), "--H", "3")
    assert code == 0 and json.loads(out)["R"] == 6


def test_split_and_trace(capsys, tmp_path, xm2):
    r = tmp_path / "r.json"
    r.write_text((parse_poly("x-2") * parse_poly("1+x^20")).to_json())
    out = tmp_path / "cert.json"
    code, _, _ = call(capsys, "split", "--f", xm2, "--r", str(r), "--H", "2", "--out", str(out),
                      "--plot", str(tmp_path / "split.png"))
    cert = json.loads(out.read_text())
    assert code == 0 and cert["M"] == 12 and len(cert["clusters"]) == 2 and cert["anomalies"] == []
    assert (tmp_path / "split.png").stat().st_size > 0
    code, out, _ = call(capsys, "trace", "--f", "x-2", "--p", "x-2", "--q", "x^21-2x^20", "--H", "2")
    assert code == 0 and json.loads(out)["passed"]


def test_split_anomaly_exit_code(capsys, tmp_path):
    f = parse_poly("1-x")
    fake = QuasiInverse(f=f, fsharp=RealSummableArray.from_terms(1, {(0,): 1.0}), h=f, residual=0.0,
                        tail_table=[1.0, 0.0], grid_size=0, experimental=True)
    qpath = tmp_path / "q.json"
    qpath.write_text(json.dumps(fake.to_json_obj()))
    out = tmp_path / "cert.json"
    code, _, _ = call(capsys, "split", "--f", "1-x", "--r", "1-x^30", "--qinv", str(qpath), "--out", str(out))
    assert code == 1
    anomaly = json.loads((tmp_path / "cert.anomaly.json").read_text())
    assert anomaly["clusters_not_divisible"] == [0, 1]


def test_uv_sample_csv(capsys, tmp_path):
    path = tmp_path / "uv.csv"
    code, _, _ = call(capsys, "uv-sample", "--f", "1+x+y", "--out", str(path), "--plot", str(tmp_path / "uv.png"))
    rows = list(csv.reader(path.open()))
    assert code == 0 and rows[0] == ["t1", "t2", "abs_f"] and len(rows) > 2
    assert all(float(r[2]) < 1e-9 for r in rows[1:])


def test_certify_empty(capsys):
    code, out, _ = call(capsys, "certify-empty", "--f", "3+x+y", "--N", "256")
    assert code == 0 and float(json.loads(out)["certified_min"]) >= 0.5


def test_lacunary_verify_and_msearch(capsys):
    code, out, _ = call(capsys, "lacunary", "verify", "--f", "3+x+y", "--family", "1", "x",
                        "--points", "[[0,0],[10,0]]", "--M", "10")
    obj = json.loads(out)
    assert code == 0 and obj["ok"] and obj["selections"] == 4 and "scope" in obj
    code, out, _ = call(capsys, "--seed", "3", "lacunary", "msearch", "--f", "x-2", "--family", "1", "x", "x^2",
                        "--M-max", "6", "--trials", "5")
    obj = json.loads(out)
    assert code == 0 and obj["M_empirical"] <= obj["gap_engine_M"]
    assert call(capsys, "lacunary", "verify", "--f", "x-2", "--family", "1", "--points", "[0, 1]", "--M", "5")[0] == 2


@pytest.mark.parametrize("example", ["exam-1-4", "gap-x-minus-2", "frobenius"])
def test_demos(capsys, tmp_path, example):
    run_dir = tmp_path / example
    code, out, _ = call(capsys, "demo", example, "--out", str(run_dir))
    manifest = json.loads((run_dir / "manifest.json").read_text())
    assert code == 0 and manifest["ok"]
    for name in manifest["artifacts"]:
        assert (run_dir / name).exists()
    if example == "gap-x-minus-2":
        assert {"qinv.json", "gapconst.json", "split.json", "trace.json", "tail.png"} <= set(manifest["artifacts"])
        assert manifest["summary"]["gap_constants"]["1"] == {"R": 3, "M": 9}
