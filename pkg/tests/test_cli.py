import csv
import json
from fractions import Fraction

import pytest

from trigl1 import cli
from trigl1.cli import main, parse_h, sweep_grid
from trigl1.closed_forms import InconsistencyError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fields(text):
    return dict(line.split(None, 1) for line in text.strip().splitlines())


def test_parse_h():
    assert parse_h("3/16") == Fraction(3, 16)
    assert parse_h("0.25") == 0.25
    with pytest.raises(Exception):
        parse_h("1/0")


def test_en_chi_closed(capsys):
    code, out, _ = run(capsys, "en-chi", "--n", "8", "--h", "3/16")
    f = fields(out)
    assert code == 0
    assert f["value"].startswith("0.333333333")
    assert f["method"] == "closed_form"


def test_en_chi_theoremB(capsys):
    code, out, _ = run(capsys, "en-chi", "--n", "8", "--h", "1/8")
    f = fields(out)
    assert f["method"] == "theoremB"
    assert f["value"][:14] == "0.379073165372"


def test_en_chi_oracle(capsys):
    code, out, _ = run(capsys, "en-chi", "--n", "4", "--h", "1/8", "--j", "2", "--oracle",
                       "--grid", "4096", "--json")
    data = json.loads(out)
    assert code == 0 and data["method"] == "lp_oracle"
    assert abs(data["value"] - 0.5) < 2e-3


def test_en_chi_bad_args(capsys):
    assert run(capsys, "en-chi", "--n", "1", "--h", "0.2")[0] == 2
    assert run(capsys, "en-chi", "--n", "4", "--h", "-0.2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["en-chi", "--n", "4", "--h", "abc"])
    assert exc.value.code == 2


def test_en_chi_inconsistency(capsys, monkeypatch):
    def boom(n, h):
        raise InconsistencyError("ceiling exceeded")
    monkeypatch.setattr(cli, "en_chi", boom)
    code, _, err = run(capsys, "en-chi", "--n", "8", "--h", "0.6")
    assert code == 3 and "inconsistency" in err


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_sweep_table(tmp_path, capsys):
    out = tmp_path / "psi8.csv"
    code, _, _ = run(capsys, "sweep", "--n", "8", "--h-min", "0.01", "--h-max", "1",
                     "--steps", "200", "--out", str(out))
    rows = read_csv(out)
    assert code == 0 and len(rows) == 200
    hs = [float(r["h"]) for r in rows]
    assert hs == sorted(hs)
    for r in rows:
        h, e, he = float(r["h"]), float(r["E"]), float(r["hE"])
        assert abs(he - h * e) <= 1e-14
        if h <= 1 / 16:
            assert e == 1.0
    assert float(rows[-1]["h"]) == 1.0 and float(rows[-1]["hE"]) == 0.0
    again = tmp_path / "again.csv"
    run(capsys, "sweep", "--n", "8", "--h-min", "0.01", "--h-max", "1", "--steps", "200",
        "--out", str(again))
    assert out.read_bytes() == again.read_bytes()


def test_sweep_lattice_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "8", "--h-min", "1/16", "--h-max", "1", "--steps", "16")
    rows = list(csv.DictReader(out.splitlines()))
    assert sweep_grid("1/16", "1", 16)[2] == Fraction(3, 16)
    for j in range(2, 9):
        r = rows[2 * j - 2]
        assert float(r["h"]) == (2 * j - 1) / 16
        assert r["method"] == "closed_form"
        assert abs(float(r["E"]) - 1 / (2 * 8 * float(r["h"]))) <= 1e-6


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "4", "--h-min", "0.1", "--h-max", "0.5",
                       "--steps", "3", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["rows"]) == 3
    assert set(data["metadata"]) >= {"grid", "method", "timestamp"}


def test_sweep_errors(tmp_path, capsys):
    assert run(capsys, "sweep", "--n", "8", "--h-min", "0.5", "--h-max", "0.2", "--steps", "5")[0] == 2
    assert run(capsys, "sweep", "--n", "8", "--h-min", "0.1", "--h-max", "0.2", "--steps", "1")[0] == 2
    bad = tmp_path / "missing" / "x.csv"
    assert run(capsys, "sweep", "--n", "8", "--h-min", "0.1", "--h-max", "0.2", "--steps", "3",
               "--out", str(bad))[0] == 4


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    lines = {l.split()[0]: l.split() for l in out.strip().splitlines()}
    assert code == 0
    assert abs(float(lines["1-2v0"][1]) - 0.3817350529) < 1e-9
    assert abs(float(lines["sum"][2]) - 3.408223443) < 1e-9
    assert lines["F_4"][1].startswith("0.208333333")


def test_constants_json(capsys):
    data = json.loads(run(capsys, "constants", "--json")[1])
    names = [d["name"] for d in data]
    assert names[:2] == ["v0", "1-2v0"] and "sec(1)+tan(1)" in names


def test_verify_closed_forms(capsys):
    code, out, _ = run(capsys, "verify", "closed-forms")
    assert code == 0
    assert out.count("[PASS]") == 4
