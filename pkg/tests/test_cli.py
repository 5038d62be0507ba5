import json
from pathlib import Path

from cmwild.cli import main, parse_modules

FIX = Path(__file__).resolve().parent.parent / "fixtures"
RING = str(FIX / "twisted-cubic.ring")
L = str(FIX / "quadric-ulrich.mod")
L2 = str(FIX / "quadric-ulrich-other.mod")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hvector_and_genus(capsys):
    assert run(capsys, "hvector", RING)[:2] == (0, "(1, 2)\n")
    assert run(capsys, "genus", RING)[:2] == (0, "0\n")
    assert run(capsys, "genus", "--hvector", "1,1,1")[:2] == (0, "1\n")
    assert run(capsys, "genus", "--hvector", "1,1,1,1")[:2] == (0, "3\n")


def test_gb_json(capsys):
    code, out, _ = run(capsys, "gb", "--json", RING)
    assert code == 0
    assert len(json.loads(out)["groebner_basis"]) == 3


def test_hom_and_ext_between_rulings(capsys):
    code, out, _ = run(capsys, "hom", L, L2)
    assert code == 0 and out.strip() == "Hom_0: 0"
    code, out, _ = run(capsys, "ext", "--json", "--index", "1", L, L2)
    assert code == 0
    assert all(row[-1] == 0 for row in json.loads(out)["ext"])


def test_betti_follows_matrix_factorization(capsys):
    code, out, _ = run(capsys, "betti", "--json", L)
    assert code == 0
    betti = json.loads(out)["betti"]
    assert betti[:4] == [[0, 0, 2], [1, 1, 2], [2, 2, 2], [3, 3, 2]]


def test_ulrich(capsys):
    code, out, _ = run(capsys, "ulrich", "--json", L)
    assert code == 0 and json.loads(out)["ulrich"] is True


def test_kronecker_prints_seed(capsys):
    code, out, err = run(capsys, "kronecker", "--w", "3", "--dims", "2,2", "--seed", "7", "--json")
    assert code == 0
    assert err == ""  # an explicit seed is not echoed
    obj = json.loads(out)
    assert obj["seed"] == 7 and obj["rep"]["dims"] == [2, 2]
    assert run(capsys, "kronecker", "--w", "3", "--dims", "2,2", "--seed", "7", "--json")[1] == out


def test_list_fixtures(capsys):
    code, out, _ = run(capsys, "list-fixtures")
    assert code == 0
    assert "scroll-d3" in out and "designed-failure" in out


def test_experiment_exit_codes(capsys):
    assert run(capsys, "experiment", "rnc3")[0] == 0
    assert run(capsys, "experiment", "designed-failure")[0] == 1
    assert run(capsys, "experiment", "no-such-fixture")[0] == 2


def test_experiment_json_is_sorted_and_stable(capsys):
    _, a, _ = run(capsys, "experiment", "--json", "rnc3")
    _, b, _ = run(capsys, "experiment", "--json", "rnc3")
    assert a == b
    assert json.loads(a)


def test_usage_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "no-such-command")[0] == 2
    bad = tmp_path / "bad.ring"
    bad.write_text("ring p=32003 vars x,y\nideal x*/y\n")
    assert run(capsys, "hvector", str(bad))[0] == 2
    assert run(capsys, "hvector", str(tmp_path / "missing.ring"))[0] == 2


def test_module_file_parser():
    text = (FIX / "quadric-ulrich.mod").read_text()
    ring, mods = parse_modules(text)
    assert ring.variables == ("x", "y", "z", "w")
    assert len(mods) == 1 and mods[0].ngens == 2


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "cmwild.cfg"
    cfg.write_text("seed = 11\n")
    code, out, err = run(capsys, "kronecker", "--config", str(cfg), "--w", "2", "--dims", "1,1",
                         "--json")
    assert code == 0 and json.loads(out)["seed"] == 11


def test_drawn_seed_is_reported(capsys):
    code, out, err = run(capsys, "kronecker", "--w", "2", "--dims", "1,1", "--json")
    assert code == 0
    assert err.startswith("seed: ")
    assert int(err.split()[1]) == json.loads(out)["seed"]
