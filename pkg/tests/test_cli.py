import csv
import io
import json

import pytest

from euler_adic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eulerian_dump(capsys):
    code, out, _ = run(capsys, "eulerian", "--max-n", "6", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["rows"][0] == ["1"]
    assert doc["rows"][5][3] == "302"
    assert doc["row_sum_check"] == "pass"


def test_dim_flags_literal(capsys):
    code, out, _ = run(capsys, "dim", "--cylinder", "L1", "--n", "2", "--k", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["formula_slot"] == doc["oracle_graph"] == doc["oracle_permutations"] == "2"
    assert doc["formula_literal"] == "3"
    assert doc["literal_agrees"] is False


def test_dim_literal_variant_is_a_mismatch(capsys):
    code, _, _ = run(capsys, "dim", "--cylinder", "L1", "--n", "2", "--k", "1", "--variant", "literal")
    assert code == 2


def test_dim_2341(capsys):
    code, out, _ = run(capsys, "dim", "--cylinder", "L1,R1,R1", "--n", "8", "--k", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["formula_slot"] == doc["oracle_graph"] == doc["oracle_permutations"]


def test_ratio_csv(capsys):
    code, out, _ = run(capsys, "ratio", "--cylinder-a", "213", "--cylinder-b", "123", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [int(r["n"]) for r in rows] == [10, 20, 40, 80]
    devs = [float(r["abs_dev"]) for r in rows]
    assert devs == sorted(devs, reverse=True)


def test_ratio_same_column_is_one(capsys):
    code, out, _ = run(capsys, "ratio", "--cylinder-a", "213", "--cylinder-b", "132", "--format", "json")
    doc = json.loads(out)
    assert all(r["ratio_num"] == r["ratio_den"] == "1" for r in doc["rows"])


def test_ratio_explicit_schedule(capsys):
    code, out, _ = run(capsys, "ratio", "--cylinder-a", "2341", "--cylinder-b", "2341", "--schedule", "9:3,12:6")
    assert code == 0
    assert "9" in out


def test_codec_commands(capsys):
    assert run(capsys, "perm2path", "2341")[1].strip() == "L1,R1,R1"
    assert run(capsys, "path2perm", "L1,R1,R1")[1].strip() == "2341"


def test_check_commands(capsys):
    code, out, _ = run(capsys, "check", "--measure", "symmetric", "--depth", "7", "--kind", "invariance", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, "check", "--measure", "finite-rank", "--depth", "10")
    assert code == 0
    code, out, _ = run(capsys, "check", "--measure", "finite-rank", "--alpha1", "1/4,1/5", "--depth", "3", "--kind", "invariance")
    assert code == 2
    assert "fail" in out


def test_sample_and_walk_deterministic(capsys):
    a = run(capsys, "sample", "--m", "5", "--count", "7", "--seed", "4")[1]
    b = run(capsys, "sample", "--m", "5", "--count", "7", "--seed", "4")[1]
    assert a == b and len(a.splitlines()) == 7
    a = run(capsys, "walk", "--steps", "200", "--seed", "9", "--format", "csv")[1]
    b = run(capsys, "walk", "--steps", "200", "--seed", "9", "--format", "csv")[1]
    assert a == b and a.splitlines()[0] == "step,choice,k_n"


def test_sample_chi_square(capsys):
    code, out, _ = run(capsys, "sample", "--m", "3", "--count", "3000", "--seed", "1", "--chi-square", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_seed_is_mandatory_for_sampling(capsys):
    with pytest.raises(SystemExit) as info:
        main(["sample", "--m", "4"])
    assert info.value.code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["dim", "--cylinder", "X9", "--n", "3", "--k", "1"],
        ["dim", "--cylinder", "L2", "--n", "3", "--k", "1"],
        ["ratio", "--cylinder-a", "21", "--cylinder-b", "123"],
        ["perm2path", "1224"],
        ["check", "--measure", "finite-rank", "--alpha1", "1/3", "--depth", "5"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 1


def test_output_file(tmp_path, capsys):
    target = tmp_path / "ratios.csv"
    assert main(["ratio", "--cylinder-a", "213", "--cylinder-b", "123", "--n", "10,20", "--format", "csv", "-o", str(target)]) == 0
    assert target.read_text().startswith("n,k,dim_F")
