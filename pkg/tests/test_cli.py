import hashlib
import shutil
import subprocess
import sys

import pytest

from nonselective import textformat
from nonselective.cache import ClassDataCache
from nonselective.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


@pytest.fixture
def fixture_copy(data_dir, tmp_path):
    for name in ("example_5_1.fixture", "example_5_2.fixture", "SHA256SUMS"):
        shutil.copy(data_dir / name, tmp_path / name)
    return tmp_path


def _reseal(directory):
    lines = []
    for name in ("example_5_1.fixture", "example_5_2.fixture"):
        digest = hashlib.sha256((directory / name).read_bytes()).hexdigest()
        lines.append(f"{digest}  {name}\n")
    (directory / "SHA256SUMS").write_text("".join(lines))


def test_analyze_example_1(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", "--field", str(data_dir / "example_5_1.field"),
                       "--fixture", str(data_dir / "example_5_1.fixture"), "--machine")
    m = machine(out)
    assert code == 0
    assert (m["t_B"], m["s_B"], m["family_size"]) == ("2", "1", "2")
    assert m["t_B.provenance"] == "fixture"
    assert m["discriminant.provenance"] == "computed"


def test_analyze_example_2(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", "--field", str(data_dir / "example_5_2.field"),
                       "--fixture", str(data_dir / "example_5_2.fixture"), "--machine")
    m = machine(out)
    assert (m["t_B"], m["s_B"], m["family_size"]) == ("3", "2", "2")


def test_analyze_class_number_one(capsys):
    code, out, _ = run(capsys, "analyze", "--coeffs=-2,0,1", "--machine")
    m = machine(out)
    assert code == 0 and m["t_B"] == "0" and m["family_size"] == "1"


def test_report_is_deterministic(capsys, data_dir):
    args = ["certify", "--field", str(data_dir / "example_5_1.field"), "--fixture", str(data_dir / "example_5_1.fixture")]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_certify_example(capsys, data_dir):
    code, out, _ = run(capsys, "certify", "--field", str(data_dir / "example_5_1.field"),
                       "--fixture", str(data_dir / "example_5_1.fixture"), "--machine")
    m = machine(out)
    assert m["isospectral"] == "certified" and m["nonisometric"] == "certified"


def test_certify_split_algebra(capsys):
    code, out, _ = run(capsys, "certify", "--coeffs=-10,0,1", "--machine")
    assert machine(out)["isospectral"] == "not-applicable"


def test_selectivity_commands(capsys):
    code, out, _ = run(capsys, "selectivity", "--coeffs=-3,0,1", "--ramify-real", "1,2", "--radicand=-1")
    assert code == 0 and "verdict: Selective" in out and "1/2 of classes" in out
    code, out, _ = run(capsys, "selectivity", "--coeffs=-3,0,1", "--ramify-real", "1,2", "--omega-b", "0", "--omega-c", "4")
    assert "verdict: NotSelective" in out and "conductor-splits: fail" in out
    code, out, _ = run(capsys, "selectivity", "--coeffs=-10,0,1", "--ramify-real", "1", "--ramify-finite", "31:14,1",
                       "--radicand=-1")
    assert "verdict: NotSelective" in out and "no selective orders" in out


def test_family_command_anchors(capsys):
    code, out, _ = run(capsys, "family", "--coeffs=-15,0,1", "--ramify-real", "1,2", "--anchors", "1,1", "--machine")
    m = machine(out)
    assert m["family"] == "(1,1)"


def test_class_data_cache(capsys, tmp_path):
    args = ["class-data", "--coeffs=-10,0,1", "--cache-dir", str(tmp_path), "--machine"]
    code, first, _ = run(capsys, *args)
    m = machine(first)
    assert m["cache"] == "miss" and m["h"] == "2" and m["ray_order"] == "2"
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    raw = files[0].read_bytes()
    code, second, _ = run(capsys, *args)
    assert machine(second)["cache"] == "hit"
    assert first.replace("cache=miss", "cache=hit") == second
    assert files[0].read_bytes() == raw


def test_cache_round_trip(tmp_path):
    c = ClassDataCache(tmp_path)
    data = {"disc": 40, "h": 2, "class_group": [2], "fundamental_unit": ["3", "1"]}
    c.put(40, (1, 2), data)
    assert c.get(40, (1, 2)) == data
    assert c.get(40, ()) is None
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".tmp")]


def test_imaginary_class_data(capsys):
    code, out, _ = run(capsys, "class-data", "--coeffs=5,0,1", "--machine")
    assert code == 0 and machine(out)["h"] == "2"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "analyze", "--coeffs=-10,0,1", "--ramify-real", "1")[0] == 1
    assert run(capsys, "analyze", "--coeffs=6,13,0,-8,-1,1", "--ramify-real", "1,2,3,4")[0] == 2
    assert run(capsys, "analyze", "--coeffs=-10,0,1", "--max-prime-norm", "1")[0] == 3
    assert run(capsys, "analyze", "--coeffs=6,13,0,-8,-1,1", "--fixture", str(tmp_path / "missing.fixture"))[0] == 2
    assert run(capsys, "analyze", "--bogus")[0] == 1


def test_field_file_errors_have_line_numbers(capsys, tmp_path):
    f = tmp_path / "bad.field"
    f.write_text("# comment\nfield = [1, 0, 1\n")
    code, _, err = run(capsys, "analyze", "--field", str(f))
    assert code == 1 and ":2:" in err


def test_verify_paper_examples(capsys):
    code, out, _ = run(capsys, "verify-paper-examples")
    assert code == 0 and "result: pass" in out


def test_verify_detects_tampering(capsys, fixture_copy):
    path = fixture_copy / "example_5_1.fixture"
    path.write_text(path.read_text().replace("narrow = [2, 2]", "narrow = [2]"))
    code, _, err = run(capsys, "verify-paper-examples", "--data-dir", str(fixture_copy))
    assert code == 1 and "checksum" in err
    _reseal(fixture_copy)
    code, _, err = run(capsys, "verify-paper-examples", "--data-dir", str(fixture_copy))
    assert code == 1 and "divisor mismatch" in err


def test_verify_missing_fixture(capsys, fixture_copy):
    (fixture_copy / "example_5_2.fixture").unlink()
    assert run(capsys, "verify-paper-examples", "--data-dir", str(fixture_copy))[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nonselective", "analyze", "--coeffs=-2,0,1", "--machine"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "t_B=0" in res.stdout


def test_textformat_round_trip():
    data = {"field": [6, 13, 0, -8, -1, 1], "h": 1, "source": "x = y"}
    assert textformat.loads(textformat.dumps(data)) == data
    with pytest.raises(textformat.FormatError):
        textformat.loads("a = 1\na = 2\n")
