from pathlib import Path

from hyperfact.cli import main
from hyperfact.core import as_restrict
from hyperfact.extend import factorize
from hyperfact.hf import read_hf, write_hf
from hyperfact.verify import check_full

FIX = Path(__file__).parent / "fixtures"


def test_verify_intro6():
    assert main(["verify", "--in", str(FIX / "intro6.hf")]) == 0


def test_verify_partial(capsys):
    assert main(["verify", "--in", str(FIX / "partial9.hf")]) == 1
    assert main(["verify", "--partial", "--in", str(FIX / "partial9.hf")]) == 0


def test_oracle_negative(capsys):
    code = main(["oracle-extend", "--in", str(FIX / "intro6.hf"), "--n", "9"])
    assert code == 1
    assert "no extension exists" in capsys.readouterr().err


def test_oracle_exhausted(tmp_path):
    path = tmp_path / "one.hf"
    path.write_text("hf1 kind=complete n=9 h=3 r=1\n1: 1 2 3\n")
    assert main(["oracle-extend", "--in", str(path), "--node-budget", "3"]) == 3


def test_gen_then_verify(tmp_path):
    out = tmp_path / "k8.hf"
    assert main(["gen", "--n", "8", "--h", "4", "--r", "1", "-o", str(out)]) == 0
    assert main(["verify", "--in", str(out)]) == 0
    assert read_hf(out).k == 35


def test_gen_inadmissible():
    assert main(["gen", "--n", "8", "--h", "3"]) == 2


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.hf"
    bad.write_text("hf1 kind=complete n=6 h=3 r=1\n3: 1 1 2\n")
    assert main(["verify", "--in", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_extend_generic_modes(tmp_path, capsys):
    out = tmp_path / "x.hf"
    src = str(FIX / "intro6.hf")
    assert main(["extend", "--in", src, "--n", "12", "--budget", "4", "-o", str(out)]) == 0
    assert check_full(read_hf(out)).ok
    assert main(["extend", "--in", src, "--n", "9", "--budget", "2"]) == 1


def test_extend_k4(tmp_path):
    src = tmp_path / "p.hf"
    src.write_text("hf1 kind=complete n=28 h=4 r=1 m=5\n1: 1 2 3 4\n")
    # only partially colored on [5]: the h=4 construction refuses it
    assert main(["extend", "--in", str(src)]) == 2


def test_conditions_and_outside(tmp_path):
    path = tmp_path / "r.hf"
    write_hf(as_restrict(factorize(9, 3, 1).factorization, {1, 2}), path)
    assert main(["conditions", "--in", str(path)]) == 0
    bare = tmp_path / "bare.hf"
    bare.write_text("hf1 kind=restrict n=9 h=3 r=1 V=1\n1: 2 3 4\n")
    assert main(["conditions", "--in", str(bare)]) == 1
    out = tmp_path / "o.hf"
    assert main(["extend", "--in", str(path), "-o", str(out)]) == 0
    assert check_full(read_hf(out)).ok
    assert main(["conditions", "--in", str(FIX / "intro6.hf")]) == 2


def test_missing_file():
    assert main(["verify", "--in", "/nonexistent/file.hf"]) == 2


def test_usage_error():
    assert main(["frobnicate"]) == 2
