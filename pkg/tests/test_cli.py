import io
import subprocess
import sys
from pathlib import Path

import pytest

from phigamma.cli import run

ROOT = Path(__file__).parent.parent
SAMPLES = ROOT / "sample_modules"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate_ok():
    code, out, _ = call("validate", str(SAMPLES / "trivial.pgm"))
    assert code == 0


def test_h_trivial():
    code, out, _ = call("h", str(SAMPLES / "trivial.pgm"))
    assert code == 0
    assert "H^0 = Z/3" in out and "H^1 = Z/3 (+) Z/3" in out and "H^2 = 0" in out


def test_machine_blocks():
    code, out, _ = call("h", "--machine", str(SAMPLES / "omega.pgm"))
    assert code == 0
    assert out.startswith("begin cohomology") and "lengths = 0 2 1" in out and "end cohomology" in out


@pytest.mark.parametrize("argv", [
    ("euler", "rank2.pgm"),
    ("dual", "trivial.pgm"),
    ("pair", "trivial.pgm"),
    ("c3", "h0", "twogen.pgm"),
])
def test_verbs_succeed(argv):
    args = [str(SAMPLES / a) if a.endswith(".pgm") else a for a in argv]
    code, out, err = call(*args)
    assert code == 0, err


def test_c3_verify_and_witt_and_oracle():
    assert call("c3", "verify", "--a", "2")[0] == 0
    assert call("witt", "selftest")[0] == 0
    assert call("oracle", "theorem2", "--cases", "8")[0] == 0


def test_negative_window_argument():
    code, out, _ = call("h", "--window", "-8:8", str(SAMPLES / "trivial.pgm"))
    assert code == 0


def test_exit_code_validation(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_text((SAMPLES / "trivial.pgm").read_text().replace("chi = 2", "chi = 4"))
    assert call("validate", str(bad))[0] == 1


def test_exit_code_no_stabilization():
    assert call("h", "--max-window", "4", str(SAMPLES / "trivial.pgm"))[0] == 2


def test_exit_code_parse(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_text("not a module\n")
    code, _, err = call("h", str(bad))
    assert code == 3
    assert "line 1" in err


def test_usage_error_is_parse_exit():
    assert call("nonsense-verb")[0] == 3


@pytest.mark.parametrize("argv", [
    ("h", "rank2.pgm"),
    ("pair", "omega.pgm"),
    ("oracle", "theorem2", "--cases", "6", "--seed", "4"),
])
def test_deterministic(argv):
    args = [str(SAMPLES / a) if a.endswith(".pgm") else a for a in argv]
    assert call(*args) == call(*args)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "phigamma", "h", str(SAMPLES / "trivial.pgm")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "H^0 = Z/3" in proc.stdout
