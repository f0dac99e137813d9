from pathlib import Path

import pytest

from phigamma import ParseError, ValidationError, parse_file, parse_text, serialize
from phigamma.c3 import TwoGenModule
from phigamma.fileformat import modules_equal

SAMPLES = sorted((Path(__file__).parent.parent / "sample_modules").glob("*.pgm"))

GOOD = """phigamma v1
p = 3
n = 1
chi = 2
rank = 1
phi:
  (1,1): 1
gamma:
  (1,1): 1
"""


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_round_trip(path):
    M = parse_file(str(path))
    again = parse_text(serialize(M))
    assert modules_equal(M, again)
    assert serialize(again) == serialize(M)


def test_twogen_sample_parses_as_two_generator():
    M = parse_file(str(Path(__file__).parent.parent / "sample_modules" / "twogen.pgm"))
    assert isinstance(M, TwoGenModule)


def test_big_o_entries_keep_precision():
    text = GOOD.replace("phi:\n  (1,1): 1", "phi:\n  (1,1): 1 + O(pi^30)")
    M = parse_text(text)
    assert M.Phi[0][0].hi == 29
    assert "O(pi^30)" in serialize(M)


@pytest.mark.parametrize("text,line", [
    ("phigamma v2\n", 1),
    (GOOD.replace("chi = 2", "chi = two"), 4),
    (GOOD.replace("  (1,1): 1\ngamma", "  (1,1): 1 +* pi\ngamma"), 7),
    (GOOD.replace("(1,1): 1\ngamma", "(2,1): 1\ngamma"), 7),
    (GOOD + "bogus line\n", 10),
    (GOOD.replace("rank = 1\n", ""), None),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    if line is not None:
        assert info.value.line == line


def test_column_points_into_entry():
    with pytest.raises(ParseError) as info:
        parse_text(GOOD.replace("  (1,1): 1\ngamma", "  (1,1): 1 +* pi\ngamma"))
    assert info.value.column > len("  (1,1): ")


def test_validation_failure():
    with pytest.raises(ValidationError):
        parse_text(GOOD.replace("gamma:\n  (1,1): 1", "gamma:\n  (1,1): 1 + pi"))


def test_non_primitive_chi():
    with pytest.raises(ValidationError):
        parse_text(GOOD.replace("chi = 2", "chi = 4"))
