import pytest

from spandep.bench import COLUMNS, default_lengths, fit_slope, run


def test_fit_slope_exact():
    assert fit_slope([10, 20, 40], [1.0, 8.0, 64.0]) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        fit_slope([10], [1.0])


def test_table_columns():
    r = run("eisner1o", [5, 10], repeats=1, min_time=0.0)
    lines = r.table().splitlines()
    assert lines[0].split("\t") == list(COLUMNS)
    assert [ln.split("\t")[:3] for ln in lines[1:3]] == [["eisner1o", "5", "1"],
                                                          ["eisner1o", "10", "1"]]
    assert run("eisner1o", [3, 4], repeats=2, min_time=0.05).rows[0].repeats > 2
    assert lines[-1].startswith("# log-log slope")


def test_defaults():
    assert default_lengths("eisner-satta-span") == (10, 20, 40, 80)
    assert default_lengths("eisner1o") == (20, 40, 80, 160, 320)
    with pytest.raises(ValueError):
        run("eisner1o", [5], repeats=0)
