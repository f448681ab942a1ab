import pytest

from qseries.io import format_series, parse_series, read_series, write_series
from qseries.series import QSeriesTrunc
from utils.exceptions import DataLoadError


def test_written_series_reads_back(tmp_path):
    series = QSeriesTrunc.from_coefficients([1, 0, -3, 12345678901234567890])
    path = tmp_path / "out" / "series.txt"
    write_series(series, path)
    assert path.read_text().splitlines()[2] == "2 -3"
    assert read_series(path) == series


def test_comments_and_blank_lines_are_skipped():
    text = "# kr-1 to q^2\n0 1\n\n1 1\n2 1\n"
    assert parse_series(text).coefficients() == [1, 1, 1]


def test_format_lists_every_coefficient():
    assert format_series(QSeriesTrunc.from_coefficients([1, 0])) == "0 1\n1 0\n"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "0 1\n2 1\n",
        "0 1 7\n",
        "0 x\n",
        "1 1\n",
    ],
)
def test_malformed_input_is_rejected(text):
    with pytest.raises(DataLoadError):
        parse_series(text)


def test_missing_file(tmp_path):
    with pytest.raises(DataLoadError):
        read_series(tmp_path / "absent.txt")
