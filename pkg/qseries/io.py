"""Line-based text format for truncated series: one ``n coefficient`` pair per line."""

from pathlib import Path

from qseries.series import QSeriesTrunc
from utils.exceptions import DataLoadError
from utils.logging import get_logger, log_exception

logger = get_logger(__name__)


def format_series(series: QSeriesTrunc) -> str:
    """Render every known coefficient, ascending n."""
    return "".join(f"{n} {c}\n" for n, c in enumerate(series.coefficients()))


def parse_series(text: str, source: str = "<string>") -> QSeriesTrunc:
    """Parse the ``n coefficient`` format; n must run 0, 1, 2, ... without gaps."""
    coeffs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise DataLoadError(f"{source}:{lineno}: expected 'n coefficient', got {line!r}")
        try:
            n, value = int(fields[0]), int(fields[1])
        except ValueError as e:
            raise DataLoadError(f"{source}:{lineno}: non-integer field in {line!r}") from e
        if n != len(coeffs):
            raise DataLoadError(f"{source}:{lineno}: expected n={len(coeffs)}, got n={n}")
        coeffs.append(value)
    if not coeffs:
        raise DataLoadError(f"{source}: no coefficients found")
    return QSeriesTrunc(tuple(coeffs))


def write_series(series: QSeriesTrunc, path: Path) -> None:
    """Write a series to ``path``."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_series(series), encoding="utf-8")
    except OSError as e:
        log_exception(logger, e, f"writing series to {path}")
        raise DataLoadError(f"Cannot write series file {path}") from e
    logger.debug(f"Wrote {series.precision} coefficients to {path}")


def read_series(path: Path) -> QSeriesTrunc:
    """Read a series written by write_series."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        log_exception(logger, e, f"reading series from {path}")
        raise DataLoadError(f"Cannot read series file {path}") from e
    return parse_series(text, source=str(path))
