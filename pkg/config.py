"""Configuration settings for nahmscan."""

import os
from pathlib import Path

from dotenv import dotenv_values, load_dotenv

from utils.exceptions import ConfigurationError, DataLoadError
from utils.logging import get_logger, log_exception

# Setup logger
logger = get_logger(__name__)

# Load environment variables (a missing .env file is fine)
try:
    load_dotenv()
except Exception as e:
    log_exception(logger, e, "loading environment variables")
    raise ConfigurationError("Failed to load environment variables") from e


def _env_int(name: str, default: int, minimum: int) -> int:
    """Read an integer setting from the environment.

    Args:
        name: Environment variable name
        default: Value used when the variable is unset or empty
        minimum: Smallest accepted value

    Returns:
        The validated integer

    Raises:
        ConfigurationError: If the value is not an integer or is below minimum

    """
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigurationError(f"{name} must be at least {minimum}, got {value}")
    return value


# Precision settings (decimal digits)
MIN_DIGITS: int = 30
DEFAULT_DIGITS: int = _env_int("NAHMSCAN_DIGITS", 120, MIN_DIGITS)
SCREEN_DIGITS: int = _env_int("NAHMSCAN_SCREEN_DIGITS", 60, MIN_DIGITS)

# Series settings
DEFAULT_ORDER: int = 300
MAX_ENUMERATION_ORDER: int = 80  # brute-force partition oracle
PARTITION_CHECK_ORDER: int = 60

# Asymptotic expansion settings
DEFAULT_P: int = 4
MAX_P: int = 6

# Search settings
DEFAULT_MAX_DEN: int = 10**6
CPRIME_DISPLAYED_RANGE: tuple[int, int] = (0, 6)
MAX_TERMS: int = 3

# Paths
CORPUS_DIR: Path = Path(__file__).parent / "data" / "corpus"
CORPUS_FILES: list[str] = [
    "families.json",  # (A, J) families with their product-side congruence data
    "identities.json",  # sum sides and product sides per identity
]

LOG_LEVEL: str = os.getenv("NAHMSCAN_LOG_LEVEL", "WARNING")


def validate_corpus_files(corpus_files: list[str], base_path: Path | None = None) -> list[Path]:
    """Validate that all corpus files exist and are readable.

    Args:
        corpus_files: List of corpus file names
        base_path: Directory to resolve them against (defaults to CORPUS_DIR)

    Returns:
        List of validated Path objects

    Raises:
        DataLoadError: If any file is missing or unreadable

    """
    base = base_path or CORPUS_DIR
    validated_files = []

    for file_name in corpus_files:
        full_path = base / file_name
        if not full_path.exists():
            raise DataLoadError(f"Corpus file not found: {full_path}")
        if not full_path.is_file():
            raise DataLoadError(f"Path is not a file: {full_path}")
        if full_path.suffix.lower() != ".json":
            logger.warning(f"Corpus file does not have .json extension: {full_path}")

        try:
            with open(full_path, encoding="utf-8") as f:
                f.read(1)
        except Exception as e:
            raise DataLoadError(f"Cannot read corpus file {full_path}: {e}") from e

        validated_files.append(full_path)
        logger.debug(f"Validated corpus file: {full_path}")

    return validated_files


def load_config_file(path: Path) -> dict[str, str]:
    """Read a key-value run configuration file.

    The format is the dotenv one: one ``KEY=value`` per line, keys mirroring
    the command-line flags (``DIGITS=120``, ``ORDER=300``, ``RANGE=0 6``).

    Args:
        path: Path to the file

    Returns:
        Mapping of lower-case flag names (dashes as underscores) to raw strings

    Raises:
        ConfigurationError: If the file is missing or cannot be parsed

    """
    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}")

    try:
        raw = dotenv_values(path)
    except Exception as e:
        log_exception(logger, e, f"reading config file {path}")
        raise ConfigurationError(f"Failed to parse config file {path}") from e

    values = {}
    for key, value in raw.items():
        if value is None:
            raise ConfigurationError(f"Config key {key!r} has no value", details=str(path))
        values[key.strip().lower().replace("-", "_")] = value.strip()

    logger.debug(f"Loaded {len(values)} settings from {path}")
    return values
