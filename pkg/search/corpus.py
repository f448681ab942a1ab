"""Built-in identity corpus and (A, J) families, plus user datum files."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from asymptotics.datum import Matrix, NahmDatum
from config import CORPUS_DIR, CORPUS_FILES, validate_corpus_files
from numerics.precision import as_fraction
from qseries.partitions import CONDITIONS
from qseries.products import ProductSpec
from utils.exceptions import DataLoadError, ValidationError
from utils.logging import get_logger, log_exception

logger = get_logger(__name__)


@dataclass(frozen=True)
class Family:
    """A fixed (A, J) with the product-side congruence data of its identities."""

    name: str
    A: Matrix
    J: tuple[int, ...]
    product_pairs: int
    product_modulus: int
    description: str = ""

    def datum(self, B: tuple[Any, ...], C: Any = 0) -> NahmDatum:
        """Datum of this family with the given linear term and constant."""
        return NahmDatum.create(A=self.A, B=B, C=C, J=self.J)


@dataclass(frozen=True)
class Identity:
    """Sum sides (each a list of data summed termwise) asserted equal to one product."""

    name: str
    family: str
    sum_sides: tuple[tuple[NahmDatum, ...], ...]
    product: ProductSpec
    condition: str | None = None


@dataclass(frozen=True)
class Corpus:
    families: dict[str, Family]
    identities: dict[str, Identity]

    def family(self, name: str) -> Family:
        try:
            return self.families[name]
        except KeyError as e:
            raise ValidationError(
                f"Unknown family: {name}", details=f"known: {sorted(self.families)}"
            ) from e

    def identity(self, name: str) -> Identity:
        try:
            return self.identities[name]
        except KeyError as e:
            raise ValidationError(
                f"Unknown identity: {name}", details=f"known: {sorted(self.identities)}"
            ) from e


def _read_json(path: Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DataLoadError(f"Malformed JSON in {path}: {e}") from e
    except OSError as e:
        raise DataLoadError(f"Cannot read {path}: {e}") from e


def _parse_family(raw: dict[str, Any]) -> Family:
    A = tuple(tuple(as_fraction(x) for x in row) for row in raw["A"])
    family = Family(
        name=raw["name"],
        A=A,
        J=tuple(int(j) for j in raw["J"]),
        product_pairs=int(raw["product_pairs"]),
        product_modulus=int(raw["product_modulus"]),
        description=raw.get("description", ""),
    )
    family.datum((0,) * len(family.J)).require_positive_definite()
    return family


def _parse_identity(raw: dict[str, Any], families: dict[str, Family]) -> Identity:
    family = families.get(raw["family"])
    if family is None:
        raise ValidationError(f"identity {raw['name']} names unknown family {raw['family']}")
    condition = raw.get("condition")
    if condition is not None and condition not in CONDITIONS:
        raise ValidationError(f"identity {raw['name']} names unknown condition {condition}")
    sides = []
    for side in raw["sum_sides"]:
        data = []
        for term in side:
            merged = {"A": family.A, "J": family.J, **term}
            data.append(NahmDatum.from_dict(merged))
        sides.append(tuple(data))
    return Identity(
        name=raw["name"],
        family=family.name,
        sum_sides=tuple(sides),
        product=ProductSpec.from_dict(raw["product"]),
        condition=condition,
    )


def load_corpus(base_path: Path | None = None) -> Corpus:
    """Load and validate families.json and identities.json.

    Raises:
        DataLoadError: If a file is missing, unreadable or malformed

    """
    base = base_path or CORPUS_DIR
    try:
        families_path, identities_path = validate_corpus_files(CORPUS_FILES, base)
        families = {}
        for raw in _read_json(families_path)["families"]:
            family = _parse_family(raw)
            families[family.name] = family
        identities = {}
        for raw in _read_json(identities_path)["identities"]:
            identity = _parse_identity(raw, families)
            identities[identity.name] = identity
    except Exception as e:
        if isinstance(e, DataLoadError):
            raise
        log_exception(logger, e, f"loading corpus from {base}")
        raise DataLoadError(f"Invalid corpus in {base}: {e}") from e

    logger.debug(f"Loaded corpus: {len(families)} families, {len(identities)} identities")
    return Corpus(families=families, identities=identities)


def load_datum_file(path: Path) -> list[NahmDatum]:
    """Read a JSON datum file: one ``{A, B, C, J, lower}`` object or a list of them."""
    if not path.exists():
        raise DataLoadError(f"Datum file not found: {path}")
    raw = _read_json(path)
    items = raw if isinstance(raw, list) else [raw]
    try:
        return [NahmDatum.from_dict(item) for item in items]
    except Exception as e:
        if isinstance(e, DataLoadError):
            raise
        log_exception(logger, e, f"parsing datum file {path}")
        raise DataLoadError(f"Invalid datum in {path}: {e}") from e
