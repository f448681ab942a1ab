import json
import shutil

import pytest

from config import CORPUS_DIR
from search.corpus import load_corpus, load_datum_file
from utils.exceptions import DataLoadError, ValidationError


def test_builtin_corpus(corpus):
    assert set(corpus.families) == {"capparelli", "mod9"}
    expected = {"cap1", "cap1alt", "cap2", "kr-1", "kr-2", "kr-3", "kr-4", "kr-5"}
    assert set(corpus.identities) == expected
    cap2 = corpus.identity("cap2")
    assert len(cap2.sum_sides) == 2
    assert cap2.product.extra is not None
    assert corpus.family("mod9").product_modulus == 9


def test_identity_terms_inherit_family_matrix(corpus):
    kr5 = corpus.identity("kr-5")
    first, _, last = kr5.sum_sides[0]
    assert first.A == corpus.family("mod9").A
    assert first.lower == (0, 1)
    assert last.k == 1


def test_unknown_names(corpus):
    with pytest.raises(ValidationError):
        corpus.family("rogers-ramanujan")
    with pytest.raises(ValidationError):
        corpus.identity("cap3")


def test_missing_corpus_directory(tmp_path):
    with pytest.raises(DataLoadError):
        load_corpus(tmp_path)


def test_malformed_corpus(tmp_path):
    shutil.copy(CORPUS_DIR / "families.json", tmp_path / "families.json")
    (tmp_path / "identities.json").write_text("{not json")
    with pytest.raises(DataLoadError):
        load_corpus(tmp_path)


def test_identity_with_unknown_family(tmp_path):
    shutil.copy(CORPUS_DIR / "families.json", tmp_path / "families.json")
    identity = {"name": "x", "family": "nope", "sum_sides": [], "product": {"modulus": 1}}
    bad = {"identities": [identity]}
    (tmp_path / "identities.json").write_text(json.dumps(bad))
    with pytest.raises(DataLoadError):
        load_corpus(tmp_path)


def test_datum_files(tmp_path):
    single = tmp_path / "single.json"
    single.write_text(json.dumps({"A": [[2]], "B": ["1/2"], "C": "-1/40"}))
    many = tmp_path / "many.json"
    many.write_text(json.dumps([{"A": [[2]]}, {"A": [[2]], "B": [1]}]))
    (datum,) = load_datum_file(single)
    assert str(datum.C) == "-1/40"
    assert len(load_datum_file(many)) == 2


def test_bad_datum_files(tmp_path):
    with pytest.raises(DataLoadError):
        load_datum_file(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"A": [[1, 2], [3, 4]]}))
    with pytest.raises(DataLoadError):
        load_datum_file(broken)
