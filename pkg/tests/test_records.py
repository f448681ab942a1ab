import json
from fractions import Fraction

from mpmath import mpf

from search.records import (
    RECORD_COLUMNS,
    CandidateRecord,
    TermChoice,
    canonical_terms,
    records_to_csv,
    records_to_frame,
    records_to_jsonl,
    write_output,
)


def make_record(passed=True):
    return CandidateRecord(
        family="capparelli",
        terms=(TermChoice((Fraction(1), Fraction(0))), TermChoice((Fraction(4), Fraction(6)), 2)),
        residuals=(mpf("1e-90"), mpf("-2e-91"), mpf(0)),
        cstar=mpf(1) / 12,
        lam=mpf("0.5"),
        alpha_over_pi2=Fraction(1, 18),
        degenerate=False,
        passed=passed,
    )


def test_record_fields():
    data = make_record().to_dict()
    assert list(data) == RECORD_COLUMNS
    assert data["terms"][1] == {"B": ["4", "6"], "Cprime": 2}
    assert data["alpha_over_pi2"] == {"num": 1, "den": 18}
    assert data["Cstar"].startswith("0.08333")


def test_jsonl_is_one_object_per_line():
    lines = records_to_jsonl([make_record(), make_record(False)]).splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["passed"] is False


def test_csv_has_the_record_columns():
    text = records_to_csv([make_record()])
    assert text.splitlines()[0] == ",".join(RECORD_COLUMNS)
    frame = records_to_frame([make_record()])
    assert json.loads(frame.loc[0, "terms"])[0]["B"] == ["1", "0"]


def test_canonical_terms_sort_and_normalize_shift():
    swapped = [TermChoice((Fraction(4), Fraction(6)), 1), TermChoice((Fraction(1), Fraction(0)), 3)]
    assert canonical_terms(swapped) == (
        TermChoice((Fraction(1), Fraction(0)), 2),
        TermChoice((Fraction(4), Fraction(6)), 0),
    )
    assert TermChoice((Fraction(4), Fraction(6)), 2).label() == "(4,6;2)"
    assert TermChoice((Fraction(1, 2), Fraction(0))).label() == "(1/2,0)"


def test_write_output(tmp_path, capsys):
    write_output("a\n", None)
    assert capsys.readouterr().out == "a\n"
    target = tmp_path / "nested" / "out.jsonl"
    write_output("b\n", target)
    assert target.read_text() == "b\n"
