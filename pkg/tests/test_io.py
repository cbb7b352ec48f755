from fractions import Fraction

import pytest

from bahnlab.core import RequestSequence
from bahnlab.io import FormatError, read_sequence, sequence_from_csv, sequence_from_json, write_sequence

SEQ = RequestSequence([(0, Fraction(25, 2)), (Fraction(3, 2), Fraction(1, 3)), (4, 0)])


@pytest.mark.parametrize("suffix", [".csv", ".json"])
def test_round_trip(tmp_path, suffix):
    path = tmp_path / f"seq{suffix}"
    write_sequence(SEQ, path)
    assert read_sequence(path) == SEQ
    assert b"\r\n" not in path.read_bytes()


def test_json_numbers_are_exact():
    seq = sequence_from_json('[{"time": 0, "price": 0.1}, {"time": 1, "price": "2/3"}]')
    assert seq.prices == (Fraction(1, 10), Fraction(2, 3))


def test_csv_errors_name_the_field():
    with pytest.raises(FormatError) as e:
        sequence_from_csv("when,price\n0,1\n")
    assert e.value.field == "header"
    with pytest.raises(FormatError) as e:
        sequence_from_csv("time,price\n0,1\n1,abc\n")
    assert e.value.field == "line 3.price"


def test_json_errors_name_the_field():
    with pytest.raises(FormatError) as e:
        sequence_from_json('[{"time": 0}]')
    assert e.value.field == "[0]"
