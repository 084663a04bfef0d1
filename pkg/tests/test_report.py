import io
import math

import numpy as np
from hypothesis import given, strategies as st

from ortholab.report import csv_string, fmt, read_csv, text_table, to_json


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_seventeen_digits_round_trip(x):
    assert float(fmt(x)) == x


def test_special_values():
    assert fmt(math.nan) == "nan" and fmt(math.inf) == "inf" and fmt(-math.inf) == "-inf"
    assert fmt(3) == "3" and fmt(True) == "True" and fmt(np.float64(0.1)) == "0.10000000000000001"


def test_csv_with_footer():
    text = csv_string(["t", "v"], [(0.1, 1 / 3), (0.2, 2 / 3)], footer=["mass=1"])
    assert text.splitlines()[-1] == "# mass=1"
    header, rows = read_csv(text)
    assert header == ["t", "v"] and rows[1] == [0.2, 2 / 3]


def test_json_numpy():
    assert to_json({"a": np.arange(3), "b": np.float64(0.5)}).replace(" ", "").replace("\n", "") \
        == '{"a":[0,1,2],"b":0.5}'


def test_text_table_alignment():
    lines = text_table(["k", "value"], [(1, 0.5), (22, 1.25)]).splitlines()
    assert lines[0].startswith("k ") and set(lines[1]) <= {"-", " "}
    assert len(lines) == 4
