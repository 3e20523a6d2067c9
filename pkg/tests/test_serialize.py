import json
import math

import pytest
from hypothesis import given, strategies as st

from bergersphere.serialize import fmt17, json_text


class TestFmt17:
    def test_round_trip_examples(self):
        for x in (0.1, 1.0, -2.5e-300, 6.283185307179586, 1e17):
            assert float(fmt17(x)) == x

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_round_trip(self, x):
        assert float(fmt17(x)) == x

    @pytest.mark.parametrize("x", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, x):
        with pytest.raises(ValueError):
            fmt17(x)


class TestJsonText:
    def test_parses_and_preserves_values(self):
        payload = {"a": 1, "b": 0.1, "c": None, "d": [True, "x", 2.5], "e": {}}
        parsed = json.loads(json_text(payload))
        assert parsed == payload | {"d": [True, "x", 2.5]}

    def test_deterministic(self):
        payload = {"rows": [{"x": 1.0 / 3.0, "y": None}], "n": 2}
        assert json_text(payload) == json_text(payload)

    def test_trailing_newline(self):
        assert json_text({"k": 1.5}).endswith("}\n")

    def test_float_digits(self):
        assert '"x": 0.69999999999999996' in json_text({"x": 0.7})

    def test_bool_not_rendered_as_int(self):
        assert json_text({"flag": True}) == '{\n  "flag": true\n}\n'

    def test_rejects_unknown_type(self):
        with pytest.raises(TypeError):
            json_text({"x": object()})
