import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgroup.jsonio import (
    decode_complex, decode_moebius, decode_point, encode_complex,
    encode_moebius, encode_point, fmt_real, parse_complex,
)
from bgroup.moebius import INF, Moebius, psl_distance


@pytest.mark.parametrize("text,value", [
    ("1+2i", 1 + 2j), ("3i", 3j), ("-2.5", -2.5), ("i", 1j), ("-i", -1j),
    ("0.5-0.25i", 0.5 - 0.25j), ("1e-3i", 1e-3j), ("2+i", 2 + 1j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1 + 2i", "2j", "abc", "1+2"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_numbers_are_strings():
    doc = encode_complex(-0.0 + 1.5j)
    assert doc == {"re": "0", "im": "1.5"}
    assert fmt_real(0.1) == "0.10000000000000001"


def test_infinity_encoding():
    assert encode_point(INF) == {"inf": True}
    assert decode_point({"inf": True}) is INF


def test_moebius_sign_normalized():
    m = Moebius(-1, -2, 0, -1)
    assert encode_moebius(m) == encode_moebius(-m)
    assert encode_moebius(m)["a"]["re"] == "1"


finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(finite, finite)
def test_complex_roundtrip(x, y):
    assert decode_complex(encode_complex(complex(x, y))) == complex(x, y) + 0.0


@given(st.tuples(*[st.builds(complex, finite, finite)] * 4))
def test_moebius_roundtrip(e):
    a, b, c, d = e
    if abs(a * d - b * c) < 1e-3:
        return
    m = Moebius(a, b, c, d)
    assert psl_distance(decode_moebius(encode_moebius(m)), m) <= 1e-12 * max(1, *map(abs, m.entries()))
