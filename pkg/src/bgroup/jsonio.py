"""JSON encoding with byte-stable number formatting.

Every real number is written as a decimal string with 17 significant digits,
so identical inputs always give identical output.
"""

from __future__ import annotations

import json
import math
import re

from .moebius import INF, Moebius

__all__ = [
    "fmt_real", "encode_complex", "encode_point", "encode_moebius",
    "decode_complex", "decode_point", "decode_moebius", "parse_complex",
    "dumps",
]


def fmt_real(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def encode_complex(z: complex) -> dict:
    z = complex(z)
    return {"re": fmt_real(z.real), "im": fmt_real(z.imag)}


def encode_point(z) -> dict:
    if z is INF:
        return {"inf": True}
    return encode_complex(z)


def encode_moebius(m: Moebius) -> dict:
    m = m.normalized()
    return {k: encode_complex(v) for k, v in zip("abcd", m.entries())}


def decode_complex(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, str):
        return parse_complex(obj)
    return complex(float(obj["re"]), float(obj["im"]))


def decode_point(obj):
    if isinstance(obj, dict) and obj.get("inf"):
        return INF
    if isinstance(obj, str) and obj.strip().lower() == "inf":
        return INF
    return decode_complex(obj)


def decode_moebius(obj) -> Moebius:
    return Moebius(*(decode_complex(obj[k]) for k in "abcd"))


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_im>{_NUM}|[+-])?i|(?P<only_re>{_NUM}))$"
)


def _imag_part(text: str | None) -> float:
    if text in (None, "", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``bi``, ``a``, ``i`` and ``-i`` (no spaces)."""
    s = text.strip()
    m = _COMPLEX_RE.match(s)
    if m is None:
        raise ValueError(f"not a complex literal: {text!r}")
    if m.group("only_re") is not None:
        return complex(float(m.group("only_re")), 0.0)
    if m.group("re") is not None:
        return complex(float(m.group("re")), _imag_part(m.group("im")))
    return complex(0.0, _imag_part(m.group("only_im")))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)
