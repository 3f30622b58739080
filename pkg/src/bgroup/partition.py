"""Pants decompositions as small graphs.

A partition lists pants (ordered triples of slots) and curves. A slot token
is ``"p<k>"`` for the k-th marked point of the signature or ``"c<label>"``
for a partition curve. Each curve token appears in exactly two slots.

JSON form::

    {"label": "genus2-fig3",
     "pants": [["c1", "c1", "c2"], ["c2", "c3", "c3"]],
     "curves": [{"label": "1"}, {"label": "2"}, {"label": "3", "sign": -1}]}

Slot order inside a pants is the cyclic order of the triangle-group
generators (A, B, (AB)^-1) of that block. A curve whose two slots lie in
the same pants is a handle; its generator is X^sign where X is the element
of the first of its two (cyclically consecutive) slots.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .triangle import Signature

__all__ = ["Curve", "PartitionGraph", "PRESETS", "preset", "load_partition"]


@dataclass(frozen=True)
class Curve:
    label: str
    ends: tuple  # ((pants, slot), (pants, slot))
    sign: int = 1

    @property
    def is_handle(self) -> bool:
        return self.ends[0][0] == self.ends[1][0]


def _token_kind(token: str):
    if len(token) < 2 or token[0] not in "pc":
        raise ValueError(f"bad slot token {token!r}; use p<k> or c<label>")
    return token[0], token[1:]


@dataclass(frozen=True)
class PartitionGraph:
    label: str
    pants: tuple
    curves: tuple

    @classmethod
    def from_dict(cls, doc: dict) -> "PartitionGraph":
        pants = tuple(tuple(str(t) for t in p) for p in doc["pants"])
        for p in pants:
            if len(p) != 3:
                raise ValueError("every pants has exactly three slots")
        where: dict = {}
        for k, p in enumerate(pants):
            for i, token in enumerate(p):
                kind, name = _token_kind(token)
                if kind == "c":
                    where.setdefault(name, []).append((k, i))
        specs = doc.get("curves")
        if specs is None:
            specs = [{"label": name} for name in where]
        curves = []
        for spec in specs:
            name = str(spec["label"])
            slots = where.get(name, [])
            if len(slots) != 2:
                raise ValueError(f"curve {name} must occupy exactly two slots")
            ends = spec.get("ends")
            ends = tuple(tuple(e) for e in ends) if ends else tuple(slots)
            if sorted(ends) != sorted(slots):
                raise ValueError(f"curve {name}: ends do not match its slots")
            sign = int(spec.get("sign", 1))
            if sign not in (1, -1):
                raise ValueError("curve sign must be +1 or -1")
            curves.append(Curve(name, ends, sign))
        if set(where) != {c.label for c in curves}:
            raise ValueError("curve list does not match the curve tokens")
        return cls(str(doc.get("label", "custom")), pants, tuple(curves))

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "pants": [list(p) for p in self.pants],
            "curves": [
                {"label": c.label, "ends": [list(e) for e in c.ends], "sign": c.sign}
                for c in self.curves
            ],
        }

    def points(self) -> dict:
        """Map point index -> (pants, slot)."""
        out = {}
        for k, p in enumerate(self.pants):
            for i, token in enumerate(p):
                kind, name = _token_kind(token)
                if kind == "p":
                    idx = int(name)
                    if idx in out:
                        raise ValueError(f"point p{idx} appears twice")
                    out[idx] = (k, i)
        return out

    def validate(self, sig: Signature) -> None:
        """Raise ValueError unless this is a pants decomposition for ``sig``."""
        if len(self.pants) != 2 * sig.p - 2 + sig.n:
            raise ValueError(
                f"{sig} needs {2 * sig.p - 2 + sig.n} pants, partition has {len(self.pants)}")
        if len(self.curves) != sig.dimension:
            raise ValueError(
                f"{sig} needs {sig.dimension} curves, partition has {len(self.curves)}")
        if sorted(self.points()) != list(range(sig.n)):
            raise ValueError("each marked point must occupy exactly one slot")
        # connectivity and genus from the dual graph
        parent = list(range(len(self.pants)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.curves:
            parent[find(c.ends[0][0])] = find(c.ends[1][0])
        if len({find(k) for k in range(len(self.pants))}) != 1:
            raise ValueError("partition graph is not connected")
        genus = len(self.curves) - len(self.pants) + 1
        if genus != sig.p:
            raise ValueError(f"partition has genus {genus}, signature has {sig.p}")


def _single(sig: Signature) -> dict:
    if (sig.p, sig.n) == (0, 4):
        pants = [["c1", "p0", "p1"], ["c1", "p2", "p3"]]
    elif (sig.p, sig.n) == (1, 1):
        pants = [["c1", "c1", "p0"]]
    else:
        raise ValueError("the 'single' preset needs a (0,4) or (1,1) signature")
    return {"label": "single", "pants": pants}


def _chain(sig: Signature) -> dict:
    n = sig.n
    if sig.p != 0 or n < 4:
        raise ValueError("the 'chain' preset needs a (0,n) signature with n >= 4")
    pants = [["c1", "p0", "p1"]]
    for k in range(1, n - 3):
        pants.append([f"c{k}", f"p{k + 1}", f"c{k + 1}"])
    pants.append([f"c{n - 3}", f"p{n - 2}", f"p{n - 1}"])
    return {"label": "chain", "pants": pants,
            "curves": [{"label": str(k)} for k in range(1, n - 2)]}


def _genus2(sig: Signature) -> dict:
    if (sig.p, sig.n) != (2, 0):
        raise ValueError("the 'genus2-fig3' preset needs signature (2,0)")
    return {
        "label": "genus2-fig3",
        "pants": [["c1", "c1", "c2"], ["c2", "c3", "c3"]],
        "curves": [{"label": "1"}, {"label": "2"}, {"label": "3", "sign": -1}],
    }


PRESETS = {"single": _single, "chain": _chain, "genus2-fig3": _genus2}


def preset(name: str, sig: Signature) -> PartitionGraph:
    try:
        make = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown partition preset {name!r}") from None
    return PartitionGraph.from_dict(make(sig))


def load_partition(spec: str, sig: Signature) -> PartitionGraph:
    """A preset name, a path to a JSON file, or an inline JSON document."""
    if spec in PRESETS:
        return preset(spec, sig)
    if os.path.exists(spec):
        with open(spec) as fh:
            return PartitionGraph.from_dict(json.load(fh))
    if spec.lstrip().startswith("{"):
        return PartitionGraph.from_dict(json.loads(spec))
    raise ValueError(f"partition {spec!r} is neither a preset nor a JSON file")
