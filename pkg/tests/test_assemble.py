import json
import math

import pytest

from bgroup.bgroups import assemble, build_0_4, build_1_1
from bgroup.moebius import IDENTITY, Kind, classify, psl_distance
from bgroup.partition import PartitionGraph, load_partition, preset
from bgroup.patterson import genus2_group
from bgroup.triangle import Signature
from bgroup.verify import check_group

inf = math.inf


def residuals(g):
    return [psl_distance(g.evaluate(w), IDENTITY) for w in g.relations]


def test_partition_counts_validated():
    sig = Signature(0, (inf,) * 5)
    with pytest.raises(ValueError):
        PartitionGraph.from_dict({"pants": [["c1", "p0", "p1"], ["c1", "p2", "p3"]]}).validate(sig)
    preset("chain", sig).validate(sig)


def test_partition_json_and_file(tmp_path):
    sig = Signature(2, ())
    pg = preset("genus2-fig3", sig)
    path = tmp_path / "p.json"
    path.write_text(json.dumps(pg.to_dict()))
    assert load_partition(str(path), sig).to_dict() == pg.to_dict()
    assert load_partition(json.dumps(pg.to_dict()), sig).to_dict() == pg.to_dict()
    with pytest.raises(ValueError):
        load_partition("nonsense", sig)


def test_base_case_0_4_matches_builder():
    sig = Signature(0, (3, inf, 4, 5))
    a = assemble(sig, preset("single", sig), [0.2 + 3j])
    b = build_0_4(sig.nu, 0.2 + 3j)
    assert a.generator_names == b.generator_names
    assert all(psl_distance(x, y) == 0 for x, y in zip(a.generator_matrices(), b.generator_matrices()))


def test_base_case_1_1_matches_builder():
    sig = Signature(1, (5,))
    a = assemble(sig, preset("single", sig), [3j])
    b = build_1_1(5, 3j)
    assert all(psl_distance(x, y) == 0 for x, y in zip(a.generator_matrices(), b.generator_matrices()))


@pytest.mark.parametrize("nu", [(2, 3, inf, 5, 7), (inf,) * 6, (2,) * 6, (3, 2, 2, 2, 2, 2), (inf,) * 5])
def test_chain_assembly(nu):
    sig = Signature(0, nu)
    g = assemble(sig, preset("chain", sig), [3j + 0.1 * k for k in range(sig.dimension)])
    assert len(g.generators) == 2 * sig.p + sig.n
    rep = check_group(g)
    assert rep.passed, rep.failures()
    for name in g.accidental_parabolics:
        assert classify(g.element(name)).kind is Kind.PARABOLIC


def test_genus_one_two_points():
    sig = Signature(1, (3, inf))
    pg = PartitionGraph.from_dict({"pants": [["c1", "c1", "c2"], ["c2", "p0", "p1"]]})
    g = assemble(sig, pg, [3j, 4j])
    assert len(g.generators) == 4
    assert check_group(g).passed


def test_genus_two_matches_explicit_family():
    sig = Signature(2, ())
    taus = (0.3 + 4j, -0.2 + 3j, 0.1 + 5j)
    a = assemble(sig, preset("genus2-fig3", sig), taus)
    g = genus2_group(*taus)
    assert a.generator_names == ["A1", "C1", "A3", "C3"]
    for name, m in a.generators:
        assert psl_distance(m, g.element(name)) < 1e-9
    assert max(residuals(a)) < 1e-9


def test_dimension_mismatch():
    sig = Signature(0, (inf,) * 5)
    with pytest.raises(ValueError):
        assemble(sig, preset("chain", sig), [3j])


def test_non_admissible_handle():
    sig = Signature(2, (2,))
    pg = PartitionGraph.from_dict({"pants": [["c1", "c1", "c2"], ["c2", "c3", "c4"], ["c4", "c3", "p0"]]})
    with pytest.raises(ValueError):
        assemble(sig, pg, [3j, 4j, 3j, 5j])


def test_low_coordinates_warn():
    sig = Signature(0, (inf,) * 5)
    g = assemble(sig, preset("chain", sig), [0.5j, 3j])
    assert any("not certified" in w for w in g.warnings)
