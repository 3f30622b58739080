import cmath
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bgroup.bgroups import (
    MarkedBGroup, Word, build_0_4, build_1_1, coordinate_bounds_0_4,
    coordinate_bounds_1_1, exclusion_witness_0_4, hnn_conjugator,
    plumbing_param_0_4, plumbing_param_1_1, recover_coordinate_0_4,
)
from bgroup.moebius import IDENTITY, INF, Kind, Moebius, apply, classify, psl_distance
from bgroup.triangle import nu_constants
from bgroup.verify import check_group

inf = math.inf


def relation_residuals(g):
    return [psl_distance(g.evaluate(w), IDENTITY) for w in g.relations]


def test_word_algebra():
    w = Word.parse("A B^-1 C^2")
    assert str(w) == "A B^-1 C^2"
    assert str(w.inverse()) == "C^-2 B A^-1"
    assert len((w * w.inverse()).reduced()) == 0
    assert Word.from_json(w.to_json()) == w


def test_word_evaluates_left_to_right():
    table = {"X": Moebius(1, 1, 0, 1), "Y": Moebius(2, 0, 0, 0.5)}
    m = Word.parse("X Y").evaluate(table)
    assert psl_distance(m, table["X"] @ table["Y"]) < 1e-15


def test_unresolved_name_raises():
    g = build_0_4((inf,) * 4, 3j)
    with pytest.raises(KeyError):
        g.evaluate(Word.parse("Z"))


def test_build_0_4_four_cusps():
    alpha = 3j
    g = build_0_4((inf,) * 4, alpha)
    assert g.generator_names == ["A", "B", "A_inv", "B_alpha_inv"]
    assert max(relation_residuals(g)) < 1e-14
    # the second generator from the display with q3 = q4 = 1, b* = 0, det 1
    expected = Moebius(-1 - 2 * alpha, 2 * alpha ** 2, -2, -1 + 2 * alpha)
    assert psl_distance(g.element("B_alpha_inv"), expected) < 1e-13
    assert classify(g.element("B_alpha_inv")).kind is Kind.PARABOLIC
    assert g.warnings == ()


def test_uncorrected_second_generator_has_wrong_determinant():
    # the uncorrected upper-right entry -b* - alpha^2 (q3+q4) gives det != 1
    q3 = q4 = 0.5
    c, alpha = q3 + q4, 2j
    b = (1 - q3 * q3) / c
    raw = ((-q3 - alpha * c), (-b - alpha ** 2 * c), -c, (-q3 + alpha * c))
    det = raw[0] * raw[3] - raw[1] * raw[2]
    assert abs(det - 1) > 1
    corrected = Moebius(-q3 - alpha * c, b + alpha ** 2 * c, -c, -q3 + alpha * c)
    g = build_0_4((3, 3, 3, 3), alpha)
    assert psl_distance(g.element("B_alpha_inv"), corrected) < 1e-13


@pytest.mark.parametrize("nu", [(3, 4, 5, 7), (inf, 3, inf, inf), (2, 3, 2, 3), (3, 3, 2, 2)])
def test_build_0_4_relations_and_torsion(nu):
    g = build_0_4(nu, 0.3 + 5j)
    assert check_group(g).passed
    assert psl_distance(g.element("A"), g.element("A_inv").inverse()) < 1e-14


def test_two_two_tail_display():
    g = build_0_4((3, 3, 2, 2), 2j)
    Ba = g.element("B_alpha")
    for z in (0.3 + 1j, -2 + 0.1j, 5j):
        assert abs(apply(Ba, z) - (-z + 4j)) < 1e-13
    assert any("uncertified" in w for w in g.warnings)


def test_two_two_pair_moved_to_second_block():
    g = build_0_4((2, 2, 3, 3), 4j)
    assert g.signature.nu == (3, 3, 2, 2)
    assert any("moved" in w for w in g.warnings)
    with pytest.raises(ValueError):
        build_0_4((2, 2, 2, 2), 4j)


def test_real_alpha_rejected():
    with pytest.raises(ValueError):
        build_0_4((inf,) * 4, 1.5)
    with pytest.raises(ValueError):
        build_1_1(3, -1j)


def test_low_alpha_warns():
    g = build_0_4((inf,) * 4, 0.5j)
    assert any("not certified" in w for w in g.warnings)


def test_bounds_examples():
    b = coordinate_bounds_0_4((inf,) * 4)
    assert (b.y1, b.y2) == (1.0, 0.5)
    b = coordinate_bounds_0_4((2, 3, 2, 3))
    assert abs(b.y1 - 4) < 1e-12 and abs(b.y2 - 2) < 1e-12


def test_bounds_two_two_tail():
    # certified region Im > 1/(q1+q2), necessary region Im > 0
    b = coordinate_bounds_0_4((3, 4, 2, 2))
    q1, q2 = nu_constants(3)[0], nu_constants(4)[0]
    assert abs(b.y1 - 1 / (q1 + q2)) < 1e-15 and b.y2 == 0.0


def test_bounds_1_1_boundary_strict():
    b = coordinate_bounds_1_1()
    assert (b.y1, b.y2) == (2.0, 0.0)
    assert not b.certified(2j) and b.certified(2.0001j)
    assert build_1_1(2, 2j).warnings and not build_1_1(2, 2.5j).warnings
    assert build_1_1(2, 0.5j).warnings


@pytest.mark.parametrize("nu", [2, 3, 7, 12, inf])
@pytest.mark.parametrize("tau", [2.5j, 3j, 5j])
def test_hnn_relation(nu, tau):
    g = build_1_1(nu, tau)
    A, B, C = g.generator_matrices()
    assert psl_distance(C @ B.inverse() @ C.inverse(), A) < 1e-10
    assert abs(C.det - 1) < 1e-14
    assert apply(C, 0) is INF
    assert check_group(g).passed


def test_hnn_literal_conjugator_translates_by_one():
    g = build_1_1(inf, 3j, literal_conjugator=True)
    A, B, C = g.generator_matrices()
    m = C @ B.inverse() @ C.inverse()
    assert psl_distance(m, Moebius(1, 1, 0, 1)) < 1e-12 or psl_distance(m, Moebius(1, -1, 0, 1)) < 1e-12
    assert psl_distance(m, A) > 1
    assert not check_group(g).passed


def test_literal_conjugator_det_one():
    for q in (0.0, 0.5, 1.0):
        assert abs(hnn_conjugator(2j, q, True).det - 1) < 1e-15


def test_plumbing_examples():
    assert abs(plumbing_param_0_4(1j) - math.exp(-math.pi)) < 1e-15
    assert abs(plumbing_param_0_4(2 + 1j) - math.exp(-math.pi)) < 1e-14
    assert abs(plumbing_param_1_1(1j, inf) + math.exp(-math.pi)) < 1e-15
    assert abs(plumbing_param_1_1(2j, 2) - math.exp(-2 * math.sqrt(2) * math.pi)) < 1e-15
    with pytest.raises(ValueError):
        plumbing_param_0_4(0.5)


@given(st.floats(-3, 3), st.floats(1e-3, 10), st.sampled_from([2, 3, 5, inf]))
@settings(max_examples=100)
def test_plumbing_modulus(x, y, nu):
    assert 0 < abs(plumbing_param_0_4(complex(x, y))) < 1
    assert 0 < abs(plumbing_param_1_1(complex(x, y), nu)) < 1


@pytest.mark.parametrize("nu", [(3, 5, 7, 2), (inf, 3, inf, inf), (5, 5, 3, 4)])
def test_exclusion_witness(nu):
    c = sum(nu_constants(v)[0] for v in nu[2:])
    for alpha in (0.2 + 0.3j, -1 + 0.01j, 0.5 + 2j):
        z, w = exclusion_witness_0_4(nu, alpha)
        assert abs(w.imag - (alpha.imag - 1 / c)) < 1e-10


def test_uncorrected_witness_point_misses():
    # the uncorrected z = (-q3 - alpha c - i)/c does not reach the expected height
    nu, alpha = (3, 5, 7, 2), 0.7 + 0.3j
    q3 = nu_constants(7)[0]
    c = q3 + nu_constants(2)[0]
    g = build_0_4(nu, alpha)
    z = (-q3 - alpha * c - 1j) / c
    target = alpha.imag - 1 / c
    G = g.element("B_alpha_inv")
    assert min(abs(apply(G, z).imag - target), abs(apply(G.inverse(), z).imag - target)) > 1e-3


conj_entries = st.tuples(*[st.floats(-2, 2)] * 4)


@given(conj_entries, st.floats(-1, 1), st.floats(1.2, 4))
@settings(max_examples=60, deadline=None)
def test_coordinate_recovered_after_conjugation(e, x, y):
    a, b, c, d = e
    a, d = a + 1, d + 1j
    # tiny nonzero c pushes fixed points out near a/c and costs digits to cancellation
    assume(abs(a * d - b * c) >= 0.2 and (c == 0 or abs(c) >= 1e-3))
    M = Moebius(a, b, c, d)
    alpha = complex(x, y)
    g = build_0_4((3, inf, 4, 5), alpha)
    gc = MarkedBGroup(g.signature, tuple((n, M @ m @ M.inverse()) for n, m in g.generators))
    assert abs(recover_coordinate_0_4(gc) - alpha) < 1e-8


def test_json_roundtrip():
    g = build_1_1(3, 2.5j + 0.25)
    h = MarkedBGroup.from_json(g.to_json())
    assert h.generator_names == g.generator_names
    assert all(psl_distance(x, y) < 1e-15 for x, y in zip(h.generator_matrices(), g.generator_matrices()))
    assert h.relations == g.relations and h.torsion == g.torsion
    assert h.coordinates == g.coordinates


def test_plumbing_phase_for_q1():
    # exp(2 pi i / 2) = -1
    t = plumbing_param_1_1(3j, inf)
    assert abs(cmath.phase(t)) > 3
