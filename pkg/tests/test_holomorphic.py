import random
import time
from fractions import Fraction

import pytest

from gcverify.algebroid import (algebroid_differential, bracket_sections, dual_algebroid_from_poisson,
                                tangent_algebroid)
from gcverify.calculus import Bivector
from gcverify.gcs import is_gcs, standard_complex
from gcverify.holomorphic import (FiberComplex, HoloPoissonInput, check_j_isomorphism, d_relations_check,
                                  deformed_bracket, holomorphic_gen_endo, imaginary_algebroid, nijenhuis_torsion_j, real_chart,
                                  realified_complex_structure, realify_holomorphic_poisson,
                                  six_equivalences_harness)
from gcverify.parse import parse_expression
from gcverify.poly import Chart, Poly
from gcverify.suite import nonintegrable_complex_structure, random_holomorphic_input, random_poly
from strategies import CHART2

R4 = real_chart(2)
x1, x2, y1, y2 = (Poly.var(R4, n) for n in ("x_1", "x_2", "y_1", "y_2"))
Z = Chart(("z1", "z2"))
ZW = Chart(("z1", "z2", "w1", "w2"))
q = Fraction(1, 4)


def standard_j(chart=CHART2):
    return FiberComplex(tangent_algebroid(chart), standard_complex(chart).matrix)


def entries(pi: Bivector) -> dict:
    n = pi.chart.names
    return {(n[i], n[k]): pi.matrix[i][k] for i in range(len(n)) for k in range(i + 1, len(n))
            if pi.matrix[i][k]}


def test_fiber_complex_requires_square_minus_one():
    with pytest.raises(ValueError):
        FiberComplex(tangent_algebroid(CHART2), [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        FiberComplex(tangent_algebroid(CHART2), [[0, -1, 0], [1, 0, 0]])


def test_torsion_of_standard_and_twisted_structures():
    assert nijenhuis_torsion_j(standard_j()).passed
    bad = FiberComplex(tangent_algebroid(R4), nonintegrable_complex_structure(R4).matrix)
    check = nijenhuis_torsion_j(bad)
    assert not check.passed and check.witness["pair"]


def test_deformed_bracket_example():
    j = standard_j()
    tm = j.algebroid
    x = Poly.var(CHART2, 0)
    assert deformed_bracket(j, tm.section([1, 0]), tm.section([x, 0])).is_zero()
    # J dx = dy, J(x dy) = -x dx: [dy, x dy] + [dx, -x dx] - J[dx, x dy] = -dx - J(dy) = 0
    assert deformed_bracket(j, tm.section([1, 0]), tm.section([0, x])).is_zero()
    u, w = tm.section([x * x, 0]), tm.section([0, x])
    assert deformed_bracket(j, u, w) == -deformed_bracket(j, w, u)


def test_imaginary_algebroid_and_j_isomorphism():
    j = FiberComplex(tangent_algebroid(R4), realified_complex_structure(2).matrix)
    ai = imaginary_algebroid(j)
    assert check_j_isomorphism(j, ai).passed
    bad = FiberComplex(tangent_algebroid(R4), nonintegrable_complex_structure(R4).matrix)
    with pytest.raises(ValueError):
        imaginary_algebroid(bad)
    forced = imaginary_algebroid(bad, force=True)
    check = check_j_isomorphism(bad, forced)
    assert not check.passed and check.witness["relation"] == "bracket"


def test_j_isomorphism_on_poisson_dual():
    # on R^2 with constant pi, A = T*M_pi and j = -J^T is a fibrewise complex structure
    pi = Bivector.from_entries(CHART2, {(0, 1): 1})
    a = dual_algebroid_from_poisson(pi)
    j = FiberComplex(a, [[0, 1], [-1, 0]])
    assert nijenhuis_torsion_j(j).passed
    assert check_j_isomorphism(j, imaginary_algebroid(j)).passed


def test_d_relations():
    rng = random.Random(3)
    j = FiberComplex(tangent_algebroid(R4), realified_complex_structure(2).matrix)
    ai = imaginary_algebroid(j)
    functions = [random_poly(rng, R4, 3) for _ in range(4)]
    cochains = [[random_poly(rng, R4, 2) for _ in range(4)] for _ in range(3)] + [[1, 0, x1, 0]]
    assert d_relations_check(j.algebroid, j, ai, functions, cochains).passed
    f = x1 * y2
    assert algebroid_differential(ai, f) == j.pull_back_1(algebroid_differential(j.algebroid, f))


def test_d_relations_detect_forced_table():
    bad = FiberComplex(tangent_algebroid(R4), nonintegrable_complex_structure(R4).matrix)
    forced = imaginary_algebroid(bad, force=True)
    cochains = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert not d_relations_check(bad.algebroid, bad, forced, [x1 * y2], cochains).passed


def test_holo_input_validation():
    z1 = Poly.var(Z, 0)
    assert HoloPoissonInput.from_entries(Z.names, {(0, 1): z1}).is_structurally_holomorphic()
    w = HoloPoissonInput.from_entries(Z.names, {(0, 1): Poly.var(ZW, "w1")}, conjugates=("w1", "w2"))
    assert not w.is_structurally_holomorphic()
    with pytest.raises(ValueError):
        HoloPoissonInput(("z1", "z2"), ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        HoloPoissonInput.from_entries(Z.names, {}, conjugates=("w1",))


def test_realification_frozen_values():
    # values computed independently with sympy from d/dz = 1/2 (d/dx - i d/dy)
    pi_r, pi_i = realify_holomorphic_poisson(HoloPoissonInput.from_entries(Z.names, {(0, 1): 1}))
    assert entries(pi_r) == {("x_1", "x_2"): q, ("y_1", "y_2"): -q}
    assert entries(pi_i) == {("x_1", "y_2"): -q, ("x_2", "y_1"): q}
    pi_r, pi_i = realify_holomorphic_poisson(HoloPoissonInput.from_entries(Z.names, {(0, 1): Poly.var(Z, 0)}))
    assert entries(pi_r) == {("x_1", "x_2"): x1 * q, ("x_1", "y_2"): y1 * q,
                             ("x_2", "y_1"): -y1 * q, ("y_1", "y_2"): -x1 * q}
    assert entries(pi_i) == {("x_1", "x_2"): y1 * q, ("x_1", "y_2"): -x1 * q,
                             ("x_2", "y_1"): x1 * q, ("y_1", "y_2"): -y1 * q}


def test_realified_j_block_is_integrable():
    _, pi_i = realify_holomorphic_poisson(HoloPoissonInput.from_entries(Z.names, {(0, 1): Poly.var(Z, 0)}))
    j = realified_complex_structure(2)
    assert j.matrix[2][0] == 1 and j.matrix[0][2] == -1
    assert is_gcs(holomorphic_gen_endo(j, pi_i)).passed


@pytest.mark.parametrize("entry", ["1", "z1"])
def test_harness_agrees_on_holomorphic_poisson(entry):
    inp = HoloPoissonInput.from_entries(Z.names, {(0, 1): parse_expression(entry, Z)}, name="h")
    report = six_equivalences_harness(inp)
    assert report.passed and report.agree
    assert report.realified_poisson == (True, True)
    assert [c.key for c in report.checks()] == ["holo.h.b.AR-ARstar", "holo.h.c.AR-AIstar", "holo.h.d.AI-ARstar",
                                               "holo.h.e.AI-AIstar", "holo.h.f.gcs-axioms", "holo.h.agreement"]


def test_harness_perturbation_fails_everywhere():
    w2 = Poly.var(ZW, "w2")
    inp = HoloPoissonInput.from_entries(Z.names, {(0, 1): Poly.var(ZW, "z1") + w2 * w2}, ("w1", "w2"))
    report = six_equivalences_harness(inp)
    assert report.agree and not report.passed
    assert set(report.verdicts.values()) == {False}
    with pytest.raises(ValueError):
        six_equivalences_harness(inp, strict=True)
    failing = [c for c in report.checks() if c.key != "holo.agreement"]
    assert all(not c.passed and "inner" in c.witness for c in failing)


@pytest.mark.parametrize("scale", [1, -4, Fraction(1, 4)])
def test_scale_does_not_change_verdicts(scale):
    inp = HoloPoissonInput.from_entries(Z.names, {(0, 1): Poly.var(Z, 0)})
    report = six_equivalences_harness(inp, scale=scale)
    assert report.passed and report.scale == str(Fraction(scale))


def test_random_holomorphic_inputs_agree():
    rng = random.Random(9)
    start = time.perf_counter()
    for _ in range(2):
        report = six_equivalences_harness(random_holomorphic_input(rng), max_scaling_degree=1)
        assert report.passed and report.agree
    assert time.perf_counter() - start < 20


def test_constant_pairing_against_bracket():
    # A_R* for a constant bivector has zero structure, so brackets of frame sections vanish
    inp = HoloPoissonInput.from_entries(Z.names, {(0, 1): 1})
    pi_r, _ = realify_holomorphic_poisson(inp)
    a = dual_algebroid_from_poisson(pi_r)
    e = a.frame()
    assert all(bracket_sections(e[i], e[k]).is_zero() for i in range(4) for k in range(4))
