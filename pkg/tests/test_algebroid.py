import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from gcverify import algebroid as alg
from gcverify.algebroid import (Algebroid, AlgebroidBisection, AlgebroidSection, algebroid_differential,
                                bialgebroid_compat, bracket_sections, check_axioms, cotangent_algebroid,
                                dual_algebroid_from_poisson, form_bracket, induced_poisson, is_poisson,
                                poisson_bracket, poisson_jacobiator, schouten_bracket, tangent_algebroid,
                                zero_algebroid)
from gcverify.calculus import Bivector, OneForm, VectorField, d_oneform, d_scalar, lie_bracket_vf
from gcverify.parse import parse_expression
from gcverify.poly import Chart, Poly
from gcverify.suite import non_poisson_table, random_poisson, random_poly
from strategies import CHART2, CHART3, polys

x, y = Poly.var(CHART2, 0), Poly.var(CHART2, 1)
X, Y, Z = (Poly.var(CHART3, k) for k in range(3))
LIE_POISSON = Bivector.from_entries(CHART3, {(0, 1): Z, (1, 2): X, (2, 0): Y})
PI_X = Bivector.from_entries(CHART2, {(0, 1): x})


def constant_algebroid(chart, brackets, rank=3):
    zero = Poly.zero(chart)
    s = [[[zero] * rank for _ in range(rank)] for _ in range(rank)]
    for (a, b), comps in brackets.items():
        s[a][b] = [Poly.const(chart, c) for c in comps]
        s[b][a] = [Poly.const(chart, -c) for c in comps]
    return Algebroid(chart, [[0] * chart.dim for _ in range(rank)], s)


def test_tangent_bracket_matches_vector_fields():
    tm = tangent_algebroid(CHART2)
    u, w = tm.section([0, x]), tm.section([y, 0])
    assert bracket_sections(u, w) == tm.section([x, -y])
    assert bracket_sections(u, w).components == lie_bracket_vf(VectorField(CHART2, [0, x]),
                                                               VectorField(CHART2, [y, 0])).components


def test_constant_sections_use_structure_constants_only():
    a = constant_algebroid(CHART2, {(0, 1): [0, 0, 2]})
    e1, e2, _ = a.frame()
    assert bracket_sections(e1, e2 * 3) == a.section([0, 0, 6])
    u = a.section([x, y, 1])
    assert bracket_sections(u, u).is_zero()


def test_structure_must_be_antisymmetric():
    zero = [[0, 0], [0, 0]]
    with pytest.raises(ValueError):
        Algebroid(CHART2, [[1, 0], [0, 1]], [[[0, 0], [1, 0]], zero])


def test_axioms_pass_for_standard_algebroids():
    assert check_axioms(tangent_algebroid(CHART3)).passed
    assert check_axioms(zero_algebroid(CHART3)).passed
    assert check_axioms(dual_algebroid_from_poisson(LIE_POISSON)).passed
    assert check_axioms(dual_algebroid_from_poisson(PI_X)).passed


def test_rank_two_algebroid_with_zero_anchor():
    # c^1_{12} = 1, c^2_{12} = x, rho = 0: Jacobi has no distinct triples, anchor condition holds
    a = Algebroid(CHART2, [[0, 0], [0, 0]], [[[0, 0], [1, x]], [[-1, -x], [0, 0]]])
    assert check_axioms(a).passed


def test_broken_tables_fail_with_witness():
    # [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e1 violates Jacobi
    a = constant_algebroid(CHART2, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (2, 0): [1, 0, 0]})
    check = check_axioms(a)
    assert not check.passed and check.witness["axiom"] == "jacobi"
    assert check.witness["residual"] == "-1"
    # anchor Id with [e1, e2] = e1 is not a bracket morphism
    b = Algebroid(CHART2, [[1, 0], [0, 1]], [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]])
    check = check_axioms(b)
    assert check.witness["axiom"] == "anchor-morphism"


def test_jacobiator_examples():
    assert all(p.is_zero() for plane in poisson_jacobiator(Bivector.from_entries(CHART2, {(0, 1): x * y}))
               for row in plane for p in row)
    assert is_poisson(LIE_POISSON)
    pi = non_poisson_table()
    jac = poisson_jacobiator(pi)
    assert jac[0][1][2] == Poly.const(CHART3, 1)
    # coordinate-function Jacobi sum; sympy oracle gives -1 for the standard bracket
    br = lambda f, g: poisson_bracket(pi, f, g)
    total = br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))
    assert total == Poly.const(CHART3, -1)
    assert jac[0][1][2] == -total


def test_jacobiator_is_totally_antisymmetric():
    rng = random.Random(5)
    pi = Bivector.from_entries(CHART3, {(i, j): random_poly(rng, CHART3, 2) for i, j in combinations(range(3), 2)})
    jac = poisson_jacobiator(pi)
    assert jac[0][1][2] == jac[1][2][0] == jac[2][0][1] == -jac[1][0][2]


def test_form_bracket_examples():
    dx, dy = OneForm.basis(CHART2, 0), OneForm.basis(CHART2, 1)
    const = Bivector.from_entries(CHART2, {(0, 1): 1})
    assert form_bracket(const, dx, dy).is_zero()
    # equals d{x, y} = d pi(dx, dy) = -d pi^{xy} under row contraction
    assert form_bracket(PI_X, dx, dy) == d_scalar(poisson_bracket(PI_X, x, y))
    assert form_bracket(PI_X, dx, dy) == OneForm(CHART2, [-1, 0])
    xi = OneForm(CHART2, [x * y, y])
    assert form_bracket(PI_X, xi, xi).is_zero()


@settings(max_examples=30, deadline=None)
@given(polys(CHART3, 2), polys(CHART3, 2))
def test_form_bracket_of_exact_forms(f, g):
    for pi in (LIE_POISSON, non_poisson_table()):
        assert form_bracket(pi, d_scalar(f), d_scalar(g)) == d_scalar(poisson_bracket(pi, f, g))


def test_dual_algebroid_examples():
    const = dual_algebroid_from_poisson(Bivector.from_entries(CHART2, {(0, 1): 1}))
    assert all(c.is_zero() for plane in const.structure for row in plane for c in row)
    assert all(p.is_constant() for rho in const.anchor for p in rho)
    zero = dual_algebroid_from_poisson(Bivector.zero(CHART2))
    assert all(rho.is_zero() for rho in zero.anchor)
    a = dual_algebroid_from_poisson(PI_X)
    e1, e2 = a.frame()
    assert bracket_sections(e1, e2).components == form_bracket(PI_X, OneForm.basis(CHART2, 0),
                                                               OneForm.basis(CHART2, 1)).components
    with pytest.raises(ValueError):
        dual_algebroid_from_poisson(non_poisson_table())


def test_differential_on_tangent_algebroid():
    tm = tangent_algebroid(CHART2)
    f = x * x * y
    assert algebroid_differential(tm, f) == d_scalar(f).components
    alpha = OneForm(CHART2, [y * y, x])
    assert algebroid_differential(tm, alpha.components) == d_oneform(alpha).matrix


def test_differential_special_cases():
    assert all(p.is_zero() for p in algebroid_differential(zero_algebroid(CHART2), x * y))
    a = dual_algebroid_from_poisson(PI_X)
    # (d f)_a = rho(dx^a) f = sum_i pi^{ia} d_i f
    assert algebroid_differential(a, y) == (-x, Poly.zero(CHART2))
    with pytest.raises(ValueError):
        algebroid_differential(a, (((x,),),))


@settings(max_examples=20, deadline=None)
@given(polys(CHART3, 2), polys(CHART3, 2), polys(CHART3, 2), polys(CHART3, 2))
def test_d_squared_vanishes_on_lie_poisson(f, a1, a2, a3):
    a = dual_algebroid_from_poisson(LIE_POISSON)
    assert all(p.is_zero() for row in algebroid_differential(a, algebroid_differential(a, f)) for p in row)
    dd = algebroid_differential(a, algebroid_differential(a, (a1, a2, a3)))
    assert all(p.is_zero() for plane in dd for row in plane for p in row)


def test_schouten_examples():
    tm = tangent_algebroid(CHART2)
    zero = AlgebroidBisection(tm, [[0, 0], [0, 0]])
    u = tm.section([1, 0])
    assert schouten_bracket(u, zero).is_zero()
    w = AlgebroidBisection(tm, [[0, x], [-x, 0]])
    assert schouten_bracket(u, w) == AlgebroidBisection(tm, [[0, 1], [-1, 0]])
    # [e1, e2 ^ e3] = [e1, e2] ^ e3 + e2 ^ [e1, e3] with [e1,e2] = e3, [e1,e3] = -e2: both terms vanish
    so3 = constant_algebroid(CHART2, {(0, 1): [0, 0, 1], (0, 2): [0, -1, 0], (1, 2): [1, 0, 0]})
    e1 = so3.frame()[0]
    e23 = AlgebroidBisection(so3, [[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    assert schouten_bracket(e1, e23).is_zero()
    e12 = AlgebroidBisection(so3, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    # [e1, e1 ^ e2] = e1 ^ e3
    assert schouten_bracket(e1, e12) == AlgebroidBisection(so3, [[0, 0, 1], [0, 0, 0], [-1, 0, 0]])


def test_bialgebroid_examples():
    tm = tangent_algebroid(CHART2)
    assert bialgebroid_compat(tm, zero_algebroid(CHART2)).passed
    assert bialgebroid_compat(tm, dual_algebroid_from_poisson(PI_X)).passed
    bad = bialgebroid_compat(tangent_algebroid(CHART3), cotangent_algebroid(non_poisson_table()))
    assert not bad.passed
    failure = bad.first_failure()
    assert not parse_expression(failure.witness["residual"], Chart(failure.witness["chart"])).is_zero()
    with pytest.raises(ValueError):
        bialgebroid_compat(tm, zero_algebroid(CHART3))
    with pytest.raises(ValueError):
        bialgebroid_compat(tm, zero_algebroid(CHART2, rank=3))


def test_compatibility_detects_broken_dual_differential():
    # a dual table whose anchor ignores the structure functions: axioms fail and so does compat
    tm = tangent_algebroid(CHART2)
    s = [[[0, 0], [x, 0]], [[-x, 0], [0, 0]]]
    broken = Algebroid(CHART2, [[0, 1], [-1, 0]], s)
    verdict = bialgebroid_compat(tm, broken)
    assert not verdict.axioms_astar.passed
    assert not verdict.compatibility.passed


def test_triangular_verdict_tracks_jacobiator():
    rng = random.Random(11)
    seen = set()
    for _ in range(12):
        entries = {(i, j): random_poly(rng, CHART3, 1, 2) for i, j in combinations(range(3), 2)
                   if rng.random() < 0.7}
        pi = Bivector.from_entries(CHART3, entries)
        verdict = bialgebroid_compat(tangent_algebroid(CHART3), cotangent_algebroid(pi), 1)
        assert verdict.passed == is_poisson(pi)
        seen.add(verdict.passed)
    pi = random_poisson(rng, CHART3)
    assert bialgebroid_compat(tangent_algebroid(CHART3), cotangent_algebroid(pi), 1).passed
    assert False in seen


def test_induced_poisson_sign_and_identities():
    tm = tangent_algebroid(CHART2)
    assert induced_poisson(tm, zero_algebroid(CHART2)).bivector.is_zero()
    ind = induced_poisson(tm, dual_algebroid_from_poisson(PI_X), reference=PI_X)
    assert ind.passed
    assert ind.bivector == -PI_X and ind.sign_vs_reference == -1
    ind3 = induced_poisson(tangent_algebroid(CHART3), dual_algebroid_from_poisson(LIE_POISSON), LIE_POISSON)
    assert ind3.passed and ind3.sign_vs_reference == -1


def test_section_validation():
    tm = tangent_algebroid(CHART2)
    with pytest.raises(ValueError):
        AlgebroidSection(tm, [1])
    with pytest.raises(ValueError):
        bracket_sections(tm.section([1, 0]), tangent_algebroid(CHART2).section([1, 0]))
    with pytest.raises(ValueError):
        AlgebroidBisection(tm, [[0, 1], [1, 0]])
    assert alg.scaling_corpus(CHART2, 2)[0][0] == "1"
