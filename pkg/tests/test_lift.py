import random

import pytest
from hypothesis import given, settings

from gcverify.calculus import Bivector, EndoTangent, GenSection, OneForm, TwoForm, VectorField, pairing
from gcverify.courant import courant_skew, dorfman
from gcverify.gcs import GenEndo, from_symplectic, gcs_from_blocks, is_gcs, nijenhuis
from gcverify.lift import (annihilated_by_lifts, lift_chart, lift_endo, lift_oneform, lift_scalar,
                           lift_section, lift_vector)
from gcverify.poly import Chart, Poly
from gcverify.suite import random_gen_endo
from strategies import CHART2, polys, sections

x, y = Poly.var(CHART2, 0), Poly.var(CHART2, 1)
LC = lift_chart(CHART2)
T = LC.total
X, Y, VX, VY = (Poly.var(T, k) for k in range(4))


def test_lifted_chart_names():
    assert T.names == ("x", "y", "v_x", "v_y")
    with pytest.raises(ValueError):
        lift_chart(Chart(("x", "v_x")))


def test_lift_of_function():
    assert lift_scalar(x * x * y) == X * Y * VX * 2 + X * X * VY


def test_lift_of_vector_field():
    # T(x d/dy) = x d/dy + v_x d/dv_y
    assert lift_vector(VectorField(CHART2, [0, x])) == VectorField(T, [0, X, 0, VX])


def test_lift_of_one_form():
    # T(x dy) = v_x dy + x dv_y
    assert lift_oneform(OneForm(CHART2, [0, x])) == OneForm(T, [0, VX, 0, X])


def test_lift_of_endo_blocks():
    n = EndoTangent(CHART2, [[0, x], [0, 0]])
    j = gcs_from_blocks(n, *_zero_blocks())
    tj = lift_endo(j)
    # A-block [[A, 0], [A', A]] with A' = v_x E_{12}
    assert tj.a[0][1] == X and tj.a[2][3] == X and tj.a[2][1] == VX
    assert tj.a[0][3].is_zero()
    # D = -A^T lifts to [[D, D'], [0, D]]
    assert tj.d[1][0] == -X and tj.d[1][2] == -VX and tj.d[3][2] == -X


def _zero_blocks():
    return Bivector.zero(CHART2), TwoForm.zero(CHART2)


def test_lift_of_symplectic_structure_is_gcs():
    j = from_symplectic(TwoForm.from_entries(CHART2, {(0, 1): 1}))
    assert is_gcs(lift_endo(j)).passed


def test_only_zero_form_is_annihilated():
    assert annihilated_by_lifts(OneForm.zero(T), CHART2)
    assert not annihilated_by_lifts(OneForm(T, [0, 0, 0, VX]), CHART2)
    with pytest.raises(ValueError):
        annihilated_by_lifts(OneForm.zero(CHART2), CHART2)


@settings(max_examples=30, deadline=None)
@given(polys(CHART2, 2), polys(CHART2, 2), polys(CHART2, 3))
def test_lift_vector_on_lifted_function(v1, v2, f):
    v = VectorField(CHART2, [v1, v2])
    assert lift_vector(v)(lift_scalar(f)) == lift_scalar(v(f))


@settings(max_examples=30, deadline=None)
@given(sections(max_degree=2), sections(max_degree=2))
def test_lift_respects_pairing_and_brackets(e1, e2):
    t1, t2 = lift_section(e1), lift_section(e2)
    assert pairing(t1, t2) == lift_scalar(pairing(e1, e2))
    assert dorfman(t1, t2) == lift_section(dorfman(e1, e2))
    assert courant_skew(t1, t2) == lift_section(courant_skew(e1, e2))


@settings(max_examples=25, deadline=None)
@given(sections(max_degree=1), sections(max_degree=1))
def test_lift_intertwines_endo_and_nijenhuis(e1, e2):
    rng = random.Random(len(str(e1.components())) * 7919 + len(str(e2.components())))
    j = random_gen_endo(rng, CHART2)
    tj = lift_endo(j)
    t1, t2 = lift_section(e1), lift_section(e2)
    assert tj(t1) == lift_section(j(e1))
    assert lift_endo(j @ j) == tj @ tj
    assert nijenhuis(tj, t1, t2) == lift_section(nijenhuis(j, e1, e2))


def test_lift_of_zero_section():
    assert lift_section(GenSection.zero(CHART2)).is_zero()
    assert isinstance(lift_endo(GenEndo.identity(CHART2)), GenEndo)
    assert lift_endo(GenEndo.identity(CHART2)) == GenEndo.identity(T)
