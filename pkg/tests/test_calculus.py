import pytest
from hypothesis import given, settings

from gcverify.calculus import (Bivector, EndoTangent, GenSection, OneForm, TwoForm, VectorField,
                               apply_endo, apply_endo_dual, bivector_sharp, d_oneform, d_scalar,
                               frame_sections, interior_two_form, lie_bracket_vf,
                               lie_derivative_oneform, pairing, twoform_flat)
from gcverify.poly import Poly
from strategies import CHART2, CHART3, polys

x, y = Poly.var(CHART2, 0), Poly.var(CHART2, 1)


def vf(*comps, chart=CHART2):
    return VectorField(chart, comps)


def form(*comps, chart=CHART2):
    return OneForm(chart, comps)


def test_vector_field_bracket():
    assert lie_bracket_vf(vf(0, x), vf(y, 0)) == vf(x, -y)


def test_bracket_of_coordinate_fields_vanishes():
    assert lie_bracket_vf(VectorField.basis(CHART2, 0), VectorField.basis(CHART2, 1)).is_zero()


def test_exterior_derivative_of_xdy():
    # d(x dy) = dx ^ dy
    assert d_oneform(form(0, x)) == TwoForm.from_entries(CHART2, {(0, 1): 1})


def test_contraction_conventions():
    omega = TwoForm.from_entries(CHART2, {(0, 1): 1})
    # i_{d/dx}(dx ^ dy) = dy
    assert interior_two_form(VectorField.basis(CHART2, 0), omega) == form(0, 1)
    assert twoform_flat(omega, VectorField.basis(CHART2, 1)) == form(-1, 0)
    pi = Bivector.from_entries(CHART2, {(0, 1): 1})
    # row contraction: (pi# dy)^x = pi^{xy}
    assert bivector_sharp(pi, form(0, 1)) == vf(1, 0)
    assert pi(form(1, 0), form(0, 1)) == Poly.const(CHART2, -1)


def test_endo_and_dual():
    n = EndoTangent(CHART2, [[0, x], [0, 0]])
    assert apply_endo(n, vf(0, 1)) == vf(x, 0)
    assert apply_endo_dual(n, form(1, 0)) == form(0, x)
    v, a = vf(y, x), form(x * y, 1)
    assert a(apply_endo(n, v)) == apply_endo_dual(n, a)(v)


def test_antisymmetry_enforced():
    with pytest.raises(ValueError):
        Bivector(CHART2, [[0, x], [x, 0]])
    with pytest.raises(ValueError):
        TwoForm(CHART2, [[1, 0], [0, 0]])


def test_chart_mismatch_rejected():
    with pytest.raises(ValueError):
        lie_bracket_vf(VectorField.basis(CHART2, 0), VectorField.basis(CHART3, 0))


def test_frame_sections_labels():
    labels = [label for label, _ in frame_sections(CHART2)]
    assert labels == ["d/dx", "d/dy", "dx", "dy"]


def test_generalized_section_round_trip():
    e = GenSection.of(CHART2, [x, 0], [0, y])
    assert GenSection.from_components(CHART2, e.components()) == e
    assert pairing(e, e).is_zero()
    f = GenSection.of(CHART2, [x, 0], [y, 0])
    assert pairing(f, f) == x * y * 2


@settings(max_examples=40, deadline=None)
@given(polys(CHART3, 3))
def test_d_squared_vanishes(f):
    assert d_oneform(d_scalar(f)).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys(CHART2), polys(CHART2), polys(CHART2), polys(CHART2), polys(CHART2))
def test_cartan_formula(v1, v2, a1, a2, f):
    v, a = vf(v1, v2), form(a1, a2)
    # L_V a = i_V da + d(a(V))
    assert lie_derivative_oneform(v, a) == interior_two_form(v, d_oneform(a)) + d_scalar(a(v))
    # V is a derivation
    assert v(f * a1) == v(f) * a1 + f * v(a1)


@settings(max_examples=30, deadline=None)
@given(*[polys(CHART2, 2, 2)] * 6)
def test_vector_bracket_jacobi(a, b, c, d, e, f):
    u, v, w = vf(a, b), vf(c, d), vf(e, f)
    jac = (lie_bracket_vf(u, lie_bracket_vf(v, w)) + lie_bracket_vf(v, lie_bracket_vf(w, u))
           + lie_bracket_vf(w, lie_bracket_vf(u, v)))
    assert jac.is_zero()
