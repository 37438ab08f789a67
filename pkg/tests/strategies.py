"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from gcverify.calculus import GenSection
from gcverify.poly import Chart, GaussRational, Poly

CHART2 = Chart(("x", "y"))
CHART3 = Chart(("x", "y", "z"))

rationals = st.builds(Fraction, st.integers(-3, 3), st.sampled_from([1, 2, 3]))
gaussians = st.builds(GaussRational, rationals, rationals)


def polys(chart: Chart = CHART2, max_degree: int = 2, max_terms: int = 3, complex_coeffs: bool = False):
    mono = st.tuples(*[st.integers(0, max_degree)] * chart.dim).filter(lambda m: sum(m) <= max_degree)
    coeff = gaussians if complex_coeffs else rationals
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: Poly(chart, d))


def sections(chart: Chart = CHART2, max_degree: int = 2):
    return st.lists(polys(chart, max_degree, 2), min_size=2 * chart.dim, max_size=2 * chart.dim).map(
        lambda comps: GenSection.from_components(chart, comps))


def points(chart: Chart = CHART2):
    return st.lists(rationals, min_size=chart.dim, max_size=chart.dim)
