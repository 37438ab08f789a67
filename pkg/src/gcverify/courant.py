"""Dorfman and Courant brackets on sections of TM + T*M."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .calculus import (GenSection, VectorField, d_oneform, d_scalar, interior_two_form,
                       lie_bracket_vf, lie_derivative_oneform, _check_chart)
from .poly import Chart, Poly
from .report import Check, failed, passed, witness

HALF = Fraction(1, 2)


def dorfman(e1: GenSection, e2: GenSection) -> GenSection:
    """``[[X+a, Y+b]] = [X,Y] + L_X b - i_Y da``."""
    _check_chart(e1, e2)
    x, a = e1.vec, e1.form
    y, b = e2.vec, e2.form
    form = lie_derivative_oneform(x, b) - interior_two_form(y, d_oneform(a))
    return GenSection(lie_bracket_vf(x, y), form)


def courant_skew(e1: GenSection, e2: GenSection) -> GenSection:
    """Skew bracket ``[X,Y] + L_X b - L_Y a + 1/2 d(a(Y) - b(X))``."""
    _check_chart(e1, e2)
    x, a = e1.vec, e1.form
    y, b = e2.vec, e2.form
    form = (lie_derivative_oneform(x, b) - lie_derivative_oneform(y, a)
            + d_scalar(a(y) - b(x)) * HALF)
    return GenSection(lie_bracket_vf(x, y), form)


@dataclass(frozen=True)
class SubchartEmbedding:
    """The coordinate submanifold where every coordinate outside ``kept`` vanishes."""

    ambient: Chart
    kept: tuple

    def __post_init__(self):
        kept = tuple(self.kept)
        if len(set(kept)) != len(kept) or any(not 0 <= k < self.ambient.dim for k in kept):
            raise ValueError(f"bad kept indices {kept} for {self.ambient}")
        if not kept:
            raise ValueError("the submanifold needs at least one coordinate")
        object.__setattr__(self, "kept", kept)

    @property
    def sub(self) -> Chart:
        return Chart(self.ambient.names[k] for k in self.kept)

    @property
    def dropped(self) -> tuple:
        return tuple(k for k in range(self.ambient.dim) if k not in self.kept)

    def restrict(self, p: Poly) -> Poly:
        return p.restrict(self.sub, self.kept)

    def is_adapted(self, e: GenSection) -> bool:
        """Vector part tangent to N and form part in the annihilator of TN, along N."""
        return (all(self.restrict(e.vec[k]).is_zero() for k in self.dropped)
                and all(self.restrict(e.form[k]).is_zero() for k in self.kept))

    def restrict_vector(self, v: VectorField) -> VectorField:
        return VectorField(self.sub, [self.restrict(v[k]) for k in self.kept])


def dorfman_restrict_check(emb: SubchartEmbedding, e1: GenSection, e2: GenSection) -> Check:
    """The bracket of two N-adapted sections is again N-adapted along N.

    Its vector part restricts to the bracket of the restricted vector fields.
    """
    key = "courant.submanifold-restriction"
    for label, e in (("e1", e1), ("e2", e2)):
        if e.chart != emb.ambient:
            raise ValueError(f"{label} is not on the ambient chart")
        if not emb.is_adapted(e):
            raise ValueError(f"{label} is not a section of TN + TN° along N")
    br = dorfman(e1, e2)
    names = emb.ambient.names
    for k in emb.dropped:
        r = emb.restrict(br.vec[k])
        if r:
            return failed(key, witness(r, component=f"vec[{names[k]}] on N"))
    for k in emb.kept:
        r = emb.restrict(br.form[k])
        if r:
            return failed(key, witness(r, component=f"form[{names[k]}] on N"))
    lhs = emb.restrict_vector(br.vec)
    rhs = lie_bracket_vf(emb.restrict_vector(e1.vec), emb.restrict_vector(e2.vec))
    for name, a, b in zip(emb.sub.names, lhs, rhs):
        if a != b:
            return failed(key, witness(a - b, component=f"vec[{name}] vs bracket on N"))
    return passed(key)
