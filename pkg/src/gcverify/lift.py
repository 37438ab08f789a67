"""Complete lifts to the tangent bundle.

The lifted chart of ``(x^1..x^n)`` is ``(x^1..x^n, v_x^1..v_x^n)``.  Writing
``f' = sum_k v^k d_k f`` for the derivative of a base polynomial along the
fibre coordinate, the lifts are::

    T f           = f'
    T (V^i d_i)   = V^i d_{x^i} + V'^i d_{v^i}
    T (a_i dx^i)  = a'_i dx^i + a_i dv^i

and a block endomorphism ``[[A, B], [C, D]]`` lifts to the endomorphism whose
blocks, ordered ``(x, v)`` on vectors and ``(dx, dv)`` on forms, are::

    [[A, 0], [A', A]]   [[0, B], [B, B']]
    [[C', C], [C, 0]]   [[D, D'], [0, D]]

These come from conjugating ``T J`` by the flip of ``TTM`` and its dual.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .calculus import GenSection, OneForm, VectorField
from .gcs import GenEndo
from .poly import Chart, Poly


@dataclass(frozen=True)
class LiftedChart:
    base: Chart
    total: Chart

    @property
    def n(self) -> int:
        return self.base.dim


@lru_cache(maxsize=None)
def lift_chart(base: Chart) -> LiftedChart:
    vnames = tuple(f"v_{name}" for name in base.names)
    clash = set(vnames) & set(base.names)
    if clash:
        raise ValueError(f"lifted coordinate names collide with the chart: {sorted(clash)}")
    return LiftedChart(base, Chart(base.names + vnames))


def _up(p: Poly, lc: LiftedChart) -> Poly:
    return p.embed(lc.total, range(lc.n))


def _dot(p: Poly, lc: LiftedChart) -> Poly:
    """Derivative of the base polynomial ``p`` along ``v``, on the lifted chart."""
    n = lc.n
    acc = Poly.zero(lc.total)
    for k in range(n):
        dk = p.partial(k)
        if dk:
            acc = acc + _up(dk, lc) * Poly.var(lc.total, n + k)
    return acc


def lift_scalar(f: Poly) -> Poly:
    return _dot(f, lift_chart(f.chart))


def lift_vector(v: VectorField) -> VectorField:
    lc = lift_chart(v.chart)
    comps = [_up(c, lc) for c in v] + [_dot(c, lc) for c in v]
    return VectorField(lc.total, comps)


def lift_oneform(alpha: OneForm) -> OneForm:
    lc = lift_chart(alpha.chart)
    comps = [_dot(c, lc) for c in alpha] + [_up(c, lc) for c in alpha]
    return OneForm(lc.total, comps)


def lift_section(e: GenSection) -> GenSection:
    return GenSection(lift_vector(e.vec), lift_oneform(e.form))


def _blocks(top_left, top_right, bottom_left, bottom_right):
    return tuple(tuple(r1) + tuple(r2) for r1, r2 in zip(top_left, top_right)) + \
        tuple(tuple(r1) + tuple(r2) for r1, r2 in zip(bottom_left, bottom_right))


def lift_endo(j: GenEndo) -> GenEndo:
    lc = lift_chart(j.chart)
    zero = tuple((Poly.zero(lc.total),) * lc.n for _ in range(lc.n))

    def up(m):
        return tuple(tuple(_up(x, lc) for x in row) for row in m)

    def dot(m):
        return tuple(tuple(_dot(x, lc) for x in row) for row in m)

    a, b, c, d = up(j.a), up(j.b), up(j.c), up(j.d)
    return GenEndo(
        lc.total,
        _blocks(a, zero, dot(j.a), a),
        _blocks(zero, b, b, dot(j.b)),
        _blocks(dot(j.c), c, c, zero),
        _blocks(d, dot(j.d), zero, d),
    )


def lifted_test_fields(chart: Chart) -> list:
    """``{d_i} u {x^j d_i}``: their lifts detect nonzero 1-forms on the lifted chart."""
    out = []
    n = chart.dim
    for i in range(n):
        out.append(VectorField.basis(chart, i))
        for j in range(n):
            out.append(VectorField.basis(chart, i) * Poly.var(chart, j))
    return out


def annihilated_by_lifts(xi: OneForm, base: Chart) -> bool:
    """True when ``xi(T V) = 0`` for every field of :func:`lifted_test_fields`.

    For polynomial 1-forms on the lifted chart this happens only for ``xi = 0``.
    """
    lc = lift_chart(base)
    if xi.chart != lc.total:
        raise ValueError("xi must live on the lifted chart")
    return all(xi(lift_vector(v)).is_zero() for v in lifted_test_fields(base))
