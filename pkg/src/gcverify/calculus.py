"""Tensor fields on a chart and the Cartan calculus on them.

Component conventions, fixed once for the whole package:

* ``VectorField.components[i]`` is the coefficient of ``d/dx^i``,
  ``OneForm.components[i]`` the coefficient of ``dx^i``.
* ``TwoForm.matrix[i][j] = omega(d_i, d_j)`` and
  ``Bivector.matrix[i][j] = pi(dx^i, dx^j)``; both are exactly antisymmetric.
* ``(i_V omega)_i = sum_j V^j omega_{ji}`` and ``(pi# alpha)^i = sum_j pi^{ij} alpha_j``.
* ``EndoTangent.matrix`` acts on vector components; the dual acts on form
  components through the transpose.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .poly import Chart, Poly

ScalarField = Poly


def _check_chart(*objs):
    first = objs[0].chart
    if any(o.chart is not first and o.chart != first for o in objs[1:]):
        charts = {o.chart for o in objs}
        raise ValueError(f"chart mismatch: {sorted(map(repr, charts))}")


def _polys(chart: Chart, comps: Sequence) -> tuple:
    out = []
    for c in comps:
        if isinstance(c, Poly):
            if c.chart != chart:
                raise ValueError("component lives on a different chart")
            out.append(c)
        else:
            out.append(Poly.const(chart, c))
    return tuple(out)


def _matrix(chart: Chart, rows: Sequence[Sequence]) -> tuple:
    rows = tuple(_polys(chart, row) for row in rows)
    n = chart.dim
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected a {n}x{n} matrix")
    return rows


def zero_matrix(chart: Chart) -> tuple:
    z = Poly.zero(chart)
    return tuple((z,) * chart.dim for _ in range(chart.dim))


def identity_matrix(chart: Chart) -> tuple:
    one, z = Poly.const(chart, 1), Poly.zero(chart)
    return tuple(tuple(one if i == j else z for j in range(chart.dim)) for i in range(chart.dim))


def transpose(m: Sequence[Sequence[Poly]]) -> tuple:
    return tuple(zip(*m))


def mat_mul(a, b) -> tuple:
    chart = a[0][0].chart
    rows = []
    for row in a:
        out = []
        for col in zip(*b):
            acc = Poly.zero(chart)
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        rows.append(tuple(out))
    return tuple(rows)


def mat_vec(m, v) -> tuple:
    chart = v[0].chart
    out = []
    for row in m:
        acc = Poly.zero(chart)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a) -> tuple:
    return tuple(tuple(-x for x in row) for row in a)


def is_antisymmetric(m) -> bool:
    n = len(m)
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(i, n))


class _Components:
    """Shared behaviour of vector fields and 1-forms (component tuples)."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Sequence):
        comps = _polys(chart, components)
        if len(comps) != chart.dim:
            raise ValueError(f"expected {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.components = comps

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, [Poly.zero(chart)] * chart.dim)

    @classmethod
    def basis(cls, chart: Chart, k: int):
        return cls(chart, [1 if j == k else 0 for j in range(chart.dim)])

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other):
        _check_chart(self, other)
        return type(self)(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        _check_chart(self, other)
        return type(self)(self.chart, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return type(self)(self.chart, [-a for a in self.components])

    def __mul__(self, f):
        """Pointwise product with a function or constant."""
        return type(self)(self.chart, [a * f for a in self.components])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return (type(self) is type(other) and self.chart == other.chart
                and self.components == other.components)

    def __hash__(self):
        return hash((type(self).__name__, self.components))

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(map(str, self.components))}])"


class VectorField(_Components):
    __slots__ = ()

    def __call__(self, f: Poly) -> Poly:
        """Derivative of ``f`` along this field."""
        _check_chart(self, f)
        acc = Poly.zero(self.chart)
        if f.is_constant():
            return acc
        for k, v in enumerate(self.components):
            if v:
                acc = acc + v * f.partial(k)
        return acc


class OneForm(_Components):
    __slots__ = ()

    def __call__(self, v: VectorField) -> Poly:
        """Contraction ``alpha(V)``."""
        _check_chart(self, v)
        acc = Poly.zero(self.chart)
        for a, b in zip(self.components, v.components):
            if a and b:
                acc = acc + a * b
        return acc


class _SquareField:
    __slots__ = ("chart", "matrix")

    def __init__(self, chart: Chart, matrix: Sequence[Sequence]):
        self.chart = chart
        self.matrix = _matrix(chart, matrix)

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    def __eq__(self, other):
        return type(self) is type(other) and self.chart == other.chart and self.matrix == other.matrix

    def __hash__(self):
        return hash((type(self).__name__, self.matrix))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.matrix for x in row)

    def __add__(self, other):
        _check_chart(self, other)
        return type(self)(self.chart, mat_add(self.matrix, other.matrix))

    def __neg__(self):
        return type(self)(self.chart, mat_neg(self.matrix))

    def __mul__(self, f):
        return type(self)(self.chart, [[x * f for x in row] for row in self.matrix])

    __rmul__ = __mul__

    def __repr__(self):
        rows = "; ".join(", ".join(map(str, row)) for row in self.matrix)
        return f"{type(self).__name__}([{rows}])"


class _Antisymmetric(_SquareField):
    __slots__ = ()

    def __init__(self, chart: Chart, matrix: Sequence[Sequence]):
        super().__init__(chart, matrix)
        if not is_antisymmetric(self.matrix):
            raise ValueError(f"{type(self).__name__} matrix is not antisymmetric")

    @classmethod
    def from_entries(cls, chart: Chart, entries: dict):
        """Build from ``{(i, j): value}`` with ``i < j``; the rest is filled by antisymmetry."""
        n = chart.dim
        m = [[Poly.zero(chart)] * n for _ in range(n)]
        for (i, j), value in entries.items():
            if i == j:
                raise ValueError("diagonal entries of an antisymmetric tensor are zero")
            value = value if isinstance(value, Poly) else Poly.const(chart, value)
            m[i][j] = value
            m[j][i] = -value
        return cls(chart, m)

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, zero_matrix(chart))


class TwoForm(_Antisymmetric):
    __slots__ = ()


class Bivector(_Antisymmetric):
    __slots__ = ()

    def __call__(self, xi: OneForm, eta: OneForm) -> Poly:
        """``pi(xi, eta) := eta(pi# xi)``, the pairing consistent with ``pi#``."""
        return eta(bivector_sharp(self, xi))


class EndoTangent(_SquareField):
    __slots__ = ()

    @classmethod
    def identity(cls, chart: Chart):
        return cls(chart, identity_matrix(chart))

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, zero_matrix(chart))

    def compose(self, other: "EndoTangent") -> "EndoTangent":
        _check_chart(self, other)
        return EndoTangent(self.chart, mat_mul(self.matrix, other.matrix))

    def transpose(self) -> "EndoTangent":
        return EndoTangent(self.chart, transpose(self.matrix))


@dataclass(frozen=True)
class GenSection:
    """A section ``X + alpha`` of TM + T*M."""

    vec: VectorField
    form: OneForm

    def __post_init__(self):
        _check_chart(self.vec, self.form)

    @property
    def chart(self) -> Chart:
        return self.vec.chart

    @classmethod
    def zero(cls, chart: Chart) -> "GenSection":
        return cls(VectorField.zero(chart), OneForm.zero(chart))

    @classmethod
    def of(cls, chart: Chart, vec: Sequence = None, form: Sequence = None) -> "GenSection":
        z = [0] * chart.dim
        return cls(VectorField(chart, vec if vec is not None else z),
                   OneForm(chart, form if form is not None else z))

    def __add__(self, other):
        return GenSection(self.vec + other.vec, self.form + other.form)

    def __sub__(self, other):
        return GenSection(self.vec - other.vec, self.form - other.form)

    def __neg__(self):
        return GenSection(-self.vec, -self.form)

    def __mul__(self, f):
        return GenSection(self.vec * f, self.form * f)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.vec.is_zero() and self.form.is_zero()

    def components(self) -> tuple:
        return self.vec.components + self.form.components

    @classmethod
    def from_components(cls, chart: Chart, comps: Sequence[Poly]) -> "GenSection":
        n = chart.dim
        return cls(VectorField(chart, comps[:n]), OneForm(chart, comps[n:]))


def frame_sections(chart: Chart) -> list:
    """The 2n coordinate frame sections ``(d_i, 0)`` then ``(0, dx^i)`` with labels."""
    out = []
    for k, name in enumerate(chart.names):
        out.append((f"d/d{name}", GenSection(VectorField.basis(chart, k), OneForm.zero(chart))))
    for k, name in enumerate(chart.names):
        out.append((f"d{name}", GenSection(VectorField.zero(chart), OneForm.basis(chart, k))))
    return out


# Cartan calculus ------------------------------------------------------------

def lie_bracket_vf(v: VectorField, w: VectorField) -> VectorField:
    _check_chart(v, w)
    return VectorField(v.chart, [v(wi) - w(vi) for vi, wi in zip(v.components, w.components)])


def d_scalar(f: Poly) -> OneForm:
    return OneForm(f.chart, [f.partial(k) for k in range(f.chart.dim)])


def d_oneform(alpha: OneForm) -> TwoForm:
    n = alpha.chart.dim
    m = [[alpha[j].partial(i) - alpha[i].partial(j) for j in range(n)] for i in range(n)]
    return TwoForm(alpha.chart, m)


def lie_derivative_oneform(v: VectorField, alpha: OneForm) -> OneForm:
    _check_chart(v, alpha)
    n = v.chart.dim
    out = []
    for i in range(n):
        acc = v(alpha[i])
        for j in range(n):
            if alpha[j]:
                acc = acc + alpha[j] * v[j].partial(i)
        out.append(acc)
    return OneForm(v.chart, out)


def interior_two_form(v: VectorField, omega: TwoForm) -> OneForm:
    _check_chart(v, omega)
    n = v.chart.dim
    out = []
    for i in range(n):
        acc = Poly.zero(v.chart)
        for j in range(n):
            if v[j] and omega.matrix[j][i]:
                acc = acc + v[j] * omega.matrix[j][i]
        out.append(acc)
    return OneForm(v.chart, out)


def pairing(e1: GenSection, e2: GenSection) -> Poly:
    """The symmetric pairing ``alpha1(X2) + alpha2(X1)``."""
    _check_chart(e1, e2)
    return e1.form(e2.vec) + e2.form(e1.vec)


def bivector_sharp(pi: Bivector, alpha: OneForm) -> VectorField:
    _check_chart(pi, alpha)
    return VectorField(pi.chart, mat_vec(pi.matrix, alpha.components))


def twoform_flat(omega: TwoForm, v: VectorField) -> OneForm:
    return interior_two_form(v, omega)


def apply_endo(n: EndoTangent, v: VectorField) -> VectorField:
    _check_chart(n, v)
    return VectorField(v.chart, mat_vec(n.matrix, v.components))


def apply_endo_dual(n: EndoTangent, alpha: OneForm) -> OneForm:
    _check_chart(n, alpha)
    return OneForm(alpha.chart, mat_vec(transpose(n.matrix), alpha.components))
