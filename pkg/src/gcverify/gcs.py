"""Generalized almost complex structures as block endomorphisms of TM + T*M.

A :class:`GenEndo` acts on a section ``(X, alpha)`` by::

    X'     = a X + b alpha        (a = N,        b = matrix of pi#)
    alpha' = c X + d alpha        (c = matrix of omega-flat, d = -N^T)

The four blocks are stored as plain matrices so that products such as
``J o J`` and raw non-examples stay representable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .calculus import (Bivector, EndoTangent, GenSection, TwoForm, frame_sections, identity_matrix,
                       is_antisymmetric, mat_mul, mat_neg, mat_vec, transpose, zero_matrix,
                       _check_chart, _matrix)
from .courant import dorfman
from .poly import Chart, GaussRational, Poly
from .report import Check, failed, passed, witness


class GenEndo:
    __slots__ = ("chart", "a", "b", "c", "d")

    def __init__(self, chart: Chart, a, b, c, d):
        self.chart = chart
        self.a = _matrix(chart, a)
        self.b = _matrix(chart, b)
        self.c = _matrix(chart, c)
        self.d = _matrix(chart, d)

    # block views
    @property
    def blockN(self) -> EndoTangent:
        return EndoTangent(self.chart, self.a)

    @property
    def blockPi(self) -> Bivector:
        return Bivector(self.chart, self.b)

    @property
    def blockOmega(self) -> TwoForm:
        # c is the matrix of X -> i_X omega, i.e. the transpose of omega's matrix
        return TwoForm(self.chart, transpose(self.c))

    @property
    def blockD(self) -> EndoTangent:
        return EndoTangent(self.chart, self.d)

    def has_standard_shape(self) -> bool:
        """Antisymmetric off-diagonal blocks and ``d = -a^T``."""
        return (is_antisymmetric(self.b) and is_antisymmetric(self.c)
                and self.d == mat_neg(transpose(self.a)))

    @classmethod
    def identity(cls, chart: Chart) -> "GenEndo":
        one, zero = identity_matrix(chart), zero_matrix(chart)
        return cls(chart, one, zero, zero, one)

    @classmethod
    def from_matrix(cls, chart: Chart, m) -> "GenEndo":
        n = chart.dim
        return cls(chart,
                   [row[:n] for row in m[:n]], [row[n:] for row in m[:n]],
                   [row[:n] for row in m[n:]], [row[n:] for row in m[n:]])

    def to_matrix(self) -> tuple:
        top = tuple(ra + rb for ra, rb in zip(self.a, self.b))
        bottom = tuple(rc + rd for rc, rd in zip(self.c, self.d))
        return top + bottom

    def __call__(self, e: GenSection) -> GenSection:
        _check_chart(self, e)
        x, alpha = e.vec.components, e.form.components
        vec = [p + q for p, q in zip(mat_vec(self.a, x), mat_vec(self.b, alpha))]
        form = [p + q for p, q in zip(mat_vec(self.c, x), mat_vec(self.d, alpha))]
        return GenSection.of(self.chart, vec, form)

    def compose(self, other: "GenEndo") -> "GenEndo":
        _check_chart(self, other)
        return GenEndo.from_matrix(self.chart, mat_mul(self.to_matrix(), other.to_matrix()))

    def __matmul__(self, other):
        return self.compose(other)

    def __neg__(self):
        return GenEndo(self.chart, mat_neg(self.a), mat_neg(self.b), mat_neg(self.c), mat_neg(self.d))

    def __eq__(self, other):
        return (isinstance(other, GenEndo) and self.chart == other.chart
                and self.to_matrix() == other.to_matrix())

    def __hash__(self):
        return hash(self.to_matrix())

    def __repr__(self):
        return f"GenEndo(chart={self.chart}, N={self.a}, pi={self.b}, omega_flat={self.c}, D={self.d})"


# constructors -----------------------------------------------------------------

def gcs_from_blocks(n: EndoTangent, pi: Bivector, omega: TwoForm) -> GenEndo:
    """The block matrix ``[[N, pi#], [omega-flat, -N*]]``."""
    _check_chart(n, pi, omega)
    return GenEndo(n.chart, n.matrix, pi.matrix, transpose(omega.matrix),
                   mat_neg(transpose(n.matrix)))


def _det(m) -> Poly:
    """Determinant by Laplace expansion along the first row, memoised on column sets."""
    size = len(m)
    chart = m[0][0].chart
    memo: dict = {}

    def minor(row: int, cols: tuple) -> Poly:
        if row == size:
            return Poly.const(chart, 1)
        if cols in memo:
            return memo[cols]
        acc = Poly.zero(chart)
        for pos, col in enumerate(cols):
            entry = m[row][col]
            if entry:
                term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
                acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(size)))


def determinant(m) -> Poly:
    return _det(m)


def inverse_constant_det(m) -> tuple:
    """Exact inverse of a square Poly matrix whose determinant is a nonzero constant."""
    det = _det(m)
    if det.is_zero():
        raise ValueError("matrix is degenerate (zero determinant)")
    if not det.is_constant():
        raise ValueError(f"determinant {det} is not constant; inverse would not be polynomial")
    inv_det = det.constant_value().inverse()
    size = len(m)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            # adjugate entry (i, j) is the (j, i) cofactor
            sub = [[m[r][c] for c in range(size) if c != i] for r in range(size) if r != j]
            cof = _det(sub) if sub else Poly.const(det.chart, 1)
            if (i + j) % 2:
                cof = -cof
            row.append(cof.scale(inv_det))
        out.append(tuple(row))
    return tuple(out)


def from_symplectic(omega: TwoForm) -> GenEndo:
    """``[[0, -(omega-flat)^-1], [omega-flat, 0]]`` for a constant-determinant 2-form."""
    flat = transpose(omega.matrix)
    pi_sharp = mat_neg(inverse_constant_det(flat))
    zero = zero_matrix(omega.chart)
    return GenEndo(omega.chart, zero, pi_sharp, flat, zero)


def from_complex(j: EndoTangent) -> GenEndo:
    """``[[J, 0], [0, -J*]]`` for an almost complex structure ``J``."""
    if j.compose(j) != -EndoTangent.identity(j.chart):
        raise ValueError("J does not square to -Id")
    zero = zero_matrix(j.chart)
    return GenEndo(j.chart, j.matrix, zero, zero, mat_neg(transpose(j.matrix)))


def standard_complex(chart: Chart) -> EndoTangent:
    """Constant J pairing coordinates (2k, 2k+1): ``d_{2k} -> d_{2k+1} -> -d_{2k}``."""
    n = chart.dim
    if n % 2:
        raise ValueError("standard complex structure needs an even-dimensional chart")
    m = [[0] * n for _ in range(n)]
    for k in range(0, n, 2):
        m[k + 1][k] = 1
        m[k][k + 1] = -1
    return EndoTangent(chart, m)


# algebraic checks -------------------------------------------------------------

def _pairing_matrix(chart: Chart) -> tuple:
    n = chart.dim
    one, z = Poly.const(chart, 1), Poly.zero(chart)
    return tuple(tuple(one if abs(i - j) == n and i != j else z for j in range(2 * n))
                 for i in range(2 * n))


def _entry_label(chart: Chart, i: int, j: int) -> str:
    n = chart.dim
    def name(k):
        return f"d/d{chart.names[k]}" if k < n else f"d{chart.names[k - n]}"
    return f"({name(i)}, {name(j)})"


def _compare_matrices(key: str, chart: Chart, lhs, rhs) -> Check:
    for i, (ra, rb) in enumerate(zip(lhs, rhs)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return failed(key, witness(x - y, entry=_entry_label(chart, i, j)))
    return passed(key)


def is_orthogonal(j: GenEndo) -> Check:
    """``J^T P J = P`` for the pairing matrix ``P``."""
    m = j.to_matrix()
    p = _pairing_matrix(j.chart)
    return _compare_matrices("gcs.orthogonal", j.chart, mat_mul(transpose(m), mat_mul(p, m)), p)


def squares_minus_id(j: GenEndo) -> Check:
    m = j.to_matrix()
    minus_id = mat_neg(identity_matrix_2n(j.chart))
    return _compare_matrices("gcs.square", j.chart, mat_mul(m, m), minus_id)


def identity_matrix_2n(chart: Chart) -> tuple:
    n2 = 2 * chart.dim
    one, z = Poly.const(chart, 1), Poly.zero(chart)
    return tuple(tuple(one if i == k else z for k in range(n2)) for i in range(n2))


Bracket = Callable[[GenSection, GenSection], GenSection]


def nijenhuis(j: GenEndo, e1: GenSection, e2: GenSection, bracket: Bracket = dorfman) -> GenSection:
    """``[[Je1,Je2]] + J^2[[e1,e2]] - J([[Je1,e2]] + [[e1,Je2]])``."""
    je1, je2 = j(e1), j(e2)
    return (bracket(je1, je2) + j(j(bracket(e1, e2)))
            - j(bracket(je1, e2) + bracket(e1, je2)))


def _section_residual(chart: Chart, s: GenSection):
    for k, p in enumerate(s.vec):
        if p:
            return f"vec[{chart.names[k]}]", p
    for k, p in enumerate(s.form):
        if p:
            return f"form[{chart.names[k]}]", p
    return None


def nijenhuis_on_frame(j: GenEndo, bracket: Bracket = dorfman, key: str = "gcs.nijenhuis") -> Check:
    """Evaluate the Nijenhuis tensor on every ordered pair of frame sections."""
    frame = frame_sections(j.chart)
    for la, ea in frame:
        for lb, eb in frame:
            hit = _section_residual(j.chart, nijenhuis(j, ea, eb, bracket))
            if hit:
                comp, p = hit
                return failed(key, witness(p, pair=[la, lb], component=comp))
    return passed(key)


@dataclass(frozen=True)
class GcsVerdict:
    orthogonal: Check
    square: Check
    nijenhuis: Check

    @property
    def passed(self) -> bool:
        return self.orthogonal.passed and self.square.passed and self.nijenhuis.passed

    def __bool__(self):
        return self.passed

    @property
    def checks(self) -> tuple:
        return (self.orthogonal, self.square, self.nijenhuis)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)


def is_gcs(j: GenEndo) -> GcsVerdict:
    """Orthogonality, ``J^2 = -Id`` and frame vanishing of the Nijenhuis tensor.

    Frame vanishing is enough because the tensor is function-linear in both
    slots once the two algebraic conditions hold.
    """
    return GcsVerdict(is_orthogonal(j), squares_minus_id(j), nijenhuis_on_frame(j))


# conjugation ------------------------------------------------------------------

def iota(e: GenSection) -> GenSection:
    return GenSection(e.vec, -e.form)


def conjugate_endo(j: GenEndo) -> GenEndo:
    """``I o J o I``: off-diagonal blocks change sign."""
    return GenEndo(j.chart, j.a, mat_neg(j.b), mat_neg(j.c), j.d)


# complexified sections and eigenbundles ----------------------------------------

@dataclass(frozen=True)
class ComplexGenSection:
    re: GenSection
    im: GenSection

    def __post_init__(self):
        _check_chart(self.re, self.im)

    @property
    def chart(self) -> Chart:
        return self.re.chart

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __add__(self, other):
        return ComplexGenSection(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexGenSection(self.re - other.re, self.im - other.im)

    def times_i(self) -> "ComplexGenSection":
        return ComplexGenSection(-self.im, self.re)

    def scale(self, q) -> "ComplexGenSection":
        return ComplexGenSection(self.re * q, self.im * q)


def complex_pairing(u: ComplexGenSection, w: ComplexGenSection) -> tuple:
    """Complex-bilinear extension of the pairing, as ``(re, im)`` polynomials."""
    from .calculus import pairing
    re = pairing(u.re, w.re) - pairing(u.im, w.im)
    im = pairing(u.re, w.im) + pairing(u.im, w.re)
    return re, im


def complex_bracket(u: ComplexGenSection, w: ComplexGenSection,
                    bracket: Bracket = dorfman) -> ComplexGenSection:
    """Complex-bilinear extension of a real bracket."""
    return ComplexGenSection(bracket(u.re, w.re) - bracket(u.im, w.im),
                             bracket(u.re, w.im) + bracket(u.im, w.re))


def apply_complex(j: GenEndo, u: ComplexGenSection) -> ComplexGenSection:
    return ComplexGenSection(j(u.re), j(u.im))


def eigen_projector_plus(j: GenEndo, e: GenSection, check: bool = True) -> ComplexGenSection:
    """``e - i J e``, the generator of the +i eigenbundle attached to ``e``."""
    if check and not squares_minus_id(j).passed:
        raise ValueError("J does not square to -Id")
    return ComplexGenSection(e, -j(e))


def project_minus(j: GenEndo, u: ComplexGenSection) -> ComplexGenSection:
    """``1/2 (Id + i J)`` applied to ``u``, the projection onto the -i eigenbundle."""
    ju = apply_complex(j, u)
    return (u + ju.times_i()).scale(GaussRational(1, 0) / 2)


def eigenbundle_involutive(j: GenEndo, bracket: Bracket = dorfman) -> Check:
    """Brackets of +i eigenbundle generators have no -i component, on the frame."""
    key = "gcs.eigenbundle-involutive"
    if not squares_minus_id(j).passed:
        raise ValueError("J does not square to -Id")
    frame = frame_sections(j.chart)
    gens = [(label, eigen_projector_plus(j, e, check=False)) for label, e in frame]
    for la, ua in gens:
        for lb, ub in gens:
            proj = project_minus(j, complex_bracket(ua, ub, bracket))
            for part, s in (("re", proj.re), ("im", proj.im)):
                hit = _section_residual(j.chart, s)
                if hit:
                    comp, p = hit
                    return failed(key, witness(p, pair=[la, lb], component=f"{part}.{comp}"))
    return passed(key)
