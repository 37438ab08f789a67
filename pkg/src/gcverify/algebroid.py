"""Chart-trivialised Lie algebroids, Poisson bivectors and bialgebroid checks.

An algebroid of rank r has a frame ``e_1..e_r`` with ``rho(e_a) = anchor[a]``
(a list of n vector components) and ``[e_a, e_b] = sum_k structure[a][b][k] e_k``.
Cochains of degree 0, 1 and 2 are a Poly, a length-r tuple and an r x r
antisymmetric matrix; the differential of a 2-cochain is an r x r x r array.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .calculus import (Bivector, OneForm, VectorField, bivector_sharp, d_scalar,
                       is_antisymmetric, lie_bracket_vf, lie_derivative_oneform, _check_chart)
from .poly import Chart, Poly
from .report import Check, failed, passed, witness


class Algebroid:
    __slots__ = ("chart", "rank", "anchor", "structure", "name")

    def __init__(self, chart: Chart, anchor: Sequence[Sequence], structure: Sequence, name: str = ""):
        rank = len(anchor)
        self.chart = chart
        self.rank = rank
        self.name = name
        self.anchor = tuple(VectorField(chart, row) for row in anchor)
        s = []
        for a in range(rank):
            row = []
            for b in range(rank):
                comps = structure[a][b]
                if len(comps) != rank:
                    raise ValueError("structure functions need rank components")
                row.append(tuple(c if isinstance(c, Poly) else Poly.const(chart, c) for c in comps))
            s.append(tuple(row))
        if len(s) != rank:
            raise ValueError("structure array must be rank x rank x rank")
        for a in range(rank):
            for b in range(rank):
                if s[a][b] != tuple(-c for c in s[b][a]):
                    raise ValueError(f"structure functions not antisymmetric in ({a}, {b})")
        self.structure = tuple(s)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebroid{label} rank={self.rank} on {self.chart}>"

    def section(self, comps: Sequence) -> "AlgebroidSection":
        return AlgebroidSection(self, comps)

    def frame(self) -> list:
        return [AlgebroidSection.basis(self, a) for a in range(self.rank)]

    def anchor_of(self, u: "AlgebroidSection") -> VectorField:
        acc = VectorField.zero(self.chart)
        for ua, rho in zip(u.components, self.anchor):
            if ua:
                acc = acc + rho * ua
        return acc

    def anchor_matrix(self) -> tuple:
        """``anchor_matrix()[a][i]`` = i-th component of ``rho(e_a)``."""
        return tuple(rho.components for rho in self.anchor)


class AlgebroidSection:
    __slots__ = ("algebroid", "components")

    def __init__(self, algebroid: Algebroid, comps: Sequence):
        chart = algebroid.chart
        comps = tuple(c if isinstance(c, Poly) else Poly.const(chart, c) for c in comps)
        if len(comps) != algebroid.rank:
            raise ValueError(f"expected {algebroid.rank} components")
        self.algebroid = algebroid
        self.components = comps

    @classmethod
    def basis(cls, algebroid: Algebroid, a: int) -> "AlgebroidSection":
        return cls(algebroid, [1 if k == a else 0 for k in range(algebroid.rank)])

    @property
    def chart(self) -> Chart:
        return self.algebroid.chart

    def __add__(self, other):
        _same(self, other)
        return AlgebroidSection(self.algebroid, [p + q for p, q in zip(self.components, other.components)])

    def __sub__(self, other):
        _same(self, other)
        return AlgebroidSection(self.algebroid, [p - q for p, q in zip(self.components, other.components)])

    def __neg__(self):
        return AlgebroidSection(self.algebroid, [-p for p in self.components])

    def __mul__(self, f):
        return AlgebroidSection(self.algebroid, [p * f for p in self.components])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def __eq__(self, other):
        return isinstance(other, AlgebroidSection) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"AlgebroidSection([{', '.join(map(str, self.components))}])"


class AlgebroidBisection:
    """An element of Gamma(wedge^2 A) as the antisymmetric matrix ``W^{ab}``."""

    __slots__ = ("algebroid", "matrix")

    def __init__(self, algebroid: Algebroid, matrix: Sequence[Sequence]):
        chart = algebroid.chart
        m = tuple(tuple(x if isinstance(x, Poly) else Poly.const(chart, x) for x in row) for row in matrix)
        r = algebroid.rank
        if len(m) != r or any(len(row) != r for row in m):
            raise ValueError(f"expected a {r}x{r} matrix")
        if not is_antisymmetric(m):
            raise ValueError("bisection matrix is not antisymmetric")
        self.algebroid = algebroid
        self.matrix = m

    def __add__(self, other):
        return AlgebroidBisection(self.algebroid, [[x + y for x, y in zip(ra, rb)]
                                                   for ra, rb in zip(self.matrix, other.matrix)])

    def __sub__(self, other):
        return AlgebroidBisection(self.algebroid, [[x - y for x, y in zip(ra, rb)]
                                                   for ra, rb in zip(self.matrix, other.matrix)])

    def __eq__(self, other):
        return isinstance(other, AlgebroidBisection) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.matrix for x in row)


def _same(u, w):
    if u.algebroid is not w.algebroid:
        raise ValueError("sections belong to different algebroids")


# standard algebroids ------------------------------------------------------------

def tangent_algebroid(chart: Chart) -> Algebroid:
    n = chart.dim
    anchor = [[1 if i == a else 0 for i in range(n)] for a in range(n)]
    zero = [[[0] * n for _ in range(n)] for _ in range(n)]
    return Algebroid(chart, anchor, zero, name="TM")


def zero_algebroid(chart: Chart, rank: int | None = None) -> Algebroid:
    r = chart.dim if rank is None else rank
    anchor = [[0] * chart.dim for _ in range(r)]
    zero = [[[0] * r for _ in range(r)] for _ in range(r)]
    return Algebroid(chart, anchor, zero, name="zero")


# bracket and axioms ---------------------------------------------------------------

def bracket_sections(u: AlgebroidSection, w: AlgebroidSection) -> AlgebroidSection:
    """Frame bracket extended by the anchored Leibniz rule."""
    _same(u, w)
    alg = u.algebroid
    r = alg.rank
    chart = alg.chart
    out = [Poly.zero(chart) for _ in range(r)]
    for a, ua in enumerate(u.components):
        if not ua:
            continue
        for b, wb in enumerate(w.components):
            if not wb:
                continue
            uw = ua * wb
            for k, c in enumerate(alg.structure[a][b]):
                if c:
                    out[k] = out[k] + uw * c
    ru, rw = alg.anchor_of(u), alg.anchor_of(w)
    for k in range(r):
        out[k] = out[k] + ru(w.components[k]) - rw(u.components[k])
    return AlgebroidSection(alg, out)


def _section_hit(alg: Algebroid, s: AlgebroidSection):
    for k, p in enumerate(s.components):
        if p:
            return f"e{k + 1}", p
    return None


def _vector_hit(chart: Chart, v: VectorField):
    for k, p in enumerate(v.components):
        if p:
            return f"d/d{chart.names[k]}", p
    return None


def check_axioms(alg: Algebroid) -> Check:
    """Anchor is a bracket morphism on frame pairs and Jacobi holds on frame triples.

    With the anchor condition in place the Jacobiator is function-linear, so
    frame triples are enough.
    """
    key = "algebroid.axioms"
    frame = alg.frame()
    for a, b in combinations(range(alg.rank), 2):
        lhs = alg.anchor_of(bracket_sections(frame[a], frame[b]))
        rhs = lie_bracket_vf(alg.anchor[a], alg.anchor[b])
        hit = _vector_hit(alg.chart, lhs - rhs)
        if hit:
            return failed(key, witness(hit[1], axiom="anchor-morphism",
                                       pair=[f"e{a + 1}", f"e{b + 1}"], component=hit[0]))
    for a, b, c in combinations(range(alg.rank), 3):
        ea, eb, ec = frame[a], frame[b], frame[c]
        jac = (bracket_sections(ea, bracket_sections(eb, ec))
               + bracket_sections(eb, bracket_sections(ec, ea))
               + bracket_sections(ec, bracket_sections(ea, eb)))
        hit = _section_hit(alg, jac)
        if hit:
            return failed(key, witness(hit[1], axiom="jacobi",
                                       triple=[f"e{a + 1}", f"e{b + 1}", f"e{c + 1}"], component=hit[0]))
    return passed(key)


# Poisson bivectors ---------------------------------------------------------------

def poisson_jacobiator(pi: Bivector) -> tuple:
    """``Jac^{ijk} = sum_l (pi^{lk} d_l pi^{ij} + pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki})``."""
    n = pi.chart.dim
    p = pi.matrix
    d = [[[p[i][j].partial(l) for l in range(n)] for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                acc = Poly.zero(pi.chart)
                for l in range(n):
                    for coef, deriv in ((p[l][k], d[i][j][l]), (p[l][i], d[j][k][l]), (p[l][j], d[k][i][l])):
                        if coef and deriv:
                            acc = acc + coef * deriv
                row.append(acc)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def is_poisson(pi: Bivector) -> bool:
    return all(x.is_zero() for plane in poisson_jacobiator(pi) for row in plane for x in row)


def poisson_bracket(pi: Bivector, f: Poly, g: Poly) -> Poly:
    """``{f, g} = pi(df, dg) = dg(pi# df)``."""
    return pi(d_scalar(f), d_scalar(g))


def form_bracket(pi: Bivector, xi: OneForm, eta: OneForm) -> OneForm:
    """``[xi, eta]_pi = L_{pi# xi} eta - L_{pi# eta} xi - d pi(xi, eta)``."""
    _check_chart(pi, xi, eta)
    return (lie_derivative_oneform(bivector_sharp(pi, xi), eta)
            - lie_derivative_oneform(bivector_sharp(pi, eta), xi)
            - d_scalar(pi(xi, eta)))


def cotangent_algebroid(pi: Bivector, name: str = "") -> Algebroid:
    """Anchor ``pi#`` and coframe brackets from :func:`form_bracket`, without any Poisson check."""
    chart = pi.chart
    n = chart.dim
    coframe = [OneForm.basis(chart, a) for a in range(n)]
    anchor = [bivector_sharp(pi, coframe[a]).components for a in range(n)]
    structure = [[form_bracket(pi, coframe[a], coframe[b]).components for b in range(n)] for a in range(n)]
    return Algebroid(chart, anchor, structure, name=name or "T*M_pi")


def dual_algebroid_from_poisson(pi: Bivector) -> Algebroid:
    if not is_poisson(pi):
        raise ValueError("bivector is not Poisson (nonzero Jacobiator)")
    return cotangent_algebroid(pi)


# differential and Schouten bracket ----------------------------------------------------

def _degree(cochain) -> int:
    if isinstance(cochain, Poly):
        return 0
    first = cochain[0]
    if isinstance(first, Poly):
        return 1
    inner = first[0]
    if isinstance(inner, Poly):
        return 2
    return 3


def algebroid_differential(alg: Algebroid, cochain):
    """Cartan differential of a 0-, 1- or 2-cochain in the dual frame."""
    deg = _degree(cochain)
    r = alg.rank
    rho = alg.anchor
    c = alg.structure
    chart = alg.chart
    if deg == 0:
        return tuple(rho[a](cochain) for a in range(r))
    if deg == 1:
        xi = cochain
        if len(xi) != r:
            raise ValueError(f"expected a 1-cochain with {r} components")
        m = [[Poly.zero(chart)] * r for _ in range(r)]
        for a, b in combinations(range(r), 2):
            acc = rho[a](xi[b]) - rho[b](xi[a])
            for k, ck in enumerate(c[a][b]):
                if ck and xi[k]:
                    acc = acc - ck * xi[k]
            m[a][b] = acc
            m[b][a] = -acc
        return tuple(tuple(row) for row in m)
    if deg == 2:
        w = cochain

        def term(a, b, cc):
            acc = rho[a](w[b][cc]) - rho[b](w[a][cc]) + rho[cc](w[a][b])
            for k in range(r):
                for (x, y, z, sign) in ((a, b, cc, -1), (a, cc, b, 1), (b, cc, a, -1)):
                    coef = c[x][y][k]
                    if coef and w[k][z]:
                        acc = acc + coef * w[k][z] * sign
            return acc

        return tuple(tuple(tuple(term(a, b, cc) for cc in range(r)) for b in range(r)) for a in range(r))
    raise ValueError("algebroid_differential supports cochains of degree <= 2 only")


def lie_derivative_bisection(u: AlgebroidSection, w: AlgebroidBisection) -> AlgebroidBisection:
    """``[u, W]``: ``rho(u) W + B W + W B^T`` with ``B[a][k]`` the a-th coefficient of ``[u, e_k]``."""
    alg = u.algebroid
    if w.algebroid is not alg:
        raise ValueError("bisection belongs to a different algebroid")
    r = alg.rank
    ru = alg.anchor_of(u)
    cols = [bracket_sections(u, e).components for e in alg.frame()]
    bmat = [[cols[k][a] for k in range(r)] for a in range(r)]
    m = w.matrix
    out = []
    for a in range(r):
        row = []
        for b in range(r):
            acc = ru(m[a][b])
            for k in range(r):
                if bmat[a][k] and m[k][b]:
                    acc = acc + bmat[a][k] * m[k][b]
                if bmat[b][k] and m[a][k]:
                    acc = acc + bmat[b][k] * m[a][k]
            row.append(acc)
        out.append(row)
    return AlgebroidBisection(alg, out)


schouten_bracket = lie_derivative_bisection


def d_star_section(astar: Algebroid, u: AlgebroidSection) -> AlgebroidBisection:
    """Differential of ``astar`` applied to a section of A (a 1-cochain of ``astar``)."""
    return AlgebroidBisection(u.algebroid, algebroid_differential(astar, u.components))


def d_star_function(astar: Algebroid, alg: Algebroid, f: Poly) -> AlgebroidSection:
    return AlgebroidSection(alg, algebroid_differential(astar, f))


# bialgebroids -----------------------------------------------------------------------------

def scaling_corpus(chart: Chart, max_degree: int = 2) -> list:
    """``{1} u {x^i} u {x^i x^j}`` (up to ``max_degree``) with printable labels."""
    out = [("1", Poly.const(chart, 1))]
    for deg in range(1, max_degree + 1):
        for idx in combinations_with_replacement(range(chart.dim), deg):
            p = Poly.const(chart, 1)
            for k in idx:
                p = p * Poly.var(chart, k)
            out.append((str(p), p))
    return out


def compatibility_defect(alg: Algebroid, astar: Algebroid, x: AlgebroidSection,
                         y: AlgebroidSection) -> AlgebroidBisection:
    """``d*[X,Y] - [d*X, Y] - [X, d*Y]`` with ``[P, Y] = -[Y, P]`` for a bisection P."""
    lhs = d_star_section(astar, bracket_sections(x, y))
    rhs = (lie_derivative_bisection(x, d_star_section(astar, y))
           - lie_derivative_bisection(y, d_star_section(astar, x)))
    return lhs - rhs


def _check_pair_shapes(alg: Algebroid, astar: Algebroid):
    if alg.chart != astar.chart:
        raise ValueError("algebroids live on different charts")
    if alg.rank != astar.rank:
        raise ValueError("ranks differ; frames cannot be dual")


@dataclass(frozen=True)
class BialgebroidVerdict:
    axioms_a: Check
    axioms_astar: Check
    compatibility: Check

    @property
    def passed(self) -> bool:
        return self.axioms_a.passed and self.axioms_astar.passed and self.compatibility.passed

    def __bool__(self):
        return self.passed

    @property
    def checks(self) -> tuple:
        return (self.axioms_a, self.axioms_astar, self.compatibility)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)


def bialgebroid_compat(alg: Algebroid, astar: Algebroid, max_scaling_degree: int = 2) -> BialgebroidVerdict:
    """Both algebroid axiom sets plus ``d*[X,Y] = [d*X,Y] + [X,d*Y]``.

    The compatibility identity is not function-linear, so besides frame pairs it
    is tested on ``(e_a, s e_b)`` for every ``s`` in the scaling corpus and on
    ``(x^i e_a, x^j e_b)``.
    """
    _check_pair_shapes(alg, astar)
    ax_a = check_axioms(alg)
    ax_s = check_axioms(astar)
    ax_a = type(ax_a)("bialgebroid.axioms-A", ax_a.verdict, ax_a.witness, ax_a.info)
    ax_s = type(ax_s)("bialgebroid.axioms-Astar", ax_s.verdict, ax_s.witness, ax_s.info)
    key = "bialgebroid.compatibility"
    chart = alg.chart
    frame = alg.frame()
    corpus = scaling_corpus(chart, max_scaling_degree)
    linear = [(str(Poly.var(chart, k)), Poly.var(chart, k)) for k in range(chart.dim)]
    # the defect is antisymmetric in (X, Y), so mirrored pairs are skipped
    pairs = []
    for a in range(alg.rank):
        for b in range(alg.rank):
            for label, s in corpus:
                if label == "1" and b <= a:
                    continue
                pairs.append(((f"e{a + 1}", f"{label}*e{b + 1}"), frame[a], frame[b] * s))
    scaled = [(f"{la}*e{a + 1}", frame[a] * sa) for a in range(alg.rank) for la, sa in linear]
    for p, (lx, x) in enumerate(scaled):
        for ly, y in scaled[p + 1:]:
            pairs.append(((lx, ly), x, y))
    compat = passed(key, pairs_checked=len(pairs))
    for labels, x, y in pairs:
        defect = compatibility_defect(alg, astar, x, y)
        for a in range(alg.rank):
            for b in range(alg.rank):
                p = defect.matrix[a][b]
                if p:
                    compat = failed(key, witness(p, pair=list(labels), component=f"e{a + 1}^e{b + 1}"))
                    break
            if not compat.passed:
                break
        if not compat.passed:
            break
    return BialgebroidVerdict(ax_a, ax_s, compat)


@dataclass(frozen=True)
class InducedPoisson:
    bivector: Bivector | None
    skew: Check
    anchor_identity: Check
    jacobi: Check
    sign_vs_reference: int | None = None

    @property
    def passed(self) -> bool:
        return self.skew.passed and self.anchor_identity.passed and self.jacobi.passed


def induced_poisson(alg: Algebroid, astar: Algebroid, reference: Bivector | None = None) -> InducedPoisson:
    """``pi# = rho o rho_*^*`` with ``<rho_*^* alpha, beta> = <alpha, rho_* beta>``.

    In components ``pi^{ij} = sum_a anchor[a][i] * anchor_*[a][j]``.  Also checks
    ``rho o rho_*^* = -rho_* o rho^*`` and the Jacobi identity.  When a
    ``reference`` bivector is given, the sign relating the two is recorded.
    """
    _check_pair_shapes(alg, astar)
    chart = alg.chart
    n = chart.dim
    rho = alg.anchor_matrix()
    rho_s = astar.anchor_matrix()

    def compose(left, right):
        return [[sum((left[a][i] * right[a][j] for a in range(alg.rank)), Poly.zero(chart))
                 for j in range(n)] for i in range(n)]

    m = compose(rho, rho_s)          # rho o rho_*^*
    other = compose(rho_s, rho)      # rho_* o rho^*
    skew = passed("induced-poisson.skew")
    for i in range(n):
        for j in range(i, n):
            s = m[i][j] + m[j][i]
            if s:
                skew = failed("induced-poisson.skew", witness(s, entry=f"({i}, {j})"))
                break
        if not skew.passed:
            break
    ident = passed("induced-poisson.anchor-identity")
    for i in range(n):
        for j in range(n):
            s = m[i][j] + other[i][j]
            if s:
                ident = failed("induced-poisson.anchor-identity", witness(s, entry=f"({i}, {j})"))
                break
        if not ident.passed:
            break
    if not skew.passed:
        return InducedPoisson(None, skew, ident,
                              Check("induced-poisson.jacobi", "skipped", None, {"reason": "not skew"}))
    pi = Bivector(chart, m)
    jac = passed("induced-poisson.jacobi")
    for i, j, k in combinations(range(n), 3):
        p = poisson_jacobiator(pi)[i][j][k]
        if p:
            jac = failed("induced-poisson.jacobi", witness(p, entry=f"({i}, {j}, {k})"))
            break
    sign = None
    if reference is not None:
        if pi == reference:
            sign = 1
        elif pi == -reference:
            sign = -1
        else:
            sign = 0
    return InducedPoisson(pi, skew, ident, jac, sign)
