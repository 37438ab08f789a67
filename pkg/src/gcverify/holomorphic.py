"""Fibrewise complex structures on algebroids and holomorphic Poisson realification.

A holomorphic bivector on ``C^m`` is realified on the chart
``(x_1..x_m, y_1..y_m)`` with ``z_k = x_k + i y_k`` and
``d/dz_k = 1/2 (d/dx_k - i d/dy_k)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebroid import (Algebroid, AlgebroidSection, algebroid_differential,
                        bialgebroid_compat, bracket_sections, cotangent_algebroid,
                        is_poisson, tangent_algebroid)
from .calculus import Bivector, EndoTangent, mat_neg, transpose, zero_matrix
from .gcs import GcsVerdict, GenEndo, is_gcs
from .poly import I, Chart, Poly, as_rational
from .report import Check, failed, passed, witness


class FiberComplex:
    """A bundle map ``j: A -> A`` with ``j^2 = -Id``; ``j e_b = sum_a matrix[a][b] e_a``."""

    __slots__ = ("algebroid", "matrix")

    def __init__(self, algebroid: Algebroid, matrix: Sequence[Sequence]):
        chart = algebroid.chart
        r = algebroid.rank
        m = tuple(tuple(x if isinstance(x, Poly) else Poly.const(chart, x) for x in row) for row in matrix)
        if len(m) != r or any(len(row) != r for row in m):
            raise ValueError(f"expected a {r}x{r} matrix")
        self.algebroid = algebroid
        self.matrix = m
        for a in range(r):
            for b in range(r):
                sq = sum((m[a][k] * m[k][b] for k in range(r)), Poly.zero(chart))
                if sq != (-1 if a == b else 0):
                    raise ValueError(f"j^2 != -Id at entry ({a}, {b})")

    def __call__(self, u: AlgebroidSection) -> AlgebroidSection:
        r = self.algebroid.rank
        m = self.matrix
        comps = [sum((m[a][b] * u.components[b] for b in range(r) if m[a][b]), Poly.zero(u.chart))
                 for a in range(r)]
        return AlgebroidSection(u.algebroid, comps)

    def pull_back_1(self, alpha: Sequence[Poly]) -> tuple:
        """``(j* alpha)_a = alpha(j e_a)``."""
        r = self.algebroid.rank
        m = self.matrix
        return tuple(sum((m[b][a] * alpha[b] for b in range(r) if m[b][a]), Poly.zero(self.algebroid.chart))
                     for a in range(r))

    def pull_back_2(self, omega) -> tuple:
        """``(j* omega)(u, w) = omega(j u, j w)``."""
        r = self.algebroid.rank
        m = self.matrix
        zero = Poly.zero(self.algebroid.chart)
        return tuple(tuple(sum((m[c][a] * m[d][b] * omega[c][d]
                                for c in range(r) if m[c][a] for d in range(r) if m[d][b]), zero)
                           for b in range(r)) for a in range(r))


def _section_hit(s: AlgebroidSection):
    for k, p in enumerate(s.components):
        if p:
            return f"e{k + 1}", p
    return None


def _scaled_frame_pairs(alg: Algebroid):
    """Frame pairs plus pairs with the second slot scaled by a coordinate."""
    frame = alg.frame()
    chart = alg.chart
    out = []
    for a, ea in enumerate(frame):
        for b, eb in enumerate(frame):
            out.append(((f"e{a + 1}", f"e{b + 1}"), ea, eb))
            for k in range(chart.dim):
                xk = Poly.var(chart, k)
                out.append(((f"e{a + 1}", f"{chart.names[k]}*e{b + 1}"), ea, eb * xk))
    return out


def nijenhuis_torsion_j(j: FiberComplex) -> Check:
    """``[ju,jw] - j[ju,w] - j[u,jw] - [u,w]`` on frame pairs."""
    key = "holomorphic.torsion"
    frame = j.algebroid.frame()
    for a, u in enumerate(frame):
        for b, w in enumerate(frame):
            if b <= a:
                continue
            ju, jw = j(u), j(w)
            t = (bracket_sections(ju, jw) - j(bracket_sections(ju, w)) - j(bracket_sections(u, jw))
                 - bracket_sections(u, w))
            hit = _section_hit(t)
            if hit:
                return failed(key, witness(hit[1], pair=[f"e{a + 1}", f"e{b + 1}"], component=hit[0]))
    return passed(key)


def deformed_bracket(j: FiberComplex, u: AlgebroidSection, w: AlgebroidSection) -> AlgebroidSection:
    """``[u,w]_j = [ju,w] + [u,jw] - j[u,w]``."""
    if u.algebroid is not j.algebroid or w.algebroid is not j.algebroid:
        raise ValueError("sections do not belong to the algebroid of j")
    return bracket_sections(j(u), w) + bracket_sections(u, j(w)) - j(bracket_sections(u, w))


def imaginary_algebroid(j: FiberComplex, force: bool = False) -> Algebroid:
    """Anchor ``rho o j`` and frame brackets from :func:`deformed_bracket`.

    ``force=True`` skips the torsion check so that broken examples can be built.
    """
    if not force:
        torsion = nijenhuis_torsion_j(j)
        if not torsion.passed:
            raise ValueError(f"torsion of j does not vanish: {torsion.witness}")
    alg = j.algebroid
    frame = alg.frame()
    anchor = [alg.anchor_of(j(e)).components for e in frame]
    structure = [[deformed_bracket(j, ea, eb).components for eb in frame] for ea in frame]
    return Algebroid(alg.chart, anchor, structure, name=f"{alg.name or 'A'}_I")


def check_j_isomorphism(j: FiberComplex, imaginary: Algebroid) -> Check:
    """``j[u,w]_I = [ju, jw]`` and ``rho_I = rho o j`` on frame and scaled pairs."""
    key = "holomorphic.j-isomorphism"
    alg = j.algebroid
    if imaginary.chart != alg.chart or imaginary.rank != alg.rank:
        raise ValueError("imaginary algebroid has the wrong shape")
    for a, e in enumerate(alg.frame()):
        diff = imaginary.anchor[a] - alg.anchor_of(j(e))
        for k, p in enumerate(diff.components):
            if p:
                return failed(key, witness(p, relation="anchor", section=f"e{a + 1}",
                                           component=f"d/d{alg.chart.names[k]}"))
    for labels, u, w in _scaled_frame_pairs(alg):
        ui = AlgebroidSection(imaginary, u.components)
        wi = AlgebroidSection(imaginary, w.components)
        lhs = j(AlgebroidSection(alg, bracket_sections(ui, wi).components))
        hit = _section_hit(lhs - bracket_sections(j(u), j(w)))
        if hit:
            return failed(key, witness(hit[1], relation="bracket", pair=list(labels), component=hit[0]))
    return passed(key)


def d_relations_check(alg: Algebroid, j: FiberComplex, imaginary: Algebroid,
                      functions: Sequence[Poly], cochains: Sequence[Sequence[Poly]]) -> Check:
    """``d_I f = j* d_R f`` and ``d_I alpha = -j* d_R (j* alpha)`` on the given samples."""
    key = "holomorphic.d-relations"
    r = alg.rank
    for f in functions:
        lhs = algebroid_differential(imaginary, f)
        rhs = j.pull_back_1(algebroid_differential(alg, f))
        for a in range(r):
            if lhs[a] != rhs[a]:
                return failed(key, witness(lhs[a] - rhs[a], relation="functions", input=str(f),
                                           component=f"e{a + 1}*"))
    chart = alg.chart
    for alpha in cochains:
        alpha = tuple(p if isinstance(p, Poly) else Poly.const(chart, p) for p in alpha)
        lhs = algebroid_differential(imaginary, alpha)
        rhs = j.pull_back_2(algebroid_differential(alg, j.pull_back_1(alpha)))
        for a in range(r):
            for b in range(r):
                s = lhs[a][b] + rhs[a][b]
                if s:
                    return failed(key, witness(s, relation="1-cochains", input=[str(p) for p in alpha],
                                               component=f"e{a + 1}*^e{b + 1}*"))
    return passed(key)


# holomorphic Poisson -------------------------------------------------------------------

@dataclass(frozen=True)
class HoloPoissonInput:
    """A bivector ``sum_{a<b} matrix[a][b] d/dz_a ^ d/dz_b`` on ``C^m``.

    Components are polynomials on ``coords + conjugates``; names listed in
    ``conjugates`` (one per coordinate, or none) stand for ``conj(z_k)`` and let
    non-holomorphic perturbations be written down.
    """

    coords: tuple
    matrix: tuple
    conjugates: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        object.__setattr__(self, "conjugates", tuple(self.conjugates))
        if self.conjugates and len(self.conjugates) != len(self.coords):
            raise ValueError("give one conjugate name per coordinate or none")
        chart = self.chart
        m = len(self.coords)
        mat = tuple(tuple(x if isinstance(x, Poly) else Poly.const(chart, x) for x in row)
                    for row in self.matrix)
        if len(mat) != m or any(len(row) != m for row in mat):
            raise ValueError(f"expected a {m}x{m} matrix")
        for a in range(m):
            for b in range(m):
                if mat[a][b].chart != chart:
                    raise ValueError("components must live on the complex chart")
                if mat[a][b] != -mat[b][a]:
                    raise ValueError(f"holomorphic bivector not antisymmetric at ({a}, {b})")
        object.__setattr__(self, "matrix", mat)

    @property
    def chart(self) -> Chart:
        return Chart(self.coords + self.conjugates)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_structurally_holomorphic(self) -> bool:
        m = self.dim
        return all(all(e == 0 for e in mono[m:]) for row in self.matrix for p in row for mono, _ in p.terms)

    @classmethod
    def from_entries(cls, coords, entries: dict, conjugates=(), name: str = "") -> "HoloPoissonInput":
        coords = tuple(coords)
        chart = Chart(coords + tuple(conjugates))
        m = len(coords)
        mat = [[Poly.zero(chart) for _ in range(m)] for _ in range(m)]
        for (a, b), v in entries.items():
            p = v if isinstance(v, Poly) else Poly.const(chart, v)
            mat[a][b] = mat[a][b] + p
            mat[b][a] = mat[b][a] - p
        return cls(coords, tuple(tuple(r) for r in mat), conjugates, name)


def real_chart(m: int) -> Chart:
    return Chart([f"x_{k + 1}" for k in range(m)] + [f"y_{k + 1}" for k in range(m)])


def realify_holomorphic_poisson(inp: HoloPoissonInput) -> tuple:
    """``(pi_R, pi_I)`` on :func:`real_chart` with ``pi = pi_R + i pi_I``."""
    m = inp.dim
    rc = real_chart(m)
    xs = [Poly.var(rc, k) for k in range(m)]
    ys = [Poly.var(rc, m + k) for k in range(m)]
    images = [x + y * I for x, y in zip(xs, ys)]
    if inp.conjugates:
        images += [x - y * I for x, y in zip(xs, ys)]
    coeffs = [[p.substitute(images) if not p.is_zero() else Poly.zero(rc) for p in row] for row in inp.matrix]
    half = Fraction(1, 2)
    # cu[a][mu]: coefficient of d/d(real mu) in d/dz_a
    cu = [[Poly.zero(rc) for _ in range(2 * m)] for _ in range(m)]
    for a in range(m):
        cu[a][a] = Poly.const(rc, half)
        cu[a][m + a] = Poly.const(rc, -half) * I
    n = 2 * m
    big = [[Poly.zero(rc) for _ in range(n)] for _ in range(n)]
    for a in range(m):
        for b in range(m):
            p = coeffs[a][b]
            if not p:
                continue
            for mu in (a, m + a):
                for nu in (b, m + b):
                    big[mu][nu] = big[mu][nu] + p * cu[a][mu] * cu[b][nu]
    pi_r = Bivector(rc, [[x.real_part() for x in row] for row in big])
    pi_i = Bivector(rc, [[x.imag_part() for x in row] for row in big])
    return pi_r, pi_i


def realified_complex_structure(m: int) -> EndoTangent:
    """Constant ``J`` with ``J d/dx_k = d/dy_k`` and ``J d/dy_k = -d/dx_k``."""
    rc = real_chart(m)
    n = 2 * m
    mat = [[0] * n for _ in range(n)]
    for k in range(m):
        mat[m + k][k] = 1
        mat[k][m + k] = -1
    return EndoTangent(rc, mat)


def holomorphic_gen_endo(j: EndoTangent, pi_i: Bivector, scale=4) -> GenEndo:
    """``[[J, s pi_I#], [0, -J^T]]``."""
    s = as_rational(scale)
    return GenEndo(j.chart, j.matrix, (pi_i * Poly.const(j.chart, s)).matrix,
                   zero_matrix(j.chart), mat_neg(transpose(j.matrix)))


def _relabel(check: Check, key: str) -> Check:
    wit = dict(check.witness, inner=check.key) if check.witness else None
    return Check(key, check.verdict, wit, check.info)


@dataclass(frozen=True)
class HoloHarnessReport:
    name: str
    scale: str
    pi_r: Bivector
    pi_i: Bivector
    realified_poisson: tuple
    pairings: dict
    gcs: GcsVerdict
    extras: dict = field(default_factory=dict)

    @property
    def verdicts(self) -> dict:
        out = {k: v.passed for k, v in self.pairings.items()}
        out["f"] = self.gcs.passed
        return out

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) == 1

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def checks(self) -> list:
        prefix = f"holo.{self.name}." if self.name else "holo."
        out = []
        labels = {"b": "b.AR-ARstar", "c": "c.AR-AIstar", "d": "d.AI-ARstar", "e": "e.AI-AIstar"}
        for k, verdict in self.pairings.items():
            failure = verdict.first_failure()
            out.append(_relabel(failure, f"{prefix}{labels[k]}") if failure is not None
                       else passed(f"{prefix}{labels[k]}"))
        failure = self.gcs.first_failure()
        # only the generalized-complex axioms of item (f) are checked
        out.append(_relabel(failure, f"{prefix}f.gcs-axioms") if failure is not None
                   else passed(f"{prefix}f.gcs-axioms"))
        agree_key = f"{prefix}agreement"
        if self.agree:
            out.append(passed(agree_key, verdicts=self.verdicts))
        else:
            bad = next(c for c in out if not c.passed)
            out.append(Check(agree_key, "fail",
                             dict(bad.witness, disagreeing=self.verdicts), {}))
        return out


def six_equivalences_harness(inp: HoloPoissonInput, scale=4, strict: bool = False,
                             max_scaling_degree: int = 2) -> HoloHarnessReport:
    """Build ``A_R, A_I, A_R^*, A_I^*`` and the block endomorphism, and run all five checks.

    ``A_R^*`` and ``A_I^*`` are the cotangent algebroids of ``scale*pi_R`` and
    ``scale*pi_I``.  A non-Poisson realification is not rejected unless
    ``strict`` is set; its cotangent tables then fail their axiom checks.
    """
    pi_r, pi_i = realify_holomorphic_poisson(inp)
    poisson = (is_poisson(pi_r), is_poisson(pi_i))
    if strict and not all(poisson):
        raise ValueError("realified bivector is not Poisson; input is not holomorphic Poisson")
    m = inp.dim
    jmat = realified_complex_structure(m)
    rc = jmat.chart
    s = Poly.const(rc, as_rational(scale))
    a_r = tangent_algebroid(rc)
    j = FiberComplex(a_r, jmat.matrix)
    a_i = imaginary_algebroid(j)
    a_r_star = cotangent_algebroid(pi_r * s, name="AR*")
    a_i_star = cotangent_algebroid(pi_i * s, name="AI*")
    pairings = {
        "b": bialgebroid_compat(a_r, a_r_star, max_scaling_degree),
        "c": bialgebroid_compat(a_r, a_i_star, max_scaling_degree),
        "d": bialgebroid_compat(a_i, a_r_star, max_scaling_degree),
        "e": bialgebroid_compat(a_i, a_i_star, max_scaling_degree),
    }
    gcs = is_gcs(holomorphic_gen_endo(jmat, pi_i, scale))
    return HoloHarnessReport(inp.name, str(as_rational(scale)), pi_r, pi_i, poisson, pairings, gcs)
