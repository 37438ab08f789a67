"""Seeded randomized identity catalog.

Every family returns one :class:`Check` keyed by its catalog name.  A family
passes when its identity holds exactly on every sample; otherwise the first
failing sample becomes the witness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from . import algebroid as alg
from .calculus import (Bivector, EndoTangent, GenSection, OneForm, TwoForm, VectorField, d_scalar,
                       lie_bracket_vf, pairing)
from .courant import SubchartEmbedding, courant_skew, dorfman, dorfman_restrict_check
from .gcs import (GenEndo, conjugate_endo, eigenbundle_involutive, from_complex, from_symplectic,
                  iota, is_gcs, is_orthogonal, nijenhuis, nijenhuis_on_frame, squares_minus_id,
                  standard_complex)
from .holomorphic import (FiberComplex, deformed_bracket, HoloPoissonInput, d_relations_check, holomorphic_gen_endo,
                          imaginary_algebroid, realified_complex_structure, realify_holomorphic_poisson,
                          six_equivalences_harness, check_j_isomorphism, real_chart)
from .lift import lift_endo, lift_scalar, lift_section, lift_vector
from .poly import Chart, Poly
from .report import Check, failed, passed, witness


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    max_degree: int = 2
    holo_scale: Fraction = Fraction(4)
    samples: int = 1
    families: tuple = ()

    def echo(self) -> dict:
        return {"seed": self.seed, "max_degree": self.max_degree,
                "holo_scale": str(self.holo_scale), "samples": self.samples}


# random objects --------------------------------------------------------------------

def random_coeff(rng: random.Random) -> Fraction:
    """Uniform over ``{-2..2} / {1, 2, 3}``."""
    return Fraction(rng.randint(-2, 2), rng.choice((1, 2, 3)))


def random_monomial(rng: random.Random, dim: int, max_degree: int) -> tuple:
    exps = [0] * dim
    for _ in range(rng.randint(0, max_degree)):
        exps[rng.randrange(dim)] += 1
    return tuple(exps)


def random_poly(rng: random.Random, chart: Chart, max_degree: int = 2, max_terms: int = 3) -> Poly:
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = random_monomial(rng, chart.dim, max_degree)
        terms[mono] = terms.get(mono, 0) + random_coeff(rng)
    return Poly(chart, terms)


def sparse_polys(rng: random.Random, chart: Chart, count: int, max_degree: int,
                 density: float = 0.5) -> list:
    return [random_poly(rng, chart, max_degree) if rng.random() < density else Poly.zero(chart)
            for _ in range(count)]


def random_section(rng: random.Random, chart: Chart, max_degree: int = 2, density: float = 0.5) -> GenSection:
    return GenSection.from_components(chart, sparse_polys(rng, chart, 2 * chart.dim, max_degree, density))


def random_vector(rng: random.Random, chart: Chart, max_degree: int = 2, density: float = 0.6) -> VectorField:
    return VectorField(chart, sparse_polys(rng, chart, chart.dim, max_degree, density))


def random_antisymmetric(rng: random.Random, chart: Chart, max_degree: int, density: float = 0.5) -> list:
    n = chart.dim
    m = [[Poly.zero(chart)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        if rng.random() < density:
            p = random_poly(rng, chart, max_degree)
            m[i][j], m[j][i] = p, -p
    return m


def random_gen_endo(rng: random.Random, chart: Chart, max_degree: int = 1, density: float = 0.3) -> GenEndo:
    """Arbitrary polynomial blocks, not necessarily of standard shape."""
    n = chart.dim

    def block():
        return [sparse_polys(rng, chart, n, max_degree, density) for _ in range(n)]

    return GenEndo(chart, block(), block(), block(), block())


def random_poisson(rng: random.Random, chart: Chart) -> Bivector:
    """A degree <= 1 Poisson bivector on a chart of dimension 2 or 3.

    In dimension 3 the bivector ``pi^{ij} = eps^{ijk} V_k`` is Poisson when
    ``V . curl V = 0``; the two families used are ``V = a + S x`` with ``S``
    symmetric and ``V = (u . x + c) w``.
    """
    n = chart.dim
    xs = [Poly.var(chart, k) for k in range(n)]
    if n == 2:
        p = random_poly(rng, chart, 1)
        return Bivector(chart, [[0, p], [-p, 0]])
    if n != 3:
        raise ValueError("random Poisson bivectors are generated in dimension 2 or 3")
    if rng.random() < 0.5:
        s = [[random_coeff(rng) for _ in range(3)] for _ in range(3)]
        s = [[s[i][j] if i <= j else s[j][i] for j in range(3)] for i in range(3)]
        v = [Poly.const(chart, random_coeff(rng)) + sum((xs[j] * s[i][j] for j in range(3)), Poly.zero(chart))
             for i in range(3)]
    else:
        lin = Poly.const(chart, random_coeff(rng)) + sum((xs[j] * random_coeff(rng) for j in range(3)),
                                                           Poly.zero(chart))
        v = [lin * random_coeff(rng) for _ in range(3)]
    pi = Bivector.from_entries(chart, {(0, 1): v[2], (1, 2): v[0], (2, 0): v[1]})
    if not alg.is_poisson(pi):
        raise AssertionError("generated bivector is not Poisson")
    return pi


def random_chart(rng: random.Random, max_dim: int = 3) -> Chart:
    return Chart(("x", "y", "z")[:rng.randint(1, max_dim)])


# helpers ----------------------------------------------------------------------------

def _section_diff(s: GenSection):
    for k, p in enumerate(s.vec):
        if p:
            return f"vec[{s.chart.names[k]}]", p
    for k, p in enumerate(s.form):
        if p:
            return f"form[{s.chart.names[k]}]", p
    return None


def _sample_label(e: GenSection) -> list:
    return [str(p) for p in e.components()]


class _Family:
    """Run samples until the first failure."""

    def __init__(self, key: str):
        self.key = key
        self.samples = 0
        self.failure: Check | None = None

    def section(self, lhs: GenSection, rhs: GenSection, **context) -> bool:
        return self.generic(_section_diff(lhs - rhs), **context)

    def poly(self, lhs: Poly, rhs: Poly, **context) -> bool:
        d = lhs - rhs
        return self.generic(("scalar", d) if d else None, **context)

    def generic(self, hit, **context) -> bool:
        self.samples += 1
        if hit is not None and self.failure is None:
            comp, p = hit
            self.failure = failed(self.key, witness(p, component=comp, sample=self.samples, **context))
        return hit is None

    def check(self, sub: Check, **context) -> bool:
        self.samples += 1
        if not sub.passed and self.failure is None:
            wit = dict(sub.witness or {}, sample=self.samples, inner=sub.key, **context)
            self.failure = failed(self.key, wit)
        return sub.passed

    def result(self) -> Check:
        return self.failure if self.failure is not None else passed(self.key, samples=self.samples)


# Dorfman / Courant ------------------------------------------------------------------------

def dorfman_families(rng: random.Random, count: int, max_degree: int = 2, max_dim: int = 3) -> list:
    """Leibniz/Jacobi, antisymmetrization, self-bracket, pairing derivation, anchor rules."""
    fams = {k: _Family(f"dorfman.{k}") for k in
            ("jacobi", "skew-antisymmetrized", "self-bracket", "pairing-derivation",
             "anchor-leibniz", "anchor-morphism")}
    for _ in range(count):
        chart = random_chart(rng, max_dim)
        e1, e2, e3 = (random_section(rng, chart, max_degree) for _ in range(3))
        f = random_poly(rng, chart, max_degree)
        ctx = {"chart_dim": chart.dim}
        fams["jacobi"].section(dorfman(e1, dorfman(e2, e3)),
                               dorfman(dorfman(e1, e2), e3) + dorfman(e2, dorfman(e1, e3)), **ctx)
        half = Fraction(1, 2)
        fams["skew-antisymmetrized"].section(courant_skew(e1, e2),
                                             (dorfman(e1, e2) - dorfman(e2, e1)) * half, **ctx)
        fams["self-bracket"].section(dorfman(e1, e1),
                                     GenSection(VectorField.zero(chart), d_scalar(pairing(e1, e1)) * half), **ctx)
        fams["pairing-derivation"].poly(e1.vec(pairing(e2, e3)),
                                        pairing(dorfman(e1, e2), e3) + pairing(e2, dorfman(e1, e3)), **ctx)
        fams["anchor-leibniz"].section(dorfman(e1, e2 * f),
                                       dorfman(e1, e2) * f + e2 * e1.vec(f), **ctx)
        lhs = dorfman(e1, e2).vec
        rhs = lie_bracket_vf(e1.vec, e2.vec)
        fams["anchor-morphism"].section(GenSection(lhs, OneForm.zero(chart)),
                                        GenSection(rhs, OneForm.zero(chart)), **ctx)
    return [f.result() for f in fams.values()]


def random_adapted_section(rng: random.Random, emb: SubchartEmbedding, max_degree: int = 2) -> GenSection:
    """Vector part tangent to N and form part annihilating TN along N."""
    chart = emb.ambient
    vec, form = [], []
    for k in range(chart.dim):
        p = random_poly(rng, chart, max_degree)
        q = random_poly(rng, chart, max_degree)
        if k in emb.kept:
            vec.append(p)
            form.append(q * Poly.var(chart, rng.choice(emb.dropped)))
        else:
            vec.append(p * Poly.var(chart, rng.choice(emb.dropped)))
            form.append(q)
    return GenSection.of(chart, vec, form)


def restriction_family(rng: random.Random, count: int, max_degree: int = 2) -> list:
    fam = _Family("courant.submanifold-restriction")
    chart = Chart(("x", "y", "z"))
    for _ in range(count):
        kept = tuple(sorted(rng.sample(range(3), rng.randint(1, 2))))
        emb = SubchartEmbedding(chart, kept)
        e1, e2 = random_adapted_section(rng, emb, max_degree), random_adapted_section(rng, emb, max_degree)
        fam.check(dorfman_restrict_check(emb, e1, e2), kept=[chart.names[k] for k in kept])
    return [fam.result()]


# generalized complex structures ----------------------------------------------------------

def conjugation_family(rng: random.Random, count: int, max_degree: int = 1) -> list:
    """``N_{conj J}(I e1, I e2) = I N_J(e1, e2)`` for arbitrary polynomial J."""
    fam = _Family("gcs.conjugation")
    for _ in range(count):
        chart = random_chart(rng, 2)
        j = random_gen_endo(rng, chart, max_degree)
        e1, e2 = random_section(rng, chart, max_degree), random_section(rng, chart, max_degree)
        fam.section(nijenhuis(conjugate_endo(j), iota(e1), iota(e2)), iota(nijenhuis(j, e1, e2)),
                    chart_dim=chart.dim)
    return [fam.result()]


def gcs_corpus() -> dict:
    """Named generalized almost complex structures, integrable or not."""
    r2 = Chart(("x", "y"))
    r4 = Chart(("x1", "y1", "x2", "y2"))
    x1, y1, x2, y2 = (Poly.var(r4, k) for k in range(4))
    out = {}
    out["symplectic-R2"] = from_symplectic(TwoForm.from_entries(r2, {(0, 1): 1}))
    out["symplectic-R4"] = from_symplectic(TwoForm.from_entries(r4, {(0, 1): 1, (2, 3): 1}))
    # closed, Pfaffian 1
    out["symplectic-R4-twisted"] = from_symplectic(TwoForm.from_entries(r4, {(0, 1): 1, (2, 3): 1, (0, 2): x1}))
    # Pfaffian 1 but not closed
    out["nondegenerate-nonclosed-R4"] = from_symplectic(TwoForm.from_entries(r4, {(0, 1): 1, (2, 3): 1, (0, 2): y2}))
    out["complex-R2"] = from_complex(standard_complex(r2))
    out["complex-R4"] = from_complex(standard_complex(r4))
    out["complex-R4-nonintegrable"] = from_complex(nonintegrable_complex_structure(r4))
    z2 = Chart(("z1", "z2"))
    holo = HoloPoissonInput.from_entries(z2.names, {(0, 1): Poly.var(z2, "z1")})
    _, pi_i = realify_holomorphic_poisson(holo)
    out["holomorphic-poisson-z1"] = holomorphic_gen_endo(realified_complex_structure(2), pi_i)
    out["poisson-block-nonholomorphic"] = poisson_block_counterexample()
    return out


def nonintegrable_complex_structure(chart: Chart):
    """``A J A^-1`` for the standard J and ``A = Id + y2 E_{x2,x1}``: an almost complex J with torsion."""
    y2 = Poly.var(chart, 3)
    a = EndoTangent(chart, [[1, 0, 0, 0], [0, 1, 0, 0], [y2, 0, 1, 0], [0, 0, 0, 1]])
    a_inv = EndoTangent(chart, [[1, 0, 0, 0], [0, 1, 0, 0], [-y2, 0, 1, 0], [0, 0, 0, 1]])
    return a.compose(standard_complex(chart)).compose(a_inv)


def poisson_block_counterexample() -> GenEndo:
    """Block structure built from ``conj(z2)^2 d/dz1 ^ d/dz2``.

    The imaginary part still has the right type, so orthogonality and the square
    pass, while the Nijenhuis tensor does not vanish.
    """
    chart = Chart(("z1", "z2", "w1", "w2"))
    w2 = Poly.var(chart, "w2")
    inp = HoloPoissonInput.from_entries(("z1", "z2"), {(0, 1): w2 * w2}, conjugates=("w1", "w2"))
    _, pi_i = realify_holomorphic_poisson(inp)
    return holomorphic_gen_endo(realified_complex_structure(2), pi_i)


def eigenbundle_family(corpus: dict) -> list:
    """Frame Nijenhuis vanishing agrees with involutivity of the +i eigenbundle."""
    fam = _Family("gcs.eigenbundle-agreement")
    for name, j in sorted(corpus.items()):
        if not (is_orthogonal(j).passed and squares_minus_id(j).passed):
            continue
        n_ok = nijenhuis_on_frame(j).passed
        inv = eigenbundle_involutive(j)
        if n_ok != inv.passed:
            wit = inv.witness or nijenhuis_on_frame(j).witness
            fam.check(failed(fam.key, dict(wit, corpus=name, nijenhuis=n_ok, involutive=inv.passed)))
        else:
            fam.check(passed(fam.key))
    return [fam.result()]


# tangent lifts -------------------------------------------------------------------------------

def lift_families(rng: random.Random, count: int, max_degree: int = 1, dim: int = 2) -> list:
    keys = ("vector-on-function", "pairing", "dorfman", "courant", "endo-action", "endo-square",
            "nijenhuis")
    fams = {k: _Family(f"lift.{k}") for k in keys}
    chart = Chart(("x", "y", "z")[:dim])
    for _ in range(count):
        f = random_poly(rng, chart, max_degree + 1)
        v = random_vector(rng, chart, max_degree)
        fams["vector-on-function"].poly(lift_vector(v)(lift_scalar(f)), lift_scalar(v(f)))
        e1, e2 = random_section(rng, chart, max_degree), random_section(rng, chart, max_degree)
        t1, t2 = lift_section(e1), lift_section(e2)
        fams["pairing"].poly(pairing(t1, t2), lift_scalar(pairing(e1, e2)))
        fams["dorfman"].section(dorfman(t1, t2), lift_section(dorfman(e1, e2)))
        fams["courant"].section(courant_skew(t1, t2), lift_section(courant_skew(e1, e2)))
        j = random_gen_endo(rng, chart, max_degree)
        tj = lift_endo(j)
        fams["endo-action"].section(tj(t1), lift_section(j(e1)))
        sq = lift_endo(j @ j)
        tsq = tj @ tj
        diff = [(r, c, a - b) for r, (ra, rb) in enumerate(zip(sq.to_matrix(), tsq.to_matrix()))
                for c, (a, b) in enumerate(zip(ra, rb)) if a != b]
        fams["endo-square"].generic(None if not diff else (f"entry({diff[0][0]},{diff[0][1]})", diff[0][2]))
        fams["nijenhuis"].section(nijenhuis(tj, t1, t2), lift_section(nijenhuis(j, e1, e2)))
    return [f.result() for f in fams.values()]


def lift_gcs_family(corpus: dict, max_dim: int = 4) -> list:
    """Lifts of integrable corpus members are integrable on the lifted chart."""
    fam = _Family("lift.preserves-gcs")
    for name, j in sorted(corpus.items()):
        if j.chart.dim > max_dim or not is_gcs(j).passed:
            continue
        verdict = is_gcs(lift_endo(j))
        failure = verdict.first_failure()
        fam.check(failure if failure is not None else passed(fam.key), corpus=name)
    return [fam.result()]


# algebroids -------------------------------------------------------------------------------------

def poisson_families(rng: random.Random, count: int, max_degree: int = 2) -> list:
    keys = ("form-bracket-exact", "cotangent-axioms", "d-squared")
    fams = {k: _Family(f"algebroid.{k}") for k in keys}
    for _ in range(count):
        chart = Chart(("x", "y", "z")[:rng.randint(2, 3)])
        pi = random_poisson(rng, chart)
        f, g = random_poly(rng, chart, max_degree), random_poly(rng, chart, max_degree)
        lhs = alg.form_bracket(pi, d_scalar(f), d_scalar(g))
        rhs = d_scalar(alg.poisson_bracket(pi, f, g))
        fams["form-bracket-exact"].section(GenSection(VectorField.zero(chart), lhs),
                                           GenSection(VectorField.zero(chart), rhs))
        a = alg.dual_algebroid_from_poisson(pi)
        fams["cotangent-axioms"].check(alg.check_axioms(a))
        fams["d-squared"].check(d_squared_check(a, f, [random_poly(rng, chart, max_degree) for _ in range(a.rank)]))
    return [f.result() for f in fams.values()]


def d_squared_check(a: alg.Algebroid, f: Poly, xi: list) -> Check:
    key = "algebroid.d-squared"
    d0 = alg.algebroid_differential(a, alg.algebroid_differential(a, f))
    for i, row in enumerate(d0):
        for j, p in enumerate(row):
            if p:
                return failed(key, witness(p, degree=0, input=str(f), component=f"e{i + 1}*^e{j + 1}*"))
    d1 = alg.algebroid_differential(a, alg.algebroid_differential(a, tuple(xi)))
    for i, plane in enumerate(d1):
        for j, row in enumerate(plane):
            for k, p in enumerate(row):
                if p:
                    return failed(key, witness(p, degree=1, input=[str(q) for q in xi],
                                               component=f"({i + 1},{j + 1},{k + 1})"))
    return passed(key)


def bialgebroid_families(rng: random.Random, count: int) -> list:
    keys = ("triangular-compat", "induced-poisson")
    fams = {k: _Family(f"bialgebroid.{k}") for k in keys}
    for _ in range(count):
        chart = Chart(("x", "y", "z")[:rng.randint(2, 3)])
        pi = random_poisson(rng, chart)
        a = alg.tangent_algebroid(chart)
        astar = alg.dual_algebroid_from_poisson(pi)
        verdict = alg.bialgebroid_compat(a, astar)
        failure = verdict.first_failure()
        fams["triangular-compat"].check(failure if failure is not None else passed("ok"), pi=_bivector_label(pi))
        ind = alg.induced_poisson(a, astar, reference=pi)
        bad = next((c for c in (ind.skew, ind.anchor_identity, ind.jacobi) if not c.passed), None)
        fams["induced-poisson"].check(bad if bad is not None else passed("ok"), pi=_bivector_label(pi))
    return [f.result() for f in fams.values()]


def non_poisson_table() -> Bivector:
    chart = Chart(("x", "y", "z"))
    return Bivector.from_entries(chart, {(0, 1): Poly.var(chart, "y"), (1, 2): 1})


def non_poisson_family() -> list:
    """The cotangent table of a non-Poisson bivector must be rejected."""
    pi = non_poisson_table()
    verdict = alg.bialgebroid_compat(alg.tangent_algebroid(pi.chart), alg.cotangent_algebroid(pi))
    key = "bialgebroid.rejects-non-poisson"
    if verdict.passed:
        return [failed(key, witness(alg.poisson_jacobiator(pi)[0][1][2], reason="table accepted"))]
    return [passed(key)]


def _bivector_label(pi: Bivector) -> dict:
    n = pi.chart.dim
    return {f"{pi.chart.names[i]}{pi.chart.names[j]}": str(pi.matrix[i][j])
            for i in range(n) for j in range(i + 1, n) if pi.matrix[i][j]}


# holomorphic -----------------------------------------------------------------------------------

def fiber_complex_families(rng: random.Random, count: int, max_degree: int = 2) -> list:
    keys = ("deformed-bracket", "imaginary-axioms", "j-isomorphism", "d-relations")
    fams = {k: _Family(f"holomorphic.{k}") for k in keys}
    chart = real_chart(2)
    a = alg.tangent_algebroid(chart)
    j = FiberComplex(a, realified_complex_structure(2).matrix)
    ai = imaginary_algebroid(j)
    fams["imaginary-axioms"].check(alg.check_axioms(ai))
    fams["j-isomorphism"].check(check_j_isomorphism(j, ai))
    for _ in range(count):
        u = a.section(sparse_polys(rng, chart, 4, max_degree))
        w = a.section(sparse_polys(rng, chart, 4, max_degree))
        lhs = deformed_bracket(j, u, w)
        rhs = -j(alg.bracket_sections(j(u), j(w)))
        d = lhs - rhs
        hit = next(((f"e{k + 1}", p) for k, p in enumerate(d.components) if p), None)
        fams["deformed-bracket"].generic(hit)
        funcs = [random_poly(rng, chart, max_degree)]
        cochains = [sparse_polys(rng, chart, 4, max_degree, 0.7)]
        fams["d-relations"].check(d_relations_check(a, j, ai, funcs, cochains))
    return [f.result() for f in fams.values()]


def random_holomorphic_input(rng: random.Random) -> HoloPoissonInput:
    """A random ``f(z) d/dz1 ^ d/dz2`` with ``f`` of degree <= 1; always holomorphic Poisson."""
    chart = Chart(("z1", "z2"))
    f = random_poly(rng, chart, 1, 2)
    if f.is_zero():
        f = Poly.const(chart, 1)
    return HoloPoissonInput.from_entries(chart.names, {(0, 1): f}, name="random")


def holomorphic_family(rng: random.Random, count: int, scale) -> list:
    fam = _Family("holo.six-way-agreement")
    for _ in range(count):
        inp = random_holomorphic_input(rng)
        report = six_equivalences_harness(inp, scale=scale)
        if report.passed:
            fam.check(passed("ok"))
        else:
            bad = next(c for c in report.checks() if not c.passed)
            fam.check(bad, input=str(inp.matrix[0][1]))
    return [fam.result()]


# catalog ---------------------------------------------------------------------------------------

FAMILIES: dict[str, Callable] = {
    "dorfman": lambda rng, cfg: dorfman_families(rng, 20 * cfg.samples, cfg.max_degree),
    "courant-restriction": lambda rng, cfg: restriction_family(rng, 5 * cfg.samples, cfg.max_degree),
    "gcs-conjugation": lambda rng, cfg: conjugation_family(rng, 10 * cfg.samples),
    "gcs-eigenbundle": lambda rng, cfg: eigenbundle_family(gcs_corpus()),
    "lift": lambda rng, cfg: lift_families(rng, 5 * cfg.samples),
    "lift-gcs": lambda rng, cfg: lift_gcs_family({k: v for k, v in gcs_corpus().items() if v.chart.dim <= 2}),
    "algebroid": lambda rng, cfg: poisson_families(rng, 5 * cfg.samples, cfg.max_degree),
    "bialgebroid": lambda rng, cfg: bialgebroid_families(rng, 3 * cfg.samples) + non_poisson_family(),
    "fiber-complex": lambda rng, cfg: fiber_complex_families(rng, 3 * cfg.samples, cfg.max_degree),
    "holomorphic": lambda rng, cfg: holomorphic_family(rng, cfg.samples, cfg.holo_scale),
}


def run_suite(cfg: SuiteConfig) -> list:
    """Run the selected families; each draws from its own seeded stream."""
    names = cfg.families or tuple(FAMILIES)
    checks = []
    for name in names:
        if name not in FAMILIES:
            raise KeyError(f"unknown suite family {name!r}")
        rng = random.Random(f"{cfg.seed}:{name}")
        checks.extend(FAMILIES[name](rng, cfg))
    return checks
