"""JSON scene files: a chart, named structures and suite configuration.

Example::

    {
      "schema": 1,
      "chart": ["x1", "y1", "x2", "y2"],
      "config": {"seed": 0, "max_degree": 2, "holo_scale": "4"},
      "structures": {
        "omega": {"kind": "two-form", "entries": [["x1", "y1", "1"], ["x2", "y2", "1"]]},
        "J": {"kind": "gen-endo", "from": "symplectic", "two_form": "omega"}
      }
    }

Structure kinds are ``bivector``, ``two-form``, ``endo``, ``gen-endo``,
``algebroid``, ``holo-poisson`` and ``section``.  Polynomials are strings in
the expression grammar.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import algebroid as alg
from .calculus import Bivector, EndoTangent, GenSection, TwoForm
from .gcs import GenEndo, from_complex, from_symplectic, gcs_from_blocks, standard_complex
from .holomorphic import HoloPoissonInput
from .parse import ParseError, parse_expression
from .poly import Chart, Poly

SCHEMA_VERSION = 1


class SceneError(ValueError):
    """Malformed scene or reference to a missing structure."""


@dataclass
class Scene:
    chart: Chart | None
    config: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)
    _built: dict = field(default_factory=dict)

    def names(self) -> list:
        return sorted(self.raw)

    def get(self, name: str, kind: str | None = None):
        if name not in self.raw:
            raise SceneError(f"no structure named {name!r}")
        decl = self.raw[name]
        if kind is not None and decl.get("kind") != kind:
            raise SceneError(f"{name!r} is a {decl.get('kind')!r}, expected {kind!r}")
        if name not in self._built:
            self._built[name] = None  # guards against reference cycles
            self._built[name] = _build(self, name, decl)
        elif self._built[name] is None:
            raise SceneError(f"reference cycle through {name!r}")
        return self._built[name]

    def build_all(self) -> dict:
        return {name: self.get(name) for name in self.names()}


def load_scene(path) -> Scene:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SceneError(f"cannot read scene: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene is not valid JSON: {exc}") from None
    return scene_from_dict(data)


def scene_from_dict(data: dict) -> Scene:
    if not isinstance(data, dict):
        raise SceneError("scene must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise SceneError(f"unsupported scene schema {data.get('schema')!r} (expected {SCHEMA_VERSION})")
    chart = None
    if "chart" in data:
        try:
            chart = Chart(data["chart"])
        except (TypeError, ValueError) as exc:
            raise SceneError(f"bad chart: {exc}") from None
    structures = data.get("structures", {})
    if not isinstance(structures, dict):
        raise SceneError("'structures' must be an object")
    for name, decl in structures.items():
        if not isinstance(decl, dict) or "kind" not in decl:
            raise SceneError(f"structure {name!r} needs a 'kind'")
    config = data.get("config", {})
    if not isinstance(config, dict):
        raise SceneError("'config' must be an object")
    scene = Scene(chart, config, dict(structures))
    scene.build_all()
    return scene


# builders ------------------------------------------------------------------------

def _poly(chart: Chart, src, where: str) -> Poly:
    if isinstance(src, int):
        src = str(src)
    if not isinstance(src, str):
        raise SceneError(f"{where}: expected a polynomial string, got {src!r}")
    try:
        return parse_expression(src, chart)
    except ParseError as exc:
        raise SceneError(f"{where}: {exc}") from None


def _need_chart(scene: Scene, name: str) -> Chart:
    if scene.chart is None:
        raise SceneError(f"{name!r} needs a scene-level 'chart'")
    return scene.chart


def _entries(chart: Chart, decl: dict, name: str) -> dict:
    out = {}
    for item in decl.get("entries", []):
        if not isinstance(item, list) or len(item) != 3:
            raise SceneError(f"{name}: entries are [coordinate, coordinate, polynomial] triples")
        a, b, src = item
        try:
            i, j = chart.index(a), chart.index(b)
        except KeyError as exc:
            raise SceneError(f"{name}: {exc.args[0]}") from None
        if i == j:
            raise SceneError(f"{name}: diagonal entry ({a}, {b})")
        out[(i, j)] = _poly(chart, src, f"{name}[{a},{b}]")
    return out


def _square(chart: Chart, rows, name: str, size: int | None = None) -> list:
    size = chart.dim if size is None else size
    if not isinstance(rows, list) or len(rows) != size or any(not isinstance(r, list) or len(r) != size
                                                               for r in rows):
        raise SceneError(f"{name}: expected a {size}x{size} matrix")
    return [[_poly(chart, x, f"{name}[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(rows)]


def _build(scene: Scene, name: str, decl: dict):
    kind = decl["kind"]
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise SceneError(f"{name}: unknown kind {kind!r}") from None
    try:
        return builder(scene, name, decl)
    except SceneError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise SceneError(f"{name}: {exc}") from None


def _build_bivector(scene, name, decl):
    chart = _need_chart(scene, name)
    if "matrix" in decl:
        return Bivector(chart, _square(chart, decl["matrix"], name))
    return Bivector.from_entries(chart, _entries(chart, decl, name))


def _build_two_form(scene, name, decl):
    chart = _need_chart(scene, name)
    if "matrix" in decl:
        return TwoForm(chart, _square(chart, decl["matrix"], name))
    return TwoForm.from_entries(chart, _entries(chart, decl, name))


def _build_endo(scene, name, decl):
    chart = _need_chart(scene, name)
    if decl.get("from") == "standard-complex":
        return standard_complex(chart)
    return EndoTangent(chart, _square(chart, decl.get("matrix"), name))


def _build_gen_endo(scene, name, decl):
    chart = _need_chart(scene, name)
    source = decl.get("from", "blocks")
    if source == "symplectic":
        return from_symplectic(scene.get(decl["two_form"], "two-form"))
    if source == "complex":
        return from_complex(scene.get(decl["endo"], "endo"))
    if source == "blocks":
        n = scene.get(decl["N"], "endo") if "N" in decl else EndoTangent.zero(chart)
        pi = scene.get(decl["pi"], "bivector") if "pi" in decl else Bivector.zero(chart)
        omega = scene.get(decl["omega"], "two-form") if "omega" in decl else TwoForm.zero(chart)
        return gcs_from_blocks(n, pi, omega)
    if source == "matrix":
        return GenEndo.from_matrix(chart, _square(chart, decl["matrix"], name, 2 * chart.dim))
    raise SceneError(f"{name}: unknown gen-endo source {source!r}")


def _build_algebroid(scene, name, decl):
    chart = _need_chart(scene, name)
    source = decl.get("from")
    if source == "tangent":
        return alg.tangent_algebroid(chart)
    if source == "zero":
        return alg.zero_algebroid(chart)
    if source == "poisson":
        return alg.dual_algebroid_from_poisson(scene.get(decl["bivector"], "bivector"))
    if source == "cotangent":
        return alg.cotangent_algebroid(scene.get(decl["bivector"], "bivector"))
    if source == "raw":
        anchor = decl.get("anchor")
        if not isinstance(anchor, list) or not anchor:
            raise SceneError(f"{name}: raw algebroids need an 'anchor' list of rows")
        r = len(anchor)
        rows = [[_poly(chart, x, f"{name}.anchor[{a}]") for x in row] for a, row in enumerate(anchor)]
        zero = Poly.zero(chart)
        structure = [[[zero] * r for _ in range(r)] for _ in range(r)]
        for item in decl.get("brackets", []):
            a, b, comps = item
            if not (1 <= a <= r and 1 <= b <= r) or a == b or len(comps) != r:
                raise SceneError(f"{name}: bracket entries are [a, b, [r components]] with 1-based a != b")
            polys = [_poly(chart, x, f"{name}.[e{a},e{b}]") for x in comps]
            structure[a - 1][b - 1] = polys
            structure[b - 1][a - 1] = [-p for p in polys]
        return alg.Algebroid(chart, rows, structure, name=name)
    raise SceneError(f"{name}: unknown algebroid source {source!r}")


def _build_holo(scene, name, decl):
    coords = tuple(decl.get("coords", ()))
    conjugates = tuple(decl.get("conjugates", ()))
    try:
        chart = Chart(coords + conjugates)
    except ValueError as exc:
        raise SceneError(f"{name}: {exc}") from None
    entries = {}
    for item in decl.get("entries", []):
        a, b, src = item
        if a not in coords or b not in coords or a == b:
            raise SceneError(f"{name}: entries pair two distinct holomorphic coordinates")
        entries[(coords.index(a), coords.index(b))] = _poly(chart, src, f"{name}[{a},{b}]")
    return HoloPoissonInput.from_entries(coords, entries, conjugates, name=name)


def _build_section(scene, name, decl):
    chart = _need_chart(scene, name)
    n = chart.dim
    vec = decl.get("vec", ["0"] * n)
    form = decl.get("form", ["0"] * n)
    if len(vec) != n or len(form) != n:
        raise SceneError(f"{name}: 'vec' and 'form' need {n} components each")
    return GenSection.of(chart, [_poly(chart, x, f"{name}.vec") for x in vec],
                         [_poly(chart, x, f"{name}.form") for x in form])


_BUILDERS = {
    "bivector": _build_bivector,
    "two-form": _build_two_form,
    "endo": _build_endo,
    "gen-endo": _build_gen_endo,
    "algebroid": _build_algebroid,
    "holo-poisson": _build_holo,
    "section": _build_section,
}


def parse_scale(value) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise SceneError(f"bad scale {value!r}") from None
