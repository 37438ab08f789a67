"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when at least one fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import algebroid as alg
from .calculus import GenSection, frame_sections
from .courant import courant_skew, dorfman
from .gcs import GenEndo, is_gcs, nijenhuis
from .holomorphic import HoloPoissonInput, six_equivalences_harness
from .lift import lift_endo, lift_section
from .report import Check, failed, passed, to_jsonl, to_text, witness
from .scene import Scene, SceneError, load_scene, parse_scale
from .suite import FAMILIES, SuiteConfig, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _relabel(check: Check, key: str, **info) -> Check:
    wit = check.witness
    if wit and key != check.key:
        wit = dict(wit, inner=check.key)
    return Check(key, check.verdict, wit, dict(check.info, **info))


def _require_scene(args) -> Scene:
    if not args.scene:
        raise InputError(f"{args.command} needs --scene")
    return load_scene(args.scene)


def _structure(scene: Scene, name: str, cls, kind: str):
    obj = scene.get(name)
    if not isinstance(obj, cls):
        raise InputError(f"{name!r} is not a {kind}")
    return obj


# commands ----------------------------------------------------------------------------

def cmd_check_gcs(args, cfg: SuiteConfig) -> list:
    scene = _require_scene(args)
    j = _structure(scene, args.name, GenEndo, "gen-endo")
    return [_relabel(c, c.key, structure=args.name) for c in is_gcs(j).checks]


def cmd_check_bialgebroid(args, cfg: SuiteConfig) -> list:
    scene = _require_scene(args)
    a = _structure(scene, args.A, alg.Algebroid, "algebroid")
    astar = _structure(scene, args.Astar, alg.Algebroid, "algebroid")
    try:
        verdict = alg.bialgebroid_compat(a, astar, cfg.max_degree)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    checks = list(verdict.checks)
    if verdict.passed:
        ind = alg.induced_poisson(a, astar)
        checks += [ind.skew, ind.anchor_identity, ind.jacobi]
        if ind.bivector is not None:
            n = ind.bivector.chart.dim
            names = ind.bivector.chart.names
            entries = {f"{names[i]}{names[k]}": str(ind.bivector.matrix[i][k])
                       for i in range(n) for k in range(i + 1, n) if ind.bivector.matrix[i][k]}
            checks.append(passed("induced-poisson.bivector", entries=entries))
    return checks


def cmd_lift_verify(args, cfg: SuiteConfig) -> list:
    scene = _require_scene(args)
    j = _structure(scene, args.name, GenEndo, "gen-endo")
    tj = lift_endo(j)
    frame = frame_sections(j.chart)
    checks = []

    def first_section_hit(pairs):
        for labels, lhs, rhs in pairs:
            d = lhs - rhs
            for comp, p in zip(range(len(d.components())), d.components()):
                if p:
                    return labels, comp, p
        return None

    action = first_section_hit(((la,), tj(lift_section(e)), lift_section(j(e))) for la, e in frame)
    checks.append(_section_check("lift.endo-action", action, tj.chart))
    sq_l, sq_r = lift_endo(j @ j).to_matrix(), (tj @ tj).to_matrix()
    hit = next(((i, k, a - b) for i, (ra, rb) in enumerate(zip(sq_l, sq_r))
                for k, (a, b) in enumerate(zip(ra, rb)) if a != b), None)
    checks.append(passed("lift.endo-square") if hit is None else
                  failed("lift.endo-square", witness(hit[2], entry=f"({hit[0]}, {hit[1]})")))
    nij = first_section_hit(((la, lb), nijenhuis(tj, lift_section(ea), lift_section(eb)),
                             lift_section(nijenhuis(j, ea, eb)))
                            for la, ea in frame for lb, eb in frame)
    checks.append(_section_check("lift.nijenhuis", nij, tj.chart))
    base = is_gcs(j)
    if base.passed:
        lifted = is_gcs(tj)
        failure = lifted.first_failure()
        checks.append(passed("lift.preserves-gcs") if failure is None
                      else _relabel(failure, "lift.preserves-gcs"))
    else:
        checks.append(Check("lift.preserves-gcs", "skipped", None, {"reason": "base is not integrable"}))
    return [_relabel(c, c.key, structure=args.name) for c in checks]


def _section_check(key: str, hit, chart) -> Check:
    if hit is None:
        return passed(key)
    labels, comp, p = hit
    n = chart.dim
    label = f"vec[{chart.names[comp]}]" if comp < n else f"form[{chart.names[comp - n]}]"
    return failed(key, witness(p, pair=list(labels), component=label))


def cmd_bracket_eval(args, cfg: SuiteConfig) -> list:
    scene = _require_scene(args)
    e1 = _structure(scene, args.e1, GenSection, "section")
    e2 = _structure(scene, args.e2, GenSection, "section")
    out = {}
    for label, br in (("dorfman", dorfman), ("courant", courant_skew)):
        s = br(e1, e2)
        out[label] = {"vec": [str(p) for p in s.vec], "form": [str(p) for p in s.form]}
    return [passed("bracket.eval", chart=list(e1.chart.names), sections=[args.e1, args.e2], **out)]


def cmd_holo_equivalences(args, cfg: SuiteConfig) -> list:
    scene = _require_scene(args)
    inp = _structure(scene, args.name, HoloPoissonInput, "holo-poisson")
    report = six_equivalences_harness(inp, scale=cfg.holo_scale, max_scaling_degree=cfg.max_degree)
    checks = report.checks()
    realified = passed("holo.realified", scale=report.scale,
                       pi_R=_nonzero_entries(report.pi_r), pi_I=_nonzero_entries(report.pi_i),
                       poisson={"pi_R": report.realified_poisson[0], "pi_I": report.realified_poisson[1]})
    return checks + [_relabel(realified, f"holo.{inp.name}.realified" if inp.name else "holo.realified")]


def _nonzero_entries(pi) -> dict:
    names = pi.chart.names
    n = pi.chart.dim
    return {f"{names[i]},{names[k]}": str(pi.matrix[i][k]) for i in range(n) for k in range(i + 1, n)
            if pi.matrix[i][k]}


def cmd_suite(args, cfg: SuiteConfig) -> list:
    return run_suite(cfg)


COMMANDS = {
    "check-gcs": cmd_check_gcs,
    "check-bialgebroid": cmd_check_bialgebroid,
    "lift-verify": cmd_lift_verify,
    "bracket-eval": cmd_bracket_eval,
    "holo-equivalences": cmd_holo_equivalences,
    "suite": cmd_suite,
}


# argument handling ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--scene", help="scene JSON file")
    common.add_argument("--seed", type=int, help="seed for randomized suites (default 0)")
    common.add_argument("--max-degree", type=int, help="degree cap for random data and scalings (default 2)")
    common.add_argument("--holo-scale", help="rational factor on pi_R and pi_I (default 4)")
    common.add_argument("--samples", type=int, help="suite sample multiplier (default 1)")
    common.add_argument("--family", action="append", help="restrict the suite to these families")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="add elapsed seconds to the summary")

    parser = _Parser(prog="gcverify", description="Exact checks of generalized complex and bialgebroid identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("check-gcs", parents=[common], help="orthogonality, square and Nijenhuis checks")
    p.add_argument("name")
    p = sub.add_parser("check-bialgebroid", parents=[common], help="compatibility of an algebroid pair")
    p.add_argument("A")
    p.add_argument("Astar")
    p = sub.add_parser("lift-verify", parents=[common], help="tangent-lift identities for a gen-endo")
    p.add_argument("name")
    p = sub.add_parser("bracket-eval", parents=[common], help="Dorfman and Courant brackets of two sections")
    p.add_argument("e1")
    p.add_argument("e2")
    p = sub.add_parser("holo-equivalences", parents=[common], help="five-way holomorphic Poisson harness")
    p.add_argument("name")
    sub.add_parser("suite", parents=[common], help="seeded randomized identity catalog")
    return parser


def make_config(args, scene_config: dict) -> SuiteConfig:
    def pick(flag, key, default):
        return flag if flag is not None else scene_config.get(key, default)

    seed = pick(args.seed, "seed", 0)
    max_degree = pick(args.max_degree, "max_degree", 2)
    samples = pick(args.samples, "samples", 1)
    scale = parse_scale(pick(args.holo_scale, "holo_scale", "4"))
    families = tuple(args.family or scene_config.get("families", ()))
    if not isinstance(seed, int) or seed < 0 or seed >= 2 ** 64:
        raise InputError("--seed must be an unsigned 64-bit integer")
    if not isinstance(max_degree, int) or max_degree < 0:
        raise InputError("--max-degree must be a non-negative integer")
    if not isinstance(samples, int) or samples < 1:
        raise InputError("--samples must be positive")
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise InputError(f"unknown suite families {unknown}; known: {sorted(FAMILIES)}")
    return SuiteConfig(seed, max_degree, scale, samples, families)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        scene_config = {}
        if args.scene:
            scene_config = load_scene(args.scene).config
        cfg = make_config(args, scene_config)
        start = time.perf_counter()
        checks = COMMANDS[args.command](args, cfg)
        elapsed = time.perf_counter() - start
    except (InputError, SceneError) as exc:
        print(f"gcverify: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    n_fail = sum(1 for c in checks if c.verdict == "fail")
    summary = {"command": args.command, "config": cfg.echo(),
               "passed": sum(1 for c in checks if c.passed), "failed": n_fail,
               "skipped": sum(1 for c in checks if c.verdict == "skipped"),
               "status": "fail" if n_fail else "pass"}
    if args.family:
        summary["config"]["families"] = list(cfg.families)
    if args.timing:
        summary["seconds"] = round(elapsed, 3)
    render = to_text if args.format == "text" else to_jsonl
    sys.stdout.write(render(checks, summary))
    return EXIT_FAIL if n_fail else EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
