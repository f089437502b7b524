"""Scenario runner.

A scenario is a JSON object; lines whose first non-blank character is ``#``
are comments.  Expressions use the canonical text syntax (``h1^2 - q*h2``).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from . import tableaux as tab
from .autos import AUTOMORPHISM_CATALOG, Automorphism, AutomorphismError, group_elements
from .gwa import (
    CATALOG, CATALOG_DESCRIPTIONS, GWA, PresentationError, catalog, gwa_embed, random_coefficient,
    random_element, relation_failures, rewrite_product,
)
from .invariants import (
    cyclic_invariant_gwa, decomposition_check, dchi_sign_sn, gamma_samples, gwa_reynolds, invariant_generators,
    principal_check, rational_witness_check, torus_invariant_generators,
)
from .scalars import ParseError, PolyRing, ScalarField
from .skewring import Inconclusive, SkewContext

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

ALGEBRA_CHECKS = ("relations", "confluence", "embedding", "cyclic_oracle")
GROUP_CHECKS = ("invariance", "embedding_images", "generates_monoid", "decomposition", "principal", "rational_witness")
TABLEAUX_CHECKS = ("relations", "lift", "submodules")

TOP_KEYS = {"name", "description", "seed", "field", "algebra", "group", "mode", "bound", "samples", "checks", "tableaux"}
FIELD_KEYS = {"cyclotomic_order", "parameters"}
CATALOG_KEYS = {"catalog", "n", "params", "laurent"}
EXPLICIT_KEYS = {"D", "n", "variables", "a", "sigma", "independent", "name"}
GROUP_KEYS = {"gmpn": {"type", "m", "p", "n"}, "sn": {"type", "n"}, "cyclic_diag": {"type", "m"}}
TABLEAUX_KEYS = {"seed", "radius", "checks", "samples"}


class ScenarioError(ValueError):
    """Invalid scenario; ``where`` names the offending field or location."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# -- loading and validation --------------------------------------------------


def strip_comments(text: str) -> str:
    # blank the comment lines so JSON error positions still match the file
    return "\n".join("" if line.lstrip().startswith("#") else line for line in text.splitlines())


def load_scenario(text: str, source: str = "<scenario>") -> dict:
    try:
        data = json.loads(strip_comments(text))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if not isinstance(data, dict):
        raise ScenarioError(source, "top level must be an object")
    return data


def _reject_unknown(obj: dict, allowed: set, where: str):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ScenarioError(where, f"unknown key(s) {', '.join(extra)}")


def _int(obj: dict, key: str, where: str, default=None, minimum: int | None = None) -> int:
    v = obj.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ScenarioError(f"{where}.{key}", f"expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ScenarioError(f"{where}.{key}", f"must be at least {minimum}")
    return v


@dataclass
class Scenario:
    name: str
    seed: int
    field: ScalarField
    algebra: GWA
    skew: SkewContext | None
    group: dict | None
    mode: str
    bound: int
    samples: int
    checks: list[str]
    tableaux: dict | None
    raw: dict = field(repr=False, default_factory=dict)


def _build_field(spec) -> ScalarField:
    if spec is None:
        return ScalarField()
    if not isinstance(spec, dict):
        raise ScenarioError("field", "expected an object")
    _reject_unknown(spec, FIELD_KEYS, "field")
    order = _int(spec, "cyclotomic_order", "field", 1, 1)
    params = spec.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise ScenarioError("field.parameters", "expected a list of names")
    try:
        return ScalarField(order, tuple(params))
    except ValueError as exc:
        raise ScenarioError("field", str(exc)) from None


def _parse(ring: PolyRing, text, where: str):
    if isinstance(text, int):
        return ring.constant(text)
    if not isinstance(text, str):
        raise ScenarioError(where, f"expected an expression string, got {text!r}")
    try:
        return ring.parse(text)
    except ParseError as exc:
        raise ScenarioError(where, str(exc)) from None


def _build_auto(ring: PolyRing, spec, i: int, where: str) -> Automorphism:
    if isinstance(spec, str):
        spec = {"name": spec}
    if not isinstance(spec, dict):
        raise ScenarioError(where, "expected a catalog name or an object")
    if "name" in spec:
        _reject_unknown(spec, {"name", "var", "step", "q", "vars"}, where)
        name = spec["name"]
        if name not in AUTOMORPHISM_CATALOG:
            raise ScenarioError(f"{where}.name", f"unknown automorphism {name!r}")
        pos = ring.variables.index(spec["var"]) if "var" in spec else i
        try:
            if name == "shift":
                return AUTOMORPHISM_CATALOG[name](ring, pos, spec.get("step", 1))
            if name in ("q_scale", "q_weyl"):
                return AUTOMORPHISM_CATALOG[name](ring, pos, spec.get("q", "q"))
            positions = [ring.variables.index(v) for v in spec.get("vars", ring.variables[:3])]
            return AUTOMORPHISM_CATALOG[name](ring, *positions)
        except (ValueError, IndexError, KeyError) as exc:
            raise ScenarioError(where, str(exc)) from None
    _reject_unknown(spec, {"forward", "inverse"}, where)
    images = {}
    for side in ("forward", "inverse"):
        m = spec.get(side)
        if not isinstance(m, dict):
            raise ScenarioError(f"{where}.{side}", "expected a substitution map")
        unknown = sorted(set(m) - set(ring.variables))
        if unknown:
            raise ScenarioError(f"{where}.{side}", f"unknown variable(s) {', '.join(unknown)}")
        images[side] = [
            _parse(ring, m[v], f"{where}.{side}.{v}") if v in m else ring.gen(k)
            for k, v in enumerate(ring.variables)
        ]
    try:
        return Automorphism(ring, images["forward"], images["inverse"])
    except AutomorphismError as exc:
        raise ScenarioError(where, str(exc)) from None


def _build_algebra(spec, fld: ScalarField) -> tuple[GWA, SkewContext | None]:
    if not isinstance(spec, dict):
        raise ScenarioError("algebra", "expected an object")
    if "catalog" in spec:
        _reject_unknown(spec, CATALOG_KEYS, "algebra")
        name = spec["catalog"]
        if name not in CATALOG:
            raise ScenarioError("algebra.catalog", f"unknown catalog algebra {name!r}")
        n = _int(spec, "n", "algebra", 1, 1)
        params = spec.get("params", {})
        if not isinstance(params, dict):
            raise ScenarioError("algebra.params", "expected an object")
        if name == "torus_diffops":
            return tab.torus_as_gwa(n), catalog(name, n)
        alg = catalog(name, n, params=params, field=fld, laurent=bool(spec.get("laurent", False)))
        return alg, None
    _reject_unknown(spec, EXPLICIT_KEYS, "algebra")
    kind = spec.get("D", "polynomial")
    if kind not in ("polynomial", "laurent"):
        raise ScenarioError("algebra.D", "must be 'polynomial' or 'laurent'")
    n = _int(spec, "n", "algebra", None, 1)
    names = spec.get("variables", [f"h{i + 1}" for i in range(n)])
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise ScenarioError("algebra.variables", "expected a list of names")
    try:
        ring = PolyRing(fld, tuple(names), kind == "laurent")
    except ValueError as exc:
        raise ScenarioError("algebra.variables", str(exc)) from None
    a, sigma = spec.get("a"), spec.get("sigma")
    if not isinstance(a, list) or len(a) != n:
        raise ScenarioError("algebra.a", f"expected a list of {n} expressions")
    if not isinstance(sigma, list) or len(sigma) != n:
        raise ScenarioError("algebra.sigma", f"expected a list of {n} automorphisms")
    a = [_parse(ring, x, f"algebra.a[{i}]") for i, x in enumerate(a)]
    sigma = [_build_auto(ring, s, i, f"algebra.sigma[{i}]") for i, s in enumerate(sigma)]
    try:
        return GWA(ring, a, sigma, name=spec.get("name"), independent=spec.get("independent")), None
    except PresentationError as exc:
        raise ScenarioError("algebra", str(exc)) from None


def _build_group(spec, alg: GWA) -> dict | None:
    if spec is None:
        return None
    if not isinstance(spec, dict) or spec.get("type") not in GROUP_KEYS:
        raise ScenarioError("group.type", f"expected one of {', '.join(GROUP_KEYS)}")
    kind = spec["type"]
    _reject_unknown(spec, GROUP_KEYS[kind], "group")
    if kind == "sn":
        out = {"type": kind, "m": 1, "p": 1, "n": _int(spec, "n", "group", None, 1)}
    elif kind == "cyclic_diag":
        out = {"type": kind, "m": _int(spec, "m", "group", None, 1), "p": 1, "n": 1}
    else:
        out = {"type": kind, "m": _int(spec, "m", "group", None, 1), "p": _int(spec, "p", "group", None, 1),
               "n": _int(spec, "n", "group", None, 1)}
        if out["m"] % out["p"]:
            raise ScenarioError("group.p", f"p={out['p']} does not divide m={out['m']}")
    if out["n"] != alg.rank:
        raise ScenarioError("group.n", f"group rank {out['n']} differs from algebra rank {alg.rank}")
    return out


def validate(data: dict) -> Scenario:
    _reject_unknown(data, TOP_KEYS, "scenario")
    seed = _int(data, "seed", "scenario", 0)
    fld = _build_field(data.get("field"))
    gspec = data.get("group")
    if isinstance(gspec, dict) and isinstance(gspec.get("m"), int) and gspec["m"] > 0:
        # the diagonal part of the group needs a primitive m-th root of unity
        fld = fld.extend(cyclotomic_order=gspec["m"])
    alg, skew = _build_algebra(data.get("algebra", {"catalog": "weyl"}), fld)
    group = _build_group(data.get("group"), alg)
    mode = data.get("mode", "group")
    if mode not in ("group", "monoid"):
        raise ScenarioError("scenario.mode", "must be 'group' or 'monoid'")
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise ScenarioError("scenario.checks", "expected a list")
    for c in checks:
        if c not in ALGEBRA_CHECKS + GROUP_CHECKS:
            raise ScenarioError("scenario.checks", f"unknown check {c!r}")
        if c in GROUP_CHECKS and group is None:
            raise ScenarioError("scenario.checks", f"check {c!r} needs a group")
    tspec = data.get("tableaux")
    if tspec is not None:
        if not isinstance(tspec, dict):
            raise ScenarioError("tableaux", "expected an object")
        _reject_unknown(tspec, TABLEAUX_KEYS, "tableaux")
        seed_pt = tspec.get("seed")
        if seed_pt is None:
            seed_pt = [str(x) for x in tab.generic_seed(alg)]
        if not isinstance(seed_pt, list) or len(seed_pt) != alg.ring.nvars:
            raise ScenarioError("tableaux.seed", f"expected {alg.ring.nvars} expressions")
        tchecks = tspec.get("checks", list(TABLEAUX_CHECKS))
        if not isinstance(tchecks, list) or any(c not in TABLEAUX_CHECKS for c in tchecks):
            raise ScenarioError("tableaux.checks", f"allowed: {', '.join(TABLEAUX_CHECKS)}")
        tspec = {
            "seed": [_parse(alg.ring, x, f"tableaux.seed[{i}]") for i, x in enumerate(seed_pt)],
            "radius": _int(tspec, "radius", "tableaux", 3, 0),
            "checks": tchecks,
            "samples": _int(tspec, "samples", "tableaux", 3, 0),
        }
    return Scenario(
        name=str(data.get("name", "scenario")), seed=seed, field=fld, algebra=alg, skew=skew, group=group,
        mode=mode, bound=_int(data, "bound", "scenario", 16, 1), samples=_int(data, "samples", "scenario", 20, 0),
        checks=list(checks), tableaux=tspec, raw=data,
    )


# -- checks -------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _samples(sc: Scenario, rng):
    return [random_coefficient(sc.algebra.ring, rng) for _ in range(sc.samples)]


def check_relations(sc: Scenario, rng) -> CheckResult:
    bad = relation_failures(sc.algebra, _samples(sc, rng))
    return CheckResult("relations", _status(not bad), {"violations": [list(map(str, b)) for b in bad[:5]]})


def check_confluence(sc: Scenario, rng) -> CheckResult:
    alg = sc.algebra
    bad = []
    for _ in range(max(sc.samples // 4, 1)):
        u, v = random_element(alg, rng), random_element(alg, rng)
        if rewrite_product(u, v, rng) != u * v:
            bad.append([str(u), str(v)])
    return CheckResult("confluence", _status(not bad), {"witnesses": bad[:3]})


def check_embedding(sc: Scenario, rng) -> CheckResult:
    alg = sc.algebra
    bad = []
    for _ in range(sc.samples):
        u, v = random_element(alg, rng), random_element(alg, rng)
        if gwa_embed(u * v) != gwa_embed(u) * gwa_embed(v):
            bad.append([str(u), str(v)])
    return CheckResult("embedding", _status(not bad), {"pairs": sc.samples, "witnesses": bad[:3]})


def check_cyclic_oracle(sc: Scenario, rng) -> CheckResult:
    alg = sc.algebra
    bad = []
    for i in range(alg.rank):
        back = alg.sigma[i].inverse()
        for m in range(1, 5):
            expected, step = alg.ring.one, alg.a[i]
            for _ in range(m):
                expected, step = expected * step, back.apply(step)
            if alg.Y(i, m) * alg.X(i, m) != alg.scalar(expected):
                bad.append([i + 1, m])
    detail = {"failures": bad}
    if sc.group and sc.group["type"] == "cyclic_diag" and alg.rank == 1:
        inv = cyclic_invariant_gwa(alg, sc.group["m"])
        detail["child"] = inv.child.describe()
    return CheckResult("cyclic_oracle", _status(not bad), detail)


def _generator_set(sc: Scenario):
    g = sc.group
    return invariant_generators(sc.algebra, g["m"], g["p"], sc.mode)


def check_invariance(sc: Scenario, rng) -> CheckResult:
    gens = _generator_set(sc)
    bad = gens.invariance_failures()
    return CheckResult("invariance", _status(not bad), {"generators": gens.labels, "not_fixed": bad})


def check_embedding_images(sc: Scenario, rng) -> CheckResult:
    gens = _generator_set(sc)
    bad = gens.image_mismatches()
    return CheckResult("embedding_images", _status(not bad), {
        "images": [f"{lab} -> {img}" for lab, img in zip(gens.labels, gens.images())], "mismatches": bad,
    })


def check_generates_monoid(sc: Scenario, rng) -> CheckResult:
    gens = _generator_set(sc)
    detail = {"mode": sc.mode, "bound": sc.bound, "lattice": [list(g) for g in gens.spec.generators]}
    try:
        ok = gens.supports_generate(sc.bound)
    except Inconclusive as exc:
        detail["reason"] = str(exc)
        return CheckResult("generates_monoid", "inconclusive", detail)
    return CheckResult("generates_monoid", _status(ok), detail)


def check_decomposition(sc: Scenario, rng) -> CheckResult:
    g = sc.group
    alg = sc.algebra
    group = group_elements(g["m"], g["p"], g["n"])
    counts, bad = [], []
    for _ in range(max(sc.samples, 1)):
        u = gwa_reynolds(group, random_element(alg, rng, max_power=g["m"]))
        if u.is_zero:
            continue
        comps = decomposition_check(u, g["m"], g["p"])
        total = alg.zero
        for c in comps:
            total = total + c.part
        counts.append(len(comps))
        if total != u or len(comps) > g["p"]:
            bad.append(str(u))
    return CheckResult("decomposition", _status(not bad), {
        "samples": len(counts), "max_components": max(counts, default=0), "failures": bad[:3],
    })


def check_principal(sc: Scenario, rng) -> CheckResult:
    g = sc.group
    n = g["n"]
    group = group_elements(g["m"], g["p"], n)
    if sc.skew is not None:
        gens = torus_invariant_generators(sc.skew)
        ring = sc.skew.ring
    else:
        gens = _generator_set(sc).images()
        ring = sc.algebra.ring
    report = principal_check(gens, gamma_samples(ring, n, rng), group)
    return CheckResult("principal", _status(report.passed), {
        "checked": report.checked, "counterexamples": [list(map(str, c)) for c in report.counterexamples[:3]],
    })


def check_rational_witness(sc: Scenario, rng) -> CheckResult:
    n = sc.algebra.rank
    if n < 2:
        return CheckResult("rational_witness", "fail", {"reason": "needs rank at least 2"})
    ctx = sc.skew or sc.algebra.skew_context()
    ring = ctx.ring
    h = ring.gens()
    x = ctx.zero
    for i in range(n):
        for j in range(i + 1, n):
            x = x + ctx.one * ring.frac(1, h[i] - h[j]) * (ctx.basis(i) - ctx.basis(j))
    probe = ctx.one * ring.frac(1, h[0] - h[1]) * ctx.basis(0)
    d = dchi_sign_sn(n, ring)
    sym = group_elements(1, 1, n)
    ok, probe_ok = rational_witness_check(x, d, sym), rational_witness_check(probe, d, sym)
    return CheckResult("rational_witness", _status(ok and not probe_ok), {
        "witness": str(x), "d_chi": str(d), "witness_passes": ok, "probe_passes": probe_ok,
    })


def run_tableaux(sc: Scenario, rng, radius_override: int | None, selected) -> list[CheckResult]:
    spec = sc.tableaux
    radius = radius_override if radius_override is not None else spec["radius"]
    orbit = tab.orbit_expand(sc.algebra, spec["seed"], radius)
    out = []
    for name in spec["checks"]:
        if selected and f"tableaux.{name}" not in selected and name not in selected:
            continue
        t0 = time.perf_counter()
        if name == "relations":
            samples = [random_coefficient(sc.algebra.ring, rng, degree=2) for _ in range(spec["samples"])]
            rep = tab.verify_relations(orbit, samples + list(sc.algebra.ring.gens()))
            res = CheckResult("tableaux.relations", _status(rep.passed), {
                "orbit_size": len(orbit), "checked": rep.checked, "violations": [list(v) for v in rep.violations[:5]],
            })
        elif name == "lift":
            weights = tab.weight_table(orbit)
            res = CheckResult("tableaux.lift", _status(tab.weight_lift_check(orbit)), {
                "eigenvalues": [[str(x) for x in w] for w in weights],
            })
        else:
            comps = tab.submodule_scan(orbit)
            points = tab.window_points(orbit)
            res = CheckResult("tableaux.submodules", "pass", {
                "components": len(comps),
                "closed_sets": [sorted(points[k] for k in c) for c in comps],
                "edges": [[points[a], points[b], lab] for a, b, lab in tab.reachability_edges(orbit)],
            })
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out


CHECKS: dict[str, Callable] = {
    "relations": check_relations,
    "confluence": check_confluence,
    "embedding": check_embedding,
    "cyclic_oracle": check_cyclic_oracle,
    "invariance": check_invariance,
    "embedding_images": check_embedding_images,
    "generates_monoid": check_generates_monoid,
    "decomposition": check_decomposition,
    "principal": check_principal,
    "rational_witness": check_rational_witness,
}


# -- running and reporting -------------------------------------------------------------


@dataclass
class Report:
    scenario: str
    seed: int
    results: list[CheckResult]

    @property
    def statuses(self) -> list[str]:
        return [r.status for r in self.results]

    def exit_code(self, escalate: bool = False) -> int:
        if "fail" in self.statuses:
            return EXIT_FAIL
        if escalate and "inconclusive" in self.statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_PASS

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario, "seed": self.seed,
            "environment": {"python": sys.version.split()[0]},
            "results": [r.as_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"scenario {self.scenario} (seed {self.seed})"]
        for r in self.results:
            lines.append(f"  {r.status.upper():12} {r.name}  [{r.seconds:.2f}s]")
            for key, value in r.detail.items():
                if value in ([], None, ""):
                    continue
                text = json.dumps(value) if isinstance(value, list) else str(value)
                lines.append(f"      {key}: " + text.replace("\n", "\n        "))
        if not self.results:
            lines.append("  (no checks)")
        return "\n".join(lines)


def run_scenario(sc: Scenario, checks: list[str] | None = None, seed: int | None = None,
                 radius: int | None = None, bound: int | None = None) -> Report:
    seed = sc.seed if seed is None else seed
    if bound is not None:
        sc.bound = bound
    results = []
    for name in sc.checks:
        if checks and name not in checks:
            continue
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            res = CHECKS[name](sc, rng)
        except (PresentationError, ArithmeticError, ValueError) as exc:
            res = CheckResult(name, "fail", {"error": f"{type(exc).__name__}: {exc}"})
        res.seconds = time.perf_counter() - t0
        results.append(res)
    if sc.tableaux is not None:
        rng = random.Random(f"{seed}:tableaux")
        results.extend(run_tableaux(sc, rng, radius, checks))
    return Report(sc.name, seed, results)


def bundled_scenarios() -> list[Path]:
    root = resources.files("gwalg") / "scenarios"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".scenario"))


def list_catalog() -> str:
    lines = ["algebras:"]
    for name in CATALOG:
        lines.append(f"  {name:14} {CATALOG_DESCRIPTIONS[name]}")
    lines.append("automorphisms:")
    lines.append("  shift          h_i -> h_i - step")
    lines.append("  q_scale        h_i -> q*h_i")
    lines.append("  q_weyl         h_i -> q^-1*(h_i - 1)")
    lines.append("  nagata         (x, y, z) -> (x - 2y w - z w^2, y + z w, z), w = xz + y^2")
    lines.append("groups:")
    lines.append("  gmpn           G(m,p,n), p | m: {type: gmpn, m, p, n}")
    lines.append("  sn             symmetric group: {type: sn, n}")
    lines.append("  cyclic_diag    cyclic group of order m on a rank-one algebra: {type: cyclic_diag, m}")
    lines.append("checks:")
    lines.append("  algebra        " + ", ".join(ALGEBRA_CHECKS))
    lines.append("  group          " + ", ".join(GROUP_CHECKS))
    lines.append("  tableaux       " + ", ".join(TABLEAUX_CHECKS))
    return "\n".join(lines)


def _run_file(path: Path, args) -> tuple[Report, int]:
    sc = validate(load_scenario(path.read_text(), str(path)))
    report = run_scenario(sc, args.check, args.seed, args.radius, args.bound)
    return report, report.exit_code(args.escalate)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwalg", description="Exact checks for generalized Weyl algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario file")
    run.add_argument("file", type=Path)
    verify = sub.add_parser("verify-all", help="run every bundled scenario")
    for p in (run, verify):
        p.add_argument("--check", action="append", metavar="NAME", help="restrict to this check (repeatable)")
        p.add_argument("--seed", type=int)
        p.add_argument("--radius", type=int)
        p.add_argument("--bound", type=int)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--escalate", action="store_true", help="exit 3 when a check is inconclusive")
    sub.add_parser("list-catalog", help="show catalog algebras, automorphisms, groups and checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command == "list-catalog":
        print(list_catalog())
        return EXIT_PASS
    files = [args.file] if args.command == "run" else bundled_scenarios()
    reports, code = [], EXIT_PASS
    for path in files:
        try:
            report, rc = _run_file(path, args)
        except (OSError, ScenarioError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        reports.append(report)
        if rc == EXIT_FAIL or code == EXIT_PASS:
            code = rc
    if args.format == "json":
        payload = reports[0].as_dict() if args.command == "run" else [r.as_dict() for r in reports]
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(r.to_text() for r in reports))
    return code


if __name__ == "__main__":
    sys.exit(main())
