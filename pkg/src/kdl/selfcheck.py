"""Runners for the acceptance criteria.

Each criterion is one function returning a CriterionResult; the CLI selftest
and the pytest acceptance module both drive these, so the checked statements
live in exactly one place.  Everything is exact integer arithmetic; criteria
with a stated time budget fail when they exceed it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .boundary import (
    ELLIPTIC_RULED_STRATUM,
    HOPF_STRATUM,
    RATIONAL_STRATUM,
    adjacency_edges,
    enumerate_components,
)
from .classify import (
    ELLIPTIC_RULED,
    HOPF,
    RATIONAL,
    HopfDatum,
    TangentDims,
    TangentUnavailable,
    cohomology_table,
    hopf_dsemistable,
    hopf_dsemistable_oracle,
    hopf_invariants,
    tangent_table,
)
from .fans import (
    EllipticSmoothing,
    GroupElement,
    HopfSmoothing,
    IntVec,
    MumfordNeron,
    RationalSmoothing,
    apply,
    cone_at,
    cone_is_smooth,
    deflection,
    elliptic_shift,
    elliptic_twist,
    hopf_shift,
    mumford_shift,
    rational_shift_m,
    rational_shift_n,
)
from .graphs import (
    GluingClass,
    betti1,
    classify_gluing,
    enumerate_gluings,
    enumerate_rational_models,
    gluing_morphism,
    neron_polygon_graph,
    pullback_rank,
    triple_line_graph,
)
from .lattice import det


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.number:2d} {self.name}: {self.detail} [{self.elapsed:.2f}s]"


def _result(number, name, t0, ok, detail, bound=None) -> CriterionResult:
    elapsed = time.perf_counter() - t0
    if bound is not None and elapsed >= bound:
        ok = False
        detail += f"; exceeded {bound}s budget"
    return CriterionResult(number, name, ok, detail, elapsed)


def _unit_table(n: int) -> list[int]:
    return [a for a in range(n) if math.gcd(a, n) == 1]


def criterion_congruence_equivalence(n_max: int = 60) -> CriterionResult:
    """Direct d-semistability congruences agree with the lifted-homomorphism oracle."""
    t0 = time.perf_counter()
    cases = 0
    disagreements = 0
    direct, oracle, datum = hopf_dsemistable, hopf_dsemistable_oracle, HopfDatum
    for n in range(1, n_max + 1):
        units = _unit_table(n)
        for n1 in units:
            for n2 in units:
                for b in range(n):
                    h = datum(n, n1, n2, b)
                    cases += 1
                    if direct(h) != oracle(h):
                        disagreements += 1
    ok = disagreements == 0
    return _result(
        1,
        "congruence_equivalence",
        t0,
        ok,
        f"{cases} tuples with n <= {n_max}, {disagreements} disagreements",
        bound=5.0,
    )


def criterion_warp_divides_degree(n_max: int = 60) -> CriterionResult:
    """Every d-semistable datum has warp dividing degree."""
    t0 = time.perf_counter()
    checked = 0
    violations = 0
    for n in range(1, n_max + 1):
        units = _unit_table(n)
        for n1 in units:
            for n2 in units:
                for b in range(n):
                    h = HopfDatum(n, n1, n2, b)
                    if hopf_dsemistable(h):
                        checked += 1
                        e, w = hopf_invariants(h)
                        if e % w != 0:
                            violations += 1
    ok = checked > 0 and violations == 0
    return _result(
        2,
        "warp_divides_degree",
        t0,
        ok,
        f"{checked} d-semistable data with n <= {n_max}, {violations} divisibility failures",
        bound=5.0,
    )


def criterion_fan_battery_hopf(e_max: int = 8, window: int = 32) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for e in range(1, e_max + 1):
        kind = HopfSmoothing(e)
        if det(hopf_shift(e)) != 1:
            failures.append(f"det e={e}")
        shift = GroupElement.from_matrix(hopf_shift(e))
        expected = IntVec((0, e, 0))
        cones = {m: cone_at(kind, m) for m in range(-window, window + 1)}
        for m in range(-window, window + 1):
            if not cone_is_smooth(cones[m]):
                failures.append(f"smooth e={e} m={m}")
            if deflection(kind, m) != expected:
                failures.append(f"deflection e={e} m={m}")
            if m < window and apply(shift, cones[m]) != cones[m + 1]:
                failures.append(f"shift e={e} m={m}")
    ok = not failures
    detail = f"e in 1..{e_max}, |m| <= {window}: smoothness, shift, det, deflection"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(3, "fan_battery_hopf", t0, ok, detail, bound=2.0)


def criterion_fan_battery_rational(e_max: int = 5, window: int = 12) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for e in range(1, e_max + 1):
        kind = RationalSmoothing(e)
        phi, psi = rational_shift_m(e), rational_shift_n()
        if det(phi) != 1 or det(psi) != 1:
            failures.append(f"det e={e}")
        if phi @ psi != psi @ phi:
            failures.append(f"commute e={e}")
        gm, gn = GroupElement.from_matrix(phi), GroupElement.from_matrix(psi)
        cones = {
            (m, n): cone_at(kind, (m, n))
            for m in range(-window, window + 1)
            for n in range(-window, window + 1)
        }
        for (m, n), cone in cones.items():
            if not cone_is_smooth(cone):
                failures.append(f"smooth e={e} ({m},{n})")
            if m < window and apply(gm, cone) != cones[(m + 1, n)]:
                failures.append(f"shift_m e={e} ({m},{n})")
            if n < window and apply(gn, cone) != cones[(m, n + 1)]:
                failures.append(f"shift_n e={e} ({m},{n})")
    ok = not failures
    detail = f"e in 1..{e_max}, |m|,|n| <= {window}: unimodularity, shifts, commutation, SL5"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(4, "fan_battery_rational", t0, ok, detail, bound=5.0)


def criterion_fan_battery_elliptic_mumford(window: int = 16) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    elliptic = EllipticSmoothing()
    shift = GroupElement.from_matrix(elliptic_shift())
    zero3 = IntVec((0, 0, 0))
    for n in range(-window, window + 1):
        cone = cone_at(elliptic, n)
        if n < window and apply(shift, cone) != cone_at(elliptic, n + 1):
            failures.append(f"elliptic shift n={n}")
        if deflection(elliptic, n) != zero3:
            failures.append(f"elliptic deflection n={n}")
        for e, w in ((0, 1), (4, 2), (6, 3)):
            twist = elliptic_twist(e, w)
            if any(ray.times(twist) != ray for ray in cone.rays):
                failures.append(f"twist fixes rays e={e} w={w} n={n}")
    mumford = MumfordNeron()
    mshift = GroupElement.from_matrix(mumford_shift())
    zero2 = IntVec((0, 0))
    for m in range(-window, window + 1):
        if m < window and apply(mshift, cone_at(mumford, m)) != cone_at(mumford, m + 1):
            failures.append(f"mumford shift m={m}")
        if deflection(mumford, m) != zero2:
            failures.append(f"mumford deflection m={m}")
    ok = not failures
    detail = f"|index| <= {window}: shifts, ray-fixing twist, zero deflection"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(5, "fan_battery_elliptic_mumford", t0, ok, detail, bound=1.0)


def criterion_graph_theorem() -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    if betti1(neron_polygon_graph(6)) != 1:
        failures.append("betti1 of the 6-gon graph")
    if betti1(triple_line_graph()) != 2:
        failures.append("betti1 of the triple-line graph")
    valid = 0
    for p, cls in enumerate_gluings().results:
        if cls is GluingClass.INVALID:
            continue
        valid += 1
        rank = pullback_rank(gluing_morphism(p))
        if (rank == 0) != (cls is GluingClass.UNTWISTED):
            failures.append(f"equivalence fails at {p}")
    ok = not failures and valid == 48
    detail = f"betti numbers and untwisted<=>rank-0 over {valid} valid gluings"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(6, "graph_theorem_check", t0, ok, detail, bound=1.0)


def criterion_tables() -> CriterionResult:
    t0 = time.perf_counter()
    expected_cohomology = [
        (HOPF, 1, (1, 1, 0)),
        (ELLIPTIC_RULED, 1, (1, 2, 1)),
        (ELLIPTIC_RULED, 0, (2, 3, 1)),
        (RATIONAL, 1, (1, 2, 0)),
        (RATIONAL, 0, (2, 3, 0)),
    ]
    expected_tangent = [
        (HOPF, 1, TangentDims(1, 2, 1)),
        (ELLIPTIC_RULED, 1, TangentDims(1, 3, 2)),
        (RATIONAL, 1, TangentDims(1, 3, 2)),
        (ELLIPTIC_RULED, 0, TangentUnavailable(4)),
        (RATIONAL, 0, TangentUnavailable(4)),
    ]
    failures = []
    for surface_type, e, want in expected_cohomology:
        if cohomology_table(surface_type, e) != want:
            failures.append(f"cohomology {surface_type} e={e}")
    for surface_type, e, want in expected_tangent:
        if tangent_table(surface_type, e) != want:
            failures.append(f"tangent {surface_type} e={e}")
    ok = not failures
    detail = "all published cohomology and tangent dimension triples"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(7, "dimension_tables", t0, ok, detail)


def criterion_rational_models() -> CriterionResult:
    t0 = time.perf_counter()
    models = [(m.minimal_model, m.polygon_size, m.blowup_count) for m in enumerate_rational_models()]
    ok = models == [("ProjectivePlane", 6, 3), ("Hirzebruch", 6, 2)]
    return _result(8, "rational_model_enumeration", t0, ok, f"models = {models}")


def criterion_boundary_structure(d_max: int = 3, w_max: int = 4) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    param = {HOPF_STRATUM: "PuncturedDisk", RATIONAL_STRATUM: "CStar", ELLIPTIC_RULED_STRATUM: "ComplexLine"}
    for d in range(1, d_max + 1):
        for wm in range(1, w_max + 1):
            components = enumerate_components(d, wm)
            if len(components) != 3 * wm:
                failures.append(f"count d={d} w_max={wm}")
            if any(c.param_space != param[c.stratum] for c in components):
                failures.append(f"param spaces d={d} w_max={wm}")
            edges = adjacency_edges(components)
            x1 = {e.endpoints for e in edges if e.witness == "X1Family"}
            want_x1 = {
                ((ELLIPTIC_RULED_STRATUM, d * w, w), (HOPF_STRATUM, d * w, w))
                for w in range(1, wm + 1)
            }
            if x1 != want_x1:
                failures.append(f"X1 edges d={d} w_max={wm}")
            x2 = {e.endpoints for e in edges if e.witness == "X2Family"}
            want_x2 = (
                {((RATIONAL_STRATUM, d, 1), (ELLIPTIC_RULED_STRATUM, 2 * d, 2))} if wm >= 2 else set()
            )
            if x2 != want_x2:
                failures.append(f"X2 edges d={d} w_max={wm}")
            for e in edges:
                if {e.endpoints[0][0], e.endpoints[1][0]} == {HOPF_STRATUM, RATIONAL_STRATUM}:
                    failures.append(f"hopf-rational edge d={d} w_max={wm}")
    ok = not failures
    detail = f"d <= {d_max}, w_max <= {w_max}: counts, labels, X1/X2 edges, no hopf-rational edge"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(9, "boundary_structure", t0, ok, detail, bound=1.0)


def criterion_cli_determinism() -> CriterionResult:
    import io
    import json
    from contextlib import redirect_stderr, redirect_stdout

    from . import cli

    t0 = time.perf_counter()
    failures = []

    def run(argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = cli.main(argv)
        return code, out.getvalue(), err.getvalue()

    fixtures = [
        ["classify", "--type", "hopf", "--data", '{"n":4,"n1":1,"n2":3,"b":2}'],
        ["classify", "--type", "rational", "--data", '{"e":3,"w":2,"untwisted":true}'],
        ["fan", "--family", "mumford", "--window", "4"],
        ["fan", "--family", "hopf", "--e", "2", "--window", "4"],
        ["boundary", "--degree", "1", "--max-warp", "2"],
        ["boundary", "--degree", "1", "--max-warp", "2", "--format", "dot"],
        ["graph", "--gluing", '{"components":[0,1,2,0,1,2],"nodes":[0,1,0,1,0,1]}'],
    ]
    for argv in fixtures:
        code1, out1, err1 = run(argv)
        code2, out2, err2 = run(argv)
        if (code1, out1, err1) != (code2, out2, err2):
            failures.append(f"nondeterministic output for {' '.join(argv)}")
        if code1 != 0:
            failures.append(f"unexpected exit {code1} for {' '.join(argv)}")

    code, out, _ = run(["classify", "--type", "hopf", "--data", '{"n":4,"n1":1,"n2":3,"b":2}'])
    if code == 0 and '"verdict": "KodairaSurface(1)"' not in out:
        failures.append("classify fixture lost its verdict")

    code, out, err = run(
        ["classify", "--type", "hopf", "--data", '{"n":4,"n1":1,"n2":3,"b":2,"bogus":7}']
    )
    if code != 2:
        failures.append(f"unknown field accepted (exit {code})")
    else:
        try:
            parsed = json.loads(err)
            if "error" not in parsed:
                failures.append("stderr error object has no 'error' field")
        except json.JSONDecodeError:
            failures.append("stderr is not a JSON error object")

    code, _, err = run(["classify", "--type", "hopf", "--data", "{not json"])
    if code != 2 or not err:
        failures.append(f"invalid JSON accepted (exit {code})")

    code, _, _ = run(["verify", "--family", "hopf", "--e", "2", "--w", "2", "--window", "8"])
    if code != 0:
        failures.append(f"verify fixture failed (exit {code})")

    ok = not failures
    detail = "byte-identical reruns, structured errors with exit 2, verify exit 0"
    if failures:
        detail += f"; first failure {failures[0]}"
    return _result(10, "cli_determinism", t0, ok, detail)


def run_all() -> list[CriterionResult]:
    return [
        criterion_congruence_equivalence(),
        criterion_warp_divides_degree(),
        criterion_fan_battery_hopf(),
        criterion_fan_battery_rational(),
        criterion_fan_battery_elliptic_mumford(),
        criterion_graph_theorem(),
        criterion_tables(),
        criterion_rational_models(),
        criterion_boundary_structure(),
        criterion_cli_determinism(),
    ]
