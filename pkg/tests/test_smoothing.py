import dataclasses

import pytest

from kdl.classify import Verdict
from kdl.errors import NotDivisible
from kdl.fans import Cone, FanWindow, cone_at, hopf_shift
from kdl.lattice import IntVec
from kdl.smoothing import (
    build_family,
    family_invariants,
    family_payload,
    invariants_payload,
    report_payload,
    verify_family,
)


def check_names(report):
    return {c.name: c for c in report.checks}


class TestBuildFamily:
    def test_hopf_generators(self):
        fam = build_family("hopf", e=2, w=2, window=8)
        assert fam.generators[0].lattice_part == hopf_shift(2)
        assert fam.generators[1].torus_part == ("1", "alpha", "1")
        assert fam.quotient_info.galois_order == 2
        assert fam.quotient_info.generic_fiber_degree == 1

    def test_mumford_family(self):
        fam = build_family("mumford", window=8)
        assert fam.generator_names == ("polygon_shift",)
        assert fam.generators[0].lattice_part.rows == ((1, 0), (1, 1))
        assert fam.quotient_info is None

    def test_rational_generators_commute(self):
        fam = build_family("rational", e=1, w=1, window=4)
        phi, psi = fam.generators[0].lattice_part, fam.generators[1].lattice_part
        assert phi @ psi == psi @ phi
        assert fam.generators[2].torus_part == ("1", "1", "1", "1", "lambda")

    def test_elliptic_twist_exponent(self):
        fam = build_family("elliptic", e=6, w=3, window=4)
        assert fam.generators[1].lattice_part.rows[0] == (1, 2, 0)

    def test_warp_must_divide(self):
        with pytest.raises(NotDivisible):
            build_family("hopf", e=3, w=2)
        with pytest.raises(NotDivisible):
            build_family("elliptic", e=2, w=0)

    def test_mumford_takes_no_params(self):
        with pytest.raises(ValueError):
            build_family("mumford", e=1, w=1)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            build_family("k3", e=1, w=1)

    def test_hopf_needs_positive_degree(self):
        with pytest.raises(ValueError):
            build_family("hopf", e=0, w=1)

    def test_elliptic_degree_zero_allowed(self):
        fam = build_family("elliptic", e=0, w=1, window=4)
        assert fam.quotient_info.generic_fiber_degree == 0


class TestVerifyFamily:
    def test_hopf_all_pass(self):
        report = verify_family(build_family("hopf", e=2, w=2, window=8))
        assert report.all_pass, [c for c in report.checks if not c.passed]

    def test_mumford_all_pass_with_zero_deflection(self):
        report = verify_family(build_family("mumford", window=8))
        assert report.all_pass
        assert check_names(report)["deflection"].passed

    def test_elliptic_all_pass(self):
        report = verify_family(build_family("elliptic", e=4, w=2, window=8))
        assert report.all_pass
        assert "base_twist_fixes_fan" in check_names(report)

    def test_rational_all_pass(self):
        report = verify_family(build_family("rational", e=2, w=1, window=4))
        names = check_names(report)
        assert report.all_pass
        assert names["shift_m"].passed and names["shift_n"].passed
        assert names["deflection_m"].passed and names["deflection_n"].passed

    def test_tampered_ray_detected(self):
        fam = build_family("hopf", e=2, w=2, window=4)
        cones = dict(fam.fan.cones)
        kind = fam.kind
        cones[0] = Cone((kind.hinge_ray(0), IntVec((1, 1, 1))), 3)
        tampered = dataclasses.replace(
            fam, fan=FanWindow(fam.fan.kind, fam.fan.index_range, cones)
        )
        report = verify_family(tampered)
        assert not report.all_pass
        failed = [c for c in report.checks if not c.passed]
        assert failed
        assert any(c.counterexample is not None for c in failed)

    def test_untested_metadata_present(self):
        report = verify_family(build_family("rational", e=1, w=1, window=3))
        assert any("analytic" in item for item in report.untested)

    def test_hopf_all_divisor_pairs_wide_window(self):
        for e in range(1, 9):
            for w in range(1, e + 1):
                if e % w:
                    continue
                report = verify_family(build_family("hopf", e=e, w=w, window=32))
                assert report.all_pass, (e, w)

    def test_rational_all_degrees_stated_window(self):
        for e in range(1, 6):
            report = verify_family(build_family("rational", e=e, w=1, window=12))
            assert report.all_pass, e


class TestFamilyInvariants:
    def test_hopf_six_three(self):
        inv = family_invariants(build_family("hopf", e=6, w=3, window=4))
        assert inv.post_quotient_degree == 2
        assert inv.verdict == Verdict.kodaira_surface(2)
        assert inv.post_quotient_degree * inv.galois_order == inv.pre_quotient_degree

    def test_elliptic_degree_zero_torus(self):
        inv = family_invariants(build_family("elliptic", e=0, w=1, window=4))
        assert inv.post_quotient_degree == 0
        assert inv.verdict == Verdict.complex_torus()

    def test_rational_identity_quotient(self):
        inv = family_invariants(build_family("rational", e=1, w=1, window=3))
        assert inv.post_quotient_degree == 1

    def test_mumford_has_no_invariants(self):
        with pytest.raises(ValueError):
            family_invariants(build_family("mumford", window=4))

    def test_quotient_relation_across_divisors(self):
        for e in range(1, 9):
            for w in range(1, e + 1):
                if e % w:
                    continue
                inv = family_invariants(build_family("hopf", e=e, w=w, window=3))
                assert inv.post_quotient_degree * w == e


class TestPayloads:
    def test_family_payload_shape(self):
        payload = family_payload(build_family("hopf", e=2, w=1, window=2))
        assert payload["family"] == "hopf"
        assert payload["fan"]["kind"] == "hopf_smoothing"
        assert [g["name"] for g in payload["generators"]] == ["polygon_shift", "fiber_gluing"]
        assert payload["quotient"] == {"galois_order": 1, "generic_fiber_degree": 2}

    def test_report_payload_shape(self):
        report = verify_family(build_family("mumford", window=3))
        payload = report_payload(report)
        assert payload["all_pass"] is True
        assert all(set(c) == {"name", "passed", "counterexample"} for c in payload["checks"])

    def test_invariants_payload(self):
        payload = invariants_payload(family_invariants(build_family("hopf", e=4, w=2, window=2)))
        assert payload["post_quotient_degree"] == 2
        assert payload["verdict"] == "KodairaSurface(2)"
