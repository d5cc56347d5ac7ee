import pytest

from kdl.boundary import (
    ELLIPTIC_RULED_STRATUM,
    HOPF_STRATUM,
    RATIONAL_STRATUM,
    AdjacencyEdge,
    StratumComponent,
    adjacency_edges,
    boundary_payload,
    enumerate_components,
    local_model,
    render_dot,
)


class TestComponents:
    def test_degree_one_warp_two(self):
        components = enumerate_components(1, 2)
        assert len(components) == 6
        assert {(c.stratum, c.degree, c.warp) for c in components} == {
            (s, w, w) for s in (HOPF_STRATUM, RATIONAL_STRATUM, ELLIPTIC_RULED_STRATUM) for w in (1, 2)
        }

    def test_degree_two_warp_one(self):
        components = enumerate_components(2, 1)
        assert len(components) == 3
        assert all((c.degree, c.warp) == (2, 1) for c in components)

    def test_param_spaces(self):
        spaces = {c.stratum: c.param_space for c in enumerate_components(1, 1)}
        assert spaces == {
            HOPF_STRATUM: "PuncturedDisk",
            RATIONAL_STRATUM: "CStar",
            ELLIPTIC_RULED_STRATUM: "ComplexLine",
        }

    def test_count_is_three_per_warp(self):
        for d in (1, 2, 3):
            for w_max in (1, 2, 3, 4):
                assert len(enumerate_components(d, w_max)) == 3 * w_max

    def test_warp_divides_degree_always(self):
        for d in (1, 2, 3):
            for c in enumerate_components(d, 4):
                assert c.degree % c.warp == 0
                assert c.degree // c.warp == d

    def test_components_classify_to_the_right_degree(self):
        from kdl.classify import (
            ELLIPTIC_RULED,
            HOPF,
            RATIONAL,
            EllipticRuledDatum,
            RationalDatum,
            Verdict,
            classify,
            smoothing_verdict,
        )

        type_of = {
            HOPF_STRATUM: HOPF,
            RATIONAL_STRATUM: RATIONAL,
            ELLIPTIC_RULED_STRATUM: ELLIPTIC_RULED,
        }
        for d in (1, 2, 3):
            for c in enumerate_components(d, 4):
                verdict = smoothing_verdict(type_of[c.stratum], c.degree, c.warp, True)
                assert verdict == Verdict.kodaira_surface(d)
                if c.stratum == RATIONAL_STRATUM:
                    sc = classify(RationalDatum(c.degree, c.warp, untwisted=True))
                    assert sc.verdict == Verdict.kodaira_surface(d)
                elif c.stratum == ELLIPTIC_RULED_STRATUM:
                    sc = classify(EllipticRuledDatum(c.degree, c.warp, translation=True))
                    assert sc.verdict == Verdict.kodaira_surface(d)

    def test_invalid_component_rejected(self):
        with pytest.raises(ValueError):
            StratumComponent(HOPF_STRATUM, degree=3, warp=2, param_space="PuncturedDisk")
        with pytest.raises(ValueError):
            StratumComponent(HOPF_STRATUM, degree=2, warp=1, param_space="CStar")


class TestEdges:
    def test_degree_one_warp_two_edges(self):
        edges = adjacency_edges(enumerate_components(1, 2))
        keys = {(e.witness, e.endpoints) for e in edges}
        assert (
            "X1Family",
            ((ELLIPTIC_RULED_STRATUM, 1, 1), (HOPF_STRATUM, 1, 1)),
        ) in keys
        assert (
            "X1Family",
            ((ELLIPTIC_RULED_STRATUM, 2, 2), (HOPF_STRATUM, 2, 2)),
        ) in keys
        assert (
            "X2Family",
            ((RATIONAL_STRATUM, 1, 1), (ELLIPTIC_RULED_STRATUM, 2, 2)),
        ) in keys
        assert len(edges) == 3

    def test_no_hopf_rational_edge(self):
        for d in (1, 2, 3):
            for w_max in (1, 2, 3, 4):
                for e in adjacency_edges(enumerate_components(d, w_max)):
                    strata = {e.endpoints[0][0], e.endpoints[1][0]}
                    assert strata != {HOPF_STRATUM, RATIONAL_STRATUM}
                    assert ELLIPTIC_RULED_STRATUM in strata

    def test_x1_edge_count(self):
        # every (e, w) pair contributes one X1 edge
        for w_max in (1, 2, 3, 4):
            edges = adjacency_edges(enumerate_components(2, w_max))
            assert sum(1 for e in edges if e.witness == "X1Family") == w_max

    def test_x2_requires_both_endpoints(self):
        # with w_max = 1 the elliptic (2e, 2) component is absent
        edges = adjacency_edges(enumerate_components(1, 1))
        assert all(e.witness != "X2Family" for e in edges)

    def test_x2_rational_endpoint_has_warp_one(self):
        # the witnessing family deforms to rational normalization of warp
        # exactly 1, so a warp-2 rational component gains no X2 edge even
        # when the matching elliptic component exists
        components = [
            StratumComponent(RATIONAL_STRATUM, degree=4, warp=2, param_space="CStar"),
            StratumComponent(ELLIPTIC_RULED_STRATUM, degree=8, warp=2, param_space="ComplexLine"),
        ]
        assert adjacency_edges(components) == []

    def test_degenerate_edge_rejected(self):
        with pytest.raises(ValueError):
            AdjacencyEdge(
                endpoints=((HOPF_STRATUM, 1, 1), (HOPF_STRATUM, 1, 1)),
                witness="X1Family",
                witness_ref="x",
            )


class TestLocalModel:
    def test_fixed_fields(self):
        record = local_model()
        assert record["model"] == "blowup of (∞,0) in P¹×Δ"
        assert record["removed"] == "two points on exceptional divisor"
        assert record["normal_crossing_obstruction"] == "Thm: not of normal crossing type"
        assert record["quadrupel_point_local_equations"] == "T1*T2, T3*T4"
        assert "conjectural" in record["hopf_rational_edge"]


class TestRendering:
    def test_payload_counts(self):
        payload = boundary_payload(1, 2)
        assert len(payload["components"]) == 6
        assert len(payload["edges"]) == 3
        assert payload["local_model"]["removed"] == "two points on exceptional divisor"

    def test_dot_output(self):
        components = enumerate_components(1, 2)
        dot = render_dot(components, adjacency_edges(components))
        assert dot.startswith("graph moduli_boundary {")
        assert '"elliptic_ruled_e1_w1" -- "hopf_e1_w1" [label="X1Family"];' in dot
        assert dot.count("--") == 3
        assert dot.endswith("}\n")
