"""Smoke tests for the python bindings against the C++ core."""

import math

import pytest

import cloudburst


def test_version():
    assert cloudburst.__version__


def test_cas_published_rows():
    rows = [
        (0.92, 0.05, 0.70, 0.40, 0.707),
        (0.55, 0.10, 0.45, 0.20, 0.417),
        (0.98, 0.02, 0.95, 0.60, 0.896),
        (0.70, 0.65, 0.55, 0.35, 0.324),
        (0.50, 0.30, 0.40, 0.50, 0.367),
        (0.60, 0.55, 0.65, 0.45, 0.398),
    ]
    for c_f, e_p, i_c, m_b, expected in rows:
        assert cloudburst.cas(c_f, e_p, i_c, m_b) == pytest.approx(expected, abs=1e-3)


def test_cas_rejects_out_of_range():
    with pytest.raises(ValueError):
        cloudburst.cas(1.2, 0.0, 0.5, 0.5)


def test_ephemeral_penalty_points():
    assert cloudburst.ephemeral_penalty(1) == pytest.approx(0.049, abs=1e-3)
    assert cloudburst.ephemeral_penalty(8, 2, 1) == pytest.approx(0.528, abs=1e-3)
    assert cloudburst.ephemeral_penalty(24, 5, 3) == pytest.approx(0.884, abs=1e-3)


def test_iam_coverage():
    assert cloudburst.iam_coverage(0) == 0.0
    assert cloudburst.iam_coverage(10, 2, True) == pytest.approx(1.0)
    assert cloudburst.iam_coverage(9, 2) == pytest.approx(0.90)


def test_applicability_matrix():
    matrix = cloudburst.applicability_matrix()
    assert len(matrix) == 21
    assert ("iam_canary_role", "oci") in matrix
    assert ("k8s_secret", "oci") not in matrix


def test_fleet_generation_deterministic_and_valid():
    fleet_a = cloudburst.generate_fleet(seed=42)
    fleet_b = cloudburst.generate_fleet(seed=42)
    assert len(fleet_a) == 21
    assert [b["artifact"] for b in fleet_a] == [b["artifact"] for b in fleet_b]
    for beacon in fleet_a:
        assert cloudburst.validate_descriptor(
            beacon["vector"], beacon["provider"], beacon["artifact"]
        )


def test_property_profile_constants():
    assert cloudburst.property_profile("iam_canary_role")[
        "inherent_ephemeral_risk"
    ] == pytest.approx(0.05)
    assert cloudburst.property_profile("k8s_secret")[
        "inherent_ephemeral_risk"
    ] == pytest.approx(0.65)


def test_campaign_size_and_determinism():
    events = cloudburst.default_campaign(seed=1)
    assert 180 <= len(events) <= 230
    again = cloudburst.default_campaign(seed=1)
    assert [e["event_time_h"] for e in events] == [e["event_time_h"] for e in again]


def test_scored_campaign_in_bounds():
    scores = cloudburst.score_campaign(seed=1)
    assert scores
    for s in scores:
        assert 0.0 <= s["cas"] <= 1.0


def test_scan_resistance_targets():
    assert cloudburst.scan_resistance("s3_presigned_url") == pytest.approx(
        0.890, abs=1e-6
    )
    assert cloudburst.scan_resistance("serverless_trigger") == pytest.approx(
        0.611, abs=1e-6
    )


def test_stats_bindings_match_known_values():
    anova = cloudburst.one_way_anova([[1, 2], [5, 6]])
    assert anova["statistic"] == pytest.approx(32.0)
    kw = cloudburst.kruskal_wallis([[1, 2, 3], [4, 5, 6]])
    assert kw["statistic"] == pytest.approx(54.0 / 14.0)
    welch = cloudburst.two_sample_t([1, 2, 3], [1, 2, 3])
    assert welch["p_value"] == pytest.approx(1.0)


def test_grid_study_smoke():
    grid = cloudburst.run_grid(seed=42, replicas=5)
    assert set(grid["per_vector"]) == {
        "s3_presigned_url",
        "container_image",
        "iam_canary_role",
        "terraform_module",
        "k8s_secret",
        "serverless_trigger",
    }
    assert 0.2 < grid["overall_cas"] < 0.5
    assert math.isclose(
        grid["per_vector"]["s3_presigned_url"]["dr_mean"], 0.890, abs_tol=0.01
    )


def test_decay_study_smoke():
    rows = cloudburst.run_decay(seed=42, replicas=10)
    by_vector = {}
    for row in rows:
        by_vector.setdefault(row["vector"], []).append((row["t_h"], row["cas_mean"]))
    for vector, series in by_vector.items():
        series.sort()
        assert series[0][1] > series[-1][1], vector
