"""Python bindings for the cloudburst beacon-attribution simulation core."""

from cloudburst._core import (  # noqa: F401
    __version__,
    applicability_matrix,
    callback_fidelity,
    cas,
    default_campaign,
    ephemeral_penalty,
    generate_fleet,
    iam_coverage,
    kruskal_wallis,
    multi_cloud_bonus,
    one_way_anova,
    property_profile,
    run_decay,
    run_grid,
    scan_resistance,
    score_campaign,
    two_sample_t,
    validate_descriptor,
)
