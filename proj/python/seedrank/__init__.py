"""Seed set expansion on stochastic block models."""

import json as _json

from ._seedrank import (
    Graph,
    SbmParams,
    SeedrankError,
    __version__,
    affiliation,
    bp,
    estimate,
    figure1_params,
    generate,
    heat_kernel_weights,
    landing_probabilities,
    pearson_correlation,
    ppr_weights,
    psi_two_block,
    rank_order,
    sbmrank,
    theory,
)
from ._seedrank import _run_experiment


def run_experiment(experiment, **overrides):
    """Run a suite and return (files, manifest).

    `files` maps artifact names to their text; `manifest` is a dict.
    Keyword arguments override the suite defaults.
    """
    files, manifest = _run_experiment(experiment, _json.dumps(overrides))
    return files, _json.loads(manifest)

__all__ = [
    "Graph",
    "SbmParams",
    "SeedrankError",
    "__version__",
    "affiliation",
    "bp",
    "estimate",
    "figure1_params",
    "generate",
    "heat_kernel_weights",
    "landing_probabilities",
    "pearson_correlation",
    "ppr_weights",
    "psi_two_block",
    "rank_order",
    "run_experiment",
    "sbmrank",
    "theory",
]
