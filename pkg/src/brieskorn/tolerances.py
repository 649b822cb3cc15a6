"""Default numerical tolerances and their resolution against overrides.

Every tolerance used by the geometric and dynamical verification code is
named here so it can be overridden per call, from the command line, or via
the ``BRIESKORN_TOLERANCES`` environment variable (a comma separated list
of ``name=value`` pairs).
"""

from __future__ import annotations

import os

DEFAULT_TOLERANCES: dict[str, float] = {
    # matrix-level group relations, e.g. rotation powers against +/- identity
    "matrix_relation": 1e-9,
    # lifted relations and action/invariance residuals on sampled points
    "invariance": 1e-8,
    # polygon area against the curvature integral
    "area": 1e-12,
    # measured interior angles against the prescribed ones
    "angle": 1e-10,
    # per-step error target of the adaptive integrator
    "ode_step": 1e-10,
    # relative mismatch between integrated and closed-form monodromy
    "ode_vs_analytic": 1e-6,
    # monodromy determinant drift from 1
    "determinant": 1e-9,
    # rotation within this of a multiple of 2*pi counts as degenerate
    "degenerate_rotation": 1e-12,
    # Moebius denominator below this magnitude is treated as collapsed
    "denominator": 1e-12,
}

ENV_VAR = "BRIESKORN_TOLERANCES"


def _parse_pairs(text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, value = chunk.partition("=")
        name = name.strip()
        if name not in DEFAULT_TOLERANCES:
            raise KeyError(f"unknown tolerance {name!r}")
        out[name] = float(value)
    return out


def resolve(overrides: dict[str, float] | None = None) -> dict[str, float]:
    """Merge defaults, the environment profile, and explicit overrides."""
    merged = dict(DEFAULT_TOLERANCES)
    env = os.environ.get(ENV_VAR)
    if env:
        merged.update(_parse_pairs(env))
    if overrides:
        for name, value in overrides.items():
            if name not in DEFAULT_TOLERANCES:
                raise KeyError(f"unknown tolerance {name!r}")
            merged[name] = float(value)
    return merged
