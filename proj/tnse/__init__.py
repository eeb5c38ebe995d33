"""Spectral simulator for the tamed stochastic Navier-Stokes system."""

from ._tnse import (
    PathSummary,
    TamingFunction,
    default_config,
    leray_project,
    nonlinear_term,
    norms,
    project_ball,
    run_manifest,
    simulate,
    verify,
)

__all__ = [
    "PathSummary",
    "TamingFunction",
    "default_config",
    "leray_project",
    "nonlinear_term",
    "norms",
    "project_ball",
    "run_manifest",
    "simulate",
    "verify",
]
