"""Probe-field line shapes of a three-level system with one strongly driven transition."""

import json as _json

from ._core import (
    ConvergenceError,
    DomainError,
    DressedPair,
    DriveField,
    LevelScheme,
    MemoryFactors,
    ProbeField,
    RegimeError,
    ThermalEnsemble,
    amplitude_m,
    amplitude_n,
    doppler_averaged_resonance,
    doppler_strong_doublet,
    doppler_weak_doublet,
    dressed_exponents,
    effective_q,
    fluorescence_triplet,
    memory_factors,
    scan_spectrum,
    w_mu_exact,
    w_mu_time_domain,
    w_mu_weak,
)
from ._core import certify as _certify
from ._core import run_job as _run_job

__version__ = "0.1.0"


def _config_text(config):
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def run_job(job, config, threads=1):
    """Run a batch job; ``config`` is a dict or JSON text in the command-line format.

    Returns ``(omega_mu, w, summary)`` with numpy arrays and a summary dict.
    """
    return _run_job(job, _config_text(config), threads)


def certify(config, threads=1):
    """Compare closed forms against the numerical oracles; returns a list of record dicts."""
    return _certify(_config_text(config), threads)
