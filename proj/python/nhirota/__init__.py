"""Nonlocal Hirota inverse scattering, asymptotics and spectral evolution."""
import json as _json

from ._core import (  # noqa: F401
    AssumptionError,
    DomainError,
    NumericalError,
    gamma,
    pcfd,
    pcfd_pair,
    rgamma,
    stationary_points,
    theta,
)
from . import _core


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def scatter(config, base_dir="."):
    """Scattering table and assumption report; config is a dict or JSON text."""
    return _core.scatter(_text(config), base_dir)


def asymptotics(config, base_dir="."):
    return _core.asymptotics(_text(config), base_dir)


def evolve(config, base_dir="."):
    return _core.evolve(_text(config), base_dir)


def validate(config, seed=0):
    return _core.validate(_text(config), seed)


__all__ = ["gamma", "rgamma", "pcfd", "pcfd_pair", "theta", "stationary_points",
           "scatter", "asymptotics", "evolve", "validate",
           "AssumptionError", "NumericalError", "DomainError"]
