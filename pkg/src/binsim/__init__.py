"""Seedable simulator of monitored waste bins, collection trucks and paying citizens."""

__version__ = "0.1.0"

from .engine import SimConfig, SimResult, Simulation, run  # noqa: E402

__all__ = ["SimConfig", "SimResult", "Simulation", "run", "__version__"]
