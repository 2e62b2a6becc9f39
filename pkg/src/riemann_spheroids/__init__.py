"""Symmetric relative equilibria of self-gravitating fluid spheroids and their
nonlinear stability."""

from .equilibria import EquilibriumState, Family, build
from .errors import DomainError, NonConvergence, NoSignChange, NotSkew, SpheroidError, UnsupportedPair
from .kinematics import PhysicalParams, Spheroid, VelocityPair
from .stability import StabilityReport, Verdict, find_e0, stability_report

__version__ = "0.1.0"

__all__ = [
    "EquilibriumState", "Family", "build", "DomainError", "NonConvergence", "NoSignChange",
    "NotSkew", "SpheroidError", "UnsupportedPair", "PhysicalParams", "Spheroid", "VelocityPair",
    "StabilityReport", "Verdict", "find_e0", "stability_report",
]
