"""Congruence preservation, recognizable sets and the lattices they generate.

Submodules: exactint, fryingpan, natint, recsets, finalg, latgen, exotic,
padic, plotting, suites and cli.
"""
from .errors import BoundError, DomainError, IllDefined, InvariantViolation, WindowError
from .fryingpan import FryingPan
from .natint import FnTable, Verdict
from .padic import PAdicApprox, RecSetZp
from .recsets import RegSetZ, UPSetN, UPSetZ

__version__ = "0.1.0"

__all__ = ["BoundError", "DomainError", "IllDefined", "InvariantViolation", "WindowError",
           "FryingPan", "FnTable", "Verdict", "PAdicApprox", "RecSetZp", "RegSetZ",
           "UPSetN", "UPSetZ", "__version__"]
