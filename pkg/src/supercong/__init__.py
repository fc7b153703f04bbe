"""Exact verification of truncated q-hypergeometric congruences and their q = 1 shadows."""

__version__ = "0.1.0"

from .checker import CongruenceClaim, Verdict, check, check_mixed, run_grid  # noqa: E402
from .upoly import ModulusSpec, cyclotomic  # noqa: E402

__all__ = ["__version__", "CongruenceClaim", "Verdict", "check", "check_mixed", "run_grid", "ModulusSpec", "cyclotomic"]
