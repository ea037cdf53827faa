"""stabkit: exact computations for stability conditions on the Kuznetsov
component of a cubic fivefold and its Clifford-module model on P^3."""

from ._core import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
