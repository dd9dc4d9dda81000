"""Degrees-of-freedom tools for full-duplex multi-cell networks.

Closed-form sum-DoF expressions, exact two-variable LPs, finite-extension
beam constructions (monomial alignment and zero-forcing) and a numerical
decodability verifier.
"""

from .errors import (
    DimensionError,
    EnumerationCapError,
    FdCellError,
    FeasibilityError,
    InfeasibleError,
    RegimeError,
    UnresolvableCoefficientError,
)
from .formulas import (
    DofValue,
    dof_fd_achievable,
    dof_fd_upper,
    dof_gap_ratio,
    dof_hd,
    dof_no_bs2bs,
    dof_self_interference,
)
from .kernels import BACKEND
from .lp import Scheme, best_achievable, maximize, solve_scheme
from .network import ChannelRealization, NetworkConfig, SelfInterference, generate_channels

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChannelRealization",
    "DimensionError",
    "DofValue",
    "EnumerationCapError",
    "FdCellError",
    "FeasibilityError",
    "InfeasibleError",
    "NetworkConfig",
    "RegimeError",
    "Scheme",
    "SelfInterference",
    "UnresolvableCoefficientError",
    "best_achievable",
    "dof_fd_achievable",
    "dof_fd_upper",
    "dof_gap_ratio",
    "dof_hd",
    "dof_no_bs2bs",
    "dof_self_interference",
    "generate_channels",
    "maximize",
    "solve_scheme",
]
