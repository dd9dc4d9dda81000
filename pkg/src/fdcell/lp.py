"""Two-variable achievability linear programs, solved exactly.

Each scheme is a small LP in ``(lambda1, lambda2)`` maximising
``KN (lambda1 + lambda2)``. The feasible region is a polygon inside the unit
box, so the optimum is found by enumerating pairwise constraint
intersections in exact arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from . import kernels
from .errors import InfeasibleError, RegimeError
from .formulas import DofValue, FormulaId, fraction_str
from .network import NetworkConfig

__all__ = [
    "Scheme",
    "Constraint2D",
    "LambdaSolution",
    "scheme1_lp",
    "scheme2_lp",
    "no_bs2bs_lp",
    "maximize",
    "solve_scheme",
    "best_achievable",
]

# Rows with entries at or above this magnitude go through Fraction arithmetic
# so that the int64 kernel cannot overflow (products stay below 2**60).
_KERNEL_LIMIT = 1 << 14


class Scheme(str, enum.Enum):
    SCHEME1 = "scheme1"
    SCHEME2 = "scheme2"
    NO_BS2BS = "noBs2Bs"


@dataclass(frozen=True)
class Constraint2D:
    """``a * lambda1 + b * lambda2 <= c``."""

    a: Fraction
    b: Fraction
    c: Fraction
    id: str

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ValueError(f"constraint {self.id!r} has no variables")

    def slack(self, x, y):
        return self.c - self.a * x - self.b * y


@dataclass(frozen=True)
class LambdaSolution:
    lambda1: Fraction
    lambda2: Fraction
    objective: Fraction
    active: tuple
    scheme: Scheme | None = None
    degenerate: bool = False

    def as_dict(self):
        return {
            "scheme": self.scheme.value if self.scheme is not None else None,
            "lambda1": fraction_str(self.lambda1),
            "lambda2": fraction_str(self.lambda2),
            "objective": fraction_str(self.objective),
            "active": list(self.active),
        }


def _boxes():
    return [Constraint2D(1, 0, 1, "lambda1<=1"), Constraint2D(0, 1, 1, "lambda2<=1")]


def _require_fd_regime(config):
    if config.M >= config.K * config.N:
        raise RegimeError(
            f"M={config.M} >= KN={config.K * config.N}: HD operation suffices, "
            "the achievability LPs are defined for M < KN"
        )


def _bs_row(config, lambda2_coeff):
    K, M, N = config.K, config.M, config.N
    return Constraint2D(N + min(M, (K - 1) * N), lambda2_coeff, M, "bs-decode")


def scheme1_lp(config):
    """Constraints of the UL-IA / DL-IA scheme (M < KN)."""
    _require_fd_regime(config)
    M, N = config.M, config.N
    return [
        _bs_row(config, N),
        Constraint2D(1, 1 + Fraction(N, M), 1, "dl-decode"),
        *_boxes(),
    ]


def scheme2_lp(config):
    """Constraints of the UL-IA / DL zero-forcing scheme (M < KN)."""
    _require_fd_regime(config)
    K, M, N = config.K, config.M, config.N
    return [
        _bs_row(config, 0),
        Constraint2D((K - 1) * N, K * N, M, "zf-dimension"),
        Constraint2D(1, 1, 1, "w-space"),
        *_boxes(),
    ]


def no_bs2bs_lp(config):
    """Scheme-2 constraints when there is no BS-to-BS interference (M < KN)."""
    _require_fd_regime(config)
    K, M, N = config.K, config.M, config.N
    return [
        _bs_row(config, 0),
        Constraint2D(0, K * N, M, "zf-dimension"),
        Constraint2D(1, 1, 1, "w-space"),
        *_boxes(),
    ]


def _nonneg():
    return [Constraint2D(-1, 0, 0, "lambda1>=0"), Constraint2D(0, -1, 0, "lambda2>=0")]


def _integer_rows(constraints):
    rows = []
    for con in constraints:
        scale = lcm(con.a.denominator, con.b.denominator, con.c.denominator)
        rows.append([int(con.a * scale), int(con.b * scale), int(con.c * scale)])
    return rows


def _vertex_max_fraction(constraints):
    best = None
    for p, first in enumerate(constraints):
        for second in constraints[p + 1:]:
            det = first.a * second.b - second.a * first.b
            if det == 0:
                continue
            x = (first.c * second.b - second.c * first.b) / det
            y = (first.a * second.c - second.a * first.c) / det
            if any(con.slack(x, y) < 0 for con in constraints):
                continue
            if best is None or (x + y, x, y) > (best[0] + best[1], best[0], best[1]):
                best = (x, y)
    return best


def maximize(constraints, config, scheme=None):
    """Exactly maximise ``lambda1 + lambda2`` over ``[0, 1]^2`` and the constraints.

    Ties are broken towards larger ``lambda1``, then larger ``lambda2``.

    Raises
    ------
    InfeasibleError
        If no point of the unit box satisfies every constraint.
    """
    constraints = list(constraints)
    if not constraints:
        raise ValueError("empty constraint list")
    full = constraints + [c for c in _boxes() if c.id not in {k.id for k in constraints}]
    full += _nonneg()

    rows = _integer_rows(full)
    if max(abs(v) for row in rows for v in row) < _KERNEL_LIMIT:
        xn, yn, den = kernels.lp2_max(np.ascontiguousarray(rows, dtype=np.int64))
        point = None if den == 0 else (Fraction(int(xn), int(den)), Fraction(int(yn), int(den)))
    else:
        point = _vertex_max_fraction(full)
    if point is None:
        raise InfeasibleError("no (lambda1, lambda2) in [0,1]^2 satisfies the constraints")

    x, y = point
    active = tuple(con.id for con in full if con.slack(x, y) == 0)
    return LambdaSolution(
        lambda1=x,
        lambda2=y,
        objective=config.K * config.N * (x + y),
        active=active,
        scheme=Scheme(scheme) if scheme is not None else None,
        degenerate=(x == 0 or y == 0),
    )


_BUILDERS = {
    Scheme.SCHEME1: scheme1_lp,
    Scheme.SCHEME2: scheme2_lp,
    Scheme.NO_BS2BS: no_bs2bs_lp,
}


@lru_cache(maxsize=65536)
def _solve_cached(K, M, N, scheme):
    config = NetworkConfig(K, M, N)
    return maximize(_BUILDERS[scheme](config), config, scheme=scheme)


def solve_scheme(config, scheme):
    """Optimal :class:`LambdaSolution` of one scheme's LP (memoised)."""
    return _solve_cached(config.K, config.M, config.N, Scheme(scheme))


def best_achievable(config):
    """Best sum DoF over both schemes and every number of active cells.

    For each active-cell count ``K'`` in ``1..K``: a single cell contributes
    ``min{2M, N}``, ``M >= K'N`` contributes ``K'N`` (half-duplex suffices),
    and otherwise the better of the two scheme LPs at ``(K', M, N)``. The
    regime label names the first maximiser, scanning ``K' = K`` downwards.
    """
    K, M, N = config.K, config.M, config.N
    candidates = []
    for active in range(K, 1, -1):
        if M >= active * N:
            candidates.append((Fraction(active * N), f"hd-fallback (K'={active})"))
            continue
        for scheme in (Scheme.SCHEME1, Scheme.SCHEME2):
            value = solve_scheme(config.with_cells(active), scheme).objective
            candidates.append((value, f"{scheme.value} (K'={active})"))
    candidates.append((Fraction(min(2 * M, N)), "single-cell (K'=1)"))
    best = max(value for value, _ in candidates)
    label = next(name for value, name in candidates if value == best)
    return DofValue(best, label, FormulaId.FD_ACHIEVABLE)
