"""Closed-form sum-DoF expressions, evaluated in exact rationals.

Each function returns a :class:`DofValue` whose ``regime`` names the
piecewise case that fired. Boundary cases follow the inequality signs of the
closed forms verbatim.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "FormulaId",
    "DofValue",
    "fraction_str",
    "dof_fd_achievable",
    "dof_fd_upper",
    "dof_hd",
    "dof_no_bs2bs",
    "dof_self_interference",
    "dof_gap_ratio",
    "ia_term",
]


class FormulaId(str, enum.Enum):
    FD_ACHIEVABLE = "fdAchievable"
    FD_UPPER = "fdUpper"
    HD = "hd"
    NO_BS2BS = "noBs2Bs"
    SELF_INTERFERENCE = "selfInterference"
    SINGLE_CELL = "singleCell"


# regime labels
SINGLE_CELL = "K = 1"
LOW_M = "M <= (K-2)N"
MID_M = "(K-2)N < M < (K-1)N"
HIGH_M = "(K-1)N <= M < K^2N/(K+1)"
OTHERWISE = "otherwise"


def fraction_str(x):
    """Render an exact rational as ``"p/q"`` (integers as ``"p/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DofValue:
    value: Fraction
    regime: str
    formula: FormulaId

    def __float__(self):
        return float(self.value)

    def as_dict(self):
        return {
            "value": fraction_str(self.value),
            "decimal": round(float(self.value), 6),
            "regime": self.regime,
            "formula": self.formula.value,
        }


def ia_term(K, M, N):
    """KN(M^2 + MN) / (M^2 + N^2 + MN)."""
    M, N = Fraction(M), Fraction(N)
    return K * N * (M * M + M * N) / (M * M + N * N + M * N)


def _single_cell(config, formula):
    return DofValue(Fraction(min(2 * config.M, config.N)), SINGLE_CELL, formula)


def dof_fd_achievable(config):
    """Achievable FD sum DoF (four-case piecewise value; ``min{2M, N}`` at K = 1).

    In the middle case all three candidates are evaluated and the label names
    the winner, ties resolved towards the IA term, then ZF, then cell
    activation.
    """
    K, M, N = config.K, config.M, config.N
    if K == 1:
        return _single_cell(config, FormulaId.FD_ACHIEVABLE)
    if M <= (K - 2) * N:
        return DofValue(ia_term(K, M, N), LOW_M, FormulaId.FD_ACHIEVABLE)
    if M < (K - 1) * N:
        candidates = [
            ("ia", ia_term(K, M, N)),
            ("zf", Fraction(2 * M * N + M * M, M + N)),
            ("activation", min(Fraction(M * K, K - 1), Fraction((K - 1) * N))),
        ]
        best = max(value for _, value in candidates)
        winner = next(name for name, value in candidates if value == best)
        return DofValue(best, f"{MID_M}: {winner}", FormulaId.FD_ACHIEVABLE)
    if M * (K + 1) < K * K * N:
        return DofValue(M + Fraction(M, K), HIGH_M, FormulaId.FD_ACHIEVABLE)
    return DofValue(Fraction(K * N), OTHERWISE, FormulaId.FD_ACHIEVABLE)


def dof_fd_upper(config):
    """Upper bound ``K min{M, N}`` (exact ``min{2M, N}`` for a single cell)."""
    K, M, N = config.K, config.M, config.N
    if K == 1:
        return _single_cell(config, FormulaId.FD_UPPER)
    return DofValue(Fraction(K * min(M, N)), "K >= 2", FormulaId.FD_UPPER)


def dof_hd(config):
    """Optimal sum DoF of the half-duplex ``(K, M, N)`` network."""
    K, M, N = config.K, config.M, config.N
    if M < (K - 1) * N:
        return DofValue(Fraction(K * M * N, M + N), "M < (K-1)N", FormulaId.HD)
    if M < K * N:
        return DofValue(Fraction(M), "(K-1)N <= M < KN", FormulaId.HD)
    return DofValue(Fraction(K * N), OTHERWISE, FormulaId.HD)


def dof_no_bs2bs(config):
    """Achievable sum DoF without BS-to-BS interference.

    ``min{KN, max{M + KMN/(M+N), 2M}}``, and ``KN`` once ``M >= KN``.
    """
    K, M, N = config.K, config.M, config.N
    if M >= K * N:
        return DofValue(Fraction(K * N), "M >= KN", FormulaId.NO_BS2BS)
    zf = M + Fraction(K * M * N, M + N)
    inner = max(zf, Fraction(2 * M))
    if K * N <= inner:
        return DofValue(Fraction(K * N), "capped at KN", FormulaId.NO_BS2BS)
    label = "M + KMN/(M+N)" if zf >= 2 * M else "2M"
    return DofValue(inner, label, FormulaId.NO_BS2BS)


def dof_self_interference(config):
    """Achievable sum DoF when BS self-interference is present."""
    K, M, N = config.K, config.M, config.N
    if M <= (K - 1) * N:
        return DofValue(ia_term(K, M, N), "M <= (K-1)N", FormulaId.SELF_INTERFERENCE)
    if M <= K * N:
        value = K * N * Fraction(M * K, M * K + K * N - M)
        return DofValue(value, "(K-1)N <= M <= KN", FormulaId.SELF_INTERFERENCE)
    return DofValue(Fraction(K * N), OTHERWISE, FormulaId.SELF_INTERFERENCE)


def dof_gap_ratio(config):
    """Multiplicative FD/HD gain as an exact rational."""
    hd = dof_hd(config).value
    if hd <= 0:
        raise ZeroDivisionError("half-duplex sum DoF is zero")
    return dof_fd_achievable(config).value / hd
