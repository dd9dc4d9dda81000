"""Network configuration and seeded time-extended channel realizations.

Indices are 0-based throughout. The four coefficient tables of a
:class:`ChannelRealization` are laid out as

``h[i, j, k, l, t]``
    UL user ``(k, l)`` to DL user ``(i, j)``.
``f[i, a, k, l, t]``
    UL user ``(k, l)`` to receive antenna ``a`` of BS ``i``.
``g[i, j, k, a, t]``
    transmit antenna ``a`` of BS ``k`` to DL user ``(i, j)``.
``B[i, a, j, b, t]``
    transmit antenna ``b`` of BS ``j`` to receive antenna ``a`` of BS ``i``.

Extended channels are (block-)diagonal, so they are never materialised;
:func:`apply_diagonal` is their action on a length-``d`` vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

__all__ = [
    "NetworkConfig",
    "SelfInterference",
    "ChannelRealization",
    "generate_channels",
    "apply_diagonal",
]

_KIND_CODES = {"h": 1, "f": 2, "g": 3, "B": 4}


@dataclass(frozen=True)
class NetworkConfig:
    """A ``(K, M, N)`` full-duplex cellular network.

    Parameters
    ----------
    K : int
        Number of cells.
    M : int
        Transmit (and receive) antennas per base station.
    N : int
        UL users per cell, and DL users per cell.
    """

    K: int
    M: int
    N: int

    def __post_init__(self):
        for name in ("K", "M", "N"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")

    def as_dict(self):
        return {"k": int(self.K), "m": int(self.M), "n": int(self.N)}

    def with_cells(self, K):
        return NetworkConfig(K, self.M, self.N)


class SelfInterference(str, enum.Enum):
    SUPPRESSED = "suppressed"
    PRESENT = "present"


def _readonly(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """All scalar channel coefficients of one network over ``d`` slots."""

    config: NetworkConfig
    d: int
    seed: int
    mode: SelfInterference
    h: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)

    def table(self, kind):
        return {"h": self.h, "f": self.f, "g": self.g, "B": self.B}[kind]

    def equals(self, other):
        """Bit-level equality of every coefficient table."""
        return (
            self.config == other.config
            and self.d == other.d
            and self.mode == other.mode
            and all(
                np.array_equal(self.table(k), other.table(k)) for k in _KIND_CODES
            )
        )


def _coefficient_series(seed, kind, index, d):
    # Keyed stream per coefficient: values do not depend on draw order, and
    # the first d slots are identical for every longer extension.
    ss = np.random.SeedSequence(seed, spawn_key=(_KIND_CODES[kind], *index))
    u = np.random.Generator(np.random.Philox(ss)).random(d)
    x = -2.0 + 3.0 * u
    x[x > -0.5] += 1.0
    return x


def generate_channels(config, d, seed, mode=SelfInterference.SUPPRESSED):
    """Sample a channel realization over ``d`` time slots.

    Every coefficient is uniform on ``[-2, -0.5] U [0.5, 2]``, drawn from its
    own counter-based stream keyed by ``(seed, kind, index)``. In suppressed
    mode the BS self-interference blocks ``B[i, :, i, :, :]`` are zero.
    """
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    d = int(d)
    mode = SelfInterference(mode)
    seed = int(seed) % (1 << 64)
    K, M, N = config.K, config.M, config.N

    shapes = {
        "h": (K, N, K, N),
        "f": (K, M, K, N),
        "g": (K, N, K, M),
        "B": (K, M, K, M),
    }
    tables = {}
    for kind, shape in shapes.items():
        out = np.empty(shape + (d,))
        for index in np.ndindex(*shape):
            if kind == "B" and index[0] == index[2] and mode is SelfInterference.SUPPRESSED:
                out[index] = 0.0
            else:
                out[index] = _coefficient_series(seed, kind, index, d)
        tables[kind] = _readonly(out)

    return ChannelRealization(config=config, d=d, seed=seed, mode=mode, **tables)


def apply_diagonal(coeffs, v):
    """Apply the time-extended diagonal channel ``diag(coeffs)`` to ``v``.

    ``v`` may be a length-``d`` vector or a ``(d, n)`` matrix of column
    vectors.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    v = np.asarray(v, dtype=float)
    if coeffs.ndim != 1:
        raise DimensionError("coeffs must be one-dimensional")
    if v.shape[:1] != coeffs.shape:
        raise DimensionError(
            f"length mismatch: {coeffs.shape[0]} coefficients, vector of shape {v.shape}"
        )
    if v.ndim == 1:
        return coeffs * v
    return coeffs.reshape((-1,) + (1,) * (v.ndim - 1)) * v
