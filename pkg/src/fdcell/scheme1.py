"""UL and DL interference alignment with monomial time-extended beams.

UL users share one generation set of monomials over the UL alphabet; every
BS transmit antenna sends the ``j``-th DL family to its ``j``-th user. The
alphabets keep only coefficients that actually multiply a beam on an
interfering path (the trivial ``1`` entries of the index tuples are dropped,
otherwise they would duplicate monomials):

* UL: every user-to-user ``h`` and every cross-cell ``f`` (BS index differs
  from the user's cell).
* DL family ``j``: every ``g`` except the direct links of family ``j``
  (``g[l, j, l, q]``), plus BS-to-BS ``B`` between different BSs, or all of
  them when self-interference is present.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DimensionError, EnumerationCapError, UnresolvableCoefficientError
from .network import SelfInterference

__all__ = [
    "DEFAULT_ENUM_CAP",
    "CoefficientKind",
    "CoefficientId",
    "ExponentVector",
    "BeamFamily",
    "BeamformerSet",
    "Scheme1Plan",
    "enum_cap",
    "ul_alphabet",
    "dl_alphabet",
    "enumerate_exponents",
    "coefficient_series",
    "evaluate_beam",
    "evaluate_beams",
    "plan_scheme1",
    "build_scheme1",
    "dump_beams",
]

DEFAULT_ENUM_CAP = 10**6


def enum_cap(cap=None):
    """Resolve the enumeration cap: explicit value, ``FDCELL_ENUM_CAP``, default."""
    if cap is not None:
        return int(cap)
    return int(os.environ.get("FDCELL_ENUM_CAP", DEFAULT_ENUM_CAP))


class CoefficientKind(str, enum.Enum):
    USER_TO_USER = "userToUser"  # h
    UL_CROSS = "ulCross"  # f
    DL_CROSS = "dlCross"  # g
    BS2BS = "bs2bs"  # B

    @property
    def table(self):
        return {"userToUser": "h", "ulCross": "f", "dlCross": "g", "bs2bs": "B"}[self.value]


class CoefficientId(NamedTuple):
    kind: CoefficientKind
    index: tuple

    def __str__(self):
        return f"{self.kind.table}{tuple(int(i) for i in self.index)}"


def ul_alphabet(config):
    """UL generation alphabet: ``KN(KN + (K-1)M)`` coefficient ids."""
    K, M, N = config.K, config.M, config.N
    hs = [
        CoefficientId(CoefficientKind.USER_TO_USER, idx)
        for idx in itertools.product(range(K), range(N), range(K), range(N))
    ]
    fs = [
        CoefficientId(CoefficientKind.UL_CROSS, (q, r, k, l))
        for q, r, k, l in itertools.product(range(K), range(M), range(K), range(N))
        if q != k
    ]
    return hs + fs


def dl_alphabet(config, j, mode=SelfInterference.SUPPRESSED):
    """DL generation alphabet of family ``j`` (0-based user index)."""
    K, M, N = config.K, config.M, config.N
    if not 0 <= j < N:
        raise IndexError(f"user index {j} out of range [0, {N})")
    mode = SelfInterference(mode)
    gs = [
        CoefficientId(CoefficientKind.DL_CROSS, (i, k, l, q))
        for i, k, l, q in itertools.product(range(K), range(N), range(K), range(M))
        if not (i == l and k == j)
    ]
    bs = [
        CoefficientId(CoefficientKind.BS2BS, (r, s, l, q))
        for r, s, l, q in itertools.product(range(K), range(M), range(K), range(M))
        if r != l or mode is SelfInterference.PRESENT
    ]
    return gs + bs


def enumerate_exponents(alphabet, T, cap=None):
    """All ``T ** len(alphabet)`` exponent vectors over ``[0, T-1]``, lexicographic.

    Returns an ``(E, A)`` int64 array, one exponent vector per row.
    """
    A = len(alphabet)
    if A < 1:
        raise ValueError("alphabet is empty")
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    count = T**A
    cap = enum_cap(cap)
    if count > cap:
        raise EnumerationCapError(count, cap)
    grids = np.indices((T,) * A).reshape(A, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


@dataclass(frozen=True)
class ExponentVector:
    """One monomial: ``prod alphabet[k] ** powers[k]``."""

    alphabet: tuple
    powers: tuple
    cap: int | None = None

    def __post_init__(self):
        if len(self.alphabet) != len(self.powers):
            raise DimensionError("alphabet and powers differ in length")
        if any(p < 0 for p in self.powers):
            raise ValueError("exponents must be non-negative")

    def as_dict(self):
        return {str(c): int(p) for c, p in zip(self.alphabet, self.powers) if p}


def coefficient_series(cid, channels):
    """Time series of one coefficient, shape ``(d,)``."""
    cid = CoefficientId(CoefficientKind(cid[0]), tuple(cid[1]))
    table = channels.table(cid.kind.table)
    try:
        if len(cid.index) != table.ndim - 1 or any(i < 0 for i in cid.index):
            raise IndexError
        return table[cid.index]
    except IndexError:
        raise UnresolvableCoefficientError(str(cid)) from None


def _coefficient_matrix(alphabet, channels):
    if not alphabet:
        return np.ones((0, channels.d))
    return np.stack([coefficient_series(c, channels) for c in alphabet])


def evaluate_beam(e, channels):
    """Slotwise value of one monomial; the all-zero vector gives all ones."""
    out = np.ones(channels.d)
    for cid, power in zip(e.alphabet, e.powers):
        if power:
            out = out * coefficient_series(cid, channels) ** int(power)
    return out


def evaluate_beams(alphabet, exponents, channels):
    """Evaluate a whole generation set at once: returns ``(E, d)``."""
    coeffs = _coefficient_matrix(alphabet, channels)
    return kernels.monomials(coeffs, np.ascontiguousarray(exponents, dtype=np.int64))


@dataclass(eq=False)
class BeamFamily:
    """A generation set of monomial beams and their numeric values.

    ``vectors[s] = base * prod alphabet ** exponents[s]`` slotwise, where
    ``base`` is all ones unless the family carries a generic base vector.
    """

    alphabet: tuple
    exponents: np.ndarray
    vectors: np.ndarray
    T: int
    base: np.ndarray | None = None

    def __len__(self):
        return self.exponents.shape[0]

    def exponent_vector(self, s):
        return ExponentVector(self.alphabet, tuple(int(p) for p in self.exponents[s]), self.T)

    @property
    def columns(self):
        """Beams as columns, shape ``(d, E)``."""
        return self.vectors.T


@dataclass(frozen=True)
class Scheme1Plan:
    """Finite-``T`` dimension budget of the alignment scheme.

    ``Tdl`` is ``None`` for UL-only runs (no DL streams).
    """

    T: int
    Tdl: int | None
    d: int
    ul_beams_per_user: int
    dl_beams_per_user_per_antenna: int
    ul_alphabet_size: int
    dl_alphabet_size: int
    ul_extended: int
    dl_extended: int
    bs_required: int
    dl_user_required: int
    mode: SelfInterference = SelfInterference.SUPPRESSED

    @property
    def ul_only(self):
        return self.Tdl is None

    def as_dict(self):
        return {
            "t": self.T,
            "tdl": self.Tdl,
            "d": self.d,
            "ulBeamsPerUser": self.ul_beams_per_user,
            "dlBeamsPerUserPerAntenna": self.dl_beams_per_user_per_antenna,
            "bsRequired": self.bs_required,
            "dlUserRequired": self.dl_user_required,
        }


def plan_scheme1(config, T, Tdl=None, mode=SelfInterference.SUPPRESSED, cap=None):
    """Smallest time extension ``d`` meeting both receiver budgets.

    With ``E = T^|A_u|``, ``E+ = (T+1)^|A_u|``, ``Ed = Tdl^|A_d|`` and
    ``Ed+ = (Tdl+1)^|A_d|``:

    * BS: ``M d >= N E + min{(K-1)N E, M E+} + M N Ed+``
    * DL user: ``d >= M Ed + N Ed+ + E+``

    ``Tdl=None`` plans a UL-only run, which keeps only the BS budget without
    its DL term.
    """
    K, M, N = config.K, config.M, config.N
    mode = SelfInterference(mode)
    cap = enum_cap(cap)
    if T < 1 or (Tdl is not None and Tdl < 1):
        raise ValueError("T and Tdl must be positive integers")

    a_u = len(ul_alphabet(config))
    a_d = len(dl_alphabet(config, 0, mode))
    e_u, e_u_plus = T**a_u, (T + 1) ** a_u
    if e_u > cap:
        raise EnumerationCapError(e_u, cap, "UL beams per user")

    ul_inter = min((K - 1) * N * e_u, M * e_u_plus)
    if Tdl is None:
        e_d = e_d_plus = 0
        bs_required = N * e_u + ul_inter
        dl_required = 0
    else:
        e_d, e_d_plus = Tdl**a_d, (Tdl + 1) ** a_d
        if e_d > cap:
            raise EnumerationCapError(e_d, cap, "DL beams per user and antenna")
        bs_required = N * e_u + ul_inter + M * N * e_d_plus
        dl_required = M * e_d + N * e_d_plus + e_u_plus

    d = max(-(-bs_required // M), dl_required)
    if d > cap:
        raise EnumerationCapError(d, cap, "time extension d")
    return Scheme1Plan(
        T=T,
        Tdl=Tdl,
        d=d,
        ul_beams_per_user=e_u,
        dl_beams_per_user_per_antenna=e_d,
        ul_alphabet_size=a_u,
        dl_alphabet_size=a_d,
        ul_extended=e_u_plus,
        dl_extended=e_d_plus,
        bs_required=bs_required,
        dl_user_required=dl_required,
        mode=mode,
    )


def family_base(channels, j):
    """Generic base vector distinguishing DL family ``j`` (seeded from the channels)."""
    ss = np.random.SeedSequence(channels.seed, spawn_key=(5, j))
    u = np.random.Generator(np.random.Philox(ss)).random(channels.d)
    x = -2.0 + 3.0 * u
    x[x > -0.5] += 1.0
    return x


@dataclass(eq=False)
class BeamformerSet:
    """Transmit beams of one scheme on one channel realization.

    Scheme 1 fills ``dl`` (family ``j`` is sent by every BS antenna to its
    ``j``-th user). Scheme 2 fills ``zf`` with ``(M d, n_d)`` zero-forcing
    beams per DL user and ``w_bases`` with each DL user's ``(d, n_d)``
    receive basis. ``ul_custom`` replaces the shared UL family for selected
    users (used for random-beam controls).
    """

    scheme: str
    config: object
    d: int
    mode: SelfInterference
    ul: BeamFamily
    dl: dict = field(default_factory=dict)
    zf: dict = field(default_factory=dict)
    w_bases: dict = field(default_factory=dict)
    ul_custom: dict = field(default_factory=dict)
    zf_residuals: dict = field(default_factory=dict)

    def ul_beams(self, k, l):
        """Columns ``(d, E_u)`` sent by UL user ``(k, l)``."""
        if (k, l) in self.ul_custom:
            return self.ul_custom[(k, l)]
        return self.ul.columns

    def dl_beams(self, i, j, a):
        """Scheme-1 columns ``(d, E_d)`` sent on antenna ``a`` of BS ``i`` to user ``(i, j)``."""
        if not self.dl:
            return np.zeros((self.d, 0))
        return self.dl[j].columns

    def zf_beams(self, i, j):
        """Scheme-2 columns ``(M d, n_d)`` of BS ``i`` for user ``(i, j)``, antenna-major."""
        return self.zf[(i, j)]


def build_scheme1(config, plan, channels, family_bases=None):
    """Numeric beams for the alignment scheme on ``channels``.

    ``family_bases`` multiplies DL family ``j`` by a generic base vector. The
    plain monomial families share their all-ones member (and every monomial
    over the common part of two alphabets), so with ``N >= 2`` a DL user's
    desired beam coincides with an intra-cell interferer. The default is to
    use base vectors exactly when ``N >= 2``.
    """
    if channels.d != plan.d:
        raise DimensionError(f"channels span d={channels.d}, plan needs d={plan.d}")
    if channels.config != config:
        raise DimensionError("channels were generated for a different configuration")
    if family_bases is None:
        family_bases = config.N >= 2

    alphabet_u = tuple(ul_alphabet(config))
    exps_u = enumerate_exponents(alphabet_u, plan.T, cap=max(plan.ul_beams_per_user, 1))
    ul = BeamFamily(alphabet_u, exps_u, evaluate_beams(alphabet_u, exps_u, channels), plan.T)

    dl = {}
    if not plan.ul_only:
        for j in range(config.N):
            alphabet_d = tuple(dl_alphabet(config, j, channels.mode))
            exps_d = enumerate_exponents(
                alphabet_d, plan.Tdl, cap=max(plan.dl_beams_per_user_per_antenna, 1)
            )
            vectors = evaluate_beams(alphabet_d, exps_d, channels)
            base = None
            if family_bases:
                base = family_base(channels, j)
                vectors = vectors * base
            dl[j] = BeamFamily(alphabet_d, exps_d, vectors, plan.Tdl, base)

    return BeamformerSet(
        scheme="scheme1", config=config, d=plan.d, mode=channels.mode, ul=ul, dl=dl
    )


def _family_dump(family, head):
    return [
        {
            "exponents": family.exponent_vector(s).as_dict(),
            "head": [float(x) for x in family.vectors[s, :head]],
        }
        for s in range(len(family))
    ]


def dump_beams(beams, head=8):
    """Debug dump: exponent vectors plus the first ``head`` entries of each beam."""
    out = {"scheme": beams.scheme, "d": beams.d, "ul": _family_dump(beams.ul, head)}
    if beams.dl:
        out["dl"] = {str(j): _family_dump(f, head) for j, f in beams.dl.items()}
    if beams.zf:
        out["zf"] = {
            f"{i},{j}": [[float(x) for x in col[:head]] for col in v.T]
            for (i, j), v in beams.zf.items()
        }
    return out
