"""UL alignment plus DL transmit zero-forcing against fixed receive spaces.

UL beams are the shared monomial family of the alignment scheme. Each DL
user first fixes an ``n_d``-dimensional receive space (its w-basis) in the
complement of its user-to-user interference. BS ``i`` then picks ``n_d``
beams of length ``M d`` per own DL user that are orthogonal to

(a) ``B_{qi}^T F_{q,qk} v`` for every other BS ``q``: its DL signal lands
    orthogonally to BS ``q``'s desired UL signals;
(b) ``G_{qp,i}^T w`` for every DL user ``(q, p)`` of another cell;
(c) ``G_{ik,i}^T w`` for the other DL users ``(i, k)`` of its own cell.

Extended channels are diagonal, so the transposes are slotwise products.
Transmit beams are stacked antenna-major: block ``a`` of a ``M d`` vector
is what antenna ``a`` sends over the ``d`` slots.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, EnumerationCapError, FeasibilityError, RegimeError
from .network import SelfInterference
from .scheme1 import (
    BeamFamily,
    BeamformerSet,
    enum_cap,
    enumerate_exponents,
    evaluate_beams,
    ul_alphabet,
)
from .subspace import complement_basis, normalize_columns, numeric_rank

__all__ = [
    "PlanMode",
    "Scheme2Plan",
    "plan_scheme2",
    "build_ul_family",
    "build_w_basis",
    "zf_constraints",
    "build_zf_beams",
    "build_scheme2",
]


class PlanMode(str, enum.Enum):
    PAPER = "paper"
    CONSERVATIVE = "conservative"


@dataclass(frozen=True)
class Scheme2Plan:
    """Finite-``T`` budget of the zero-forcing scheme.

    ``dl_beams_per_user`` is ``n_d``; ``constraint_count`` is the number of
    vectors each ZF beam must be orthogonal to.
    """

    T: int
    d: int
    ul_beams_per_user: int
    dl_beams_per_user: int
    mode: PlanMode
    ul_alphabet_size: int
    ul_extended: int
    constraint_count: int
    bs_required: int
    w_interference_bound: int
    si_mode: SelfInterference = SelfInterference.SUPPRESSED

    def streams(self, config):
        return config.K * config.N * (self.ul_beams_per_user + self.dl_beams_per_user)

    def as_dict(self):
        return {
            "t": self.T,
            "d": self.d,
            "ulBeamsPerUser": self.ul_beams_per_user,
            "dlBeamsPerUser": self.dl_beams_per_user,
            "mode": self.mode.value,
            "constraintCount": self.constraint_count,
        }


def _zf_interferers(config, si_mode):
    """Number of BSs whose desired UL span a ZF beam must avoid."""
    return config.K if si_mode is SelfInterference.PRESENT else config.K - 1


def plan_scheme2(config, T, mode=PlanMode.PAPER, cap=None, si_mode=SelfInterference.SUPPRESSED):
    """Jointly pick ``(d, n_d)`` maximising streams per slot, ties to smaller ``d``.

    With ``E = T^|A_u|`` and ``E+ = (T+1)^|A_u|`` a pair is feasible when

    * ZF: ``M d - [(K-1)N E + (KN-1) n_d] >= n_d``
    * w-space: ``d - min{KN E, E+} >= n_d``
    * BS: ``M d >= N E + min{(K-1)N E, M E+}``, plus ``(K-1)N n_d`` on the
      right in conservative mode.

    The ZF row bounds the streams-per-slot ratio ``(E + n_d)/d`` by a
    quantity decreasing in ``d``; the ascending search stops once that bound
    cannot beat the best pair found.
    """
    K, M, N = config.K, config.M, config.N
    mode = PlanMode(mode)
    si_mode = SelfInterference(si_mode)
    cap = enum_cap(cap)
    if M >= K * N:
        raise RegimeError(f"M={M} >= KN={K * N}: HD operation suffices")

    a_u = len(ul_alphabet(config))
    e_u, e_u_plus = T**a_u, (T + 1) ** a_u
    if e_u > cap:
        raise EnumerationCapError(e_u, cap, "UL beams per user")
    zf_ul = _zf_interferers(config, si_mode) * N * e_u
    w_bound = min(K * N * e_u, e_u_plus)
    bs_fixed = N * e_u + min((K - 1) * N * e_u, M * e_u_plus)
    bs_per_nd = (K - 1) * N if mode is PlanMode.CONSERVATIVE else 0

    def max_nd(d):
        n = min((M * d - zf_ul) // (K * N), d - w_bound)
        if bs_per_nd:
            n = min(n, (M * d - bs_fixed) // bs_per_nd)
        return n if M * d >= bs_fixed else -1

    best = None
    d = max(1, -(-bs_fixed // M))
    while d <= cap:
        if best is not None:
            # (E + n_d)/d <= (KN E + M d - zf_ul)/(KN d), decreasing in d
            bound_num = K * N * e_u + M * d - zf_ul
            if bound_num * best[1] <= (e_u + best[0]) * K * N * d:
                break
        n = max_nd(d)
        if n >= 1:
            if best is None or (e_u + n) * best[1] > (e_u + best[0]) * d:
                best = (n, d)
        d += 1
    if best is None:
        raise FeasibilityError(f"no feasible (d, n_d) with d <= {cap}", required=1)

    n_d, d = best
    return Scheme2Plan(
        T=T,
        d=d,
        ul_beams_per_user=e_u,
        dl_beams_per_user=n_d,
        mode=mode,
        ul_alphabet_size=a_u,
        ul_extended=e_u_plus,
        constraint_count=zf_ul + (K - 1) * N * n_d + (N - 1) * n_d,
        bs_required=bs_fixed + bs_per_nd * n_d,
        w_interference_bound=w_bound,
        si_mode=si_mode,
    )


def build_ul_family(config, T, channels):
    """The shared monomial UL generation set on ``channels``."""
    alphabet = tuple(ul_alphabet(config))
    exps = enumerate_exponents(alphabet, T, cap=max(T ** len(alphabet), 1))
    return BeamFamily(alphabet, exps, evaluate_beams(alphabet, exps, channels), T)


def user_to_user_span(config, channels, beams, i, j):
    """Columns ``h_{ij,kl} * v`` for every UL user ``(k, l)`` and beam ``v``."""
    cols = [
        channels.h[i, j, k, l][:, None] * beams.ul_beams(k, l)
        for k in range(config.K)
        for l in range(config.N)
    ]
    return np.hstack(cols)


def build_w_basis(config, channels, beams, n_d, rel_tol=1e-9):
    """Per DL user, ``n_d`` orthonormal vectors orthogonal to its UL interference.

    Returns a dict ``(i, j) -> (d, n_d)`` array. The basis is the leading part
    of the SVD complement, so it is a deterministic function of the inputs.
    """
    out = {}
    for i in range(config.K):
        for j in range(config.N):
            span = normalize_columns(user_to_user_span(config, channels, beams, i, j))
            comp = complement_basis(span, rel_tol)
            if comp.shape[1] < n_d:
                raise FeasibilityError(
                    f"DL user {(i, j)}: complement has dimension {comp.shape[1]}, need {n_d}",
                    measured=comp.shape[1],
                    required=n_d,
                )
            out[(i, j)] = comp[:, :n_d].copy()
    return out


def zf_constraints(config, channels, beams, w_bases, i, j, si_mode=None):
    """Constraint vectors ``(M d, c)`` for ZF beams of BS ``i`` to user ``(i, j)``.

    Returns the matrix and a dict of column slices for families (a), (b), (c).
    """
    K, M, N = config.K, config.M, config.N
    si_mode = channels.mode if si_mode is None else SelfInterference(si_mode)
    blocks, groups, start = [], {}, 0

    def add(name, cols):
        nonlocal start
        groups[name] = slice(start, start + len(cols))
        start += len(cols)
        blocks.extend(cols)

    # (a) BS-to-BS: block a of the constraint is sum_r b[q,r,i,a] f[q,r,q,k] v
    others = [q for q in range(K) if q != i or si_mode is SelfInterference.PRESENT]
    cols_a = []
    for q in others:
        for k in range(N):
            V = beams.ul_beams(q, k)
            for s in range(V.shape[1]):
                v = V[:, s]
                cols_a.append(
                    np.concatenate(
                        [
                            (channels.B[q, :, i, a] * channels.f[q, :, q, k]).sum(axis=0) * v
                            for a in range(M)
                        ]
                    )
                )
    add("bs2bs", cols_a)

    def through_g(q, p, W):
        return [
            np.concatenate([channels.g[q, p, i, a] * W[:, c] for a in range(M)])
            for c in range(W.shape[1])
        ]

    # (b) DL users of other cells, (c) other DL users of this cell
    inter = [(q, p) for q in range(K) if q != i for p in range(N)]
    add("dlInterCell", [c for q, p in inter for c in through_g(q, p, w_bases[(q, p)])])
    add("dlIntraCell", [c for k in range(N) if k != j for c in through_g(i, k, w_bases[(i, k)])])

    if blocks:
        C = np.stack(blocks, axis=1)
    else:
        C = np.zeros((M * channels.d, 0))
    return C, groups


def build_zf_beams(config, channels, beams, w_bases, plan, rel_tol=1e-9):
    """ZF beams for every DL user; returns ``(zf, residuals)``.

    ``zf[(i, j)]`` is ``(M d, n_d)`` with orthonormal columns;
    ``residuals[(i, j)]`` is the largest ``|<x, c>| / (|x| |c|)`` over all
    constraint vectors ``c``.
    """
    n_d = plan.dl_beams_per_user
    zf, residuals = {}, {}
    for i in range(config.K):
        for j in range(config.N):
            C, _ = zf_constraints(config, channels, beams, w_bases, i, j, plan.si_mode)
            free = complement_basis(normalize_columns(C), rel_tol)
            if free.shape[1] < n_d:
                raise FeasibilityError(
                    f"BS {i} user {j}: {free.shape[1]} free ZF dimensions, need {n_d}",
                    measured=free.shape[1],
                    required=n_d,
                )
            X = free[:, :n_d].copy()
            if numeric_rank(X, rel_tol) < n_d:
                raise FeasibilityError("ZF beams are linearly dependent", required=n_d)
            if C.shape[1]:
                inner = np.abs(X.T @ C) / np.linalg.norm(C, axis=0)
                residuals[(i, j)] = float(inner.max())
            else:
                residuals[(i, j)] = 0.0
            zf[(i, j)] = X
    return zf, residuals


def build_scheme2(config, plan, channels, rel_tol=1e-9):
    """Full scheme-2 beam set: UL family, w-bases and ZF beams."""
    if channels.d != plan.d:
        raise DimensionError(f"channels span d={channels.d}, plan needs d={plan.d}")
    ul = build_ul_family(config, plan.T, channels)
    beams = BeamformerSet(scheme="scheme2", config=config, d=plan.d, mode=channels.mode, ul=ul)
    beams.w_bases = build_w_basis(config, channels, beams, plan.dl_beams_per_user, rel_tol)
    beams.zf, beams.zf_residuals = build_zf_beams(
        config, channels, beams, beams.w_bases, plan, rel_tol
    )
    return beams
