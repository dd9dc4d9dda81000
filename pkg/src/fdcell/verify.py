"""Numerical decodability checks for constructed beams.

Every receiver is described by a :class:`ReceiverCase`: the received images
of its desired streams and of every interfering beam. A stream is decodable
when its column is outside the span of all other desired columns and all
interference columns (receive zero-forcing).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import lp
from .errors import DimensionError, RegimeError
from .formulas import dof_fd_upper, fraction_str
from .network import SelfInterference, generate_channels
from .subspace import complement_basis, normalize_columns, numeric_rank

__all__ = [
    "ReceiverCase",
    "ReceiverResult",
    "VerificationReport",
    "Violation",
    "numeric_rank",
    "assemble_receiver_cases",
    "decodable_streams",
    "analyze_case",
    "probe_containment",
    "check_containment",
    "achieved_dof",
    "lp_limit",
    "randomize_ul_beams",
    "verify_beams",
    "run_scheme1",
    "run_scheme2",
]


@dataclass(eq=False)
class ReceiverCase:
    """Desired and interference columns seen by one receiver.

    ``groups`` maps interference group names to column slices of
    ``interference``. ``projection`` is an orthonormal receive basis applied
    before decoding, or ``None``.
    """

    kind: str
    index: tuple
    desired: np.ndarray
    interference: np.ndarray
    groups: dict = field(default_factory=dict)
    projection: np.ndarray | None = None

    @property
    def planned(self):
        return self.desired.shape[1]

    def group(self, name):
        return self.interference[:, self.groups[name]]


def _hstack(cols, rows):
    cols = [c for c in cols if c.shape[1]]
    return np.hstack(cols) if cols else np.zeros((rows, 0))


def _make_case(kind, index, desired, groups, rows, projection=None):
    slices, start, mats = {}, 0, []
    for name, mat in groups:
        slices[name] = slice(start, start + mat.shape[1])
        start += mat.shape[1]
        mats.append(mat)
    return ReceiverCase(kind, index, desired, _hstack(mats, rows), slices, projection)


def _stack_antennas(coeffs, V):
    """Received ``(M d, c)`` image of columns ``V`` through per-antenna series ``coeffs (M, d)``."""
    return np.concatenate([c[:, None] * V for c in coeffs], axis=0)


def _dl_transmissions(config, beams):
    """Yield ``(l, p, per_antenna)`` where ``per_antenna[a]`` is ``(d, c)`` sent by antenna ``a``."""
    M, d = config.M, beams.d
    for l, p in itertools.product(range(config.K), range(config.N)):
        if beams.scheme == "scheme1":
            if not beams.dl:
                continue
            yield l, p, [beams.dl_beams(l, p, a) for a in range(M)], True
        else:
            X = beams.zf_beams(l, p)
            yield l, p, [X[a * d:(a + 1) * d] for a in range(M)], False


def _received_dl(per_antenna, coeffs, separate):
    """Image of one user's DL transmission through ``coeffs (M, d)`` at a single-antenna receiver.

    Scheme-1 antennas carry separate streams (one column each); scheme-2
    beams span all antennas, so their images add up.
    """
    if separate:
        return np.hstack([c[:, None] * V for c, V in zip(coeffs, per_antenna)])
    return sum(c[:, None] * V for c, V in zip(coeffs, per_antenna))


def _received_dl_at_bs(per_antenna, B_rx, separate):
    """Same as :func:`_received_dl` for an ``M``-antenna BS; ``B_rx`` is ``(M_rx, M_tx, d)``."""
    rows = []
    for r in range(B_rx.shape[0]):
        rows.append(_received_dl(per_antenna, B_rx[r], separate))
    return np.concatenate(rows, axis=0)


def assemble_receiver_cases(config, channels, beams):
    """One case per BS and per DL user, in the order BSs then DL users."""
    K, M, N = config.K, config.M, config.N
    if channels.d != beams.d:
        raise DimensionError(f"beams span d={beams.d}, channels d={channels.d}")
    d = beams.d
    si = channels.mode is SelfInterference.PRESENT
    dl = list(_dl_transmissions(config, beams))
    cases = []

    for i in range(K):
        desired = _hstack(
            [_stack_antennas(channels.f[i, :, i, j], beams.ul_beams(i, j)) for j in range(N)], M * d
        )
        ul_inter = _hstack(
            [
                _stack_antennas(channels.f[i, :, k, l], beams.ul_beams(k, l))
                for k in range(K)
                if k != i
                for l in range(N)
            ],
            M * d,
        )
        bs2bs = _hstack(
            [
                _received_dl_at_bs(per_ant, channels.B[i, :, l], sep)
                for l, p, per_ant, sep in dl
                if l != i or si
            ],
            M * d,
        )
        cases.append(
            _make_case("bs", (i,), desired, [("ulInterCell", ul_inter), ("bs2bs", bs2bs)], M * d)
        )

    for i, j in itertools.product(range(K), range(N)):
        desired = np.zeros((d, 0))
        dl_intra, dl_inter = [], []
        for l, p, per_ant, sep in dl:
            img = _received_dl(per_ant, channels.g[i, j, l], sep)
            if (l, p) == (i, j):
                desired = img
            elif l == i:
                dl_intra.append(img)
            else:
                dl_inter.append(img)
        u2u = _hstack(
            [
                channels.h[i, j, k, l][:, None] * beams.ul_beams(k, l)
                for k in range(K)
                for l in range(N)
            ],
            d,
        )
        cases.append(
            _make_case(
                "dlUser",
                (i, j),
                desired,
                [
                    ("dlIntraCell", _hstack(dl_intra, d)),
                    ("dlInterCell", _hstack(dl_inter, d)),
                    ("userToUser", u2u),
                ],
                d,
                projection=beams.w_bases.get((i, j)),
            )
        )
    return cases


@dataclass(frozen=True)
class CaseAnalysis:
    desired_rank: int
    interference_dim: int
    decodable: int
    blocked: tuple


def _spectral_norm(X):
    return float(np.linalg.norm(X, 2)) if X.size else 0.0


def analyze_case(case, rel_tol=1e-9, projection=None):
    """Ranks and per-stream decodability of one receiver.

    Columns are normalised first. With a projection the ranks are thresholded
    against the pre-projection scale, so interference that the receive basis
    nulls counts as zero instead of as noise-level directions.
    """
    D = normalize_columns(case.desired)
    I = normalize_columns(case.interference)
    P = case.projection if projection is None else projection
    n_d = D.shape[1]
    if P is not None:
        scale_d, scale_i = _spectral_norm(D), _spectral_norm(I)
        D, I = P.T @ D, P.T @ I
    else:
        scale_d = scale_i = None
    rows = D.shape[0]

    # interference basis
    r_i, Q = 0, np.zeros((rows, 0))
    if I.shape[1]:
        U, s, _ = np.linalg.svd(I, full_matrices=False)
        top = s[0] if scale_i is None else scale_i
        if top > 0:
            r_i = int(np.count_nonzero(s > rel_tol * top * max(I.shape)))
            Q = U[:, :r_i]

    if n_d == 0:
        return CaseAnalysis(0, r_i, 0, ())
    desired_rank = numeric_rank(D, rel_tol, scale_d)

    def perp(X):
        return X - Q @ (Q.T @ X)

    Ud, sd, Vtd = np.linalg.svd(D, full_matrices=False)
    top = sd[0] if scale_d is None else scale_d
    if sd[-1] > rel_tol * top * max(rows, n_d) and n_d <= rows:
        # well-conditioned desired basis: principal angles to the interference span
        S = perp(Ud)
        _, ss, Vt = np.linalg.svd(S, full_matrices=True)
        thr = rel_tol * max(rows, n_d + r_i)
        null = Vt[np.count_nonzero(ss > thr):].T
        if null.shape[1]:
            null = Vtd.T @ (null / sd[:, None])
            null, _ = np.linalg.qr(null)
    else:
        S = perp(D)
        _, ss, Vt = np.linalg.svd(S, full_matrices=True)
        thr = rel_tol * max(ss[0] if ss.size else 0.0, 1.0 if scale_d else 0.0) * max(rows, n_d + r_i)
        null = Vt[np.count_nonzero(ss > thr):].T

    if null.shape[1] == 0:
        return CaseAnalysis(desired_rank, r_i, n_d, ())
    blocked = np.linalg.norm(null, axis=1) > np.sqrt(rel_tol)
    return CaseAnalysis(
        desired_rank, r_i, int(n_d - blocked.sum()), tuple(int(a) for a in np.flatnonzero(blocked))
    )


def decodable_streams(case, rel_tol=1e-9):
    """Number of desired columns not in the span of all other received columns."""
    return analyze_case(case, rel_tol).decodable


@dataclass(frozen=True)
class Violation:
    family: str
    coefficient: str
    reason: str
    beam: int | None = None


def probe_containment(family, multipliers, name="family"):
    """Violations when each beam of ``family`` is multiplied by each coefficient.

    A product stays in the extended set when the coefficient is in the
    family's alphabet and the incremented exponent is at most ``T``.
    """
    position = {c: k for k, c in enumerate(family.alphabet)}
    out = []
    for cid in multipliers:
        k = position.get(cid)
        if k is None:
            out.append(Violation(name, str(cid), "nonMember"))
            continue
        for s in np.flatnonzero(family.exponents[:, k] + 1 > family.T):
            out.append(Violation(name, str(cid), "exceedsCap", int(s)))
    too_big = np.flatnonzero((family.exponents >= family.T).any(axis=1))
    out.extend(Violation(name, "-", "outsideGenerationSet", int(s)) for s in too_big)
    return out


def _ul_multipliers(config):
    from .scheme1 import CoefficientId, CoefficientKind

    K, M, N = config.K, config.M, config.N
    seen = []
    for k, l in itertools.product(range(K), range(N)):
        seen += [
            CoefficientId(CoefficientKind.USER_TO_USER, (i, j, k, l))
            for i, j in itertools.product(range(K), range(N))
        ]
        seen += [
            CoefficientId(CoefficientKind.UL_CROSS, (q, r, k, l))
            for q, r in itertools.product(range(K), range(M))
            if q != k
        ]
    return list(dict.fromkeys(seen))


def _dl_multipliers(config, j, mode):
    from .scheme1 import CoefficientId, CoefficientKind

    K, M, N = config.K, config.M, config.N
    out = []
    for l, q in itertools.product(range(K), range(M)):
        out += [
            CoefficientId(CoefficientKind.DL_CROSS, (i, k, l, q))
            for i, k in itertools.product(range(K), range(N))
            if (i, k) != (l, j)
        ]
        out += [
            CoefficientId(CoefficientKind.BS2BS, (r, s, l, q))
            for r, s in itertools.product(range(K), range(M))
            if r != l or mode is SelfInterference.PRESENT
        ]
    return list(dict.fromkeys(out))


def check_containment(beams, config):
    """Symbolic closure of every interfering path; returns ``(ok, violations)``.

    UL beams are multiplied by every user-to-user coefficient and every
    cross-cell UL coefficient; DL family ``j`` by every ``g`` other than its
    direct links and by every BS-to-BS coefficient that reaches a receiving
    BS.
    """
    violations = probe_containment(beams.ul, _ul_multipliers(config), "ul")
    for j, family in sorted(beams.dl.items()):
        violations += probe_containment(family, _dl_multipliers(config, j, beams.mode), f"dl{j}")
    return not violations, violations


@dataclass(frozen=True)
class ReceiverResult:
    kind: str
    index: tuple
    desired_rank: int
    interference_dim: int
    decodable: int
    planned: int
    group_dims: dict = field(default_factory=dict)
    decodable_projected: int | None = None

    @property
    def complete(self):
        return self.decodable == self.planned

    def as_dict(self):
        out = {
            "kind": self.kind,
            "index": list(self.index),
            "desiredRank": self.desired_rank,
            "interferenceDim": self.interference_dim,
            "decodable": self.decodable,
            "planned": self.planned,
            "groupDims": dict(self.group_dims),
        }
        if self.decodable_projected is not None:
            out["decodableProjected"] = self.decodable_projected
        return out


@dataclass(frozen=True)
class VerificationReport:
    scheme: str
    mode: str
    config: object
    t: int
    tdl: int | None
    d: int
    seed: int
    rel_tol: float
    receivers: tuple
    lp_limit: Fraction
    max_zf_residual: float | None = None

    @property
    def total_decodable(self):
        return sum(r.decodable for r in self.receivers)

    @property
    def total_planned(self):
        return sum(r.planned for r in self.receivers)

    @property
    def achieved_dof(self):
        return Fraction(self.total_decodable, self.d)

    @property
    def complete(self):
        return all(r.complete for r in self.receivers)

    def as_dict(self):
        out = {
            "scheme": self.scheme,
            "mode": self.mode,
            "config": self.config.as_dict(),
            "t": self.t,
            "tdl": self.tdl,
            "d": self.d,
            "seed": self.seed,
            "relTol": self.rel_tol,
            "receivers": [r.as_dict() for r in self.receivers],
            "totalDecodable": self.total_decodable,
            "totalPlanned": self.total_planned,
            "achievedDof": fraction_str(self.achieved_dof),
            "lpLimit": fraction_str(self.lp_limit),
        }
        if self.max_zf_residual is not None:
            out["maxZfResidual"] = self.max_zf_residual
        return out


def lp_limit(config, scheme):
    """Asymptotic sum DoF of the scheme's LP, or ``KN`` when ``M >= KN``."""
    try:
        return lp.solve_scheme(config, lp.Scheme(scheme)).objective
    except RegimeError:
        return Fraction(config.K * config.N)


def achieved_dof(report):
    """``(achieved, lp_limit, achieved / lp_limit)`` as exact rationals."""
    achieved = report.achieved_dof
    limit = report.lp_limit
    return achieved, limit, (achieved / limit if limit else Fraction(0))


def _group_dims(case, rel_tol):
    dims = {}
    for name, sl in case.groups.items():
        block = normalize_columns(case.interference[:, sl])
        if case.projection is not None and block.shape[1]:
            scale = _spectral_norm(block)
            block = case.projection.T @ block
            dims[name] = numeric_rank(block, rel_tol, scale)
        else:
            dims[name] = numeric_rank(block, rel_tol)
    return dims


def verify_beams(config, channels, beams, rel_tol=1e-9, bs_projection=False):
    """Analyse every receiver; returns a tuple of :class:`ReceiverResult`.

    With ``bs_projection`` each BS is also decoded after projecting onto the
    orthogonal complement of its BS-to-BS interference span.
    """
    results = []
    for case in assemble_receiver_cases(config, channels, beams):
        a = analyze_case(case, rel_tol)
        projected = None
        if bs_projection and case.kind == "bs":
            comp = complement_basis(normalize_columns(case.group("bs2bs")), rel_tol)
            projected = analyze_case(case, rel_tol, projection=comp).decodable
        results.append(
            ReceiverResult(
                case.kind,
                case.index,
                a.desired_rank,
                a.interference_dim,
                a.decodable,
                case.planned,
                _group_dims(case, rel_tol),
                projected,
            )
        )
    return tuple(results)


def randomize_ul_beams(beams, seed):
    """Replace every UL user's beams with i.i.d. Gaussian beams of the same shape."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(6,)))
    E = beams.ul.vectors.shape[0]
    for k, l in itertools.product(range(beams.config.K), range(beams.config.N)):
        beams.ul_custom[(k, l)] = rng.standard_normal((beams.d, E))
    return beams


def run_scheme1(config, T, Tdl=None, seed=0, rel_tol=1e-9, mode=SelfInterference.SUPPRESSED,
                cap=None, random_ul=False, return_beams=False):
    """Plan, generate channels, build and verify the alignment scheme."""
    from .scheme1 import build_scheme1, plan_scheme1

    plan = plan_scheme1(config, T, Tdl, mode, cap)
    channels = generate_channels(config, plan.d, seed, mode)
    beams = build_scheme1(config, plan, channels)
    if random_ul:
        randomize_ul_beams(beams, seed)
    report = VerificationReport(
        scheme="scheme1",
        mode=SelfInterference(mode).value,
        config=config,
        t=T,
        tdl=Tdl,
        d=plan.d,
        seed=seed,
        rel_tol=rel_tol,
        receivers=verify_beams(config, channels, beams, rel_tol),
        lp_limit=lp_limit(config, lp.Scheme.SCHEME1),
    )
    return (report, beams, channels) if return_beams else report


def run_scheme2(config, T, mode="conservative", seed=0, rel_tol=1e-9,
                si_mode=SelfInterference.SUPPRESSED, cap=None, return_beams=False):
    """Plan, generate channels, build and verify the zero-forcing scheme."""
    from .scheme2 import build_scheme2, plan_scheme2

    plan = plan_scheme2(config, T, mode, cap, si_mode)
    channels = generate_channels(config, plan.d, seed, si_mode)
    beams = build_scheme2(config, plan, channels, rel_tol)
    report = VerificationReport(
        scheme="scheme2",
        mode=plan.mode.value,
        config=config,
        t=T,
        tdl=None,
        d=plan.d,
        seed=seed,
        rel_tol=rel_tol,
        receivers=verify_beams(config, channels, beams, rel_tol, bs_projection=True),
        lp_limit=lp_limit(config, lp.Scheme.SCHEME2),
        max_zf_residual=max(beams.zf_residuals.values(), default=0.0),
    )
    return (report, beams, channels) if return_beams else report
