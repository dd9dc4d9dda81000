"""Pure-Python implementations of the hot kernels.

These mirror ``_kernels.pyx`` exactly and are used when the compiled
extension is unavailable (or ``FDCELL_PURE_PYTHON=1``).
"""

import numpy as np


def lp2_max(rows):
    """Maximise ``x + y`` subject to integer rows ``a x + b y <= c``.

    Returns ``(xn, yn, den)`` with ``den > 0`` and the optimum at
    ``(xn/den, yn/den)``; ``den == 0`` signals infeasibility. Ties on
    ``x + y`` prefer larger ``x``, then larger ``y``.
    """
    rows = [tuple(int(v) for v in r) for r in rows]
    m = len(rows)
    best = None
    for p in range(m):
        a1, b1, c1 = rows[p]
        for q in range(p + 1, m):
            a2, b2, c2 = rows[q]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            xn = c1 * b2 - c2 * b1
            yn = a1 * c2 - a2 * c1
            if det < 0:
                det, xn, yn = -det, -xn, -yn
            if any(a * xn + b * yn > c * det for a, b, c in rows):
                continue
            if best is None:
                best = (xn, yn, det)
                continue
            bx, by, bd = best
            lhs, rhs = (xn + yn) * bd, (bx + by) * det
            if lhs > rhs or (
                lhs == rhs
                and (xn * bd > bx * det or (xn * bd == bx * det and yn * bd > by * det))
            ):
                best = (xn, yn, det)
    if best is None:
        return 0, 0, 0
    return best


def monomials(coeffs, exps):
    """Evaluate monomial beams slotwise.

    ``coeffs`` is ``(A, d)``, ``exps`` is ``(E, A)`` non-negative integers;
    returns the ``(E, d)`` array ``prod_k coeffs[k, t] ** exps[e, k]``.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    exps = np.asarray(exps, dtype=np.int64)
    E, A = exps.shape
    out = np.ones((E, coeffs.shape[1]))
    for k in range(A):
        column = exps[:, k]
        for power in np.unique(column):
            if power == 0:
                continue
            out[column == power] *= coeffs[k] ** int(power)
    return out
