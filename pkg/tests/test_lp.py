import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdcell import formulas as fm
from fdcell import lp
from fdcell.errors import InfeasibleError, RegimeError
from fdcell.network import NetworkConfig


def cfg(K, M, N):
    return NetworkConfig(K, M, N)


def rows(constraints):
    return {(c.a, c.b, c.c) for c in constraints}


BOXES = {(1, 0, 1), (0, 1, 1)}


@pytest.mark.parametrize(
    "builder, config, expected",
    [
        (lp.scheme1_lp, (2, 1, 1), {(2, 1, 1), (1, 2, 1)}),
        (lp.scheme1_lp, (3, 15, 30), {(45, 30, 15), (1, 3, 1)}),
        (lp.scheme2_lp, (2, 1, 1), {(2, 0, 1), (1, 2, 1), (1, 1, 1)}),
        (lp.scheme2_lp, (4, 1, 1), {(2, 0, 1), (3, 4, 1), (1, 1, 1)}),
        (lp.no_bs2bs_lp, (2, 2, 2), {(4, 0, 2), (0, 4, 2), (1, 1, 1)}),
        (lp.no_bs2bs_lp, (3, 16, 8), {(24, 0, 16), (0, 24, 16), (1, 1, 1)}),
    ],
)
def test_constraint_builders(builder, config, expected):
    assert rows(builder(cfg(*config))) == expected | BOXES


@pytest.mark.parametrize("builder", [lp.scheme1_lp, lp.scheme2_lp, lp.no_bs2bs_lp])
def test_builders_reject_hd_regime(builder):
    with pytest.raises(RegimeError):
        builder(cfg(2, 5, 2))


def test_min_term_uses_other_cells_count():
    # min{M, (K-1)N}: with K=2, M=5, N=3 the BS row is (3 + 3) lambda1
    bs = next(c for c in lp.scheme1_lp(cfg(2, 5, 3)) if c.id == "bs-decode")
    assert bs.a == 6


@pytest.mark.parametrize(
    "scheme, config, l1, l2, obj",
    [
        (lp.Scheme.SCHEME1, (3, 15, 30), F(1, 7), F(2, 7), F(270, 7)),
        (lp.Scheme.SCHEME2, (2, 1, 1), F(1, 2), F(1, 4), F(3, 2)),
        (lp.Scheme.SCHEME2, (4, 1, 1), F(1, 3), F(0), F(4, 3)),
    ],
)
def test_maximize_examples(scheme, config, l1, l2, obj):
    sol = lp.solve_scheme(cfg(*config), scheme)
    assert (sol.lambda1, sol.lambda2, sol.objective) == (l1, l2, obj)


def test_degenerate_direction_flag():
    assert lp.solve_scheme(cfg(4, 1, 1), lp.Scheme.SCHEME2).degenerate
    assert not lp.solve_scheme(cfg(2, 1, 1), lp.Scheme.SCHEME2).degenerate


def test_solution_json_shape():
    sol = lp.solve_scheme(cfg(3, 15, 30), lp.Scheme.SCHEME1)
    out = json.loads(json.dumps(sol.as_dict()))
    assert out == {
        "scheme": "scheme1",
        "lambda1": "1/7",
        "lambda2": "2/7",
        "objective": "270/7",
        "active": ["bs-decode", "dl-decode"],
    }


def test_infeasible_program():
    bad = [lp.Constraint2D(-1, 0, -2, "lambda1>=2")]
    with pytest.raises(InfeasibleError):
        lp.maximize(bad, cfg(1, 1, 1))


def test_ties_prefer_larger_lambda1():
    sol = lp.maximize([lp.Constraint2D(1, 1, 1, "sum")], cfg(1, 1, 1))
    assert (sol.lambda1, sol.lambda2) == (1, 0)


def test_large_coefficients_take_exact_path():
    big = [lp.Constraint2D(40000, 3, 20000, "big"), lp.Constraint2D(1, 70001, 3, "other")]
    sol = lp.maximize(big, cfg(1, 1, 1))
    assert all(c.slack(sol.lambda1, sol.lambda2) >= 0 for c in big)
    assert sol.lambda1 == F(1, 2) - F(3, 40000) * sol.lambda2


@pytest.mark.parametrize(
    "config, value",
    [((3, 15, 30), F(270, 7)), ((4, 2, 1), F(24, 7)), ((2, 5, 2), F(4)), ((2, 1, 1), F(3, 2))],
)
def test_best_achievable_examples(config, value):
    c = cfg(*config)
    assert lp.best_achievable(c).value == value == fm.dof_fd_achievable(c).value


def _sample(pred, count=20):
    found = []
    for K, M, N in itertools.product(range(2, 9), range(1, 41), range(1, 41)):
        if M < K * N and pred(K, M, N):
            found.append(cfg(K, M, N))
    step = max(1, len(found) // count)
    return found[::step][:count]


def test_scheme1_closed_form():
    def regime(K, M, N):
        return M < (K - 1) * N and K >= F(M, N) + 1 + F(N * N, (M + N) ** 2)

    for c in _sample(regime):
        assert lp.solve_scheme(c, lp.Scheme.SCHEME1).objective == fm.ia_term(c.K, c.M, c.N)


@pytest.mark.parametrize(
    "pred, closed",
    [
        (lambda K, M, N: M <= (K - 2) * N, lambda K, M, N: F(M * K, K - 1)),
        (lambda K, M, N: (K - 2) * N < M < (K - 1) * N, lambda K, M, N: F(2 * M * N + M * M, M + N)),
        (lambda K, M, N: (K - 1) * N <= M and M * (K + 1) < K * K * N, lambda K, M, N: M + F(M, K)),
        (lambda K, M, N: M * (K + 1) >= K * K * N, lambda K, M, N: F(K * N)),
    ],
)
def test_scheme2_closed_forms(pred, closed):
    sample = _sample(pred)
    assert sample
    for c in sample:
        assert lp.solve_scheme(c, lp.Scheme.SCHEME2).objective == closed(c.K, c.M, c.N)


def test_solutions_feasible_exactly():
    for K, M, N in itertools.product(range(2, 5), range(1, 12), range(1, 12)):
        c = cfg(K, M, N)
        if M >= K * N:
            continue
        for scheme, builder in lp._BUILDERS.items():
            sol = lp.solve_scheme(c, scheme)
            assert all(con.slack(sol.lambda1, sol.lambda2) >= 0 for con in builder(c))
            assert 0 <= sol.lambda1 <= 1 and 0 <= sol.lambda2 <= 1
            assert sol.objective == K * N * (sol.lambda1 + sol.lambda2)


@given(st.integers(2, 8), st.integers(1, 30), st.integers(1, 30))
def test_objective_nondecreasing_in_m(K, M, N):
    if M + 1 >= K * N:
        return
    for scheme in lp._BUILDERS:
        lo = lp.solve_scheme(cfg(K, M, N), scheme).objective
        hi = lp.solve_scheme(cfg(K, M + 1, N), scheme).objective
        assert lo <= hi


@given(st.integers(2, 8), st.integers(1, 40), st.integers(1, 40))
def test_no_bs2bs_lp_matches_closed_form(K, M, N):
    c = cfg(K, M, N)
    if M >= K * N:
        return
    value = min(F(K * N), lp.solve_scheme(c, lp.Scheme.NO_BS2BS).objective)
    assert value == fm.dof_no_bs2bs(c).value
