import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdcell.errors import DimensionError
from fdcell.network import NetworkConfig, SelfInterference, apply_diagonal, generate_channels


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, 0, 1), (1, 1, 0), (-2, 3, 3)])
def test_config_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        NetworkConfig(*bad)


def test_config_rejects_non_integers():
    with pytest.raises(TypeError):
        NetworkConfig(2.0, 1, 1)
    with pytest.raises(TypeError):
        NetworkConfig(True, 1, 1)


def test_table_shapes():
    ch = generate_channels(NetworkConfig(2, 3, 4), 5, seed=0)
    assert ch.h.shape == (2, 4, 2, 4, 5)
    assert ch.f.shape == (2, 3, 2, 4, 5)
    assert ch.g.shape == (2, 4, 2, 3, 5)
    assert ch.B.shape == (2, 3, 2, 3, 5)


def test_single_cell_self_interference_zero():
    ch = generate_channels(NetworkConfig(1, 1, 1), 3, seed=7)
    assert np.all(ch.B[0, 0, 0, 0] == 0)


def test_same_seed_is_bit_identical():
    a = generate_channels(NetworkConfig(2, 2, 1), 4, seed=7)
    b = generate_channels(NetworkConfig(2, 2, 1), 4, seed=7)
    assert a.equals(b)
    c = generate_channels(NetworkConfig(2, 2, 1), 4, seed=8)
    assert not a.equals(c)


def test_magnitudes_and_cross_bs_links():
    ch = generate_channels(NetworkConfig(2, 2, 1), 4, seed=1)
    for name in "hfg":
        vals = np.abs(ch.table(name))
        assert vals.min() >= 0.5 and vals.max() <= 2.0
    cross = np.abs(ch.B[0, :, 1, :])
    assert cross.min() >= 0.5 and cross.max() <= 2.0


def test_suppressed_mode_zeroes_only_self_blocks():
    ch = generate_channels(NetworkConfig(3, 2, 1), 6, seed=3)
    present = generate_channels(NetworkConfig(3, 2, 1), 6, seed=3, mode=SelfInterference.PRESENT)
    for i in range(3):
        for j in range(3):
            block = ch.B[i, :, j, :]
            if i == j:
                assert np.all(block == 0)
                assert np.all(np.abs(present.B[i, :, j, :]) >= 0.5)
            else:
                assert np.all(block != 0)
                np.testing.assert_array_equal(block, present.B[i, :, j, :])


def test_coefficients_independent_of_extension_length():
    short = generate_channels(NetworkConfig(2, 1, 1), 5, seed=11)
    long = generate_channels(NetworkConfig(2, 1, 1), 50, seed=11)
    np.testing.assert_array_equal(short.f, long.f[..., :5])


def test_tables_are_read_only():
    ch = generate_channels(NetworkConfig(1, 1, 1), 2, seed=0)
    with pytest.raises(ValueError):
        ch.h[0, 0, 0, 0, 0] = 1.0


def test_rejects_bad_extension():
    with pytest.raises(ValueError):
        generate_channels(NetworkConfig(1, 1, 1), 0, seed=0)


@pytest.mark.parametrize(
    "coeffs, v, expected",
    [((2, 3), (1, 1), (2, 3)), ((1, 1, 1), (4, 5, 6), (4, 5, 6)), ((-0.5, 2), (2, 2), (-1, 4))],
)
def test_apply_diagonal_examples(coeffs, v, expected):
    np.testing.assert_array_equal(apply_diagonal(coeffs, v), expected)


def test_apply_diagonal_columns_and_mismatch():
    out = apply_diagonal([1.0, 2.0], np.ones((2, 3)))
    np.testing.assert_array_equal(out, [[1, 1, 1], [2, 2, 2]])
    with pytest.raises(DimensionError):
        apply_diagonal([1.0, 2.0], [1.0, 2.0, 3.0])


@settings(max_examples=50, deadline=None)
@given(
    st.integers(1, 12).flatmap(
        lambda d: st.tuples(
            *(st.lists(st.floats(-10, 10), min_size=d, max_size=d) for _ in range(3)),
            st.floats(-5, 5),
            st.floats(-5, 5),
        )
    )
)
def test_apply_diagonal_is_linear(data):
    c, u, v, alpha, beta = data
    c, u, v = map(np.asarray, (c, u, v))
    lhs = apply_diagonal(c, alpha * u + beta * v)
    rhs = alpha * apply_diagonal(c, u) + beta * apply_diagonal(c, v)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)
