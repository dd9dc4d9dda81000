import json

import numpy as np
import pytest

from fdcell.errors import DimensionError, EnumerationCapError, UnresolvableCoefficientError
from fdcell.network import ChannelRealization, NetworkConfig, SelfInterference, generate_channels
from fdcell.scheme1 import (
    CoefficientId,
    CoefficientKind,
    ExponentVector,
    build_scheme1,
    dl_alphabet,
    dump_beams,
    enumerate_exponents,
    evaluate_beam,
    plan_scheme1,
    ul_alphabet,
)
from fdcell.subspace import numeric_rank

H, Fk, G, Bk = (
    CoefficientKind.USER_TO_USER,
    CoefficientKind.UL_CROSS,
    CoefficientKind.DL_CROSS,
    CoefficientKind.BS2BS,
)


def kinds(alphabet):
    out = {}
    for c in alphabet:
        out[c.kind] = out.get(c.kind, 0) + 1
    return out


@pytest.mark.parametrize(
    "config, n_h, n_f",
    [((2, 1, 1), 4, 2), ((1, 2, 2), 4, 0), ((2, 2, 1), 4, 4)],
)
def test_ul_alphabet_sizes(config, n_h, n_f):
    K, M, N = config
    a = ul_alphabet(NetworkConfig(*config))
    assert kinds(a).get(H, 0) == n_h and kinds(a).get(Fk, 0) == n_f
    assert len(a) == K * N * (K * N + (K - 1) * M)


def test_ul_alphabet_excludes_own_cell_f():
    for c in ul_alphabet(NetworkConfig(3, 2, 2)):
        if c.kind is Fk:
            q, _, k, _ = c.index
            assert q != k


@pytest.mark.parametrize(
    "config, mode, size",
    [
        ((2, 1, 1), SelfInterference.SUPPRESSED, 4),
        ((1, 2, 2), SelfInterference.SUPPRESSED, 2),
        ((2, 1, 1), SelfInterference.PRESENT, 6),
    ],
)
def test_dl_alphabet_sizes(config, mode, size):
    assert len(dl_alphabet(NetworkConfig(*config), 0, mode)) == size


def test_dl_alphabet_excludes_direct_links():
    config = NetworkConfig(2, 2, 3)
    for j in range(3):
        a = dl_alphabet(config, j)
        for l in range(2):
            for q in range(2):
                assert CoefficientId(G, (l, j, l, q)) not in a
        assert len(a) == 2 * 2 * (2 * 3 - 1 + 1 * 2)


def test_dl_alphabet_index_range():
    with pytest.raises(IndexError):
        dl_alphabet(NetworkConfig(2, 1, 1), 1)


def test_enumerate_exponents_examples():
    six = ul_alphabet(NetworkConfig(2, 1, 1))
    np.testing.assert_array_equal(enumerate_exponents(six, 1), [[0] * 6])
    np.testing.assert_array_equal(
        enumerate_exponents(six[:2], 2), [[0, 0], [0, 1], [1, 0], [1, 1]]
    )
    assert enumerate_exponents(six, 3).shape == (729, 6)


def test_enumeration_cap():
    six = ul_alphabet(NetworkConfig(2, 1, 1))
    with pytest.raises(EnumerationCapError) as err:
        enumerate_exponents(six, 3, cap=700)
    assert err.value.count == 729


def test_enumeration_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FDCELL_ENUM_CAP", "10")
    with pytest.raises(EnumerationCapError):
        enumerate_exponents(ul_alphabet(NetworkConfig(2, 1, 1)), 2)


def test_evaluate_beam_examples():
    ch = generate_channels(NetworkConfig(2, 1, 1), 5, seed=0)
    a = tuple(ul_alphabet(ch.config))
    np.testing.assert_array_equal(evaluate_beam(ExponentVector(a, (0,) * 6), ch), np.ones(5))
    one = ExponentVector(a, (0, 0, 1, 0, 0, 0))
    np.testing.assert_array_equal(evaluate_beam(one, ch), ch.h[a[2].index])


def test_evaluate_beam_squares():
    config = NetworkConfig(1, 1, 1)
    z = np.zeros((1, 1, 1, 1, 2))
    h = z.copy()
    h[0, 0, 0, 0] = [2.0, -1.0]
    ch = ChannelRealization(config, 2, 0, SelfInterference.SUPPRESSED, h=h, f=z, g=z, B=z)
    e = ExponentVector((CoefficientId(H, (0, 0, 0, 0)),), (2,))
    np.testing.assert_array_equal(evaluate_beam(e, ch), [4.0, 1.0])


def test_unresolvable_coefficient():
    ch = generate_channels(NetworkConfig(1, 1, 1), 2, seed=0)
    bad = ExponentVector((CoefficientId(H, (0, 0, 5, 0)),), (1,))
    with pytest.raises(UnresolvableCoefficientError):
        evaluate_beam(bad, ch)


def test_plan_example():
    p = plan_scheme1(NetworkConfig(2, 1, 1), 1, 1)
    assert (p.ul_beams_per_user, p.ul_extended) == (1, 64)
    assert (p.dl_beams_per_user_per_antenna, p.dl_extended) == (1, 16)
    assert p.bs_required == 18 and p.dl_user_required == 81 and p.d == 81


def test_plan_single_cell():
    p = plan_scheme1(NetworkConfig(1, 1, 2), 1, 1)
    assert (p.ul_alphabet_size, p.dl_alphabet_size) == (4, 1)
    # BS: 2 + 0 + 1*2*2 = 6; DL user: 1 + 2*2 + 16 = 21
    assert (p.bs_required, p.dl_user_required, p.d) == (6, 21, 21)


def test_plan_cap():
    with pytest.raises(EnumerationCapError):
        plan_scheme1(NetworkConfig(3, 2, 2), 9, 1)


def test_plan_ul_only():
    p = plan_scheme1(NetworkConfig(2, 1, 1), 2)
    assert p.ul_only and p.d == 128 and p.dl_beams_per_user_per_antenna == 0


def test_plan_respects_budgets():
    for config in (NetworkConfig(2, 1, 1), NetworkConfig(2, 2, 1), NetworkConfig(1, 2, 2)):
        for T in (1, 2):
            p = plan_scheme1(config, T, 1)
            assert config.M * p.d >= p.bs_required and p.d >= p.dl_user_required
            assert config.M * (p.d - 1) < p.bs_required or p.d - 1 < p.dl_user_required


def test_build_example():
    config = NetworkConfig(2, 1, 1)
    plan = plan_scheme1(config, 1, 1)
    beams = build_scheme1(config, plan, generate_channels(config, plan.d, seed=42))
    for k in range(2):
        cols = beams.ul_beams(k, 0)
        assert cols.shape == (81, 1)
        np.testing.assert_array_equal(cols[:, 0], np.ones(81))


def test_build_distinct_and_independent():
    config = NetworkConfig(2, 1, 1)
    plan = plan_scheme1(config, 2, 1)
    ch = generate_channels(config, plan.d, seed=5)
    beams = build_scheme1(config, plan, ch)
    assert len(beams.ul) == plan.ul_beams_per_user == 64
    assert len({tuple(r) for r in beams.ul.exponents}) == 64
    assert numeric_rank(beams.ul.columns) == 64
    for s in (0, 17, 63):
        e = beams.ul.exponent_vector(s)
        np.testing.assert_allclose(beams.ul.vectors[s], evaluate_beam(e, ch), rtol=1e-12)


def test_family_bases_only_for_several_users():
    config = NetworkConfig(1, 1, 2)
    plan = plan_scheme1(config, 1, 1)
    ch = generate_channels(config, plan.d, seed=1)
    beams = build_scheme1(config, plan, ch)
    assert all(f.base is not None for f in beams.dl.values())
    assert not np.allclose(beams.dl[0].vectors, beams.dl[1].vectors)
    literal = build_scheme1(config, plan, ch, family_bases=False)
    np.testing.assert_array_equal(literal.dl[0].vectors, literal.dl[1].vectors)
    single = build_scheme1(NetworkConfig(2, 1, 1), plan_scheme1(NetworkConfig(2, 1, 1), 1, 1),
                           generate_channels(NetworkConfig(2, 1, 1), 81, seed=1))
    assert single.dl[0].base is None


def test_build_dimension_mismatch():
    config = NetworkConfig(2, 1, 1)
    plan = plan_scheme1(config, 1, 1)
    with pytest.raises(DimensionError):
        build_scheme1(config, plan, generate_channels(config, 80, seed=0))


def test_dump_beams_is_json():
    config = NetworkConfig(2, 1, 1)
    plan = plan_scheme1(config, 1, 1)
    beams = build_scheme1(config, plan, generate_channels(config, plan.d, seed=0))
    out = json.loads(json.dumps(dump_beams(beams)))
    assert len(out["ul"]) == 1 and len(out["ul"][0]["head"]) == 8
    assert out["dl"]["0"][0]["exponents"] == {}
