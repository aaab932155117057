import math

import numpy as np
import pytest

from sharplp.doubling import direct_p4, doubling_step, psi
from sharplp.errors import ExponentOutOfRange, NegativeInput, ZeroPair
from sharplp.inequality import main_sides
from sharplp.measure import MeasureSpace, SimpleFunction

W11 = MeasureSpace([1.0, 1.0])


def test_psi_examples():
    for t in (-1.0, 0.0, 0.5, 1.0, 2.5):
        assert psi(t, 0.0) == 0.0
    for a in (0.0, 0.3, 1.0, 4.0):
        assert psi(1.0, a) == pytest.approx(0.0, abs=1e-12)
    assert psi(0.5, 0.25) == pytest.approx(0.01321268893967966, rel=1e-12)
    with pytest.raises(NegativeInput):
        psi(0.5, -0.1)


def test_psi_sign_law_sample():
    alphas = np.linspace(0.0, 10.0, 201)
    for t in np.linspace(0.0, 1.0, 21):
        vals = np.array([psi(float(t), float(a)) for a in alphas])
        scale = (1.0 + alphas) ** (1.0 + t)
        assert np.all(vals >= -1e-12 * scale)
    for t in np.linspace(1.0 + 1e-3, 3.0, 21):
        vals = np.array([psi(float(t), float(a)) for a in alphas])
        scale = (1.0 + alphas) ** (1.0 + t)
        assert np.all(vals <= 1e-12 * scale)


def test_psi_divided_difference_sign():
    # psi_t(a)/(a(1-a)) is positive on (0,1) and negative on (1,inf) for
    # t in (0,1), with both signs flipped for t > 1
    for t in (0.2, 0.5, 0.9):
        for a in (0.1, 0.5, 0.9):
            assert psi(t, a) / (a * (1.0 - a)) > 0.0
        for a in (1.5, 3.0, 8.0):
            assert psi(t, a) / (a * (1.0 - a)) < 0.0
    for t in (1.5, 2.5):
        for a in (0.1, 0.5, 0.9):
            assert psi(t, a) / (a * (1.0 - a)) < 0.0
        for a in (1.5, 3.0, 8.0):
            assert psi(t, a) / (a * (1.0 - a)) > 0.0


def test_direct_p4_equal_functions():
    f = SimpleFunction([0.9, 1.7, 0.4])
    w = MeasureSpace([1.0, 0.5, 2.0])
    rep = direct_p4(f, SimpleFunction(f.values.copy()), w)
    assert rep.alpha == pytest.approx(1.0, rel=1e-13)
    assert rep.beta == pytest.approx(2.0, rel=1e-13)
    assert rep.lhs == pytest.approx(4.0, rel=1e-13)
    assert rep.bound_minkowski == pytest.approx(4.0, rel=1e-13)
    assert rep.bound_final == pytest.approx(4.0, rel=1e-13)
    assert abs(rep.identity_gap) <= 1e-12


def test_direct_p4_disjoint():
    rep = direct_p4(SimpleFunction([1.3, 0.0]), SimpleFunction([0.0, 0.7]), W11)
    assert rep.alpha == pytest.approx(0.0, abs=1e-15)
    assert rep.beta == pytest.approx(math.sqrt(2.0), rel=1e-13)
    assert rep.lhs == pytest.approx(math.sqrt(2.0), rel=1e-13)
    assert rep.bound_final == pytest.approx(math.sqrt(2.0), rel=1e-13)


def test_direct_p4_frozen_instance():
    rep = direct_p4(SimpleFunction([2, 1]), SimpleFunction([1, 2]), W11)
    assert rep.alpha == pytest.approx(0.6859943405700353, rel=1e-13)
    assert rep.beta == pytest.approx(1.7149858514250884, rel=1e-13)
    assert rep.lhs == pytest.approx(3.0869745325651591, rel=1e-13)
    assert rep.bound_minkowski == pytest.approx(rep.lhs, rel=1e-13)
    assert rep.bound_final == pytest.approx(3.0959872718546709, rel=1e-13)


def test_direct_p4_random_seed7():
    rng = np.random.default_rng(7)
    f = SimpleFunction(0.05 + 1.95 * rng.random(5))
    g = SimpleFunction(0.05 + 1.95 * rng.random(5))
    w = MeasureSpace(0.05 + 1.95 * rng.random(5))
    rep = direct_p4(f, g, w)
    assert rep.lhs < rep.bound_minkowski < rep.bound_final
    assert abs(rep.identity_gap) <= 1e-12


def test_direct_p4_errors():
    with pytest.raises(NegativeInput):
        direct_p4(SimpleFunction([-1, 1]), SimpleFunction([1, 1]), W11)
    with pytest.raises(ZeroPair):
        direct_p4(SimpleFunction([0, 0]), SimpleFunction([0, 0]), W11)


def test_doubling_equal_functions_all_equalities():
    f = SimpleFunction([0.9, 1.7, 0.4])
    w = MeasureSpace([1.0, 0.5, 2.0])
    rep = doubling_step(f, SimpleFunction(f.values.copy()), w, 3.0)
    assert rep.gamma == pytest.approx(1.0, rel=1e-12)
    assert rep.all_links_hold
    for link in rep.links:
        assert abs(link.slack) <= 1e-9 * max(abs(link.lhs), abs(link.rhs))


def test_doubling_forward_random():
    rng = np.random.default_rng(12)
    for p in (2.0, 3.0, 4.0):
        for _ in range(40):
            n = int(rng.integers(1, 9))
            f = SimpleFunction(2.0 * (1.0 - rng.random(n)))
            g = SimpleFunction(2.0 * (1.0 - rng.random(n)))
            w = MeasureSpace(2.0 * (1.0 - rng.random(n)))
            rep = doubling_step(f, g, w, p)
            assert rep.all_links_hold
            assert rep.level_2p.satisfied
            # composed bound dominates the doubled-exponent left side
            assert rep.lhs_2p <= rep.final_bound * (1.0 + 1e-9)


def test_doubling_p2_matches_level4_bound():
    rng = np.random.default_rng(23)
    for _ in range(30):
        n = int(rng.integers(1, 9))
        f = SimpleFunction(0.05 + 1.95 * rng.random(n))
        g = SimpleFunction(0.05 + 1.95 * rng.random(n))
        w = MeasureSpace(0.05 + 1.95 * rng.random(n))
        rep = doubling_step(f, g, w, 2.0)
        assert rep.final_bound ** 2.0 == pytest.approx(rep.level_2p.rhs, rel=1e-12)


def test_doubling_reverse_region():
    rng = np.random.default_rng(31)
    for _ in range(40):
        n = int(rng.integers(1, 9))
        f = SimpleFunction(0.1 + 1.9 * rng.random(n))
        g = SimpleFunction(0.1 + 1.9 * rng.random(n))
        w = MeasureSpace(0.1 + 1.9 * rng.random(n))
        rep = doubling_step(f, g, w, -1.0)
        assert rep.all_links_hold
        for link in rep.links:
            assert link.direction == ">="
        assert rep.level_2p.satisfied  # reverse bound at exponent -2
        assert rep.final_bound ** (-1.0) == pytest.approx(
            rep.level_2p.rhs, rel=1e-12
        )


def test_doubling_rejects_middle_exponents():
    with pytest.raises(ExponentOutOfRange):
        doubling_step(SimpleFunction([1, 1]), SimpleFunction([1, 1]), W11, 1.5)


def test_p4_chain_matches_main_sides():
    # the final fourth-power bound is the sharpened right side in disguise
    rng = np.random.default_rng(41)
    for _ in range(30):
        n = int(rng.integers(1, 9))
        f = SimpleFunction(2.0 * (1.0 - rng.random(n)))
        g = SimpleFunction(2.0 * (1.0 - rng.random(n)))
        w = MeasureSpace(2.0 * (1.0 - rng.random(n)))
        rep = direct_p4(f, g, w)
        # normalize the instance the same way and compare against main_sides
        s = (
            (
                float(np.sum(w.weights * f.values ** 4))
                + float(np.sum(w.weights * g.values ** 4))
            )
            / 2.0
        ) ** 0.25
        fn = SimpleFunction(f.values / s)
        gn = SimpleFunction(g.values / s)
        level4 = main_sides(fn, gn, w, 4.0)
        # bound_final caps the squared norm, so its square is the functional bound
        assert rep.bound_final ** 2 == pytest.approx(level4.rhs, rel=1e-12)
        assert rep.lhs ** 2 == pytest.approx(level4.lhs, rel=1e-12)
