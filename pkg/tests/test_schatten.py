import numpy as np
import pytest

from sharplp.errors import DimOutOfRange, ExponentOutOfRange, NotPSD, UnsupportedExponent
from sharplp.schatten import (
    PSDMatrix,
    lieb_thirring_check,
    mixed_trace,
    random_psd,
    schatten_doubling,
    schatten_norm,
    schatten_verify,
)


def test_psd_validation():
    with pytest.raises(NotPSD):
        PSDMatrix([[0.0, 1.0], [0.0, 0.0]])  # not Hermitian
    with pytest.raises(NotPSD):
        PSDMatrix([[1.0, 0.0], [0.0, -1.0]])  # negative eigenvalue
    m = PSDMatrix([[2.0, 1.0], [1.0, 2.0]])
    assert m.dim == 2
    np.testing.assert_allclose(m.eigenvalues(), [1.0, 3.0], atol=1e-12)


def test_random_psd():
    a = random_psd(1, 0)
    assert a.dim == 1 and a.eigenvalues()[0] >= 0.0
    b1 = random_psd(3, 1)
    b2 = random_psd(3, 1)
    np.testing.assert_array_equal(np.asarray(b1.entries), np.asarray(b2.entries))
    assert np.all(b1.eigenvalues() >= 0.0)
    assert not np.allclose(
        np.asarray(random_psd(3, 2).entries), np.asarray(b1.entries)
    )
    with pytest.raises(DimOutOfRange):
        random_psd(0, 1)
    with pytest.raises(DimOutOfRange):
        random_psd(65, 1)


def test_schatten_norm():
    eye = PSDMatrix(np.eye(5))
    for p in (1.0, 2.0, 4.0):
        assert schatten_norm(eye, p) == pytest.approx(5.0 ** (1.0 / p), rel=1e-14)
    assert schatten_norm(PSDMatrix(np.diag([3.0, 4.0])), 2.0) == pytest.approx(5.0)
    A = random_psd(3, 1)
    M = np.asarray(A.entries)
    tr4 = float(np.trace(M @ M @ M @ M).real)
    assert schatten_norm(A, 4.0) == pytest.approx(tr4 ** 0.25, rel=1e-12)
    with pytest.raises(ExponentOutOfRange):
        schatten_norm(A, 0.5)


def test_mixed_trace():
    A = random_psd(4, 3)
    M = np.asarray(A.entries)
    for p in (2.0, 4.0):
        want = float(np.trace(np.linalg.matrix_power(M, int(p))).real)
        assert mixed_trace(A, A, p) == pytest.approx(want, rel=1e-11)
    # orthogonal ranges annihilate the mixed trace
    P = PSDMatrix(np.diag([1.0, 0.0]))
    Q = PSDMatrix(np.diag([0.0, 2.0]))
    assert mixed_trace(P, Q, 4.0) == pytest.approx(0.0, abs=1e-14)
    # p = 2 reduces to tr[AB] by cyclicity
    B = random_psd(4, 5)
    want = float(np.trace(np.asarray(A.entries) @ np.asarray(B.entries)).real)
    assert mixed_trace(A, B, 2.0) == pytest.approx(want, rel=1e-12)


def test_mixed_trace_symmetry():
    for seed in range(10):
        A = random_psd(4, 100 + seed)
        B = random_psd(4, 200 + seed)
        for p in (2.0, 4.0, 8.0):
            ab = mixed_trace(A, B, p)
            ba = mixed_trace(B, A, p)
            assert ab == pytest.approx(ba, rel=1e-10)


def test_schatten_verify_examples():
    eye = PSDMatrix(np.eye(2))
    rep = schatten_verify(eye, eye, 4.0)
    assert rep.lhs == pytest.approx(32.0, rel=1e-13)
    assert rep.rhs == pytest.approx(32.0, rel=1e-13)
    assert rep.satisfied and not rep.conjectural

    P = PSDMatrix(np.diag([1.0, 0.0]))
    Q = PSDMatrix(np.diag([0.0, 1.0]))
    rep = schatten_verify(P, Q, 4.0)
    assert rep.lhs == pytest.approx(2.0) and rep.rhs == pytest.approx(2.0)

    with pytest.raises(UnsupportedExponent):
        schatten_verify(eye, eye, 3.0)
    with pytest.raises(UnsupportedExponent):
        schatten_verify(eye, eye, 6.0)
    rep = schatten_verify(eye, eye, 3.0, allow_unproven=True)
    assert rep.conjectural


def test_schatten_verify_trials():
    for seed in range(25):
        dim = 2 + seed % 5
        A = random_psd(dim, 1000 + 2 * seed)
        B = random_psd(dim, 1001 + 2 * seed)
        for p in (2.0, 4.0, 8.0, 16.0):
            rep = schatten_verify(A, B, p)
            assert rep.satisfied
        rep2 = schatten_verify(A, B, 2.0)
        assert abs(rep2.lhs - rep2.rhs) <= 1e-12 * rep2.lhs


def test_lieb_thirring():
    # commuting diagonal pair: equality
    A = PSDMatrix(np.diag([1.0, 2.0, 0.5]))
    B = PSDMatrix(np.diag([0.3, 1.1, 2.2]))
    lhs, rhs = lieb_thirring_check(A, B, 4.0)
    assert lhs == pytest.approx(rhs, rel=1e-12)
    # p = 2: both sides are tr[B A^2 B]
    A = random_psd(3, 11)
    B = random_psd(3, 12)
    lhs, rhs = lieb_thirring_check(A, B, 2.0)
    assert lhs == pytest.approx(rhs, rel=1e-12)
    # noncommuting pair at p = 4: strict inequality
    A = random_psd(2, 21)
    B = random_psd(2, 22)
    lhs, rhs = lieb_thirring_check(A, B, 4.0)
    assert lhs < rhs
    assert lhs <= rhs * (1.0 + 1e-9)


def test_schatten_doubling():
    eye = PSDMatrix(np.eye(3))
    rep = schatten_doubling(eye, eye, 2.0)
    assert rep.all_links_hold
    for link in rep.links:
        assert abs(link.slack) <= 1e-9 * max(abs(link.lhs), abs(link.rhs))

    P = PSDMatrix(np.diag([1.0, 0.0]))
    Q = PSDMatrix(np.diag([0.0, 1.5]))
    rep = schatten_doubling(P, Q, 2.0)
    assert rep.gamma == pytest.approx(0.0, abs=1e-12)
    assert rep.all_links_hold

    A = random_psd(4, 51)
    B = random_psd(4, 52)
    for p in (2.0, 4.0):
        rep = schatten_doubling(A, B, p)
        assert rep.all_links_hold

    with pytest.raises(UnsupportedExponent):
        schatten_doubling(A, B, 3.0)


def test_doubling_consistent_with_verify():
    # the composed bound at 2p dominates the (2p)-level left side
    for seed in range(10):
        A = random_psd(3, 300 + 2 * seed)
        B = random_psd(3, 301 + 2 * seed)
        rep = schatten_doubling(A, B, 2.0)
        s = float(
            (np.sum(A.eigenvalues() ** 4) + np.sum(B.eigenvalues() ** 4)) / 2.0
        ) ** 0.25
        An = PSDMatrix(np.asarray(A.entries) / s)
        Bn = PSDMatrix(np.asarray(B.entries) / s)
        ver = schatten_verify(An, Bn, 4.0)
        assert rep.final_bound_power_p >= ver.lhs - 1e-9 * max(ver.lhs, 1.0)
        assert rep.final_bound_power_p == pytest.approx(ver.rhs, rel=1e-12)


def test_traces_are_real():
    for seed in range(5):
        A = random_psd(5, 400 + seed)
        B = random_psd(5, 500 + seed)
        for p in (2.0, 4.0, 8.0):
            val = mixed_trace(A, B, p)
            assert isinstance(val, float)
            assert val >= 0.0


def test_dim_one_matrices():
    A = random_psd(1, 9)
    B = random_psd(1, 10)
    rep = schatten_verify(A, B, 4.0)
    assert rep.satisfied
    a = float(A.eigenvalues()[0])
    assert schatten_norm(A, 3.0) == pytest.approx(a, rel=1e-13)
    lhs, rhs = lieb_thirring_check(A, B, 4.0)
    assert lhs == pytest.approx(rhs, rel=1e-12)  # scalars commute
