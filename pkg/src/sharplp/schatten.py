"""Schatten p-norms of positive matrices and the non-commutative trace bound.

For positive semidefinite A, B the candidate analog of the sharpened bound
replaces the pointwise overlap by the mixed trace tr[B^(p/4) A^(p/2) B^(p/4)]:

    tr (A+B)^p <= (1 + (mixed / ((||A||_p^p + ||B||_p^p)/2))^(2/p))^(p-1)
                  * tr (A^p + B^p).

It holds as an identity at p = 2 and, by a doubling argument through the
trace-rearrangement inequality tr[(B A^2 B)^(p/2)] <= tr[B^(p/2) A^p B^(p/2)],
for every p = 2^k.  Other exponents are unproven; they can only be evaluated
behind an explicit exploratory flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimOutOfRange, ExponentOutOfRange, NotPSD, UnsupportedExponent

MAX_DIM = 64
_HERMITIAN_TOL = 1e-12
_EIGEN_CLAMP_TOL = 1e-10
_SLACK = 1e-9


class PSDMatrix:
    """Hermitian positive-semidefinite matrix with a cached eigendecomposition.

    Hermiticity is enforced to 1e-12 relative; eigenvalues above
    -1e-10 * ||A|| are clamped to zero, anything lower is rejected.
    """

    __slots__ = ("entries", "_eigvals", "_eigvecs")

    def __init__(self, entries: Sequence[Sequence[complex]] | np.ndarray):
        arr = np.array(entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("entries must form a square matrix")
        if arr.shape[0] < 1:
            raise DimOutOfRange("dimension must be at least 1")
        scale = float(np.linalg.norm(arr, 2)) if arr.shape[0] > 1 else float(abs(arr[0, 0]))
        herm_gap = float(np.linalg.norm(arr - arr.conj().T))
        if herm_gap > _HERMITIAN_TOL * max(scale, 1e-300):
            raise NotPSD(f"matrix is not Hermitian (gap {herm_gap:.3e})")
        arr = (arr + arr.conj().T) / 2.0
        lam, vec = np.linalg.eigh(arr)
        lam_min = float(lam.min())
        if lam_min < -_EIGEN_CLAMP_TOL * max(scale, 1e-300):
            raise NotPSD(f"minimum eigenvalue {lam_min:.3e} below tolerance")
        lam = np.clip(lam, 0.0, None)
        arr.setflags(write=False)
        lam.setflags(write=False)
        vec.setflags(write=False)
        self.entries = arr
        self._eigvals = lam
        self._eigvecs = vec

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def eigenvalues(self) -> np.ndarray:
        return self._eigvals

    def power(self, q: float) -> np.ndarray:
        """Spectral fractional power A^q as a dense array (0^q := 0)."""
        lam = self._eigvals
        with np.errstate(divide="ignore"):
            powered = np.where(lam > 0.0, lam ** q, 0.0)
        return (self._eigvecs * powered) @ self._eigvecs.conj().T

    def __repr__(self) -> str:
        return f"PSDMatrix(dim={self.dim})"


@dataclass(frozen=True)
class SchattenReport:
    lhs: float
    rhs: float
    mixed: float
    gamma_tilde: float
    p: float
    satisfied: bool
    slack: float
    conjectural: bool


@dataclass(frozen=True)
class SchattenLink:
    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool


@dataclass(frozen=True)
class SchattenDoublingReport:
    p: float
    gamma: float
    beta: float
    lhs_2p: float
    final_bound: float
    final_bound_power_p: float
    links: tuple[SchattenLink, ...]

    @property
    def all_links_hold(self) -> bool:
        return all(link.satisfied for link in self.links)


def random_psd(dim: int, seed: int) -> PSDMatrix:
    """G G* for G with iid standard complex normal entries; deterministic per
    (dim, seed)."""
    if not 1 <= dim <= MAX_DIM:
        raise DimOutOfRange(f"dim must lie in [1, {MAX_DIM}], got {dim}")
    rng = np.random.default_rng([dim, seed])
    G = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    G /= math.sqrt(2.0)
    return PSDMatrix(G @ G.conj().T)


def schatten_norm(A: PSDMatrix, p: float) -> float:
    """(sum_i lambda_i^p)^(1/p) over the eigenvalues of a PSD matrix, p >= 1."""
    if p < 1.0:
        raise ExponentOutOfRange("Schatten norms are defined for p >= 1 here")
    lam = A.eigenvalues()
    return float(np.sum(lam ** p) ** (1.0 / p))


def _hermitian_abs_norm(M: np.ndarray, p: float) -> float:
    """Schatten norm of a general Hermitian array via |eigenvalues|."""
    lam = np.linalg.eigvalsh((M + M.conj().T) / 2.0)
    return float(np.sum(np.abs(lam) ** p) ** (1.0 / p))


def _real_trace(M: np.ndarray) -> float:
    tr = complex(np.trace(M))
    scale = max(abs(tr), float(np.linalg.norm(M)))
    if scale > 0.0 and abs(tr.imag) > 1e-10 * scale:
        raise NotPSD(f"trace has a non-real residue {tr.imag:.3e}")
    return float(tr.real)


def mixed_trace(A: PSDMatrix, B: PSDMatrix, p: float) -> float:
    """tr[B^(p/4) A^(p/2) B^(p/4)] via spectral fractional powers."""
    if p <= 0.0:
        raise ExponentOutOfRange("mixed trace needs p > 0")
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    Bq = B.power(p / 4.0)
    Ah = A.power(p / 2.0)
    val = _real_trace(Bq @ Ah @ Bq)
    if val < 0.0:
        scale = float(np.sum(A.eigenvalues() ** (p / 2)) * np.sum(B.eigenvalues() ** (p / 2)))
        if val < -1e-12 * max(scale, 1e-300):
            raise NotPSD(f"mixed trace {val:.3e} is negative beyond tolerance")
        val = 0.0
    return val


def _is_power_of_two_exponent(p: float) -> bool:
    if p < 2.0 or p != int(p):
        return False
    n = int(p)
    return n & (n - 1) == 0


def schatten_verify(
    A: PSDMatrix, B: PSDMatrix, p: float, allow_unproven: bool = False
) -> SchattenReport:
    """Evaluate the trace bound at exponent p in {2, 4, 8, ...}.

    Exponents that are not powers of two are rejected unless
    ``allow_unproven`` is set, in which case the report is labeled
    conjectural: nothing is claimed about the outcome there.
    """
    p = float(p)
    conjectural = not _is_power_of_two_exponent(p)
    if conjectural and not (allow_unproven and p > 2.0):
        raise UnsupportedExponent(
            "the trace bound is established only for p = 2^k; "
            "pass allow_unproven=True to explore other p > 2"
        )
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    lam_sum = np.linalg.eigvalsh(np.asarray(A.entries + B.entries))
    lhs = float(np.sum(np.clip(lam_sum, 0.0, None) ** p))
    S = float(np.sum(A.eigenvalues() ** p) + np.sum(B.eigenvalues() ** p))
    mixed = mixed_trace(A, B, p)
    gamma_tilde = (mixed / (S / 2.0)) ** (2.0 / p)
    rhs = (1.0 + gamma_tilde) ** (p - 1.0) * S
    tol = _SLACK * max(lhs, rhs)
    return SchattenReport(
        lhs=lhs,
        rhs=rhs,
        mixed=mixed,
        gamma_tilde=gamma_tilde,
        p=p,
        satisfied=bool(lhs <= rhs + tol),
        slack=float(rhs - lhs),
        conjectural=conjectural,
    )


def lieb_thirring_check(A: PSDMatrix, B: PSDMatrix, p: float) -> tuple[float, float]:
    """Both sides of the trace rearrangement:

        tr[(B A^2 B)^(p/2)]  <=  tr[B^(p/2) A^p B^(p/2)].

    Returns (lhs, rhs); equality holds for commuting pairs and at p = 2.
    """
    if p < 1.0:
        raise ExponentOutOfRange("the rearrangement check needs p >= 1")
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    Bm = np.asarray(B.entries)
    Am = np.asarray(A.entries)
    inner = Bm @ Am @ Am @ Bm
    lam = np.clip(np.linalg.eigvalsh((inner + inner.conj().T) / 2.0), 0.0, None)
    lhs = float(np.sum(lam ** (p / 2.0)))
    Bh = B.power(p / 2.0)
    Ap = A.power(p)
    rhs = _real_trace(Bh @ Ap @ Bh)
    return lhs, rhs


def schatten_doubling(A: PSDMatrix, B: PSDMatrix, p: float) -> SchattenDoublingReport:
    """Verify every link of the operator doubling step at exponent p = 2^k.

    Inputs are rescaled so the 2p-th Schatten power sums average to 1; then
    the chain runs through the triangle inequality for X = (AB+BA)/2 and
    Y = A^2+B^2, the symmetrized product bound, the trace rearrangement, the
    p-level bound on (A^2, B^2), and the scalar doubling lemma.
    """
    p = float(p)
    if not _is_power_of_two_exponent(p):
        raise UnsupportedExponent("doubling is established only for p = 2^k")
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    s = float(
        (np.sum(A.eigenvalues() ** (2 * p)) + np.sum(B.eigenvalues() ** (2 * p))) / 2.0
    ) ** (1.0 / (2.0 * p))
    if s == 0.0:
        raise NotPSD("A and B cannot both be zero")
    An = PSDMatrix(np.asarray(A.entries) / s)
    Bn = PSDMatrix(np.asarray(B.entries) / s)

    Am, Bm = np.asarray(An.entries), np.asarray(Bn.entries)
    X = (Am @ Bm + Bm @ Am) / 2.0
    Y = Am @ Am + Bm @ Bm
    lhs_2p = schatten_norm(PSDMatrix((Am + Bm) @ (Am + Bm)), p)  # ||A+B||_{2p}^2
    norm_X = _hermitian_abs_norm(X, p)
    norm_Y = schatten_norm(PSDMatrix(Y), p)
    # singular values of AB and BA coincide, so the symmetrization bound reads
    # ||X||_p <= ||AB||_p
    sv = np.linalg.svd(Am @ Bm, compute_uv=False)
    norm_AB = float(np.sum(sv ** p) ** (1.0 / p))

    lt_lhs, lt_rhs = lieb_thirring_check(An, Bn, p)
    gamma = lt_rhs ** (1.0 / p)
    beta = norm_Y

    level_p = schatten_verify(PSDMatrix(Am @ Am), PSDMatrix(Bm @ Bm), p)

    middle = 2.0 ** (1.0 / p) * (1.0 + gamma ** 2) ** (1.0 - 1.0 / p) + 2.0 * gamma
    final_bound = 2.0 ** (1.0 / p) * (1.0 + gamma) ** (2.0 - 1.0 / p)

    def link(name: str, lhs: float, rhs: float) -> SchattenLink:
        tol = _SLACK * max(abs(lhs), abs(rhs), 1e-300)
        return SchattenLink(
            name=name, lhs=float(lhs), rhs=float(rhs),
            slack=float(rhs - lhs), satisfied=bool(lhs <= rhs + tol),
        )

    links = (
        link("triangle", lhs_2p, norm_Y + 2.0 * norm_X),
        link("symmetrized_product", norm_X, norm_AB),
        link("trace_rearrangement", lt_lhs, lt_rhs),
        link("level_p", level_p.lhs, level_p.rhs),
        link("psi", middle, final_bound),
        link("overall", lhs_2p, final_bound),
    )
    return SchattenDoublingReport(
        p=p,
        gamma=float(gamma),
        beta=float(beta),
        lhs_2p=float(lhs_2p),
        final_bound=float(final_bound),
        final_bound_power_p=float(2.0 * (1.0 + gamma) ** (2.0 * p - 1.0)),
        links=links,
    )
