"""Mixed-state tangle: spin-flipped density matrices, the lambda spectrum,
the analytic minimum for even ``n`` and a numerical convex-roof search.
"""

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import ConvergenceFailure, OddNUnsupported, UnsupportedSize, WrongQubitCount
from .linalg import check_qubits, clamp_noise, eig_hermitian, haar_unitary, make_rng, sqrt_psd
from .pure import batch_tangle, tangle_defined, tangle_one_vs_rest, three_tangle
from .states import DensityMatrix, StateVector, partial_trace, w_state

SIGMA_Y = np.array([[0, -1j], [1j, 0]])


@dataclass(frozen=True)
class LambdaSpectrum:
    """Square roots of the eigenvalues of ``rho rho~``, descending."""

    lambdas: np.ndarray

    def wootters_difference(self):
        """``lambda_1 - sum of the rest``, not clamped."""
        lam = self.lambdas
        return float(lam[0] - lam[1:].sum())


@dataclass
class Ensemble:
    """Pure-state decomposition ``rho = sum_i p_i |psi_i><psi_i|``."""

    probabilities: np.ndarray
    states: list

    def __len__(self):
        return len(self.states)

    def density(self):
        return sum(p * s.projector() for p, s in zip(self.probabilities, self.states))

    def average(self, functional):
        amps = np.array([s.amplitudes for s in self.states])
        return float(np.dot(self.probabilities, functional(amps)))


@dataclass
class TauMinResult:
    value: float
    method: str
    witness: Ensemble | None = None
    converged: bool = True
    restarts: list = field(default_factory=list)


def _sigma_y_n(n):
    return reduce(np.kron, [SIGMA_Y] * n)


def spin_flip_density(rho):
    """``sigma_y^{(x)n} rho* sigma_y^{(x)n}``."""
    y = _sigma_y_n(rho.n)
    return DensityMatrix(y @ np.conj(rho.matrix) @ y)


def lambda_spectrum(rho):
    """Descending square-rooted eigenvalues of ``rho rho~``.

    ``rho rho~`` is not Hermitian, so the spectrum is taken from the similar
    matrix ``sqrt(rho) rho~ sqrt(rho)``, which is Hermitian PSD.
    """
    check_qubits(rho.n, mixed=True)
    r = sqrt_psd(rho.matrix)
    h = r @ spin_flip_density(rho).matrix @ r
    h = 0.5 * (h + h.conj().T)
    w = clamp_noise(eig_hermitian(h).eigenvalues, scale=1.0)
    return LambdaSpectrum(np.sqrt(w))


def tau_min_analytic(rho):
    """``max(0, lambda_1 - lambda_2 - ... - lambda_{2^n})**2`` for even ``n``.

    Raises
    ------
    OddNUnsupported
        The closed form is only established for even ``n``; use
        :func:`convex_roof_minimize` instead.
    """
    if rho.n % 2:
        raise OddNUnsupported(
            f"analytic tau_min needs even n, got n={rho.n}; use convex_roof_minimize"
        )
    c = max(0.0, lambda_spectrum(rho).wootters_difference())
    return TauMinResult(c * c, "analytic")


def concurrence_mixed_2q(rho):
    """Wootters concurrence of a two-qubit density matrix."""
    if rho.n != 2:
        raise WrongQubitCount(f"two-qubit concurrence needs n=2, got n={rho.n}")
    return max(0.0, lambda_spectrum(rho).wootters_difference())


@dataclass
class ConvexRoofConfig:
    """Search settings.

    ``members`` defaults to twice the rank of the state, capped at rank
    squared (never below the rank).
    """

    members: int | None = None
    restarts: int = 20
    max_sweeps: int = 500
    tol: float = 1e-10
    seed: int = 0
    rank_tol: float = 1e-12


def _weighted_eigenvectors(rho, rank_tol):
    spec = eig_hermitian(rho.matrix, want_vectors=True)
    keep = spec.eigenvalues > rank_tol
    return (spec.eigenvectors[:, keep] * np.sqrt(spec.eigenvalues[keep])).T


def _ensemble_cost(w, functional):
    # w: (..., m, dim) subnormalized members; returns sum_j p_j f(psi_j)
    p = np.sum(np.abs(w) ** 2, axis=-1)
    safe = np.where(p > 1e-300, p, 1.0)
    psi = w / np.sqrt(safe)[..., None]
    shape = psi.shape
    vals = functional(psi.reshape(-1, shape[-1])).reshape(shape[:-1])
    return np.sum(np.where(p > 1e-300, p * vals, 0.0), axis=-1)


def _rotate_pair(wj, wk, theta, phi):
    c = np.cos(theta)[..., None]
    s = np.sin(theta)[..., None]
    e = np.exp(1j * phi)[..., None]
    return c * wj + s * e * wk, -s * np.conj(e) * wj + c * wk


def _optimize_pair(wj, wk, functional, rounds=18):
    """Best 2x2 mixing of members ``j`` and ``k``; returns (theta, phi, cost)."""

    def cost(theta, phi):
        a, b = _rotate_pair(wj, wk, theta, phi)
        return _ensemble_cost(np.stack([a, b], axis=-2), functional)

    th, ph = np.meshgrid(np.linspace(0, np.pi, 12, endpoint=False),
                         np.linspace(0, 2 * np.pi, 16, endpoint=False), indexing="ij")
    th, ph = th.ravel(), ph.ravel()
    vals = cost(th, ph)
    best = int(np.argmin(vals))
    bt, bp, bv = th[best], ph[best], vals[best]
    half_t, half_p = np.pi / 12, np.pi / 8
    offsets = np.linspace(-1.0, 1.0, 5)
    for _ in range(rounds):
        dt, dp = np.meshgrid(offsets * half_t, offsets * half_p, indexing="ij")
        cand_t = bt + dt.ravel()
        cand_p = bp + dp.ravel()
        vals = cost(cand_t, cand_p)
        i = int(np.argmin(vals))
        if vals[i] < bv:
            bt, bp, bv = cand_t[i], cand_p[i], vals[i]
        half_t *= 0.5
        half_p *= 0.5
    return bt, bp, bv


def _descend(w, functional, cfg):
    m = w.shape[0]
    current = float(_ensemble_cost(w, functional))
    for sweep in range(cfg.max_sweeps):
        start = current
        for j in range(m - 1):
            for k in range(j + 1, m):
                before = float(_ensemble_cost(w[[j, k]], functional))
                theta, phi, after = _optimize_pair(w[j], w[k], functional)
                if after < before:
                    w[j], w[k] = _rotate_pair(w[j], w[k], np.asarray(theta), np.asarray(phi))
        current = float(_ensemble_cost(w, functional))
        if start - current < cfg.tol:
            return w, current, True, sweep + 1
    return w, current, False, cfg.max_sweeps


def _to_ensemble(w):
    p = np.sum(np.abs(w) ** 2, axis=1)
    keep = p > 1e-14
    probs = p[keep] / p[keep].sum()
    states = [StateVector(v / np.sqrt(q)) for v, q in zip(w[keep], p[keep])]
    return Ensemble(probs, states)


def convex_roof_minimize(rho, functional=None, cfg=None):
    """Search for the minimum of ``sum_i p_i f(psi_i)`` over decompositions of ``rho``.

    Every ``m``-member decomposition is ``w_j = sum_k U[j, k] sqrt(mu_k) e_k``
    for an ``m x r`` isometry ``U`` and the eigenpairs ``(mu_k, e_k)`` of
    ``rho``. Each restart draws a Haar unitary and then runs coordinate
    descent over two-member rotations ``(theta, phi)`` until a full sweep
    improves the cost by less than ``cfg.tol``.

    Parameters
    ----------
    rho : DensityMatrix
    functional : callable, optional
        Maps a ``(m, 2**n)`` array of normalized states to their ``m``
        pure-state values. Defaults to the n-tangle.
    cfg : ConvexRoofConfig, optional

    Returns
    -------
    TauMinResult
        ``method="convex-roof"``; the value is an upper bound on the true
        minimum, and ``witness`` is the ensemble that achieves it.

    Raises
    ------
    ConvergenceFailure
        If no restart becomes stationary within ``cfg.max_sweeps``.
    """
    cfg = cfg or ConvexRoofConfig()
    n = rho.n
    if n > 4:
        raise UnsupportedSize(f"convex-roof search limited to n <= 4, got n={n}")
    if functional is None:
        if not tangle_defined(n):
            raise UnsupportedSize(f"no default functional for n={n}")
        functional = lambda amps: batch_tangle(amps, n)  # noqa: E731
    v = _weighted_eigenvectors(rho, cfg.rank_tol)
    r = v.shape[0]
    if r == 1:
        ens = _to_ensemble(v)
        return TauMinResult(ens.average(functional), "convex-roof", ens, True, [])
    m = cfg.members if cfg.members is not None else min(2 * r, r * r)
    m = max(m, r)

    rng = make_rng(cfg.seed)
    best = None
    history = []
    any_converged = False
    for restart in range(cfg.restarts):
        u = haar_unitary(m, rng)[:, :r]
        w, value, converged, sweeps = _descend(u @ v, functional, cfg)
        history.append({"restart": restart, "value": value, "converged": converged, "sweeps": sweeps})
        any_converged |= converged
        # strict inequality keeps the lowest restart index on ties
        if best is None or value < best[0]:
            best = (value, w.copy(), converged)
    if not any_converged:
        raise ConvergenceFailure(f"no restart became stationary within {cfg.max_sweeps} sweeps")
    value, w, converged = best
    return TauMinResult(value, "convex-roof", _to_ensemble(w), converged, history)


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float
    terms: dict

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)


def check_ckw(state):
    """Compare ``C^2_{1(23)}`` with ``tau_12 + tau_13 + tau_123`` for 3 qubits."""
    if state.n != 3:
        raise WrongQubitCount(f"CKW check needs 3 qubits, got {state.n}")
    lhs = tangle_one_vs_rest(state, 1)
    t12 = concurrence_mixed_2q(partial_trace(state, [1, 2])) ** 2
    t13 = concurrence_mixed_2q(partial_trace(state, [1, 3])) ** 2
    t123 = three_tangle(state)
    return IdentityReport(lhs, t12 + t13 + t123, {"tau_12": t12, "tau_13": t13, "tau_123": t123})


def check_w_equality(n):
    """Compare ``sum_j C^2_{1j}`` with ``C^2_{1(2...n)}`` for the n-qubit W state."""
    if not 3 <= n <= 6:
        raise UnsupportedSize(f"W equality check supports 3 <= n <= 6, got n={n}")
    psi = w_state(n)
    pairs = {f"C2_1{j}": concurrence_mixed_2q(partial_trace(psi, [1, j])) ** 2 for j in range(2, n + 1)}
    return IdentityReport(sum(pairs.values()), tangle_one_vs_rest(psi, 1), pairs)
