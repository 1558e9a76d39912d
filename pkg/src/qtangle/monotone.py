"""Two-outcome local POVMs and the empirical monotonicity check for the n-tangle.

A pair ``A_i = U_i D_i V`` with ``D_1 = diag(a, b)`` and
``D_2 = diag(sqrt(1 - a^2), sqrt(1 - b^2))`` is complete by construction.
Applying it to one qubit of ``psi`` gives outcomes ``(p_i, phi_i)``; the
tangle is a monotone if ``p_1 tau(phi_1) + p_2 tau(phi_2) <= tau(psi)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, NotUnitary, RangeError, UnsupportedSize, ZeroTangle
from .linalg import derive_seed, haar_unitary, is_unitary, make_rng
from .pure import n_tangle, tangle_defined
from .states import StateVector, apply_local, random_state

NULL_OUTCOME_TOL = 1e-12
ZERO_TANGLE_TOL = 1e-12


@dataclass(frozen=True)
class PovmPair:
    A1: np.ndarray
    A2: np.ndarray
    U1: np.ndarray
    U2: np.ndarray
    V: np.ndarray
    a: float
    b: float

    def completeness_residual(self):
        s = self.A1.conj().T @ self.A1 + self.A2.conj().T @ self.A2
        return float(np.linalg.norm(s - np.eye(2)))

    @property
    def is_diagonal(self):
        eye = np.eye(2)
        return all(np.allclose(u, eye, atol=1e-14) for u in (self.U1, self.U2, self.V))


@dataclass(frozen=True)
class MeasurementOutcome:
    """Outcome probability and normalized post-measurement state (None if p ~ 0)."""

    p: float
    phi: StateVector | None


def make_povm_pair(a, b, U1=None, U2=None, V=None):
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise RangeError(f"a and b must lie in [0, 1], got a={a}, b={b}")
    eye = np.eye(2, dtype=np.complex128)
    mats = []
    for name, u in (("U1", U1), ("U2", U2), ("V", V)):
        u = eye if u is None else np.asarray(u, dtype=np.complex128)
        if not is_unitary(u):
            raise NotUnitary(f"{name} is not a 2x2 unitary")
        mats.append(u)
    U1, U2, V = mats
    d1 = np.diag([a, b]).astype(np.complex128)
    d2 = np.diag([np.sqrt(1 - a * a), np.sqrt(1 - b * b)]).astype(np.complex128)
    return PovmPair(U1 @ d1 @ V, U2 @ d2 @ V, U1, U2, V, float(a), float(b))


def random_povm_pair(seed):
    """``a, b`` uniform on [0, 1]; ``U1, U2, V`` Haar; deterministic per seed."""
    rng = make_rng(seed)
    a, b = rng.uniform(0.0, 1.0, size=2)
    U1, U2, V = (haar_unitary(2, rng) for _ in range(3))
    return make_povm_pair(a, b, U1, U2, V)


def apply_povm(state, pair, party):
    """Measure qubit ``party`` with ``pair``; returns the two outcomes."""
    if not 1 <= party <= state.n:
        raise IndexOutOfRange(f"party {party} outside 1..{state.n}")
    out = []
    for op in (pair.A1, pair.A2):
        hat = apply_local(state.amplitudes, op, party, state.n)
        p = float(np.vdot(hat, hat).real)
        phi = StateVector(hat / np.sqrt(p)) if p > NULL_OUTCOME_TOL else None
        out.append(MeasurementOutcome(p, phi))
    return tuple(out)


def monotone_trial(state, pair, party):
    """``[p1 tau(phi1) + p2 tau(phi2)] / tau(psi)``.

    Raises
    ------
    ZeroTangle
        If ``tau(psi) <= 1e-12``; callers treat this as a skipped trial.
    """
    tau = n_tangle(state)
    if tau <= ZERO_TANGLE_TOL:
        raise ZeroTangle(f"tau(psi) = {tau:.3e} too small for a ratio")
    avg = sum(o.p * n_tangle(o.phi) for o in apply_povm(state, pair, party) if o.phi is not None)
    return avg / tau


def marginal_weights(state, party):
    """``(P0, P1)``: total squared amplitude with qubit ``party`` in 0 and in 1."""
    t = np.abs(state.amplitudes.reshape(2 ** (party - 1), 2, -1)) ** 2
    return float(t[:, 0, :].sum()), float(t[:, 1, :].sum())


def diagonal_closed_form(state, a, b, party):
    """Outcome probabilities and tangles for ``D_1 = diag(a, b)`` with no unitaries.

    Returns ``(p1, p2, tau1, tau2)`` where the tangles are scaled from
    ``tau(psi)`` by ``a^2 b^2 / p1^2`` and ``(1-a^2)(1-b^2) / p2^2``.
    """
    P0, P1 = marginal_weights(state, party)
    p1 = a * a * P0 + b * b * P1
    p2 = (1 - a * a) * P0 + (1 - b * b) * P1
    tau = n_tangle(state)
    tau1 = a * a * b * b * tau / p1**2 if p1 > NULL_OUTCOME_TOL else 0.0
    tau2 = (1 - a * a) * (1 - b * b) * tau / p2**2 if p2 > NULL_OUTCOME_TOL else 0.0
    return p1, p2, tau1, tau2


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    n: int
    party: int
    ratio: float | None


@dataclass
class MonotoneReport:
    n: int
    trials: int
    tol: float
    max_ratio: float = 0.0
    violations: int = 0
    skipped: int = 0
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return self.violations == 0


def run_monotone_suite(n, trials, seed, tol=1e-9):
    """Run ``trials`` random (state, POVM, party) checks.

    Trial ``t`` draws everything from ``derive_seed(seed, t)`` and measures
    party ``t % n + 1``, so the report is independent of evaluation order.
    """
    if n not in (2, 3, 4, 6) or not tangle_defined(n):
        raise UnsupportedSize(f"monotone suite supports n in (2, 3, 4, 6), got n={n}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = MonotoneReport(n=n, trials=trials, tol=tol)
    for t in range(trials):
        s = derive_seed(seed, t)
        rng = make_rng(s)
        psi = random_state(n, rng)
        pair = random_povm_pair(rng)
        party = t % n + 1
        try:
            ratio = monotone_trial(psi, pair, party)
        except ZeroTangle:
            report.skipped += 1
            report.records.append(TrialRecord(t, s, n, party, None))
            continue
        report.max_ratio = max(report.max_ratio, ratio)
        if ratio > 1 + tol:
            report.violations += 1
        report.records.append(TrialRecord(t, s, n, party, ratio))
    return report
