"""Dense complex linear algebra and seeded sampling.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. All
randomness goes through :func:`make_rng`, which wraps numpy's Philox4x64
counter-based bit generator so a given integer seed yields the same stream
on every platform.
"""

import os
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, NotHermitian, NotPSD, NotSquare

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
DEGENERACY_TOL = 1e-12

MAX_QUBITS = 12
MAX_MIXED_QUBITS = 6


def _env_cap():
    raw = os.environ.get("QTANGLE_MAX_QUBITS")
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        return None


def max_qubits():
    """Largest qubit count accepted for pure states.

    ``QTANGLE_MAX_QUBITS`` may lower the built-in cap of 12, never raise it.
    """
    cap = _env_cap()
    return MAX_QUBITS if cap is None else max(1, min(cap, MAX_QUBITS))


def max_mixed_qubits():
    cap = _env_cap()
    return MAX_MIXED_QUBITS if cap is None else max(1, min(cap, MAX_MIXED_QUBITS))


def check_qubits(n, mixed=False):
    limit = max_mixed_qubits() if mixed else max_qubits()
    if n > limit:
        kind = "mixed-state" if mixed else "pure-state"
        raise DimensionTooLarge(f"{n} qubits exceeds the {kind} limit of {limit}")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, with eigenvectors as columns if requested."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def as_square(m):
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def check_hermitian(m, tol=HERMITIAN_TOL):
    m = as_square(m)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise NotHermitian(f"matrix deviates from Hermitian by {dev:.3e} (tol {tol:.0e})")
    return m


def _phase_fix(vecs):
    # make the largest-magnitude component of every column real and positive
    idx = np.argmax(np.abs(vecs), axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    phases = np.where(np.abs(pivots) > 0, pivots / np.abs(pivots), 1.0)
    return vecs / phases


def eig_hermitian(m, want_vectors=False):
    """Eigen-decompose a Hermitian matrix.

    Eigenvalues come back in descending order. Near-degenerate eigenvalues
    (within 1e-12 relative) are ordered by the real parts of their
    phase-fixed eigenvectors, compared component by component, so the
    output is deterministic.

    Raises
    ------
    NotSquare, NotHermitian
    """
    m = check_hermitian(m)
    # symmetrize so LAPACK sees an exactly Hermitian input
    h = 0.5 * (m + m.conj().T)
    if not want_vectors:
        w = np.linalg.eigvalsh(h)
        return Spectrum(w[::-1].copy())
    w, v = np.linalg.eigh(h)
    v = _phase_fix(v)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)

    def key(k):
        # coarse value bucket first, then eigenvector real parts
        return (-round(w[k] / (scale * DEGENERACY_TOL)), tuple(-v[:, k].real))

    order = sorted(range(len(w)), key=key)
    return Spectrum(w[order].copy(), v[:, order].copy())


def clamp_noise(w, scale=0.0):
    """Zero eigenvalues that are negative or at rounding-noise level.

    The floor is ``8 * eps * max(max|w|, scale)``; pass ``scale`` when the
    natural size of the matrix is known (e.g. 1 for products of density
    matrices) so an all-noise spectrum is still recognised. Square roots of
    noise-level values (around 1e-8) would otherwise leak into derived
    quantities.
    """
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return w
    floor = 8 * np.finfo(float).eps * max(float(np.max(np.abs(w))), scale)
    return np.where(w > floor, w, 0.0)


def sqrt_psd(m):
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything more negative
    raises :class:`NotPSD`.
    """
    spec = eig_hermitian(m, want_vectors=True)
    w = spec.eigenvalues
    if w.size and w[-1] < -PSD_TOL:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below -{PSD_TOL:.0e}")
    v = spec.eigenvectors
    r = (v * np.sqrt(clamp_noise(w))) @ v.conj().T
    return 0.5 * (r + r.conj().T)


def make_rng(seed):
    """Seeded generator backed by Philox4x64-10.

    ``seed`` may be an int, a ``numpy.random.SeedSequence`` or an existing
    ``Generator`` (returned unchanged).
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def derive_seed(master, index):
    """Child seed for trial ``index``: SeedSequence hash of ``(master, index)``."""
    ss = np.random.SeedSequence([int(master), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_unitary(d, seed):
    """Haar-distributed ``d x d`` unitary (QR of a Ginibre matrix, phase-fixed R)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = make_rng(seed)
    z = complex_gaussian(rng, (d, d))
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_unit_vector(dim, seed):
    """Uniform point on the unit sphere of ``C^dim``."""
    rng = make_rng(seed)
    z = complex_gaussian(rng, dim)
    return z / np.linalg.norm(z)


def is_unitary(u, tol=1e-10):
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol
