"""n-qubit pure and mixed states, named states and reductions.

Bit convention: qubit 1 is the most significant bit of the flat index, so the
amplitude of ``|i1 i2 ... in>`` sits at ``int("i1i2...in", 2)``. Reshaping an
amplitude vector to ``(2,) * n`` therefore puts qubit ``k`` on axis ``k - 1``.
"""

import enum

import numpy as np

from .errors import (
    EmptyKeepSet,
    IndexOutOfRange,
    NormError,
    NotAPermutation,
    NotPSD,
    TraceError,
    UnsupportedSize,
)
from .linalg import check_hermitian, check_qubits, random_unit_vector

NORM_TOL = 1e-6
TRACE_TOL = 1e-8
PSD_TOL = 1e-9


def _qubit_count(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise UnsupportedSize(f"length {dim} is not a power of two >= 2")
    return n


class StateVector:
    """Normalized pure state of ``n`` qubits.

    Parameters
    ----------
    amplitudes : array_like
        ``2**n`` complex amplitudes in standard-basis order.
    normalize : bool
        Rescale to unit norm instead of rejecting inputs whose norm is off
        by more than 1e-6.
    """

    __slots__ = ("amplitudes", "n")

    def __init__(self, amplitudes, normalize=False):
        a = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        n = _qubit_count(a.size)
        check_qubits(n)
        if not np.all(np.isfinite(a)):
            raise NormError("amplitudes contain non-finite values")
        norm = np.linalg.norm(a)
        if normalize:
            if norm == 0:
                raise NormError("cannot normalize the zero vector")
            a = a / norm
        elif abs(norm - 1.0) > NORM_TOL:
            raise NormError(f"state norm {norm:.9g} differs from 1 by more than {NORM_TOL:g}")
        a.flags.writeable = False
        self.amplitudes = a
        self.n = n

    @property
    def dim(self):
        return self.amplitudes.size

    def tensor(self):
        """Amplitudes as an ``n``-index array, axis ``k`` for qubit ``k + 1``."""
        return self.amplitudes.reshape((2,) * self.n)

    def projector(self):
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def allclose(self, other, atol=1e-12):
        return self.n == other.n and np.allclose(self.amplitudes, other.amplitudes, atol=atol)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"StateVector(n={self.n}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


class DensityMatrix:
    """Mixed state of ``n`` qubits: Hermitian, unit trace, PSD."""

    __slots__ = ("matrix", "n")

    def __init__(self, matrix, normalize=False):
        m = check_hermitian(matrix)
        n = _qubit_count(m.shape[0])
        check_qubits(n)
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if normalize:
            if tr <= 0:
                raise TraceError(f"cannot normalize matrix with trace {tr:.3e}")
            m = m / tr
        elif abs(tr - 1.0) > TRACE_TOL:
            raise TraceError(f"trace {tr:.12g} differs from 1 by more than {TRACE_TOL:g}")
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -PSD_TOL:
            raise NotPSD(f"smallest eigenvalue {lo:.3e} below -{PSD_TOL:g}")
        m.flags.writeable = False
        self.matrix = m
        self.n = n

    @classmethod
    def from_state(cls, state):
        return cls(state.projector())

    @classmethod
    def maximally_mixed(cls, n):
        return cls(np.eye(2**n) / 2**n)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(n={self.n})"


def mixture(weights, states):
    """``sum_i w_i |psi_i><psi_i|`` (or density matrices) as a DensityMatrix."""
    acc = 0
    for w, s in zip(weights, states):
        acc = acc + w * (s.projector() if isinstance(s, StateVector) else np.asarray(s.matrix))
    return DensityMatrix(acc)


class NamedStateKind(enum.Enum):
    CAT = "cat"
    GHZ = "ghz"
    W = "w"
    SINGLET_PAIRS = "singlets"
    BASIS = "basis"


def cat_state(n):
    """``(|0...0> + |1...1>)/sqrt(2)``."""
    if n < 1:
        raise UnsupportedSize("CAT state needs n >= 1")
    check_qubits(n)
    a = np.zeros(2**n, dtype=np.complex128)
    a[0] = a[-1] = 1 / np.sqrt(2)
    return StateVector(a)


def ghz_state():
    return cat_state(3)


def w_state(n):
    """Equal superposition of the ``n`` single-excitation basis states."""
    if n < 2:
        raise UnsupportedSize("W state needs n >= 2")
    check_qubits(n)
    a = np.zeros(2**n, dtype=np.complex128)
    a[[1 << k for k in range(n)]] = 1 / np.sqrt(n)
    return StateVector(a)


def singlet_pairs(k):
    """k-fold tensor power of the singlet ``(|01> - |10>)/sqrt(2)``."""
    if k < 1:
        raise UnsupportedSize("need at least one singlet")
    check_qubits(2 * k)
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)
    a = np.ones(1, dtype=np.complex128)
    for _ in range(k):
        a = np.kron(a, singlet)
    return StateVector(a)


def basis_state(bits):
    """Computational basis state from a bitstring such as ``"0110"``."""
    bits = str(bits)
    if not bits or set(bits) - {"0", "1"}:
        raise UnsupportedSize(f"invalid bitstring {bits!r}")
    check_qubits(len(bits))
    a = np.zeros(2 ** len(bits), dtype=np.complex128)
    a[int(bits, 2)] = 1.0
    return StateVector(a)


def make_named_state(kind, arg=None):
    """Build a named state.

    ``arg`` is the qubit count for CAT and W, the pair count for
    SINGLET_PAIRS, the bitstring for BASIS and ignored for GHZ.
    """
    kind = NamedStateKind(kind)
    if kind is NamedStateKind.GHZ:
        return ghz_state()
    if kind is NamedStateKind.BASIS:
        return basis_state(arg)
    if arg is None:
        raise UnsupportedSize(f"{kind.value} state needs a size")
    builder = {
        NamedStateKind.CAT: cat_state,
        NamedStateKind.W: w_state,
        NamedStateKind.SINGLET_PAIRS: singlet_pairs,
    }[kind]
    return builder(int(arg))


def random_state(n, seed):
    """Haar-random pure state of ``n`` qubits (normalized complex Gaussian)."""
    if n < 1:
        raise UnsupportedSize("need n >= 1")
    check_qubits(n)
    return StateVector(random_unit_vector(2**n, seed))


def _check_qubit_index(i, n):
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"qubit index {i} outside 1..{n}")


def partial_trace(state, keep):
    """Reduced density matrix on the qubits in ``keep`` (1-based).

    Kept qubits appear in ascending index order in the result regardless of
    the order given.
    """
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise EmptyKeepSet("keep set is empty")
    n = state.n
    for k in keep:
        _check_qubit_index(k, n)
    axes = [k - 1 for k in keep]
    rest = [j for j in range(n) if j not in axes]
    dk = 2 ** len(keep)
    if isinstance(state, StateVector):
        t = np.transpose(state.tensor(), axes + rest).reshape(dk, -1)
        rho = t @ t.conj().T
    else:
        t = np.asarray(state.matrix).reshape((2,) * (2 * n))
        t = np.transpose(t, axes + rest + [n + j for j in axes] + [n + j for j in rest])
        dr = 2 ** len(rest)
        rho = np.einsum("arbr->ab", t.reshape(dk, dr, dk, dr))
    return DensityMatrix(rho)


def apply_local(amplitudes, op, party, n):
    """Apply a 2x2 operator to qubit ``party`` (1-based) of a raw amplitude vector."""
    t = np.asarray(amplitudes).reshape(2 ** (party - 1), 2, 2 ** (n - party))
    return np.einsum("ij,ajb->aib", op, t).reshape(-1)


def tensor_product(a, b):
    """``a (x) b`` with the qubits of ``a`` first."""
    check_qubits(a.n + b.n)
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def permute_qubits(state, perm):
    """Reorder qubits.

    ``perm`` lists 1-based qubit labels: qubit ``k`` of the result is qubit
    ``perm[k-1]`` of the input. Composition follows
    ``permute_qubits(permute_qubits(s, p), q) == permute_qubits(s, [p[j-1] for j in q])``.
    """
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, state.n + 1)):
        raise NotAPermutation(f"{perm} is not a permutation of 1..{state.n}")
    t = np.transpose(state.tensor(), [p - 1 for p in perm])
    return StateVector(t.reshape(-1))
