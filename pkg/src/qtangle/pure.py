"""Pure-state measures: spin flip, concurrence and the n-tangle.

The n-tangle is the quartic contraction of four copies of the amplitude
tensor with ``2n`` antisymmetric symbols ``eps`` (``eps[0,1] = 1``,
``eps[1,0] = -1``, zero diagonal). On qubits other than a distinguished one
the symbols pair copy 1 with copy 2 and copy 3 with copy 4; on the
distinguished qubit they pair copy 1 with 3 and copy 2 with 4.

For even ``n`` the contraction equals ``|<psi|psi~>|**2`` and
:func:`n_tangle` uses that O(2**n) route. The literal sum over all
``2**(4n)`` index combinations lives in :func:`epsilon_contraction_oracle`
and is only used to check the fast path.
"""

import numpy as np

from .errors import IndexOutOfRange, OracleTooLarge, UndefinedForOddN, WrongQubitCount
from .states import StateVector, partial_trace

EPSILON = np.array([[0.0, 1.0], [-1.0, 0.0]])

ORACLE_DEFAULT_MAX = 4
ORACLE_HARD_MAX = 6


def _popcount_parity(dim):
    idx = np.arange(dim)
    weight = np.zeros(dim, dtype=np.int64)
    while np.any(idx):
        weight += idx & 1
        idx >>= 1
    return weight & 1


def _spin_flip_array(a, n):
    # (sigma_y)_{ij} = -i eps_{ij}: component x picks up (-i)^n (-1)^{|x|} conj(a[~x])
    signs = 1 - 2 * _popcount_parity(a.shape[-1])
    return (-1j) ** n * signs * np.conj(a[..., ::-1])


def spin_flip(state):
    """``sigma_y^{(x)n} |psi*>`` with ``(sigma_y)_{ij} = -i eps_{ij}``.

    Reversing the flat index is the same as complementing every bit, which
    is why the conjugated amplitudes are simply read backwards.
    """
    return StateVector(_spin_flip_array(state.amplitudes, state.n))


def _concurrence_array(a, n):
    # a may be a single vector or a stack of vectors along the last axis
    flipped = _spin_flip_array(a, n)
    return np.abs(np.sum(np.conj(a) * flipped, axis=-1))


def concurrence_pure(state):
    """Generalized pure-state concurrence ``|<psi|psi~>|``.

    Vanishes identically for odd ``n``. Callers wanting the squared form
    square the result themselves.
    """
    return float(_concurrence_array(state.amplitudes, state.n))


def _three_tangle_array(a):
    # contract qubits 1 and 2 first: T[x, y] = sum a[i,j,x] a[k,l,y] eps[i,k] eps[j,l]
    t = a.reshape(a.shape[:-1] + (2, 2, 2))
    m = np.einsum("...ijx,...kly,ik,jl->...xy", t, t, EPSILON, EPSILON)
    s = np.einsum("...ab,...cd,ac,bd->...", m, m, EPSILON, EPSILON)
    return 2.0 * np.abs(s)


def three_tangle(state):
    """Residual (three-way) tangle of a 3-qubit pure state."""
    if state.n != 3:
        raise WrongQubitCount(f"three_tangle needs 3 qubits, got {state.n}")
    return float(_three_tangle_array(state.amplitudes))


def tangle_defined(n):
    return n == 3 or (n >= 2 and n % 2 == 0)


def n_tangle(state):
    """The n-tangle for even ``n`` or ``n = 3``.

    Raises
    ------
    UndefinedForOddN
        For odd ``n`` other than 3, where the defining contraction depends on
        how the qubits are labelled.
    """
    n = state.n
    if n == 3:
        return three_tangle(state)
    if n % 2:
        raise UndefinedForOddN(f"the n-tangle is undefined for odd n={n} (only n=3 is allowed)")
    return concurrence_pure(state) ** 2


def batch_tangle(amplitudes, n):
    """n-tangle of every row of a ``(m, 2**n)`` array of normalized states."""
    a = np.asarray(amplitudes, dtype=np.complex128)
    if n == 3:
        return _three_tangle_array(a)
    if n % 2 or n < 2:
        raise UndefinedForOddN(f"the n-tangle is undefined for n={n}")
    return _concurrence_array(a, n) ** 2


def _eps_tables(n, k):
    # pair[x, y] = prod_{j != k} eps(x_j, y_j); last[x, y] = eps(x_k, y_k)
    dim = 2**n
    bits = (np.arange(dim)[:, None] >> np.arange(n - 1, -1, -1)) & 1
    pair = np.ones((dim, dim))
    for j in range(n):
        e = EPSILON[bits[:, j][:, None], bits[:, j][None, :]]
        if j == k - 1:
            last = e
        else:
            pair = pair * e
    return pair, last


def epsilon_contraction_oracle(state, last_pair_qubit=None, allow_large=False):
    """Literal n-tangle contraction, summed over every ``(alpha, beta, gamma, delta)``.

    Parameters
    ----------
    state : StateVector
    last_pair_qubit : int, optional
        1-based qubit carrying the ``eps(alpha, gamma) eps(beta, delta)``
        pair. Defaults to ``n``.
    allow_large : bool
        Permit ``n`` up to 6 (``2**24`` terms). Without it ``n`` is capped at 4.

    Returns
    -------
    float
        Twice the modulus of the sum. For even ``n`` and ``n = 3`` this does
        not depend on ``last_pair_qubit``; for other odd ``n`` it generally does.
    """
    n = state.n
    k = n if last_pair_qubit is None else int(last_pair_qubit)
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"last_pair_qubit {k} outside 1..{n}")
    cap = ORACLE_HARD_MAX if allow_large else ORACLE_DEFAULT_MAX
    if n > cap:
        hint = "" if allow_large else " (pass allow_large=True for up to 6)"
        raise OracleTooLarge(f"oracle limited to n <= {cap}{hint}, got n={n}")
    a = state.amplitudes
    pair, last = _eps_tables(n, k)
    # beta, gamma, delta vectorized; alpha looped in index order
    gd = (a[:, None] * a[None, :]) * pair  # [gamma, delta]
    total = 0j
    for alpha in range(a.size):
        ab = a[alpha] * a * pair[alpha]  # [beta]
        terms = ab[:, None, None] * gd[None, :, :] * last[alpha][None, :, None] * last[:, None, :]
        total += terms.sum()
    return float(2.0 * abs(total))


def tangle_one_vs_rest(state, i):
    """Squared concurrence between qubit ``i`` and the rest: ``4 det(rho_i)``."""
    if state.n < 2:
        raise WrongQubitCount("need at least 2 qubits")
    if not 1 <= i <= state.n:
        raise IndexOutOfRange(f"qubit index {i} outside 1..{state.n}")
    rho = np.asarray(partial_trace(state, [i]).matrix)
    return float(max(0.0, 4.0 * np.linalg.det(rho).real))
