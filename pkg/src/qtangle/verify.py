"""Seeded verification suites shared by the CLI and the test-suite.

Each suite returns a :class:`SuiteResult` listing every residual it checked.
Trial ``t`` of a suite seeded with ``seed`` draws its randomness from
``derive_seed(seed, t)``.
"""

import itertools
from dataclasses import dataclass, field

from .errors import UnsupportedSize
from .linalg import derive_seed, haar_unitary, make_rng
from .mixed import check_ckw, check_w_equality
from .monotone import run_monotone_suite
from .pure import epsilon_contraction_oracle, n_tangle, tangle_defined
from .states import StateVector, apply_local, ghz_state, permute_qubits, random_state, w_state

SUITES = ("monotone", "ckw", "weq", "oracle", "luinv", "perm")

DEFAULT_TOL = {
    "monotone": 1e-9,
    "ckw": 1e-8,
    "weq": 1e-9,
    "oracle": 1e-9,
    "luinv": 1e-9,
    "perm": 1e-9,
}

DEFAULT_TRIALS = {"monotone": 1000, "ckw": 200, "oracle": 200, "luinv": 100, "perm": 100}


@dataclass
class SuiteResult:
    suite: str
    tol: float
    residuals: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def max_residual(self):
        return max(self.residuals, default=0.0)

    @property
    def passed(self):
        return all(r <= self.tol for r in self.residuals)


def random_local_unitary(state, rng):
    """Apply an independent Haar unitary to every qubit."""
    a = state.amplitudes
    for q in range(1, state.n + 1):
        a = apply_local(a, haar_unitary(2, rng), q, state.n)
    return StateVector(a)


def suite_ckw(trials, seed, tol):
    res = SuiteResult("ckw", tol)
    named = {"ghz": ghz_state(), "w3": w_state(3)}
    for name, psi in named.items():
        res.details[name] = check_ckw(psi).residual
        res.residuals.append(res.details[name])
    for t in range(trials):
        res.residuals.append(check_ckw(random_state(3, derive_seed(seed, t))).residual)
    return res


def suite_weq(n, tol):
    res = SuiteResult("weq", tol)
    ns = [n] if n is not None else [3, 4, 5, 6]
    for k in ns:
        rep = check_w_equality(k)
        res.details[f"n={k}"] = {"lhs": rep.lhs, "rhs": rep.rhs}
        res.residuals.append(rep.residual)
    return res


def suite_oracle(n, trials, seed, tol):
    if not tangle_defined(n) or n > 6:
        raise UnsupportedSize(f"oracle suite needs even n <= 6 or n = 3, got n={n}")
    res = SuiteResult("oracle", tol)
    for t in range(trials):
        psi = random_state(n, derive_seed(seed, t))
        oracle = epsilon_contraction_oracle(psi, allow_large=True)
        res.residuals.append(abs(n_tangle(psi) - oracle))
    return res


def suite_luinv(n, trials, seed, tol):
    if not tangle_defined(n):
        raise UnsupportedSize(f"tangle undefined for n={n}")
    res = SuiteResult("luinv", tol)
    for t in range(trials):
        rng = make_rng(derive_seed(seed, t))
        psi = random_state(n, rng)
        res.residuals.append(abs(n_tangle(random_local_unitary(psi, rng)) - n_tangle(psi)))
    return res


def suite_perm(n, trials, seed, tol):
    """Random permutations plus every transposition."""
    if not tangle_defined(n):
        raise UnsupportedSize(f"tangle undefined for n={n}")
    res = SuiteResult("perm", tol)
    transpositions = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        p = list(range(1, n + 1))
        p[i - 1], p[j - 1] = j, i
        transpositions.append(p)
    for t in range(trials):
        rng = make_rng(derive_seed(seed, t))
        psi = random_state(n, rng)
        tau = n_tangle(psi)
        perms = [list(rng.permutation(n) + 1)] + transpositions
        res.residuals.extend(abs(n_tangle(permute_qubits(psi, p)) - tau) for p in perms)
    return res


def suite_monotone(n, trials, seed, tol):
    report = run_monotone_suite(n, trials, seed, tol)
    res = SuiteResult("monotone", tol)
    # residual = excess of the ratio over 1, floored at 0
    res.residuals = [max(0.0, r.ratio - 1.0) for r in report.records if r.ratio is not None]
    res.details = {"max_ratio": report.max_ratio, "violations": report.violations,
                   "skipped": report.skipped}
    return res


def run_suite(name, n=None, trials=None, seed=0, tol=None):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    tol = DEFAULT_TOL[name] if tol is None else tol
    trials = DEFAULT_TRIALS.get(name, 0) if trials is None else trials
    if name == "ckw":
        return suite_ckw(trials, seed, tol)
    if name == "weq":
        return suite_weq(n, tol)
    n = 4 if n is None else n
    return {
        "monotone": suite_monotone,
        "oracle": suite_oracle,
        "luinv": suite_luinv,
        "perm": suite_perm,
    }[name](n, trials, seed, tol)


def odd_n_spread(state):
    """Oracle values for every distinguished-qubit placement (n <= 6)."""
    return [epsilon_contraction_oracle(state, k, allow_large=True) for k in range(1, state.n + 1)]

