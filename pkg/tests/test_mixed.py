import numpy as np
import pytest

from qtangle.errors import OddNUnsupported, UnsupportedSize, WrongQubitCount
from qtangle.linalg import haar_unitary, make_rng
from qtangle.mixed import (
    ConvexRoofConfig,
    check_ckw,
    check_w_equality,
    concurrence_mixed_2q,
    convex_roof_minimize,
    lambda_spectrum,
    spin_flip_density,
    tau_min_analytic,
)
from qtangle.pure import n_tangle, three_tangle
from qtangle.states import (
    DensityMatrix,
    StateVector,
    basis_state,
    cat_state,
    ghz_state,
    mixture,
    partial_trace,
    random_state,
    w_state,
)


def random_density(n, rank, seed):
    rng = np.random.default_rng(seed)
    d = 2**n
    x = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = x @ x.conj().T
    return DensityMatrix(m / np.trace(m).real)


def werner(p):
    return mixture([p, 1 - p], [cat_state(2), DensityMatrix.maximally_mixed(2)])


def werner_concurrence(p):
    # rho~ = rho for this family, so lambdas are its eigenvalues: (1+3p)/4 and (1-p)/4 (x3)
    return max(0.0, (1 + 3 * p) / 4 - 3 * (1 - p) / 4)


def local_unitary_matrix(n, seed):
    rng = make_rng(seed)
    u = np.ones((1, 1))
    for _ in range(n):
        u = np.kron(u, haar_unitary(2, rng))
    return u


# spin-flipped density

def test_spin_flip_density_examples():
    mm = DensityMatrix.maximally_mixed(2)
    np.testing.assert_allclose(spin_flip_density(mm).matrix, mm.matrix, atol=1e-15)
    proj = DensityMatrix.from_state(cat_state(2))
    np.testing.assert_allclose(spin_flip_density(proj).matrix, proj.matrix, atol=1e-15)
    flipped = spin_flip_density(DensityMatrix.from_state(basis_state("00")))
    np.testing.assert_allclose(flipped.matrix, basis_state("11").projector(), atol=1e-15)


def test_spin_flip_density_of_pure_state():
    from qtangle.pure import spin_flip

    psi = random_state(3, 4)
    expected = spin_flip(psi).projector()
    np.testing.assert_allclose(spin_flip_density(DensityMatrix.from_state(psi)).matrix, expected, atol=1e-14)


# lambda spectrum

@pytest.mark.parametrize("n", [2, 3, 4])
def test_lambda_spectrum_of_pure_state(n):
    from qtangle.pure import concurrence_pure

    psi = random_state(n, 9)
    lam = lambda_spectrum(DensityMatrix.from_state(psi)).lambdas
    assert len(lam) == 2**n
    assert abs(lam[0] - concurrence_pure(psi)) < 1e-9
    assert np.all(lam[1:] < 1e-9)


def test_lambda_spectrum_maximally_mixed():
    np.testing.assert_allclose(lambda_spectrum(DensityMatrix.maximally_mixed(2)).lambdas, [0.25] * 4, atol=1e-14)


def test_lambda_spectrum_ghz():
    lam = lambda_spectrum(DensityMatrix.from_state(ghz_state())).lambdas
    # C vanishes for odd n, so every lambda is zero for a pure 3-qubit state
    np.testing.assert_allclose(lam, 0, atol=1e-9)


def test_lambda_spectrum_cat4():
    lam = lambda_spectrum(DensityMatrix.from_state(cat_state(4))).lambdas
    np.testing.assert_allclose(lam, [1] + [0] * 15, atol=1e-9)


@pytest.mark.parametrize("n", [2, 4])
def test_similarity_route_matches_general_eigensolver(n):
    for seed in range(25):
        rho = random_density(n, 1 + seed % 2**n, seed)
        direct = np.linalg.eigvals(rho.matrix @ spin_flip_density(rho).matrix)
        direct = np.sort(np.sqrt(np.clip(direct.real, 0, None)))[::-1]
        lam = lambda_spectrum(rho).lambdas
        assert np.all(np.diff(lam) <= 0)
        np.testing.assert_allclose(lam**2, direct**2, atol=1e-8)


@pytest.mark.parametrize("n", [2, 4])
def test_lambda_spectrum_local_unitary_invariance(n):
    for seed in range(10):
        rho = random_density(n, 3, seed)
        u = local_unitary_matrix(n, 100 + seed)
        rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)
        np.testing.assert_allclose(lambda_spectrum(rotated).lambdas, lambda_spectrum(rho).lambdas, atol=1e-9)


# analytic tau_min

@pytest.mark.parametrize("n", [2, 4, 6])
def test_tau_min_on_pure_states(n):
    for seed in range(10):
        psi = random_state(n, seed)
        res = tau_min_analytic(DensityMatrix.from_state(psi))
        assert res.method == "analytic"
        assert abs(res.value - n_tangle(psi)) < 1e-9


def test_tau_min_examples():
    assert tau_min_analytic(DensityMatrix.maximally_mixed(2)).value == 0
    assert abs(tau_min_analytic(werner(0.9)).value - 0.7225) < 1e-12
    with pytest.raises(OddNUnsupported):
        tau_min_analytic(DensityMatrix.from_state(ghz_state()))


def test_werner_family_closed_form():
    for p in np.linspace(0, 1, 21):
        assert abs(concurrence_mixed_2q(werner(p)) - werner_concurrence(p)) < 1e-12


def test_tau_min_nonincreasing_under_mixing():
    vals = [tau_min_analytic(werner(p)).value for p in np.linspace(1.0, 0.0, 11)]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


def test_concurrence_mixed_examples():
    assert abs(concurrence_mixed_2q(DensityMatrix.from_state(cat_state(2))) - 1) < 1e-12
    assert concurrence_mixed_2q(DensityMatrix.maximally_mixed(2)) == 0
    assert abs(concurrence_mixed_2q(partial_trace(w_state(3), [1, 2])) - 2 / 3) < 1e-12
    with pytest.raises(WrongQubitCount):
        concurrence_mixed_2q(DensityMatrix.from_state(ghz_state()))


def test_concurrence_mixed_product_state_is_zero():
    rho = DensityMatrix(np.kron(np.diag([0.3, 0.7]), np.diag([0.6, 0.4])))
    assert concurrence_mixed_2q(rho) == 0


# convex roof

def test_convex_roof_pure_state():
    psi = random_state(2, 3)
    res = convex_roof_minimize(DensityMatrix.from_state(psi))
    assert len(res.witness) == 1
    assert abs(res.value - n_tangle(psi)) < 1e-12


def test_convex_roof_cat_plus_basis():
    rho = mixture([0.5, 0.5], [cat_state(2), basis_state("01")])
    target = concurrence_mixed_2q(rho) ** 2
    res = convex_roof_minimize(rho, cfg=ConvexRoofConfig(restarts=5))
    assert res.method == "convex-roof"
    assert abs(res.value - target) < 1e-4
    assert res.value >= target - 1e-6


def test_convex_roof_witness_reconstructs_state():
    rho = random_density(2, 2, 7)
    res = convex_roof_minimize(rho, cfg=ConvexRoofConfig(restarts=3))
    ens = res.witness
    assert abs(ens.probabilities.sum() - 1) < 1e-9
    assert np.all(ens.probabilities >= 0)
    assert np.linalg.norm(ens.density() - rho.matrix) < 1e-7
    assert abs(ens.average(lambda a: np.array([n_tangle(StateVector(x)) for x in a])) - res.value) < 1e-9


def test_convex_roof_bounded_by_eigen_ensemble():
    rho = random_density(2, 3, 11)
    evals, evecs = np.linalg.eigh(rho.matrix)
    trivial = sum(p * n_tangle(StateVector(v)) for p, v in zip(evals, evecs.T) if p > 1e-12)
    res = convex_roof_minimize(rho, cfg=ConvexRoofConfig(restarts=3))
    assert res.value <= trivial + 1e-12
    assert res.value >= tau_min_analytic(rho).value - 1e-6


def test_convex_roof_is_reproducible():
    rho = random_density(2, 2, 5)
    cfg = ConvexRoofConfig(restarts=3, seed=4)
    assert convex_roof_minimize(rho, cfg=cfg).value == convex_roof_minimize(rho, cfg=cfg).value


def test_convex_roof_ghz_w_mixture_upper_bound():
    rho = mixture([0.5, 0.5], [ghz_state(), w_state(3)])
    res = convex_roof_minimize(rho, cfg=ConvexRoofConfig(restarts=4))
    assert 0 <= res.value <= 0.5


def test_ghz_w_mixture_has_zero_tangle_decomposition():
    # three superpositions at GHZ weight p0 = 4c/(3+4c), c = 2^(1/3), plus W itself
    c = 2 ** (1 / 3)
    p0 = 4 * c / (3 + 4 * c)
    g, w = ghz_state().amplitudes, w_state(3).amplitudes
    members = [np.sqrt(p0) * g - np.exp(2j * np.pi * k / 3) * np.sqrt(1 - p0) * w for k in range(3)]
    q = 0.5 / p0
    rho = q * sum(np.outer(v, v.conj()) for v in members) / 3 + (1 - q) * np.outer(w, w)
    np.testing.assert_allclose(rho, mixture([0.5, 0.5], [ghz_state(), w_state(3)]).matrix, atol=1e-14)
    assert max(three_tangle(StateVector(v)) for v in members) < 1e-12


def test_convex_roof_size_guard():
    with pytest.raises(UnsupportedSize):
        convex_roof_minimize(DensityMatrix.maximally_mixed(5))


# identity checks

def test_ckw_named():
    rep = check_ckw(ghz_state())
    assert abs(rep.lhs - 1) < 1e-12 and rep.residual < 1e-12
    assert rep.terms["tau_12"] < 1e-12 and rep.terms["tau_13"] < 1e-12
    rep = check_ckw(w_state(3))
    assert abs(rep.lhs - 8 / 9) < 1e-12
    assert abs(rep.terms["tau_12"] - 4 / 9) < 1e-12
    assert rep.residual < 1e-12


def test_ckw_random_states():
    for seed in range(50):
        assert check_ckw(random_state(3, seed)).residual < 1e-8


def test_ckw_wrong_size():
    with pytest.raises(WrongQubitCount):
        check_ckw(cat_state(4))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_w_equality_closed_forms(n):
    rep = check_w_equality(n)
    assert rep.residual < 1e-9
    assert abs(rep.rhs - 4 * (n - 1) / n**2) < 1e-12
    for value in rep.terms.values():
        assert abs(value - (2 / n) ** 2) < 1e-12


def test_w_equality_range():
    with pytest.raises(UnsupportedSize):
        check_w_equality(2)
    with pytest.raises(UnsupportedSize):
        check_w_equality(7)


def test_cat_reductions_have_zero_concurrence():
    for n in (3, 4, 5):
        for j in range(2, n + 1):
            assert concurrence_mixed_2q(partial_trace(cat_state(n), [1, j])) < 1e-12
