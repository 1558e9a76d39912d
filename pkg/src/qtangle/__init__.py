"""n-tangle and related entanglement measures for n-qubit states."""

from .errors import *  # noqa: F401,F403
from .io import parse_density, parse_state, serialize_density, serialize_state
from .linalg import Spectrum, eig_hermitian, haar_unitary, make_rng, sqrt_psd
from .mixed import (
    ConvexRoofConfig,
    Ensemble,
    LambdaSpectrum,
    TauMinResult,
    check_ckw,
    check_w_equality,
    concurrence_mixed_2q,
    convex_roof_minimize,
    lambda_spectrum,
    spin_flip_density,
    tau_min_analytic,
)
from .monotone import (
    MeasurementOutcome,
    MonotoneReport,
    PovmPair,
    apply_povm,
    make_povm_pair,
    monotone_trial,
    random_povm_pair,
    run_monotone_suite,
)
from .pure import (
    concurrence_pure,
    epsilon_contraction_oracle,
    n_tangle,
    spin_flip,
    tangle_one_vs_rest,
    three_tangle,
)
from .states import (
    DensityMatrix,
    NamedStateKind,
    StateVector,
    basis_state,
    cat_state,
    ghz_state,
    make_named_state,
    mixture,
    partial_trace,
    permute_qubits,
    random_state,
    singlet_pairs,
    tensor_product,
    w_state,
)

__version__ = "0.1.0"
