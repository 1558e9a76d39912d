"""
Mixed states: spectrum bound versus convex roof
===============================================

For two qubits the lambda-spectrum bound is exact, and a direct search over
ensemble decompositions lands on the same number. For three qubits only the
search is available, and it returns an upper bound.
"""

import numpy as np

from qtangle import (
    ConvexRoofConfig,
    DensityMatrix,
    cat_state,
    convex_roof_minimize,
    ghz_state,
    mixture,
    tau_min_analytic,
    w_state,
)

# Werner family: cat state mixed with white noise
for p in (0.2, 1 / 3, 0.6, 1.0):
    rho = mixture([p, 1 - p], [cat_state(2), DensityMatrix.maximally_mixed(2)])
    print(f"p={p:.3f}  tau_min={tau_min_analytic(rho).value:.6f}")

# convex roof on a random rank-2 two-qubit state
rng = np.random.default_rng(5)
x = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
rho = DensityMatrix(x @ x.conj().T, normalize=True)
roof = convex_roof_minimize(rho, cfg=ConvexRoofConfig(restarts=5))
print(f"analytic {tau_min_analytic(rho).value:.8f}  convex roof {roof.value:.8f}")
print("witness weights:", np.round(roof.witness.probabilities, 4))

# three qubits: the search gives an upper bound only
rho = mixture([0.5, 0.5], [ghz_state(), w_state(3)])
res = convex_roof_minimize(rho, cfg=ConvexRoofConfig(restarts=4))
print(f"(GHZ + W)/2  convex-roof upper bound {res.value:.4f}")
