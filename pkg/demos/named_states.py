"""
Tangles of familiar states
==========================

Cat states carry one unit of n-tangle, W states carry none, and a product
of two singlets still registers as fully tangled at four qubits.
"""

import numpy as np

from qtangle import StateVector, cat_state, ghz_state, n_tangle, singlet_pairs, three_tangle, w_state

# three qubits: the two inequivalent classes
print("GHZ  3-tangle:", three_tangle(ghz_state()))
print("W    3-tangle:", three_tangle(w_state(3)))

# even n: cat states saturate, W states vanish
for n in (2, 4, 6):
    print(f"n={n}  CAT {n_tangle(cat_state(n)):.6f}   W {n_tangle(w_state(n)):.2e}")

# two independent singlets are not genuinely four-party entangled,
# yet the 4-tangle is 1
print("singlet x singlet:", n_tangle(singlet_pairs(2)))

# superposing cat and W interpolates between the two
for t in np.linspace(0, 1, 5):
    amps = np.sqrt(t) * cat_state(4).amplitudes + np.sqrt(1 - t) * w_state(4).amplitudes
    amps /= np.linalg.norm(amps)
    print(f"t={t:.2f}  tau={n_tangle(StateVector(amps)):.4f}")
