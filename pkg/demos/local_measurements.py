"""
Tangle never grows on average under local measurement
=====================================================

A two-outcome POVM on one qubit splits a state into two branches. The
probability-weighted tangle of the branches stays at or below the tangle
before measurement.
"""

from qtangle import (
    apply_povm,
    cat_state,
    make_povm_pair,
    n_tangle,
    random_povm_pair,
    random_state,
    run_monotone_suite,
)

psi = random_state(4, seed=11)
pair = random_povm_pair(seed=3)
o1, o2 = apply_povm(psi, pair, party=2)

before = n_tangle(psi)
after = o1.p * n_tangle(o1.phi) + o2.p * n_tangle(o2.phi)
print(f"before {before:.6f}  after {after:.6f}  ratio {after / before:.6f}")

# a projective measurement on a cat state destroys the tangle entirely
o1, o2 = apply_povm(cat_state(4), make_povm_pair(1, 0), party=1)
print("projective on CAT4:", o1.p * n_tangle(o1.phi) + o2.p * n_tangle(o2.phi))

# a larger seeded sweep
for n in (2, 3, 4, 6):
    rep = run_monotone_suite(n, trials=500, seed=0)
    print(f"n={n}  max ratio {rep.max_ratio:.9f}  violations {rep.violations}  skipped {rep.skipped}")
