#!/usr/bin/env python3
"""Bipartite state vectors and their operator form.

A pure state of two d-level systems has d^2 amplitudes.  Reading them
row-major as a d x d matrix C turns vector algebra into matrix algebra:
the inner product of two states becomes Tr(C^dag D), and amplitudes
against product states become matrix elements of C.
"""

import numpy as np

from teleportlab import (
    component_overlap,
    hs_inner,
    op_to_vec,
    vec_to_op,
)

d = 2

# The four amplitudes of (|00> + |11>)/sqrt(2) fold into the matrix
# identity/sqrt(2): one row per left index, one column per right index.
phi_plus = np.array([1, 0, 0, 1]) / np.sqrt(2)
c = vec_to_op(phi_plus, d)
print("amplitudes:", phi_plus)
print("operator form:\n", c)

# The correspondence is a pure reindexing, so it round-trips exactly.
print("round trip exact:", np.array_equal(op_to_vec(c), phi_plus))

# Vector inner products equal Hilbert-Schmidt inner products.
rng = np.random.default_rng(1)
a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
b = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
vector_side = np.vdot(op_to_vec(a), op_to_vec(b))
operator_side = hs_inner(a, b)
print("vector <A|B>   :", vector_side)
print("operator Tr A^dag B:", operator_side)
print("difference     :", abs(vector_side - operator_side))

# Amplitudes against product states are matrix elements, with a complex
# conjugation on the right factor: <psi ⊗ phi | C> = <psi| C |phi*>.
psi = np.array([1.0, 0.0])
phi = np.array([0.0, 1.0])
print("<0 ⊗ 1 | phi_plus> =", component_overlap(psi, phi, c), "(orthogonal branch)")
print("<0 ⊗ 0 | phi_plus> =", component_overlap(psi, psi, c), "(should be 1/sqrt(2))")
