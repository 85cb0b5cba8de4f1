"""Default numerical tolerances.

Chosen with double precision headroom for local dimensions up to a few
dozen.  Operations that gate on a tolerance take these as defaults and
accept overrides.
"""

# Factorizations (SVD, polar) must reconstruct their input this well,
# relative to 1 + the Frobenius norm of the input.
RECONSTRUCTION_TOL = 1e-10

# State vectors must have unit Euclidean norm within this bound.
NORMALIZATION_TOL = 1e-12

# Singular values at or below this threshold count as zero for ranks.
RANK_TOL = 1e-10

# Orthonormality / completeness residual bound for operator bases.
BASIS_TOL = 1e-10

# Conditional states for outcomes with ||T psi|| at or below this norm
# are reported as zero-vector sentinels (the event has no weight).
ZERO_OUTCOME_TOL = 1e-12
