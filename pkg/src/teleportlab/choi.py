"""Operator form of bipartite pure states and entanglement diagnostics.

A pure state of two d-level systems, ``|C> = sum_jk C_jk |j> ⊗ |k>``,
is identified with the d x d matrix C of its amplitudes (the basis
dependent Choi correspondence).  Under this identification the vector
inner product becomes the Hilbert-Schmidt inner product Tr(C^dag D),
and the Schmidt data of the state are the singular values of C.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NormalizationError
from .linalg import as_square_matrix, as_state, dagger, normalize_state
from .tolerances import NORMALIZATION_TOL, RANK_TOL


def vec_to_op(vector, local_dim: int) -> np.ndarray:
    """Reshape a length d^2 amplitude vector into its d x d operator form.

    Row-major: ``C[j, k] = vector[j * d + k]``, the coefficient of
    ``|j> ⊗ |k>``.
    """
    v = as_state(vector)
    if local_dim < 1:
        raise DimensionError("local dimension must be at least 1")
    if v.size != local_dim * local_dim:
        raise DimensionError(
            f"vector of length {v.size} is not bipartite for local dimension {local_dim}"
        )
    return v.reshape(local_dim, local_dim).copy()


def op_to_vec(operator) -> np.ndarray:
    """Inverse of :func:`vec_to_op`: flatten a d x d operator row-major."""
    return as_square_matrix(operator).reshape(-1).copy()


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dag B)."""
    ma = as_square_matrix(a)
    mb = as_square_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionError(f"shape mismatch: {ma.shape} vs {mb.shape}")
    # vdot conjugates its first argument and flattens, which is exactly
    # sum_jk conj(A_jk) B_jk = Tr(A^dag B).
    return complex(np.vdot(ma, mb))


def component_overlap(psi, phi, operator) -> complex:
    """Amplitude <psi ⊗ phi | C> evaluated on the operator side.

    Equals ``<psi| C |phi*>`` where phi* is the entrywise complex
    conjugate of phi in the fixed basis; the conjugation is the price
    of identifying kets with matrix columns.
    """
    vp = as_state(psi)
    vq = as_state(phi)
    m = as_square_matrix(operator)
    if vp.size != m.shape[0] or vq.size != m.shape[0]:
        raise DimensionError("state dimensions must match the operator")
    return complex(vp.conj() @ m @ vq.conj())


class EntanglementClass(enum.Enum):
    """Coarse classification of a bipartite pure state."""

    MAXIMALLY_ENTANGLED = "maximally-entangled"
    PRODUCT = "product"
    GENERIC = "generic"


@dataclass(frozen=True)
class BipartiteState:
    """Normalized pure state of two d-level systems.

    Fields:
        local_dim: dimension d of each factor.
        vector: length d^2 amplitude vector.
        operator_form: the same amplitudes as a d x d matrix,
            ``operator_form[j, k] == vector[j * d + k]`` exactly.
    """

    local_dim: int
    vector: np.ndarray
    operator_form: np.ndarray

    def __post_init__(self):
        d = self.local_dim
        if d < 1:
            raise DimensionError("local dimension must be at least 1")
        if self.vector.shape != (d * d,):
            raise DimensionError(f"vector must have length {d * d}")
        if self.operator_form.shape != (d, d):
            raise DimensionError(f"operator form must be {d} x {d}")
        if not np.array_equal(self.operator_form, self.vector.reshape(d, d)):
            raise ValueError("operator form disagrees with the amplitude vector")
        norm = np.linalg.norm(self.vector)
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(
                f"bipartite state must be normalized: |norm - 1| = {abs(norm - 1.0):.3e}"
            )

    @classmethod
    def from_vector(cls, vector, *, normalize: bool = False) -> "BipartiteState":
        """Build from a length d^2 amplitude vector.

        With ``normalize=True`` the input is rescaled to unit norm;
        otherwise it must already be normalized.
        """
        v = normalize_state(vector) if normalize else as_state(vector).copy()
        d = math.isqrt(v.size)
        if d * d != v.size:
            raise DimensionError(f"vector length {v.size} is not a perfect square")
        v.setflags(write=False)
        op = v.reshape(d, d)
        return cls(local_dim=d, vector=v, operator_form=op)

    @classmethod
    def from_operator(cls, operator, *, normalize: bool = False) -> "BipartiteState":
        """Build from the d x d operator form of the amplitudes."""
        m = as_square_matrix(operator)
        return cls.from_vector(m.reshape(-1), normalize=normalize)


def maximally_entangled_state(local_dim: int) -> BipartiteState:
    """The standard maximally entangled state, operator form 1/sqrt(d)."""
    if local_dim < 1:
        raise DimensionError("local dimension must be at least 1")
    return BipartiteState.from_operator(np.eye(local_dim, dtype=complex) / math.sqrt(local_dim))


def product_state(psi_a, psi_b) -> BipartiteState:
    """The product state psi_a ⊗ psi_b; factors are normalized first."""
    a = normalize_state(psi_a)
    b = normalize_state(psi_b)
    if a.size != b.size:
        raise DimensionError("both factors must have the same dimension")
    # C = |a><b^t|: the operator form of a product vector is the outer
    # product of its factors without conjugation.
    return BipartiteState.from_operator(np.outer(a, b))


@dataclass(frozen=True)
class EntanglementReport:
    """Schmidt data of a bipartite pure state.

    ``entropy`` is the von Neumann entropy of either reduced state,
    -sum sigma^2 ln sigma^2, in nats; it is 0 exactly for product
    states and ln d for maximally entangled ones.
    ``coefficient_entropy`` applies the same formula to the Schmidt
    coefficients with linear instead of squared weights,
    -sum sigma ln sigma; it is reported as a diagnostic and is not
    bounded by ln d.
    """

    schmidt_coefficients: np.ndarray
    entropy: float
    coefficient_entropy: float
    rank: int
    classification: EntanglementClass


def _entropy_term(weights: np.ndarray) -> float:
    # 0 * ln 0 := 0, the usual continuous extension.
    positive = weights[weights > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def analyze_entanglement(state: BipartiteState, *, rank_tol: float = RANK_TOL) -> EntanglementReport:
    """Schmidt spectrum, entropies, rank and classification of ``state``.

    Classification: all coefficients equal (relative spread at most
    ``rank_tol``) is maximally entangled; Schmidt rank one is a product
    state; anything else is generic.  For d = 1 the two notions
    coincide and maximally entangled is reported.
    """
    _require_state(state)
    coeffs = np.linalg.svd(state.operator_form, compute_uv=False)
    rank = int(np.sum(coeffs > rank_tol))
    spread = float(coeffs[0] - coeffs[-1])
    if spread <= rank_tol * coeffs[0]:
        classification = EntanglementClass.MAXIMALLY_ENTANGLED
    elif rank == 1:
        classification = EntanglementClass.PRODUCT
    else:
        classification = EntanglementClass.GENERIC
    coeffs.setflags(write=False)
    return EntanglementReport(
        schmidt_coefficients=coeffs,
        entropy=_entropy_term(coeffs**2),
        coefficient_entropy=_entropy_term(coeffs),
        rank=rank,
        classification=classification,
    )


def reduced_states(state: BipartiteState) -> tuple[np.ndarray, np.ndarray]:
    """Reduced density matrices of the two subsystems.

    In operator form these are rho_A = C C^dag and rho_B = (C^dag C)^t,
    the transpose taken without conjugation.  Both are Hermitian
    positive semidefinite with unit trace.
    """
    _require_state(state)
    c = state.operator_form
    rho_a = c @ dagger(c)
    rho_b = (dagger(c) @ c).T
    rho_a = 0.5 * (rho_a + dagger(rho_a))
    rho_b = 0.5 * (rho_b + dagger(rho_b))
    return rho_a, rho_b


def _require_state(state: BipartiteState) -> None:
    if not isinstance(state, BipartiteState):
        raise TypeError("expected a BipartiteState")
    norm = np.linalg.norm(state.vector)
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError("bipartite state is not normalized")
