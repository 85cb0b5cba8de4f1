"""Transfer operators and the teleportation protocol.

For a shared bipartite resource with operator form C and a measurement
basis {B_xi}, the transfer operators are

    T_xi = C^t B_xi^dag        (plain transpose, no conjugation)

and the algebraic heart of teleportation is the exact identity

    |psi> ⊗ |C>  =  sum_xi |B_xi> ⊗ T_xi |psi>

on the triple tensor product: the unknown state reappears on the far
factor, filtered through T_xi, the instant the near pair is expanded in
the measurement basis.  Measuring outcome xi therefore prepares the far
system in T_xi|psi> (normalized) with probability ||T_xi psi||^2, and
the best recovery the receiver can apply is the unitary that undoes the
polar factor of T_xi, leaving |T_xi| psi (normalized).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import BasisStructureError, OperatorBasis, validate_basis
from .choi import BipartiteState
from .errors import DimensionError
from .linalg import as_square_matrix, as_state, dagger, require_normalized
from .tolerances import ZERO_OUTCOME_TOL


@dataclass(frozen=True)
class TeleportSetup:
    """Immutable bundle of resource state, measurement basis and the
    derived transfer operators.

    ``transfer_ops[xi]`` is T_xi; ``transfer_abs[xi]`` caches |T_xi|,
    which drives both the optimal correction and every fidelity formula.
    For a normalized resource, sum_xi Tr(T_xi^dag T_xi) = d.
    """

    local_dim: int
    shared: BipartiteState
    basis: OperatorBasis
    transfer_ops: np.ndarray
    transfer_abs: np.ndarray


@dataclass(frozen=True)
class TeleportOutcome:
    """One measurement event of the protocol.

    ``raw_conditional_state`` is T_xi psi normalized (what the receiver
    holds before correcting), ``corrected_state`` the state after the
    optimal unitary, equal to |T_xi| psi normalized.  For outcomes with
    vanishing probability both states are zero-vector sentinels and the
    conditional fidelity is 0.
    """

    xi: int
    probability: float
    raw_conditional_state: np.ndarray
    corrected_state: np.ndarray
    correction: np.ndarray
    conditional_fidelity: float


def build_setup(shared: BipartiteState, basis: OperatorBasis, *, validate: bool = True,
                validation_trials: int = 4) -> TeleportSetup:
    """Derive the transfer operators for a resource state and basis.

    The basis is validated first (skippable for bases already known
    good); an invalid basis raises :class:`BasisStructureError` naming
    the violated relation.
    """
    if shared.local_dim != basis.local_dim:
        raise DimensionError(
            f"shared state dimension {shared.local_dim} does not match "
            f"basis dimension {basis.local_dim}"
        )
    require_normalized(shared.vector, what="shared state")
    if validate:
        report = validate_basis(basis, trials=validation_trials)
        if not report.passed:
            raise BasisStructureError(
                f"measurement basis violates {report.failed_relation}: residual "
                f"{max(report.orthonormality_residual, report.completeness_residual):.3e} "
                f"exceeds {report.tolerance:.1e}"
            )
    ct = shared.operator_form.T
    transfer_ops = np.matmul(ct, basis.elements.conj().transpose(0, 2, 1))
    transfer_abs = np.empty_like(transfer_ops)
    for xi in range(transfer_ops.shape[0]):
        _, s, vh = np.linalg.svd(transfer_ops[xi])
        p = dagger(vh) @ (s[:, None] * vh)
        transfer_abs[xi] = 0.5 * (p + dagger(p))
    transfer_ops.setflags(write=False)
    transfer_abs.setflags(write=False)
    return TeleportSetup(
        local_dim=shared.local_dim,
        shared=shared,
        basis=basis,
        transfer_ops=transfer_ops,
        transfer_abs=transfer_abs,
    )


def verify_identity(psi, setup: TeleportSetup) -> float:
    """Residual of the teleportation identity for a concrete input state.

    Builds both sides as vectors on the triple tensor product, left side
    psi ⊗ |C>, right side sum_xi |B_xi> ⊗ (T_xi psi), and returns the
    Euclidean norm of their difference.  The identity is exact for any
    orthonormal basis and any shared state, so the residual is floating
    point noise unless the setup is corrupted.
    """
    v = as_state(psi)
    d = setup.local_dim
    if v.size != d:
        raise DimensionError(f"input state must have dimension {d}")
    lhs = np.kron(v, setup.shared.vector)
    t_psi = setup.transfer_ops @ v
    rhs = np.einsum("xi,xm->im", setup.basis.vectors(), t_psi).reshape(-1)
    return float(np.linalg.norm(lhs - rhs))


def outcome_probabilities(psi, setup: TeleportSetup) -> np.ndarray:
    """p(xi | psi) = ||T_xi psi||^2 for every outcome; sums to 1."""
    v = require_normalized(psi, what="input state")
    if v.size != setup.local_dim:
        raise DimensionError(f"input state must have dimension {setup.local_dim}")
    amplitudes = setup.transfer_ops @ v
    return np.einsum("xi,xi->x", amplitudes.conj(), amplitudes).real


def optimal_correction(transfer) -> np.ndarray:
    """The receiver's best recovery unitary for one transfer operator.

    Returns U^dag for the polar decomposition T = U |T|, so that
    applying it to the raw conditional state yields |T| psi normalized.
    On the null space of a singular T the unitary is an arbitrary
    completion, which cannot matter: those directions never receive
    amplitude.
    """
    t = as_square_matrix(transfer)
    u, _, vh = np.linalg.svd(t)
    return dagger(u @ vh)


def realize_outcome(psi, setup: TeleportSetup, xi: int) -> TeleportOutcome:
    """Construct the full outcome record for measurement result ``xi``."""
    v = require_normalized(psi, what="input state")
    if v.size != setup.local_dim:
        raise DimensionError(f"input state must have dimension {setup.local_dim}")
    if not 0 <= xi < len(setup.basis):
        raise DimensionError(f"outcome index {xi} out of range")
    t = setup.transfer_ops[xi]
    t_psi = t @ v
    norm = float(np.linalg.norm(t_psi))
    correction = optimal_correction(t)
    if norm <= ZERO_OUTCOME_TOL:
        zero = np.zeros(setup.local_dim, dtype=complex)
        return TeleportOutcome(
            xi=xi,
            probability=0.0,
            raw_conditional_state=zero,
            corrected_state=zero.copy(),
            correction=correction,
            conditional_fidelity=0.0,
        )
    raw = t_psi / norm
    corrected = correction @ raw
    fidelity = float(np.abs(np.vdot(v, corrected)) ** 2)
    return TeleportOutcome(
        xi=xi,
        probability=norm * norm,
        raw_conditional_state=raw,
        corrected_state=corrected,
        correction=correction,
        conditional_fidelity=fidelity,
    )


def enumerate_outcomes(psi, setup: TeleportSetup) -> list[TeleportOutcome]:
    """Outcome records for all d^2 measurement results, in xi order."""
    return [realize_outcome(psi, setup, xi) for xi in range(len(setup.basis))]


def sample_outcome(psi, setup: TeleportSetup, rng: np.random.Generator) -> TeleportOutcome:
    """Draw one measurement outcome and its conditional data.

    Inverse-CDF sampling over the fixed xi ordering; the probability
    vector is renormalized by its computed sum to absorb float drift, so
    the draw consumes exactly one uniform variate.  Zero-probability
    outcomes are never selected.
    """
    probs = outcome_probabilities(psi, setup)
    total = probs.sum()
    if total <= 0.0:
        raise AssertionError("probability vector vanished for a normalized input")
    cdf = np.cumsum(probs / total)
    draw = rng.random()
    xi = int(np.searchsorted(cdf, draw, side="right"))
    xi = min(xi, len(probs) - 1)
    return realize_outcome(psi, setup, xi)


def state_fidelity(psi, setup: TeleportSetup) -> float:
    """Average teleportation fidelity for one concrete input state.

    With the optimal correction applied on every branch this is

        F(psi) = sum_xi ( <psi| |T_xi| |psi> )^2,

    each term being probability times conditional fidelity.
    """
    v = require_normalized(psi, what="input state")
    if v.size != setup.local_dim:
        raise DimensionError(f"input state must have dimension {setup.local_dim}")
    overlaps = np.einsum("i,xij,j->x", v.conj(), setup.transfer_abs, v).real
    return float(np.sum(overlaps**2))


def state_fidelity_batch(psis: np.ndarray, setup: TeleportSetup) -> np.ndarray:
    """Vectorized :func:`state_fidelity` for rows of ``psis`` (n, d).

    Rows are assumed normalized; this is the Monte-Carlo hot path.
    """
    psis = np.asarray(psis, dtype=complex)
    if psis.ndim != 2 or psis.shape[1] != setup.local_dim:
        raise DimensionError(f"expected shape (n, {setup.local_dim})")
    fidelities = np.zeros(psis.shape[0])
    for xi in range(setup.transfer_abs.shape[0]):
        rotated = psis @ setup.transfer_abs[xi].T
        overlaps = np.einsum("ni,ni->n", psis.conj(), rotated).real
        fidelities += overlaps**2
    return fidelities
