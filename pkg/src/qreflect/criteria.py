"""Separability and reflection-feasibility criteria.

Every test reports its raw spectral witness next to the verdict, so callers
can re-evaluate the decision under a different tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import eig_hermitian, min_eig, rank, svd_values
from .reflections import apply_mask, mask_partial_transpose, mask_total_reflection, spin_flipped_partner
from .stokes import (
    HermitianOperator,
    PSD_TOL,
    StokesTensor,
    _as_operator,
    _check_subset,
    choi_reshuffle,
    identity_times_reduction,
    permute_qubits,
    purity,
    realigned_matrix,
    stokes_as_matrix,
    to_stokes,
)


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    verdict: str  # separable-consistent | entangled | feasible | infeasible
    witness: float
    subset: tuple[int, ...] | None
    tolerance: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict,
            "witness": self.witness,
            "subset": list(self.subset) if self.subset is not None else None,
            "tolerance": self.tolerance,
            **({"extra": self.extra} if self.extra else {}),
        }


def _proper_subset(subset, n: int) -> tuple[int, ...]:
    subset = _check_subset(subset, n)
    if not subset or len(subset) >= n:
        raise ValueError(f"need a nonempty proper subset of 1..{n}, got {subset}")
    return subset


def ppt_test(rho, subset, tol: float = PSD_TOL) -> CriterionReport:
    """Partial-transpose positivity across the given qubit subset.

    Exact for two qubits; for more qubits a negative witness still certifies
    entanglement across the cut.
    """
    op = _as_operator(rho)
    subset = _proper_subset(subset, op.n)
    image = apply_mask(mask_partial_transpose(op.n, subset), op)
    witness = min_eig(image)
    verdict = "entangled" if witness < -tol else "separable-consistent"
    return CriterionReport("ppt", verdict, witness, subset, tol)


def ccn(rho, block=None) -> float:
    """Trace norm of the realigned matrix across a bipartition.

    ``block`` lists the qubits of the left factor (default: the first half).
    Square bipartitions reduce to the reshuffling map; rectangular ones use
    the general realignment, which shares its singular values in the square
    case.
    """
    op = _as_operator(rho)
    if block is None:
        if op.n % 2 != 0:
            raise ValueError("odd qubit counts need an explicit left block")
        block = tuple(range(1, op.n // 2 + 1))
    block = _proper_subset(block, op.n)
    rest = tuple(q for q in range(1, op.n + 1) if q not in block)
    arranged = permute_qubits(op, block + rest)
    d_left, d_right = 2 ** len(block), 2 ** len(rest)
    if d_left == d_right:
        return float(np.sum(svd_values(choi_reshuffle(arranged.matrix))))
    return float(np.sum(svd_values(realigned_matrix(arranged.matrix, d_left, d_right))))


def ccn_via_stokes(s: StokesTensor) -> float:
    """Two-qubit cross norm as half the trace norm of the Stokes matrix."""
    if s.n != 2:
        raise ValueError(f"the Stokes route is defined for n=2, got n={s.n}")
    return float(np.sum(svd_values(stokes_as_matrix(s))) / 2.0)


def ccn_report(rho, block=None, tol: float = PSD_TOL) -> CriterionReport:
    value = ccn(rho, block)
    verdict = "entangled" if value > 1.0 + tol else "separable-consistent"
    return CriterionReport("ccn", verdict, value, block, tol)


def concurrence(rho) -> float:
    """Two-qubit concurrence from the spectrum of ``rho`` times its flip.

    The four numbers entering the max are the square roots of the
    (clamped-nonnegative) eigenvalues of ``rho rho'``, sorted descending.
    """
    op = _as_operator(rho)
    if op.n != 2:
        raise ValueError(f"concurrence is defined for two qubits, got n={op.n}")
    partner = spin_flipped_partner(op)
    vals = np.linalg.eigvals(op.matrix @ partner.matrix).real
    nu = np.sqrt(np.clip(vals, 0.0, None))
    nu.sort()
    return float(max(0.0, nu[3] - nu[2] - nu[1] - nu[0]))


def concurrence_report(rho, tol: float = PSD_TOL) -> CriterionReport:
    value = concurrence(rho)
    verdict = "entangled" if value > tol else "separable-consistent"
    return CriterionReport("concurrence", verdict, value, None, tol)


def lorentz_metric(s: StokesTensor) -> float:
    """Quadratic invariant ``tr(rho rho')`` evaluated on Stokes components."""
    if s.n != 2:
        raise ValueError(f"defined for two qubits, got n={s.n}")
    v = s.values.reshape(4, 4)
    return float(v[0, 0] ** 2 - np.sum(v[0, 1:] ** 2) - np.sum(v[1:, 0] ** 2) + np.sum(v[1:, 1:] ** 2))


def reduction_criterion(rho, traced, tol: float = PSD_TOL) -> CriterionReport:
    """Positivity of ``identity on traced qubits (x) reduced state - rho``.

    A necessary condition for separability; the comparison operator has
    trace ``2**len(traced) - 1`` and so is not itself a state.
    """
    op = _as_operator(rho)
    traced = _proper_subset(traced, op.n)
    comparison = identity_times_reduction(op, traced) - op.matrix
    witness = min_eig(comparison)
    verdict = "entangled" if witness < -tol else "separable-consistent"
    extra = {"trace": float(np.trace(comparison).real)}
    return CriterionReport("reduction", verdict, witness, traced, tol, extra)


def complement(rho) -> HermitianOperator:
    """Total reflection ``2**(1-n) identity - rho``; mixes with the input to
    the maximally mixed state."""
    op = _as_operator(rho)
    dim = 2**op.n
    return HermitianOperator((2.0 / dim) * np.eye(dim) - op.matrix)


def total_reflection_feasible(rho, tol: float = PSD_TOL) -> CriterionReport:
    """Whether the total reflection of a state is again a state.

    Reports the spectral sufficient condition (largest eigenvalue at most
    ``2**(1-n)``), the exact positivity of the reflected operator, the
    purity bound ``tr(rho**2) <= 2**(1-n)``, and the rank bound
    ``rank >= 2**(n-1)``.
    """
    op = _as_operator(rho)
    bound = 2.0 ** (1 - op.n)
    spectrum = eig_hermitian(op).eigenvalues
    reflected = complement(op)
    witness = min_eig(reflected)
    flags = {
        "sufficient_max_eig": bool(spectrum[0] <= bound + tol),
        "exact_psd": bool(witness >= -tol),
        "purity_bound": bool(purity(to_stokes(op)) <= bound + 1e-12),
        "rank_bound": bool(rank(op, tol) >= 2 ** (op.n - 1)),
    }
    verdict = "feasible" if flags["exact_psd"] else "infeasible"
    return CriterionReport("total-reflection", verdict, witness, None, tol, flags)


def reflection_report(rho, subset, tol: float = PSD_TOL) -> CriterionReport:
    """Positivity of the (possibly partial) reflection across ``subset``."""
    op = _as_operator(rho)
    subset = _check_subset(subset, op.n)
    if not subset:
        raise ValueError("the reflected subset must contain at least one qubit")
    image = apply_mask(mask_total_reflection(op.n, subset), op)
    witness = min_eig(image)
    verdict = "feasible" if witness >= -tol else "infeasible"
    return CriterionReport("reflection", verdict, witness, subset, tol)
