"""Pauli-basis representations of multiqubit operators.

Conventions used throughout the package:

* Qubits are numbered 1..n and qubit 1 is the leftmost Kronecker factor
  (subsystem A).
* A multi-index ``(j1, ..., jn)`` with digits in {0, 1, 2, 3} is linearised
  in base-4 row-major order, so qubit 1 carries the most significant digit.
* The operator basis consists of tensor products of the rescaled Pauli
  matrices ``lambda_j = sigma_j / sqrt(2)``, which are orthonormal for the
  Hilbert-Schmidt inner product.  The coefficient of the all-zero index is
  pinned to ``2**(-n/2)`` by the unit trace.

The real unfolding ``sigma(rho)`` maps the one-qubit basis as

    lambda_0 -> sqrt(2) E00,   lambda_1 -> sqrt(2) E10,
    lambda_2 -> sqrt(2) E01,   lambda_3 -> sqrt(2) E11,

extended linearly and multiplicatively over tensor factors.  Column-stacking
the result and dividing by sqrt(2) per factor recovers the Stokes values.
"""

from __future__ import annotations

import itertools
import math
import string
from typing import Iterable, Sequence

import numpy as np

QUBIT_LIMIT = 6
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

LAMBDA = PAULI / math.sqrt(2.0)

_LETTERS = string.ascii_lowercase


def qubit_count(dim: int) -> int:
    """Number of qubits for Hilbert-space dimension ``dim`` (must be 2**n)."""
    if dim <= 1:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    n = dim.bit_length() - 1
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if n > QUBIT_LIMIT:
        raise ValueError(f"supported qubit counts are 1..{QUBIT_LIMIT}, got {n}")
    return n


def multi_indices(n: int) -> Iterable[tuple[int, ...]]:
    """All base-4 multi-indices for ``n`` qubits, in linear (row-major) order."""
    return itertools.product(range(4), repeat=n)


def index_offset(index: Sequence[int]) -> int:
    """Linear offset of a multi-index in the base-4 row-major layout."""
    offset = 0
    for digit in index:
        offset = 4 * offset + digit
    return offset


def basis_element(index: Sequence[int]) -> np.ndarray:
    """Tensor product of rescaled Pauli matrices for a base-4 multi-index.

    The result is Hermitian and the family over all multi-indices is
    orthonormal under the Hilbert-Schmidt inner product.
    """
    digits = tuple(int(d) for d in index)
    if not 1 <= len(digits) <= QUBIT_LIMIT:
        raise ValueError(f"multi-index length must be 1..{QUBIT_LIMIT}")
    if any(d not in (0, 1, 2, 3) for d in digits):
        raise ValueError(f"multi-index digits must lie in 0..3, got {digits}")
    out = LAMBDA[digits[0]]
    for d in digits[1:]:
        out = np.kron(out, LAMBDA[d])
    return out


class HermitianOperator:
    """A trace-one Hermitian operator on ``n`` qubits.

    Positivity is not required, so images of density operators under
    nonpositive maps remain representable.
    """

    __slots__ = ("_n", "_matrix")

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        n = qubit_count(m.shape[0])
        herm_defect = np.abs(m - m.conj().T).max()
        if herm_defect > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
        trace = m.trace()
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must equal 1, got {trace:.12g}")
        m.setflags(write=False)
        self._n = n
        self._matrix = m

    @property
    def n(self) -> int:
        return self._n

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self._n})"


class DensityState(HermitianOperator):
    """A positive-semidefinite trace-one operator (a physical state)."""

    __slots__ = ()

    def __init__(self, matrix, tol: float = PSD_TOL):
        super().__init__(matrix)
        smallest = np.linalg.eigvalsh((self._matrix + self._matrix.conj().T) / 2)[0]
        if smallest < -tol:
            raise ValueError(f"matrix has a negative eigenvalue {smallest:.3e}")


class StokesTensor:
    """Real coefficients of a trace-one operator in the lambda tensor basis.

    ``values`` has length ``4**n`` in base-4 row-major multi-index order and
    ``values[0]`` equals ``2**(-n/2)``.
    """

    __slots__ = ("_n", "_values")

    def __init__(self, values):
        v = np.array(values, dtype=float)
        if v.ndim != 1:
            raise ValueError(f"expected a flat value array, got shape {v.shape}")
        n = round(math.log(v.size, 4)) if v.size > 1 else 0
        if n < 1 or 4**n != v.size or n > QUBIT_LIMIT:
            raise ValueError(f"value count {v.size} is not 4**n for n in 1..{QUBIT_LIMIT}")
        affine = 2.0 ** (-n / 2)
        if abs(v[0] - affine) > TRACE_TOL:
            raise ValueError(f"affine component must equal 2**(-{n}/2), got {v[0]:.12g}")
        v.setflags(write=False)
        self._n = n
        self._values = v

    @property
    def n(self) -> int:
        return self._n

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __repr__(self) -> str:
        return f"StokesTensor(n={self._n})"


class RealDensityMatrix:
    """Real ``2**n x 2**n`` unfolding of a Stokes tensor.

    The top-left entry always equals 1 (the rescaled trace component).
    """

    __slots__ = ("_n", "_entries")

    def __init__(self, entries):
        e = np.array(entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {e.shape}")
        n = qubit_count(e.shape[0])
        if abs(e[0, 0] - 1.0) > TRACE_TOL:
            raise ValueError(f"top-left entry must equal 1, got {e[0, 0]:.12g}")
        e.setflags(write=False)
        self._n = n
        self._entries = e

    @property
    def n(self) -> int:
        return self._n

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __repr__(self) -> str:
        return f"RealDensityMatrix(n={self._n})"


def _as_operator(op) -> HermitianOperator:
    if isinstance(op, HermitianOperator):
        return op
    return HermitianOperator(op)


def to_stokes(op) -> StokesTensor:
    """Expansion coefficients ``tr(rho Lambda_idx)`` of a trace-one operator."""
    op = _as_operator(op)
    n = op.n
    t = op.matrix.reshape((2,) * (2 * n))
    rows, cols, outs = _LETTERS[:n], _LETTERS[n : 2 * n], _LETTERS[2 * n : 3 * n]
    terms = [rows + cols] + [f"{outs[m]}{cols[m]}{rows[m]}" for m in range(n)]
    expr = ",".join(terms) + "->" + outs
    values = np.einsum(expr, t, *([LAMBDA] * n), optimize=True)
    return StokesTensor(values.real.reshape(-1))


def _matrix_from_values(n: int, values: np.ndarray) -> np.ndarray:
    """Contract arbitrary real coefficients against the lambda basis."""
    t = np.asarray(values, dtype=float).reshape((4,) * n)
    rows, cols, outs = _LETTERS[:n], _LETTERS[n : 2 * n], _LETTERS[2 * n : 3 * n]
    terms = [outs] + [f"{outs[m]}{rows[m]}{cols[m]}" for m in range(n)]
    expr = ",".join(terms) + "->" + rows + cols
    out = np.einsum(expr, t, *([LAMBDA] * n), optimize=True)
    return out.reshape(2**n, 2**n)


def from_stokes(s: StokesTensor) -> HermitianOperator:
    """Inverse of :func:`to_stokes`."""
    return HermitianOperator(_matrix_from_values(s.n, s.values))


def to_real_density(s: StokesTensor) -> RealDensityMatrix:
    """Real unfolding of a Stokes tensor, multiplicative over tensor factors."""
    n = s.n
    v = s.values.reshape((2,) * (2 * n))
    # Splitting each base-4 axis in C order yields axis pairs (col, row).
    perm = list(range(1, 2 * n, 2)) + list(range(0, 2 * n, 2))
    entries = v.transpose(perm).reshape(2**n, 2**n) * 2.0 ** (n / 2)
    return RealDensityMatrix(entries)


def real_density_to_stokes(sigma) -> StokesTensor:
    """Recover Stokes values by column-stacking, one sqrt(2) per factor."""
    entries = sigma.entries if isinstance(sigma, RealDensityMatrix) else np.asarray(sigma, dtype=float)
    n = qubit_count(entries.shape[0])
    t = entries.reshape((2,) * (2 * n))
    perm = [axis for m in range(n) for axis in (n + m, m)]
    values = t.transpose(perm).reshape(4**n) / 2.0 ** (n / 2)
    return StokesTensor(values)


def stokes_as_matrix(s: StokesTensor) -> np.ndarray:
    """Two-qubit Stokes values as the 4x4 array ``2 * values[j, k]``."""
    if s.n != 2:
        raise ValueError(f"the square Stokes matrix is defined for n=2, got n={s.n}")
    return 2.0 * s.values.reshape(4, 4)


def choi_reshuffle(m) -> np.ndarray:
    """Self-inverse reshuffling of a bipartite ``d**2 x d**2`` matrix.

    Defined via column-stacking so that a product ``A^T (x) B`` is sent to
    the rank-one matrix ``col(B) col(A^T)^T``.
    """
    m = np.asarray(m)
    dim = m.shape[0]
    if m.ndim != 2 or m.shape[1] != dim:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    d = math.isqrt(dim)
    if d * d != dim:
        raise ValueError(f"dimension {dim} does not split into d x d blocks")
    return m.reshape(d, d, d, d).transpose(3, 1, 2, 0).reshape(dim, dim)


def realigned_matrix(m, d_left: int, d_right: int) -> np.ndarray:
    """Rectangular realignment of a ``(d_left*d_right)``-dimensional matrix.

    Rows are indexed by the left-factor index pair and columns by the right
    one, so the result is ``d_left**2 x d_right**2``.  Its singular values
    match those of :func:`choi_reshuffle` in the square case.
    """
    m = np.asarray(m)
    dim = d_left * d_right
    if m.shape != (dim, dim):
        raise ValueError(f"expected shape {(dim, dim)}, got {m.shape}")
    t = m.reshape(d_left, d_right, d_left, d_right)
    return t.transpose(0, 2, 1, 3).reshape(d_left * d_left, d_right * d_right)


def tensor_product(a, b) -> HermitianOperator:
    """Kronecker product of two trace-one operators; qubit counts add."""
    a, b = _as_operator(a), _as_operator(b)
    if a.n + b.n > QUBIT_LIMIT:
        raise ValueError(f"combined qubit count {a.n + b.n} exceeds {QUBIT_LIMIT}")
    return HermitianOperator(np.kron(a.matrix, b.matrix))


def _check_subset(subset, n: int) -> tuple[int, ...]:
    qubits = sorted({int(q) for q in subset})
    if any(q < 1 or q > n for q in qubits):
        raise ValueError(f"qubit labels must lie in 1..{n}, got {qubits}")
    return tuple(qubits)


def partial_trace(op, keep) -> HermitianOperator:
    """Reduced operator on the kept qubits (1-based), in their original order."""
    op = _as_operator(op)
    kept = _check_subset(keep, op.n)
    if not kept:
        raise ValueError("must keep at least one qubit")
    traced = [q for q in range(1, op.n + 1) if q not in kept]
    t = op.matrix.reshape((2,) * (2 * op.n))
    remaining = op.n
    for q in sorted(traced, reverse=True):
        t = np.trace(t, axis1=q - 1, axis2=q - 1 + remaining)
        remaining -= 1
    d = 2 ** len(kept)
    return HermitianOperator(t.reshape(d, d))


def partial_trace_stokes(s: StokesTensor, keep) -> StokesTensor:
    """Stokes-domain partial trace: keep the sub-tensor with traced digits 0."""
    kept = _check_subset(keep, s.n)
    if not kept:
        raise ValueError("must keep at least one qubit")
    v = s.values.reshape((4,) * s.n)
    picker = tuple(slice(None) if q in kept else 0 for q in range(1, s.n + 1))
    scale = math.sqrt(2.0) ** (s.n - len(kept))
    return StokesTensor(v[picker].reshape(-1) * scale)


def identity_times_reduction(op, subset) -> np.ndarray:
    """Matrix of ``identity on subset (x) partial trace over subset``.

    The identity factors sit at the subset positions in qubit order.  The
    result has trace ``2**len(subset)``, so it is returned as a plain array.
    """
    op = _as_operator(op)
    subset = _check_subset(subset, op.n)
    if not subset or len(subset) >= op.n:
        raise ValueError("subset must be a nonempty proper subset of the qubits")
    kept = [q for q in range(1, op.n + 1) if q not in subset]
    reduced = to_stokes(partial_trace(op, kept))
    values = np.zeros((4,) * op.n)
    picker = tuple(slice(None) if q in kept else 0 for q in range(1, op.n + 1))
    values[picker] = reduced.values.reshape((4,) * len(kept)) * math.sqrt(2.0) ** len(subset)
    return _matrix_from_values(op.n, values.reshape(-1))


def permute_qubits(op, order) -> HermitianOperator:
    """Reorder tensor factors; ``order[k]`` is the old label of new qubit k+1."""
    op = _as_operator(op)
    order = tuple(int(q) for q in order)
    if sorted(order) != list(range(1, op.n + 1)):
        raise ValueError(f"order must be a permutation of 1..{op.n}, got {order}")
    t = op.matrix.reshape((2,) * (2 * op.n))
    perm = [q - 1 for q in order] + [q - 1 + op.n for q in order]
    d = 2**op.n
    return HermitianOperator(t.transpose(perm).reshape(d, d))


def purity(s: StokesTensor) -> float:
    """``tr(rho**2)`` as the squared Euclidean norm of the Stokes values."""
    return float(np.dot(s.values, s.values))
