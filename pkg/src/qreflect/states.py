"""Canonical state constructors and seeded random-state generators."""

from __future__ import annotations

import math

import numpy as np

from .stokes import DensityState, HermitianOperator, QUBIT_LIMIT, qubit_count

_SQRT_HALF = 1.0 / math.sqrt(2.0)

KET_SYMBOLS = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([_SQRT_HALF, _SQRT_HALF], dtype=complex),
    "-": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=complex),
}


def ket(which) -> np.ndarray:
    """Amplitude vector from a symbol string over {0,1,+,-} or explicit amplitudes."""
    if isinstance(which, str):
        if not which or any(c not in KET_SYMBOLS for c in which):
            raise ValueError(f"ket symbols must come from 0, 1, +, -; got {which!r}")
        vec = KET_SYMBOLS[which[0]]
        for c in which[1:]:
            vec = np.kron(vec, KET_SYMBOLS[c])
        return vec
    vec = np.asarray(which, dtype=complex).reshape(-1)
    qubit_count(vec.size)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"amplitudes must be normalised, got norm {norm:.12g}")
    return vec


def pure_state(which) -> DensityState:
    """Rank-one projector onto a unit ket."""
    vec = ket(which)
    return DensityState(np.outer(vec, vec.conj()))


def bell_state() -> DensityState:
    """Projector onto (|00> + |11>) / sqrt(2)."""
    return pure_state([_SQRT_HALF, 0.0, 0.0, _SQRT_HALF])


def maximally_mixed(n: int) -> DensityState:
    return DensityState(np.eye(2**n) / 2**n)


def upb_kets() -> list[np.ndarray]:
    """The four mutually orthogonal product kets |01+>, |1+0>, |+01>, |--->."""
    return [ket("01+"), ket("1+0"), ket("+01"), ket("---")]


def upb_separable() -> DensityState:
    """Uniform mixture of the four product kets; separable, rank 4."""
    d = 8
    acc = np.zeros((d, d), dtype=complex)
    for vec in upb_kets():
        acc += np.outer(vec, vec.conj())
    return DensityState(acc / 4)


def upb_bound_entangled() -> DensityState:
    """Normalised projector onto the complement of the product-ket span.

    This is the three-qubit bound entangled state: positive semidefinite,
    positive under every partial transpose, yet nonseparable.
    """
    d = 8
    acc = np.zeros((d, d), dtype=complex)
    for vec in upb_kets():
        acc += np.outer(vec, vec.conj())
    return DensityState((np.eye(d) - acc) / 4)


def as_rng(seed) -> np.random.Generator:
    """Accept an integer seed or pass a Generator through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    rng = as_rng(rng)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_rotation(rng) -> np.ndarray:
    """Uniform element of SO(3)."""
    rng = as_rng(rng)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q = q.copy()
        q[:, 0] = -q[:, 0]
    return q


def random_reflection(rng) -> np.ndarray:
    """Orientation-changing orthogonal 3x3 matrix (determinant -1)."""
    q = random_rotation(rng)
    q = q.copy()
    q[:, 0] = -q[:, 0]
    return q


def random_density(n: int, mode: str = "mixed_dirichlet", rng=None, c: float | None = None) -> DensityState:
    """Seeded random n-qubit state.

    Modes:

    * ``haar_pure``: projector onto a normalised complex Gaussian vector.
    * ``mixed_dirichlet``: uniform-simplex spectrum conjugated by a Haar
      unitary.
    * ``bounded_spectrum``: like ``mixed_dirichlet`` but the spectrum is
      pulled affinely toward ``2**-n`` until the largest eigenvalue is at
      most ``c``; requires ``c`` in ``(2**-n, 1]``.
    """
    if not 1 <= n <= QUBIT_LIMIT:
        raise ValueError(f"supported qubit counts are 1..{QUBIT_LIMIT}, got {n}")
    rng = as_rng(rng)
    dim = 2**n
    if mode == "haar_pure":
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        z /= np.linalg.norm(z)
        return DensityState(np.outer(z, z.conj()))
    if mode not in ("mixed_dirichlet", "bounded_spectrum"):
        raise ValueError(f"unknown mode {mode!r}")
    spectrum = rng.dirichlet(np.ones(dim))
    if mode == "bounded_spectrum":
        if c is None or not (2.0**-n < c <= 1.0):
            raise ValueError(f"bounded_spectrum needs c in (2**-{n}, 1], got {c}")
        top = spectrum.max()
        if top > c:
            mix = 2.0**-n
            t = (c - mix) / (top - mix)
            spectrum = mix + t * (spectrum - mix)
    u = random_unitary(dim, rng)
    return DensityState((u * spectrum) @ u.conj().T)


def remix(rho, w: float) -> DensityState:
    """Convex mixture ``(1 - w) * maximally mixed + w * rho``."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {w}")
    op = rho if isinstance(rho, HermitianOperator) else HermitianOperator(rho)
    dim = 2**op.n
    return DensityState((1.0 - w) * np.eye(dim) / dim + w * op.matrix)
