"""Shared fixtures and independent brute-force oracles.

The oracle helpers below deliberately avoid the library's einsum and
reshape paths: they loop over explicit Kronecker products and traces so the
two implementations can check each other.
"""

import itertools
import math
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

SQ2 = math.sqrt(2.0)
SIGMA = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def oracle_basis(index):
    """Kronecker product of sigma_j / sqrt(2), built by explicit loops."""
    out = SIGMA[index[0]] / SQ2
    for d in index[1:]:
        out = np.kron(out, SIGMA[d] / SQ2)
    return out


def oracle_stokes(matrix, n):
    """Stokes values as explicit traces against every basis element."""
    values = []
    for idx in itertools.product(range(4), repeat=n):
        values.append(np.trace(matrix @ oracle_basis(idx)).real)
    return np.array(values)


def oracle_from_stokes(values, n):
    out = np.zeros((2**n, 2**n), dtype=complex)
    for value, idx in zip(values, itertools.product(range(4), repeat=n)):
        out += value * oracle_basis(idx)
    return out


def oracle_partial_transpose(matrix, n, subset):
    """Entrywise partial transpose via index bookkeeping."""
    dim = 2**n
    out = np.empty_like(matrix)
    for r in range(dim):
        for c in range(dim):
            rb = [(r >> (n - 1 - q)) & 1 for q in range(n)]
            cb = [(c >> (n - 1 - q)) & 1 for q in range(n)]
            for q in subset:
                rb[q - 1], cb[q - 1] = cb[q - 1], rb[q - 1]
            rr = sum(b << (n - 1 - q) for q, b in enumerate(rb))
            cc = sum(b << (n - 1 - q) for q, b in enumerate(cb))
            out[rr, cc] = matrix[r, c]
    return out


def oracle_partial_trace(matrix, n, keep):
    """Reduced matrix via explicit sums over computational basis labels."""
    kept = sorted(keep)
    traced = [q for q in range(1, n + 1) if q not in kept]
    dk = 2 ** len(kept)
    out = np.zeros((dk, dk), dtype=complex)
    for r in range(dk):
        for c in range(dk):
            rb = [(r >> (len(kept) - 1 - i)) & 1 for i in range(len(kept))]
            cb = [(c >> (len(kept) - 1 - i)) & 1 for i in range(len(kept))]
            for t in itertools.product(range(2), repeat=len(traced)):
                full_r = [0] * n
                full_c = [0] * n
                for i, q in enumerate(kept):
                    full_r[q - 1] = rb[i]
                    full_c[q - 1] = cb[i]
                for i, q in enumerate(traced):
                    full_r[q - 1] = t[i]
                    full_c[q - 1] = t[i]
                rr = sum(b << (n - 1 - q) for q, b in enumerate(full_r))
                cc = sum(b << (n - 1 - q) for q, b in enumerate(full_c))
                out[r, c] += matrix[rr, cc]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
