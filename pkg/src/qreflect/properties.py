"""Seeded randomised invariant suite spanning every layer of the package.

Each invariant draws its own deterministic substream from the master seed,
so results are reproducible for a fixed ``(seed, trials)`` pair.  On failure
the offending state is serialised for inspection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import criteria, io, linalg, reflections, states, stokes


@dataclass
class InvariantResult:
    name: str
    trials: int
    passed: bool
    worst: float
    detail: str = ""
    counterexample: dict | None = field(default=None)

    def to_dict(self) -> dict:
        doc = {
            "name": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "worst": self.worst,
        }
        if self.detail:
            doc["detail"] = self.detail
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        return doc


def _random_hermitian(n: int, rng) -> stokes.HermitianOperator:
    """Trace-one Hermitian operator that need not be positive."""
    dim = 2**n
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (z + z.conj().T) / 2
    h -= (np.trace(h).real - 1.0) / dim * np.eye(dim)
    return stokes.HermitianOperator(h)


def _fail(name, trials, worst, state, detail) -> InvariantResult:
    return InvariantResult(name, trials, False, worst, detail, io.state_to_dict(state))


def _mask_catalog(n: int):
    masks = [reflections.mask_total_reflection(n)]
    for q in range(1, n + 1):
        masks.append(reflections.mask_partial_transpose(n, (q,)))
        masks.append(reflections.mask_spin_flip(n, (q,)))
    masks.append(reflections.mask_partial_transpose(n, tuple(range(1, n + 1))))
    masks.append(reflections.mask_spin_flip(n, tuple(range(1, n + 1))))
    if n == 2:
        masks.append(reflections.mask_two_body_flip())
        first, second = reflections.choi_related_mask_pair()
        masks.append(reflections.SignMask(first.reshape(-1), name="center_block"))
        masks.append(reflections.SignMask(second.reshape(-1), name="antidiagonal"))
    return masks


def check_round_trip(rng, trials):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 4))
        rho = states.random_density(n, "mixed_dirichlet", rng)
        back = stokes.from_stokes(stokes.to_stokes(rho))
        worst = max(worst, float(np.abs(back.matrix - rho.matrix).max()))
        if worst > 1e-12:
            return _fail("stokes_round_trip", trials, worst, rho, "round trip exceeded 1e-12")
    return InvariantResult("stokes_round_trip", trials, True, worst)


def check_norm_bridge(rng, trials):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 4))
        rho = states.random_density(n, "mixed_dirichlet", rng)
        sigma = stokes.to_real_density(stokes.to_stokes(rho)).entries
        gap = abs(linalg.hs_norm(sigma) / 2 ** (n / 2) - linalg.hs_norm(rho.matrix))
        worst = max(worst, gap)
        if gap > 1e-12:
            return _fail("norm_bridge", trials, worst, rho, "unfolding changed the norm")
    return InvariantResult("norm_bridge", trials, True, worst)


def check_one_qubit_spectrum(rng, trials):
    worst = 0.0
    for _ in range(trials):
        rho = states.random_density(1, "mixed_dirichlet", rng)
        v = stokes.to_stokes(rho).values
        radius = math.sqrt(float(np.dot(v[1:], v[1:])))
        closed = np.sort([(1 / math.sqrt(2)) * (1 / math.sqrt(2) + s * radius) for s in (+1, -1)])[::-1]
        solver = linalg.eig_hermitian(rho).eigenvalues
        gap = float(np.abs(solver - closed).max())
        worst = max(worst, gap)
        if gap > 1e-12:
            return _fail("one_qubit_spectrum", trials, worst, rho, "closed form disagreed")
    return InvariantResult("one_qubit_spectrum", trials, True, worst)


def check_stokes_matrix_choi(rng, trials):
    for _ in range(trials):
        rho = states.random_density(2, "mixed_dirichlet", rng)
        s = stokes.to_stokes(rho)
        lhs = stokes.choi_reshuffle(stokes.to_real_density(s).entries).T
        if not np.array_equal(lhs, stokes.stokes_as_matrix(s)):
            return _fail("stokes_matrix_choi", trials, 1.0, rho, "reshuffle correspondence broke")
    return InvariantResult("stokes_matrix_choi", trials, True, 0.0)


def check_mask_involution(rng, trials, corrupt_mask=False):
    count = 0
    for _ in range(trials):
        n = int(rng.integers(1, 4))
        rho = states.random_density(n, "mixed_dirichlet", rng)
        s = stokes.to_stokes(rho)
        for mask in _mask_catalog(n):
            second = mask
            if corrupt_mask:
                tampered = mask.signs.copy()
                tampered[-1] = -tampered[-1]
                second = reflections.SignMask(tampered, name=mask.name + "~corrupt")
            back = reflections.apply_mask(second, reflections.apply_mask(mask, s))
            count += 1
            if not np.array_equal(back.values, s.values):
                return _fail("mask_involution", count, 1.0, rho, f"{second.name} failed to invert {mask.name}")
    return InvariantResult("mask_involution", count, True, 0.0)


def check_mask_isometries(rng, trials):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 4))
        a = _random_hermitian(n, rng)
        b = _random_hermitian(n, rng)
        inner = linalg.hs_inner(a.matrix, b.matrix).real
        for mask in _mask_catalog(n):
            ia = reflections.apply_mask(mask, a)
            ib = reflections.apply_mask(mask, b)
            gaps = (
                abs(np.trace(ia.matrix).real - 1.0),
                float(np.abs(ia.matrix - ia.matrix.conj().T).max()),
                abs(linalg.hs_inner(ia.matrix, ib.matrix).real - inner),
            )
            worst = max(worst, *gaps)
            if worst > 1e-12:
                return _fail("mask_isometries", trials, worst, a, f"{mask.name} broke a preserved quantity")
    return InvariantResult("mask_isometries", trials, True, worst)


def check_one_qubit_reflection_spectra(rng, trials):
    worst = 0.0
    for _ in range(trials):
        rho = states.random_density(1, "mixed_dirichlet", rng)
        base = linalg.eig_hermitian(rho).eigenvalues
        for mask in (reflections.mask_partial_transpose(1, (1,)), reflections.mask_spin_flip(1, (1,))):
            image = reflections.apply_mask(mask, rho)
            gap = float(np.abs(linalg.eig_hermitian(image).eigenvalues - base).max())
            worst = max(worst, gap)
            if gap > 1e-10:
                return _fail("one_qubit_reflection_spectra", trials, worst, rho, mask.name)
    return InvariantResult("one_qubit_reflection_spectra", trials, True, worst)


def check_pure_reflection_spectrum(rng, trials):
    worst = 0.0
    target = np.array([0.5, 0.5, 0.5, -0.5])
    for _ in range(trials):
        rho = states.random_density(2, "haar_pure", rng)
        image = reflections.apply_mask(reflections.mask_total_reflection(2), rho)
        gap = float(np.abs(linalg.eig_hermitian(image).eigenvalues - target).max())
        worst = max(worst, gap)
        if gap > 1e-10:
            return _fail("pure_reflection_spectrum", trials, worst, rho, "pure-state image spectrum off")
    return InvariantResult("pure_reflection_spectrum", trials, True, worst)


def check_reflection_unitary_commutation(rng, trials):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 4))
        rho = states.random_density(n, "mixed_dirichlet", rng)
        u = states.random_unitary(2**n, rng)
        mask = reflections.mask_total_reflection(n)
        lhs = reflections.apply_mask(mask, stokes.HermitianOperator(u @ rho.matrix @ u.conj().T)).matrix
        rhs = u @ reflections.apply_mask(mask, rho).matrix @ u.conj().T
        gap = float(np.abs(lhs - rhs).max())
        worst = max(worst, gap)
        if gap > 1e-10:
            return _fail("reflection_unitary_commutation", trials, worst, rho, "commutation failed")
    return InvariantResult("reflection_unitary_commutation", trials, True, worst)


def check_classification(rng, trials):
    count = 0
    for _ in range(trials):
        n = int(rng.integers(2, 4))
        factors = rng.choice([-1, 1], size=(n, 4)).astype(np.int8)
        factors[:, 0] = 1
        outer = factors[0].astype(np.int64)
        for f in factors[1:]:
            outer = np.multiply.outer(outer, f).reshape(-1)
        product_mask = reflections.SignMask(outer, name="random_product")
        info = reflections.classify(product_mask)
        total = reflections.classify(reflections.mask_total_reflection(n))
        checks = (
            info.local_factorizable,
            info.orientation == "preserving",
            not total.local_factorizable,
            total.orientation == ("changing" if (4**n - 1) % 2 == 1 else "preserving"),
            total.sign_change_count == 4**n - 1,
        )
        count += 1
        if not all(checks):
            return InvariantResult("classification", count, False, 1.0, f"n={n} checks={checks}")
    return InvariantResult("classification", count, True, 0.0)


def check_operator_sums(rng, trials):
    worst = 0.0
    for _ in range(trials):
        one = states.random_density(1, "mixed_dirichlet", rng)
        two = states.random_density(2, "mixed_dirichlet", rng)
        pairs = [
            (
                reflections.one_qubit_operator_sum("transpose", one).matrix,
                reflections.apply_mask(reflections.mask_partial_transpose(1, (1,)), one).matrix,
            ),
            (
                reflections.one_qubit_operator_sum("spin_flip", one).matrix,
                reflections.apply_mask(reflections.mask_spin_flip(1, (1,)), one).matrix,
            ),
            (
                reflections.two_body_flip_operator_sum(two).matrix,
                reflections.apply_mask(reflections.mask_two_body_flip(), two).matrix,
            ),
            (
                reflections.spin_flipped_partner(two).matrix,
                reflections.apply_mask(reflections.mask_spin_flip(2, (1, 2)), two).matrix,
            ),
        ]
        for lhs, rhs in pairs:
            gap = float(np.abs(lhs - rhs).max())
            worst = max(worst, gap)
            if gap > 1e-12:
                return _fail("operator_sums", trials, worst, two, "operator sum and mask disagreed")
    return InvariantResult("operator_sums", trials, True, worst)


def check_bounded_reflection(rng, trials):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 4))
        rho = states.random_density(n, "bounded_spectrum", rng, c=2.0 ** (1 - n))
        witness = linalg.min_eig(criteria.complement(rho).matrix)
        worst = min(worst, witness)
        if witness < -1e-10:
            return _fail("bounded_reflection", trials, witness, rho, "reflection left the state cone")
    return InvariantResult("bounded_reflection", trials, True, worst)


def check_feasibility_bounds(rng, trials):
    for _ in range(trials):
        n = int(rng.integers(2, 4))
        rho = states.random_density(n, "bounded_spectrum", rng, c=2.0 ** (1 - n))
        report = criteria.total_reflection_feasible(rho)
        flags = report.extra
        implications = (
            (not flags["sufficient_max_eig"]) or flags["exact_psd"],
            (not flags["exact_psd"]) or flags["purity_bound"],
            (not flags["exact_psd"]) or flags["rank_bound"],
        )
        if not all(implications):
            return _fail("feasibility_bounds", trials, 1.0, rho, f"implication chain broke: {flags}")
    return InvariantResult("feasibility_bounds", trials, True, 0.0)


def check_ccn_dual_path(rng, trials):
    worst = 0.0
    for k in range(trials):
        rho = states.random_density(2, "mixed_dirichlet", rng)
        gap = abs(criteria.ccn(rho) - criteria.ccn_via_stokes(stokes.to_stokes(rho)))
        worst = max(worst, gap)
        if gap > 1e-10:
            return _fail("ccn_dual_path", trials, worst, rho, "matrix and Stokes routes disagreed")
        if k % 10 == 0:
            terms = int(rng.integers(1, 5))
            weights = rng.dirichlet(np.ones(terms))
            mix = np.zeros((4, 4), dtype=complex)
            for w in weights:
                mix += w * np.kron(
                    states.random_density(1, "mixed_dirichlet", rng).matrix,
                    states.random_density(1, "mixed_dirichlet", rng).matrix,
                )
            value = criteria.ccn(stokes.HermitianOperator(mix))
            if value > 1.0 + 1e-10:
                return _fail("ccn_dual_path", trials, value, stokes.HermitianOperator(mix), "separable mixture exceeded 1")
    return InvariantResult("ccn_dual_path", trials, True, worst)


def check_reflection_vs_ppt(rng, trials):
    worst = 0.0
    for _ in range(trials):
        rho = states.random_density(2, "mixed_dirichlet", rng)
        r = states.random_reflection(rng)
        lomap = reflections.LocalOrthogonalMap.single_qubit(2, 1, r)
        generic = linalg.eig_hermitian(reflections.apply_local_orthogonal(lomap, rho)).eigenvalues
        transposed = linalg.eig_hermitian(
            reflections.apply_mask(reflections.mask_partial_transpose(2, (1,)), rho)
        ).eigenvalues
        gap = float(np.abs(generic - transposed).max())
        worst = max(worst, gap)
        if gap > 1e-9:
            return _fail("reflection_vs_ppt", trials, worst, rho, "generic reflection spectrum diverged")
    return InvariantResult("reflection_vs_ppt", trials, True, worst)


def check_partial_reflection_norm(rng, trials):
    worst = 0.0
    spectrum_moved = False
    for _ in range(trials):
        rho = states.random_density(3, "mixed_dirichlet", rng)
        s = stokes.to_stokes(rho)
        image = reflections.apply_mask(reflections.mask_total_reflection(3, (1, 2)), s)
        gap = abs(stokes.purity(image) - stokes.purity(s))
        worst = max(worst, gap)
        if gap > 1e-12:
            return _fail("partial_reflection_norm", trials, worst, rho, "norm not preserved")
        base = linalg.eig_hermitian(rho).eigenvalues
        moved = linalg.eig_hermitian(stokes.from_stokes(image)).eigenvalues
        if np.abs(base - moved).max() > 1e-6:
            spectrum_moved = True
    if not spectrum_moved:
        return InvariantResult("partial_reflection_norm", trials, False, worst, "no spectrum change observed")
    return InvariantResult("partial_reflection_norm", trials, True, worst)


def check_complement_mixture(rng, trials):
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 4))
        rho = states.random_density(n, "mixed_dirichlet", rng)
        mixed = (rho.matrix + criteria.complement(rho).matrix) / 2
        gap = float(np.abs(mixed - np.eye(2**n) / 2**n).max())
        worst = max(worst, gap)
        if gap > 1e-14:
            return _fail("complement_mixture", trials, worst, rho, "mixture missed the random state")
    return InvariantResult("complement_mixture", trials, True, worst)


def check_relaxed_reflection(rng, trials):
    worst = 0.0
    for _ in range(trials):
        rho = states.random_density(2, "mixed_dirichlet", rng)
        relaxed = reflections.relaxed_reflection(rho)
        witness = linalg.min_eig(relaxed.matrix)
        if witness < -1e-10:
            return _fail("relaxed_reflection", trials, witness, rho, "relaxed image not positive")
        remixed = states.remix(rho, 1.0 / 3.0)
        via_remix = reflections.apply_mask(reflections.mask_total_reflection(2), remixed)
        gap = float(np.abs(relaxed.matrix - via_remix.matrix).max())
        worst = max(worst, gap)
        if gap > 1e-12:
            return _fail("relaxed_reflection", trials, worst, rho, "remix identity failed")
    return InvariantResult("relaxed_reflection", trials, True, worst)


def check_concurrence_lorentz(rng, trials):
    worst = 0.0
    for _ in range(trials):
        rho = states.random_density(2, "mixed_dirichlet", rng)
        partner = reflections.spin_flipped_partner(rho)
        direct = float(np.trace(rho.matrix @ partner.matrix).real)
        gap = abs(criteria.lorentz_metric(stokes.to_stokes(rho)) - direct)
        worst = max(worst, gap)
        if gap > 1e-12:
            return _fail("concurrence_lorentz", trials, worst, rho, "metric routes disagreed")
        if criteria.concurrence(rho) < 0:
            return _fail("concurrence_lorentz", trials, -1.0, rho, "negative concurrence")
    return InvariantResult("concurrence_lorentz", trials, True, worst)


_CHECKS = [
    ("stokes_round_trip", check_round_trip),
    ("norm_bridge", check_norm_bridge),
    ("one_qubit_spectrum", check_one_qubit_spectrum),
    ("stokes_matrix_choi", check_stokes_matrix_choi),
    ("mask_involution", check_mask_involution),
    ("mask_isometries", check_mask_isometries),
    ("one_qubit_reflection_spectra", check_one_qubit_reflection_spectra),
    ("pure_reflection_spectrum", check_pure_reflection_spectrum),
    ("reflection_unitary_commutation", check_reflection_unitary_commutation),
    ("classification", check_classification),
    ("operator_sums", check_operator_sums),
    ("bounded_reflection", check_bounded_reflection),
    ("feasibility_bounds", check_feasibility_bounds),
    ("ccn_dual_path", check_ccn_dual_path),
    ("reflection_vs_ppt", check_reflection_vs_ppt),
    ("partial_reflection_norm", check_partial_reflection_norm),
    ("complement_mixture", check_complement_mixture),
    ("relaxed_reflection", check_relaxed_reflection),
    ("concurrence_lorentz", check_concurrence_lorentz),
]


def run_suite(seed: int = 42, trials: int = 500, corrupt_mask: bool = False) -> list[InvariantResult]:
    """Run every invariant with per-check substreams spawned from ``seed``."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    master = np.random.SeedSequence(seed)
    children = master.spawn(len(_CHECKS))
    results = []
    for (name, fn), child in zip(_CHECKS, children):
        rng = np.random.default_rng(child)
        if name == "mask_involution":
            results.append(fn(rng, trials, corrupt_mask=corrupt_mask))
        else:
            results.append(fn(rng, trials))
    return results
