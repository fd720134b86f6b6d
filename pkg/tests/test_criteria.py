"""Entanglement and feasibility criteria."""

import json

import numpy as np
import pytest
from conftest import FIXTURES

import qreflect as qr
from qreflect.io import load_density


def random_separable(rng, terms=3):
    weights = rng.dirichlet(np.ones(terms))
    acc = np.zeros((4, 4), dtype=complex)
    for w in weights:
        acc += w * np.kron(
            qr.random_density(1, "mixed_dirichlet", rng).matrix,
            qr.random_density(1, "mixed_dirichlet", rng).matrix,
        )
    return qr.DensityState(acc)


class TestPpt:
    def test_bell_is_detected(self):
        report = qr.ppt_test(qr.bell_state(), (1,))
        assert report.verdict == "entangled"
        assert report.witness == pytest.approx(-0.5, abs=1e-12)

    def test_product_states_pass(self, rng):
        for _ in range(20):
            rho = qr.DensityState(
                np.kron(
                    qr.random_density(1, "mixed_dirichlet", rng).matrix,
                    qr.random_density(1, "mixed_dirichlet", rng).matrix,
                )
            )
            assert qr.ppt_test(rho, (1,)).verdict == "separable-consistent"

    def test_separable_mixtures_pass_all_cuts(self, rng):
        for _ in range(500):
            rho = random_separable(rng)
            for subset in [(1,), (2,)]:
                assert qr.ppt_test(rho, subset).witness >= -1e-10

    def test_upb_state_stays_ppt(self):
        bound = qr.upb_bound_entangled()
        for q in (1, 2, 3):
            assert qr.ppt_test(bound, (q,)).witness >= -1e-10

    def test_subset_must_be_proper(self):
        with pytest.raises(ValueError):
            qr.ppt_test(qr.bell_state(), ())
        with pytest.raises(ValueError):
            qr.ppt_test(qr.bell_state(), (1, 2))


class TestCcn:
    def test_product_pure_state(self):
        rho = qr.pure_state("0+")
        assert qr.ccn(rho) == pytest.approx(1.0, abs=1e-10)

    def test_bell_value(self):
        assert qr.ccn(qr.bell_state()) == pytest.approx(2.0, abs=1e-10)

    def test_maximally_mixed(self):
        assert qr.ccn(qr.maximally_mixed(2)) == pytest.approx(0.5, abs=1e-12)

    def test_stokes_route_literals(self):
        bell_matrix = qr.stokes_as_matrix(qr.to_stokes(qr.bell_state()))
        assert np.sum(qr.svd_values(bell_matrix)) == pytest.approx(4.0, abs=1e-10)
        assert qr.ccn_via_stokes(qr.to_stokes(qr.bell_state())) == pytest.approx(2.0, abs=1e-10)
        assert qr.ccn_via_stokes(qr.to_stokes(qr.maximally_mixed(2))) == pytest.approx(0.5)

    def test_dual_paths_agree(self, rng):
        for _ in range(50):
            rho = qr.random_density(2, "mixed_dirichlet", rng)
            assert abs(qr.ccn(rho) - qr.ccn_via_stokes(qr.to_stokes(rho))) < 1e-10

    def test_triangle_inequality_on_separable_mixtures(self, rng):
        for _ in range(50):
            assert qr.ccn(random_separable(rng)) <= 1.0 + 1e-10

    def test_stokes_route_needs_two_qubits(self):
        with pytest.raises(ValueError):
            qr.ccn_via_stokes(qr.to_stokes(qr.maximally_mixed(1)))

    def test_rectangular_cut_runs(self):
        # one-vs-two cut of the bound entangled state: reported, no verdict
        value = qr.ccn(qr.upb_bound_entangled(), (2,))
        assert value > 0.0

    def test_odd_count_needs_explicit_block(self):
        with pytest.raises(ValueError):
            qr.ccn(qr.upb_bound_entangled())


class TestConcurrence:
    def test_bell(self):
        assert qr.concurrence(qr.bell_state()) == pytest.approx(1.0, abs=1e-10)

    def test_product_pure(self):
        assert qr.concurrence(qr.pure_state("01")) == pytest.approx(0.0, abs=1e-10)

    def test_maximally_mixed_clamps_to_zero(self):
        assert qr.concurrence(qr.maximally_mixed(2)) == 0.0

    def test_never_negative(self, rng):
        for _ in range(50):
            assert qr.concurrence(qr.random_density(2, "mixed_dirichlet", rng)) >= 0.0


class TestLorentzMetric:
    def test_bell(self):
        assert qr.lorentz_metric(qr.to_stokes(qr.bell_state())) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        # only the affine term survives: (2**(-1))**2
        value = qr.lorentz_metric(qr.to_stokes(qr.maximally_mixed(2)))
        assert value == pytest.approx(0.25, abs=1e-14)
        direct = np.trace(
            qr.maximally_mixed(2).matrix @ qr.spin_flipped_partner(qr.maximally_mixed(2)).matrix
        ).real
        assert value == pytest.approx(direct, abs=1e-14)

    def test_matches_conjugation_oracle(self, rng):
        for _ in range(30):
            rho = qr.random_density(2, "mixed_dirichlet", rng)
            direct = np.trace(rho.matrix @ qr.spin_flipped_partner(rho).matrix).real
            assert abs(qr.lorentz_metric(qr.to_stokes(rho)) - direct) < 1e-12


class TestReduction:
    def test_bell_trace_first_qubit(self):
        report = qr.reduction_criterion(qr.bell_state(), (1,))
        assert report.verdict == "entangled"
        assert report.witness == pytest.approx(-0.5, abs=1e-12)

    def test_product_states_pass(self, rng):
        rho = qr.DensityState(
            np.kron(
                qr.random_density(1, "mixed_dirichlet", rng).matrix,
                qr.random_density(1, "mixed_dirichlet", rng).matrix,
            )
        )
        assert qr.reduction_criterion(rho, (2,)).verdict == "separable-consistent"

    def test_comparison_trace(self, rng):
        rho = qr.random_density(3, "mixed_dirichlet", rng)
        report = qr.reduction_criterion(rho, (1, 2))
        assert report.extra["trace"] == pytest.approx(3.0, abs=1e-12)

    def test_subset_validation(self):
        with pytest.raises(ValueError):
            qr.reduction_criterion(qr.bell_state(), (1, 2))


class TestTotalReflectionFeasibility:
    def test_maximally_mixed_all_flags(self):
        for n in (1, 2, 3):
            report = qr.total_reflection_feasible(qr.maximally_mixed(n))
            assert report.verdict == "feasible"
            assert all(report.extra.values())

    def test_pure_states_infeasible_beyond_one_qubit(self, rng):
        # one-qubit reflections send pure states to orthogonal pure states,
        # so infeasibility starts with joint reflections of two qubits
        report = qr.total_reflection_feasible(qr.pure_state("0"))
        assert report.extra["exact_psd"]
        for n in (2, 3):
            report = qr.total_reflection_feasible(qr.random_density(n, "haar_pure", rng))
            assert not report.extra["exact_psd"]
            assert report.verdict == "infeasible"

    def test_upb_mixture_is_feasible(self):
        sep = qr.upb_separable()
        report = qr.total_reflection_feasible(sep)
        assert report.extra["exact_psd"]
        reflected = qr.apply_mask(qr.mask_total_reflection(3), sep)
        assert np.abs(reflected.matrix - qr.upb_bound_entangled().matrix).max() < 1e-14

    def test_implication_chain_on_bounded_samples(self, rng):
        for n in (2, 3):
            for _ in range(100):
                rho = qr.random_density(n, "bounded_spectrum", rng, c=2.0 ** (1 - n))
                flags = qr.total_reflection_feasible(rho).extra
                assert (not flags["sufficient_max_eig"]) or flags["exact_psd"]
                assert (not flags["exact_psd"]) or flags["purity_bound"]
                assert (not flags["exact_psd"]) or flags["rank_bound"]

    def test_pinned_counterexample_purity_without_feasibility(self):
        doc = json.loads((FIXTURES / "purity_bound_counterexample.json").read_text())
        assert "seed" in doc
        rho = load_density(FIXTURES / "purity_bound_counterexample.json")
        flags = qr.total_reflection_feasible(rho).extra
        assert flags["purity_bound"]
        assert not flags["exact_psd"]


class TestComplement:
    def test_fixed_point(self):
        for n in (1, 2, 3):
            mixed = qr.maximally_mixed(n)
            assert np.abs(qr.complement(mixed).matrix - mixed.matrix).max() < 1e-15

    def test_mixture_identity(self, rng):
        for n in (1, 2, 3):
            rho = qr.random_density(n, "mixed_dirichlet", rng)
            mixed = (rho.matrix + qr.complement(rho).matrix) / 2
            assert np.abs(mixed - np.eye(2**n) / 2**n).max() < 1e-14

    def test_matches_total_reflection_mask(self, rng):
        rho = qr.random_density(3, "mixed_dirichlet", rng)
        via_mask = qr.apply_mask(qr.mask_total_reflection(3), rho)
        assert np.abs(qr.complement(rho).matrix - via_mask.matrix).max() < 1e-12

    def test_single_components_fail(self):
        for vec in qr.upb_kets():
            projector = qr.DensityState(np.outer(vec, vec.conj()))
            assert qr.min_eig(qr.complement(projector).matrix) < -1e-6
