import math

import numpy as np
import pytest

from hybridps.errors import AnnihilatedStateError, CutoffError
from hybridps.model import Params, scheme_params
from hybridps.oracle import (
    evolve_output_state,
    oracle_cq_function,
    oracle_internal_photon_number,
    oracle_phase_sensitivity,
    oracle_qfi_ideal,
    oracle_qfi_lossy,
)
from hybridps.oracle.fock import (
    _apply_splitter,
    _phase,
    _with_loss,
    beam_splitter_on_fock,
    squeezed_input,
)

COHERENT = dict(alpha=1.0, beta=0.0, g=0.0, tau=0.5, T=1.0)


def random_state(rng, d, modes=2):
    psi = rng.normal(size=(d,) * modes) + 1j * rng.normal(size=(d,) * modes)
    total = sum(np.indices(psi.shape))
    psi[total >= d] = 0
    return psi / np.linalg.norm(psi)


# -- gates ----------------------------------------------------------------


@pytest.mark.parametrize("tau", [0.0, 0.3, 0.5, 1.0])
def test_variable_splitter_single_photon(tau):
    psi = np.zeros((3, 3), dtype=complex)
    psi[1, 0] = 1.0
    out = beam_splitter_on_fock(psi, tau)
    want = np.zeros_like(out)
    want[1, 0] = math.sqrt(tau)
    want[0, 1] = 1j * math.sqrt(1 - tau)
    assert np.allclose(out, want, atol=1e-14)


def test_loss_splitter_single_photon():
    psi = np.zeros((3, 3), dtype=complex)
    psi[1, 0] = 1.0
    out = _with_loss(psi, 0.3)
    assert abs(out[1, 0, 0]) ** 2 == pytest.approx(0.3)
    assert abs(out[0, 0, 1]) ** 2 == pytest.approx(0.7)
    assert abs(out[1, 0, 0].imag) < 1e-15 and abs(out[0, 0, 1].imag) < 1e-15


def test_squeezed_vacuum_marginal():
    psi, tail = squeezed_input(Params(alpha=0.0, beta=0.0, g=1.0), 100)
    n = np.arange(psi.shape[0])
    prob = np.abs(psi) ** 2
    assert tail < 1e-8
    assert (prob.sum(axis=1) * n).sum() == pytest.approx(math.sinh(1.0) ** 2, rel=1e-8)
    assert prob.sum() == pytest.approx(1.0, abs=1e-10)


def test_phase_is_norm_preserving():
    psi = random_state(np.random.default_rng(1), 12)
    assert np.linalg.norm(_phase(psi, 1.234)) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("imaginary", [True, False])
@pytest.mark.parametrize("modes", [2, 3])
def test_splitters_unitary(imaginary, modes):
    rng = np.random.default_rng(modes)
    psi = random_state(rng, 15, modes)
    out = _apply_splitter(psi, 0.37, imaginary, (0, modes - 1))
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-10)
    back = _apply_splitter(out, 0.37, imaginary, (0, modes - 1))
    assert np.linalg.norm(back) == pytest.approx(1.0, abs=1e-10)


def test_splitter_identity_when_transmitting():
    psi = random_state(np.random.default_rng(4), 8)
    assert np.array_equal(beam_splitter_on_fock(psi, 1.0), psi)


def test_output_state_record():
    s = evolve_output_state(scheme_params("A", m=1, T=0.8))
    assert s.modes == 3
    assert s.norm2() == pytest.approx(1.0, abs=1e-12)
    assert 0 < s.weight and s.tail_mass <= 1e-8
    assert evolve_output_state(scheme_params("A")).modes == 2


def test_subtraction_weight_is_factorial_moment():
    p = scheme_params("A", g=0.6, T=0.8, phi=0.9)
    psi = evolve_output_state(p).amps
    n = np.arange(psi.shape[0], dtype=float).reshape([-1] + [1] * (psi.ndim - 1))
    prob = np.abs(psi) ** 2
    for m in range(1, 4):
        falling = np.prod([n - k for k in range(m)], axis=0)
        want = float((falling * prob).sum())
        assert evolve_output_state(p.replace(m=m)).weight == pytest.approx(want, rel=1e-8)


def test_subtraction_weight_decreases_in_weak_light():
    w = [evolve_output_state(Params(**COHERENT, m=m)).weight for m in range(4)]
    assert w == pytest.approx([0.5**m for m in range(4)], rel=1e-10)


def test_fixed_cutoff_too_small():
    with pytest.raises(CutoffError):
        evolve_output_state(scheme_params("A", g=1.0), cutoff=40, adaptive=False)
    with pytest.raises(CutoffError):
        evolve_output_state(scheme_params("A", m=5), cutoff=4)


def test_adaptive_cutoff_grows():
    s = evolve_output_state(scheme_params("A", g=1.0), cutoff=40)
    assert s.cutoff > 40 and s.tail_mass <= 1e-8


def test_annihilated():
    with pytest.raises(AnnihilatedStateError):
        evolve_output_state(scheme_params("B", g=0.0, tau=1.0, m=1))


# -- observables -------------------------------------------------------------


def test_coherent_sensitivity():
    value, err = oracle_phase_sensitivity(Params(**COHERENT), with_error=True)
    assert value == pytest.approx(1 / math.sqrt(2), abs=1e-7)
    assert err < 1e-7


def test_squeezed_vacuum_qfi():
    sh = math.sinh(1.0) ** 2
    assert oracle_qfi_ideal(Params(alpha=0.0, beta=0.0)) == pytest.approx(4 * sh * (sh + 1), rel=1e-7)


def test_coherent_qfi_with_subtraction():
    assert oracle_qfi_ideal(Params(alpha=1.0, g=0.0, m=3)) == pytest.approx(4.0, abs=1e-6)


def test_vacuum_qfi():
    assert oracle_qfi_ideal(Params(alpha=0.0, beta=0.0, g=0.0)) == pytest.approx(0.0, abs=1e-10)


def test_coherent_lossy_qfi():
    value, lam = oracle_qfi_lossy(Params(alpha=1.0, g=0.0, eta=0.8), return_lambda=True)
    assert value == pytest.approx(3.2, abs=1e-8)
    assert lam == pytest.approx(0.0, abs=1e-4)


def test_lossy_qfi_lossless_limit():
    p = scheme_params("A", m=1, g=0.8, phi=1.0)
    assert oracle_qfi_lossy(p) == pytest.approx(oracle_qfi_ideal(p), rel=1e-7)


def test_cq_function_coherent():
    cq = oracle_cq_function(Params(alpha=1.0, g=0.0, eta=0.8))
    assert cq(0.0) == pytest.approx(3.2, abs=1e-8)
    assert cq(-1.0) == pytest.approx(4.0, abs=1e-8)


def test_photon_number_examples():
    assert oracle_internal_photon_number(Params(alpha=1.0, g=1.0)) == pytest.approx(
        math.cosh(2.0) + 2 * math.sinh(1.0) ** 2, rel=1e-8)
    assert oracle_internal_photon_number(Params(alpha=1.0, g=0.0)) == pytest.approx(1.0, abs=1e-10)


def test_total_loss_leaves_b_photons():
    # b -> cosh g b - e^{i theta} sinh g a^dag, so <n_b> = sinh^2 g (|alpha|^2 + 1)
    n = oracle_internal_photon_number(scheme_params("A", T=0.0))
    assert n == pytest.approx(2 * math.sinh(1.0) ** 2, rel=1e-8)


@pytest.mark.parametrize("p", [scheme_params("A", m=1), scheme_params("B", m=2, g=0.8, phi=0.5)])
def test_cutoff_doubling(p):
    c = evolve_output_state(p).cutoff
    for fn in (oracle_phase_sensitivity, oracle_qfi_ideal, oracle_internal_photon_number):
        assert fn(p, 2 * c) == pytest.approx(fn(p, c), rel=1e-7)
