import numpy as np
import pytest

from taut3.cyclic import (
    Current1,
    CyclicCochain,
    HeadroomError,
    TrigPoly,
    UnitarityError,
    constant,
    current_to_cocycle,
    cyclic_lambda,
    fundamental_cocycle,
    hochschild_b,
    k_pairing,
    mode,
    random_trig,
    tfcc_sum,
    winding_number_quadrature,
)


@pytest.fixture
def tau():
    return fundamental_cocycle(8)


@pytest.fixture
def rng():
    return np.random.default_rng(13)


def test_trigpoly_product_is_exact_convolution():
    f = mode(2, 3.0)
    g = mode(-1, 2.0)
    prod = f * g
    assert prod.coefficient(1) == pytest.approx(6.0)
    assert prod.coefficient(0) == 0.0


def test_trigpoly_evaluate_agrees_with_coefficients(rng):
    f = random_trig(4, rng)
    theta = np.linspace(0, 2 * np.pi, 17, endpoint=False)
    vals = f.evaluate(theta)
    # inverse DFT consistency on one coefficient
    k = 3
    coeff = np.mean(vals * np.exp(-1j * k * theta))
    assert coeff == pytest.approx(f.coefficient(k), abs=1e-12)


def test_fundamental_cocycle_examples(tau, rng):
    for _ in range(10):
        f = random_trig(4, rng)
        assert abs(tau(constant(1.0), f)) < 1e-14
    assert tau(mode(-1), mode(1)) == pytest.approx(1.0)
    fr = random_trig(4, rng, real=True)
    assert abs(tau(fr, fr)) < 1e-12 * max(1.0, np.max(np.abs(fr.coefficients)) ** 2 * 16)


def test_hochschild_b_of_tau_vanishes(tau, rng):
    b = hochschild_b(tau)
    for _ in range(50):
        f0, f1, f2 = (random_trig(2, rng) for _ in range(3))
        scale = max(1.0, *(np.max(np.abs(f.coefficients)) for f in (f0, f1, f2))) ** 3
        assert abs(b(f0, f1, f2)) < 1e-12 * scale * 16


def test_hochschild_b_nonzero_on_noncocycle():
    kern = np.zeros((17, 17), dtype=complex)
    kern[8, 8] = 1.0  # psi(f0, f1) = (f0)_0 (f1)_0
    psi = CyclicCochain(kern)
    b = hochschild_b(psi)
    one = constant(1.0)
    assert b(one, one, one) == pytest.approx(1.0)
    assert np.max(np.abs(cyclic_lambda(psi).kernel - psi.kernel)) > 0.5


def test_b_is_trilinear(tau, rng):
    b = hochschild_b(tau)
    f0, f1, f2, g0 = (random_trig(2, rng) for _ in range(4))
    lhs = b(f0 + g0, f1, f2)
    rhs = b(f0, f1, f2) + b(g0, f1, f2)
    assert abs(lhs - rhs) < 1e-12 * 100


def test_cyclic_lambda_properties(tau, rng):
    assert np.max(np.abs(cyclic_lambda(tau).kernel - tau.kernel)) == 0.0
    kern = np.asarray(np.random.default_rng(1).standard_normal((9, 9)), dtype=complex)
    phi = CyclicCochain(kern)
    assert np.max(np.abs(cyclic_lambda(cyclic_lambda(phi)).kernel - phi.kernel)) == 0.0
    # lambda tau = tau means tau(f1, f0) = -tau(f0, f1) on all pairs
    f, g = random_trig(3, rng), random_trig(3, rng)
    assert tau(f, g) == pytest.approx(-tau(g, f), abs=1e-12)


def test_current_to_cocycle(tau, rng):
    phi = current_to_cocycle(Current1(constant(1.0)), 8)
    assert np.max(np.abs(phi.kernel - tau.kernel)) == 0.0
    zero = current_to_cocycle(Current1(constant(0.0)), 8)
    assert np.max(np.abs(zero.kernel)) == 0.0
    shifted = current_to_cocycle(Current1(mode(1)), 8)
    b = hochschild_b(shifted)
    for _ in range(20):
        f0, f1, f2 = (random_trig(2, rng) for _ in range(3))
        assert abs(b(f0, f1, f2)) < 1e-11 * 100
    # linearity in the current
    two = current_to_cocycle(Current1(constant(2.0)), 8)
    assert np.max(np.abs(two.kernel - 2 * tau.kernel)) == 0.0


def test_current_map_injective_on_truncated_currents():
    kernels = []
    for k in range(-2, 3):
        kernels.append(current_to_cocycle(Current1(mode(k)), 6).kernel.ravel())
    rank = np.linalg.matrix_rank(np.stack(kernels))
    assert rank == 5


@pytest.mark.parametrize("n", range(-3, 4))
def test_winding_pairing(tau, n):
    assert k_pairing(mode(n), tau) == pytest.approx(n, abs=1e-12)
    assert winding_number_quadrature(mode(n)) == pytest.approx(n, abs=1e-8)


def test_pairing_conjugation_invariance():
    tau12 = fundamental_cocycle(12)
    v, u = mode(2), mode(3)
    assert k_pairing(v * u * v.conj(), tau12) == pytest.approx(3.0, abs=1e-12)


def test_pairing_rejects_non_unitary(tau):
    with pytest.raises(UnitarityError):
        k_pairing(constant(2.0), tau)
    with pytest.raises(UnitarityError):
        k_pairing(mode(1) + mode(2), tau)


def test_tfcc_sum(tau):
    rep1 = tfcc_sum(1)
    assert np.max(np.abs(rep1.cochain.kernel - tau.kernel)) == 0.0
    rep3 = tfcc_sum(3)
    assert rep3.coefficient == pytest.approx(3.0)
    assert k_pairing(mode(1), rep3.cochain) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        tfcc_sum(0)
    with pytest.raises(ValueError):
        tfcc_sum(-2)


def test_headroom_errors():
    small = fundamental_cocycle(2)
    b = hochschild_b(small)
    with pytest.raises(HeadroomError):
        b(mode(2), mode(2), mode(1))
    with pytest.raises(HeadroomError):
        TrigPoly(np.array([1.0, 0.0, 0.0], dtype=complex)).padded(0)
