import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slowvortex.beam import BeamSpec, FieldPair, initial_fields
from slowvortex.bloch import AtomParams, SingularityError
from slowvortex.propagation import (MediumResponse, coupling_matrix,
                                    dark_bright_decompose, propagate_analytic,
                                    propagate_numeric, propagate_symmetric,
                                    q_factor)

# ==== response factor Q =====================================================


def test_q_reference_point():
    # Delta = 0, Omega_C = Gamma, gamma_d = 1e-3: Q = -i/501.001, by hand
    q = q_factor(0.0, 0.0, 1.0, AtomParams(gamma_d=1e-3))
    assert q == pytest.approx(-1j / 501.001, rel=1e-14)
    assert q.imag == pytest.approx(-0.001996003999992016, rel=1e-14)


def test_q_without_control_is_bare_lorentzian():
    atom = AtomParams(gamma_d=0.0)
    for delta in (-2.0, 0.0, 0.7):
        assert q_factor(delta, 0.0, 0.0, atom) == pytest.approx(
            1.0 / (delta + 1j), rel=1e-15)


def test_q_scales_with_depth_parameter():
    atom = AtomParams(gamma_d=1e-3)
    assert q_factor(0.3, 0.0, 1.0, atom, zeta=2.5) == pytest.approx(
        2.5 * q_factor(0.3, 0.0, 1.0, atom), rel=1e-15)


def test_dispersive_pulling_suppressed_by_strong_control():
    # off resonance the real part falls as 1/|Omega_C|^2: factor 25 between
    # Omega_C = 1 and 5, allow 20% for the small corrections
    atom = AtomParams(gamma_d=1e-3)
    ratio = abs(q_factor(0.1, 0.0, 5.0, atom).real) / \
        abs(q_factor(0.1, 0.0, 1.0, atom).real)
    assert ratio == pytest.approx(1.0 / 25.0, rel=0.2)


def test_q_singular_raman_denominator_raises():
    with pytest.raises(SingularityError):
        q_factor(0.5, 0.5, 1.0, AtomParams(gamma_d=0.0))


def test_medium_response_container_validation():
    MediumResponse(q=-0.002j)
    with pytest.raises(ValueError):
        MediumResponse(q=complex(np.nan, 0.0))
    with pytest.raises(ValueError):
        MediumResponse(q=-0.002j, zeta=0.0)


# ==== coupling matrix =======================================================


def test_coupling_matrix_empty_ground_state():
    k = coupling_matrix(-0.5j, 0.0)
    assert np.allclose(k, np.array([[-0.5j, 0.0], [0.0, 0.0]]), atol=1e-15)


def test_coupling_matrix_balanced():
    q = -0.5j
    k = coupling_matrix(q, np.pi / 4)
    assert np.allclose(k, q / 2, atol=1e-15)


def test_coupling_matrix_rank_one():
    q = 0.3 - 0.8j
    k = coupling_matrix(q, 0.6)
    eigs = sorted(np.linalg.eigvals(k), key=abs)
    assert abs(eigs[0]) < 1e-12
    assert eigs[1] == pytest.approx(q, rel=1e-12)


def test_coupling_matrix_annihilates_dark_direction():
    theta = 0.6
    k = coupling_matrix(1.0, theta)
    null = np.array([np.sin(theta), -np.cos(theta)])
    assert np.max(np.abs(k @ null)) < 1e-12


# ==== analytic propagation ==================================================


def test_zero_depth_is_identity():
    f0 = FieldPair(0.3 + 0.1j, -0.2j)
    out = propagate_analytic(f0, -0.5j, 0.7, 0.0)
    assert out.omega_r == f0.omega_r
    assert out.omega_l == f0.omega_l


def test_empty_ground_state_decouples_components():
    q = -0.1 - 0.4j
    f0 = FieldPair(1.0 + 0.0j, 0.5 + 0.5j)
    out = propagate_analytic(f0, q, 0.0, 2.0)
    assert out.omega_r == pytest.approx(np.exp(-1j * q * 2.0), rel=1e-14)
    assert out.omega_l == f0.omega_l


def test_matches_symmetric_closed_form():
    spec = BeamSpec(l=1, epsilon=1e-3, alpha=np.pi / 4, psi=0.0)
    q = -0.002j + 0.0005
    rng = np.random.default_rng(7)
    for _ in range(50):
        r, phi, z = rng.uniform(0.1, 2.0), rng.uniform(0, 2 * np.pi), \
            rng.uniform(0, 500)
        a = propagate_analytic(initial_fields(r, phi, spec), q, np.pi / 4, z)
        b = propagate_symmetric(r, phi, spec, q, z)
        scale = max(abs(b.omega_r), abs(b.omega_l), 1e-30)
        assert abs(a.omega_r - b.omega_r) / scale < 1e-12
        assert abs(a.omega_l - b.omega_l) / scale < 1e-12


def test_symmetric_dark_angle_is_depth_independent():
    # l phi = pi/2 puts the whole beam in the dark mode
    spec = BeamSpec(l=1, epsilon=1.0, alpha=np.pi / 4, psi=0.0)
    ref = propagate_symmetric(1.0, np.pi / 2, spec, -0.002j, 0.0)
    far = propagate_symmetric(1.0, np.pi / 2, spec, -0.002j, 5000.0)
    assert far.omega_r == pytest.approx(ref.omega_r, rel=1e-12)
    assert far.omega_l == pytest.approx(ref.omega_l, rel=1e-12)


def test_symmetric_bright_angle_decays_jointly():
    # l phi = 0 puts the whole beam in the bright mode: both components
    # carry the same e^{-iQz} factor
    spec = BeamSpec(l=1, epsilon=1.0, alpha=np.pi / 4, psi=0.0)
    q, z = -0.002j, 800.0
    out = propagate_symmetric(1.0, 0.0, spec, q, z)
    amp = np.exp(-1.0) / np.sqrt(2)  # epsilon A(r=w) / sqrt(2)
    expected = amp * np.exp(-1j * q * z)
    assert out.omega_r == pytest.approx(expected, rel=1e-12)
    assert out.omega_l == pytest.approx(expected, rel=1e-12)


def test_symmetric_asymptotic_amplitude():
    spec = BeamSpec(l=1, epsilon=1.0, alpha=np.pi / 4, psi=0.0)
    phi = 0.4
    out = propagate_symmetric(1.0, phi, spec, -0.002j, 1e5)
    amp = np.exp(-1.0) / np.sqrt(2)
    assert abs(out.omega_r) == pytest.approx(amp * abs(np.sin(phi)), rel=1e-9)
    assert abs(out.omega_l) == pytest.approx(amp * abs(np.sin(phi)), rel=1e-9)


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_propagation_composes(seed: int):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0, np.pi / 2)
    q = complex(rng.uniform(-1, 1), rng.uniform(-1, 0))
    f0 = FieldPair(complex(rng.normal(), rng.normal()),
                   complex(rng.normal(), rng.normal()))
    z1, z2 = rng.uniform(0, 3, size=2)
    once = propagate_analytic(f0, q, theta, z1 + z2)
    twice = propagate_analytic(propagate_analytic(f0, q, theta, z1), q,
                               theta, z2)
    scale = max(abs(once.omega_r), abs(once.omega_l), 1e-30)
    assert abs(twice.omega_r - once.omega_r) / scale < 1e-12
    assert abs(twice.omega_l - once.omega_l) / scale < 1e-12


def test_broadcasts_over_arrays():
    phi = np.linspace(0, 2 * np.pi, 11, endpoint=False)
    f0 = initial_fields(np.ones(11), phi, BeamSpec())
    out = propagate_analytic(f0, -0.002j, np.pi / 4, 100.0)
    assert out.omega_r.shape == (11,)
    z = np.array([0.0, 10.0, 100.0])
    out2 = propagate_analytic(FieldPair(1.0 + 0j, 0.0j), -0.002j, np.pi / 4,
                              z[:, None])
    assert out2.omega_r.shape == (3, 1)


# ==== dark/bright decomposition =============================================


def test_decomposition_limits():
    f = FieldPair(0.7 + 0.1j, -0.3 + 0.2j)
    bright, dark = dark_bright_decompose(f, 0.0)
    assert bright == f.omega_r
    assert dark == -f.omega_l


@given(st.integers(0, 10_000))
def test_decomposition_round_trip(seed: int):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0, np.pi / 2)
    f = FieldPair(complex(rng.normal(), rng.normal()),
                  complex(rng.normal(), rng.normal()))
    bright, dark = dark_bright_decompose(f, theta)
    c, s = np.cos(theta), np.sin(theta)
    assert c * bright + s * dark == pytest.approx(f.omega_r, abs=1e-14)
    assert s * bright - c * dark == pytest.approx(f.omega_l, abs=1e-14)


@given(st.integers(0, 10_000))
def test_dark_mode_never_propagates(seed: int):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0, np.pi / 2)
    q = complex(rng.uniform(-1, 1), rng.uniform(-1, 0))
    f0 = FieldPair(complex(rng.normal(), rng.normal()),
                   complex(rng.normal(), rng.normal()))
    _, dark0 = dark_bright_decompose(f0, theta)
    _, dark1 = dark_bright_decompose(
        propagate_analytic(f0, q, theta, rng.uniform(0, 50)), theta)
    assert dark1 == pytest.approx(dark0, abs=1e-12 * (1 + abs(dark0)))


def test_bright_mode_decays_monotonically():
    theta, q = 0.9, -0.2 - 0.3j
    f0 = FieldPair(1.0 + 0.5j, 0.3 - 0.1j)
    mags = []
    for z in np.linspace(0.0, 10.0, 40):
        bright, _ = dark_bright_decompose(
            propagate_analytic(f0, q, theta, z), theta)
        mags.append(abs(bright))
    assert np.all(np.diff(mags) < 0)


# ==== numerical oracle ======================================================


def test_numeric_agrees_with_closed_form():
    rng = np.random.default_rng(11)
    n = 10
    theta = rng.uniform(0, np.pi / 2, size=n)
    q = rng.uniform(-0.1, 0.1, size=n) + 1j * rng.uniform(-0.1, -1e-3, size=n)
    k = np.array([coupling_matrix(qi, ti) for qi, ti in zip(q, theta)])
    f0 = FieldPair(rng.normal(size=n) + 1j * rng.normal(size=n),
                   rng.normal(size=n) + 1j * rng.normal(size=n))
    num = propagate_numeric(f0, k, 20.0, dz=0.01)
    ana = propagate_analytic(f0, q, theta, 20.0)
    scale = np.hypot(np.abs(ana.omega_r), np.abs(ana.omega_l))
    err = np.hypot(np.abs(num.omega_r - ana.omega_r),
                   np.abs(num.omega_l - ana.omega_l)) / scale
    assert float(np.max(err)) < 1e-8


def test_numeric_step_convergence_order():
    # RK4: residual against the closed form falls ~16x per step halving
    theta, q, z = 0.7, -0.05 - 0.3j, 5.0
    k = coupling_matrix(q, theta)
    f0 = FieldPair(1.0 + 0.2j, -0.4 + 0.6j)
    ana = propagate_analytic(f0, q, theta, z)
    errs = []
    for dz in (0.5, 0.25):
        num = propagate_numeric(f0, k, z, dz=dz)
        errs.append(abs(num.omega_r - ana.omega_r)
                    + abs(num.omega_l - ana.omega_l))
    assert 10.0 < errs[0] / errs[1] < 22.0


def test_numeric_zero_coupling_is_constant():
    f0 = FieldPair(0.3 + 0.4j, -0.1j)
    out = propagate_numeric(f0, np.zeros((2, 2), dtype=complex), 7.0, dz=0.1)
    assert out.omega_r == pytest.approx(f0.omega_r, abs=1e-14)
    assert out.omega_l == pytest.approx(f0.omega_l, abs=1e-14)


def test_numeric_cross_coupling_populates_empty_component():
    k = coupling_matrix(-0.5j, np.pi / 4)
    out = propagate_numeric(FieldPair(1.0 + 0j, 0.0j), k, 1.0, dz=0.01)
    assert abs(out.omega_l) > 0.01


def test_numeric_rejects_bad_step():
    with pytest.raises(ValueError):
        propagate_numeric(FieldPair(1.0 + 0j, 0.0j),
                          np.zeros((2, 2), dtype=complex), 1.0, dz=0.0)
