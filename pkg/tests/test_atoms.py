import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photonic_engine.atoms import (
    AtomPairState,
    PureFamilyParams,
    bell_states,
    build_pure_family,
    concurrence,
    concurrence_spectrum,
    pure_concurrence,
    pure_family_ket,
    spin_flip,
)
from photonic_engine.errors import InvalidStateError, UnnormalizableStateError

amp = st.floats(0.0, 6.0, allow_nan=False)
phase = st.floats(0.0, 4 * np.pi, allow_nan=False)
nonzero_family = st.tuples(amp, amp, amp, phase).filter(lambda t: t[0] + t[1] + t[2] > 1e-3)


def fam(a, b, c, phi=0.0):
    return build_pure_family(PureFamilyParams(a, b, c, phi))


def single_qubit(theta, phi, r):
    """Bloch-ball point ``r (sin cos, sin sin, cos)`` in the ``(e, g)`` basis."""
    x, y, z = r * np.sin(theta) * np.cos(phi), r * np.sin(theta) * np.sin(phi), r * np.cos(theta)
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


class TestBuildPureFamily:
    def test_basis_state(self):
        rho = fam(1, 0, 0).rho
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        np.testing.assert_allclose(rho, expected, atol=1e-15)

    def test_bell_phi_plus(self):
        s = fam(1, 0, 1)
        for idx in ((1, 1), (4, 4), (1, 4), (4, 1)):
            assert s[idx] == pytest.approx(0.5, abs=1e-15)
        assert abs(s[2, 2]) < 1e-15

    def test_b5_elements(self):
        s = fam(1, 5, 1)
        for idx in ((1, 2), (1, 3), (2, 4), (3, 4)):
            assert s[idx] == pytest.approx(5 / 52, abs=1e-15)
        np.testing.assert_allclose(pure_family_ket(PureFamilyParams(1, 5, 1)),
                                   np.array([1, 5, 5, 1]) / np.sqrt(52), atol=1e-15)

    def test_phase_sits_on_e1g2(self):
        psi = pure_family_ket(PureFamilyParams(0, 1, 0, np.pi / 2))
        assert psi[1] == pytest.approx(1j / np.sqrt(2))
        assert psi[2] == pytest.approx(1 / np.sqrt(2))

    def test_all_zero_rejected(self):
        with pytest.raises(UnnormalizableStateError):
            fam(0, 0, 0)

    @given(nonzero_family, st.floats(0.01, 100.0))
    def test_scale_invariance(self, p, k):
        a, b, c, phi = p
        np.testing.assert_allclose(fam(a, b, c, phi).rho, fam(k * a, k * b, k * c, phi).rho, atol=1e-12)

    @given(nonzero_family)
    def test_invariants(self, p):
        rho = fam(*p).rho
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
        assert abs(np.trace(rho) - 1) <= 1e-12
        assert np.linalg.eigvalsh(rho)[0] >= -1e-12

    def test_read_only(self):
        s = fam(1, 1, 1)
        with pytest.raises(ValueError):
            s.rho[0, 0] = 2


class TestValidation:
    def test_non_hermitian(self):
        rho = np.eye(4) / 4
        rho = rho.astype(complex)
        rho[0, 1] = 1e-6j
        with pytest.raises(InvalidStateError):
            AtomPairState(rho)

    def test_trace(self):
        with pytest.raises(InvalidStateError):
            AtomPairState(np.eye(4) / 3)

    def test_negative(self):
        with pytest.raises(InvalidStateError):
            AtomPairState(np.diag([0.6, 0.6, 0.0, -0.2]))

    def test_shape(self):
        with pytest.raises(InvalidStateError):
            AtomPairState(np.eye(3) / 3)


class TestSpinFlip:
    def test_gg_to_ee(self):
        gg = np.zeros((4, 4))
        gg[3, 3] = 1
        out = spin_flip(AtomPairState(gg))
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        np.testing.assert_allclose(out, expected, atol=1e-15)

    def test_identity(self):
        np.testing.assert_allclose(spin_flip(AtomPairState(np.eye(4) / 4)), np.eye(4) / 4, atol=1e-15)

    def test_bell_invariant(self):
        s = fam(1, 0, 1)
        np.testing.assert_allclose(spin_flip(s), s.rho, atol=1e-15)

    @given(nonzero_family)
    def test_hermitian_unit_trace(self, p):
        out = spin_flip(fam(*p))
        np.testing.assert_allclose(out, out.conj().T, atol=1e-12)
        assert abs(np.trace(out) - 1) < 1e-12


class TestConcurrence:
    def test_product_state(self):
        assert concurrence(fam(1, 1, 1)) == pytest.approx(0.0, abs=1e-12)

    def test_bell(self):
        assert concurrence(fam(1, 0, 1)) == pytest.approx(1.0, abs=1e-12)
        for s in bell_states().values():
            assert concurrence(s) == pytest.approx(1.0, abs=1e-12)

    def test_b5(self):
        assert concurrence(fam(1, 5, 1)) == pytest.approx(12 / 13, abs=1e-12)

    def test_maximally_mixed(self):
        assert concurrence(AtomPairState(np.eye(4) / 4)) == 0.0

    def test_werner_threshold(self):
        # p |psi-><psi-| + (1-p) I/4 has C = max(0, (3p - 1)/2)
        psi = bell_states()["psi-"].rho
        for p in (0.2, 1 / 3, 0.5, 0.8):
            rho = p * psi + (1 - p) * np.eye(4) / 4
            assert concurrence(AtomPairState(rho)) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-12)

    def test_spectrum_sorted(self):
        lam = concurrence_spectrum(fam(1, 2, 0.5, 1.0))
        assert np.all(np.diff(lam) <= 1e-15)

    @given(nonzero_family)
    def test_pure_oracle(self, p):
        params = PureFamilyParams(*p)
        assert abs(concurrence(build_pure_family(params)) - pure_concurrence(pure_family_ket(params))) < 1e-9

    @given(nonzero_family, st.integers(-3, 3))
    def test_phase_periodic(self, p, k):
        a, b, c, phi = p
        assert concurrence(fam(a, b, c, phi)) == pytest.approx(concurrence(fam(a, b, c, phi + 2 * np.pi * k)),
                                                               abs=1e-9)

    @given(nonzero_family, st.floats(0, 2 * np.pi))
    def test_global_phase(self, p, theta):
        psi = pure_family_ket(PureFamilyParams(*p))
        assert concurrence(AtomPairState.from_ket(np.exp(1j * theta) * psi)) == pytest.approx(
            concurrence(AtomPairState.from_ket(psi)), abs=1e-9)

    @given(st.tuples(st.floats(0, np.pi), st.floats(0, 2 * np.pi), st.floats(0, 1)),
           st.tuples(st.floats(0, np.pi), st.floats(0, 2 * np.pi), st.floats(0, 1)))
    def test_products_unentangled(self, q1, q2):
        s = AtomPairState.product(single_qubit(*q1), single_qubit(*q2))
        assert concurrence(s) < 1e-9

    @given(nonzero_family)
    def test_range(self, p):
        assert 0.0 <= concurrence(fam(*p)) <= 1.0
