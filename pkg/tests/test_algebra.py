import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.algebra import (
    ROTATION_PAIRS,
    SUPPORTED_SIGNATURES,
    MetricSignature,
    abelian,
    algebra_by_name,
    antisym_kronecker,
    bracket,
    coadjoint,
    is_pair_symmetric,
    jacobi_residual,
    lc_contraction_residual,
    levi_civita,
    lower_index,
    multiplier_contraction,
    raise_index,
    rho_antisymmetry_residual,
    semidirect,
    so_basis,
    so_coordinates,
    unimodularity_residual,
)
from core.errors import ContractViolation
from core.exact import nonzero_count, zeros

ALL_SIGNATURES = [MetricSignature(p, q) for p, q in SUPPORTED_SIGNATURES]


def test_signature_parsing():
    sig = MetricSignature.parse("1, 3")
    assert (sig.p, sig.q) == (1, 3)
    assert sig.diagonal == (1, -1, -1, -1)
    assert sig.sign == -1
    assert MetricSignature(4, 0).sign == 1


@pytest.mark.parametrize("text", ["5,0", "2", "a,b", "-1,5"])
def test_bad_signatures_are_rejected(text):
    with pytest.raises(ContractViolation):
        MetricSignature.parse(text)


def test_unsupported_signature():
    with pytest.raises(ContractViolation):
        so_basis(MetricSignature(2, 2))


def test_rotation_pair_layout():
    assert ROTATION_PAIRS == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_jacobi_identity(sig):
    for L in (so_basis(sig), semidirect(sig)):
        assert nonzero_count(jacobi_residual(L)) == 0


def test_abelian_algebra_is_trivially_lie():
    L = abelian()
    assert L.dim == 10
    assert L.brackets == ()
    assert nonzero_count(jacobi_residual(L)) == 0


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_structure_constants_are_antisymmetric(sig):
    c = semidirect(sig).structure
    assert nonzero_count(c + np.transpose(c, (0, 2, 1))) == 0


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_unimodularity_and_metric_preservation(sig):
    assert nonzero_count(unimodularity_residual(semidirect(sig))) == 0
    assert nonzero_count(rho_antisymmetry_residual(so_basis(sig))) == 0


def test_semidirect_layout():
    L = semidirect(MetricSignature(1, 3))
    assert L.dim == 10
    assert L.rotations == tuple(range(6))
    assert L.translations == tuple(range(6, 10))
    assert L.translation(2) == 8
    # translations commute
    e1 = [0] * 6 + [1, 0, 0, 0]
    e2 = [0] * 6 + [0, 1, 0, 0]
    assert bracket(L, e1, e2) == [0] * 10


def test_rotation_acts_on_translation():
    sig = MetricSignature(4, 0)
    L = semidirect(sig)
    h12 = [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]
    e2 = [0] * 6 + [0, 1, 0, 0]
    # ρ(h_12) e_2 = η_22 e_1
    assert bracket(L, h12, e2) == [0] * 6 + [1, 0, 0, 0]


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_multiplier_constants_are_antisymmetric(sig):
    p = so_basis(sig).multiplier_constants
    assert nonzero_count(p + np.transpose(p, (0, 2, 1))) == 0


def test_abelian_algebra_has_no_multipliers():
    with pytest.raises(ContractViolation):
        abelian().multiplier_constants


@given(st.lists(st.integers(min_value=-4, max_value=4), min_size=4 * 4 * 10, max_size=4 * 4 * 10))
def test_multiplier_contraction_kills_pair_symmetric_tensors(values):
    L = so_basis(MetricSignature(4, 0))
    A = zeros((4, 4, 10))
    for idx, v in zip(np.ndindex(4, 4, 10), values):
        A[idx] = v
    symmetric = A + np.transpose(A, (1, 0, 2))
    assert is_pair_symmetric(symmetric)
    assert nonzero_count(multiplier_contraction(L, symmetric)) == 0
    # the antisymmetric part is detected exactly
    antisymmetric = A - np.transpose(A, (1, 0, 2))
    vanishes = nonzero_count(multiplier_contraction(L, antisymmetric)) == 0
    assert vanishes == (nonzero_count(antisymmetric) == 0)


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_levi_civita_double_contraction(sig):
    assert nonzero_count(lc_contraction_residual(sig)) == 0


def test_levi_civita_symbol_normalization():
    eps = levi_civita()
    assert eps[0, 1, 2, 3] == 1
    assert eps[1, 0, 2, 3] == -1
    assert eps[0, 0, 2, 3] == 0


def test_antisymmetrized_kronecker():
    assert antisym_kronecker((1, 2, 3), (1, 2, 3)) == 1
    assert antisym_kronecker((1, 2, 3), (2, 1, 3)) == -1
    assert antisym_kronecker((1, 2, 3), (3, 1, 2)) == 1
    assert antisym_kronecker((1, 2, 3), (1, 1, 3)) == 0


def test_so_coordinates_rejects_non_rotations():
    with pytest.raises(ContractViolation):
        so_coordinates(np.eye(4, dtype=int).tolist(), MetricSignature(4, 0))


def test_so_coordinates_recovers_generators():
    sig = MetricSignature(1, 3)
    L = so_basis(sig)
    for i in range(6):
        coords = so_coordinates(L.rho[i].tolist(), sig)
        assert coords == [1 if k == i else 0 for k in range(6)]


def test_algebra_lookup():
    assert algebra_by_name("euclidean").name == "iso(4,0)"
    assert algebra_by_name("poincare").signature == MetricSignature(1, 3)
    with pytest.raises(ContractViolation):
        algebra_by_name("sl2")


element = st.lists(st.integers(min_value=-3, max_value=3), min_size=10, max_size=10)


@given(element, element, element)
def test_coadjoint_action_is_dual_to_the_bracket(x, y, u):
    L = semidirect(MetricSignature(1, 3))
    lhs = sum(v * y[a] for a, v in enumerate(coadjoint(L, x, u)))
    rhs = -sum(v * u[c] for c, v in enumerate(bracket(L, x, y)))
    assert lhs == rhs


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_lowering_then_raising_restores_the_tensor(sig):
    T = zeros((4, 4, 4))
    for idx in np.ndindex(4, 4, 4):
        T[idx] = idx[0] - 2 * idx[1] + idx[2] * idx[0]
    lowered = lower_index(T, 1, sig.eta)
    for a, b, c in np.ndindex(4, 4, 4):
        assert lowered[a, b, c] == sig.diagonal[b] * T[a, b, c]
    assert nonzero_count(raise_index(lowered, 1, sig.eta.inv()) - T) == 0
