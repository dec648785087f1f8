import pytest
import sympy
from sympy import I

from core.algebra import SUPPORTED_SIGNATURES, MetricSignature
from core.clifford import (
    anticommutator_residual,
    axial_current,
    axial_hermiticity_residual,
    beta_isometry_residual,
    beta_residual,
    build_rep,
    check_sigma_gamma_anticom,
    cobar,
    euclidean_gammas,
    gamma5_square_residual,
    gamma_equivariance_residual,
    hermitian_signature,
    spin_closure_residual,
)
from core.errors import ContractViolation
from core.exact import nonzero_count

SIGNATURES = [MetricSignature(p, q) for p, q in SUPPORTED_SIGNATURES]


@pytest.fixture(params=SIGNATURES, ids=str)
def rep(request):
    return build_rep(request.param)


def test_euclidean_gammas_are_hermitian_and_anticommute():
    gammas = euclidean_gammas()
    for a, g in enumerate(gammas):
        assert nonzero_count(g - g.H) == 0
        for b, h in enumerate(gammas):
            expected = 2 * sympy.eye(4) if a == b else sympy.zeros(4)
            assert nonzero_count(g * h + h * g - expected) == 0


def test_anticommutators_give_minus_twice_the_metric(rep):
    assert anticommutator_residual(rep) == 0


def test_gamma5_squares_to_signature_sign(rep):
    assert gamma5_square_residual(rep) == 0
    for g in rep.gammas:
        assert nonzero_count(rep.gamma5 * g + g * rep.gamma5) == 0


def test_spinor_metric_makes_gammas_antihermitian(rep):
    assert beta_residual(rep) == 0
    assert nonzero_count(rep.beta - rep.beta.H) == 0


def test_spinor_metric_signature(rep):
    # only (4,0) has a definite spinor metric; (0,4) pairs β with γ5 and splits
    expected = (4, 0) if rep.signature == MetricSignature(4, 0) else (2, 2)
    assert hermitian_signature(rep.beta) == expected


def test_euclidean_spinor_metric_is_identity():
    assert build_rep(MetricSignature(4, 0)).beta == sympy.eye(4)


def test_sigma_gamma_chirality_identity(rep):
    assert check_sigma_gamma_anticom(rep) == {"chirality": 0, "derivation": 0, "antisymmetry": 0}


def test_spin_generators_lift_the_rotation_algebra(rep):
    assert spin_closure_residual(rep) == {"generators": 0, "sigma": 0}
    assert gamma_equivariance_residual(rep) == 0
    assert beta_isometry_residual(rep) == 0


def test_axial_current_is_real_in_every_signature(rep):
    assert axial_hermiticity_residual(rep) == 0
    psi = [1, I, sympy.Rational(2, 3), -1 + 2 * I]
    for value in axial_current(rep, psi):
        assert sympy.im(value) == 0


def test_cobar_is_row_of_conjugates_for_euclidean():
    rep = build_rep(MetricSignature(4, 0))
    bar = cobar(rep, [I, 2, 0, 1 - I])
    assert list(bar) == [-I, 2, 0, 1 + I]


def test_hermitian_signature_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        hermitian_signature(sympy.Matrix([[0, 1], [0, 0]]))


def test_unsupported_signature_has_no_representation():
    with pytest.raises(ContractViolation):
        build_rep(MetricSignature(2, 2))
