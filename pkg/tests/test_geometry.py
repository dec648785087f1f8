import random

import pytest
from hypothesis import given
from hypothesis import strategies as hst

from core.algebra import MetricSignature, abelian, semidirect
from core.errors import ContractViolation, SingularFrameError
from core.exact import nonzero_count, zeros
from core.exterior import Form, coordinates
import core.geometry
from core.geometry import (
    GeometryState,
    bianchi_check,
    cartan_bracket_identity,
    curvature,
    curvature_variation_residual,
    einstein_contraction,
    exact_coframe,
    levi_civita_connection,
    maurer_cartan_residual,
    quadratic_torsion_residual,
    random_coframe,
    random_point,
    random_polynomial,
    random_rational,
    random_state,
    random_tau,
    ricci_variation,
    torsion_trace_residual,
)
from services.state_store import load_state

x1, x2 = coordinates(4)[:2]


def diagonal_frame():
    return tuple(Form.basis(4, (a,)) for a in range(1, 5))


def zero_connection():
    return tuple(Form.zero(4, 1) for _ in range(6))


@pytest.fixture
def flat(states_dir):
    return load_state(states_dir / "flat.state")


# ── Curvature and torsion ──

def test_flat_chart_has_no_curvature_or_torsion(flat):
    data = curvature(flat)
    assert all(f.is_zero for f in data.curvature)
    assert all(f.is_zero for f in data.torsion)


def test_flat_chart_levi_civita_connection_vanishes(flat):
    christoffel, connection = levi_civita_connection(flat, flat.sample_points[1])
    assert nonzero_count(christoffel) == 0
    assert nonzero_count(connection) == 0


def test_constant_connection_curvature_is_the_bracket(lorentzian):
    # ω^1 = dx^3 and ω^4 = dx^4 give Ω = ½[ω∧ω] only
    connection = list(zero_connection())
    connection[0] = Form.basis(4, (3,))
    connection[3] = Form.basis(4, (4,))
    st = GeometryState(lorentzian, diagonal_frame(), tuple(connection), ((0, 0, 0, 0),))
    data = curvature(st)
    # [h_12, h_23] lies along h_13 only
    assert set(data.curvature[1].terms) == {(3, 4)}
    assert all(f.is_zero for i, f in enumerate(data.curvature) if i != 1)


def test_torsion_of_a_stretched_frame():
    # e^1 = (1 + x2) dx^1 with zero connection: Θ^1 = dx^2 ∧ dx^1
    frame = list(diagonal_frame())
    frame[0] = Form.basis(4, (1,), 1 + x2)
    st = GeometryState(MetricSignature(4, 0), tuple(frame), zero_connection(), ((0, 0, 0, 0),))
    data = curvature(st)
    assert data.torsion[0] == -Form.basis(4, (1, 2))
    assert all(f.is_zero for f in data.torsion[1:])


# ── Bianchi identities ──

def test_flat_bianchi_check_passes(flat):
    for point in flat.sample_points:
        check = bianchi_check(flat, point)
        assert check.passed
        assert set(check.lemmas) == {
            "torsion_is_antisymmetric_connection",
            "quadratic_torsion_cancels",
            "trace_derivative_relation",
            "first_bianchi_forms",
        }


def test_curved_state_bianchi_check_passes(states_dir):
    st = load_state(states_dir / "curved.state")
    for point in st.sample_points:
        assert bianchi_check(st, point).passed


def test_quadratic_torsion_term_cancels_against_the_trace():
    T = zeros((4, 4, 4))
    for rho, mu, nu in [(0, 0, 1), (0, 1, 2), (1, 2, 3)]:
        T[rho, mu, nu] = 1
        T[rho, nu, mu] = -1
    trace = [sum(T[s, s, nu] for s in range(4)) for nu in range(4)]
    assert trace == [0, 1, 0, 0]
    assert nonzero_count(quadratic_torsion_residual(T, trace)) == 0
    flipped = quadratic_torsion_residual(T, [-x for x in trace])
    assert flipped[2, 3] == -2
    assert flipped[3, 2] == 2


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("sig", [MetricSignature(4, 0), MetricSignature(1, 3)], ids=str)
def test_random_state_bianchi_check_passes(seed, sig):
    st = random_state(random.Random(seed), sig, degree=1)
    assert bianchi_check(st, st.sample_points[0]).passed


def test_curvature_variation_is_exact(lorentzian):
    rng = random.Random(11)
    st = random_state(rng, lorentzian, degree=1)
    tau = random_tau(rng, lorentzian)
    assert all(f.is_zero for f in curvature_variation_residual(st, tau))
    assert nonzero_count(ricci_variation(st, tau, st.sample_points[0])) == 0


def test_curvature_variation_needs_one_form_per_rotation(euclidean):
    st = random_state(random.Random(3), euclidean, degree=1)
    with pytest.raises(ContractViolation):
        curvature_variation_residual(st, random_tau(random.Random(3), euclidean)[:5])


@pytest.mark.parametrize("sig", [MetricSignature(4, 0), MetricSignature(3, 1)], ids=str)
def test_multiplier_contraction_is_einstein_tensor(sig):
    st = random_state(random.Random(5), sig, degree=1)
    assert nonzero_count(einstein_contraction(st, st.sample_points[0])) == 0


def test_torsion_trace_companion(states_dir):
    st = load_state(states_dir / "curved.state")
    for point in st.sample_points:
        assert torsion_trace_residual(st, point) == 0


# ── Cartan coframes ──

@pytest.mark.parametrize("seed", [2, 9])
def test_cartan_bracket_identity_on_random_coframes(seed, euclidean_algebra):
    rng = random.Random(seed)
    point = random_point(rng, euclidean_algebra.dim)
    cf = random_coframe(rng, euclidean_algebra, point)
    h = [rng.randint(-2, 2) for _ in range(10)]
    xi = [rng.randint(-2, 2) for _ in range(10)]
    assert cartan_bracket_identity(cf, h, xi, point) == [0] * 10


def test_exact_coframe_on_abelian_algebra_is_flat():
    L = abelian()
    z = coordinates(10)
    cf = exact_coframe(L, [z[a] + z[(a + 1) % 10] ** 2 for a in range(10)])
    assert all(f.is_zero for f in maurer_cartan_residual(cf))


def test_exact_coframe_is_not_flat_for_a_nonabelian_algebra():
    L = semidirect(MetricSignature(4, 0))
    z = coordinates(10)
    cf = exact_coframe(L, list(z))
    assert not all(f.is_zero for f in maurer_cartan_residual(cf))


def test_cartan_bracket_identity_rejects_short_elements(euclidean_algebra):
    cf = exact_coframe(euclidean_algebra, list(coordinates(10)))
    with pytest.raises(ContractViolation):
        cartan_bracket_identity(cf, [1, 0], [0, 1], (0,) * 10)


# ── Contracts ──

def test_singular_sample_point_is_rejected(euclidean):
    frame = list(diagonal_frame())
    frame[0] = Form.basis(4, (1,), x1)
    with pytest.raises(SingularFrameError) as info:
        GeometryState(euclidean, tuple(frame), zero_connection(), ((0, 0, 0, 0),))
    assert info.value.point == (0, 0, 0, 0)


def test_wrong_connection_length_is_rejected(euclidean):
    with pytest.raises(ContractViolation):
        GeometryState(euclidean, diagonal_frame(), zero_connection()[:4])


def test_negative_degree_is_rejected(euclidean):
    with pytest.raises(ContractViolation):
        random_state(random.Random(0), euclidean, degree=-1)


@given(hst.integers(min_value=0, max_value=10_000))
def test_nonzero_rationals_and_monomials(seed):
    rng = random.Random(seed)
    assert random_rational(rng, nonzero=True) != 0
    assert random_polynomial(rng, 4, 0, terms=1) != 0


def test_random_perturbations_use_two_terms(monkeypatch, euclidean):
    seen = []

    def recording(rng, n, degree, terms=2):
        seen.append(terms)
        return random_polynomial(rng, n, degree, terms)

    monkeypatch.setattr(core.geometry, "random_polynomial", recording)
    rng = random.Random(4)
    random_state(rng, euclidean, degree=1)
    random_tau(rng, euclidean)
    assert seen and set(seen) == {2}
