import pytest
import sympy

from core.algebra import ROTATION_PAIRS, MetricSignature, abelian, semidirect
from core.clifford import build_rep
from core.dga import (
    DgaElement,
    DifferentialRules,
    VariationContraction,
    coframe_euler_lagrange,
    coframe_variation,
    curv,
    differential_square_residual,
    dual_lambda,
    einstein_cartan_form,
    einstein_hilbert_form,
    field_generator,
    field_variation,
    gen,
    lam,
    multiplier_coefficients,
    multiplier_exactness,
    multiplier_generator,
    multiplier_pairs,
    verify_appendix_identities,
    verify_el_coframe,
    verify_el_multiplier,
    verify_el_spinor,
)
from core.errors import ContractViolation


# ── Free graded-commutative algebra ──

def test_odd_generators_anticommute():
    a, b = gen(lam(0)), gen(lam(1))
    assert a * b == -(b * a)
    assert (a * a).is_zero


def test_even_generators_commute():
    y = gen(field_generator("y"))
    L = gen(curv(3))
    assert y * L == L * y
    assert (L * L).degree == 4


def test_scalars_are_central():
    a = gen(lam(2))
    assert (a * 3) == (3 * a)
    assert (a + 0) == a
    assert (a - a).is_zero


def test_inhomogeneous_element_has_no_degree():
    with pytest.raises(ContractViolation):
        (gen(lam(0)) + gen(curv(0))).degree


def test_reserved_field_names():
    with pytest.raises(ContractViolation):
        field_generator("dy")
    with pytest.raises(ContractViolation):
        field_generator("lambda")


def test_dual_lambda_pairs_with_its_generator(euclidean_algebra):
    top = dual_lambda(euclidean_algebra, ())
    assert top.degree == 10
    assert gen(lam(4)) * dual_lambda(euclidean_algebra, (4,)) == top
    assert (gen(lam(4)) * dual_lambda(euclidean_algebra, (5,))).is_zero
    assert dual_lambda(10, (2, 1)) == -dual_lambda(10, (1, 2))


# ── Differential ──

@pytest.mark.parametrize("name", ["euclidean", "poincare", "abelian"])
def test_differential_squares_to_zero(name):
    L = {"euclidean": semidirect(MetricSignature(4, 0)), "poincare": semidirect(MetricSignature(1, 3)), "abelian": abelian()}[name]
    rules = DifferentialRules(L)
    generators = [lam(a) for a in range(L.dim)] + [curv(a) for a in range(L.dim)] + [field_generator("y", (), 1)]
    assert differential_square_residual(rules, generators) == 0


def test_differential_is_a_graded_derivation(euclidean_algebra):
    rules = DifferentialRules(euclidean_algebra)
    a = gen(lam(0)) * gen(lam(7)) + gen(curv(8))
    b = gen(lam(3)) + gen(field_generator("y")) * gen(curv(1))
    # a is even, so no sign
    assert rules(a * b) == rules(a) * b + a * rules(b)
    odd = gen(lam(6))
    assert rules(odd * b) == rules(odd) * b - odd * rules(b)


def test_constant_fields_are_closed(euclidean_algebra):
    rules = DifferentialRules(euclidean_algebra, frozenset({"p"}))
    assert rules(gen(multiplier_generator(0, 1, 2))).is_zero


def test_curvature_differential_matches_bracket(euclidean_algebra):
    L = euclidean_algebra
    rules = DifferentialRules(L)
    for a in range(L.dim):
        twist = DgaElement.from_terms((value, (lam(b), curv(c))) for aa, b, c, value in L.brackets if aa == a)
        assert (rules(gen(curv(a))) + twist).is_zero


# ── Contractions ──

def test_field_variation_is_odd_derivation():
    y = field_generator("y")
    X = field_variation(y, sympy.Rational(1, 2))
    dy = gen(y.differential())
    l0 = gen(lam(0))
    assert X(dy) == DgaElement.scalar(sympy.Rational(1, 2))
    # moving past an odd generator flips the sign
    assert X(l0 * dy) == l0.scale(-sympy.Rational(1, 2))


def test_variation_contraction_checks_degrees():
    with pytest.raises(ContractViolation):
        VariationContraction({curv(0): gen(curv(1))})


# ── Poincaré-Cartan forms ──

def test_einstein_cartan_form_size(euclidean_algebra):
    assert len(multiplier_pairs(euclidean_algebra)) == 39
    form = einstein_cartan_form(euclidean_algebra)
    assert len(form) == 396
    assert form.degree == 10


@pytest.mark.parametrize("sig", [MetricSignature(4, 0), MetricSignature(1, 3)], ids=str)
def test_einstein_hilbert_part_uses_the_constant_multipliers(sig):
    # p^{ab}_{h_ab} = 2 on the translation pair (a, b) of each rotation
    L = semidirect(sig)
    expected = DgaElement()
    for k, (a, b) in enumerate(ROTATION_PAIRS):
        expected = expected + (gen(curv(k)) * dual_lambda(L, (L.translations[a], L.translations[b]))).scale(2)
    assert einstein_hilbert_form(L) == expected
    assert len(einstein_cartan_form(L)) == 396


def test_einstein_hilbert_euler_lagrange_form(euclidean_algebra):
    L = euclidean_algebra
    rules = DifferentialRules(L)
    el = coframe_variation(L)(rules(einstein_hilbert_form(L)))
    assert not el.is_zero
    assert el == coframe_euler_lagrange(L, rules, multiplier_coefficients(L, free=False))


def test_abelian_algebra_has_no_einstein_hilbert_part():
    L = abelian()
    assert einstein_hilbert_form(L).is_zero
    assert len(einstein_cartan_form(L)) == 390
    assert verify_el_coframe(L)["residual_terms"] == 0


@pytest.mark.parametrize("name", ["euclidean", "poincare"])
def test_appendix_identities(name):
    sig = MetricSignature(4, 0) if name == "euclidean" else MetricSignature(1, 3)
    records = verify_appendix_identities(semidirect(sig), build_rep(sig))
    assert len(records) == 6
    assert all(r["residual_terms"] == 0 for r in records), records


def test_appendix_identities_without_spin_action():
    records = verify_appendix_identities(abelian())
    assert all(r["residual_terms"] == 0 for r in records), records


def test_multiplier_euler_lagrange_form(euclidean_algebra):
    record = verify_el_multiplier(euclidean_algebra)
    assert record["multipliers"] == 390
    assert record["residual_terms"] == 0


@pytest.mark.parametrize("constant", [False, True])
def test_coframe_euler_lagrange_form(euclidean_algebra, constant):
    assert verify_el_coframe(euclidean_algebra, constant_multipliers=constant)["residual_terms"] == 0


def test_spinor_euler_lagrange_forms(euclidean_algebra, euclidean_rep):
    records = verify_el_spinor(euclidean_algebra, euclidean_rep, sympy.Rational(3, 2))
    assert len(records) == 6
    assert all(r["residual_terms"] == 0 for r in records), records


# ── Multiplier exactness ──

def test_multiplier_exactness_for_a_scalar_variation(euclidean_algebra):
    rules = DifferentialRules(euclidean_algebra)
    y = field_generator("y")
    P = gen(field_generator("P", (), 9))
    split = multiplier_exactness(rules, field_variation(y), P, rules(gen(y)))
    assert split.residual.is_zero
    assert split.euler_lagrange == rules(P)
    assert split.lie_term.is_zero


def test_multiplier_exactness_for_the_coframe_variation(euclidean_algebra):
    L = euclidean_algebra
    rules = DifferentialRules(L)
    p = gen(multiplier_generator(0, 0, 9))
    constraint = gen(curv(0)) * dual_lambda(L, (0, 9))
    split = multiplier_exactness(rules, coframe_variation(L), p, constraint)
    assert split.residual.is_zero


def test_multiplier_exactness_requires_inert_multiplier(euclidean_algebra):
    rules = DifferentialRules(euclidean_algebra)
    y = field_generator("y")
    with pytest.raises(ContractViolation):
        multiplier_exactness(rules, field_variation(y), gen(y), gen(lam(0)))
