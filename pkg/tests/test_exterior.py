import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import ContractViolation
from core.exterior import (
    Form,
    all_multi_indices,
    contract,
    coordinates,
    d,
    dual_form,
    evaluate_on,
    interior,
    shuffle_sign,
    volume,
    wedge,
)

x1, x2, x3, x4 = coordinates(4)

small = st.integers(min_value=-3, max_value=3)
monomials = st.sampled_from([1, x1, x2, x3 * x4, x1**2, x2 * x3])


@st.composite
def polynomials(draw, terms=2):
    return sum(draw(small) * draw(monomials) for _ in range(terms))


@st.composite
def forms(draw, degree):
    indices = all_multi_indices(4, degree)
    chosen = draw(st.lists(st.sampled_from(indices), min_size=1, max_size=3, unique=True))
    return Form.from_components(4, degree, {I: draw(polynomials()) for I in chosen})


# ── Wedge ──

def test_wedge_of_basis_one_forms():
    dx1, dx2 = Form.basis(4, (1,)), Form.basis(4, (2,))
    assert wedge(dx1, dx2) == Form.basis(4, (1, 2))
    assert wedge(dx2, dx1) == -Form.basis(4, (1, 2))
    assert wedge(dx1, dx1).is_zero


def test_unsorted_basis_carries_sign():
    assert Form.basis(4, (3, 1, 2)) == Form.basis(4, (1, 2, 3))
    assert Form.basis(4, (2, 1)) == -Form.basis(4, (1, 2))


def test_repeated_index_is_rejected():
    with pytest.raises(ContractViolation):
        Form.basis(4, (1, 1))


def test_wedge_beyond_top_degree_is_zero():
    product = wedge(volume(4), Form.basis(4, (1,)))
    assert product.is_zero
    assert product.degree == 5
    assert wedge(Form.basis(4, (1, 2)), Form.basis(4, (2, 3, 4))).degree == 5
    assert d(volume(4)).degree == 5


def test_nonzero_form_above_top_degree_is_rejected():
    with pytest.raises(ContractViolation):
        Form(4, 5, {(1, 2, 3, 4, 4): 1})
    with pytest.raises(ContractViolation):
        Form.zero(4, -1)


def test_dimension_mismatch_is_rejected():
    with pytest.raises(ContractViolation):
        wedge(Form.basis(4, (1,)), Form.basis(10, (1,)))


@given(forms(1), forms(2))
def test_graded_commutativity(a, b):
    assert wedge(a, b) == wedge(b, a)
    assert wedge(a, a).is_zero


@given(forms(1), forms(1), forms(1))
def test_wedge_is_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


# ── Interior products and duals ──

def test_interior_ordering_convention():
    e12 = Form.basis(4, (1, 2))
    assert interior((1, 2), e12) == Form.scalar(4, 1)
    assert interior((2, 1), e12) == Form.scalar(4, -1)
    assert interior((1,), Form.basis(4, (2, 3))).is_zero


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_interior_of_increasing_indices_is_kronecker(p):
    for I in all_multi_indices(4, p):
        for J in all_multi_indices(4, p):
            value = interior(I, Form.basis(4, J)).component(()).as_expr()
            assert value == (1 if I == J else 0)


def test_contract_with_polynomial_vector():
    a = Form.basis(4, (1, 2), x3)
    assert contract([x1, 0, 0, 0], a) == Form.basis(4, (2,), x1 * x3)


def test_evaluate_on_uses_first_vector_first():
    e12 = Form.basis(4, (1, 2))
    assert evaluate_on(e12, [[1, 0, 0, 0], [0, 1, 0, 0]], (0, 0, 0, 0)) == 1
    assert evaluate_on(e12, [[0, 1, 0, 0], [1, 0, 0, 0]], (0, 0, 0, 0)) == -1


@pytest.mark.parametrize("n", [4, 10])
def test_dual_pairing_on_basis(n):
    for p in range(5):
        for I in all_multi_indices(n, p)[:40]:
            assert wedge(Form.basis(n, I), dual_form(n, I)) == volume(n)


@given(forms(2), st.sampled_from(all_multi_indices(4, 2)))
def test_dual_pairing_picks_component(a, I):
    assert wedge(a, dual_form(4, I)) == volume(4) * a.component(I)


def test_dual_of_unsorted_indices():
    assert dual_form(4, (2, 1)) == -dual_form(4, (1, 2))
    assert shuffle_sign(4, (2,)) == -1


# ── Exterior derivative ──

def test_derivative_of_monomial_coefficient():
    a = Form.basis(4, (3,), x1 * x2)
    assert d(a) == Form.basis(4, (1, 3), x2) + Form.basis(4, (2, 3), x1)


@given(polynomials(3))
def test_d_squared_vanishes_on_functions(f):
    assert d(d(Form.scalar(4, f))).is_zero


@given(forms(1))
def test_d_squared_vanishes_on_one_forms(a):
    assert d(d(a)).is_zero


@given(forms(1), forms(1))
def test_leibniz_rule_for_odd_forms(a, b):
    assert d(wedge(a, b)) == wedge(d(a), b) - wedge(a, d(b))


@given(polynomials(), forms(2))
def test_leibniz_rule_for_functions(f, b):
    scalar = Form.scalar(4, f)
    assert d(wedge(scalar, b)) == wedge(d(scalar), b) + wedge(scalar, d(b))


def test_at_point_freezes_coefficients():
    a = Form.one_form(4, [x1 * x2, 3, 0, x4])
    assert a.at((2, 5, 0, -1)) == Form.one_form(4, [10, 3, 0, -1])
