"""
Exterior Algebra
================
Differential forms on a coordinate chart of dimension n with exact polynomial
coefficients (sympy Poly over the chart symbols x1..xn).

A k-form is stored sparsely as {increasing 1-based index tuple: Poly}.
Zero coefficients are never stored, so structural equality is value equality.

Operations:
  1. wedge         – graded-commutative exterior product
  2. interior      – contraction by a basis multivector u_{i1}∧...∧u_{ip}
  3. contract      – contraction by a general vector field
  4. dual_form     – u_I ⌟ vol, the (n-p)-form dual to an index set
  5. d             – exterior derivative
  6. evaluate_on   – value of a form on vectors at a point

Interior convention: i_{u_{i1}} is applied first, so that
u_{12} ⌟ e^{12} = 1 and u_{21} ⌟ e^{12} = -1.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import sympy
from sympy import Poly
from sympy.combinatorics import Permutation

from core.errors import ContractViolation
from utils.logger import get_custom_logger

logger = get_custom_logger("exterior")


# ── Chart helpers ────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def coordinates(n: int) -> tuple[sympy.Symbol, ...]:
    """The chart symbols x1..xn shared by every form of dimension n."""
    if n < 1:
        raise ContractViolation(f"chart dimension must be positive, got {n}")
    return tuple(sympy.symbols(f"x1:{n + 1}"))


def as_poly(value, n: int) -> Poly:
    gens = coordinates(n)
    if isinstance(value, Poly):
        if value.gens == gens:
            return value
        return Poly(value.as_expr(), *gens)
    return Poly(value, *gens)


def sort_with_sign(indices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort a repeat-free index sequence and return the permutation sign."""
    seq = list(indices)
    if len(set(seq)) != len(seq):
        raise ContractViolation(f"repeated index in {tuple(seq)}")
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return tuple(sorted(seq)), sign


# ── Multi-indices ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class MultiIndex:
    """Strictly increasing 1-based index set I ⊂ {1..n} with cached complement and sign."""

    dim: int
    indices: tuple[int, ...]

    def __post_init__(self):
        if any(not 1 <= i <= self.dim for i in self.indices):
            raise ContractViolation(f"index out of range 1..{self.dim}: {self.indices}")
        if list(self.indices) != sorted(set(self.indices)):
            raise ContractViolation(f"multi-index must be strictly increasing: {self.indices}")

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.dim + 1) if i not in self.indices)

    @property
    def sign(self) -> int:
        return shuffle_sign(self.dim, self.indices)


def shuffle_sign(n: int, indices: Sequence[int]) -> int:
    """ε(I): the sign of the permutation (I, sorted complement of I) of 1..n."""
    seq = tuple(indices)
    if len(set(seq)) != len(seq):
        raise ContractViolation(f"repeated index in {seq}")
    if any(not 1 <= i <= n for i in seq):
        raise ContractViolation(f"index out of range 1..{n}: {seq}")
    rest = [i for i in range(1, n + 1) if i not in seq]
    return Permutation([i - 1 for i in (*seq, *rest)]).signature()


# ── Forms ────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Form:
    dim: int
    degree: int
    terms: Mapping[tuple[int, ...], Poly]

    def __post_init__(self):
        if self.degree < 0:
            raise ContractViolation(f"degree must be non-negative, got {self.degree}")
        if self.degree > self.dim and self.terms:
            raise ContractViolation(f"a {self.degree}-form on a {self.dim}-dimensional chart must be zero")
        clean = {}
        for key, coeff in self.terms.items():
            if len(key) != self.degree:
                raise ContractViolation(f"term {key} does not have degree {self.degree}")
            if list(key) != sorted(set(key)) or any(not 1 <= i <= self.dim for i in key):
                raise ContractViolation(f"term index {key} is not an increasing multi-index")
            poly = as_poly(coeff, self.dim)
            if not poly.is_zero:
                clean[key] = poly
        object.__setattr__(self, "terms", clean)

    # ── Constructors ──

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls(dim, degree, {})

    @classmethod
    def scalar(cls, dim: int, value) -> "Form":
        return cls(dim, 0, {(): value})

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], coeff=1) -> "Form":
        """coeff · e^{i1}∧...∧e^{ip}; unsorted indices are sorted with their sign."""
        key, sign = sort_with_sign(indices)
        return cls(dim, len(key), {key: sign * as_poly(coeff, dim)})

    @classmethod
    def from_components(cls, dim: int, degree: int, components: Mapping[Sequence[int], object]) -> "Form":
        """Build a form from possibly unsorted index tuples; duplicates add."""
        acc: dict[tuple[int, ...], Poly] = {}
        for indices, coeff in components.items():
            key, sign = sort_with_sign(indices)
            _accumulate(acc, key, sign * as_poly(coeff, dim))
        return cls(dim, degree, acc)

    @classmethod
    def one_form(cls, dim: int, coefficients: Sequence[object]) -> "Form":
        if len(coefficients) != dim:
            raise ContractViolation(f"expected {dim} coefficients, got {len(coefficients)}")
        return cls(dim, 1, {(k + 1,): c for k, c in enumerate(coefficients)})

    # ── Accessors ──

    def component(self, indices: Sequence[int]) -> Poly:
        key, sign = sort_with_sign(indices)
        poly = self.terms.get(key)
        if poly is None:
            return as_poly(0, self.dim)
        return poly if sign > 0 else -poly

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def at(self, point: Sequence) -> "Form":
        """Constant form with the coefficients evaluated at a point."""
        return Form(self.dim, self.degree, {k: evaluate(p, point) for k, p in self.terms.items()})

    def values_at(self, point: Sequence) -> dict[tuple[int, ...], sympy.Expr]:
        return {k: evaluate(p, point) for k, p in self.terms.items()}

    def partial(self, k: int) -> "Form":
        gen = coordinates(self.dim)[k - 1]
        return Form(self.dim, self.degree, {key: p.diff(gen) for key, p in self.terms.items()})

    # ── Arithmetic ──

    def __add__(self, other: "Form") -> "Form":
        _check_compatible(self, other)
        acc = dict(self.terms)
        for key, poly in other.terms.items():
            _accumulate(acc, key, poly)
        return Form(self.dim, self.degree, acc)

    def __neg__(self) -> "Form":
        return Form(self.dim, self.degree, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, scalar) -> "Form":
        if isinstance(scalar, Form):
            return wedge(self, scalar)
        factor = as_poly(scalar, self.dim)
        return Form(self.dim, self.degree, {k: p * factor for k, p in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.dim, self.degree) == (other.dim, other.degree) and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"Form(dim={self.dim}, degree={self.degree}, 0)"
        parts = []
        for key in sorted(self.terms):
            basis = "∧".join(f"dx{i}" for i in key) or "1"
            parts.append(f"({self.terms[key].as_expr()})·{basis}")
        return " + ".join(parts)


def _accumulate(acc: dict, key: tuple[int, ...], poly: Poly) -> None:
    if key in acc:
        total = acc[key] + poly
        if total.is_zero:
            del acc[key]
        else:
            acc[key] = total
    elif not poly.is_zero:
        acc[key] = poly


def _check_compatible(a: Form, b: Form) -> None:
    if a.dim != b.dim:
        raise ContractViolation(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.degree != b.degree:
        raise ContractViolation(f"degree mismatch: {a.degree} vs {b.degree}")


def evaluate(poly: Poly, point: Sequence):
    """Exact value of a chart polynomial at a point of matching dimension."""
    if len(point) != len(poly.gens):
        raise ContractViolation(f"point has {len(point)} coordinates, chart has {len(poly.gens)}")
    if poly.is_zero:
        return sympy.Integer(0)
    return sympy.expand(poly.as_expr().subs(dict(zip(poly.gens, point)), simultaneous=True))


# ── Exterior product ─────────────────────────────────────────────────────

def wedge(a: Form, b: Form) -> Form:
    if a.dim != b.dim:
        raise ContractViolation(f"dimension mismatch: {a.dim} vs {b.dim}")
    degree = a.degree + b.degree
    if degree > a.dim:
        return Form.zero(a.dim, degree)
    acc: dict[tuple[int, ...], Poly] = {}
    for left, f in a.terms.items():
        left_set = set(left)
        for right, g in b.terms.items():
            if left_set.intersection(right):
                continue
            key, sign = sort_with_sign(left + right)
            product = f * g
            _accumulate(acc, key, product if sign > 0 else -product)
    return Form(a.dim, degree, acc)


def wedge_all(forms: Iterable[Form], dim: int) -> Form:
    result = Form.scalar(dim, 1)
    for form in forms:
        result = wedge(result, form)
    return result


# ── Interior products ────────────────────────────────────────────────────

def _interior_basis(k: int, a: Form) -> Form:
    if a.degree == 0:
        return Form.zero(a.dim, 0)
    acc: dict[tuple[int, ...], Poly] = {}
    for key, poly in a.terms.items():
        if k not in key:
            continue
        r = key.index(k)
        rest = key[:r] + key[r + 1:]
        _accumulate(acc, rest, poly if r % 2 == 0 else -poly)
    return Form(a.dim, a.degree - 1, acc)


def interior(indices: Sequence[int], a: Form) -> Form:
    """u_{i1}∧...∧u_{ip} ⌟ a, applying i_{u_{i1}} first.

    Contracting by more vectors than the degree gives the zero 0-form.
    """
    if len(set(indices)) != len(indices):
        raise ContractViolation(f"repeated index in multivector {tuple(indices)}")
    if any(not 1 <= k <= a.dim for k in indices):
        raise ContractViolation(f"multivector index out of range 1..{a.dim}: {tuple(indices)}")
    if len(indices) > a.degree:
        return Form.zero(a.dim, 0)
    result = a
    for k in indices:
        result = _interior_basis(k, result)
    return result


def contract(vector: Sequence, a: Form) -> Form:
    """i_X a for X = Σ X^k ∂_k with polynomial or rational components."""
    if len(vector) != a.dim:
        raise ContractViolation(f"vector has {len(vector)} components, chart has {a.dim}")
    if a.degree == 0:
        return Form.zero(a.dim, 0)
    result = Form.zero(a.dim, a.degree - 1)
    for k, component in enumerate(vector, start=1):
        if as_poly(component, a.dim).is_zero:
            continue
        result = result + _interior_basis(k, a) * component
    return result


def evaluate_on(a: Form, vectors: Sequence[Sequence], point: Sequence):
    """a(X1, ..., Xk) at a point, for k = degree(a) vectors given by their components there."""
    if len(vectors) != a.degree:
        raise ContractViolation(f"{a.degree}-form needs {a.degree} vectors, got {len(vectors)}")
    current = a.at(point)
    # a(X, Y) = i_Y i_X a
    for vector in vectors:
        current = contract(vector, current)
    return current.component(()).as_expr()


def volume(n: int) -> Form:
    return Form.basis(n, range(1, n + 1))


def dual_form(n: int, indices: Sequence[int]) -> Form:
    """e^{(n-p)}_I = u_I ⌟ vol = ε(I) e^{I^c}; I need not be sorted."""
    sign = shuffle_sign(n, indices)
    rest = [i for i in range(1, n + 1) if i not in indices]
    return Form.basis(n, rest, sign)


# ── Exterior derivative ─────────────────────────────────────────────────

def d(a: Form) -> Form:
    if a.degree >= a.dim:
        return Form.zero(a.dim, a.degree + 1)
    gens = coordinates(a.dim)
    acc: dict[tuple[int, ...], Poly] = {}
    for key, poly in a.terms.items():
        for k in range(1, a.dim + 1):
            if k in key:
                continue
            derivative = poly.diff(gens[k - 1])
            if derivative.is_zero:
                continue
            # moving dx^k past the indices of key smaller than k
            before = sum(1 for j in key if j < k)
            new_key = tuple(sorted((*key, k)))
            _accumulate(acc, new_key, derivative if before % 2 == 0 else -derivative)
    return Form(a.dim, a.degree + 1, acc)


def all_multi_indices(n: int, p: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), p))
