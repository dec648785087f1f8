"""
Differential Graded Algebra
===========================
Free graded-commutative algebra over Q[i] on named generators, with the
differential of the frame-bundle formulation and graded derivations of
degree −1 (variation contractions ι_X).

Generators:
  λ^A   coframe, degree 1            dλ^A = Λ^A − Σ_{B<C} c^A_{BC} λ^B λ^C
  Λ^A   curvature, degree 2          dΛ^A = −c^A_{BC} λ^B Λ^C
  field generators of any degree     d maps to the companion "d<name>"
  companions "d<name>"               d = 0

A monomial is a sorted tuple of generators; odd generators anticommute, a
repeated odd generator kills the monomial. Coefficients are QQ_I elements.

Tools:
  1. dual_lambda                 – λ^{(dim−p)}_I = ε(I) λ^{I^c}
  2. einstein_cartan_form        – Θ_EC + Σ p^{BC}_A Λ^A λ^{(8)}_{BC}
  3. dirac_form                  – spinor Poincaré-Cartan form with mass m
  4. verify_appendix_identities  – six coframe/spinor identities
  5. verify_el_multiplier        – ι_{∂p} dΘ̄ = ½ Λ^A λ^{(8)}_{BC}
  6. verify_el_coframe           – coframe Euler-Lagrange form of Θ̄
  7. verify_el_spinor            – spinor and coframe Euler-Lagrange forms of Θ̄_D
  8. multiplier_exactness        – ι_X d(pF) split into exact and Lie-derivative parts
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import sympy
from sympy.polys.domains import QQ_I

from core.algebra import SPACETIME_DIM, LieAlgebraData
from core.errors import ContractViolation
from core.exterior import shuffle_sign
from utils.logger import get_custom_logger

logger = get_custom_logger("dga")

_ZERO = QQ_I.zero

COFRAME = "lambda"
CURVATURE = "Lambda"
FAMILY_ORDER = {COFRAME: 0, CURVATURE: 1}


class GeneratorKind(str, Enum):
    COFRAME = "coframe"
    CURVATURE = "curvature"
    FIELD = "field"
    DIFFERENTIAL = "differential"


@dataclass(frozen=True)
class Generator:
    name: str
    index: tuple[int, ...]
    degree: int
    kind: GeneratorKind
    sort_key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "sort_key", (FAMILY_ORDER.get(self.name, 2), self.name, self.index))

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def differential(self) -> "Generator":
        if self.kind is not GeneratorKind.FIELD:
            raise ContractViolation(f"{self} has no companion differential generator")
        return Generator("d" + self.name, self.index, self.degree + 1, GeneratorKind.DIFFERENTIAL)

    def __str__(self):
        suffix = ",".join(str(i) for i in self.index)
        return f"{self.name}[{suffix}]" if suffix else self.name


Monomial = tuple[Generator, ...]


def lam(a: int) -> Generator:
    return Generator(COFRAME, (a,), 1, GeneratorKind.COFRAME)


def curv(a: int) -> Generator:
    return Generator(CURVATURE, (a,), 2, GeneratorKind.CURVATURE)


def field_generator(name: str, index: Sequence[int] = (), degree: int = 0) -> Generator:
    if name.startswith("d") or name in FAMILY_ORDER:
        raise ContractViolation(f"field name {name!r} collides with a reserved family")
    return Generator(name, tuple(index), degree, GeneratorKind.FIELD)


def variation_generator(a: int) -> Generator:
    """ε^A, the degree-1 variation parameter paired with Λ^A."""
    return field_generator("eps", (a,), 1)


def to_coefficient(value):
    if isinstance(value, QQ_I.dtype):
        return value
    return QQ_I.from_sympy(sympy.expand(sympy.sympify(value)))


def canonical(sequence: Sequence[Generator]) -> tuple[int, Monomial] | None:
    """Sort a product of generators, returning (Koszul sign, monomial) or None if it vanishes."""
    items = list(sequence)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1].sort_key > items[j].sort_key:
            if items[j - 1].odd and items[j].odd:
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for left, right in zip(items, items[1:]):
        if left.odd and left == right:
            return None
    return sign, tuple(items)


def _add_term(acc: dict, mono: Monomial, coeff) -> None:
    total = acc.get(mono, _ZERO) + coeff
    if total == _ZERO:
        acc.pop(mono, None)
    else:
        acc[mono] = total


# ── Elements ─────────────────────────────────────────────────────────────

class DgaElement:
    """Finite Q[i]-linear combination of canonical monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms = dict(terms or {})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[object, Sequence[Generator]]]) -> "DgaElement":
        acc: dict = {}
        for coeff, sequence in pairs:
            result = canonical(sequence)
            if result is None:
                continue
            sign, mono = result
            c = to_coefficient(coeff)
            _add_term(acc, mono, c if sign > 0 else -c)
        return cls(acc)

    @classmethod
    def generator(cls, g: Generator, coeff=1) -> "DgaElement":
        return cls.from_terms([(coeff, (g,))])

    @classmethod
    def scalar(cls, value) -> "DgaElement":
        return cls.from_terms([(value, ())])

    @classmethod
    def zero(cls) -> "DgaElement":
        return cls()

    # ── Queries ──

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def degrees(self) -> set[int]:
        return {sum(g.degree for g in mono) for mono in self.terms}

    @property
    def degree(self) -> int:
        degrees = self.degrees
        if len(degrees) > 1:
            raise ContractViolation(f"element is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop() if degrees else 0

    def generators(self) -> set[Generator]:
        return {g for mono in self.terms for g in mono}

    # ── Arithmetic ──

    def _coerce(self, other) -> "DgaElement":
        if isinstance(other, DgaElement):
            return other
        return DgaElement.scalar(other)

    def __add__(self, other) -> "DgaElement":
        other = self._coerce(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            _add_term(acc, mono, coeff)
        return DgaElement(acc)

    __radd__ = __add__

    def __neg__(self) -> "DgaElement":
        return DgaElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "DgaElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "DgaElement":
        return self._coerce(other) - self

    def scale(self, value) -> "DgaElement":
        c = to_coefficient(value)
        if c == _ZERO:
            return DgaElement()
        return DgaElement({m: coeff * c for m, coeff in self.terms.items()})

    def __mul__(self, other) -> "DgaElement":
        if not isinstance(other, DgaElement):
            return self.scale(other)
        acc: dict = {}
        for left, c1 in self.terms.items():
            odd_left = {g for g in left if g.odd}
            for right, c2 in other.terms.items():
                if any(g.odd and g in odd_left for g in right):
                    continue
                result = canonical(left + right)
                if result is None:
                    continue
                sign, mono = result
                product = c1 * c2
                _add_term(acc, mono, product if sign > 0 else -product)
        return DgaElement(acc)

    def __rmul__(self, other) -> "DgaElement":
        # scalars are central
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, DgaElement):
            return self.terms == other.terms
        try:
            return self.terms == DgaElement.scalar(other).terms
        except (TypeError, sympy.SympifyError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: [g.sort_key for g in m]):
            coeff = QQ_I.to_sympy(self.terms[mono])
            body = "·".join(str(g) for g in mono) or "1"
            parts.append(f"({coeff})·{body}")
        return " + ".join(parts)


def gen(g: Generator) -> DgaElement:
    return DgaElement.generator(g)


def sum_elements(elements: Iterable[DgaElement]) -> DgaElement:
    acc: dict = {}
    for element in elements:
        for mono, coeff in element.terms.items():
            _add_term(acc, mono, coeff)
    return DgaElement(acc)


def truncate(element: DgaElement, families: Iterable[str]) -> DgaElement:
    """Set every generator whose name (or companion name) is listed to zero."""
    names = set(families)
    names |= {"d" + n for n in names}
    return DgaElement({m: c for m, c in element.terms.items() if not any(g.name in names for g in m)})


# ── Differential ─────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class DifferentialRules:
    algebra: LieAlgebraData
    constant_fields: frozenset[str] = frozenset()
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def of_generator(self, g: Generator) -> DgaElement:
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        L = self.algebra
        if g.kind is GeneratorKind.COFRAME:
            (a,) = g.index
            pairs = [(1, (curv(a),))]
            pairs += [(-value, (lam(b), lam(c))) for aa, b, c, value in L.brackets if aa == a and b < c]
            result = DgaElement.from_terms(pairs)
        elif g.kind is GeneratorKind.CURVATURE:
            (a,) = g.index
            result = DgaElement.from_terms(
                (-value, (lam(b), curv(c))) for aa, b, c, value in L.brackets if aa == a
            )
        elif g.kind is GeneratorKind.FIELD and g.name not in self.constant_fields:
            result = gen(g.differential())
        else:
            result = DgaElement()
        self._cache[g] = result
        return result

    def __call__(self, element: DgaElement) -> DgaElement:
        return _apply_derivation(element, self.of_generator, degree_shift=1)


def _apply_derivation(element: DgaElement, rule, degree_shift: int) -> DgaElement:
    """Graded derivation: D(g1...gn) = Σ (−1)^{deg(g1...g_{r−1})} g1...D(g_r)...gn.

    The sign is the same for degree +1 and −1 derivations.
    """
    acc: dict = {}
    for mono, coeff in element.terms.items():
        prefix_degree = 0
        for r, g in enumerate(mono):
            image = rule(g)
            if image is not None and image.terms:
                left, right = mono[:r], mono[r + 1:]
                odd_rest = {h for h in left + right if h.odd}
                sign = -1 if prefix_degree % 2 else 1
                for inserted, c2 in image.terms.items():
                    if any(h.odd and h in odd_rest for h in inserted):
                        continue
                    result = canonical(left + inserted + right)
                    if result is None:
                        continue
                    s, canon = result
                    value = coeff * c2
                    _add_term(acc, canon, value if s * sign > 0 else -value)
            prefix_degree += g.degree
    return DgaElement(acc)


@dataclass(frozen=True, eq=False)
class VariationContraction:
    """Odd derivation ι_X of degree −1 given by its values on generators."""

    images: Mapping[Generator, DgaElement]
    name: str = "X"

    def __post_init__(self):
        for g, image in self.images.items():
            degrees = image.degrees
            if degrees and degrees != {g.degree - 1}:
                raise ContractViolation(f"ι({g}) must have degree {g.degree - 1}, got {sorted(degrees)}")

    def __call__(self, element: DgaElement) -> DgaElement:
        images = self.images
        return _apply_derivation(
            DgaElement({m: c for m, c in element.terms.items() if not images.keys().isdisjoint(m)}),
            images.get,
            degree_shift=-1,
        )


def lie_derivative(X: VariationContraction, rules: DifferentialRules, element: DgaElement) -> DgaElement:
    """L_X = d ι_X + ι_X d."""
    return rules(X(element)) + X(rules(element))


def coframe_variation(L: LieAlgebraData) -> VariationContraction:
    """ι(Λ^A) = ε^A for every algebra index."""
    return VariationContraction({curv(a): gen(variation_generator(a)) for a in range(L.dim)}, name="coframe")


def field_variation(g: Generator, weight=1) -> VariationContraction:
    """ι(dg) = weight; the contraction dual to the companion of a degree-0 field."""
    return VariationContraction({g.differential(): DgaElement.scalar(weight)}, name=f"∂{g}")


# ── Coframe duals ────────────────────────────────────────────────────────

def dual_lambda(L: LieAlgebraData | int, indices: Sequence[int]) -> DgaElement:
    """λ^{(dim−p)}_I = u_I ⌟ (λ^0 ... λ^{dim−1}) = ε(I) λ^{I^c}; 0-based indices."""
    dim = L if isinstance(L, int) else L.dim
    if len(set(indices)) != len(indices):
        raise ContractViolation(f"repeated index in {tuple(indices)}")
    if any(not 0 <= a < dim for a in indices):
        raise ContractViolation(f"index out of range 0..{dim - 1}: {tuple(indices)}")
    sign = shuffle_sign(dim, [a + 1 for a in indices])
    rest = tuple(lam(a) for a in range(dim) if a not in indices)
    return DgaElement.from_terms([(sign, rest)])


def covariant_coadjoint(rules: DifferentialRules, u: Sequence[DgaElement]) -> list[DgaElement]:
    """d^λ u_A = d u_A − c^C_{BA} λ^B u_C for lower-index algebra-valued elements."""
    L = rules.algebra
    if len(u) != L.dim:
        raise ContractViolation(f"expected {L.dim} components, got {len(u)}")
    out = [rules(component) for component in u]
    for c, b, a, value in L.brackets:
        if not u[c].is_zero:
            out[a] = out[a] - (gen(lam(b)) * u[c]).scale(value)
    return out


# ── Builders: Einstein-Cartan ───────────────────────────────────────────

def multiplier_pairs(L: LieAlgebraData) -> list[tuple[int, int]]:
    """Index pairs B < C carrying a multiplier; translation-translation pairs are excluded."""
    return [
        (b, c)
        for b in range(L.dim)
        for c in range(b + 1, L.dim)
        if not (L.is_translation(b) and L.is_translation(c))
    ]


def multiplier_generator(a: int, b: int, c: int) -> Generator:
    """p^{BC}_A with B < C."""
    if not b < c:
        raise ContractViolation(f"multiplier index pair must be increasing, got ({b},{c})")
    return field_generator("p", (a, b, c), 0)


def einstein_hilbert_coefficients(L: LieAlgebraData) -> list[tuple[int, int, int, sympy.Expr]]:
    """Constant multipliers (A, B, C, p^{BC}_A) on translation pairs B < C.

    p^{bc}_i = 2ρ^b_{i,d}η^{dc} on rotations and zero on translations; empty for
    algebras without a rotation representation.
    """
    if L.rho is None or L.signature is None:
        return []
    p = L.multiplier_constants
    out = []
    for k, a in enumerate(L.rotations):
        for b in range(SPACETIME_DIM):
            for c in range(b + 1, SPACETIME_DIM):
                if p[k, b, c] != 0:
                    out.append((a, L.translations[b], L.translations[c], p[k, b, c]))
    return out


def multiplier_coefficients(
    L: LieAlgebraData, free: bool = True, constant: bool = True
) -> dict[int, list[tuple[int, int, DgaElement]]]:
    """Coefficient of Λ^A λ^{(8)}_{BC} in Θ̄ for each A, as (B, C, coefficient) with B < C."""
    table: dict[int, list] = {a: [] for a in range(L.dim)}
    if free:
        for a in range(L.dim):
            table[a].extend((b, c, gen(multiplier_generator(a, b, c))) for b, c in multiplier_pairs(L))
    if constant:
        for a, b, c, value in einstein_hilbert_coefficients(L):
            table[a].append((b, c, DgaElement.scalar(value)))
    return table


def _poincare_cartan(L: LieAlgebraData, table) -> DgaElement:
    return sum_elements(
        coeff * gen(curv(a)) * dual_lambda(L, (b, c)) for a, entries in table.items() for b, c, coeff in entries
    )


def einstein_hilbert_form(L: LieAlgebraData) -> DgaElement:
    """Θ_EC = Σ_i Σ_{b<c} p^{bc}_i Λ^i λ^{(8)}_{bc} with the constant multipliers."""
    return _poincare_cartan(L, multiplier_coefficients(L, free=False))


def einstein_cartan_form(L: LieAlgebraData) -> DgaElement:
    """Θ̄ = Θ_EC + Σ_A Σ_{B<C} p^{BC}_A Λ^A λ^{(8)}_{BC}, translation pairs held at their constants."""
    form = _poincare_cartan(L, multiplier_coefficients(L))
    logger.debug("Einstein-Cartan form on %s: %d terms", L.name, len(form))
    return form


def multiplier_variation(a: int, b: int, c: int) -> VariationContraction:
    """ι(dp^{BC}_A) = ½, the antisymmetrized δ with ½ per index pair."""
    return field_variation(multiplier_generator(a, b, c), sympy.Rational(1, 2))


# ── Builders: spinors ────────────────────────────────────────────────────

SPINOR_FAMILIES = ("s", "sbar", "kappa", "kappabar")


def spinor_symbols(name: str, rotation: int | None = None) -> list[DgaElement]:
    """Four degree-0 component generators name[α] (or name[α, i] for frame spinors)."""
    index = (lambda alpha: (alpha,)) if rotation is None else (lambda alpha: (alpha, rotation))
    return [gen(field_generator(name, index(alpha), 0)) for alpha in range(4)]


def matrix_action(matrix, vector: Sequence[DgaElement]) -> list[DgaElement]:
    """(M v)^α = Σ_β M^α_β v^β."""
    out = []
    for alpha in range(4):
        out.append(sum_elements(vector[beta].scale(matrix[alpha, beta]) for beta in range(4) if matrix[alpha, beta] != 0))
    return out


def row_action(row: Sequence[DgaElement], matrix) -> list[DgaElement]:
    """(w M)_α = Σ_β w_β M^β_α."""
    out = []
    for alpha in range(4):
        out.append(sum_elements(row[beta].scale(matrix[beta, alpha]) for beta in range(4) if matrix[beta, alpha] != 0))
    return out


def pair(row: Sequence[DgaElement], column: Sequence[DgaElement]) -> DgaElement:
    return sum_elements(row[alpha] * column[alpha] for alpha in range(4))


def bilinear(row: Sequence[DgaElement], matrix, column: Sequence[DgaElement]) -> DgaElement:
    return pair(row, matrix_action(matrix, column))


def _spin_generators(L: LieAlgebraData, spin) -> list:
    if spin is None:
        return [sympy.zeros(4) for _ in L.rotations]
    if len(spin) != len(L.rotations):
        raise ContractViolation(f"expected {len(L.rotations)} spin generators, got {len(spin)}")
    return list(spin)


def covariant_spinor(rules: DifferentialRules, spin, s: Sequence[DgaElement]) -> list[DgaElement]:
    """D s = ds + λ^i S_i s."""
    L = rules.algebra
    out = [rules(component) for component in s]
    for i, S in zip(L.rotations, _spin_generators(L, spin)):
        acted = matrix_action(S, s)
        for alpha in range(4):
            if not acted[alpha].is_zero:
                out[alpha] = out[alpha] + gen(lam(i)) * acted[alpha]
    return out


def covariant_cospinor(rules: DifferentialRules, spin, sbar: Sequence[DgaElement]) -> list[DgaElement]:
    """D s̄ = ds̄ − λ^i s̄ S_i."""
    L = rules.algebra
    out = [rules(component) for component in sbar]
    for i, S in zip(L.rotations, _spin_generators(L, spin)):
        acted = row_action(sbar, S)
        for alpha in range(4):
            if not acted[alpha].is_zero:
                out[alpha] = out[alpha] - gen(lam(i)) * acted[alpha]
    return out


def covariant_spinor_form(rules: DifferentialRules, spin, forms: Sequence[DgaElement]) -> list[DgaElement]:
    """d^λ on a spinor-valued form of any degree: dφ + λ^i ∧ S_i φ."""
    return covariant_spinor(rules, spin, forms)


@dataclass(frozen=True)
class SpinorFields:
    s: list
    sbar: list
    kappa: list            # kappa[i][α] = κ^{αi}
    kappabar: list         # kappabar[i][α] = κ̄^i_α


def spinor_fields(L: LieAlgebraData) -> SpinorFields:
    return SpinorFields(
        s=spinor_symbols("s"),
        sbar=spinor_symbols("sbar"),
        kappa=[spinor_symbols("kappa", i) for i in L.rotations],
        kappabar=[spinor_symbols("kappabar", i) for i in L.rotations],
    )


def dirac_form(L: LieAlgebraData, rep, mass=1, rules: DifferentialRules | None = None) -> DgaElement:
    """Θ̄_D = ½(s̄γ^aDs − Ds̄γ^as)λ^{(9)}_a + (i/2)(κ̄^iDs − Ds̄κ^i)λ^{(9)}_i − m s̄s λ^{(10)}."""
    if not L.translations or len(L.translations) != SPACETIME_DIM:
        raise ContractViolation(f"algebra {L.name} has no spacetime translations")
    rules = rules or DifferentialRules(L)
    f = spinor_fields(L)
    Ds = covariant_spinor(rules, rep.spin_generators, f.s)
    Dsbar = covariant_cospinor(rules, rep.spin_generators, f.sbar)
    half = sympy.Rational(1, 2)
    terms = []
    for a, t in enumerate(L.translations):
        g = rep.gamma_upper(a)
        current = bilinear(f.sbar, g, Ds) - bilinear(Dsbar, g, f.s)
        terms.append(current.scale(half) * dual_lambda(L, (t,)))
    for k, i in enumerate(L.rotations):
        current = pair(f.kappabar[k], Ds) - pair(Dsbar, f.kappa[k])
        terms.append(current.scale(sympy.I / 2) * dual_lambda(L, (i,)))
    terms.append((pair(f.sbar, f.s) * dual_lambda(L, ())).scale(-sympy.sympify(mass)))
    form = sum_elements(terms)
    logger.debug("Dirac form on %s: %d terms", L.name, len(form))
    return form


# ── Identity checks ──────────────────────────────────────────────────────

def _record(identity: str, residual: DgaElement) -> dict:
    return {"identity": identity, "residual_terms": len(residual)}


def differential_square_residual(rules: DifferentialRules, generators: Iterable[Generator]) -> int:
    return sum(len(rules(rules(gen(g)))) for g in generators)


def verify_appendix_identities(L: LieAlgebraData, rep=None) -> list[dict]:
    """The six structural identities of the coframe and spinor differentials.

    Without a Clifford representation the spinor identities use S_i = 0.
    """
    rules = DifferentialRules(L)
    spin = rep.spin_generators if rep is not None else None
    dim = L.dim
    lam_ = [gen(lam(a)) for a in range(dim)]
    curv_ = [gen(curv(a)) for a in range(dim)]
    records = []

    top = rules(dual_lambda(L, ()))
    expected = sum_elements(curv_[a] * dual_lambda(L, (a,)) for a in range(dim))
    records.append(_record("d λ^(10) = Λ^A λ^(9)_A", top - expected))

    residual = DgaElement()
    for a in range(dim):
        lhs = rules(dual_lambda(L, (a,)))
        rhs = sum_elements(curv_[b] * dual_lambda(L, (a, b)) for b in range(dim) if b != a)
        residual = residual + lhs - rhs
    records.append(_record("d λ^(9)_A = Λ^B λ^(8)_AB", residual))

    residual = DgaElement()
    for a in range(dim):
        for b in range(a + 1, dim):
            lhs = rules(dual_lambda(L, (a, b)))
            rhs = sum_elements(curv_[c] * dual_lambda(L, (a, b, c)) for c in range(dim) if c not in (a, b))
            rhs = rhs - sum_elements(dual_lambda(L, (c,)).scale(L.structure[c, a, b]) for c in range(dim) if L.structure[c, a, b] != 0)
            residual = residual + lhs - rhs
    records.append(_record("d λ^(8)_AB = Λ^C λ^(7)_ABC − c^C_AB λ^(9)_C", residual))

    s, sbar = spinor_symbols("s"), spinor_symbols("sbar")
    Ds = covariant_spinor(rules, spin, s)
    Dsbar = covariant_cospinor(rules, spin, sbar)
    residual = rules(pair(sbar, s)) - pair(Dsbar, s) - pair(sbar, Ds)
    records.append(_record("d(s̄s) = Ds̄ s + s̄ Ds", residual))

    residual = DgaElement()
    for a in range(dim):
        twist = sum_elements((lam_[b] * curv_[c]).scale(value) for aa, b, c, value in L.brackets if aa == a)
        residual = residual + rules(curv_[a]) + twist
    records.append(_record("dΛ^A + c^A_BC λ^B Λ^C = 0", residual))

    DDs = covariant_spinor_form(rules, spin, Ds)
    expected = [DgaElement() for _ in range(4)]
    for i, S in zip(L.rotations, _spin_generators(L, spin)):
        acted = matrix_action(S, s)
        expected = [expected[alpha] + curv_[i] * acted[alpha] for alpha in range(4)]
    residual = sum_elements(DDs[alpha] - expected[alpha] for alpha in range(4))
    records.append(_record("D D s = Λ^i S_i s", residual))

    for record in records:
        logger.debug("%s on %s: %d residual terms", record["identity"], L.name, record["residual_terms"])
    return records


def verify_el_multiplier(L: LieAlgebraData, rules: DifferentialRules | None = None) -> dict:
    """ι_{∂^{BC}_A} dΘ̄ − ½ Λ^A λ^{(8)}_{BC} over every multiplier; returns the summed term count."""
    rules = rules or DifferentialRules(L)
    differential = rules(einstein_cartan_form(L))
    half = sympy.Rational(1, 2)
    residual_terms = 0
    checked = 0
    for a in range(L.dim):
        for b, c in multiplier_pairs(L):
            X = multiplier_variation(a, b, c)
            expected = (gen(curv(a)) * dual_lambda(L, (b, c))).scale(half)
            residual_terms += len(X(differential) - expected)
            checked += 1
    return {"identity": "ι_∂p dΘ̄ = ½ Λ^A λ^(8)_BC", "residual_terms": residual_terms, "multipliers": checked}


def coframe_euler_lagrange(
    L: LieAlgebraData, rules: DifferentialRules, coefficients: dict | None = None
) -> DgaElement:
    """ε^A ∧ (Σ_D Σ_{B<C} p^{BC}_D Λ^D λ^{(7)}_{BCA} + d^λ u_A), u_A = Σ_{B<C} p^{BC}_A λ^{(8)}_{BC}.

    `coefficients` is a `multiplier_coefficients` table; the default covers the whole of Θ̄.
    """
    table = coefficients if coefficients is not None else multiplier_coefficients(L)
    u = [sum_elements(coeff * dual_lambda(L, (b, c)) for b, c, coeff in table[a]) for a in range(L.dim)]
    du = covariant_coadjoint(rules, u)
    terms = []
    for a in range(L.dim):
        curvature_part = sum_elements(
            coeff * gen(curv(dd)) * dual_lambda(L, (b, c, a))
            for dd in range(L.dim)
            for b, c, coeff in table[dd]
            if a not in (b, c)
        )
        terms.append(gen(variation_generator(a)) * (curvature_part + du[a]))
    return sum_elements(terms)


def verify_el_coframe(L: LieAlgebraData, constant_multipliers: bool = False) -> dict:
    rules = DifferentialRules(L, frozenset({"p"}) if constant_multipliers else frozenset())
    X = coframe_variation(L)
    lhs = X(rules(einstein_cartan_form(L)))
    residual = lhs - coframe_euler_lagrange(L, rules)
    label = "ι_X dΘ̄ = ε^A(p Λ λ^(7) + d^λ u_A)"
    if constant_multipliers:
        label += " with dp = 0"
    return _record(label, residual)


def spinor_euler_lagrange(L: LieAlgebraData, rep, mass, rules: DifferentialRules) -> dict[str, list]:
    """Closed forms of the spinor and coframe Euler-Lagrange forms of Θ̄_D."""
    f = spinor_fields(L)
    spin = rep.spin_generators
    Ds = covariant_spinor(rules, spin, f.s)
    Dsbar = covariant_cospinor(rules, spin, f.sbar)
    m = sympy.sympify(mass)
    half, i_half = sympy.Rational(1, 2), sympy.I / 2
    top = dual_lambda(L, ())
    lam9 = {a: dual_lambda(L, (a,)) for a in range(L.dim)}

    kappabar = {}
    kappa = {}
    for k, i in enumerate(L.rotations):
        for alpha in range(4):
            kappabar[(k, alpha)] = (Ds[alpha] * lam9[i]).scale(i_half)
            kappa[(k, alpha)] = (Dsbar[alpha] * lam9[i]).scale(-i_half)

    sbar = []
    for alpha in range(4):
        parts = []
        for a, t in enumerate(L.translations):
            g = rep.gamma_upper(a)
            parts.append(matrix_action(g, Ds)[alpha] * lam9[t])
            gs = matrix_action(g, f.s)[alpha]
            for b in range(L.dim):
                if b != t:
                    parts.append((gs * gen(curv(b)) * dual_lambda(L, (t, b))).scale(half))
        for k, i in enumerate(L.rotations):
            parts.append(rules(f.kappa[k][alpha] * lam9[i]).scale(i_half))
            for j, S in zip(L.rotations, spin):
                acted = matrix_action(S, f.kappa[k])[alpha]
                if not acted.is_zero:
                    parts.append((gen(lam(j)) * acted * lam9[i]).scale(i_half))
        parts.append((f.s[alpha] * top).scale(-m))
        sbar.append(sum_elements(parts))

    coframe_parts = []
    for b in range(L.dim):
        inner = []
        for a, t in enumerate(L.translations):
            if t == b:
                continue
            g = rep.gamma_upper(a)
            current = bilinear(f.sbar, g, Ds) - bilinear(Dsbar, g, f.s)
            inner.append((current * dual_lambda(L, (t, b))).scale(half))
        for k, i in enumerate(L.rotations):
            if i == b:
                continue
            current = pair(f.kappabar[k], Ds) - pair(Dsbar, f.kappa[k])
            inner.append((current * dual_lambda(L, (i, b))).scale(i_half))
        inner.append((pair(f.sbar, f.s) * lam9[b]).scale(m))
        coframe_parts.append(-(gen(variation_generator(b)) * sum_elements(inner)))
    for j, S in zip(L.rotations, spin):
        inner = []
        for a, t in enumerate(L.translations):
            g = rep.gamma_upper(a)
            anti = S * g + g * S
            inner.append((bilinear(f.sbar, anti, f.s) * lam9[t]).scale(half))
        for k, i in enumerate(L.rotations):
            current = bilinear(f.kappabar[k], S, f.s) + bilinear(f.sbar, S, f.kappa[k])
            inner.append((current * lam9[i]).scale(i_half))
        coframe_parts.append(gen(variation_generator(j)) * sum_elements(inner))

    return {
        "kappabar": kappabar,
        "kappa": kappa,
        "sbar": sbar,
        "coframe": sum_elements(coframe_parts),
    }


def verify_el_spinor(L: LieAlgebraData, rep, mass=1) -> list[dict]:
    rules = DifferentialRules(L)
    f = spinor_fields(L)
    differential = rules(dirac_form(L, rep, mass, rules))
    expected = spinor_euler_lagrange(L, rep, mass, rules)
    records = []

    residual = 0
    for (k, alpha), form in expected["kappabar"].items():
        X = field_variation(f.kappabar[k][alpha].generators().pop())
        residual += len(X(differential) - form)
    records.append({"identity": "ι_∂κ̄ dΘ̄_D = (i/2) Ds λ^(9)_i", "residual_terms": residual})

    residual = 0
    for (k, alpha), form in expected["kappa"].items():
        X = field_variation(f.kappa[k][alpha].generators().pop())
        residual += len(X(differential) - form)
    records.append({"identity": "ι_∂κ dΘ̄_D = −(i/2) Ds̄ λ^(9)_i", "residual_terms": residual})

    residual = 0
    for alpha in range(4):
        X = field_variation(f.sbar[alpha].generators().pop())
        residual += len(X(differential) - expected["sbar"][alpha])
    records.append({"identity": "ι_∂s̄ dΘ̄_D = Dirac operator form", "residual_terms": residual})

    residual = len(coframe_variation(L)(differential) - expected["coframe"])
    records.append({"identity": "ι_X dΘ̄_D = spinor energy-momentum and spin form", "residual_terms": residual})

    mass_term = (pair(f.sbar, f.s) * dual_lambda(L, ())).scale(-sympy.sympify(mass))
    mass_differential = rules(mass_term)
    residual = 0
    for alpha in range(4):
        X = field_variation(f.sbar[alpha].generators().pop())
        residual += len(X(mass_differential) - (f.s[alpha] * dual_lambda(L, ())).scale(-sympy.sympify(mass)))
    records.append({"identity": "mass term gives −m s λ^(10)", "residual_terms": residual})

    residual = 0
    for form in (*expected["kappabar"].values(), *expected["kappa"].values(), *expected["sbar"], expected["coframe"]):
        residual += len(truncate(form, SPINOR_FAMILIES))
    records.append({"identity": "zero spinor sector has vanishing Euler-Lagrange forms", "residual_terms": residual})
    return records


# ── Multiplier exactness ────────────────────────────────────────────────

@dataclass(frozen=True)
class ExactnessSplit:
    euler_lagrange: DgaElement
    primitive: DgaElement
    exact_term: DgaElement
    lie_term: DgaElement
    residual: DgaElement


def multiplier_exactness(
    rules: DifferentialRules,
    X: VariationContraction,
    multiplier: DgaElement,
    form: DgaElement,
) -> ExactnessSplit:
    """ι_X d(pF) = −d((−1)^{|p|} p ι_X F) + p L_X F for ι_X p = ι_X dp = 0."""
    if not X(multiplier).is_zero or not X(rules(multiplier)).is_zero:
        raise ContractViolation("multiplier exactness needs ι_X p = ι_X dp = 0")
    sign = -1 if multiplier.degree % 2 else 1
    euler_lagrange = X(rules(multiplier * form))
    primitive = (multiplier * X(form)).scale(sign)
    exact_term = -rules(primitive)
    lie_term = multiplier * lie_derivative(X, rules, form)
    residual = euler_lagrange - exact_term - lie_term
    return ExactnessSplit(euler_lagrange, primitive, exact_term, lie_term, residual)
