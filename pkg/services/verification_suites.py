"""
Verification Suites
===================
Every identity check is a plain function of a CheckContext returning
{"terms": <non-zero residual entries>, "parameters": {...}}; a check may add
"informational": True when its value is reported, not asserted.

Suites:
  1. appendixA – exterior algebra and Lie algebra identities
  2. appendixB – Clifford representation identities, all four signatures
  3. appendixC – free DGA identities, d∘d and Leibniz
  4. el        – Euler-Lagrange forms and multiplier exactness
  5. bianchi   – curvature identities of random polynomial states
  6. fieldeq   – torsion decomposition, field equations, Levi-Civita comparison

CHECK_DEFINITIONS fixes the registry order and gives each check a short
description ("anchor") and the exact statement it verifies ("identity");
CHECK_DISPATCH maps ids to functions.
"""

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from core.algebra import (
    SPACETIME_DIM,
    SUPPORTED_SIGNATURES,
    MetricSignature,
    abelian,
    algebra_by_name,
    antisym_kronecker,
    is_pair_symmetric,
    jacobi_residual,
    lc_contraction_residual,
    lower_index,
    multiplier_contraction,
    rho_antisymmetry_residual,
    semidirect,
    so_basis,
    unimodularity_residual,
)
from core.clifford import (
    anticommutator,
    anticommutator_residual,
    axial_current,
    axial_hermiticity_residual,
    beta_isometry_residual,
    beta_residual,
    build_rep,
    check_sigma_gamma_anticom,
    gamma5_square_residual,
    gamma_equivariance_residual,
    hermitian_signature,
    spin_closure_residual,
)
from core.dga import (
    DgaElement,
    DifferentialRules,
    coframe_variation,
    curv,
    differential_square_residual,
    dual_lambda,
    field_generator,
    field_variation,
    gen,
    lam,
    multiplier_exactness,
    multiplier_generator,
    verify_appendix_identities,
    verify_el_coframe,
    verify_el_multiplier,
    verify_el_spinor,
)
from core.exact import nonzero_count, zeros
from core.exterior import Form, all_multi_indices, coordinates, d, dual_form, interior, volume, wedge
from core.fieldeq import (
    FieldState,
    axial_dual,
    axial_tensor,
    axial_torsion_state,
    bianchi_belinfante_check,
    decompose_torsion,
    ecd_residuals,
    lc_comparison,
    spin_torsion,
    spinor_point,
    vacuum_crosscheck,
)
from core.geometry import (
    GeometryState,
    bianchi_check,
    bianchi_residual,
    cartan_bracket_identity,
    curvature_variation_residual,
    einstein_contraction,
    exact_coframe,
    maurer_cartan_residual,
    point_data,
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
from utils.logger import get_custom_logger

logger = get_custom_logger("verification_suites")

N = SPACETIME_DIM
SUITES = ("appendixA", "appendixB", "appendixC", "el", "bianchi", "fieldeq")
ALL_SIGNATURES = tuple(MetricSignature(p, q) for p, q in SUPPORTED_SIGNATURES)
EUCLIDEAN = MetricSignature(4, 0)
LORENTZIAN = MetricSignature(1, 3)


@dataclass(frozen=True)
class CheckContext:
    signature: MetricSignature
    algebra: str
    trials: int
    degree: int
    rng: random.Random
    state_path: str | None = None

    @property
    def state(self) -> GeometryState | FieldState | None:
        return _cached_state(self.state_path) if self.state_path else None

    @property
    def sample_count(self) -> int:
        """Draws for the heavier pointwise checks."""
        return max(1, self.trials // 5)


@lru_cache(maxsize=4)
def _cached_state(path: str):
    return load_state(path)


def _result(terms: int, **parameters) -> dict:
    return {"terms": int(terms), "parameters": parameters}


def _form_terms(forms) -> int:
    return sum(len(f.terms) for f in forms)


def _random_form(rng: random.Random, n: int, degree: int, poly_degree: int, components: int = 2) -> Form:
    indices = all_multi_indices(n, degree)
    chosen = rng.sample(indices, min(components, len(indices)))
    return Form.from_components(n, degree, {I: random_polynomial(rng, n, poly_degree) for I in chosen})


def _random_spinor(rng: random.Random, degree: int = 0) -> tuple:
    return tuple(
        random_polynomial(rng, N, degree, 1) + sympy.I * random_rational(rng) + random_rational(rng)
        for _ in range(4)
    )


def _flat_state(sig: MetricSignature) -> GeometryState:
    return axial_torsion_state(sig, (0, 0, 0, 0), (0, 0, 0, 0)).geometry


def _as_field_state(state) -> FieldState:
    if isinstance(state, FieldState):
        return state
    return FieldState(state, (0, 0, 0, 0), 0)


# ── appendixA: exterior algebra ─────────────────────────────────────────

def check_wedge_examples(ctx: CheckContext) -> dict:
    dx1, dx2 = Form.basis(4, (1,)), Form.basis(4, (2,))
    x1 = Form.one_form(4, [coordinates(4)[0], 0, 0, 0])
    diffs = [
        wedge(dx1, dx2) - Form.basis(4, (1, 2)),
        wedge(dx1, dx1),
        wedge(x1 + dx2, dx1) + Form.basis(4, (1, 2)),
    ]
    return _result(_form_terms(diffs), examples=len(diffs))


def check_interior_delta(ctx: CheckContext) -> dict:
    mismatches = 0
    for p in range(1, 5):
        for I in all_multi_indices(4, p):
            for J in all_multi_indices(4, p):
                value = interior(I, Form.basis(4, J)).component(()).as_expr()
                mismatches += 0 if value == (1 if I == J else 0) else 1
    e12 = Form.basis(4, (1, 2))
    mismatches += 0 if interior((2, 1), e12).component(()).as_expr() == -1 else 1
    mismatches += len(interior((1,), Form.basis(4, (2, 3))).terms)
    return _result(mismatches, dimension=4)


def check_dual_pairing(ctx: CheckContext) -> dict:
    rng = ctx.rng
    residual = 0
    for I in (I for p in range(5) for I in all_multi_indices(4, p)):
        residual += len((wedge(Form.basis(4, I), dual_form(4, I)) - volume(4)).terms)
    for _ in range(ctx.trials):
        n = rng.choice((4, 10))
        p = rng.randint(0, 4)
        I = tuple(rng.sample(range(1, n + 1), p))
        a = _random_form(rng, n, p, ctx.degree, components=3)
        if rng.random() < 0.5:
            a = a + Form.basis(n, I, random_polynomial(rng, n, ctx.degree))
        f_I = a.component(I)
        residual += len((wedge(a, dual_form(n, I)) - volume(n) * f_I).terms)
    return _result(residual, trials=ctx.trials, dimensions=[4, 10])


def check_derivative_laws(ctx: CheckContext) -> dict:
    rng = ctx.rng
    residual = 0
    for _ in range(ctx.trials):
        n = rng.choice((4, 4, 10))
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        a = _random_form(rng, n, p, ctx.degree)
        b = _random_form(rng, n, q, ctx.degree)
        c = _random_form(rng, n, 1, ctx.degree)
        sign = -1 if p % 2 else 1
        graded = 1 if (p * q) % 2 == 0 else -1
        residual += len(d(d(a)).terms)
        residual += len((d(wedge(a, b)) - wedge(d(a), b) - wedge(a, d(b)) * sign).terms)
        residual += len((wedge(a, b) - wedge(b, a) * graded).terms)
        residual += len((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).terms)
    return _result(residual, trials=ctx.trials, degree=ctx.degree)


# ── appendixA: Lie algebra ──────────────────────────────────────────────

def check_jacobi(ctx: CheckContext) -> dict:
    algebras = (so_basis(ctx.signature), semidirect(ctx.signature), abelian())
    residual = sum(nonzero_count(jacobi_residual(L)) for L in algebras)
    return _result(residual, algebras=[L.name for L in algebras])


def check_unimodularity(ctx: CheckContext) -> dict:
    algebras = (so_basis(ctx.signature), semidirect(ctx.signature))
    residual = sum(nonzero_count(unimodularity_residual(L)) for L in algebras)
    residual += nonzero_count(rho_antisymmetry_residual(so_basis(ctx.signature)))
    return _result(residual, algebras=[L.name for L in algebras])


def check_levi_civita_contraction(ctx: CheckContext) -> dict:
    signatures = (EUCLIDEAN, LORENTZIAN)
    residual = sum(nonzero_count(lc_contraction_residual(sig)) for sig in signatures)
    return _result(residual, signatures=[str(s) for s in signatures], assignments=256)


def check_antisym_kronecker(ctx: CheckContext) -> dict:
    cases = (((1, 2, 3), (1, 2, 3), 1), ((1, 2, 3), (2, 1, 3), -1), ((1, 2, 3), (1, 1, 3), 0))
    residual = sum(1 for upper, lower, expected in cases if antisym_kronecker(upper, lower) != expected)
    return _result(residual, cases=len(cases))


def check_multiplier_symmetry(ctx: CheckContext) -> dict:
    """p_i^{bc}A_{bcD} = 0 for every i exactly when A is symmetric in (b, c)."""
    rng = ctx.rng
    L = so_basis(ctx.signature)
    r = 10
    mismatches = 0
    for k in range(ctx.trials):
        A = zeros((N, N, r))
        for idx in np.ndindex(N, N, r):
            A[idx] = random_rational(rng)
        if k % 2 == 0:
            A = A + np.transpose(A, (1, 0, 2))
        vanishes = nonzero_count(multiplier_contraction(L, A)) == 0
        mismatches += 0 if vanishes == is_pair_symmetric(A) else 1
    return _result(mismatches, trials=ctx.trials, signature=str(ctx.signature))


# ── appendixB: Clifford representations ─────────────────────────────────

def _per_signature(fn) -> dict:
    counts = {str(sig): fn(build_rep(sig)) for sig in ALL_SIGNATURES}
    return _result(sum(counts.values()), signatures=counts)


def check_anticommutators(ctx: CheckContext) -> dict:
    return _per_signature(anticommutator_residual)


def check_gamma5(ctx: CheckContext) -> dict:
    def residual(rep):
        supercenter = sum(nonzero_count(anticommutator(rep.gamma5, g)) for g in rep.gammas)
        return gamma5_square_residual(rep) + supercenter

    return _per_signature(residual)


def check_spinor_metric(ctx: CheckContext) -> dict:
    def residual(rep):
        expected = (4, 0) if rep.signature.q == 0 else (2, 2)
        return beta_residual(rep) + (0 if hermitian_signature(rep.beta) == expected else 1)

    return _per_signature(residual)


def check_sigma_gamma(ctx: CheckContext) -> dict:
    return _per_signature(lambda rep: sum(check_sigma_gamma_anticom(rep).values()))


def check_spin_representation(ctx: CheckContext) -> dict:
    def residual(rep):
        closure = spin_closure_residual(rep)
        return closure["generators"] + closure["sigma"] + gamma_equivariance_residual(rep) + beta_isometry_residual(rep)

    return _per_signature(residual)


def check_axial_reality(ctx: CheckContext) -> dict:
    return _per_signature(axial_hermiticity_residual)


# ── appendixC: free DGA ─────────────────────────────────────────────────

def _context_algebra(ctx: CheckContext):
    return algebra_by_name(ctx.algebra, ctx.signature)


def _context_rep(L):
    return build_rep(L.signature) if L.rho is not None else None


def check_appendix_identities(ctx: CheckContext) -> dict:
    L = _context_algebra(ctx)
    records = verify_appendix_identities(L, _context_rep(L))
    counts = {r["identity"]: r["residual_terms"] for r in records}
    return _result(sum(counts.values()), algebra=L.name, identities=counts)


def _random_dga_element(rng: random.Random, dim: int) -> DgaElement:
    y = gen(field_generator("y"))
    shape = rng.choice((("lam",), ("curv",), ("lam", "lam"), ("lam", "curv"), ("y",), ("y", "lam"), ("y", "y", "curv")))
    total = DgaElement()
    for _ in range(2):
        term = DgaElement.scalar(random_rational(rng))
        for family in shape:
            if family == "lam":
                term = term * gen(lam(rng.randrange(dim)))
            elif family == "curv":
                term = term * gen(curv(rng.randrange(dim)))
            else:
                term = term * y
        total = total + term
    return total


def check_dga_differential(ctx: CheckContext) -> dict:
    rng = ctx.rng
    L = _context_algebra(ctx)
    rules = DifferentialRules(L)
    generators = [lam(a) for a in range(L.dim)] + [curv(a) for a in range(L.dim)] + [field_generator("y")]
    residual = differential_square_residual(rules, generators)
    draws = 4 * ctx.trials
    X = coframe_variation(L)
    for _ in range(draws):
        a = _random_dga_element(rng, L.dim)
        b = _random_dga_element(rng, L.dim)
        sign = -1 if (not a.is_zero and a.degree % 2) else 1
        residual += len(rules(rules(a)))
        residual += len(rules(a * b) - rules(a) * b - (a * rules(b)).scale(sign))
        residual += len(X(a * b) - X(a) * b - (a * X(b)).scale(sign))
    return _result(residual, algebra=L.name, elements=draws)


def check_dga_dual_pairing(ctx: CheckContext) -> dict:
    L = _context_algebra(ctx)
    top = dual_lambda(L, ())
    residual = 0
    for a in range(L.dim):
        for b in range(L.dim):
            expected = top if a == b else DgaElement()
            residual += len(gen(lam(a)) * dual_lambda(L, (b,)) - expected)
    return _result(residual, algebra=L.name)


# ── el: Euler-Lagrange forms ────────────────────────────────────────────

def check_el_multiplier(ctx: CheckContext) -> dict:
    L = _context_algebra(ctx)
    record = verify_el_multiplier(L)
    return _result(record["residual_terms"], algebra=L.name, multipliers=record["multipliers"])


def check_el_coframe(ctx: CheckContext) -> dict:
    L = _context_algebra(ctx)
    dynamic = verify_el_coframe(L)["residual_terms"]
    constant = verify_el_coframe(L, constant_multipliers=True)["residual_terms"]
    return _result(dynamic + constant, algebra=L.name, dynamic=dynamic, constant_multipliers=constant)


def check_el_spinor(ctx: CheckContext) -> dict:
    L = _context_algebra(ctx)
    rep = _context_rep(L)
    if rep is None:
        return {**_result(0, algebra=L.name, skipped="no rotation representation"), "informational": True}
    mass = random_rational(ctx.rng, nonzero=True)
    records = verify_el_spinor(L, rep, mass)
    counts = {r["identity"]: r["residual_terms"] for r in records}
    return _result(sum(counts.values()), algebra=L.name, mass=str(mass), identities=counts)


def check_multiplier_exactness(ctx: CheckContext) -> dict:
    L = _context_algebra(ctx)
    rules = DifferentialRules(L)
    y = field_generator("y")
    P = gen(field_generator("P", (), 9))
    dy = rules(gen(y))
    scalar_case = multiplier_exactness(rules, field_variation(y), P, dy)
    residual = len(scalar_case.residual) + len(scalar_case.euler_lagrange - rules(P))

    a, (b, c) = 0, (0, L.dim - 1)
    p = gen(multiplier_generator(a, b, c))
    constraint = gen(curv(a)) * dual_lambda(L, (b, c))
    coframe_case = multiplier_exactness(rules, coframe_variation(L), p, constraint)
    residual += len(coframe_case.residual)

    untouched = multiplier_exactness(rules, field_variation(y), p, constraint)
    residual += len(untouched.residual) + len(untouched.exact_term) + len(untouched.euler_lagrange - untouched.lie_term)
    return _result(residual, algebra=L.name, cases=3)


# ── bianchi: curvature identities ───────────────────────────────────────

def check_bianchi(ctx: CheckContext) -> dict:
    """Runs in the configured signature and in both (4,0) and (1,3)."""
    signatures = tuple(dict.fromkeys((ctx.signature, EUCLIDEAN, LORENTZIAN)))
    per_signature: dict[str, int] = {}
    lemmas: dict[str, int] = {}
    for sig in signatures:
        terms = 0
        for _ in range(ctx.trials):
            st = random_state(ctx.rng, sig, ctx.degree, points=3)
            for point in st.sample_points:
                result = bianchi_check(st, point)
                terms += nonzero_count(result.residual) + sum(result.lemmas.values())
                for name, count in result.lemmas.items():
                    lemmas[name] = lemmas.get(name, 0) + count
        per_signature[str(sig)] = terms
    return _result(
        sum(per_signature.values()),
        trials=ctx.trials,
        points=3,
        degree=ctx.degree,
        signatures=per_signature,
        lemmas=lemmas,
    )


def check_ricci_variation(ctx: CheckContext) -> dict:
    residual = 0
    for _ in range(ctx.trials):
        st = random_state(ctx.rng, ctx.signature, ctx.degree)
        tau = random_tau(ctx.rng, ctx.signature, max(ctx.degree - 1, 0))
        residual += nonzero_count(ricci_variation(st, tau, st.sample_points[0]))
        residual += _form_terms(curvature_variation_residual(st, tau))
    return _result(residual, trials=ctx.trials, degree=ctx.degree)


def check_einstein_contraction(ctx: CheckContext) -> dict:
    residual = 0
    for _ in range(ctx.trials):
        st = random_state(ctx.rng, ctx.signature, ctx.degree)
        residual += nonzero_count(einstein_contraction(st, st.sample_points[0]))
    for _ in range(ctx.sample_count):
        st = random_state(ctx.rng, ctx.signature, ctx.degree)
        residual += torsion_trace_residual(st, st.sample_points[0])
    return _result(residual, trials=ctx.trials, degree=ctx.degree)


def check_cartan_bracket(ctx: CheckContext) -> dict:
    rng = ctx.rng
    L = semidirect(ctx.signature)
    draws = max(10, ctx.trials // 2)
    residual = 0
    for _ in range(draws):
        point = random_point(rng, L.dim)
        cf = random_coframe(rng, L, point)
        h = [random_rational(rng) for _ in range(L.dim)]
        xi = [random_rational(rng) for _ in range(L.dim)]
        residual += nonzero_count(cartan_bracket_identity(cf, h, xi, point))
    flat = exact_coframe(abelian(), [random_polynomial(rng, 10, 2) for _ in range(10)])
    residual += _form_terms(maurer_cartan_residual(flat))
    return _result(residual, coframes=draws, algebra=L.name)


def check_state_bianchi(ctx: CheckContext) -> dict:
    fs = _as_field_state(ctx.state)
    st = fs.geometry
    residual = 0
    for point in st.sample_points:
        residual += nonzero_count(bianchi_residual(st, point))
        residual += nonzero_count(einstein_contraction(st, point))
    return _result(residual, state=ctx.state_path, points=len(st.sample_points))


# ── fieldeq: torsion and field equations ────────────────────────────────

def _random_metric(rng: random.Random, sig: MetricSignature) -> sympy.Matrix:
    while True:
        e = sympy.eye(N) + sympy.Matrix(N, N, lambda a, b: random_rational(rng, 1) if rng.random() < 0.3 else 0)
        if e.det() != 0:
            return (e.T * sig.eta * e).applyfunc(sympy.expand)


def check_torsion_decomposition(ctx: CheckContext) -> dict:
    rng = ctx.rng
    draws = 4 * ctx.trials
    residual = 0
    for k in range(draws):
        g = _random_metric(rng, ctx.signature)
        ginv = g.inv()
        T = zeros((N, N, N))
        for tau in range(N):
            for mu in range(N):
                for nu in range(mu + 1, N):
                    value = random_rational(rng)
                    T[tau, mu, nu], T[tau, nu, mu] = value, -value
        if k % 4 == 0:
            T = decompose_torsion(T, g).axial_part
        parts = decompose_torsion(T, g)
        residual += nonzero_count(parts.reconstruct() - T)
        for part in (parts.axial_part, parts.pure_part):
            trace = [sum(ginv[s, t] * part[t, s, nu] for s in range(N) for t in range(N)) for nu in range(N)]
            residual += nonzero_count(trace)
        cyclic = parts.pure_part + np.transpose(parts.pure_part, (1, 2, 0)) + np.transpose(parts.pure_part, (2, 0, 1))
        residual += nonzero_count(cyclic)
        residual += nonzero_count(parts.axial_part + np.transpose(parts.axial_part, (1, 0, 2)))
        if k % 4 == 0:
            residual += nonzero_count(parts.trace_part) + nonzero_count(parts.pure_part)
    return _result(residual, draws=draws, signature=str(ctx.signature))


def check_axial_dual(ctx: CheckContext) -> dict:
    rng = ctx.rng
    residual = 0
    for _ in range(ctx.trials):
        A = [random_rational(rng) for _ in range(N)]
        det = random_rational(rng, nonzero=True)
        residual += nonzero_count([x - y for x, y in zip(axial_dual(axial_tensor(A, det), det), A)])
    unit = axial_tensor([1, 0, 0, 0])
    residual += nonzero_count([x - y for x, y in zip(axial_dual(unit), [1, 0, 0, 0])])
    return _result(residual, trials=ctx.trials)


def check_vacuum(ctx: CheckContext) -> dict:
    rng = ctx.rng
    mass = random_rational(rng)
    flat = FieldState(_flat_state(ctx.signature), (0, 0, 0, 0), mass)
    report = ecd_residuals(flat, random_point(rng))
    residual = nonzero_count(report.einstein) + nonzero_count(report.torsion) + nonzero_count(report.dirac)
    for _ in range(ctx.sample_count):
        st = random_state(rng, ctx.signature, ctx.degree)
        residual += vacuum_crosscheck(FieldState(st, (0, 0, 0, 0), mass), st.sample_points[0])
    return _result(residual, mass=str(mass), curved_states=ctx.sample_count)


def check_spin_torsion(ctx: CheckContext) -> dict:
    """Spin torsion is totally antisymmetric, dual to −2 times the axial current, and solves the torsion equation."""
    rng = ctx.rng
    rep = build_rep(ctx.signature)
    residual = 0
    for _ in range(ctx.sample_count):
        psi = _random_spinor(rng)
        A = [-2 * x for x in axial_current(rep, psi)]
        fs = axial_torsion_state(ctx.signature, A, psi, random_rational(rng))
        pd = point_data(fs.geometry, (0, 0, 0, 0))
        source = spin_torsion(spinor_point(fs, pd))
        lowered = lower_index(source, 0, pd.metric)
        parts = decompose_torsion(lowered, pd.metric)
        residual += nonzero_count(parts.trace_part) + nonzero_count(parts.pure_part)
        residual += nonzero_count([x - y for x, y in zip(axial_dual(parts.axial_part), A)])
        residual += nonzero_count(ecd_residuals(fs, (0, 0, 0, 0)).torsion)
    return _result(residual, draws=ctx.sample_count, signature=str(ctx.signature))


def check_lc_comparison(ctx: CheckContext) -> dict:
    rng = ctx.rng
    totals: dict[str, int] = {}
    cases = [((0, 0, 0, 0), _random_spinor(rng, 1))]
    cases += [
        ([random_rational(rng) for _ in range(N)], _random_spinor(rng, min(ctx.degree, 1)))
        for _ in range(ctx.trials)
    ]
    for A, psi in cases:
        fs = axial_torsion_state(ctx.signature, A, psi, random_rational(rng))
        for name, count in lc_comparison(fs, random_point(rng)).items():
            totals[name] = totals.get(name, 0) + count
    result = _result(sum(totals.values()), draws=len(cases), signature=str(ctx.signature), identities=totals)
    if ctx.signature != EUCLIDEAN:
        result["informational"] = True
    return result


def check_matter_scaling(ctx: CheckContext) -> dict:
    rng = ctx.rng
    mismatches = 0
    for _ in range(ctx.sample_count):
        st = random_state(rng, ctx.signature, ctx.degree)
        fs = FieldState(st, _random_spinor(rng, 1), random_rational(rng))
        point = st.sample_points[0]
        base = ecd_residuals(fs, point).term_groups
        doubled = ecd_residuals(fs.scaled(2), point).term_groups
        for name in ("einstein_matter", "torsion_matter"):
            mismatches += nonzero_count(doubled[name] - 4 * base[name])
        for name in ("einstein_geometry", "torsion_geometry"):
            mismatches += nonzero_count(doubled[name] - base[name])
    return _result(mismatches, draws=ctx.sample_count)


def check_bianchi_belinfante(ctx: CheckContext) -> dict:
    rng = ctx.rng
    residual = 0
    forms: dict[str, int] = {}
    cases = [FieldState(_flat_state(ctx.signature), (0, 0, 0, 0))]
    cases += [
        axial_torsion_state(ctx.signature, [random_rational(rng) for _ in range(N)], _random_spinor(rng))
        for _ in range(ctx.sample_count)
    ]
    cases += [FieldState(random_state(rng, ctx.signature, ctx.degree), (0, 0, 0, 0)) for _ in range(ctx.sample_count)]
    for fs in cases:
        point = fs.geometry.sample_points[0] if fs.geometry.sample_points else (0, 0, 0, 0)
        result = bianchi_belinfante_check(fs, point)
        forms[result["form"]] = forms.get(result["form"], 0) + 1
        residual += nonzero_count(result["residual"])
        if result["form"] == "full":
            residual += nonzero_count(result["residual"] - bianchi_residual(fs.geometry, point))
    return _result(residual, states=len(cases), forms=forms)


def check_state_field_equations(ctx: CheckContext) -> dict:
    fs = _as_field_state(ctx.state)
    per_point = {}
    for point in fs.geometry.sample_points:
        report = ecd_residuals(fs, point)
        per_point[" ".join(str(x) for x in point)] = {
            "einstein": nonzero_count(report.einstein),
            "torsion": nonzero_count(report.torsion),
            "dirac": nonzero_count(report.dirac),
        }
    total = sum(sum(v.values()) for v in per_point.values())
    return {**_result(total, state=ctx.state_path, points=per_point), "informational": True}


def check_state_belinfante(ctx: CheckContext) -> dict:
    fs = _as_field_state(ctx.state)
    residual = sum(nonzero_count(bianchi_belinfante_check(fs, p)["residual"]) for p in fs.geometry.sample_points)
    return _result(residual, state=ctx.state_path, points=len(fs.geometry.sample_points))


# ── Registry ─────────────────────────────────────────────────────────────

CHECK_DEFINITIONS = [
    {
        "id": "exterior.wedge_examples", "suite": "appendixA",
        "anchor": "wedge of basis one-forms and graded nilpotency",
        "identity": "dx1∧dx2 = dx^12; dx1∧dx1 = 0; (x1 dx1 + dx2)∧dx1 = −dx^12",
    },
    {
        "id": "exterior.interior_delta", "suite": "appendixA",
        "anchor": "interior product of increasing multi-indices is a Kronecker delta",
        "identity": "u_I ⌟ e^J = δ^J_I; u_21 ⌟ e^12 = −1",
    },
    {
        "id": "exterior.dual_pairing", "suite": "appendixA",
        "anchor": "form wedged with a dual form picks out one component times the volume form",
        "identity": "e^I ∧ e^(n−p)_I = vol, e^(n−p)_I = ε(I) e^{I^c}",
    },
    {
        "id": "exterior.derivative_laws", "suite": "appendixA",
        "anchor": "d∘d = 0, Leibniz rule, graded commutativity and associativity of forms",
        "identity": "dd = 0; d(a∧b) = da∧b + (−1)^|a| a∧db; a∧b = (−1)^{|a||b|} b∧a",
    },
    {
        "id": "algebra.jacobi", "suite": "appendixA",
        "anchor": "Jacobi identity of the rotation, semidirect and abelian algebras",
        "identity": "[A,[B,C]] + [B,[C,A]] + [C,[A,B]] = 0",
    },
    {
        "id": "algebra.unimodularity", "suite": "appendixA",
        "anchor": "traced structure constants vanish and rotations preserve the metric",
        "identity": "c^B_{AB} = 0; ρ^b_{i,d}η^{dc} + ρ^c_{i,d}η^{db} = 0",
    },
    {
        "id": "algebra.levi_civita_contraction", "suite": "appendixA",
        "anchor": "double contraction of the Levi-Civita symbol with the signature sign",
        "identity": "½ε_{ξντχ}ε^{υτχμ} = (−1)^q (δ^υ_ξ δ^μ_ν − δ^μ_ξ δ^υ_ν)",
    },
    {
        "id": "algebra.antisym_kronecker", "suite": "appendixA",
        "anchor": "antisymmetrized Kronecker delta values",
        "identity": "δ^[123]_123 = 1; δ^[123]_213 = −1; δ^[112]_345 = 0",
    },
    {
        "id": "algebra.multiplier_symmetry", "suite": "appendixA",
        "anchor": "multiplier contraction vanishes exactly on pair-symmetric tensors",
        "identity": "p_i^{bc} A_{bcD} = 0 for all i ⇔ A_{bcD} = A_{cbD}",
    },
    {
        "id": "clifford.anticommutators", "suite": "appendixB",
        "anchor": "gamma matrices anticommute to minus twice the metric",
        "identity": "γ_aγ_b + γ_bγ_a = −2η_ab",
    },
    {
        "id": "clifford.gamma5", "suite": "appendixB",
        "anchor": "chirality operator squares to the signature sign and anticommutes with every gamma",
        "identity": "(γ5)² = (−1)^q; γ5γ_a + γ_aγ5 = 0",
    },
    {
        "id": "clifford.spinor_metric", "suite": "appendixB",
        "anchor": "spinor metric makes gammas antihermitian, definite or split signature",
        "identity": "βγ_a + γ_a†β = 0; βσ_i + σ_i†β = 0",
    },
    {
        "id": "clifford.sigma_gamma", "suite": "appendixB",
        "anchor": "anticommutator of sigma with gamma is the dual gamma times chirality",
        "identity": "½{σ_μν, γ_τ} = −ε_{υμντ}γ^υγ5; {[γ_μ,γ_ν],γ_τ} = {γ_ν,[γ_τ,γ_μ]}",
    },
    {
        "id": "clifford.spin_representation", "suite": "appendixB",
        "anchor": "spin generators close on the rotation algebra and lift its action on gammas",
        "identity": "S_i = −½σ_i; [S_i,S_j] = c^k_ij S_k; [S_i,γ_c] = γ(ρ(h_i)e_c)",
    },
    {
        "id": "clifford.axial_reality", "suite": "appendixB",
        "anchor": "axial current is real",
        "identity": "(βγ^ξγ5)† = βγ^ξγ5",
    },
    {
        "id": "dga.appendix_identities", "suite": "appendixC",
        "anchor": "differentials of the coframe duals, spinor pairing and curvature",
        "identity": (
            "dλ^(10) = Λ^Aλ^(9)_A; dλ^(9)_A = Λ^Bλ^(8)_AB; dλ^(8)_AB = Λ^Cλ^(7)_ABC − c^C_ABλ^(9)_C; "
            "d(s̄s) = Ds̄ s + s̄ Ds; dΛ^A = −c^A_BC λ^BΛ^C; DDs = Λ^i S_i s"
        ),
    },
    {
        "id": "dga.differential", "suite": "appendixC",
        "anchor": "d∘d = 0, Leibniz rule and graded contraction on random elements",
        "identity": "dd = 0; d(ab) = da b + (−1)^|a| a db; ι(ab) = ι(a)b + (−1)^|a| a ι(b)",
    },
    {
        "id": "dga.dual_pairing", "suite": "appendixC",
        "anchor": "coframe generator times its dual is the top form",
        "identity": "λ^A λ^(9)_B = δ^A_B λ^(10)",
    },
    {
        "id": "dga.el_multiplier", "suite": "el",
        "anchor": "multiplier variation of the Einstein-Cartan form gives the curvature constraint",
        "identity": "ι_{∂p^BC_A} dΘ̄ = ½ Λ^A λ^(8)_BC",
    },
    {
        "id": "dga.el_coframe", "suite": "el",
        "anchor": "coframe variation of the Einstein-Cartan form",
        "identity": "ι_X dΘ̄ = ε^A (p^BC_D Λ^D λ^(7)_BCA + d^λ(p^BC_A λ^(8)_BC)), Θ̄ = Θ_EC + p^BC_A Λ^A λ^(8)_BC",
    },
    {
        "id": "dga.el_spinor", "suite": "el",
        "anchor": "spinor and coframe variations of the Dirac form",
        "identity": "ι_∂κ̄ dΘ̄_D = (i/2) Ds λ^(9)_i; ι_∂κ dΘ̄_D = −(i/2) Ds̄ λ^(9)_i; mass term gives −m s λ^(10)",
    },
    {
        "id": "dga.multiplier_exactness", "suite": "el",
        "anchor": "multiplier terms split into an exact form and a Lie-derivative term",
        "identity": "ι_X d(pF) = −d((−1)^|p| p ι_X F) + p L_X F",
    },
    {
        "id": "geometry.bianchi", "suite": "bianchi",
        "anchor": "antisymmetric Ricci equals torsion divergence minus the derivative of its trace",
        "identity": "Ric_μν − Ric_νμ = ∇_π T^π_μν − (d trT)_μν",
    },
    {
        "id": "geometry.ricci_variation", "suite": "bianchi",
        "anchor": "Ricci change under a connection shift",
        "identity": "Ric(ω+τ) − Ric(ω) = tr(d^ωτ + ½[τ∧τ])",
    },
    {
        "id": "geometry.einstein_contraction", "suite": "bianchi",
        "anchor": "multiplier contraction of the curvature is minus twice the Einstein tensor",
        "identity": "p_i^{bc}Ω^i_ab + ½δ^c_a p_i^{de}Ω^i_de = −2Ric_a^c + δ^c_a Scal",
    },
    {
        "id": "geometry.cartan_bracket", "suite": "bianchi",
        "anchor": "coframe of a vector-field bracket against the algebra bracket and curvature",
        "identity": "ϖ([h̄,ξ̄]) = [h,ξ] − (dϖ + ½[ϖ∧ϖ])(h̄,ξ̄)",
    },
    {
        "id": "geometry.state_bianchi", "suite": "bianchi",
        "anchor": "Bianchi and Einstein contraction identities on the loaded state",
        "identity": "Ric_μν − Ric_νμ = ∇_π T^π_μν − (d trT)_μν; p_i^{bc}Ω^i_ab + ½δ^c_a p_i^{de}Ω^i_de = −2Ric_a^c + δ^c_a Scal",
        "needs_state": True,
    },
    {
        "id": "fieldeq.torsion_decomposition", "suite": "fieldeq",
        "anchor": "torsion splits into trace, axial and pure parts",
        "identity": "T = trace part + 𝒜 + 𝒯 with 𝒜 totally antisymmetric, tr𝒯 = 0, 𝒯_[τμν] = 0",
    },
    {
        "id": "fieldeq.axial_dual", "suite": "fieldeq",
        "anchor": "axial vector and totally antisymmetric torsion are dual",
        "identity": "𝒜_τμν = A^ξ vol_ξτμν",
    },
    {
        "id": "fieldeq.vacuum", "suite": "fieldeq",
        "anchor": "flat vacuum solves all three field equations",
        "identity": "e = δ, ω = 0, ψ = 0 ⇒ Einstein, torsion and Dirac residuals vanish",
    },
    {
        "id": "fieldeq.spin_torsion", "suite": "fieldeq",
        "anchor": "spin-sourced torsion is axial and solves the torsion equation",
        "identity": "T^μ_νξ = −¼ ψ̄{[γ_ν,γ_ξ],γ^μ}ψ is axial with A^ξ = ψ̄γ^ξγ5ψ",
    },
    {
        "id": "fieldeq.lc_comparison", "suite": "fieldeq",
        "anchor": "axial torsion against the Levi-Civita connection",
        "identity": (
            "T^π_μκ T^κ_πν = 2(−1)^q (A^ξA_ξ g_μν − A_μA_ν); ∇̸ψ = ∇̸^LC ψ − ¾(−1)^q A^ξγ_ξγ5ψ; ω − ω^LC = ½T"
        ),
    },
    {
        "id": "fieldeq.matter_scaling", "suite": "fieldeq",
        "anchor": "matter terms are quadratic in the spinor",
        "identity": "ψ → 2ψ multiplies matter terms by 4 and leaves geometric terms unchanged",
    },
    {
        "id": "fieldeq.bianchi_belinfante", "suite": "fieldeq",
        "anchor": "antisymmetric Ricci against the torsion divergence on field states",
        "identity": "2Ric_[μν] = ∇_π T^π_μν − (d trT)_μν",
    },
    {
        "id": "fieldeq.state_residuals", "suite": "fieldeq",
        "anchor": "field-equation residuals of the loaded state",
        "identity": "Einstein, torsion and Dirac residuals at each sample point",
        "needs_state": True,
    },
    {
        "id": "fieldeq.state_belinfante", "suite": "fieldeq",
        "anchor": "antisymmetric Ricci relation on the loaded state",
        "identity": "2Ric_[μν] = ∇_π T^π_μν − (d trT)_μν",
        "needs_state": True,
    },
]

CHECK_DISPATCH = {
    "exterior.wedge_examples": check_wedge_examples,
    "exterior.interior_delta": check_interior_delta,
    "exterior.dual_pairing": check_dual_pairing,
    "exterior.derivative_laws": check_derivative_laws,
    "algebra.jacobi": check_jacobi,
    "algebra.unimodularity": check_unimodularity,
    "algebra.levi_civita_contraction": check_levi_civita_contraction,
    "algebra.antisym_kronecker": check_antisym_kronecker,
    "algebra.multiplier_symmetry": check_multiplier_symmetry,
    "clifford.anticommutators": check_anticommutators,
    "clifford.gamma5": check_gamma5,
    "clifford.spinor_metric": check_spinor_metric,
    "clifford.sigma_gamma": check_sigma_gamma,
    "clifford.spin_representation": check_spin_representation,
    "clifford.axial_reality": check_axial_reality,
    "dga.appendix_identities": check_appendix_identities,
    "dga.differential": check_dga_differential,
    "dga.dual_pairing": check_dga_dual_pairing,
    "dga.el_multiplier": check_el_multiplier,
    "dga.el_coframe": check_el_coframe,
    "dga.el_spinor": check_el_spinor,
    "dga.multiplier_exactness": check_multiplier_exactness,
    "geometry.bianchi": check_bianchi,
    "geometry.ricci_variation": check_ricci_variation,
    "geometry.einstein_contraction": check_einstein_contraction,
    "geometry.cartan_bracket": check_cartan_bracket,
    "geometry.state_bianchi": check_state_bianchi,
    "fieldeq.torsion_decomposition": check_torsion_decomposition,
    "fieldeq.axial_dual": check_axial_dual,
    "fieldeq.vacuum": check_vacuum,
    "fieldeq.spin_torsion": check_spin_torsion,
    "fieldeq.lc_comparison": check_lc_comparison,
    "fieldeq.matter_scaling": check_matter_scaling,
    "fieldeq.bianchi_belinfante": check_bianchi_belinfante,
    "fieldeq.state_residuals": check_state_field_equations,
    "fieldeq.state_belinfante": check_state_belinfante,
}

DEFINITIONS_BY_ID = {definition["id"]: definition for definition in CHECK_DEFINITIONS}


def select_checks(suite: str, with_state: bool = False) -> list[dict]:
    """Definitions of a suite (or of every suite for 'all') in registry order."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(('all',) + SUITES)}")
    return [
        definition
        for definition in CHECK_DEFINITIONS
        if (suite == "all" or definition["suite"] == suite) and (with_state or not definition.get("needs_state"))
    ]
