"""
Spacetime Geometry
==================
Polynomial geometric states on a 4-dimensional chart: vielbein one-forms e^a
and an so(p,q)-valued connection ω^i. Curvature and torsion are computed as
forms; everything else is evaluated exactly at a point.

  Ω^i = dω^i + ½[ω∧ω]^i               Θ^a = de^a + ρ^a_{ib} ω^i ∧ e^b
  Γ^ρ_{μν} = E^ρ_a(∂_μ e^a_ν + ω^a_{bμ} e^b_ν)   T^ρ_{μν} = E^ρ_a Θ^a_{μν}
  Ric_{μν} = R^π_{νπμ}   (trace over the first 2-form index)

Array indices are 0-based; Form indices are the 1-based chart indices.

Tools:
  1. curvature               – Ω, Θ and the frame curvature as forms
  2. point_data              – all pointwise tensors of a state
  3. bianchi_residual        – Ric_{μν} − Ric_{νμ} − ∇_πT^π_{μν} + (d trT)_{μν}
  4. ricci_variation         – Ric(ω+τ) − Ric(ω) − tr(d^ωτ + ½[τ∧τ])
  5. einstein_contraction    – p_i^{bc}Ω^i_{ab} + δ^c_a ½p_i^{de}Ω^i_{de} + 2Ric_a^c − δ^c_a Scal
  6. cartan_bracket_identity – ϖ([h̄,ξ̄]) − [h,ξ] + (dϖ + ½[ϖ∧ϖ])(h̄,ξ̄)
"""

import random
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Sequence

import numpy as np
import sympy

from core.algebra import (
    SPACETIME_DIM,
    LieAlgebraData,
    MetricSignature,
    bracket,
    so_basis,
    wedge_bracket,
)
from core.errors import ContractViolation, SingularFrameError
from core.exact import is_zero, nonzero_count, simplify_array, zeros
from core.exterior import Form, coordinates, d, evaluate, evaluate_on, wedge
from utils.logger import get_custom_logger

logger = get_custom_logger("geometry")

N = SPACETIME_DIM
MAX_RESAMPLE = 25


# ── States ───────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class GeometryState:
    signature: MetricSignature
    vielbein: tuple[Form, ...]
    connection: tuple[Form, ...]
    sample_points: tuple[tuple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vielbein", tuple(self.vielbein))
        object.__setattr__(self, "connection", tuple(self.connection))
        object.__setattr__(self, "sample_points", tuple(tuple(sympy.Rational(x) for x in p) for p in self.sample_points))
        if len(self.vielbein) != N:
            raise ContractViolation(f"expected {N} vielbein one-forms, got {len(self.vielbein)}")
        n_rot = len(self.algebra.rotations)
        if len(self.connection) != n_rot:
            raise ContractViolation(f"expected {n_rot} connection one-forms, got {len(self.connection)}")
        for form in (*self.vielbein, *self.connection):
            if form.dim != N or form.degree != 1:
                raise ContractViolation(f"vielbein and connection must be one-forms on a {N}-chart")
        for point in self.sample_points:
            if len(point) != N:
                raise ContractViolation(f"sample point {point} does not have {N} coordinates")
            self.inverse_frame(point)

    @property
    def algebra(self) -> LieAlgebraData:
        return so_basis(self.signature)

    def frame_matrix(self, point) -> sympy.Matrix:
        """e[a, μ] = e^a_μ at the point."""
        return sympy.Matrix(N, N, lambda a, mu: evaluate(self.vielbein[a].component((mu + 1,)), point))

    def inverse_frame(self, point) -> sympy.Matrix:
        """E[μ, a] with E^μ_a e^a_ν = δ^μ_ν, by adjugate."""
        e = self.frame_matrix(point)
        if is_zero(e.det()):
            raise SingularFrameError(point)
        return e.inv(method="ADJ").applyfunc(sympy.expand)

    def with_connection(self, connection: Sequence[Form]) -> "GeometryState":
        return replace(self, connection=tuple(connection))

    @cached_property
    def frame_connection(self) -> tuple[tuple[Form, ...], ...]:
        """ω^a_b = ρ^a_{ib} ω^i as a 4×4 array of one-forms."""
        return _frame_valued(self.algebra, self.connection)


def _frame_valued(L: LieAlgebraData, forms: Sequence[Form]) -> tuple[tuple[Form, ...], ...]:
    degree = forms[0].degree
    out = []
    for a in range(N):
        row = []
        for b in range(N):
            total = Form.zero(N, degree)
            for i in range(len(L.rotations)):
                if L.rho[i, a, b] != 0:
                    total = total + forms[i] * L.rho[i, a, b]
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


# ── Curvature as forms ──────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class CurvatureData:
    curvature: tuple[Form, ...]
    torsion: tuple[Form, ...]
    frame_curvature: tuple[tuple[Form, ...], ...]


def connection_curvature(L: LieAlgebraData, connection: Sequence[Form]) -> tuple[Form, ...]:
    """Ω = dω + ½[ω∧ω]."""
    squared = wedge_bracket(connection, connection, L)
    half = sympy.Rational(1, 2)
    return tuple(d(w) + squared[i] * half for i, w in enumerate(connection))


def curvature(st: GeometryState) -> CurvatureData:
    L = st.algebra
    omega = connection_curvature(L, st.connection)
    frame_conn = st.frame_connection
    torsion = []
    for a in range(N):
        total = d(st.vielbein[a])
        for b in range(N):
            if not frame_conn[a][b].is_zero:
                total = total + wedge(frame_conn[a][b], st.vielbein[b])
        torsion.append(total)
    data = CurvatureData(
        curvature=omega,
        torsion=tuple(torsion),
        frame_curvature=_frame_valued(L, omega),
    )
    logger.debug(
        "Curvature computed: %d curvature terms, %d torsion terms",
        sum(len(f.terms) for f in omega),
        sum(len(f.terms) for f in torsion),
    )
    return data


def two_form_array(forms: Sequence[Form], point) -> np.ndarray:
    """F[k, μ, ν] = F^k_{μν} at the point, antisymmetric in μν."""
    out = zeros((len(forms), N, N))
    for k, form in enumerate(forms):
        for (mu, nu), value in form.values_at(point).items():
            out[k, mu - 1, nu - 1] = value
            out[k, nu - 1, mu - 1] = -value
    return out


def ricci_from_curvature(L: LieAlgebraData, omega: np.ndarray, frame, inverse) -> np.ndarray:
    """Ric_{μν} = Σ E^π_a R^a_{bπμ} e^b_ν with R^a_{bπμ} = ρ^a_{ib} Ω^i_{πμ}."""
    riemann = np.tensordot(L.rho, omega, axes=([0], [0]))  # [a, b, π, μ]
    E = np.array(inverse.tolist(), dtype=object)
    e = np.array(frame.tolist(), dtype=object)
    out = zeros((N, N))
    for mu in range(N):
        for nu in range(N):
            total = 0
            for pi in range(N):
                for a in range(N):
                    if E[pi, a] == 0:
                        continue
                    for b in range(N):
                        total += E[pi, a] * riemann[a, b, pi, mu] * e[b, nu]
            out[mu, nu] = sympy.expand(total)
    return out


# ── Pointwise data ───────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class PointData:
    point: tuple
    frame: sympy.Matrix
    inverse: sympy.Matrix
    metric: sympy.Matrix
    inverse_metric: sympy.Matrix
    frame_derivative: np.ndarray     # [λ, a, μ] = ∂_λ e^a_μ
    connection: np.ndarray           # [a, b, μ] = ω^a_{bμ}
    christoffel: np.ndarray          # [ρ, μ, ν] = Γ^ρ_{μν}
    frame_torsion: np.ndarray        # [a, μ, ν] = Θ^a_{μν}
    torsion: np.ndarray              # [ρ, μ, ν] = T^ρ_{μν}
    torsion_derivative: np.ndarray   # [λ, ρ, μ, ν] = ∂_λ T^ρ_{μν}
    curvature: np.ndarray            # [i, μ, ν] = Ω^i_{μν}
    ricci: np.ndarray                # [μ, ν]
    scalar: sympy.Expr

    @property
    def trace(self) -> list:
        """t_ν = T^σ_{σν}."""
        return [sympy.expand(sum(self.torsion[s, s, nu] for s in range(N))) for nu in range(N)]

    @property
    def trace_exterior_derivative(self) -> np.ndarray:
        """(dt)_{μν} = ∂_μ t_ν − ∂_ν t_μ."""
        partial = zeros((N, N))
        for mu in range(N):
            for nu in range(N):
                partial[mu, nu] = sum(self.torsion_derivative[mu, s, s, nu] for s in range(N))
        return simplify_array(partial - partial.T)

    @property
    def torsion_lowered(self) -> np.ndarray:
        """T_{τμν} = g_{τρ} T^ρ_{μν}."""
        g = np.array(self.metric.tolist(), dtype=object)
        return simplify_array(np.tensordot(g, self.torsion, axes=([1], [0])))


def point_data(st: GeometryState, point, curv: CurvatureData | None = None) -> PointData:
    point = tuple(sympy.Rational(x) for x in point)
    curv = curv or curvature(st)
    L = st.algebra
    e = st.frame_matrix(point)
    E = st.inverse_frame(point)
    eta = st.signature.eta
    g = (e.T * eta * e).applyfunc(sympy.expand)
    ginv = (E * eta * E.T).applyfunc(sympy.expand)

    de = zeros((N, N, N))
    for a in range(N):
        for lam_ in range(N):
            for (mu,), value in st.vielbein[a].partial(lam_ + 1).values_at(point).items():
                de[lam_, a, mu - 1] = value

    omega_values = zeros((len(L.rotations), N))
    for i, w in enumerate(st.connection):
        for (mu,), value in w.values_at(point).items():
            omega_values[i, mu - 1] = value
    conn = simplify_array(np.tensordot(L.rho, omega_values, axes=([0], [0])))  # [a, b, μ]

    En = np.array(E.tolist(), dtype=object)
    en = np.array(e.tolist(), dtype=object)
    gamma = zeros((N, N, N))
    for rho in range(N):
        for mu in range(N):
            for nu in range(N):
                total = 0
                for a in range(N):
                    inner = de[mu, a, nu] + sum(conn[a, b, mu] * en[b, nu] for b in range(N))
                    total += En[rho, a] * inner
                gamma[rho, mu, nu] = sympy.expand(total)

    theta = two_form_array(curv.torsion, point)
    torsion = simplify_array(np.tensordot(En, theta, axes=([1], [0])))

    # ∂E = −E (∂e) E
    dtheta = zeros((N, N, N, N))
    for lam_ in range(N):
        dtheta[lam_] = two_form_array([f.partial(lam_ + 1) for f in curv.torsion], point)
    dtorsion = zeros((N, N, N, N))
    for lam_ in range(N):
        dE = -np.dot(np.dot(En, de[lam_]), En)
        dtorsion[lam_] = np.tensordot(dE, theta, axes=([1], [0])) + np.tensordot(En, dtheta[lam_], axes=([1], [0]))
    dtorsion = simplify_array(dtorsion)

    omega = two_form_array(curv.curvature, point)
    ricci = ricci_from_curvature(L, omega, e, E)
    scalar = sympy.expand(sum(ginv[mu, nu] * ricci[mu, nu] for mu in range(N) for nu in range(N)))
    return PointData(
        point=point,
        frame=e,
        inverse=E,
        metric=g,
        inverse_metric=ginv,
        frame_derivative=de,
        connection=conn,
        christoffel=gamma,
        frame_torsion=theta,
        torsion=torsion,
        torsion_derivative=dtorsion,
        curvature=omega,
        ricci=ricci,
        scalar=scalar,
    )


def torsion_divergence(pd: PointData) -> np.ndarray:
    """∇_πT^π_{μν} = ∂_πT^π_{μν} + Γ^π_{πκ}T^κ_{μν} − Γ^κ_{πμ}T^π_{κν} − Γ^κ_{πν}T^π_{μκ}."""
    G, T, dT = pd.christoffel, pd.torsion, pd.torsion_derivative
    out = zeros((N, N))
    for mu in range(N):
        for nu in range(N):
            total = 0
            for pi in range(N):
                total += dT[pi, pi, mu, nu]
                for k in range(N):
                    total += G[pi, pi, k] * T[k, mu, nu] - G[k, pi, mu] * T[pi, k, nu] - G[k, pi, nu] * T[pi, mu, k]
            out[mu, nu] = sympy.expand(total)
    return out


# ── Identity checks ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class BianchiCheck:
    residual: np.ndarray
    lemmas: dict[str, int]

    @property
    def passed(self) -> bool:
        return nonzero_count(self.residual) == 0 and not any(self.lemmas.values())


def bianchi_check(st: GeometryState, point, curv: CurvatureData | None = None) -> BianchiCheck:
    """Antisymmetric Ricci against torsion divergence, with the lemmas it rests on."""
    curv = curv or curvature(st)
    pd = point_data(st, point, curv)
    T, G = pd.torsion, pd.christoffel
    t = pd.trace
    dt = pd.trace_exterior_derivative
    div = torsion_divergence(pd)
    residual = simplify_array(pd.ricci - pd.ricci.T - div + dt)

    antisym = zeros((N, N, N))
    trace_derivative = zeros((N, N))
    partial_t = zeros((N, N))
    for mu in range(N):
        for nu in range(N):
            partial_t[mu, nu] = sum(pd.torsion_derivative[mu, s, s, nu] for s in range(N))
    for rho in range(N):
        for mu in range(N):
            for nu in range(N):
                antisym[rho, mu, nu] = G[rho, mu, nu] - G[rho, nu, mu] - T[rho, mu, nu]
    for nu in range(N):
        for lam_ in range(N):
            cov = partial_t[nu, lam_] - sum(G[k, nu, lam_] * t[k] for k in range(N))
            cov_swapped = partial_t[lam_, nu] - sum(G[k, lam_, nu] * t[k] for k in range(N))
            trace_derivative[nu, lam_] = cov - cov_swapped - dt[nu, lam_] + sum(T[k, nu, lam_] * t[k] for k in range(N))

    lemmas = {
        "torsion_is_antisymmetric_connection": nonzero_count(antisym),
        "quadratic_torsion_cancels": nonzero_count(quadratic_torsion_residual(T, t)),
        "trace_derivative_relation": nonzero_count(trace_derivative),
        "first_bianchi_forms": sum(len(f.terms) for f in first_bianchi_residual(st, curv)),
    }
    return BianchiCheck(residual=residual, lemmas=lemmas)


def quadratic_torsion_residual(torsion: np.ndarray, trace: Sequence) -> np.ndarray:
    """tr(T⌟T)_{ab} + t_d T^d_{ab}, zero when t_ν = T^σ_{σν}."""
    out = zeros((N, N))
    for a in range(N):
        for b in range(N):
            total = 0
            for d in range(N):
                total += trace[d] * torsion[d, a, b]
                for c in range(N):
                    total += (
                        torsion[c, d, c] * torsion[d, a, b]
                        + torsion[c, d, a] * torsion[d, b, c]
                        + torsion[c, d, b] * torsion[d, c, a]
                    )
            out[a, b] = sympy.expand(total)
    return out


def bianchi_residual(st: GeometryState, point) -> np.ndarray:
    return bianchi_check(st, point).residual


def first_bianchi_residual(st: GeometryState, curv: CurvatureData | None = None) -> tuple[Form, ...]:
    """DΘ^a − R^a_b ∧ e^b as three-forms."""
    curv = curv or curvature(st)
    conn = st.frame_connection
    out = []
    for a in range(N):
        total = d(curv.torsion[a])
        for b in range(N):
            if not conn[a][b].is_zero:
                total = total + wedge(conn[a][b], curv.torsion[b])
            if not curv.frame_curvature[a][b].is_zero:
                total = total - wedge(curv.frame_curvature[a][b], st.vielbein[b])
        out.append(total)
    return tuple(out)


def curvature_variation_residual(st: GeometryState, tau: Sequence[Form]) -> tuple[Form, ...]:
    """Ω(ω+τ) − Ω(ω) − (dτ + [ω∧τ] + ½[τ∧τ]) as two-forms."""
    L = st.algebra
    if len(tau) != len(L.rotations):
        raise ContractViolation(f"variation needs {len(L.rotations)} one-forms, got {len(tau)}")
    shifted = [w + t for w, t in zip(st.connection, tau)]
    new = connection_curvature(L, shifted)
    old = connection_curvature(L, st.connection)
    return tuple(n - o - f for n, o, f in zip(new, old, _variation_form(L, st.connection, tau)))


def _variation_form(L: LieAlgebraData, connection, tau) -> tuple[Form, ...]:
    mixed = wedge_bracket(connection, tau, L)
    squared = wedge_bracket(tau, tau, L)
    half = sympy.Rational(1, 2)
    return tuple(d(t) + mixed[i] + squared[i] * half for i, t in enumerate(tau))


def ricci_variation(st: GeometryState, tau: Sequence[Form], point) -> np.ndarray:
    """Ric(ω+τ) − Ric(ω) − tr(d^ωτ + ½[τ∧τ]) at a point."""
    L = st.algebra
    if len(tau) != len(L.rotations):
        raise ContractViolation(f"variation needs {len(L.rotations)} one-forms, got {len(tau)}")
    e = st.frame_matrix(point)
    E = st.inverse_frame(point)
    shifted = st.with_connection([w + t for w, t in zip(st.connection, tau)])
    new = ricci_from_curvature(L, two_form_array(curvature(shifted).curvature, point), e, E)
    old = ricci_from_curvature(L, two_form_array(curvature(st).curvature, point), e, E)
    correction = ricci_from_curvature(L, two_form_array(_variation_form(L, st.connection, tau), point), e, E)
    return simplify_array(new - old - correction)


def _frame_curvature_components(pd: PointData) -> np.ndarray:
    """Ω^i_{ab} = E^μ_a E^ν_b Ω^i_{μν}."""
    E = np.array(pd.inverse.tolist(), dtype=object)
    step = np.tensordot(pd.curvature, E, axes=([1], [0]))   # [i, ν, a]
    return simplify_array(np.tensordot(step, E, axes=([1], [0])))   # [i, a, b]


def frame_ricci(pd: PointData, L: LieAlgebraData) -> np.ndarray:
    """Ric_{af} = R^e_{fea} in frame components."""
    omega = _frame_curvature_components(pd)
    riemann = np.tensordot(L.rho, omega, axes=([0], [0]))   # [e, f, c, d]
    out = zeros((N, N))
    for a in range(N):
        for f in range(N):
            out[a, f] = sympy.expand(sum(riemann[e, f, e, a] for e in range(N)))
    return out


def multiplier_curvature_contraction(st: GeometryState, point, pd: PointData | None = None) -> np.ndarray:
    """p_i^{bc}Ω^i_{ab} + δ^c_a ½p_i^{de}Ω^i_{de}, indexed [a, c]."""
    L = st.algebra
    pd = pd or point_data(st, point)
    omega = _frame_curvature_components(pd)
    p = L.multiplier_constants
    n_rot = len(L.rotations)
    trace = sympy.Rational(1, 2) * sum(
        p[i, dd, e] * omega[i, dd, e] for i in range(n_rot) for dd in range(N) for e in range(N)
    )
    out = zeros((N, N))
    for a in range(N):
        for c in range(N):
            total = sum(p[i, b, c] * omega[i, a, b] for i in range(n_rot) for b in range(N))
            out[a, c] = sympy.expand(total + (trace if a == c else 0))
    return out


def einstein_contraction(st: GeometryState, point) -> np.ndarray:
    """p_i^{bc}Ω^i_{ab} + δ^c_a ½p_i^{de}Ω^i_{de} − (−2Ric_a^c + δ^c_a Scal), indexed [a, c]."""
    pd = point_data(st, point)
    eta = st.signature.diagonal
    ric = frame_ricci(pd, st.algebra)
    scal = sympy.expand(sum(eta[a] * ric[a, a] for a in range(N)))
    lhs_all = multiplier_curvature_contraction(st, point, pd)
    out = zeros((N, N))
    for a in range(N):
        for c in range(N):
            lhs = lhs_all[a, c]
            rhs = -2 * ric[a, c] * eta[c] + (scal if a == c else 0)
            out[a, c] = sympy.expand(lhs - rhs)
    return out


def torsion_trace_tensor(st: GeometryState, point) -> np.ndarray:
    """Θ^c_{de} + δ^c_e t_d − δ^c_d t_e in frame components, t_d = Θ^f_{fd}."""
    pd = point_data(st, point)
    theta = _frame_torsion(pd)
    t = [sum(theta[f, f, dd] for f in range(N)) for dd in range(N)]
    out = zeros((N, N, N))
    for c in range(N):
        for dd in range(N):
            for e in range(N):
                out[c, dd, e] = theta[c, dd, e] + (t[dd] if c == e else 0) - (t[e] if c == dd else 0)
    return simplify_array(out)


def _frame_torsion(pd: PointData) -> np.ndarray:
    E = np.array(pd.inverse.tolist(), dtype=object)
    step = np.tensordot(pd.frame_torsion, E, axes=([1], [0]))   # [c, ν, d]
    return simplify_array(np.tensordot(step, E, axes=([1], [0])))   # [c, d, e]


def torsion_trace_residual(st: GeometryState, point) -> int:
    """Companion tensor against Θ + t ∧ e^c built with the exterior product."""
    pd = point_data(st, point)
    theta = _frame_torsion(pd)
    t = [sympy.expand(sum(theta[f, f, dd] for f in range(N))) for dd in range(N)]
    trace_form = Form.one_form(N, t)
    companion = torsion_trace_tensor(st, point)
    count = 0
    for c in range(N):
        wedge_part = wedge(trace_form, Form.basis(N, (c + 1,)))
        for dd in range(N):
            for e in range(N):
                if dd == e:
                    continue
                expected = theta[c, dd, e] + evaluate(wedge_part.component((dd + 1, e + 1)), point)
                count += 0 if is_zero(companion[c, dd, e] - expected) else 1
    return count


def levi_civita_connection(st: GeometryState, point) -> tuple[np.ndarray, np.ndarray]:
    """(Γ^{LC ρ}_{μν}, ω^{LC a}_{bμ}) at the point."""
    pd = point_data(st, point)
    eta = st.signature.diagonal
    e, de = np.array(pd.frame.tolist(), dtype=object), pd.frame_derivative
    dg = zeros((N, N, N))   # [λ, μ, ν] = ∂_λ g_{μν}
    for lam_ in range(N):
        for mu in range(N):
            for nu in range(N):
                dg[lam_, mu, nu] = sympy.expand(
                    sum(eta[a] * (de[lam_, a, mu] * e[a, nu] + e[a, mu] * de[lam_, a, nu]) for a in range(N))
                )
    ginv = pd.inverse_metric
    christoffel = zeros((N, N, N))
    for rho in range(N):
        for mu in range(N):
            for nu in range(N):
                christoffel[rho, mu, nu] = sympy.expand(
                    sympy.Rational(1, 2)
                    * sum(ginv[rho, s] * (dg[mu, s, nu] + dg[nu, s, mu] - dg[s, mu, nu]) for s in range(N))
                )
    E = np.array(pd.inverse.tolist(), dtype=object)
    connection = zeros((N, N, N))
    for a in range(N):
        for b in range(N):
            for mu in range(N):
                connection[a, b, mu] = sympy.expand(
                    sum(
                        (sum(e[a, r] * christoffel[r, mu, nu] for r in range(N)) - de[mu, a, nu]) * E[nu, b]
                        for nu in range(N)
                    )
                )
    return christoffel, connection


# ── Cartan coframes ──────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class CartanCoframe:
    """g-valued one-form ϖ on a chart of dimension dim g."""

    algebra: LieAlgebraData
    forms: tuple[Form, ...]

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if len(self.forms) != self.algebra.dim:
            raise ContractViolation(f"coframe needs {self.algebra.dim} one-forms, got {len(self.forms)}")
        for f in self.forms:
            if f.dim != self.algebra.dim or f.degree != 1:
                raise ContractViolation(f"coframe forms must be one-forms on a {self.algebra.dim}-chart")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def matrix(self, point) -> sympy.Matrix:
        return sympy.Matrix(self.dim, self.dim, lambda a, k: evaluate(self.forms[a].component((k + 1,)), point))

    def derivative(self, j: int, point) -> sympy.Matrix:
        """∂_j ϖ^A_I at the point (0-based j)."""
        return sympy.Matrix(
            self.dim, self.dim, lambda a, k: evaluate(self.forms[a].partial(j + 1).component((k + 1,)), point)
        )

    def inverse(self, point) -> sympy.Matrix:
        w = self.matrix(point)
        if is_zero(w.det()):
            raise SingularFrameError(point, what="Cartan coframe")
        return w.inv(method="ADJ").applyfunc(sympy.expand)


def maurer_cartan_residual(cf: CartanCoframe) -> tuple[Form, ...]:
    """dϖ + ½[ϖ∧ϖ]; zero for a flat (Maurer-Cartan) coframe."""
    squared = wedge_bracket(cf.forms, cf.forms, cf.algebra)
    half = sympy.Rational(1, 2)
    return tuple(d(f) + squared[a] * half for a, f in enumerate(cf.forms))


def fundamental_field(cf: CartanCoframe, h: Sequence, point) -> tuple[list, list[list]]:
    """h̄ = ϖ^{-1}h at the point and its first derivatives [j][I] = ∂_j h̄^I."""
    winv = cf.inverse(point)
    column = sympy.Matrix(h)
    value = winv * column
    derivatives = []
    for j in range(cf.dim):
        dwinv = -winv * cf.derivative(j, point) * winv
        derivatives.append([sympy.expand(x) for x in dwinv * column])
    return [sympy.expand(x) for x in value], derivatives


def vector_field_bracket(cf: CartanCoframe, h: Sequence, xi: Sequence, point) -> list:
    """[h̄, ξ̄]^I = h̄^J ∂_J ξ̄^I − ξ̄^J ∂_J h̄^I."""
    hv, dh = fundamental_field(cf, h, point)
    xv, dx = fundamental_field(cf, xi, point)
    return [
        sympy.expand(sum(hv[j] * dx[j][k] - xv[j] * dh[j][k] for j in range(cf.dim)))
        for k in range(cf.dim)
    ]


def cartan_bracket_identity(cf: CartanCoframe, h: Sequence, xi: Sequence, point) -> list:
    """ϖ([h̄,ξ̄]) − [h,ξ] + (dϖ + ½[ϖ∧ϖ])(h̄,ξ̄) at the point; vanishes for every coframe."""
    if len(h) != cf.dim or len(xi) != cf.dim:
        raise ContractViolation(f"algebra elements must have {cf.dim} components")
    point = tuple(sympy.Rational(x) for x in point)
    w = cf.matrix(point)
    hv, _ = fundamental_field(cf, h, point)
    xv, _ = fundamental_field(cf, xi, point)
    bracket_field = sympy.Matrix(vector_field_bracket(cf, h, xi, point))
    pulled = w * bracket_field
    algebra_bracket = bracket(cf.algebra, h, xi)
    # ½[ϖ∧ϖ] is pointwise, so it is evaluated on the constant coframe
    constant = [f.at(point) for f in cf.forms]
    squared = wedge_bracket(constant, constant, cf.algebra)
    half = sympy.Rational(1, 2)
    out = []
    for a in range(cf.dim):
        curvature_value = evaluate_on(d(cf.forms[a]), [hv, xv], point) + half * evaluate_on(squared[a], [hv, xv], point)
        out.append(sympy.expand(pulled[a] - algebra_bracket[a] + curvature_value))
    return out


def exact_coframe(L: LieAlgebraData, potentials: Sequence) -> CartanCoframe:
    """ϖ^A = d f^A for polynomial potentials f^A on a chart of dimension dim g."""
    return CartanCoframe(L, tuple(d(Form.scalar(L.dim, f)) for f in potentials))


# ── Random states ────────────────────────────────────────────────────────

def random_rational(rng: random.Random, bound: int = 3, nonzero: bool = False) -> sympy.Rational:
    if nonzero:
        numerator = rng.choice([k for k in range(-bound, bound + 1) if k])
    else:
        numerator = rng.randint(-bound, bound)
    return sympy.Rational(numerator, rng.randint(1, bound))


def random_polynomial(rng: random.Random, n: int, degree: int, terms: int = 2) -> sympy.Expr:
    gens = coordinates(n)
    expr = sympy.Integer(0)
    for _ in range(terms):
        monomial = sympy.Integer(1)
        for _ in range(rng.randint(0, degree)):
            monomial *= rng.choice(gens)
        expr += random_rational(rng, nonzero=True) * monomial
    return sympy.expand(expr)


def random_point(rng: random.Random, n: int = N) -> tuple:
    return tuple(random_rational(rng) for _ in range(n))


def random_state(
    rng: random.Random,
    sig: MetricSignature,
    degree: int = 2,
    points: int = 1,
) -> GeometryState:
    """Vielbein δ^a_μ + polynomial perturbation and a polynomial connection, invertible at the sample points."""
    if degree < 0:
        raise ContractViolation(f"degree must be non-negative, got {degree}")
    n_rot = len(so_basis(sig).rotations)
    for _ in range(MAX_RESAMPLE):
        vielbein = tuple(
            Form.one_form(N, [(1 if a == mu else 0) + random_polynomial(rng, N, degree) for mu in range(N)])
            for a in range(N)
        )
        connection = tuple(
            Form.one_form(N, [random_polynomial(rng, N, degree) for _ in range(N)]) for _ in range(n_rot)
        )
        sample = tuple(random_point(rng) for _ in range(points))
        try:
            return GeometryState(sig, vielbein, connection, sample)
        except SingularFrameError:
            logger.debug("Resampling singular random vielbein")
    raise SingularFrameError(sample[0])


def random_coframe(rng: random.Random, L: LieAlgebraData, point) -> CartanCoframe:
    """ϖ^A = dz^A + sparse linear perturbation, invertible at the point."""
    n = L.dim
    gens = coordinates(n)
    for _ in range(MAX_RESAMPLE):
        forms = []
        for a in range(n):
            coeffs = [sympy.Integer(1 if a == k else 0) for k in range(n)]
            for _ in range(2):
                k = rng.randrange(n)
                coeffs[k] += random_rational(rng, nonzero=True) * rng.choice(gens) + random_rational(rng, 1)
            forms.append(Form.one_form(n, coeffs))
        cf = CartanCoframe(L, tuple(forms))
        if not is_zero(cf.matrix(point).det()):
            return cf
    raise SingularFrameError(point, what="Cartan coframe")


def random_tau(rng: random.Random, sig: MetricSignature, degree: int = 1) -> tuple[Form, ...]:
    n_rot = len(so_basis(sig).rotations)
    return tuple(Form.one_form(N, [random_polynomial(rng, N, degree) for _ in range(N)]) for _ in range(n_rot))
