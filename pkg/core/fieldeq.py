"""
Field Equations
===============
Torsion decomposition, axial-vector extraction, Einstein-Cartan-Dirac
field-equation residuals at a point, and the comparison with the
Levi-Civita connection for purely axial torsion.

Spinor covariant derivative: ∇_μψ = ∂_μψ + ω^i_μ S_i ψ with S_i = −½σ_i.
Coordinate gammas: γ_μ = e^a_μ γ_a, γ^μ = E^μ_a γ^a.
Symmetrized derivative: ψ̄γ^μ∇↔_μψ = ψ̄γ^μ∇_μψ − (∇_μψ̄)γ^μψ, ∇_μψ̄ = (∇_μψ)†β.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
import sympy
from sympy import Poly

from core.algebra import SPACETIME_DIM, MetricSignature, levi_civita, so_coordinates
from core.clifford import CliffordRep, anticommutator, build_rep, cobar, commutator
from core.errors import ContractViolation
from core.exact import is_zero, nonzero_count, simplify_array, zeros
from core.exterior import Form, as_poly, coordinates, evaluate
from core.geometry import (
    GeometryState,
    PointData,
    levi_civita_connection,
    multiplier_curvature_contraction,
    point_data,
    torsion_divergence,
)
from utils.logger import get_custom_logger

logger = get_custom_logger("fieldeq")

N = SPACETIME_DIM


# ── Torsion decomposition ────────────────────────────────────────────────

@dataclass(frozen=True)
class TorsionDecomposition:
    trace: list               # t_ν = T^σ_{σν}
    trace_part: np.ndarray    # ⅓(t_ν g_{τμ} − t_μ g_{τν})
    axial_part: np.ndarray    # totally antisymmetric part
    pure_part: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return simplify_array(self.trace_part + self.axial_part + self.pure_part)


def decompose_torsion(torsion_lower: np.ndarray, metric) -> TorsionDecomposition:
    """Split T_{τμν} (antisymmetric in μν) into trace, axial and pure parts."""
    T = np.asarray(torsion_lower, dtype=object)
    if T.shape != (N, N, N):
        raise ContractViolation(f"torsion must have shape {(N, N, N)}, got {T.shape}")
    if nonzero_count(T + np.transpose(T, (0, 2, 1))) != 0:
        raise ContractViolation("torsion is not antisymmetric in its last two indices")
    g = sympy.Matrix(metric)
    ginv = g.inv()
    trace = [
        sympy.expand(sum(ginv[s, tau] * T[tau, s, nu] for s in range(N) for tau in range(N)))
        for nu in range(N)
    ]
    third = sympy.Rational(1, 3)
    trace_part = zeros((N, N, N))
    axial = zeros((N, N, N))
    for tau in range(N):
        for mu in range(N):
            for nu in range(N):
                trace_part[tau, mu, nu] = third * (trace[nu] * g[tau, mu] - trace[mu] * g[tau, nu])
                axial[tau, mu, nu] = third * (T[tau, mu, nu] + T[mu, nu, tau] + T[nu, tau, mu])
    trace_part, axial = simplify_array(trace_part), simplify_array(axial)
    return TorsionDecomposition(
        trace=trace,
        trace_part=trace_part,
        axial_part=axial,
        pure_part=simplify_array(T - trace_part - axial),
    )


def axial_dual(axial: np.ndarray, frame_det=1) -> list:
    """A^ξ with 𝒜_{τμν} = A^ξ vol_{ξτμν}, vol = det(e) ε."""
    A3 = np.asarray(axial, dtype=object)
    eps = levi_civita()
    six_det = 6 * sympy.sympify(frame_det)
    return [
        sympy.expand(sum(eps[xi, t, m, n] * A3[t, m, n] for t in range(N) for m in range(N) for n in range(N)) / six_det)
        for xi in range(N)
    ]


def axial_tensor(A: Sequence, frame_det=1) -> np.ndarray:
    """𝒜_{τμν} = det(e) A^ξ ε_{ξτμν}."""
    eps = levi_civita()
    out = zeros((N, N, N))
    for t in range(N):
        for m in range(N):
            for n in range(N):
                out[t, m, n] = sympy.expand(frame_det * sum(A[xi] * eps[xi, t, m, n] for xi in range(N)))
    return out


# ── Field states ─────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class FieldState:
    geometry: GeometryState
    psi: tuple[Poly, ...]
    mass: sympy.Rational = sympy.Integer(0)

    def __post_init__(self):
        if len(self.psi) != 4:
            raise ContractViolation(f"spinor needs 4 components, got {len(self.psi)}")
        object.__setattr__(self, "psi", tuple(as_poly(p, N) for p in self.psi))
        object.__setattr__(self, "mass", sympy.Rational(self.mass))

    @property
    def signature(self) -> MetricSignature:
        return self.geometry.signature

    @cached_property
    def rep(self) -> CliffordRep:
        return build_rep(self.signature)

    def spinor_at(self, point) -> sympy.Matrix:
        return sympy.Matrix([evaluate(p, point) for p in self.psi])

    def spinor_derivative(self, mu: int, point) -> sympy.Matrix:
        gen = coordinates(N)[mu]
        return sympy.Matrix([evaluate(p.diff(gen), point) for p in self.psi])

    def scaled(self, factor) -> "FieldState":
        return FieldState(self.geometry, tuple(p * factor for p in self.psi), self.mass)


@dataclass(frozen=True, eq=False)
class SpinorPoint:
    psi: sympy.Matrix
    psibar: sympy.Matrix
    nabla: tuple[sympy.Matrix, ...]         # ∇_μψ
    nabla_bar: tuple[sympy.Matrix, ...]     # (∇_μψ)†β
    gamma_lower: tuple[sympy.Matrix, ...]   # γ_μ
    gamma_upper: tuple[sympy.Matrix, ...]   # γ^μ


def _coordinate_gammas(rep: CliffordRep, pd: PointData) -> tuple[tuple, tuple]:
    lower, upper = [], []
    for mu in range(N):
        lower.append(sum((pd.frame[a, mu] * rep.gammas[a] for a in range(N)), sympy.zeros(4)))
        upper.append(sum((pd.inverse[mu, a] * rep.gamma_upper(a) for a in range(N)), sympy.zeros(4)))
    return tuple(lower), tuple(upper)


def covariant_derivative(rep: CliffordRep, omega_values: np.ndarray, psi, dpsi: Sequence) -> tuple[sympy.Matrix, ...]:
    """∇_μψ = ∂_μψ + ω^i_μ S_i ψ for connection values [i, μ]."""
    out = []
    for mu in range(N):
        total = sympy.Matrix(dpsi[mu])
        for i, S in enumerate(rep.spin_generators):
            if not is_zero(omega_values[i, mu]):
                total += omega_values[i, mu] * S * psi
        out.append(total.applyfunc(sympy.expand))
    return tuple(out)


def _connection_values(st: GeometryState, point) -> np.ndarray:
    out = zeros((len(st.algebra.rotations), N))
    for i, w in enumerate(st.connection):
        for (mu,), value in w.values_at(point).items():
            out[i, mu - 1] = value
    return out


def spinor_point(fs: FieldState, pd: PointData, omega_values: np.ndarray | None = None) -> SpinorPoint:
    rep = fs.rep
    psi = fs.spinor_at(pd.point)
    dpsi = [fs.spinor_derivative(mu, pd.point) for mu in range(N)]
    if omega_values is None:
        omega_values = _connection_values(fs.geometry, pd.point)
    nabla = covariant_derivative(rep, omega_values, psi, dpsi)
    lower, upper = _coordinate_gammas(rep, pd)
    return SpinorPoint(
        psi=psi,
        psibar=cobar(rep, psi),
        nabla=nabla,
        nabla_bar=tuple(cobar(rep, v) for v in nabla),
        gamma_lower=lower,
        gamma_upper=upper,
    )


def _scalar(row, matrix, column) -> sympy.Expr:
    return sympy.expand((row * matrix * column)[0, 0])


def dirac_symmetrized(sp: SpinorPoint) -> sympy.Expr:
    """ψ̄γ^μ∇↔_μψ."""
    return sympy.expand(
        sum(_scalar(sp.psibar, sp.gamma_upper[mu], sp.nabla[mu]) - _scalar(sp.nabla_bar[mu], sp.gamma_upper[mu], sp.psi) for mu in range(N))
    )


def kinetic_tensor(sp: SpinorPoint) -> np.ndarray:
    """ψ̄γ_μ∇↔_νψ indexed [μ, ν]."""
    out = zeros((N, N))
    for mu in range(N):
        for nu in range(N):
            out[mu, nu] = sympy.expand(
                _scalar(sp.psibar, sp.gamma_lower[mu], sp.nabla[nu]) - _scalar(sp.nabla_bar[nu], sp.gamma_lower[mu], sp.psi)
            )
    return out


def dirac_operator(sp: SpinorPoint) -> sympy.Matrix:
    """γ^μ∇_μψ."""
    return sum((sp.gamma_upper[mu] * sp.nabla[mu] for mu in range(N)), sympy.zeros(4, 1)).applyfunc(sympy.expand)


def spin_torsion(sp: SpinorPoint) -> np.ndarray:
    """T^μ_{νξ} = −¼ψ̄{[γ_ν,γ_ξ],γ^μ}ψ indexed [μ, ν, ξ]."""
    out = zeros((N, N, N))
    for mu in range(N):
        for nu in range(N):
            for xi in range(N):
                nested = anticommutator(commutator(sp.gamma_lower[nu], sp.gamma_lower[xi]), sp.gamma_upper[mu])
                out[mu, nu, xi] = -_scalar(sp.psibar, nested, sp.psi) / 4
    return simplify_array(out)


# ── Field-equation residuals ─────────────────────────────────────────────

@dataclass(frozen=True)
class ResidualReport:
    point: tuple
    einstein: np.ndarray
    torsion: np.ndarray
    dirac: list
    term_groups: dict

    @property
    def vanishes(self) -> dict[str, bool]:
        return {
            "einstein": nonzero_count(self.einstein) == 0,
            "torsion": nonzero_count(self.torsion) == 0,
            "dirac": nonzero_count(self.dirac) == 0,
        }


def ecd_residuals(fs: FieldState, point) -> ResidualReport:
    """Residuals of the Einstein, torsion and Dirac equations at a point.

    The Einstein equation keeps the normalization without the customary ½ on the matter side.
    """
    pd = point_data(fs.geometry, point)
    sp = spinor_point(fs, pd)
    g = pd.metric
    m = fs.mass
    t = pd.trace
    mass_term = _scalar(sp.psibar, sympy.eye(4), sp.psi)
    symmetrized = dirac_symmetrized(sp)
    kinetic = kinetic_tensor(sp)

    einstein_geometry = zeros((N, N))
    einstein_matter = zeros((N, N))
    for mu in range(N):
        for nu in range(N):
            einstein_geometry[mu, nu] = sympy.expand(2 * pd.ricci[mu, nu] - g[mu, nu] * pd.scalar)
            einstein_matter[mu, nu] = sympy.expand(
                g[mu, nu] * (symmetrized / 2 - m * mass_term) - kinetic[mu, nu] / 2
            )

    torsion_geometry = zeros((N, N, N))
    for mu in range(N):
        for nu in range(N):
            for xi in range(N):
                torsion_geometry[mu, nu, xi] = sympy.expand(
                    pd.torsion[mu, nu, xi] - (t[xi] if mu == nu else 0) + (t[nu] if mu == xi else 0)
                )
    # spin_torsion carries −¼, the equation carries +¼
    torsion_matter = simplify_array(-spin_torsion(sp))

    trace_term = sum((t[mu] * sp.gamma_upper[mu] for mu in range(N)), sympy.zeros(4)) * sp.psi
    dirac = (dirac_operator(sp) - trace_term / 2 - m * sp.psi).applyfunc(sympy.expand)

    report = ResidualReport(
        point=pd.point,
        einstein=simplify_array(einstein_geometry - einstein_matter),
        torsion=simplify_array(torsion_geometry + torsion_matter),
        dirac=list(dirac),
        term_groups={
            "einstein_geometry": einstein_geometry,
            "einstein_matter": einstein_matter,
            "torsion_geometry": torsion_geometry,
            "torsion_matter": torsion_matter,
        },
    )
    logger.debug("Field-equation residuals at %s: %s", pd.point, report.vanishes)
    return report


# ── Axial torsion states ─────────────────────────────────────────────────

def axial_torsion_state(
    sig: MetricSignature,
    A: Sequence,
    psi: Sequence,
    mass=0,
    frame=None,
    sample_points: Sequence = ((0, 0, 0, 0),),
) -> FieldState:
    """Constant vielbein with connection ω = ½T, T_{τμν} = A^ξ vol_{ξτμν}.

    The Levi-Civita connection of such a state vanishes, so its torsion is purely axial.
    """
    e = sympy.Matrix(frame) if frame is not None else sympy.eye(N)
    E = e.inv()
    eta = sig.eta
    ginv = (E * eta * E.T).applyfunc(sympy.expand)
    lowered = axial_tensor(A, e.det())
    contorsion = zeros((N, N, N))   # K^π_{μν} = ½T^π_{μν}
    for pi in range(N):
        for mu in range(N):
            for nu in range(N):
                contorsion[pi, mu, nu] = sympy.expand(sum(ginv[pi, t] * lowered[t, mu, nu] for t in range(N)) / 2)
    omega = [[sympy.Integer(0)] * N for _ in range(6)]
    for mu in range(N):
        W = sympy.Matrix(
            N, N,
            lambda a, b: sympy.expand(
                sum(e[a, pi] * contorsion[pi, mu, nu] * E[nu, b] for pi in range(N) for nu in range(N))
            ),
        )
        for i, value in enumerate(so_coordinates(W, sig)):
            omega[i][mu] = value
    geometry = GeometryState(
        signature=sig,
        vielbein=tuple(Form.one_form(N, list(e.row(a))) for a in range(N)),
        connection=tuple(Form.one_form(N, omega[i]) for i in range(6)),
        sample_points=tuple(sample_points),
    )
    return FieldState(geometry, tuple(psi), mass)


def lc_comparison(fs: FieldState, point) -> dict[str, int]:
    """Residual entry counts of the Levi-Civita comparison identities for purely axial torsion.

    quadratic:    T^π_{μκ}T^κ_{πν} − 2s(A·A g_{μν} − A_μA_ν)
    scalar_shift: g^{μν}(−¼T^π_{μκ}T^κ_{πν}) + (3/2)s A·A
    kinetic:      ψ̄γ_μ∇↔_νψ − ψ̄γ_μ∇↔^{LC}_νψ + ½s ψ̄(A^ξγ_ξ g_{μν} − A_μγ_ν)γ5ψ
    dirac_shift:  ∇̸ψ − ∇̸^{LC}ψ + ¾s A^ξγ_ξγ5ψ
    contorsion:   ω − ω^{LC} − ½T in mixed frame components
    with s = (−1)^q.
    """
    st = fs.geometry
    rep = fs.rep
    pd = point_data(st, point)
    decomposition = decompose_torsion(pd.torsion_lowered, pd.metric)
    if nonzero_count(decomposition.trace_part) or nonzero_count(decomposition.pure_part):
        raise ContractViolation("torsion is not purely axial at the point")
    s = st.signature.sign
    g, ginv = pd.metric, pd.inverse_metric
    A = axial_dual(decomposition.axial_part, pd.frame.det())
    A_lower = [sympy.expand(sum(g[mu, xi] * A[xi] for xi in range(N))) for mu in range(N)]
    AA = sympy.expand(sum(A[xi] * A_lower[xi] for xi in range(N)))
    T = pd.torsion
    results = {}

    quadratic = zeros((N, N))
    for mu in range(N):
        for nu in range(N):
            q = sum(T[pi, mu, k] * T[k, pi, nu] for pi in range(N) for k in range(N))
            quadratic[mu, nu] = q - 2 * s * (AA * g[mu, nu] - A_lower[mu] * A_lower[nu])
    results["quadratic"] = nonzero_count(quadratic)

    shift = sum(
        ginv[mu, nu] * sum(T[pi, mu, k] * T[k, pi, nu] for pi in range(N) for k in range(N))
        for mu in range(N)
        for nu in range(N)
    )
    results["scalar_shift"] = 0 if is_zero(-shift / 4 + sympy.Rational(3, 2) * s * AA) else 1

    _, lc_frame = levi_civita_connection(st, pd.point)
    e, E = pd.frame, pd.inverse
    contorsion = zeros((N, N, N))
    for a in range(N):
        for b in range(N):
            for mu in range(N):
                K = sum(e[a, pi] * T[pi, mu, nu] * E[nu, b] for pi in range(N) for nu in range(N)) / 2
                contorsion[a, b, mu] = pd.connection[a, b, mu] - lc_frame[a, b, mu] - K
    results["contorsion"] = nonzero_count(contorsion)

    lc_values = zeros((len(st.algebra.rotations), N))
    for mu in range(N):
        W = sympy.Matrix(N, N, lambda a, b: lc_frame[a, b, mu])
        for i, value in enumerate(so_coordinates(W, st.signature)):
            lc_values[i, mu] = value
    sp = spinor_point(fs, pd)
    sp_lc = spinor_point(fs, pd, lc_values)
    slash_A = sum((A[xi] * sp.gamma_lower[xi] for xi in range(N)), sympy.zeros(4))

    kinetic = kinetic_tensor(sp) - kinetic_tensor(sp_lc)
    half = sympy.Rational(1, 2)
    for mu in range(N):
        for nu in range(N):
            shift_matrix = (slash_A * g[mu, nu] - A_lower[mu] * sp.gamma_lower[nu]) * rep.gamma5
            kinetic[mu, nu] += half * s * _scalar(sp.psibar, shift_matrix, sp.psi)
    results["kinetic"] = nonzero_count(kinetic)

    dirac = dirac_operator(sp) - dirac_operator(sp_lc) + sympy.Rational(3, 4) * s * slash_A * rep.gamma5 * sp.psi
    results["dirac_shift"] = nonzero_count(dirac)
    return results


def bianchi_belinfante_check(fs: FieldState, point) -> dict:
    """2Ric_{[μν]} − ∇_πT^π_{μν}, adding (d trT)_{μν} unless the trace and its derivative vanish at the point."""
    pd = point_data(fs.geometry, point)
    div = torsion_divergence(pd)
    dt = pd.trace_exterior_derivative
    trace_free = nonzero_count(pd.trace) == 0 and nonzero_count(dt) == 0
    residual = pd.ricci - pd.ricci.T - div
    if not trace_free:
        residual = residual + dt
    return {"residual": simplify_array(residual), "form": "trace-free" if trace_free else "full"}


def frame_mixed(tensor: np.ndarray, pd: PointData, sig: MetricSignature) -> np.ndarray:
    """X_a^c = E^μ_a X_{μν} E^ν_c η^{cc}."""
    E = pd.inverse
    eta = sig.diagonal
    out = zeros((N, N))
    for a in range(N):
        for c in range(N):
            out[a, c] = sympy.expand(
                eta[c] * sum(E[mu, a] * tensor[mu, nu] * E[nu, c] for mu in range(N) for nu in range(N))
            )
    return out


def vacuum_crosscheck(fs: FieldState, point) -> int:
    """Non-zero entries of the frame-mixed Einstein residual plus the multiplier curvature contraction.

    Only meaningful for ψ = 0, where the Einstein residual is purely geometric.
    """
    if any(not p.is_zero for p in fs.psi):
        raise ContractViolation("vacuum cross-check needs a vanishing spinor")
    pd = point_data(fs.geometry, point)
    report = ecd_residuals(fs, point)
    mixed = frame_mixed(report.einstein, pd, fs.signature)
    return nonzero_count(mixed + multiplier_curvature_contraction(fs.geometry, point, pd))
