"""
Clifford Representation
=======================
Explicit 4×4 complex gamma matrices for so(p,q), p + q = 4, with entries in
Q[i], satisfying γ_aγ_b + γ_bγ_a = −2η_{ab}.

Construction: start from hermitian Euclidean matrices Γ_a with {Γ_a,Γ_b} = 2δ_{ab}
and set γ_a = iΓ_a where η_aa = +1, γ_a = Γ_a where η_aa = −1.

The spinor metric β is solved exactly from βγ_a + γ_a†β = 0 among hermitian
matrices (nullspace over the 16 real parameters).

Spin action: S_i = −½σ_i lifts ρ, i.e. [S_i, γ_c] = γ(ρ(h_i)e_c) and
[S_i, S_j] = c^k_{ij} S_k. Every covariant derivative of a spinor uses S_i.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import sympy
from sympy import I, ImmutableMatrix

from core.algebra import (
    SPACETIME_DIM,
    MetricSignature,
    levi_civita,
    require_supported,
    so_basis,
)
from core.errors import ContractViolation
from core.exact import nonzero_count
from utils.logger import get_custom_logger

logger = get_custom_logger("clifford")

_PAULI = (
    sympy.Matrix([[0, 1], [1, 0]]),
    sympy.Matrix([[0, -I], [I, 0]]),
    sympy.Matrix([[1, 0], [0, -1]]),
)


def _block(top_left, top_right, bottom_left, bottom_right) -> ImmutableMatrix:
    top = sympy.Matrix.hstack(top_left, top_right)
    bottom = sympy.Matrix.hstack(bottom_left, bottom_right)
    return ImmutableMatrix(sympy.Matrix.vstack(top, bottom))


@lru_cache(maxsize=None)
def euclidean_gammas() -> tuple[ImmutableMatrix, ...]:
    """Hermitian Γ_1..Γ_4 with {Γ_a, Γ_b} = 2δ_{ab}."""
    zero = sympy.zeros(2)
    one = sympy.eye(2)
    spatial = tuple(_block(zero, -I * s, I * s, zero) for s in _PAULI)
    return spatial + (_block(zero, one, one, zero),)


def _expand(m) -> ImmutableMatrix:
    return ImmutableMatrix(sympy.Matrix(m).applyfunc(sympy.expand))


def anticommutator(a, b) -> ImmutableMatrix:
    return _expand(a * b + b * a)


def commutator(a, b) -> ImmutableMatrix:
    return _expand(a * b - b * a)


# ── Representation ───────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class CliffordRep:
    signature: MetricSignature
    gammas: tuple[ImmutableMatrix, ...]
    beta: ImmutableMatrix

    def gamma_upper(self, a: int) -> ImmutableMatrix:
        """γ^a = η^{aa} γ_a."""
        return self.gammas[a] * self.signature.diagonal[a]

    def sigma(self, a: int, b: int) -> ImmutableMatrix:
        """σ_{ab} = ½[γ_a, γ_b]."""
        return _expand(commutator(self.gammas[a], self.gammas[b]) / 2)

    @cached_property
    def gamma5(self) -> ImmutableMatrix:
        g = self.gammas
        return _expand(g[0] * g[1] * g[2] * g[3])

    @cached_property
    def spin_basis(self) -> tuple[ImmutableMatrix, ...]:
        """σ_i = ¼ p_i^{ab} γ_a γ_b for the rotation generators of so(p,q)."""
        p = so_basis(self.signature).multiplier_constants
        out = []
        for i in range(p.shape[0]):
            total = sympy.zeros(4)
            for a in range(SPACETIME_DIM):
                for b in range(SPACETIME_DIM):
                    if p[i, a, b] != 0:
                        total += p[i, a, b] * self.gammas[a] * self.gammas[b]
            out.append(_expand(total / 4))
        return tuple(out)

    @cached_property
    def spin_generators(self) -> tuple[ImmutableMatrix, ...]:
        return tuple(_expand(-s / 2) for s in self.spin_basis)


def spin_generators(rep: CliffordRep) -> tuple[ImmutableMatrix, ...]:
    return rep.spin_generators


@lru_cache(maxsize=None)
def build_rep(sig: MetricSignature) -> CliffordRep:
    require_supported(sig)
    gammas = tuple(
        _expand(I * g) if eta > 0 else g
        for g, eta in zip(euclidean_gammas(), sig.diagonal)
    )
    beta = spinor_metric(gammas)
    logger.debug("Built Clifford representation for %s", sig)
    return CliffordRep(signature=sig, gammas=gammas, beta=beta)


# ── Spinor metric ────────────────────────────────────────────────────────

def _hermitian_basis() -> list[sympy.Matrix]:
    basis = []
    for j in range(4):
        m = sympy.zeros(4)
        m[j, j] = 1
        basis.append(m)
    for j in range(4):
        for k in range(j + 1, 4):
            real = sympy.zeros(4)
            real[j, k] = real[k, j] = 1
            imag = sympy.zeros(4)
            imag[j, k] = I
            imag[k, j] = -I
            basis.extend((real, imag))
    return basis


def spinor_metric(gammas: Sequence[ImmutableMatrix]) -> ImmutableMatrix:
    """Hermitian β with βγ_a + γ_a†β = 0, normalized so its first non-zero real parameter is 1."""
    basis = _hermitian_basis()
    columns = []
    for b in basis:
        column = []
        for g in gammas:
            for entry in _expand(b * g + g.H * b):
                column.extend((sympy.re(entry), sympy.im(entry)))
        columns.append(column)
    system = sympy.Matrix(columns).T
    solutions = system.nullspace()
    if len(solutions) != 1:
        raise ContractViolation(f"spinor metric is not unique: {len(solutions)} independent solutions")
    vector = solutions[0]
    lead = next(v for v in vector if v != 0)
    beta = sympy.zeros(4)
    for coeff, b in zip(vector, basis):
        beta += (coeff / lead) * b
    return _expand(beta)


def hermitian_signature(matrix) -> tuple[int, int]:
    """(number of positive, number of negative) eigenvalues of a hermitian matrix."""
    m = sympy.Matrix(matrix)
    if nonzero_count(m - m.H) != 0:
        raise ContractViolation("matrix is not hermitian")
    positive = negative = 0
    for value, multiplicity in m.eigenvals().items():
        real = sympy.re(value)
        if real > 0:
            positive += multiplicity
        elif real < 0:
            negative += multiplicity
    return positive, negative


def cobar(rep: CliffordRep, psi) -> ImmutableMatrix:
    """ψ̄ = ψ†β as a row."""
    column = sympy.Matrix(psi).reshape(4, 1)
    return _expand(column.H * rep.beta)


def axial_current(rep: CliffordRep, psi) -> list[sympy.Expr]:
    """A^ξ = −½ ψ̄ γ^ξ γ5 ψ."""
    column = sympy.Matrix(psi).reshape(4, 1)
    bar = cobar(rep, column)
    return [
        sympy.expand(-(bar * rep.gamma_upper(xi) * rep.gamma5 * column)[0, 0] / 2)
        for xi in range(SPACETIME_DIM)
    ]


# ── Identity checks ──────────────────────────────────────────────────────

def anticommutator_residual(rep: CliffordRep) -> int:
    """Non-zero entries of {γ_a, γ_b} + 2η_{ab} over all pairs."""
    eta = rep.signature.diagonal
    count = 0
    for a in range(SPACETIME_DIM):
        for b in range(SPACETIME_DIM):
            target = sympy.eye(4) * (-2 * eta[a] if a == b else 0)
            count += nonzero_count(anticommutator(rep.gammas[a], rep.gammas[b]) - target)
    return count


def gamma5_square_residual(rep: CliffordRep) -> int:
    return nonzero_count(rep.gamma5 * rep.gamma5 - rep.signature.sign * sympy.eye(4))


def beta_residual(rep: CliffordRep) -> int:
    return sum(nonzero_count(rep.beta * g + g.H * rep.beta) for g in rep.gammas)


def check_sigma_gamma_anticom(rep: CliffordRep) -> dict:
    """½{σ_{μν}, γ_τ} + ε_{υμντ} γ^υ γ5 over all 64 triples, plus the derivation identity.

    Returns {"chirality": int, "derivation": int, "antisymmetry": int} residual entry counts.
    """
    eps = levi_civita()
    g = rep.gammas
    chirality = derivation = antisymmetry = 0
    for mu in range(SPACETIME_DIM):
        for nu in range(SPACETIME_DIM):
            for tau in range(SPACETIME_DIM):
                lhs = anticommutator(rep.sigma(mu, nu), g[tau]) / 2
                rhs = sympy.zeros(4)
                for upsilon in range(SPACETIME_DIM):
                    if eps[upsilon, mu, nu, tau] != 0:
                        rhs += eps[upsilon, mu, nu, tau] * rep.gamma_upper(upsilon) * rep.gamma5
                chirality += nonzero_count(lhs + rhs)

                nested = anticommutator(commutator(g[mu], g[nu]), g[tau])
                expanded = commutator(g[mu], anticommutator(g[nu], g[tau])) - anticommutator(
                    g[nu], commutator(g[mu], g[tau])
                )
                derivation += nonzero_count(nested - expanded)
                derivation += nonzero_count(nested - anticommutator(g[nu], commutator(g[tau], g[mu])))
                # totally antisymmetric in (μ, ν, τ)
                antisymmetry += nonzero_count(nested + anticommutator(commutator(g[mu], g[tau]), g[nu]))
    return {"chirality": chirality, "derivation": derivation, "antisymmetry": antisymmetry}


def spin_closure_residual(rep: CliffordRep) -> dict:
    """[S_i, S_j] − c^k_{ij}S_k and [σ_i, σ_j] + 2c^k_{ij}σ_k, as non-zero entry counts."""
    algebra = so_basis(rep.signature)
    c = algebra.structure
    s, sigma = rep.spin_generators, rep.spin_basis
    n = len(s)
    generators = spin = 0
    for i in range(n):
        for j in range(n):
            expected_s = sympy.zeros(4)
            expected_sigma = sympy.zeros(4)
            for k in range(n):
                if c[k, i, j] != 0:
                    expected_s += c[k, i, j] * s[k]
                    expected_sigma += c[k, i, j] * sigma[k]
            generators += nonzero_count(commutator(s[i], s[j]) - expected_s)
            spin += nonzero_count(commutator(sigma[i], sigma[j]) + 2 * expected_sigma)
    return {"generators": generators, "sigma": spin}


def gamma_equivariance_residual(rep: CliffordRep) -> int:
    """[S_i, γ_c] − ρ^a_{ic} γ_a over all i, c."""
    rho = so_basis(rep.signature).rho
    count = 0
    for i, s in enumerate(rep.spin_generators):
        for c in range(SPACETIME_DIM):
            expected = sympy.zeros(4)
            for a in range(SPACETIME_DIM):
                if rho[i, a, c] != 0:
                    expected += rho[i, a, c] * rep.gammas[a]
            count += nonzero_count(commutator(s, rep.gammas[c]) - expected)
    return count


def beta_isometry_residual(rep: CliffordRep) -> int:
    """βS_i + S_i†β: the spin action preserves the spinor metric."""
    return sum(nonzero_count(rep.beta * s + s.H * rep.beta) for s in rep.spin_generators)


def axial_hermiticity_residual(rep: CliffordRep) -> int:
    """βγ^ξγ5 − (βγ^ξγ5)†; zero means the axial current is real."""
    count = 0
    for xi in range(SPACETIME_DIM):
        m = _expand(rep.beta * rep.gamma_upper(xi) * rep.gamma5)
        count += nonzero_count(m - m.H)
    return count
