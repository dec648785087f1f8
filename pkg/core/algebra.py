"""
Lie Algebra Data
================
Structure constants of so(p,q), its semidirect product with the translations
R^{p,q} (the Poincaré-type algebra, dimension 10), and an abelian toy algebra
with the same rotation/translation split.

Indexing is 0-based throughout this module:
  rotations    0..5  ↔  pairs (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
  translations 6..9  ↔  e_1..e_4

Conventions:
  c[A, B, C] = c^A_{BC},  [x_B, x_C] = c^A_{BC} x_A
  ρ(h_{ab})^c_d = δ^c_a η_{bd} − δ^c_b η_{ad}
  p_i^{bc} = 2 ρ^b_{i,d} η^{dc}
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np
import sympy
from sympy import LeviCivita

from core.errors import ContractViolation
from core.exact import is_zero, nonzero_count, zeros
from core.exterior import Form, wedge
from utils.logger import get_custom_logger

logger = get_custom_logger("algebra")

SPACETIME_DIM = 4
SUPPORTED_SIGNATURES = ((4, 0), (3, 1), (1, 3), (0, 4))
ROTATION_PAIRS = tuple(combinations(range(SPACETIME_DIM), 2))


# ── Signature ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class MetricSignature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q != SPACETIME_DIM:
            raise ContractViolation(f"signature ({self.p},{self.q}) is not a 4-dimensional signature")

    @classmethod
    def parse(cls, text: str) -> "MetricSignature":
        try:
            p, q = (int(part) for part in text.replace(" ", "").split(","))
        except ValueError as e:
            raise ContractViolation(f"signature must look like 'p,q', got {text!r}") from e
        return cls(p, q)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    @property
    def eta(self) -> sympy.ImmutableMatrix:
        return sympy.ImmutableMatrix(sympy.diag(*self.diagonal))

    @property
    def sign(self) -> int:
        """(−1)^q, the sign of det η."""
        return -1 if self.q % 2 else 1

    def __str__(self):
        return f"({self.p},{self.q})"


def require_supported(sig: MetricSignature) -> None:
    if (sig.p, sig.q) not in SUPPORTED_SIGNATURES:
        raise ContractViolation(f"unsupported signature {sig}; expected one of {SUPPORTED_SIGNATURES}")


# ── Algebra data ─────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    name: str
    labels: tuple[str, ...]
    structure: np.ndarray
    rotations: tuple[int, ...]
    translations: tuple[int, ...] = ()
    signature: MetricSignature | None = None
    rho: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def brackets(self) -> tuple[tuple[int, int, int, sympy.Expr], ...]:
        """Non-zero structure constants as (A, B, C, c^A_{BC})."""
        out = []
        for (a, b, c), value in np.ndenumerate(self.structure):
            if not is_zero(value):
                out.append((a, b, c, value))
        return tuple(out)

    @cached_property
    def multiplier_constants(self) -> np.ndarray:
        """p[i, b, c] = p_i^{bc} for the rotation generators."""
        if self.rho is None or self.signature is None:
            raise ContractViolation(f"algebra {self.name} carries no rotation representation")
        eta = self.signature.diagonal
        out = zeros((len(self.rotations), SPACETIME_DIM, SPACETIME_DIM))
        for i in range(len(self.rotations)):
            for b in range(SPACETIME_DIM):
                for c in range(SPACETIME_DIM):
                    out[i, b, c] = 2 * self.rho[i, b, c] * eta[c]
        return out

    def is_rotation(self, index: int) -> bool:
        return index in self.rotations

    def is_translation(self, index: int) -> bool:
        return index in self.translations

    def translation(self, a: int) -> int:
        """Algebra index of the translation e_a (0-based a)."""
        return self.translations[a]


def _rho_matrix(sig: MetricSignature, a: int, b: int) -> np.ndarray:
    eta = sig.diagonal
    m = zeros((SPACETIME_DIM, SPACETIME_DIM))
    for c in range(SPACETIME_DIM):
        for dd in range(SPACETIME_DIM):
            m[c, dd] = (1 if c == a else 0) * (eta[b] if b == dd else 0) - (1 if c == b else 0) * (eta[a] if a == dd else 0)
    return m


def so_coordinates(matrix, sig: MetricSignature) -> list[sympy.Expr]:
    """Coefficients of an η-antisymmetric 4×4 matrix in the h_{ab} basis.

    Raises ContractViolation if the matrix is not in so(p,q).
    """
    m = sympy.Matrix(matrix)
    eta = sig.eta
    if nonzero_count(m.T * eta + eta * m) != 0:
        raise ContractViolation("matrix is not η-antisymmetric")
    diagonal = sig.diagonal
    return [sympy.expand(m[a, b] * diagonal[b]) for a, b in ROTATION_PAIRS]


@lru_cache(maxsize=None)
def so_basis(sig: MetricSignature) -> LieAlgebraData:
    require_supported(sig)
    n_rot = len(ROTATION_PAIRS)
    rho = zeros((n_rot, SPACETIME_DIM, SPACETIME_DIM))
    for i, (a, b) in enumerate(ROTATION_PAIRS):
        rho[i] = _rho_matrix(sig, a, b)
    structure = zeros((n_rot, n_rot, n_rot))
    for i in range(n_rot):
        for j in range(n_rot):
            hi, hj = sympy.Matrix(rho[i]), sympy.Matrix(rho[j])
            coords = so_coordinates(hi * hj - hj * hi, sig)
            for k, value in enumerate(coords):
                structure[k, i, j] = value
    labels = tuple(f"h{a + 1}{b + 1}" for a, b in ROTATION_PAIRS)
    logger.debug("Built so%s with %d rotation generators", sig, n_rot)
    return LieAlgebraData(
        name=f"so{sig}",
        labels=labels,
        structure=structure,
        rotations=tuple(range(n_rot)),
        signature=sig,
        rho=rho,
    )


@lru_cache(maxsize=None)
def semidirect(sig: MetricSignature) -> LieAlgebraData:
    """so(p,q) ⋉ R^{p,q}: [h_i, e_b] = ρ^a_{ib} e_a, translations commute."""
    so = so_basis(sig)
    n_rot = len(so.rotations)
    dim = n_rot + SPACETIME_DIM
    structure = zeros((dim, dim, dim))
    structure[:n_rot, :n_rot, :n_rot] = so.structure
    for i in range(n_rot):
        for a in range(SPACETIME_DIM):
            for b in range(SPACETIME_DIM):
                value = so.rho[i, a, b]
                structure[n_rot + a, i, n_rot + b] = value
                structure[n_rot + a, n_rot + b, i] = -value
    labels = so.labels + tuple(f"e{a + 1}" for a in range(SPACETIME_DIM))
    algebra = LieAlgebraData(
        name=f"iso{sig}",
        labels=labels,
        structure=structure,
        rotations=tuple(range(n_rot)),
        translations=tuple(range(n_rot, dim)),
        signature=sig,
        rho=so.rho,
    )
    logger.debug("Built %s with %d non-zero structure constants", algebra.name, len(algebra.brackets))
    return algebra


@lru_cache(maxsize=None)
def abelian(rotations: int = 6, translations: int = SPACETIME_DIM) -> LieAlgebraData:
    dim = rotations + translations
    return LieAlgebraData(
        name=f"abelian({rotations}+{translations})",
        labels=tuple(f"a{k + 1}" for k in range(dim)),
        structure=zeros((dim, dim, dim)),
        rotations=tuple(range(rotations)),
        translations=tuple(range(rotations, dim)),
    )


ALGEBRA_BUILDERS = {
    "euclidean": lambda: semidirect(MetricSignature(4, 0)),
    "poincare": lambda: semidirect(MetricSignature(1, 3)),
    "abelian": lambda: abelian(),
}


def algebra_by_name(name: str, sig: MetricSignature | None = None) -> LieAlgebraData:
    """'euclidean', 'poincare', 'abelian', or 'semidirect' for the given signature."""
    if name == "semidirect":
        return semidirect(sig or MetricSignature(4, 0))
    try:
        return ALGEBRA_BUILDERS[name]()
    except KeyError as e:
        raise ContractViolation(f"unknown algebra {name!r}; choose from {sorted(ALGEBRA_BUILDERS)}") from e


# ── Brackets ─────────────────────────────────────────────────────────────

def bracket(L: LieAlgebraData, x: Sequence, y: Sequence) -> list[sympy.Expr]:
    if len(x) != L.dim or len(y) != L.dim:
        raise ContractViolation(f"algebra elements must have {L.dim} components")
    out = [sympy.Integer(0)] * L.dim
    for a, b, c, value in L.brackets:
        out[a] += value * x[b] * y[c]
    return [sympy.expand(v) for v in out]


def coadjoint(L: LieAlgebraData, x: Sequence, u: Sequence) -> list[sympy.Expr]:
    """(x·u)_A = −c^C_{BA} x^B u_C on lower-index components u."""
    out = [sympy.Integer(0)] * L.dim
    for c, b, a, value in L.brackets:
        out[a] -= value * x[b] * u[c]
    return [sympy.expand(v) for v in out]


def wedge_bracket(alpha: Sequence[Form], beta: Sequence[Form], L: LieAlgebraData) -> tuple[Form, ...]:
    """[α∧β]^A = c^A_{BC} α^B ∧ β^C for algebra-valued forms."""
    if len(alpha) != L.dim or len(beta) != L.dim:
        raise ContractViolation(f"algebra-valued forms must have {L.dim} components, got {len(alpha)} and {len(beta)}")
    dim = alpha[0].dim
    degree = alpha[0].degree + beta[0].degree
    if any(f.dim != dim for f in (*alpha, *beta)):
        raise ContractViolation("algebra-valued forms live on different charts")
    out = [Form.zero(dim, degree) for _ in range(L.dim)]
    for a, b, c, value in L.brackets:
        term = wedge(alpha[b], beta[c])
        if not term.is_zero:
            out[a] = out[a] + term * value
    return tuple(out)


# ── Invariant checks ─────────────────────────────────────────────────────

def jacobi_residual(L: LieAlgebraData) -> np.ndarray:
    """J[E,A,B,C] = c^E_{AD}c^D_{BC} + c^E_{BD}c^D_{CA} + c^E_{CD}c^D_{AB}."""
    t = np.tensordot(L.structure, L.structure, axes=([2], [0]))
    r = L.dim
    out = zeros((r, r, r, r))
    for e in range(r):
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    out[e, a, b, c] = t[e, a, b, c] + t[e, b, c, a] + t[e, c, a, b]
    return out


def unimodularity_residual(L: LieAlgebraData) -> list[sympy.Expr]:
    """Σ_B c^B_{AB} for each A."""
    return [sympy.expand(sum(L.structure[b, a, b] for b in range(L.dim))) for a in range(L.dim)]


def rho_antisymmetry_residual(L: LieAlgebraData) -> np.ndarray:
    """ρ^c_{i,d} η_{ce} + ρ^c_{i,e} η_{cd}, zero when every ρ(h_i) preserves η."""
    eta = L.signature.diagonal
    out = zeros((len(L.rotations), SPACETIME_DIM, SPACETIME_DIM))
    for i in range(len(L.rotations)):
        for dd in range(SPACETIME_DIM):
            for e in range(SPACETIME_DIM):
                out[i, dd, e] = L.rho[i, e, dd] * eta[e] + L.rho[i, dd, e] * eta[dd]
    return out


def multiplier_contraction(L: LieAlgebraData, tensor: np.ndarray) -> np.ndarray:
    """[i, D] = p_i^{bc} A_{bcD} for A of shape (4, 4, r)."""
    p = L.multiplier_constants
    return np.tensordot(p, tensor, axes=([1, 2], [0, 1]))


def is_pair_symmetric(tensor: np.ndarray) -> bool:
    """A_{bcD} = A_{cbD} for all b, c, D."""
    return nonzero_count(tensor - np.transpose(tensor, (1, 0, 2))) == 0


# ── Metric helpers ───────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def _levi_civita(n: int) -> np.ndarray:
    out = zeros((n,) * n)
    for idx in np.ndindex(*(n,) * n):
        out[idx] = LeviCivita(*idx)
    out.setflags(write=False)
    return out


def levi_civita(n: int = SPACETIME_DIM) -> np.ndarray:
    """ε with ε[0,1,...,n-1] = +1 (0-based indices)."""
    return _levi_civita(n)


def lower_index(tensor: np.ndarray, axis: int, metric) -> np.ndarray:
    """Contract `axis` with the first index of a symmetric metric and keep the axis position."""
    g = np.array(sympy.Matrix(metric).tolist(), dtype=object)
    moved = np.tensordot(g, tensor, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def raise_index(tensor: np.ndarray, axis: int, inverse_metric) -> np.ndarray:
    return lower_index(tensor, axis, inverse_metric)


def lc_contraction_residual(sig: MetricSignature) -> np.ndarray:
    """ε^{abcd}ε_{efcd} − 2(−1)^q (δ^a_eδ^b_f − δ^a_fδ^b_e), indices raised with η."""
    eps = levi_civita()
    eta = sig.diagonal
    out = zeros((SPACETIME_DIM,) * 4)
    for a, b, e, f in np.ndindex(*(SPACETIME_DIM,) * 4):
        total = 0
        for c in range(SPACETIME_DIM):
            for dd in range(SPACETIME_DIM):
                total += eta[a] * eta[b] * eta[c] * eta[dd] * eps[a, b, c, dd] * eps[e, f, c, dd]
        delta = (1 if a == e and b == f else 0) - (1 if a == f and b == e else 0)
        out[a, b, e, f] = total - 2 * sig.sign * delta
    return out


def antisym_kronecker(upper: Sequence[int], lower: Sequence[int]) -> int:
    """δ^{[efg]}_{bcd} as the six-term alternating sum (0-based or 1-based, consistently)."""
    e, f, g = upper
    b, c, dd = lower

    def k(x, y):
        return 1 if x == y else 0

    return (
        k(e, b) * (k(f, c) * k(g, dd) - k(f, dd) * k(g, c))
        + k(e, c) * (k(f, dd) * k(g, b) - k(f, b) * k(g, dd))
        + k(e, dd) * (k(f, b) * k(g, c) - k(f, c) * k(g, b))
    )
