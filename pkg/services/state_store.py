"""
State Store
===========
Line-oriented state files for geometric and field states. Every record is one
line, `#` starts a comment, indices are 1-based, exponents K1..K4 belong to
x1..x4 and rationals are written exactly.

  signature P Q
  mass NUM DEN
  sample R1 R2 R3 R4                        (R is num/den or an integer)
  e A MU K1 K2 K3 K4 NUM DEN                term of e^A_MU
  omega A B MU K1 K2 K3 K4 NUM DEN          term of ω^{AB}_MU, A < B
  psi ALPHA K1 K2 K3 K4 RNUM RDEN INUM IDEN term of ψ^ALPHA

Duplicate monomials add. Serialization is normalized: merged, zero-free,
reduced and sorted.

Tools:
  1. load_state       – parse a file into a GeometryState or FieldState
  2. serialize_state  – normalized text of a parsed state
  3. dump_state       – write the normalized text to a path
"""

from dataclasses import dataclass, field
from pathlib import Path

import sympy

from core.algebra import ROTATION_PAIRS, SPACETIME_DIM, MetricSignature, require_supported
from core.errors import ContractViolation, SingularFrameError, StateFormatError
from core.exterior import Form, coordinates
from core.fieldeq import FieldState
from core.geometry import GeometryState
from utils.logger import get_custom_logger

logger = get_custom_logger("state_store")

N = SPACETIME_DIM
ROTATION_INDEX = {pair: i for i, pair in enumerate(ROTATION_PAIRS)}

Monomial = tuple[int, int, int, int]


@dataclass
class StateRecords:
    """Parsed, merged coefficients keyed by component and monomial."""

    signature: MetricSignature | None = None
    mass: sympy.Rational | None = None
    samples: list[tuple] = field(default_factory=list)
    sample_lines: list[int] = field(default_factory=list)
    vielbein: dict[tuple[int, int], dict[Monomial, sympy.Rational]] = field(default_factory=dict)
    connection: dict[tuple[int, int, int], dict[Monomial, sympy.Rational]] = field(default_factory=dict)
    spinor: dict[int, dict[Monomial, sympy.Expr]] = field(default_factory=dict)

    @property
    def is_field_state(self) -> bool:
        return self.mass is not None or bool(self.spinor)


# ── Parsing helpers ──────────────────────────────────────────────────────

class _Line:
    def __init__(self, path, number: int, tokens: list[str]):
        self.path = path
        self.number = number
        self.tokens = tokens

    def fail(self, field_name: str, message: str):
        raise StateFormatError(self.path, self.number, field_name, message)

    def expect(self, count: int):
        if len(self.tokens) != count:
            self.fail(self.tokens[0], f"expected {count - 1} values, got {len(self.tokens) - 1}")

    def integer(self, pos: int, field_name: str, low: int | None = None, high: int | None = None) -> int:
        try:
            value = int(self.tokens[pos])
        except ValueError:
            self.fail(field_name, f"not an integer: {self.tokens[pos]!r}")
        if (low is not None and value < low) or (high is not None and value > high):
            self.fail(field_name, f"{value} outside {low}..{high}")
        return value

    def fraction(self, num_pos: int, field_name: str) -> sympy.Rational:
        num = self.integer(num_pos, field_name)
        den = self.integer(num_pos + 1, field_name)
        if den == 0:
            self.fail(field_name, "zero denominator")
        return sympy.Rational(num, den)

    def rational_token(self, pos: int, field_name: str) -> sympy.Rational:
        text = self.tokens[pos]
        num, _, den = text.partition("/")
        try:
            numerator, denominator = int(num), int(den) if den else 1
        except ValueError:
            self.fail(field_name, f"not a rational: {text!r}")
        if denominator == 0:
            self.fail(field_name, "zero denominator")
        return sympy.Rational(numerator, denominator)

    def exponents(self, start: int) -> Monomial:
        return tuple(self.integer(start + k, f"K{k + 1}", low=0) for k in range(N))


def _add(bucket: dict, key, mono: Monomial, value) -> None:
    terms = bucket.setdefault(key, {})
    terms[mono] = terms.get(mono, 0) + value


def parse_records(text: str, path: str | Path = "<string>") -> StateRecords:
    records = StateRecords()
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        line = _Line(path, number, content.split())
        keyword = line.tokens[0]
        if keyword == "signature":
            line.expect(3)
            if records.signature is not None:
                line.fail("signature", "declared twice")
            p, q = line.integer(1, "P", low=0), line.integer(2, "Q", low=0)
            try:
                sig = MetricSignature(p, q)
                require_supported(sig)
            except ContractViolation as e:
                line.fail("signature", str(e))
            records.signature = sig
        elif keyword == "mass":
            line.expect(3)
            records.mass = line.fraction(1, "mass")
        elif keyword == "sample":
            line.expect(N + 1)
            records.samples.append(tuple(line.rational_token(k + 1, f"R{k + 1}") for k in range(N)))
            records.sample_lines.append(line.number)
        elif keyword == "e":
            line.expect(N + 5)
            a = line.integer(1, "A", 1, N)
            mu = line.integer(2, "MU", 1, N)
            _add(records.vielbein, (a, mu), line.exponents(3), line.fraction(N + 3, "coefficient"))
        elif keyword == "omega":
            line.expect(N + 6)
            a = line.integer(1, "A", 1, N)
            b = line.integer(2, "B", 1, N)
            if a >= b:
                line.fail("B", f"rotation pair needs A < B, got {a} {b}")
            mu = line.integer(3, "MU", 1, N)
            _add(records.connection, (a, b, mu), line.exponents(4), line.fraction(N + 4, "coefficient"))
        elif keyword == "psi":
            line.expect(N + 6)
            alpha = line.integer(1, "ALPHA", 1, 4)
            real = line.fraction(N + 2, "real part")
            imag = line.fraction(N + 4, "imaginary part")
            _add(records.spinor, alpha, line.exponents(2), real + sympy.I * imag)
        else:
            line.fail(keyword, "unknown record")
    if records.signature is None:
        raise StateFormatError(path, 0, "signature", "missing signature record")
    return records


# ── States ───────────────────────────────────────────────────────────────

def _monomial_expr(mono: Monomial):
    x = coordinates(N)
    expr = sympy.Integer(1)
    for gen, k in zip(x, mono):
        expr *= gen**k
    return expr


def _polynomial(terms: dict[Monomial, object]) -> sympy.Expr:
    return sympy.expand(sum((coeff * _monomial_expr(mono) for mono, coeff in terms.items()), sympy.Integer(0)))


def _sample_line(records: StateRecords, point) -> int:
    point = tuple(sympy.Rational(r) for r in point)
    for sample, number in zip(records.samples, records.sample_lines):
        if tuple(sympy.Rational(r) for r in sample) == point:
            return number
    return 0


def build_state(records: StateRecords, path: str | Path = "<string>") -> GeometryState | FieldState:
    vielbein = tuple(
        Form.one_form(N, [_polynomial(records.vielbein.get((a, mu), {})) for mu in range(1, N + 1)])
        for a in range(1, N + 1)
    )
    connection = [Form.zero(N, 1)] * len(ROTATION_PAIRS)
    for (a, b, mu), terms in records.connection.items():
        i = ROTATION_INDEX[(a - 1, b - 1)]
        connection[i] = connection[i] + Form.basis(N, (mu,), _polynomial(terms))
    try:
        geometry = GeometryState(records.signature, vielbein, tuple(connection), tuple(records.samples))
    except SingularFrameError as e:
        message = f"vielbein is singular at sample point {_point_text(e.point)}"
        raise StateFormatError(path, _sample_line(records, e.point), "sample", message) from e
    if not records.is_field_state:
        return geometry
    psi = tuple(_polynomial(records.spinor.get(alpha, {})) for alpha in range(1, 5))
    return FieldState(geometry, psi, records.mass or 0)


def load_state(path: str | Path) -> GeometryState | FieldState:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise StateFormatError(path, 0, "file", f"cannot read: {e.strerror or e}") from e
    state = build_state(parse_records(text, path), path)
    logger.info("Loaded %s from %s", type(state).__name__, path)
    return state


# ── Serialization ────────────────────────────────────────────────────────

def _rational_text(value) -> str:
    value = sympy.Rational(value)
    return f"{value.p} {value.q}"


def _point_text(point) -> str:
    return " ".join(str(sympy.Rational(r)) for r in point)


def _poly_terms(form: Form, mu: int) -> list[tuple[Monomial, object]]:
    poly = form.component((mu,))
    return sorted((mono, coeff) for mono, coeff in poly.terms() if coeff != 0)


def serialize_state(state: GeometryState | FieldState) -> str:
    geometry = state.geometry if isinstance(state, FieldState) else state
    lines = [f"signature {geometry.signature.p} {geometry.signature.q}"]
    if isinstance(state, FieldState):
        lines.append(f"mass {_rational_text(state.mass)}")
    lines += [f"sample {_point_text(p)}" for p in geometry.sample_points]
    for a, form in enumerate(geometry.vielbein, start=1):
        for mu in range(1, N + 1):
            for mono, coeff in _poly_terms(form, mu):
                lines.append(f"e {a} {mu} {' '.join(map(str, mono))} {_rational_text(coeff)}")
    for i, form in enumerate(geometry.connection):
        a, b = ROTATION_PAIRS[i]
        for mu in range(1, N + 1):
            for mono, coeff in _poly_terms(form, mu):
                lines.append(f"omega {a + 1} {b + 1} {mu} {' '.join(map(str, mono))} {_rational_text(coeff)}")
    if isinstance(state, FieldState):
        for alpha, poly in enumerate(state.psi, start=1):
            for mono, coeff in sorted(poly.terms()):
                if coeff == 0:
                    continue
                real, imag = sympy.re(coeff), sympy.im(coeff)
                lines.append(
                    f"psi {alpha} {' '.join(map(str, mono))} {_rational_text(real)} {_rational_text(imag)}"
                )
    return "\n".join(lines) + "\n"


def dump_state(state: GeometryState | FieldState, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_state(state))
    logger.info("Wrote normalized state to %s", path)
