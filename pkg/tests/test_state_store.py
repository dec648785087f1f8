import pytest
import sympy

from core.algebra import MetricSignature
from core.errors import StateFormatError
from core.fieldeq import FieldState
from core.geometry import GeometryState
from services.state_store import build_state, dump_state, load_state, parse_records, serialize_state

FLAT_FRAME = "\n".join(f"e {a} {a} 0 0 0 0 1 1" for a in range(1, 5))


def parse(text):
    return build_state(parse_records(text, "mem.state"), "mem.state")


# ── Loading ──

def test_load_geometry_state(states_dir):
    st = load_state(states_dir / "flat.state")
    assert isinstance(st, GeometryState)
    assert st.signature == MetricSignature(4, 0)
    assert st.sample_points[1] == (sympy.Rational(1, 2), -1, 2, sympy.Rational(1, 3))


def test_load_field_state(states_dir):
    fs = load_state(states_dir / "dirac.state")
    assert isinstance(fs, FieldState)
    assert fs.mass == sympy.Rational(1, 2)
    assert fs.psi[1].as_expr() == sympy.I * sympy.Symbol("x1") / 2
    assert fs.psi[3].is_zero


def test_missing_file(tmp_path):
    with pytest.raises(StateFormatError) as info:
        load_state(tmp_path / "absent.state")
    assert info.value.field == "file"


def test_singular_sample_is_reported(states_dir):
    with pytest.raises(StateFormatError) as info:
        load_state(states_dir / "singular.state")
    assert info.value.field == "sample"
    assert info.value.line == 4
    assert "0 2 0 0" in str(info.value)


# ── Malformed input ──

@pytest.mark.parametrize(
    "text, line, field",
    [
        ("signature 4 0\nvelocity 1 2", 2, "velocity"),
        ("signature 4 0\nmass 1 0", 2, "mass"),
        ("signature 4 0\nomega 2 1 1 0 0 0 0 1 1", 2, "B"),
        ("signature 4 0\ne 5 1 0 0 0 0 1 1", 2, "A"),
        ("signature 4 0\ne 1 1 0 -1 0 0 1 1", 2, "K2"),
        ("signature 4 0\nsample 1 x 0 0", 2, "R2"),
        ("# header\n\nsignature 2 2", 3, "signature"),
        ("signature 4 0\nsignature 1 3", 2, "signature"),
        ("signature 4 0\ne 1 1 0 0 0 0 1", 2, "e"),
    ],
)
def test_malformed_records(text, line, field):
    with pytest.raises(StateFormatError) as info:
        parse_records(text, "bad.state")
    assert (info.value.line, info.value.field) == (line, field)
    assert str(info.value).startswith(f"bad.state:{line}: {field}: ")


def test_missing_signature():
    with pytest.raises(StateFormatError) as info:
        parse_records(FLAT_FRAME, "bad.state")
    assert (info.value.line, info.value.field) == (0, "signature")


# ── Serialization ──

def test_duplicate_monomials_add():
    st = parse("signature 4 0\n" + FLAT_FRAME + "\ne 1 2 1 0 0 0 1 2\ne 1 2 1 0 0 0 1 2")
    assert "e 1 2 1 0 0 0 1 1" in serialize_state(st).splitlines()


def test_cancelled_terms_are_dropped():
    st = parse("signature 4 0\n" + FLAT_FRAME + "\nomega 1 2 3 0 0 1 0 2 3\nomega 1 2 3 0 0 1 0 -2 3")
    assert not any(line.startswith("omega") for line in serialize_state(st).splitlines())


def test_flat_serialization_matches_the_file(states_dir):
    source = (states_dir / "flat.state").read_text().splitlines()
    expected = [line for line in source if not line.startswith("#")]
    assert serialize_state(load_state(states_dir / "flat.state")).splitlines() == expected


@pytest.mark.parametrize("name", ["curved.state", "dirac.state"])
def test_serialization_is_a_fixed_point(states_dir, name):
    text = serialize_state(load_state(states_dir / name))
    assert serialize_state(parse(text)) == text


def test_dump_state_writes_normalized_text(states_dir, tmp_path):
    fs = load_state(states_dir / "dirac.state")
    target = tmp_path / "out" / "dirac.state"
    dump_state(fs, target)
    assert target.read_text() == serialize_state(fs)
    assert "mass 1 2" in target.read_text()


def test_singular_sample_line_follows_the_record(tmp_path):
    path = tmp_path / "shifted.state"
    path.write_text(
        "signature 4 0\n"
        "e 1 1 1 0 0 0 1 1\n"
        "e 2 2 0 0 0 0 1 1\n"
        "\n"
        "sample 1 1 1 1\n"
        "e 3 3 0 0 0 0 1 1\n"
        "e 4 4 0 0 0 0 1 1\n"
        "sample 0 1 1 1\n"
    )
    with pytest.raises(StateFormatError) as info:
        load_state(path)
    assert info.value.line == 8
    assert str(info.value).startswith(f"{path}:8: sample:")
