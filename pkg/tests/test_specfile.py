import json
from fractions import Fraction as F

import pytest

import specpair as sp
from specpair.specfile import BUILTIN_DOCUMENTS, document_from, parse_document


def test_builtin_names():
    assert set(sp.builtin_names()) == {"scale4", "scale4x2", "middlethird"}


def test_scale4_builtin_fields(scale4):
    system = scale4.system
    assert system.name == "scale4"
    assert system.K.basis == ((F(1),),)
    assert system.A.basis == ((F(1, 2),),)
    assert system.Gamma.basis == ((F(1, 4),),)
    assert system.digits == ((F(0),), (F(1, 2),))
    assert system.freq_digits == ((F(0),), (F(1),))
    assert scale4.omega.measure == F(1, 2)
    assert scale4.d_prime.measure == F(1, 4)
    assert scale4.report.ok


def test_scale4x2_builtin(scale4x2):
    assert scale4x2.report.ok
    assert scale4x2.system.E == ((F(4), F(0)), (F(0), F(4)))


def test_middlethird_requires_lenient_load():
    with pytest.raises(sp.ValidationFailed) as excinfo:
        sp.parse_spec("middlethird")
    assert not excinfo.value.report.ok
    loaded = sp.parse_spec("middlethird", require_valid=False)
    assert not loaded.report.ok


def test_parse_document_duplicate_coset_fails_validation():
    document = dict(BUILTIN_DOCUMENTS["scale4"])
    document["digits_B"] = [["0"], ["1"]]  # 1 collides with 0 mod K
    with pytest.raises(sp.ValidationFailed):
        sp.parse_spec(document)
    loaded = sp.parse_spec(document, require_valid=False)
    assert not loaded.report.check("digit_section").passed


def test_parse_errors_carry_field_context():
    document = dict(BUILTIN_DOCUMENTS["scale4"])
    document["K_basis"] = [["1/0"]]
    with pytest.raises(sp.ParseError, match="K_basis"):
        sp.parse_spec(document)

    document = dict(BUILTIN_DOCUMENTS["scale4"])
    document["digits_L"] = [["0"], [0.5]]  # floats are not exact
    with pytest.raises(sp.ParseError, match="digits_L"):
        sp.parse_spec(document)

    document = dict(BUILTIN_DOCUMENTS["scale4"])
    document["Gamma_basis"] = [["1/4"], ["1/4"]]  # wrong shape
    with pytest.raises(sp.ParseError, match="Gamma_basis"):
        sp.parse_spec(document)

    document = dict(BUILTIN_DOCUMENTS["scale4"])
    del document["A_basis"]
    with pytest.raises(sp.ParseError, match="A_basis"):
        sp.parse_spec(document)

    document = dict(BUILTIN_DOCUMENTS["scale4"])
    document["dimension"] = 0
    with pytest.raises(sp.ParseError, match="dimension"):
        sp.parse_spec(document)


def test_parse_bad_boxes():
    document = dict(BUILTIN_DOCUMENTS["scale4"])
    document["omega"] = [[["0"], ["0"]]]  # empty box
    with pytest.raises(sp.ParseError, match="omega"):
        sp.parse_spec(document)


def test_unknown_source():
    with pytest.raises(sp.ParseError):
        sp.parse_spec("no-such-system")


def test_file_round_trip(tmp_path, scale4):
    path = tmp_path / "spec.json"
    path.write_text(sp.dumps_spec(scale4.system, scale4.omega, scale4.d_prime))
    loaded = sp.parse_spec(path)
    assert loaded.system == scale4.system
    assert loaded.omega == scale4.omega
    assert loaded.d_prime == scale4.d_prime


def test_document_round_trip_preserves_rationals():
    system = sp.SimpleFactor(
        K=sp.Lattice([["3/7"]]), A=sp.Lattice([["3/14"]]),
        Gamma=sp.Lattice([["3/28"]]),
        digits=[(0,), ("3/14",)], freq_digits=[(0,), ("7/3",)],
        name="scaled",
    )
    document = document_from(system)
    again = parse_document(json.loads(json.dumps(document)))
    assert again.system == system


def test_malformed_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(sp.ParseError, match="invalid JSON"):
        sp.parse_spec(path)
    array = tmp_path / "array.json"
    array.write_text("[1, 2]")
    with pytest.raises(sp.ParseError, match="JSON object"):
        sp.parse_spec(array)
