import logging

import pytest

from core.bundle import FiberMapClass
from core.errors import SpecParseError
from services.specs import MapSpec, parse_spec_arguments, parse_spec_line, parse_specs


def test_parse_line():
    assert parse_spec_line("K K 4 1") == MapSpec(domain="K", codomain="K", q=4, r=1)


def test_parse_lowercase_line():
    spec = parse_spec_line("  k t 0 -3 ")
    assert (spec.domain, spec.codomain, spec.q, spec.r) == ("K", "T", 0, -3)


def test_parse_json_object():
    spec = parse_spec_line('{"domain": "T", "codomain": "T", "q": 2, "r": 3}')
    assert spec.to_class() == FiberMapClass("T", "T", 2, 3)


def test_wrong_field_count():
    with pytest.raises(SpecParseError) as excinfo:
        parse_spec_line("K K 4", line=7)
    assert excinfo.value.line == 7


def test_non_integer_field():
    with pytest.raises(SpecParseError) as excinfo:
        parse_spec_line("K K x 1")
    assert excinfo.value.field == "q"


def test_unknown_space():
    with pytest.raises(SpecParseError) as excinfo:
        parse_spec_line("X K 0 1")
    assert excinfo.value.field == "domain"


def test_mixed_combo_with_fibre_degree():
    with pytest.raises(SpecParseError):
        parse_spec_line("T K 2 0")


def test_klein_r_is_reduced_with_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="services.specs"):
        spec = parse_spec_line("K K 4 3")
    assert spec.r == 1
    assert "reduced mod 2" in caplog.text


def test_klein_r_of_minus_one_is_reduced_quietly(caplog):
    with caplog.at_level(logging.WARNING, logger="services.specs"):
        spec = parse_spec_line("K K 4 -1")
    assert spec.r == 1
    assert "reduced mod 2" not in caplog.text


def test_parse_document_skips_comments_and_blanks():
    text = "# pair from the table\nK K 4 1\n\nK K 0 0  # section\n"
    assert [str(spec) for spec in parse_specs(text)] == ["K K 4 1", "K K 0 0"]


def test_document_errors_carry_line_numbers():
    with pytest.raises(SpecParseError) as excinfo:
        parse_specs("T T 1 0\n# comment\nK K x 0\n")
    assert excinfo.value.line == 3
    assert "line 3" in str(excinfo.value)


def test_parse_json_array():
    specs = parse_specs('[{"domain": "K", "codomain": "K", "q": 4, "r": 1}, {"domain": "K", "codomain": "K", "q": 0, "r": 0}]')
    assert [spec.q for spec in specs] == [4, 0]


def test_invalid_json_array():
    with pytest.raises(SpecParseError):
        parse_specs('[{"domain": "K", "codomain": "K", "q": 4}]')


def test_parse_arguments():
    specs = parse_spec_arguments(["T T 2 3", '{"domain": "t", "codomain": "t", "q": 0, "r": 0}'])
    assert [str(spec) for spec in specs] == ["T T 2 3", "T T 0 0"]


def test_from_class_roundtrip():
    map_class = FiberMapClass("T", "K", 0, 1)
    assert MapSpec.from_class(map_class).to_class() == map_class
