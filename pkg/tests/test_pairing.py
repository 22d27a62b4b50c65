import json
from fractions import Fraction

import pytest

from knotconf.arnold import Coefficients, Monomial
from knotconf.coproduct import ColoredGrading
from knotconf.errors import (
    DomainError,
    MissingPairingError,
    ParseError,
    UnsupportedArgumentError,
)
from knotconf.expression import parse_element
from knotconf.pairing import (
    ClassLabel,
    eval_bracket,
    eval_connect_sum,
    load_pairing_table,
)


A1 = ClassLabel("a1")
A2 = ClassLabel("a2")


def _m(*pairs) -> Monomial:
    return Monomial.from_pairs(pairs)


def _table(records, **kwargs):
    return load_pairing_table(json.dumps(records, indent=2), **kwargs)


def test_connect_sum_example(example_records):
    table = _table(example_records)
    result = eval_connect_sum(
        _m((1, 2), (3, 4)), ColoredGrading(4, 0), A1, A2, table
    )
    # t(1,a1) t(m,a2) + t(w12,a1) t(w12,a2) + t(m,a1) t(1,a2)
    assert result.value == 2 * 3 + 5 * 7 + 11 * 13
    assert [term.product for term in result.terms] == [6, 35, 143]
    assert result.value == sum(term.product for term in result.terms)
    assert result.warnings == ()
    assert result.as_dict()["value"] == "184"


def test_swapping_classes_reverses_splits(example_records):
    table = _table(example_records)
    beta = _m((1, 2), (3, 4))
    grading = ColoredGrading(4, 0)
    forward = eval_connect_sum(beta, grading, A1, A2, table)
    backward = eval_connect_sum(beta, grading, A2, A1, table)
    assert set(backward.terms) == set(forward.swapped().terms)
    assert backward.value == forward.value


def test_straddling_class():
    records = [
        {"q": 3, "t": 0, "monomial": "w(1,3)", "class": "a1", "value": "1/2"},
        {"q": 3, "t": 0, "monomial": "w(1,3)", "class": "a2", "value": 3},
        {"q": 0, "t": 0, "monomial": "1", "class": "a1", "value": 1},
        {"q": 0, "t": 0, "monomial": "1", "class": "a2", "value": 1},
    ]
    result = eval_connect_sum(
        _m((1, 3)), ColoredGrading(3, 0), A1, A2, _table(records)
    )
    assert result.value == Fraction(7, 2)
    assert result.as_dict()["value"] == "7/2"


def test_unit_normalization():
    empty = load_pairing_table("")
    normalized = load_pairing_table("", unit_normalization=True)
    grading = ColoredGrading(0, 0)
    assert eval_connect_sum(_m(), grading, A1, A2, normalized).value == 1

    lenient = eval_connect_sum(_m(), grading, A1, A2, empty)
    assert lenient.value == 0
    assert len(lenient.warnings) == 2


def test_unit_law(example_records):
    unit = ClassLabel("e")
    records = example_records + [
        {"q": 0, "t": 0, "monomial": "1", "class": "e", "value": 1},
    ]
    table = _table(records)
    result = eval_connect_sum(
        _m((1, 2), (3, 4)), ColoredGrading(4, 0), A1, unit, table
    )
    assert result.value == 11


def test_strict_mode_names_missing_key(example_records):
    table = _table(example_records[:-1])
    with pytest.raises(MissingPairingError, match=r"w\(1,2\)\*w\(3,4\)"):
        eval_connect_sum(
            _m((1, 2), (3, 4)), ColoredGrading(4, 0), A1, A2, table,
            strict=True,
        )


def test_bilinearity(ring, example_records):
    records = example_records + [
        {"q": 4, "t": 0, "monomial": "w(1,3)", "class": "a1", "value": 4},
        {"q": 4, "t": 0, "monomial": "w(1,3)", "class": "a2", "value": -1},
    ]
    table = _table(records)
    grading = ColoredGrading(4, 0)
    params = table.params(grading)
    total = eval_connect_sum(
        parse_element("w(1,2)*w(3,4) - 2*w(1,3)", params),
        grading, A1, A2, table,
    )
    first = eval_connect_sum(_m((1, 2), (3, 4)), grading, A1, A2, table)
    second = eval_connect_sum(_m((1, 3)), grading, A1, A2, table)
    assert total.value == first.value - 2 * second.value


def test_sign_absorbed_into_value():
    table = _table(
        [{"q": 2, "t": 0, "monomial": "w(2,1)", "class": "a", "value": 5}]
    )
    assert table.entries == {(ColoredGrading(2, 0), _m((1, 2)), "a"): -5}


def test_empty_document():
    assert len(load_pairing_table("  \n")) == 0


def test_rational_values_mod_p():
    table = _table(
        [{"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", "value": "1/2"}],
        coefficients=Coefficients.mod(5),
    )
    assert list(table.entries.values()) == [3]


@pytest.mark.parametrize(
    "document, line",
    [
        ('[\n  {"q": 2,\n', 3),
        ('{"q": 2}', 1),
        (
            '[\n'
            '  {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", '
            '"value": 1},\n'
            '  {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", '
            '"value": 1},\n'
            '  {"q": 2, "t": 0, "monomial": "w(1,9)", "class": "a", '
            '"value": 1}\n'
            ']',
            4,
        ),
        (
            '[\n'
            '  {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", '
            '"value": 1},\n'
            '  {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", '
            '"value": 2}\n'
            ']',
            3,
        ),
        (
            '[{"q": 3, "t": 0, "monomial": "w(1,3)*w(2,3)", '
            '"class": "a", "value": 1}]',
            1,
        ),
        ('[\n\n  {"q": 1, "t": 0, "monomial": "1", "class": "a"}]', 3),
        ('[{"q": 1, "t": 0, "monomial": "1", "class": "a", "value": 1.5}]', 1),
    ],
)
def test_load_errors_name_the_line(document, line):
    with pytest.raises(ParseError) as info:
        load_pairing_table(document)
    assert info.value.line == line


def test_duplicates_with_equal_values_are_accepted():
    record = {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", "value": 1}
    assert len(_table([record, dict(record, monomial="-w(2,1)")])) == 1


def test_degree_convention():
    record = {
        "q": 2, "t": 0, "monomial": "w(1,2)", "class": "a", "value": 1,
        "degree": 2,
    }
    assert len(_table([record], degree_shift=0)) == 1
    with pytest.raises(ParseError):
        _table([record], degree_shift=1)
    with pytest.raises(ParseError):
        _table([record, dict(record, monomial="1", q=0, degree=0)])


def test_strict_degree(example_records):
    table = _table(example_records, degree_shift=0)
    beta = _m((1, 2), (3, 4))
    grading = ColoredGrading(4, 0)
    assert eval_connect_sum(
        beta, grading, ClassLabel("a1", 2), ClassLabel("a2", 2), table,
        strict_degree=True,
    ).value == 184
    with pytest.raises(DomainError):
        eval_connect_sum(
            beta, grading, ClassLabel("a1", 1), ClassLabel("a2", 2), table,
            strict_degree=True,
        )
    with pytest.raises(DomainError):
        eval_connect_sum(beta, grading, A1, A2, table, strict_degree=True)


def test_class_labels():
    assert ClassLabel.from_str("a1:2") == ClassLabel("a1", 2)
    assert ClassLabel.from_str("a1") == ClassLabel("a1")
    with pytest.raises(ParseError):
        ClassLabel.from_str("a1:x")
    with pytest.raises(DomainError):
        ClassLabel("a", -1)


@pytest.mark.parametrize("Q, T", [(0, 0), (1, 0), (2, 1), (3, 1), (4, 0)])
def test_bracket_vanishes(Q, T):
    result = eval_bracket(_m(), ColoredGrading(Q, T), A1, A2, 3)
    assert result.value == 0
    assert result.certificate.is_valid()
    assert result.as_dict()["certificate"]["circle_degree"] == 0


def test_bracket_parity_table():
    result = eval_bracket(_m((1, 2)), ColoredGrading(3, 0), A1, A2, 3)
    rows = {row.points: row for row in result.certificate.rows}
    assert sorted(rows) == [0, 1, 2, 3]
    assert set(rows[3].dims) == {5, 7, 9}
    assert rows[3].parity == 1
    assert result.certificate.beta_degree == 7


def test_bracket_needs_odd_n():
    with pytest.raises(UnsupportedArgumentError):
        eval_bracket(_m(), ColoredGrading(2, 0), A1, A2, 4)
