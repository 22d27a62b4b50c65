"""Text format for ring elements: `w(1,2)*w(3,4) - 2*w(1,3)`."""
import re
from typing import Iterator

from knotconf.arnold import (
    Element,
    FormalSum,
    Monomial,
    RingParams,
    Word,
    reduce,
)
from knotconf.errors import DomainError, ParseError


TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<gen>w\(\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\))"
    r"|(?P<op>[-+*]))"
)


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        match = TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(
                "unexpected input at column {}: '{}'".format(
                    pos + 1, text[pos:pos + 10]
                )
            )
        if match.group("int") is not None:
            yield "int", match.group("int"), match.start("int")
        elif match.group("gen") is not None:
            yield "gen", "{},{}".format(
                match.group("i"), match.group("j")
            ), match.start("gen")
        else:
            yield "op", match.group("op"), match.start("op")
        pos = match.end()


def parse_expression(text: str, params: RingParams) -> FormalSum:
    """Parse an expression into an unreduced formal sum.

    Args:
        text (str): The expression, e.g. `w(1,3)*w(2,3) - w(1,2)`.
        params (RingParams): The ring the expression lives in.

    Returns:
        FormalSum: The terms in the order written.

    Raises:
        ParseError: If the text is not a well-formed expression.
        DomainError: If a generator index is outside 1..q or repeated.
    """
    tokens = list(_tokens(text))
    if not tokens:
        raise ParseError("empty expression")

    terms: list[tuple[Word, int]] = []
    sign = 1
    word: list[tuple[int, int]] = []
    coefficient = 1
    started = False
    expect_factor = True

    for kind, value, column in tokens:
        if expect_factor:
            if kind == "op" and value in "+-" and not started:
                sign = -sign if value == "-" else sign
                continue
            if kind == "int":
                coefficient *= int(value)
            elif kind == "gen":
                i, j = (int(x) for x in value.split(","))
                if i == j:
                    raise DomainError(
                        "w({},{}) has equal indices".format(i, j)
                    )
                params.check_index(i)
                params.check_index(j)
                word.append((i, j))
            else:
                raise ParseError(
                    "expected a factor at column {}".format(column + 1)
                )
            started = True
            expect_factor = False
            continue

        if kind != "op":
            raise ParseError(
                "expected an operator at column {}".format(column + 1)
            )
        if value == "*":
            expect_factor = True
            continue

        terms.append((tuple(word), sign * coefficient))
        sign = -1 if value == "-" else 1
        word = []
        coefficient = 1
        started = False
        expect_factor = True

    if expect_factor:
        raise ParseError("expression ends with an operator")
    terms.append((tuple(word), sign * coefficient))
    return FormalSum(params, tuple(terms))


def parse_element(text: str, params: RingParams) -> Element:
    return reduce(parse_expression(text, params))


def parse_monomial(text: str, params: RingParams) -> tuple[Monomial, int]:
    """Parse a single product and bring it to a signed basis monomial.

    Returns:
        tuple[Monomial, int]: The basis monomial and the sign absorbed while
            canonicalizing it.

    Raises:
        ParseError: If the product does not reduce to plus or minus a single
            basis monomial.
    """
    formal = parse_expression(text, params)
    if len(formal.terms) != 1:
        raise ParseError("'{}' is not a single product".format(text))

    word, coefficient = formal.terms[0]
    if coefficient not in (1, -1):
        raise ParseError("'{}' carries a coefficient".format(text))

    element = reduce(formal)
    if len(element.terms) != 1:
        raise ParseError(
            "'{}' does not reduce to a single basis monomial".format(text)
        )
    monomial, value = element.terms[0]
    return monomial, value
