"""Evaluating configuration-space classes on connect sums of knots.

The engine never sees knot-space homology itself: a PairingTable holds the
user's values of the pairing between the pulled-back class of a basis
monomial and a homology class label. The product formula then evaluates a
class on the connect sum of two labels from the coproduct of the class.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from loguru import logger

from knotconf.arnold import (
    Coefficients,
    Element,
    Monomial,
    RingParams,
    quotient_cohomology_dims,
)
from knotconf.coproduct import ColoredGrading, Split, coproduct_element
from knotconf.errors import (
    DomainError,
    MissingPairingError,
    ParseError,
    UnsupportedArgumentError,
)
from knotconf.expression import parse_monomial


Scalar = Union[Fraction, int]
PairingKey = tuple[ColoredGrading, Monomial, str]


@dataclass(frozen=True)
class ClassLabel:
    """Opaque label of a homology class of the knot space."""

    name: str
    degree: Optional[int] = None
    """Homological degree, when declared."""

    def __post_init__(self) -> None:
        if not self.name:
            raise DomainError("class label needs a name")
        if self.degree is not None and self.degree < 0:
            raise DomainError(
                "class {} has negative degree {}".format(self.name, self.degree)
            )

    @classmethod
    def from_str(cls, string: str) -> ClassLabel:
        """Parse `name` or `name:degree`."""
        name, _, degree = string.partition(":")
        if degree and not degree.isdigit():
            raise ParseError(
                "'{}' is not a class label, use name or name:degree".format(
                    string
                )
            )
        return cls(name.strip(), int(degree) if degree else None)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PairingTable:
    n: int
    coefficients: Coefficients
    entries: dict[PairingKey, Scalar] = field(default_factory=dict)
    class_degrees: dict[str, int] = field(default_factory=dict)
    """Homological degrees declared for class labels."""

    degree_shift: Optional[int] = None
    """Declared Thom/suspension shift between pairing degrees."""

    unit_normalization: bool = False
    """Read absent pairings of the unit on C_{0,0} as 1."""

    def params(self, grading: ColoredGrading) -> RingParams:
        return RingParams(self.n, grading.total, self.coefficients)

    def class_degree(self, label: ClassLabel) -> Optional[int]:
        if label.degree is not None:
            return label.degree
        return self.class_degrees.get(label.name)

    def lookup(
        self,
        grading: ColoredGrading,
        monomial: Monomial,
        label: ClassLabel,
        strict: bool = False,
        warnings: Optional[list[str]] = None,
    ) -> Scalar:
        """Value of a pairing, applying the missing-entry policy.

        Raises:
            MissingPairingError: In strict mode, if the entry is absent.
        """
        key = (grading, monomial, label.name)
        if key in self.entries:
            return self.entries[key]

        if (
            self.unit_normalization
            and grading == ColoredGrading(0, 0)
            and not monomial.generators
        ):
            return self.coefficients.scalar(Fraction(1))

        description = "no pairing for {} on C_{} with class {}".format(
            monomial, grading, label.name
        )
        if strict:
            raise MissingPairingError(description)

        logger.warning(f"{description}, reading it as 0.")
        if warnings is not None:
            warnings.append(description)
        return self.coefficients.scalar(Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)


WHITESPACE_RE = re.compile(r"[ \t\n\r]*")


def _records_with_lines(document: str) -> list[tuple[int, object]]:
    try:
        parsed = json.loads(document)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, error.lineno) from error

    if not isinstance(parsed, list):
        raise ParseError("pairing table must be a JSON list", 1)

    # Walk the list again to find the line each record starts on.
    decoder = json.JSONDecoder()
    pos = WHITESPACE_RE.match(document, 0).end() + 1
    located = []
    for _ in parsed:
        pos = WHITESPACE_RE.match(document, pos).end()
        if document[pos] == ",":
            pos = WHITESPACE_RE.match(document, pos + 1).end()
        record, end = decoder.raw_decode(document, pos)
        located.append((document.count("\n", 0, pos) + 1, record))
        pos = end
    return located


def _field(record: dict, name: str, kind: type, line: int):
    if name not in record:
        raise ParseError("record is missing '{}'".format(name), line)
    value = record[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError("'{}' must be an integer".format(name), line)
    if kind is str and not isinstance(value, str):
        raise ParseError("'{}' must be a string".format(name), line)
    return value


def _value(raw: object, line: int) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ParseError("'value' must be an integer or a 'p/q' string", line)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as error:
        raise ParseError(
            "'{}' is not an exact rational value".format(raw), line
        ) from error


def load_pairing_table(
    document: str,
    n: int = 3,
    coefficients: Optional[Coefficients] = None,
    degree_shift: Optional[int] = None,
    unit_normalization: bool = False,
) -> PairingTable:
    """Load and canonicalize a pairing table document.

    The document is a JSON list of records {"q", "t", "monomial", "class",
    "value"[, "degree"]}. Monomial keys are reduced to basis monomials, the
    sign picked up being absorbed into the value.

    Args:
        document (str): The JSON text; blank text is the empty table.
        n (int): Ambient dimension.
        coefficients (Coefficients, optional): Coefficient ring, integers by
            default.
        degree_shift (int, optional): When declared, an entry with a
            declared class degree and nonzero value must satisfy
            class degree = monomial degree - degree_shift.
        unit_normalization (bool): Read absent unit pairings on C_{0,0} as 1.

    Returns:
        PairingTable: The immutable table.

    Raises:
        ParseError: On malformed JSON or records, keys that are not plus or
            minus a basis monomial, conflicting duplicates or degree
            mismatches, naming the line of the offending record.
    """
    coefficients = coefficients or Coefficients.integers()
    entries: dict[PairingKey, Scalar] = {}
    class_degrees: dict[str, int] = {}

    records = _records_with_lines(document) if document.strip() else []
    for line, record in records:
        if not isinstance(record, dict):
            raise ParseError("record must be a JSON object", line)

        q = _field(record, "q", int, line)
        t = _field(record, "t", int, line)
        text = _field(record, "monomial", str, line)
        name = _field(record, "class", str, line)
        try:
            grading = ColoredGrading(q, t)
            params = RingParams(n, grading.total, coefficients)
            monomial, sign = parse_monomial(text, params)
            value = coefficients.scalar(_value(record.get("value"), line))
        except (ParseError, DomainError) as error:
            if isinstance(error, ParseError) and error.line is not None:
                raise
            raise ParseError(str(error), line) from error
        value = value * sign
        if coefficients.modulus is not None:
            value %= coefficients.modulus

        if "degree" in record:
            degree = _field(record, "degree", int, line)
            known = class_degrees.setdefault(name, degree)
            if known != degree:
                raise ParseError(
                    "class {} declared with degrees {} and {}".format(
                        name, known, degree
                    ),
                    line,
                )

        declared = class_degrees.get(name)
        if degree_shift is not None and declared is not None and value:
            expected = monomial.degree(params) - degree_shift
            if declared != expected:
                raise ParseError(
                    "class {} of degree {} cannot pair with {} "
                    "(expects degree {})".format(
                        name, declared, monomial, expected
                    ),
                    line,
                )

        key = (grading, monomial, name)
        if key in entries and entries[key] != value:
            raise ParseError(
                "conflicting values {} and {} for {} on C_{} with {}".format(
                    entries[key], value, monomial, grading, name
                ),
                line,
            )
        entries[key] = value

    logger.debug(f"Loaded pairing table with {len(entries)} entries.")
    return PairingTable(
        n,
        coefficients,
        entries,
        class_degrees,
        degree_shift,
        unit_normalization,
    )


@dataclass(frozen=True)
class AuditTerm:
    split: Split
    left: Monomial
    right: Monomial
    coefficient: int
    left_value: Scalar
    right_value: Scalar
    product: Scalar

    def as_dict(self) -> dict:
        return {
            "q": self.split.q,
            "t": self.split.t,
            "r": self.split.r,
            "s": self.split.s,
            "left": str(self.left),
            "right": str(self.right),
            "coeff": str(self.coefficient),
            "left_value": str(self.left_value),
            "right_value": str(self.right_value),
            "product": str(self.product),
        }

    def swapped(self) -> AuditTerm:
        """The same term read with the two knot classes exchanged."""
        return AuditTerm(
            self.split.swapped(),
            self.right,
            self.left,
            self.coefficient,
            self.right_value,
            self.left_value,
            self.product,
        )


@dataclass(frozen=True)
class EvalResult:
    value: Scalar
    terms: tuple[AuditTerm, ...] = ()
    warnings: tuple[str, ...] = ()

    def swapped(self) -> EvalResult:
        """Audit with every split reversed and its two factors exchanged.

        When the coproduct of beta is closed under reversing splits, this
        is the audit of the evaluation with a1 and a2 exchanged, up to the
        order of terms.
        """
        return EvalResult(
            self.value,
            tuple(term.swapped() for term in self.terms),
            self.warnings,
        )

    def as_dict(self) -> dict:
        return {
            "value": str(self.value),
            "terms": [term.as_dict() for term in self.terms],
            "warnings": list(self.warnings),
        }


def _as_element(
    beta: Union[Element, Monomial],
    grading: ColoredGrading,
    table: PairingTable,
) -> Element:
    params = table.params(grading)
    if isinstance(beta, Monomial):
        return Element.from_monomial(beta, params)
    if beta.params != params:
        raise DomainError(
            "class lives in {} but the table expects {}".format(
                beta.params, params
            )
        )
    return beta


def eval_connect_sum(
    beta: Union[Element, Monomial],
    grading: ColoredGrading,
    a1: ClassLabel,
    a2: ClassLabel,
    table: PairingTable,
    strict: bool = False,
    strict_degree: bool = False,
) -> EvalResult:
    """Evaluate a class on the connect sum of two homology classes.

    Sums, over the coproduct terms theta x eta of beta, the coefficient
    times table(theta, a1) times table(eta, a2).

    Args:
        beta (Element | Monomial): Dual-basis label, or a linear combination
            of them, on C_{Q,T}.
        grading (ColoredGrading): The colored grading (Q,T).
        a1 (ClassLabel): Class on the first knot.
        a2 (ClassLabel): Class on the second knot.
        table (PairingTable): The pairing values.
        strict (bool): Raise on absent entries instead of reading 0.
        strict_degree (bool): Enforce deg a1 + deg a2 = deg beta - 2 shift,
            with the table's declared shift.

    Returns:
        EvalResult: The value with its per-term audit.

    Raises:
        MissingPairingError: In strict mode, for the first absent entry.
        DomainError: If degree bookkeeping is requested but fails.
    """
    element = _as_element(beta, grading, table)
    if strict_degree:
        _check_degrees(element, a1, a2, table)

    ring = table.coefficients
    warnings: list[str] = []
    audit = []
    total: Scalar = ring.scalar(Fraction(0))
    for term in coproduct_element(element, grading).terms:
        left_value = table.lookup(
            term.split.left, term.left, a1, strict, warnings
        )
        right_value = table.lookup(
            term.split.right, term.right, a2, strict, warnings
        )
        product = term.coefficient * left_value * right_value
        if ring.modulus is not None:
            product %= ring.modulus
        audit.append(AuditTerm(
            term.split,
            term.left,
            term.right,
            term.coefficient,
            left_value,
            right_value,
            product,
        ))
        total += product

    if ring.modulus is not None:
        total %= ring.modulus
    return EvalResult(total, tuple(audit), tuple(warnings))


def _check_degrees(
    element: Element,
    a1: ClassLabel,
    a2: ClassLabel,
    table: PairingTable,
) -> None:
    if table.degree_shift is None:
        raise DomainError("degree checks need a declared degree shift")
    degrees = [table.class_degree(a) for a in (a1, a2)]
    if None in degrees or element.degree is None:
        raise DomainError(
            "degree checks need homogeneous beta and declared class degrees"
        )
    expected = element.degree - 2 * table.degree_shift
    if sum(degrees) != expected:
        raise DomainError(
            "classes of degrees {} and {} cannot pair with a class of "
            "degree {} (shift {})".format(
                degrees[0], degrees[1], element.degree, table.degree_shift
            )
        )


@dataclass(frozen=True)
class ParityRow:
    points: int
    dims: dict[int, int]
    """Nonzero ranks of H^k(C_points / boundary; Q)."""

    parity: int
    """The parity n * points every nonzero degree shares."""

    def is_valid(self) -> bool:
        return all(degree % 2 == self.parity for degree in self.dims)


@dataclass(frozen=True)
class BracketCertificate:
    n: int
    grading: ColoredGrading
    beta_degree: int
    """Degree of beta in H*(C_{Q+T} / boundary)."""

    rows: tuple[ParityRow, ...]

    def is_valid(self) -> bool:
        """Re-check that no circle class of degree one can survive.

        Every tensor factor pair (C_a, C_b) with a + b = Q + T sits in
        parity n(a + b), the parity of beta itself, so the circle factor
        must carry degree zero.
        """
        if not all(row.is_valid() for row in self.rows):
            return False
        parities = {row.points: row.parity for row in self.rows}
        total = self.grading.total
        return all(
            (self.beta_degree - parities[a] - parities[total - a]) % 2 == 0
            for a in range(total + 1)
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "Q": self.grading.q,
            "T": self.grading.t,
            "beta_degree": self.beta_degree,
            "circle_degree": 0,
            "valid": self.is_valid(),
            "parity_table": [
                {
                    "points": row.points,
                    "parity": row.parity,
                    "dims": {str(k): v for k, v in row.dims.items()},
                }
                for row in self.rows
            ],
        }


@dataclass(frozen=True)
class BracketResult:
    value: int
    certificate: BracketCertificate

    def as_dict(self) -> dict:
        return {
            "value": str(self.value),
            "certificate": self.certificate.as_dict(),
        }


def eval_bracket(
    beta: Monomial,
    grading: ColoredGrading,
    a1: ClassLabel,
    a2: ClassLabel,
    n: int = 3,
) -> BracketResult:
    """Pairing of a class with the bracket of two knot-space classes.

    The value is always zero for odd n: the cohomology of every C_k modulo
    its boundary is concentrated in degrees of parity nk, so the circle
    factor of the pulled-back class lies in degree zero.

    Raises:
        UnsupportedArgumentError: If n is even.
    """
    if n % 2 == 0:
        raise UnsupportedArgumentError(
            "the parity argument needs odd n, got n={}".format(n)
        )

    params = RingParams(n, grading.total)
    if not beta.is_admissible:
        raise DomainError("{} is not an admissible monomial".format(beta))
    for g in beta.generators:
        params.check_index(g.j)

    rows = tuple(
        ParityRow(k, quotient_cohomology_dims(params.with_points(k)), n * k % 2)
        for k in range(grading.total + 1)
    )
    certificate = BracketCertificate(
        n,
        grading,
        n * grading.total - beta.degree(params),
        rows,
    )
    logger.debug(
        f"Bracket of {a1} and {a2} against {beta} on C_{grading} is 0."
    )
    return BracketResult(0, certificate)
