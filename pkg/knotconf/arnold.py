"""Graded cohomology ring of the configuration space C_q(R^n).

The ring is presented by generators w(i,j) of degree n-1 subject to

    w(j,i) = (-1)^n w(i,j),    w(i,j)^2 = 0,
    w(i,j) w(j,k) + w(j,k) w(k,i) + w(k,i) w(i,j) = 0.

Elements are kept in the admissible basis: products of generators whose
larger indices are distinct and strictly increasing.
"""
from __future__ import annotations

import functools
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

import sympy
from loguru import logger

from knotconf.errors import DomainError


Word = tuple[tuple[int, int], ...]
"""A raw product of generators, given as index pairs in multiplication order."""


class CoefficientKind(Enum):
    INTEGERS = "integers"
    INTEGERS_MOD_P = "mod"

    @classmethod
    def from_str(cls, string: str) -> CoefficientKind:
        key = string.strip().lower()
        for val in CoefficientKind:
            if key == val.value:
                return val

        raise ValueError(
            "'{}' is not a valid coefficient kind, "
            "must be integers or mod".format(string)
        )


@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: the integers or the integers modulo a prime."""

    kind: CoefficientKind = CoefficientKind.INTEGERS
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is CoefficientKind.INTEGERS and self.modulus is not None:
            raise DomainError("integer coefficients take no modulus")
        if self.kind is CoefficientKind.INTEGERS_MOD_P:
            if self.modulus is None or not sympy.isprime(self.modulus):
                raise DomainError(
                    "coefficient modulus must be prime, got {}".format(
                        self.modulus
                    )
                )

    @classmethod
    def integers(cls) -> Coefficients:
        return cls()

    @classmethod
    def mod(cls, p: int) -> Coefficients:
        return cls(CoefficientKind.INTEGERS_MOD_P, p)

    @classmethod
    def from_str(cls, string: str) -> Coefficients:
        """Parse `integers` or `mod <p>`.

        Args:
            string (str): The textual coefficient ring.

        Returns:
            Coefficients: The parsed coefficient ring.
        """
        parts = string.split()
        if not parts:
            raise DomainError("empty coefficient ring")

        try:
            kind = CoefficientKind.from_str(parts[0])
        except ValueError as error:
            raise DomainError(str(error)) from error
        if kind is CoefficientKind.INTEGERS:
            if len(parts) != 1:
                raise DomainError("integer coefficients take no modulus")
            return cls.integers()

        if len(parts) != 2 or not parts[1].isdigit():
            raise DomainError(
                "'{}' must be written as 'mod <p>'".format(string)
            )
        return cls.mod(int(parts[1]))

    def normalize(self, value: int) -> int:
        if self.modulus is None:
            return value
        return value % self.modulus

    def scalar(self, value: Fraction) -> Union[Fraction, int]:
        """Map a rational number into the ring's scalar domain.

        Integer coefficient rings evaluate rational pairings exactly, so the
        value stays a fraction. Modulo p the denominator is inverted.

        Args:
            value (Fraction): The rational scalar.

        Returns:
            Fraction | int: The scalar as used by this ring.
        """
        if self.modulus is None:
            return value
        if value.denominator % self.modulus == 0:
            raise DomainError(
                "{} has no image modulo {}".format(value, self.modulus)
            )
        inverse = pow(value.denominator, -1, self.modulus)
        return value.numerator * inverse % self.modulus

    def __str__(self) -> str:
        if self.modulus is None:
            return self.kind.value
        return "{} {}".format(self.kind.value, self.modulus)


@dataclass(frozen=True)
class RingParams:
    n: int
    """Ambient dimension of R^n."""

    q: int
    """Number of labeled points."""

    coefficients: Coefficients = field(default_factory=Coefficients)

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainError(
                "ambient dimension must be at least 3, got {}".format(self.n)
            )
        if self.q < 0:
            raise DomainError(
                "number of points must be nonnegative, got {}".format(self.q)
            )

    @property
    def generator_degree(self) -> int:
        return self.n - 1

    @property
    def reversal_sign(self) -> int:
        """Sign in w(j,i) = (-1)^n w(i,j)."""
        return -1 if self.n % 2 else 1

    @property
    def swap_sign(self) -> int:
        """Koszul sign for exchanging two adjacent generators."""
        return -1 if self.generator_degree % 2 else 1

    def with_points(self, q: int) -> RingParams:
        return RingParams(self.n, q, self.coefficients)

    def check_index(self, index: int) -> None:
        if not 1 <= index <= self.q:
            raise DomainError(
                "point index {} outside 1..{}".format(index, self.q)
            )


@dataclass(frozen=True, order=True)
class Generator:
    i: int
    j: int

    def __str__(self) -> str:
        return "w({},{})".format(self.i, self.j)


def canonicalize_generator(
    i: int,
    j: int,
    params: RingParams,
) -> tuple[Generator, int]:
    """Order the indices of a generator, returning the sign picked up.

    Args:
        i (int): First point index.
        j (int): Second point index.
        params (RingParams): The ring the generator lives in.

    Returns:
        tuple[Generator, int]: The generator with i < j and the sign
            (-1)^n if the indices were reversed, +1 otherwise.

    Raises:
        DomainError: If i = j or an index lies outside 1..q.
    """
    params.check_index(i)
    params.check_index(j)
    if i == j:
        raise DomainError("w({},{}) has equal indices".format(i, j))
    if i < j:
        return Generator(i, j), 1
    return Generator(j, i), params.reversal_sign


@dataclass(frozen=True)
class Monomial:
    """A product of generators in admissible order."""

    generators: tuple[Generator, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Monomial:
        return cls(tuple(Generator(i, j) for i, j in pairs))

    @property
    def pairs(self) -> Word:
        return tuple((g.i, g.j) for g in self.generators)

    @property
    def length(self) -> int:
        return len(self.generators)

    def degree(self, params: RingParams) -> int:
        return self.length * params.generator_degree

    @property
    def is_admissible(self) -> bool:
        larger = [g.j for g in self.generators]
        return (
            all(g.i < g.j for g in self.generators)
            and all(a < b for a, b in zip(larger, larger[1:]))
        )

    def sort_key(self) -> tuple:
        # Larger indices ascending, ties broken by descending smaller index.
        return (
            self.length,
            tuple(g.j for g in self.generators),
            tuple(-g.i for g in self.generators),
        )

    def __str__(self) -> str:
        if not self.generators:
            return "1"
        return "*".join(str(g) for g in self.generators)


@functools.lru_cache(maxsize=1 << 16)
def _normal_form(word: Word, n: int) -> tuple[tuple[Word, int], ...]:
    """Rewrite a raw product to a signed sum of admissible words over Z."""
    reversal = -1 if n % 2 else 1
    swap = -1 if (n - 1) % 2 else 1

    sign = 1
    ordered = []
    for i, j in word:
        if i > j:
            i, j = j, i
            sign *= reversal
        ordered.append((i, j))

    # Graded commutativity brings repeats together, and w(i,j)^2 = 0.
    if len(set(ordered)) < len(ordered):
        return ()

    def key(g: tuple[int, int]) -> tuple[int, int]:
        return (g[1], g[0])

    if swap == -1:
        inversions = sum(
            1
            for a, b in itertools.combinations(ordered, 2)
            if key(a) > key(b)
        )
        if inversions % 2:
            sign = -sign
    ordered.sort(key=key)

    for pos in range(len(ordered) - 1):
        (a, c), (b, d) = ordered[pos], ordered[pos + 1]
        if c != d:
            continue

        # a < b < c: w(a,c) w(b,c) = w(a,b) w(b,c) + (-1)^n w(a,c) w(a,b)
        head = tuple(ordered[:pos])
        tail = tuple(ordered[pos + 2:])
        result: dict[Word, int] = defaultdict(int)
        rewrites = (
            (1, ((a, b), (b, c))),
            (reversal, ((a, c), (a, b))),
        )
        for coefficient, pair in rewrites:
            for reduced, value in _normal_form(head + pair + tail, n):
                result[reduced] += sign * coefficient * value
        return tuple((w, v) for w, v in result.items() if v)

    return ((tuple(ordered), sign),)


@dataclass(frozen=True)
class FormalSum:
    """A ring-linear combination of raw generator products.

    Unlike an Element, the words need not be admissible; reduce() turns a
    FormalSum into an Element.
    """

    params: RingParams
    terms: tuple[tuple[Word, int], ...] = ()

    def check_indices(self) -> None:
        for word, _ in self.terms:
            for i, j in word:
                canonicalize_generator(i, j, self.params)


@dataclass(frozen=True)
class Element:
    """An element of H*(C_q(R^n)) in normal form.

    Terms are admissible monomials with nonzero coefficients, stored in the
    deterministic monomial order, so equal elements compare equal.
    """

    params: RingParams
    terms: tuple[tuple[Monomial, int], ...] = ()

    @classmethod
    def from_mapping(
        cls,
        params: RingParams,
        mapping: Mapping[Monomial, int],
    ) -> Element:
        ring = params.coefficients
        terms = []
        for monomial, value in mapping.items():
            value = ring.normalize(value)
            if value:
                if not monomial.is_admissible:
                    raise DomainError(
                        "{} is not an admissible monomial".format(monomial)
                    )
                terms.append((monomial, value))
        terms.sort(key=lambda term: term[0].sort_key())
        return cls(params, tuple(terms))

    @classmethod
    def one(cls, params: RingParams) -> Element:
        return cls.from_mapping(params, {Monomial(): 1})

    @classmethod
    def from_monomial(
        cls,
        monomial: Monomial,
        params: RingParams,
        coefficient: int = 1,
    ) -> Element:
        return cls.from_mapping(params, {monomial: coefficient})

    @classmethod
    def generator(cls, i: int, j: int, params: RingParams) -> Element:
        gen, sign = canonicalize_generator(i, j, params)
        return cls.from_mapping(params, {Monomial((gen,)): sign})

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, monomial: Monomial) -> int:
        return self.as_dict().get(monomial, 0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms]

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element, None when mixed or zero."""
        degrees = {m.degree(self.params) for m in self.monomials}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def homogeneous_parts(self) -> dict[int, Element]:
        parts: dict[int, dict[Monomial, int]] = defaultdict(dict)
        for monomial, value in self.terms:
            parts[monomial.degree(self.params)][monomial] = value
        return {
            degree: Element.from_mapping(self.params, part)
            for degree, part in sorted(parts.items())
        }

    def to_formal_sum(self) -> FormalSum:
        return FormalSum(
            self.params,
            tuple((m.pairs, v) for m, v in self.terms),
        )

    def _check_compatible(self, other: Element) -> None:
        if self.params != other.params:
            raise DomainError(
                "mismatched ring parameters {} and {}".format(
                    self.params, other.params
                )
            )

    def __add__(self, other: Element) -> Element:
        self._check_compatible(other)
        total = Counter(self.as_dict())
        for monomial, value in other.terms:
            total[monomial] += value
        return Element.from_mapping(self.params, total)

    def __neg__(self) -> Element:
        return self.scale(-1)

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, factor: int) -> Element:
        return Element.from_mapping(
            self.params,
            {m: factor * v for m, v in self.terms},
        )

    def __mul__(self, other: Union[Element, int]) -> Element:
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other: int) -> Element:
        return self.scale(other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        chunks = []
        for index, (monomial, value) in enumerate(self.terms):
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if not monomial.generators:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(monomial)
            else:
                body = "{}*{}".format(magnitude, monomial)

            if index == 0:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append("{} {}".format(sign, body))
        return " ".join(chunks)


def _reduce_terms(
    params: RingParams,
    terms: Iterable[tuple[Word, int]],
) -> Element:
    total: dict[Monomial, int] = defaultdict(int)
    for word, value in terms:
        if not value:
            continue
        for reduced, sign in _normal_form(word, params.n):
            total[Monomial.from_pairs(reduced)] += sign * value
    return Element.from_mapping(params, total)


def reduce(expression: Union[FormalSum, Element]) -> Element:
    """Rewrite a combination of generator products into normal form.

    Squares are dropped, pairs of generators sharing a larger index are
    rewritten with the three-term relation, and generators are sorted by
    larger index with Koszul signs, until every monomial is admissible.

    Args:
        expression (FormalSum | Element): The combination to reduce.

    Returns:
        Element: The unique normal form.

    Raises:
        DomainError: If a generator index lies outside 1..q.
    """
    if isinstance(expression, Element):
        expression = expression.to_formal_sum()

    expression.check_indices()
    return _reduce_terms(expression.params, expression.terms)


def multiply(a: Element, b: Element) -> Element:
    """Cup product of two elements of the same ring.

    Raises:
        DomainError: If the ring parameters differ.
    """
    a._check_compatible(b)
    return _reduce_terms(
        a.params,
        (
            (left.pairs + right.pairs, u * v)
            for left, u in a.terms
            for right, v in b.terms
        ),
    )


def relabel(
    element: Element,
    mapping: Mapping[int, int],
    target: RingParams,
) -> Element:
    """Substitute point indices and reduce in the target ring.

    Args:
        element (Element): The element to relabel.
        mapping (Mapping[int, int]): New index for every old index used.
        target (RingParams): The ring the relabeled element lives in.

    Returns:
        Element: The relabeled element in normal form.
    """
    formal = FormalSum(
        target,
        tuple(
            (tuple((mapping[i], mapping[j]) for i, j in m.pairs), v)
            for m, v in element.terms
        ),
    )
    return reduce(formal)


def arnold_relation(i: int, j: int, k: int, params: RingParams) -> FormalSum:
    """The unreduced three-term relation w_ij w_jk + w_jk w_ki + w_ki w_ij."""
    return FormalSum(
        params,
        (
            (((i, j), (j, k)), 1),
            (((j, k), (k, i)), 1),
            (((k, i), (i, j)), 1),
        ),
    )


def _admissible_choices(q: int) -> Iterator[Monomial]:
    choices = [[None] + list(range(1, j)) for j in range(2, q + 1)]
    for picks in itertools.product(*choices):
        yield Monomial(tuple(
            Generator(i, j)
            for j, i in zip(range(2, q + 1), picks)
            if i is not None
        ))


def basis(params: RingParams, degree: Optional[int] = None) -> list[Monomial]:
    """Enumerate admissible monomials in the deterministic monomial order.

    Every j in 2..q is either absent as a larger index or paired with a
    single i < j.

    Args:
        params (RingParams): The ring.
        degree (int, optional): Restrict to monomials of this degree.

    Returns:
        list[Monomial]: The basis monomials.
    """
    if degree is not None:
        if degree < 0 or degree % params.generator_degree:
            return []
        length = degree // params.generator_degree
        monomials = [
            m for m in _admissible_choices(params.q) if m.length == length
        ]
    else:
        monomials = list(_admissible_choices(params.q))

    monomials.sort(key=Monomial.sort_key)
    logger.debug(
        f"Enumerated {len(monomials)} basis monomials for q={params.q}, "
        f"n={params.n}, degree={degree}."
    )
    return monomials


T = sympy.Symbol("t")


def closed_form_poincare(params: RingParams) -> sympy.Poly:
    product = sympy.Integer(1)
    for j in range(2, params.q + 1):
        product *= 1 + (j - 1) * T ** params.generator_degree
    return sympy.Poly(sympy.expand(product), T)


def poincare_polynomial(params: RingParams) -> sympy.Poly:
    """Poincaré polynomial of C_q(R^n) counted from the admissible basis.

    Raises:
        RuntimeError: If the enumeration disagrees with the product formula
            prod_{j=2}^{q} (1 + (j-1) t^{n-1}).
    """
    counts = Counter(m.degree(params) for m in _admissible_choices(params.q))
    enumerated = sympy.Poly(
        sum(count * T ** degree for degree, count in counts.items()),
        T,
    )

    closed = closed_form_poincare(params)
    if enumerated != closed:
        raise RuntimeError(
            "Basis enumeration {} disagrees with product formula {}".format(
                enumerated, closed
            )
        )
    return enumerated


def format_polynomial(poly: sympy.Poly) -> str:
    """Write a polynomial in t with ascending powers, e.g. 1 + 3*t^2."""
    chunks = []
    for (power,), coefficient in sorted(poly.terms()):
        if power == 0:
            chunks.append(str(coefficient))
        elif coefficient == 1:
            chunks.append("t" if power == 1 else "t^{}".format(power))
        else:
            chunks.append(
                "{}*t".format(coefficient)
                if power == 1
                else "{}*t^{}".format(coefficient, power)
            )
    return " + ".join(chunks) if chunks else "0"


def quotient_cohomology_dims(params: RingParams) -> dict[int, int]:
    """Ranks of H^k(C_q / boundary; Q) by Lefschetz duality.

    The compactified space is an nq-dimensional manifold with corners, so
    rank H^k(C_q/boundary) = rank H_{nq-k}(C_q).

    Returns:
        dict[int, int]: Nonzero ranks keyed by degree, ascending.
    """
    top = params.n * params.q
    poly = poincare_polynomial(params)
    dims = {
        top - power: int(coefficient)
        for (power,), coefficient in poly.terms()
        if coefficient
    }
    return dict(sorted(dims.items()))
