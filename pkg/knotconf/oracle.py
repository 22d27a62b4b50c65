"""Independent check of the ring presentation by exact linear algebra.

Each graded piece of the quotient ring is computed as the square-free
monomials of a given length modulo the span of every Arnold relation
multiplied by every monomial of complementary length. No rewriting is
involved, so the oracle can be compared with reduce() and basis().
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from loguru import logger
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from knotconf.arnold import (
    Element,
    FormalSum,
    RingParams,
    Word,
    arnold_relation,
)
from knotconf.errors import DomainError


Scalar = Union[Fraction, int]
Vector = dict[int, Scalar]


def _column_key(generator: tuple[int, int]) -> tuple[int, int]:
    # Same order as the generator list: by larger index, then smaller.
    i, j = generator
    return (j, i)


@dataclass
class _GradedPiece:
    columns: dict[tuple[tuple[int, int], ...], int]
    """Column index of every square-free monomial of this length."""

    rank: int
    """Rank of the relation span."""

    reducers: list[tuple[int, Vector]]
    """Reduced row echelon rows of the relation span, keyed by pivot."""

    @property
    def dimension(self) -> int:
        return len(self.columns) - self.rank


class QuotientOracle:
    """Graded pieces of the Arnold quotient over Q or GF(p)."""

    def __init__(self, params: RingParams, modulus: Optional[int] = None):
        """Prepare the oracle.

        Args:
            params (RingParams): The ring whose presentation is checked. Its
                own coefficient ring is ignored; the field is chosen by
                `modulus`.
            modulus (int, optional): Work over GF(modulus) instead of Q.
        """
        self._params = params
        self._modulus = modulus
        self._domain = QQ if modulus is None else GF(modulus)
        self._generators = [
            (i, j) for j in range(2, params.q + 1) for i in range(1, j)
        ]
        self._pieces: dict[int, _GradedPiece] = {}

    @property
    def params(self) -> RingParams:
        return self._params

    def _scalar(self, value) -> Scalar:
        if self._modulus is None:
            return Fraction(int(value.p), int(value.q))
        return int(value) % self._modulus

    def _ambient(self, word: Word) -> Optional[tuple[tuple, int]]:
        # Square-free monomial and sign for a raw word, None if it repeats a
        # generator.
        sign = 1
        gens = []
        for i, j in word:
            if i > j:
                i, j = j, i
                sign *= self._params.reversal_sign
            gens.append((i, j))
        if len(set(gens)) < len(gens):
            return None

        if self._params.swap_sign == -1:
            inversions = sum(
                1
                for a, b in itertools.combinations(gens, 2)
                if _column_key(a) > _column_key(b)
            )
            if inversions % 2:
                sign = -sign
        return tuple(sorted(gens, key=_column_key)), sign

    def _piece(self, length: int) -> _GradedPiece:
        if length in self._pieces:
            return self._pieces[length]

        columns = {
            gens: index
            for index, gens in enumerate(
                itertools.combinations(self._generators, length)
            )
        }

        rows: dict[int, dict[int, object]] = {}
        if length >= 2:
            triples = itertools.combinations(range(1, self._params.q + 1), 3)
            for (i, j, k), rest in itertools.product(
                list(triples),
                list(itertools.combinations(self._generators, length - 2)),
            ):
                relation = arnold_relation(i, j, k, self._params)
                row: dict[int, int] = {}
                for word, value in relation.terms:
                    ambient = self._ambient(word + rest)
                    if ambient is None:
                        continue
                    gens, sign = ambient
                    column = columns[gens]
                    row[column] = row.get(column, 0) + sign * value
                entries = {
                    c: self._domain.convert(v) for c, v in row.items() if v
                }
                entries = {c: v for c, v in entries.items() if v}
                if entries:
                    rows[len(rows)] = entries

        rank = 0
        reducers: list[tuple[int, Vector]] = []
        if rows and columns:
            matrix = DomainMatrix(rows, (len(rows), len(columns)), self._domain)
            echelon, pivots = matrix.rref()
            rank = len(pivots)
            dense = echelon[:rank, :].to_Matrix() if rank else None
            for index, pivot in enumerate(pivots):
                reducer = {
                    c: self._scalar(dense[index, c])
                    for c in range(len(columns))
                    if dense[index, c] != 0
                }
                reducers.append((pivot, reducer))

        piece = _GradedPiece(columns, rank, reducers)
        self._pieces[length] = piece
        logger.debug(
            f"Oracle piece q={self._params.q} length={length}: "
            f"{len(columns)} monomials, {len(rows)} relations, rank {rank}."
        )
        return piece

    def graded_dimension(self, length: int) -> int:
        """Dimension of the quotient in degree length*(n-1)."""
        return self._piece(length).dimension

    def graded_dimensions(self, max_length: Optional[int] = None) -> dict:
        """Quotient dimensions keyed by degree, zero pieces omitted."""
        if max_length is None:
            max_length = self._params.q
        dims = {}
        for length in range(max_length + 1):
            dimension = self.graded_dimension(length)
            if dimension:
                dims[length * self._params.generator_degree] = dimension
        return dims

    def vector(self, expression: Union[FormalSum, Element]) -> dict:
        """Coordinates of a homogeneous expression per monomial length."""
        if isinstance(expression, Element):
            expression = expression.to_formal_sum()
        if expression.params.n != self._params.n:
            raise DomainError("oracle and expression disagree on n")

        vectors: dict[int, Vector] = {}
        for word, value in expression.terms:
            piece = self._piece(len(word))
            ambient = self._ambient(word)
            if ambient is None:
                continue
            gens, sign = ambient
            column = piece.columns[gens]
            vector = vectors.setdefault(len(word), {})
            vector[column] = self._normalize(
                vector.get(column, 0) + sign * value
            )
        return {
            length: {c: v for c, v in vector.items() if v}
            for length, vector in vectors.items()
        }

    def _normalize(self, value: Scalar) -> Scalar:
        if self._modulus is None:
            return Fraction(value)
        return int(value) % self._modulus

    def project(self, expression: Union[FormalSum, Element]) -> dict:
        """Canonical representative of an expression in the quotient.

        Returns:
            dict: Per monomial length, the coordinates left after clearing
                every pivot column of the relation span.
        """
        projected = {}
        for length, vector in self.vector(expression).items():
            vector = dict(vector)
            for pivot, reducer in self._piece(length).reducers:
                factor = vector.get(pivot)
                if not factor:
                    continue
                for column, value in reducer.items():
                    vector[column] = self._normalize(
                        vector.get(column, 0) - factor * value
                    )
            vector = {c: v for c, v in vector.items() if v}
            if vector:
                projected[length] = vector
        return projected

    def equivalent(
        self,
        a: Union[FormalSum, Element],
        b: Union[FormalSum, Element],
    ) -> bool:
        """Whether two expressions agree modulo the relations."""
        return self.project(a) == self.project(b)
