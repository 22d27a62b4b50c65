"""The relabeling product delta* and its dual coproduct.

Placing two configurations side by side gives a multiplication on the
quotients C_q/boundary whose induced coproduct on cohomology is dual to the
product delta* on H*(C_q). With points split into q on the knot and t free
ones (the colored grading C_{q,t} = C_{q+t}), the product first renumbers
points through the shuffle sigma.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from loguru import logger

from knotconf.arnold import (
    Element,
    Generator,
    Monomial,
    RingParams,
    basis,
    multiply,
    relabel,
)
from knotconf.errors import DomainError


@dataclass(frozen=True, order=True)
class ColoredGrading:
    q: int
    """Points on the knot."""

    t: int
    """Free points."""

    def __post_init__(self) -> None:
        if self.q < 0 or self.t < 0:
            raise DomainError(
                "colored grading ({},{}) must be nonnegative".format(
                    self.q, self.t
                )
            )

    @property
    def total(self) -> int:
        return self.q + self.t

    def __str__(self) -> str:
        return "({},{})".format(self.q, self.t)


@dataclass(frozen=True)
class Split:
    """A way (q,t) + (r,s) of splitting a colored grading in two."""

    q: int
    t: int
    r: int
    s: int

    @property
    def left(self) -> ColoredGrading:
        return ColoredGrading(self.q, self.t)

    @property
    def right(self) -> ColoredGrading:
        return ColoredGrading(self.r, self.s)

    @property
    def cut(self) -> int:
        """Number of points belonging to the left factor."""
        return self.q + self.t

    def swapped(self) -> Split:
        return Split(self.r, self.s, self.q, self.t)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.q, self.t, self.r, self.s)


def splits(grading: ColoredGrading) -> list[Split]:
    """Every split with q + r = Q and t + s = T, in lexicographic order."""
    return [
        Split(q, t, grading.q - q, grading.t - t)
        for q in range(grading.q + 1)
        for t in range(grading.t + 1)
    ]


@dataclass(frozen=True)
class ShufflePermutation:
    """The permutation sigma of {1,...,q+t+r+s}.

    It fixes the first q and the last s points, moves the r points
    [q+t+1, q+t+r] left by t and the t points [q+1, q+t] right by r.
    """

    q: int
    t: int
    r: int
    s: int
    images: tuple[int, ...]
    """images[i-1] is sigma(i)."""

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def as_mapping(self) -> dict[int, int]:
        return {i: image for i, image in enumerate(self.images, start=1)}

    def inverse(self) -> dict[int, int]:
        return {image: i for i, image in enumerate(self.images, start=1)}

    @property
    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, 1))

    @property
    def is_involution(self) -> bool:
        return all(self(image) == i for i, image in enumerate(self.images, 1))


def sigma(q: int, t: int, r: int, s: int) -> ShufflePermutation:
    """Build the shuffle moving the r points ahead of the t points.

    Raises:
        DomainError: If any argument is negative.
    """
    if min(q, t, r, s) < 0:
        raise DomainError(
            "sigma({},{},{},{}) needs nonnegative arguments".format(q, t, r, s)
        )

    images = []
    for i in range(1, q + t + r + s + 1):
        if q + 1 <= i <= q + t:
            images.append(i + r)
        elif q + t + 1 <= i <= q + t + r:
            images.append(i - t)
        else:
            images.append(i)
    return ShufflePermutation(q, t, r, s, tuple(images))


def _check_same_ring(a: RingParams, b: RingParams) -> None:
    if a.n != b.n or a.coefficients != b.coefficients:
        raise DomainError(
            "mismatched parameters: n={} over {} and n={} over {}".format(
                a.n, a.coefficients, b.n, b.coefficients
            )
        )


def delta_star(theta: Element, eta: Element) -> Element:
    """Product H*(C_q) x H*(C_r) -> H*(C_{q+r}).

    w(i,j) x 1 maps to w(i,j) and 1 x w(i,j) to w(q+i,q+j); products map to
    cup products.

    Raises:
        DomainError: If n or the coefficients differ.
    """
    _check_same_ring(theta.params, eta.params)
    q, r = theta.params.q, eta.params.q
    target = theta.params.with_points(q + r)

    left = relabel(theta, {i: i for i in range(1, q + 1)}, target)
    right = relabel(eta, {i: q + i for i in range(1, r + 1)}, target)
    return multiply(left, right)


def _check_grading(element: Element, grading: ColoredGrading) -> None:
    if element.params.q != grading.total:
        raise DomainError(
            "element on {} points does not live on C_{}".format(
                element.params.q, grading
            )
        )


def delta_star_colored(
    theta: Element,
    theta_grading: ColoredGrading,
    eta: Element,
    eta_grading: ColoredGrading,
) -> Element:
    """Colored product H*(C_{q,t}) x H*(C_{r,s}) -> H*(C_{q+r,t+s}).

    The uncolored product followed by renumbering points through
    sigma(q,t,r,s).

    Raises:
        DomainError: If the parameters disagree or an element does not live
            on its stated grading.
    """
    _check_grading(theta, theta_grading)
    _check_grading(eta, eta_grading)

    product = delta_star(theta, eta)
    shuffle = sigma(
        theta_grading.q, theta_grading.t, eta_grading.q, eta_grading.t
    )
    if shuffle.is_identity:
        return product
    return relabel(product, shuffle.as_mapping(), product.params)


@dataclass(frozen=True)
class TensorTerm:
    split: Split
    left: Monomial
    right: Monomial
    coefficient: int

    def key(self) -> tuple[Split, Monomial, Monomial]:
        return (self.split, self.left, self.right)


@dataclass(frozen=True)
class TensorSum:
    """A finite sum of tensors of basis monomials over every split."""

    grading: ColoredGrading
    params: RingParams
    terms: tuple[TensorTerm, ...] = ()

    @property
    def extension(self) -> bool:
        """Signs for even n go beyond the three-dimensional setting."""
        return self.params.n % 2 == 0

    def as_dict(self) -> dict[tuple[Split, Monomial, Monomial], int]:
        return {term.key(): term.coefficient for term in self.terms}

    def as_records(self) -> list[dict]:
        return [
            {
                "q": term.split.q,
                "t": term.split.t,
                "r": term.split.r,
                "s": term.split.s,
                "left": str(term.left),
                "right": str(term.right),
                "coeff": str(term.coefficient),
            }
            for term in self.terms
        ]


def coproduct(
    m: Monomial,
    grading: ColoredGrading,
    params: RingParams,
    only: Optional[Iterable[Split]] = None,
) -> TensorSum:
    """Decompose a basis monomial along every split.

    The monomial is pulled back through sigma; a split contributes the term
    theta x eta when every generator lies entirely among the first q+t
    points or entirely among the rest, theta being the low generators and
    eta the high ones renumbered from 1. A generator straddling the cut
    kills the split. The coefficient is the Koszul sign of moving the low
    generators in front of the high ones.

    Args:
        m (Monomial): An admissible monomial on C_{Q,T}.
        grading (ColoredGrading): The colored grading (Q,T).
        params (RingParams): The ring of C_{Q+T}.
        only (Iterable[Split], optional): Restrict to these splits.

    Returns:
        TensorSum: The coproduct.

    Raises:
        DomainError: If m is not admissible or does not fit the grading.
    """
    if not m.is_admissible:
        raise DomainError("{} is not an admissible monomial".format(m))
    if params.q != grading.total:
        raise DomainError(
            "ring on {} points does not match C_{}".format(params.q, grading)
        )
    for g in m.generators:
        params.check_index(g.j)

    terms = []
    for split in (splits(grading) if only is None else only):
        inverse = sigma(*split.as_tuple()).inverse()
        cut = split.cut

        sides = []
        for g in m.generators:
            i, j = inverse[g.i], inverse[g.j]
            if (i <= cut) != (j <= cut):
                break
            sides.append((j > cut, Generator(i, j)))
        else:
            low = [g for is_high, g in sides if not is_high]
            high = [
                Generator(g.i - cut, g.j - cut)
                for is_high, g in sides
                if is_high
            ]

            sign = 1
            if params.swap_sign == -1:
                passed_high = 0
                for is_high, _ in sides:
                    if is_high:
                        passed_high += 1
                    elif passed_high % 2:
                        sign = -sign

            coefficient = params.coefficients.normalize(sign)
            terms.append(TensorTerm(
                split,
                Monomial(tuple(low)),
                Monomial(tuple(high)),
                coefficient,
            ))

    logger.debug(f"Coproduct of {m} on C_{grading}: {len(terms)} terms.")
    return TensorSum(grading, params, tuple(terms))


def coproduct_element(
    beta: Element,
    grading: ColoredGrading,
) -> TensorSum:
    """Coproduct of a linear combination of basis monomials."""
    _check_grading(beta, grading)
    if beta.params.n % 2 == 0:
        logger.warning(
            f"Coproduct for n={beta.params.n} uses Koszul signs for "
            f"odd-degree generators; treat it as an extension result."
        )
    total: dict[tuple[Split, Monomial, Monomial], int] = defaultdict(int)
    for monomial, value in beta.terms:
        for term in coproduct(monomial, grading, beta.params).terms:
            total[term.key()] += value * term.coefficient

    ring = beta.params.coefficients
    terms = tuple(
        TensorTerm(split, left, right, ring.normalize(value))
        for (split, left, right), value in total.items()
        if ring.normalize(value)
    )
    return TensorSum(grading, beta.params, terms)


IteratedKey = tuple[
    ColoredGrading, Monomial, ColoredGrading, Monomial, ColoredGrading, Monomial
]


def coproduct_left(
    m: Monomial,
    grading: ColoredGrading,
    params: RingParams,
) -> dict[IteratedKey, int]:
    """(coproduct x id) applied after the coproduct."""
    total: dict[IteratedKey, int] = defaultdict(int)
    for outer in coproduct(m, grading, params).terms:
        left_params = params.with_points(outer.split.cut)
        inner = coproduct(outer.left, outer.split.left, left_params)
        for term in inner.terms:
            key = (
                term.split.left, term.left,
                term.split.right, term.right,
                outer.split.right, outer.right,
            )
            total[key] += outer.coefficient * term.coefficient
    return _normalized(total, params)


def coproduct_right(
    m: Monomial,
    grading: ColoredGrading,
    params: RingParams,
) -> dict[IteratedKey, int]:
    """(id x coproduct) applied after the coproduct."""
    total: dict[IteratedKey, int] = defaultdict(int)
    for outer in coproduct(m, grading, params).terms:
        right_params = params.with_points(outer.split.right.total)
        inner = coproduct(outer.right, outer.split.right, right_params)
        for term in inner.terms:
            key = (
                outer.split.left, outer.left,
                term.split.left, term.left,
                term.split.right, term.right,
            )
            total[key] += outer.coefficient * term.coefficient
    return _normalized(total, params)


def _normalized(total: dict, params: RingParams) -> dict:
    ring = params.coefficients
    return {
        key: ring.normalize(value)
        for key, value in total.items()
        if ring.normalize(value)
    }


def product_commutes(
    theta: Element,
    theta_grading: ColoredGrading,
    eta: Element,
    eta_grading: ColoredGrading,
) -> bool:
    """Whether the colored product of theta and eta is symmetric."""
    forward = delta_star_colored(theta, theta_grading, eta, eta_grading)
    backward = delta_star_colored(eta, eta_grading, theta, theta_grading)
    return forward == backward


def duality_matrix_check(
    Q: int,
    T: int,
    n: int,
    degree: Optional[int] = None,
) -> bool:
    """Compare the coproduct matrix with the transpose of the product.

    For every split, every pair of basis monomials (theta, eta) and every
    basis monomial m of C_{Q,T} of matching degree, the coefficient of m in
    delta_star_colored(theta, eta) must equal the coefficient of
    theta x eta in coproduct(m).

    Args:
        Q (int): Points on the knot.
        T (int): Free points.
        n (int): Ambient dimension.
        degree (int, optional): Restrict to this degree of m.

    Returns:
        bool: True when the two matrices are transposes of each other.
    """
    grading = ColoredGrading(Q, T)
    params = RingParams(n, grading.total)

    product_matrix: dict[tuple, int] = {}
    for split in splits(grading):
        left_params = params.with_points(split.cut)
        right_params = params.with_points(split.right.total)
        for theta in basis(left_params):
            for eta in basis(right_params):
                if degree is not None:
                    if theta.degree(params) + eta.degree(params) != degree:
                        continue
                product = delta_star_colored(
                    Element.from_monomial(theta, left_params),
                    split.left,
                    Element.from_monomial(eta, right_params),
                    split.right,
                )
                for m, value in product.terms:
                    product_matrix[(m, split, theta, eta)] = value

    coproduct_matrix: dict[tuple, int] = {}
    for m in basis(params, degree):
        for term in coproduct(m, grading, params).terms:
            coproduct_matrix[(m,) + term.key()] = term.coefficient

    if product_matrix != coproduct_matrix:
        mismatched = set(product_matrix.items()) ^ set(coproduct_matrix.items())
        logger.warning(
            f"Duality fails for C_{grading}, n={n}, degree={degree}: "
            f"{len(mismatched)} mismatched entries."
        )
        return False
    return True
