import functools
import itertools
import math
import random
from fractions import Fraction

import pytest

from knotconf.arnold import (
    Coefficients,
    Element,
    FormalSum,
    Monomial,
    RingParams,
    arnold_relation,
    basis,
    canonicalize_generator,
    format_polynomial,
    multiply,
    poincare_polynomial,
    quotient_cohomology_dims,
    reduce,
    relabel,
)
from knotconf.errors import DomainError
from knotconf.expression import parse_element


def test_reduce_shared_larger_index(ring):
    element = parse_element("w(1,3)*w(2,3)", ring(3))
    assert str(element) == "w(1,2)*w(2,3) - w(1,2)*w(1,3)"


@pytest.mark.parametrize(
    "n, expected",
    [(3, "-w(1,2)"), (4, "w(1,2)")],
)
def test_generator_reversal(ring, n, expected):
    assert str(parse_element("w(2,1)", ring(2, n))) == expected


def test_square_is_zero(ring):
    assert parse_element("w(1,2)*w(1,2)", ring(3)).is_zero
    assert parse_element("w(1,2)*w(2,1)", ring(3, 4)).is_zero


@pytest.mark.parametrize(
    "n, expected",
    [(3, "w(1,2)*w(3,4)"), (4, "-w(1,2)*w(3,4)")],
)
def test_graded_commutativity(ring, n, expected):
    assert str(parse_element("w(3,4)*w(1,2)", ring(4, n))) == expected


@pytest.mark.parametrize("n", [3, 4])
def test_arnold_relations_reduce_to_zero(ring, n):
    params = ring(5, n)
    for i in range(1, 6):
        for j in range(1, 6):
            for k in range(1, 6):
                if len({i, j, k}) < 3:
                    continue
                assert reduce(arnold_relation(i, j, k, params)).is_zero


def _random_element(rng: random.Random, params, length: int) -> Element:
    monomials = [m for m in basis(params) if m.length == length]
    chosen = rng.sample(monomials, min(len(monomials), rng.randint(1, 3)))
    return Element.from_mapping(
        params, {m: rng.choice([-2, -1, 1, 3]) for m in chosen}
    )


def _permutation_sign(order: list[int]) -> int:
    inversions = sum(
        1 for a, b in itertools.combinations(order, 2) if a > b
    )
    return -1 if inversions % 2 else 1


@pytest.mark.parametrize("n", [3, 4])
def test_random_products_graded_commute(ring, n):
    params = ring(5, n)
    rng = random.Random(31 + n)
    for _ in range(200):
        left = rng.randint(0, 3)
        right = rng.randint(0, 4 - left)
        a = _random_element(rng, params, left)
        b = _random_element(rng, params, right)
        sign = (-1) ** (a.degree * b.degree)
        assert multiply(a, b) == multiply(b, a).scale(sign)


@pytest.mark.parametrize("n", [3, 4])
def test_normal_form_ignores_factor_order(ring, n):
    params = ring(5, n)
    rng = random.Random(97 + n)
    pairs = list(itertools.combinations(range(1, 6), 2))
    for _ in range(300):
        word = rng.sample(pairs, rng.randint(1, 4))
        expected = reduce(FormalSum(params, ((tuple(word), 1),)))

        order = list(range(len(word)))
        rng.shuffle(order)
        sign = _permutation_sign(order) if params.swap_sign == -1 else 1
        shuffled = []
        for index in order:
            i, j = word[index]
            if rng.random() < 0.5:
                i, j = j, i
                sign *= params.reversal_sign
            shuffled.append((i, j))
        shuffled_sum = FormalSum(params, ((tuple(shuffled), sign),))
        assert reduce(shuffled_sum) == expected

        factors = [Element.generator(i, j, params) for i, j in word]
        cut = rng.randint(0, len(factors))
        head = functools.reduce(multiply, factors[:cut], Element.one(params))
        tail = functools.reduce(multiply, factors[cut:], Element.one(params))
        assert multiply(head, tail) == expected


@pytest.mark.parametrize("n", [3, 4])
def test_random_products_associate(ring, n):
    params = ring(5, n)
    rng = random.Random(7 + n)
    for _ in range(100):
        lengths = [rng.randint(0, 2) for _ in range(3)]
        a, b, c = (_random_element(rng, params, k) for k in lengths)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_canonicalize_generator(ring):
    params = ring(3)
    assert canonicalize_generator(3, 1, params) == (
        canonicalize_generator(1, 3, params)[0],
        -1,
    )
    with pytest.raises(DomainError):
        canonicalize_generator(1, 4, params)
    with pytest.raises(DomainError):
        canonicalize_generator(2, 2, params)


def test_ring_params_domain():
    with pytest.raises(DomainError):
        RingParams(2, 3)
    with pytest.raises(DomainError):
        RingParams(3, -1)


def test_basis_order(ring):
    assert [str(m) for m in basis(ring(3))] == [
        "1",
        "w(1,2)",
        "w(2,3)",
        "w(1,3)",
        "w(1,2)*w(2,3)",
        "w(1,2)*w(1,3)",
    ]


def test_basis_degree_filter(ring):
    params = ring(4)
    assert len(basis(params, 2)) == 6
    assert len(basis(params, 4)) == 11
    assert basis(params, 3) == []
    assert all(m.is_admissible for m in basis(params))


@pytest.mark.parametrize("q", range(8))
def test_basis_size_is_factorial(ring, q):
    assert len(basis(ring(q))) == math.factorial(q)


@pytest.mark.parametrize(
    "q, n, expected",
    [
        (0, 3, "1"),
        (2, 3, "1 + t^2"),
        (3, 3, "1 + 3*t^2 + 2*t^4"),
        (4, 4, "1 + 6*t^3 + 11*t^6 + 6*t^9"),
    ],
)
def test_poincare_polynomial(ring, q, n, expected):
    assert format_polynomial(poincare_polynomial(ring(q, n))) == expected


@pytest.mark.parametrize(
    "q, expected",
    [(0, {0: 1}), (2, {4: 1, 6: 1}), (3, {5: 2, 7: 3, 9: 1})],
)
def test_quotient_cohomology_dims(ring, q, expected):
    assert quotient_cohomology_dims(ring(q)) == expected


@pytest.mark.parametrize("q", range(9))
def test_quotient_cohomology_parity(ring, q):
    dims = quotient_cohomology_dims(ring(q))
    assert all(degree % 2 == q % 2 for degree in dims)
    assert sum(dims.values()) == math.factorial(q)


def test_element_arithmetic(ring):
    params = ring(3)
    x = parse_element("w(1,2) + w(1,3)", params)
    y = parse_element("w(2,3)", params)
    assert x + x == 2 * x
    assert (x - x).is_zero
    assert x * y == multiply(x, y)
    assert str(x * y) == "2*w(1,2)*w(2,3) - w(1,2)*w(1,3)"


def test_element_degrees(ring):
    params = ring(3)
    element = parse_element("2 + w(1,2) + w(1,2)*w(2,3)", params)
    assert element.degree is None
    parts = element.homogeneous_parts()
    assert sorted(parts) == [0, 2, 4]
    assert str(parts[0]) == "2"
    assert parts[4].degree == 4


def test_mixed_rings_rejected(ring):
    with pytest.raises(DomainError):
        multiply(Element.one(ring(3)), Element.one(ring(3, 4)))


def test_relabel(ring):
    element = Element.generator(1, 2, ring(2))
    moved = relabel(element, {1: 3, 2: 4}, ring(4))
    assert moved == Element.generator(3, 4, ring(4))
    flipped = relabel(element, {1: 2, 2: 1}, ring(2))
    assert flipped == -element


def test_coefficients_mod_p(ring):
    params = ring(3, coefficients="mod 3")
    x = parse_element("w(1,2)", params)
    assert (3 * x).is_zero
    assert parse_element("-w(1,2)", params).coefficient(
        Monomial.from_pairs([(1, 2)])
    ) == 2


@pytest.mark.parametrize("text", ["mod 8", "mod", "reals", "integers 5"])
def test_bad_coefficients(text):
    with pytest.raises(DomainError):
        Coefficients.from_str(text)


def test_coefficient_scalars():
    assert Coefficients.integers().scalar(Fraction(1, 2)) == Fraction(1, 2)
    assert Coefficients.mod(5).scalar(Fraction(1, 2)) == 3
    assert str(Coefficients.mod(7)) == "mod 7"
    with pytest.raises(DomainError):
        Coefficients.mod(7).scalar(Fraction(1, 7))
