"""The factor rule: a divisor ``X^k + ... + a_2 X^2 + a_0`` of ``X^n - 1``
(no ``X`` term) puts ``k`` in ``K_n``.

``X^n - 1`` is factored through the cyclotomic cosets of 2 modulo ``n``:
each coset ``C`` gives the irreducible factor ``prod_{s in C} (X - b^s)``
where ``b`` is a primitive ``n``-th root of unity in ``F_{2^m}``,
``m = ord_n(2)``.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import n_order, primefactors
from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore
from sumfree_explorer.gf2n import (FieldSpec, clmul, default_modulus, degree,
                                   poly_mod, poly_str)
from sumfree_explorer.rule import Rule, SplittingFieldTooLarge

logger = logging.getLogger(__name__)

MAX_SPLITTING_DEGREE = 64


def cyclotomic_cosets(n: int) -> List[List[int]]:
    """Cosets ``{s, 2s, 4s, ...} mod n``, ordered by their least element."""
    seen = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        t = s
        while t not in coset:
            coset.append(t)
            t = 2 * t % n
        seen.update(coset)
        cosets.append(coset)
    return cosets


def primitive_root_of_unity(n: int, field: FieldSpec) -> int:
    """The first ``a^((2^m - 1)/n)``, ``a = 2, 3, ...``, of order exactly
    ``n``."""
    cofactor = (field.order - 1) // n
    primes = primefactors(n)
    for a in range(2, field.order):
        b = field.pow(a, cofactor)
        if all(field.pow(b, n // p) != 1 for p in primes):
            return b
    raise AssertionError(f'No element of order {n} in {field}')


def minimal_polynomial(coset: List[int], b: int, field: FieldSpec) -> int:
    coeffs = [1]
    for s in coset:
        root = field.pow(b, s)
        following = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            following[i + 1] ^= c
            following[i] ^= field.mul(root, c)
        coeffs = following
    assert all(c in (0, 1) for c in coeffs), \
        'minimal polynomial has coefficients outside F_2'
    return sum(c << i for i, c in enumerate(coeffs))


@lru_cache(maxsize=None)
def factor_x_n_minus_1(n: int) -> Tuple[int, ...]:
    """The irreducible factors of ``X^n - 1`` over ``F_2`` for odd ``n``,
    as bit-mask polynomials."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f'X^n - 1 is only factored for odd n, got {n}')
    if n == 1:
        return (0b11,)
    m = n_order(2, n)
    if m > MAX_SPLITTING_DEGREE:
        raise SplittingFieldTooLarge(
            f'X^{n} - 1 splits over F_(2^{m}); m exceeds '
            f'{MAX_SPLITTING_DEGREE}'
        )
    field = default_modulus(m)
    b = primitive_root_of_unity(n, field)
    factors = tuple(minimal_polynomial(coset, b, field)
                    for coset in cyclotomic_cosets(n))
    logger.debug('X^%d - 1 has %d irreducible factors over F_2', n,
                 len(factors))
    return factors


def x_coefficient_free_divisors(n: int) -> Dict[int, int]:
    """For each degree ``k``, one product of distinct irreducible factors
    of ``X^n - 1`` of degree ``k`` without an ``X`` term.

    All factors have constant term 1, so the ``X`` coefficient of a
    product is the XOR of the factors' ``X`` coefficients; a subset-sum
    table over (degree, parity) finds every reachable degree."""
    reachable: Dict[Tuple[int, int], Tuple[int, ...]] = {(0, 0): ()}
    factors = factor_x_n_minus_1(n)
    for index, factor in enumerate(factors):
        step = (degree(factor), factor >> 1 & 1)
        for (deg, parity), chosen in list(reachable.items()):
            key = (deg + step[0], parity ^ step[1])
            if key not in reachable:
                reachable[key] = chosen + (index,)
    divisors = {}
    for (deg, parity), chosen in sorted(reachable.items()):
        if parity or deg < 2:
            continue
        product = 1
        for index in chosen:
            product = clmul(product, factors[index])
        assert degree(product) == deg and not product >> 1 & 1
        divisors[deg] = product
    return divisors


class FactorRule(Rule):
    """``k in K_n`` if ``X^n - 1`` has a degree-``k`` divisor whose
    coefficient of ``X`` is zero (the constant term is automatically 1
    for odd ``n``). The divisor is recorded as the ``factor`` parameter."""
    RULE_ID = 'factor'
    SHORT_NAME = 'Factor of X^n - 1'
    DESCRIPTION = ('A degree-k divisor of X^n - 1 with zero X coefficient '
                   'implies k in K_n')

    @override
    def applies_to(self, n: int) -> bool:
        return n >= 3 and n % 2 == 1

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        return [self.make_fact(n, k, factor=format(poly, 'x'),
                               polynomial=poly_str(poly))
                for k, poly in x_coefficient_free_divisors(n).items()
                if k <= n - 1 and k not in store]

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        try:
            poly = int(fact.justification.parameter_dict['factor'], 16)
        except (KeyError, ValueError):
            return False
        x_n_minus_1 = (1 << fact.n) | 1
        return degree(poly) == fact.k and not poly >> 1 & 1 and \
            poly & 1 == 1 and poly_mod(x_n_minus_1, poly) == 0
