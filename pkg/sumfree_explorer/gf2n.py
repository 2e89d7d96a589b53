"""Arithmetic in binary extension fields ``F_2[X]/(f)`` for ``1 <= n <= 64``.

Field elements are plain ``int`` values in which bit ``j`` holds the
coefficient of ``X^j``. Polynomials over ``F_2`` (moduli, factors of
``X^n - 1``) use the same bit-mask encoding, so the helpers at the top of
this module serve both purposes.
"""

import logging
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Iterator, Optional

from sympy import primefactors

from sumfree_explorer import LimitExceeded

if TYPE_CHECKING:
    from sumfree_explorer.tables import FieldTables

logger = logging.getLogger(__name__)

Fe = int
"""A field element: the coefficient vector of its residue representative."""

MAX_DEGREE = 64


class FieldError(Exception):
    """Generic exception for failures in field construction or arithmetic.
    More specific errors derive from this class."""
    pass


class ZeroInverse(FieldError):
    pass


class NoModulusFound(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


def degree(poly: int) -> int:
    """Degree of a bit-mask polynomial; ``-1`` for the zero polynomial."""
    return poly.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two polynomials over ``F_2``."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    result = 0
    while b:
        low = b & -b
        result ^= a << (low.bit_length() - 1)
        b ^= low
    return result


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_divmod(a: int, b: int) -> tuple:
    if b == 0:
        raise ZeroDivisionError('polynomial division by zero')
    quotient = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        quotient |= 1 << shift
        a ^= b << shift
    return quotient, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def poly_str(poly: int, var: str = 'X') -> str:
    """Render a bit-mask polynomial, highest degree first."""
    if poly == 0:
        return '0'
    terms = []
    for e in range(degree(poly), -1, -1):
        if poly >> e & 1:
            if e == 0:
                terms.append('1')
            elif e == 1:
                terms.append(var)
            else:
                terms.append(f'{var}^{e}')
    return ' + '.join(terms)


def is_irreducible(bits: int) -> bool:
    """Decide irreducibility over ``F_2`` with Rabin's test: ``f`` of degree
    ``n`` is irreducible iff ``X^(2^n) = X (mod f)`` and
    ``gcd(X^(2^(n/p)) - X, f) = 1`` for every prime ``p`` dividing ``n``."""
    n = degree(bits)
    if n < 1:
        return False
    if n == 1:
        return True
    if not bits & 1:
        return False
    x = 0b10
    frobenius = [x]
    for _ in range(n):
        frobenius.append(poly_mulmod(frobenius[-1], frobenius[-1], bits))
    if frobenius[n] != x:
        return False
    for p in primefactors(n):
        if poly_gcd(bits, frobenius[n // p] ^ x) != 1:
            return False
    return True


def _modulus_candidates(n: int) -> Iterator[int]:
    top = 1 << n
    if n == 1:
        yield top | 1
        return
    for a in range(1, n):
        yield top | (1 << a) | 1
    for k1 in range(3, n):
        for k2 in range(2, k1):
            for k3 in range(1, k2):
                yield top | (1 << k1) | (1 << k2) | (1 << k3) | 1
    for middle in range(2, top, 2):
        yield top | middle | 1


@lru_cache(maxsize=None)
def default_modulus(n: int) -> 'FieldSpec':
    """The field of degree ``n`` with the least-weight irreducible modulus:
    the trinomial ``X^n + X^a + 1`` with the smallest ``a`` if one exists,
    else the pentanomial ``X^n + X^k1 + X^k2 + X^k3 + 1`` with the
    lexicographically smallest ``(k1, k2, k3)``, else the first irreducible
    found by exhaustive search."""
    if not 1 <= n <= MAX_DEGREE:
        raise LimitExceeded(f'Extension degree {n} outside 1..{MAX_DEGREE}')
    for candidate in _modulus_candidates(n):
        if is_irreducible(candidate):
            logger.debug('default modulus for n=%d: %s', n,
                         poly_str(candidate))
            return FieldSpec(n, candidate)
    raise NoModulusFound(f'No irreducible polynomial of degree {n} found')


@dataclass(frozen=True)
class FieldSpec:
    """The binary field ``F_2[X]/(modulus)`` of degree ``n``.

    Instances are immutable and safe to share between workers. All
    arithmetic is exposed as methods taking and returning ``Fe`` values;
    nothing here keeps per-call state. For ``n <= 22`` the ``tables``
    attribute gives log/antilog tables for vectorized work (built on
    first access)."""
    n: int
    modulus: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DEGREE:
            raise LimitExceeded(
                f'Extension degree {self.n} outside 1..{MAX_DEGREE}'
            )
        if degree(self.modulus) != self.n:
            raise FieldError(
                f'Modulus {self.modulus:#x} does not have degree {self.n}'
            )
        if not self.modulus & 1 or not is_irreducible(self.modulus):
            raise ReducibleModulus(
                f'{poly_str(self.modulus)} is not irreducible over F_2'
            )

    @classmethod
    def from_hex(cls, n: int, modulus_hex: str) -> 'FieldSpec':
        return cls(n, int(modulus_hex, 16))

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    def is_element(self, a: int) -> bool:
        return 0 <= a <= self.mask

    def mul(self, a: Fe, b: Fe) -> Fe:
        return poly_mod(clmul(a, b), self.modulus)

    def square(self, a: Fe) -> Fe:
        return poly_mod(clmul(a, a), self.modulus)

    def pow(self, a: Fe, e: int) -> Fe:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.square(base)
        return result

    def inv(self, a: Fe) -> Fe:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroInverse('0 has no multiplicative inverse')
        u, v = a, self.modulus
        g1, g2 = 1, 0
        while u != 1:
            j = u.bit_length() - v.bit_length()
            if j < 0:
                u, v = v, u
                g1, g2 = g2, g1
                j = -j
            u ^= v << j
            g1 ^= g2 << j
        return poly_mod(g1, self.modulus)

    def inv_by_pow(self, a: Fe) -> Fe:
        """Inverse as ``a^(2^n - 2)``; kept as an independent oracle."""
        if a == 0:
            raise ZeroInverse('0 has no multiplicative inverse')
        return self.pow(a, self.order - 2)

    def div(self, a: Fe, b: Fe) -> Fe:
        return self.mul(a, self.inv(b))

    def frob_pow(self, a: Fe, i: int) -> Fe:
        """``a^(2^i)`` by successive squarings (``a^(2^n) = a``)."""
        for _ in range(i % self.n):
            a = self.square(a)
        return a

    def trace(self, a: Fe) -> int:
        """Absolute trace ``Tr(a) = a + a^2 + ... + a^(2^(n-1))``."""
        total = a
        t = a
        for _ in range(self.n - 1):
            t = self.square(t)
            total ^= t
        assert total in (0, 1), 'trace left the prime field'
        return total

    def random_element(self, rng: Optional[random.Random] = None) -> Fe:
        rng = rng or random.Random()
        return rng.getrandbits(self.n)

    def random_nonzero(self, rng: Optional[random.Random] = None) -> Fe:
        rng = rng or random.Random()
        while True:
            a = rng.getrandbits(self.n)
            if a:
                return a

    @staticmethod
    def to_hex(a: Fe) -> str:
        return format(a, 'x')

    @staticmethod
    def parse(text: str) -> Fe:
        return int(text, 16)

    def to_dict(self) -> dict:
        return {'n': self.n, 'modulus': format(self.modulus, 'x')}

    @classmethod
    def from_dict(cls, data: dict) -> 'FieldSpec':
        return cls(int(data['n']), int(data['modulus'], 16))

    @cached_property
    def tables(self) -> 'FieldTables':
        from sumfree_explorer.tables import FieldTables
        return FieldTables(self)

    @property
    def has_tables(self) -> bool:
        from sumfree_explorer.tables import TABLE_MAX_DEGREE
        return self.n <= TABLE_MAX_DEGREE

    def __str__(self) -> str:
        return f'F_2[X]/({poly_str(self.modulus)})'
