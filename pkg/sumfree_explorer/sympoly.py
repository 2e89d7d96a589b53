"""Sparse multivariate polynomials over ``F_2``.

A polynomial is a set of exponent vectors; every coefficient is 1, and
adding a monomial that is already present cancels it. The module builds
the symbolic Moore determinants, the quotient ``F_k`` and the symmetric
polynomial ``Theta_k`` for small numbers of variables.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Sequence,
                    Set, Tuple)

from sympy.utilities.iterables import multiset_permutations

from sumfree_explorer import LimitExceeded
from sumfree_explorer.gf2n import Fe, FieldSpec

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

THETA_SYMBOLIC_MAX_K = 7
MOORE_SYMBOLIC_MAX_K = 6
FK_SYMBOLIC_MAX_K = 4
FK_SYMBOLIC_LARGE_MAX_K = 5


class PolyError(Exception):
    pass


class NotDivisible(PolyError):
    pass


class ArityMismatch(PolyError):
    pass


def _toggle(terms: Set[Monomial], monomial: Monomial) -> None:
    if monomial in terms:
        terms.remove(monomial)
    else:
        terms.add(monomial)


def _grlex(monomial: Monomial) -> Tuple[int, Monomial]:
    return sum(monomial), monomial


@dataclass(frozen=True)
class MPoly:
    """A polynomial in ``k`` variables ``X_1..X_k`` over ``F_2``."""
    k: int
    terms: FrozenSet[Monomial]

    def __post_init__(self) -> None:
        for monomial in self.terms:
            if len(monomial) != self.k:
                raise ArityMismatch(
                    f'Monomial {monomial} does not have {self.k} exponents'
                )

    @classmethod
    def from_terms(cls, k: int, terms: Iterable[Monomial]) -> 'MPoly':
        """Sum of the given monomials; repeated monomials cancel in pairs."""
        collected: Set[Monomial] = set()
        for monomial in terms:
            _toggle(collected, tuple(monomial))
        return cls(k, frozenset(collected))

    @classmethod
    def zero(cls, k: int) -> 'MPoly':
        return cls(k, frozenset())

    @classmethod
    def one(cls, k: int) -> 'MPoly':
        return cls(k, frozenset([(0,) * k]))

    @classmethod
    def variable(cls, k: int, i: int) -> 'MPoly':
        """The variable ``X_(i+1)``, i.e. ``i`` counts from 0."""
        exponents = [0] * k
        exponents[i] = 1
        return cls(k, frozenset([tuple(exponents)]))

    def _check_arity(self, other: 'MPoly') -> None:
        if other.k != self.k:
            raise ArityMismatch(
                f'Cannot combine polynomials in {self.k} and {other.k} '
                'variables'
            )

    def __add__(self, other: 'MPoly') -> 'MPoly':
        self._check_arity(other)
        return MPoly(self.k, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: 'MPoly') -> 'MPoly':
        self._check_arity(other)
        result: Set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                _toggle(result, tuple(x + y for x, y in zip(a, b)))
        return MPoly(self.k, frozenset(result))

    def frobenius(self, t: int = 1) -> 'MPoly':
        """``f^(2^t)``: in characteristic 2 this scales every exponent."""
        factor = 1 << t
        return MPoly(self.k, frozenset(tuple(e * factor for e in monomial)
                                       for monomial in self.terms))

    def __pow__(self, e: int) -> 'MPoly':
        if e < 0:
            raise ValueError('Negative powers are not polynomials')
        result = MPoly.one(self.k)
        t = 0
        while e:
            if e & 1:
                result = result * self.frobenius(t)
            e >>= 1
            t += 1
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_term(self) -> Monomial:
        if not self.terms:
            raise PolyError('The zero polynomial has no leading term')
        return max(self.terms, key=_grlex)

    def sorted_terms(self) -> List[Monomial]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms, key=_grlex, reverse=True)

    def permute(self, order: Sequence[int]) -> 'MPoly':
        """Substitute ``X_i -> X_order[i]``."""
        result = []
        for monomial in self.terms:
            exponents = [0] * self.k
            for i, e in enumerate(monomial):
                exponents[order[i]] = e
            result.append(tuple(exponents))
        return MPoly(self.k, frozenset(result))

    def dump(self) -> str:
        return ''.join(' '.join(str(e) for e in monomial) + '\n'
                       for monomial in self.sorted_terms())

    @classmethod
    def parse_dump(cls, text: str, k: int) -> 'MPoly':
        terms = [tuple(int(e) for e in line.split())
                 for line in text.splitlines() if line.strip()]
        return cls.from_terms(k, terms)

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        rendered = []
        for monomial in self.sorted_terms():
            factors = []
            for i, e in enumerate(monomial, start=1):
                if e == 1:
                    factors.append(f'X{i}')
                elif e > 1:
                    factors.append(f'X{i}^{e}')
            rendered.append('*'.join(factors) or '1')
        return ' + '.join(rendered)


@dataclass(frozen=True)
class Partition2Adic:
    """An integer partition all of whose parts are powers of 2, parts in
    nonincreasing order."""
    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        for part in self.parts:
            if part < 1 or part & (part - 1):
                raise ValueError(f'{part} is not a power of 2')
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError('Parts must be nonincreasing')

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return partition_label(self)


def partition_label(partition: Partition2Adic) -> str:
    """Render as e.g. ``(2^2,2,1,1)``."""
    labels = []
    for part in partition.parts:
        e = part.bit_length() - 1
        labels.append(f'2^{e}' if e >= 2 else str(part))
    return '(' + ','.join(labels) + ')'


def _two_adic(total: int, largest: int, max_parts: int
              ) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    part = largest
    while part >= 1:
        if part <= total:
            for rest in _two_adic(total - part, part, max_parts - 1):
                yield (part,) + rest
        part //= 2


def lambda_set(k: int) -> List[Partition2Adic]:
    """2-adic partitions of ``2^(k-1)`` with at most ``k`` parts, in
    decreasing lexicographic order."""
    if k < 1:
        raise ValueError('k must be at least 1')
    top = 1 << (k - 1)
    return [Partition2Adic(parts) for parts in _two_adic(top, top, k)]


def monomial_symmetric(partition: Partition2Adic, k: int) -> MPoly:
    """``m_lambda`` in ``k`` variables: every distinct arrangement of the
    parts (padded with zeros) over the variables."""
    if len(partition) > k:
        return MPoly.zero(k)
    padded = list(partition.parts) + [0] * (k - len(partition))
    return MPoly(k, frozenset(tuple(arrangement)
                              for arrangement in multiset_permutations(padded)))


@lru_cache(maxsize=None)
def theta_sym(k: int) -> MPoly:
    if not 1 <= k <= THETA_SYMBOLIC_MAX_K:
        raise LimitExceeded(
            f'Symbolic Theta_k is capped at k <= {THETA_SYMBOLIC_MAX_K}'
        )
    terms: Set[Monomial] = set()
    for partition in lambda_set(k):
        part = monomial_symmetric(partition, k).terms
        # Distinct partitions give disjoint monomial sets.
        assert not terms & part
        terms |= part
    logger.debug('Theta_%d has %d terms', k, len(terms))
    return MPoly(k, frozenset(terms))


def _moore_like(row_exponents: Sequence[int]) -> MPoly:
    # Leibniz expansion; all row exponents differ, so no term repeats.
    k = len(row_exponents)
    terms = []
    for sigma in permutations(range(k)):
        exponents = [0] * k
        for row, column in enumerate(sigma):
            exponents[column] = row_exponents[row]
        terms.append(tuple(exponents))
    return MPoly(k, frozenset(terms))


def _check_moore_cap(k: int) -> None:
    if not 1 <= k <= MOORE_SYMBOLIC_MAX_K:
        raise LimitExceeded(
            f'Symbolic Moore determinants are capped at k <= '
            f'{MOORE_SYMBOLIC_MAX_K}'
        )


def moore_row_exponents(k: int) -> List[int]:
    return [1 << i for i in range(k)]


def moore1_row_exponents(k: int) -> List[int]:
    return [1] + [1 << i for i in range(2, k + 1)]


@lru_cache(maxsize=None)
def moore_sym(k: int) -> MPoly:
    """The Moore determinant ``Delta`` with rows ``X^(2^0) .. X^(2^(k-1))``."""
    _check_moore_cap(k)
    return _moore_like(moore_row_exponents(k))


@lru_cache(maxsize=None)
def moore1_sym(k: int) -> MPoly:
    """``Delta_1``: as ``Delta`` but with the ``X^2`` row dropped and a
    ``X^(2^k)`` row added."""
    _check_moore_cap(k)
    return _moore_like(moore1_row_exponents(k))


@lru_cache(maxsize=None)
def fk_sym(k: int, allow_large: bool = False) -> MPoly:
    """The quotient ``F_k = Delta_1 / Delta``. Only ``k <= 4`` unless
    ``allow_large`` is set (then ``k <= 5``)."""
    cap = FK_SYMBOLIC_LARGE_MAX_K if allow_large else FK_SYMBOLIC_MAX_K
    if not 1 <= k <= cap:
        raise LimitExceeded(f'Symbolic F_k is capped at k <= {cap}')
    return exact_div(moore1_sym(k), moore_sym(k))


def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """Exact quotient ``f / g`` by graded-lex leading-term elimination.
    Raises :class:`NotDivisible` when a remainder is left."""
    f._check_arity(g)
    if not g:
        raise ZeroDivisionError('Division by the zero polynomial')
    lead = g.leading_term()
    remainder = set(f.terms)
    quotient: Set[Monomial] = set()
    while remainder:
        top = max(remainder, key=_grlex)
        if any(a < b for a, b in zip(top, lead)):
            raise NotDivisible(
                f'Leading term {top} is not divisible by {lead}'
            )
        shift = tuple(a - b for a, b in zip(top, lead))
        quotient.add(shift)
        for monomial in g.terms:
            _toggle(remainder, tuple(a + b for a, b in zip(shift, monomial)))
    return MPoly(f.k, frozenset(quotient))


def eval_sym(f: MPoly, point: Sequence[Fe], fs: FieldSpec) -> Fe:
    """Evaluate ``f`` at a point of ``F_{2^n}^k`` by plain substitution."""
    if len(point) != f.k:
        raise ArityMismatch(
            f'Point has {len(point)} coordinates, polynomial has {f.k} '
            'variables'
        )
    powers: Dict[Tuple[int, int], Fe] = {}
    total = 0
    for monomial in f.terms:
        value = 1
        for i, e in enumerate(monomial):
            if e == 0:
                continue
            key = (i, e)
            if key not in powers:
                powers[key] = fs.pow(point[i], e)
            value = fs.mul(value, powers[key])
            if value == 0:
                break
        total ^= value
    return total


def is_symmetric(f: MPoly) -> bool:
    """Invariance under every adjacent transposition (these generate
    the symmetric group)."""
    for i in range(f.k - 1):
        order = list(range(f.k))
        order[i], order[i + 1] = order[i + 1], order[i]
        if f.permute(order) != f:
            return False
    return True


def degree(f: MPoly) -> int:
    return f.degree


def linear_form_divides(f: MPoly, a: Sequence[int]) -> bool:
    """Whether ``a_1 X_1 + ... + a_k X_k`` divides ``f``.

    The form vanishes exactly when ``X_j`` equals the sum of the other
    selected variables, where ``j`` is the last index with ``a_j = 1``.
    Substituting that sum for ``X_j`` leaves the zero polynomial exactly
    when the form divides ``f``."""
    if len(a) != f.k:
        raise ArityMismatch(f'Form has {len(a)} coefficients, expected {f.k}')
    selected = [i for i, bit in enumerate(a) if bit]
    if not selected:
        raise ValueError('The zero form divides nothing')
    pivot = selected[-1]
    others = MPoly.zero(f.k)
    for i in selected[:-1]:
        others = others + MPoly.variable(f.k, i)
    powers: Dict[int, MPoly] = {}
    result: Set[Monomial] = set()
    for monomial in f.terms:
        e = monomial[pivot]
        if e not in powers:
            powers[e] = others ** e
        rest = monomial[:pivot] + (0,) + monomial[pivot + 1:]
        for term in powers[e].terms:
            _toggle(result, tuple(x + y for x, y in zip(rest, term)))
    return not result


def coprime_to_delta(f: MPoly) -> bool:
    """No nonzero linear form over ``F_2`` divides ``f``; equivalently
    ``gcd(f, Delta) = 1``, since ``Delta`` is the product of all such
    forms."""
    return not any(linear_form_divides(f, a)
                   for a in product((0, 1), repeat=f.k) if any(a))
