"""Size thresholds above which ``k in K_n`` follows from zero counts of
``Theta_k``.

``Theta_k`` is absolutely irreducible of degree ``d = 2^(k-1)`` for
``k >= 3``, so its number of zeros in ``F_q^k`` (``q = 2^n``) is at least
``q^(k-1) - (d-1)(d-2) q^(k-3/2) - 5 d^(13/3) q^(k-2)``; at most
``(2^k - 1)^2 q^(k-2)`` of them lie on ``Delta = 0``. Whenever the
difference is positive there is a zero off ``Delta``, hence a zero-sum
subspace of dimension ``k``.
"""

import math
from dataclasses import dataclass
from typing import List

from sympy import Integer, Rational, Symbol, nsolve
from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore
from sumfree_explorer.rule import Rule

LOG_FACTOR = math.log2(1 + math.sqrt(21)) / 3
TOLERANCE = 1e-3


@dataclass(frozen=True)
class ThresholdReport:
    k: int
    exact_bound: float
    """``log2(1 + sqrt(21)) / 3 * (13k - 19)``."""
    simplified_bound: float
    """``10.8k - 15.7``; never below ``exact_bound``."""
    quadratic_root_bound: float
    """``2 log2(y0)`` for the larger root ``y0`` of
    ``Y^2 - 2^(2(k-1)) Y - (5 * 2^(13(k-1)/3) + 2^(2k))``."""

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'exact_bound': round(self.exact_bound, 3),
            'simplified_bound': round(self.simplified_bound, 3),
            'quadratic_root_bound': round(self.quadratic_root_bound, 3),
            'refined_bound': round(refined_threshold(self.k), 4),
        }


def _quadratic_root(b: float, c: float) -> float:
    """``2 log2`` of the larger root of ``Y^2 - bY - c``."""
    return 2 * math.log2((b + math.sqrt(b * b + 4 * c)) / 2)


def threshold_exact(k: int) -> ThresholdReport:
    if k < 3:
        raise ValueError('Thresholds are defined for k >= 3')
    return ThresholdReport(
        k=k,
        exact_bound=LOG_FACTOR * (13 * k - 19),
        simplified_bound=10.8 * k - 15.7,
        quadratic_root_bound=_quadratic_root(
            2.0 ** (2 * (k - 1)),
            5 * 2.0 ** (13 * (k - 1) / 3) + 2.0 ** (2 * k),
        ),
    )


def refined_threshold(k: int) -> float:
    """Root in ``n`` of ``2^n - (d-1)(d-2) 2^(n/2) - (5 d^(13/3) +
    (2^k - 1)^2)`` with ``d = 2^(k-1)``."""
    if k < 3:
        raise ValueError('Thresholds are defined for k >= 3')
    d = 2.0 ** (k - 1)
    return _quadratic_root((d - 1) * (d - 2),
                           5 * d ** (13 / 3) + (2 ** k - 1) ** 2)


def zero_count_lower_bound(k: int, n: int) -> float:
    """Lower bound for the zeros of ``Theta_k`` off ``Delta = 0`` in
    ``F_(2^n)^k``."""
    q = 2.0 ** n
    d = 2.0 ** (k - 1)
    return q ** (k - 2) * (q - (d - 1) * (d - 2) * math.sqrt(q)
                           - (5 * d ** (13 / 3) + (2 ** k - 1) ** 2))


def refined_root_k5() -> float:
    """The ``k = 5`` refined root, found by bisection on ``(0, 40)``."""
    n = Symbol('n')
    expression = 2 ** n - 210 * 2 ** (n / 2) \
        - (5 * Integer(16) ** Rational(13, 3) + 31 ** 2)
    return float(nsolve(expression, n, (0, 40), solver='bisect',
                        verify=False))


class ThresholdRule(Rule):
    """``k in K_n`` for ``k >= 3`` and ``n >= log2(1 + sqrt(21)) / 3 *
    (13k - 19)``."""
    RULE_ID = 'threshold'
    SHORT_NAME = 'Threshold'
    DESCRIPTION = 'n >= (13k - 19) log2(1 + sqrt(21)) / 3 implies k in K_n'
    MIN_K = 3

    @classmethod
    def minimal_n(cls, k: int) -> int:
        return math.ceil(threshold_exact(k).exact_bound)

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        facts = []
        k = self.MIN_K
        while k <= n - 3 and self.minimal_n(k) <= n:
            if k not in store:
                facts.append(self.make_fact(
                    n, k, bound=f'{threshold_exact(k).exact_bound:.3f}'))
            k += 1
        return facts

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        return self.MIN_K <= fact.k <= fact.n - 3 and \
            self.minimal_n(fact.k) <= fact.n


class RefinedThresholdRule(ThresholdRule):
    """``k in K_n`` for ``k >= 4`` and ``n`` above the refined root; for
    ``k = 5`` this gives every ``n >= 20``."""
    RULE_ID = 'threshold-refined'
    SHORT_NAME = 'Refined threshold'
    DESCRIPTION = ('2^n - (d-1)(d-2) 2^(n/2) - (5 d^(13/3) + (2^k-1)^2) > 0, '
                   'd = 2^(k-1), implies k in K_n')
    MIN_K = 4

    @classmethod
    def minimal_n(cls, k: int) -> int:
        # The zero count must be strictly positive.
        return math.floor(refined_threshold(k)) + 1

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        facts = []
        k = self.MIN_K
        while k <= n - 3 and self.minimal_n(k) <= n:
            if k not in store:
                facts.append(self.make_fact(
                    n, k, bound=f'{refined_threshold(k):.4f}'))
            k += 1
        return facts
