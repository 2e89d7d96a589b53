from math import gcd
from typing import List

from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore
from sumfree_explorer.rule import Rule


class GcdRule(Rule):
    """``k in K_n`` whenever ``gcd(k, n) > 1``: the subfield
    ``F_{2^d}``, ``d = gcd(k, n)``, yields a zero-sum subspace."""
    RULE_ID = 'gcd'
    SHORT_NAME = 'Common divisor'
    DESCRIPTION = 'gcd(k, n) > 1 implies k in K_n'

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        return [self.make_fact(n, k, divisor=gcd(k, n))
                for k in range(2, n - 1) if gcd(k, n) > 1]

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        divisor = gcd(fact.k, fact.n)
        return divisor > 1 and \
            fact.justification.parameter_dict.get('divisor') == str(divisor)
