from typing import List

from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore, Status
from sumfree_explorer.rule import Rule


class SumRule(Rule):
    """If ``k, l in K_n`` and ``kl < n`` then ``k + l in K_n``."""
    RULE_ID = 'sum'
    SHORT_NAME = 'Sum'
    DESCRIPTION = 'k, l in K_n and kl < n imply k+l in K_n'

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        known = store.orders(Status.IN_K)
        facts = []
        for i, k in enumerate(known):
            for l in known[i:]:
                if k * l >= n:
                    break
                if k + l <= n - 1 and k + l not in store:
                    facts.append(self.make_fact(n, k + l, premises=[k, l]))
        return facts

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        premises = fact.justification.premises
        if len(premises) != 2:
            return False
        k, l = premises
        return k + l == fact.k and k * l < fact.n and \
            self.premises_hold(fact, store)
