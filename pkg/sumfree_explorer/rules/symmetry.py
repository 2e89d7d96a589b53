from typing import List

from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore
from sumfree_explorer.rule import Rule


class SymmetryRule(Rule):
    """``k`` and ``n-k`` always share their status."""
    RULE_ID = 'symmetry'
    SHORT_NAME = 'Symmetry'
    DESCRIPTION = 'k in SF_n if and only if n-k in SF_n'

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        return [self.make_fact(n, n - fact.k, fact.status, premises=[fact.k])
                for fact in store if n - fact.k not in store]

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        premises = fact.justification.premises
        return premises == (fact.n - fact.k,) and \
            self.premises_hold(fact, store, fact.status)
