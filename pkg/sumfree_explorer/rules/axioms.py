from typing import List

from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore, Status
from sumfree_explorer.rule import Rule


class AxiomRule(Rule):
    """Facts that hold for every ``n`` they apply to and need no premise:

    - ``1`` and ``n-1`` are always in ``SF_n``;
    - for odd ``n``, ``2`` and ``n-2`` are in ``SF_n`` (the inverse
      function is APN);
    - ``3``, ``4`` and ``5`` are in ``K_n`` from ``n >= 6``, ``7`` and
      ``8`` respectively, as long as ``3 <= k <= n-3``.
    """
    RULE_ID = 'axiom'
    SHORT_NAME = 'Axioms'
    DESCRIPTION = 'Known memberships that need no premises'
    IS_AXIOM = True

    K_AXIOMS = ((3, 6), (4, 7), (5, 8))
    """Pairs ``(k, smallest n)`` of axiomatic ``K_n`` memberships."""

    @classmethod
    def axioms(cls, n: int) -> List[Fact]:
        facts = [
            cls.make_fact(n, 1, Status.IN_SF, source='first-order'),
            cls.make_fact(n, n - 1, Status.IN_SF, source='hyperplane'),
        ]
        if n % 2 == 1:
            facts.append(cls.make_fact(n, 2, Status.IN_SF, source='apn'))
            facts.append(cls.make_fact(n, n - 2, Status.IN_SF, source='apn'))
        for k, smallest in cls.K_AXIOMS:
            if n >= smallest and 3 <= k <= n - 3:
                facts.append(cls.make_fact(n, k, Status.IN_K,
                                           source=f'order-{k}'))
        return facts

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        return self.axioms(store.n)

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        return any(axiom.k == fact.k and axiom.status is fact.status
                   for axiom in self.axioms(fact.n))
