"""Deduction of ``SF_n`` / ``K_n`` memberships from axioms, rules and
imported witnesses, with replayable justification chains."""

import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from rdflib import Graph

from sumfree_explorer.fact import Fact, FactStore, Status
from sumfree_explorer.rdf import bind_common_namespaces
from sumfree_explorer.rule import Rule, SplittingFieldTooLarge
from sumfree_explorer.rules import (AxiomRule, FactorRule, GcdRule,
                                    RefinedThresholdRule, SumRule,
                                    SymmetryRule, ThresholdRule,
                                    WitnessImportRule)
from sumfree_explorer.zerosum import Witness

logger = logging.getLogger(__name__)

MAX_ROUNDS = 1000

ROW_HEADER = ('n', 'k', 'status', 'rule', 'premises')


def default_rules(witnesses: Iterable[Witness] = ()) -> List[Rule]:
    return [
        AxiomRule(),
        GcdRule(),
        SymmetryRule(),
        SumRule(),
        FactorRule(),
        ThresholdRule(),
        RefinedThresholdRule(),
        WitnessImportRule(witnesses),
    ]


class Ledger:
    """All that the rules can establish about one ``n``.

    After :meth:`derive`, every order ``1 <= k <= n-1`` is ``IN_K``,
    ``IN_SF`` or ``OPEN``; ``OPEN`` means that nothing here derives it, not
    that it is unknown in general."""

    def __init__(self, n: int, rules: Optional[Sequence[Rule]] = None,
                 witnesses: Iterable[Witness] = ()):
        if n < 3:
            raise ValueError(f'The ledger needs n >= 3, got {n}')
        self.n = n
        self.rules: List[Rule] = list(rules) if rules is not None \
            else default_rules(witnesses)
        self.store = FactStore(n)
        self.order: List[int] = []
        """Orders in the sequence their facts were inserted."""
        self.skipped: Dict[str, str] = {}
        """Rules that hit a computational limit, with the reason."""
        self._rules_by_id = {rule.RULE_ID: rule for rule in self.rules}

    def _record(self, facts: List[Fact]) -> List[Fact]:
        for fact in facts:
            self.order.append(fact.k)
            logger.debug('%s', fact)
        return facts

    def seed_axioms(self) -> List[Fact]:
        added: List[Fact] = []
        for rule in self.rules:
            if rule.IS_AXIOM and rule.applies_to(self.n):
                added += self._record(rule.apply(self.store))
        return added

    def derive(self) -> 'Ledger':
        """Run the axioms and then every rule until none adds a fact."""
        self.seed_axioms()
        for round_number in range(1, MAX_ROUNDS + 1):
            added = 0
            for rule in self.rules:
                if rule.IS_AXIOM or rule.RULE_ID in self.skipped:
                    continue
                try:
                    added += len(self._record(rule.apply(self.store)))
                except SplittingFieldTooLarge as err:
                    logger.warning('rule %s skipped for n=%d: %s',
                                   rule.RULE_ID, self.n, err)
                    self.skipped[rule.RULE_ID] = str(err)
            logger.debug('round %d: %d new facts', round_number, added)
            if not added:
                break
        logger.info('n=%d: %d in K, %d in SF, %d open', self.n,
                    len(self.store.orders(Status.IN_K)),
                    len(self.store.orders(Status.IN_SF)),
                    len(self.open_orders))
        return self

    def audit(self) -> List[str]:
        """Replay every justification. Returns a list of problems; an empty
        list means every fact re-validates and only depends on facts that
        were recorded before it."""
        problems = []
        position = {k: i for i, k in enumerate(self.order)}
        for fact in self.store:
            rule = self._rules_by_id.get(fact.justification.rule)
            if rule is None:
                problems.append(f'{fact}: unknown rule')
                continue
            if not rule.validate(fact, self.store):
                problems.append(f'{fact}: does not re-validate')
            for premise in fact.justification.premises:
                if premise not in self.store:
                    problems.append(f'{fact}: premise {premise} missing')
                elif position[premise] >= position[fact.k]:
                    problems.append(f'{fact}: premise {premise} recorded '
                                    f'later')
        return problems

    def status(self, k: int) -> Status:
        return self.store.status(k)

    @property
    def open_orders(self) -> List[int]:
        return self.store.orders(Status.OPEN)

    def rows(self) -> List[Tuple[int, int, str, str, str]]:
        rows = []
        for k in range(1, self.n):
            fact = self.store.get(k)
            rows.append(fact.to_row() if fact is not None
                        else (self.n, k, Status.OPEN.value, '', ''))
        return rows

    def explain(self, k: int, depth: int = 0) -> str:
        """The justification tree of order ``k`` as indented text."""
        fact = self.store.get(k)
        indent = '  ' * depth
        if fact is None:
            return f'{indent}{k}: OPEN'
        lines = [f'{indent}{fact}']
        for premise in fact.justification.premises:
            lines.append(self.explain(premise, depth + 1))
        return '\n'.join(lines)

    def expected_sf(self) -> List[int]:
        if self.n % 2 == 0:
            return [1, self.n - 1]
        return sorted({1, 2, self.n - 2, self.n - 1})

    def conjecture_confirmed(self) -> bool:
        """Whether the derived facts settle ``SF_n`` to be exactly
        ``{1, n-1}`` (even ``n``) or ``{1, 2, n-2, n-1}`` (odd ``n``)."""
        expected = self.expected_sf()
        return all(self.status(k) is (Status.IN_SF if k in expected
                                      else Status.IN_K)
                   for k in range(1, self.n))

    def summary(self) -> dict:
        return {
            'n': self.n,
            'in_k': self.store.orders(Status.IN_K),
            'in_sf': self.store.orders(Status.IN_SF),
            'open': self.open_orders,
            'conjecture_confirmed': self.conjecture_confirmed(),
            'skipped_rules': dict(self.skipped),
            'facts': {fact.k: str(fact.justification)
                      for fact in self.store},
        }

    def to_graph(self) -> Graph:
        g = self.store.to_graph()
        bind_common_namespaces(g)
        return g


def derive(n: int, witnesses: Iterable[Witness] = ()) -> Ledger:
    return Ledger(n, witnesses=witnesses).derive()


def sum_closure_range(n: int) -> Tuple[range, range]:
    """The orders the sum rule and symmetry reach from the axioms
    ``{3, 4, 5}`` alone: ``3..ceil(n/3)+2`` and ``floor(2n/3)-2..n-3``."""
    low = range(3, math.ceil(n / 3) + 3)
    high = range(2 * n // 3 - 2, n - 2)
    return low, high
