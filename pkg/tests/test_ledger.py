import random
from typing import List

import pytest
from rdflib import RDF
from typing_extensions import override

from sumfree_explorer import SUMFREE
from sumfree_explorer.fact import (ContradictionDetected, Fact, FactStore,
                                   Status)
from sumfree_explorer.ledger import (Ledger, default_rules, derive,
                                     sum_closure_range)
from sumfree_explorer.rule import Rule
from sumfree_explorer.rules import (AxiomRule, GcdRule, SumRule,
                                    SymmetryRule, WitnessImportRule)
from sumfree_explorer.zerosum import find_witness


class BrokenRule(Rule):
    RULE_ID = 'broken'
    SHORT_NAME = 'Broken'
    DESCRIPTION = 'Claims the first order is in K_n'

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        return [self.make_fact(store.n, 1)]

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        return False


@pytest.mark.parametrize('n', [17, 19])
def test_all_middle_orders(n):
    ledger = derive(n)
    assert ledger.store.orders(Status.IN_K) == list(range(3, n - 2))
    assert ledger.store.orders(Status.IN_SF) == [1, 2, n - 2, n - 1]
    assert ledger.open_orders == []
    assert ledger.conjecture_confirmed()
    assert ledger.audit() == []


def test_open_orders_remain():
    ledger = derive(49)
    assert 23 in ledger.open_orders
    assert 26 in ledger.open_orders
    assert ledger.status(21) is Status.IN_K
    assert ledger.store.get(21).justification.rule == 'gcd'
    assert not ledger.conjecture_confirmed()
    assert ledger.audit() == []


@pytest.mark.parametrize('n', list(range(4, 31, 2)) + list(range(5, 16, 2)))
def test_conjecture_confirmed_for_small_n(n):
    assert derive(n).conjecture_confirmed()


def test_too_small():
    with pytest.raises(ValueError):
        Ledger(2)


def test_skipped_rule():
    ledger = derive(67)
    assert 'factor' in ledger.skipped
    assert ledger.audit() == []


def test_expected_sf():
    assert Ledger(8).expected_sf() == [1, 7]
    assert Ledger(9).expected_sf() == [1, 2, 7, 8]


def test_explain():
    ledger = derive(17)
    lines = ledger.explain(14).splitlines()
    assert lines[0].startswith('14 in K_17 (symmetry from 3)')
    assert lines[1].startswith('  3 in K_17 (axiom')
    assert derive(49).explain(23) == '23: OPEN'


def test_rows():
    ledger = derive(49)
    rows = ledger.rows()
    assert len(rows) == 48
    assert rows[22] == (49, 23, 'OPEN', '', '')
    assert rows[0] == (49, 1, 'IN_SF', 'axiom', '')


def test_insertion_order():
    ledger = derive(17)
    assert sorted(ledger.order) == list(range(1, 17))
    assert ledger.order.index(3) < ledger.order.index(14)


def test_summary():
    summary = derive(19).summary()
    assert summary['n'] == 19
    assert summary['open'] == []
    assert summary['conjecture_confirmed']
    assert summary['skipped_rules'] == {}
    assert set(summary['facts']) == set(range(1, 19))


def test_to_graph():
    g = derive(11).to_graph()
    assert len(list(g.subjects(RDF.type, SUMFREE.Fact))) == 10


@pytest.mark.parametrize('n', range(17, 41))
def test_sum_closure(n):
    ledger = Ledger(n, rules=[AxiomRule(), SumRule(), SymmetryRule()])
    ledger.derive()
    low, high = sum_closure_range(n)
    for k in list(low) + list(high):
        assert ledger.status(k) is Status.IN_K
    assert ledger.audit() == []


def test_audit_reports_invalid_fact():
    ledger = Ledger(17)
    ledger.store.add(GcdRule.make_fact(17, 3, divisor=1))
    problems = ledger.audit()
    assert len(problems) == 1
    assert 'does not re-validate' in problems[0]


def test_audit_reports_unknown_rule():
    ledger = Ledger(17, rules=[AxiomRule()])
    ledger.store.add(GcdRule.make_fact(17, 4, divisor=1))
    assert ledger.audit() == [
        '4 in K_17 (gcd [divisor=1]): unknown rule'
    ]


def test_contradiction_surfaces():
    ledger = Ledger(9, rules=[AxiomRule(), BrokenRule()])
    with pytest.raises(ContradictionDetected):
        ledger.derive()


def test_witness_facts():
    witness = find_witness(7, 3, seed=1)
    ledger = Ledger(7, rules=[WitnessImportRule([witness])]).derive()
    fact = ledger.store.get(3)
    assert fact.justification.rule == 'witness'
    assert fact.justification.parameter_dict['witness'] == \
        witness.identifier
    assert ledger.audit() == []


def test_witnesses_through_default_rules():
    witness = find_witness(7, 3, seed=1)
    ledger = derive(7, [witness])
    # the axiom comes first, so the witness is not needed
    assert ledger.store.get(3).justification.rule == 'axiom'
    assert ledger.conjecture_confirmed()


@pytest.mark.parametrize('n', [17, 24, 30, 49])
def test_fixed_point_does_not_depend_on_rule_order(n):
    expected = [row[:3] for row in derive(n).rows()]
    rng = random.Random(n)
    for _ in range(5):
        rules = default_rules()
        rng.shuffle(rules)
        ledger = Ledger(n, rules=rules).derive()
        assert [row[:3] for row in ledger.rows()] == expected
        assert ledger.audit() == []
