import logging
from typing import Type

import pytest

from sumfree_explorer.fact import FactStore, Status
from sumfree_explorer.rule import Rule, SplittingFieldTooLarge
from sumfree_explorer.rules import (ALL_RULES, AxiomRule, FactorRule,
                                    GcdRule, RefinedThresholdRule, SumRule,
                                    SymmetryRule, ThresholdRule,
                                    WitnessImportRule)
from sumfree_explorer.rules.factor import (cyclotomic_cosets,
                                           factor_x_n_minus_1,
                                           x_coefficient_free_divisors)
from sumfree_explorer.rules.threshold import (refined_root_k5,
                                              refined_threshold,
                                              threshold_exact,
                                              zero_count_lower_bound)
from sumfree_explorer.gf2n import clmul
from sumfree_explorer.zerosum import Witness, find_witness


@pytest.mark.parametrize("rulecls", ALL_RULES)
def test_instantiate(rulecls: Type[Rule]):
    # All abstract methods should be overridden and the attributes set
    rule = rulecls()
    assert rule.RULE_ID
    assert rule.SHORT_NAME
    assert rule.DESCRIPTION


def test_rule_ids_are_unique():
    ids = [rulecls.RULE_ID for rulecls in ALL_RULES]
    assert len(ids) == len(set(ids)) == 8


@pytest.mark.parametrize("rulecls", ALL_RULES)
def test_derived_facts_validate(rulecls: Type[Rule]):
    # Every fact a rule proposes on top of the axioms re-validates
    for n in (9, 15, 23, 40):
        store = FactStore(n)
        AxiomRule().apply(store)
        rule = rulecls()
        if not rule.applies_to(n):
            continue
        for fact in rule.apply(store):
            assert fact.justification.rule == rule.RULE_ID
            assert rule.validate(fact, store)


def test_axioms_odd():
    store = FactStore(9)
    AxiomRule().apply(store)
    assert store.orders(Status.IN_SF) == [1, 2, 7, 8]
    assert store.orders(Status.IN_K) == [3, 4, 5]


def test_axioms_even():
    store = FactStore(6)
    AxiomRule().apply(store)
    assert store.orders(Status.IN_SF) == [1, 5]
    assert store.orders(Status.IN_K) == [3]


def test_axioms_small_n():
    store = FactStore(7)
    AxiomRule().apply(store)
    # 5 needs n >= 8, 4 is n-3
    assert store.orders(Status.IN_K) == [3, 4]


def test_gcd():
    store = FactStore(12)
    GcdRule().apply(store)
    assert store.orders(Status.IN_K) == [2, 3, 4, 6, 8, 9, 10]
    fact = store.get(9)
    assert fact.justification.parameter_dict == {'divisor': '3'}


def test_gcd_validate_checks_divisor():
    rule = GcdRule()
    assert not rule.validate(GcdRule.make_fact(12, 9, divisor=2),
                             FactStore(12))
    assert not rule.validate(GcdRule.make_fact(11, 3, divisor=1),
                             FactStore(11))


def test_symmetry():
    store = FactStore(11)
    store.add(SumRule.make_fact(11, 3))
    SymmetryRule().apply(store)
    fact = store.get(8)
    assert fact.status is Status.IN_K
    assert fact.justification.premises == (3,)
    assert SymmetryRule().validate(fact, store)


def test_symmetry_keeps_sf():
    store = FactStore(11)
    AxiomRule().apply(store)
    SymmetryRule().apply(store)
    assert store.status(10) is Status.IN_SF


def test_sum():
    store = FactStore(30)
    store.add(AxiomRule.make_fact(30, 3))
    store.add(AxiomRule.make_fact(30, 4))
    facts = SumRule().apply(store)
    # 3+3, 3+4 and 4+4; 4 * 4 < 30
    assert sorted(fact.k for fact in facts) == [6, 7, 8]
    assert store.get(7).justification.premises == (3, 4)


def test_sum_needs_small_product():
    store = FactStore(12)
    store.add(AxiomRule.make_fact(12, 4))
    assert SumRule().apply(store) == []
    rule = SumRule()
    assert not rule.validate(SumRule.make_fact(12, 8, premises=[4, 4]),
                             store)


def test_cyclotomic_cosets():
    assert cyclotomic_cosets(7) == [[0], [1, 2, 4], [3, 6, 5]]
    assert sum(len(c) for c in cyclotomic_cosets(21)) == 21


@pytest.mark.parametrize('n', [3, 7, 9, 15, 21, 23, 31])
def test_factorization_multiplies_out(n):
    product = 1
    for factor in factor_x_n_minus_1(n):
        product = clmul(product, factor)
    assert product == (1 << n) | 1


def test_factorization_of_7():
    assert sorted(factor_x_n_minus_1(7)) == [0b11, 0b1011, 0b1101]


def test_factorization_needs_odd_n():
    with pytest.raises(ValueError):
        factor_x_n_minus_1(8)


def test_factorization_limit():
    # 2 has order 66 modulo 67
    with pytest.raises(SplittingFieldTooLarge):
        factor_x_n_minus_1(67)


def test_x_coefficient_free_divisors():
    assert x_coefficient_free_divisors(7) == {3: 0xd, 4: 0x1d, 7: 0x81}


def test_factor_rule():
    store = FactStore(23)
    facts = FactorRule().apply(store)
    assert [fact.k for fact in facts] == [11, 12]
    assert FactorRule().validate(store.get(11), store)
    assert not FactorRule().applies_to(24)


def test_factor_rule_rejects_bad_factor():
    rule = FactorRule()
    store = FactStore(7)
    # X^3 + X + 1 divides X^7 - 1 but has an X term
    assert not rule.validate(FactorRule.make_fact(7, 3, factor='b'), store)
    assert not rule.validate(FactorRule.make_fact(7, 3), store)
    assert rule.validate(FactorRule.make_fact(7, 3, factor='d'), store)


def test_threshold_values():
    report = threshold_exact(5)
    assert report.exact_bound == pytest.approx(38.041, abs=1e-3)
    assert report.simplified_bound == pytest.approx(38.3)
    assert report.simplified_bound >= report.exact_bound
    assert report.quadratic_root_bound <= report.exact_bound + 1
    assert report.to_dict()['k'] == 5
    with pytest.raises(ValueError):
        threshold_exact(2)


@pytest.mark.parametrize('k', range(3, 65))
def test_simplified_bound_dominates(k):
    report = threshold_exact(k)
    assert report.simplified_bound >= report.exact_bound


def test_refined_root():
    assert refined_root_k5() == pytest.approx(19.9894, abs=1e-3)
    assert refined_threshold(5) == pytest.approx(refined_root_k5(), abs=1e-6)


def test_zero_count_lower_bound_sign():
    assert zero_count_lower_bound(5, 19) < 0
    assert zero_count_lower_bound(5, 20) > 0
    assert zero_count_lower_bound(4, 16) > 0
    assert zero_count_lower_bound(4, 15) < 0


def test_threshold_rule():
    store = FactStore(40)
    assert [fact.k for fact in ThresholdRule().apply(store)] == [3, 4, 5]
    assert ThresholdRule.minimal_n(3) == 17


def test_refined_threshold_rule():
    assert RefinedThresholdRule.minimal_n(4) == 16
    assert RefinedThresholdRule.minimal_n(5) == 20
    store = FactStore(20)
    assert [fact.k for fact in RefinedThresholdRule().apply(store)] == \
        [4, 5]
    assert not RefinedThresholdRule().validate(
        RefinedThresholdRule.make_fact(19, 5), FactStore(19))


@pytest.fixture(scope='module')
def witness73() -> Witness:
    return find_witness(7, 3, seed=1)


def test_witness_import(witness73):
    rule = WitnessImportRule([witness73])
    store = FactStore(7)
    facts = rule.apply(store)
    assert [fact.k for fact in facts] == [3]
    parameters = facts[0].justification.parameter_dict
    assert parameters['witness'] == witness73.identifier
    assert rule.validate(facts[0], store)
    # witnesses for other fields are ignored
    assert rule.apply(FactStore(9)) == []


def test_witness_import_skips_failing_witness(witness73, caplog):
    data = witness73.to_dict()
    data['basis'] = ['1', '2', '3']
    rule = WitnessImportRule([Witness.from_dict(data)])
    with caplog.at_level(logging.WARNING):
        assert rule.apply(FactStore(7)) == []
    assert 'skipping witness' in caplog.text
