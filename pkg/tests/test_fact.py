import pytest
from rdflib import RDF, Literal, URIRef

from sumfree_explorer import SUMFREE
from sumfree_explorer.fact import (ContradictionDetected, Fact, FactError,
                                   FactStore, Justification, Status)
from sumfree_explorer.rdf import fact_iri, rule_iri


def make(n, k, status=Status.IN_K, rule='test', premises=(), **parameters):
    return Fact(n, k, status, Justification(
        rule, tuple(premises), tuple(parameters.items())))


@pytest.fixture
def store():
    return FactStore(9)


def test_add_and_status(store):
    assert store.add(make(9, 3))
    assert store.status(3) is Status.IN_K
    assert store.status(4) is Status.OPEN
    assert 3 in store
    assert len(store) == 1


def test_first_justification_wins(store):
    store.add(make(9, 3, rule='first'))
    assert not store.add(make(9, 3, rule='second'))
    assert store.get(3).justification.rule == 'first'


def test_contradiction(store):
    store.add(make(9, 3))
    with pytest.raises(ContradictionDetected):
        store.add(make(9, 3, Status.IN_SF))
    assert issubclass(ContradictionDetected, FactError)


def test_invalid_facts(store):
    with pytest.raises(FactError):
        store.add(make(10, 3))
    with pytest.raises(FactError):
        store.add(make(9, 9))
    with pytest.raises(FactError):
        store.add(make(9, 0))
    with pytest.raises(FactError):
        store.add(make(9, 3, Status.OPEN))


def test_orders(store):
    store.add(make(9, 1, Status.IN_SF))
    store.add(make(9, 6))
    store.add(make(9, 3))
    assert store.orders(Status.IN_K) == [3, 6]
    assert store.orders(Status.IN_SF) == [1]
    assert store.orders(Status.OPEN) == [2, 4, 5, 7, 8]
    assert [fact.k for fact in store] == [1, 3, 6]


def test_opposite():
    assert Status.IN_K.opposite() is Status.IN_SF
    assert Status.IN_SF.opposite() is Status.IN_K
    assert Status.OPEN.opposite() is Status.OPEN


def test_justification_str():
    justification = Justification('sum', (3, 4), (('note', 'x'),))
    assert str(justification) == 'sum from 3, 4 [note=x]'
    assert justification.parameter_dict == {'note': 'x'}


def test_fact_str_and_row():
    fact = make(9, 7, rule='sum', premises=(3, 4))
    assert str(fact) == '7 in K_9 (sum from 3, 4)'
    assert fact.to_row() == (9, 7, 'IN_K', 'sum', '3 4')
    assert str(make(9, 1, Status.IN_SF, rule='axiom')) == \
        '1 in SF_9 (axiom)'


def test_iris():
    assert fact_iri(9, 3) == URIRef('urn:sumfree:fact:9:3')
    assert rule_iri('gcd') == URIRef('urn:sumfree:rule:gcd')


def test_fact_to_graph():
    fact = make(9, 7, rule='sum', premises=(3, 4), note='x')
    g = fact.to_graph()
    subject = fact_iri(9, 7)
    assert (subject, RDF.type, SUMFREE.Fact) in g
    assert (subject, SUMFREE.status, Literal('IN_K')) in g
    assert (subject, SUMFREE.derivedBy, rule_iri('sum')) in g
    assert (subject, SUMFREE.premise, fact_iri(9, 3)) in g
    assert (subject, SUMFREE.premise, fact_iri(9, 4)) in g
    assert (subject, SUMFREE.note, Literal('x')) in g


def test_store_to_graph(store):
    store.add(make(9, 3))
    store.add(make(9, 6, premises=(3,)))
    g = store.to_graph()
    assert len(list(g.subjects(RDF.type, SUMFREE.Fact))) == 2
    assert 'urn:sumfree:fact:9:6' in g.serialize(format='turtle')
