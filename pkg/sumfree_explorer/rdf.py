"""RDF-related common functionality."""

from rdflib import RDF, RDFS, Graph, URIRef
from rdflib.namespace import Namespace

SUMFREE = Namespace('urn:sumfree:vocab:')
"""Vocabulary for ledger facts and their justifications."""

FACT_PREFIX = 'urn:sumfree:fact:'
RULE_PREFIX = 'urn:sumfree:rule:'


def fact_iri(n: int, k: int) -> URIRef:
    return URIRef(f'{FACT_PREFIX}{n}:{k}')


def rule_iri(rule_id: str) -> URIRef:
    return URIRef(f'{RULE_PREFIX}{rule_id}')


def bind_common_namespaces(graph: Graph) -> None:
    """Bind the RDF namespaces that are in use across this package to the
    specified graph.

    These are: RDF, RDFS, SUMFREE."""

    graph.bind("rdf", RDF)
    graph.bind("rdfs", RDFS)
    graph.bind("sumfree", SUMFREE)
