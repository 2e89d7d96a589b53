"""Ledger facts ``k in K_n`` / ``k in SF_n`` and the store that holds them."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from rdflib import RDF, Graph, Literal
from rdflib.term import Node

from sumfree_explorer.rdf import (SUMFREE, bind_common_namespaces, fact_iri,
                                  rule_iri)


class FactError(Exception):
    pass


class ContradictionDetected(FactError):
    """Both statuses were derived for one order. This always points at a
    bug in a rule, never at a mathematical finding."""
    pass


class Status(str, Enum):
    IN_K = 'IN_K'
    IN_SF = 'IN_SF'
    OPEN = 'OPEN'

    def opposite(self) -> 'Status':
        if self is Status.IN_K:
            return Status.IN_SF
        if self is Status.IN_SF:
            return Status.IN_K
        return Status.OPEN


@dataclass(frozen=True)
class Justification:
    """Why a fact holds: the rule that produced it, the orders ``k`` of the
    premise facts (same ``n``) and rule parameters such as the factor
    polynomial, the witness id or the threshold value."""
    rule: str
    premises: Tuple[int, ...] = ()
    parameters: Tuple[Tuple[str, str], ...] = ()

    @property
    def parameter_dict(self) -> Dict[str, str]:
        return dict(self.parameters)

    def __str__(self) -> str:
        text = self.rule
        if self.premises:
            text += ' from ' + ', '.join(str(k) for k in self.premises)
        if self.parameters:
            text += ' [' + ', '.join(f'{key}={value}'
                                     for key, value in self.parameters) + ']'
        return text


@dataclass(frozen=True)
class Fact:
    n: int
    k: int
    status: Status
    justification: Justification

    @property
    def subject_node(self) -> Node:
        return fact_iri(self.n, self.k)

    def to_graph(self) -> Graph:
        '''Return an RDF graph for this fact.'''
        g = Graph()
        subject = self.subject_node
        g.add((subject, RDF.type, SUMFREE.Fact))
        g.add((subject, SUMFREE.n, Literal(self.n)))
        g.add((subject, SUMFREE.k, Literal(self.k)))
        g.add((subject, SUMFREE.status, Literal(self.status.value)))
        g.add((subject, SUMFREE.derivedBy,
               rule_iri(self.justification.rule)))
        for premise in self.justification.premises:
            g.add((subject, SUMFREE.premise, fact_iri(self.n, premise)))
        for key, value in self.justification.parameters:
            g.add((subject, SUMFREE[key], Literal(value)))
        bind_common_namespaces(g)
        return g

    def to_row(self) -> Tuple[int, int, str, str, str]:
        return (self.n, self.k, self.status.value, self.justification.rule,
                ' '.join(str(k) for k in self.justification.premises))

    def __str__(self) -> str:
        symbol = 'K' if self.status is Status.IN_K else 'SF'
        return f'{self.k} in {symbol}_{self.n} ({self.justification})'


@dataclass
class FactStore:
    """All derived facts for one ``n``. An order without a fact is OPEN.
    Single writer: rules add facts one at a time through ``add``."""
    n: int
    facts: Dict[int, Fact] = field(default_factory=dict)

    def add(self, fact: Fact) -> bool:
        """Insert a fact. Returns ``False`` if the order already has the
        same status (the first justification is kept)."""
        if fact.n != self.n:
            raise FactError(f'Fact for n={fact.n} added to store for '
                            f'n={self.n}')
        if not 1 <= fact.k <= self.n - 1:
            raise FactError(f'Order {fact.k} outside 1..{self.n - 1}')
        if fact.status is Status.OPEN:
            raise FactError('OPEN is the absence of a fact, not a fact')
        existing = self.facts.get(fact.k)
        if existing is not None:
            if existing.status is not fact.status:
                raise ContradictionDetected(
                    f'{fact} contradicts {existing}'
                )
            return False
        self.facts[fact.k] = fact
        return True

    def status(self, k: int) -> Status:
        existing = self.facts.get(k)
        return existing.status if existing else Status.OPEN

    def get(self, k: int) -> Optional[Fact]:
        return self.facts.get(k)

    def orders(self, status: Status) -> List[int]:
        if status is Status.OPEN:
            return [k for k in range(1, self.n) if k not in self.facts]
        return sorted(k for k, fact in self.facts.items()
                      if fact.status is status)

    def __contains__(self, k: int) -> bool:
        return k in self.facts

    def __iter__(self) -> Iterator[Fact]:
        return iter(sorted(self.facts.values(), key=lambda fact: fact.k))

    def __len__(self) -> int:
        return len(self.facts)

    def to_graph(self) -> Graph:
        g = Graph()
        for fact in self:
            g += fact.to_graph()
        bind_common_namespaces(g)
        return g
