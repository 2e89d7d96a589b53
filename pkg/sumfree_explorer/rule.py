"""Base rule class and strongly related functionality."""

from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

from sumfree_explorer import LimitExceeded
from sumfree_explorer.fact import Fact, FactStore, Justification, Status


class RuleError(Exception):
    pass


class SplittingFieldTooLarge(RuleError, LimitExceeded):
    pass


class Rule(ABC):
    """Base rule class (abstract).

    A rule looks at the facts already known for one ``n`` and proposes new
    ones. The ledger calls ``apply()`` repeatedly, for every rule, until no
    rule adds anything; ``validate()`` re-checks a recorded fact
    independently of how it was found and is used by the soundness audit.

    To create a concrete rule, make a subclass that implements ``derive()``
    and ``validate()`` and set the ``RULE_ID`` attribute. Rules that hold
    only for some ``n`` override ``applies_to()``.
    """
    RULE_ID: Optional[str] = None
    """Identifier stored in every justification this rule produces."""
    SHORT_NAME: Optional[str] = None
    """Short name of the rule, to be used in user interfaces."""
    DESCRIPTION: Optional[str] = None
    """The statement behind the rule, to be used in user interfaces."""
    IS_AXIOM = False
    """True if the rule's facts have no premises and hold unconditionally
    for the ``n`` in question."""

    def applies_to(self, n: int) -> bool:
        """Whether the rule can say anything about ``n`` at all."""
        return n >= 3

    @abstractmethod
    def derive(self, store: FactStore) -> List[Fact]:
        """Return the facts this rule can derive from ``store`` in one
        pass. Facts whose order already has the same status may be
        returned as well; the store ignores them."""
        pass

    @abstractmethod
    def validate(self, fact: Fact, store: FactStore) -> bool:
        """Re-check the side conditions of a fact produced by this rule
        and the presence of its premises in ``store``."""
        pass

    def apply(self, store: FactStore) -> List[Fact]:
        """Add everything ``derive()`` finds to ``store``; return the facts
        that were new."""
        if not self.applies_to(store.n):
            return []
        return [fact for fact in self.derive(store) if store.add(fact)]

    @classmethod
    def make_fact(cls, n: int, k: int, status: Status = Status.IN_K,
                  premises: Sequence[int] = (), **parameters) -> Fact:
        return Fact(n, k, status, Justification(
            rule=cls.RULE_ID,
            premises=tuple(premises),
            parameters=tuple((key, str(value))
                             for key, value in parameters.items()),
        ))

    @staticmethod
    def premises_hold(fact: Fact, store: FactStore,
                      status: Status = Status.IN_K) -> bool:
        return all(store.status(k) is status
                   for k in fact.justification.premises)
