import logging
from typing import Dict, Iterable, List

from typing_extensions import override

from sumfree_explorer.fact import Fact, FactStore
from sumfree_explorer.rule import Rule
from sumfree_explorer.zerosum import Witness, WitnessError

logger = logging.getLogger(__name__)


class WitnessImportRule(Rule):
    """``k in K_n`` from a stored zero-sum subspace. Every witness is
    re-verified with all three criteria before it is used; witnesses that
    fail are skipped with a warning."""
    RULE_ID = 'witness'
    SHORT_NAME = 'Witness import'
    DESCRIPTION = 'A verified k-dimensional zero-sum subspace implies k in K_n'

    def __init__(self, witnesses: Iterable[Witness] = ()):
        self.witnesses: Dict[str, Witness] = {}
        for witness in witnesses:
            self.witnesses.setdefault(witness.identifier, witness)

    def _verified(self, witness: Witness) -> bool:
        try:
            witness.verify()
        except WitnessError as err:
            logger.warning('skipping witness: %s', err)
            return False
        return True

    @override
    def derive(self, store: FactStore) -> List[Fact]:
        n = store.n
        facts = []
        for identifier, witness in self.witnesses.items():
            if witness.n != n or witness.k in store or \
                    not 1 <= witness.k <= n - 1:
                continue
            if self._verified(witness):
                facts.append(self.make_fact(n, witness.k, witness=identifier,
                                            modulus=witness.modulus))
        return facts

    @override
    def validate(self, fact: Fact, store: FactStore) -> bool:
        identifier = fact.justification.parameter_dict.get('witness')
        witness = self.witnesses.get(identifier)
        return witness is not None and witness.n == fact.n and \
            witness.k == fact.k and self._verified(witness)
