'''This package contains concrete subclasses of ``Rule``.'''

__all__ = [
    "AxiomRule",
    "GcdRule",
    "SymmetryRule",
    "SumRule",
    "FactorRule",
    "ThresholdRule",
    "RefinedThresholdRule",
    "WitnessImportRule",
    "ALL_RULES",
]

from sumfree_explorer.rule import Rule

from .axioms import AxiomRule
from .gcd import GcdRule
from .symmetry import SymmetryRule
from .sumrule import SumRule
from .factor import FactorRule
from .threshold import ThresholdRule, RefinedThresholdRule
from .witness import WitnessImportRule

import sys
from typing import List, Type


def _get_all_rules() -> List[Type[Rule]]:
    """Create a list of all rule classes included in this package."""
    all_names = __all__.copy()
    all_names.pop()  # Remove "ALL_RULES" itself
    all_rules: List[Type[Rule]] = []
    for name in all_names:
        cls = getattr(sys.modules[__name__], name, None)
        if cls is not None:
            all_rules.append(cls)
    return all_rules

ALL_RULES = _get_all_rules()
