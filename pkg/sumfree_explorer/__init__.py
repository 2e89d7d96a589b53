__all__ = [
    'LimitExceeded',
    'Fe', 'FieldSpec', 'FieldError', 'ZeroInverse', 'NoModulusFound',
    'ReducibleModulus', 'default_modulus', 'is_irreducible',
    'FieldTables',
    'BitMatrix', 'Subspace', 'Overflow', 'rref', 'canonicalize',
    'enumerate_subspaces', 'gaussian_binomial', 'gl2_order', 'elements',
    'MPoly', 'Partition2Adic', 'PolyError', 'NotDivisible', 'ArityMismatch',
    'lambda_set', 'theta_sym', 'moore_sym', 'moore1_sym', 'fk_sym',
    'exact_div', 'eval_sym',
    'DependentBasis', 'delta_eval', 'delta1_eval', 'fk_eval', 'theta_eval',
    'LinPoly', 'annihilator', 'image', 'trace_dual', 'gamma', 'gamma_inv',
    'matrix_criterion', 'gamma_coords',
    'Witness', 'WitnessError', 'WitnessStore', 'CensusResult',
    'CriteriaReport', 'Selector', 'inverse_sum', 'is_zero_sum',
    'check_all_criteria', 'zk_count', 'census', 'find_witness', 'sf_table',
    'SUMFREE', 'bind_common_namespaces',
    'Status', 'Justification', 'Fact', 'FactStore', 'FactError',
    'ContradictionDetected',
    'Rule', 'RuleError', 'SplittingFieldTooLarge',
    'Ledger', 'derive',
]

# Define here to avoid circular imports
# ruff: noqa


class LimitExceeded(Exception):
    """A documented cap (degree, dimension, work budget) would be exceeded.
    Caps are never applied by silent truncation."""
    pass


from .gf2n import (
    Fe, FieldSpec, FieldError, ZeroInverse, NoModulusFound, ReducibleModulus,
    default_modulus, is_irreducible
)
from .tables import FieldTables
from .bitlinalg import (
    BitMatrix, Subspace, Overflow, rref, canonicalize, enumerate_subspaces,
    gaussian_binomial, gl2_order, elements
)
from .sympoly import (
    MPoly, Partition2Adic, PolyError, NotDivisible, ArityMismatch,
    lambda_set, theta_sym, moore_sym, moore1_sym, fk_sym, exact_div, eval_sym
)
from .pointeval import (
    DependentBasis, delta_eval, delta1_eval, fk_eval, theta_eval
)
from .subcalc import (
    LinPoly, annihilator, image, trace_dual, gamma, gamma_inv,
    matrix_criterion, gamma_coords
)
from .zerosum import (
    Witness, WitnessError, WitnessStore, CensusResult, CriteriaReport,
    Selector, inverse_sum, is_zero_sum, check_all_criteria, zk_count, census,
    find_witness, sf_table
)
from .rdf import SUMFREE, bind_common_namespaces
from .fact import (
    Status, Justification, Fact, FactStore, FactError, ContradictionDetected
)
from .rule import Rule, RuleError, SplittingFieldTooLarge
from .ledger import Ledger, derive
