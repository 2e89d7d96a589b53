"""Log/antilog tables for vectorized arithmetic over small binary fields.

The logarithm of zero is mapped to a sentinel (``2(q-1)``) and the
antilog table is padded with zeros past ``2(q-1)``, so a product can be
read as ``exp[log[a] + log[b]]`` without masking out zero operands.
"""

import logging
from typing import Dict, Union

import numpy as np
from sympy import primefactors

from sumfree_explorer import LimitExceeded
from sumfree_explorer.gf2n import FieldSpec

logger = logging.getLogger(__name__)

TABLE_MAX_DEGREE = 22

ArrayLike = Union[int, np.integer, np.ndarray]


class FieldTables:
    """Lookup tables for one :class:`FieldSpec`. Obtain them through
    ``field.tables`` so that they are built only once per field."""

    def __init__(self, field: FieldSpec):
        if field.n > TABLE_MAX_DEGREE:
            raise LimitExceeded(
                f'Lookup tables are only built for n <= {TABLE_MAX_DEGREE}'
            )
        self.field = field
        self.group_order = field.order - 1
        self.generator = self._find_generator()
        powers = self._generator_powers()
        q1 = self.group_order
        self.zero_log = 2 * q1
        self.log = np.empty(field.order, dtype=np.int64)
        self.log[powers] = np.arange(q1, dtype=np.int64)
        self.log[0] = self.zero_log
        self.exp = np.zeros(4 * q1 + 1, dtype=np.int64)
        self.exp[:q1] = powers
        self.exp[q1:2 * q1] = powers
        self.inverse = np.zeros(field.order, dtype=np.int64)
        self.inverse[powers] = powers[(q1 - np.arange(q1)) % q1]
        self._frobenius: Dict[int, np.ndarray] = {}
        logger.debug('built tables for %s with generator %#x',
                     field, self.generator)

    def _find_generator(self) -> int:
        q1 = self.group_order
        if q1 == 1:
            return 1
        primes = primefactors(q1)
        for g in range(2, self.field.order):
            if all(self.field.pow(g, q1 // p) != 1 for p in primes):
                return g
        raise AssertionError('multiplicative group has no generator')

    def _mul_const(self, values: np.ndarray, c: int) -> np.ndarray:
        n = self.field.n
        acc = np.zeros_like(values)
        for j in range(n):
            if c >> j & 1:
                acc ^= values << j
        for b in range(2 * n - 2, n - 1, -1):
            hit = (acc >> b) & 1
            acc ^= hit * (self.field.modulus << (b - n))
        return acc

    def _generator_powers(self) -> np.ndarray:
        # Doubling: g^(m..2m-1) = g^m * g^(0..m-1).
        powers = np.ones(1, dtype=np.int64)
        while len(powers) < self.group_order:
            step = self.field.pow(self.generator, len(powers))
            powers = np.concatenate([powers, self._mul_const(powers, step)])
        return powers[:self.group_order]

    def mul(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: ArrayLike) -> ArrayLike:
        """Inverse with ``inv(0) = 0``."""
        return self.inverse[a]

    def frobenius(self, i: int) -> np.ndarray:
        """The table of ``x -> x^(2^i)``."""
        i %= self.field.n
        if i not in self._frobenius:
            exponent = pow(2, i, self.group_order) if self.group_order > 1 \
                else 0
            table = self.exp[(np.arange(self.group_order, dtype=np.int64)
                              * exponent) % self.group_order]
            full = np.zeros(self.field.order, dtype=np.int64)
            full[self.exp[:self.group_order]] = table
            self._frobenius[i] = full
        return self._frobenius[i]

    def frob(self, a: ArrayLike, i: int) -> ArrayLike:
        return self.frobenius(i)[a]

    def power(self, a: ArrayLike, e: int) -> ArrayLike:
        if e == 0:
            return np.ones_like(np.asarray(a))
        logs = self.log[a]
        result = self.exp[(logs * (e % self.group_order)) % self.group_order]
        return np.where(logs == self.zero_log, 0, result)
