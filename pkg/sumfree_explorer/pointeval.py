"""Point evaluation of the Moore determinants, ``F_k`` and ``Theta_k``
over ``F_{2^n}`` without symbolic expansion.

Scalar functions take a sequence of ``Fe`` values. The ``*_batch``
functions take ``k`` coordinate columns (numpy arrays or scalars that
broadcast together) and evaluate through :class:`FieldTables`; they are
what censuses and sweeps use.
"""

from itertools import product
from typing import Dict, List, Sequence

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from sumfree_explorer import LimitExceeded
from sumfree_explorer.gf2n import Fe, FieldSpec
from sumfree_explorer.sympoly import (MPoly, lambda_set, moore1_row_exponents,
                                      moore_row_exponents)
from sumfree_explorer.tables import FieldTables

THETA_EVAL_MAX_K = 11


class DependentBasis(Exception):
    """The points are ``F_2``-linearly dependent (``Delta = 0``)."""
    pass


def field_det(matrix: List[List[Fe]], f: FieldSpec) -> Fe:
    """Determinant over the field by Gaussian elimination. Row swaps need
    no sign in characteristic 2."""
    rows = [list(row) for row in matrix]
    size = len(rows)
    det = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col]), None)
        if pivot is None:
            return 0
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        det = f.mul(det, lead)
        lead_inv = f.inv(lead)
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = f.mul(rows[r][col], lead_inv)
                rows[r] = [x ^ f.mul(factor, y)
                           for x, y in zip(rows[r], rows[col])]
    return det


def _frobenius_rows(points: Sequence[Fe], logs: Sequence[int],
                    f: FieldSpec) -> List[List[Fe]]:
    top = max(logs, default=0)
    columns = []
    for u in points:
        powers = [u]
        for _ in range(top):
            powers.append(f.square(powers[-1]))
        columns.append(powers)
    return [[column[t] for column in columns] for t in logs]


def _log2_rows(exponents: Sequence[int]) -> List[int]:
    return [e.bit_length() - 1 for e in exponents]


def moore_matrix(points: Sequence[Fe], f: FieldSpec) -> List[List[Fe]]:
    """Entry ``(i, j)`` is ``u_j^(2^i)``."""
    return _frobenius_rows(points, range(len(points)), f)


def _check_points(points: Sequence[Fe], f: FieldSpec) -> None:
    if not 1 <= len(points) <= f.n:
        raise ValueError(
            f'Expected between 1 and {f.n} points, got {len(points)}'
        )


def delta_eval(points: Sequence[Fe], f: FieldSpec) -> Fe:
    _check_points(points, f)
    return field_det(moore_matrix(points, f), f)


def delta1_eval(points: Sequence[Fe], f: FieldSpec) -> Fe:
    _check_points(points, f)
    logs = _log2_rows(moore1_row_exponents(len(points)))
    return field_det(_frobenius_rows(points, logs, f), f)


def fk_eval(points: Sequence[Fe], f: FieldSpec) -> Fe:
    """``Delta_1 / Delta`` at a basis; raises :class:`DependentBasis`
    where ``Delta`` vanishes."""
    delta = delta_eval(points, f)
    if delta == 0:
        raise DependentBasis('F_k is only evaluated at independent points')
    return f.mul(delta1_eval(points, f), f.inv(delta))


def moore_product(points: Sequence[Fe], f: FieldSpec) -> Fe:
    """``Delta`` as the product of all nonzero ``F_2``-combinations of the
    points."""
    result = 1
    for coefficients in product((0, 1), repeat=len(points)):
        if not any(coefficients):
            continue
        combination = 0
        for bit, u in zip(coefficients, points):
            if bit:
                combination ^= u
        result = f.mul(result, combination)
    return result


def _check_theta(k: int) -> None:
    if not 1 <= k <= THETA_EVAL_MAX_K:
        raise LimitExceeded(
            f'Theta_k evaluation is capped at k <= {THETA_EVAL_MAX_K}'
        )


def theta_eval(points: Sequence[Fe], f: FieldSpec) -> Fe:
    """``Theta_k`` at a point.

    ``Theta_k`` is the sum of all monomials whose exponents are 0 or powers
    of 2 adding up to ``2^(k-1)``. A knapsack pass over the variables keeps,
    for each partial exponent sum, the sum of the partial monomials reaching
    it, so the cost is ``O(k^2 2^(k-1))`` field operations."""
    k = len(points)
    _check_theta(k)
    total = 1 << (k - 1)
    states: Dict[int, Fe] = {0: 1}
    for x in points:
        powers = [x]
        for _ in range(k - 1):
            powers.append(f.square(powers[-1]))
        following: Dict[int, Fe] = dict(states)
        if x:
            for reached, value in states.items():
                for t in range(k):
                    target = reached + (1 << t)
                    if target > total:
                        break
                    following[target] = following.get(target, 0) ^ \
                        f.mul(value, powers[t])
        states = following
    return states.get(total, 0)


def theta_eval_by_arrangements(points: Sequence[Fe], f: FieldSpec) -> Fe:
    """``Theta_k`` as the sum over partitions in ``Lambda_k`` of every
    distinct arrangement of the parts over the variables."""
    k = len(points)
    _check_theta(k)
    powers = [[u] for u in points]
    for column in powers:
        for _ in range(k - 1):
            column.append(f.square(column[-1]))
    total = 0
    for partition in lambda_set(k):
        padded = list(partition.parts) + [0] * (k - len(partition))
        for arrangement in multiset_permutations(padded):
            value = 1
            for i, e in enumerate(arrangement):
                if e:
                    value = f.mul(value, powers[i][e.bit_length() - 1])
            total ^= value
    return total


# Batch evaluation over lookup tables


def _as_columns(cols: Sequence) -> List[np.ndarray]:
    return [np.asarray(c, dtype=np.int64) for c in cols]


def _frobenius_columns(tables: FieldTables, cols: Sequence[np.ndarray],
                       logs: Sequence[int]) -> List[List[np.ndarray]]:
    return [[tables.frob(c, t) for c in cols] for t in logs]


def permanent_batch(tables: FieldTables,
                    entries: List[List[np.ndarray]]) -> np.ndarray:
    """Determinant (equal to the permanent in characteristic 2) by a
    dynamic program over the sets of used columns."""
    k = len(entries)
    layer: Dict[int, np.ndarray] = {0: np.ones(1, dtype=np.int64)}
    for i in range(k):
        following: Dict[int, np.ndarray] = {}
        for used, value in layer.items():
            for j in range(k):
                if used >> j & 1:
                    continue
                term = tables.mul(value, entries[i][j])
                key = used | (1 << j)
                following[key] = following[key] ^ term if key in following \
                    else term
        layer = following
    return layer[(1 << k) - 1]


def delta_eval_batch(tables: FieldTables, cols: Sequence) -> np.ndarray:
    cols = _as_columns(cols)
    logs = _log2_rows(moore_row_exponents(len(cols)))
    return permanent_batch(tables, _frobenius_columns(tables, cols, logs))


def delta1_eval_batch(tables: FieldTables, cols: Sequence) -> np.ndarray:
    cols = _as_columns(cols)
    logs = _log2_rows(moore1_row_exponents(len(cols)))
    return permanent_batch(tables, _frobenius_columns(tables, cols, logs))


def theta_eval_batch(tables: FieldTables, cols: Sequence) -> np.ndarray:
    """Vectorized form of :func:`theta_eval`."""
    cols = _as_columns(cols)
    k = len(cols)
    _check_theta(k)
    total = 1 << (k - 1)
    states: Dict[int, np.ndarray] = {0: np.ones(1, dtype=np.int64)}
    for x in cols:
        powers = [tables.frob(x, t) for t in range(k)]
        following = dict(states)
        for reached, value in states.items():
            for t in range(k):
                target = reached + (1 << t)
                if target > total:
                    break
                term = tables.mul(value, powers[t])
                following[target] = following[target] ^ term \
                    if target in following else term
        states = following
    result = states.get(total)
    if result is None:
        return np.zeros(1, dtype=np.int64)
    return result


def mpoly_eval_batch(tables: FieldTables, poly: MPoly,
                     cols: Sequence) -> np.ndarray:
    """Evaluate a symbolic polynomial on coordinate columns."""
    cols = _as_columns(cols)
    if len(cols) != poly.k:
        raise ValueError(f'Expected {poly.k} columns, got {len(cols)}')
    powers: Dict[tuple, np.ndarray] = {}
    total = np.zeros(1, dtype=np.int64)
    for monomial in poly.terms:
        value = np.ones(1, dtype=np.int64)
        for i, e in enumerate(monomial):
            if e == 0:
                continue
            if (i, e) not in powers:
                powers[(i, e)] = tables.power(cols[i], e)
            value = tables.mul(value, powers[(i, e)])
        total = total ^ value
    return total
