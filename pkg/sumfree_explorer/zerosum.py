"""Zero-sum subspaces: the predicates, the criteria cross-check, witness
search and storage, exact counts of zero-sum subspaces and the tuple
censuses that compare the zero sets of ``F_k`` and ``Theta_k``.

Sweeps run over deterministic index ranges (subspace enumeration indices
or outer tuple coordinates), so any split into shards or worker chunks
merges by plain addition into the same result.
"""

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field as dataclass_field
from enum import Enum
from multiprocessing import Pool
from pathlib import Path
from typing import (Callable, Dict, Iterable, Iterator, List, Optional,
                    Sequence, Tuple)

import numpy as np

from sumfree_explorer import LimitExceeded
from sumfree_explorer.bitlinalg import (MAX_ELEMENTS_DIM, Subspace,
                                        basis_blocks, canonicalize, elements,
                                        enumerate_subspaces, gaussian_binomial,
                                        span_block)
from sumfree_explorer.gf2n import Fe, FieldSpec, default_modulus
from sumfree_explorer.pointeval import (delta1_eval_batch, delta_eval_batch,
                                        fk_eval, mpoly_eval_batch,
                                        theta_eval, theta_eval_batch)
from sumfree_explorer.subcalc import gamma
from sumfree_explorer.sympoly import FK_SYMBOLIC_MAX_K, fk_sym

logger = logging.getLogger(__name__)

CRITERIA_MAX_DIM = 11
ZK_WORK_BUDGET = 1 << 36
CENSUS_MAX_BITS = 28
CENSUS_INNER_BITS = 20
DEFAULT_RANDOM_BUDGET = 1 << 20
SF_TABLE_MAX_N = 12
SWEEP_BLOCK_ELEMENTS = 1 << 18


class WitnessError(Exception):
    """A witness record is malformed or does not verify."""
    pass


class Selector(str, Enum):
    FK = 'fk'
    THETA = 'theta'


def _field_for(n: int, f: Optional[FieldSpec]) -> FieldSpec:
    field = f or default_modulus(n)
    if field.n != n:
        raise ValueError(f'Field {field} does not have degree {n}')
    return field


def shard_range(total: int, index: int = 0, count: int = 1
                ) -> Tuple[int, int]:
    """The ``index``-th of ``count`` contiguous slices of ``range(total)``."""
    if not 0 <= index < count:
        raise ValueError(f'Shard index {index} outside 0..{count - 1}')
    return total * index // count, total * (index + 1) // count


def _split(start: int, stop: int, parts: int) -> List[Tuple[int, int]]:
    size = stop - start
    bounds = [start + size * i // parts for i in range(parts + 1)]
    return [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]


def _run_chunks(worker: Callable, args: tuple, start: int, stop: int,
                workers: int) -> list:
    chunks = _split(start, stop, workers)
    jobs = [args + (lo, hi) for lo, hi in chunks]
    if workers <= 1 or len(jobs) <= 1:
        return [worker(*job) for job in jobs]
    with Pool(min(workers, len(jobs))) as pool:
        return pool.starmap(worker, jobs)


# Predicates


def inverse_sum(E: Subspace) -> Fe:
    """Sum of ``1/u`` over the nonzero elements of ``E``."""
    if E.dim < 1:
        raise ValueError('Inverse sums are taken over subspaces of dim >= 1')
    f = E.field
    total = 0
    for u in elements(E):
        if u:
            total ^= f.inv(u)
    return total


def is_zero_sum(E: Subspace) -> bool:
    return inverse_sum(E) == 0


def affine_inverse_sum(E: Subspace, c: Fe) -> Fe:
    """Sum of ``f_inv(x)`` over the coset ``c + E``, with ``f_inv(0) = 0``."""
    f = E.field
    total = 0
    for u in elements(E):
        x = u ^ c
        if x:
            total ^= f.inv(x)
    return total


@dataclass(frozen=True)
class CriteriaReport:
    """Outcome of the three equivalent zero-sum tests on one subspace."""
    zero_sum: bool
    fk_zero: bool
    theta_zero: bool

    @property
    def agree(self) -> bool:
        return self.zero_sum == self.fk_zero == self.theta_zero

    @property
    def all_zero(self) -> bool:
        return self.zero_sum and self.fk_zero and self.theta_zero

    def to_dict(self) -> Dict[str, bool]:
        return {'inverse_sum': self.zero_sum, 'fk': self.fk_zero,
                'theta': self.theta_zero}


def criteria_consistent(report: CriteriaReport) -> bool:
    return report.agree


def check_all_criteria(E: Subspace) -> CriteriaReport:
    """Direct inverse sum, ``F_k`` on the canonical basis of ``E`` and
    ``Theta_k`` on the canonical basis of ``gamma(E)``."""
    if not 1 <= E.dim <= CRITERIA_MAX_DIM:
        raise LimitExceeded(
            f'Criteria are checked for 1 <= dim <= {CRITERIA_MAX_DIM}'
        )
    f = E.field
    report = CriteriaReport(
        zero_sum=is_zero_sum(E),
        fk_zero=fk_eval(list(E.vectors), f) == 0,
        theta_zero=theta_eval(list(gamma(E).vectors), f) == 0,
    )
    if not report.agree:
        logger.error('criteria disagree on %s: %s', E, report.to_dict())
    return report


# Witnesses


@dataclass
class Witness:
    """A verified zero-sum subspace with its search provenance."""
    n: int
    modulus: str
    k: int
    basis: List[str]
    checks: Dict[str, bool]
    strategy: str
    seed: Optional[int] = None
    trials: Optional[int] = None

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.n, int(self.modulus, 16))

    def subspace(self) -> Subspace:
        return canonicalize([int(word, 16) for word in self.basis], self.field)

    @property
    def identifier(self) -> str:
        key = f"{self.n}:{self.modulus}:{','.join(self.basis)}"
        return hashlib.sha256(key.encode()).hexdigest()[:12]

    @classmethod
    def from_subspace(cls, E: Subspace, strategy: str,
                      seed: Optional[int] = None,
                      trials: Optional[int] = None) -> 'Witness':
        """Verify ``E`` with all three criteria and record it."""
        report = check_all_criteria(E)
        if not report.all_zero:
            raise WitnessError(
                f'{E} is not a verified zero-sum subspace: {report.to_dict()}'
            )
        return cls(
            n=E.field.n,
            modulus=format(E.field.modulus, 'x'),
            k=E.dim,
            basis=[format(word, 'x') for word in E.vectors],
            checks=report.to_dict(),
            strategy=strategy,
            seed=seed,
            trials=trials,
        )

    def verify(self) -> CriteriaReport:
        """Re-run every criterion on the stored basis. Raises
        :class:`WitnessError` unless all of them vanish."""
        E = self.subspace()
        if E.dim != self.k:
            raise WitnessError(
                f'Witness {self.identifier} spans dim {E.dim}, not {self.k}'
            )
        if [format(word, 'x') for word in E.vectors] != self.basis:
            raise WitnessError(
                f'Witness {self.identifier} basis is not in canonical form'
            )
        report = check_all_criteria(E)
        if not report.all_zero:
            raise WitnessError(
                f'Witness {self.identifier} fails: {report.to_dict()}'
            )
        return report

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'Witness':
        try:
            witness = cls(
                n=int(data['n']),
                modulus=str(data['modulus']),
                k=int(data['k']),
                basis=[str(word) for word in data['basis']],
                checks={str(key): bool(value)
                        for key, value in data['checks'].items()},
                strategy=str(data['strategy']),
                seed=data.get('seed'),
                trials=data.get('trials'),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as err:
            raise WitnessError(f'Malformed witness record: {err}') from err
        if not all(witness.checks.values()):
            raise WitnessError(
                f'Witness {witness.identifier} records a failing check'
            )
        return witness


class WitnessStore:
    """Append-only JSON-lines file of witnesses. One writer at a time."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def append(self, witness: Witness) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open('a', encoding='utf-8') as handle:
            handle.write(json.dumps(witness.to_dict(), sort_keys=True) + '\n')
        logger.info('stored witness %s in %s', witness.identifier, self.path)

    def __iter__(self) -> Iterator[Witness]:
        if not self.path.exists():
            return
        with self.path.open(encoding='utf-8') as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError as err:
                    raise WitnessError(
                        f'{self.path}:{lineno}: invalid JSON ({err})'
                    ) from err
                yield Witness.from_dict(data)

    def load(self, n: Optional[int] = None) -> List[Witness]:
        return [w for w in self if n is None or w.n == n]


# Exhaustive sweeps over subspaces


def _sweep_block_size(k: int) -> int:
    return max(1, SWEEP_BLOCK_ELEMENTS >> k)


def _zero_sum_mask(field: FieldSpec, bases: np.ndarray) -> np.ndarray:
    spans = span_block(bases)
    sums = np.bitwise_xor.reduce(field.tables.inv(spans), axis=1)
    return sums == 0


def _count_zero_sums(n: int, modulus: int, k: int, start: int,
                     stop: int) -> int:
    field = FieldSpec(n, modulus)
    count = 0
    if field.has_tables:
        for bases in basis_blocks(n, k, start, stop, _sweep_block_size(k)):
            count += int(np.count_nonzero(_zero_sum_mask(field, bases)))
    else:
        for E in enumerate_subspaces(field, k, start, stop):
            count += is_zero_sum(E)
    logger.debug('zero sums in [%d, %d) for n=%d k=%d: %d',
                 start, stop, n, k, count)
    return count


def _first_zero_sum(n: int, modulus: int, k: int, start: int,
                    stop: int) -> Optional[Tuple[int, ...]]:
    field = FieldSpec(n, modulus)
    if field.has_tables:
        for bases in basis_blocks(n, k, start, stop, _sweep_block_size(k)):
            hits = np.flatnonzero(_zero_sum_mask(field, bases))
            if hits.size:
                return tuple(int(x) for x in bases[hits[0]])
    else:
        for E in enumerate_subspaces(field, k, start, stop):
            if is_zero_sum(E):
                return E.vectors
    return None


def _check_sweep(n: int, k: int, budget: int) -> int:
    if not 1 <= k <= n:
        raise ValueError(f'Need 1 <= k <= n, got n={n}, k={k}')
    total = gaussian_binomial(n, k)
    if total << k > budget:
        raise LimitExceeded(
            f'Sweeping all {k}-dim subspaces of F_2^{n} needs '
            f'{total << k} element visits (budget {budget})'
        )
    return total


def zk_count(n: int, k: int, f: Optional[FieldSpec] = None,
             budget: int = ZK_WORK_BUDGET, workers: int = 1,
             shard: Tuple[int, int] = (0, 1)) -> int:
    """Number of ``k``-dimensional zero-sum subspaces (within the shard's
    enumeration index range)."""
    field = _field_for(n, f)
    total = _check_sweep(n, k, budget)
    start, stop = shard_range(total, *shard)
    count = sum(_run_chunks(_count_zero_sums, (n, field.modulus, k),
                            start, stop, workers))
    logger.info('Z_%d over %s: %d (indices %d..%d)', k, field, count,
                start, stop)
    return count


# Tuple censuses


@dataclass
class CensusResult:
    n: int
    k: int
    selector: Selector
    modulus: str
    zeros_off_delta: int
    zeros_on_delta: Optional[int]
    swept: int

    CSV_HEADER = ('n', 'k', 'selector', 'zeros_off_delta', 'zeros_on_delta',
                  'swept')

    @property
    def density(self) -> float:
        """Zeros off ``V(Delta)`` relative to ``2^(n(k-1))``."""
        return self.zeros_off_delta / float(1 << (self.n * (self.k - 1)))

    @property
    def deviation(self) -> float:
        return abs(self.density - 1.0)

    def csv_row(self) -> Tuple:
        on_delta = 'NA' if self.zeros_on_delta is None \
            else self.zeros_on_delta
        return (self.n, self.k, self.selector.value, self.zeros_off_delta,
                on_delta, self.swept)

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'k': self.k,
            'selector': self.selector.value,
            'modulus': self.modulus,
            'zeros_off_delta': self.zeros_off_delta,
            'zeros_on_delta': self.zeros_on_delta,
            'swept': self.swept,
        }


def _inner_coordinates(n: int, k: int) -> int:
    return max(1, min(k, CENSUS_INNER_BITS // n))


def _census_range(selector: str, n: int, modulus: int, k: int, start: int,
                  stop: int) -> Tuple[int, Optional[int]]:
    selector = Selector(selector)
    tables = FieldSpec(n, modulus).tables
    mask = (1 << n) - 1
    inner = _inner_coordinates(n, k)
    outer = k - inner
    index = np.arange(1 << (n * inner), dtype=np.int64)
    inner_cols = [(index >> (n * (inner - 1 - t))) & mask
                  for t in range(inner)]
    symbolic = fk_sym(k) if selector is Selector.FK \
        and k <= FK_SYMBOLIC_MAX_K else None
    off_count = 0
    on_count: Optional[int] = 0
    if selector is Selector.FK and symbolic is None:
        on_count = None
    for o in range(start, stop):
        prefix = [np.int64((o >> (n * (outer - 1 - t))) & mask)
                  for t in range(outer)]
        cols = prefix + inner_cols
        off_delta = delta_eval_batch(tables, cols) != 0
        if selector is Selector.THETA:
            vanish = theta_eval_batch(tables, cols) == 0
            off_count += int(np.count_nonzero(vanish & off_delta))
            on_count += int(np.count_nonzero(vanish & ~off_delta))
            continue
        vanish = delta1_eval_batch(tables, cols) == 0
        off_count += int(np.count_nonzero(vanish & off_delta))
        if symbolic is not None:
            on_delta = ~off_delta
            subset = [c[on_delta] if np.ndim(c) else c for c in cols]
            values = mpoly_eval_batch(tables, symbolic, subset)
            on_count += int(np.count_nonzero(values == 0))
    return off_count, on_count


def census(selector, n: int, k: int, f: Optional[FieldSpec] = None,
           shard: Tuple[int, int] = (0, 1), workers: int = 1
           ) -> CensusResult:
    """Sweep all of ``F_{2^n}^k`` (or one shard of it) and count the zeros
    of ``F_k`` or ``Theta_k``, split by whether ``Delta`` vanishes.

    ``F_k`` is evaluated as ``Delta_1 / Delta`` off ``V(Delta)``; on
    ``V(Delta)`` the symbolic ``F_k`` is used when ``k <= 4`` and the
    bucket is reported as ``None`` otherwise."""
    selector = Selector(selector)
    field = _field_for(n, f)
    if k < 1 or n * k > CENSUS_MAX_BITS:
        raise LimitExceeded(
            f'Full censuses need 1 <= k and nk <= {CENSUS_MAX_BITS}'
        )
    if not field.has_tables:
        raise LimitExceeded(f'No lookup tables for n = {n}')
    inner = _inner_coordinates(n, k)
    start, stop = shard_range(1 << (n * (k - inner)), *shard)
    parts = _run_chunks(_census_range,
                        (selector.value, n, field.modulus, k),
                        start, stop, workers)
    on_parts = [on for _, on in parts]
    result = CensusResult(
        n=n,
        k=k,
        selector=selector,
        modulus=format(field.modulus, 'x'),
        zeros_off_delta=sum(off for off, _ in parts),
        zeros_on_delta=None if any(on is None for on in on_parts)
        else sum(on_parts),
        swept=(stop - start) << (n * inner),
    )
    logger.info('census %s n=%d k=%d: %d zeros off Delta',
                selector.value, n, k, result.zeros_off_delta)
    return result


def census_trend(k: int, m_values: Iterable[int],
                 selector=Selector.THETA, workers: int = 1
                 ) -> List[CensusResult]:
    """Censuses over ``F_{2^m}`` for each ``m``; the ``deviation`` of the
    results tracks how fast the zero count approaches ``2^(m(k-1))``."""
    return [census(selector, m, k, workers=workers) for m in m_values]


# Witness search


def _random_search(field: FieldSpec, k: int, budget: int, seed: int
                   ) -> Tuple[Optional[Tuple[int, ...]], int]:
    rng = np.random.default_rng(seed)
    batch = _sweep_block_size(k)
    trials = 0
    while trials < budget:
        size = min(batch, budget - trials)
        if field.has_tables:
            bases = rng.integers(0, field.order, size=(size, k),
                                 dtype=np.int64)
            spans = span_block(bases)
            independent = ~(spans[:, 1:] == 0).any(axis=1)
            sums = np.bitwise_xor.reduce(field.tables.inv(spans), axis=1)
            hits = np.flatnonzero(independent & (sums == 0))
            if hits.size:
                found = int(hits[0])
                return tuple(int(x) for x in bases[found]), trials + found + 1
        else:
            bases = rng.integers(0, field.order, size=(size, k),
                                 dtype=np.uint64)
            for offset, row in enumerate(bases.tolist()):
                E = canonicalize([int(x) for x in row], field)
                if E.dim == k and is_zero_sum(E):
                    return E.vectors, trials + offset + 1
        trials += size
        logger.debug('random search n=%d k=%d: %d trials', field.n, k,
                     trials)
    return None, trials


def find_witness(n: int, k: int, strategy: str = 'random',
                 budget: Optional[int] = None, seed: int = 0,
                 f: Optional[FieldSpec] = None,
                 workers: int = 1) -> Optional[Witness]:
    """Search for a ``k``-dimensional zero-sum subspace of ``F_{2^n}``.

    ``random`` draws ``budget`` uniformly random ``k``-tuples (deterministic
    for a given seed); ``exhaustive`` walks the subspace enumeration and
    ``budget`` bounds the element visits. ``None`` means nothing was found
    within the budget."""
    field = _field_for(n, f)
    if not 1 <= k <= min(n, MAX_ELEMENTS_DIM):
        raise LimitExceeded(f'Witness search needs 1 <= k <= n, got k={k}')
    if strategy == 'random':
        budget = DEFAULT_RANDOM_BUDGET if budget is None else budget
        basis, trials = _random_search(field, k, budget, seed)
        witness_seed: Optional[int] = seed
    elif strategy == 'exhaustive':
        total = _check_sweep(n, k, ZK_WORK_BUDGET if budget is None
                             else budget)
        found = [hit for hit in _run_chunks(_first_zero_sum,
                                            (n, field.modulus, k),
                                            0, total, workers)
                 if hit is not None]
        basis = found[0] if found else None
        trials, witness_seed = total, None
    else:
        raise ValueError(f'Unknown search strategy {strategy!r}')
    if basis is None:
        logger.info('no %d-dim zero-sum subspace of %s found (%s, %d trials)',
                    k, field, strategy, trials)
        return None
    witness = Witness.from_subspace(canonicalize(basis, field), strategy,
                                    seed=witness_seed, trials=trials)
    logger.info('found witness %s after %d trials', witness.identifier,
                trials)
    return witness


@dataclass
class SFEntry:
    k: int
    in_sf: bool
    method: str
    witness: Optional[Witness] = None

    def to_dict(self) -> dict:
        return {'k': self.k, 'status': 'IN_SF' if self.in_sf else 'IN_K',
                'method': self.method,
                'witness': self.witness.identifier if self.witness else None}


@dataclass
class SFTable:
    n: int
    modulus: str
    entries: Dict[int, SFEntry] = dataclass_field(default_factory=dict)

    @property
    def sf(self) -> List[int]:
        return [k for k, entry in sorted(self.entries.items()) if entry.in_sf]

    @property
    def k_set(self) -> List[int]:
        return [k for k, entry in sorted(self.entries.items())
                if not entry.in_sf]


def random_budget(n: int, k: int) -> int:
    return min(64 << n, gaussian_binomial(n, k))


def sf_table(n: int, f: Optional[FieldSpec] = None, seed: int = 0,
             workers: int = 1, orders: Optional[Sequence[int]] = None
             ) -> SFTable:
    """Certify ``SF_n``: a witness puts ``k`` in ``K_n``, an exhaustive
    sweep without one puts ``k`` in ``SF_n``."""
    if n > SF_TABLE_MAX_N:
        raise LimitExceeded(
            f'SF_n is only certified for n <= {SF_TABLE_MAX_N}'
        )
    field = _field_for(n, f)
    table = SFTable(n, format(field.modulus, 'x'))
    for k in orders or range(1, n):
        witness = find_witness(n, k, 'random', random_budget(n, k), seed,
                               field)
        if witness is not None:
            table.entries[k] = SFEntry(k, False, 'witness-random', witness)
            continue
        witness = find_witness(n, k, 'exhaustive', f=field, workers=workers)
        if witness is not None:
            table.entries[k] = SFEntry(k, False, 'witness-exhaustive', witness)
        else:
            table.entries[k] = SFEntry(k, True, 'exhaustion')
        logger.info('n=%d k=%d: %s', n, k, table.entries[k].method)
    return table
