"""Linear algebra over ``F_2`` on bit-packed rows: matrices, canonical
subspaces of ``F_{2^n}``, subspace enumeration and Gaussian binomials.

Row words use the field's coefficient order: bit ``j`` of a row is the
entry in column ``j``, the coefficient of ``X^j``.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from sumfree_explorer import LimitExceeded
from sumfree_explorer.gf2n import Fe, FieldSpec, default_modulus

logger = logging.getLogger(__name__)

MAX_COLS = 64
MAX_ENUMERATION_DEGREE = 40
MAX_ELEMENTS_DIM = 30
COUNT_BITS = 128
DEFAULT_BLOCK_SIZE = 1 << 16
# counters within a pivot profile are int64 and stay below 2^63
COUNTER_BITS = 63
MAX_COUNTER = 1 << COUNTER_BITS


class Overflow(LimitExceeded):
    """A count does not fit into the 128-bit counting type."""
    pass


@dataclass(frozen=True)
class BitMatrix:
    """An ``F_2`` matrix stored as one integer word per row."""
    rows: int
    cols: int
    data: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.cols <= MAX_COLS:
            raise LimitExceeded(f'At most {MAX_COLS} columns supported')
        if len(self.data) != self.rows:
            raise ValueError(
                f'Expected {self.rows} row words, got {len(self.data)}'
            )
        for word in self.data:
            if word < 0 or word >> self.cols:
                raise ValueError(
                    f'Row word {word:#x} has bits beyond column {self.cols}'
                )

    @classmethod
    def from_words(cls, words: Iterable[int], cols: int) -> 'BitMatrix':
        data = tuple(words)
        return cls(len(data), cols, data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> 'BitMatrix':
        """Build from 0/1 rows; the first entry of a row is column 0."""
        if not rows:
            return cls(0, 0, ())
        cols = len(rows[0])
        data = []
        for row in rows:
            if len(row) != cols:
                raise ValueError('Rows of unequal length')
            word = 0
            for j, bit in enumerate(row):
                if bit not in (0, 1):
                    raise ValueError(f'Entry {bit!r} is not 0 or 1')
                word |= bit << j
            data.append(word)
        return cls(len(data), cols, tuple(data))

    def to_rows(self) -> List[List[int]]:
        return [[word >> j & 1 for j in range(self.cols)]
                for word in self.data]

    @property
    def rank(self) -> int:
        return rref(self)[1]

    def to_dict(self) -> dict:
        return {
            'rows': self.rows,
            'cols': self.cols,
            'data': [format(word, 'x') for word in self.data],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'BitMatrix':
        return cls(int(data['rows']), int(data['cols']),
                   tuple(int(word, 16) for word in data['data']))

    def __str__(self) -> str:
        return '\n'.join(' '.join(str(bit) for bit in row)
                         for row in self.to_rows())


def rref(m: BitMatrix) -> Tuple[BitMatrix, int]:
    """Reduced row echelon form (pivot columns ascending, zero rows last)
    together with the rank."""
    rows = list(m.data)
    rank = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = next((r for r in range(rank, len(rows)) if rows[r] & bit),
                     None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r] & bit:
                rows[r] ^= rows[rank]
        rank += 1
        if rank == len(rows):
            break
    return BitMatrix(m.rows, m.cols, tuple(rows)), rank


def pivot_column(word: int) -> int:
    return (word & -word).bit_length() - 1


def null_space(words: Sequence[int], cols: int) -> List[int]:
    """Basis of ``{x : popcount(r & x) even for every row r}``."""
    reduced, rank = rref(BitMatrix.from_words(words, cols))
    pivots = {}
    for word in reduced.data[:rank]:
        pivots[pivot_column(word)] = word
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        vector = 1 << free
        for col, word in pivots.items():
            if word >> free & 1:
                vector |= 1 << col
        basis.append(vector)
    return basis


def transpose(words: Sequence[int], cols: int) -> List[int]:
    return [sum(((word >> j) & 1) << i for i, word in enumerate(words))
            for j in range(cols)]


@dataclass(frozen=True)
class Subspace:
    """An ``F_2``-subspace of a binary field, held by its canonical basis:
    the nonzero rows of the RREF of any spanning set. Two subspaces are
    equal exactly when their canonical bases are equal. Build instances
    with :func:`canonicalize`."""
    field: FieldSpec
    basis: BitMatrix

    def __post_init__(self) -> None:
        if self.basis.cols != self.field.n:
            raise ValueError(
                f'Basis has {self.basis.cols} columns, field degree is '
                f'{self.field.n}'
            )

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> Tuple[Fe, ...]:
        return self.basis.data

    def __contains__(self, x: Fe) -> bool:
        for word in self.basis.data:
            if x >> pivot_column(word) & 1:
                x ^= word
        return x == 0

    def __iter__(self) -> Iterator[Fe]:
        return elements(self)

    def to_dict(self) -> dict:
        return {'field': self.field.to_dict(), **self.basis.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> 'Subspace':
        field = FieldSpec.from_dict(data['field'])
        return canonicalize([int(word, 16) for word in data['data']], field)

    def __str__(self) -> str:
        words = ', '.join(format(word, 'x') for word in self.basis.data)
        return f'<{words}> (dim {self.dim} in {self.field})'


def canonicalize(vectors: Iterable[Fe], f: FieldSpec) -> Subspace:
    words = list(vectors)
    for word in words:
        if not f.is_element(word):
            raise ValueError(f'{word:#x} is not an element of {f}')
    reduced, rank = rref(BitMatrix.from_words(words, f.n))
    return Subspace(f, BitMatrix(rank, f.n, reduced.data[:rank]))


def random_subspace(f: FieldSpec, k: int, rng) -> Subspace:
    """Uniformly random ``k``-dimensional subspace; ``rng`` is a
    ``random.Random``."""
    if not 0 <= k <= f.n:
        raise ValueError(f'No {k}-dimensional subspaces in {f}')
    while True:
        space = canonicalize([rng.getrandbits(f.n) for _ in range(k)], f)
        if space.dim == k:
            return space


def gaussian_binomial(n: int, k: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_2^n``."""
    if not 0 <= k <= n:
        raise ValueError(f'Need 0 <= k <= n, got n={n}, k={k}')
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= (1 << (n - i)) - 1
        denominator *= (1 << (k - i)) - 1
    count = numerator // denominator
    if count >> COUNT_BITS:
        raise Overflow(f'[{n} choose {k}]_2 exceeds {COUNT_BITS} bits')
    return count


def gl2_order(k: int) -> int:
    """Order of ``GL(k, F_2)``."""
    order = 1
    for i in range(k):
        order *= (1 << k) - (1 << i)
    if order >> COUNT_BITS:
        raise Overflow(f'|GL({k}, 2)| exceeds {COUNT_BITS} bits')
    return order


def elements(s: Subspace) -> Iterator[Fe]:
    """All ``2^dim`` elements in Gray-code order, starting from 0."""
    if s.dim > MAX_ELEMENTS_DIM:
        raise LimitExceeded(
            f'Refusing to list 2^{s.dim} elements (dim > {MAX_ELEMENTS_DIM})'
        )
    x = 0
    yield x
    for i in range(1, 1 << s.dim):
        x ^= s.basis.data[(i & -i).bit_length() - 1]
        yield x


def free_positions(pivots: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """Free entries ``(row, column)`` of an RREF basis with the given
    pivot columns, ordered row by row. Counter bit ``t`` drives entry
    ``t`` of this list."""
    taken = set(pivots)
    return [(i, j) for i, p in enumerate(pivots)
            for j in range(p + 1, n) if j not in taken]


def pivot_profiles(n: int, k: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Pivot column sets in lexicographic order with their number of
    free entries."""
    for pivots in combinations(range(n), k):
        yield pivots, sum(n - 1 - p - (k - 1 - i)
                          for i, p in enumerate(pivots))


def _check_enumeration(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f'Need 0 <= k <= n, got n={n}, k={k}')
    if n > MAX_ENUMERATION_DEGREE:
        raise LimitExceeded(
            f'Subspace enumeration is limited to n <= {MAX_ENUMERATION_DEGREE}'
        )
    return gaussian_binomial(n, k)


def basis_blocks(n: int, k: int, start: int = 0, stop: Optional[int] = None,
                 block_size: int = DEFAULT_BLOCK_SIZE) -> Iterator[np.ndarray]:
    """Canonical bases of the subspaces with enumeration index in
    ``[start, stop)``, as ``int64`` arrays of shape ``(B, k)``.

    The enumeration visits pivot profiles in lexicographic order and,
    within a profile, the free entries as a binary counter, so every
    index range is a well-defined shard of the full sweep."""
    total = _check_enumeration(n, k)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    offset = 0
    for pivots, free in pivot_profiles(n, k):
        count = 1 << free
        lo = max(start, offset) - offset
        hi = min(stop, offset + count) - offset
        offset += count
        if lo >= hi:
            if offset >= stop:
                break
            continue
        positions = free_positions(pivots, n)
        base = np.array([1 << p for p in pivots], dtype=np.int64)
        for block_lo in range(lo, hi, block_size):
            block_hi = min(hi, block_lo + block_size)
            if block_hi >= MAX_COUNTER:
                raise LimitExceeded(
                    f'Enumeration counters past 2^63 are not supported '
                    f'(n={n}, k={k}, pivots {pivots})'
                )
            counter = np.arange(block_lo, block_hi, dtype=np.int64)
            rows = np.broadcast_to(base, (len(counter), k)).copy()
            for t, (i, j) in enumerate(positions):
                if t >= COUNTER_BITS:
                    break
                rows[:, i] |= ((counter >> t) & 1) << j
            yield rows
        if offset >= stop:
            break


def enumerate_subspaces(f: Union[FieldSpec, int], k: int, start: int = 0,
                        stop: Optional[int] = None) -> Iterator[Subspace]:
    """Every ``k``-dimensional subspace exactly once, in the deterministic
    enumeration order; ``start``/``stop`` select an index sub-range."""
    field = f if isinstance(f, FieldSpec) else default_modulus(f)
    for block in basis_blocks(field.n, k, start, stop):
        for row in block.tolist():
            yield Subspace(field, BitMatrix(k, field.n, tuple(row)))


def span_block(bases: np.ndarray) -> np.ndarray:
    """All elements of each row's span: shape ``(B, k)`` to ``(B, 2^k)``.
    Column ``i`` is the combination selected by the bits of ``i``."""
    spans = np.zeros((bases.shape[0], 1), dtype=bases.dtype)
    for i in range(bases.shape[1]):
        spans = np.concatenate([spans, spans ^ bases[:, i:i + 1]], axis=1)
    return spans


def parse_matrix_text(text: str) -> Tuple[List[int], dict]:
    """Parse the matrix file layout: one basis vector per line, 0/1
    entries, leftmost entry the coefficient of ``X^0``. ``#`` lines are
    comments; ``# n <int>`` and ``# modulus <hex>`` are kept as headers."""
    words = []
    headers = {}
    cols = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith('#'):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] in ('n', 'modulus'):
                headers[parts[0]] = parts[1]
            continue
        entries = [int(token) for token in line.replace(',', ' ').split()]
        if cols is None:
            cols = len(entries)
        elif len(entries) != cols:
            raise ValueError('Matrix rows of unequal length')
        words.append(BitMatrix.from_rows([entries]).data[0])
    if cols is not None and 'n' in headers and int(headers['n']) != cols:
        raise ValueError(
            f"Header says n={headers['n']} but rows have {cols} entries"
        )
    if cols is not None:
        headers.setdefault('n', str(cols))
    return words, headers


def read_matrix_file(path: Path) -> Tuple[List[int], dict]:
    return parse_matrix_text(Path(path).read_text())


def format_matrix(words: Sequence[int], n: int) -> str:
    return str(BitMatrix.from_words(words, n))
