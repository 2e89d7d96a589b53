"""Linearized polynomials and the subspace maps built from them.

A 2-polynomial ``L(x) = a_0 x + a_1 x^2 + ... + a_k x^(2^k)`` is an
``F_2``-linear map of the field. Every subspace ``E`` has a monic
annihilator ``L_E`` with kernel exactly ``E``; from it come the image
``E' = L_E(F)``, the trace dual ``E^perp`` and the bijection
``gamma(E) = (E')^perp`` between ``k``-dimensional subspaces.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from sumfree_explorer import LimitExceeded
from sumfree_explorer.bitlinalg import (Subspace, canonicalize, null_space,
                                        transpose)
from sumfree_explorer.gf2n import Fe, FieldError, FieldSpec
from sumfree_explorer.pointeval import (DependentBasis, _frobenius_rows,
                                        delta_eval, field_det)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinPoly:
    field: FieldSpec
    coeffs: Tuple[Fe, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[-1] == 0:
            raise FieldError('Leading coefficient a_k must be nonzero')
        if len(self.coeffs) - 1 > self.field.n:
            raise LimitExceeded(
                f'2-polynomial of q-degree {len(self.coeffs) - 1} exceeds '
                f'n = {self.field.n}'
            )
        for a in self.coeffs:
            if not self.field.is_element(a):
                raise FieldError(f'{a:#x} is not an element of {self.field}')

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Sequence[Fe]) -> 'LinPoly':
        """Drop vanishing top coefficients before building."""
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return cls(field, tuple(coeffs))

    @property
    def q_degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Fe) -> Fe:
        return apply(self, x)

    def monic(self) -> 'LinPoly':
        lead_inv = self.field.inv(self.coeffs[-1])
        return LinPoly(self.field,
                       tuple(self.field.mul(a, lead_inv) for a in self.coeffs))

    def projectively_equal(self, other: 'LinPoly') -> bool:
        return self.field == other.field and self.monic() == other.monic()

    def to_dict(self) -> dict:
        return {'field': self.field.to_dict(),
                'coeffs': [format(a, 'x') for a in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> 'LinPoly':
        return cls(FieldSpec.from_dict(data['field']),
                   tuple(int(a, 16) for a in data['coeffs']))

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                power = 'x' if i == 0 else f'x^(2^{i})'
                terms.append(power if a == 1 else f'{a:x}*{power}')
        return ' + '.join(reversed(terms))


def apply(L: LinPoly, x: Fe) -> Fe:
    f = L.field
    total = 0
    power = x
    for i, a in enumerate(L.coeffs):
        if i:
            power = f.square(power)
        if a:
            total ^= f.mul(a, power)
    return total


def annihilator(E: Subspace) -> LinPoly:
    """Monic ``L_E = prod_{u in E} (X - u)``, built one basis vector at a
    time with ``L_{B+<u>}(x) = L_B(x)^2 + L_B(u) L_B(x)``."""
    f = E.field
    coeffs: List[Fe] = [1]
    for u in E.vectors:
        c = apply(LinPoly(f, tuple(coeffs)), u)
        following = [f.mul(c, coeffs[0])]
        for i in range(1, len(coeffs)):
            following.append(f.square(coeffs[i - 1]) ^ f.mul(c, coeffs[i]))
        following.append(f.square(coeffs[-1]))
        coeffs = following
    return LinPoly(f, tuple(coeffs))


def annihilator_by_determinants(E: Subspace) -> LinPoly:
    """``L_E`` from Moore determinants: ``a_i`` is the determinant with
    rows ``u^(2^j)``, ``j in 0..k, j != i``, divided by ``Delta``."""
    f = E.field
    basis = list(E.vectors)
    k = len(basis)
    if k == 0:
        return LinPoly(f, (1,))
    delta = delta_eval(basis, f)
    delta_inv = f.inv(delta)
    coeffs = []
    for i in range(k + 1):
        logs = [j for j in range(k + 1) if j != i]
        minor = field_det(_frobenius_rows(basis, logs, f), f)
        coeffs.append(f.mul(minor, delta_inv))
    return LinPoly(f, tuple(coeffs))


def map_matrix(L: LinPoly) -> List[int]:
    """Column words ``L(X^j)``, ``j = 0..n-1``."""
    return [apply(L, 1 << j) for j in range(L.field.n)]


def image(L: LinPoly) -> Subspace:
    return canonicalize(map_matrix(L), L.field)


def kernel(L: LinPoly) -> Subspace:
    n = L.field.n
    rows = transpose(map_matrix(L), n)
    return canonicalize(null_space(rows, n), L.field)


def kernel_dimension(L: LinPoly) -> int:
    return kernel(L).dim


def trace_dual(E: Subspace) -> Subspace:
    """``{x : Tr(x y) = 0 for all y in E}``."""
    f = E.field
    rows = []
    for b in E.vectors:
        row = 0
        for j in range(f.n):
            if f.trace(f.mul(1 << j, b)):
                row |= 1 << j
        rows.append(row)
    return canonicalize(null_space(rows, f.n), f)


def gamma(E: Subspace) -> Subspace:
    return trace_dual(image(annihilator(E)))


def gamma_inv(E: Subspace) -> Subspace:
    return image(annihilator(trace_dual(E)))


def matrix_criterion(L: LinPoly) -> bool:
    """Whether ``ker L`` has the full dimension ``k``.

    ``C`` is the companion-style ``k x k`` matrix with ones below the
    diagonal and last column ``a_i / a_k``; the criterion asks whether
    ``C C^(2) C^(4) ... C^(2^(n-1)) = I``. Right multiplication by ``C``
    shifts columns left and puts ``P c`` into the last column."""
    f = L.field
    k = L.q_degree
    lead_inv = f.inv(L.coeffs[-1])
    column = [f.mul(a, lead_inv) for a in L.coeffs[:-1]]
    product = [[int(r == c) for c in range(k)] for r in range(k)]
    for _ in range(f.n):
        following = []
        for row in product:
            last = 0
            for entry, c in zip(row, column):
                if entry and c:
                    last ^= f.mul(entry, c)
            following.append(row[1:] + [last])
        product = following
        column = [f.square(c) for c in column]
    return all(product[r][c] == int(r == c)
               for r in range(k) for c in range(k))


def gamma_coords(L: LinPoly) -> LinPoly:
    """The 2-polynomial with coefficients ``a_(k-i)^(2^i)``, made monic.
    Its kernel is ``gamma(ker L)``."""
    if not matrix_criterion(L):
        raise DependentBasis(
            'Kernel dimension is below the q-degree; coordinates of gamma '
            'are undefined'
        )
    f = L.field
    k = L.q_degree
    coeffs = tuple(f.frob_pow(L.coeffs[k - i], i) for i in range(k + 1))
    return LinPoly(f, coeffs).monic()


def compose(L: LinPoly, M: LinPoly) -> LinPoly:
    """``L o M`` as a 2-polynomial. Terms ``x^(2^(n+t))`` with ``t >= 1``
    are folded onto ``x^(2^t)`` since both agree on the field; the term
    ``x^(2^n)`` itself is kept."""
    if L.field != M.field:
        raise FieldError('Cannot compose 2-polynomials over different fields')
    f = L.field
    coeffs = [0] * (min(L.q_degree + M.q_degree, f.n) + 1)
    for i, a in enumerate(L.coeffs):
        if not a:
            continue
        for j, b in enumerate(M.coeffs):
            if not b:
                continue
            position = i + j
            if position > f.n:
                position -= f.n
            coeffs[position] ^= f.mul(a, f.frob_pow(b, i))
    return LinPoly.from_coeffs(f, coeffs)
