import random

import pytest

from sumfree_explorer import LimitExceeded
from sumfree_explorer.bitlinalg import (canonicalize, enumerate_subspaces,
                                        random_subspace)
from sumfree_explorer.gf2n import FieldError, default_modulus
from sumfree_explorer.pointeval import DependentBasis, fk_eval
from sumfree_explorer.subcalc import (LinPoly, annihilator,
                                      annihilator_by_determinants, apply,
                                      compose, gamma, gamma_coords,
                                      gamma_inv, image, kernel,
                                      kernel_dimension, matrix_criterion,
                                      trace_dual)


@pytest.fixture
def f7():
    return default_modulus(7)


def spaces(f, k, count=8, seed=5):
    rng = random.Random(seed)
    return [random_subspace(f, k, rng) for _ in range(count)]


def test_linpoly_validation(f7):
    with pytest.raises(FieldError):
        LinPoly(f7, (1, 0))
    with pytest.raises(FieldError):
        LinPoly(f7, (1 << 7,))
    with pytest.raises(LimitExceeded):
        LinPoly(f7, (1,) * 9)
    assert LinPoly.from_coeffs(f7, [3, 1, 0, 0]).q_degree == 1


def test_apply_is_linear(f7):
    L = LinPoly(f7, (3, 0x11, 1))
    assert L(0) == 0
    assert L(0x21 ^ 0x4c) == L(0x21) ^ L(0x4c)
    assert apply(L, 1) == 3 ^ 0x11 ^ 1


@pytest.mark.parametrize('k', [1, 2, 3, 4])
def test_annihilator_kernel_is_the_subspace(f7, k):
    for E in spaces(f7, k):
        L = annihilator(E)
        assert L.q_degree == k
        assert L.coeffs[-1] == 1
        assert all(L(x) == 0 for x in E)
        assert kernel(L) == E
        assert kernel_dimension(L) == k


@pytest.mark.parametrize('k', [1, 2, 3])
def test_annihilator_by_determinants(f7, k):
    for E in spaces(f7, k):
        assert annihilator_by_determinants(E) == annihilator(E)


@pytest.mark.parametrize('k', [2, 3, 4])
def test_second_coefficient_is_fk(f7, k):
    for E in spaces(f7, k):
        assert annihilator(E).coeffs[1] == fk_eval(list(E.vectors), f7)


def test_image_dimension(f7):
    for E in spaces(f7, 3):
        assert image(annihilator(E)).dim == 4


def test_trace_dual_is_an_involution(f7):
    for E in spaces(f7, 2):
        dual = trace_dual(E)
        assert dual.dim == 5
        assert trace_dual(dual) == E


def test_gamma_is_a_bijection():
    f = default_modulus(5)
    images = set()
    for E in enumerate_subspaces(f, 2):
        G = gamma(E)
        assert G.dim == 2
        assert gamma_inv(G) == E
        images.add(G)
    assert len(images) == 155


def test_double_image_returns(f7):
    # the image of the image's annihilator is the original subspace again
    for E in spaces(f7, 3):
        image_space = image(annihilator(E))
        assert image(annihilator(image_space)) == E


@pytest.mark.parametrize('k', [1, 2, 3])
def test_matrix_criterion_on_annihilators(f7, k):
    for E in spaces(f7, k):
        assert matrix_criterion(annihilator(E))


@pytest.mark.parametrize('k', [1, 2, 3, 4])
def test_matrix_criterion_agrees_with_kernel(f7, k):
    rng = random.Random(11 + k)
    outcomes = set()
    for _ in range(200):
        coeffs = list(annihilator(random_subspace(f7, k, rng)).coeffs)
        if rng.random() < 0.5:
            coeffs[rng.randrange(k)] ^= f7.random_nonzero(rng)
        L = LinPoly(f7, tuple(coeffs))
        full = matrix_criterion(L)
        assert full == (kernel_dimension(L) == k)
        outcomes.add(full)
    # every x^2 + a x with a != 0 splits, so k = 1 is always full
    assert outcomes == ({True} if k == 1 else {True, False})


def test_gamma_coords(f7):
    for E in spaces(f7, 3):
        assert kernel(gamma_coords(annihilator(E))) == gamma(E)


def test_gamma_coords_need_full_kernel(f7):
    # x^2 + x vanishes only on F_2 inside F_(2^7)
    L = LinPoly(f7, (1, 1))
    assert kernel_dimension(L) == 1
    L = LinPoly(f7, (1, 0, 1))
    assert kernel_dimension(L) == 1
    with pytest.raises(DependentBasis):
        gamma_coords(L)


def test_compose_closes_to_frobenius_cycle(f7):
    for E in spaces(f7, 3):
        L = annihilator(E)
        closing = compose(annihilator(image(L)), L)
        assert closing.coeffs == (1,) + (0,) * 6 + (1,)


def test_compose_applies_in_order(f7):
    L = LinPoly(f7, (5, 1))
    M = LinPoly(f7, (0x21, 0, 1))
    composed = compose(L, M)
    for x in (1, 0x13, 0x7f):
        assert composed(x) == L(M(x))


def test_monic_and_projective_equality(f7):
    L = LinPoly(f7, (3, 5))
    assert L.monic().coeffs[-1] == 1
    assert L.projectively_equal(L.monic())


def test_dict(f7):
    L = annihilator(canonicalize([0x13, 0x2c], f7))
    assert LinPoly.from_dict(L.to_dict()) == L


def random_instances(count, n_values, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.choice(n_values)
        k = rng.randint(1, min(5, n - 1))
        yield random_subspace(default_modulus(n), k, rng)


def check_subspace_identities(E):
    L = annihilator(E)
    image_space = image(L)
    assert image(annihilator(image_space)) == E
    assert trace_dual(trace_dual(E)) == E
    assert gamma_inv(gamma(E)) == E
    assert matrix_criterion(L)
    assert kernel(gamma_coords(L)) == gamma(E)


def test_identities_on_random_instances():
    for E in random_instances(40, range(8, 13), seed=8):
        check_subspace_identities(E)


@pytest.mark.slow
def test_identities_on_many_random_instances():
    for E in random_instances(200, range(8, 25), seed=24):
        check_subspace_identities(E)
