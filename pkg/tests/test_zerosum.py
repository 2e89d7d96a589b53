import json
import random

import pytest

from sumfree_explorer import LimitExceeded
from sumfree_explorer.bitlinalg import (canonicalize, enumerate_subspaces,
                                        gl2_order, random_subspace)
from sumfree_explorer.gf2n import default_modulus
from sumfree_explorer.zerosum import (CensusResult, Selector, Witness,
                                      WitnessError, WitnessStore,
                                      affine_inverse_sum, census,
                                      census_trend, check_all_criteria,
                                      find_witness, inverse_sum,
                                      is_zero_sum, sf_table, shard_range,
                                      zk_count)


@pytest.fixture
def witness62():
    witness = find_witness(6, 2, 'exhaustive')
    assert witness is not None
    return witness


def test_inverse_sum_of_a_line():
    f = default_modulus(5)
    E = canonicalize([0x13], f)
    assert inverse_sum(E) == f.inv(0x13)
    assert not is_zero_sum(E)
    assert affine_inverse_sum(E, 0) == inverse_sum(E)


def test_inverse_sum_needs_positive_dimension():
    with pytest.raises(ValueError):
        inverse_sum(canonicalize([], default_modulus(5)))


SWEEP_CASES = [(n, k) for n in range(3, 7)
               for k in range(1, min(3, n - 1) + 1)] \
    + [(7, 1), (7, 2), (8, 1), (9, 1)]
SLOW_SWEEP_CASES = [(7, 3), (8, 2), (8, 3), (9, 2), (9, 3)]


@pytest.mark.parametrize('n,k', SWEEP_CASES + [
    pytest.param(n, k, marks=pytest.mark.slow) for n, k in SLOW_SWEEP_CASES
])
def test_criteria_agree_on_every_subspace(n, k):
    for E in enumerate_subspaces(n, k):
        report = check_all_criteria(E)
        assert report.agree
        assert report.zero_sum == is_zero_sum(E)


def test_zk_small():
    assert zk_count(4, 2) == 5
    assert zk_count(5, 2) == 0
    assert zk_count(5, 3) == 0


def test_zk_shards_add_up():
    total = zk_count(6, 2)
    assert total > 0
    assert zk_count(6, 2, shard=(0, 2)) + zk_count(6, 2, shard=(1, 2)) \
        == total


def test_zk_budget():
    with pytest.raises(LimitExceeded):
        zk_count(12, 6, budget=1000)


def test_shard_range():
    slices = [shard_range(10, i, 3) for i in range(3)]
    assert slices == [(0, 3), (3, 6), (6, 10)]
    with pytest.raises(ValueError):
        shard_range(10, 3, 3)


@pytest.mark.parametrize('selector', ['fk', 'theta'])
def test_census_counts_ordered_bases(selector):
    result = census(selector, 4, 2)
    assert result.zeros_off_delta == 30
    assert result.zeros_off_delta == zk_count(4, 2) * gl2_order(2)
    assert result.swept == 1 << 8


@pytest.mark.parametrize('selector', ['fk', 'theta'])
def test_census_matches_zk(selector):
    result = census(selector, 6, 2)
    assert result.zeros_off_delta == zk_count(6, 2) * gl2_order(2)


def test_census_is_empty_where_no_zero_sums():
    assert census('theta', 5, 2).zeros_off_delta == 0
    assert census('fk', 5, 2).zeros_off_delta == 0


def test_census_shards_add_up():
    whole = census('theta', 6, 2)
    parts = [census('theta', 6, 2, shard=(i, 3)) for i in range(3)]
    assert sum(p.zeros_off_delta for p in parts) == whole.zeros_off_delta
    assert sum(p.zeros_on_delta for p in parts) == whole.zeros_on_delta
    assert sum(p.swept for p in parts) == whole.swept


def test_census_limit():
    with pytest.raises(LimitExceeded):
        census('theta', 20, 2)


def test_census_result_row():
    result = census(Selector.THETA, 4, 2)
    assert result.csv_row()[:4] == (4, 2, 'theta', 30)
    assert result.density == pytest.approx(30 / 16)
    assert result.to_dict()['modulus'] == format(default_modulus(4).modulus,
                                                 'x')


def test_census_trend():
    results = census_trend(2, range(4, 7))
    assert [r.n for r in results] == [4, 5, 6]
    assert all(isinstance(r, CensusResult) for r in results)


@pytest.mark.slow
@pytest.mark.parametrize('selector', ['fk', 'theta'])
def test_census_matches_zk_for_three_dimensions(selector):
    result = census(selector, 9, 3)
    assert result.zeros_off_delta == zk_count(9, 3) * gl2_order(3)


def test_exhaustive_search(witness62):
    assert witness62.k == 2
    assert witness62.strategy == 'exhaustive'
    assert all(witness62.checks.values())
    assert is_zero_sum(witness62.subspace())
    witness62.verify()


def test_exhaustive_search_finds_nothing_in_sf():
    assert find_witness(5, 2, 'exhaustive') is None


def test_random_search_is_deterministic():
    first = find_witness(7, 3, seed=11)
    second = find_witness(7, 3, seed=11)
    assert first is not None
    assert first == second
    assert first.seed == 11


def test_random_search_budget():
    assert find_witness(5, 2, budget=100) is None


def test_search_limits():
    with pytest.raises(LimitExceeded):
        find_witness(5, 6)
    with pytest.raises(ValueError):
        find_witness(5, 2, strategy='greedy')


def test_from_subspace_rejects_non_zero_sum():
    E = canonicalize([1, 2], default_modulus(5))
    with pytest.raises(WitnessError):
        Witness.from_subspace(E, 'manual')


def test_tampered_witness(witness62):
    data = witness62.to_dict()
    # <1, X> is never zero-sum: that would put X in F_4
    data['basis'] = ['1', '2']
    with pytest.raises(WitnessError):
        Witness.from_dict(data).verify()


def test_malformed_witness_records(witness62):
    data = witness62.to_dict()
    del data['k']
    with pytest.raises(WitnessError):
        Witness.from_dict(data)
    data = witness62.to_dict()
    data['checks'] = {'inverse_sum': True, 'fk': False, 'theta': True}
    with pytest.raises(WitnessError):
        Witness.from_dict(data)


def test_witness_store(tmp_path, witness62):
    store = WitnessStore(tmp_path / 'nested' / 'witnesses.jsonl')
    assert store.load() == []
    store.append(witness62)
    store.append(find_witness(7, 3, seed=2))
    assert store.load(6) == [witness62]
    assert len(store.load()) == 2


def test_witness_store_invalid_json(tmp_path, witness62):
    path = tmp_path / 'witnesses.jsonl'
    path.write_text(json.dumps(witness62.to_dict()) + '\n{oops\n')
    with pytest.raises(WitnessError):
        WitnessStore(path).load()


def test_witness_identifier(witness62):
    assert len(witness62.identifier) == 12
    assert Witness.from_dict(witness62.to_dict()).identifier == \
        witness62.identifier


@pytest.mark.parametrize('n,expected', [
    (4, [1, 3]),
    (5, [1, 2, 3, 4]),
    (6, [1, 5]),
    (7, [1, 2, 5, 6]),
    (8, [1, 7]),
])
def test_sf_table(n, expected):
    table = sf_table(n)
    assert table.sf == expected
    assert table.k_set == [k for k in range(1, n) if k not in expected]
    for k in table.k_set:
        table.entries[k].witness.verify()


@pytest.mark.slow
@pytest.mark.parametrize('n,expected', [(9, [1, 2, 7, 8]), (10, [1, 9])])
def test_sf_table_slow(n, expected):
    assert sf_table(n).sf == expected


def test_sf_table_limit():
    with pytest.raises(LimitExceeded):
        sf_table(13)


@pytest.mark.parametrize('n,k', [(6, 3), pytest.param(7, 3,
                                                      marks=pytest.mark.slow)])
def test_census_identity_three_dimensions(n, k):
    expected = zk_count(n, k) * gl2_order(k)
    assert census('fk', n, k).zeros_off_delta == expected
    assert census('theta', n, k).zeros_off_delta == expected


def test_criteria_agree_on_random_larger_cases():
    rng = random.Random(2024)
    for _ in range(500):
        n = rng.randint(10, 20)
        k = rng.randint(2, 5)
        E = random_subspace(default_modulus(n), k, rng)
        assert check_all_criteria(E).agree


@pytest.mark.slow
@pytest.mark.parametrize('n,expected', [(11, [1, 2, 9, 10]), (12, [1, 11])])
def test_sf_table_largest(n, expected):
    assert sf_table(n).sf == expected


@pytest.mark.slow
def test_theta_3_zero_counts_approach_the_expected_density():
    results = census_trend(3, range(4, 9))
    fk_results = census_trend(3, range(4, 9), Selector.FK)
    for theta, fk in zip(results, fk_results):
        assert theta.zeros_off_delta == fk.zeros_off_delta
        assert theta.zeros_off_delta % 168 == 0
    assert results[-1].deviation < results[0].deviation


@pytest.mark.parametrize('n,k', [(3, 2), (4, 3), (5, 2), (5, 3), (6, 2),
                                 (6, 3)])
@pytest.mark.parametrize('selector', ['fk', 'theta'])
def test_census_counts_are_multiples_of_gl2(selector, n, k):
    result = census(selector, n, k)
    assert result.zeros_off_delta % gl2_order(k) == 0


def test_scaling_divides_the_inverse_sum():
    rng = random.Random(17)
    for _ in range(50):
        f = default_modulus(rng.randrange(6, 13))
        E = random_subspace(f, rng.randrange(1, 5), rng)
        c = f.random_nonzero(rng)
        cE = canonicalize([f.mul(c, u) for u in E.vectors], f)
        assert inverse_sum(cE) == f.mul(f.inv(c), inverse_sum(E))
        assert is_zero_sum(cE) == is_zero_sum(E)


def test_scaling_keeps_zero_sums(witness62):
    E = witness62.subspace()
    f = E.field
    for c in range(1, f.order):
        assert is_zero_sum(canonicalize([f.mul(c, u) for u in E.vectors], f))


def test_affine_subspaces_never_sum_to_zero():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randrange(6, 15)
        f = default_modulus(n)
        E = random_subspace(f, rng.randrange(1, min(5, n - 1) + 1), rng)
        c = f.random_nonzero(rng)
        while c in E:
            c = f.random_nonzero(rng)
        assert affine_inverse_sum(E, c) != 0
