import pytest

from prodtverberg.params import (
    Params,
    is_prime_power,
    join_connectivity_check,
    required_n,
    target_connectivity,
)


@pytest.mark.parametrize("d,m,p,n", [(3, 2, 2, 3), (2, 1, 2, 4), (3, 3, 2, 3), (2, 2, 3, 5), (2, 1, 3, 7)])
def test_required_n(d, m, p, n):
    assert required_n(d, m, p) == n


def test_required_n_rejects_small_p():
    with pytest.raises(ValueError):
        required_n(2, 2, 1)


def test_required_n_m1_is_tverberg():
    for d in range(1, 21):
        for p in range(2, 21):
            assert required_n(d, 1, p) == (d + 1) * (p - 1) + 1


def test_required_n_matches_integer_ceiling():
    # ceil(((d+m)(p-1)+1)/m) computed by integer division only
    for d in range(1, 15):
        for m in range(1, 15):
            for p in range(2, 12):
                assert required_n(d, m, p) == -(-((d + m) * (p - 1) + 1) // m)


@pytest.mark.parametrize("p,expected", [(4, (2, 2)), (6, None), (7, (7, 1)), (2, (2, 1)), (27, (3, 3)), (12, None)])
def test_is_prime_power(p, expected):
    assert is_prime_power(p) == expected


def test_is_prime_power_rejects_small():
    with pytest.raises(ValueError):
        is_prime_power(1)


def _factor(p):
    out, q = {}, 2
    while p > 1:
        while p % q == 0:
            out[q] = out.get(q, 0) + 1
            p //= q
        q += 1
    return out


def test_is_prime_power_against_factorization():
    for p in range(2, 10_001):
        f = _factor(p)
        expected = (next(iter(f)), next(iter(f.values()))) if len(f) == 1 else None
        assert is_prime_power(p) == expected


@pytest.mark.parametrize("d,p,t", [(3, 2, 3), (1, 2, 1), (2, 3, 5)])
def test_target_connectivity(d, p, t):
    assert target_connectivity(d, p) == t


def test_join_connectivity_examples():
    assert join_connectivity_check(3, 2, 2, 3)
    assert not join_connectivity_check(3, 2, 2, 2)
    for d in range(1, 6):
        for p in range(2, 6):
            n = (d + 1) * (p - 1) + 1
            assert join_connectivity_check(d, 1, p, n)
            assert n - 2 == target_connectivity(d, p)


def test_bound_always_satisfies_join_inequality():
    for d in range(1, 7):
        for m in range(1, 7):
            for p in range(2, 10):
                assert join_connectivity_check(d, m, p, required_n(d, m, p))


def test_params_validation():
    assert Params.at_bound(3, 2, 2) == Params(3, 2, 2, 3)
    assert Params(3, 2, 2, 3).in_hypothesis
    assert not Params(3, 2, 6, 20).in_hypothesis
    for bad in [(0, 1, 2, 1), (1, 0, 2, 1), (1, 1, 1, 1), (1, 1, 2, 0)]:
        with pytest.raises(ValueError):
            Params(*bad)
