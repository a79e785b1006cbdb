import pytest

from algebragen.primes import DETERMINISTIC_LIMIT, is_prime


def test_small_values():
    primes_below_100 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                        53, 59, 61, 67, 71, 73, 79, 83, 89, 97}
    for n in range(100):
        assert is_prime(n) == (n in primes_below_100)


def test_known_large_primes_and_composites():
    assert is_prime(1048583)          # smallest prime above 2^20
    assert is_prime(2**31 - 1)        # Mersenne
    assert not is_prime(2**31)
    assert not is_prime(3215031751)   # strong pseudoprime to bases 2,3,5,7
    assert not is_prime(1048583 * 1048589)


def test_carmichael_numbers():
    for n in (561, 1105, 1729, 41041, 825265):
        assert not is_prime(n)


def test_agrees_with_reference_near_limit():
    sympy = pytest.importorskip("sympy")
    for n in range(DETERMINISTIC_LIMIT - 50, DETERMINISTIC_LIMIT):
        assert is_prime(n) == sympy.isprime(n)


def test_agrees_with_reference_random():
    sympy = pytest.importorskip("sympy")
    import random

    rng = random.Random(0)
    for _ in range(200):
        n = rng.randrange(2, DETERMINISTIC_LIMIT)
        assert is_prime(n) == sympy.isprime(n)


def test_range_limit():
    with pytest.raises(ValueError):
        is_prime(DETERMINISTIC_LIMIT)
