"""Deterministic Miller-Rabin primality testing.

The witness set below certifies primality for every candidate under
DETERMINISTIC_LIMIT; callers that need larger numbers must use a different
tool, so ``is_prime`` refuses rather than silently degrading to a
probabilistic answer.
"""

from __future__ import annotations

# Witnesses (2, 3, 5, 7, 11, 13, 17) are exact for n < 3.4e14; we advertise
# a slightly smaller round limit.
DETERMINISTIC_LIMIT = 330_000_000_000_000

_WITNESSES = (2, 3, 5, 7, 11, 13, 17)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Exact primality test for 0 <= n < DETERMINISTIC_LIMIT."""
    n = int(n)
    if n >= DETERMINISTIC_LIMIT:
        raise ValueError(
            f"{n} exceeds the deterministic Miller-Rabin range ({DETERMINISTIC_LIMIT})"
        )
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False

    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True
