"""Small-integer number theory by trial division."""

from __future__ import annotations

from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{p: e}`` of a positive integer."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _strip(m: int, x: int) -> int:
    """Remove from ``m`` every prime that also divides ``x``."""
    g = gcd(m, x)
    while g > 1:
        m //= g
        g = gcd(m, g)
    return m


def zsigmondy(a: int, n: int) -> int | None:
    """Least prime ``q`` with ``q | aⁿ-1``, ``q ∤ aⁱ-1`` for ``0 < i < n`` and ``q ∤ n``.

    Returns ``None`` when no such prime exists, which happens exactly for
    ``n = 2, a = 2^b - 1`` and ``(a, n) = (2, 6)``.
    """
    if a < 2 or n < 2:
        raise ValueError("zsigmondy needs a > 1 and n > 1")
    m = a**n - 1
    for i in range(1, n):
        m = _strip(m, a**i - 1)
    m = _strip(m, n)
    if m == 1:
        return None
    # every survivor q has multiplicative order n mod q, hence q ≡ 1 (mod n)
    q = n + 1
    while q * q <= m:
        if m % q == 0:
            return q
        q += n
    return m
