"""Small exact number theory helpers.

Everything works on Python integers, so nothing overflows; divisibility
tests on big powers go through ``pow(a, e, mod)``.
"""

from __future__ import annotations

from math import gcd


class InfiniteValuation(ArithmeticError):
    """Raised by :func:`valuation` for the argument 0."""


class NotAUnit(ValueError):
    pass


class NoSuchElement(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def valuation(l: int, x: int) -> int:
    """Largest ``e`` with ``l**e`` dividing ``x``.

    >>> valuation(2, 5**4 - 1)
    4
    """
    if x == 0:
        raise InfiniteValuation(f"v_{l}(0) is infinite")
    x = abs(x)
    e = 0
    while x % l == 0:
        x //= l
        e += 1
    return e


def moebius(d: int) -> int:
    if d < 1:
        raise ValueError("moebius is defined for d >= 1")
    sign = 1
    f = 2
    while f * f <= d:
        if d % f == 0:
            d //= f
            if d % f == 0:
                return 0
            sign = -sign
        f += 1
    if d > 1:
        sign = -sign
    return sign


def mult_order(a: int, modulus: int) -> int:
    """Multiplicative order of ``a`` modulo ``modulus``."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, modulus) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {modulus}")
    if modulus == 1:
        return 1
    a %= modulus
    s, x = 1, a
    while x != 1:
        x = x * a % modulus
        s += 1
    return s


def element_of_order(q: int, d: int) -> int:
    """Smallest ``r`` in ``[1, q-1]`` of multiplicative order ``d`` mod the prime ``q``."""
    if d < 1 or (q - 1) % d:
        raise NoSuchElement(f"no element of order {d} modulo {q}")
    for r in range(1, q):
        if mult_order(r, q) == d:
            return r
    raise NoSuchElement(f"no element of order {d} modulo {q}")  # pragma: no cover


def geometric_sum_mod(j: int, s: int, modulus: int) -> int:
    """``(1 + j + ... + j**(s-1)) mod modulus``, i.e. ``(j**s - 1)/(j - 1)`` without dividing.

    Uses the doubling recurrence ``S(2t) = S(t) * (1 + j**t)``.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if modulus == 1:
        return 0
    total, power = 0, 1  # sum and j**len for the prefix built so far
    # Build the sum from the binary expansion of s, high bits first.
    for bit in bin(s)[2:] if s else "":
        total = total * (1 + power) % modulus
        power = power * power % modulus
        if bit == "1":
            total = (total + power) % modulus
            power = power * j % modulus
    return total
