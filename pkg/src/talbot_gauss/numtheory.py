"""Exact integer primitives: gcd, Bezout coefficients, modular inverse, Jacobi symbol.

Values are confined to the signed 64-bit range. Python integers never wrap, so
the bound is enforced on inputs and results and reported as ``OverflowError``.
"""

from .errors import DomainError

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def _check(*values: int) -> None:
    for v in values:
        if not isinstance(v, int):
            raise TypeError(f"integer expected, got {type(v).__name__}")
        if v < INT64_MIN or v > INT64_MAX:
            raise OverflowError(f"{v} outside the signed 64-bit range")


def gcd(a: int, b: int) -> int:
    """Non-negative greatest common divisor; ``gcd(0, 0)`` is a domain error."""
    _check(a, b)
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    _check(a)  # gcd(INT64_MIN, 0) = 2**63
    return a


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid.

    Returns ``(d, x, y)`` with ``a*x + b*y == d == gcd(a, b)``. The coefficients
    satisfy ``|x| <= |b|`` and ``|y| <= |a|``, so they stay in range whenever
    the inputs do.
    """
    _check(a, b)
    if a == 0 and b == 0:
        raise DomainError("bezout(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    _check(old_r, old_x, old_y)
    return old_r, old_x, old_y


def mod_inverse(a: int, b: int) -> int:
    """The inverse of ``a`` modulo ``b`` in ``[1, b-1]``.

    >>> mod_inverse(5, 16)
    13
    """
    _check(a, b)
    if b < 2:
        raise DomainError(f"modulus must be >= 2, got {b}")
    d, x, _ = bezout(a % b, b)
    if d != 1:
        raise DomainError(f"{a} is not invertible modulo {b}")
    return x % b


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol ``(a/b)`` for odd positive ``b``.

    Iterative reciprocity, no factorisation. Returns 0 when ``gcd(a, b) > 1``
    and +1 for ``b == 1``.
    """
    _check(a, b)
    if b <= 0 or b % 2 == 0:
        raise DomainError(f"Jacobi symbol needs an odd positive modulus, got {b}")
    a %= b
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def parity(x: int) -> int:
    """0 for even ``x``, 1 for odd ``x`` (negatives included)."""
    return x & 1
