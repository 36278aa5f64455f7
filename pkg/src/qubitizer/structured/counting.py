"""Stern's diatomic sequence."""

from functools import cache


def fusc(n: int) -> int:
    """fusc(0)=0, fusc(1)=1, fusc(2k)=fusc(k), fusc(2k+1)=fusc(k)+fusc(k+1)."""
    if n < 0:
        raise ValueError("fusc is defined for n >= 0")
    # a*fusc(k) + b*fusc(k+1) invariant, walking the bits of n
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


@cache
def fusc_recursive(n: int) -> int:
    """Literal recurrence, kept as an independent cross-check of :func:`fusc`."""
    if n < 2:
        return n
    k, odd = divmod(n, 2)
    return fusc_recursive(k) + fusc_recursive(k + 1) if odd else fusc_recursive(k)
