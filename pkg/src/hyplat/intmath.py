"""Integer utilities: factorization caches, Kronecker symbol, Smith normal form.

Everything here is exact integer arithmetic.  The Smith-divisor convention
follows the rest of the package: divisors are listed so that each divides
the one before it, with zeros (the kernel) first, e.g. (20, 1, 1) or
(0, 12, 2, 1).
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n >= 1, ascending."""
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    small.extend(reversed(large))
    return tuple(small)


@lru_cache(maxsize=None)
def factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) with p ascending."""
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    out = []
    m = n
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    # wheel over 6k+-1
    p = 7
    while p * p <= m:
        for q in (p, p + 4):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                out.append((q, e))
        p += 6
    if m > 1:
        out.append((m, 1))
    out.sort()
    return tuple(out)


def is_squarefree(n: int) -> bool:
    """True if |n| is square-free (1 is square-free, 0 is not)."""
    n = abs(n)
    if n == 0:
        return False
    if n % 4 == 0:
        return False
    return all(e == 1 for _, e in factor(n))


def squarefree_part(n: int) -> int:
    """Product of the primes dividing n >= 1 to an odd power."""
    d = 1
    for p, e in factor(n):
        if e % 2 == 1:
            d *= p
    return d


def odd_primes(n: int) -> tuple[int, ...]:
    """Odd prime divisors of n >= 1, ascending."""
    return tuple(p for p, _ in factor(n) if p != 2)


def odd_radical(n: int) -> int:
    """Product of the distinct odd primes of n >= 1."""
    r = 1
    for p in odd_primes(n):
        r *= p
    return r


def greatest_prime(n: int) -> int:
    """Largest prime divisor of n >= 1 (1 if n == 1)."""
    f = factor(n)
    return f[-1][0] if f else 1


def greatest_odd_prime(n: int) -> int:
    """Largest odd prime divisor of n >= 1 (1 if there is none)."""
    ps = odd_primes(n)
    return ps[-1] if ps else 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out 2s of n: (a|2) = 0, 1, -1 for a even / a = +-1 mod 8 / a = +-3 mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            sign = -sign
    # now n odd positive: Jacobi symbol by reciprocity
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def content(entries: Sequence[int]) -> int:
    """gcd of a list of integers (0 for the empty or all-zero list)."""
    g = 0
    for x in entries:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def _minor_gcd(m: Matrix, k: int) -> int:
    """gcd of all k x k minors of m (0 if they all vanish)."""
    from itertools import combinations

    nrows, ncols = len(m), len(m[0])
    g = 0
    for rows in combinations(range(nrows), k):
        sub = [m[r] for r in rows]
        for cols in combinations(range(ncols), k):
            g = gcd(g, _det([[row[c] for c in cols] for row in sub]))
            if g == 1:
                return 1
    return g


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    # fraction-free Bareiss for larger sizes
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def smith_divisors(m: Matrix) -> tuple[int, ...]:
    """Elementary divisors of a square integer matrix.

    Returned with each entry dividing the previous one and kernel zeros
    first: e.g. diag(6,2) yields (6, 2) and a rank-2 3x3 matrix yields
    (0, d1, d2) with d2 | d1.  Computed from determinant divisors
    D_k = gcd(k x k minors): the ascending-invariant-factor chain is
    D_1, D_2/D_1, ..., D_r/D_{r-1}.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("smith_divisors() needs a square matrix")
    dets = [1]
    rank = 0
    for k in range(1, n + 1):
        dk = _minor_gcd(m, k)
        if dk == 0:
            break
        dets.append(dk)
        rank = k
    asc = [dets[k] // dets[k - 1] for k in range(1, rank + 1)]
    return tuple([0] * (n - rank) + asc[::-1])


def exponent_invariants(m: Matrix) -> tuple[int, int, int]:
    """(a, a1, a2) of the lattice presented by the integer Gram matrix m.

    a is the largest nonzero elementary divisor (the exponent of the
    discriminant group of the nondegenerate quotient), a1 the product of
    the distinct odd primes of a, a2 the largest odd prime of a (1 if a
    2-power or 1).
    """
    div = smith_divisors(m)
    nz = [d for d in div if d != 0]
    if not nz:
        raise ValueError("zero matrix has no nondegenerate quotient")
    a = nz[0]
    return a, odd_radical(a), greatest_odd_prime(a)
