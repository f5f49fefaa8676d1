"""Reference implementations of the hot loops.

Both functions take plain Python lists of ints and return plain Python
containers so that the compiled module in ``_speedups.pyx`` can be swapped in
without any change at the call sites.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd, isqrt


def _ldl(a: list[list[int]]):
    """Rational decomposition x^T A x = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2."""
    n = len(a)
    q = [[Fraction(x) for x in row] for row in a]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    d = [q[i][i] for i in range(n)]
    m = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, m


def short_vectors(a: list[list[int]], bound: int) -> list[tuple[int, ...]]:
    """All nonzero x with x^T A x <= bound, for positive definite integer A.

    Exact Fincke-Pohst enumeration: interval endpoints are found with integer
    square roots and every candidate is tested with rational arithmetic.
    """
    n = len(a)
    if n == 0:
        return []
    d, m = _ldl(a)
    out: list[tuple[int, ...]] = []
    x = [0] * n
    budget = [Fraction(0)] * (n + 1)
    budget[n] = Fraction(bound)

    def centre(i: int) -> Fraction:
        return -sum((m[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))

    def descend(i: int) -> None:
        c = centre(i)
        room = budget[i + 1]
        if room < 0:
            return
        r = isqrt(floor(room / d[i])) + 1
        lo, hi = floor(c) - r, floor(c) + r + 1
        for xi in range(lo, hi + 1):
            t = xi - c
            used = d[i] * t * t
            if used > room:
                continue
            x[i] = xi
            budget[i] = room - used
            if i == 0:
                if any(x):
                    out.append(tuple(x))
            else:
                descend(i - 1)
        x[i] = 0

    descend(n - 1)
    out.sort()
    return out


def value_histogram(
    orders: list[int], qnum: list[int], bnum: list[list[int]], modulus: int
) -> dict[tuple[int, int], int]:
    """Histogram of (element order, q-value numerator) over a finite group.

    The group is the product of Z/orders[i]; q(x) = sum x_i^2 qnum[i]
    + 2 sum_{i<j} x_i x_j bnum[i][j], reduced mod ``modulus``.
    """
    r = len(orders)
    hist: dict[tuple[int, int], int] = {}
    x = [0] * r
    while True:
        val = 0
        order = 1
        for i in range(r):
            xi = x[i]
            if not xi:
                continue
            val += xi * xi * qnum[i]
            row = bnum[i]
            for j in range(i + 1, r):
                if x[j]:
                    val += 2 * xi * x[j] * row[j]
            oi = orders[i] // gcd(xi, orders[i])
            order = order * oi // gcd(order, oi)
        key = (order, val % modulus)
        hist[key] = hist.get(key, 0) + 1
        i = 0
        while i < r:
            x[i] += 1
            if x[i] < orders[i]:
                break
            x[i] = 0
            i += 1
        if i == r:
            return hist
